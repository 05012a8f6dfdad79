//! Serialization helpers shared by the library types and the CLI.
//!
//! All reports serialize deterministically: struct fields keep declaration
//! order, maps iterate in key order, and every float is printed with 17
//! significant digits so identical inputs produce byte-identical JSON.

use std::io;

use serde::ser::Serialize;
use serde_json::ser::{Formatter, Serializer};

/// JSON writer with fixed float formatting (17 significant digits).
struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            // Non-finite floats have no JSON literal; this never occurs in
            // well-formed reports but must not produce invalid JSON.
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize to a deterministic JSON string.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Complex scalars as `[re, im]` pairs.
pub mod complex_pair {
    use crate::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, ser: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(de)?;
        Ok(C64::new(re, im))
    }
}

/// Vectors of complex scalars as `[[re, im], ...]`.
pub mod complex_vec {
    use crate::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[C64], ser: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<C64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(de)?;
        Ok(pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

/// Sparse coefficient maps `{index: [re, im], ...}` with numeric-string keys.
pub mod complex_map {
    use crate::C64;
    use serde::de::Error as DeError;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, C64>, ser: S) -> Result<S::Ok, S::Error> {
        // BTreeMap<usize, _> iterates numerically; stringify keys for JSON.
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(m.len()))?;
        for (k, z) in m {
            map.serialize_entry(&k.to_string(), &[z.re, z.im])?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BTreeMap<usize, C64>, D::Error> {
        let raw = BTreeMap::<String, [f64; 2]>::deserialize(de)?;
        raw.into_iter()
            .map(|(k, [re, im])| {
                let idx: usize = k.parse().map_err(|_| D::Error::custom("bad index key"))?;
                Ok((idx, C64::new(re, im)))
            })
            .collect()
    }
}

/// Vectors of exact rationals as `"p/q"` strings.
pub mod rational_vec {
    use crate::exact::{parse_rational, rational_string};
    use num::rational::BigRational;
    use serde::de::Error as DeError;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], ser: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rational_string).collect::<Vec<_>>().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        raw.iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational: {s}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Serialize;

    #[derive(Serialize)]
    struct Probe {
        a: f64,
        b: Vec<f64>,
    }

    #[test]
    fn floats_have_17_significant_digits() {
        let s = to_json_string(&Probe {
            a: 1.0 / 3.0,
            b: vec![6.0, -0.5],
        });
        assert_eq!(
            s,
            r#"{"a":3.3333333333333331e-1,"b":[6.0000000000000000e0,-5.0000000000000000e-1]}"#
        );
    }

    #[test]
    fn output_is_reproducible() {
        let p = Probe {
            a: std::f64::consts::PI,
            b: vec![2f64.sqrt()],
        };
        assert_eq!(to_json_string(&p), to_json_string(&p));
    }
}
