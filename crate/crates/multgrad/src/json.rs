//! Serde helpers: complex numbers travel as `[re, im]` pairs in every
//! JSON schema this crate emits.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn check_finite<E: serde::de::Error>(re: f64, im: f64) -> std::result::Result<Complex64, E> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(E::custom("complex entries must be finite"))
    }
}

/// `#[serde(with = "complex_pair")]` for a single `Complex64`.
pub mod complex_pair {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, ser: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(de)?;
        check_finite(re, im)
    }
}

/// `#[serde(with = "complex_vec")]` for a `Vec<Complex64>`.
pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Complex64],
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(de)?;
        pairs
            .into_iter()
            .map(|[re, im]| check_finite::<D::Error>(re, im))
            .collect()
    }
}

/// Parse a complex number from `"re,im"` or a bare real `"re"` (CLI input).
pub fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let trimmed = text.trim();
    let (re, im) = match trimmed.split_once(',') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (trimmed, "0"),
    };
    let re: f64 = re.parse().map_err(|e| format!("bad real part: {e}"))?;
    let im: f64 = im.parse().map_err(|e| format!("bad imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wrap {
        #[serde(with = "complex_vec")]
        v: Vec<Complex64>,
    }

    #[test]
    fn pairs_round_trip() {
        let w = Wrap {
            v: vec![Complex64::new(1.5, -2.0), Complex64::new(0.0, 3.25)],
        };
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(text, r#"{"v":[[1.5,-2.0],[0.0,3.25]]}"#);
        let back: Wrap = serde_json::from_str(&text).unwrap();
        assert_eq!(back.v, w.v);
    }

    #[test]
    fn rejects_non_finite() {
        let r: std::result::Result<Wrap, _> = serde_json::from_str(r#"{"v":[[1.0,null]]}"#);
        assert!(r.is_err());
    }

    #[test]
    fn parse_complex_forms() {
        assert_eq!(parse_complex("1.5,-2").unwrap(), Complex64::new(1.5, -2.0));
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("abc").is_err());
    }
}
