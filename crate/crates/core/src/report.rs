//! Float formatting for CSV and JSON outputs.
//!
//! Every float is written with 17 significant digits (`{:.16e}`), which
//! round-trips any `f64` exactly.

use serde::Serializer;
use serde_json::value::RawValue;

/// `x` with 17 significant digits; non-finite values as `inf`, `-inf`, `nan`.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn raw<S: Serializer>(x: f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let value = RawValue::from_string(format_real(x)).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&value, s)
}

/// `serialize_with` helper for `f64` fields. Non-finite values become `null`.
pub fn real<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*x, s)
}

pub fn real_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for &x in xs {
        seq.serialize_element(&Real(x))?;
    }
    seq.end()
}

pub fn real_pair<S: Serializer>(xs: &(f64, f64), s: S) -> Result<S::Ok, S::Error> {
    real_vec(&[xs.0, xs.1], s)
}

pub fn real_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => raw(*v, s),
        None => s.serialize_none(),
    }
}

/// A float that serializes through [`real`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl serde::Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        raw(self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        assert_eq!(format_real(0.5), "5.0000000000000000e-1");
        assert_eq!(format_real(1.0 / 3.0).parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(format_real(f64::INFINITY), "inf");
        let json = serde_json::to_string(&vec![Real(0.1), Real(f64::NAN)]).unwrap();
        assert_eq!(json, "[1.0000000000000001e-1,null]");
        let back: Vec<Option<f64>> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![Some(0.1), None]);
    }
}
