//! JSON renderings of results. Field names are stable.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::capping::CappingReport;
use crate::cohomology::{EulerNumber, FormalityResult};
use crate::invariants::{CanonicalForm, OrbitInvariants, ValidationReport};
use crate::series::PoincareSeries;
use crate::textio::serialize;
use crate::Rational;

pub trait ToJson {
    fn to_json(&self) -> Value;
}

/// Compact single-line JSON text.
pub fn emit_json<T: ToJson + ?Sized>(x: &T) -> String {
    x.to_json().to_string()
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// A rational as `{"num": …, "den": …}`.
pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": bigint_json(r.numer()), "den": bigint_json(r.denom()) })
}

/// Rationals that are integers as plain numbers, others as
/// `{"num": …, "den": …}`.
fn coefficient_json(r: &Rational) -> Value {
    if r.is_integer() {
        bigint_json(&r.to_integer())
    } else {
        rational_json(r)
    }
}

impl ToJson for Rational {
    fn to_json(&self) -> Value {
        rational_json(self)
    }
}

impl ToJson for ValidationReport {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// A series together with the truncation degree of its expansion.
pub struct SeriesJson<'a> {
    pub series: &'a PoincareSeries,
    pub upto: usize,
}

impl ToJson for SeriesJson<'_> {
    fn to_json(&self) -> Value {
        let ints = |v: &[BigInt]| Value::Array(v.iter().map(bigint_json).collect());
        let expansion: Vec<Value> = self
            .series
            .expansion(self.upto)
            .iter()
            .map(coefficient_json)
            .collect();
        json!({
            "numerator": ints(self.series.numerator()),
            "denominator": ints(self.series.denominator()),
            "expansion": expansion,
        })
    }
}

impl ToJson for CappingReport {
    fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["input_text"] = json!(serialize(&self.input));
        v["output_text"] = json!(serialize(&self.output));
        v
    }
}

impl ToJson for FormalityResult {
    fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("result serializes");
        v["degree_counts"] = json!(self.degree_counts());
        v
    }
}

impl ToJson for EulerNumber {
    fn to_json(&self) -> Value {
        json!({
            "euler_number": rational_json(&self.value()),
            "vanishes_by_topology": matches!(self, EulerNumber::Zero),
        })
    }
}

impl ToJson for OrbitInvariants {
    fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("datum serializes");
        v["text"] = json!(serialize(self));
        v
    }
}

impl ToJson for CanonicalForm {
    fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("form serializes");
        v["text"] = json!(serialize(&self.to_invariants()));
        v
    }
}

/// Betti numbers `b⁰ … b^upto`.
pub struct BettiTable<'a>(pub &'a [u64]);

impl ToJson for BettiTable<'_> {
    fn to_json(&self) -> Value {
        json!({ "betti": self.0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{validate, Orientability};

    #[test]
    fn series_example() {
        let s = PoincareSeries::from_i64s(&[1, 0, 1], &[1]).unwrap();
        assert_eq!(
            emit_json(&SeriesJson {
                series: &s,
                upto: 3
            }),
            r#"{"numerator":[1,0,1],"denominator":[1],"expansion":[1,0,1,0]}"#
        );
    }

    #[test]
    fn rational_example() {
        let r = Rational::new(31.into(), 15.into());
        assert_eq!(emit_json(&r), r#"{"num":31,"den":15}"#);
        let v: Value = serde_json::from_str(&emit_json(&r)).unwrap();
        assert_eq!(v, json!({"num": 31, "den": 15}));
    }

    #[test]
    fn big_rational_uses_strings() {
        let big: BigInt = BigInt::from(i64::MAX) * 4;
        let v = rational_json(&Rational::from_integer(big.clone()));
        assert_eq!(v["num"], json!(big.to_string()));
    }

    #[test]
    fn empty_validation() {
        let r = validate(&OrbitInvariants::closed(
            0,
            Orientability::Orientable,
            0,
            0,
            0,
        ));
        assert_eq!(emit_json(&r), r#"{"ok":true,"violations":[]}"#);
    }
}
