//! Poincaré series stored as reduced rational functions with integer
//! coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::poly::{write_poly, Poly};
use crate::Rational;

/// `numerator(x) / denominator(x)`, reduced.
///
/// The representation is unique: no common polynomial factor, integer
/// coefficients with overall content 1, and a positive constant term in the
/// denominator. Structural equality is therefore equality of rational
/// functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoincareSeries {
    numerator: Vec<BigInt>,
    denominator: Vec<BigInt>,
}

impl PoincareSeries {
    /// Reduces `num / den`. Returns `None` when `den(0) = 0`, since such a
    /// fraction has no power-series expansion.
    pub fn from_fraction(num: &Poly, den: &Poly) -> Option<Self> {
        if den.eval0().is_zero() {
            return None;
        }
        let g = num.gcd(den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        // scale both by the same rational so the pair is integral and primitive
        let joint = num.shift(den.coeffs().len());
        let both = &joint + &den;
        let ints = both.primitive_integer();
        let split = den.coeffs().len();
        let mut denominator: Vec<BigInt> = ints.iter().take(split).cloned().collect();
        let mut numerator: Vec<BigInt> = ints.iter().skip(split).cloned().collect();
        if denominator[0].is_negative() {
            denominator.iter_mut().for_each(|c| *c = -&*c);
            numerator.iter_mut().for_each(|c| *c = -&*c);
        }
        trim(&mut numerator);
        trim(&mut denominator);
        Some(PoincareSeries {
            numerator,
            denominator,
        })
    }

    pub fn polynomial(p: &Poly) -> Self {
        Self::from_fraction(p, &Poly::one()).expect("constant denominator")
    }

    pub fn from_i64s(num: &[i64], den: &[i64]) -> Option<Self> {
        Self::from_fraction(&Poly::from_i64s(num), &Poly::from_i64s(den))
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigInt] {
        &self.denominator
    }

    pub fn numerator_poly(&self) -> Poly {
        to_poly(&self.numerator)
    }

    pub fn denominator_poly(&self) -> Poly {
        to_poly(&self.denominator)
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.len() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (self.numerator_poly(), self.denominator_poly());
        let (c, d) = (other.numerator_poly(), other.denominator_poly());
        Self::from_fraction(&(&(&a * &d) + &(&c * &b)), &(&b * &d)).expect("nonzero constant")
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = &self.numerator_poly() * &other.numerator_poly();
        let den = &self.denominator_poly() * &other.denominator_poly();
        Self::from_fraction(&num, &den).expect("nonzero constant")
    }

    /// Power-series coefficients of `x⁰ … x^upto` by exact division.
    pub fn expansion(&self, upto: usize) -> Vec<Rational> {
        let d0 = Rational::from_integer(self.denominator[0].clone());
        let den: Vec<Rational> = self
            .denominator
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let mut out: Vec<Rational> = Vec::with_capacity(upto + 1);
        for k in 0..=upto {
            let mut acc = self
                .numerator
                .get(k)
                .map(|c| Rational::from_integer(c.clone()))
                .unwrap_or_else(Rational::zero);
            for (j, dj) in den.iter().enumerate().skip(1).take(k) {
                acc -= dj * &out[k - j];
            }
            out.push(acc / &d0);
        }
        out
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.expansion(k).pop().expect("nonempty expansion")
    }

    /// Expansion rendered as `1 + 2x + x^2 + …`.
    pub fn expansion_string(&self, upto: usize) -> String {
        struct Prefix<'a>(&'a [Rational]);
        impl fmt::Display for Prefix<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_poly(f, self.0, "x")
            }
        }
        let coeffs = self.expansion(upto);
        let mut s = Prefix(&coeffs).to_string();
        if !self.is_polynomial() || self.numerator.len() > upto + 1 {
            s.push_str(" + …");
        }
        s
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn to_poly(c: &[BigInt]) -> Poly {
    Poly::new(
        c.iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect(),
    )
}

/// `p(x)/q(x)`, or just `p(x)` when the denominator is 1.
impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() && self.denominator[0] == BigInt::from(1) {
            return write_poly(f, &self.numerator, "x");
        }
        f.write_str("(")?;
        write_poly(f, &self.numerator, "x")?;
        f.write_str(")/(")?;
        write_poly(f, &self.denominator, "x")?;
        f.write_str(")")
    }
}
