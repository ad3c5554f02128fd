//! Rational equivariant cohomology: Poincaré series, Betti numbers,
//! formality and the orbifold Euler number.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::graph::EdgeLabel;
use crate::invariants::{OrbitInvariants, Orientability};
use crate::poly::Poly;
use crate::series::PoincareSeries;
use crate::{Error, Rational, Result};

/// Poincaré series of the orbit surface `M/S¹`.
///
/// `B` counts all boundary circles of the orbit surface (`f + s + t` plus
/// the graph cycles). Closed: `1 + 2gx + x²` (`ε = o`) or `1 + gx` (`ε = n`).
/// With boundary: `1 + (2g + B − 1)x` or `1 + (g + B − 1)x`.
pub fn orbit_space_poincare(inv: &OrbitInvariants) -> PoincareSeries {
    let g = inv.g as i64;
    let bc = inv.boundary_circles() as i64;
    let coeffs = match (inv.eps, bc) {
        (Orientability::Orientable, 0) => vec![1, 2 * g, 1],
        (Orientability::Nonorientable, 0) => vec![1, g],
        (Orientability::Orientable, _) => vec![1, 2 * g + bc - 1],
        (Orientability::Nonorientable, _) => vec![1, g + bc - 1],
    };
    PoincareSeries::polynomial(&Poly::from_i64s(&coeffs))
}

/// Components of the fixed-point set: circles away from `∂M` and intervals
/// ending on `∂M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixedSetShape {
    pub circles: u64,
    pub intervals: u64,
}

impl FixedSetShape {
    /// Poincaré polynomial `circles·(1 + x) + intervals` of the fixed set.
    pub fn poincare_polynomial(&self) -> Poly {
        let c = self.circles as i64;
        Poly::from_i64s(&[c + self.intervals as i64, c])
    }
}

pub fn fixed_set_shape(inv: &OrbitInvariants) -> FixedSetShape {
    FixedSetShape {
        circles: inv.f as u64,
        intervals: inv.graph.count(EdgeLabel::F) as u64,
    }
}

/// `P(M/S¹) + x²/(1 − x²) · P(F)`, reduced.
pub fn equivariant_poincare(inv: &OrbitInvariants) -> PoincareSeries {
    let orbit = orbit_space_poincare(inv);
    let fixed = fixed_set_shape(inv).poincare_polynomial();
    let tail = PoincareSeries::from_fraction(&fixed.shift(2), &Poly::from_i64s(&[1, 0, -1]))
        .expect("1 - x^2 has constant term 1");
    orbit.add(&tail)
}

/// The `k`-th equivariant Betti number.
pub fn betti(inv: &OrbitInvariants, k: usize) -> u64 {
    betti_numbers(inv, k)[k]
}

/// Betti numbers `b⁰ … b^upto`.
pub fn betti_numbers(inv: &OrbitInvariants, upto: usize) -> Vec<u64> {
    equivariant_poincare(inv)
        .expansion(upto)
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
                .to_u64()
                .expect("Betti numbers are nonnegative")
        })
        .collect()
}

/// A free `ℚ[u]`-module generator of `H*_{S¹}(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub degree: u32,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalityResult {
    pub formal: bool,
    pub reason: String,
    /// Free generators, sorted by degree; empty when not formal.
    pub generators: Vec<Generator>,
}

impl FormalityResult {
    /// Number of generators in each degree `0 ..= max degree`.
    pub fn degree_counts(&self) -> Vec<usize> {
        let top = self.generators.iter().map(|g| g.degree).max();
        let mut out = vec![0; top.map_or(0, |d| d as usize + 1)];
        for g in &self.generators {
            out[g.degree as usize] += 1;
        }
        out
    }

    /// `∑ x^deg` over the generators.
    pub fn generator_polynomial(&self) -> Poly {
        let counts: Vec<i64> = self.degree_counts().iter().map(|&c| c as i64).collect();
        Poly::from_i64s(&counts)
    }
}

/// Which formal family a closed datum belongs to, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum FormalFamily {
    /// `ε = o`, `g = s = 0`.
    Planar,
    /// `ε = o`, `g = 0`, `s = 1`.
    OneSpecial,
    /// `ε = n`, `g = 1`, `s = 0`.
    ProjectiveBase,
}

pub(crate) fn formal_family(inv: &OrbitInvariants) -> Option<FormalFamily> {
    if inv.f == 0 || inv.b != 0 {
        return None;
    }
    match (inv.eps, inv.g, inv.s) {
        (Orientability::Orientable, 0, 0) => Some(FormalFamily::Planar),
        (Orientability::Orientable, 0, 1) => Some(FormalFamily::OneSpecial),
        (Orientability::Nonorientable, 1, 0) => Some(FormalFamily::ProjectiveBase),
        _ => None,
    }
}

/// Equivariant formality of a closed datum, with explicit free generators
/// when formal.
pub fn is_formal(inv: &OrbitInvariants) -> Result<FormalityResult> {
    if !inv.is_closed() {
        return Err(Error::FormalityClosedOnly);
    }
    let f = inv.f as usize;
    let Some(family) = formal_family(inv) else {
        let reason = if inv.f == 0 {
            "no fixed circles (f = 0)".to_string()
        } else if inv.b != 0 {
            format!("b = {} is nonzero", inv.b)
        } else {
            match inv.eps {
                Orientability::Orientable => format!(
                    "orientable orbit surface needs g = 0 and s <= 1, got g = {}, s = {}",
                    inv.g, inv.s
                ),
                Orientability::Nonorientable => format!(
                    "nonorientable orbit surface needs g = 1 and s = 0, got g = {}, s = {}",
                    inv.g, inv.s
                ),
            }
        };
        return Ok(FormalityResult {
            formal: false,
            reason,
            generators: Vec::new(),
        });
    };

    let gen = |degree, name: String| Generator { degree, name };
    let mut gens = vec![gen(0, "Σδ_i".to_string())];
    let reason = match family {
        FormalFamily::Planar => {
            gens.extend((2..=f).map(|i| gen(1, format!("θ_1 - θ_{i}"))));
            gens.extend((2..=f).map(|i| gen(2, format!("u(δ_1 - δ_{i})"))));
            gens.push(gen(3, "uΣθ_i".to_string()));
            "orientable, g = 0, s = 0, f > 0"
        }
        FormalFamily::OneSpecial | FormalFamily::ProjectiveBase => {
            gens.extend((1..=f).map(|i| gen(1, format!("θ_{i}"))));
            gens.extend((2..=f).map(|i| gen(2, format!("u(δ_1 - δ_{i})"))));
            if family == FormalFamily::OneSpecial {
                "orientable, g = 0, s = 1, f > 0"
            } else {
                "nonorientable, g = 1, s = 0, f > 0"
            }
        }
    };
    Ok(FormalityResult {
        formal: true,
        reason: reason.to_string(),
        generators: gens,
    })
}

/// Image of `u` in `H²(M/S¹; ℚ)` for a fixed-point-free action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerNumber {
    /// Vanishes because `H²(M/S¹) = 0` (`ε = n` or `s > 0`).
    Zero,
    /// `b + ∑ lᵢ/mᵢ`.
    Rational(Rational),
}

impl EulerNumber {
    pub fn value(&self) -> Rational {
        match self {
            EulerNumber::Zero => Rational::zero(),
            EulerNumber::Rational(r) => r.clone(),
        }
    }
}

impl fmt::Display for EulerNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Orbifold Euler number of a closed datum without fixed points.
pub fn euler_number(inv: &OrbitInvariants) -> Result<EulerNumber> {
    if !inv.is_closed() {
        return Err(Error::NotClosed("the Euler number"));
    }
    if inv.f > 0 {
        return Err(Error::EulerNumberUndefined);
    }
    if inv.eps == Orientability::Nonorientable || inv.s > 0 {
        return Ok(EulerNumber::Zero);
    }
    let mut total = Rational::from_integer(BigInt::from(inv.b));
    for p in &inv.pairs {
        let l = mod_inverse(p.n, p.m).ok_or_else(|| {
            Error::Shape(format!("Seifert pair ({},{}) is not coprime", p.m, p.n))
        })?;
        total += Rational::new(BigInt::from(l), BigInt::from(p.m));
    }
    Ok(EulerNumber::Rational(total))
}

/// `(g, x, y)` with `g = gcd(a, b) = ax + by`, `g ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// The inverse of `n` modulo `m` in `[0, m)`; `None` when `gcd(n, m) ≠ 1`.
/// For `m ≥ 2` the result lies in `(0, m)`.
pub fn mod_inverse(n: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    let (g, x, _) = ext_gcd(n as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{CycleGraph, EdgeLabel::*};
    use crate::invariants::Orientability::*;

    fn closed(b: i64, eps: Orientability, g: u32, f: u32, s: u32) -> OrbitInvariants {
        OrbitInvariants::closed(b, eps, g, f, s)
    }

    fn series(num: &[i64], den: &[i64]) -> PoincareSeries {
        PoincareSeries::from_i64s(num, den).unwrap()
    }

    #[test]
    fn orbit_space_examples() {
        assert_eq!(
            orbit_space_poincare(&closed(2, Orientable, 1, 0, 0)),
            series(&[1, 2, 1], &[1])
        );
        assert_eq!(
            orbit_space_poincare(&closed(1, Nonorientable, 3, 0, 0)),
            series(&[1, 3], &[1])
        );
        assert_eq!(
            orbit_space_poincare(&closed(0, Orientable, 0, 2, 1)),
            series(&[1, 2], &[1])
        );
    }

    #[test]
    fn fixed_set_examples() {
        let shape = |f, cycles: Vec<Vec<EdgeLabel>>| {
            fixed_set_shape(
                &closed(0, Orientable, 0, f, 0).with_boundary(0, CycleGraph::new(cycles)),
            )
        };
        assert_eq!(
            shape(2, vec![]),
            FixedSetShape {
                circles: 2,
                intervals: 0
            }
        );
        assert_eq!(
            shape(0, vec![vec![F, SP]]),
            FixedSetShape {
                circles: 0,
                intervals: 1
            }
        );
        assert_eq!(
            shape(1, vec![vec![F, SP, F, SP]]),
            FixedSetShape {
                circles: 1,
                intervals: 2
            }
        );
    }

    #[test]
    fn equivariant_poincare_examples() {
        // 1 + (x^2 + x^3)/(1 - x^2)
        assert_eq!(
            equivariant_poincare(&closed(0, Orientable, 0, 1, 0)),
            series(&[1, 0, 0, 1], &[1, 0, -1])
        );
        // 1 + 4x + 2(x^2 + x^3)/(1 - x^2) = (1 + 4x + x^2 - 2x^3)/(1 - x^2)
        assert_eq!(
            equivariant_poincare(&closed(0, Orientable, 1, 2, 1)),
            series(&[1, 4, 1, -2], &[1, 0, -1])
        );
        assert_eq!(
            equivariant_poincare(&closed(3, Orientable, 0, 0, 0)),
            series(&[1, 0, 1], &[1])
        );
    }

    #[test]
    fn betti_examples() {
        let inv = closed(0, Orientable, 0, 1, 0);
        assert_eq!(betti_numbers(&inv, 5), vec![1, 0, 1, 1, 1, 1]);
        assert_eq!(betti(&closed(0, Nonorientable, 2, 1, 2), 1), 4);
        assert_eq!(betti(&closed(0, Orientable, 1, 2, 1), 7), 2);
    }

    #[test]
    fn formality_examples() {
        let r = is_formal(&closed(0, Orientable, 0, 3, 0)).unwrap();
        assert!(r.formal);
        assert_eq!(r.degree_counts(), vec![1, 2, 2, 1]);
        assert!(!is_formal(&closed(0, Orientable, 1, 2, 0)).unwrap().formal);
        assert!(
            is_formal(&closed(0, Nonorientable, 1, 1, 0))
                .unwrap()
                .formal
        );
        let r = is_formal(&closed(2, Orientable, 0, 0, 0)).unwrap();
        assert!(!r.formal);
        assert!(r.generators.is_empty());

        let open = closed(0, Orientable, 0, 0, 0).with_boundary(1, CycleGraph::empty());
        let err = is_formal(&open).unwrap_err();
        assert_eq!(
            err.to_string(),
            "formality implemented for closed manifolds only"
        );
    }

    #[test]
    fn euler_number_examples() {
        let r = |a: i64, b: i64| EulerNumber::Rational(Rational::new(a.into(), b.into()));
        let inv = closed(1, Orientable, 2, 0, 0).with_pairs(&[(3, 2), (5, 3)]);
        assert_eq!(euler_number(&inv).unwrap(), r(31, 15));
        let inv = closed(-1, Orientable, 0, 0, 0).with_pairs(&[(2, 1), (2, 1)]);
        assert_eq!(euler_number(&inv).unwrap().value(), Rational::zero());
        assert_eq!(
            euler_number(&closed(0, Orientable, 0, 0, 0)).unwrap(),
            r(0, 1)
        );
        assert_eq!(
            euler_number(&closed(1, Nonorientable, 1, 0, 1)).unwrap(),
            EulerNumber::Zero
        );
        assert_eq!(
            euler_number(&closed(0, Orientable, 0, 1, 0)),
            Err(Error::EulerNumberUndefined)
        );
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(2, 3), Some(2));
        assert_eq!(mod_inverse(3, 5), Some(2));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(ext_gcd(240, 46), (2, -9, 47));
    }
}
