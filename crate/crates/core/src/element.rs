//! Equivariant cohomology classes of a closed manifold with fixed circles.
//!
//! An element is written
//!
//! ```text
//! D·δ₀ + Σ Aₖαₖ + Σ Bₖβₖ + Σ Cᵢθᵢ + Σ C_se,ⱼ θ_{f+j} + Σᵢ (pᵢ(u)δᵢ + qᵢ(u)θᵢ)
//! ```
//!
//! subject to `ΣA + ΣB + ΣC + ΣC_se = 0` (relation 1), `pᵢ(0) = D`
//! (relation 2) and `qᵢ(0) = Cᵢ` (relation 3). The `βₖ` only exist over an
//! orientable orbit surface.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::invariants::{OrbitInvariants, Orientability};
use crate::poly::Poly;
use crate::{Error, Rational, Result};

/// The closed datum an element lives over; only `(ε, g, f, s)` matter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CohomContext {
    pub eps: Orientability,
    pub g: u32,
    pub f: u32,
    pub s: u32,
}

impl CohomContext {
    pub fn new(eps: Orientability, g: u32, f: u32, s: u32) -> Result<Self> {
        if f == 0 {
            return Err(Error::NoFixedCircles);
        }
        Ok(CohomContext { eps, g, f, s })
    }

    pub fn from_invariants(inv: &OrbitInvariants) -> Result<Self> {
        if !inv.is_closed() {
            return Err(Error::NotClosed("cohomology elements"));
        }
        Self::new(inv.eps, inv.g, inv.f, inv.s)
    }

    /// Number of `βₖ` coefficients.
    pub fn num_b(&self) -> usize {
        match self.eps {
            Orientability::Orientable => self.g as usize,
            Orientability::Nonorientable => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CohomElement {
    ctx: CohomContext,
    d: Rational,
    a: Vec<Rational>,
    b: Vec<Rational>,
    c: Vec<Rational>,
    c_se: Vec<Rational>,
    p: Vec<Poly>,
    q: Vec<Poly>,
}

fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

impl CohomElement {
    pub fn zero(ctx: CohomContext) -> Self {
        let f = ctx.f as usize;
        CohomElement {
            ctx,
            d: Rational::zero(),
            a: zeros(ctx.g as usize),
            b: zeros(ctx.num_b()),
            c: zeros(f),
            c_se: zeros(ctx.s as usize),
            p: vec![Poly::zero(); f],
            q: vec![Poly::zero(); f],
        }
    }

    /// The unit `Σδᵢ`: `D = 1`, every `pᵢ = 1`.
    pub fn one(ctx: CohomContext) -> Self {
        let mut x = Self::zero(ctx);
        x.d = Rational::one();
        x.p = vec![Poly::one(); ctx.f as usize];
        x
    }

    /// Builds an element, checking the shape against `ctx` and the three
    /// relations.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        ctx: CohomContext,
        d: Rational,
        a: Vec<Rational>,
        b: Vec<Rational>,
        c: Vec<Rational>,
        c_se: Vec<Rational>,
        p: Vec<Poly>,
        q: Vec<Poly>,
    ) -> Result<Self> {
        let f = ctx.f as usize;
        for (name, got, want) in [
            ("A", a.len(), ctx.g as usize),
            ("B", b.len(), ctx.num_b()),
            ("C", c.len(), f),
            ("C_se", c_se.len(), ctx.s as usize),
            ("p", p.len(), f),
            ("q", q.len(), f),
        ] {
            if got != want {
                return Err(Error::Shape(format!(
                    "{name} has length {got}, expected {want}"
                )));
            }
        }
        let x = CohomElement {
            ctx,
            d,
            a,
            b,
            c,
            c_se,
            p,
            q,
        };
        x.check_relations()?;
        Ok(x)
    }

    fn check_relations(&self) -> Result<()> {
        let sum: Rational = self
            .a
            .iter()
            .chain(&self.b)
            .chain(&self.c)
            .chain(&self.c_se)
            .sum();
        if !sum.is_zero() {
            return Err(Error::Relation {
                relation: 1,
                detail: format!("ΣA + ΣB + ΣC + ΣC_se = {sum}, expected 0"),
            });
        }
        for (i, p) in self.p.iter().enumerate() {
            if p.eval0() != self.d {
                return Err(Error::Relation {
                    relation: 2,
                    detail: format!("p_{}(0) = {} but D = {}", i + 1, p.eval0(), self.d),
                });
            }
        }
        for (i, (q, c)) in self.q.iter().zip(&self.c).enumerate() {
            if q.eval0() != *c {
                return Err(Error::Relation {
                    relation: 3,
                    detail: format!("q_{}(0) = {} but C_{} = {}", i + 1, q.eval0(), i + 1, c),
                });
            }
        }
        Ok(())
    }

    /// `uᵏ δᵢ` for `k ≥ 1`, with `i` counted from 0.
    pub fn u_delta(ctx: CohomContext, i: usize, k: usize) -> Result<Self> {
        Self::single_poly(ctx, i, k, true)
    }

    /// `uᵏ θᵢ` for `k ≥ 1`, with `i` counted from 0.
    pub fn u_theta(ctx: CohomContext, i: usize, k: usize) -> Result<Self> {
        Self::single_poly(ctx, i, k, false)
    }

    fn single_poly(ctx: CohomContext, i: usize, k: usize, delta: bool) -> Result<Self> {
        if i >= ctx.f as usize {
            return Err(Error::Shape(format!("fixed circle index {i} out of range")));
        }
        if k == 0 {
            return Err(Error::Shape("u-power must be positive".to_string()));
        }
        let mut x = Self::zero(ctx);
        let m = Poly::monomial(Rational::one(), k);
        if delta {
            x.p[i] = m;
        } else {
            x.q[i] = m;
        }
        Ok(x)
    }

    /// `π*(u) = Σᵢ uδᵢ`.
    pub fn pi_star_u(ctx: CohomContext) -> Self {
        let mut x = Self::zero(ctx);
        x.p = vec![Poly::monomial(Rational::one(), 1); ctx.f as usize];
        x
    }

    pub fn context(&self) -> CohomContext {
        self.ctx
    }
    pub fn d(&self) -> &Rational {
        &self.d
    }
    pub fn a(&self) -> &[Rational] {
        &self.a
    }
    pub fn b(&self) -> &[Rational] {
        &self.b
    }
    pub fn c(&self) -> &[Rational] {
        &self.c
    }
    pub fn c_se(&self) -> &[Rational] {
        &self.c_se
    }
    pub fn p(&self) -> &[Poly] {
        &self.p
    }
    pub fn q(&self) -> &[Poly] {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(self.ctx)
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        num: impl Fn(&Rational, &Rational) -> Rational,
        pol: impl Fn(&Poly, &Poly) -> Poly,
    ) -> Self {
        let nums = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
            x.iter().zip(y).map(|(a, b)| num(a, b)).collect()
        };
        let polys = |x: &[Poly], y: &[Poly]| -> Vec<Poly> {
            x.iter().zip(y).map(|(a, b)| pol(a, b)).collect()
        };
        CohomElement {
            ctx: self.ctx,
            d: num(&self.d, &other.d),
            a: nums(&self.a, &other.a),
            b: nums(&self.b, &other.b),
            c: nums(&self.c, &other.c),
            c_se: nums(&self.c_se, &other.c_se),
            p: polys(&self.p, &other.p),
            q: polys(&self.q, &other.q),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self.zip_with(other, |a, b| a + b, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        Ok(self.zip_with(other, |a, b| a - b, |a, b| a - b))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.zip_with(self, |a, _| a * k, |a, _| a.scale(k))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Homogeneous components keyed by degree; zero components are omitted.
    ///
    /// Degree 0 is `D·1`, degree 1 collects `A`, `B`, `C`, `C_se` (with the
    /// matching constant terms of `qᵢ`), degree `2k` is the `uᵏ` part of the
    /// `pᵢ` and degree `2k + 1` the `uᵏ` part of the `qᵢ`.
    pub fn degree_decompose(&self) -> BTreeMap<u32, CohomElement> {
        let mut out = BTreeMap::new();
        let ctx = self.ctx;
        if !self.d.is_zero() {
            out.insert(0, Self::one(ctx).scale(&self.d));
        }
        let mut deg1 = Self::zero(ctx);
        deg1.a = self.a.clone();
        deg1.b = self.b.clone();
        deg1.c = self.c.clone();
        deg1.c_se = self.c_se.clone();
        deg1.q = self.c.iter().map(|c| Poly::constant(c.clone())).collect();
        if !deg1.is_zero() {
            out.insert(1, deg1);
        }
        let top = self
            .p
            .iter()
            .chain(&self.q)
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0);
        for k in 1..=top {
            let mut even = Self::zero(ctx);
            let mut odd = Self::zero(ctx);
            for i in 0..ctx.f as usize {
                even.p[i] = Poly::monomial(self.p[i].coeff(k), k);
                odd.q[i] = Poly::monomial(self.q[i].coeff(k), k);
            }
            if !even.is_zero() {
                out.insert(2 * k as u32, even);
            }
            if !odd.is_zero() {
                out.insert(2 * k as u32 + 1, odd);
            }
        }
        out
    }

    /// Top degree of a nonzero homogeneous component, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.degree_decompose().keys().next_back().copied()
    }

    /// Cup product, computed blockwise on homogeneous components: degree 0
    /// acts by scalars, `H¹·H¹ = 0`, `H¹·H^{≥2}` sees only the restriction
    /// `Cᵢθᵢ` to the fixed circles, and `H^{≥2}·H^{≥2}` multiplies
    /// `pδ + qθ` componentwise with `θ² = 0`.
    pub fn cup(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let ctx = self.ctx;
        let xs = self.degree_decompose();
        let ys = other.degree_decompose();
        let mut acc = Self::zero(ctx);
        for (&dx, x) in &xs {
            for (&dy, y) in &ys {
                let term = match (dx, dy) {
                    (0, _) => y.scale(&x.d),
                    (_, 0) => x.scale(&y.d),
                    (1, 1) => continue,
                    (1, _) => restrict_times(x, y),
                    (_, 1) => restrict_times(y, x),
                    _ => {
                        let mut t = Self::zero(ctx);
                        for i in 0..ctx.f as usize {
                            t.p[i] = &x.p[i] * &y.p[i];
                            t.q[i] = &(&x.p[i] * &y.q[i]) + &(&x.q[i] * &y.p[i]);
                        }
                        t
                    }
                };
                acc = acc.add(&term)?;
            }
        }
        Ok(acc)
    }

    /// `π*(u)ᵏ ∪ x`.
    pub fn module_action(power: u32, x: &Self) -> Result<Self> {
        let u = Self::pi_star_u(x.ctx);
        let mut out = x.clone();
        for _ in 0..power {
            out = u.cup(&out)?;
        }
        Ok(out)
    }
}

/// Degree-1 class `x` times a class `y` of degree at least 2.
fn restrict_times(x: &CohomElement, y: &CohomElement) -> CohomElement {
    let mut t = CohomElement::zero(x.ctx);
    for i in 0..x.ctx.f as usize {
        t.q[i] = y.p[i].scale(&x.c[i]);
    }
    t
}

impl fmt::Display for CohomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        let push = |terms: &mut Vec<String>, c: &Rational, sym: String| {
            if c.is_zero() {
                return;
            }
            terms.push(if c.is_one() {
                sym
            } else if *c == -Rational::one() {
                format!("-{sym}")
            } else {
                format!("{c}{sym}")
            });
        };
        if !self.d.is_zero() {
            terms.push(self.d.to_string());
        }
        for (k, a) in self.a.iter().enumerate() {
            push(&mut terms, a, format!("α{}", k + 1));
        }
        for (k, b) in self.b.iter().enumerate() {
            push(&mut terms, b, format!("β{}", k + 1));
        }
        for (i, c) in self.c.iter().enumerate() {
            push(&mut terms, c, format!("θ{}", i + 1));
        }
        for (j, c) in self.c_se.iter().enumerate() {
            push(&mut terms, c, format!("θ{}", self.ctx.f as usize + j + 1));
        }
        let upow = |k: usize| match k {
            1 => "u".to_string(),
            _ => format!("u^{k}"),
        };
        for i in 0..self.ctx.f as usize {
            for (k, c) in self.p[i].coeffs().iter().enumerate().skip(1) {
                push(&mut terms, c, format!("{}δ{}", upow(k), i + 1));
            }
            for (k, c) in self.q[i].coeffs().iter().enumerate().skip(1) {
                push(&mut terms, c, format!("{}θ{}", upow(k), i + 1));
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::Orientability::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ctx2() -> CohomContext {
        CohomContext::new(Orientable, 0, 2, 0).unwrap()
    }

    fn theta12(ctx: CohomContext) -> CohomElement {
        CohomElement::from_parts(
            ctx,
            r(0),
            vec![],
            vec![],
            vec![r(1), r(-1)],
            vec![],
            vec![Poly::zero(), Poly::zero()],
            vec![Poly::constant(r(1)), Poly::constant(r(-1))],
        )
        .unwrap()
    }

    #[test]
    fn construction_and_relations() {
        let ctx = ctx2();
        assert!(CohomElement::zero(ctx).is_zero());
        assert_eq!(
            theta12(ctx)
                .degree_decompose()
                .keys()
                .copied()
                .collect::<Vec<_>>(),
            vec![1]
        );

        let err = CohomElement::from_parts(
            ctx,
            r(0),
            vec![],
            vec![],
            vec![r(1), r(0)],
            vec![],
            vec![Poly::zero(), Poly::zero()],
            vec![Poly::constant(r(1)), Poly::zero()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Relation { relation: 1, .. }));

        let err = CohomElement::from_parts(
            ctx,
            r(1),
            vec![],
            vec![],
            vec![r(0), r(0)],
            vec![],
            vec![Poly::one(), Poly::zero()],
            vec![Poly::zero(), Poly::zero()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Relation { relation: 2, .. }));

        assert!(matches!(
            CohomElement::from_parts(
                ctx,
                r(0),
                vec![r(0)],
                vec![],
                vec![],
                vec![],
                vec![],
                vec![]
            ),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn cup_examples() {
        let ctx = ctx2();
        let t = theta12(ctx);
        assert!(t.cup(&t).unwrap().is_zero());

        let ud = CohomElement::u_delta(ctx, 0, 1)
            .unwrap()
            .sub(&CohomElement::u_delta(ctx, 1, 1).unwrap())
            .unwrap();
        let expected = CohomElement::u_theta(ctx, 0, 1)
            .unwrap()
            .add(&CohomElement::u_theta(ctx, 1, 1).unwrap())
            .unwrap();
        assert_eq!(t.cup(&ud).unwrap(), expected);
        assert_eq!(ud.cup(&t).unwrap(), expected);

        let ud1 = CohomElement::u_delta(ctx, 0, 1).unwrap();
        assert_eq!(
            ud1.cup(&ud1).unwrap(),
            CohomElement::u_delta(ctx, 0, 2).unwrap()
        );

        let one = CohomElement::one(ctx);
        for x in [&t, &ud, &ud1] {
            assert_eq!(one.cup(x).unwrap(), *x);
        }
    }

    #[test]
    fn module_action_examples() {
        let ctx = ctx2();
        let one = CohomElement::one(ctx);
        assert_eq!(
            CohomElement::module_action(1, &one).unwrap(),
            CohomElement::pi_star_u(ctx)
        );
        let t = theta12(ctx);
        let ut = CohomElement::u_theta(ctx, 0, 1)
            .unwrap()
            .sub(&CohomElement::u_theta(ctx, 1, 1).unwrap())
            .unwrap();
        assert_eq!(CohomElement::module_action(1, &t).unwrap(), ut);
        assert_eq!(CohomElement::module_action(0, &t).unwrap(), t);
    }

    #[test]
    fn decompose_examples() {
        let ctx = ctx2();
        assert!(CohomElement::zero(ctx).degree_decompose().is_empty());
        let one = CohomElement::one(ctx);
        assert_eq!(
            one.degree_decompose().keys().copied().collect::<Vec<_>>(),
            vec![0]
        );

        let x = one
            .add(&CohomElement::u_delta(ctx, 0, 1).unwrap())
            .unwrap()
            .add(&CohomElement::u_theta(ctx, 1, 1).unwrap())
            .unwrap();
        let parts = x.degree_decompose();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0, 2, 3]);
        let sum = parts
            .values()
            .fold(CohomElement::zero(ctx), |acc, p| acc.add(p).unwrap());
        assert_eq!(sum, x);
    }

    #[test]
    fn context_mismatch() {
        let a = CohomElement::one(ctx2());
        let b = CohomElement::one(CohomContext::new(Orientable, 0, 3, 0).unwrap());
        assert_eq!(a.cup(&b), Err(Error::ContextMismatch));
        assert_eq!(a.add(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn display() {
        let ctx = ctx2();
        assert_eq!(theta12(ctx).to_string(), "θ1 - θ2");
        assert_eq!(CohomElement::pi_star_u(ctx).to_string(), "uδ1 + uδ2");
        assert_eq!(CohomElement::zero(ctx).to_string(), "0");
    }
}
