//! Helpers shared by the integration tests: random data and independent
//! reference formulas.
#![allow(dead_code)]

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use orbitfold::graph::EdgeLabel;
use orbitfold::poly::Poly;
use orbitfold::{CohomContext, CohomElement, OrbitInvariants, Orientability, Rational};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Betti numbers of a closed datum with `f + s > 0`, straight from the
/// closed-case formula: `b⁰ = 1`, `b¹ = 2g + f + s − 1` (or `g + f + s − 1`
/// nonorientable), `bᵏ = f` for `k ≥ 2`.
pub fn closed_betti(eps: Orientability, g: u64, f: u64, s: u64, upto: usize) -> Vec<u64> {
    (0..=upto)
        .map(|k| match k {
            0 => 1,
            1 => match eps {
                Orientability::Orientable => 2 * g + f + s - 1,
                Orientability::Nonorientable => g + f + s - 1,
            },
            _ => f,
        })
        .collect()
}

/// `χ` of the orbit surface, computed from scratch.
pub fn chi(inv: &OrbitInvariants) -> i64 {
    let boundary = (inv.f + inv.s + inv.t) as i64 + inv.graph.cycles.len() as i64;
    let genus_term = match inv.eps {
        Orientability::Orientable => 2 * inv.g as i64,
        Orientability::Nonorientable => inv.g as i64,
    };
    2 - genus_term - boundary
}

/// Corner types read off a junction: a corner touching an `F` edge is a
/// fixed-point corner, one touching an `SE` edge a special-exceptional one.
pub fn corner_counts(cycle: &[EdgeLabel]) -> (u64, u64) {
    let (mut vf, mut vs) = (0, 0);
    for i in 0..cycle.len() {
        let pair = [cycle[i], cycle[(i + 1) % cycle.len()]];
        if pair.contains(&EdgeLabel::F) {
            vf += 1;
        }
        if pair.contains(&EdgeLabel::SE) {
            vs += 1;
        }
    }
    (vf, vs)
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.3) {
        return Rational::zero();
    }
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

fn random_poly<R: Rng>(rng: &mut R, constant: Rational, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let mut c = vec![constant];
    c.extend((1..=deg).map(|_| small_rational(rng)));
    Poly::new(c)
}

pub fn random_context<R: Rng>(rng: &mut R, max_f: u32) -> CohomContext {
    let eps = if rng.gen_bool(0.5) {
        Orientability::Orientable
    } else {
        Orientability::Nonorientable
    };
    let g = match eps {
        Orientability::Orientable => rng.gen_range(0..=2),
        Orientability::Nonorientable => rng.gen_range(1..=2),
    };
    CohomContext::new(eps, g, rng.gen_range(1..=max_f), rng.gen_range(0..=2)).unwrap()
}

/// A random element satisfying the three relations, with polynomial degree
/// at most `max_deg`.
pub fn random_element<R: Rng>(rng: &mut R, ctx: CohomContext, max_deg: usize) -> CohomElement {
    let f = ctx.f as usize;
    let d = small_rational(rng);
    let a: Vec<Rational> = (0..ctx.g).map(|_| small_rational(rng)).collect();
    let b: Vec<Rational> = (0..ctx.num_b()).map(|_| small_rational(rng)).collect();
    let mut c: Vec<Rational> = (0..f).map(|_| small_rational(rng)).collect();
    let c_se: Vec<Rational> = (0..ctx.s).map(|_| small_rational(rng)).collect();
    // fix relation (1) through one C coefficient
    let rest: Rational = a.iter().chain(&b).chain(&c[1..]).chain(&c_se).sum();
    c[0] = -rest;
    let p = (0..f)
        .map(|_| random_poly(rng, d.clone(), max_deg))
        .collect();
    let q = c
        .iter()
        .map(|ci| random_poly(rng, ci.clone(), max_deg))
        .collect();
    CohomElement::from_parts(ctx, d, a, b, c, c_se, p, q).unwrap()
}

/// Reference product: on each fixed circle `(p, q)·(p', q') = (pp', pq' + qp')`,
/// and the orbit-surface part of degree 1 is scaled by the other factor's
/// degree-0 coefficient.
pub fn reference_cup(x: &CohomElement, y: &CohomElement) -> CohomElement {
    let ctx = x.context();
    let (dx, dy) = (x.d().clone(), y.d().clone());
    let mix = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        u.iter().zip(v).map(|(a, b)| &dx * b + &dy * a).collect()
    };
    let f = ctx.f as usize;
    let p = (0..f).map(|i| &x.p()[i] * &y.p()[i]).collect();
    let q = (0..f)
        .map(|i| &(&x.p()[i] * &y.q()[i]) + &(&x.q()[i] * &y.p()[i]))
        .collect();
    CohomElement::from_parts(
        ctx,
        &dx * &dy,
        mix(x.a(), y.a()),
        mix(x.b(), y.b()),
        mix(x.c(), y.c()),
        mix(x.c_se(), y.c_se()),
        p,
        q,
    )
    .expect("reference product satisfies the relations")
}

/// Applies a random rotation and, half the time, a reflection to a cycle.
pub fn perturb_cycle<R: Rng>(rng: &mut R, cycle: &[EdgeLabel]) -> Vec<EdgeLabel> {
    let mut c = cycle.to_vec();
    let k = rng.gen_range(0..c.len());
    c.rotate_left(k);
    if rng.gen_bool(0.5) {
        c.reverse();
    }
    c
}

/// A datum with the same canonical form: cycles rotated, reflected and
/// permuted, pairs permuted, and (under `ε = n`) pairs and `b` moved to
/// other representatives of their normalization class.
pub fn perturb<R: Rng>(rng: &mut R, inv: &OrbitInvariants) -> OrbitInvariants {
    let mut out = inv.clone();
    for c in &mut out.graph.cycles {
        *c = perturb_cycle(rng, c);
    }
    out.graph.cycles.shuffle(rng);
    out.pairs.shuffle(rng);
    if out.eps == Orientability::Nonorientable {
        for p in &mut out.pairs {
            if rng.gen_bool(0.5) {
                p.n = p.m - p.n;
            }
        }
        if out.is_closed_free() {
            if out.pairs.iter().any(|p| p.m == 2) {
                out.b = rng.gen_range(-5..=5);
            } else {
                out.b += 2 * rng.gen_range(-3..=3);
            }
        }
    }
    out
}
