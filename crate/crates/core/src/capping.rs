//! Capping off the boundary: fills tori, spheres and Klein bottles with
//! standard pieces and sews projective planes together in pairs, producing a
//! closed datum with `b = 0`.

use serde::Serialize;

use crate::graph::{self, EdgeLabel, VertexKind};
use crate::invariants::{
    derived_counts, normalize, validate, OrbitInvariants, Orientability, SeifertPair,
};
use crate::{CycleGraph, Error, Result};

/// `χ(M/S¹)`: `2 − 2g − B` for `ε = o` and `2 − g − B` for `ε = n`, where
/// `B` counts all boundary circles of the orbit surface.
pub fn orbit_euler_characteristic(inv: &OrbitInvariants) -> i64 {
    let bc = inv.boundary_circles() as i64;
    let g = inv.g as i64;
    match inv.eps {
        Orientability::Orientable => 2 - 2 * g - bc,
        Orientability::Nonorientable => 2 - g - bc,
    }
}

/// Two RP edges of one cycle sewn together with an `ℝP² × I` band.
/// Positions index the canonical word of the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RpPairing {
    pub cycle: usize,
    pub positions: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleKind {
    F,
    SE,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleSource {
    /// A cycle without RP edges, closed up after `SP → F` or `K → SE`.
    Filled,
    /// A circle running through at least one edge added by RP sewing.
    Sewn,
}

/// Where a new fixed or special-exceptional circle of the output came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircleProvenance {
    pub kind: CircleKind,
    pub cycle: usize,
    pub source: CircleSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CappingReport {
    pub input: OrbitInvariants,
    pub output: OrbitInvariants,
    pub chi_before: i64,
    pub chi_after: i64,
    pub rp_pairings: Vec<RpPairing>,
    pub circles: Vec<CircleProvenance>,
    pub notes: Vec<String>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Caps one canonical cycle word. Vertex `j` sits between edges `j` and
/// `j + 1`; edge `j` runs from vertex `j − 1` to vertex `j`.
fn cap_cycle(
    index: usize,
    word: &[EdgeLabel],
    pairings: &mut Vec<RpPairing>,
    circles: &mut Vec<CircleProvenance>,
) -> Result<()> {
    let len = word.len();
    let prev = |j: usize| (j + len - 1) % len;
    let kinds: Vec<VertexKind> = (0..len)
        .map(|j| {
            graph::vertex_kind(word[j], word[(j + 1) % len]).ok_or_else(|| {
                Error::CappingInconsistent(format!("cycle {index} has an illegal corner at {j}"))
            })
        })
        .collect::<Result<_>>()?;

    let mut uf = UnionFind::new(len);
    for (j, &label) in word.iter().enumerate() {
        if label != EdgeLabel::RP {
            uf.union(prev(j), j);
        }
    }

    let rps: Vec<usize> = (0..len).filter(|&j| word[j] == EdgeLabel::RP).collect();
    if !rps.len().is_multiple_of(2) {
        return Err(Error::CappingInconsistent(format!(
            "cycle {index} has an odd number of RP edges"
        )));
    }
    // endpoint of RP edge j with the given corner type
    let end = |j: usize, kind: VertexKind| {
        if kinds[prev(j)] == kind {
            prev(j)
        } else {
            j
        }
    };
    for pair in rps.chunks(2) {
        let (r1, r2) = (pair[0], pair[1]);
        pairings.push(RpPairing {
            cycle: index,
            positions: (r1, r2),
        });
        for kind in [VertexKind::Fixed, VertexKind::SpecialExceptional] {
            uf.union(end(r1, kind), end(r2, kind));
        }
    }

    let source = if rps.is_empty() {
        CircleSource::Filled
    } else {
        CircleSource::Sewn
    };
    let mut roots = Vec::new();
    for (v, vk) in kinds.iter().enumerate() {
        let root = uf.find(v);
        if roots.contains(&root) {
            continue;
        }
        roots.push(root);
        let kind = match vk {
            VertexKind::Fixed => CircleKind::F,
            VertexKind::SpecialExceptional => CircleKind::SE,
        };
        circles.push(CircleProvenance {
            kind,
            cycle: index,
            source,
        });
    }
    Ok(())
}

/// Caps off every boundary component of a valid datum with boundary.
///
/// Cycles are processed in canonical order and RP edges are paired
/// consecutively along each canonical word, so the result is reproducible.
/// The orbit surface keeps its orientability whenever the Euler
/// characteristic allows it and becomes nonorientable otherwise.
pub fn cap_off(inv: &OrbitInvariants) -> Result<CappingReport> {
    let report = validate(inv);
    if !report.ok {
        return Err(Error::Invalid(report));
    }
    if inv.is_closed() {
        return Err(Error::NothingToCap);
    }

    let words = graph::graph_canonical(&inv.graph);
    let mut rp_pairings = Vec::new();
    let mut circles = Vec::new();
    for (i, w) in words.iter().enumerate() {
        cap_cycle(i, w.labels(), &mut rp_pairings, &mut circles)?;
    }

    let new_f = circles.iter().filter(|c| c.kind == CircleKind::F).count() as u32;
    let new_s = circles.len() as u32 - new_f;
    let f = inv.f + new_f;
    let s = inv.s + new_s;

    let r_p = derived_counts(inv).r_p as i64;
    let chi_before = orbit_euler_characteristic(inv);
    let chi_after = chi_before + inv.t as i64 - r_p / 2;

    let rest = 2 - (f + s) as i64 - chi_after;
    let (eps, g) = match inv.eps {
        Orientability::Orientable if rest >= 0 && rest % 2 == 0 => {
            (Orientability::Orientable, rest / 2)
        }
        _ if rest >= 1 => (Orientability::Nonorientable, rest),
        _ => {
            return Err(Error::CappingInconsistent(format!(
                "chi = {chi_after} with {} boundary circles admits no genus for eps = {}",
                f + s,
                inv.eps.symbol()
            )))
        }
    };

    let mut notes = vec![
        "b = 0 already holds with boundary; the b-correcting twist changes only the gluing"
            .to_string(),
    ];
    if inv.t > 0 {
        notes.push(format!("filled {} torus boundaries with solid tori", inv.t));
    }
    if !rp_pairings.is_empty() {
        notes.push(format!(
            "sewed {} RP pairs; the choice of pairs and the orientability of the band sum are conventions",
            rp_pairings.len()
        ));
    }
    if eps != inv.eps {
        notes.push(
            "no orientable surface has this Euler characteristic and boundary count; output is nonorientable"
                .to_string(),
        );
    }
    for c in &circles {
        notes.push(format!(
            "new {} circle from cycle {} ({})",
            match c.kind {
                CircleKind::F => "F",
                CircleKind::SE => "SE",
            },
            c.cycle,
            match c.source {
                CircleSource::Filled => "filled",
                CircleSource::Sewn => "sewn",
            }
        ));
    }

    let candidate = OrbitInvariants {
        b: 0,
        eps,
        g: u32::try_from(g)
            .map_err(|_| Error::CappingInconsistent(format!("genus {g} overflows")))?,
        f,
        s,
        t: 0,
        pairs: inv.pairs.clone(),
        graph: CycleGraph::empty(),
    };
    let output = if eps != inv.eps {
        let n = normalize(&candidate)
            .map_err(|e| Error::CappingInconsistent(format!("capped datum is invalid: {e}")))?;
        if n.pairs != candidate.pairs {
            notes.push("Seifert pairs renormalized to 0 < n <= m/2".to_string());
        }
        n
    } else {
        candidate
    };
    let check = validate(&output);
    if !check.ok {
        return Err(Error::CappingInconsistent(format!(
            "capped datum is invalid: {check}"
        )));
    }

    Ok(CappingReport {
        input: inv.clone(),
        output,
        chi_before,
        chi_after,
        rp_pairings,
        circles,
        notes,
    })
}

/// Rechecks a report independently of how it was produced.
pub fn verify_capping(rep: &CappingReport) -> bool {
    let out = &rep.output;
    let counted = |k: CircleKind| rep.circles.iter().filter(|c| c.kind == k).count() as u64;
    let r_p = derived_counts(&rep.input).r_p as i64;
    validate(out).ok
        && out.is_closed()
        && out.b == 0
        && rep.chi_before == orbit_euler_characteristic(&rep.input)
        && rep.chi_after == orbit_euler_characteristic(out)
        && rep.chi_after == rep.chi_before + rep.input.t as i64 - r_p / 2
        && out.f as u64 == rep.input.f as u64 + counted(CircleKind::F)
        && out.s as u64 == rep.input.s as u64 + counted(CircleKind::SE)
        && sorted(&out.pairs, false) == sorted(&rep.input.pairs, out.eps != rep.input.eps)
}

fn sorted(p: &[SeifertPair], fold: bool) -> Vec<SeifertPair> {
    let mut v: Vec<SeifertPair> = p
        .iter()
        .map(|&SeifertPair { m, n }| SeifertPair::new(m, if fold { n.min(m - n) } else { n }))
        .collect();
    v.sort();
    v
}
