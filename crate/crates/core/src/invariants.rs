//! The orbit-invariant data model, its validity conditions, normalization and
//! the canonical form used to decide equivariant diffeomorphism.

use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::graph::{self, CycleGraph, CycleWord, EdgeLabel, GraphViolation, VertexKind};
use crate::{Error, Result};

/// Orientability `ε` of the orbit surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientability {
    #[serde(rename = "o")]
    Orientable,
    #[serde(rename = "n")]
    Nonorientable,
}

impl Orientability {
    pub fn symbol(self) -> char {
        match self {
            Orientability::Orientable => 'o',
            Orientability::Nonorientable => 'n',
        }
    }
}

/// Seifert invariants `(m, n)` of an exceptional orbit with stabilizer `ℤ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeifertPair {
    pub m: u64,
    pub n: u64,
}

impl SeifertPair {
    pub fn new(m: u64, n: u64) -> Self {
        SeifertPair { m, n }
    }
}

impl fmt::Display for SeifertPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// The classification datum `{b; (ε,g,f,s,t); (m₁,n₁),…; 𝒢}`.
///
/// Values are not checked on construction; see [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitInvariants {
    pub b: i64,
    pub eps: Orientability,
    pub g: u32,
    pub f: u32,
    pub s: u32,
    pub t: u32,
    pub pairs: Vec<SeifertPair>,
    pub graph: CycleGraph,
}

impl OrbitInvariants {
    /// A closed datum with no exceptional orbits.
    pub fn closed(b: i64, eps: Orientability, g: u32, f: u32, s: u32) -> Self {
        OrbitInvariants {
            b,
            eps,
            g,
            f,
            s,
            t: 0,
            pairs: Vec::new(),
            graph: CycleGraph::empty(),
        }
    }

    pub fn with_pairs(mut self, pairs: &[(u64, u64)]) -> Self {
        self.pairs = pairs.iter().map(|&(m, n)| SeifertPair::new(m, n)).collect();
        self
    }

    pub fn with_boundary(mut self, t: u32, graph: CycleGraph) -> Self {
        self.t = t;
        self.graph = graph;
        self
    }

    /// `t = 0` and no corner graph: the manifold has no boundary.
    pub fn is_closed(&self) -> bool {
        self.t == 0 && self.graph.is_empty()
    }

    /// Closed, without fixed circles or special-exceptional circles.
    pub fn is_closed_free(&self) -> bool {
        self.is_closed() && self.f == 0 && self.s == 0
    }

    /// Number of boundary circles of the orbit surface:
    /// `f + s + t + #cycles`.
    pub fn boundary_circles(&self) -> u64 {
        self.f as u64 + self.s as u64 + self.t as u64 + self.graph.num_cycles() as u64
    }
}

/// Which classification condition a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// Range of the principal Euler number `b`.
    One,
    /// Range and coprimality of Seifert pairs.
    Two,
    /// Adjacency rules of the corner graph.
    Three,
    /// Corner-count identities.
    Parity,
    /// A nonorientable orbit surface needs `g ≥ 1`.
    NonorientableGenus,
}

impl Condition {
    pub fn as_str(self) -> &'static str {
        match self {
            Condition::One => "(1)",
            Condition::Two => "(2)",
            Condition::Three => "(3)",
            Condition::Parity => "parity",
            Condition::NonorientableGenus => "nonorientable-genus",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BWithBoundary {
        b: i64,
    },
    BOutsideZ2 {
        b: i64,
    },
    BWithOrderTwo {
        b: i64,
    },
    PairModulus {
        index: usize,
        pair: SeifertPair,
    },
    PairZero {
        index: usize,
        pair: SeifertPair,
    },
    PairNotCoprime {
        index: usize,
        pair: SeifertPair,
    },
    PairRange {
        index: usize,
        pair: SeifertPair,
    },
    /// `m/2 < n < m` under `ε = n`; fixed by `n ↦ m − n`.
    PairAboveHalf {
        index: usize,
        pair: SeifertPair,
    },
    Graph(GraphViolation),
    Parity(String),
    NonorientableGenusZero,
}

impl Violation {
    pub fn condition(&self) -> Condition {
        match self {
            Violation::BWithBoundary { .. }
            | Violation::BOutsideZ2 { .. }
            | Violation::BWithOrderTwo { .. } => Condition::One,
            Violation::PairModulus { .. }
            | Violation::PairZero { .. }
            | Violation::PairNotCoprime { .. }
            | Violation::PairRange { .. }
            | Violation::PairAboveHalf { .. } => Condition::Two,
            Violation::Graph(_) => Condition::Three,
            Violation::Parity(_) => Condition::Parity,
            Violation::NonorientableGenusZero => Condition::NonorientableGenus,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {}: ", self.condition())?;
        match self {
            Violation::BWithBoundary { b } => {
                write!(
                    f,
                    "b = {b} but b must be 0 when f+s+t > 0 or the graph is nonempty"
                )
            }
            Violation::BOutsideZ2 { b } => write!(
                f,
                "b = {b} but b lies in Z2 = {{0,1}} for a closed nonorientable datum without F/SE"
            ),
            Violation::BWithOrderTwo { b } => write!(
                f,
                "b = {b} but b must be 0 for a closed nonorientable datum with some m = 2"
            ),
            Violation::PairModulus { index, pair } => {
                write!(f, "pair #{index} {pair}: m must be at least 2")
            }
            Violation::PairZero { index, pair } => {
                write!(f, "pair #{index} {pair}: n must be positive")
            }
            Violation::PairNotCoprime { index, pair } => write!(
                f,
                "pair #{index} {pair}: gcd(m, n) = {} is not 1",
                pair.m.gcd(&pair.n)
            ),
            Violation::PairRange { index, pair } => {
                write!(f, "pair #{index} {pair}: n must be less than m")
            }
            Violation::PairAboveHalf { index, pair } => write!(
                f,
                "pair #{index} {pair}: n > m/2 is not allowed when eps = n"
            ),
            Violation::Graph(v) => write!(f, "{v}"),
            Violation::Parity(msg) => f.write_str(msg),
            Violation::NonorientableGenusZero => {
                f.write_str("a nonorientable orbit surface has genus g >= 1")
            }
        }
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Violation", 2)?;
        st.serialize_field("condition", self.condition().as_str())?;
        st.serialize_field("message", &self.to_string())?;
        st.end()
    }
}

/// Outcome of [`validate`]: every violated condition, not just the first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.ok
    }

    pub fn conditions(&self) -> Vec<Condition> {
        self.violations.iter().map(Violation::condition).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate(inv: &OrbitInvariants) -> ValidationReport {
    let mut out = Vec::new();

    // (1)
    let has_boundary_structure = inv.f + inv.s + inv.t > 0 || !inv.graph.is_empty();
    if has_boundary_structure {
        if inv.b != 0 {
            out.push(Violation::BWithBoundary { b: inv.b });
        }
    } else if inv.eps == Orientability::Nonorientable {
        if inv.pairs.iter().any(|p| p.m == 2) {
            if inv.b != 0 {
                out.push(Violation::BWithOrderTwo { b: inv.b });
            }
        } else if !(0..=1).contains(&inv.b) {
            out.push(Violation::BOutsideZ2 { b: inv.b });
        }
    }

    // (2)
    for (index, &pair) in inv.pairs.iter().enumerate() {
        let SeifertPair { m, n } = pair;
        if m < 2 {
            out.push(Violation::PairModulus { index, pair });
        }
        if n == 0 {
            out.push(Violation::PairZero { index, pair });
        } else if m >= 2 && m.gcd(&n) != 1 {
            out.push(Violation::PairNotCoprime { index, pair });
        }
        if n >= m {
            out.push(Violation::PairRange { index, pair });
        } else if inv.eps == Orientability::Nonorientable && 2 * n > m {
            out.push(Violation::PairAboveHalf { index, pair });
        }
    }

    // (3), and the parity identities as an independent check once (3) holds
    let graph_violations = graph::validate_graph(&inv.graph);
    if graph_violations.is_empty() {
        out.extend(
            parity_violations(&derived_counts(inv))
                .into_iter()
                .map(Violation::Parity),
        );
    } else {
        out.extend(graph_violations.into_iter().map(Violation::Graph));
    }

    if inv.eps == Orientability::Nonorientable && inv.g == 0 {
        out.push(Violation::NonorientableGenusZero);
    }

    ValidationReport::from_violations(out)
}

fn parity_violations(dc: &DerivedCounts) -> Vec<String> {
    let mut out = Vec::new();
    if !(dc.v_f == 2 * dc.f0_minus_f && dc.v_f == 2 * dc.s_p + dc.r_p) {
        out.push(format!(
            "v_f = {} but 2(f0-f) = {} and 2s_p+r_p = {}",
            dc.v_f,
            2 * dc.f0_minus_f,
            2 * dc.s_p + dc.r_p
        ));
    }
    if !(dc.v_s == 2 * dc.s0_minus_s && dc.v_s == 2 * dc.k + dc.r_p) {
        out.push(format!(
            "v_s = {} but 2(s0-s) = {} and 2k+r_p = {}",
            dc.v_s,
            2 * dc.s0_minus_s,
            2 * dc.k + dc.r_p
        ));
    }
    for (i, rp) in dc.rp_per_cycle.iter().enumerate() {
        if rp % 2 != 0 {
            out.push(format!("cycle {i} carries {rp} RP edges, an odd number"));
        }
    }
    out
}

/// Normalizes the ranges the classification leaves free: `n ↦ min(n, m−n)`
/// under `ε = n`, and `b` reduced into `ℤ₂` (or to 0 when some `m = 2`) for a
/// closed nonorientable datum without fixed or special-exceptional circles.
///
/// Anything else that fails validation is reported, not repaired.
pub fn normalize(inv: &OrbitInvariants) -> Result<OrbitInvariants> {
    let mut out = inv.clone();
    if out.eps == Orientability::Nonorientable {
        for p in &mut out.pairs {
            if p.n > 0 && p.n < p.m && 2 * p.n > p.m {
                p.n = p.m - p.n;
            }
        }
        if out.is_closed_free() {
            out.b = if out.pairs.iter().any(|p| p.m == 2) {
                0
            } else {
                out.b.rem_euclid(2)
            };
        }
    }
    let report = validate(&out);
    if report.ok {
        Ok(out)
    } else {
        Err(Error::NotNormalizable(report))
    }
}

/// Counts read off the corner graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DerivedCounts {
    /// `F` edges: fixed intervals touching `∂M`.
    pub f0_minus_f: u64,
    /// `SE` edges.
    pub s0_minus_s: u64,
    /// `SP` edges: sphere boundaries.
    pub s_p: u64,
    /// `K` edges: Klein-bottle boundaries.
    pub k: u64,
    /// `RP` edges: projective-plane boundaries.
    pub r_p: u64,
    /// Corners of type `V^F`, counted from the junctions.
    pub v_f: u64,
    /// Corners of type `V^S`, counted from the junctions.
    pub v_s: u64,
    pub boundary_circles: u64,
    pub rp_per_cycle: Vec<u64>,
}

pub fn derived_counts(inv: &OrbitInvariants) -> DerivedCounts {
    let g = &inv.graph;
    let mut dc = DerivedCounts {
        f0_minus_f: g.count(EdgeLabel::F) as u64,
        s0_minus_s: g.count(EdgeLabel::SE) as u64,
        s_p: g.count(EdgeLabel::SP) as u64,
        k: g.count(EdgeLabel::K) as u64,
        r_p: g.count(EdgeLabel::RP) as u64,
        boundary_circles: inv.boundary_circles(),
        ..Default::default()
    };
    for cycle in &g.cycles {
        let len = cycle.len();
        for i in 0..len {
            match graph::vertex_kind(cycle[i], cycle[(i + 1) % len]) {
                Some(VertexKind::Fixed) => dc.v_f += 1,
                Some(VertexKind::SpecialExceptional) => dc.v_s += 1,
                None => {}
            }
        }
        dc.rp_per_cycle
            .push(cycle.iter().filter(|&&l| l == EdgeLabel::RP).count() as u64);
    }
    dc
}

/// Normalized, order-free fingerprint of a valid datum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    pub b: i64,
    pub eps: Orientability,
    pub g: u32,
    pub f: u32,
    pub s: u32,
    pub t: u32,
    pub pairs: Vec<SeifertPair>,
    pub graph: Vec<CycleWord>,
}

impl CanonicalForm {
    pub fn to_invariants(&self) -> OrbitInvariants {
        OrbitInvariants {
            b: self.b,
            eps: self.eps,
            g: self.g,
            f: self.f,
            s: self.s,
            t: self.t,
            pairs: self.pairs.clone(),
            graph: CycleGraph::new(self.graph.iter().map(|w| w.labels().to_vec()).collect()),
        }
    }
}

pub fn canonical_form(inv: &OrbitInvariants) -> Result<CanonicalForm> {
    let n = normalize(inv).map_err(|e| match e {
        Error::NotNormalizable(r) => Error::Invalid(r),
        other => other,
    })?;
    let mut pairs = n.pairs;
    pairs.sort();
    Ok(CanonicalForm {
        b: n.b,
        eps: n.eps,
        g: n.g,
        f: n.f,
        s: n.s,
        t: n.t,
        pairs,
        graph: graph::graph_canonical(&n.graph),
    })
}

/// Whether two valid data classify equivariantly diffeomorphic manifolds.
///
/// Tuples are compared literally after normalization; orientation reversal
/// (for instance `b ↦ −b − r` with `n ↦ m − n`) is not identified.
pub fn equivalent(a: &OrbitInvariants, b: &OrbitInvariants) -> Result<bool> {
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// The seven compact connected surfaces with an effective circle action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Surface2d {
    Disk,
    Cylinder,
    MobiusBand,
    Sphere,
    ProjectivePlane,
    Torus,
    KleinBottle,
}

impl Surface2d {
    pub const ALL: [Surface2d; 7] = [
        Surface2d::Disk,
        Surface2d::Cylinder,
        Surface2d::MobiusBand,
        Surface2d::Sphere,
        Surface2d::ProjectivePlane,
        Surface2d::Torus,
        Surface2d::KleinBottle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Surface2d::Disk => "Disk",
            Surface2d::Cylinder => "Cylinder",
            Surface2d::MobiusBand => "Möbius band",
            Surface2d::Sphere => "Sphere",
            Surface2d::ProjectivePlane => "Projective plane",
            Surface2d::Torus => "Torus",
            Surface2d::KleinBottle => "Klein bottle",
        }
    }

    /// `(boundary circles, fixed points, special-exceptional orbits)`.
    pub fn counts(self) -> (u32, u32, u32) {
        match self {
            Surface2d::Disk => (1, 1, 0),
            Surface2d::Cylinder => (2, 0, 0),
            Surface2d::MobiusBand => (1, 0, 1),
            Surface2d::Sphere => (0, 2, 0),
            Surface2d::ProjectivePlane => (0, 1, 1),
            Surface2d::Torus => (0, 0, 0),
            Surface2d::KleinBottle => (0, 0, 2),
        }
    }
}

impl fmt::Display for Surface2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Identifies a surface with circle action from `(b, f, s)`: the number of
/// boundary circles of the surface, its fixed points and its
/// special-exceptional orbits. Returns `None` for triples that no such
/// surface realizes.
///
/// The orbit space of each surface is a circle or an interval; its boundary
/// count `b̄` is 0 for the torus and 2 for the other six, so `(b̄, f, s)`
/// classifies equally well but is not used here.
pub fn classify_2d(b: u32, f: u32, s: u32) -> Option<Surface2d> {
    Surface2d::ALL.into_iter().find(|x| x.counts() == (b, f, s))
}
