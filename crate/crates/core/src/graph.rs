//! Labelled cycle graphs recording the corners of an orbit space with
//! boundary.
//!
//! Each cycle lists its edges in traversal order. Interior-type edges
//! ([`EdgeLabel::F`], [`EdgeLabel::SE`]) are the orbit images of fixed and
//! special-exceptional strata that touch `∂M`; boundary-type edges
//! ([`EdgeLabel::SP`], [`EdgeLabel::K`], [`EdgeLabel::RP`]) are orbit images of
//! sphere, Klein-bottle and projective-plane boundary components. Vertices are
//! not stored: the vertex between two consecutive edges is `V^F` when the
//! interior edge is `F` and `V^S` when it is `SE`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Edge labels, declared in the global canonical order `F < SE < SP < K < RP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeLabel {
    F,
    SE,
    SP,
    K,
    RP,
}

impl EdgeLabel {
    pub const ALL: [EdgeLabel; 5] = [
        EdgeLabel::F,
        EdgeLabel::SE,
        EdgeLabel::SP,
        EdgeLabel::K,
        EdgeLabel::RP,
    ];

    pub fn is_interior(self) -> bool {
        matches!(self, EdgeLabel::F | EdgeLabel::SE)
    }

    pub fn is_boundary(self) -> bool {
        !self.is_interior()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeLabel::F => "F",
            EdgeLabel::SE => "SE",
            EdgeLabel::SP => "SP",
            EdgeLabel::K => "K",
            EdgeLabel::RP => "RP",
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Corner type of the vertex joining two consecutive edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Endpoint of a fixed interval.
    Fixed,
    /// Endpoint of a special-exceptional interval.
    SpecialExceptional,
}

/// The vertex joining `a` and `b`, if the pair forms a legal corner.
pub fn vertex_kind(a: EdgeLabel, b: EdgeLabel) -> Option<VertexKind> {
    use EdgeLabel::*;
    match (a, b) {
        (F, SP) | (SP, F) | (F, RP) | (RP, F) => Some(VertexKind::Fixed),
        (SE, K) | (K, SE) | (SE, RP) | (RP, SE) => Some(VertexKind::SpecialExceptional),
        _ => None,
    }
}

/// Union of labelled cycles. The cycle order carries no meaning.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleGraph {
    pub cycles: Vec<Vec<EdgeLabel>>,
}

impl CycleGraph {
    pub fn new(cycles: Vec<Vec<EdgeLabel>>) -> Self {
        CycleGraph { cycles }
    }

    pub fn empty() -> Self {
        CycleGraph::default()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn count(&self, label: EdgeLabel) -> usize {
        self.edges().filter(|&l| l == label).count()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeLabel> + '_ {
        self.cycles.iter().flatten().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphViolationKind {
    EmptyCycle,
    OddLength {
        len: usize,
    },
    /// Two interior-type or two boundary-type edges meet at a corner.
    NotAlternating {
        left: EdgeLabel,
        right: EdgeLabel,
    },
    /// An interior edge meets a boundary edge of the wrong family
    /// (`F` with `K`, or `SE` with `SP`).
    IllegalCorner {
        left: EdgeLabel,
        right: EdgeLabel,
    },
    /// An `RP` edge must join one `V^F` and one `V^S` corner.
    RpEndpoints {
        left: EdgeLabel,
        right: EdgeLabel,
    },
}

/// A violated adjacency rule, located by cycle index and edge position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphViolation {
    pub cycle: usize,
    pub position: usize,
    #[serde(flatten)]
    pub kind: GraphViolationKind,
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, p) = (self.cycle, self.position);
        match &self.kind {
            GraphViolationKind::EmptyCycle => write!(f, "cycle {c} is empty"),
            GraphViolationKind::OddLength { len } => {
                write!(f, "cycle {c} has odd length {len}")
            }
            GraphViolationKind::NotAlternating { left, right } => write!(
                f,
                "cycle {c}: {left} at position {p} is adjacent to {right}; interior and boundary edges must alternate"
            ),
            GraphViolationKind::IllegalCorner { left, right } => write!(
                f,
                "cycle {c}: {left} at position {p} cannot share a corner with {right}"
            ),
            GraphViolationKind::RpEndpoints { left, right } => write!(
                f,
                "cycle {c}: RP at position {p} has neighbours {left} and {right}, expected one F and one SE"
            ),
        }
    }
}

fn check_cycle(index: usize, cycle: &[EdgeLabel], out: &mut Vec<GraphViolation>) {
    let len = cycle.len();
    let at = |position, kind| GraphViolation {
        cycle: index,
        position,
        kind,
    };
    if len == 0 {
        out.push(at(0, GraphViolationKind::EmptyCycle));
        return;
    }
    if len % 2 == 1 {
        out.push(at(0, GraphViolationKind::OddLength { len }));
    }
    for i in 0..len {
        let left = cycle[i];
        let right = cycle[(i + 1) % len];
        if left.is_interior() == right.is_interior() {
            out.push(at(i, GraphViolationKind::NotAlternating { left, right }));
        } else if vertex_kind(left, right).is_none() {
            out.push(at(i, GraphViolationKind::IllegalCorner { left, right }));
        }
    }
    for i in 0..len {
        if cycle[i] != EdgeLabel::RP {
            continue;
        }
        let left = cycle[(i + len - 1) % len];
        let right = cycle[(i + 1) % len];
        let ok = matches!(
            (left, right),
            (EdgeLabel::F, EdgeLabel::SE) | (EdgeLabel::SE, EdgeLabel::F)
        );
        if !ok {
            out.push(at(i, GraphViolationKind::RpEndpoints { left, right }));
        }
    }
}

/// Checks every adjacency rule on every cycle and returns all violations.
pub fn validate_graph(graph: &CycleGraph) -> Vec<GraphViolation> {
    let mut out = Vec::new();
    for (i, cycle) in graph.cycles.iter().enumerate() {
        check_cycle(i, cycle, &mut out);
    }
    out
}

pub fn is_valid_cycle(cycle: &[EdgeLabel]) -> bool {
    let mut out = Vec::new();
    check_cycle(0, cycle, &mut out);
    out.is_empty()
}

/// Canonical representative of a cyclic label sequence: the
/// lexicographically least word over all rotations of both traversal
/// directions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWord(Vec<EdgeLabel>);

impl CycleWord {
    pub fn labels(&self) -> &[EdgeLabel] {
        &self.0
    }

    pub fn into_labels(self) -> Vec<EdgeLabel> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CycleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(">")
    }
}

pub fn canonicalize_cycle(cycle: &[EdgeLabel]) -> CycleWord {
    let len = cycle.len();
    let mut best: Option<Vec<EdgeLabel>> = None;
    let reversed: Vec<EdgeLabel> = cycle.iter().rev().copied().collect();
    for word in [cycle, &reversed[..]] {
        for shift in 0..len {
            let candidate: Vec<EdgeLabel> = word[shift..]
                .iter()
                .chain(&word[..shift])
                .copied()
                .collect();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    CycleWord(best.unwrap_or_default())
}

/// Sorted multiset of canonical cycle words.
pub fn graph_canonical(graph: &CycleGraph) -> Vec<CycleWord> {
    let mut words: Vec<CycleWord> = graph.cycles.iter().map(|c| canonicalize_cycle(c)).collect();
    words.sort();
    words
}

pub fn graphs_isomorphic(a: &CycleGraph, b: &CycleGraph) -> bool {
    graph_canonical(a) == graph_canonical(b)
}

/// Every valid cycle word of length at most `max_len`, canonical and sorted.
pub fn valid_cycle_words(max_len: usize) -> Vec<CycleWord> {
    let mut out = std::collections::BTreeSet::new();
    let mut word = Vec::new();
    for len in (2..=max_len).step_by(2) {
        extend_words(&mut word, len, &mut out);
    }
    out.into_iter().collect()
}

fn extend_words(
    word: &mut Vec<EdgeLabel>,
    len: usize,
    out: &mut std::collections::BTreeSet<CycleWord>,
) {
    if word.len() == len {
        if is_valid_cycle(word) {
            out.insert(canonicalize_cycle(word));
        }
        return;
    }
    // words start with an interior edge; the canonical rotation does too
    let candidates: &[EdgeLabel] = if word.len().is_multiple_of(2) {
        &[EdgeLabel::F, EdgeLabel::SE]
    } else {
        &[EdgeLabel::SP, EdgeLabel::K, EdgeLabel::RP]
    };
    for &label in candidates {
        if let Some(&prev) = word.last() {
            if vertex_kind(prev, label).is_none() {
                continue;
            }
        }
        word.push(label);
        extend_words(word, len, out);
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::EdgeLabel::*;
    use super::*;

    fn g(cycles: &[&[EdgeLabel]]) -> CycleGraph {
        CycleGraph::new(cycles.iter().map(|c| c.to_vec()).collect())
    }

    #[test]
    fn validate_examples() {
        assert!(validate_graph(&g(&[&[F, SP]])).is_empty());
        assert!(validate_graph(&g(&[&[F, RP, SE, RP]])).is_empty());
        assert!(validate_graph(&g(&[&[F, RP, SE, K, SE, RP]])).is_empty());

        let v = validate_graph(&g(&[&[F, SE]]));
        assert!(!v.is_empty());
        assert!(matches!(
            v[0].kind,
            GraphViolationKind::NotAlternating { left: F, right: SE }
        ));
        assert_eq!(v[0].cycle, 0);
    }

    #[test]
    fn rp_between_two_fixed_corners_rejected() {
        let v = validate_graph(&g(&[&[F, RP, F, SP]]));
        assert!(v
            .iter()
            .any(|x| matches!(x.kind, GraphViolationKind::RpEndpoints { .. })));
        assert!(v.iter().any(|x| x.position == 1));
    }

    #[test]
    fn illegal_corner_and_odd_length() {
        let v = validate_graph(&g(&[&[F, K]]));
        assert!(v
            .iter()
            .any(|x| matches!(x.kind, GraphViolationKind::IllegalCorner { .. })));
        let v = validate_graph(&g(&[&[F, SP, F]]));
        assert!(v
            .iter()
            .any(|x| matches!(x.kind, GraphViolationKind::OddLength { len: 3 })));
        let v = validate_graph(&g(&[&[]]));
        assert_eq!(v[0].kind, GraphViolationKind::EmptyCycle);
    }

    #[test]
    fn violation_names_cycle_and_position() {
        let v = validate_graph(&g(&[&[F, SP], &[SE, K, SE, SP]]));
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.cycle == 1));
        assert!(v.iter().any(|x| x.position == 2 || x.position == 3));
        let text = v[0].to_string();
        assert!(text.contains("cycle 1"), "{text}");
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize_cycle(&[SP, F]).labels(), &[F, SP]);
        assert_eq!(
            canonicalize_cycle(&[RP, SE, RP, F]).labels(),
            &[F, RP, SE, RP]
        );
        assert_eq!(canonicalize_cycle(&[SP, F]), canonicalize_cycle(&[F, SP]));
    }

    #[test]
    fn graph_canonical_ignores_cycle_order() {
        let a = g(&[&[F, SP], &[SE, K]]);
        let b = g(&[&[K, SE], &[SP, F]]);
        assert_eq!(graph_canonical(&a), graph_canonical(&b));
        assert!(graphs_isomorphic(&a, &b));
        assert!(graph_canonical(&CycleGraph::empty()).is_empty());
        assert!(!graphs_isomorphic(&g(&[&[F, SP]]), &g(&[&[SE, K]])));
    }

    #[test]
    fn reflection_of_six_cycle() {
        let a = g(&[&[F, RP, SE, K, SE, RP]]);
        let b = g(&[&[RP, SE, K, SE, RP, F]]);
        let rev: Vec<EdgeLabel> = [F, RP, SE, K, SE, RP].iter().rev().copied().collect();
        assert!(graphs_isomorphic(&a, &b));
        assert!(graphs_isomorphic(&a, &CycleGraph::new(vec![rev])));
    }

    #[test]
    fn two_cycles_are_only_fsp_and_sek() {
        let words = valid_cycle_words(2);
        let labels: Vec<&[EdgeLabel]> = words.iter().map(|w| w.labels()).collect();
        assert_eq!(labels, vec![&[F, SP][..], &[SE, K][..]]);
    }
}
