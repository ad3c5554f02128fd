//! The text notation for orbit invariants and the JSON report formats.
//!
//! Text form, whitespace-insensitive:
//!
//! ```text
//! {b=0;(o,g=0,f=2,s=0,t=1);(3,1);G=[<F,SP>]}
//! ```
//!
//! The pairs and graph segments are optional.

pub mod json;
mod parser;

use std::fmt::Write;

use crate::graph::graph_canonical;
use crate::invariants::OrbitInvariants;

pub use json::{emit_json, ToJson};
pub use parser::{parse, Diagnostic, ParseError, SourceSpan};

/// Canonical rendering: pairs sorted, cycles as sorted canonical words, and
/// no `G` segment for an empty graph. Values are not normalized.
pub fn serialize(inv: &OrbitInvariants) -> String {
    let mut out = format!(
        "{{b={};({},g={},f={},s={},t={})",
        inv.b,
        inv.eps.symbol(),
        inv.g,
        inv.f,
        inv.s,
        inv.t
    );
    if !inv.pairs.is_empty() {
        let mut pairs = inv.pairs.clone();
        pairs.sort();
        out.push(';');
        let rendered: Vec<String> = pairs.iter().map(|p| p.to_string()).collect();
        out.push_str(&rendered.join(","));
    }
    if !inv.graph.is_empty() {
        let words: Vec<String> = graph_canonical(&inv.graph)
            .iter()
            .map(|w| w.to_string())
            .collect();
        let _ = write!(out, ";G=[{}]", words.join(","));
    }
    out.push('}');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{CycleGraph, EdgeLabel::*};
    use crate::invariants::{Orientability::*, SeifertPair};

    #[test]
    fn parse_full_example() {
        let text = "{b=0;(o,g=0,f=2,s=0,t=1);(3,1);G=[<F,SP>]}";
        let inv = parse(text).unwrap();
        let expected = OrbitInvariants::closed(0, Orientable, 0, 2, 0)
            .with_pairs(&[(3, 1)])
            .with_boundary(1, CycleGraph::new(vec![vec![F, SP]]));
        assert_eq!(inv, expected);
        assert_eq!(serialize(&inv), text);
    }

    #[test]
    fn parse_minimal_and_whitespace() {
        let inv = parse("{b=0;(o,g=0,f=0,s=0,t=0)}").unwrap();
        assert!(inv.pairs.is_empty() && inv.graph.is_empty());
        let spaced =
            parse(" { b = -4 ;\n ( n , g = 2 , f = 0 , s = 0 , t = 0 ) ; ( 5 , 2 ) } ").unwrap();
        assert_eq!(spaced.b, -4);
        assert_eq!(spaced.eps, Nonorientable);
        assert_eq!(spaced.pairs, vec![SeifertPair::new(5, 2)]);
    }

    #[test]
    fn parse_graph_only() {
        let inv = parse("{b=0;(o,g=0,f=0,s=0,t=0);G=[<SE,K>,<F,RP,SE,RP>]}").unwrap();
        assert_eq!(inv.graph.num_cycles(), 2);
        assert!(inv.pairs.is_empty());
    }

    #[test]
    fn expected_comma_diagnostic() {
        let text = "{b=0;(o,g=0,f=0,s=0,t=0);(4;2)}";
        let err = parse(text).unwrap_err();
        assert_eq!(err.diagnostics.len(), 1);
        let d = &err.diagnostics[0];
        assert!(d.message.starts_with("expected ','"), "{}", d.message);
        assert_eq!(&text[d.span.start..d.span.end], ";");
    }

    #[test]
    fn several_diagnostics() {
        let err = parse("{b=x;(q,g=0,f=0,s=0,t=0);(4,2)}").unwrap_err();
        assert_eq!(err.diagnostics.len(), 2, "{err}");
        let err = parse("{b=0;(o,g=0,f=-1,s=0,t=0)} ~").unwrap_err();
        assert!(err.diagnostics.len() >= 2, "{err}");
    }

    #[test]
    fn range_errors() {
        let err = parse("{b=0;(o,g=99999999999,f=0,s=0,t=0)}").unwrap_err();
        assert!(err.diagnostics[0].message.contains("out of range"));
        assert!(parse("{b=99999999999999999999;(o,g=0,f=0,s=0,t=0)}").is_err());
        assert!(parse("").is_err());
        assert!(parse("{b=0;(o,g=0,f=0,s=0,t=0)}{").is_err());
    }

    #[test]
    fn serialize_sorts_and_omits() {
        let inv = OrbitInvariants::closed(0, Orientable, 1, 0, 0).with_pairs(&[(5, 2), (3, 1)]);
        assert_eq!(serialize(&inv), "{b=0;(o,g=1,f=0,s=0,t=0);(3,1),(5,2)}");
        let inv = OrbitInvariants::closed(0, Orientable, 0, 0, 0)
            .with_boundary(0, CycleGraph::new(vec![vec![SP, F]]));
        assert_eq!(serialize(&inv), "{b=0;(o,g=0,f=0,s=0,t=0);G=[<F,SP>]}");
    }

    #[test]
    fn render_points_at_span() {
        let text = "{b=0;(o,g=0,f=0,s=0,t=0);(4;2)}";
        let r = parse(text).unwrap_err().render(text);
        assert!(r.contains("^"));
        assert!(r.lines().last().unwrap().trim_start().starts_with('^'));
    }
}
