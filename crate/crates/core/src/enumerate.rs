//! Bounded census of valid orbit invariants.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::graph::{valid_cycle_words, CycleGraph, CycleWord};
use crate::invariants::{canonical_form, validate, OrbitInvariants, Orientability, SeifertPair};

/// Inclusive bounds for [`enumerate`]. Orientable genus runs over
/// `0..=max_g`, nonorientable genus over `1..=max_g + 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_g: u32,
    pub max_f: u32,
    pub max_s: u32,
    pub max_t: u32,
    /// Number of Seifert pairs.
    pub max_r: usize,
    pub max_m: u64,
    pub max_cycles: usize,
    pub max_cycle_len: usize,
    pub b_min: i64,
    pub b_max: i64,
}

impl fmt::Display for EnumerationBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_g={},max_f={},max_s={},max_t={},max_r={},max_m={},max_cycles={},max_cycle_len={},b_min={},b_max={}",
            self.max_g,
            self.max_f,
            self.max_s,
            self.max_t,
            self.max_r,
            self.max_m,
            self.max_cycles,
            self.max_cycle_len,
            self.b_min,
            self.b_max
        )
    }
}

/// Parses `key=value` pairs separated by commas; unspecified keys keep their
/// default of 0.
impl FromStr for EnumerationBounds {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut b = EnumerationBounds::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {item:?}"))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn fmt::Display| format!("bad value for {key}: {e}");
            match key {
                "max_g" => b.max_g = value.parse().map_err(|e| bad(&e))?,
                "max_f" => b.max_f = value.parse().map_err(|e| bad(&e))?,
                "max_s" => b.max_s = value.parse().map_err(|e| bad(&e))?,
                "max_t" => b.max_t = value.parse().map_err(|e| bad(&e))?,
                "max_r" => b.max_r = value.parse().map_err(|e| bad(&e))?,
                "max_m" => b.max_m = value.parse().map_err(|e| bad(&e))?,
                "max_cycles" => b.max_cycles = value.parse().map_err(|e| bad(&e))?,
                "max_cycle_len" => b.max_cycle_len = value.parse().map_err(|e| bad(&e))?,
                "b_min" => b.b_min = value.parse().map_err(|e| bad(&e))?,
                "b_max" => b.b_max = value.parse().map_err(|e| bad(&e))?,
                other => return Err(format!("unknown bound {other:?}")),
            }
        }
        if b.b_min > b.b_max {
            return Err(format!("b_min = {} exceeds b_max = {}", b.b_min, b.b_max));
        }
        Ok(b)
    }
}

/// Multisets of size `0..=max` drawn from `items`, as nondecreasing index
/// sequences, shortest first.
fn multisets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(
        items: &[T],
        start: usize,
        left: usize,
        cur: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=max {
        rec(items, 0, size, &mut Vec::new(), &mut out);
    }
    out
}

fn seifert_pairs(eps: Orientability, max_m: u64) -> Vec<SeifertPair> {
    let mut out = Vec::new();
    for m in 2..=max_m {
        for n in 1..m {
            let in_range = match eps {
                Orientability::Orientable => true,
                Orientability::Nonorientable => 2 * n <= m,
            };
            if in_range && m.gcd(&n) == 1 {
                out.push(SeifertPair::new(m, n));
            }
        }
    }
    out
}

/// Streams every valid datum within `bounds` once per canonical form, in a
/// fixed order, as its canonical representative. Returns the count.
pub fn enumerate(bounds: &EnumerationBounds, mut sink: impl FnMut(OrbitInvariants)) -> usize {
    let words: Vec<CycleWord> = if bounds.max_cycles > 0 {
        valid_cycle_words(bounds.max_cycle_len)
    } else {
        Vec::new()
    };
    let graphs: Vec<CycleGraph> = multisets(&words, bounds.max_cycles)
        .into_iter()
        .map(|ws| CycleGraph::new(ws.into_iter().map(CycleWord::into_labels).collect()))
        .collect();

    let mut seen = HashSet::new();
    let mut count = 0;
    for eps in [Orientability::Orientable, Orientability::Nonorientable] {
        let genera = match eps {
            Orientability::Orientable => 0..=bounds.max_g,
            Orientability::Nonorientable => 1..=bounds.max_g + 1,
        };
        let pair_sets = multisets(&seifert_pairs(eps, bounds.max_m), bounds.max_r);
        for g in genera {
            for f in 0..=bounds.max_f {
                for s in 0..=bounds.max_s {
                    for t in 0..=bounds.max_t {
                        for graph in &graphs {
                            for pairs in &pair_sets {
                                for b in bounds.b_min..=bounds.b_max {
                                    let inv = OrbitInvariants {
                                        b,
                                        eps,
                                        g,
                                        f,
                                        s,
                                        t,
                                        pairs: pairs.clone(),
                                        graph: graph.clone(),
                                    };
                                    if !validate(&inv).ok {
                                        continue;
                                    }
                                    let Ok(form) = canonical_form(&inv) else {
                                        continue;
                                    };
                                    if seen.insert(form.clone()) {
                                        count += 1;
                                        sink(form.to_invariants());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    count
}

pub fn enumerate_vec(bounds: &EnumerationBounds) -> Vec<OrbitInvariants> {
    let mut out = Vec::new();
    enumerate(bounds, |inv| out.push(inv));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeLabel::*;
    use crate::textio::serialize;

    #[test]
    fn tiny_census() {
        let b = EnumerationBounds {
            max_f: 1,
            ..Default::default()
        };
        let got: Vec<String> = enumerate_vec(&b).iter().map(serialize).collect();
        assert_eq!(
            got,
            vec![
                "{b=0;(o,g=0,f=0,s=0,t=0)}",
                "{b=0;(o,g=0,f=1,s=0,t=0)}",
                "{b=0;(n,g=1,f=0,s=0,t=0)}",
                "{b=0;(n,g=1,f=1,s=0,t=0)}",
            ]
        );
    }

    #[test]
    fn two_cycles_are_f_sp_and_se_k() {
        let b = EnumerationBounds {
            max_cycles: 1,
            max_cycle_len: 2,
            ..Default::default()
        };
        let mut words: Vec<Vec<_>> = enumerate_vec(&b)
            .into_iter()
            .filter(|inv| !inv.graph.is_empty())
            .map(|inv| inv.graph.cycles[0].clone())
            .collect();
        words.sort();
        words.dedup();
        assert_eq!(words, vec![vec![F, SP], vec![SE, K]]);
    }

    #[test]
    fn nonzero_b_only_when_closed_free() {
        let b = EnumerationBounds {
            max_f: 1,
            max_s: 1,
            max_t: 1,
            b_min: -2,
            b_max: 2,
            ..Default::default()
        };
        for inv in enumerate_vec(&b) {
            if inv.b != 0 {
                assert_eq!(inv.f + inv.s + inv.t, 0);
                assert!(inv.graph.is_empty());
            }
        }
    }

    #[test]
    fn bounds_parse() {
        let b: EnumerationBounds = "max_g=2, max_f=1,b_min=-3,b_max=3".parse().unwrap();
        assert_eq!((b.max_g, b.max_f, b.b_min, b.b_max), (2, 1, -3, 3));
        assert_eq!(b.to_string().parse::<EnumerationBounds>().unwrap(), b);
        assert!("max_q=1".parse::<EnumerationBounds>().is_err());
        assert!("max_g".parse::<EnumerationBounds>().is_err());
        assert!("b_min=2,b_max=1".parse::<EnumerationBounds>().is_err());
    }

    #[test]
    fn multisets_count() {
        // C(n + k - 1, k) summed over k = 0..=2 for n = 3: 1 + 3 + 6
        assert_eq!(multisets(&[1, 2, 3], 2).len(), 10);
    }
}
