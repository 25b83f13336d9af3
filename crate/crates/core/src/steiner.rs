//! Steiner triple systems: Bose and Skolem constructions, canned small
//! systems, validation and independence numbers.

use std::path::Path;

use serde::Serialize;

use crate::cover::{independence_number, Independence, DEFAULT_EXACT_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{RGraph, Vertex};

const FANO: &str = include_str!("../data/sts/fano.txt");
const AG23: &str = include_str!("../data/sts/ag23.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "source", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Bose,
    Skolem,
    Canned(String),
    External(String),
}

/// A Steiner triple system of order `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sts {
    pub order: usize,
    pub triples: RGraph,
    pub provenance: Provenance,
}

/// Smallest possible independence number of an STS of this order, where
/// known.
pub fn alpha_target(order: usize) -> Option<usize> {
    match order {
        3 => Some(2),
        7 => Some(4),
        9 => Some(4),
        13 => Some(6),
        15 => Some(6),
        19 => Some(7),
        _ => None,
    }
}

pub fn is_admissible_order(t: usize) -> bool {
    t >= 3 && (t % 6 == 1 || t % 6 == 3)
}

/// A Steiner triple system of order `t`.
///
/// Orders 3, 7 and 9 are the unique systems (a single triple, the Fano plane,
/// AG(2,3)); other orders use the Bose (`t ≡ 3 mod 6`) or Skolem
/// (`t ≡ 1 mod 6`) construction.
pub fn sts(t: usize) -> Result<Sts> {
    if !is_admissible_order(t) {
        return Err(Error::precondition(format!(
            "no Steiner triple system of order {t}: need t >= 3 and t = 1 or 3 (mod 6)"
        )));
    }
    let (triples, provenance) = match t {
        3 => (
            RGraph::from_edges(3, 3, [[0, 1, 2]])?,
            Provenance::Canned("single triple".into()),
        ),
        7 => (RGraph::from_text(FANO)?, Provenance::Canned("fano".into())),
        9 => (RGraph::from_text(AG23)?, Provenance::Canned("ag(2,3)".into())),
        _ if t % 6 == 3 => (bose(t), Provenance::Bose),
        _ => (skolem(t), Provenance::Skolem),
    };
    Ok(Sts {
        order: t,
        triples,
        provenance,
    })
}

/// Bose construction on `Z_m × Z_3`, `m = t/3` odd, with the idempotent
/// commutative quasigroup `x ∘ y = (m+1)/2 · (x + y) mod m`.
fn bose(t: usize) -> RGraph {
    let m = (t / 3) as Vertex;
    let half = m.div_ceil(2);
    let pt = |x: Vertex, i: Vertex| x + m * (i % 3);
    let mut triples = Vec::with_capacity(t * (t - 1) / 6);
    for x in 0..m {
        triples.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for i in 0..3 {
        for x in 0..m {
            for y in x + 1..m {
                let z = half * (x + y) % m;
                triples.push(vec![pt(x, i), pt(y, i), pt(z, i + 1)]);
            }
        }
    }
    RGraph::from_valid_edges(3, t, triples)
}

/// Skolem construction on `Z_2m × Z_3 ∪ {∞}`, `t = 6m + 1`, with the
/// half-idempotent commutative quasigroup `L(x, y) = σ((x + y) mod 2m)`,
/// `σ(2i) = i`, `σ(2i+1) = m + i`.
fn skolem(t: usize) -> RGraph {
    let m = ((t - 1) / 6) as Vertex;
    let q = 2 * m;
    let inf = 3 * q;
    let pt = |x: Vertex, i: Vertex| x + q * (i % 3);
    let sigma = |s: Vertex| if s % 2 == 0 { s / 2 } else { m + s / 2 };
    let mut triples = Vec::with_capacity(t * (t - 1) / 6);
    for x in 0..m {
        triples.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            triples.push(vec![inf, pt(x + m, i), pt(x, i + 1)]);
        }
    }
    for i in 0..3 {
        for x in 0..q {
            for y in x + 1..q {
                triples.push(vec![pt(x, i), pt(y, i), pt(sigma((x + y) % q), i + 1)]);
            }
        }
    }
    RGraph::from_valid_edges(3, t, triples)
}

/// Outcome of checking the Steiner property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StsCheck {
    pub valid: bool,
    /// first pair in lexicographic order not covered exactly once, with the
    /// number of triples containing it
    pub violation: Option<((Vertex, Vertex), usize)>,
}

/// Whether every pair of vertices lies in exactly one triple.
pub fn verify_sts(h: &RGraph) -> StsCheck {
    if h.uniformity() != 3 {
        return StsCheck {
            valid: false,
            violation: None,
        };
    }
    let n = h.vertex_count();
    let mut count = vec![0usize; n * n];
    for e in h.edges() {
        let (a, b, c) = (e[0] as usize, e[1] as usize, e[2] as usize);
        count[a * n + b] += 1;
        count[a * n + c] += 1;
        count[b * n + c] += 1;
    }
    for a in 0..n {
        for b in a + 1..n {
            if count[a * n + b] != 1 {
                return StsCheck {
                    valid: false,
                    violation: Some(((a as Vertex, b as Vertex), count[a * n + b])),
                };
            }
        }
    }
    StsCheck {
        valid: true,
        violation: None,
    }
}

/// An STS read from a file together with its measured independence number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadedSts {
    pub sts: Sts,
    pub independence: Independence,
    pub alpha_target: Option<usize>,
    /// `Some(true)` iff α equals the known minimum for this order
    pub meets_minimum: Option<bool>,
    pub warning: Option<String>,
}

/// Reads an STS in hypergraph text format, checks the Steiner property and
/// measures its independence number.
pub fn load_sts(path: impl AsRef<Path>) -> Result<LoadedSts> {
    let path = path.as_ref();
    let triples = RGraph::read_file(path)?;
    from_graph(triples, Provenance::External(path.display().to_string()))
}

/// Validates an arbitrary 3-graph as an STS and measures it.
pub fn from_graph(triples: RGraph, provenance: Provenance) -> Result<LoadedSts> {
    if triples.uniformity() != 3 {
        return Err(Error::WrongUniformity {
            expected: 3,
            got: triples.uniformity(),
        });
    }
    let check = verify_sts(&triples);
    if let Some((pair, count)) = check.violation {
        return Err(Error::NotSteiner { pair, count });
    }
    let order = triples.vertex_count();
    let independence = independence_number(&triples, DEFAULT_EXACT_LIMIT.max(order))?;
    let target = alpha_target(order);
    let meets = target.map(|a| independence.alpha == a);
    let warning = match target {
        Some(a) if independence.alpha > a => Some(format!(
            "independence number {} exceeds the known minimum {a} for order {order}",
            independence.alpha
        )),
        _ => None,
    };
    Ok(LoadedSts {
        sts: Sts {
            order,
            triples,
            provenance,
        },
        independence,
        alpha_target: target,
        meets_minimum: meets,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_are_the_unique_systems() {
        let s3 = sts(3).unwrap();
        assert_eq!(s3.triples.edges().collect::<Vec<_>>(), vec![&[0, 1, 2][..]]);
        let fano = sts(7).unwrap();
        assert!(fano.triples.contains(&[0, 1, 3]));
        assert_eq!(fano.triples.edge_count(), 7);
        assert_eq!(sts(9).unwrap().triples.edge_count(), 12);
    }

    #[test]
    fn every_construction_is_steiner() {
        for t in (3..=45).filter(|&t| is_admissible_order(t)) {
            let s = sts(t).unwrap();
            assert!(verify_sts(&s.triples).valid, "t={t}");
            assert_eq!(s.triples.edge_count(), t * (t - 1) / 6);
            let p = s.triples.degree_profile();
            assert!(p.is_regular() && p.min_degree == (t - 1) / 2);
        }
        assert_eq!(sts(13).unwrap().provenance, Provenance::Skolem);
        assert_eq!(sts(15).unwrap().provenance, Provenance::Bose);
    }

    #[test]
    fn inadmissible_orders_fail() {
        for t in [0, 1, 2, 4, 5, 6, 8, 11] {
            assert!(sts(t).is_err(), "t={t}");
        }
    }

    #[test]
    fn independence_of_small_systems() {
        for (t, a) in [(3, 2), (7, 4), (9, 4)] {
            let s = sts(t).unwrap();
            assert_eq!(independence_number(&s.triples, 24).unwrap().alpha, a, "t={t}");
        }
    }

    #[test]
    fn verify_reports_violations() {
        let k4 = RGraph::complete(3, 4).unwrap();
        assert_eq!(verify_sts(&k4).violation, Some(((0, 1), 2)));
        let single = RGraph::from_edges(3, 4, [[0, 1, 2]]).unwrap();
        assert_eq!(verify_sts(&single).violation, Some(((0, 3), 0)));
    }

    #[test]
    fn load_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s15.txt");
        sts(15).unwrap().triples.write_file(&path).unwrap();
        let loaded = load_sts(&path).unwrap();
        assert_eq!(loaded.sts.triples, sts(15).unwrap().triples);
        assert_eq!(loaded.alpha_target, Some(6));
        assert!(loaded.independence.alpha >= 6);

        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "3 7\n0 1 2\n0 1 3\n").unwrap();
        assert!(matches!(
            load_sts(&bad),
            Err(Error::NotSteiner { pair: (0, 1), count: 2 })
        ));
    }
}
