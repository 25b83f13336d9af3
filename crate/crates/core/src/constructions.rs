//! Deterministic generators for the extremal constructions, each paired with
//! a [`Manifest`] of exactly checkable claims.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::comb::{binom64, combinations};
use crate::cover::{
    book_number, covers, independence_number, triangle_degrees, uncovered_vertices, Motif, MotifKind,
    DEFAULT_EXACT_LIMIT,
};
use crate::error::{Error, Result};
use crate::formulas::{
    ceil_u64, f_n_d, floor_u64, format_rational, rat, ser_rational, tau_breakpoint, tau_upper, Rational,
};
use crate::graph::{RGraph, Vertex, VertexSet};

/// Generator parameters, tagged by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConstructionParams {
    #[serde(rename = "K4M_LOWER")]
    K4mLower { n: usize, d: usize, seed: u64 },
    #[serde(rename = "K4_LINK")]
    K4Link { n: usize },
    Lift { base_r: usize, base_n: usize, base_edges: usize },
    #[serde(rename = "C5_LOWER")]
    C5Lower { n: usize },
    #[serde(rename = "K5_LOWER")]
    K5Lower { n: usize },
    StsBlowup { order: usize, n: usize, source: String },
    TauLower {
        n: usize,
        #[serde(serialize_with = "ser_rational")]
        rho: Rational,
        r: usize,
        seed: u64,
    },
    TauUpper {
        n: usize,
        #[serde(serialize_with = "ser_rational")]
        rho: Rational,
        r: usize,
        /// 1-based images of `1..=r+1`
        phi: Vec<usize>,
        seed: u64,
    },
    Efg { factors: Vec<usize>, t: usize },
}

/// `a·n² + b·n + c ± slack`, evaluated at a fixed `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub b: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
    pub at: u64,
    #[serde(serialize_with = "ser_rational")]
    pub slack: Rational,
}

impl Claim {
    pub fn exact(value: impl Into<BigInt>) -> Claim {
        Claim {
            a: Rational::zero(),
            b: Rational::zero(),
            c: Rational::from_integer(value.into()),
            at: 0,
            slack: Rational::zero(),
        }
    }

    pub fn affine(a: Rational, b: Rational, c: Rational, at: u64, slack: Rational) -> Claim {
        Claim { a, b, c, at, slack }
    }

    pub fn center(&self) -> Rational {
        let n = Rational::from_integer(BigInt::from(self.at));
        &self.a * &n * &n + &self.b * &n + &self.c
    }

    pub fn is_exact(&self) -> bool {
        self.slack.is_zero()
    }

    pub fn holds(&self, observed: usize) -> bool {
        let obs = Rational::from_integer(BigInt::from(observed));
        (obs - self.center()).abs() <= self.slack
    }

    pub fn describe(&self) -> String {
        if self.is_exact() {
            format_rational(&self.center())
        } else {
            format!("{} ± {}", format_rational(&self.center()), format_rational(&self.slack))
        }
    }
}

/// Vertices `start..end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Part {
    pub name: String,
    pub start: Vertex,
    pub end: Vertex,
}

impl Part {
    fn new(name: impl Into<String>, start: usize, end: usize) -> Part {
        Part {
            name: name.into(),
            start: start as Vertex,
            end: end as Vertex,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (self.start..self.end).contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeClaim {
    pub vertices: Part,
    pub degree: Claim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UncoveredClaim {
    pub motif: Motif,
    pub vertices: Vec<Vertex>,
    /// true: exactly these vertices are uncovered; false: at least these
    pub exact: bool,
}

/// Claims a construction makes about its output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub construction: &'static str,
    pub params: ConstructionParams,
    pub uniformity: usize,
    pub vertex_count: usize,
    pub parts: Vec<Part>,
    pub degrees: Vec<DegreeClaim>,
    pub min_degree: Option<Claim>,
    pub uncovered: Option<UncoveredClaim>,
    /// every vertex has this triangle-degree
    pub triangle_degree: Option<Claim>,
    pub t_max: Option<Claim>,
    pub book_number: Option<Claim>,
    pub notes: Vec<String>,
}

impl Manifest {
    fn new(construction: &'static str, params: ConstructionParams, g: &RGraph) -> Manifest {
        Manifest {
            construction,
            params,
            uniformity: g.uniformity(),
            vertex_count: g.vertex_count(),
            parts: Vec::new(),
            degrees: Vec::new(),
            min_degree: None,
            uncovered: None,
            triangle_degree: None,
            t_max: None,
            book_number: None,
            notes: Vec::new(),
        }
    }

    fn degree(&mut self, name: &str, start: usize, end: usize, claim: Claim) {
        self.degrees.push(DegreeClaim {
            vertices: Part::new(name, start, end),
            degree: claim,
        });
    }
}

/// A generated graph with its manifest.
#[derive(Debug, Clone)]
pub struct Built {
    pub graph: RGraph,
    pub manifest: Manifest,
}

/// `d`-regular bipartite circulant between `a` and `b`: `a[i] ~ b[(i + k) mod m]`
/// for `k < d`. A nonzero seed relabels the `b` side by a seeded shuffle.
pub fn bipartite_circulant(a: &[Vertex], b: &[Vertex], d: usize, seed: u64) -> Vec<[Vertex; 2]> {
    assert_eq!(a.len(), b.len());
    let m = a.len();
    assert!(d <= m);
    let mut side_b = b.to_vec();
    if seed != 0 {
        side_b.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut edges = Vec::with_capacity(m * d);
    for i in 0..m {
        for k in 0..d {
            edges.push([a[i], side_b[(i + k) % m]]);
        }
    }
    edges
}

fn range(start: usize, end: usize) -> Vec<Vertex> {
    (start as Vertex..end as Vertex).collect()
}

/// The d-regular bipartite link used by [`k4minus_lower`], on `n − 1`
/// vertices with sides `0..m` and `m..2m`.
pub fn k4minus_link(n: usize, d: usize, seed: u64) -> Result<RGraph> {
    check_k4minus(n, d)?;
    let m = (n - 1) / 2;
    let edges = bipartite_circulant(&range(0, m), &range(m, 2 * m), d, seed);
    RGraph::from_edges(2, n - 1, edges)
}

fn check_k4minus(n: usize, d: usize) -> Result<()> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::precondition(format!("k4minus_lower needs odd n >= 5, got {n}")));
    }
    let m = (n - 1) / 2;
    if d < 1 || d > m {
        return Err(Error::precondition(format!("k4minus_lower needs 1 <= d <= (n-1)/2 = {m}, got {d}")));
    }
    Ok(())
}

/// Lower-bound construction for K₄⁽³⁾⁻ covering: the link of `v⋆ = n − 1` is a
/// d-regular bipartite graph `G` on `A ⊔ B`, and a triple of `A ∪ B` is an
/// edge iff it spans at most one edge of `G`.
pub fn k4minus_lower(n: usize, d: usize, seed: u64) -> Result<Built> {
    let link = k4minus_link(n, d, seed)?;
    let m = (n - 1) / 2;
    let v_star = (n - 1) as Vertex;
    let mut adj = vec![false; (n - 1) * (n - 1)];
    for e in link.edges() {
        adj[e[0] as usize * (n - 1) + e[1] as usize] = true;
        adj[e[1] as usize * (n - 1) + e[0] as usize] = true;
    }
    let mut triples: Vec<Vec<Vertex>> = link.edges().map(|e| vec![e[0], e[1], v_star]).collect();
    for t in combinations((n - 1) as u32, 3) {
        let spanned = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .filter(|&&(i, j)| adj[t[i] as usize * (n - 1) + t[j] as usize])
            .count();
        if spanned <= 1 {
            triples.push(t);
        }
    }
    let graph = RGraph::from_valid_edges(3, n, triples);
    let star = m * d;
    let other = f_n_d(n as u64, d as u64)?.to_integer().to_usize().expect("f_n(d) is a count");
    let mut man = Manifest::new("k4m-lower", ConstructionParams::K4mLower { n, d, seed }, &graph);
    man.parts = vec![Part::new("A", 0, m), Part::new("B", m, 2 * m), Part::new("v*", n - 1, n)];
    man.degree("A ∪ B", 0, n - 1, Claim::exact(other));
    man.degree("v*", n - 1, n, Claim::exact(star));
    man.min_degree = Some(Claim::exact(star.min(other)));
    man.uncovered = Some(UncoveredClaim {
        motif: Motif::k4_minus(),
        vertices: vec![v_star],
        exact: true,
    });
    Ok(Built { graph, manifest: man })
}

/// Link graph for the K₄⁽³⁾ lower bound: complete 3-partite on `V₁, V₂, V₃`
/// plus an `n/27`-regular bipartite graph between the halves of each part.
pub fn k4_lower_linkgraph(n: usize) -> Result<Built> {
    if n == 0 || n % 54 != 0 {
        return Err(Error::precondition(format!("k4_lower_linkgraph needs 54 | n, got {n}")));
    }
    let p = n / 3;
    let h = n / 6;
    let mut edges: Vec<[Vertex; 2]> = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for x in i * p..(i + 1) * p {
                for y in j * p..(j + 1) * p {
                    edges.push([x as Vertex, y as Vertex]);
                }
            }
        }
        let s = i * p;
        edges.extend(bipartite_circulant(&range(s, s + h), &range(s + h, s + p), n / 27, 0));
    }
    let graph = RGraph::from_edges(2, n, edges)?;
    let mut man = Manifest::new("k4-link", ConstructionParams::K4Link { n }, &graph);
    for i in 0..3 {
        man.parts.push(Part::new(format!("V{}", i + 1), i * p, (i + 1) * p));
    }
    let nn = n as u64;
    man.degree("all", 0, n, Claim::affine(Rational::zero(), rat(19, 27), Rational::zero(), nn, Rational::zero()));
    man.min_degree = Some(Claim::exact(19 * n / 27));
    let t = Claim::affine(rat(4, 27), Rational::zero(), Rational::zero(), nn, Rational::zero());
    man.triangle_degree = Some(t.clone());
    man.t_max = Some(t);
    Ok(Built { graph, manifest: man })
}

/// Whether every (r−1)-subset of the sorted r-set `s` is an edge of `g`.
fn spans_clique(g: &RGraph, s: &[Vertex], buf: &mut Vec<Vertex>) -> bool {
    (0..s.len()).all(|skip| {
        buf.clear();
        buf.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
        g.contains_sorted(buf)
    })
}

/// The motif K_{r+1}⁽ʳ⁾ for r-graphs.
pub fn lift_motif(r: usize) -> Result<Motif> {
    if r == 3 {
        Ok(Motif::k4())
    } else {
        Motif::new(MotifKind::Clique(r + 1))
    }
}

/// Adds a vertex `v⋆ = n` with link `g` to the r-graph whose edges are the
/// r-sets of `V(g)` not spanning a copy of K_r⁽ʳ⁻¹⁾ in `g`.
pub fn lift_link(g: &RGraph) -> Result<Built> {
    let k = g.uniformity();
    let r = k + 1;
    let n = g.vertex_count();
    let v_star = n as Vertex;
    let mut triples: Vec<Vec<Vertex>> = g
        .edges()
        .map(|e| {
            let mut t = e.to_vec();
            t.push(v_star);
            t
        })
        .collect();
    let mut buf = Vec::with_capacity(k);
    for s in combinations(n as u32, r) {
        if !spans_clique(g, &s, &mut buf) {
            triples.push(s);
        }
    }
    let graph = RGraph::from_valid_edges(r, n + 1, triples);
    let params = ConstructionParams::Lift {
        base_r: k,
        base_n: n,
        base_edges: g.edge_count(),
    };
    let mut man = Manifest::new("lift", params, &graph);
    man.parts = vec![Part::new("V(G)", 0, n), Part::new("v*", n, n + 1)];
    let base = binom64(n as u64 - 1, r as u64 - 1);
    let deg_g = g.vertex_degrees();
    let cliques: Vec<usize> = (0..n as Vertex)
        .map(|x| crate::cover::clique_degree(g, x, r))
        .collect::<Result<_>>()?;
    let per_vertex: Vec<u64> = (0..n).map(|x| base - cliques[x] as u64 + deg_g[x] as u64).collect();
    // group runs of equal degree into ranges
    let mut start = 0;
    for x in 1..=n {
        if x == n || per_vertex[x] != per_vertex[start] {
            man.degree(&format!("{start}..{x}"), start, x, Claim::exact(per_vertex[start]));
            start = x;
        }
    }
    man.degree("v*", n, n + 1, Claim::exact(g.edge_count()));
    let min_other = per_vertex.iter().copied().min().unwrap_or(u64::MAX);
    man.min_degree = Some(Claim::exact(min_other.min(g.edge_count() as u64)));
    man.uncovered = Some(UncoveredClaim {
        motif: lift_motif(r)?,
        vertices: vec![v_star],
        exact: false,
    });
    man.notes.push(format!("deg(x) = C({}, {}) - t_G(x) + deg_G(x) for x in V(G)", n - 1, r - 1));
    Ok(Built { graph, manifest: man })
}

/// Link of `v` in an r-graph together with whether `v` looks like a lifted
/// vertex: every K_r⁽ʳ⁻¹⁾ of the link must be a non-edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractedLink {
    pub link: RGraph,
    /// `index_map[new] = old`
    pub index_map: Vec<Vertex>,
    pub valid_lift: bool,
}

pub fn extract_link(h: &RGraph, v: Vertex) -> Result<ExtractedLink> {
    let l = h.link(&VertexSet::single(v))?;
    let r = h.uniformity();
    let mut buf = Vec::with_capacity(r);
    let mut mapped = Vec::with_capacity(r);
    let valid_lift = combinations(l.graph.vertex_count() as u32, r).all(|s| {
        if !spans_clique(&l.graph, &s, &mut buf) {
            return true;
        }
        mapped.clear();
        mapped.extend(s.iter().map(|&i| l.index_map[i as usize]));
        !h.contains_sorted(&mapped)
    });
    Ok(ExtractedLink {
        link: l.graph,
        index_map: l.index_map,
        valid_lift,
    })
}

/// Lower-bound construction for C₅⁽³⁾: `|A| = n`, `|B| = 2n`, `v⋆ = 3n` with
/// link a clique on `A` plus a clique on `B`, and all triples of type AAB or
/// ABB.
pub fn c5_lower(n: usize) -> Result<Built> {
    if n < 2 {
        return Err(Error::precondition(format!("c5_lower needs n >= 2, got {n}")));
    }
    let v_star = (3 * n) as Vertex;
    let in_a = |v: Vertex| (v as usize) < n;
    let mut triples: Vec<Vec<Vertex>> = Vec::new();
    for p in combinations(3 * n as u32, 2) {
        if in_a(p[0]) == in_a(p[1]) {
            triples.push(vec![p[0], p[1], v_star]);
        }
    }
    for t in combinations(3 * n as u32, 3) {
        let a = t.iter().filter(|&&v| in_a(v)).count();
        if a == 1 || a == 2 {
            triples.push(t);
        }
    }
    let graph = RGraph::from_valid_edges(3, 3 * n + 1, triples);
    let c2 = |m: usize| m * m.saturating_sub(1) / 2;
    let star = c2(n) + c2(2 * n);
    let deg_a = (n - 1) + (n - 1) * 2 * n + c2(2 * n);
    let deg_b = (2 * n - 1) + c2(n) + n * (2 * n - 1);
    let mut man = Manifest::new("c5-lower", ConstructionParams::C5Lower { n }, &graph);
    man.parts = vec![Part::new("A", 0, n), Part::new("B", n, 3 * n), Part::new("v*", 3 * n, 3 * n + 1)];
    man.degree("A", 0, n, Claim::exact(deg_a));
    man.degree("B", n, 3 * n, Claim::exact(deg_b));
    man.degree("v*", 3 * n, 3 * n + 1, Claim::exact(star));
    // (5/9)·C(3n, 2) − 2n/3 = C(n, 2) + C(2n, 2)
    man.min_degree = Some(Claim::affine(rat(5, 2), rat(-3, 2), Rational::zero(), n as u64, Rational::zero()));
    man.uncovered = Some(UncoveredClaim {
        motif: Motif::c5(),
        vertices: vec![v_star],
        exact: true,
    });
    Ok(Built { graph, manifest: man })
}

/// All triples meeting both halves of a balanced bipartition of `2n`
/// vertices; K₅⁽³⁾-free.
pub fn k5_lower(n: usize) -> Result<Built> {
    if n < 2 {
        return Err(Error::precondition(format!("k5_lower needs n >= 2, got {n}")));
    }
    let triples: Vec<Vec<Vertex>> = combinations(2 * n as u32, 3)
        .filter(|t| {
            let low = t.iter().filter(|&&v| (v as usize) < n).count();
            low == 1 || low == 2
        })
        .collect();
    let graph = RGraph::from_valid_edges(3, 2 * n, triples);
    let nn = n as u64;
    let delta = binom64(2 * nn - 1, 2) - binom64(nn - 1, 2);
    let mut man = Manifest::new("k5-lower", ConstructionParams::K5Lower { n }, &graph);
    man.parts = vec![Part::new("V1", 0, n), Part::new("V2", n, 2 * n)];
    man.degree("all", 0, 2 * n, Claim::exact(delta));
    man.min_degree = Some(Claim::exact(delta));
    man.uncovered = Some(UncoveredClaim {
        motif: Motif::new(MotifKind::CompleteTriple(5))?,
        vertices: range(0, 2 * n),
        exact: true,
    });
    Ok(Built { graph, manifest: man })
}

/// Blow-up of a 3-graph `h` on `N` vertices: parts of size `n`, a vertex `v⋆`
/// whose link is complete N-partite, and a triple across three distinct
/// parts `i, j, k` iff `ijk` is not an edge of `h`.
pub fn blowup_sts(h: &RGraph, n: usize, source: &str) -> Result<Built> {
    if h.uniformity() != 3 {
        return Err(Error::WrongUniformity {
            expected: 3,
            got: h.uniformity(),
        });
    }
    if n < 1 {
        return Err(Error::precondition("blowup_sts needs n >= 1"));
    }
    let big_n = h.vertex_count();
    let total = big_n * n;
    let v_star = total as Vertex;
    let part = |v: Vertex| v as usize / n;
    let mut triples: Vec<Vec<Vertex>> = Vec::new();
    for p in combinations(total as u32, 2) {
        if part(p[0]) != part(p[1]) {
            triples.push(vec![p[0], p[1], v_star]);
        }
    }
    for t in combinations(total as u32, 3) {
        let (i, j, k) = (part(t[0]), part(t[1]), part(t[2]));
        if i != j && j != k && !h.contains_sorted(&[i as Vertex, j as Vertex, k as Vertex]) {
            triples.push(t);
        }
    }
    let graph = RGraph::from_valid_edges(3, total + 1, triples);
    let params = ConstructionParams::StsBlowup {
        order: big_n,
        n,
        source: source.to_string(),
    };
    let mut man = Manifest::new("sts-blowup", params, &graph);
    let (bn, nn) = (big_n as u64, n as u64);
    let star = binom64(bn * nn, 2) - bn * binom64(nn, 2);
    let deg_h = h.vertex_degrees();
    let mut min_deg = star;
    for (i, &dh) in deg_h.iter().enumerate() {
        man.parts.push(Part::new(format!("V{i}"), i * n, (i + 1) * n));
        let d = nn * (bn - 1) + binom64(bn - 1, 2) * nn * nn - dh as u64 * nn * nn;
        man.degree(&format!("V{i}"), i * n, (i + 1) * n, Claim::exact(d));
        min_deg = min_deg.min(d);
    }
    man.parts.push(Part::new("v*", total, total + 1));
    man.degree("v*", total, total + 1, Claim::exact(star));
    man.min_degree = Some(Claim::exact(min_deg));
    if big_n <= DEFAULT_EXACT_LIMIT {
        let alpha = independence_number(h, DEFAULT_EXACT_LIMIT)?.alpha;
        // every (alpha + 1)-set of parts spans an edge, so K_(alpha+2) misses v*
        let size = alpha + 2;
        let motif = if size == 4 {
            Motif::k4()
        } else {
            Motif::new(MotifKind::CompleteTriple(size))?
        };
        man.uncovered = Some(UncoveredClaim {
            motif,
            vertices: vec![v_star],
            exact: false,
        });
        man.notes.push(format!("independence number of the blown-up 3-graph: {alpha}"));
    }
    Ok(Built { graph, manifest: man })
}

fn rho_range_error(what: &str, rho: &Rational, lo: &Rational, hi: &Rational) -> Error {
    Error::precondition(format!(
        "{what} needs {} <= rho <= {}, got {}",
        format_rational(lo),
        format_rational(hi),
        format_rational(rho)
    ))
}

/// Exact triangle-degree of every vertex of [`tau_lower_interval`].
pub fn tau_lower_triangle_degree(n: u64, r: u64, d: u64) -> u64 {
    let p = n / r;
    (r - 1) * p * d + (r - 1) * p * d / 2 + binom64(r - 1, 2) * p * p
}

/// Balanced complete r-partite graph with a d-regular bipartite graph inside
/// each part, `d = ⌊(ρ − (r−1)/r)n⌋`.
pub fn tau_lower_interval(n: usize, rho: &Rational, r: usize, seed: u64) -> Result<Built> {
    if r < 2 {
        return Err(Error::precondition(format!("tau_lower_interval needs r >= 2, got {r}")));
    }
    if n == 0 || n % (2 * r) != 0 {
        return Err(Error::precondition(format!("tau_lower_interval needs 2r = {} to divide n = {n}", 2 * r)));
    }
    let ri = r as i64;
    let lo = rat(ri - 1, ri);
    let hi = tau_breakpoint(r as u64);
    if rho < &lo || rho > &hi {
        return Err(rho_range_error("tau_lower_interval", rho, &lo, &hi));
    }
    let nr = Rational::from_integer(BigInt::from(n));
    let d = floor_u64(&((rho - &lo) * &nr)) as usize;
    let p = n / r;
    let h = p / 2;
    if d > h {
        return Err(Error::precondition(format!("inner degree {d} exceeds n/(2r) = {h}")));
    }
    let mut edges: Vec<[Vertex; 2]> = Vec::new();
    for i in 0..r {
        for x in i * p..(i + 1) * p {
            for y in (i + 1) * p..n {
                edges.push([x as Vertex, y as Vertex]);
            }
        }
        let s = i * p;
        edges.extend(bipartite_circulant(&range(s, s + h), &range(s + h, s + p), d, seed));
    }
    let graph = RGraph::from_edges(2, n, edges)?;
    let params = ConstructionParams::TauLower {
        n,
        rho: rho.clone(),
        r,
        seed,
    };
    let mut man = Manifest::new("tau-lower", params, &graph);
    for i in 0..r {
        man.parts.push(Part::new(format!("V{}", i + 1), i * p, (i + 1) * p));
    }
    let degree = (r - 1) * p + d;
    man.degree("all", 0, n, Claim::exact(degree));
    man.min_degree = Some(Claim::exact(degree));
    let t = tau_lower_triangle_degree(n as u64, r as u64, d as u64);
    man.triangle_degree = Some(Claim::exact(t));
    man.t_max = Some(Claim::exact(t));
    man.notes.push(format!(
        "inner degree d = {d}; asymptotic t_max = {} * n^2/2",
        format_rational(&tau_upper(rho)?)
    ));
    Ok(Built { graph, manifest: man })
}

/// Slack multiplier `C` in the `t_max = f(ρ)·n²/2 ± C·n` claim of
/// [`tau_upper_interval`].
pub const TAU_UPPER_SLACK: i64 = 3;

/// Balanced complete (r+1)-partite graph in which each block
/// `(V_i′, V_φ(i)″)` is thinned to a d-regular bipartite graph,
/// `d = ⌈(ρ − r/(r+1) + 1/(2(r+1)))n⌉`. `phi` is 0-based; `None` uses the
/// cyclic shift `i ↦ i + 1`.
pub fn tau_upper_interval(n: usize, rho: &Rational, r: usize, phi: Option<&[usize]>, seed: u64) -> Result<Built> {
    if r < 2 {
        return Err(Error::precondition(format!("tau_upper_interval needs r >= 2, got {r}")));
    }
    let k = r + 1;
    if n == 0 || n % (2 * k) != 0 {
        return Err(Error::precondition(format!(
            "tau_upper_interval needs 2(r+1) = {} to divide n = {n}",
            2 * k
        )));
    }
    let lo = tau_breakpoint(r as u64);
    let hi = rat(r as i64, k as i64);
    if rho < &lo || rho > &hi {
        return Err(rho_range_error("tau_upper_interval", rho, &lo, &hi));
    }
    let phi: Vec<usize> = match phi {
        Some(p) => p.to_vec(),
        None => (0..k).map(|i| (i + 1) % k).collect(),
    };
    let mut seen = vec![false; k];
    if phi.len() != k || phi.iter().any(|&j| j >= k || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::precondition(format!("phi must be a permutation of {k} parts, got {phi:?}")));
    }
    if let Some(i) = (0..k).find(|&i| phi[i] == i) {
        return Err(Error::precondition(format!("phi must have no fixed point, but phi({}) = {}", i + 1, i + 1)));
    }
    let nr = Rational::from_integer(BigInt::from(n));
    let d_rat = (rho - &hi + rat(1, 2 * k as i64)) * &nr;
    let d = ceil_u64(&d_rat) as usize;
    let p = n / k;
    let h = p / 2;
    if d > h {
        return Err(Error::precondition(format!("block degree {d} exceeds n/(2(r+1)) = {h}")));
    }
    // V_i' = [i p, i p + h), V_i'' = [i p + h, (i+1) p)
    let thinned_partner = |x: usize| -> Option<usize> {
        let (i, off) = (x / p, x % p);
        (off < h).then(|| phi[i])
    };
    let mut edges: Vec<[Vertex; 2]> = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let (i, j) = (x / p, y / p);
            if i == j {
                continue;
            }
            let thinned = (thinned_partner(x) == Some(j) && y % p >= h) || (thinned_partner(y) == Some(i) && x % p >= h);
            if !thinned {
                edges.push([x as Vertex, y as Vertex]);
            }
        }
    }
    for (i, &j) in phi.iter().enumerate().take(k) {
        let a = i * p;
        let b = j * p + h;
        edges.extend(bipartite_circulant(&range(a, a + h), &range(b, b + h), d, seed));
    }
    let graph = RGraph::from_edges(2, n, edges)?;
    let params = ConstructionParams::TauUpper {
        n,
        rho: rho.clone(),
        r,
        phi: phi.iter().map(|&j| j + 1).collect(),
        seed,
    };
    let mut man = Manifest::new("tau-upper", params, &graph);
    for i in 0..k {
        man.parts.push(Part::new(format!("V{}'", i + 1), i * p, i * p + h));
        man.parts.push(Part::new(format!("V{}''", i + 1), i * p + h, (i + 1) * p));
    }
    let degree = r * p - h + d;
    man.degree("all", 0, n, Claim::exact(degree));
    man.min_degree = Some(Claim::exact(degree));
    let f = tau_upper(rho)?;
    man.t_max = Some(Claim::affine(
        f / rat(2, 1),
        Rational::zero(),
        Rational::zero(),
        n as u64,
        Rational::from_integer(BigInt::from(TAU_UPPER_SLACK * n as i64)),
    ));
    man.notes.push(format!("block degree d = {d}; t_max claim is f(rho) n^2/2 within {TAU_UPPER_SLACK}n"));
    Ok(Built { graph, manifest: man })
}

/// Checks the factor-list constraints of [`efg_graph`].
pub fn check_efg_factors(factors: &[usize]) -> Result<()> {
    if factors.is_empty() {
        return Err(Error::precondition("efg_graph needs at least one factor"));
    }
    if let Some(&r) = factors.iter().find(|&&r| r < 3) {
        return Err(Error::precondition(format!("efg_graph factors must be >= 3, got {r}")));
    }
    for w in factors.windows(2) {
        if (w[0] - 1) * (w[0] - 1) >= w[1] {
            return Err(Error::precondition(format!(
                "efg_graph factors {} and {} violate (r_(i-1) - 1)^2 < r_i",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Vectors in `[r₁] × … × [r_k] × [t]`, adjacent iff they differ in each of
/// the first `k` coordinates. Vertex labels are the mixed-radix ranks.
pub fn efg_graph(factors: &[usize], t: usize) -> Result<Built> {
    check_efg_factors(factors)?;
    if t < 1 {
        return Err(Error::precondition("efg_graph needs t >= 1"));
    }
    let n = factors.iter().product::<usize>() * t;
    if n > Vertex::MAX as usize / 2 || n > 1 << 16 {
        return Err(Error::precondition(format!("efg_graph with {n} vertices is too large")));
    }
    let coords: Vec<Vec<usize>> = (0..n)
        .map(|mut v| {
            v /= t;
            let mut c = vec![0; factors.len()];
            for (i, &r) in factors.iter().enumerate().rev() {
                c[i] = v % r;
                v /= r;
            }
            c
        })
        .collect();
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if coords[x].iter().zip(&coords[y]).all(|(a, b)| a != b) {
                edges.push([x as Vertex, y as Vertex]);
            }
        }
    }
    let graph = RGraph::from_edges(2, n, edges)?;
    let mut man = Manifest::new(
        "efg",
        ConstructionParams::Efg {
            factors: factors.to_vec(),
            t,
        },
        &graph,
    );
    let d: usize = factors.iter().map(|r| r - 1).product::<usize>() * t;
    let bk: usize = factors.iter().map(|r| r - 2).product::<usize>() * t;
    man.degree("all", 0, n, Claim::exact(d));
    man.min_degree = Some(Claim::exact(d));
    man.book_number = Some(Claim::exact(bk));
    man.triangle_degree = Some(Claim::exact(d * bk / 2));
    Ok(Built { graph, manifest: man })
}

/// One checked manifest claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

/// Every manifest claim checked against `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestReport {
    pub checks: Vec<ClaimCheck>,
}

impl ManifestReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Recomputes every claim in `m` on `g`.
pub fn verify_manifest(g: &RGraph, m: &Manifest) -> Result<ManifestReport> {
    let mut checks = Vec::new();
    let mut push = |claim: String, expected: String, observed: String, pass: bool| {
        checks.push(ClaimCheck {
            claim,
            expected,
            observed,
            pass,
        })
    };
    push(
        "vertex count".into(),
        m.vertex_count.to_string(),
        g.vertex_count().to_string(),
        m.vertex_count == g.vertex_count() && m.uniformity == g.uniformity(),
    );
    let degrees = g.vertex_degrees();
    for dc in &m.degrees {
        let range = dc.vertices.start as usize..(dc.vertices.end as usize).min(degrees.len());
        let bad = range.clone().find(|&v| !dc.degree.holds(degrees[v]));
        push(
            format!("degree on {}", dc.vertices.name),
            dc.degree.describe(),
            match bad {
                Some(v) => format!("vertex {v} has degree {}", degrees[v]),
                None => "all match".into(),
            },
            bad.is_none() && !range.is_empty(),
        );
    }
    if let Some(c) = &m.min_degree {
        let d = degrees.iter().copied().min().unwrap_or(0);
        push("minimum degree".into(), c.describe(), d.to_string(), c.holds(d));
    }
    if m.triangle_degree.is_some() || m.t_max.is_some() {
        let t = triangle_degrees(g)?;
        if let Some(c) = &m.triangle_degree {
            let bad = t.iter().position(|&x| !c.holds(x));
            push(
                "triangle-degree of every vertex".into(),
                c.describe(),
                match bad {
                    Some(v) => format!("vertex {v} has {}", t[v]),
                    None => "all match".into(),
                },
                bad.is_none(),
            );
        }
        if let Some(c) = &m.t_max {
            let tm = t.iter().copied().max().unwrap_or(0);
            push("t_max".into(), c.describe(), tm.to_string(), c.holds(tm));
        }
    }
    if let Some(c) = &m.book_number {
        let (b, _) = book_number(g)?;
        push("book number".into(), c.describe(), b.to_string(), c.holds(b));
    }
    if let Some(u) = &m.uncovered {
        let (observed, pass) = if u.exact {
            let rep = uncovered_vertices(g, &u.motif)?;
            (format!("{:?}", rep.uncovered), rep.uncovered == u.vertices)
        } else {
            let mut covered = Vec::new();
            for &v in &u.vertices {
                if covers(g, &u.motif, v)?.is_some() {
                    covered.push(v);
                }
            }
            (format!("covered among claimed: {covered:?}"), covered.is_empty())
        };
        push(
            format!("{} uncovered{}", u.motif, if u.exact { " (exact)" } else { " (at least)" }),
            format!("{:?}", u.vertices),
            observed,
            pass,
        );
    }
    Ok(ManifestReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::t_max;

    fn assert_manifest(b: &Built) {
        let rep = verify_manifest(&b.graph, &b.manifest).unwrap();
        assert!(rep.all_pass(), "{:#?}", rep.checks);
    }

    #[test]
    fn circulant_is_regular() {
        let e = bipartite_circulant(&[0, 1, 2, 3], &[4, 5, 6, 7], 3, 7);
        let g = RGraph::from_edges(2, 8, e).unwrap();
        assert!(g.degree_profile().is_regular());
        assert_eq!(g.degree_profile().min_degree, 3);
    }

    #[test]
    fn k4minus_examples() {
        let b = k4minus_lower(9, 3, 0).unwrap();
        assert_eq!(b.graph.min_i_degree(1).unwrap().value, 12);
        assert_eq!(b.graph.degree(&VertexSet::single(0)).unwrap(), 15);
        assert_manifest(&b);
        let b = k4minus_lower(5, 1, 11).unwrap();
        assert_eq!(b.graph.min_i_degree(1).unwrap().value, 2);
        assert_eq!(b.graph.degree(&VertexSet::single(1)).unwrap(), 4);
        assert_manifest(&b);
        assert!(k4minus_lower(8, 3, 0).is_err());
        assert!(k4minus_lower(9, 5, 0).is_err());
        assert!(k4minus_lower(9, 0, 0).is_err());
    }

    #[test]
    fn k4minus_link_round_trips() {
        for seed in [0, 1, 99] {
            let b = k4minus_lower(11, 3, seed).unwrap();
            let ex = extract_link(&b.graph, 10).unwrap();
            assert_eq!(ex.link, k4minus_link(11, 3, seed).unwrap());
        }
    }

    #[test]
    fn k4_link_example() {
        let b = k4_lower_linkgraph(54).unwrap();
        let p = b.graph.degree_profile();
        assert!(p.is_regular() && p.min_degree == 38);
        assert_eq!(t_max(&b.graph).unwrap().0, 432);
        assert_manifest(&b);
        assert!(k4_lower_linkgraph(27).is_err());
    }

    #[test]
    fn lift_examples() {
        let k3 = RGraph::complete(2, 3).unwrap();
        let h = lift_link(&k3).unwrap();
        assert_eq!(h.graph.edge_count(), 3);
        assert!(h.graph.edges().all(|e| e.contains(&3)));
        assert_manifest(&h);

        let empty = RGraph::empty(2, 3).unwrap();
        let h = lift_link(&empty).unwrap();
        assert_eq!(h.graph.edges().collect::<Vec<_>>(), vec![&[0, 1, 2][..]]);

        let k4 = RGraph::complete(2, 4).unwrap();
        let h = lift_link(&k4).unwrap();
        let ex = extract_link(&h.graph, 4).unwrap();
        assert_eq!(ex.link, k4);
        assert!(ex.valid_lift);
    }

    #[test]
    fn lift_of_higher_uniformity() {
        let k5 = RGraph::complete(3, 5).unwrap();
        let h = lift_link(&k5).unwrap();
        assert_eq!(h.graph.uniformity(), 4);
        assert_eq!(h.manifest.uncovered.as_ref().unwrap().motif.name(), "clique5");
        assert_manifest(&h);
    }

    #[test]
    fn extract_link_detects_invalid_lift() {
        let k4 = RGraph::complete(3, 4).unwrap();
        assert!(!extract_link(&k4, 3).unwrap().valid_lift);
    }

    #[test]
    fn c5_examples() {
        for (n, delta) in [(2, 7), (3, 18), (4, 34)] {
            let b = c5_lower(n).unwrap();
            assert_eq!(b.graph.vertex_count(), 3 * n + 1);
            assert_eq!(b.graph.min_i_degree(1).unwrap().value, delta, "n={n}");
        }
        assert_manifest(&c5_lower(3).unwrap());
        assert!(c5_lower(1).is_err());
    }

    #[test]
    fn k5_examples() {
        let b = k5_lower(3).unwrap();
        assert_eq!((b.graph.vertex_count(), b.graph.edge_count()), (6, 18));
        assert_eq!(b.graph.min_i_degree(1).unwrap().value, 9);
        assert_manifest(&b);
        assert_eq!(k5_lower(2).unwrap().graph, RGraph::complete(3, 4).unwrap());
    }

    #[test]
    fn blowup_examples() {
        let s9 = crate::steiner::sts(9).unwrap().triples;
        let b = blowup_sts(&s9, 1, "sts(9)").unwrap();
        assert_eq!(b.graph.degree(&VertexSet::single(9)).unwrap(), 36);
        assert_eq!(b.graph.min_i_degree(1).unwrap().value, 32);
        assert_eq!(b.manifest.uncovered.as_ref().unwrap().motif.name(), "k6");
        assert_manifest(&b);

        let fano = crate::steiner::sts(7).unwrap().triples;
        let b = blowup_sts(&fano, 1, "fano").unwrap();
        assert_eq!(b.graph.degree(&VertexSet::single(7)).unwrap(), 21);
        assert_eq!(b.graph.min_i_degree(1).unwrap().value, 18);
        assert_manifest(&b);

        let b = blowup_sts(&s9, 2, "sts(9)").unwrap();
        assert_eq!(b.graph.vertex_count(), 19);
        assert_eq!(b.graph.degree(&VertexSet::single(18)).unwrap(), 144);
        let rep = verify_manifest(&b.graph, &b.manifest).unwrap();
        assert!(rep.checks.iter().filter(|c| c.claim.starts_with("degree")).all(|c| c.pass));
    }

    #[test]
    fn tau_lower_examples() {
        let b = tau_lower_interval(40, &rat(11, 20), 2, 0).unwrap();
        let p = b.graph.degree_profile();
        assert!(p.is_regular() && p.min_degree == 22);
        assert_eq!(t_max(&b.graph).unwrap().0, 60);
        assert_manifest(&b);

        let b = tau_lower_interval(12, &rat(1, 2), 2, 0).unwrap();
        assert_eq!(t_max(&b.graph).unwrap().0, 0);
        assert_eq!(b.graph.edge_count(), 36);

        let b = tau_lower_interval(36, &rat(2, 3), 3, 0).unwrap();
        assert_eq!(t_max(&b.graph).unwrap().0, 144);

        assert!(tau_lower_interval(42, &rat(11, 20), 2, 0).is_err());
        assert!(tau_lower_interval(40, &rat(2, 3), 2, 0).is_err());
    }

    #[test]
    fn tau_upper_examples() {
        let b = tau_upper_interval(36, &rat(2, 3), 2, Some(&[1, 2, 0]), 0).unwrap();
        assert_eq!(b.graph, RGraph::from_edges(2, 36, complete_tripartite(12)).unwrap());
        assert_eq!(t_max(&b.graph).unwrap().0, 144);

        let b = tau_upper_interval(36, &rat(11, 18), 2, None, 5).unwrap();
        let p = b.graph.degree_profile();
        assert!(p.is_regular() && p.min_degree == 22);
        assert_eq!(t_max(&b.graph).unwrap().0, 108);
        assert_manifest(&b);

        let b = tau_upper_interval(12, &rat(2, 3), 2, None, 0).unwrap();
        assert_eq!(b.graph.degree_profile().min_degree, 8);
        assert_eq!(t_max(&b.graph).unwrap().0, 16);

        assert!(tau_upper_interval(36, &rat(11, 18), 2, Some(&[0, 2, 1]), 0).is_err());
        assert!(tau_upper_interval(36, &rat(11, 18), 2, Some(&[1, 1, 0]), 0).is_err());
        assert!(tau_upper_interval(32, &rat(11, 18), 2, None, 0).is_err());
    }

    fn complete_tripartite(p: usize) -> Vec<[Vertex; 2]> {
        let mut e = Vec::new();
        for x in 0..3 * p {
            for y in x + 1..3 * p {
                if x / p != y / p {
                    e.push([x as Vertex, y as Vertex]);
                }
            }
        }
        e
    }

    #[test]
    fn efg_examples() {
        let b = efg_graph(&[3], 2).unwrap();
        assert_eq!(b.graph, RGraph::from_edges(2, 6, complete_tripartite(2)).unwrap());
        assert_manifest(&b);

        let b = efg_graph(&[3, 5], 1).unwrap();
        assert_eq!(b.graph.vertex_count(), 15);
        assert_eq!(b.graph.degree_profile().min_degree, 8);
        assert_eq!(book_number(&b.graph).unwrap().0, 3);
        assert_manifest(&b);

        let b = efg_graph(&[4], 1).unwrap();
        assert_eq!(b.graph, RGraph::complete(2, 4).unwrap());
        assert_manifest(&b);

        assert!(efg_graph(&[3, 4], 1).is_err());
        assert!(efg_graph(&[2], 1).is_err());
        assert!(efg_graph(&[3], 0).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let a = k4minus_lower(13, 4, 42).unwrap();
        let b = k4minus_lower(13, 4, 42).unwrap();
        assert_eq!(a.graph.to_text(), b.graph.to_text());
        assert_eq!(
            serde_json::to_string(&a.manifest).unwrap(),
            serde_json::to_string(&b.manifest).unwrap()
        );
        assert_ne!(a.graph, k4minus_lower(13, 4, 43).unwrap().graph);
    }
}
