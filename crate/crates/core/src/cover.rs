//! Motif embedding and the triangle, clique, book and independence metrics.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::comb::combinations;
use crate::error::{Error, Result};
use crate::graph::{RGraph, Vertex};

/// Default vertex cap for the exponential exact solvers.
pub const DEFAULT_EXACT_LIMIT: usize = 24;

/// Hard cap for the exact solvers; vertex sets are stored in a `u64`.
pub const MAX_EXACT_LIMIT: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MotifKind {
    /// the tetrahedron K₄⁽³⁾
    K4,
    /// the generalised triangle K₄⁽³⁾⁻
    K4Minus,
    /// the tight 5-cycle C₅⁽³⁾
    C5,
    /// K_t⁽³⁾ for t ≥ 5
    CompleteTriple(usize),
    /// K_r⁽ʳ⁻¹⁾ for r ≥ 3
    Clique(usize),
}

/// A small pattern graph to embed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motif {
    kind: MotifKind,
    pattern: RGraph,
}

impl Motif {
    pub fn new(kind: MotifKind) -> Result<Motif> {
        let pattern = match kind {
            MotifKind::K4 => RGraph::complete(3, 4)?,
            MotifKind::K4Minus => RGraph::from_edges(3, 4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]])?,
            MotifKind::C5 => RGraph::from_edges(
                3,
                5,
                [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]],
            )?,
            MotifKind::CompleteTriple(t) => {
                if t < 5 {
                    return Err(Error::precondition(format!(
                        "K_t motif needs t >= 5 (use k4 for t = 4), got {t}"
                    )));
                }
                RGraph::complete(3, t)?
            }
            MotifKind::Clique(r) => {
                if r < 3 {
                    return Err(Error::precondition(format!("clique motif needs r >= 3, got {r}")));
                }
                RGraph::complete(r - 1, r)?
            }
        };
        Ok(Motif { kind, pattern })
    }

    pub fn k4() -> Motif {
        Motif::new(MotifKind::K4).expect("valid motif")
    }

    pub fn k4_minus() -> Motif {
        Motif::new(MotifKind::K4Minus).expect("valid motif")
    }

    pub fn c5() -> Motif {
        Motif::new(MotifKind::C5).expect("valid motif")
    }

    pub fn kind(&self) -> MotifKind {
        self.kind
    }

    pub fn pattern(&self) -> &RGraph {
        &self.pattern
    }

    pub fn uniformity(&self) -> usize {
        self.pattern.uniformity()
    }

    /// Canonical command-line name.
    pub fn name(&self) -> String {
        match self.kind {
            MotifKind::K4 => "k4".into(),
            MotifKind::K4Minus => "k4-".into(),
            MotifKind::C5 => "c5".into(),
            MotifKind::CompleteTriple(t) => format!("k{t}"),
            MotifKind::Clique(r) => format!("clique{r}"),
        }
    }
}

impl FromStr for Motif {
    type Err = Error;

    fn from_str(s: &str) -> Result<Motif> {
        let lower = s.trim().to_ascii_lowercase();
        let kind = match lower.as_str() {
            "k4" => MotifKind::K4,
            "k4-" => MotifKind::K4Minus,
            "c5" => MotifKind::C5,
            _ => {
                if let Some(rest) = lower.strip_prefix("clique") {
                    MotifKind::Clique(rest.parse().map_err(|_| Error::UnknownMotif(s.into()))?)
                } else if let Some(rest) = lower.strip_prefix('k') {
                    let t: usize = rest.parse().map_err(|_| Error::UnknownMotif(s.into()))?;
                    if t < 5 {
                        return Err(Error::UnknownMotif(s.into()));
                    }
                    MotifKind::CompleteTriple(t)
                } else {
                    return Err(Error::UnknownMotif(s.into()));
                }
            }
        };
        Motif::new(kind).map_err(|_| Error::UnknownMotif(s.into()))
    }
}

impl fmt::Display for Motif {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for Motif {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

/// Which vertices of a host lie in a copy of a motif.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub motif: Motif,
    pub uncovered: Vec<Vertex>,
    /// image of pattern vertex `i` at position `i`
    pub witness_per_vertex: BTreeMap<Vertex, Vec<Vertex>>,
}

impl CoverReport {
    pub fn is_covering(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Precomputed search plan for embedding one motif.
struct Embedder<'a> {
    host: &'a RGraph,
    pattern: &'a RGraph,
    host_degrees: Vec<usize>,
    pattern_degrees: Vec<usize>,
    k: usize,
}

impl<'a> Embedder<'a> {
    fn new(host: &'a RGraph, motif: &'a Motif) -> Result<Self> {
        if host.uniformity() != motif.uniformity() {
            return Err(Error::WrongUniformity {
                expected: motif.uniformity(),
                got: host.uniformity(),
            });
        }
        Ok(Embedder {
            host,
            pattern: motif.pattern(),
            host_degrees: host.vertex_degrees(),
            pattern_degrees: motif.pattern().vertex_degrees(),
            k: motif.pattern().vertex_count(),
        })
    }

    /// First embedding in search order whose image contains `v`.
    fn find_through(&self, v: Vertex) -> Option<Vec<Vertex>> {
        if self.k > self.host.vertex_count() {
            return None;
        }
        let mut image = vec![Vertex::MAX; self.k];
        let mut used = vec![false; self.host.vertex_count()];
        for root in 0..self.k {
            if self.host_degrees[v as usize] < self.pattern_degrees[root] {
                continue;
            }
            image[root] = v;
            used[v as usize] = true;
            let order: Vec<usize> = (0..self.k).filter(|&p| p != root).collect();
            if self.extend(&order, 0, &mut image, &mut used) {
                return Some(image);
            }
            used[v as usize] = false;
            image[root] = Vertex::MAX;
        }
        None
    }

    fn extend(&self, order: &[usize], depth: usize, image: &mut [Vertex], used: &mut [bool]) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        let need = self.pattern_degrees[p];
        for u in 0..self.host.vertex_count() as Vertex {
            if used[u as usize] || self.host_degrees[u as usize] < need {
                continue;
            }
            image[p] = u;
            if self.consistent(p, image) {
                used[u as usize] = true;
                if self.extend(order, depth + 1, image, used) {
                    return true;
                }
                used[u as usize] = false;
            }
        }
        image[p] = Vertex::MAX;
        false
    }

    /// Every pattern edge through `p` whose vertices are all mapped must land
    /// on a host edge.
    fn consistent(&self, p: usize, image: &[Vertex]) -> bool {
        let mut buf = Vec::with_capacity(self.pattern.uniformity());
        for e in self.pattern.edges() {
            if !e.contains(&(p as Vertex)) {
                continue;
            }
            buf.clear();
            let mut complete = true;
            for &q in e {
                let w = image[q as usize];
                if w == Vertex::MAX {
                    complete = false;
                    break;
                }
                buf.push(w);
            }
            if complete {
                buf.sort_unstable();
                if !self.host.contains_sorted(&buf) {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether some copy of `motif` in `host` contains `v`, with the first
/// embedding found as witness.
pub fn covers(host: &RGraph, motif: &Motif, v: Vertex) -> Result<Option<Vec<Vertex>>> {
    if v as usize >= host.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: host.vertex_count(),
        });
    }
    Ok(Embedder::new(host, motif)?.find_through(v))
}

/// Runs [`covers`] for every vertex.
pub fn uncovered_vertices(host: &RGraph, motif: &Motif) -> Result<CoverReport> {
    let emb = Embedder::new(host, motif)?;
    let found: Vec<Option<Vec<Vertex>>> = (0..host.vertex_count() as Vertex)
        .into_par_iter()
        .map(|v| emb.find_through(v))
        .collect();
    let mut uncovered = Vec::new();
    let mut witness_per_vertex = BTreeMap::new();
    for (v, w) in found.into_iter().enumerate() {
        match w {
            Some(w) => {
                witness_per_vertex.insert(v as Vertex, w);
            }
            None => uncovered.push(v as Vertex),
        }
    }
    Ok(CoverReport {
        motif: motif.clone(),
        uncovered,
        witness_per_vertex,
    })
}

/// Checks that `image` is an injective map of the motif's pattern into
/// `host` sending edges to edges.
pub fn is_embedding(host: &RGraph, motif: &Motif, image: &[Vertex]) -> bool {
    let pattern = motif.pattern();
    if image.len() != pattern.vertex_count() || host.uniformity() != pattern.uniformity() {
        return false;
    }
    let mut seen = image.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) || seen.last().is_some_and(|&v| v as usize >= host.vertex_count()) {
        return false;
    }
    pattern.edges().all(|e| {
        let mut t: Vec<Vertex> = e.iter().map(|&q| image[q as usize]).collect();
        t.sort_unstable();
        host.contains_sorted(&t)
    })
}

/// Bitset adjacency rows for a 2-graph of any order.
#[derive(Debug, Clone)]
pub struct Adjacency {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Adjacency {
    pub fn new(g: &RGraph) -> Result<Adjacency> {
        require_graph(g)?;
        let n = g.vertex_count();
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for e in g.edges() {
            let (a, b) = (e[0] as usize, e[1] as usize);
            rows[a * words + b / 64] |= 1 << (b % 64);
            rows[b * words + a / 64] |= 1 << (a % 64);
        }
        Ok(Adjacency { n, words, rows })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn row(&self, v: Vertex) -> &[u64] {
        let v = v as usize;
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.row(a)[b as usize / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|Γ(a) ∩ Γ(b)|`
    pub fn common(&self, a: Vertex, b: Vertex) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn neighbours(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as Vertex * 64 + b)
            })
        })
    }

    /// Triangles through `x`.
    pub fn triangle_degree(&self, x: Vertex) -> usize {
        self.neighbours(x).map(|y| self.common(x, y)).sum::<usize>() / 2
    }
}

fn require_graph(g: &RGraph) -> Result<()> {
    if g.uniformity() != 2 {
        return Err(Error::WrongUniformity {
            expected: 2,
            got: g.uniformity(),
        });
    }
    Ok(())
}

/// Number of copies of K_r⁽ʳ⁻¹⁾ through `x` in an (r−1)-graph; for a 2-graph
/// and `r = 3` this is the triangle-degree.
pub fn clique_degree(g: &RGraph, x: Vertex, r: usize) -> Result<usize> {
    if g.uniformity() + 1 != r {
        return Err(Error::WrongUniformity {
            expected: r - 1,
            got: g.uniformity(),
        });
    }
    if x as usize >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: x,
            n: g.vertex_count(),
        });
    }
    if r == 3 {
        return Ok(Adjacency::new(g)?.triangle_degree(x));
    }
    let mut buf = Vec::with_capacity(r - 1);
    let count = g
        .edges()
        .filter(|t| !t.contains(&x))
        .filter(|t| {
            (0..t.len()).all(|skip| {
                buf.clear();
                buf.extend(t.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &w)| w));
                buf.push(x);
                buf.sort_unstable();
                g.contains_sorted(&buf)
            })
        })
        .count();
    Ok(count)
}

/// Triangle-degree of every vertex of a 2-graph.
pub fn triangle_degrees(g: &RGraph) -> Result<Vec<usize>> {
    let adj = Adjacency::new(g)?;
    Ok((0..g.vertex_count() as Vertex)
        .into_par_iter()
        .map(|x| adj.triangle_degree(x))
        .collect())
}

/// Maximum triangle-degree with the smallest vertex attaining it.
pub fn t_max(g: &RGraph) -> Result<(usize, Vertex)> {
    let t = triangle_degrees(g)?;
    let (v, &val) = t
        .iter()
        .enumerate()
        .min_by_key(|&(v, &d)| (std::cmp::Reverse(d), v))
        .expect("graph has vertices");
    Ok((val, v as Vertex))
}

pub fn triangle_count(g: &RGraph) -> Result<usize> {
    Ok(triangle_degrees(g)?.iter().sum::<usize>() / 3)
}

/// `bk(xy) = |Γ(x) ∩ Γ(y)|` for an edge `xy`.
pub fn book_size(g: &RGraph, x: Vertex, y: Vertex) -> Result<usize> {
    let adj = Adjacency::new(g)?;
    for v in [x, y] {
        if v as usize >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.vertex_count(),
            });
        }
    }
    if x == y || !adj.has_edge(x, y) {
        return Err(Error::NotAnEdge(vec![x, y]));
    }
    Ok(adj.common(x, y))
}

/// Maximum book size over all edges with the lexicographically first edge
/// attaining it; `(0, None)` for an edgeless graph.
pub fn book_number(g: &RGraph) -> Result<(usize, Option<[Vertex; 2]>)> {
    let adj = Adjacency::new(g)?;
    let mut best: (usize, Option<[Vertex; 2]>) = (0, None);
    for e in g.edges() {
        let b = adj.common(e[0], e[1]);
        if best.1.is_none() || b > best.0 {
            best = (b, Some([e[0], e[1]]));
        }
    }
    Ok(best)
}

/// Result of a bipartition search; `side[v]` is 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub inside_edges: usize,
    pub side: Vec<u8>,
    /// false when the value is only an upper bound
    pub exact: bool,
}

fn check_limit(what: &'static str, n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(MAX_EXACT_LIMIT);
    if n > limit {
        return Err(Error::LimitExceeded { what, n, limit });
    }
    Ok(())
}

/// Minimum number of edges to delete to make a 2-graph bipartite.
///
/// Enumerates all `2^(n-1)` bipartitions with the last vertex on side 0 in
/// Gray-code order. Among optimal splits the one with the smallest side-1
/// mask is reported.
pub fn bipartite_edit_distance(g: &RGraph, limit: usize) -> Result<Bipartition> {
    require_graph(g)?;
    let n = g.vertex_count();
    check_limit("bipartite edit distance", n, limit)?;
    let mut nb = vec![0u64; n];
    for e in g.edges() {
        nb[e[0] as usize] |= 1 << e[1];
        nb[e[1] as usize] |= 1 << e[0];
    }
    // all vertices on side 0: every edge is inside
    let mut mask: u64 = 0;
    let mut inside = g.edge_count() as i64;
    let mut best = (inside, 0u64);
    let free = n - 1;
    for i in 1u64..(1u64 << free) {
        let v = i.trailing_zeros() as usize;
        let same_before = if mask >> v & 1 == 1 {
            (nb[v] & mask).count_ones()
        } else {
            (nb[v] & !mask).count_ones()
        } as i64;
        let degree = nb[v].count_ones() as i64;
        inside += degree - 2 * same_before;
        mask ^= 1 << v;
        if (inside, mask) < best {
            best = (inside, mask);
        }
    }
    Ok(Bipartition {
        inside_edges: best.0 as usize,
        side: (0..n).map(|v| (best.1 >> v & 1) as u8).collect(),
        exact: true,
    })
}

/// Local-search upper bound on the bipartite edit distance for graphs of any
/// size: start from a BFS two-colouring and flip vertices while that helps.
pub fn bipartite_edit_distance_upper_bound(g: &RGraph) -> Result<Bipartition> {
    let adj = Adjacency::new(g)?;
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = std::collections::VecDeque::from([s as Vertex]);
        while let Some(u) = queue.pop_front() {
            for w in adj.neighbours(u) {
                if side[w as usize] == u8::MAX {
                    side[w as usize] = 1 - side[u as usize];
                    queue.push_back(w);
                }
            }
        }
    }
    loop {
        let mut improved = false;
        for v in 0..n as Vertex {
            let same = adj.neighbours(v).filter(|&w| side[w as usize] == side[v as usize]).count();
            if 2 * same > adj.degree(v) {
                side[v as usize] ^= 1;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let inside_edges = g.edges().filter(|e| side[e[0] as usize] == side[e[1] as usize]).count();
    Ok(Bipartition {
        inside_edges,
        side,
        exact: false,
    })
}

/// Largest independent set of an r-graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Independence {
    pub alpha: usize,
    pub witness: Vec<Vertex>,
}

/// Exact independence number by include-first branch and bound; the witness
/// is the lexicographically smallest maximum independent set.
pub fn independence_number(h: &RGraph, limit: usize) -> Result<Independence> {
    let n = h.vertex_count();
    check_limit("independence number", n, limit)?;
    // edges indexed by their largest vertex, stored as masks of the others
    let mut closing: Vec<Vec<u64>> = vec![Vec::new(); n];
    for e in h.edges() {
        let (&last, rest) = e.split_last().expect("edges are nonempty");
        closing[last as usize].push(rest.iter().fold(0u64, |m, &v| m | 1 << v));
    }
    let mut search = IndependentSearch {
        n,
        closing: &closing,
        best: 0,
        best_set: 0,
    };
    search.run(0, 0, 0);
    Ok(Independence {
        alpha: search.best,
        witness: (0..n as Vertex).filter(|&v| search.best_set >> v & 1 == 1).collect(),
    })
}

struct IndependentSearch<'a> {
    n: usize,
    closing: &'a [Vec<u64>],
    best: usize,
    best_set: u64,
}

impl IndependentSearch<'_> {
    fn run(&mut self, v: usize, chosen: u64, size: usize) {
        if size > self.best {
            self.best = size;
            self.best_set = chosen;
        }
        if v == self.n || size + (self.n - v) <= self.best {
            return;
        }
        if self.closing[v].iter().all(|&m| m & chosen != m) {
            self.run(v + 1, chosen | 1 << v, size + 1);
        }
        self.run(v + 1, chosen, size);
    }
}

/// Every r-subset of `set` that is an edge; used to explain why a set is
/// not independent.
pub fn edges_within(h: &RGraph, set: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut s = set.to_vec();
    s.sort_unstable();
    combinations(s.len() as u32, h.uniformity())
        .map(|pos| pos.iter().map(|&p| s[p as usize]).collect::<Vec<_>>())
        .filter(|t| h.contains_sorted(t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2(n: usize, edges: &[[Vertex; 2]]) -> RGraph {
        RGraph::from_edges(2, n, edges).unwrap()
    }

    fn cycle(n: usize) -> RGraph {
        let e: Vec<[Vertex; 2]> = (0..n as Vertex).map(|i| [i, (i + 1) % n as Vertex]).collect();
        g2(n, &e)
    }

    #[test]
    fn motif_names_round_trip() {
        for name in ["k4", "k4-", "c5", "k6", "clique3", "clique4"] {
            let m: Motif = name.parse().unwrap();
            assert_eq!(m.name(), name);
        }
        assert!("k3".parse::<Motif>().is_err());
        assert!("clique2".parse::<Motif>().is_err());
        assert!("wheel".parse::<Motif>().is_err());
        assert_eq!("K4-".parse::<Motif>().unwrap().kind(), MotifKind::K4Minus);
    }

    #[test]
    fn motif_patterns() {
        assert_eq!(Motif::k4_minus().pattern().edge_count(), 3);
        assert_eq!(Motif::k4().pattern().edge_count(), 4);
        let c5 = Motif::c5();
        assert_eq!(c5.pattern().edge_count(), 5);
        assert!(c5.pattern().contains(&[3, 4, 0]));
        let tri: Motif = "clique3".parse().unwrap();
        assert_eq!(tri.pattern(), &RGraph::complete(2, 3).unwrap());
    }

    #[test]
    fn covers_examples() {
        let k4 = RGraph::complete(3, 4).unwrap();
        let w = covers(&k4, &Motif::k4_minus(), 0).unwrap().unwrap();
        assert!(w.contains(&0));
        assert!(is_embedding(&k4, &Motif::k4_minus(), &w));

        let single = RGraph::from_edges(3, 5, [[0, 1, 2]]).unwrap();
        for v in 0..5 {
            assert!(covers(&single, &Motif::k4_minus(), v).unwrap().is_none());
        }
    }

    #[test]
    fn covers_rejects_mismatched_uniformity() {
        let k4 = RGraph::complete(2, 4).unwrap();
        assert!(matches!(
            covers(&k4, &Motif::k4(), 0),
            Err(Error::WrongUniformity { .. })
        ));
        assert!(covers(&RGraph::complete(3, 4).unwrap(), &Motif::k4(), 9).is_err());
    }

    #[test]
    fn uncovered_vertices_of_complete_graph() {
        let k5 = RGraph::complete(3, 5).unwrap();
        let rep = uncovered_vertices(&k5, &Motif::k4()).unwrap();
        assert!(rep.is_covering());
        assert_eq!(rep.witness_per_vertex.len(), 5);
        for (v, w) in &rep.witness_per_vertex {
            assert!(w.contains(v));
            assert!(is_embedding(&k5, &Motif::k4(), w));
        }
    }

    #[test]
    fn c5_is_found_in_itself_but_not_in_k4() {
        let c5 = Motif::c5();
        let rep = uncovered_vertices(c5.pattern(), &c5).unwrap();
        assert!(rep.is_covering());
        let k4 = RGraph::complete(3, 4).unwrap();
        assert_eq!(uncovered_vertices(&k4, &c5).unwrap().uncovered, vec![0, 1, 2, 3]);
    }

    #[test]
    fn clique_degree_examples() {
        let k4 = RGraph::complete(2, 4).unwrap();
        for x in 0..4 {
            assert_eq!(clique_degree(&k4, x, 3).unwrap(), 3);
        }
        // K_4^(3) seen as a 3-graph: K_4^(3) copies through a vertex of K_5^(3)
        let k5 = RGraph::complete(3, 5).unwrap();
        assert_eq!(clique_degree(&k5, 0, 4).unwrap(), 4);
        assert!(clique_degree(&k4, 0, 4).is_err());
    }

    #[test]
    fn t_max_examples() {
        let bip = g2(4, &[[0, 2], [0, 3], [1, 2], [1, 3]]);
        assert_eq!(t_max(&bip).unwrap().0, 0);
        assert_eq!(t_max(&RGraph::complete(2, 4).unwrap()).unwrap(), (3, 0));
        assert_eq!(t_max(&RGraph::empty(2, 3).unwrap()).unwrap(), (0, 0));
        let k4e = g2(4, &[[0, 1], [0, 2], [0, 3], [1, 2], [1, 3]]);
        assert_eq!(t_max(&k4e).unwrap(), (2, 0));
    }

    #[test]
    fn book_examples() {
        let k4 = RGraph::complete(2, 4).unwrap();
        assert_eq!(book_size(&k4, 1, 3).unwrap(), 2);
        assert_eq!(book_number(&k4).unwrap(), (2, Some([0, 1])));
        let bip = g2(4, &[[0, 2], [1, 3]]);
        assert_eq!(book_number(&bip).unwrap().0, 0);
        assert_eq!(book_number(&RGraph::empty(2, 3).unwrap()).unwrap(), (0, None));
        assert!(matches!(book_size(&bip, 0, 1), Err(Error::NotAnEdge(_))));
    }

    #[test]
    fn bipartite_edit_distance_examples() {
        let k3 = RGraph::complete(2, 3).unwrap();
        assert_eq!(bipartite_edit_distance(&k3, 24).unwrap().inside_edges, 1);
        assert_eq!(bipartite_edit_distance(&cycle(5), 24).unwrap().inside_edges, 1);
        let k4 = RGraph::complete(2, 4).unwrap();
        let b = bipartite_edit_distance(&k4, 24).unwrap();
        assert_eq!(b.inside_edges, 2);
        assert_eq!(b.side.iter().filter(|&&s| s == 1).count(), 2);
        assert_eq!(bipartite_edit_distance(&cycle(6), 24).unwrap().inside_edges, 0);
        assert!(matches!(
            bipartite_edit_distance(&RGraph::empty(2, 30).unwrap(), 24),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn heuristic_is_an_upper_bound() {
        let k5 = RGraph::complete(2, 5).unwrap();
        let h = bipartite_edit_distance_upper_bound(&k5).unwrap();
        assert!(!h.exact);
        assert!(h.inside_edges >= bipartite_edit_distance(&k5, 24).unwrap().inside_edges);
        assert_eq!(bipartite_edit_distance_upper_bound(&cycle(8)).unwrap().inside_edges, 0);
    }

    #[test]
    fn independence_examples() {
        let empty = RGraph::empty(3, 5).unwrap();
        let ind = independence_number(&empty, 24).unwrap();
        assert_eq!((ind.alpha, ind.witness), (5, vec![0, 1, 2, 3, 4]));
        let t = RGraph::from_edges(3, 3, [[0, 1, 2]]).unwrap();
        assert_eq!(independence_number(&t, 24).unwrap().alpha, 2);
        let k4 = RGraph::complete(2, 4).unwrap();
        assert_eq!(independence_number(&k4, 24).unwrap().witness, vec![0]);
        assert_eq!(independence_number(&cycle(5), 24).unwrap().witness, vec![0, 2]);
    }

    #[test]
    fn edges_within_lists_spanned_edges() {
        let k4 = RGraph::complete(3, 4).unwrap();
        assert_eq!(edges_within(&k4, &[3, 0, 1]), vec![vec![0, 1, 3]]);
    }
}
