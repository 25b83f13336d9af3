//! Labelled r-uniform hypergraphs with exact degree, link and density queries.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::comb::{binomial, colex_rank, combinations};
use crate::error::{Error, Result};

pub type Vertex = u32;

/// Above this many possible edges the membership index falls back to binary
/// search over the sorted edge list.
const DENSE_INDEX_LIMIT: u128 = 1 << 26;

/// An r-uniform hypergraph on the vertices `0..n`.
///
/// Edges are strictly ascending r-tuples kept in lexicographic order. The
/// graph is immutable once built.
#[derive(Clone)]
pub struct RGraph {
    r: usize,
    n: usize,
    /// flat storage, `r` vertices per edge
    edges: Vec<Vertex>,
    index: EdgeIndex,
}

#[derive(Clone)]
enum EdgeIndex {
    /// one bit per colex rank
    Dense(Vec<u64>),
    Sorted,
}

impl RGraph {
    /// Builds a graph from arbitrary edge tuples; each tuple is sorted and
    /// duplicates are dropped.
    pub fn from_edges<I, E>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        check_shape(r, n)?;
        let mut tuples: Vec<Vec<Vertex>> = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != r {
                return Err(Error::UniformityMismatch {
                    edge: e.to_vec(),
                    got: e.len(),
                    expected: r,
                });
            }
            let mut t = e.to_vec();
            t.sort_unstable();
            if let Some(&v) = t.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(e.to_vec()));
            }
            tuples.push(t);
        }
        tuples.sort_unstable();
        tuples.dedup();
        Ok(Self::from_sorted_unchecked(r, n, tuples.concat()))
    }

    /// The graph with no edges.
    pub fn empty(r: usize, n: usize) -> Result<Self> {
        check_shape(r, n)?;
        Ok(Self::from_sorted_unchecked(r, n, Vec::new()))
    }

    /// The complete r-graph on `n` vertices.
    pub fn complete(r: usize, n: usize) -> Result<Self> {
        check_shape(r, n)?;
        let flat: Vec<Vertex> = combinations(n as u32, r).flatten().collect();
        Ok(Self::from_sorted_unchecked(r, n, flat))
    }

    /// `flat` must hold valid, sorted, deduplicated edges in lex order.
    pub(crate) fn from_sorted_unchecked(r: usize, n: usize, flat: Vec<Vertex>) -> Self {
        debug_assert_eq!(flat.len() % r, 0);
        let total = binomial(n as u64, r as u64);
        let index = if total <= DENSE_INDEX_LIMIT {
            let mut bits = vec![0u64; (total as usize).div_ceil(64)];
            for e in flat.chunks_exact(r) {
                let k = colex_rank(e) as usize;
                bits[k / 64] |= 1 << (k % 64);
            }
            EdgeIndex::Dense(bits)
        } else {
            EdgeIndex::Sorted
        };
        RGraph {
            r,
            n,
            edges: flat,
            index,
        }
    }

    /// Builds from an edge list produced in any order by a generator whose
    /// tuples are already valid; sorts and deduplicates.
    pub(crate) fn from_valid_edges(r: usize, n: usize, mut tuples: Vec<Vec<Vertex>>) -> Self {
        for t in tuples.iter_mut() {
            t.sort_unstable();
        }
        tuples.sort_unstable();
        tuples.dedup();
        Self::from_sorted_unchecked(r, n, tuples.concat())
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.r
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.edges.chunks_exact(self.r)
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i * self.r..(i + 1) * self.r]
    }

    /// Membership test for a strictly ascending tuple.
    pub fn contains_sorted(&self, e: &[Vertex]) -> bool {
        debug_assert!(e.windows(2).all(|w| w[0] < w[1]));
        if e.len() != self.r || e.last().is_some_and(|&v| v as usize >= self.n) {
            return false;
        }
        match &self.index {
            EdgeIndex::Dense(bits) => {
                let k = colex_rank(e) as usize;
                bits[k / 64] >> (k % 64) & 1 == 1
            }
            EdgeIndex::Sorted => {
                let m = self.edge_count();
                let (mut lo, mut hi) = (0, m);
                while lo < hi {
                    let mid = (lo + hi) / 2;
                    match self.edge(mid).cmp(e) {
                        std::cmp::Ordering::Less => lo = mid + 1,
                        std::cmp::Ordering::Greater => hi = mid,
                        std::cmp::Ordering::Equal => return true,
                    }
                }
                false
            }
        }
    }

    /// Membership test for a tuple in any order.
    pub fn contains(&self, e: &[Vertex]) -> bool {
        let mut t = e.to_vec();
        t.sort_unstable();
        if t.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        self.contains_sorted(&t)
    }

    /// Degree of every vertex.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &v in &self.edges {
            deg[v as usize] += 1;
        }
        deg
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        if let Some(&v) = s.0.iter().find(|&&v| v as usize >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    /// Number of edges containing `s`, i.e. `|Γ(S)|`.
    pub fn degree(&self, s: &VertexSet) -> Result<usize> {
        self.check_set(s)?;
        if s.len() > self.r {
            return Err(Error::InvalidSetSize {
                size: s.len(),
                reason: format!("degree needs |S| <= r = {}", self.r),
            });
        }
        if s.len() == 1 {
            let v = s.0[0];
            return Ok(self.edges.iter().filter(|&&u| u == v).count());
        }
        Ok(self.edges().filter(|e| is_subset(&s.0, e)).count())
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_degrees(self.vertex_degrees())
    }

    /// Minimum degree over all i-sets together with the lexicographically
    /// smallest i-set attaining it.
    pub fn min_i_degree(&self, i: usize) -> Result<MinDegree> {
        if i == 0 || i >= self.r {
            return Err(Error::InvalidSetSize {
                size: i,
                reason: format!("minimum i-degree needs 1 <= i <= r - 1 = {}", self.r - 1),
            });
        }
        if i == 1 {
            let deg = self.vertex_degrees();
            let (v, &d) = deg
                .iter()
                .enumerate()
                .min_by_key(|&(v, &d)| (d, v))
                .expect("graph has at least r vertices");
            return Ok(MinDegree {
                value: d,
                witness: VertexSet(vec![v as Vertex]),
            });
        }
        let mut counts: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for e in self.edges() {
            for pos in combinations(self.r as u32, i) {
                let sub: Vec<Vertex> = pos.iter().map(|&p| e[p as usize]).collect();
                *counts.entry(sub).or_default() += 1;
            }
        }
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        for s in combinations(self.n as u32, i) {
            let d = counts.get(&s).copied().unwrap_or(0);
            if best.as_ref().is_none_or(|(b, _)| d < *b) {
                let stop = d == 0;
                best = Some((d, s));
                if stop {
                    break;
                }
            }
        }
        let (value, w) = best.expect("at least one i-set");
        Ok(MinDegree {
            value,
            witness: VertexSet(w),
        })
    }

    /// The link graph of `s`: an (r - |S|)-graph on the remaining vertices,
    /// relabelled in order. `index_map[new] = old`.
    pub fn link(&self, s: &VertexSet) -> Result<Link> {
        self.check_set(s)?;
        if s.is_empty() || s.len() >= self.r {
            return Err(Error::InvalidSetSize {
                size: s.len(),
                reason: format!("link needs 0 < |S| < r = {}", self.r),
            });
        }
        let mut new_label = vec![Vertex::MAX; self.n];
        let mut index_map = Vec::with_capacity(self.n - s.len());
        for v in 0..self.n as Vertex {
            if !s.contains(v) {
                new_label[v as usize] = index_map.len() as Vertex;
                index_map.push(v);
            }
        }
        let k = self.r - s.len();
        let mut flat = Vec::new();
        for e in self.edges() {
            if is_subset(&s.0, e) {
                // relabelling is monotone, so the result stays sorted
                flat.extend(e.iter().filter(|v| !s.contains(**v)).map(|&v| new_label[v as usize]));
            }
        }
        // edges containing S appear in lex order of their full tuple, and removing
        // the fixed set S preserves that order
        let graph = RGraph::from_sorted_unchecked(k, self.n - s.len(), flat);
        Ok(Link { graph, index_map })
    }

    /// `|E| / C(n, r)` as an exact rational.
    pub fn edge_density(&self) -> BigRational {
        let total = binomial(self.n as u64, self.r as u64);
        BigRational::new(BigInt::from(self.edge_count()), BigInt::from(total))
    }

    /// Graph on the same vertices with one more edge.
    pub fn with_edge(&self, e: &[Vertex]) -> Result<RGraph> {
        let mut all: Vec<Vec<Vertex>> = self.edges().map(<[Vertex]>::to_vec).collect();
        all.push(e.to_vec());
        RGraph::from_edges(self.r, self.n, all)
    }

    /// Serialises in the plain-text hypergraph format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.r, self.n);
        for e in self.edges() {
            let line: Vec<String> = e.iter().map(Vertex::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the plain-text hypergraph format: a `r n` header, then one edge
    /// per line, `#` comment lines anywhere.
    pub fn from_text(text: &str) -> Result<RGraph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums = parse_numbers(line, line_no)?;
            match header {
                None => {
                    if nums.len() != 2 {
                        return Err(parse_err(line_no, "header must be `r n`"));
                    }
                    let (r, n) = (nums[0] as usize, nums[1] as usize);
                    check_shape(r, n).map_err(|e| parse_err(line_no, &e.to_string()))?;
                    header = Some((r, n));
                }
                Some((r, n)) => {
                    if nums.len() != r {
                        return Err(parse_err(
                            line_no,
                            &format!("edge has {} vertices, expected {r}", nums.len()),
                        ));
                    }
                    let e: Vec<Vertex> = nums.into_iter().map(|x| x as Vertex).collect();
                    if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                        return Err(parse_err(line_no, &format!("vertex {v} out of range (n = {n})")));
                    }
                    if e.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(parse_err(line_no, "edge vertices must be strictly ascending"));
                    }
                    edges.push(e);
                }
            }
        }
        let (r, n) = header.ok_or_else(|| parse_err(1, "missing `r n` header"))?;
        RGraph::from_edges(r, n, edges)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<RGraph> {
        RGraph::from_text(&fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn parse_numbers(line: &str, line_no: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| parse_err(line_no, &format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn check_shape(r: usize, n: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::UniformityTooSmall(r));
    }
    if n < r {
        return Err(Error::TooFewVertices { r, n });
    }
    if n > Vertex::MAX as usize {
        return Err(Error::precondition("vertex count does not fit in 32 bits"));
    }
    Ok(())
}

/// `small ⊆ big` for ascending slices.
fn is_subset(small: &[Vertex], big: &[Vertex]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}

impl PartialEq for RGraph {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for RGraph {}

impl fmt::Debug for RGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RGraph")
            .field("r", &self.r)
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Serialize for RGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RGraph", 3)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            r: usize,
            n: usize,
            edges: Vec<Vec<Vertex>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        RGraph::from_edges(raw.r, raw.n, raw.edges).map_err(serde::de::Error::custom)
    }
}

/// An ascending set of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut v: Vec<Vertex> = members.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(v));
        }
        Ok(VertexSet(v))
    }

    pub fn single(v: Vertex) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

/// Per-vertex degrees with their extremes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub per_vertex: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl DegreeProfile {
    fn from_degrees(per_vertex: Vec<usize>) -> Self {
        let min_degree = per_vertex.iter().copied().min().unwrap_or(0);
        let max_degree = per_vertex.iter().copied().max().unwrap_or(0);
        DegreeProfile {
            per_vertex,
            min_degree,
            max_degree,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree == self.max_degree
    }
}

/// `δ_i` together with a lexicographically minimal i-set attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinDegree {
    pub value: usize,
    pub witness: VertexSet,
}

/// A link graph plus the map from its labels back to the parent's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub graph: RGraph,
    pub index_map: Vec<Vertex>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_3() -> RGraph {
        RGraph::complete(3, 4).unwrap()
    }

    fn k4_minus() -> RGraph {
        RGraph::from_edges(3, 4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap()
    }

    fn set(v: &[Vertex]) -> VertexSet {
        VertexSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn from_edge_list_examples() {
        let g = k4_minus();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(RGraph::empty(3, 4).unwrap().edge_count(), 0);
        let tri = RGraph::from_edges(2, 3, [[0, 1], [1, 2], [2, 0]]).unwrap();
        assert_eq!(tri.edges().collect::<Vec<_>>(), vec![&[0, 1][..], &[0, 2], &[1, 2]]);
    }

    #[test]
    fn from_edge_list_sorts_and_dedups() {
        let g = RGraph::from_edges(3, 5, [[4, 0, 2], [2, 4, 0], [1, 2, 3]]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![&[0, 2, 4][..], &[1, 2, 3]]);
    }

    #[test]
    fn from_edge_list_rejects_bad_input() {
        assert!(matches!(
            RGraph::from_edges(3, 4, [vec![0, 1]]),
            Err(Error::UniformityMismatch { .. })
        ));
        assert!(matches!(
            RGraph::from_edges(3, 4, [[0, 1, 4]]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
        assert!(matches!(RGraph::from_edges(1, 4, [[0]]), Err(Error::UniformityTooSmall(1))));
        assert!(matches!(RGraph::from_edges(3, 4, [[0, 0, 1]]), Err(Error::RepeatedVertex(_))));
        assert!(matches!(RGraph::empty(3, 2), Err(Error::TooFewVertices { .. })));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(k4_3().degree(&set(&[0])).unwrap(), 3);
        assert_eq!(k4_minus().degree(&set(&[1, 2])).unwrap(), 1);
        let empty = RGraph::empty(3, 5).unwrap();
        assert_eq!(empty.degree(&set(&[0, 3])).unwrap(), 0);
        assert_eq!(k4_3().degree(&set(&[0, 1, 2])).unwrap(), 1);
    }

    #[test]
    fn degree_errors() {
        assert!(k4_3().degree(&set(&[0, 1, 2, 3])).is_err());
        assert!(k4_3().degree(&set(&[7])).is_err());
    }

    #[test]
    fn min_i_degree_examples() {
        assert_eq!(k4_3().min_i_degree(2).unwrap().value, 2);
        assert_eq!(k4_3().min_i_degree(1).unwrap().value, 3);
        let m = k4_minus().min_i_degree(2).unwrap();
        assert_eq!(m.value, 1);
        assert_eq!(m.witness.as_slice(), &[1, 2]);
        assert!(k4_3().min_i_degree(3).is_err());
        assert!(k4_3().min_i_degree(0).is_err());
    }

    #[test]
    fn min_i_degree_witness_is_lex_minimal_zero() {
        let g = RGraph::from_edges(3, 5, [[2, 3, 4]]).unwrap();
        let m = g.min_i_degree(2).unwrap();
        assert_eq!((m.value, m.witness.as_slice()), (0, &[0, 1][..]));
    }

    #[test]
    fn link_examples() {
        let l = k4_3().link(&set(&[3])).unwrap();
        assert_eq!(l.graph, RGraph::complete(2, 3).unwrap());
        assert_eq!(l.index_map, vec![0, 1, 2]);

        let l = k4_minus().link(&set(&[0])).unwrap();
        assert_eq!(l.graph, RGraph::complete(2, 3).unwrap());
        assert_eq!(l.index_map, vec![1, 2, 3]);

        assert!(k4_3().link(&set(&[])).is_err());
        assert!(k4_3().link(&set(&[0, 1, 2])).is_err());
    }

    #[test]
    fn link_relabels_in_order() {
        let g = RGraph::from_edges(3, 5, [[0, 2, 4], [1, 2, 3]]).unwrap();
        let l = g.link(&set(&[2])).unwrap();
        assert_eq!(l.index_map, vec![0, 1, 3, 4]);
        assert_eq!(l.graph.edges().collect::<Vec<_>>(), vec![&[0, 3][..], &[1, 2]]);
    }

    #[test]
    fn density_examples() {
        use num_traits::{One, Zero};
        assert!(k4_3().edge_density().is_one());
        assert!(RGraph::empty(3, 6).unwrap().edge_density().is_zero());
        assert_eq!(
            k4_minus().edge_density(),
            BigRational::new(3.into(), 4.into())
        );
    }

    #[test]
    fn sorted_index_fallback_agrees() {
        // 2-graph on 20000 vertices exceeds the dense index
        let g = RGraph::from_edges(3, 1000, [[1, 500, 999], [0, 1, 2]]).unwrap();
        assert!(matches!(g.index, EdgeIndex::Sorted));
        assert!(g.contains(&[999, 1, 500]));
        assert!(g.contains_sorted(&[0, 1, 2]));
        assert!(!g.contains_sorted(&[0, 1, 3]));
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let g = k4_minus();
        let text = g.to_text();
        assert_eq!(text, "3 4\n0 1 2\n0 1 3\n0 2 3\n");
        assert_eq!(RGraph::from_text(&text).unwrap(), g);

        let commented = "# generalised triangle\n3 4\n# edges\n0 1 2\n0 1 3\n\n0 2 3\n";
        assert_eq!(RGraph::from_text(commented).unwrap(), g);

        let err = RGraph::from_text("3 4\n0 1 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = RGraph::from_text("3 4\n0 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = RGraph::from_text("3 4\n2 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(RGraph::from_text("# nothing\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = k4_minus();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"r":3,"n":4,"edges":[[0,1,2],[0,1,3],[0,2,3]]}"#);
        let back: RGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
