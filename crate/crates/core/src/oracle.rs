//! Exhaustive searches over all small graphs for exact extremal values.
//!
//! Edge sets are bitmasks over the lexicographically ranked edges of the
//! complete graph (bit `i` is the `i`-th edge). Every search visits masks in
//! ascending integer order inside independent prefix chunks, so the witness
//! reported for an optimum is the smallest mask attaining it regardless of
//! how the chunks are scheduled.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::comb::combinations;
use crate::cover::{book_number, covers, t_max, Motif};
use crate::error::{Error, Result};
use crate::graph::{RGraph, Vertex};

/// Largest vertex count accepted by [`max_delta1_no_cover`].
pub const MAX_COVER_VERTICES: usize = 8;
/// Largest vertex count accepted by [`min_tmax`] and [`min_book`].
pub const MAX_GRAPH_VERTICES: usize = 10;

const CHECK_EVERY: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Objective {
    MaxDelta1NoCover,
    MinTmax,
    MinBook,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub motif: Option<Motif>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

/// Outcome of an exhaustive search. `wall_time` is not serialized so that
/// reports are byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub objective: Objective,
    pub params: SearchParams,
    pub value: usize,
    pub witness: RGraph,
    pub witness_mask: u64,
    pub graphs_scanned: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct SearchConfig {
    /// abort with [`Error::BudgetExceeded`] once exceeded
    pub budget: Option<Duration>,
    /// number of top edges fixed per parallel chunk; `None` picks a default
    pub prefix_bits: Option<usize>,
}

impl SearchConfig {
    pub fn with_budget(budget: Duration) -> Self {
        SearchConfig {
            budget: Some(budget),
            prefix_bits: None,
        }
    }
}

struct Clock {
    deadline: Option<Instant>,
    aborted: AtomicBool,
}

impl Clock {
    fn new(budget: Option<Duration>) -> Clock {
        Clock {
            deadline: budget.map(|b| Instant::now() + b),
            aborted: AtomicBool::new(false),
        }
    }

    fn expired(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.aborted.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }
}

fn prefix_bits(cfg: &SearchConfig, edges: usize) -> usize {
    cfg.prefix_bits.unwrap_or(10).min(edges)
}

fn mask_to_graph(r: usize, n: usize, edges: &[Vec<Vertex>], mask: u64) -> RGraph {
    let chosen: Vec<Vec<Vertex>> = (0..edges.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| edges[i].clone())
        .collect();
    RGraph::from_valid_edges(r, n, chosen)
}

/// Every edge mask of a copy of `motif` in the complete r-graph on `n`
/// vertices that contains vertex 0.
fn copies_through_zero(motif: &Motif, n: usize, rank: &dyn Fn(&[Vertex]) -> usize) -> Vec<u64> {
    let pattern = motif.pattern();
    let k = pattern.vertex_count();
    if k > n {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    let mut image = vec![0 as Vertex; k];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        pattern: &RGraph,
        image: &mut [Vertex],
        used: &mut [bool],
        rank: &dyn Fn(&[Vertex]) -> usize,
        out: &mut BTreeSet<u64>,
    ) {
        if i == image.len() {
            if !used[0] {
                return;
            }
            let mut mask = 0u64;
            let mut e = Vec::with_capacity(pattern.uniformity());
            for pe in pattern.edges() {
                e.clear();
                e.extend(pe.iter().map(|&p| image[p as usize]));
                e.sort_unstable();
                mask |= 1 << rank(&e);
            }
            out.insert(mask);
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                image[i] = v as Vertex;
                go(i + 1, pattern, image, used, rank, out);
                used[v] = false;
            }
        }
    }
    go(0, pattern, &mut image, &mut used, rank, &mut out);
    out.into_iter().collect()
}

struct CoverSearch<'a> {
    edges: &'a [Vec<Vertex>],
    copies_by_edge: &'a [Vec<u64>],
    clock: &'a Clock,
    mask: u64,
    deg: Vec<u32>,
    rem: Vec<u32>,
    best: Option<(u32, u64)>,
    nodes: u64,
    leaves: u64,
}

impl CoverSearch<'_> {
    /// Includes edge `e` unless that completes a copy through vertex 0.
    fn include(&mut self, e: usize) -> bool {
        let with = self.mask | 1 << e;
        if self.copies_by_edge[e].iter().any(|&c| c & !with == 0) {
            return false;
        }
        self.mask = with;
        for &v in &self.edges[e] {
            self.deg[v as usize] += 1;
        }
        true
    }

    fn exclude_undo(&mut self, e: usize) {
        self.mask &= !(1 << e);
        for &v in &self.edges[e] {
            self.deg[v as usize] -= 1;
        }
    }

    fn dfs(&mut self, k: usize) {
        self.nodes += 1;
        if self.nodes % CHECK_EVERY == 0 && self.clock.expired() {
            return;
        }
        let upper = self.deg.iter().zip(&self.rem).map(|(d, r)| d + r).min().unwrap_or(0);
        if self.best.is_some_and(|(b, _)| upper <= b) {
            return;
        }
        if k == 0 {
            self.leaves += 1;
            self.best = Some((upper, self.mask));
            return;
        }
        let e = k - 1;
        for &v in &self.edges[e] {
            self.rem[v as usize] -= 1;
        }
        self.dfs(e);
        if self.include(e) {
            self.dfs(e);
            self.exclude_undo(e);
        }
        for &v in &self.edges[e] {
            self.rem[v as usize] += 1;
        }
    }
}

/// Exact `c₁(n, F)`: the largest minimum vertex degree of an `n`-vertex
/// r-graph in which some vertex (by symmetry, vertex 0) lies in no copy of
/// `F`.
pub fn max_delta1_no_cover(n: usize, motif: &Motif, cfg: &SearchConfig) -> Result<SearchResult> {
    let r = motif.uniformity();
    if n > MAX_COVER_VERTICES {
        return Err(Error::LimitExceeded {
            what: "max_delta1_no_cover",
            n,
            limit: MAX_COVER_VERTICES,
        });
    }
    if n < r {
        return Err(Error::TooFewVertices { r, n });
    }
    let start = Instant::now();
    let edges: Vec<Vec<Vertex>> = combinations(n as u32, r).collect();
    let rank = |e: &[Vertex]| edges.binary_search_by(|x| x.as_slice().cmp(e)).expect("edge of K_n");
    let copies = copies_through_zero(motif, n, &rank);
    let mut copies_by_edge = vec![Vec::new(); edges.len()];
    for &c in &copies {
        for (i, list) in copies_by_edge.iter_mut().enumerate() {
            if c >> i & 1 == 1 {
                list.push(c);
            }
        }
    }
    let big_e = edges.len();
    let p = prefix_bits(cfg, big_e);
    let clock = Clock::new(cfg.budget);
    let chunks: Vec<(Option<(u32, u64)>, u64)> = (0..1u64 << p)
        .into_par_iter()
        .map(|prefix| {
            let mut s = CoverSearch {
                edges: &edges,
                copies_by_edge: &copies_by_edge,
                clock: &clock,
                mask: 0,
                deg: vec![0; n],
                rem: vec![0; n],
                best: None,
                nodes: 0,
                leaves: 0,
            };
            for e in &edges[..big_e - p] {
                for &v in e {
                    s.rem[v as usize] += 1;
                }
            }
            // prefix bit j (most significant first) decides edge big_e - 1 - j
            for j in 0..p {
                let e = big_e - 1 - j;
                if prefix >> (p - 1 - j) & 1 == 1 && !s.include(e) {
                    return (None, 0);
                }
            }
            s.dfs(big_e - p);
            (s.best, s.leaves)
        })
        .collect();
    if clock.aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded);
    }
    let scanned = chunks.iter().map(|c| c.1).sum();
    let (value, mask) = chunks
        .iter()
        .filter_map(|c| c.0)
        .fold(None, |acc: Option<(u32, u64)>, (v, m)| match acc {
            Some((bv, bm)) if bv > v || (bv == v && bm <= m) => Some((bv, bm)),
            _ => Some((v, m)),
        })
        .expect("the empty graph is always feasible");
    let witness = mask_to_graph(r, n, &edges, mask);
    let delta = witness.min_i_degree(1)?.value;
    if delta != value as usize || covers(&witness, motif, 0)?.is_some() {
        return Err(Error::precondition(format!(
            "witness mask {mask} failed re-verification (min degree {delta}, expected {value})"
        )));
    }
    Ok(SearchResult {
        objective: Objective::MaxDelta1NoCover,
        params: SearchParams {
            n,
            motif: Some(motif.clone()),
            m: None,
        },
        value: value as usize,
        witness,
        witness_mask: mask,
        graphs_scanned: scanned,
        wall_time: start.elapsed(),
    })
}

struct GraphSearch<'a> {
    objective: Objective,
    pairs: &'a [[Vertex; 2]],
    index: &'a [usize],
    n: usize,
    m: usize,
    clock: &'a Clock,
    mask: u64,
    count: usize,
    adj: Vec<u64>,
    /// triangle-degree per vertex or book size per edge
    load: Vec<u32>,
    current: u32,
    best: Option<(u32, u64)>,
    nodes: u64,
    leaves: u64,
}

impl GraphSearch<'_> {
    fn bump(&mut self, slot: usize) {
        self.load[slot] += 1;
        self.current = self.current.max(self.load[slot]);
    }

    fn include(&mut self, e: usize) {
        let [a, b] = self.pairs[e];
        let (a, b) = (a as usize, b as usize);
        let mut common = self.adj[a] & self.adj[b];
        match self.objective {
            Objective::MinTmax => {
                let c = common.count_ones();
                if c > 0 {
                    self.load[a] += c;
                    self.load[b] += c;
                    self.current = self.current.max(self.load[a]).max(self.load[b]);
                    while common != 0 {
                        let x = common.trailing_zeros() as usize;
                        common &= common - 1;
                        self.bump(x);
                    }
                }
            }
            _ => {
                self.load[e] = common.count_ones();
                self.current = self.current.max(self.load[e]);
                while common != 0 {
                    let x = common.trailing_zeros() as usize;
                    common &= common - 1;
                    self.bump(self.index[a * self.n + x]);
                    self.bump(self.index[b * self.n + x]);
                }
            }
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        self.mask |= 1 << e;
        self.count += 1;
    }

    fn remove(&mut self, e: usize) {
        let [a, b] = self.pairs[e];
        let (a, b) = (a as usize, b as usize);
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
        self.mask &= !(1 << e);
        self.count -= 1;
        let mut common = self.adj[a] & self.adj[b];
        match self.objective {
            Objective::MinTmax => {
                let c = common.count_ones();
                self.load[a] -= c;
                self.load[b] -= c;
                while common != 0 {
                    let x = common.trailing_zeros() as usize;
                    common &= common - 1;
                    self.load[x] -= 1;
                }
            }
            _ => {
                self.load[e] = 0;
                while common != 0 {
                    let x = common.trailing_zeros() as usize;
                    common &= common - 1;
                    self.load[self.index[a * self.n + x]] -= 1;
                    self.load[self.index[b * self.n + x]] -= 1;
                }
            }
        }
    }

    fn dfs(&mut self, k: usize) {
        self.nodes += 1;
        if self.nodes % CHECK_EVERY == 0 && self.clock.expired() {
            return;
        }
        if self.best.is_some_and(|(b, _)| self.current >= b) {
            return;
        }
        if self.count == self.m {
            self.leaves += 1;
            self.best = Some((self.current, self.mask));
            return;
        }
        if self.m - self.count > k {
            return;
        }
        let e = k - 1;
        self.dfs(e);
        let saved = self.current;
        self.include(e);
        self.dfs(e);
        self.remove(e);
        self.current = saved;
    }
}

fn min_graph_objective(objective: Objective, n: usize, m: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    let what = match objective {
        Objective::MinTmax => "min_tmax",
        _ => "min_book",
    };
    if n > MAX_GRAPH_VERTICES {
        return Err(Error::LimitExceeded {
            what,
            n,
            limit: MAX_GRAPH_VERTICES,
        });
    }
    if n < 2 {
        return Err(Error::TooFewVertices { r: 2, n });
    }
    let big_e = n * (n - 1) / 2;
    if m > big_e {
        return Err(Error::precondition(format!("{what} needs m <= C(n, 2) = {big_e}, got m = {m}")));
    }
    let start = Instant::now();
    let edges: Vec<Vec<Vertex>> = combinations(n as u32, 2).collect();
    let pairs: Vec<[Vertex; 2]> = edges.iter().map(|e| [e[0], e[1]]).collect();
    let mut index = vec![usize::MAX; n * n];
    for (i, &[a, b]) in pairs.iter().enumerate() {
        index[a as usize * n + b as usize] = i;
        index[b as usize * n + a as usize] = i;
    }
    let p = prefix_bits(cfg, big_e);
    let clock = Clock::new(cfg.budget);
    let slots = if objective == Objective::MinTmax { n } else { big_e };
    let chunks: Vec<(Option<(u32, u64)>, u64)> = (0..1u64 << p)
        .into_par_iter()
        .map(|prefix| {
            if prefix.count_ones() as usize > m {
                return (None, 0);
            }
            let mut s = GraphSearch {
                objective,
                pairs: &pairs,
                index: &index,
                n,
                m,
                clock: &clock,
                mask: 0,
                count: 0,
                adj: vec![0; n],
                load: vec![0; slots],
                current: 0,
                best: None,
                nodes: 0,
                leaves: 0,
            };
            for j in 0..p {
                if prefix >> (p - 1 - j) & 1 == 1 {
                    s.include(big_e - 1 - j);
                }
            }
            s.dfs(big_e - p);
            (s.best, s.leaves)
        })
        .collect();
    if clock.aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded);
    }
    let scanned = chunks.iter().map(|c| c.1).sum();
    let (value, mask) = chunks
        .iter()
        .filter_map(|c| c.0)
        .fold(None, |acc: Option<(u32, u64)>, (v, mk)| match acc {
            Some((bv, bm)) if bv < v || (bv == v && bm <= mk) => Some((bv, bm)),
            _ => Some((v, mk)),
        })
        .expect("some m-edge graph exists");
    let witness = mask_to_graph(2, n, &edges, mask);
    let observed = match objective {
        Objective::MinTmax => t_max(&witness)?.0,
        _ => book_number(&witness)?.0,
    };
    if observed != value as usize || witness.edge_count() != m {
        return Err(Error::precondition(format!(
            "witness mask {mask} failed re-verification ({observed}, expected {value})"
        )));
    }
    Ok(SearchResult {
        objective,
        params: SearchParams {
            n,
            motif: None,
            m: Some(m),
        },
        value: value as usize,
        witness,
        witness_mask: mask,
        graphs_scanned: scanned,
        wall_time: start.elapsed(),
    })
}

/// Smallest maximum triangle-degree over all `n`-vertex graphs with `m`
/// edges.
pub fn min_tmax(n: usize, m: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    min_graph_objective(Objective::MinTmax, n, m, cfg)
}

/// Smallest book number over all `n`-vertex graphs with `m` edges.
pub fn min_book(n: usize, m: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    min_graph_objective(Objective::MinBook, n, m, cfg)
}
