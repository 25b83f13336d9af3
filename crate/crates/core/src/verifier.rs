//! Named, re-runnable claim suites over constructions, metrics, formulas and
//! the oracle.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use bigdecimal::BigDecimal;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::comb::binom64;
use crate::constructions::{
    blowup_sts, c5_lower, efg_graph, extract_link, k4_lower_linkgraph, k4minus_lower, k5_lower, lift_link,
    tau_lower_interval, tau_upper_interval, verify_manifest,
};
use crate::cover::{
    bipartite_edit_distance, book_number, covers, independence_number, t_max, triangle_degrees, uncovered_vertices,
    Motif, MotifKind,
};
use crate::error::{Error, Result};
use crate::formulas::{
    d_star, d_star_floor, extended_jensen_check, fixed, greedy_book, iterate_cover_bounds, parse_rational, rat,
    reference_curves, tau_upper, to_decimal, tripartite_bounds, KappaNormalisation, Rational,
};
use crate::graph::{RGraph, Vertex, VertexSet};
use crate::oracle::{max_delta1_no_cover, min_book, min_tmax, SearchConfig};
use crate::steiner::{sts, verify_sts};

pub const DEFAULT_SEED: u64 = 20_231_115;
pub const DEFAULT_TRIPARTITE_SAMPLES: usize = 10_000;
/// Cap on the budget of the best-effort oracle claims.
pub const BEST_EFFORT_CAP: Duration = Duration::from_secs(3600);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Suite {
    K4Minus,
    K4,
    C5,
    Kt,
    Tau,
    Tripartite,
    Book,
    Curves,
    All,
}

impl Suite {
    pub const ALL_SUITES: [Suite; 8] = [
        Suite::K4Minus,
        Suite::K4,
        Suite::C5,
        Suite::Kt,
        Suite::Tau,
        Suite::Tripartite,
        Suite::Book,
        Suite::Curves,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::K4Minus => "k4minus",
            Suite::K4 => "k4",
            Suite::C5 => "c5",
            Suite::Kt => "kt",
            Suite::Tau => "tau",
            Suite::Tripartite => "tripartite",
            Suite::Book => "book",
            Suite::Curves => "curves",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        let lower = s.to_ascii_lowercase().replace(['_', '-'], "");
        Suite::ALL_SUITES
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == lower)
            .ok_or_else(|| Error::precondition(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

/// Result of one claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub claim_id: String,
    pub suite: Suite,
    pub status: Status,
    pub observed: String,
    pub expected: String,
    pub tolerance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduce: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// budget for each oracle claim
    pub budget: Duration,
    pub seed: u64,
    pub tripartite_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            budget: Duration::from_secs(600),
            seed: DEFAULT_SEED,
            tripartite_samples: DEFAULT_TRIPARTITE_SAMPLES,
        }
    }
}

struct Check {
    status: Status,
    observed: String,
    expected: String,
    tolerance: String,
}

fn check(pass: bool, observed: impl ToString, expected: impl ToString) -> Check {
    Check {
        status: if pass { Status::Pass } else { Status::Fail },
        observed: observed.to_string(),
        expected: expected.to_string(),
        tolerance: "exact".into(),
    }
}

fn exact<T: PartialEq + fmt::Display>(observed: T, expected: T) -> Check {
    check(observed == expected, &observed, &expected)
}

impl Check {
    fn within(mut self, tolerance: &str) -> Check {
        self.tolerance = tolerance.into();
        self
    }
}

/// Accumulates sub-checks; the first failure is reported.
struct Tally {
    total: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { total: 0, failure: None }
    }

    fn note(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self, expected: impl ToString) -> Check {
        match self.failure {
            None => check(true, format!("{} of {} hold", self.total, self.total), expected),
            Some(f) => check(false, f, expected),
        }
    }
}

type ClaimFn = Box<dyn Fn(&VerifyConfig) -> Result<Check> + Send + Sync>;

struct Claim {
    id: String,
    suite: Suite,
    run: ClaimFn,
}

fn claim(suite: Suite, id: impl Into<String>, run: impl Fn(&VerifyConfig) -> Result<Check> + Send + Sync + 'static) -> Claim {
    Claim {
        id: id.into(),
        suite,
        run: Box::new(run),
    }
}

fn min_degree(g: &RGraph) -> Result<usize> {
    Ok(g.min_i_degree(1)?.value)
}

fn sandwich(n: u64) -> Result<(u64, u64)> {
    let half = (n - 1) / 2;
    let lower = half * d_star_floor(n);
    let scaled = d_star(n, 60)?.value * BigDecimal::from(half);
    let upper = scaled.with_scale_round(0, bigdecimal::RoundingMode::Floor).to_u64().expect("small");
    Ok((lower, upper))
}

fn sandwich_claim(n: u64, best_effort: bool) -> impl Fn(&VerifyConfig) -> Result<Check> + Send + Sync {
    move |cfg| {
        let (lower, upper) = sandwich(n)?;
        let budget = if best_effort { cfg.budget.min(BEST_EFFORT_CAP) } else { cfg.budget };
        let r = max_delta1_no_cover(n as usize, &Motif::k4_minus(), &SearchConfig::with_budget(budget))?;
        let d = d_star_floor(n) as usize;
        let construction = min_degree(&k4minus_lower(n as usize, d, 0)?.graph)?;
        let v = r.value as u64;
        Ok(check(
            lower <= v && v <= upper && r.value >= construction,
            format!("{} (witness mask {})", r.value, r.witness_mask),
            format!("[{lower}, {upper}]"),
        ))
    }
}

fn k4minus_claims() -> Vec<Claim> {
    let s = Suite::K4Minus;
    vec![
        claim(s, "k4m-lower-n9-min-degree", |_| {
            Ok(exact(min_degree(&k4minus_lower(9, 3, 0)?.graph)?, 12))
        }),
        claim(s, "k4m-lower-exact-odd-5-101", |_| {
            let results: Vec<Result<Option<String>>> = (5..=101usize)
                .step_by(2)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|n| {
                    let d = d_star_floor(n as u64) as usize;
                    let b = k4minus_lower(n, d, 0)?;
                    let delta = min_degree(&b.graph)?;
                    let want = (n - 1) / 2 * d;
                    if delta != want {
                        return Ok(Some(format!("n={n}: min degree {delta}, expected {want}")));
                    }
                    if n <= 21 && covers(&b.graph, &Motif::k4_minus(), (n - 1) as Vertex)?.is_some() {
                        return Ok(Some(format!("n={n}: v* is covered")));
                    }
                    Ok(None)
                })
                .collect();
            let mut t = Tally::new();
            for r in results {
                let failure = r?;
                t.note(failure.is_none(), || failure.unwrap_or_default());
            }
            Ok(t.finish("min degree (n-1)/2 * floor(d*) for odd n in 5..=101; v* uncovered for n <= 21"))
        }),
        claim(s, "k4m-link-bipartite", |_| {
            let mut t = Tally::new();
            for n in (5..=21).step_by(2) {
                let d = d_star_floor(n as u64) as usize;
                let b = k4minus_lower(n, d, 0)?;
                let link = extract_link(&b.graph, (n - 1) as Vertex)?.link;
                let dist = bipartite_edit_distance(&link, 24)?.inside_edges;
                t.note(dist == 0, || format!("n={n}: edit distance {dist}"));
            }
            Ok(t.finish("link of v* is bipartite for odd n <= 21"))
        }),
        claim(s, "k4m-oracle-n4", |cfg| {
            let r = max_delta1_no_cover(4, &Motif::k4_minus(), &SearchConfig::with_budget(cfg.budget))?;
            Ok(exact(r.value, 1))
        }),
        claim(s, "k4m-sandwich-n5", sandwich_claim(5, false)),
        claim(s, "k4m-sandwich-n7", sandwich_claim(7, true)),
    ]
}

/// A seeded G(n, p) with `n` in `4..=15`.
fn random_small_graph(seed: u64) -> RGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=15u32);
    let p: f64 = rng.gen_range(0.0..=1.0);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(p) {
                edges.push([x, y]);
            }
        }
    }
    RGraph::from_edges(2, n as usize, edges).expect("valid graph")
}

fn k4_claims() -> Vec<Claim> {
    let s = Suite::K4;
    vec![
        claim(s, "k4-link-n54", |_| {
            let g = k4_lower_linkgraph(54)?.graph;
            let p = g.degree_profile();
            let t = triangle_degrees(&g)?;
            let (lo, hi) = (t.iter().min().copied(), t.iter().max().copied());
            Ok(check(
                p.min_degree == 38 && p.max_degree == 38 && lo == Some(432) && hi == Some(432),
                format!("degrees {}..{}, triangle-degrees {:?}..{:?}", p.min_degree, p.max_degree, lo, hi),
                "38-regular, every triangle-degree 432",
            ))
        }),
        claim(s, "k4-lift-n54", |_| {
            let g = k4_lower_linkgraph(54)?.graph;
            let h = lift_link(&g)?.graph;
            let delta = min_degree(&h)?;
            let uncovered = covers(&h, &Motif::k4(), 54)?.is_none();
            let c = binom64(53, 2) as i64;
            let ratio = Rational::new(BigInt::from(delta), BigInt::from(c));
            let floor = rat(19, 27) - rat(2, 53);
            Ok(check(
                delta == 984 && delta as i64 == c - 394 && uncovered && ratio >= floor,
                format!(
                    "min degree {delta}, ratio {}, v* uncovered: {uncovered}",
                    fixed(&to_decimal(&ratio, 20), 6)
                ),
                "984 = C(53,2) - 394, ratio >= 19/27 - 2/53, v* uncovered",
            ))
        }),
        claim(s, "k4-lift-roundtrip-100", |cfg| {
            let outcomes: Vec<Result<Option<String>>> = (0..100u64)
                .into_par_iter()
                .map(|i| {
                    let g = random_small_graph(cfg.seed.wrapping_add(i));
                    let n = g.vertex_count();
                    let built = lift_link(&g)?;
                    let ex = extract_link(&built.graph, n as Vertex)?;
                    if ex.link != g || !ex.valid_lift {
                        return Ok(Some(format!("sample {i}: link does not round-trip")));
                    }
                    let report = verify_manifest(&built.graph, &built.manifest)?;
                    if let Some(c) = report.checks.iter().find(|c| !c.pass) {
                        return Ok(Some(format!("sample {i}: {} expected {} got {}", c.claim, c.expected, c.observed)));
                    }
                    if built.graph.degree(&VertexSet::single(n as Vertex))? != g.edge_count() {
                        return Ok(Some(format!("sample {i}: deg(v*) != e(G)")));
                    }
                    Ok(None)
                })
                .collect();
            let mut t = Tally::new();
            for o in outcomes {
                let failure = o?;
                t.note(failure.is_none(), || failure.unwrap_or_default());
            }
            Ok(t.finish("extract(lift(G)) = G and exact degree identities on 100 random graphs"))
        }),
        claim(s, "k4-oracle-n4", |cfg| {
            let r = max_delta1_no_cover(4, &Motif::k4(), &SearchConfig::with_budget(cfg.budget))?;
            Ok(exact(r.value, 2))
        }),
    ]
}

fn c5_claims() -> Vec<Claim> {
    let s = Suite::C5;
    let mut out = Vec::new();
    for (n, want) in [(3usize, 18usize), (4, 34), (5, 55)] {
        out.push(claim(s, format!("c5-lower-n{n}-min-degree"), move |_| {
            let delta = min_degree(&c5_lower(n)?.graph)?;
            let formula = rat(5, 9) * Rational::from_integer(BigInt::from(binom64(3 * n as u64, 2))) - rat(2 * n as i64, 3);
            Ok(check(
                delta == want && formula == Rational::from_integer(BigInt::from(delta)),
                delta,
                format!("{want} = (5/9)C({},2) - {}/3", 3 * n, 2 * n),
            ))
        }));
    }
    for n in [3usize, 4] {
        out.push(claim(s, format!("c5-lower-n{n}-uncovered"), move |_| {
            let g = c5_lower(n)?.graph;
            let covered = covers(&g, &Motif::c5(), (3 * n) as Vertex)?;
            Ok(check(covered.is_none(), format!("{covered:?}"), "None"))
        }));
    }
    out
}

/// Printed values of the recursive chain, by clique size.
pub const RECURSIVE_CHAIN_PRINTED: [(usize, &str); 4] = [(5, "0.8842"), (6, "0.947962"), (8, "0.98793"), (9, "0.99404")];

/// Start of the recursive chain: the K₄ density bound plus the printed
/// slack.
pub fn recursive_chain_start() -> BigDecimal {
    to_decimal(&rat(19, 27), 60) + BigDecimal::from_str("0.0000000074").expect("literal")
}

fn kt_claims() -> Vec<Claim> {
    let s = Suite::Kt;
    let mut out = vec![];
    for (t, alpha) in [(7usize, 4usize), (9, 4)] {
        out.push(claim(s, format!("sts{t}-alpha"), move |_| {
            let h = sts(t)?.triples;
            let valid = verify_sts(&h).valid;
            let a = independence_number(&h, 24)?.alpha;
            Ok(check(valid && a == alpha, format!("steiner: {valid}, alpha {a}"), format!("steiner, alpha {alpha}")))
        }));
    }
    out.push(claim(s, "sts9-blowup", |_| {
        let b = blowup_sts(&sts(9)?.triples, 1, "sts(9)")?;
        let delta = min_degree(&b.graph)?;
        let motif = Motif::new(MotifKind::CompleteTriple(6))?;
        let uncovered = covers(&b.graph, &motif, 9)?.is_none();
        Ok(check(
            delta == 32 && rat(8, 9) * rat(36, 1) == rat(delta as i64, 1) && uncovered,
            format!("min degree {delta}, v* K6-uncovered: {uncovered}"),
            "32 = (8/9)*36, v* K6-uncovered",
        ))
    }));
    out.push(claim(s, "fano-blowup", |_| {
        let b = blowup_sts(&sts(7)?.triples, 1, "fano")?;
        let delta = min_degree(&b.graph)?;
        Ok(check(
            delta == 18 && rat(6, 7) * rat(21, 1) == rat(delta as i64, 1),
            delta,
            "18 = (6/7)*21",
        ))
    }));
    out.push(claim(s, "k5-lower-n3", |_| {
        let g = k5_lower(3)?.graph;
        let delta = min_degree(&g)?;
        let motif = Motif::new(MotifKind::CompleteTriple(5))?;
        let rep = uncovered_vertices(&g, &motif)?;
        Ok(check(
            g.edge_count() == 18 && delta == 9 && rep.uncovered.len() == 6,
            format!("{} edges, min degree {delta}, {} uncovered", g.edge_count(), rep.uncovered.len()),
            "18 edges, min degree 9, all 6 uncovered",
        ))
    }));
    for (k, printed) in RECURSIVE_CHAIN_PRINTED {
        out.push(claim(s, format!("recursive-chain-k{k}"), move |_| {
            let chain = iterate_cover_bounds(&recursive_chain_start(), 5, 40)?;
            let value = &chain[k - 5];
            let decimals = printed.len() as i64 - 2;
            let rounded = fixed(value, decimals);
            Ok(check(rounded == printed, format!("{} (rounds to {rounded})", fixed(value, 12)), printed)
                .within(&format!("{decimals} printed digits")))
        }));
    }
    out
}

/// Values of ρ in the τ grid, per `r`: three on the lower interval and
/// three on the upper one.
fn tau_grid() -> Vec<(usize, Rational, bool)> {
    let mut g = Vec::new();
    for (rho, lower) in [((13, 24), true), ((7, 12), true), ((11, 18), true), ((11, 18), false), ((5, 8), false), ((2, 3), false)] {
        g.push((2, rat(rho.0, rho.1), lower));
    }
    for (rho, lower) in [((2, 3), true), ((7, 10), true), ((13, 18), true), ((13, 18), false), ((11, 15), false), ((3, 4), false)] {
        g.push((3, rat(rho.0, rho.1), lower));
    }
    g
}

fn tau_claims() -> Vec<Claim> {
    let s = Suite::Tau;
    vec![
        claim(s, "tau-lower-n40", |_| {
            let g = tau_lower_interval(40, &rat(11, 20), 2, 0)?.graph;
            let t = t_max(&g)?.0;
            let branch = tau_upper(&rat(11, 20))? * rat(1600, 2);
            Ok(check(
                Rational::from_integer(BigInt::from(t)) == branch && t == 60,
                t,
                format!("60 = tau(11/20) * 40^2 / 2 = {branch}"),
            ))
        }),
        claim(s, "tau-grid-slack-3n", |_| {
            let cases: Vec<(usize, Rational, bool, usize)> = tau_grid()
                .into_iter()
                .flat_map(|(r, rho, lower)| [24, 48, 72].map(|n| (r, rho.clone(), lower, n)))
                .collect();
            let results: Vec<Result<(Rational, String)>> = cases
                .into_par_iter()
                .map(|(r, rho, lower, n)| {
                    let g = if lower {
                        tau_lower_interval(n, &rho, r, 0)?.graph
                    } else {
                        tau_upper_interval(n, &rho, r, None, 0)?.graph
                    };
                    let t = Rational::from_integer(BigInt::from(t_max(&g)?.0));
                    let target = tau_upper(&rho)? * Rational::from_integer(BigInt::from(n * n)) / rat(2, 1);
                    let dev = (t - target).abs() / Rational::from_integer(BigInt::from(n));
                    let label = format!("r={r} rho={rho} n={n} {}", if lower { "lower" } else { "upper" });
                    Ok((dev, label))
                })
                .collect();
            let mut worst = (Rational::zero(), String::new());
            for r in results {
                let (dev, label) = r?;
                if dev > worst.0 || worst.1.is_empty() {
                    worst = (dev, label);
                }
            }
            Ok(check(
                worst.0 <= rat(3, 1),
                format!("worst |t_max - tau n^2/2| = {} n at {}", fixed(&to_decimal(&worst.0, 20), 4), worst.1),
                "<= 3n on 36 grid points",
            ))
        }),
        claim(s, "tau-oracle-micro", |cfg| {
            let c = SearchConfig::with_budget(cfg.budget);
            let got = [min_tmax(4, 5, &c)?.value, min_tmax(5, 6, &c)?.value, min_tmax(4, 6, &c)?.value];
            Ok(check(got == [2, 0, 3], format!("{got:?}"), "[2, 0, 3] for (n, m) = (4,5), (5,6), (4,6)"))
        }),
        claim(s, "tau-oracle-turan-boundary", |cfg| {
            let c = SearchConfig::with_budget(cfg.budget);
            let mut t = Tally::new();
            for n in 4..=7 {
                let m = n * n / 4;
                let at = min_tmax(n, m, &c)?.value;
                let above = min_tmax(n, m + 1, &c)?.value;
                t.note(at == 0 && above >= 1, || format!("n={n}: {at} at m={m}, {above} above"));
            }
            Ok(t.finish("0 at floor(n^2/4) edges and >= 1 above, 4 <= n <= 7"))
        }),
    ]
}

/// Random tripartite graph on parts `A, B, C` of the given sizes (in that
/// order). `densities = [α, β, γ]` are the edge probabilities between `B`
/// and `C`, `A` and `C`, and `A` and `B`.
pub fn random_tripartite(n: usize, sizes: [usize; 3], densities: [f64; 3], seed: u64) -> Result<RGraph> {
    if sizes.iter().sum::<usize>() != n {
        return Err(Error::precondition(format!("part sizes {sizes:?} do not sum to n = {n}")));
    }
    if densities.iter().any(|d| !(0.0..=1.0).contains(d)) {
        return Err(Error::precondition(format!("densities {densities:?} must lie in [0, 1]")));
    }
    let part = |v: usize| {
        if v < sizes[0] {
            0
        } else if v < sizes[0] + sizes[1] {
            1
        } else {
            2
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let (a, b) = (part(x), part(y));
            if a == b {
                continue;
            }
            let p = densities[3 - a - b];
            if rng.gen_bool(p) {
                edges.push([x as Vertex, y as Vertex]);
            }
        }
    }
    RGraph::from_edges(2, n, edges)
}

/// Which branch of the tripartite bound applies and whether it holds:
/// `8t ≥ 12e − 3n²` when `10e < 3n²`, else `9t ≥ 9e − 2n²`.
pub fn tripartite_bound_holds(n: usize, e: usize, t: usize) -> (bool, bool) {
    let (n2, e, t) = (n as i64 * n as i64, e as i64, t as i64);
    if 10 * e < 3 * n2 {
        (false, 8 * t >= 12 * e - 3 * n2)
    } else {
        (true, 9 * t >= 9 * e - 2 * n2)
    }
}

struct TripartiteSample {
    n: usize,
    sizes: [usize; 3],
    densities: [f64; 3],
    seed: u64,
}

fn tripartite_samples(seed: u64, count: usize) -> Vec<TripartiteSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(3..=30usize);
            let sizes = if i % 4 >= 2 {
                let base = n / 3;
                let extra = n - 3 * base;
                [base + usize::from(extra > 0), base + usize::from(extra > 1), base]
            } else {
                let a = rng.gen_range(0..=n);
                let b = rng.gen_range(0..=n - a);
                [a, b, n - a - b]
            };
            let densities = match i % 4 {
                0 => [rng.gen(), rng.gen(), rng.gen()],
                1 => [1.0, rng.gen(), rng.gen()],
                2 => [rng.gen_range(0.7..=1.0), rng.gen_range(0.7..=1.0), rng.gen_range(0.7..=1.0)],
                _ => [rng.gen_range(0.95..=1.0), rng.gen_range(0.95..=1.0), 1.0],
            };
            TripartiteSample {
                n,
                sizes,
                densities,
                seed: rng.gen(),
            }
        })
        .collect()
}

fn tripartite_claims() -> Vec<Claim> {
    let s = Suite::Tripartite;
    vec![
        claim(s, "tripartite-sweep", |cfg| {
            let samples = tripartite_samples(cfg.seed, cfg.tripartite_samples);
            let results: Vec<Result<(bool, bool, String)>> = samples
                .par_iter()
                .enumerate()
                .map(|(i, x)| {
                    let g = random_tripartite(x.n, x.sizes, x.densities, x.seed)?;
                    let t = t_max(&g)?.0;
                    let (dense, ok) = tripartite_bound_holds(x.n, g.edge_count(), t);
                    Ok((dense, ok, format!("sample {i}: n={} e={} t_max={t}", x.n, g.edge_count())))
                })
                .collect();
            let mut violations = 0;
            let mut dense = 0;
            let mut first = None;
            for r in results {
                let (d, ok, label) = r?;
                dense += usize::from(d);
                if !ok {
                    violations += 1;
                    first.get_or_insert(label);
                }
            }
            Ok(check(
                violations == 0,
                match first {
                    None => format!("0 violations in {} samples ({dense} in the dense regime)", cfg.tripartite_samples),
                    Some(f) => format!("{violations} violations, first {f}"),
                },
                "0 violations",
            ))
        }),
        claim(s, "random-tripartite-extremes", |cfg| {
            let full = random_tripartite(6, [2, 2, 2], [1.0; 3], cfg.seed)?;
            let k222 = RGraph::from_edges(
                2,
                6,
                crate::comb::combinations(6, 2).filter(|e| e[0] / 2 != e[1] / 2),
            )?;
            let empty = random_tripartite(6, [2, 2, 2], [0.0; 3], cfg.seed)?;
            Ok(check(
                full == k222 && empty.edge_count() == 0,
                format!("{} and {} edges", full.edge_count(), empty.edge_count()),
                "K_{2,2,2} and the empty graph",
            ))
        }),
        claim(s, "random-tripartite-concentration", |cfg| {
            let g = random_tripartite(30, [10, 10, 10], [1.0, 1.0, 0.5], cfg.seed)?;
            // every triangle uses exactly one A-B edge, and each A-B edge lies in 10 triangles
            let tri = crate::cover::triangle_count(&g)?;
            let ab = tri / 10;
            let sigma = (100.0f64 * 0.25).sqrt();
            let dev = (ab as f64 - 50.0).abs();
            Ok(check(
                tri % 10 == 0 && dev <= 5.0 * sigma,
                format!("{tri} triangles, {ab} A-B edges"),
                format!("A-B edge count within 5 sigma = {} of 50", 5.0 * sigma),
            )
            .within("5 sigma"))
        }),
        claim(s, "tripartite-bounds-examples", |_| {
            let mut t = Tally::new();
            let (f1, f2) = tripartite_bounds(&rat(1, 3), &rat(2, 3))?;
            t.note(f1 == rat(8, 27) && f2 == rat(2, 27) && &f1 - &f2 == rat(2, 9), || format!("(1/3, 2/3): {f1}, {f2}"));
            let s = rat(1, 2);
            let x = (rat(2, 1) - &s) / (rat(4, 1) - &s);
            let (f1, _) = tripartite_bounds(&x, &s)?;
            t.note(f1 == rat(1, 1) / (rat(4, 1) - &s), || format!("x*: {f1}"));
            let (f1, f2) = tripartite_bounds(&rat(1, 2), &Rational::zero())?;
            t.note(f1 == rat(1, 4) && f2.is_zero(), || format!("(1/2, 0): {f1}, {f2}"));
            Ok(t.finish("f1, f2 at (1/3, 2/3), (x*, 1/2) and (1/2, 0)"))
        }),
        claim(s, "jensen-sweep", |cfg| {
            let square = |t: f64| t * t;
            let hinge = |t: f64| (t - 1.0).max(0.0).powi(2);
            let fs: [&(dyn Fn(f64) -> f64 + Sync); 3] = [&square, &hinge, &f64::exp];
            let mut t = Tally::new();
            let c = extended_jensen_check(&[1.0; 4], 0.5, &square)?;
            t.note(c.holds && c.low_count == 0, || "constant sample".into());
            let c = extended_jensen_check(&[0.0, 2.0], 0.5, &square)?;
            t.note(c.holds && (c.lhs - 4.0).abs() < 1e-12 && (c.rhs - 2.5).abs() < 1e-12, || {
                format!("(0, 2): lhs {} rhs {}", c.lhs, c.rhs)
            });
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9);
            for i in 0..1000 {
                let len = rng.gen_range(1..=12);
                let a: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..4.0)).collect();
                let eta = rng.gen_range(0.01..1.0);
                let f = fs[i % 3];
                let c = extended_jensen_check(&a, eta, f)?;
                t.note(c.holds, || format!("instance {i}: lhs {} < rhs {}", c.lhs, c.rhs));
            }
            Ok(t.finish("inequality holds on both examples and 1000 random instances"))
        }),
    ]
}

fn book_claims() -> Vec<Claim> {
    let s = Suite::Book;
    vec![
        claim(s, "efg-3-5", |_| {
            let g = efg_graph(&[3, 5], 1)?.graph;
            let p = g.degree_profile();
            let bk = book_number(&g)?.0;
            Ok(check(
                p.is_regular() && p.min_degree == 8 && bk == 3,
                format!("degrees {}..{}, book number {bk}", p.min_degree, p.max_degree),
                "8-regular, book number 3",
            ))
        }),
        claim(s, "efg-3-t", |_| {
            let mut t = Tally::new();
            for k in 1..=4usize {
                let g = efg_graph(&[3], k)?.graph;
                let ktt = RGraph::from_edges(
                    2,
                    3 * k,
                    crate::comb::combinations(3 * k as u32, 2).filter(|e| e[0] as usize / k != e[1] as usize / k),
                )?;
                let bk = book_number(&g)?.0;
                t.note(g == ktt && bk == k, || format!("t={k}: book number {bk}, complete tripartite {}", g == ktt));
            }
            Ok(t.finish("K_{t,t,t} with book number t for t <= 4"))
        }),
        claim(s, "greedy-examples", |_| {
            let mut t = Tally::new();
            for (x, factors, b) in [((3, 4), vec![4u64], (1, 2)), ((5, 8), vec![3, 16], (7, 24)), ((2, 3), vec![3], (1, 3))] {
                let g = greedy_book(&rat(x.0, x.1))?;
                let ok = g.small_factors().as_deref() == Some(&factors[..]) && g.b == rat(b.0, b.1);
                t.note(ok, || format!("x={}/{}: {:?}, b = {}", x.0, x.1, g.factors, g.b));
            }
            Ok(t.finish("([4], 1/2), ([3, 16], 7/24), ([3], 1/3)"))
        }),
        claim(s, "book-oracle-micro", |cfg| {
            let c = SearchConfig::with_budget(cfg.budget);
            let got = [min_book(4, 5, &c)?.value, min_book(5, 6, &c)?.value];
            Ok(check(got == [2, 0], format!("{got:?}"), "[2, 0] for (n, m) = (4,5), (5,6)"))
        }),
        claim(s, "book-oracle-turan", |cfg| {
            let c = SearchConfig::with_budget(cfg.budget);
            let mut t = Tally::new();
            for n in 4..=7 {
                let m = n * n / 4 + 1;
                let v = min_book(n, m, &c)?.value;
                t.note(v >= 1, || format!("n={n}: {v} at m={m}"));
            }
            Ok(t.finish("book number >= 1 above floor(n^2/4) edges, 4 <= n <= 7"))
        }),
    ]
}

fn decimal_close(a: &BigDecimal, b: &BigDecimal, tol: &str) -> bool {
    (a - b).abs() <= BigDecimal::from_str(tol).expect("literal")
}

fn curves_claims() -> Vec<Claim> {
    let s = Suite::Curves;
    vec![
        claim(s, "curves-ordering-1000", |_| {
            let rows: Vec<Result<bool>> = (1..=1000i64)
                .into_par_iter()
                .map(|k| Ok(reference_curves(&(rat(1, 2) + rat(k, 6000)), KappaNormalisation::default(), 30)?.ordered()))
                .collect();
            let mut t = Tally::new();
            for (k, r) in rows.into_iter().enumerate() {
                let ok = r?;
                t.note(ok, || format!("ordering fails at rho = 1/2 + {}/6000", k + 1));
            }
            Ok(t.finish("kappa <= lambda <= tau' <= rho beta' on (1/2, 2/3]"))
        }),
        claim(s, "curves-equal-at-two-thirds", |_| {
            let p = reference_curves(&rat(2, 3), KappaNormalisation::default(), 40)?;
            let target = to_decimal(&rat(2, 9), 40);
            let chain = p.chain().ok_or_else(|| Error::precondition("a curve is undefined at 2/3"))?;
            let ok = chain.iter().all(|v| decimal_close(v, &target, "1e-9"));
            let shown: Vec<String> = chain.iter().map(|v| fixed(v, 12)).collect();
            Ok(check(ok, shown.join(", "), "2/9 for all four").within("1e-9"))
        }),
        claim(s, "curves-vanish-near-half", |_| {
            let rho = parse_rational("0.500001")?;
            let p = reference_curves(&rho, KappaNormalisation::default(), 40)?;
            let zero = BigDecimal::zero();
            let cells = [&p.kappa, &p.lambda, &p.tau_prime];
            let ok = cells.iter().all(|c| c.as_ref().is_some_and(|v| decimal_close(v, &zero, "1e-4")));
            let shown: Vec<String> = cells.iter().map(|c| c.as_ref().map(|v| fixed(v, 8)).unwrap_or_default()).collect();
            Ok(check(ok, shown.join(", "), "0 for kappa, lambda, tau'").within("1e-4"))
        }),
        claim(s, "tau-at-19-27", |_| Ok(exact(tau_upper(&rat(19, 27))?, rat(8, 27)))),
    ]
}

fn claims(suite: Suite) -> Vec<Claim> {
    match suite {
        Suite::K4Minus => k4minus_claims(),
        Suite::K4 => k4_claims(),
        Suite::C5 => c5_claims(),
        Suite::Kt => kt_claims(),
        Suite::Tau => tau_claims(),
        Suite::Tripartite => tripartite_claims(),
        Suite::Book => book_claims(),
        Suite::Curves => curves_claims(),
        Suite::All => Suite::ALL_SUITES.into_iter().flat_map(claims).collect(),
    }
}

/// Identifiers of the claims in a suite, in declaration order.
pub fn claim_ids(suite: Suite) -> Vec<String> {
    claims(suite).into_iter().map(|c| c.id).collect()
}

/// Runs every claim of `suite` (optionally only the one named `only`) in
/// parallel; outcomes are returned in declaration order.
pub fn run_claims(suite: Suite, cfg: &VerifyConfig, only: Option<&str>) -> Result<Vec<ClaimOutcome>> {
    let list: Vec<Claim> = claims(suite).into_iter().filter(|c| only.is_none_or(|o| o == c.id)).collect();
    if let Some(o) = only {
        if list.is_empty() {
            return Err(Error::precondition(format!("suite {suite} has no claim {o:?}")));
        }
    }
    Ok(list
        .par_iter()
        .map(|c| {
            let check = (c.run)(cfg).unwrap_or_else(|e| Check {
                status: if matches!(e, Error::BudgetExceeded) { Status::Skipped } else { Status::Fail },
                observed: format!("error: {e}"),
                expected: String::new(),
                tolerance: "exact".into(),
            });
            let reproduce = (check.status != Status::Pass).then(|| {
                format!(
                    "hypercover verify --suite {} --claim {} --seed {} --budget {}",
                    c.suite,
                    c.id,
                    cfg.seed,
                    cfg.budget.as_secs()
                )
            });
            ClaimOutcome {
                claim_id: c.id.clone(),
                suite: c.suite,
                status: check.status,
                observed: check.observed,
                expected: check.expected,
                tolerance: check.tolerance,
                reproduce,
            }
        })
        .collect())
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<ClaimOutcome> {
    run_claims(suite, cfg, None).expect("no claim filter")
}

/// Fixed-width text table of outcomes.
pub fn render_table(outcomes: &[ClaimOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.claim_id.len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:<7} {:<width$} observed | expected\n", "status", "claim");
    for o in outcomes {
        out.push_str(&format!("{:<7} {:<width$} {} | {}\n", o.status.to_string(), o.claim_id, o.observed, o.expected));
        if let Some(r) = &o.reproduce {
            out.push_str(&format!("{:<7} {:<width$} reproduce: {r}\n", "", ""));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL_SUITES.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("K4MINUS".parse::<Suite>().unwrap(), Suite::K4Minus);
        assert!("k7".parse::<Suite>().is_err());
    }

    #[test]
    fn claim_ids_are_unique() {
        let ids = claim_ids(Suite::All);
        let set: std::collections::BTreeSet<_> = ids.iter().collect();
        assert_eq!(ids.len(), set.len());
    }

    #[test]
    fn random_tripartite_rejects_bad_input() {
        assert!(random_tripartite(6, [2, 2, 1], [1.0; 3], 0).is_err());
        assert!(random_tripartite(6, [2, 2, 2], [1.5, 1.0, 1.0], 0).is_err());
        let a = random_tripartite(12, [4, 4, 4], [0.5; 3], 7).unwrap();
        assert_eq!(a, random_tripartite(12, [4, 4, 4], [0.5; 3], 7).unwrap());
    }

    #[test]
    fn bound_branches() {
        // K_{3,3,3}: e = 27 = n^2/3, t = 9 = e - 2n^2/9
        assert_eq!(tripartite_bound_holds(9, 27, 9), (true, true));
        assert_eq!(tripartite_bound_holds(9, 27, 8), (true, false));
        // bipartite K_{4,4}: no triangles needed
        assert_eq!(tripartite_bound_holds(8, 16, 0), (false, true));
    }

    #[test]
    fn single_claim_filter() {
        let out = run_claims(Suite::Curves, &VerifyConfig::default(), Some("tau-at-19-27")).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].status, Status::Pass);
        assert!(run_claims(Suite::Curves, &VerifyConfig::default(), Some("nope")).is_err());
    }
}
