//! Closed-form bounds: exact where rational, high precision where not.

use std::str::FromStr;

use bigdecimal::{BigDecimal, Context, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default number of significant digits for irrational values.
pub const DEFAULT_DIGITS: u64 = 50;

/// Greedy representations longer than this are reported as failures.
pub const GREEDY_FACTOR_CAP: usize = 64;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q`, an integer, or a terminating decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::precondition(format!("`{s}` is not a rational number (use p/q or a decimal)"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::precondition(format!("`{s}` has a zero denominator")));
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn context(digits: u64) -> Context {
    Context::default()
        .with_prec(digits.max(1))
        .expect("nonzero precision")
}

/// Decimal expansion of a rational to `digits` significant digits.
pub fn to_decimal(x: &Rational, digits: u64) -> BigDecimal {
    let ctx = context(digits + 10);
    let n = BigDecimal::from(x.numer().clone());
    let d = BigDecimal::from(x.denom().clone());
    (n * d.inverse_with_context(&ctx)).with_prec(digits)
}

fn sqrt(x: &BigDecimal, digits: u64) -> BigDecimal {
    x.sqrt_with_context(&context(digits))
        .expect("square root of a non-negative number")
}

/// Plain fixed-point rendering with exactly `decimals` fractional digits.
pub fn fixed(x: &BigDecimal, decimals: i64) -> String {
    x.with_scale_round(decimals, RoundingMode::HalfEven).to_plain_string()
}

/// `f_n(d) = (n² − 5n + 6 − 3d² + 5d) / 2`.
pub fn f_n_d(n: u64, d: u64) -> Result<Rational> {
    if n < 3 || d < 1 || d > n - 2 {
        return Err(Error::precondition(format!("f_n(d) needs n >= 3 and 1 <= d <= n - 2, got n = {n}, d = {d}")));
    }
    let (n, d) = (BigInt::from(n), BigInt::from(d));
    let num = &n * &n - 5 * &n + 6 - 3 * &d * &d + 5 * &d;
    Ok(Rational::new(num, BigInt::from(2)))
}

/// `C(n−2, 2) + d − d(d−1) − C(d, 2)`, the count `f_n(d)` stands for.
pub fn f_n_d_defining(n: u64, d: u64) -> Rational {
    let c2 = |m: i128| m * (m - 1) / 2;
    let (n, d) = (n as i128, d as i128);
    Rational::from_integer(BigInt::from(c2(n - 2) + d - d * (d - 1) - c2(d)))
}

/// The positive root of `(n−1)d/2 = f_n(d)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DStar {
    #[serde(serialize_with = "ser_decimal")]
    pub value: BigDecimal,
    pub floor: u64,
    /// `|(n−1)d⋆/2 − f_n(d⋆)|` at working precision
    #[serde(serialize_with = "ser_decimal")]
    pub residual: BigDecimal,
}

/// `d⋆(n) = (√(13n² − 72n + 108) − n + 6) / 6`.
pub fn d_star(n: u64, digits: u64) -> Result<DStar> {
    if n < 3 {
        return Err(Error::precondition(format!("d* needs n >= 3, got {n}")));
    }
    let work = digits + 10;
    let nb = BigDecimal::from(n);
    let disc = BigDecimal::from(13) * &nb * &nb - BigDecimal::from(72) * &nb + BigDecimal::from(108);
    let sixth = BigDecimal::from(6).inverse_with_context(&context(work));
    let value = ((sqrt(&disc, work) - &nb + BigDecimal::from(6)) * sixth).with_prec(work);
    let lhs = (&nb - BigDecimal::one()) * &value / BigDecimal::from(2);
    let rhs = (&nb * &nb - BigDecimal::from(5) * &nb + BigDecimal::from(6) - BigDecimal::from(3) * &value * &value
        + BigDecimal::from(5) * &value)
        / BigDecimal::from(2);
    let residual = (lhs - rhs).abs().with_prec(10);
    Ok(DStar {
        value: value.with_prec(digits),
        floor: d_star_floor(n),
        residual,
    })
}

/// Largest integer `k` with `3k² + (n−6)k − (n² − 5n + 6) ≤ 0`, i.e. `⌊d⋆(n)⌋`.
pub fn d_star_floor(n: u64) -> u64 {
    let n = n as i128;
    let q = |k: i128| 3 * k * k + (n - 6) * k - (n * n - 5 * n + 6);
    let approx = (((13 * n * n - 72 * n + 108) as f64).sqrt() - n as f64 + 6.0) / 6.0;
    let mut k = approx.floor().max(0.0) as i128;
    while q(k) > 0 {
        k -= 1;
    }
    while q(k + 1) <= 0 {
        k += 1;
    }
    k as u64
}

/// Branch of the piecewise-linear triangle-degree bound in use at some ρ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TauBranch {
    /// ρ ≤ 1/2
    Bipartite,
    Lower { r: u64 },
    Upper { r: u64 },
    /// ρ = 1
    Complete,
}

/// `r/(r+1) − 1/(3r(r+1))`, where the two branches for `r` meet.
pub fn tau_breakpoint(r: u64) -> Rational {
    let r = r as i64;
    rat(r, r + 1) - rat(1, 3 * r * (r + 1))
}

/// Which branch of the bound applies at ρ; at `ρ = r/(r+1)` the lower `r`
/// is used.
pub fn tau_branch(rho: &Rational) -> Result<TauBranch> {
    if rho.is_negative() || rho > &Rational::one() {
        return Err(Error::precondition(format!("rho must lie in [0, 1], got {}", format_rational(rho))));
    }
    if rho <= &rat(1, 2) {
        return Ok(TauBranch::Bipartite);
    }
    if rho.is_one() {
        return Ok(TauBranch::Complete);
    }
    let inv = (Rational::one() - rho).recip();
    let mut r = inv.floor().to_integer().to_u64().expect("rho < 1");
    if inv.is_integer() {
        r -= 1;
    }
    if rho <= &tau_breakpoint(r) {
        Ok(TauBranch::Lower { r })
    } else {
        Ok(TauBranch::Upper { r })
    }
}

/// The piecewise-linear upper bound on τ(ρ), exactly.
pub fn tau_upper(rho: &Rational) -> Result<Rational> {
    Ok(match tau_branch(rho)? {
        TauBranch::Bipartite => Rational::zero(),
        TauBranch::Complete => Rational::one(),
        TauBranch::Lower { r } => tau_lower_branch(r, rho),
        TauBranch::Upper { r } => tau_upper_branch(r, rho),
    })
}

/// `(r−1)(r−2)/r² + 3(r−1)/r·(ρ − (r−1)/r)`
pub fn tau_lower_branch(r: u64, rho: &Rational) -> Rational {
    let r = r as i64;
    rat((r - 1) * (r - 2), r * r) + rat(3 * (r - 1), r) * (rho - rat(r - 1, r))
}

/// `r(r−1)/(r+1)² − 3(r−1)/(r+1)·(r/(r+1) − ρ)`
pub fn tau_upper_branch(r: u64, rho: &Rational) -> Rational {
    let r = r as i64;
    rat(r * (r - 1), (r + 1) * (r + 1)) - rat(3 * (r - 1), r + 1) * (rat(r, r + 1) - rho)
}

/// Inverse of [`tau_upper`] on its strictly increasing part `(1/2, 1]`.
pub fn tau_upper_inverse(y: &Rational) -> Result<Rational> {
    if !y.is_positive() || y > &Rational::one() {
        return Err(Error::precondition(format!(
            "inverse is defined for 0 < y <= 1, got {}",
            format_rational(y)
        )));
    }
    if y.is_one() {
        return Ok(Rational::one());
    }
    let mut r: u64 = 2;
    loop {
        let b = tau_breakpoint(r);
        let top = rat(r as i64, r as i64 + 1);
        if y <= &tau_lower_branch(r, &b) {
            // lower branch has slope 3(r−1)/r
            let ri = r as i64;
            return Ok(rat(ri - 1, ri) + (y - rat((ri - 1) * (ri - 2), ri * ri)) / rat(3 * (ri - 1), ri));
        }
        if y <= &tau_upper_branch(r, &top) {
            let ri = r as i64;
            return Ok(top - (rat(ri * (ri - 1), (ri + 1) * (ri + 1)) - y) / rat(3 * (ri - 1), ri + 1));
        }
        r += 1;
    }
}

/// Which prefactor the Razborov curve κ uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaNormalisation {
    /// `1/18`, giving κ(2/3) = 2/9
    #[default]
    Eighteenth,
    /// the printed `1/6`, giving κ(2/3) = 2/3
    Sixth,
}

impl KappaNormalisation {
    fn divisor(self) -> u32 {
        match self {
            KappaNormalisation::Eighteenth => 18,
            KappaNormalisation::Sixth => 6,
        }
    }
}

/// `κ(ρ) = c·(1 − s)(2 + s)²` with `s = √(2(2 − 3ρ))`, for ρ ≤ 2/3.
pub fn kappa(rho: &Rational, norm: KappaNormalisation, digits: u64) -> Option<BigDecimal> {
    if rho > &rat(2, 3) || rho.is_negative() {
        return None;
    }
    let work = digits + 10;
    let inner = to_decimal(&(rat(4, 1) - rat(6, 1) * rho), work);
    let s = sqrt(&inner, work);
    let one = BigDecimal::one();
    let two = BigDecimal::from(2);
    let v = (&one - &s) * (&two + &s) * (&two + &s) * BigDecimal::from(norm.divisor()).inverse_with_context(&context(work));
    Some(v.with_prec(digits))
}

/// `λ(ρ) = 3ρ(1 − ρ)(2ρ − 1)`.
pub fn lambda(rho: &Rational) -> Rational {
    rat(3, 1) * rho * (Rational::one() - rho) * (rat(2, 1) * rho - Rational::one())
}

/// τ′: `(3/2)(ρ − 1/2)` up to 11/18, then `ρ − 4/9`, on `[1/2, 2/3]`.
pub fn tau_prime(rho: &Rational) -> Option<Rational> {
    if rho < &rat(1, 2) || rho > &rat(2, 3) {
        return None;
    }
    Some(if rho <= &rat(11, 18) {
        rat(3, 2) * (rho - rat(1, 2))
    } else {
        rho - rat(4, 9)
    })
}

/// A greedy representation `x = ∏ (rᵢ − 1)/rᵢ` and `b(x) = ∏ (rᵢ − 2)/rᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyBook {
    #[serde(serialize_with = "ser_bigints")]
    pub factors: Vec<BigInt>,
    #[serde(serialize_with = "ser_rational")]
    pub b: Rational,
}

impl GreedyBook {
    /// Factors as machine integers, when they fit.
    pub fn small_factors(&self) -> Option<Vec<u64>> {
        self.factors.iter().map(ToPrimitive::to_u64).collect()
    }
}

/// Greedy representation of a rational `1/2 < x < 1`.
pub fn greedy_book(x: &Rational) -> Result<GreedyBook> {
    if x <= &rat(1, 2) || x >= &Rational::one() {
        return Err(Error::Greedy(format!(
            "greedy representation needs 1/2 < x < 1, got {}",
            format_rational(x)
        )));
    }
    let mut residual = x.clone();
    let mut factors: Vec<BigInt> = Vec::new();
    let three = BigInt::from(3);
    while !residual.is_one() {
        if factors.len() == GREEDY_FACTOR_CAP {
            return Err(Error::Greedy(format!(
                "no finite greedy representation of {} within {GREEDY_FACTOR_CAP} factors",
                format_rational(x)
            )));
        }
        let r = (Rational::one() - &residual).recip().ceil().to_integer().max(three.clone());
        if let Some(prev) = factors.last() {
            let p1: BigInt = prev - 1;
            if &p1 * &p1 >= r {
                return Err(Error::Greedy(format!(
                    "greedy factors {prev} and {r} violate (r_(i-1) - 1)^2 < r_i"
                )));
            }
        }
        residual *= Rational::new(r.clone(), &r - 1);
        if residual > Rational::one() {
            return Err(Error::Greedy(format!("greedy step overshot 1 at factor {r}")));
        }
        factors.push(r);
    }
    let b = factors
        .iter()
        .fold(Rational::one(), |acc, r| acc * Rational::new(r - 2, r.clone()));
    Ok(GreedyBook { factors, b })
}

/// `ρ·β′(ρ)` for rational ρ in `(1/2, 3/4]`.
///
/// `b` is left-continuous at every rational, so the left-continuous
/// extension agrees with `b` on the rationals.
pub fn rho_beta(rho: &Rational) -> Option<Rational> {
    if rho <= &rat(1, 2) || rho > &rat(3, 4) {
        return None;
    }
    greedy_book(rho).ok().map(|g| rho * g.b)
}

/// One row of the reference-curve table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    #[serde(serialize_with = "ser_rational")]
    pub rho: Rational,
    #[serde(serialize_with = "ser_opt_decimal")]
    pub kappa: Option<BigDecimal>,
    #[serde(serialize_with = "ser_opt_decimal")]
    pub lambda: Option<BigDecimal>,
    #[serde(serialize_with = "ser_opt_decimal")]
    pub tau_prime: Option<BigDecimal>,
    #[serde(serialize_with = "ser_opt_decimal")]
    pub f_upper: Option<BigDecimal>,
    #[serde(serialize_with = "ser_opt_decimal")]
    pub rho_beta: Option<BigDecimal>,
}

impl CurvePoint {
    /// The four curves compared in the ordering chain, when all are defined.
    pub fn chain(&self) -> Option<[&BigDecimal; 4]> {
        Some([
            self.kappa.as_ref()?,
            self.lambda.as_ref()?,
            self.tau_prime.as_ref()?,
            self.rho_beta.as_ref()?,
        ])
    }

    /// `κ ≤ λ ≤ τ′ ≤ ρβ′` wherever all four are defined.
    pub fn ordered(&self) -> bool {
        self.chain().is_none_or(|c| c.windows(2).all(|w| w[0] <= w[1]))
    }

    /// CSV row with `decimals` fractional digits and empty undefined cells.
    pub fn csv_row(&self, decimals: i64) -> String {
        let cell = |v: &Option<BigDecimal>| v.as_ref().map(|x| fixed(x, decimals)).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            fixed(&to_decimal(&self.rho, 40), decimals),
            cell(&self.kappa),
            cell(&self.lambda),
            cell(&self.tau_prime),
            cell(&self.f_upper),
            cell(&self.rho_beta)
        )
    }
}

pub const CURVE_CSV_HEADER: &str = "rho,kappa,lambda,tau_prime,f_upper,rho_beta";

/// Evaluates κ, λ, τ′ on `[1/2, 2/3]`, the τ bound on `[1/2, 3/4]` and ρβ′ on
/// `(1/2, 3/4]`; other cells are `None`.
pub fn reference_curves(rho: &Rational, norm: KappaNormalisation, digits: u64) -> Result<CurvePoint> {
    if rho < &rat(1, 2) || rho > &rat(3, 4) {
        return Err(Error::precondition(format!(
            "reference curves are tabulated on [1/2, 3/4], got {}",
            format_rational(rho)
        )));
    }
    let in_low = rho <= &rat(2, 3);
    Ok(CurvePoint {
        rho: rho.clone(),
        kappa: kappa(rho, norm, digits),
        lambda: in_low.then(|| to_decimal(&lambda(rho), digits)),
        tau_prime: tau_prime(rho).map(|t| to_decimal(&t, digits)),
        f_upper: Some(to_decimal(&tau_upper(rho)?, digits)),
        rho_beta: if rho == &rat(1, 2) {
            Some(BigDecimal::zero())
        } else {
            rho_beta(rho).map(|v| to_decimal(&v, digits))
        },
    })
}

/// `steps + 1` evenly spaced rows from `from` to `to` inclusive, computed in
/// parallel and returned in order.
pub fn curve_table(
    from: &Rational,
    to: &Rational,
    steps: usize,
    norm: KappaNormalisation,
    digits: u64,
) -> Result<Vec<CurvePoint>> {
    if from < &rat(1, 2) || from >= to || to > &rat(3, 4) {
        return Err(Error::precondition(format!(
            "curves need 1/2 <= from < to <= 3/4, got from = {}, to = {}",
            format_rational(from),
            format_rational(to)
        )));
    }
    if steps == 0 {
        return Err(Error::precondition("curves need at least one step"));
    }
    let width = (to - from) / Rational::from_integer(BigInt::from(steps));
    (0..=steps)
        .into_par_iter()
        .map(|k| reference_curves(&(from + &width * Rational::from_integer(BigInt::from(k))), norm, digits))
        .collect()
}

/// `g(c) = (−1 + √(3 − 2c)) / (1 − c)`.
pub fn recursive_cover_bound(c: &BigDecimal, digits: u64) -> Result<BigDecimal> {
    if c <= &BigDecimal::zero() || c >= &BigDecimal::one() {
        return Err(Error::precondition(format!("recursive bound needs 0 < c < 1, got {c}")));
    }
    let work = digits + 10;
    let root = sqrt(&(BigDecimal::from(3) - BigDecimal::from(2) * c), work);
    let denom = (BigDecimal::one() - c).inverse_with_context(&context(work));
    Ok(((root - BigDecimal::one()) * denom).with_prec(digits))
}

/// `[g(c₀), g(g(c₀)), …]`, `k` values.
pub fn iterate_cover_bounds(c0: &BigDecimal, k: usize, digits: u64) -> Result<Vec<BigDecimal>> {
    let mut out = Vec::with_capacity(k);
    let mut c = c0.clone();
    for _ in 0..k {
        c = recursive_cover_bound(&c, digits + 10)?;
        out.push(c.with_prec(digits));
    }
    Ok(out)
}

/// `f₁(x, s) = x − x² + (s/4)(1 − x)²` and `f₂(x, s) = s·x(1 − x)/2`.
pub fn tripartite_bounds(x: &Rational, s: &Rational) -> Result<(Rational, Rational)> {
    let unit = |v: &Rational| !v.is_negative() && v <= &Rational::one();
    if !unit(x) || !unit(s) {
        return Err(Error::precondition("tripartite bounds need 0 <= x, s <= 1"));
    }
    let one = Rational::one();
    let f1 = x - x * x + s / rat(4, 1) * (&one - x) * (&one - x);
    let f2 = s * x * (&one - x) / rat(2, 1);
    Ok((f1, f2))
}

/// Outcome of the two-sided Jensen-type inequality on one sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JensenCheck {
    pub holds: bool,
    /// `B` covers every index, which only happens when the mean is ≤ 0
    pub vacuous: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub low_count: usize,
}

/// Checks `Σ f(aᵢ) ≥ |B|·f((1−η)ā) + (n−|B|)·f((1 + η|B|/(n−|B|))ā)` with
/// `B = {i : aᵢ ≤ (1−η)ā}`, for a convex `f`.
pub fn extended_jensen_check(a: &[f64], eta: f64, f: &dyn Fn(f64) -> f64) -> Result<JensenCheck> {
    if a.is_empty() || eta <= 0.0 || !eta.is_finite() {
        return Err(Error::precondition("extended Jensen check needs a nonempty sample and eta > 0"));
    }
    let n = a.len();
    let mean = a.iter().sum::<f64>() / n as f64;
    let cut = (1.0 - eta) * mean;
    let low = a.iter().filter(|&&x| x <= cut).count();
    let lhs: f64 = a.iter().map(|&x| f(x)).sum();
    if low == n {
        return Ok(JensenCheck {
            holds: true,
            vacuous: true,
            lhs,
            rhs: f64::NAN,
            low_count: low,
        });
    }
    let high = (n - low) as f64;
    let rhs = low as f64 * f(cut) + high * f((1.0 + eta * low as f64 / high) * mean);
    let tol = 1e-9 * rhs.abs().max(1.0);
    Ok(JensenCheck {
        holds: lhs >= rhs - tol,
        vacuous: false,
        lhs,
        rhs,
        low_count: low,
    })
}

pub(crate) fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

pub(crate) fn ser_decimal<S: serde::Serializer>(x: &BigDecimal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_plain_string())
}

fn ser_opt_decimal<S: serde::Serializer>(x: &Option<BigDecimal>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_plain_string()),
        None => s.serialize_none(),
    }
}

fn ser_bigints<S: serde::Serializer>(x: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

/// `⌊x⌋` of a non-negative rational as `u64`.
pub fn floor_u64(x: &Rational) -> u64 {
    x.numer().div_floor(x.denom()).to_u64().expect("value fits in u64")
}

/// `⌈x⌉` of a non-negative rational as `u64`.
pub fn ceil_u64(x: &Rational) -> u64 {
    x.numer().div_ceil(x.denom()).to_u64().expect("value fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(s: &str) -> BigDecimal {
        BigDecimal::from_str(s).unwrap()
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("11/18").unwrap(), rat(11, 18));
        assert_eq!(parse_rational("0.55").unwrap(), rat(11, 20));
        assert_eq!(parse_rational("2").unwrap(), rat(2, 1));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }

    #[test]
    fn f_n_d_examples() {
        assert_eq!(f_n_d(5, 1).unwrap(), rat(4, 1));
        assert_eq!(f_n_d(9, 3).unwrap(), rat(15, 1));
        assert_eq!(f_n_d(3, 1).unwrap(), rat(1, 1));
        assert!(f_n_d(5, 4).is_err());
        assert!(f_n_d(5, 0).is_err());
    }

    #[test]
    fn f_n_d_forms_agree() {
        for n in 3..=200u64 {
            for d in 1..=n - 2 {
                assert_eq!(f_n_d(n, d).unwrap(), f_n_d_defining(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn d_star_examples() {
        let d9 = d_star(9, 50).unwrap();
        assert_eq!(d9.floor, 3);
        assert!(d9.value.to_plain_string().starts_with("3.274917217635374848618342403"));
        assert!(d9.residual < dec("1e-40"));

        let d5 = d_star(5, 50).unwrap();
        assert_eq!(d5.floor, 1);
        assert!(d5.value.to_plain_string().starts_with("1.590667290886255194645274721"));

        let big = d_star(1_000_000, 50).unwrap();
        let ratio = &big.value / BigDecimal::from(1_000_000);
        let limit = (sqrt(&BigDecimal::from(13), 60) - BigDecimal::one()) / BigDecimal::from(6);
        assert!((&ratio - &limit).abs() < dec("1e-4"));
        assert!(fixed(&ratio, 10) == "0.4342578818");
    }

    #[test]
    fn d_star_floor_matches_closed_form() {
        for n in 3..2000u64 {
            let v = d_star(n, 30).unwrap();
            let fl = v.value.with_scale_round(0, RoundingMode::Floor);
            assert_eq!(fl, BigDecimal::from(v.floor), "n={n}");
        }
    }

    #[test]
    fn tau_upper_examples() {
        assert_eq!(tau_upper(&rat(19, 27)).unwrap(), rat(8, 27));
        assert_eq!(tau_upper(&rat(1, 2)).unwrap(), Rational::zero());
        assert_eq!(tau_upper(&rat(11, 18)).unwrap(), rat(1, 6));
        assert_eq!(tau_upper(&rat(2, 3)).unwrap(), rat(2, 9));
        assert_eq!(tau_upper(&rat(1, 1)).unwrap(), Rational::one());
        assert_eq!(tau_upper(&rat(1, 3)).unwrap(), Rational::zero());
        assert!(tau_upper(&rat(3, 2)).is_err());
        assert!(tau_upper(&rat(-1, 2)).is_err());
    }

    #[test]
    fn tau_upper_is_continuous_at_breakpoints() {
        for r in 2..=10u64 {
            let b = tau_breakpoint(r);
            assert_eq!(tau_lower_branch(r, &b), tau_upper_branch(r, &b), "r={r}");
            let top = rat(r as i64, r as i64 + 1);
            assert_eq!(tau_upper_branch(r, &top), tau_lower_branch(r + 1, &top), "r={r}");
        }
    }

    #[test]
    fn tau_upper_inverse_round_trips() {
        for k in 1..=600i64 {
            let rho = rat(1, 2) + rat(k, 1200);
            let y = tau_upper(&rho).unwrap();
            assert_eq!(tau_upper_inverse(&y).unwrap(), rho, "rho={rho}");
        }
        assert!(tau_upper_inverse(&Rational::zero()).is_err());
    }

    #[test]
    fn reference_curve_examples() {
        let p = reference_curves(&rat(1, 2), KappaNormalisation::default(), 50).unwrap();
        assert!(p.kappa.as_ref().unwrap().abs() < dec("1e-45"));
        assert_eq!(p.lambda.as_ref().unwrap(), &BigDecimal::zero());
        assert_eq!(p.tau_prime.as_ref().unwrap(), &BigDecimal::zero());
        assert_eq!(p.rho_beta.as_ref().unwrap(), &BigDecimal::zero());

        let p = reference_curves(&rat(2, 3), KappaNormalisation::default(), 50).unwrap();
        let two_ninths = to_decimal(&rat(2, 9), 50);
        for v in p.chain().unwrap() {
            assert!((v - &two_ninths).abs() < dec("1e-40"));
        }

        let p = reference_curves(&rat(3, 5), KappaNormalisation::default(), 50).unwrap();
        assert_eq!(fixed(p.lambda.as_ref().unwrap(), 6), "0.144000");
        assert_eq!(fixed(p.tau_prime.as_ref().unwrap(), 6), "0.150000");
        assert_eq!(fixed(p.kappa.as_ref().unwrap(), 12), "0.141500988177");

        let sixth = kappa(&rat(2, 3), KappaNormalisation::Sixth, 30).unwrap();
        assert!((sixth - to_decimal(&rat(2, 3), 30)).abs() < dec("1e-25"));
        assert!(reference_curves(&rat(4, 5), KappaNormalisation::default(), 50).is_err());
    }

    #[test]
    fn curves_are_ordered_on_a_grid() {
        for k in 1..=1000i64 {
            let rho = rat(1, 2) + rat(k, 6000);
            let p = reference_curves(&rho, KappaNormalisation::default(), 30).unwrap();
            assert!(p.chain().is_some());
            assert!(p.ordered(), "rho={rho}");
        }
    }

    #[test]
    fn greedy_examples() {
        let g = greedy_book(&rat(3, 4)).unwrap();
        assert_eq!((g.small_factors().unwrap(), g.b), (vec![4], rat(1, 2)));
        let g = greedy_book(&rat(5, 8)).unwrap();
        assert_eq!((g.small_factors().unwrap(), g.b), (vec![3, 16], rat(7, 24)));
        let g = greedy_book(&rat(2, 3)).unwrap();
        assert_eq!((g.small_factors().unwrap(), g.b), (vec![3], rat(1, 3)));
        assert!(greedy_book(&rat(1, 2)).is_err());
        assert!(greedy_book(&Rational::one()).is_err());
    }

    #[test]
    fn greedy_product_is_exact() {
        for k in 1..200i64 {
            let x = rat(1, 2) + rat(k, 400);
            let g = greedy_book(&x).unwrap();
            let prod = g
                .factors
                .iter()
                .fold(Rational::one(), |acc, r| acc * Rational::new(r - 1, r.clone()));
            assert_eq!(prod, x);
        }
    }

    #[test]
    fn recursive_chain_values() {
        let c0 = to_decimal(&rat(19, 27), 60) + dec("7.4e-9");
        let chain = iterate_cover_bounds(&c0, 5, 50).unwrap();
        let got: Vec<String> = chain.iter().map(|c| fixed(c, 12)).collect();
        assert_eq!(
            got,
            ["0.884181261642", "0.947960910113", "0.975252363960", "0.987923248339", "0.994033465561"]
        );
        assert!(recursive_cover_bound(&BigDecimal::one(), 50).is_err());
        assert!(recursive_cover_bound(&BigDecimal::zero(), 50).is_err());
    }

    #[test]
    fn tripartite_examples() {
        let (f1, f2) = tripartite_bounds(&rat(1, 3), &rat(2, 3)).unwrap();
        assert_eq!((f1.clone(), f2.clone()), (rat(8, 27), rat(2, 27)));
        assert_eq!(f1 - f2, rat(2, 9));
        let s = rat(1, 2);
        let x = (rat(2, 1) - &s) / (rat(4, 1) - &s);
        assert_eq!(tripartite_bounds(&x, &s).unwrap().0, rat(2, 7));
        assert_eq!(tripartite_bounds(&rat(1, 2), &Rational::zero()).unwrap(), (rat(1, 4), Rational::zero()));
        assert!(tripartite_bounds(&rat(3, 2), &Rational::zero()).is_err());
    }

    #[test]
    fn jensen_examples() {
        let sq = |t: f64| t * t;
        let c = extended_jensen_check(&[1.0; 4], 0.5, &sq).unwrap();
        assert!(c.holds && c.low_count == 0 && (c.lhs - c.rhs).abs() < 1e-12);
        let c = extended_jensen_check(&[0.0, 2.0], 0.5, &sq).unwrap();
        assert!(c.holds);
        assert_eq!((c.lhs, c.rhs), (4.0, 2.5));
        assert!(extended_jensen_check(&[0.0, 0.0], 0.5, &sq).unwrap().vacuous);
        assert!(extended_jensen_check(&[], 0.5, &sq).is_err());
    }
}
