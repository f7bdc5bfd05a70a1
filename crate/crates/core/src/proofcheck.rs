//! Grid replay of the scalar calculus behind the `B₂^β(1)` and `H₂^α(2)` bounds.
//!
//! Both bounds reduce to maximizing a polynomial `F(ρ)` in `ρ = |x|` for each
//! `c = c₁ ∈ [0, 2]`, then a one-variable polynomial `G(c)`. The profiles below
//! evaluate those polynomials exactly as displayed; [`verify_claims`] checks every
//! stated identity, monotonicity, and maximum on a grid and records the worst
//! deviation with its location.
//!
//! For `H₂^α(2)` the linear-in-`ρ` coefficient is `|10 − 9α|·c²(4 − c²)/24`,
//! which covers both the `α ≤ 10/9` form and the rewritten `α ≥ 10/9` form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default points per grid axis.
pub const DEFAULT_GRID: usize = 512;
/// Minimum points per grid axis.
pub const MIN_GRID: usize = 100;
/// Tolerance for exact algebraic identities and inequalities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance for extremum locations.
pub const LOCATION_TOL: f64 = 1e-8;
/// Tolerance for derivative vs centered finite difference.
pub const DERIVATIVE_TOL: f64 = 1e-6;
/// Step of the centered finite difference.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    T2,
    T3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thm2Profile {
    pub f: f64,
    pub fprime: f64,
    pub g1: f64,
    pub g2: f64,
    /// Only defined for `c ∈ [0, 1]`.
    pub g3: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thm3Profile {
    pub f: f64,
    pub fprime: f64,
    pub g: f64,
}

fn check_range(name: &str, v: f64, lo: f64, hi: f64) -> Result<()> {
    if v.is_finite() && v >= lo && v <= hi {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {v} outside [{lo}, {hi}]")))
    }
}

mod t2 {
    pub fn f(c: f64, rho: f64, beta: f64) -> f64 {
        let d = 4.0 - c * c;
        (2.0 - beta) * c.powi(3) / 4.0
            + beta * d / 6.0
            + beta * c * d * rho / 6.0
            + beta * (c - 2.0) * d * rho * rho / 12.0
    }

    pub fn fprime(c: f64, rho: f64, beta: f64) -> f64 {
        let d = 4.0 - c * c;
        beta * c * d / 6.0 + beta * (c - 2.0) * d * rho / 6.0
    }

    pub fn g1(c: f64, beta: f64) -> f64 {
        (2.0 - beta) * c.powi(3) / 4.0 + beta * (4.0 - c * c) / 6.0
    }

    pub fn g2(c: f64, beta: f64) -> f64 {
        (1.0 - beta) * c.powi(3) / 2.0 + beta * c
    }

    pub fn g3(c: f64, beta: f64) -> f64 {
        (3.0 - beta) * c.powi(3) / 6.0 + 2.0 * beta / 3.0
    }

    pub fn critical_rho(c: f64) -> f64 {
        c / (2.0 - c)
    }
}

mod t3 {
    /// Boundary between the two closed forms of `G`.
    pub const SPLIT: f64 = 10.0 / 9.0;

    pub fn f(c: f64, rho: f64, alpha: f64) -> f64 {
        let d = 4.0 - c * c;
        (9.0 * alpha - 8.0) * c.powi(4) / 16.0
            + c * d / 6.0
            + (10.0 - 9.0 * alpha).abs() * c * c * d * rho / 24.0
            + d * (c - 2.0) * ((4.0 - 3.0 * alpha) * c - 6.0 * alpha) * rho * rho / 48.0
    }

    pub fn fprime(c: f64, rho: f64, alpha: f64) -> f64 {
        let d = 4.0 - c * c;
        (10.0 - 9.0 * alpha).abs() * c * c * d / 24.0
            + d * (c - 2.0) * ((4.0 - 3.0 * alpha) * c - 6.0 * alpha) * rho / 24.0
    }

    /// Closed form of `G(c)` for `2/3 ≤ α ≤ 10/9`.
    pub fn g_low(c: f64, alpha: f64) -> f64 {
        (alpha - 1.0) * c.powi(4) - 2.0 * (alpha - 1.0) * c * c + alpha
    }

    /// Closed form of `G(c)` for `α ≥ 10/9`.
    pub fn g_high(c: f64, alpha: f64) -> f64 {
        (3.0 * alpha - 2.0) / 12.0 * c.powi(4) + (3.0 * alpha - 4.0) / 3.0 * c * c + alpha
    }

    pub fn g(c: f64, alpha: f64) -> f64 {
        if alpha < SPLIT {
            g_low(c, alpha)
        } else {
            g_high(c, alpha)
        }
    }
}

/// `F`, `F′`, `G₁ = F(0)`, `G₂ = F(1)`, `G₃ = F(c/(2 − c))` for `β ∈ [0, 1]`.
pub fn thm2_profile(c: f64, rho: f64, beta: f64) -> Result<Thm2Profile> {
    check_range("c", c, 0.0, 2.0)?;
    check_range("rho", rho, 0.0, 1.0)?;
    check_range("beta", beta, 0.0, 1.0)?;
    Ok(Thm2Profile {
        f: t2::f(c, rho, beta),
        fprime: t2::fprime(c, rho, beta),
        g1: t2::g1(c, beta),
        g2: t2::g2(c, beta),
        g3: (c <= 1.0).then(|| t2::g3(c, beta)),
    })
}

/// `F`, `F′`, and `G` (closed form selected by `α`).
pub fn thm3_profile(c: f64, rho: f64, alpha: f64) -> Result<Thm3Profile> {
    check_range("c", c, 0.0, 2.0)?;
    check_range("rho", rho, 0.0, 1.0)?;
    check_range("alpha", alpha, 0.0, f64::MAX)?;
    Ok(Thm3Profile { f: t3::f(c, rho, alpha), fprime: t3::fprime(c, rho, alpha), g: t3::g(c, alpha) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub label: String,
    pub grid: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Where the largest deviation occurred.
    pub location: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofReport {
    pub theorem: Theorem,
    pub claims: Vec<Claim>,
}

impl ProofReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn claim(&self, label: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.label == label)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}

/// Largest deviation over a parallel sweep of `outer`; the earliest maximum wins.
fn worst<F>(outer: &[f64], eval: F) -> (f64, Option<String>)
where
    F: Fn(f64) -> (f64, String) + Sync,
{
    let rows: Vec<(f64, String)> = outer.par_iter().map(|&p| eval(p)).collect();
    rows.into_iter()
        .fold((0.0, None), |acc, (dev, loc)| if dev > acc.0 || acc.1.is_none() { (dev, Some(loc)) } else { acc })
}

/// Largest `dev(x)` over `xs`, with the argument where it occurs.
fn worst_inner(xs: &[f64], dev: impl Fn(f64) -> f64) -> (f64, f64) {
    xs.iter().fold((f64::NEG_INFINITY, xs[0]), |acc, &x| {
        let d = dev(x);
        if d > acc.0 {
            (d, x)
        } else {
            acc
        }
    })
}

fn claim(label: &str, grid: usize, tolerance: f64, (dev, location): (f64, Option<String>)) -> Claim {
    Claim { label: label.to_string(), grid, max_deviation: dev, tolerance, pass: dev <= tolerance, location }
}

/// Root of `f` on `[lo, hi]` by bisection; `f(lo)` and `f(hi)` must differ in sign.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    0.5 * (lo + hi)
}

pub fn verify_claims(theorem: Theorem, grid: usize) -> Result<ProofReport> {
    if grid < MIN_GRID {
        return Err(Error::InvalidParameter(format!("grid must have at least {MIN_GRID} points, got {grid}")));
    }
    let claims = match theorem {
        Theorem::T2 => t2_claims(grid),
        Theorem::T3 => t3_claims(grid),
    };
    Ok(ProofReport { theorem, claims })
}

fn t2_claims(n: usize) -> Vec<Claim> {
    let betas = linspace(0.0, 1.0, n);
    let cs = linspace(0.0, 2.0, n);
    let c_low = linspace(0.0, 1.0, n);
    let rhos = linspace(0.0, 1.0, n);
    let mut out = Vec::new();

    out.push(claim(
        "F(0) = G1(c)",
        n,
        IDENTITY_TOL,
        worst(&betas, |b| {
            let (d, c) = worst_inner(&cs, |c| (t2::f(c, 0.0, b) - t2::g1(c, b)).abs());
            (d, format!("beta={b}, c={c}"))
        }),
    ));
    out.push(claim(
        "F(1) = G2(c) = (1-beta)c^3/2 + beta*c",
        n,
        IDENTITY_TOL,
        worst(&betas, |b| {
            let (d, c) = worst_inner(&cs, |c| (t2::f(c, 1.0, b) - t2::g2(c, b)).abs());
            (d, format!("beta={b}, c={c}"))
        }),
    ));
    out.push(claim(
        "F(c/(2-c)) = G3(c) = (3-beta)c^3/6 + 2beta/3 on [0,1]",
        n,
        IDENTITY_TOL,
        worst(&betas, |b| {
            let (d, c) = worst_inner(&c_low, |c| (t2::f(c, t2::critical_rho(c), b) - t2::g3(c, b)).abs());
            (d, format!("beta={b}, c={c}"))
        }),
    ));
    out.push(claim(
        "F'(rho) matches centered finite difference",
        n,
        DERIVATIVE_TOL,
        worst(&betas, |b| {
            let mut best = (0.0, String::new());
            for &c in &cs {
                let (d, r) = worst_inner(&rhos, |r| {
                    let fd = (t2::f(c, r + FD_STEP, b) - t2::f(c, r - FD_STEP, b)) / (2.0 * FD_STEP);
                    (fd - t2::fprime(c, r, b)).abs()
                });
                if d > best.0 || best.1.is_empty() {
                    best = (d, format!("beta={b}, c={c}, rho={r}"));
                }
            }
            best
        }),
    ));
    // F' is decreasing in rho; locate its zero independently and compare.
    let interior: Vec<f64> = c_low.iter().copied().filter(|&c| c > 0.0 && c < 1.0).collect();
    let positive_betas: Vec<f64> = betas.iter().copied().filter(|&b| b > 0.0).collect();
    out.push(claim(
        "critical point of F(rho) at rho = c/(2-c)",
        n,
        LOCATION_TOL,
        worst(&positive_betas, |b| {
            let (d, c) = worst_inner(&interior, |c| {
                let root = bisect(|r| t2::fprime(c, r, b), 0.0, 1.0);
                (root - t2::critical_rho(c)).abs()
            });
            (d, format!("beta={b}, c={c}"))
        }),
    ));
    out.push(claim(
        "G1(c) <= G2(c)",
        n,
        IDENTITY_TOL,
        worst(&betas, |b| {
            let (d, c) = worst_inner(&cs, |c| (t2::g1(c, b) - t2::g2(c, b)).max(0.0));
            (d, format!("beta={b}, c={c}"))
        }),
    ));
    out.push(claim(
        "G2(c) <= G2(2) = 4 - 2beta",
        n,
        IDENTITY_TOL,
        worst(&betas, |b| {
            let (d, c) = worst_inner(&cs, |c| (t2::g2(c, b) - (4.0 - 2.0 * b)).max(0.0));
            (d, format!("beta={b}, c={c}"))
        }),
    ));
    out.push(claim(
        "G3(c) <= G3(1) = (1+beta)/2 on [0,1]",
        n,
        IDENTITY_TOL,
        worst(&betas, |b| {
            let (d, c) = worst_inner(&c_low, |c| (t2::g3(c, b) - (1.0 + b) / 2.0).max(0.0));
            (d, format!("beta={b}, c={c}"))
        }),
    ));
    out.push(claim(
        "max of F(rho) attained at rho in {0, 1, c/(2-c)}",
        n,
        IDENTITY_TOL,
        worst(&betas, |b| {
            let mut best = (0.0, String::new());
            for &c in &cs {
                let mut cand = t2::f(c, 0.0, b).max(t2::f(c, 1.0, b));
                if c <= 1.0 {
                    cand = cand.max(t2::f(c, t2::critical_rho(c), b));
                }
                let (d, r) = worst_inner(&rhos, |r| (t2::f(c, r, b) - cand).max(0.0));
                if d > best.0 || best.1.is_empty() {
                    best = (d, format!("beta={b}, c={c}, rho={r}"));
                }
            }
            best
        }),
    ));
    out.push(claim(
        "max of F over (c, rho) <= 4 - 2beta",
        n,
        IDENTITY_TOL,
        worst(&betas, |b| {
            let mut best = (0.0, String::new());
            for &c in &cs {
                let (d, r) = worst_inner(&rhos, |r| (t2::f(c, r, b) - (4.0 - 2.0 * b)).max(0.0));
                if d > best.0 || best.1.is_empty() {
                    best = (d, format!("beta={b}, c={c}, rho={r}"));
                }
            }
            best
        }),
    ));
    out
}

fn t3_claims(n: usize) -> Vec<Claim> {
    let all = linspace(2.0 / 3.0, 2.0, n);
    let increasing = linspace(2.0 / 3.0, t3::SPLIT, n);
    let to_one = linspace(2.0 / 3.0, 1.0, n);
    let one_to_split = linspace(1.0, t3::SPLIT, n);
    let high = linspace(t3::SPLIT, 2.0, n);
    let cs = linspace(0.0, 2.0, n);
    let rhos = linspace(0.0, 1.0, n);
    let mut out = Vec::new();

    let over_c_rho = |alphas: &[f64], dev: &(dyn Fn(f64, f64, f64) -> f64 + Sync)| {
        worst(alphas, |a| {
            let mut best = (0.0, String::new());
            for &c in &cs {
                let (d, r) = worst_inner(&rhos, |r| dev(c, r, a));
                if d > best.0 || best.1.is_empty() {
                    best = (d, format!("alpha={a}, c={c}, rho={r}"));
                }
            }
            best
        })
    };

    out.push(claim(
        "F'(rho) matches centered finite difference",
        n,
        DERIVATIVE_TOL,
        over_c_rho(&all, &|c, r, a| {
            let fd = (t3::f(c, r + FD_STEP, a) - t3::f(c, r - FD_STEP, a)) / (2.0 * FD_STEP);
            (fd - t3::fprime(c, r, a)).abs()
        }),
    ));
    out.push(claim(
        "F'(rho) >= 0 for 2/3 <= alpha <= 10/9",
        n,
        IDENTITY_TOL,
        over_c_rho(&increasing, &|c, r, a| (-t3::fprime(c, r, a)).max(0.0)),
    ));
    out.push(claim(
        "F(rho) <= F(1)",
        n,
        IDENTITY_TOL,
        over_c_rho(&all, &|c, r, a| (t3::f(c, r, a) - t3::f(c, 1.0, a)).max(0.0)),
    ));
    out.push(claim(
        "F(1) = (alpha-1)c^4 - 2(alpha-1)c^2 + alpha for 2/3 <= alpha <= 10/9",
        n,
        IDENTITY_TOL,
        worst(&increasing, |a| {
            let (d, c) = worst_inner(&cs, |c| (t3::f(c, 1.0, a) - t3::g_low(c, a)).abs());
            (d, format!("alpha={a}, c={c}"))
        }),
    ));
    out.push(claim(
        "F(1) = (3alpha-2)c^4/12 + (3alpha-4)c^2/3 + alpha for alpha >= 10/9",
        n,
        IDENTITY_TOL,
        worst(&high, |a| {
            let (d, c) = worst_inner(&cs, |c| (t3::f(c, 1.0, a) - t3::g_high(c, a)).abs());
            (d, format!("alpha={a}, c={c}"))
        }),
    ));
    out.push(claim(
        "max of G on [0,2] at c = 1 with G(1) = 1 for 2/3 <= alpha <= 1",
        n,
        IDENTITY_TOL,
        worst(&to_one, |a| {
            let (d, c) = worst_inner(&cs, |c| (t3::g(c, a) - t3::g(1.0, a)).max(0.0));
            (d.max((t3::g(1.0, a) - 1.0).abs()), format!("alpha={a}, c={c}"))
        }),
    ));
    out.push(claim(
        "max of G on [0,2] at c = 2 with G(2) = 9alpha - 8 for 1 <= alpha <= 10/9",
        n,
        IDENTITY_TOL,
        worst(&one_to_split, |a| {
            let (d, c) = worst_inner(&cs, |c| (t3::g(c, a) - t3::g(2.0, a)).max(0.0));
            (d.max((t3::g(2.0, a) - (9.0 * a - 8.0)).abs()), format!("alpha={a}, c={c}"))
        }),
    ));
    out.push(claim(
        "max of G on [0,2] at c = 2 with G(2) = 9alpha - 8 for alpha >= 10/9",
        n,
        IDENTITY_TOL,
        worst(&high, |a| {
            let (d, c) = worst_inner(&cs, |c| (t3::g(c, a) - t3::g(2.0, a)).max(0.0));
            (d.max((t3::g(2.0, a) - (9.0 * a - 8.0)).abs()), format!("alpha={a}, c={c}"))
        }),
    ));
    out
}
