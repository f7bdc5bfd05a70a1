//! Seeded property suites over random Carathéodory mixtures and random
//! coefficient sequences. Each check records how many samples violated it and
//! the largest excess over its tolerance-free bound.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::caratheodory::{lemma2_check, lemma3_invert, mixture_coeffs, AtomMixture, CaratheodoryCoeffs};
use crate::determinants::{
    functional_eval, h3_expand, hankel_lambda, triangle_rhs, DeterminantKind, DeterminantSpec, Functional,
};
use crate::error::Result;
use crate::rng::SplitMix64;
use crate::starlike::{catalog, lift_starlike, rotate, CatalogEntry, StarlikeCoeffs};

pub const DEFAULT_LEMMA_SAMPLES: usize = 10_000;
pub const DEFAULT_IDENTITY_SAMPLES: usize = 1_000;

const MAX_ATOMS: u64 = 6;
const LEMMA2_SIGMAS: [f64; 8] = [-2.0, -1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
const ROUND_TRIP_MAX_C1: f64 = 1.9;
const ROUND_TRIP_INTERIOR: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub label: String,
    /// Samples the check was applied to.
    pub samples: usize,
    pub violations: usize,
    /// Largest observed `lhs − rhs` (or error measure); compare with `tolerance`.
    pub max_excess: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, label: &str) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| c.label == label)
    }
}

struct Tally {
    label: &'static str,
    tolerance: f64,
    samples: usize,
    violations: usize,
    max_excess: f64,
}

impl Tally {
    fn new(label: &'static str, tolerance: f64) -> Self {
        Self { label, tolerance, samples: 0, violations: 0, max_excess: f64::NEG_INFINITY }
    }

    /// Records one sample whose excess should be at most `tolerance`.
    fn record(&mut self, excess: f64) {
        self.samples += 1;
        if excess.is_nan() || excess > self.tolerance {
            self.violations += 1;
        }
        if excess.is_nan() || excess > self.max_excess {
            self.max_excess = if excess.is_nan() { f64::INFINITY } else { excess };
        }
    }

    fn fail(&mut self) {
        self.record(f64::INFINITY);
    }

    fn finish(self) -> SuiteCheck {
        SuiteCheck {
            label: self.label.to_string(),
            samples: self.samples,
            violations: self.violations,
            max_excess: if self.samples == 0 { 0.0 } else { self.max_excess },
            tolerance: self.tolerance,
            pass: self.violations == 0,
        }
    }
}

fn random_mixture(rng: &mut SplitMix64) -> AtomMixture {
    let m = 1 + (rng.next_u64() % MAX_ATOMS) as usize;
    AtomMixture::random(rng, m)
}

fn unit(rng: &mut SplitMix64) -> Complex64 {
    Complex64::from_polar(1.0, rng.uniform(0.0, TAU))
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Coefficient bounds on P, the `c₂ − σc₁²/2` inequality, `|aₙ| ≤ n` for lifts, and the
/// `(c₁, x, z)` round trip.
pub fn lemma_suite(seed: u64, samples: usize) -> Result<SuiteReport> {
    let mut rng = SplitMix64::new(seed);
    let mut lemma1 = Tally::new("|c_k| <= 2 for k = 1..8", 1e-12);
    let mut lemma2 = Tally::new("|c2 - sigma c1^2/2| <= 2 max{1, |sigma-1|}", 1e-12);
    let mut growth = Tally::new("|a_n| <= n for n = 1..6", 1e-9);
    let mut unit_x = Tally::new("round trip: |x| <= 1 for |c1| <= 1.9", 1e-9);
    let mut round = Tally::new("round trip: (c2, c3) reproduced when |x| < 1 - 1e-6", 1e-10);

    for _ in 0..samples {
        let mix = random_mixture(&mut rng);
        let c = mixture_coeffs(&mix, 8);
        for ck in c.as_slice() {
            lemma1.record(ck.norm() - 2.0);
        }
        for sigma in LEMMA2_SIGMAS {
            let (lhs, bound) = lemma2_check(&c, sigma)?;
            lemma2.record(lhs - bound);
        }
        let f = lift_starlike(&c, 6)?;
        for (i, a) in f.coeffs().iter().enumerate() {
            growth.record(a.norm() - (i + 1) as f64);
        }
        if c.as_slice()[0].norm() <= ROUND_TRIP_MAX_C1 {
            round_trip(&c, &mut unit_x, &mut round);
        }
    }
    Ok(SuiteReport {
        suite: "lemmas".into(),
        seed,
        samples,
        checks: vec![lemma1.finish(), lemma2.finish(), growth.finish(), unit_x.finish(), round.finish()],
    })
}

fn round_trip(c: &CaratheodoryCoeffs, unit_x: &mut Tally, round: &mut Tally) {
    let inv = match lemma3_invert(c) {
        Ok(inv) => inv,
        Err(_) => return unit_x.fail(),
    };
    let rho = inv.x.norm();
    unit_x.record(rho - 1.0);
    if rho < ROUND_TRIP_INTERIOR {
        let back = inv.coeffs();
        let err = (1..=2).map(|i| (back.as_slice()[i] - c.as_slice()[i]).norm()).fold(0.0, f64::max);
        round.record(err);
    }
}

/// Random `a₂..a₅` with `|aₙ| ≤ n`.
fn random_coeffs(rng: &mut SplitMix64) -> Result<StarlikeCoeffs> {
    let mut a = vec![Complex64::new(1.0, 0.0)];
    for n in 2..=5 {
        let r = n as f64 * rng.next_f64();
        a.push(r * unit(rng));
    }
    StarlikeCoeffs::new(a, "random")
}

/// The third Hankel expansion, its triangle bound, and rotation invariance.
pub fn identity_suite(seed: u64, samples: usize) -> Result<SuiteReport> {
    let mut rng = SplitMix64::new(seed);
    let mut expansion = Tally::new("h3_expand = hankel_lambda(H, 1, 3) (relative)", 1e-12);
    let mut triangle = Tally::new("|h3_expand| <= triangle_rhs", 1e-12);
    let mut rotation = Tally::new("functional moduli invariant under rotation (relative)", 1e-12);
    let mut atom = Tally::new("single-atom lift equals rotated Koebe", 1e-12);
    let koebe = catalog(&CatalogEntry::Koebe, 5)?;

    for _ in 0..samples {
        let f = random_coeffs(&mut rng)?;
        let l: Vec<f64> = (0..3).map(|_| rng.uniform(0.1, 3.0)).collect();
        let direct = hankel_lambda(&f, &DeterminantSpec::new(DeterminantKind::H, 1, 3, l.clone())?)?;
        let expanded = h3_expand(&f, l[0], l[1], l[2])?;
        expansion.record(rel_err(direct, expanded));
        triangle.record(expanded.norm() - triangle_rhs(&f, l[0], l[1], l[2])?);

        let g = lift_starlike(&mixture_coeffs(&random_mixture(&mut rng), 4), 5)?;
        let eta = unit(&mut rng);
        let (gamma, alpha, beta) = (rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 4.0));
        let h = rotate(&g, eta)?;
        for which in [Functional::FeketeSzego(gamma), Functional::H2_2(alpha), Functional::B2_1(beta)] {
            let (p, q) = (functional_eval(&g, which)?.norm(), functional_eval(&h, which)?.norm());
            rotation.record((p - q).abs() / p.max(1.0));
        }
        let (p, q) = (h3_expand(&g, l[0], l[1], l[2])?.norm(), h3_expand(&h, l[0], l[1], l[2])?.norm());
        rotation.record((p - q).abs() / p.max(1.0));

        let theta = rng.uniform(0.0, TAU);
        let lifted = lift_starlike(&mixture_coeffs(&AtomMixture::single(theta), 4), 5)?;
        let expect = rotate(&koebe, Complex64::from_polar(1.0, theta))?;
        let err = lifted.coeffs().iter().zip(expect.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        atom.record(err);
    }
    Ok(SuiteReport {
        suite: "identities".into(),
        seed,
        samples,
        checks: vec![expansion.finish(), triangle.finish(), rotation.finish(), atom.finish()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_counts_nan_as_violation() {
        let mut t = Tally::new("x", 1e-12);
        t.record(0.0);
        t.record(f64::NAN);
        let c = t.finish();
        assert_eq!((c.samples, c.violations, c.pass), (2, 1, false));
        assert!(c.max_excess.is_infinite());
    }

    #[test]
    fn lemma_suite_small_run_passes() {
        let r = lemma_suite(7, 500).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
        assert!(r.checks.iter().all(|c| c.samples > 0), "{:#?}", r.checks);
    }

    #[test]
    fn identity_suite_small_run_passes() {
        let r = identity_suite(7, 200).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
    }

    #[test]
    fn suites_are_reproducible() {
        assert_eq!(lemma_suite(3, 100).unwrap(), lemma_suite(3, 100).unwrap());
        assert_eq!(identity_suite(3, 50).unwrap(), identity_suite(3, 50).unwrap());
    }

    #[test]
    fn perturbed_coefficients_are_caught() {
        // c2 pushed outside the Carathéodory disk must trip the checks
        let c = CaratheodoryCoeffs::from_real(&[1.0, 2.5, 0.0]);
        let (lhs, bound) = lemma2_check(&c, 0.0).unwrap();
        assert!(lhs > bound);
        let mut x = Tally::new("x", 1e-9);
        let mut r = Tally::new("r", 1e-10);
        round_trip(&c, &mut x, &mut r);
        assert!(!x.finish().pass);
    }
}
