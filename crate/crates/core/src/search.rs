//! Numerical suprema of the coefficient functionals over the starlike class.
//!
//! Two backends feed the same evaluation pipeline
//! (Carathéodory coefficients → starlike lift → functional):
//!
//! * [`sup_over_atoms`] optimizes over `m`-atom mixtures. Each restart draws a
//!   start from `SplitMix64(seed + r)` and runs cyclic golden-section ascent
//!   over `m` angles and `m` logits (weights are their normalized exponentials).
//! * [`sup_over_lemma3`] scans a dense grid over `(c₁, |x|, arg x, arg z)` with
//!   `|z| = 1`, then polishes the best cell by the same ascent. Only
//!   functionals of `a₂..a₄` are representable this way.
//!
//! Restarts run in parallel but are merged by a fixed total order (value, then
//! rounded parameter vector, then restart index), so results do not depend on
//! the thread count.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{thm1_bound, thm2_bound, thm3_bound, thm4_bound, BoundValue};
use crate::caratheodory::{lemma3_coeffs, mixture_coeffs, normalize, AtomMixture, Lemma3Params};
use crate::determinants::{functional_eval, hankel_lambda, DeterminantKind, DeterminantSpec, Functional};
use crate::error::{Error, Result};
use crate::optimize::{coordinate_ascent, CoordinateBox};
use crate::rng::SplitMix64;
use crate::starlike::{lift_starlike, StarlikeCoeffs};

/// A sweep entry is `attained` when the observed supremum is within this of the bound.
pub const ATTAINED_GAP: f64 = 1e-3;

/// Search radius for a weight logit per golden-section line search.
const LOGIT_RADIUS: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Objective {
    FeketeSzego { gamma: f64 },
    H2_2 { alpha: f64 },
    B2_1 { beta: f64 },
    H3 { lambdas: [f64; 3] },
}

impl Objective {
    pub fn from_functional(f: Functional) -> Self {
        match f {
            Functional::FeketeSzego(gamma) => Objective::FeketeSzego { gamma },
            Functional::H2_2(alpha) => Objective::H2_2 { alpha },
            Functional::B2_1(beta) => Objective::B2_1 { beta },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Objective::FeketeSzego { .. } => "fekete_szego",
            Objective::H2_2 { .. } => "h2_2",
            Objective::B2_1 { .. } => "b2_1",
            Objective::H3 { .. } => "h3",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Objective::FeketeSzego { gamma } => vec![gamma],
            Objective::H2_2 { alpha } => vec![alpha],
            Objective::B2_1 { beta } => vec![beta],
            Objective::H3 { lambdas } => lambdas.to_vec(),
        }
    }

    /// Builds an objective from its name and parameter list.
    pub fn parse(name: &str, params: &[f64]) -> Result<Self> {
        let one = || match params {
            [p] => Ok(*p),
            _ => Err(Error::InvalidParameter(format!("{name} takes exactly one parameter, got {}", params.len()))),
        };
        let obj = match name {
            "fekete_szego" => Objective::FeketeSzego { gamma: one()? },
            "h2_2" => Objective::H2_2 { alpha: one()? },
            "b2_1" => Objective::B2_1 { beta: one()? },
            "h3" => match params {
                [a, b, c] => Objective::H3 { lambdas: [*a, *b, *c] },
                _ => return Err(Error::InvalidParameter(format!("h3 takes three lambdas, got {}", params.len()))),
            },
            _ => return Err(Error::InvalidParameter(format!("unknown functional `{name}`"))),
        };
        obj.validate()?;
        Ok(obj)
    }

    /// The bound this functional is compared against; also checks the hypotheses.
    pub fn bound(&self) -> Result<BoundValue> {
        match *self {
            Objective::FeketeSzego { gamma } => thm1_bound(gamma),
            Objective::H2_2 { alpha } => thm3_bound(alpha),
            Objective::B2_1 { beta } => thm2_bound(beta),
            Objective::H3 { lambdas: [a, b, c] } => thm4_bound(a, b, c),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.bound().map(|_| ())
    }

    /// Highest coefficient index the functional reads.
    pub fn order(&self) -> usize {
        match self {
            Objective::H3 { .. } => 5,
            _ => 4,
        }
    }

    pub fn evaluate(&self, f: &StarlikeCoeffs) -> Result<Complex64> {
        match *self {
            Objective::FeketeSzego { gamma } => functional_eval(f, Functional::FeketeSzego(gamma)),
            Objective::H2_2 { alpha } => functional_eval(f, Functional::H2_2(alpha)),
            Objective::B2_1 { beta } => functional_eval(f, Functional::B2_1(beta)),
            Objective::H3 { lambdas } => {
                hankel_lambda(f, &DeterminantSpec::new(DeterminantKind::H, 1, 3, lambdas.to_vec())?)
            }
        }
    }

    /// Value as a function of `a₂..a₄` only, or `None` when `a₅` is needed.
    fn low_order_value(&self, a2: Complex64, a3: Complex64, a4: Complex64) -> Option<Complex64> {
        match *self {
            Objective::FeketeSzego { gamma } => Some(a3 - gamma * a2 * a2),
            Objective::H2_2 { alpha } => Some(a2 * a4 - alpha * a3 * a3),
            Objective::B2_1 { beta } => Some(a2 * a3 - beta * a4),
            Objective::H3 { .. } => None,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params().iter().map(|v| v.to_string()).collect();
        write!(f, "{}({})", self.name(), p.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub atoms: usize,
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
    /// Points per axis of the `sup_over_lemma3` scan.
    pub lemma3_grid: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { atoms: 4, restarts: 64, max_iters: 400, tol: 1e-10, seed: 42, lemma3_grid: 65 }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.atoms == 0 || self.restarts == 0 || self.max_iters == 0 || self.lemma3_grid < 2 {
            return Err(Error::InvalidParameter(
                "atoms, restarts, max_iters must be positive and lemma3_grid at least 2".into(),
            ));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Atoms,
    Lemma3,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Atoms => "atoms",
            Backend::Lemma3 => "lemma3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Atoms(AtomMixture),
    Lemma3(Lemma3Params),
}

impl Witness {
    /// The starlike function the witness represents, through `a_order`.
    pub fn function(&self, order: usize) -> Result<StarlikeCoeffs> {
        let mut f = match self {
            Witness::Atoms(mix) => lift_starlike(&mixture_coeffs(mix, order.saturating_sub(1).max(1)), order)?,
            Witness::Lemma3(p) => {
                if order > 4 {
                    return Err(Error::NotLemma3Representable(format!("a_{order} needs c_{}", order - 1)));
                }
                lift_starlike(&lemma3_coeffs(p)?, order)?
            }
        };
        f.provenance = match self {
            Witness::Atoms(m) => format!("atoms(m={})", m.len()),
            Witness::Lemma3(_) => "lemma3".into(),
        };
        Ok(f)
    }

    /// `|objective|` through the full pipeline.
    pub fn value(&self, objective: &Objective) -> Result<f64> {
        Ok(objective.evaluate(&self.function(objective.order())?)?.norm())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub objective: Objective,
    pub backend: Backend,
    pub value: f64,
    pub witness: Witness,
    pub bound: BoundValue,
    pub gap: f64,
    pub seed: u64,
    pub restarts: usize,
    pub iterations: usize,
    pub atoms: Option<usize>,
}

impl SearchResult {
    pub fn attained(&self) -> bool {
        self.gap <= ATTAINED_GAP
    }

    /// True when the observed value beats the bound's alternative (piecewise) form.
    pub fn exceeds_alt_bound(&self) -> bool {
        self.bound.alt_value.is_some_and(|alt| self.value > alt + 1e-9)
    }
}

fn mixture_from_params(x: &[f64], m: usize) -> Result<AtomMixture> {
    let (angles, logits) = x.split_at(m);
    let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
    AtomMixture::new(normalize(&raw), angles.to_vec())
}

/// Rounds to a `1e-12` lattice for tie-breaking.
fn lattice(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| (v * 1e12).round()).collect()
}

struct Candidate {
    value: f64,
    key: Vec<f64>,
    index: usize,
}

/// Higher value first, then lexicographically smaller key, then lower index.
fn better(a: &Candidate, b: &Candidate) -> bool {
    match a.value.total_cmp(&b.value) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match a.key.iter().zip(&b.key).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()) {
            Some(o) => o == Ordering::Less,
            None => a.index < b.index,
        },
    }
}

/// Maximizes `|objective|` over `cfg.atoms`-atom mixtures.
pub fn sup_over_atoms(objective: &Objective, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let bound = objective.bound()?;
    let m = cfg.atoms;
    let order = objective.order();
    let eval = |x: &[f64]| -> f64 {
        mixture_from_params(x, m).and_then(|mix| Witness::Atoms(mix).value(objective)).unwrap_or(f64::NEG_INFINITY)
    };
    let mut boxes = vec![CoordinateBox::free(PI); m];
    boxes.extend(std::iter::repeat_n(CoordinateBox::free(LOGIT_RADIUS), m));

    let runs: Vec<(Candidate, Witness, usize)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| -> Result<(Candidate, Witness, usize)> {
            let mut rng = SplitMix64::new(cfg.seed.wrapping_add(r as u64));
            let mut start: Vec<f64> = (0..m).map(|_| rng.uniform(0.0, TAU)).collect();
            start.extend((0..m).map(|_| rng.exponential().ln()));
            let run = coordinate_ascent(eval, start, &boxes, cfg.max_iters, cfg.tol);
            let mix = mixture_from_params(&run.x, m)?;
            let mut key = mix.angles().to_vec();
            key.extend_from_slice(mix.weights());
            let witness = Witness::Atoms(mix);
            let value = witness.value(objective)?;
            Ok((Candidate { value, key: lattice(&key), index: r }, witness, run.cycles))
        })
        .collect::<Result<_>>()?;

    let iterations = runs.iter().map(|r| r.2).sum();
    let (best, witness, _) =
        runs.into_iter().reduce(|a, b| if better(&b.0, &a.0) { b } else { a }).expect("at least one restart");
    debug_assert!(order <= 5);
    Ok(SearchResult {
        objective: *objective,
        backend: Backend::Atoms,
        value: best.value,
        gap: bound.value - best.value,
        witness,
        bound,
        seed: cfg.seed,
        restarts: cfg.restarts,
        iterations,
        atoms: Some(m),
    })
}

/// Allocation-free `|objective|` at `(c₁, x, z)`, used for the grid scan.
fn lemma3_fast(objective: &Objective, c1: f64, x: Complex64, z: Complex64) -> f64 {
    let d = 4.0 - c1 * c1;
    let c2 = (x * d + c1 * c1) / 2.0;
    let c3 = (2.0 * x * c1 * d - x * x * c1 * d + 2.0 * z * (1.0 - x.norm_sqr()) * d + c1.powi(3)) / 4.0;
    let a2 = Complex64::new(c1, 0.0);
    let a3 = (c2 + a2 * c1) / 2.0;
    let a4 = (c3 + a2 * c2 + a3 * c1) / 3.0;
    objective.low_order_value(a2, a3, a4).map_or(f64::NEG_INFINITY, |v| v.norm())
}

fn lemma3_params(p: &[f64]) -> Lemma3Params {
    Lemma3Params {
        c1: p[0].clamp(0.0, 2.0),
        x: Complex64::from_polar(p[1].clamp(0.0, 1.0), p[2]),
        z: Complex64::from_polar(1.0, p[3]),
    }
}

/// Maximizes `|objective|` over the `(c₁, x, z)` box with `|z| = 1`.
pub fn sup_over_lemma3(objective: &Objective, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if matches!(objective, Objective::H3 { .. }) {
        return Err(Error::NotLemma3Representable("h3 needs a5, hence c4".into()));
    }
    let bound = objective.bound()?;
    let g = cfg.lemma3_grid;
    let c1s: Vec<f64> = (0..g).map(|i| 2.0 * i as f64 / (g - 1) as f64).collect();
    let rhos: Vec<f64> = (0..g).map(|i| i as f64 / (g - 1) as f64).collect();
    let phases: Vec<Complex64> = (0..g).map(|i| Complex64::from_polar(1.0, TAU * i as f64 / g as f64)).collect();

    let rows: Vec<(f64, [usize; 4])> = (0..g)
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::NEG_INFINITY, [i, 0, 0, 0]);
            for (j, &rho) in rhos.iter().enumerate() {
                for (k, ex) in phases.iter().enumerate() {
                    let x = ex * rho;
                    for (l, &z) in phases.iter().enumerate() {
                        let v = lemma3_fast(objective, c1s[i], x, z);
                        if v > best.0 {
                            best = (v, [i, j, k, l]);
                        }
                    }
                }
            }
            best
        })
        .collect();
    let (_, [i, j, k, l]) = rows.into_iter().fold((f64::NEG_INFINITY, [0; 4]), |a, b| if b.0 > a.0 { b } else { a });

    let start = vec![c1s[i], rhos[j], TAU * k as f64 / g as f64, TAU * l as f64 / g as f64];
    let cell = TAU / g as f64;
    let boxes = [
        CoordinateBox::clamped(2.0 / (g - 1) as f64, 0.0, 2.0),
        CoordinateBox::clamped(1.0 / (g - 1) as f64, 0.0, 1.0),
        CoordinateBox::free(cell),
        CoordinateBox::free(cell),
    ];
    let eval = |p: &[f64]| {
        let q = lemma3_params(p);
        lemma3_fast(objective, q.c1, q.x, q.z)
    };
    let run = coordinate_ascent(eval, start, &boxes, cfg.max_iters, cfg.tol);
    let mut params = lemma3_params(&run.x);
    params.x = Complex64::from_polar(params.x.norm(), params.x.arg().rem_euclid(TAU));
    let witness = Witness::Lemma3(params);
    let value = witness.value(objective)?;
    Ok(SearchResult {
        objective: *objective,
        backend: Backend::Lemma3,
        value,
        gap: bound.value - value,
        witness,
        bound,
        seed: cfg.seed,
        restarts: 1,
        iterations: run.cycles,
        atoms: None,
    })
}

pub fn search(objective: &Objective, backend: Backend, cfg: &SearchConfig) -> Result<SearchResult> {
    match backend {
        Backend::Atoms => sup_over_atoms(objective, cfg),
        Backend::Lemma3 => sup_over_lemma3(objective, cfg),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Attained,
    Open,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub objective: Objective,
    pub params: Vec<f64>,
    /// Best over the backends that ran.
    pub value: f64,
    pub bound: BoundValue,
    pub gap: f64,
    pub status: SweepStatus,
    pub atoms: SearchResult,
    pub lemma3: Option<SearchResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub functional: String,
    pub atoms: usize,
    pub seed: u64,
    pub entries: Vec<SweepEntry>,
}

/// Runs both backends (where representable) for every objective in `params`.
pub fn sharpness_sweep(params: &[Objective], cfg: &SearchConfig) -> Result<SweepReport> {
    let first = params.first().ok_or_else(|| Error::InvalidParameter("empty parameter list".into()))?;
    if params.iter().any(|p| p.name() != first.name()) {
        return Err(Error::InvalidParameter("a sweep covers a single functional".into()));
    }
    let entries = params
        .iter()
        .map(|obj| {
            let atoms = sup_over_atoms(obj, cfg)?;
            let lemma3 = match obj {
                Objective::H3 { .. } => None,
                _ => Some(sup_over_lemma3(obj, cfg)?),
            };
            let value = lemma3.as_ref().map_or(atoms.value, |l| l.value.max(atoms.value));
            let bound = atoms.bound.clone();
            let gap = bound.value - value;
            Ok(SweepEntry {
                objective: *obj,
                params: obj.params(),
                value,
                status: if gap <= ATTAINED_GAP { SweepStatus::Attained } else { SweepStatus::Open },
                bound,
                gap,
                atoms,
                lemma3,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { functional: first.name().to_string(), atoms: cfg.atoms, seed: cfg.seed, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caratheodory::lemma3_coeffs_unchecked;

    fn quick() -> SearchConfig {
        SearchConfig { restarts: 16, lemma3_grid: 33, ..SearchConfig::default() }
    }

    #[test]
    fn objective_parsing() {
        assert_eq!(Objective::parse("b2_1", &[2.0]).unwrap(), Objective::B2_1 { beta: 2.0 });
        assert_eq!(Objective::parse("h3", &[1.0, 2.0, 3.0]).unwrap(), Objective::H3 { lambdas: [1.0, 2.0, 3.0] });
        assert!(Objective::parse("h3", &[1.0]).is_err());
        assert!(Objective::parse("b2_1", &[-1.0]).is_err());
        assert!(Objective::parse("h2_2", &[-0.5]).is_err());
        assert!(Objective::parse("wat", &[1.0]).is_err());
        assert_eq!(Objective::H3 { lambdas: [1.0, 2.0, 0.5] }.to_string(), "h3(1,2,0.5)");
    }

    #[test]
    fn fast_path_matches_pipeline() {
        let mut rng = SplitMix64::new(4);
        for _ in 0..500 {
            let c1 = rng.uniform(0.0, 2.0);
            let x = Complex64::from_polar(rng.next_f64(), rng.uniform(0.0, TAU));
            let z = Complex64::from_polar(1.0, rng.uniform(0.0, TAU));
            let p = Lemma3Params::new(c1, x, z).unwrap();
            for obj in
                [Objective::B2_1 { beta: 1.7 }, Objective::H2_2 { alpha: 0.8 }, Objective::FeketeSzego { gamma: 0.3 }]
            {
                let fast = lemma3_fast(&obj, c1, x, z);
                let slow = Witness::Lemma3(p).value(&obj).unwrap();
                assert!((fast - slow).abs() <= 1e-12 * (1.0 + slow));
            }
            let c = lemma3_coeffs_unchecked(c1, x, z);
            assert_eq!(c.len(), 3);
        }
    }

    #[test]
    fn lemma3_rejects_h3() {
        let r = sup_over_lemma3(&Objective::H3 { lambdas: [1.0; 3] }, &quick());
        assert!(matches!(r, Err(Error::NotLemma3Representable(_))));
    }

    #[test]
    fn config_validation() {
        let bad = SearchConfig { atoms: 0, ..SearchConfig::default() };
        assert!(sup_over_atoms(&Objective::B2_1 { beta: 1.0 }, &bad).is_err());
        let bad = SearchConfig { tol: 0.0, ..SearchConfig::default() };
        assert!(sup_over_atoms(&Objective::B2_1 { beta: 1.0 }, &bad).is_err());
    }

    #[test]
    fn koebe_attains_fekete_szego_at_zero() {
        let r = sup_over_atoms(&Objective::FeketeSzego { gamma: 0.0 }, &quick()).unwrap();
        assert!((r.value - 3.0).abs() < 1e-3, "{}", r.value);
        // the witness concentrates at one angle: |c1| = 2
        let f = r.witness.function(4).unwrap();
        assert!((f.a(2).unwrap().norm() - 2.0).abs() < 1e-3);
    }

    #[test]
    fn witness_reproduces_value() {
        let obj = Objective::H3 { lambdas: [1.0, 1.0, 1.0] };
        let r = sup_over_atoms(&obj, &quick()).unwrap();
        let again = r.witness.value(&obj).unwrap();
        assert!((again - r.value).abs() <= 1e-9 * r.value.max(1.0));
    }

    #[test]
    fn lemma3_endpoints() {
        let cfg = SearchConfig::default();
        let r = sup_over_lemma3(&Objective::B2_1 { beta: 0.0 }, &cfg).unwrap();
        assert!((r.value - 6.0).abs() < 1e-4, "{}", r.value);
        let r = sup_over_lemma3(&Objective::H2_2 { alpha: 0.0 }, &cfg).unwrap();
        assert!((r.value - 8.0).abs() < 1e-4, "{}", r.value);
    }

    #[test]
    fn merge_order_is_total() {
        let a = Candidate { value: 1.0, key: vec![0.0, 1.0], index: 3 };
        let b = Candidate { value: 1.0, key: vec![0.0, 2.0], index: 0 };
        assert!(better(&a, &b));
        assert!(!better(&b, &a));
        let c = Candidate { value: 1.0, key: vec![0.0, 1.0], index: 1 };
        assert!(better(&c, &a));
        let d = Candidate { value: 1.5, key: vec![9.0, 9.0], index: 9 };
        assert!(better(&d, &a));
    }

    #[test]
    fn deterministic_across_pools() {
        let obj = Objective::B2_1 { beta: 2.0 };
        let cfg = SearchConfig { restarts: 12, ..SearchConfig::default() };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| sup_over_atoms(&obj, &cfg)).unwrap();
        let b = four.install(|| sup_over_atoms(&obj, &cfg)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn sweep_rejects_mixed_or_empty() {
        assert!(sharpness_sweep(&[], &quick()).is_err());
        let mixed = [Objective::B2_1 { beta: 1.0 }, Objective::H2_2 { alpha: 1.0 }];
        assert!(sharpness_sweep(&mixed, &quick()).is_err());
    }
}
