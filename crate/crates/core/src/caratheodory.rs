//! The Carathéodory class: `p(z) = 1 + c₁z + c₂z² + …` with `Re p > 0` on the disk.
//!
//! Two generators are provided. Atom mixtures are finite averages of the
//! rotated Möbius kernels `(1 + ηz)/(1 − ηz)`, giving `cₖ = 2 Σ tⱼ e^{ikθⱼ}`.
//! The three-parameter form `(c₁, x, z)` describes every admissible
//! `(c₁, c₂, c₃)` once `c₁` is rotated onto `[0, 2]`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Slack allowed on `Σ t_j = 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Slack allowed on `|x| ≤ 1`, `|z| ≤ 1` and `0 ≤ c₁ ≤ 2`.
pub const DOMAIN_TOL: f64 = 1e-12;
/// Below `1 - |x|` of this size the `z` term is dropped and `z` is reported unconstrained.
pub const UNIT_X_TOL: f64 = 1e-9;

/// Convex combination of rotated Möbius kernels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMixture", into = "RawMixture")]
pub struct AtomMixture {
    weights: Vec<f64>,
    angles: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawMixture {
    weights: Vec<f64>,
    angles: Vec<f64>,
}

impl TryFrom<RawMixture> for AtomMixture {
    type Error = Error;
    fn try_from(raw: RawMixture) -> Result<Self> {
        AtomMixture::new(raw.weights, raw.angles)
    }
}

impl From<AtomMixture> for RawMixture {
    fn from(m: AtomMixture) -> Self {
        RawMixture { weights: m.weights, angles: m.angles }
    }
}

impl AtomMixture {
    /// Angles are reduced into `[0, 2π)`.
    pub fn new(weights: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::NotProbabilityVector("at least one atom is required".into()));
        }
        if weights.len() != angles.len() {
            return Err(Error::NotProbabilityVector(format!("{} weights for {} angles", weights.len(), angles.len())));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::NotProbabilityVector(format!("weight {w} is not a nonnegative real")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::NotProbabilityVector(format!("weights sum to {sum}")));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::NotProbabilityVector("non-finite angle".into()));
        }
        let angles = angles.into_iter().map(|a| a.rem_euclid(TAU)).collect();
        Ok(Self { weights, angles })
    }

    /// The single kernel `(1 + e^{iθ}z)/(1 − e^{iθ}z)`.
    pub fn single(angle: f64) -> Self {
        Self::new(vec![1.0], vec![angle]).expect("single atom is valid")
    }

    /// Dirichlet-uniform weights (normalized exponentials) and uniform angles.
    pub fn random(rng: &mut SplitMix64, atoms: usize) -> Self {
        assert!(atoms >= 1, "at least one atom");
        let raw: Vec<f64> = (0..atoms).map(|_| rng.exponential()).collect();
        let angles = (0..atoms).map(|_| rng.uniform(0.0, TAU)).collect();
        Self::new(normalize(&raw), angles).expect("normalized exponentials form a probability vector")
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Scales a nonnegative vector to sum exactly to one (up to rounding).
pub(crate) fn normalize(raw: &[f64]) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    raw.iter().map(|r| r / total).collect()
}

/// `c₁..c_N` of a Carathéodory function; stored without the leading `1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaratheodoryCoeffs {
    c: Vec<Complex64>,
}

impl CaratheodoryCoeffs {
    pub fn new(c: Vec<Complex64>) -> Self {
        Self { c }
    }

    pub fn from_real(c: &[f64]) -> Self {
        Self { c: c.iter().map(|&x| Complex64::new(x, 0.0)).collect() }
    }

    /// `cₖ`, one-based.
    pub fn get(&self, k: usize) -> Option<Complex64> {
        k.checked_sub(1).and_then(|i| self.c.get(i).copied())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Coefficients of `p(ηz)`: `cₖ ↦ ηᵏ cₖ`.
    pub fn rotate(&self, eta: Complex64) -> Self {
        let mut power = Complex64::new(1.0, 0.0);
        let c = self
            .c
            .iter()
            .map(|ck| {
                power *= eta;
                ck * power
            })
            .collect();
        Self { c }
    }
}

/// `cₖ = 2 Σ_j t_j e^{ikθ_j}` for `k = 1..=order`.
pub fn mixture_coeffs(mix: &AtomMixture, order: usize) -> CaratheodoryCoeffs {
    let mut c = vec![Complex64::new(0.0, 0.0); order];
    for (&t, &theta) in mix.weights.iter().zip(&mix.angles) {
        let step = Complex64::from_polar(1.0, theta);
        let mut power = Complex64::new(2.0 * t, 0.0);
        for ck in c.iter_mut() {
            power *= step;
            *ck += power;
        }
    }
    CaratheodoryCoeffs { c }
}

/// Free parameters `(c₁, x, z)` with `c₁ ∈ [0, 2]` and `x`, `z` in the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma3Params {
    pub c1: f64,
    pub x: Complex64,
    pub z: Complex64,
}

impl Lemma3Params {
    pub fn new(c1: f64, x: Complex64, z: Complex64) -> Result<Self> {
        let p = Self { c1, x, z };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c1.is_finite() && (-DOMAIN_TOL..=2.0 + DOMAIN_TOL).contains(&self.c1)) {
            return Err(Error::OutsideLemma3Domain(format!("c1 = {} not in [0, 2]", self.c1)));
        }
        if self.x.norm().is_nan() || self.x.norm() > 1.0 + DOMAIN_TOL {
            return Err(Error::OutsideLemma3Domain(format!("|x| = {} > 1", self.x.norm())));
        }
        if self.z.norm().is_nan() || self.z.norm() > 1.0 + DOMAIN_TOL {
            return Err(Error::OutsideLemma3Domain(format!("|z| = {} > 1", self.z.norm())));
        }
        Ok(())
    }
}

/// `(c₁, c₂, c₃)` from the parametrization
/// `2c₂ = c₁² + x(4 − c₁²)`,
/// `4c₃ = c₁³ + 2xc₁(4 − c₁²) − x²c₁(4 − c₁²) + 2z(1 − |x|²)(4 − c₁²)`.
pub fn lemma3_coeffs(p: &Lemma3Params) -> Result<CaratheodoryCoeffs> {
    p.validate()?;
    Ok(lemma3_coeffs_unchecked(p.c1, p.x, p.z))
}

pub(crate) fn lemma3_coeffs_unchecked(c1: f64, x: Complex64, z: Complex64) -> CaratheodoryCoeffs {
    let d = 4.0 - c1 * c1;
    let c1c = Complex64::new(c1, 0.0);
    let c2 = (c1c * c1 + x * d) / 2.0;
    let c3 = (c1c * c1 * c1 + 2.0 * x * c1 * d - x * x * c1 * d + 2.0 * z * (1.0 - x.norm_sqr()) * d) / 4.0;
    CaratheodoryCoeffs { c: vec![c1c, c2, c3] }
}

/// Result of inverting the parametrization.
///
/// `phase` is the rotation `φ = arg c₁` that was removed before inverting; the
/// original coefficients are `lemma3_coeffs(params)` rotated by `e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma3Inverse {
    pub phase: f64,
    pub c1: f64,
    pub x: Complex64,
    /// `None` when `|x| = 1`, where `z` does not enter `c₃`.
    pub z: Option<Complex64>,
}

impl Lemma3Inverse {
    /// Parameters usable with [`lemma3_coeffs`]; an unconstrained `z` becomes `0`.
    pub fn params(&self) -> Lemma3Params {
        Lemma3Params { c1: self.c1, x: self.x, z: self.z.unwrap_or_default() }
    }

    /// Re-generates the coefficients in the original (unrotated) frame.
    pub fn coeffs(&self) -> CaratheodoryCoeffs {
        let p = self.params();
        lemma3_coeffs_unchecked(p.c1, p.x, p.z).rotate(Complex64::from_polar(1.0, self.phase))
    }
}

pub fn lemma3_invert(c: &CaratheodoryCoeffs) -> Result<Lemma3Inverse> {
    if c.len() < 3 {
        return Err(Error::OutsideLemma3Domain(format!("need c1..c3, have {} coefficients", c.len())));
    }
    let raw_c1 = c.c[0];
    let modulus = raw_c1.norm();
    if modulus >= 2.0 {
        return Err(Error::DegenerateBoundary(modulus));
    }
    let phase = if modulus > 0.0 { raw_c1.arg() } else { 0.0 };
    let rotated = c.rotate(Complex64::from_polar(1.0, -phase));
    let c1 = modulus;
    let (c2, c3) = (rotated.c[1], rotated.c[2]);
    let d = 4.0 - c1 * c1;
    let x = (2.0 * c2 - c1 * c1) / d;
    let rho = x.norm();
    if rho > 1.0 + UNIT_X_TOL {
        return Err(Error::NotRepresentable(rho));
    }
    let z = if rho < 1.0 - UNIT_X_TOL {
        let num = 4.0 * c3 - c1.powi(3) - 2.0 * x * c1 * d + x * x * c1 * d;
        Some(num / (2.0 * (1.0 - rho * rho) * d))
    } else {
        None
    };
    Ok(Lemma3Inverse { phase, c1, x, z })
}

/// `(|c₂ − σc₁²/2|, 2·max{1, |σ − 1|})`.
pub fn lemma2_check(c: &CaratheodoryCoeffs, sigma: f64) -> Result<(f64, f64)> {
    let (c1, c2) = match (c.get(1), c.get(2)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidParameter("need at least c1 and c2".into())),
    };
    let lhs = (c2 - sigma * c1 * c1 / 2.0).norm();
    let bound = 2.0 * 1.0f64.max((sigma - 1.0).abs());
    Ok((lhs, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn assert_coeffs(c: &CaratheodoryCoeffs, expect: &[f64]) {
        assert_eq!(c.len(), expect.len());
        for (got, want) in c.as_slice().iter().zip(expect) {
            assert_abs_diff_eq!(got.re, *want, epsilon = 1e-12);
            assert_abs_diff_eq!(got.im, 0.0, epsilon = 1e-12);
        }
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mixture_examples() {
        assert_coeffs(&mixture_coeffs(&AtomMixture::single(0.0), 5), &[2.0; 5]);
        let two = AtomMixture::new(vec![0.5, 0.5], vec![0.0, PI]).unwrap();
        assert_coeffs(&mixture_coeffs(&two, 4), &[0.0, 2.0, 0.0, 2.0]);
        assert_coeffs(&mixture_coeffs(&AtomMixture::single(PI), 4), &[-2.0, 2.0, -2.0, 2.0]);
    }

    #[test]
    fn mixture_rejects_bad_weights() {
        assert!(matches!(AtomMixture::new(vec![0.5, 0.6], vec![0.0, 1.0]), Err(Error::NotProbabilityVector(_))));
        assert!(matches!(AtomMixture::new(vec![1.5, -0.5], vec![0.0, 1.0]), Err(Error::NotProbabilityVector(_))));
        assert!(AtomMixture::new(vec![], vec![]).is_err());
        assert!(AtomMixture::new(vec![1.0], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn deserialization_validates() {
        let bad = RawMixture { weights: vec![0.2, 0.2], angles: vec![0.0, 1.0] };
        assert!(AtomMixture::try_from(bad).is_err());
        let good = RawMixture { weights: vec![0.25, 0.75], angles: vec![7.0, -1.0] };
        let mix = AtomMixture::try_from(good).unwrap();
        assert_abs_diff_eq!(mix.angles()[0], 7.0 - TAU, epsilon = 1e-15);
    }

    #[test]
    fn lemma3_examples() {
        let any_x = cx(0.3, -0.4);
        let any_z = cx(-0.6, 0.1);
        assert_coeffs(&lemma3_coeffs(&Lemma3Params::new(2.0, any_x, any_z).unwrap()).unwrap(), &[2.0, 2.0, 2.0]);
        assert_coeffs(&lemma3_coeffs(&Lemma3Params::new(0.0, cx(1.0, 0.0), any_z).unwrap()).unwrap(), &[0.0, 2.0, 0.0]);
        assert_coeffs(
            &lemma3_coeffs(&Lemma3Params::new(0.0, cx(0.0, 0.0), cx(1.0, 0.0)).unwrap()).unwrap(),
            &[0.0, 0.0, 2.0],
        );
    }

    #[test]
    fn lemma3_domain_errors() {
        assert!(matches!(Lemma3Params::new(2.1, cx(0.0, 0.0), cx(0.0, 0.0)), Err(Error::OutsideLemma3Domain(_))));
        assert!(matches!(Lemma3Params::new(1.0, cx(1.0, 0.1), cx(0.0, 0.0)), Err(Error::OutsideLemma3Domain(_))));
        assert!(matches!(Lemma3Params::new(1.0, cx(0.0, 0.0), cx(0.0, -1.01)), Err(Error::OutsideLemma3Domain(_))));
        let bad = Lemma3Params { c1: -0.5, x: cx(0.0, 0.0), z: cx(0.0, 0.0) };
        assert!(lemma3_coeffs(&bad).is_err());
    }

    #[test]
    fn invert_examples() {
        let inv = lemma3_invert(&CaratheodoryCoeffs::from_real(&[0.0, 2.0, 0.0])).unwrap();
        assert_abs_diff_eq!((inv.x - cx(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_eq!(inv.z, None);

        let inv = lemma3_invert(&CaratheodoryCoeffs::from_real(&[0.0, 0.0, 2.0])).unwrap();
        assert_abs_diff_eq!(inv.x.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((inv.z.unwrap() - cx(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);

        assert!(matches!(
            lemma3_invert(&CaratheodoryCoeffs::from_real(&[2.0, 2.0, 2.0])),
            Err(Error::DegenerateBoundary(_))
        ));
        assert!(matches!(
            lemma3_invert(&CaratheodoryCoeffs::from_real(&[0.0, 3.0, 0.0])),
            Err(Error::NotRepresentable(_))
        ));
    }

    #[test]
    fn invert_handles_complex_c1() {
        let mix = AtomMixture::new(vec![0.3, 0.7], vec![1.0, 2.5]).unwrap();
        let c = mixture_coeffs(&mix, 3);
        let inv = lemma3_invert(&c).unwrap();
        for (a, b) in inv.coeffs().as_slice().iter().zip(c.as_slice()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn lemma2_examples() {
        let l0 = mixture_coeffs(&AtomMixture::single(0.0), 3);
        assert_eq!(lemma2_check(&l0, 0.0).unwrap(), (2.0, 2.0));
        let (lhs, bound) = lemma2_check(&l0, 3.0).unwrap();
        assert_abs_diff_eq!(lhs, 4.0, epsilon = 1e-12);
        assert_eq!(bound, 4.0);
        let two = CaratheodoryCoeffs::from_real(&[0.0, 2.0, 0.0]);
        assert_eq!(lemma2_check(&two, 1.0).unwrap(), (2.0, 2.0));
        assert!(lemma2_check(&CaratheodoryCoeffs::from_real(&[1.0]), 1.0).is_err());
    }

    #[test]
    fn lemma3_grid_stays_in_class() {
        let n = 50;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let c1 = 2.0 * i as f64 / (n - 1) as f64;
            for j in 0..n {
                let rho = j as f64 / (n - 1) as f64;
                for k in 0..n {
                    let phase = TAU * k as f64 / n as f64;
                    // x and z share the phase index; both spin through the full circle
                    let x = Complex64::from_polar(rho, phase);
                    let z = Complex64::from_polar(1.0, 3.0 * phase + 0.5);
                    let c = lemma3_coeffs_unchecked(c1, x, z);
                    worst = worst.max(c.get(2).unwrap().norm()).max(c.get(3).unwrap().norm());
                }
            }
        }
        assert!(worst <= 2.0 + 1e-12, "max |c2|,|c3| = {worst}");
    }

    #[test]
    fn random_mixtures_are_valid() {
        let mut rng = SplitMix64::new(3);
        for m in 1..=6 {
            let mix = AtomMixture::random(&mut rng, m);
            assert_eq!(mix.len(), m);
            assert!(mix.angles().iter().all(|a| (0.0..TAU).contains(a)));
        }
    }
}
