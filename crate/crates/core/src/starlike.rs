//! Normalized starlike functions `f(z) = z + a₂z² + …`.
//!
//! Coefficients come either from a Carathéodory function through
//! `zf′(z) = f(z)·p(z)`, or from the catalog of named closed forms
//! `z(1 − uzᵏ)ᵖ`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::caratheodory::CaratheodoryCoeffs;
use crate::error::{Error, Result};
use crate::series::{series_binomial_pow, TaylorCoeffs};

/// Radius of the circle sampled by the starlikeness spot-check.
pub const CHECK_RADIUS: f64 = 0.99;
/// Number of sample points on that circle.
pub const CHECK_SAMPLES: usize = 720;

const NORMALIZATION_TOL: f64 = 1e-12;
const UNIMODULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarlikeCoeffs {
    /// `a[n - 1]` is `aₙ`; `a[0] = 1`.
    a: Vec<Complex64>,
    pub provenance: String,
    /// Set when the construction is not a member of the starlike class
    /// (failed spot-check or a singularity inside the disk).
    pub suspect: bool,
}

impl StarlikeCoeffs {
    /// `a` lists `a₁, a₂, …`; `a₁` must equal one.
    pub fn new(a: Vec<Complex64>, provenance: impl Into<String>) -> Result<Self> {
        match a.first() {
            Some(a1) if (a1 - 1.0).norm() <= NORMALIZATION_TOL => {}
            Some(a1) => return Err(Error::NotNormalized(format!("a1 = {a1}, expected 1"))),
            None => return Err(Error::NotNormalized("empty coefficient list".into())),
        }
        if let Some(i) = a.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(i + 1));
        }
        let mut a = a;
        a[0] = Complex64::new(1.0, 0.0);
        Ok(Self { a, provenance: provenance.into(), suspect: false })
    }

    pub fn from_real(a: &[f64], provenance: impl Into<String>) -> Result<Self> {
        Self::new(a.iter().map(|&x| Complex64::new(x, 0.0)).collect(), provenance)
    }

    /// Reads `f` from its full Taylor series, which must start `0 + 1·z`.
    pub fn from_taylor(series: &TaylorCoeffs, provenance: impl Into<String>) -> Result<Self> {
        let c = series.coeffs();
        if c.len() < 2 {
            return Err(Error::NotNormalized("series must include the z coefficient".into()));
        }
        if c[0].norm() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(format!("constant term {} is not zero", c[0])));
        }
        Self::new(c[1..].to_vec(), provenance)
    }

    pub fn to_taylor(&self) -> TaylorCoeffs {
        let mut c = Vec::with_capacity(self.a.len() + 1);
        c.push(Complex64::new(0.0, 0.0));
        c.extend_from_slice(&self.a);
        TaylorCoeffs::new(c).expect("coefficients are finite")
    }

    /// Highest available coefficient index.
    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `aₙ`, one-based.
    pub fn a(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(1).and_then(|i| self.a.get(i).copied())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.a
    }

    /// Fails unless `a₁..=a_need` are present.
    pub fn require(&self, need: usize) -> Result<()> {
        if self.order() < need {
            Err(Error::InsufficientCoefficients { have: self.order(), need })
        } else {
            Ok(())
        }
    }
}

/// Coefficients `a₁..=a_order` of the `f` with `zf′/f = p`, from the
/// recurrence `(n − 1)aₙ = Σ_{k=1}^{n−1} aₖ c_{n−k}`.
pub fn lift_starlike(c: &CaratheodoryCoeffs, order: usize) -> Result<StarlikeCoeffs> {
    if order == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    if c.len() + 1 < order {
        return Err(Error::InsufficientOrder { have: c.len(), need: order - 1 });
    }
    let c = c.as_slice();
    let mut a = Vec::with_capacity(order);
    a.push(Complex64::new(1.0, 0.0));
    for n in 2..=order {
        let s: Complex64 = (1..n).map(|k| a[k - 1] * c[n - k - 1]).sum();
        a.push(s / (n - 1) as f64);
    }
    Ok(StarlikeCoeffs { a, provenance: "lift".into(), suspect: false })
}

/// Named closed forms `f(z) = z(1 − uzᵏ)ᵖ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogEntry {
    /// `z/(1 − z)²`
    Koebe,
    /// `z/(1 − z²)`
    TwoSymmetric,
    /// `z(1 − zᵏ)^{−2/k}`
    Kfold(usize),
    /// `z/(1 − z³)²`, proposed middle-range extremal for `|a₂a₃ − βa₄|`; not starlike.
    PaperThm2Literal,
    /// `z/(1 − z²/√α)`, proposed middle-range extremal for `|a₂a₄ − αa₃²|`; starlike only for `α ≥ 1`.
    PaperThm3Literal(f64),
}

impl CatalogEntry {
    /// `(u, k, p)` in `z(1 − uzᵏ)ᵖ`.
    pub fn closed_form(&self) -> Result<(Complex64, usize, f64)> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match *self {
            CatalogEntry::Koebe => (one, 1, -2.0),
            CatalogEntry::TwoSymmetric => (one, 2, -1.0),
            CatalogEntry::Kfold(k) => {
                if k == 0 {
                    return Err(Error::InvalidParameter("kfold symmetry must be at least 1".into()));
                }
                (one, k, -2.0 / k as f64)
            }
            CatalogEntry::PaperThm2Literal => (one, 3, -2.0),
            CatalogEntry::PaperThm3Literal(alpha) => {
                if !(alpha.is_finite() && alpha > 0.0) {
                    return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
                }
                (Complex64::new(1.0 / alpha.sqrt(), 0.0), 2, -1.0)
            }
        })
    }

    pub fn names() -> &'static [&'static str] {
        &["koebe", "two_symmetric", "kfold:<k>", "paper_thm2_literal", "paper_thm3_literal:<alpha>"]
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogEntry::Koebe => write!(f, "koebe"),
            CatalogEntry::TwoSymmetric => write!(f, "two_symmetric"),
            CatalogEntry::Kfold(k) => write!(f, "kfold:{k}"),
            CatalogEntry::PaperThm2Literal => write!(f, "paper_thm2_literal"),
            CatalogEntry::PaperThm3Literal(a) => write!(f, "paper_thm3_literal:{a}"),
        }
    }
}

impl FromStr for CatalogEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let bad = || Error::UnknownCatalog(s.to_string());
        match (name, param) {
            ("koebe", None) => Ok(CatalogEntry::Koebe),
            ("two_symmetric", None) => Ok(CatalogEntry::TwoSymmetric),
            ("kfold", Some(k)) => k.parse().map(CatalogEntry::Kfold).map_err(|_| bad()),
            ("paper_thm2_literal", None) => Ok(CatalogEntry::PaperThm2Literal),
            ("paper_thm3_literal", Some(a)) => a.parse().map(CatalogEntry::PaperThm3Literal).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// Outcome of sampling `Re[zf′(z)/f(z)]` on `|z| = CHECK_RADIUS`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarlikeCheck {
    pub min_re: f64,
    pub argmin: f64,
    /// Modulus of the nearest singularity of `(1 − uzᵏ)ᵖ`.
    pub singular_radius: f64,
}

impl StarlikeCheck {
    pub fn passed(&self) -> bool {
        self.min_re >= 0.0 && self.singular_radius >= 1.0
    }
}

/// Spot-check of a catalog entry using `zf′/f = 1 − pkuzᵏ/(1 − uzᵏ)`.
pub fn starlike_spot_check(entry: &CatalogEntry) -> Result<StarlikeCheck> {
    let (u, k, p) = entry.closed_form()?;
    let mut min_re = f64::INFINITY;
    let mut argmin = 0.0;
    for j in 0..CHECK_SAMPLES {
        let theta = TAU * j as f64 / CHECK_SAMPLES as f64;
        let w = u * Complex64::from_polar(CHECK_RADIUS, theta).powu(k as u32);
        let re = (1.0 - p * k as f64 * w / (1.0 - w)).re;
        if re < min_re {
            min_re = re;
            argmin = theta;
        }
    }
    let singular_radius = u.norm().powf(-1.0 / k as f64);
    Ok(StarlikeCheck { min_re, argmin, singular_radius })
}

/// Coefficients `a₁..=a_order` of a catalog entry.
pub fn catalog(entry: &CatalogEntry, order: usize) -> Result<StarlikeCoeffs> {
    if order == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let (u, k, p) = entry.closed_form()?;
    let series = series_binomial_pow(u, k, p, order - 1)?;
    let check = starlike_spot_check(entry)?;
    Ok(StarlikeCoeffs { a: series.into_coeffs(), provenance: entry.to_string(), suspect: !check.passed() })
}

/// `f ↦ η̄f(ηz)`, i.e. `aₙ ↦ ηⁿ⁻¹aₙ`.
pub fn rotate(f: &StarlikeCoeffs, eta: Complex64) -> Result<StarlikeCoeffs> {
    if (eta.norm() - 1.0).abs() > UNIMODULAR_TOL {
        return Err(Error::NotUnimodular(eta.norm()));
    }
    let mut power = Complex64::new(1.0, 0.0);
    let a =
        f.a.iter()
            .map(|an| {
                let out = an * power;
                power *= eta;
                out
            })
            .collect();
    Ok(StarlikeCoeffs { a, provenance: format!("rotate({}, {eta})", f.provenance), suspect: f.suspect })
}
