//! Coefficient determinants with Fekete–Szegő parameters.
//!
//! Two families of `q × q` determinants are built from the coefficients of a
//! normalized function:
//!
//! * `H` (Hankel type): entry `(i, j)` is `a_{n+i+j−2}`, with the first row
//!   scaled entry-wise by `λ₁..λ_q`.
//! * `B` (block type): entry `(i, j)` is `a_{n+(i−1)q+j−1}`, with the last
//!   column scaled row-wise by `λ₁..λ_q`.
//!
//! The 3×3 Hankel determinant at `n = 1` also decomposes into three weighted
//! 2×2 functionals, which is where the bounds in [`crate::bounds`] come from.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::starlike::StarlikeCoeffs;

pub type Matrix = Vec<Vec<Complex64>>;

/// Orders up to this use cofactor expansion; larger ones use elimination.
const COFACTOR_MAX: usize = 4;

/// Determinant of a square complex matrix.
pub fn det_eval(m: &[Vec<Complex64>]) -> Result<Complex64> {
    let q = m.len();
    if m.iter().any(|row| row.len() != q) {
        return Err(Error::NonSquare);
    }
    if q == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if q <= COFACTOR_MAX {
        Ok(det_cofactor(m))
    } else {
        Ok(det_elimination(m))
    }
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<Complex64>]) -> Complex64 {
    let q = m.len();
    match q {
        0 => Complex64::new(1.0, 0.0),
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut total = Complex64::new(0.0, 0.0);
            for j in 0..q {
                let minor: Matrix = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let term = m[0][j] * det_cofactor(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

/// Gaussian elimination with partial pivoting.
pub fn det_elimination(m: &[Vec<Complex64>]) -> Complex64 {
    let q = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..q {
        let pivot = (col..q).max_by(|&r, &s| a[r][col].norm().total_cmp(&a[s][col].norm())).expect("non-empty range");
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..q {
            let factor = a[r][col] / p;
            if factor.norm() == 0.0 {
                continue;
            }
            for c in col..q {
                let v = a[col][c];
                a[r][c] -= factor * v;
            }
        }
    }
    det
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeterminantKind {
    H,
    B,
}

/// Shape and parameters of one determinant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeterminantSpec {
    pub kind: DeterminantKind,
    pub n: usize,
    pub q: usize,
    pub lambdas: Vec<f64>,
}

impl DeterminantSpec {
    pub fn new(kind: DeterminantKind, n: usize, q: usize, lambdas: Vec<f64>) -> Result<Self> {
        if n < 1 || q < 1 {
            return Err(Error::InvalidParameter(format!("need n >= 1 and q >= 1, got n={n}, q={q}")));
        }
        if lambdas.len() != q {
            return Err(Error::InvalidParameter(format!("expected {q} lambdas, got {}", lambdas.len())));
        }
        if lambdas.iter().any(|l| !l.is_finite()) {
            return Err(Error::InvalidParameter("lambdas must be finite".into()));
        }
        Ok(Self { kind, n, q, lambdas })
    }

    /// Highest coefficient index the determinant touches.
    pub fn max_index(&self) -> usize {
        match self.kind {
            DeterminantKind::H => self.n + 2 * (self.q - 1),
            DeterminantKind::B => self.n + self.q * self.q - 1,
        }
    }

    /// The `q × q` matrix for `f`.
    pub fn matrix(&self, f: &StarlikeCoeffs) -> Result<Matrix> {
        f.require(self.max_index())?;
        let a = |k: usize| f.a(k).expect("checked by require");
        let (n, q) = (self.n, self.q);
        let m = (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| match self.kind {
                        DeterminantKind::H => {
                            let v = a(n + i + j);
                            if i == 0 {
                                v * self.lambdas[j]
                            } else {
                                v
                            }
                        }
                        DeterminantKind::B => {
                            let v = a(n + i * q + j);
                            if j == q - 1 {
                                v * self.lambdas[i]
                            } else {
                                v
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(m)
    }
}

fn expect_kind(spec: &DeterminantSpec, kind: DeterminantKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::InvalidParameter(format!("expected a {kind:?} determinant, got {:?}", spec.kind)));
    }
    Ok(())
}

/// Hankel determinant with first-row parameters.
pub fn hankel_lambda(f: &StarlikeCoeffs, spec: &DeterminantSpec) -> Result<Complex64> {
    expect_kind(spec, DeterminantKind::H)?;
    det_eval(&spec.matrix(f)?)
}

/// Block determinant with last-column parameters.
pub fn b_lambda(f: &StarlikeCoeffs, spec: &DeterminantSpec) -> Result<Complex64> {
    expect_kind(spec, DeterminantKind::B)?;
    det_eval(&spec.matrix(f)?)
}

/// Either family, dispatched on `spec.kind`.
pub fn determinant(f: &StarlikeCoeffs, spec: &DeterminantSpec) -> Result<Complex64> {
    det_eval(&spec.matrix(f)?)
}

/// The three named 2×2 functionals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "param", rename_all = "snake_case")]
pub enum Functional {
    /// `a₃ − γa₂²`
    FeketeSzego(f64),
    /// `a₂a₄ − αa₃²`
    H2_2(f64),
    /// `a₂a₃ − βa₄`
    B2_1(f64),
}

impl Functional {
    pub fn param(&self) -> f64 {
        match *self {
            Functional::FeketeSzego(p) | Functional::H2_2(p) | Functional::B2_1(p) => p,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Functional::FeketeSzego(_) => "fekete_szego",
            Functional::H2_2(_) => "h2_2",
            Functional::B2_1(_) => "b2_1",
        }
    }
}

/// Evaluates a 2×2 functional.
///
/// `B2_1` keeps the `a₂a₃ − βa₄` sign convention; the literal block
/// determinant `det[[1, a₂], [a₃, βa₄]]` is its negative.
pub fn functional_eval(f: &StarlikeCoeffs, which: Functional) -> Result<Complex64> {
    f.require(4)?;
    let a = |k: usize| f.a(k).expect("checked by require");
    Ok(match which {
        Functional::FeketeSzego(g) => a(3) - g * a(2) * a(2),
        Functional::H2_2(al) => a(2) * a(4) - al * a(3) * a(3),
        Functional::B2_1(b) => a(2) * a(3) - b * a(4),
    })
}

/// Ratios `γ = λ₂/λ₁`, `α = λ₃/λ₂`, `β = λ₁/λ₃`.
pub fn lambda_ratios(l1: f64, l2: f64, l3: f64) -> Result<(f64, f64, f64)> {
    if l1 == 0.0 || l2 == 0.0 || l3 == 0.0 {
        return Err(Error::RatioUndefined);
    }
    Ok((l2 / l1, l3 / l2, l1 / l3))
}

/// `λ₂a₃(a₂a₄ − αa₃²) + λ₃a₄(a₂a₃ − βa₄) + λ₁a₅(a₃ − γa₂²)`.
pub fn h3_expand(f: &StarlikeCoeffs, l1: f64, l2: f64, l3: f64) -> Result<Complex64> {
    let (gamma, alpha, beta) = lambda_ratios(l1, l2, l3)?;
    f.require(5)?;
    let a = |k: usize| f.a(k).expect("checked by require");
    Ok(l2 * a(3) * functional_eval(f, Functional::H2_2(alpha))?
        + l3 * a(4) * functional_eval(f, Functional::B2_1(beta))?
        + l1 * a(5) * functional_eval(f, Functional::FeketeSzego(gamma))?)
}

/// Per-term moduli of the decomposition; their sum bounds `|h3_expand|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleTerms {
    pub fekete_szego: f64,
    pub h2_2: f64,
    pub b2_1: f64,
}

impl TriangleTerms {
    pub fn total(&self) -> f64 {
        self.fekete_szego + self.h2_2 + self.b2_1
    }
}

pub fn triangle_terms(f: &StarlikeCoeffs, l1: f64, l2: f64, l3: f64) -> Result<TriangleTerms> {
    let (gamma, alpha, beta) = lambda_ratios(l1, l2, l3)?;
    f.require(5)?;
    let a = |k: usize| f.a(k).expect("checked by require").norm();
    Ok(TriangleTerms {
        fekete_szego: l1.abs() * a(5) * functional_eval(f, Functional::FeketeSzego(gamma))?.norm(),
        h2_2: l2.abs() * a(3) * functional_eval(f, Functional::H2_2(alpha))?.norm(),
        b2_1: l3.abs() * a(4) * functional_eval(f, Functional::B2_1(beta))?.norm(),
    })
}

/// `λ₁|a₅||a₃ − γa₂²| + λ₂|a₃||a₂a₄ − αa₃²| + λ₃|a₄||a₂a₃ − βa₄|`.
pub fn triangle_rhs(f: &StarlikeCoeffs, l1: f64, l2: f64, l3: f64) -> Result<f64> {
    triangle_terms(f, l1, l2, l3).map(|t| t.total())
}
