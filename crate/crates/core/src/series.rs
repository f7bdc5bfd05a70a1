//! Truncated Taylor series over complex coefficients.
//!
//! A [`TaylorCoeffs`] of order `N` holds the coefficients of `z^0..=z^N`.
//! Everything downstream (Carathéodory coefficients, starlike lifts, the
//! catalog) is built from these few dense operations.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorCoeffs {
    coeffs: Vec<Complex64>,
}

impl TaylorCoeffs {
    /// Wraps a dense coefficient vector; `coeffs[k]` multiplies `z^k`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::NoTerms);
        }
        if let Some(k) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0); order + 1] }
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn get(&self, k: usize) -> Option<Complex64> {
        self.coeffs.get(k).copied()
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        self.require(order)?;
        Ok(Self { coeffs: self.coeffs[..=order].to_vec() })
    }

    /// Shifts every coefficient up by `by` powers of `z`, keeping the order.
    pub fn shift_up(&self, by: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        if by < n {
            out[by..].copy_from_slice(&self.coeffs[..n - by]);
        }
        Self { coeffs: out }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    fn require(&self, order: usize) -> Result<()> {
        if self.order() < order {
            Err(Error::InsufficientOrder { have: self.order(), need: order })
        } else {
            Ok(())
        }
    }
}

/// Coefficient-wise linear combination `Σ scalar_i · series_i`, truncated to `order`.
pub fn series_lincomb(terms: &[(Complex64, &TaylorCoeffs)], order: usize) -> Result<TaylorCoeffs> {
    if terms.is_empty() {
        return Err(Error::NoTerms);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
    for (scalar, series) in terms {
        series.require(order)?;
        for (o, c) in out.iter_mut().zip(series.coeffs()) {
            *o += scalar * c;
        }
    }
    TaylorCoeffs::new(out)
}

/// Cauchy product truncated to `order`.
pub fn series_mul(a: &TaylorCoeffs, b: &TaylorCoeffs, order: usize) -> Result<TaylorCoeffs> {
    a.require(order)?;
    b.require(order)?;
    let (a, b) = (a.coeffs(), b.coeffs());
    let out = (0..=order).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect();
    TaylorCoeffs::new(out)
}

/// Generalized binomial coefficient `p(p-1)…(p-m+1)/m!`, built as a running product.
pub fn binom(p: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, j| acc * (p - j as f64) / (j + 1) as f64)
}

/// Coefficients of `(1 - u z^k)^p` up to `z^order`.
pub fn series_binomial_pow(u: Complex64, k: usize, p: f64, order: usize) -> Result<TaylorCoeffs> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
    let neg_u = -u;
    // running products for (-u)^m and binom(p, m)
    let mut power = Complex64::new(1.0, 0.0);
    let mut b = 1.0;
    for m in 0..=order / k {
        out[k * m] = power * b;
        power *= neg_u;
        b *= (p - m as f64) / (m + 1) as f64;
    }
    TaylorCoeffs::new(out)
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    k: usize,
    re: f64,
    im: f64,
}

/// Writes the `k,re,im` coefficient CSV.
pub fn write_coeff_csv<W: Write>(series: &TaylorCoeffs, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    for (k, c) in series.coeffs().iter().enumerate() {
        w.serialize(CsvRow { k, re: c.re, im: c.im }).map_err(|e| Error::Csv(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// Reads the `k,re,im` coefficient CSV. Rows must cover `0..=N` exactly once, in any order.
pub fn read_coeff_csv<R: Read>(input: R) -> Result<TaylorCoeffs> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = r.headers().map_err(|e| Error::Csv(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["k", "re", "im"] {
        return Err(Error::Csv(format!(
            "expected header `k,re,im`, got `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut slots: Vec<Option<Complex64>> = Vec::new();
    for row in r.deserialize::<CsvRow>() {
        let row = row.map_err(|e| Error::Csv(e.to_string()))?;
        if row.k >= slots.len() {
            slots.resize(row.k + 1, None);
        }
        if slots[row.k].replace(Complex64::new(row.re, row.im)).is_some() {
            return Err(Error::Csv(format!("duplicate index k={}", row.k)));
        }
    }
    let coeffs = slots
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.ok_or_else(|| Error::Csv(format!("missing index k={k}"))))
        .collect::<Result<Vec<_>>>()?;
    TaylorCoeffs::new(coeffs)
}
