//! Closed-form upper bounds over the starlike class, with branch labels.
//!
//! `thm3_bound` carries two forms: the headline `max{1, |9α − 8|}` and the
//! piecewise conclusion. They disagree on `(2/3, 7/9)`; both are reported.

use serde::{Deserialize, Serialize};

use crate::determinants::lambda_ratios;
use crate::error::{Error, Result};

const CONSISTENCY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioParams {
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl RatioParams {
    pub fn from_lambdas(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        let (gamma, alpha, beta) = lambda_ratios(l1, l2, l3)?;
        Ok(Self { gamma, alpha, beta })
    }

    pub fn product(&self) -> f64 {
        self.gamma * self.alpha * self.beta
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: f64,
    pub branch: String,
    pub alt_value: Option<f64>,
    pub consistent: bool,
}

impl BoundValue {
    fn single(value: f64, branch: impl Into<String>) -> Self {
        Self { value, branch: branch.into(), alt_value: None, consistent: true }
    }
}

fn nonneg(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::OutsideHypothesis(format!("{name} = {v} must be a nonnegative real")))
    }
}

/// `|a₃ − γa₂²| ≤ max{1, |4γ − 3|}`.
pub fn thm1_bound(gamma: f64) -> Result<BoundValue> {
    if !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma = {gamma}")));
    }
    let value = 1.0f64.max((4.0 * gamma - 3.0).abs());
    let branch = if (0.5..=1.0).contains(&gamma) { "unit" } else { "koebe" };
    Ok(BoundValue::single(value, branch))
}

/// Piecewise form `6 − 4β`, `2β`, `4β − 6` with its branch label.
pub fn thm2_piecewise(beta: f64) -> (f64, &'static str) {
    if beta < 1.0 {
        (6.0 - 4.0 * beta, "[0,1]")
    } else if beta < 3.0 {
        (2.0 * beta, "[1,3]")
    } else {
        (4.0 * beta - 6.0, "[3,inf)")
    }
}

/// `|a₂a₃ − βa₄| ≤ 2·max{β, |3 − 2β|}`.
pub fn thm2_bound(beta: f64) -> Result<BoundValue> {
    nonneg("beta", beta)?;
    let value = 2.0 * beta.max((3.0 - 2.0 * beta).abs());
    let (piecewise, branch) = thm2_piecewise(beta);
    Ok(BoundValue {
        value,
        branch: branch.into(),
        alt_value: Some(piecewise),
        consistent: (value - piecewise).abs() <= CONSISTENCY_TOL,
    })
}

/// Piecewise form `8 − 9α` on `[0, 2/3]`, `1` on `(2/3, 1]`, `9α − 8` beyond.
pub fn thm3_piecewise(alpha: f64) -> (f64, &'static str) {
    if alpha <= 2.0 / 3.0 {
        (8.0 - 9.0 * alpha, "[0,2/3]")
    } else if alpha <= 1.0 {
        (1.0, "(2/3,1]")
    } else {
        (9.0 * alpha - 8.0, "[1,inf)")
    }
}

/// `|a₂a₄ − αa₃²|`: headline `max{1, |9α − 8|}` as `value`, piecewise as `alt_value`.
pub fn thm3_bound(alpha: f64) -> Result<BoundValue> {
    nonneg("alpha", alpha)?;
    let value = 1.0f64.max((9.0 * alpha - 8.0).abs());
    let (piecewise, branch) = thm3_piecewise(alpha);
    Ok(BoundValue {
        value,
        branch: branch.into(),
        alt_value: Some(piecewise),
        consistent: (value - piecewise).abs() <= CONSISTENCY_TOL,
    })
}

fn max_term(weight: f64, plain: (f64, &str), shifted: (f64, &str)) -> (f64, String) {
    let (v, label) = if plain.0 >= shifted.0.abs() { (plain.0, plain.1) } else { (shifted.0.abs(), shifted.1) };
    (weight * v, format!("{weight}*{label}"))
}

/// `5max{λ₁, |4λ₂ − 3λ₁|} + 8max{λ₁, |3λ₃ − 2λ₁|} + 3max{λ₂, |9λ₃ − 8λ₂|}`.
pub fn thm4_bound(l1: f64, l2: f64, l3: f64) -> Result<BoundValue> {
    nonneg("lambda1", l1)?;
    nonneg("lambda2", l2)?;
    nonneg("lambda3", l3)?;
    let terms = [
        max_term(5.0, (l1, "l1"), (4.0 * l2 - 3.0 * l1, "|4l2-3l1|")),
        max_term(8.0, (l1, "l1"), (3.0 * l3 - 2.0 * l1, "|3l3-2l1|")),
        max_term(3.0, (l2, "l2"), (9.0 * l3 - 8.0 * l2, "|9l3-8l2|")),
    ];
    let value = terms.iter().map(|t| t.0).sum();
    let branch = terms.iter().map(|t| t.1.as_str()).collect::<Vec<_>>().join(" + ");
    Ok(BoundValue::single(value, branch))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corollary4Row {
    pub lambdas: [f64; 3],
    pub printed: f64,
    pub recomputed: f64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Reference constants for eight weight triples.
pub const COROLLARY4_PRINTED: [([f64; 3], f64); 8] = [
    ([1.0, 1.0, 1.0], 16.0),
    ([1.0, 1.0, 2.0], 81.0),
    ([1.0, 2.0, 1.0], 51.5),
    ([2.0, 1.0, 1.0], 29.0),
    ([1.0, 2.0, 2.0], 63.0),
    ([2.0, 1.0, 2.0], 78.0),
    ([2.0, 2.0, 1.0], 52.5),
    ([1.0, 3.0, 2.0], 105.0),
];

/// Reference constants next to the values the three-term formula actually gives.
pub fn corollary4_table() -> Vec<Corollary4Row> {
    COROLLARY4_PRINTED
        .iter()
        .map(|&(lambdas, printed)| {
            let recomputed =
                thm4_bound(lambdas[0], lambdas[1], lambdas[2]).expect("reference triples are nonnegative").value;
            Corollary4Row { lambdas, printed, recomputed, matches: printed == recomputed }
        })
        .collect()
}
