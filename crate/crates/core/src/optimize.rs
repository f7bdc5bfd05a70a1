//! Derivative-free maximization: golden-section line search and cyclic
//! coordinate ascent built on it.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Bracket width at which golden-section stops.
pub const GOLDEN_TOL: f64 = 1e-10;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Returns `(x_max, f_max)`. Exact for unimodal `f`; otherwise a local maximum.
pub fn golden_section_max(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Per-coordinate search interval around the current point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinateBox {
    pub radius: f64,
    /// Hard limits; `None` leaves the coordinate unbounded.
    pub clamp: Option<(f64, f64)>,
}

impl CoordinateBox {
    pub fn free(radius: f64) -> Self {
        Self { radius, clamp: None }
    }

    pub fn clamped(radius: f64, lo: f64, hi: f64) -> Self {
        Self { radius, clamp: Some((lo, hi)) }
    }

    fn interval(&self, x: f64) -> (f64, f64) {
        let (mut lo, mut hi) = (x - self.radius, x + self.radius);
        if let Some((a, b)) = self.clamp {
            lo = lo.max(a);
            hi = hi.min(b);
        }
        (lo, hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AscentResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub cycles: usize,
}

/// Cyclic coordinate ascent: each coordinate in turn is line-searched by
/// golden section over its box, and the move is kept only if it improves.
/// Stops after a full cycle gains less than `tol`, or after `max_cycles`.
pub fn coordinate_ascent(
    mut f: impl FnMut(&[f64]) -> f64,
    start: Vec<f64>,
    boxes: &[CoordinateBox],
    max_cycles: usize,
    tol: f64,
) -> AscentResult {
    assert_eq!(start.len(), boxes.len(), "one box per coordinate");
    let mut x = start;
    let mut value = f(&x);
    let mut cycles = 0;
    while cycles < max_cycles {
        cycles += 1;
        let before = value;
        for i in 0..x.len() {
            let (lo, hi) = boxes[i].interval(x[i]);
            if hi <= lo {
                continue;
            }
            let keep = x[i];
            let mut probe = x.clone();
            let (xi, fi) = golden_section_max(
                |t| {
                    probe[i] = t;
                    f(&probe)
                },
                lo,
                hi,
                GOLDEN_TOL,
            );
            if fi > value {
                x[i] = xi;
                value = fi;
            } else {
                x[i] = keep;
            }
        }
        if value - before < tol {
            break;
        }
    }
    AscentResult { x, value, cycles }
}
