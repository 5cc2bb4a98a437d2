//! Adaptive Gauss-Kronrod quadrature.
//!
//! A 7-point Gauss / 15-point Kronrod pair drives a worst-segment-first
//! refinement queue. Every integral in the crate that is not a plain
//! trapezoid rule goes through here, so error reporting is uniform:
//! callers get the achieved absolute-error estimate back and a
//! `Error::Quadrature` when the segment budget runs out first.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Kronrod abscissae on [-1, 1]; the odd-indexed entries are the embedded
/// Gauss points, the last entry is the centre.
const XGK: [f64; 8] = [
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
    0.0,
];

const WGK: [f64; 8] = [
    0.0229353220105292,
    0.0630920926299785,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
    0.2094821410847278,
];

const WG: [f64; 4] = [
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
];

/// Value plus an absolute-error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Quad {
    pub value: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One Gauss-Kronrod pass over [a, b].
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);

    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        fv1[j] = f(centre - half * XGK[j]);
        fv2[j] = f(centre + half * XGK[j]);
    }

    let mut resg = WG[3] * fc;
    for (gi, &j) in [1usize, 3, 5].iter().enumerate() {
        resg += WG[gi] * (fv1[j] + fv2[j]);
    }
    let mut resk = WGK[7] * fc;
    let mut resabs = WGK[7] * fc.abs();
    for j in 0..7 {
        resk += WGK[j] * (fv1[j] + fv2[j]);
        resabs += WGK[j] * (fv1[j].abs() + fv2[j].abs());
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }

    let value = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (1.0f64).min((200.0 * error / resasc).powf(1.5));
    }
    let round = f64::EPSILON * 50.0 * resabs;
    if round > error {
        error = round;
    }
    if !value.is_finite() || !error.is_finite() {
        // NaN or overflow inside the segment: force it to the top of the
        // refinement queue so the budget check reports it.
        return Segment {
            a,
            b,
            value: if value.is_finite() { value } else { 0.0 },
            error: f64::INFINITY,
        };
    }
    Segment { a, b, value, error }
}

const MAX_SEGMENTS: usize = 2000;

/// Integrate `f` over [a, b] to absolute tolerance `tol`.
pub(crate) fn adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<Quad> {
    adaptive_pts(f, &[a, b], tol)
}

/// Integrate `f` over [pts[0], pts[last]] with the interior points used as
/// initial segment boundaries (breakpoints at known kinks or peaks).
pub(crate) fn adaptive_pts(f: impl Fn(f64) -> f64, pts: &[f64], tol: f64) -> Result<Quad> {
    assert!(pts.len() >= 2, "need at least two breakpoints");
    assert!(tol > 0.0, "tolerance must be positive");

    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    for w in pts.windows(2) {
        debug_assert!(w[0] <= w[1], "breakpoints must be sorted");
        let seg = gk15(&f, w[0], w[1]);
        value += seg.value;
        error += seg.error;
        heap.push(seg);
    }

    let mut used = heap.len();
    while error > tol && used < MAX_SEGMENTS {
        let worst = heap.pop().expect("heap cannot be empty here");
        if worst.error == 0.0 {
            heap.push(worst);
            break;
        }
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Interval no longer splittable in f64; keep its estimate.
            value += 0.0;
            error -= worst.error;
            let mut dead = worst;
            dead.error = 0.0;
            heap.push(dead);
            continue;
        }
        let left = gk15(&f, worst.a, mid);
        let right = gk15(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        used += 1;
    }

    if !(error <= tol) {
        return Err(Error::Quadrature {
            achieved: error,
            requested: tol,
        });
    }
    Ok(Quad {
        value,
        abs_error: error,
    })
}
