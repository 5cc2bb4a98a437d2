//! The composite subordinator, its inverse, and their transforms.
//!
//! `Hcal^nu(s) = H1^{2nu}(s) + (2 lambda)^{1/nu} H2^nu(s)` adds two
//! independent one-sided stable subordinators; `Lcal^nu(t) =
//! inf{s : Hcal^nu(s) >= t}` is its first-passage inverse. At `nu = 1/2`
//! the first component degenerates to a unit drift, `Lcal` lives on
//! `(0, t)` with a two-term closed-form density, and sampling is exact
//! by CDF inversion. At `nu = 1/3` the densities are Airy-based
//! convolutions; other orders ride on the slow series oracle for `h_nu`.
//!
//! The x-Laplace transform of the inverse density,
//! `(1/2)[(1 + lambda/s) E_{nu,1}(r1 t^nu) + (1 - lambda/s) E_{nu,1}(r2 t^nu)]`
//! with `s = sqrt(lambda^2 - gamma)`, `r12 = -lambda +- s`, is implemented
//! on its real branch `gamma < lambda^2`.

use std::f64::consts::PI;

use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use statrs::function::erf::erf_inv;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::quad;
use crate::rng::{chunk_rng, salt, sample_flat};
use crate::specfun::{self, MlOrder};
use crate::stable::{self, SampleBatch};

const MAX_WALKER_STEPS: usize = 131_072;

/// Composite subordinator parameters: fractional order and switch rate.
#[derive(Clone, Copy, Debug)]
pub struct CompositeSpec {
    nu: f64,
    lambda: f64,
}

impl CompositeSpec {
    pub fn new(nu: f64, lambda: f64) -> Self {
        assert!(nu > 0.0 && nu <= 0.5, "order must lie in (0, 1/2]");
        assert!(lambda > 0.0, "rate must be positive");
        Self { nu, lambda }
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn is_half(&self) -> bool {
        (self.nu - 0.5).abs() < 1e-12
    }

    fn is_third(&self) -> bool {
        (self.nu - 1.0 / 3.0).abs() < 1e-12
    }
}

/// A subordinator path tabulated on a uniform grid.
#[derive(Clone, Debug)]
pub struct PathGrid {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl PathGrid {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Self {
        assert!(times.len() == values.len() && !times.is_empty());
        assert!(times[0] == 0.0 && values[0] >= 0.0);
        assert!(times.windows(2).all(|w| w[0] < w[1]), "times must increase");
        assert!(
            values.windows(2).all(|w| w[0] <= w[1]),
            "subordinator paths are non-decreasing"
        );
        Self { times, values }
    }
}

/// One evaluated point of a Laplace-domain formula.
#[derive(Clone, Copy, Debug)]
pub struct LaplacePair {
    pub gamma_or_mu: f64,
    pub value: f64,
}

/// `Hcal^nu` increments over one grid step: a drift step at `nu = 1/2`,
/// otherwise a stable `2nu` increment, plus the weighted `nu` increment.
pub(crate) struct IncrementGen {
    nu: f64,
    drift: bool,
    a1: f64,
    a2: f64,
}

impl IncrementGen {
    pub(crate) fn new(spec: CompositeSpec, ds: f64) -> Self {
        let drift = spec.is_half();
        IncrementGen {
            nu: spec.nu,
            drift,
            a1: if drift {
                ds
            } else {
                ds.powf(0.5 / spec.nu)
            },
            a2: (2.0 * spec.lambda * ds).powf(1.0 / spec.nu),
        }
    }

    fn next(&self, rng: &mut ChaCha8Rng) -> f64 {
        let first = if self.drift {
            self.a1
        } else {
            self.a1 * stable::kanter_std(rng, 2.0 * self.nu)
        };
        first + self.a2 * stable::kanter_std(rng, self.nu)
    }
}

/// Sample `Hcal^nu` on the grid `{0, ds, 2ds, ...}` covering `[0, s_max]`
/// by independent stationary increments.
pub fn composite_path(spec: CompositeSpec, s_max: f64, ds: f64, seed: u64) -> PathGrid {
    assert!(ds > 0.0 && s_max >= ds, "need ds > 0 and s_max >= ds");
    let steps = (s_max / ds).ceil() as usize;
    let gen = IncrementGen::new(spec, ds);
    let mut rng = chunk_rng(seed, salt::PATH, 0);
    let mut times = Vec::with_capacity(steps + 1);
    let mut values = Vec::with_capacity(steps + 1);
    times.push(0.0);
    values.push(0.0);
    let mut v = 0.0;
    for k in 1..=steps {
        v += gen.next(&mut rng);
        times.push(k as f64 * ds);
        values.push(v);
    }
    PathGrid::new(times, values)
}

/// Exact draw of `Lcal^{1/2}(t)` by inverting
/// `P(Lcal <= x) = erf(lambda x / sqrt(t - x))`.
pub(crate) fn inverse_half_draw(rng: &mut ChaCha8Rng, lambda: f64, t: f64) -> f64 {
    let u = loop {
        let u = rng.random::<f64>();
        if u > 0.0 {
            break u;
        }
    };
    let y = erf_inv(u);
    // subtraction-free root of lambda^2 x^2 = y^2 (t - x)
    2.0 * t * y / (y + (y * y + 4.0 * lambda * lambda * t).sqrt())
}

/// Walk a fresh path until it crosses `t`; the crossing is refined by
/// linear interpolation inside the bracketing cell (O(ds) bias). NaN marks
/// a draw whose step budget ran out.
pub(crate) fn inverse_walker_draw(rng: &mut ChaCha8Rng, gen: &IncrementGen, t: f64, ds: f64) -> f64 {
    let mut v_prev = 0.0;
    for step in 0..MAX_WALKER_STEPS {
        let inc = gen.next(rng);
        let v = v_prev + inc;
        if v >= t {
            return step as f64 * ds + ds * (t - v_prev) / inc;
        }
        v_prev = v;
    }
    f64::NAN
}

/// I.i.d. draws of `Lcal^nu(t)`. Exact inverse-CDF sampling at `nu = 1/2`;
/// a grid walker with step `t/2048` otherwise.
pub fn sample_inverse(spec: CompositeSpec, t: f64, count: usize, seed: u64) -> Result<SampleBatch> {
    assert!(t > 0.0, "time must be positive");
    assert!(count >= 1, "count must be at least 1");
    if spec.is_half() {
        let values = sample_flat(count, 1, seed, salt::INVERSE, |rng, out| {
            for v in out.iter_mut() {
                *v = inverse_half_draw(rng, spec.lambda, t);
            }
        });
        return Ok(SampleBatch {
            t,
            seed,
            count,
            dim: 1,
            values,
        });
    }
    sample_inverse_with_step(spec, t, t / 2048.0, count, seed)
}

/// The grid walker at an explicit step, for any order (including 1/2,
/// where it serves as a cross-check of the exact sampler).
pub fn sample_inverse_with_step(
    spec: CompositeSpec,
    t: f64,
    ds: f64,
    count: usize,
    seed: u64,
) -> Result<SampleBatch> {
    assert!(t > 0.0 && ds > 0.0, "time and step must be positive");
    assert!(count >= 1, "count must be at least 1");
    let gen = IncrementGen::new(spec, ds);
    let values = sample_flat(count, 1, seed, salt::INVERSE, |rng, out| {
        for v in out.iter_mut() {
            *v = inverse_walker_draw(rng, &gen, t, ds);
        }
    });
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::ResolutionExhausted);
    }
    Ok(SampleBatch {
        t,
        seed,
        count,
        dim: 1,
        values,
    })
}

/// `l_{1/2}(v, tau) = e^{-v^2/4tau} / sqrt(pi tau)`; the half case of the
/// boundary identity, kept for the cross-checks
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn l_half(v: f64, tau: f64) -> f64 {
    (-v * v / (4.0 * tau)).exp() / (PI * tau).sqrt()
}

/// `l_{1/3}(v, tau) = 3^{2/3} tau^{-1/3} Ai(v / (3 tau)^{1/3})`
pub(crate) fn l_third(v: f64, tau: f64) -> f64 {
    let c = (3.0 * tau).cbrt();
    3.0 / c * specfun::airy_ai(v / c).value
}

/// `l_{2/3}(v, tau) = (3 tau / 2v) h_{2/3}(tau, v)`
pub(crate) fn l_two_thirds(v: f64, tau: f64, tol: f64) -> Result<f64> {
    Ok(1.5 * tau / v * stable::h_two_thirds_tol(tau, v, tol)?)
}

/// Density of `Lcal^nu(t)`.
///
/// `nu = 1/2`: on `0 < x < t`,
/// `[lambda x / sqrt(pi (t-x)^3) + 2 lambda / sqrt(pi (t-x))] e^{-lambda^2 x^2/(t-x)}`
/// and zero elsewhere. `nu = 1/3`: the two-term convolution
/// `int_0^t l_{2/3}(x, t-s) h_{1/3}(s, 2 lambda x) ds
///  + 2 lambda int_0^t l_{1/3}(2 lambda x, s) h_{2/3}(t-s, x) ds`.
/// Other orders use the same convolution over the slow series densities.
///
/// Close to the origin (2 lambda x below 1e-6 t) the evaluation switches to
/// the x -> 0 limit `t^{-2 nu}/Gamma(1-2 nu) + 2 lambda t^{-nu}/Gamma(1-nu)`;
/// the convolution kernels degenerate there and the limit is exact to the
/// accuracy of the neighbouring quadrature values.
pub fn inverse_density(spec: CompositeSpec, x: f64, t: f64) -> Result<f64> {
    assert!(x > 0.0 && t > 0.0, "domain is x > 0, t > 0");
    if spec.is_half() {
        if x >= t {
            return Ok(0.0);
        }
        let lam = spec.lambda;
        let tau = t - x;
        let e = (-lam * lam * x * x / tau).exp();
        return Ok((lam * x / (PI * tau * tau * tau).sqrt() + 2.0 * lam / (PI * tau).sqrt()) * e);
    }
    if 2.0 * spec.lambda * x <= 1e-6 * t {
        let (nu, lam) = (spec.nu, spec.lambda);
        return Ok(t.powf(-2.0 * nu) / gamma(1.0 - 2.0 * nu)
            + 2.0 * lam * t.powf(-nu) / gamma(1.0 - nu));
    }
    if spec.is_third() {
        return inverse_density_third(spec.lambda, x, t, 1e-8);
    }
    inverse_density_general(spec, x, t)
}

fn inverse_density_third(lam: f64, x: f64, t: f64, tol: f64) -> Result<f64> {
    let lam2x = 2.0 * lam * x;
    let f1 = |s: f64| {
        if s <= 0.0 || s >= t {
            return 0.0;
        }
        let l = l_two_thirds(x, t - s, 0.01 * tol).map_or(f64::NAN, |v| v);
        l * stable::h_third(s, lam2x)
    };
    let q1 = quad::adaptive_pts(&f1, &[0.0, 0.5 * t, t], tol)?;
    let f2 = |s: f64| {
        if s <= 0.0 || s >= t {
            return 0.0;
        }
        let h = stable::h_two_thirds_tol(t - s, x, 0.01 * tol).map_or(f64::NAN, |v| v);
        l_third(lam2x, s) * h
    };
    let q2 = quad::adaptive_pts(&f2, &[0.0, 0.5 * t, t], tol)?;
    Ok(q1.value + 2.0 * lam * q2.value)
}

/// Density `h_nu` routed through the closed forms where they exist and the
/// series oracle elsewhere; NaN poisons the surrounding quadrature when the
/// series cannot reach quadrature accuracy.
fn h_any(nu: f64, x: f64, t: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if (nu - 0.5).abs() < 1e-12 {
        stable::h_half(x, t)
    } else if (nu - 1.0 / 3.0).abs() < 1e-12 {
        stable::h_third(x, t)
    } else if (nu - 2.0 / 3.0).abs() < 1e-12 {
        stable::h_two_thirds_tol(x, t, 1e-9).map_or(f64::NAN, |v| v)
    } else {
        match stable::subordinator_density_series(nu, x, t) {
            Ok(v) => v,
            Err(Error::Accuracy {
                value, achieved, ..
            }) if achieved < 1e-7 => value,
            Err(_) => f64::NAN,
        }
    }
}

/// `l_nu(v, tau) = (tau / (nu v)) h_nu(tau, v)`
fn l_any(nu: f64, v: f64, tau: f64) -> f64 {
    if tau <= 0.0 {
        return 0.0;
    }
    tau / (nu * v) * h_any(nu, tau, v)
}

fn inverse_density_general(spec: CompositeSpec, x: f64, t: f64) -> Result<f64> {
    let (nu, lam) = (spec.nu, spec.lambda);
    let lam2x = 2.0 * lam * x;
    let f1 = |s: f64| {
        if s <= 0.0 || s >= t {
            return 0.0;
        }
        l_any(2.0 * nu, x, t - s) * h_any(nu, s, lam2x)
    };
    let q1 = quad::adaptive_pts(&f1, &[0.0, 0.5 * t, t], 1e-6)?;
    let f2 = |s: f64| {
        if s <= 0.0 || s >= t {
            return 0.0;
        }
        l_any(nu, lam2x, s) * h_any(2.0 * nu, t - s, x)
    };
    let q2 = quad::adaptive_pts(&f2, &[0.0, 0.5 * t, t], 1e-6)?;
    Ok(q1.value + 2.0 * lam * q2.value)
}

/// x-Laplace transform of the inverse density on the real branch
/// `gamma < lambda^2`.
pub fn inverse_density_laplace(spec: CompositeSpec, gamma: f64, t: f64) -> Result<f64> {
    assert!(t > 0.0, "time must be positive");
    assert!(gamma.is_finite(), "gamma must be finite");
    let lam = spec.lambda;
    if gamma >= lam * lam {
        return Err(Error::Branch);
    }
    if gamma == 0.0 {
        // mass of a probability density
        return Ok(1.0);
    }
    let s = (lam * lam - gamma).sqrt();
    let (r1, r2) = (-lam + s, -lam - s);
    let order = MlOrder::new(spec.nu, 1.0);
    let tn = t.powf(spec.nu);
    let e1 = specfun::mittag_leffler(order, r1 * tn)?.value;
    let e2 = specfun::mittag_leffler(order, r2 * tn)?.value;
    Ok(0.5 * ((1.0 + lam / s) * e1 + (1.0 - lam / s) * e2))
}

/// Density of `Hcal^nu(t)`: supported on `(t, inf)` at `nu = 1/2` where it
/// is the drift-shifted stable density `h_{1/2}((x-t)/4lambda^2, t)/4lambda^2`,
/// and the convolution `int_0^x h_{2nu}(y, t) h_nu(x-y, 2 lambda t) dy`
/// otherwise.
pub fn composite_density(spec: CompositeSpec, x: f64, t: f64) -> Result<f64> {
    assert!(x > 0.0 && t > 0.0, "domain is x > 0, t > 0");
    let lam = spec.lambda;
    if spec.is_half() {
        if x <= t {
            return Ok(0.0);
        }
        let w = 4.0 * lam * lam;
        return Ok(stable::h_half((x - t) / w, t) / w);
    }
    let tol = if spec.is_third() { 1e-8 } else { 1e-6 };
    let lam2t = 2.0 * lam * t;
    let f = |y: f64| {
        if y <= 0.0 || y >= x {
            return 0.0;
        }
        let h2 = if spec.is_third() {
            stable::h_two_thirds_tol(y, t, 0.01 * tol).map_or(f64::NAN, |v| v)
        } else {
            h_any(2.0 * spec.nu, y, t)
        };
        let h1 = if spec.is_third() {
            stable::h_third(x - y, lam2t)
        } else {
            h_any(spec.nu, x - y, lam2t)
        };
        h2 * h1
    };
    let q = quad::adaptive_pts(&f, &[0.0, 0.5 * x, x], tol)?;
    Ok(q.value)
}

/// Time-Laplace transform of the inverse density:
/// `(mu^{2nu-1} + 2 lambda mu^{nu-1}) e^{-x mu^{2nu} - 2 lambda x mu^nu}`.
pub fn lcal_time_laplace(spec: CompositeSpec, x: f64, mu: f64) -> f64 {
    assert!(x > 0.0 && mu > 0.0, "domain is x > 0, mu > 0");
    let (nu, lam) = (spec.nu, spec.lambda);
    let front = mu.powf(2.0 * nu - 1.0) + 2.0 * lam * mu.powf(nu - 1.0);
    front * (-x * (mu.powf(2.0 * nu) + 2.0 * lam * mu.powf(nu))).exp()
}
