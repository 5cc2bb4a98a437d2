//! Time-changed compositions and their laws.
//!
//! The central object is `W_n(t) = S_n^{2 beta}(c^2 Lcal^nu(t))`, an
//! isotropic stable process run on the inverse composite subordinator.
//! Its Fourier transform on the real branch `lambda^2 > c^2 |xi|^{2 beta}`
//! is the two-term Mittag-Leffler expression implemented by `w_char`.
//!
//! At `nu = 1/2` the time change collapses onto reflected Brownian motion:
//! `W_1(t)` has the same law as the telegraph process at Brownian time,
//! `T(|B(t)|)`, with the closed density `w_density_1d_half`; the large
//! `lambda = c^2` limit is the iterated-Brownian-motion density. In the
//! plane the analogues are `q = r * p_|B|` and the odd-variant `q_frak`,
//! whose Fourier transform matches `w_char` with `n = 2`.

use std::f64::consts::PI;

use rand::RngExt;
use rand_distr::{Distribution, StandardNormal};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::quad;
use crate::rng::{salt, sample_flat};
use crate::stable::{self, SampleBatch};
use crate::subord::{self, CompositeSpec, IncrementGen};
use crate::telegraph::{self, PlanarSample, TelegraphSpec};

/// Parameters of the space-time fractional model: time order `nu`, space
/// order `beta`, switch rate `lambda`, speed `c`, dimension `n`.
#[derive(Clone, Debug)]
pub struct ModelParams {
    nu: f64,
    beta: f64,
    lambda: f64,
    c: f64,
    n: usize,
}

impl ModelParams {
    pub fn new(nu: f64, beta: f64, lambda: f64, c: f64, n: usize) -> Self {
        assert!(nu > 0.0 && nu <= 0.5, "time order must lie in (0, 1/2]");
        assert!(beta > 0.0 && beta <= 1.0, "space order must lie in (0, 1]");
        assert!(lambda > 0.0, "rate must be positive");
        assert!(c > 0.0, "speed must be positive");
        assert!(n >= 1, "dimension must be at least 1");
        Self {
            nu,
            beta,
            lambda,
            c,
            n,
        }
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// One evaluated point of a characteristic function.
#[derive(Clone, Debug)]
pub struct CharPoint {
    pub xi: Vec<f64>,
    pub t: f64,
    pub value: f64,
}

/// Characteristic function of `W_n(t)` on the real branch:
/// the x-Laplace transform of the inverse density at
/// `gamma = c^2 |xi|^{2 beta}`.
pub fn w_char(params: &ModelParams, xi: &[f64], t: f64) -> Result<CharPoint> {
    assert!(t > 0.0, "time must be positive");
    assert!(xi.len() == params.n, "xi must have model dimension");
    let norm2: f64 = xi.iter().map(|x| x * x).sum();
    let gamma = params.c * params.c * norm2.powf(params.beta);
    let spec = CompositeSpec::new(params.nu, params.lambda);
    let value = subord::inverse_density_laplace(spec, gamma, t)?;
    Ok(CharPoint {
        xi: xi.to_vec(),
        t,
        value,
    })
}

/// Draws of `W_n(t)`: an inverse-subordinator time `L`, then the isotropic
/// stable value at `c^2 L` by Gaussian subordination.
pub fn sample_w(params: &ModelParams, t: f64, count: usize, seed: u64) -> Result<SampleBatch> {
    assert!(t > 0.0, "time must be positive");
    assert!(count >= 1, "count must be at least 1");
    let n = params.n;
    let half = (params.nu - 0.5).abs() < 1e-12;
    let beta_one = (params.beta - 1.0).abs() < 1e-12;
    let ds = t / 2048.0;
    let gen = IncrementGen::new(CompositeSpec::new(params.nu, params.lambda), ds);
    let c2 = params.c * params.c;
    let values = sample_flat(count, n, seed, salt::W, |rng, out| {
        for row in out.chunks_mut(n) {
            let l = if half {
                subord::inverse_half_draw(rng, params.lambda, t)
            } else {
                subord::inverse_walker_draw(rng, &gen, t, ds)
            };
            if l.is_nan() {
                row.fill(f64::NAN);
                continue;
            }
            let u = c2 * l;
            let s = if beta_one {
                u
            } else {
                u.powf(1.0 / params.beta) * stable::kanter_std(rng, params.beta)
            };
            let sd = (2.0 * s).sqrt();
            for v in row.iter_mut() {
                let z: f64 = StandardNormal.sample(rng);
                *v = sd * z;
            }
        }
    });
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::ResolutionExhausted);
    }
    Ok(SampleBatch {
        t,
        seed,
        count,
        dim: n,
        values,
    })
}

/// Draws of `T(|B(t)|)`: a half-normal time `s = sqrt(2t) |z|`, then a
/// literal telegraph path of that length.
pub fn sample_tb(spec: TelegraphSpec, t: f64, count: usize, seed: u64) -> SampleBatch {
    assert!(t > 0.0, "time must be positive");
    assert!(count >= 1, "count must be at least 1");
    let values = sample_flat(count, 1, seed, salt::TB, |rng, out| {
        let mut epochs = Vec::new();
        for v in out.iter_mut() {
            let z: f64 = StandardNormal.sample(rng);
            let s = (2.0 * t).sqrt() * z.abs();
            *v = if s > 0.0 {
                telegraph::telegraph_draw(rng, spec, s, &mut epochs)
            } else {
                0.0
            };
        }
    });
    SampleBatch {
        t,
        seed,
        count,
        dim: 1,
        values,
    }
}

/// Density of `W_1(t)` at `nu = 1/2, beta = 1`:
/// `(lambda / c pi) int_0^t (s(t-s))^{-1/2}
///   e^{-x^2/4c^2 s - lambda^2 s^2/(t-s)} [s/(2(t-s)) + 1] ds`,
/// integrated in `s = t sin^2(theta)` so both endpoints are tame.
pub fn w_density_1d_half(spec: TelegraphSpec, x: f64, t: f64) -> Result<f64> {
    assert!(t > 0.0, "time must be positive");
    let (lam, c) = (spec.lambda(), spec.c());
    let f = |theta: f64| {
        let s = t * theta.sin().powi(2);
        if s <= 0.0 || s >= t {
            return 0.0;
        }
        let e = (-x * x / (4.0 * c * c * s) - lam * lam * s * s / (t - s)).exp();
        if e == 0.0 {
            return 0.0;
        }
        2.0 * e * (s / (2.0 * (t - s)) + 1.0)
    };
    let q = quad::adaptive_pts(&f, &[0.0, 0.25 * PI, 0.5 * PI], 1e-10)?;
    Ok(lam / (c * PI) * q.value)
}

/// Density of iterated Brownian motion `B_1(|B_2(t)|)`:
/// `(2 / pi sqrt(t)) int_0^inf e^{-x^2/4u^2 - u^4/t} du` after `y = u^2`.
pub fn iterated_bm_density(x: f64, t: f64) -> Result<f64> {
    assert!(t > 0.0, "time must be positive");
    let umax = (45.0 * t).powf(0.25);
    // saddle of the exponent once |x| is large
    let ustar = (x * x * t / 8.0)
        .powf(1.0 / 6.0)
        .clamp(1e-3 * umax, 0.9 * umax.max(2.0 * (x * x * t / 8.0).powf(1.0 / 6.0)));
    let hi = umax.max(2.0 * ustar);
    let f = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        (-x * x / (4.0 * u * u) - u.powi(4) / t).exp()
    };
    let q = quad::adaptive_pts(&f, &[0.0, ustar, hi], 1e-11)?;
    Ok(2.0 / (PI * t.sqrt()) * q.value)
}

fn half_normal_pdf(s: f64, t: f64) -> f64 {
    (-s * s / (4.0 * t)).exp() / (PI * t).sqrt()
}

/// Mass of the composed singular rim: `int_0^inf e^{-lambda s} p_|B|(s, t)
/// ds = e^{lambda^2 t} erfc(lambda sqrt(t))`.
pub fn smear_mass(lambda: f64, t: f64) -> f64 {
    assert!(lambda > 0.0 && t > 0.0, "rate and time must be positive");
    (lambda * lambda * t).exp() * erfc(lambda * t.sqrt())
}

fn compose_upper(rho_over_c: f64, t: f64) -> f64 {
    // covers the half-normal factor down to e^{-45} past the rim
    ((rho_over_c * rho_over_c + 180.0 * t).sqrt() - rho_over_c).sqrt()
}

/// Density of the planar composition `Q(t) = T_planar(|B(t)|)` at a point
/// with radius `rho > 0`; the origin value diverges and is returned as
/// infinity. Integrates `r(rho, s) p_|B|(s, t)` over `s > rho / c` in the
/// rim variable `s = rho/c + u^2`.
pub fn planar_q_density(spec: TelegraphSpec, x: f64, y: f64, t: f64) -> Result<f64> {
    assert!(t > 0.0, "time must be positive");
    let rho = x.hypot(y);
    if rho == 0.0 {
        return Ok(f64::INFINITY);
    }
    let s0 = rho / spec.c();
    let hi = compose_upper(s0, t);
    let f = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let s = s0 + u * u;
        telegraph::planar_pdf(spec, rho, 0.0, s) * half_normal_pdf(s, t) * 2.0 * u
    };
    let q = quad::adaptive_pts(&f, &[0.0, 0.25 * hi, hi], 1e-9)?;
    Ok(q.value)
}

/// Density of the odd-variant planar composition: the kernel of
/// `planar_q_density` with `r_frak` in place of `r` and the extra weight
/// `1 + s / (4 lambda t)` carrying the fractional derivative term. Total
/// mass over the plane is exactly 1; the origin diverges.
pub fn planar_qfrak_density(spec: TelegraphSpec, x: f64, y: f64, t: f64) -> Result<f64> {
    assert!(t > 0.0, "time must be positive");
    let rho = x.hypot(y);
    if rho == 0.0 {
        return Ok(f64::INFINITY);
    }
    let lam = spec.lambda();
    let s0 = rho / spec.c();
    let hi = compose_upper(s0, t);
    let f = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let s = s0 + u * u;
        let w = half_normal_pdf(s, t) * (1.0 + s / (4.0 * lam * t));
        telegraph::planar_frak_pdf(spec, rho, 0.0, s) * w * 2.0 * u
    };
    let q = quad::adaptive_pts(&f, &[0.0, 0.25 * hi, hi], 1e-9)?;
    Ok(q.value)
}

/// Radial CDF of the interior part of `q`, normalized by `1 - smear`.
/// Obtained by integrating the closed CDF of `r` against the half-normal
/// weight (one quadrature per evaluation).
pub fn planar_q_radial_cdf(spec: TelegraphSpec, rho: f64, t: f64) -> Result<f64> {
    assert!(t > 0.0, "time must be positive");
    if rho <= 0.0 {
        return Ok(0.0);
    }
    let (lam, c) = (spec.lambda(), spec.c());
    let s0 = rho / c;
    let shi = (s0 * s0 + 180.0 * t).sqrt();
    let f = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        let interior = if c * s <= rho {
            -(-lam * s).exp_m1()
        } else {
            let g = ((c * s - rho) * (c * s + rho)).sqrt();
            -(lam / c * g - lam * s).exp_m1()
        };
        half_normal_pdf(s, t) * interior
    };
    let q = quad::adaptive_pts(&f, &[0.0, s0, shi], 1e-9)?;
    Ok(q.value / -(smear_mass(lam, t) - 1.0))
}

/// Draws of the planar composition: a half-normal time, then the planar
/// flight over it. A zero switch count lands on the smeared rim at radius
/// `c s` and sets `on_boundary`.
pub fn sample_planar_tb(
    spec: TelegraphSpec,
    t: f64,
    count: usize,
    seed: u64,
) -> Vec<PlanarSample> {
    assert!(t > 0.0, "time must be positive");
    assert!(count >= 1, "count must be at least 1");
    let flat = sample_flat(count, 3, seed, salt::PLANAR_TB, |rng, out| {
        let mut epochs = Vec::new();
        for row in out.chunks_mut(3) {
            let z: f64 = StandardNormal.sample(rng);
            let s = (2.0 * t).sqrt() * z.abs();
            if s == 0.0 {
                row.fill(0.0);
                continue;
            }
            let n = telegraph::poisson_count(rng, spec.lambda() * s);
            if n == 0 {
                let th = 2.0 * PI * rng.random::<f64>();
                row[0] = spec.c() * s * th.cos();
                row[1] = spec.c() * s * th.sin();
                row[2] = 1.0;
            } else {
                let (x, y) = telegraph::planar_flight(rng, spec, s, n, &mut epochs);
                row[0] = x;
                row[1] = y;
                row[2] = 0.0;
            }
        }
    });
    flat.chunks(3)
        .map(|row| PlanarSample {
            x: row[0],
            y: row[1],
            on_boundary: row[2] == 1.0,
            defect: false,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Reference values computed with mpmath (tools/oracles/telegraph_compose_values.py)

    #[test]
    fn w_char_reference_values() {
        let p = ModelParams::new(0.5, 1.0, 1.0, 1.0, 1);
        assert_abs_diff_eq!(
            w_char(&p, &[0.5], 1.0).unwrap().value,
            0.91110925586713154,
            epsilon = 1e-12
        );
        let p2 = ModelParams::new(0.5, 1.0, 2.0, 1.0, 1);
        assert_abs_diff_eq!(
            w_char(&p2, &[0.5], 1.0).unwrap().value,
            0.94519206427155794,
            epsilon = 1e-12
        );
        for t in [0.3f64, 1.0, 5.0] {
            assert_eq!(w_char(&p, &[0.0], t).unwrap().value, 1.0);
        }
        assert!(matches!(w_char(&p, &[1.0], 1.0), Err(Error::Branch)));
        assert!(matches!(w_char(&p, &[3.0], 1.0), Err(Error::Branch)));
    }

    #[test]
    fn w_char_depends_on_xi_through_the_norm() {
        let p = ModelParams::new(0.4, 0.8, 2.0, 1.0, 2);
        let a = w_char(&p, &[0.3, 0.4], 1.0).unwrap().value;
        let b = w_char(&p, &[0.5, 0.0], 1.0).unwrap().value;
        assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        assert!(a > 0.0 && a <= 1.0);
    }

    #[test]
    fn w_char_non_increasing_in_time() {
        for (nu, beta, lam) in [(0.5f64, 1.0f64, 1.0f64), (0.4, 0.7, 1.5), (1.0 / 3.0, 1.0, 2.0)]
        {
            let p = ModelParams::new(nu, beta, lam, 1.0, 1);
            let mut prev = 1.0;
            for t in [0.25f64, 0.5, 1.0, 2.0, 4.0] {
                let v = w_char(&p, &[0.5], t).unwrap().value;
                assert!(v <= prev + 1e-12, "t={t}: {v} > {prev}");
                assert!(v > 0.0 && v <= 1.0);
                prev = v;
            }
        }
    }

    #[test]
    fn w_density_reference_values() {
        let spec = TelegraphSpec::new(1.0, 1.0);
        let cases = [
            (0.0, 0.62896791339181212),
            (0.5, 0.37426510018423058),
            (1.2, 0.14382523040106927),
        ];
        for (x, want) in cases {
            assert_abs_diff_eq!(w_density_1d_half(spec, x, 1.0).unwrap(), want, epsilon = 1e-9);
        }
        let spec2 = TelegraphSpec::new(2.0, 1.0);
        assert_abs_diff_eq!(
            w_density_1d_half(spec2, 0.5, 1.0).unwrap(),
            0.39752640440255213,
            epsilon = 1e-9
        );
        // evenness: x enters only squared
        assert_eq!(
            w_density_1d_half(spec, 0.7, 1.0).unwrap(),
            w_density_1d_half(spec, -0.7, 1.0).unwrap()
        );
    }

    #[test]
    fn w_density_normalizes_and_matches_char() {
        let spec = TelegraphSpec::new(1.0, 1.0);
        let mass = quad::adaptive_pts(
            |x| w_density_1d_half(spec, x, 1.0).unwrap_or(f64::NAN),
            &[0.0, 1.0, 4.0, 12.0],
            1e-9,
        )
        .unwrap();
        assert_abs_diff_eq!(2.0 * mass.value, 1.0, epsilon = 1e-7);
        // Fourier transform against the Mittag-Leffler form, two branches
        // of parameters
        for (lam, xi) in [(1.0f64, 0.5f64), (2.0, 1.0)] {
            let spec = TelegraphSpec::new(lam, 1.0);
            let p = ModelParams::new(0.5, 1.0, lam, 1.0, 1);
            let ft = quad::adaptive_pts(
                |x| (xi * x).cos() * w_density_1d_half(spec, x, 1.0).unwrap_or(f64::NAN),
                &[0.0, 1.0, 4.0, 12.0],
                1e-9,
            )
            .unwrap();
            let want = w_char(&p, &[xi], 1.0).unwrap().value;
            assert_abs_diff_eq!(2.0 * ft.value, want, epsilon = 1e-7);
        }
    }

    #[test]
    fn ibm_reference_values() {
        let cases = [
            (0.0, 0.57703373861646969),
            (0.5, 0.3424627355362051),
            (1.0, 0.19166522116514657),
        ];
        for (x, want) in cases {
            assert_abs_diff_eq!(iterated_bm_density(x, 1.0).unwrap(), want, epsilon = 1e-9);
        }
        assert_eq!(
            iterated_bm_density(0.8, 2.0).unwrap(),
            iterated_bm_density(-0.8, 2.0).unwrap()
        );
        let mass = quad::adaptive_pts(
            |x| iterated_bm_density(x, 1.0).unwrap_or(f64::NAN),
            &[0.0, 1.0, 4.0, 12.0, 20.0],
            1e-10,
        )
        .unwrap();
        assert_abs_diff_eq!(2.0 * mass.value, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn ibm_is_the_large_rate_limit_of_w() {
        let x = 0.5;
        let target = iterated_bm_density(x, 1.0).unwrap();
        let mut prev = f64::INFINITY;
        for k in [4.0f64, 16.0, 64.0] {
            let spec = TelegraphSpec::new(k, k.sqrt());
            let gap = (w_density_1d_half(spec, x, 1.0).unwrap() - target).abs();
            assert!(gap < prev, "K={k}: gap {gap} vs {prev}");
            prev = gap;
        }
        assert!(prev <= 5e-3);
    }

    #[test]
    fn q_reference_values() {
        let spec = TelegraphSpec::new(1.0, 1.0);
        assert_abs_diff_eq!(
            planar_q_density(spec, 0.3, 0.4, 1.0).unwrap(),
            0.12605469896276534,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            planar_q_density(spec, 1.0, 0.0, 1.0).unwrap(),
            0.052074673217464903,
            epsilon = 1e-9
        );
        // radial symmetry and full-plane support
        assert_abs_diff_eq!(
            planar_q_density(spec, 0.5, 0.0, 1.0).unwrap(),
            planar_q_density(spec, 0.0, -0.5, 1.0).unwrap(),
            epsilon = 1e-12
        );
        assert!(planar_q_density(spec, 2.5, 0.0, 1.0).unwrap() > 0.0);
        assert_eq!(planar_q_density(spec, 0.0, 0.0, 1.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn qfrak_reference_values() {
        let spec = TelegraphSpec::new(1.0, 1.0);
        let cases = [
            (0.3, 0.4, 0.20944699727439664),
            (0.7, 0.0, 0.14888330426470661),
            (1.2, 0.0, 0.06340939601424619),
        ];
        for (x, y, want) in cases {
            assert_abs_diff_eq!(
                planar_qfrak_density(spec, x, y, 1.0).unwrap(),
                want,
                epsilon = 1e-9
            );
        }
        assert_eq!(
            planar_qfrak_density(spec, 0.0, 0.0, 1.0).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn smear_reference_value() {
        // the erfc in statrs is only good to ~1e-11
        assert_abs_diff_eq!(smear_mass(1.0, 1.0), 0.427583576155807, epsilon = 1e-9);
    }

    #[test]
    fn q_cdf_consistent_with_density() {
        let spec = TelegraphSpec::new(1.0, 1.0);
        for rho in [0.4f64, 1.0, 2.0] {
            let by_density = quad::adaptive_pts(
                |r| {
                    if r <= 0.0 {
                        return 0.0;
                    }
                    2.0 * PI * r * planar_q_density(spec, r, 0.0, 1.0).unwrap_or(f64::NAN)
                },
                &[0.0, 0.5 * rho, rho],
                1e-8,
            )
            .unwrap()
            .value
                / (1.0 - smear_mass(1.0, 1.0));
            let direct = planar_q_radial_cdf(spec, rho, 1.0).unwrap();
            assert_abs_diff_eq!(by_density, direct, epsilon = 1e-6);
        }
    }

    #[test]
    fn sample_w_symmetry_and_reproducibility() {
        let p = ModelParams::new(0.5, 1.0, 1.0, 1.0, 2);
        let n = 20_000usize;
        let batch = sample_w(&p, 1.0, n, 3).unwrap();
        assert_eq!(batch.dim, 2);
        for d in 0..2 {
            let mut mean = 0.0;
            let mut m2 = 0.0;
            for i in 0..n {
                let v = batch.values[i * 2 + d];
                mean += v;
                m2 += v * v;
            }
            mean /= n as f64;
            m2 /= n as f64;
            assert!(mean.abs() < 4.0 * (m2 / n as f64).sqrt(), "dim {d}");
        }
        let again = sample_w(&p, 1.0, 200, 3).unwrap();
        assert_eq!(&batch.values[..400], &again.values[..400]);
    }

    #[test]
    fn sample_w_walker_order() {
        let p = ModelParams::new(1.0 / 3.0, 1.0, 1.0, 1.0, 1);
        let batch = sample_w(&p, 1.0, 300, 5).unwrap();
        assert!(batch.values.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn sample_w_matches_char() {
        let p = ModelParams::new(0.5, 1.0, 2.0, 1.0, 1);
        let n = 40_000usize;
        let batch = sample_w(&p, 1.0, n, 11).unwrap();
        for xi in [0.5f64, 1.0] {
            let mut mean = 0.0;
            let mut m2 = 0.0;
            for &x in &batch.values {
                let c = (xi * x).cos();
                mean += c;
                m2 += c * c;
            }
            mean /= n as f64;
            m2 /= n as f64;
            let se = ((m2 - mean * mean) / n as f64).sqrt();
            let want = w_char(&p, &[xi], 1.0).unwrap().value;
            assert!((mean - want).abs() < 4.0 * se, "xi={xi}: {mean} vs {want}");
        }
    }

    #[test]
    fn sample_w_fractional_beta_matches_char() {
        let p = ModelParams::new(0.5, 0.5, 2.0, 1.0, 1);
        let n = 40_000usize;
        let batch = sample_w(&p, 1.0, n, 13).unwrap();
        let xi = 0.5f64;
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for &x in &batch.values {
            let c = (xi * x).cos();
            mean += c;
            m2 += c * c;
        }
        mean /= n as f64;
        m2 /= n as f64;
        let se = ((m2 - mean * mean) / n as f64).sqrt();
        let want = w_char(&p, &[xi], 1.0).unwrap().value;
        assert!((mean - want).abs() < 4.0 * se, "{mean} vs {want}");
    }

    #[test]
    fn sample_tb_matches_char_and_variance() {
        let spec = TelegraphSpec::new(1.0, 1.0);
        let p = ModelParams::new(0.5, 1.0, 1.0, 1.0, 1);
        let n = 40_000usize;
        let batch = sample_tb(spec, 1.0, n, 17);
        let xi = 0.5f64;
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for &x in &batch.values {
            let c = (xi * x).cos();
            mean += c;
            m2 += c * c;
        }
        mean /= n as f64;
        m2 /= n as f64;
        let se = ((m2 - mean * mean) / n as f64).sqrt();
        let want = w_char(&p, &[xi], 1.0).unwrap().value;
        assert!((mean - want).abs() < 4.0 * se, "{mean} vs {want}");

        let want_var = 2.0
            * quad::adaptive_pts(
                |x| x * x * w_density_1d_half(spec, x, 1.0).unwrap_or(f64::NAN),
                &[0.0, 1.0, 4.0, 14.0],
                1e-9,
            )
            .unwrap()
            .value;
        let m2 = batch.values.iter().map(|x| x * x).sum::<f64>() / n as f64;
        let m4 = batch.values.iter().map(|x| x.powi(4)).sum::<f64>() / n as f64;
        let se_var = ((m4 - m2 * m2) / n as f64).sqrt();
        assert!((m2 - want_var).abs() < 3.0 * se_var, "{m2} vs {want_var}");
    }

    fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> (f64, f64) {
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let (n1, n2) = (a.len(), b.len());
        let mut i = 0;
        let mut j = 0;
        let mut d = 0.0f64;
        while i < n1 && j < n2 {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            d = d.max((i as f64 / n1 as f64 - j as f64 / n2 as f64).abs());
        }
        let crit = 1.6276236115189504 * ((n1 + n2) as f64 / (n1 * n2) as f64).sqrt();
        (d, crit)
    }

    #[test]
    fn w_and_tb_share_a_law() {
        let spec = TelegraphSpec::new(1.0, 1.0);
        let p = ModelParams::new(0.5, 1.0, 1.0, 1.0, 1);
        let mut a = sample_w(&p, 1.0, 20_000, 23).unwrap().values;
        let mut b = sample_tb(spec, 1.0, 20_000, 29).values;
        let (d, crit) = ks_two_sample(&mut a, &mut b);
        assert!(d < crit, "KS {d} vs {crit}");
    }

    #[test]
    fn planar_tb_sampler_law() {
        let spec = TelegraphSpec::new(1.0, 1.0);
        let t = 1.0;
        let n = 20_000usize;
        let samples = sample_planar_tb(spec, t, n, 31);
        let p = smear_mass(spec.lambda(), t);
        let rim = samples.iter().filter(|s| s.on_boundary).count() as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!((rim / n as f64 - p).abs() < 3.0 * se, "{} vs {p}", rim / n as f64);

        let mut radii: Vec<f64> = samples
            .iter()
            .filter(|s| !s.on_boundary)
            .map(|s| (s.x * s.x + s.y * s.y).sqrt())
            .collect();
        radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let m = radii.len() as f64;
        let mut d = 0.0f64;
        for (i, &r) in radii.iter().enumerate() {
            let f = planar_q_radial_cdf(spec, r, t).unwrap();
            d = d.max((f - i as f64 / m).abs()).max(((i + 1) as f64 / m - f).abs());
        }
        assert!(d < 1.6276236115189504 / m.sqrt(), "KS {d}");

        let again = sample_planar_tb(spec, t, 100, 31);
        for (s, r) in samples.iter().take(100).zip(&again) {
            assert_eq!((s.x, s.y, s.on_boundary), (r.x, r.y, r.on_boundary));
        }
    }
}
