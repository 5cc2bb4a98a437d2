//! Finite-velocity random motions driven by a Poisson switch clock.
//!
//! The 1D telegraph process `T(t)` moves at speed `+-c`, reversing at the
//! events of a rate-`lambda` Poisson process. Its law has two atoms of mass
//! `e^{-lambda t}/2` at `+-ct` and the absolutely continuous interior part
//!
//! `p(x) = (e^{-lambda t}/2c) [lambda I0(u) + lambda c t I1(u)/g]`,
//! `g = sqrt(c^2 t^2 - x^2)`, `u = (lambda/c) g`.
//!
//! The planar flight picks a fresh uniform direction at each event; its
//! radial law `r` carries a singular arc of mass `e^{-lambda t}` on the
//! circle `rho = ct`. The odd-event variant keeps only displacements with
//! an odd switch count, giving the sub-probability density `r_frak` of
//! total mass `1 - e^{-2 lambda t}`; the remaining defect is exposed as a
//! flag, never as a located atom.

use std::f64::consts::{PI, TAU};

use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::rng::{salt, sample_flat};
use crate::specfun;
use crate::stable::SampleBatch;

/// Poisson switch rate and speed of a finite-velocity motion.
#[derive(Clone, Copy, Debug)]
pub struct TelegraphSpec {
    lambda: f64,
    c: f64,
}

impl TelegraphSpec {
    pub fn new(lambda: f64, c: f64) -> Self {
        assert!(lambda > 0.0, "rate must be positive");
        assert!(c > 0.0, "speed must be positive");
        Self { lambda, c }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

/// A tabulated law: interior density values plus its singular pieces.
///
/// For 1D laws `points` are positions and the atoms sit at `+-ct`. For
/// planar laws `points` are radii on a sine-spaced grid, `pdf` holds the
/// radial density (Jacobian included), and arcs carry circle masses.
/// `defect_mass` is mass proven missing from the support but not located
/// anywhere by the construction. Interior integral plus atom, arc, and
/// defect masses is 1.
#[derive(Clone, Debug)]
pub struct DensityGrid {
    pub points: Vec<f64>,
    pub pdf: Vec<f64>,
    pub atoms: Vec<(f64, f64)>,
    pub singular_arcs: Vec<(f64, f64)>,
    pub defect_mass: f64,
}

/// One planar draw. `defect` marks an odd-variant draw that produced no
/// displacement law at all; its coordinates are zero and meaningless.
#[derive(Clone, Copy, Debug)]
pub struct PlanarSample {
    pub x: f64,
    pub y: f64,
    pub on_boundary: bool,
    pub defect: bool,
}

const GRID_CELLS: usize = 4096;

/// `(e^{-u} I0(u), e^{-u} I1(u))`, switching to the asymptotic series once
/// the direct product would overflow.
fn bessel_i01_scaled(u: f64) -> (f64, f64) {
    if u < 650.0 {
        let e = (-u).exp();
        let i0 = specfun::bessel_i0(u).expect("converges for u < 650");
        let i1 = specfun::bessel_i1(u).expect("converges for u < 650");
        (e * i0, e * i1)
    } else {
        let r = 1.0 / u;
        let s0 = 1.0 + r * (0.125 + r * (0.0703125 + r * (0.0732421875 + r * 0.112152099609375)));
        let s1 = 1.0 - r * (0.375 + r * (0.1171875 + r * (0.1025390625 + r * 0.144195556640625)));
        let norm = 1.0 / (TAU * u).sqrt();
        (norm * s0, norm * s1)
    }
}

/// Interior density of `T(t)` at `x`; zero on `|x| >= ct` (the boundary
/// mass lives in atoms, not here).
pub fn telegraph_pdf(spec: TelegraphSpec, x: f64, t: f64) -> f64 {
    assert!(t > 0.0, "time must be positive");
    let ct = spec.c * t;
    if x.abs() >= ct {
        return 0.0;
    }
    let g = ((ct - x) * (ct + x)).sqrt();
    let u = spec.lambda / spec.c * g;
    let (i0s, i1s) = bessel_i01_scaled(u);
    let e = (u - spec.lambda * t).exp();
    spec.lambda * e / (2.0 * spec.c) * (i0s + ct * i1s / g)
}

/// Law of `T(t)` on a uniform midpoint grid with the two boundary atoms.
pub fn telegraph_density(spec: TelegraphSpec, t: f64) -> DensityGrid {
    assert!(t > 0.0, "time must be positive");
    let ct = spec.c * t;
    let h = 2.0 * ct / GRID_CELLS as f64;
    let mut points = Vec::with_capacity(GRID_CELLS);
    let mut pdf = Vec::with_capacity(GRID_CELLS);
    for j in 0..GRID_CELLS {
        let x = -ct + (j as f64 + 0.5) * h;
        points.push(x);
        pdf.push(telegraph_pdf(spec, x, t));
    }
    let a = 0.5 * (-spec.lambda * t).exp();
    DensityGrid {
        points,
        pdf,
        atoms: vec![(-ct, a), (ct, a)],
        singular_arcs: Vec::new(),
        defect_mass: 0.0,
    }
}

/// `E e^{i xi T(t)}` at `q = c^2 xi^2`, kept real across the hyperbolic,
/// removable, and trigonometric regimes of `w = (lambda^2 - q) t^2`.
fn char_at_q(spec: TelegraphSpec, q: f64, t: f64) -> f64 {
    let lt = spec.lambda * t;
    let w = (spec.lambda * spec.lambda - q) * t * t;
    if w > 0.0 {
        let r = w.sqrt();
        if r < 1.0 {
            (-lt).exp() * (r.cosh() + lt * r.sinh() / r)
        } else {
            // split form: no overflow in cosh when lt is large
            0.5 * ((1.0 + lt / r) * (r - lt).exp() + (1.0 - lt / r) * (-r - lt).exp())
        }
    } else if w == 0.0 {
        (-lt).exp() * (1.0 + lt)
    } else {
        let r = (-w).sqrt();
        (-lt).exp() * (r.cos() + lt * r.sin() / r)
    }
}

/// Characteristic function of `T(t)`.
pub fn telegraph_char(spec: TelegraphSpec, xi: f64, t: f64) -> f64 {
    assert!(t > 0.0, "time must be positive");
    char_at_q(spec, spec.c * spec.c * xi * xi, t)
}

/// Characteristic function of the space-fractional variant: `c^2 xi^2`
/// is replaced by `c^2 |xi|^{2 beta}`.
pub fn telegraph_frac_char(spec: TelegraphSpec, beta: f64, xi: f64, t: f64) -> f64 {
    assert!(t > 0.0, "time must be positive");
    assert!(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
    char_at_q(spec, spec.c * spec.c * xi.abs().powf(2.0 * beta), t)
}

pub(crate) fn poisson_count(rng: &mut ChaCha8Rng, mean: f64) -> usize {
    Poisson::new(mean).expect("positive mean").sample(rng) as usize
}

pub(crate) fn telegraph_draw(
    rng: &mut ChaCha8Rng,
    spec: TelegraphSpec,
    t: f64,
    epochs: &mut Vec<f64>,
) -> f64 {
    let v0 = if rng.random::<f64>() < 0.5 {
        spec.c
    } else {
        -spec.c
    };
    let n = poisson_count(rng, spec.lambda * t);
    if n == 0 {
        return v0 * t;
    }
    epochs.clear();
    for _ in 0..n {
        epochs.push(rng.random::<f64>() * t);
    }
    epochs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut time = 0.0;
    let mut prev = 0.0;
    let mut sign = 1.0;
    for &s in epochs.iter() {
        time += sign * (s - prev);
        prev = s;
        sign = -sign;
    }
    time += sign * (t - prev);
    v0 * time
}

/// Draws of `T(t)`: initial velocity `+-c` equiprobable, reversals at the
/// sorted uniform epochs of a Poisson(`lambda t`) count. A zero count
/// yields exactly `+-ct`.
pub fn sample_telegraph(spec: TelegraphSpec, t: f64, count: usize, seed: u64) -> SampleBatch {
    assert!(t > 0.0, "time must be positive");
    assert!(count >= 1, "count must be at least 1");
    let values = sample_flat(count, 1, seed, salt::TELEGRAPH, |rng, out| {
        let mut epochs = Vec::new();
        for v in out.iter_mut() {
            *v = telegraph_draw(rng, spec, t, &mut epochs);
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

/// Cartesian interior density `r(x, y)` of the planar flight.
pub fn planar_pdf(spec: TelegraphSpec, x: f64, y: f64, t: f64) -> f64 {
    assert!(t > 0.0, "time must be positive");
    let rho2 = x * x + y * y;
    let ct = spec.c * t;
    if rho2 >= ct * ct {
        return 0.0;
    }
    let g = (ct * ct - rho2).sqrt();
    let lam = spec.lambda;
    lam / (TAU * spec.c) * (lam / spec.c * g - lam * t).exp() / g
}

/// Radial interior density of the planar flight (Jacobian `2 pi rho`
/// included), so it integrates over `(0, ct)` to `1 - e^{-lambda t}`.
pub fn planar_radial_pdf(spec: TelegraphSpec, rho: f64, t: f64) -> f64 {
    TAU * rho * planar_pdf(spec, rho, 0.0, t)
}

/// Cartesian density `r_frak(x, y)` of the odd-event flight: the second
/// exponential makes it exceed `r` pointwise, and its mass over the disk
/// is `1 - e^{-2 lambda t}`.
pub fn planar_frak_pdf(spec: TelegraphSpec, x: f64, y: f64, t: f64) -> f64 {
    assert!(t > 0.0, "time must be positive");
    let rho2 = x * x + y * y;
    let ct = spec.c * t;
    if rho2 >= ct * ct {
        return 0.0;
    }
    let g = (ct * ct - rho2).sqrt();
    let lam = spec.lambda;
    let a = lam / spec.c * g;
    lam / (TAU * spec.c) * (-lam * t).exp() * (a.exp() + (-a).exp()) / g
}

/// Radial density of the odd-event flight.
pub fn planar_frak_radial_pdf(spec: TelegraphSpec, rho: f64, t: f64) -> f64 {
    TAU * rho * planar_frak_pdf(spec, rho, 0.0, t)
}

/// CDF of the radius under the interior part of `r`, normalized to 1.
pub fn planar_radial_cdf(spec: TelegraphSpec, rho: f64, t: f64) -> f64 {
    assert!(t > 0.0, "time must be positive");
    let ct = spec.c * t;
    if rho <= 0.0 {
        return 0.0;
    }
    if rho >= ct {
        return 1.0;
    }
    let g = (ct * ct - rho * rho).sqrt();
    let lt = spec.lambda * t;
    (spec.lambda / spec.c * g - lt).exp_m1() / (-lt).exp_m1()
}

/// CDF of the radius under `r_frak`, normalized to 1.
pub fn planar_frak_radial_cdf(spec: TelegraphSpec, rho: f64, t: f64) -> f64 {
    assert!(t > 0.0, "time must be positive");
    let ct = spec.c * t;
    if rho <= 0.0 {
        return 0.0;
    }
    if rho >= ct {
        return 1.0;
    }
    let g = (ct * ct - rho * rho).sqrt();
    let lt = spec.lambda * t;
    let mass = -(-2.0 * lt).exp_m1();
    (mass - 2.0 * (-lt).exp() * (spec.lambda / spec.c * g).sinh()) / mass
}

/// Radial density of the flight conditioned on exactly `n` switches:
/// `n rho (c^2 t^2 - rho^2)^{n/2 - 1} / (ct)^n` on `[0, ct)`. The
/// coefficient is the one forced by normalization over the disk.
pub fn planar_conditional_radial_pdf(n: usize, rho: f64, c: f64, t: f64) -> f64 {
    assert!(n >= 1, "condition on at least one switch");
    assert!(c > 0.0 && t > 0.0, "speed and time must be positive");
    let ct = c * t;
    if rho <= 0.0 || rho >= ct {
        return 0.0;
    }
    let n = n as f64;
    n * rho * (ct * ct - rho * rho).powf(0.5 * n - 1.0) / ct.powf(n)
}

/// `1 - (1 - rho^2/(ct)^2)^{n/2}`, the closed CDF of the conditional law.
pub fn planar_conditional_radial_cdf(n: usize, rho: f64, c: f64, t: f64) -> f64 {
    assert!(n >= 1, "condition on at least one switch");
    assert!(c > 0.0 && t > 0.0, "speed and time must be positive");
    let ct = c * t;
    if rho <= 0.0 {
        return 0.0;
    }
    if rho >= ct {
        return 1.0;
    }
    1.0 - (1.0 - rho * rho / (ct * ct)).powf(0.5 * n as f64)
}

/// Sine-spaced radial grid on `(0, ct)`: midpoints in the angle variable
/// `rho = ct sin(phi)` cluster points at the singular rim without ever
/// touching it.
fn radial_grid(ct: f64) -> Vec<f64> {
    let h = 0.5 * PI / GRID_CELLS as f64;
    (0..GRID_CELLS)
        .map(|j| ct * ((j as f64 + 0.5) * h).sin())
        .collect()
}

/// Law of the planar flight: radial interior part plus the boundary arc
/// of mass `e^{-lambda t}`.
pub fn planar_density(spec: TelegraphSpec, t: f64) -> DensityGrid {
    assert!(t > 0.0, "time must be positive");
    let ct = spec.c * t;
    let points = radial_grid(ct);
    let pdf = points
        .iter()
        .map(|&rho| planar_radial_pdf(spec, rho, t))
        .collect();
    DensityGrid {
        points,
        pdf,
        atoms: Vec::new(),
        singular_arcs: vec![(ct, (-spec.lambda * t).exp())],
        defect_mass: 0.0,
    }
}

/// Law of the odd-event flight: radial interior part of mass
/// `1 - e^{-2 lambda t}` plus the unlocated defect.
pub fn planar_density_frak(spec: TelegraphSpec, t: f64) -> DensityGrid {
    assert!(t > 0.0, "time must be positive");
    let ct = spec.c * t;
    let points = radial_grid(ct);
    let pdf = points
        .iter()
        .map(|&rho| planar_frak_radial_pdf(spec, rho, t))
        .collect();
    DensityGrid {
        points,
        pdf,
        atoms: Vec::new(),
        singular_arcs: Vec::new(),
        defect_mass: (-2.0 * spec.lambda * t).exp(),
    }
}

/// Displacement after `n >= 1` switches at sorted uniform epochs, with a
/// fresh uniform direction on each of the `n + 1` legs.
pub(crate) fn planar_flight(
    rng: &mut ChaCha8Rng,
    spec: TelegraphSpec,
    t: f64,
    n: usize,
    epochs: &mut Vec<f64>,
) -> (f64, f64) {
    epochs.clear();
    for _ in 0..n {
        epochs.push(rng.random::<f64>() * t);
    }
    epochs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut x = 0.0;
    let mut y = 0.0;
    let mut prev = 0.0;
    for j in 0..=n {
        let end = if j == n { t } else { epochs[j] };
        let th = TAU * rng.random::<f64>();
        x += (end - prev) * th.cos();
        y += (end - prev) * th.sin();
        prev = end;
    }
    (spec.c * x, spec.c * y)
}

fn collect_planar(flat: Vec<f64>) -> Vec<PlanarSample> {
    flat.chunks(3)
        .map(|row| PlanarSample {
            x: row[0],
            y: row[1],
            on_boundary: row[2] == 1.0,
            defect: row[2] == 2.0,
        })
        .collect()
}

/// Draws of the planar flight; a zero switch count lands exactly on the
/// circle `rho = ct` with a uniform angle and sets `on_boundary`.
pub fn sample_planar(spec: TelegraphSpec, t: f64, count: usize, seed: u64) -> Vec<PlanarSample> {
    assert!(t > 0.0, "time must be positive");
    assert!(count >= 1, "count must be at least 1");
    let flat = sample_flat(count, 3, seed, salt::PLANAR, |rng, out| {
        let mut epochs = Vec::new();
        for row in out.chunks_mut(3) {
            let n = poisson_count(rng, spec.lambda * t);
            if n == 0 {
                let th = TAU * rng.random::<f64>();
                row[0] = spec.c * t * th.cos();
                row[1] = spec.c * t * th.sin();
                row[2] = 1.0;
            } else {
                let (x, y) = planar_flight(rng, spec, t, n, &mut epochs);
                row[0] = x;
                row[1] = y;
                row[2] = 0.0;
            }
        }
    });
    collect_planar(flat)
}

/// Switch count conditioned on being odd: CDF inversion over
/// `(lambda t)^{2k+1} / ((2k+1)! sinh(lambda t))`, or rejection once
/// `sinh` would overflow (the odd and even halves are then equal).
fn odd_poisson(rng: &mut ChaCha8Rng, lt: f64) -> usize {
    if lt > 30.0 {
        loop {
            let n = poisson_count(rng, lt);
            if n % 2 == 1 {
                return n;
            }
        }
    }
    let u = rng.random::<f64>() * lt.sinh();
    let mut k = 1usize;
    let mut term = lt;
    let mut cum = term;
    while cum < u && k < 9999 {
        term *= lt * lt / (((k + 1) * (k + 2)) as f64);
        k += 2;
        cum += term;
    }
    k
}

/// Draws of the odd-event flight as the odd-count Poisson mixture of
/// conditional displacement laws; with probability `e^{-2 lambda t}` the
/// draw is a flagged defect instead.
pub fn sample_planar_odd(
    spec: TelegraphSpec,
    t: f64,
    count: usize,
    seed: u64,
) -> Vec<PlanarSample> {
    assert!(t > 0.0, "time must be positive");
    assert!(count >= 1, "count must be at least 1");
    let lt = spec.lambda * t;
    let defect_p = (-2.0 * lt).exp();
    let flat = sample_flat(count, 3, seed, salt::PLANAR_ODD, |rng, out| {
        let mut epochs = Vec::new();
        for row in out.chunks_mut(3) {
            if rng.random::<f64>() < defect_p {
                row[0] = 0.0;
                row[1] = 0.0;
                row[2] = 2.0;
            } else {
                let n = odd_poisson(rng, lt);
                let (x, y) = planar_flight(rng, spec, t, n, &mut epochs);
                row[0] = x;
                row[1] = y;
                row[2] = 0.0;
            }
        }
    });
    collect_planar(flat)
}
