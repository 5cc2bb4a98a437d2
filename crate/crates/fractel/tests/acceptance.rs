//! Release gate. One check per numbered criterion, each printing a single
//! pass/fail line; run with `--nocapture` to see the lines as they land.
//! The tolerances are contractual: a red line here is a defect in the code,
//! never a reason to widen the bound.

use std::f64::consts::FRAC_PI_2;

use fractel::compose::{self, ModelParams};
use fractel::specfun::{self, MlOrder};
use fractel::stable::{self, SubordinatorSpec};
use fractel::subord::{self, CompositeSpec};
use fractel::telegraph::{self, TelegraphSpec};
use fractel::verify::{self, GridFunction};
use statrs::function::gamma::gamma;

fn report(id: &str, pass: bool, detail: &str) {
    println!("{id}: {} ({detail})", if pass { "pass" } else { "FAIL" });
    assert!(pass, "{id}: {detail}");
}

/// Composite Simpson rule with an even cell count.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cells: usize) -> f64 {
    assert!(cells % 2 == 0);
    let h = (b - a) / cells as f64;
    let mut acc = f(a) + f(b);
    for i in 1..cells {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn accept_01_special_function_identities() {
    let mut worst = 0.0f64;
    for nu in [0.2, 1.0 / 3.0, 0.45, 0.5] {
        let shift = 1.0 / gamma(1.0 - nu);
        for i in 0..=28 {
            let z = -5.0 + 0.25 * i as f64;
            let lhs = specfun::mittag_leffler(MlOrder::new(nu, 1.0 - nu), z)
                .expect("converges on the test range")
                .value;
            let e1 = specfun::mittag_leffler(MlOrder::new(nu, 1.0), z)
                .expect("converges on the test range")
                .value;
            let rhs = z * e1 + shift;
            // absolute up to modulus one, relative beyond, the evaluator's
            // own convention; E_{0.2}(2) is ~4e14, putting a flat absolute
            // bound below eps * |value|
            worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
        }
    }
    report(
        "ACCEPT-01a Mittag-Leffler recursion",
        worst <= 1e-10,
        &format!("worst scaled gap {worst:.3e}, tolerance 1e-10"),
    );

    // int_0^inf Ai(-y) dy = 2/3; remainder beyond y_hi by repeated parts
    // through Ai(-y) = -(d^2/dy^2) Ai(-y) / y
    let y_hi = 24.0f64;
    let body = simpson(|y| specfun::airy_ai(-y).value, 0.0, y_hi, 16_384);
    let ai = specfun::airy_ai(-y_hi).value;
    let aip = specfun::airy_ai_prime(-y_hi).value;
    let tail = -aip / y_hi + ai / y_hi.powi(2) + 2.0 * aip / y_hi.powi(4)
        - 8.0 * ai / y_hi.powi(5)
        - 40.0 * aip / y_hi.powi(7)
        + 280.0 * ai / y_hi.powi(8);
    let gap = (body + tail - 2.0 / 3.0).abs();
    report(
        "ACCEPT-01b Airy integral",
        gap <= 1e-8,
        &format!("gap {gap:.3e}, tolerance 1e-8"),
    );
}

#[test]
fn accept_02_subordinator_transform() {
    let mut worst_z = 0.0f64;
    for nu in [0.25, 0.5, 0.75] {
        for t in [0.5, 1.0] {
            let batch = stable::sample_subordinator(SubordinatorSpec::new(nu, t), 100_000, 17);
            for mu in [0.5f64, 2.0] {
                let want = (-t * mu.powf(nu)).exp();
                let (mut m, mut m2) = (0.0, 0.0);
                for &x in &batch.values {
                    let e = (-mu * x).exp();
                    m += e;
                    m2 += e * e;
                }
                let n = batch.count as f64;
                m /= n;
                m2 /= n;
                let sigma = ((m2 - m * m) / n).sqrt();
                worst_z = worst_z.max((m - want).abs() / sigma);
            }
        }
    }
    report(
        "ACCEPT-02 subordinator Laplace transform",
        worst_z <= 4.0,
        &format!("worst |z| = {worst_z:.2} over 12 points, limit 4 std errors"),
    );
}

#[test]
fn accept_03_inverse_laplace_identity_half() {
    let lambda = 1.0;
    let spec = CompositeSpec::new(0.5, lambda);
    let mut worst = 0.0f64;
    for t in [0.5, 1.0, 2.0] {
        for frac in [0.0, 0.25, 0.5] {
            let gamma = frac * lambda * lambda;
            // support is (0, t); the closed form extends continuously to 0
            let f = |x: f64| {
                (-gamma * x).exp() * subord::inverse_density(spec, x.max(1e-300), t).unwrap()
            };
            let got = simpson(f, 0.0, t, 8192);
            let want = subord::inverse_density_laplace(spec, gamma, t).unwrap();
            worst = worst.max((got - want).abs());
        }
    }
    report(
        "ACCEPT-03 inverse-process Laplace identity (nu = 1/2)",
        worst <= 1e-6,
        &format!("worst gap {worst:.3e} over 9 points, tolerance 1e-6"),
    );
}

#[test]
fn accept_04_airy_inverse_density() {
    let mut worst_mass = 0.0f64;
    let mut worst_lap = 0.0f64;
    for (lambda, t) in [(1.0f64, 1.0f64), (2.0, 0.5)] {
        let spec = CompositeSpec::new(1.0 / 3.0, lambda);
        let x_hi = 14.0 * (3.0 * t).cbrt() / (2.0 * lambda);
        let cells = 256usize;
        let h = x_hi / cells as f64;
        let dens: Vec<f64> = (0..=cells)
            .map(|i| {
                let x = if i == 0 { 1e-9 * x_hi } else { i as f64 * h };
                subord::inverse_density(spec, x, t).unwrap()
            })
            .collect();
        let weighted = |g: &dyn Fn(f64) -> f64| {
            let mut acc = 0.0;
            for (i, d) in dens.iter().enumerate() {
                let w = if i == 0 || i == cells {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                acc += w * g(i as f64 * h) * d;
            }
            acc * h / 3.0
        };
        worst_mass = worst_mass.max((weighted(&|_| 1.0) - 1.0).abs());
        for frac in [0.25, 0.5] {
            let gamma = frac * lambda * lambda;
            let got = weighted(&|x| (-gamma * x).exp());
            let want = subord::inverse_density_laplace(spec, gamma, t).unwrap();
            worst_lap = worst_lap.max((got - want).abs());
        }
    }
    report(
        "ACCEPT-04a Airy-case inverse density mass",
        worst_mass <= 1e-4,
        &format!("worst |mass - 1| = {worst_mass:.3e}, tolerance 1e-4"),
    );
    report(
        "ACCEPT-04b Airy-case x-Laplace",
        worst_lap <= 1e-3,
        &format!("worst gap {worst_lap:.3e}, tolerance 1e-3"),
    );
}

#[test]
fn accept_05_headline_equality_in_law() {
    let mut lines = Vec::new();
    let mut all = true;
    for (lam, c, t) in [(1.0, 1.0, 1.0), (2.0, 1.0, 0.5), (1.0, 3.0, 2.0)] {
        let params = ModelParams::new(0.5, 1.0, lam, c, 1);
        let a = compose::sample_w(&params, t, 100_000, 7).unwrap();
        let b = compose::sample_tb(TelegraphSpec::new(lam, c), t, 100_000, 7);
        let ks = verify::ks_two_sample(&a, &b, 0.01);
        all &= ks.pass;
        lines.push(format!("({lam},{c},{t}) D={:.4}", ks.statistic));
    }
    report(
        "ACCEPT-05 equality in law, KS at alpha = 0.01",
        all,
        &lines.join("; "),
    );
}

#[test]
fn accept_06_fourier_solution_char() {
    let mut worst_z = 0.0f64;
    for (nu, beta, n) in [
        (0.5, 1.0, 1usize),
        (0.5, 0.5, 1),
        (1.0 / 3.0, 1.0, 1),
        (0.5, 1.0, 2),
    ] {
        let params = ModelParams::new(nu, beta, 1.0, 1.0, n);
        let xi = if n == 1 {
            vec![0.6]
        } else {
            vec![0.6 / 2.0f64.sqrt(), 0.6 / 2.0f64.sqrt()]
        };
        let batch = compose::sample_w(&params, 1.0, 1_000_000, 23).unwrap();
        let (mean, sigma) = verify::empirical_char(&batch, &xi);
        let want = compose::w_char(&params, &xi, 1.0).unwrap().value;
        worst_z = worst_z.max((mean - want).abs() / sigma);
    }
    report(
        "ACCEPT-06 characteristic function of the composition",
        worst_z <= 4.0,
        &format!("worst |z| = {worst_z:.2} over 4 parameter sets, limit 4 std errors"),
    );
}

#[test]
fn accept_07_fractional_ode_residual() {
    let mut worst_ratio = f64::INFINITY;
    for (nu, beta) in [(0.5, 1.0), (0.5, 0.5), (1.0 / 3.0, 1.0), (0.5, 1.0)] {
        let coeff = 0.36f64.powf(beta);
        let spec = CompositeSpec::new(nu, 1.0);
        let curve = |tt: f64| {
            if tt == 0.0 {
                1.0
            } else {
                subord::inverse_density_laplace(spec, coeff, tt).unwrap()
            }
        };
        let mut residuals = Vec::new();
        for cells in [64usize, 128, 256, 512] {
            let grid: Vec<f64> = (0..=cells).map(|i| i as f64 / cells as f64).collect();
            let f = GridFunction::sample(grid, curve);
            residuals.push(verify::frac_ode_residual(nu, 1.0, coeff, &f).unwrap());
        }
        for k in 0..3 {
            worst_ratio = worst_ratio.min(residuals[k] / residuals[k + 1]);
        }
    }
    report(
        "ACCEPT-07 governing-relation residual decay",
        worst_ratio >= 2.0,
        &format!("worst refinement ratio {worst_ratio:.2}, required >= 2"),
    );
}

#[test]
fn accept_08_telegraph_law() {
    let mut worst = 0.0f64;
    let points = [
        (0.3, 1.0, 1.0, 1.0),
        (1.1, 1.0, 1.0, 1.0),
        (0.5, 2.0, 1.0, 0.5),
        (1.7, 2.0, 1.0, 0.5),
        (0.9, 1.0, 2.0, 1.0),
        (2.3, 1.0, 2.0, 1.0),
        (0.4, 0.5, 1.0, 2.0),
        (1.2, 0.5, 1.0, 2.0),
    ];
    for (xi, lam, c, t) in points {
        let spec = TelegraphSpec::new(lam, c);
        let ct = c * t;
        // x = ct sin(theta) keeps the integrand smooth up to the support edge
        let ac = simpson(
            |th: f64| {
                let x = ct * th.sin();
                telegraph::telegraph_pdf(spec, x, t) * (xi * x).cos() * ct * th.cos()
            },
            -FRAC_PI_2,
            FRAC_PI_2,
            4096,
        );
        let got = ac + (-lam * t).exp() * (xi * ct).cos();
        let want = telegraph::telegraph_char(spec, xi, t);
        worst = worst.max((got - want).abs());
    }
    report(
        "ACCEPT-08a telegraph Fourier transform",
        worst <= 1e-6,
        &format!("worst gap {worst:.3e} over 8 points, tolerance 1e-6"),
    );

    let spec = TelegraphSpec::new(1.0, 1.0);
    let batch = telegraph::sample_telegraph(spec, 1.0, 100_000, 11);
    let p = (-1.0f64).exp();
    let hits = batch
        .values
        .iter()
        .filter(|&&x| (x.abs() - 1.0).abs() < 1e-12)
        .count();
    let frac = hits as f64 / batch.count as f64;
    let sigma = (p * (1.0 - p) / batch.count as f64).sqrt();
    let z = (frac - p).abs() / sigma;
    report(
        "ACCEPT-08b boundary-atom fraction",
        z <= 3.0,
        &format!("|z| = {z:.2}, limit 3 binomial std errors"),
    );
}

#[test]
fn accept_09_planar_suite() {
    let spec = TelegraphSpec::new(1.0, 1.0);
    let (lam, c, t) = (1.0, 1.0, 1.0);
    let ct = c * t;
    let lt = lam * t;

    // rho = ct sin(phi) cancels the rim factor of the interior density;
    // the rim node itself is pulled inside by 1e-6 because the density is
    // guarded to zero at rho = ct while the substituted integrand has a
    // finite limit there
    let mass_of = |radial: &dyn Fn(f64) -> f64| {
        simpson(
            |phi: f64| {
                let phi = phi.min(FRAC_PI_2 - 1e-6);
                radial(ct * phi.sin()) * ct * phi.cos()
            },
            0.0,
            FRAC_PI_2,
            2048,
        )
    };
    let m = mass_of(&|rho| telegraph::planar_radial_pdf(spec, rho, t));
    let gap_r = (m + (-lt).exp() - 1.0).abs();
    report(
        "ACCEPT-09a planar interior mass plus rim atom",
        gap_r <= 1e-5,
        &format!("gap {gap_r:.3e}, tolerance 1e-5"),
    );
    let m = mass_of(&|rho| telegraph::planar_frak_radial_pdf(spec, rho, t));
    let gap_f = (m + (-2.0 * lt).exp() - 1.0).abs();
    report(
        "ACCEPT-09b even-flight interior mass",
        gap_f <= 1e-5,
        &format!("gap {gap_f:.3e}, tolerance 1e-5"),
    );

    let rho = 0.47 * ct;
    let mut mix = 0.0;
    let mut pn = (-lt).exp();
    for n in 1..=60usize {
        pn *= lt / n as f64;
        mix += pn * telegraph::planar_conditional_radial_pdf(n, rho, c, t);
    }
    let gap_mix = (mix - telegraph::planar_radial_pdf(spec, rho, t)).abs();
    report(
        "ACCEPT-09c Poisson mixture identity, 60 terms",
        gap_mix <= 1e-8,
        &format!("gap {gap_mix:.3e}, tolerance 1e-8"),
    );

    let r_hi = ct.max(8.0 * c * (2.0 * t).sqrt());
    let radial_q = |rho: f64| {
        if rho <= 0.0 {
            return 0.0;
        }
        2.0 * std::f64::consts::PI
            * rho
            * compose::planar_qfrak_density(spec, rho, 0.0, t).unwrap()
    };
    // split at rho = ct, where the kernel switches branch
    let mass = simpson(&radial_q, 0.0, ct, 1024) + simpson(&radial_q, ct, r_hi, 2048);
    let gap_q = (mass - 1.0).abs();
    report(
        "ACCEPT-09d time-changed planar mass",
        gap_q <= 1e-5,
        &format!("gap {gap_q:.3e}, tolerance 1e-5"),
    );

    let model = ModelParams::new(0.5, 1.0, lam, c, 2);
    let mut worst = 0.0f64;
    for frac in [0.4, 0.8] {
        let xi = frac * lam / c;
        let f = |rho: f64| radial_q(rho) * specfun::bessel_j0(xi * rho);
        let got = simpson(&f, 0.0, ct, 1024) + simpson(&f, ct, r_hi, 2048);
        let want = compose::w_char(&model, &[xi, 0.0], t).unwrap().value;
        worst = worst.max((got - want).abs());
    }
    report(
        "ACCEPT-09e planar Fourier versus closed form",
        worst <= 1e-4,
        &format!("worst gap {worst:.3e} at two frequencies, tolerance 1e-4"),
    );
}

#[test]
fn accept_10_riesz_forms() {
    let beta = 0.2;
    let gauss = |x: f64| (-0.5 * x * x).exp();
    let (l, n) = (256.0, 8192usize);
    let h = 2.0 * l / n as f64;
    let grid: Vec<f64> = (0..n).map(|i| -l + i as f64 * h).collect();
    let spectral = verify::riesz_spectral(&GridFunction::sample(grid, gauss), beta).unwrap();
    let probes: Vec<f64> = (0..=16).map(|k| -2.0 + 0.25 * k as f64).collect();
    let singular = verify::riesz_singular(gauss, &probes, beta).unwrap();
    let scale = singular.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut worst = 0.0f64;
    for (k, &x) in probes.iter().enumerate() {
        let i = ((x + l) / h).round() as usize;
        worst = worst.max((spectral.values[i] - singular.values[k]).abs());
    }
    let rel = worst / scale;
    report(
        "ACCEPT-10 Riesz operator, spectral versus singular",
        rel <= 1e-3,
        &format!("worst relative gap {rel:.3e} for 2 beta = 0.4, tolerance 1e-3"),
    );
}

#[test]
fn accept_11_iterated_bm_limit() {
    let mut monotone = true;
    let mut final_gap = 0.0f64;
    let mut lines = Vec::new();
    for x in [0.0, 0.5, 1.0] {
        let want = compose::iterated_bm_density(x, 1.0).unwrap();
        let gaps: Vec<f64> = [4.0, 16.0, 64.0]
            .iter()
            .map(|&k| {
                let spec = TelegraphSpec::new(k, k.sqrt());
                (compose::w_density_1d_half(spec, x, 1.0).unwrap() - want).abs()
            })
            .collect();
        monotone &= gaps[0] > gaps[1] && gaps[1] > gaps[2];
        final_gap = final_gap.max(gaps[2]);
        lines.push(format!("x={x}: {:.1e} > {:.1e} > {:.1e}", gaps[0], gaps[1], gaps[2]));
    }
    report(
        "ACCEPT-11 iterated-Brownian-motion limit",
        monotone && final_gap <= 5e-3,
        &format!("{}; final gap tolerance 5e-3", lines.join("; ")),
    );
}
