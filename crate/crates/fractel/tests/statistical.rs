//! Distributional checks that go beyond the acceptance gate: scaling and
//! rotation invariances of the samplers, sampler-versus-CDF agreement for
//! the planar laws, and Monte Carlo transforms of the time change. All
//! Kolmogorov-Smirnov checks run at alpha = 0.01 with fixed seeds.

use fractel::compose::{self, ModelParams};
use fractel::stable::{self, IsotropicStableSpec, SampleBatch, SubordinatorSpec};
use fractel::subord::{self, CompositeSpec};
use fractel::telegraph::{self, TelegraphSpec};
use fractel::verify;

const ALPHA: f64 = 0.01;

fn scalar_batch(values: Vec<f64>, t: f64, seed: u64) -> SampleBatch {
    SampleBatch {
        t,
        seed,
        count: values.len(),
        dim: 1,
        values,
    }
}

/// One-sample KS statistic and its Smirnov critical value.
fn ks_one_sample<F: Fn(f64) -> f64>(mut xs: Vec<f64>, cdf: F) -> (f64, f64) {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    let crit = (-(ALPHA / 2.0f64).ln() / 2.0).sqrt() / n.sqrt();
    (d, crit)
}

#[test]
fn subordinator_self_similarity() {
    // H(at) has the law of a^{1/nu} H(t)
    let nu = 0.6;
    let a = 1.6f64;
    let long = stable::sample_subordinator(SubordinatorSpec::new(nu, a), 30_000, 3);
    let short = stable::sample_subordinator(SubordinatorSpec::new(nu, 1.0), 30_000, 4);
    let scaled: Vec<f64> = short.values.iter().map(|x| a.powf(1.0 / nu) * x).collect();
    let ks = verify::ks_two_sample(&long, &scalar_batch(scaled, a, 4), ALPHA);
    assert!(
        ks.pass,
        "D = {} exceeds the alpha = 0.01 critical value",
        ks.statistic
    );
}

#[test]
fn isotropic_stable_rotation_invariance() {
    let spec = IsotropicStableSpec::new(0.7, 2, 1.0);
    let batch = stable::sample_isotropic_stable(spec, 30_000, 5);
    let other = stable::sample_isotropic_stable(spec, 30_000, 6);
    let (cs, sn) = (0.7f64.cos(), 0.7f64.sin());
    let rotated: Vec<f64> = (0..batch.count)
        .map(|i| {
            let r = batch.row(i);
            cs * r[0] - sn * r[1]
        })
        .collect();
    let first: Vec<f64> = (0..other.count).map(|i| other.row(i)[0]).collect();
    let ks = verify::ks_two_sample(
        &scalar_batch(rotated, 1.0, 5),
        &scalar_batch(first, 1.0, 6),
        ALPHA,
    );
    assert!(
        ks.pass,
        "rotated projection diverged: D = {}",
        ks.statistic
    );
}

#[test]
fn isotropic_stable_char_matches_closed_form() {
    let spec = IsotropicStableSpec::new(0.9, 2, 1.0);
    let batch = stable::sample_isotropic_stable(spec, 100_000, 6);
    let xi = [0.5, -0.3];
    let (mean, sigma) = verify::empirical_char(&batch, &xi);
    let want = stable::stable_char(spec, &xi);
    let z = (mean - want).abs() / sigma;
    assert!(z <= 4.0, "char gap is {z:.2} std errors");
}

#[test]
fn odd_flight_radii_follow_the_frak_law() {
    let spec = TelegraphSpec::new(1.0, 1.0);
    let t = 1.0;
    let draws = telegraph::sample_planar_odd(spec, t, 20_000, 8);
    let radii: Vec<f64> = draws
        .iter()
        .filter(|s| !s.defect)
        .map(|s| s.x.hypot(s.y))
        .collect();
    // defect fraction is its own binomial check
    let p = (-2.0 * spec.lambda() * t).exp();
    let frac = 1.0 - radii.len() as f64 / draws.len() as f64;
    let sigma = (p * (1.0 - p) / draws.len() as f64).sqrt();
    assert!((frac - p).abs() <= 4.0 * sigma, "defect fraction {frac}");

    let (d, crit) = ks_one_sample(radii, |rho| telegraph::planar_frak_radial_cdf(spec, rho, t));
    assert!(d < crit, "D = {d:.4}, critical {crit:.4}");
}

#[test]
fn planar_composition_radii_follow_the_q_law() {
    let spec = TelegraphSpec::new(1.0, 1.0);
    let t = 1.0;
    let draws = compose::sample_planar_tb(spec, t, 20_000, 9);
    let radii: Vec<f64> = draws
        .iter()
        .filter(|s| !s.on_boundary)
        .map(|s| s.x.hypot(s.y))
        .collect();
    let p = compose::smear_mass(spec.lambda(), t);
    let frac = 1.0 - radii.len() as f64 / draws.len() as f64;
    let sigma = (p * (1.0 - p) / draws.len() as f64).sqrt();
    assert!((frac - p).abs() <= 4.0 * sigma, "rim fraction {frac}");

    let (d, crit) = ks_one_sample(radii, |rho| {
        compose::planar_q_radial_cdf(spec, rho, t).unwrap()
    });
    assert!(d < crit, "D = {d:.4}, critical {crit:.4}");
}

#[test]
fn fractional_telegraph_at_brownian_time_matches_composition_char() {
    // T^{2 beta}(|B(t)|) and S^{2 beta}(c^2 Lcal^{1/2}(t)) agree in law:
    // integrate the fractional telegraph char against the half-normal time
    let (lam, c, t) = (1.0, 1.0, 0.8f64);
    let spec = TelegraphSpec::new(lam, c);
    let s_hi = 10.0 * (2.0 * t).sqrt();
    let cells = 8192;
    let h = s_hi / cells as f64;
    let mut worst = 0.0f64;
    for beta in [0.6, 1.0] {
        let params = ModelParams::new(0.5, beta, lam, c, 1);
        for xi in [0.2, 0.5, 0.8] {
            let f = |s: f64| {
                let s = s.max(1e-12);
                (-s * s / (4.0 * t)).exp() / (std::f64::consts::PI * t).sqrt()
                    * telegraph::telegraph_frac_char(spec, beta, xi, s)
            };
            let mut got = f(0.0) + f(s_hi);
            for i in 1..cells {
                got += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
            }
            got *= h / 3.0;
            let composed = compose::w_char(&params, &[xi], t).unwrap().value;
            worst = worst.max((got - composed).abs());
        }
    }
    assert!(worst <= 1e-8, "worst gap {worst:.3e}");
}

#[test]
fn inverse_sampler_matches_its_laplace_transform() {
    for (nu, count) in [(0.5, 100_000usize), (0.4, 20_000)] {
        let spec = CompositeSpec::new(nu, 1.0);
        let batch = subord::sample_inverse(spec, 1.0, count, 12).unwrap();
        for gamma in [0.3f64, 0.7] {
            let (mut m, mut m2) = (0.0, 0.0);
            for &x in &batch.values {
                let e = (-gamma * x).exp();
                m += e;
                m2 += e * e;
            }
            let n = batch.count as f64;
            m /= n;
            m2 /= n;
            let sigma = ((m2 - m * m) / n).sqrt();
            let want = subord::inverse_density_laplace(spec, gamma, 1.0).unwrap();
            let z = (m - want).abs() / sigma;
            assert!(z <= 4.0, "nu = {nu}, gamma = {gamma}: gap {z:.2} std errors");
        }
    }
}
