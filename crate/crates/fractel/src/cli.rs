//! Command dispatch for the `fractel` binary.
//!
//! Five commands: `sample` draws Monte Carlo batches, `density` tabulates
//! closed-form densities on a grid, `char` evaluates characteristic
//! functions, `verify` runs one named check suite, and `report` runs all
//! of them. Every CSV starts with a `#` comment recording the resolved
//! parameters and seed, then a header row; identical configurations
//! produce byte-identical files regardless of `FRACTEL_THREADS`.
//!
//! Exit codes: 0 on success (and when every verify check passes), 1 when
//! a suite has a failing check (the report is still written), 2 on an
//! invalid configuration.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use crate::compose::{self, ModelParams};
use crate::error::{Error, Result};
use crate::quad;
use crate::specfun;
use crate::stable::{self, IsotropicStableSpec, SampleBatch, SubordinatorSpec};
use crate::subord::{self, CompositeSpec};
use crate::telegraph::{self, PlanarSample, TelegraphSpec};
use crate::verify::{self, GridFunction};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Command {
    Sample,
    Density,
    Char,
    Verify,
    Report,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Sample => "sample",
            Command::Density => "density",
            Command::Char => "char",
            Command::Verify => "verify",
            Command::Report => "report",
        }
    }
}

/// Model and selection parameters; everything optional so the caller can
/// rely on per-command defaults.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub kind: Option<String>,
    pub suite: Option<String>,
    pub nu: Option<f64>,
    pub beta: Option<f64>,
    pub lambda: Option<f64>,
    pub c: Option<f64>,
    pub n: Option<usize>,
    pub xi: Option<Vec<f64>>,
}

/// Inclusive evaluation grid: `steps` evenly spaced points from `min` to
/// `max`.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub params: Params,
    pub t: f64,
    pub count: usize,
    pub seed: u64,
    pub grid: Option<GridSpec>,
    pub out_path: Option<PathBuf>,
    pub emit_svg: bool,
}

/// Execute a configuration and return the process exit code. Library
/// panics (constructor contract violations) are reported as configuration
/// errors rather than aborting.
pub fn run(config: &RunConfig) -> i32 {
    match catch_unwind(AssertUnwindSafe(|| dispatch(config))) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "invalid parameters".to_string());
            eprintln!("invalid configuration: {msg}");
            2
        }
    }
}

fn dispatch(config: &RunConfig) -> Result<i32> {
    match config.command {
        Command::Sample => {
            let csv = render_samples(config)?;
            deliver(config, &csv, None)?;
            Ok(0)
        }
        Command::Density => {
            let (csv, curve) = render_density(config)?;
            deliver(config, &csv, Some(&curve))?;
            Ok(0)
        }
        Command::Char => run_char(config),
        Command::Verify => {
            let suite = config
                .params
                .suite
                .as_deref()
                .ok_or_else(|| Error::InvalidParam("verify needs a suite name".to_string()))?;
            let rows = run_suite(suite, config)?;
            finish_verify(config, rows)
        }
        Command::Report => {
            let mut rows = Vec::new();
            for suite in SUITES {
                for mut row in run_suite(suite, config)? {
                    row.name = format!("{suite}/{}", row.name);
                    rows.push(row);
                }
            }
            finish_verify(config, rows)
        }
    }
}

const SUITES: [&str; 4] = ["roletelegraph", "airy-onethird", "planar-frak", "frac-ode"];

fn finish_verify(config: &RunConfig, rows: Vec<CheckRow>) -> Result<i32> {
    let mut csv = comment_line(config);
    csv.push_str("check_name,value,tolerance,pass\n");
    let mut all_pass = true;
    for row in &rows {
        all_pass &= row.pass;
        let _ = writeln!(
            csv,
            "{},{:?},{:?},{}",
            row.name, row.value, row.tolerance, row.pass
        );
    }
    deliver(config, &csv, None)?;
    Ok(if all_pass { 0 } else { 1 })
}

/// One verification outcome; `pass` is decided by the check itself (some
/// compare against an upper bound, the refinement ratios against a lower
/// one).
struct CheckRow {
    name: String,
    value: f64,
    tolerance: f64,
    pass: bool,
}

impl CheckRow {
    fn below(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            tolerance,
            pass: value < tolerance,
        }
    }

    fn at_least(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            tolerance,
            pass: value >= tolerance,
        }
    }
}

fn comment_line(config: &RunConfig) -> String {
    let mut s = format!("# fractel cmd={}", config.command.name());
    let p = &config.params;
    if let Some(v) = &p.suite {
        let _ = write!(s, " suite={v}");
    }
    if let Some(v) = &p.kind {
        let _ = write!(s, " kind={v}");
    }
    if let Some(v) = p.nu {
        let _ = write!(s, " nu={v:?}");
    }
    if let Some(v) = p.beta {
        let _ = write!(s, " beta={v:?}");
    }
    if let Some(v) = p.lambda {
        let _ = write!(s, " lambda={v:?}");
    }
    if let Some(v) = p.c {
        let _ = write!(s, " c={v:?}");
    }
    if let Some(v) = p.n {
        let _ = write!(s, " n={v}");
    }
    if let Some(xi) = &p.xi {
        let joined: Vec<String> = xi.iter().map(|v| format!("{v:?}")).collect();
        let _ = write!(s, " xi={}", joined.join(","));
    }
    let _ = write!(s, " t={:?} count={} seed={}", config.t, config.count, config.seed);
    if let Some(g) = config.grid {
        let _ = write!(s, " grid={:?},{:?},{}", g.min, g.max, g.steps);
    }
    s.push('\n');
    s
}

fn deliver(config: &RunConfig, csv: &str, curve: Option<&[(f64, f64)]>) -> Result<()> {
    if config.emit_svg {
        let out = config.out_path.as_ref().ok_or_else(|| {
            Error::InvalidParam("--emit-svg needs --out to name the file".to_string())
        })?;
        match curve {
            Some(points) if points.len() >= 2 => {
                let svg = svg_polyline(points);
                std::fs::write(out.with_extension("svg"), svg)
                    .map_err(|e| Error::InvalidParam(format!("cannot write svg: {e}")))?;
            }
            _ => eprintln!("note: no curve to plot, svg skipped"),
        }
    }
    match &config.out_path {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| Error::InvalidParam(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn linspace(grid: GridSpec) -> Result<Vec<f64>> {
    if grid.steps < 2 || !(grid.max > grid.min) {
        return Err(Error::InvalidParam(
            "grid needs min < max and at least 2 steps".to_string(),
        ));
    }
    let h = (grid.max - grid.min) / (grid.steps - 1) as f64;
    Ok((0..grid.steps).map(|i| grid.min + h * i as f64).collect())
}

fn require_kind(config: &RunConfig) -> Result<&str> {
    config
        .params
        .kind
        .as_deref()
        .ok_or_else(|| Error::InvalidParam("--kind is required".to_string()))
}

fn telegraph_spec(p: &Params) -> TelegraphSpec {
    TelegraphSpec::new(p.lambda.unwrap_or(1.0), p.c.unwrap_or(1.0))
}

fn model_params(p: &Params) -> ModelParams {
    ModelParams::new(
        p.nu.unwrap_or(0.5),
        p.beta.unwrap_or(1.0),
        p.lambda.unwrap_or(1.0),
        p.c.unwrap_or(1.0),
        p.n.unwrap_or(1),
    )
}

fn composite_spec(p: &Params) -> CompositeSpec {
    CompositeSpec::new(p.nu.unwrap_or(0.5), p.lambda.unwrap_or(1.0))
}

fn batch_csv(config: &RunConfig, batch: &SampleBatch) -> String {
    let mut csv = comment_line(config);
    let header: Vec<String> = (1..=batch.dim).map(|i| format!("x{i}")).collect();
    csv.push_str(&header.join(","));
    csv.push('\n');
    for i in 0..batch.count {
        let row: Vec<String> = batch.row(i).iter().map(|v| format!("{v:?}")).collect();
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    csv
}

fn planar_csv(config: &RunConfig, samples: &[PlanarSample]) -> String {
    let mut csv = comment_line(config);
    csv.push_str("x1,x2,flag\n");
    for s in samples {
        let flag = if s.defect {
            2
        } else if s.on_boundary {
            1
        } else {
            0
        };
        let _ = writeln!(csv, "{:?},{:?},{flag}", s.x, s.y);
    }
    csv
}

fn render_samples(config: &RunConfig) -> Result<String> {
    let kind = require_kind(config)?;
    let p = &config.params;
    let (t, count, seed) = (config.t, config.count, config.seed);
    match kind {
        "telegraph" => Ok(batch_csv(
            config,
            &telegraph::sample_telegraph(telegraph_spec(p), t, count, seed),
        )),
        "stable" => Ok(batch_csv(
            config,
            &stable::sample_isotropic_stable(
                IsotropicStableSpec::new(p.beta.unwrap_or(1.0), p.n.unwrap_or(1), t),
                count,
                seed,
            ),
        )),
        "subordinator" => Ok(batch_csv(
            config,
            &stable::sample_subordinator(
                SubordinatorSpec::new(p.nu.unwrap_or(0.5), t),
                count,
                seed,
            ),
        )),
        "lcal" => Ok(batch_csv(
            config,
            &subord::sample_inverse(composite_spec(p), t, count, seed)?,
        )),
        "w" => Ok(batch_csv(
            config,
            &compose::sample_w(&model_params(p), t, count, seed)?,
        )),
        "tb" => Ok(batch_csv(
            config,
            &compose::sample_tb(telegraph_spec(p), t, count, seed),
        )),
        "planar" => Ok(planar_csv(
            config,
            &telegraph::sample_planar(telegraph_spec(p), t, count, seed),
        )),
        "planar-odd" => Ok(planar_csv(
            config,
            &telegraph::sample_planar_odd(telegraph_spec(p), t, count, seed),
        )),
        "planar-tb" => Ok(planar_csv(
            config,
            &compose::sample_planar_tb(telegraph_spec(p), t, count, seed),
        )),
        other => Err(Error::InvalidParam(format!("unknown sample kind '{other}'"))),
    }
}

fn render_density(config: &RunConfig) -> Result<(String, Vec<(f64, f64)>)> {
    let kind = require_kind(config)?;
    let grid = config
        .grid
        .ok_or_else(|| Error::InvalidParam("density needs --grid min,max,steps".to_string()))?;
    let xs = linspace(grid)?;
    let p = &config.params;
    let t = config.t;

    // comment lines for point masses and singular arcs, after the params
    let mut extra = String::new();
    let mut planar_cut = false;
    let eval: Box<dyn Fn(f64) -> Result<f64>> = match kind {
        "telegraph" => {
            let spec = telegraph_spec(p);
            let ct = spec.c() * t;
            let atom = (-spec.lambda() * t).exp() / 2.0;
            let _ = writeln!(extra, "# atom,{:?},{:?}", -ct, atom);
            let _ = writeln!(extra, "# atom,{ct:?},{atom:?}");
            Box::new(move |x| {
                Ok(if x.abs() < ct {
                    telegraph::telegraph_pdf(spec, x, t)
                } else {
                    0.0
                })
            })
        }
        "planar" => {
            let spec = telegraph_spec(p);
            let ct = spec.c() * t;
            let _ = writeln!(extra, "# arc,{ct:?},{:?}", (-spec.lambda() * t).exp());
            Box::new(move |rho| {
                Ok(if (0.0..ct).contains(&rho) {
                    telegraph::planar_radial_pdf(spec, rho, t)
                } else {
                    0.0
                })
            })
        }
        "planar-frak" => {
            let spec = telegraph_spec(p);
            let ct = spec.c() * t;
            let _ = writeln!(extra, "# defect,{:?}", (-2.0 * spec.lambda() * t).exp());
            Box::new(move |rho| {
                Ok(if (0.0..ct).contains(&rho) {
                    telegraph::planar_frak_radial_pdf(spec, rho, t)
                } else {
                    0.0
                })
            })
        }
        "subordinator" => {
            let nu = p.nu.unwrap_or(0.5);
            Box::new(move |x| {
                if x <= 0.0 {
                    Ok(0.0)
                } else {
                    stable::subordinator_density(nu, x, t)
                }
            })
        }
        "hcal" => {
            let spec = composite_spec(p);
            Box::new(move |x| {
                if x <= 0.0 {
                    Ok(0.0)
                } else {
                    subord::composite_density(spec, x, t)
                }
            })
        }
        "lcal" => {
            let spec = composite_spec(p);
            // the density has a positive limit at 0; nudge the endpoint
            Box::new(move |x| {
                if x < 0.0 {
                    Ok(0.0)
                } else {
                    subord::inverse_density(spec, x.max(1e-12), t)
                }
            })
        }
        "w1-half" => {
            let spec = telegraph_spec(p);
            Box::new(move |x| compose::w_density_1d_half(spec, x, t))
        }
        "ibm" => Box::new(move |x| compose::iterated_bm_density(x, t)),
        "q" => {
            planar_cut = true;
            let spec = telegraph_spec(p);
            Box::new(move |x| compose::planar_q_density(spec, x, 0.0, t))
        }
        "qfrak" => {
            planar_cut = true;
            let spec = telegraph_spec(p);
            Box::new(move |x| compose::planar_qfrak_density(spec, x, 0.0, t))
        }
        other => Err(Error::InvalidParam(format!(
            "unknown density kind '{other}'"
        )))?,
    };

    let mut csv = comment_line(config);
    csv.push_str(&extra);
    csv.push_str(if planar_cut { "x,y,pdf\n" } else { "x,pdf\n" });
    let mut curve = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = eval(x)?;
        curve.push((x, v));
        if planar_cut {
            let _ = writeln!(csv, "{x:?},0.0,{v:?}");
        } else {
            let _ = writeln!(csv, "{x:?},{v:?}");
        }
    }
    Ok((csv, curve))
}

fn run_char(config: &RunConfig) -> Result<i32> {
    let p = &config.params;
    let kind = p.kind.as_deref().unwrap_or("w");
    let t = config.t;
    let scalar: Box<dyn Fn(f64) -> Result<f64>> = match kind {
        "w" => {
            let model = model_params(p);
            if model.n() != 1 && config.grid.is_some() {
                return Err(Error::InvalidParam(
                    "a grid sweep needs n=1; pass --xi for higher dimensions".to_string(),
                ));
            }
            Box::new(move |xi| Ok(compose::w_char(&model, &[xi], t)?.value))
        }
        "telegraph" => {
            let spec = telegraph_spec(p);
            Box::new(move |xi| Ok(telegraph::telegraph_char(spec, xi, t)))
        }
        "telegraph-frac" => {
            let spec = telegraph_spec(p);
            let beta = p.beta.unwrap_or(1.0);
            Box::new(move |xi| Ok(telegraph::telegraph_frac_char(spec, beta, xi, t)))
        }
        "stable" => {
            let spec = IsotropicStableSpec::new(p.beta.unwrap_or(1.0), 1, t);
            Box::new(move |xi| Ok(stable::stable_char(spec, &[xi])))
        }
        other => {
            return Err(Error::InvalidParam(format!("unknown char kind '{other}'")));
        }
    };

    if let Some(grid) = config.grid {
        let xs = linspace(grid)?;
        let mut csv = comment_line(config);
        csv.push_str("xi,re\n");
        let mut curve = Vec::with_capacity(xs.len());
        for &xi in &xs {
            let v = scalar(xi)?;
            curve.push((xi, v));
            let _ = writeln!(csv, "{xi:?},{v:?}");
        }
        deliver(config, &csv, Some(&curve))?;
        return Ok(0);
    }

    // single point: full-dimensional for the w kind, scalar otherwise
    let value = match (kind, &p.xi) {
        ("w", Some(xi)) => {
            let model = model_params(p);
            compose::w_char(&model, xi, t)?.value
        }
        (_, Some(xi)) if xi.len() == 1 => scalar(xi[0])?,
        (_, Some(_)) => {
            return Err(Error::InvalidParam(
                "this kind takes a scalar --xi".to_string(),
            ));
        }
        (_, None) => {
            return Err(Error::InvalidParam(
                "char needs --xi or --grid".to_string(),
            ));
        }
    };
    match &config.out_path {
        Some(_) => {
            let mut csv = comment_line(config);
            csv.push_str("re\n");
            let _ = writeln!(csv, "{value:?}");
            deliver(config, &csv, None)?;
        }
        None => println!("{value:?}"),
    }
    Ok(0)
}

fn run_suite(name: &str, config: &RunConfig) -> Result<Vec<CheckRow>> {
    match name {
        "roletelegraph" => suite_roletelegraph(config),
        "airy-onethird" => suite_airy_onethird(config),
        "planar-frak" => suite_planar_frak(config),
        "frac-ode" => suite_frac_ode(config),
        other => Err(Error::InvalidParam(format!(
            "unknown suite '{other}'; pick from {SUITES:?}"
        ))),
    }
}

/// Equality in law of `B(c^2 Lcal^{1/2}(t))` and the telegraph process at
/// a reflecting-Brownian time: a two-sample KS test plus characteristic
/// function agreement at Monte Carlo accuracy.
fn suite_roletelegraph(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let p = &config.params;
    let model = model_params(&Params {
        nu: Some(0.5),
        beta: Some(1.0),
        n: Some(1),
        ..p.clone()
    });
    let spec = telegraph_spec(p);
    let (t, count, seed) = (config.t, config.count, config.seed);
    let a = compose::sample_w(&model, t, count, seed)?;
    let b = compose::sample_tb(spec, t, count, seed);
    let ks = verify::ks_two_sample(&a, &b, 0.01);
    let crit = (-(0.01f64 / 2.0).ln() / 2.0).sqrt()
        * ((ks.n1 + ks.n2) as f64 / (ks.n1 as f64 * ks.n2 as f64)).sqrt();
    let mut rows = vec![CheckRow::below("ks_w_vs_tb", ks.statistic, crit)];
    // probe frequencies inside the real branch c^2 xi^2 < lambda^2
    for (label, frac) in [(1, 0.4f64), (2, 0.8)] {
        let xi = frac * model.lambda() / model.c();
        let want = compose::w_char(&model, &[xi], t)?.value;
        let (v, se) = verify::empirical_char(&a, &[xi]);
        rows.push(CheckRow::below(
            &format!("char_xi_{label}"),
            (v - want).abs(),
            4.0 * se,
        ));
    }
    Ok(rows)
}

/// The Airy side of the order-1/3 laws: the Airy integral, the stable-1/3
/// Laplace transform, and mass plus x-Laplace checks for the inverse
/// density against its closed transform.
fn suite_airy_onethird(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let lambda = config.params.lambda.unwrap_or(1.0);
    let t = config.t;
    let mut rows = Vec::new();

    // int_0^inf Ai(-y) dy = 2/3; truncate and push the remainder through
    // Ai(-y) = -(Ai(-y))''/y twice by parts
    let y_hi = 24.0;
    let pts: Vec<f64> = (0..=12).map(|i| y_hi * i as f64 / 12.0).collect();
    let q = quad::adaptive_pts(&|y: f64| specfun::airy_ai(-y).value, &pts, 1e-11)?;
    let ai = specfun::airy_ai(-y_hi).value;
    let aip = specfun::airy_ai_prime(-y_hi).value;
    let tail = -aip / y_hi + ai / (y_hi * y_hi) + 2.0 * aip / y_hi.powi(4)
        - 8.0 * ai / y_hi.powi(5);
    rows.push(CheckRow::below(
        "airy_integral",
        (q.value + tail - 2.0 / 3.0).abs(),
        1e-8,
    ));

    // x-Laplace of h_{1/3}(x, t) is e^{-t mu^{1/3}}
    let lap = verify::numerical_laplace(
        |x| stable::subordinator_density(1.0 / 3.0, x, t).unwrap_or(f64::NAN),
        1.0,
    )?;
    rows.push(CheckRow::below(
        "h_third_laplace",
        (lap.value - (-t).exp()).abs(),
        1e-6,
    ));

    // tabulate the inverse density once; reuse for mass and transforms
    let spec = CompositeSpec::new(1.0 / 3.0, lambda);
    let x_hi = 14.0 * (3.0 * t).cbrt() / (2.0 * lambda);
    let cells = 256usize;
    let h = x_hi / cells as f64;
    let mut dens = Vec::with_capacity(cells + 1);
    for i in 0..=cells {
        let x = if i == 0 { 1e-9 * x_hi } else { i as f64 * h };
        dens.push(subord::inverse_density(spec, x, t)?);
    }
    let simpson = |weigh: &dyn Fn(f64, f64) -> f64| {
        let mut acc = 0.0;
        for i in 0..=cells {
            let w = if i == 0 || i == cells {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += w * weigh(i as f64 * h, dens[i]);
        }
        acc * h / 3.0
    };
    let mass = simpson(&|_, f| f);
    rows.push(CheckRow::below("lcal_third_mass", (mass - 1.0).abs(), 1e-4));
    for frac in [0.25f64, 0.5] {
        let gamma = frac * lambda * lambda;
        let got = simpson(&|x, f| (-gamma * x).exp() * f);
        let want = subord::inverse_density_laplace(spec, gamma, t)?;
        rows.push(CheckRow::below(
            &format!("lcal_third_laplace_{frac}"),
            (got - want).abs(),
            1e-3,
        ));
    }
    Ok(rows)
}

/// Planar flight mass identities, the Poisson mixture form of the
/// absolutely continuous part, and the Fourier match between the
/// even-flight time change and the explicit characteristic function.
fn suite_planar_frak(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let p = &config.params;
    let spec = telegraph_spec(p);
    let t = config.t;
    let (lambda, c) = (spec.lambda(), spec.c());
    let ct = c * t;
    let lt = lambda * t;
    let mut rows = Vec::new();

    // interior mass through rho = ct sin(phi), cancelling the rim factor
    let mass_of = |radial: &dyn Fn(f64) -> f64| -> Result<f64> {
        let f = |phi: f64| {
            let rho = ct * phi.sin();
            radial(rho) * ct * phi.cos()
        };
        Ok(quad::adaptive_pts(&f, &[0.0, 0.8, std::f64::consts::FRAC_PI_2], 1e-9)?.value)
    };
    let m = mass_of(&|rho| telegraph::planar_radial_pdf(spec, rho, t))?;
    rows.push(CheckRow::below(
        "r_mass_with_atom",
        (m + (-lt).exp() - 1.0).abs(),
        1e-5,
    ));
    let m = mass_of(&|rho| telegraph::planar_frak_radial_pdf(spec, rho, t))?;
    rows.push(CheckRow::below(
        "rfrak_mass",
        (m + (-2.0 * lt).exp() - 1.0).abs(),
        1e-5,
    ));

    // Poisson mixture of conditional radial laws, 60 terms
    let rho = 0.47 * ct;
    let mut mix = 0.0;
    let mut pn = (-lt).exp();
    for n in 1..=60usize {
        pn *= lt / n as f64;
        mix += pn * telegraph::planar_conditional_radial_pdf(n, rho, c, t);
    }
    let direct = telegraph::planar_radial_pdf(spec, rho, t);
    rows.push(CheckRow::below(
        "mixture_identity",
        (mix - direct).abs(),
        1e-8,
    ));

    // full mass of the even-flight time-changed density
    let r_hi = ct.max(8.0 * c * (2.0 * t).sqrt());
    let radial_q = |rho: f64| -> f64 {
        if rho <= 0.0 {
            return 0.0;
        }
        match compose::planar_qfrak_density(spec, rho, 0.0, t) {
            Ok(v) => 2.0 * std::f64::consts::PI * rho * v,
            Err(_) => f64::NAN,
        }
    };
    let q = quad::adaptive_pts(&radial_q, &[0.0, 0.5 * ct, ct, r_hi], 1e-7)?;
    rows.push(CheckRow::below("qfrak_mass", (q.value - 1.0).abs(), 1e-5));

    // 2d Fourier transform against the explicit characteristic function,
    // probed inside the real branch c^2 |xi|^2 < lambda^2
    let model = ModelParams::new(0.5, 1.0, lambda, c, 2);
    for (label, frac) in [(1, 0.4f64), (2, 0.8)] {
        let xi = frac * lambda / c;
        let f = |rho: f64| {
            if rho <= 0.0 {
                return 0.0;
            }
            radial_q(rho) * specfun::bessel_j0(xi * rho)
        };
        let got = quad::adaptive_pts(&f, &[0.0, 0.5 * ct, ct, r_hi], 1e-7)?.value;
        let want = compose::w_char(&model, &[xi, 0.0], t)?.value;
        rows.push(CheckRow::below(
            &format!("qfrak_fourier_{label}"),
            (got - want).abs(),
            1e-4,
        ));
    }
    Ok(rows)
}

/// Residual decay of the governing fractional relation on the transformed
/// curve: each grid doubling must at least halve the L1 residual.
fn suite_frac_ode(config: &RunConfig) -> Result<Vec<CheckRow>> {
    let p = &config.params;
    let nu = p.nu.unwrap_or(0.5);
    let lambda = p.lambda.unwrap_or(1.0);
    let c = p.c.unwrap_or(1.0);
    let beta = p.beta.unwrap_or(1.0);
    let xi_sq = 0.25f64;
    let coeff = c * c * xi_sq.powf(beta);
    if lambda * lambda <= coeff {
        return Err(Error::InvalidParam(
            "frac-ode needs lambda^2 > c^2 |xi|^{2 beta} for the probe frequency".to_string(),
        ));
    }
    let spec = CompositeSpec::new(nu, lambda);
    let t_end = config.t;
    let curve = |tt: f64| {
        if tt == 0.0 {
            1.0
        } else {
            subord::inverse_density_laplace(spec, coeff, tt).unwrap_or(f64::NAN)
        }
    };
    let grid_of = |n: usize| -> Vec<f64> {
        (0..=n).map(|i| t_end * i as f64 / n as f64).collect()
    };

    let ones = GridFunction::sample(grid_of(64), |_| 1.0);
    let r0 = verify::frac_ode_residual(nu, lambda, 0.0, &ones)?;
    let mut rows = vec![CheckRow::below("constant_annihilated", r0, 1e-12)];

    let mut residuals = Vec::new();
    for n in [64usize, 128, 256, 512] {
        let f = GridFunction::sample(grid_of(n), curve);
        residuals.push(verify::frac_ode_residual(nu, lambda, coeff, &f)?);
    }
    for k in 0..3 {
        rows.push(CheckRow::at_least(
            &format!("residual_ratio_{}", k + 1),
            residuals[k] / residuals[k + 1],
            2.0,
        ));
    }
    Ok(rows)
}

fn svg_polyline(points: &[(f64, f64)]) -> String {
    let (w, h) = (800.0f64, 480.0f64);
    let (ml, mr, mt, mb) = (70.0f64, 20.0f64, 20.0f64, 45.0f64);
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        if x.is_finite() && y.is_finite() {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    if !(y1 > y0) {
        y1 = y0 + 1.0;
    }
    let sx = (w - ml - mr) / (x1 - x0);
    let sy = (h - mt - mb) / (y1 - y0);
    let mut path = String::new();
    for &(x, y) in points {
        if !(x.is_finite() && y.is_finite()) {
            continue;
        }
        let px = ml + (x - x0) * sx;
        let py = h - mb - (y - y0) * sy;
        let _ = write!(path, "{px:.2},{py:.2} ");
    }
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<line x1=\"{ml}\" y1=\"{yax}\" x2=\"{xr}\" y2=\"{yax}\" stroke=\"#888\"/>\n",
            "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{yax}\" stroke=\"#888\"/>\n",
            "<text x=\"{ml}\" y=\"{ylab}\" font-size=\"12\" fill=\"#444\">{x0:.4} .. {x1:.4}</text>\n",
            "<text x=\"4\" y=\"{mt2}\" font-size=\"12\" fill=\"#444\">{y1:.4}</text>\n",
            "<text x=\"4\" y=\"{yax}\" font-size=\"12\" fill=\"#444\">{y0:.4}</text>\n",
            "<polyline points=\"{path}\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\"/>\n",
            "</svg>\n"
        ),
        w = w,
        h = h,
        ml = ml,
        mt = mt,
        mt2 = mt + 12.0,
        xr = w - mr,
        yax = h - mb,
        ylab = h - mb + 16.0,
        x0 = x0,
        x1 = x1,
        y0 = y0,
        y1 = y1,
        path = path.trim_end(),
    )
}
