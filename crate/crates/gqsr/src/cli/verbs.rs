//! The CLI verbs: accepted keys and what each run computes.

use serde_json::{json, Value};

use super::config::{key, Key, Params};
use super::output::{Cell, RunOutput, Table};
use crate::collapse::{ks_statistic, sample_collapse_times, survival_probability};
use crate::constants::{lookup_species, GammaParameter, G, HBAR};
use crate::decoherence::{channel_exponent, Background, Channel, DensityScale, ThermalModel};
use crate::density::{condensate_profile, CondensateSpec, DensityProfile, Regime};
use crate::error::{invalid, Error, Result};
use crate::feasibility::{
    best_point, dominance_scan, flip_temperature, preset, verdict_counts, ScanAxis, ScanParam, ScanRequest,
    Scenario, Spacing,
};
use crate::geometry::{equivalent_spheroid, Axis, ConfigLabel, Shape, ShapeKind, SuperpositionConfig};
use crate::oracle::{eg_bruteforce, fit_decay_exponent, lindblad_decay};
use crate::self_energy::{
    eg_gaussian_sphere, eg_infinite_separation, eg_numeric, eg_tf_prolate_limit, eg_tf_sphere,
    eg_uniform_sphere, eg_uniform_spheroid_limit, NumericOptions, SelfEnergyResult,
};
use crate::twomode::{
    factorial, ground_state_fidelity_with_noon, n_particle_correlation, noon_correlation_exact, noon_state,
    BoseHubbardParams, Branch,
};

pub const VERBS: [&str; 7] =
    ["eg-curve", "contour", "lifetime", "decoherence", "feasibility", "oracle-check", "twomode-check"];

const EG_CURVE: &[Key] = &[
    key("profile", "uniform", "uniform | tf | gaussian"),
    key("config", "sphere", "sphere | a | b | c | d"),
    key("epsilon", "1", "axis ratio minor/major of the volume-matched spheroid"),
    key("lambda_min", "0", "first b/(2R)"),
    key("lambda_max", "3", "last b/(2R)"),
    key("points", "61", "grid points"),
    key("lambdas", "", "explicit comma-separated b/(2R) values; overrides the grid"),
    key("method", "auto", "auto | closed | numeric | limit | oracle"),
    key("rel_tol", "1e-6", "relative tolerance of the quadrature"),
    key("cells", "48", "oracle cells across the largest diameter"),
    key("mass", "1e-14", "total mass (kg)"),
    key("radius", "1e-6", "equivalent-sphere radius or Gaussian width R (m)"),
    key("gamma", "", "collapse parameter; number or 8pi (default 1/(8pi))"),
];

const CONTOUR: &[Key] = &[
    key("pair", "a_vs_sphere", "a_vs_sphere | d_vs_sphere | a_vs_d"),
    key("regime", "uniform", "uniform | tf"),
    key("eps_min", "0.01", "smallest axis ratio"),
    key("eps_max", "1", "largest axis ratio"),
    key("eps_points", "12", "axis-ratio grid points (log spaced)"),
    key("b_min", "0.01", "smallest b/R"),
    key("b_max", "10", "largest b/R"),
    key("b_points", "13", "b grid points (log spaced)"),
    key("rel_tol", "1e-6", "relative tolerance of the quadrature"),
];

const LIFETIME: &[Key] = &[
    key("preset", "", "cs-4e9-1um | feynman-sphere"),
    key("body", "tf", "tf | gaussian | uniform"),
    key("species", "Cs133", "atomic species"),
    key("n_atoms", "", "atom number (with species)"),
    key("mass", "", "total mass (kg); overrides species and n_atoms"),
    key("radius", "", "radius or Gaussian width (m)"),
    key("omega", "", "spherical trap frequency (rad/s), used when radius is not given"),
    key("separation", "touching", "touching | far | b"),
    key("b", "", "displacement (m) when separation = b"),
    key("times", "", "comma-separated times (s) for survival probabilities"),
    key("samples", "0", "number of sampled collapse times"),
    key("gamma", "", "collapse parameter; number or 8pi (default 1/(8pi))"),
];

const SCENARIO: &[Key] = &[
    key("preset", "", "tf-threebody | tf-threebody-large | gamma-8pi | gaussian-thermal | tf-thermal | cs-4e9-1um"),
    key("species", "", "atomic species (default Cs133)"),
    key("n_atoms", "", "atom number"),
    key("regime", "", "tf | gaussian (default tf)"),
    key("radius", "", "TF radius or Gaussian width (m); derived from omega when empty"),
    key("omega", "", "spherical trap frequency (rad/s)"),
    key("a_s", "", "scattering length (m); default: species value"),
    key("a_s_divisor", "", "divides the scattering length (Feshbach tuning)"),
    key("temperature", "", "temperature (K)"),
    key("lambda", "", "b/(2R); 1 = touching"),
    key("gamma", "", "collapse parameter; number or 8pi (default 1/(8pi))"),
    key("density_scale", "", "peak | mean density in the three-body rate"),
    key("thermal_model", "", "gaussian_cloud | tf_cloud"),
    key("mu_thermal", "", "thermal-cloud chemical potential (J)"),
    key("background_species", "", "background gas species (default H1 when pressure > 0)"),
    key("pressure", "", "background pressure (Pa)"),
    key("background_temperature", "", "background temperature (K), default 293"),
    key("c6", "", "background C6 override (J m^6)"),
    key("threshold", "", "collapse must beat decoherence by this factor (default 10)"),
];

const DECOHERENCE_EXTRA: &[Key] =
    &[key("t_max", "", "last time (s); default 3 collapse lifetimes"), key("points", "101", "time points")];

const FEASIBILITY_EXTRA: &[Key] = &[
    key("scan1", "", "param,min,max,points[,lin|log]"),
    key("scan2", "", "second axis, same form"),
    key("flip_t_min", "", "lower end (K) of the verdict-flip temperature search"),
    key("flip_t_max", "", "upper end (K) of the verdict-flip temperature search"),
];

const ORACLE_CHECK: &[Key] = &[
    key("cases", "uniform-sphere-l1", "comma-separated cases, or all-voxel / all-lindblad"),
    key("tolerance", "0.01", "relative tolerance for voxel cases"),
    key("lindblad_tolerance", "0.05", "relative tolerance for master-equation cases"),
    key("cells", "48", "cells across the diameter"),
];

const TWOMODE_CHECK: &[Key] = &[
    key("n_max", "20", "largest N for the NOON correlation check (<= 20)"),
    key("n", "8", "atom number for the ground-state check"),
    key("u_over_e", "-1e4", "comma-separated U/E_LR values"),
    key("branch", "auto", "auto | ground | highest"),
];

/// Keys accepted by `verb`.
pub fn keys(verb: &str) -> Result<Vec<Key>> {
    Ok(match verb {
        "eg-curve" => EG_CURVE.to_vec(),
        "contour" => CONTOUR.to_vec(),
        "lifetime" => LIFETIME.to_vec(),
        "decoherence" => [SCENARIO, DECOHERENCE_EXTRA].concat(),
        "feasibility" => [SCENARIO, FEASIBILITY_EXTRA].concat(),
        "oracle-check" => ORACLE_CHECK.to_vec(),
        "twomode-check" => TWOMODE_CHECK.to_vec(),
        _ => return Err(invalid(format!("unknown verb `{verb}`"))),
    })
}

/// Result of a verb plus the checks it failed, if it runs any.
pub struct VerbOutput {
    pub output: RunOutput,
    pub failures: Vec<String>,
}

impl From<RunOutput> for VerbOutput {
    fn from(output: RunOutput) -> Self {
        Self { output, failures: Vec::new() }
    }
}

pub fn execute(verb: &str, p: &Params, seed: u64) -> Result<VerbOutput> {
    match verb {
        "eg-curve" => eg_curve(p).map(Into::into),
        "contour" => contour(p).map(Into::into),
        "lifetime" => lifetime(p, seed).map(Into::into),
        "decoherence" => decoherence(p).map(Into::into),
        "feasibility" => feasibility(p).map(Into::into),
        "oracle-check" => oracle_check(p),
        "twomode-check" => twomode_check(p),
        _ => Err(invalid(format!("unknown verb `{verb}`"))),
    }
}

fn gamma(p: &Params) -> Result<GammaParameter> {
    match p.str("gamma") {
        "" => Ok(GammaParameter::default()),
        "8pi" => Ok(GammaParameter::eight_pi()),
        "1/8pi" => Ok(GammaParameter::default()),
        _ => GammaParameter::new(p.f64("gamma")?),
    }
}

fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len()).max(1);
    let chunk = items.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> =
            items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn grid(min: f64, max: f64, n: usize, spacing: Spacing) -> Result<Vec<f64>> {
    ScanAxis { param: ScanParam::Gamma, min, max, points: n, spacing }.values()
}

// ---------------------------------------------------------------- eg-curve

#[derive(Clone, Copy, PartialEq)]
enum EgMethod {
    Auto,
    Closed,
    Numeric,
    Limit,
    Oracle,
}

struct Body {
    profile: DensityProfile,
    axis: Axis,
    /// Equivalent radius (m).
    r: f64,
}

fn body(regime: Regime, label: Option<ConfigLabel>, eps: f64, r: f64, m: f64) -> Result<Body> {
    let (kind, axis) = label.map_or((ShapeKind::Sphere, Axis::Symmetry), ConfigLabel::geometry);
    let shape = if kind == ShapeKind::Sphere || eps == 1.0 { Shape::sphere(r)? } else { equivalent_spheroid(r, eps, kind)? };
    Ok(Body { profile: DensityProfile::new(regime, shape, m)?, axis, r })
}

fn eg_at(b: &Body, lambda: f64, method: EgMethod, opts: &NumericOptions, cells: usize) -> Result<SelfEnergyResult> {
    let p = &b.profile;
    let (m, r) = (p.mass, b.r);
    let sphere = p.shape.kind() == ShapeKind::Sphere;
    let dist = 2.0 * lambda * r;
    let closed = || match p.regime {
        Regime::Uniform => eg_uniform_sphere(lambda, m, r),
        Regime::ThomasFermi => eg_tf_sphere(lambda, m, r),
        Regime::Gaussian => eg_gaussian_sphere(lambda, m, r),
    };
    match method {
        EgMethod::Closed | EgMethod::Auto if sphere => closed(),
        EgMethod::Closed => Err(Error::NotApplicable("closed forms exist for spheres only; use numeric".into())),
        EgMethod::Auto | EgMethod::Numeric => {
            if dist == 0.0 {
                return Ok(SelfEnergyResult::from_dimensionless(0.0, m, r, crate::self_energy::Method::ClosedForm, 0.0));
            }
            eg_numeric(p, &SuperpositionConfig::new(p.shape, dist, b.axis)?, opts)
        }
        EgMethod::Limit => {
            let cfg = SuperpositionConfig::new(p.shape, dist, b.axis)?;
            match p.regime {
                Regime::Uniform => eg_uniform_spheroid_limit(&cfg, m),
                Regime::ThomasFermi if p.shape.kind() == ShapeKind::Prolate && b.axis == Axis::Symmetry => {
                    eg_tf_prolate_limit(dist / (2.0 * p.shape.c()), m, p.shape.a(), p.shape.epsilon())
                }
                _ => Err(Error::NotApplicable("limit formulas cover uniform a/b and TF b only".into())),
            }
        }
        EgMethod::Oracle => {
            let cfg = SuperpositionConfig::new(p.shape, dist, b.axis)?;
            eg_bruteforce(p, &cfg, 2.0 * p.shape.major() / cells as f64)
        }
    }
}

fn in_units(e: &SelfEnergyResult, m: f64, r: f64) -> f64 {
    e.value * r / (G * m * m)
}

fn eg_curve(p: &Params) -> Result<RunOutput> {
    let regime = Regime::parse(p.str("profile"))?;
    let label = match p.str("config") {
        "sphere" => None,
        s => Some(ConfigLabel::parse(s)?),
    };
    let eps = p.f64("epsilon")?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(invalid("epsilon must be in (0, 1]"));
    }
    let method = match p.str("method") {
        "auto" => EgMethod::Auto,
        "closed" => EgMethod::Closed,
        "numeric" => EgMethod::Numeric,
        "limit" => EgMethod::Limit,
        "oracle" => EgMethod::Oracle,
        s => return Err(invalid(format!("unknown method `{s}`"))),
    };
    let lambdas = if p.is_set("lambdas") {
        p.f64_list("lambdas")?
    } else {
        grid(p.f64("lambda_min")?, p.f64("lambda_max")?, p.usize("points")?, Spacing::Linear)?
    };
    if lambdas.is_empty() || lambdas.iter().any(|l| !(*l >= 0.0)) {
        return Err(invalid("lambda values must be >= 0"));
    }
    let (m, r, g) = (p.f64("mass")?, p.f64("radius")?, gamma(p)?);
    let b = body(regime, label, eps, r, m)?;
    let opts = NumericOptions::rel(p.f64("rel_tol")?);
    let cells = p.usize("cells")?;
    let results = par_map(&lambdas, |&l| eg_at(&b, l, method, &opts, cells));
    let mut t = Table::new(
        "eg_curve",
        "eg-curve/1",
        &[
            ("lambda", "1"),
            ("b", "m"),
            ("eg_dimensionless", "G M^2 / R"),
            ("eg", "J"),
            ("tau", "s"),
            ("method", "-"),
            ("rel_err", "1"),
        ],
    );
    for (&l, e) in lambdas.iter().zip(results) {
        let e = e?;
        let scaled = e.scaled(g);
        t.push(vec![
            l.into(),
            (2.0 * l * r).into(),
            in_units(&e, m, r).into(),
            scaled.value.into(),
            (HBAR / scaled.value).into(),
            e.method.as_str().into(),
            e.rel_error.into(),
        ]);
    }
    let inf = eg_infinite_separation(&b.profile);
    let summary = json!({
        "verb": "eg-curve",
        "profile": regime.as_str(),
        "config": p.str("config"),
        "epsilon": eps,
        "points": lambdas.len(),
        "eg_infinite_dimensionless": in_units(&inf, m, r),
        "gamma_factor": g.factor(),
        "headline": format!("{} rows; E_G(inf) = {:.6} G M^2/R", lambdas.len(), in_units(&inf, m, r)),
    });
    Ok(RunOutput { tables: vec![t], summary })
}

// ---------------------------------------------------------------- contour

fn contour(p: &Params) -> Result<RunOutput> {
    let regime = match p.str("regime") {
        "uniform" => Regime::Uniform,
        "tf" => Regime::ThomasFermi,
        s => return Err(invalid(format!("contour regime must be uniform or tf, got `{s}`"))),
    };
    let (first, second) = match p.str("pair") {
        "a_vs_sphere" => (Some(ConfigLabel::A), None),
        "d_vs_sphere" => (Some(ConfigLabel::D), None),
        "a_vs_d" => (Some(ConfigLabel::A), Some(ConfigLabel::D)),
        s => return Err(invalid(format!("unknown pair `{s}` (a_vs_sphere, d_vs_sphere, a_vs_d)"))),
    };
    let eps = grid(p.f64("eps_min")?, p.f64("eps_max")?, p.usize("eps_points")?, Spacing::Log)?;
    if eps.iter().any(|e| *e > 1.0) {
        return Err(invalid("axis ratios must be <= 1"));
    }
    let bs = grid(p.f64("b_min")?, p.f64("b_max")?, p.usize("b_points")?, Spacing::Log)?;
    let opts = NumericOptions::rel(p.f64("rel_tol")?);
    let pts: Vec<(f64, f64)> = eps.iter().flat_map(|&e| bs.iter().map(move |&b| (e, b))).collect();
    let eval = |label: Option<ConfigLabel>, e: f64, b: f64| -> Result<f64> {
        let body = body(regime, label, e, 1.0, 1.0)?;
        let method = if label.is_none() || e == 1.0 { EgMethod::Auto } else { EgMethod::Numeric };
        Ok(in_units(&eg_at(&body, b / 2.0, method, &opts, 0)?, 1.0, 1.0))
    };
    let vals = par_map(&pts, |&(e, b)| -> Result<(f64, f64)> { Ok((eval(first, e, b)?, eval(second, e, b)?)) });
    let mut t = Table::new(
        "contour",
        "contour/1",
        &[("epsilon", "1"), ("b_over_r", "1"), ("eg_first", "G M^2 / R"), ("eg_second", "G M^2 / R"), ("ratio", "1")],
    );
    let mut corner = None;
    for (&(e, b), v) in pts.iter().zip(vals) {
        let (x, y) = v?;
        corner.get_or_insert(x / y);
        t.push(vec![e.into(), b.into(), x.into(), y.into(), (x / y).into()]);
    }
    let summary = json!({
        "verb": "contour",
        "pair": p.str("pair"),
        "regime": regime.as_str(),
        "corner_ratio": corner,
        "headline": format!("{} points; ratio at (eps_min, b_min) = {:.6}", pts.len(), corner.unwrap_or(f64::NAN)),
    });
    Ok(RunOutput { tables: vec![t], summary })
}

// ---------------------------------------------------------------- lifetime

fn lifetime(p: &Params, seed: u64) -> Result<RunOutput> {
    let regime = Regime::parse(p.str("body"))?;
    let species = lookup_species(p.str("species"))?;
    let m = match (p.opt_f64("mass")?, p.opt_f64("n_atoms")?) {
        (Some(m), _) => m,
        (None, Some(n)) => n * species.mass(),
        _ => return Err(invalid("give mass, or species and n_atoms")),
    };
    let r = match (p.opt_f64("radius")?, p.opt_f64("omega")?) {
        (Some(r), _) => r,
        (None, Some(w)) if regime != Regime::Uniform => {
            let n = m / species.mass();
            condensate_profile(&CondensateSpec::spherical(species.clone(), n, w)?, regime)?.shape.a()
        }
        _ => return Err(invalid("give radius (or omega for a condensate)")),
    };
    let g = gamma(p)?;
    let profile = DensityProfile::new(regime, Shape::sphere(r)?, m)?;
    let (lambda, e) = match p.str("separation") {
        "touching" => (1.0, sphere_eg(regime, 1.0, m, r)?),
        "far" => (f64::INFINITY, eg_infinite_separation(&profile)),
        "b" => {
            let l = p.f64("b")? / (2.0 * r);
            (l, sphere_eg(regime, l, m, r)?)
        }
        s => return Err(invalid(format!("separation must be touching, far or b, got `{s}`"))),
    };
    let e = e.scaled(g);
    let tau = e.lifetime();
    let mut t = Table::new(
        "lifetime",
        "lifetime/1",
        &[
            ("body", "-"),
            ("mass", "kg"),
            ("radius", "m"),
            ("lambda", "1"),
            ("gamma_factor", "1"),
            ("eg", "J"),
            ("tau", "s"),
            ("method", "-"),
        ],
    );
    t.push(vec![
        regime.as_str().into(),
        m.into(),
        r.into(),
        lambda.into(),
        g.factor().into(),
        e.value.into(),
        tau.into(),
        e.method.as_str().into(),
    ]);
    let mut tables = vec![t];
    let times = p.f64_list("times")?;
    if !times.is_empty() {
        let mut s = Table::new(
            "survival",
            "survival/1",
            &[("t", "s"), ("log_survival", "1"), ("survival", "1"), ("decay", "1")],
        );
        for &x in &times {
            let v = survival_probability(e.value, x)?;
            s.push(vec![x.into(), v.log_survival.into(), v.survival.into(), v.decay.into()]);
        }
        tables.push(s);
    }
    let n_samples = p.usize("samples")?;
    let mut sampling = Value::Null;
    if n_samples > 0 {
        let draws = sample_collapse_times(e.value, n_samples, seed)?;
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        sampling = json!({
            "count": n_samples,
            "seed": seed,
            "algorithm": crate::collapse::RNG_ALGORITHM,
            "mean": mean,
            "mean_over_tau": mean / tau,
            "ks_statistic": ks_statistic(&draws, tau),
        });
        let mut s = Table::new("collapse_samples", "collapse-samples/1", &[("index", "1"), ("t", "s")]);
        for (i, d) in draws.into_iter().enumerate() {
            s.push(vec![i.into(), d.into()]);
        }
        tables.push(s);
    }
    let summary = json!({
        "verb": "lifetime",
        "eg": e.value,
        "tau": tau,
        "sampling": sampling,
        "headline": format!("tau = {} s", super::output::fmt_num(tau)),
    });
    Ok(RunOutput { tables, summary })
}

fn sphere_eg(regime: Regime, lambda: f64, m: f64, r: f64) -> Result<SelfEnergyResult> {
    match regime {
        Regime::Uniform => eg_uniform_sphere(lambda, m, r),
        Regime::ThomasFermi => eg_tf_sphere(lambda, m, r),
        Regime::Gaussian => eg_gaussian_sphere(lambda, m, r),
    }
}

// ---------------------------------------------------------------- scenarios

pub fn scenario(p: &Params) -> Result<Scenario> {
    let mut s = if p.is_set("preset") {
        preset(p.str("preset"))?
    } else {
        let sp = lookup_species(if p.is_set("species") { p.str("species") } else { "Cs133" })?;
        let n = p.opt_f64("n_atoms")?.ok_or_else(|| invalid("n_atoms is required without a preset"))?;
        let regime = if p.is_set("regime") { Regime::parse(p.str("regime"))? } else { Regime::ThomasFermi };
        Scenario::new(sp, n, regime)
    };
    if p.is_set("species") {
        s.species = lookup_species(p.str("species"))?;
        s.a_s = s.species.default_scattering_length();
    }
    if let Some(n) = p.opt_f64("n_atoms")? {
        s.n_atoms = n;
    }
    if p.is_set("regime") {
        s.regime = Regime::parse(p.str("regime"))?;
        s.thermal_model = match s.regime {
            Regime::ThomasFermi => ThermalModel::TfCloud,
            _ => ThermalModel::GaussianCloud,
        };
    }
    if let Some(r) = p.opt_f64("radius")? {
        s.radius = Some(r);
    }
    if let Some(w) = p.opt_f64("omega")? {
        s.omega = Some(w);
    }
    if let Some(a) = p.opt_f64("a_s")? {
        s.a_s = a;
    }
    if let Some(d) = p.opt_f64("a_s_divisor")? {
        if !(d > 0.0) {
            return Err(invalid("a_s_divisor must be > 0"));
        }
        s.a_s /= d;
    }
    if let Some(t) = p.opt_f64("temperature")? {
        s.temperature = t;
    }
    if let Some(l) = p.opt_f64("lambda")? {
        s.lambda = l;
    }
    if p.is_set("gamma") {
        s.gamma = gamma(p)?;
    }
    if p.is_set("density_scale") {
        s.density_scale = DensityScale::parse(p.str("density_scale"))?;
    }
    if p.is_set("thermal_model") {
        s.thermal_model = ThermalModel::parse(p.str("thermal_model"))?;
    }
    if let Some(mu) = p.opt_f64("mu_thermal")? {
        s.mu_thermal = mu;
    }
    if let Some(th) = p.opt_f64("threshold")? {
        s.threshold = th;
    }
    let pressure = p.opt_f64("pressure")?.unwrap_or(0.0);
    if p.is_set("background_species") || pressure > 0.0 {
        let sp = lookup_species(if p.is_set("background_species") { p.str("background_species") } else { "H1" })?;
        let mut bg = Background::new(sp, pressure);
        if let Some(t) = p.opt_f64("background_temperature")? {
            bg.temperature = t;
        }
        bg.c6 = p.opt_f64("c6")?;
        s.background = Some(bg);
    }
    Ok(s)
}

fn decoherence(p: &Params) -> Result<RunOutput> {
    let s = scenario(p)?;
    let r = s.evaluate()?;
    let t_max = p.opt_f64("t_max")?.unwrap_or(3.0 * r.tau);
    let times = grid(0.0, t_max, p.usize("points")?, Spacing::Linear)?;
    let mut t = Table::new(
        "decoherence",
        "decoherence/1",
        &[
            ("t", "s"),
            ("collapse", "1"),
            ("three_body", "1"),
            ("thermal", "1"),
            ("foreign", "1"),
            ("environment", "1"),
            ("log_total", "1"),
        ],
    );
    for &x in &times {
        let lc = -r.collapse_rate * x;
        let l3 = -r.exponent_three_body * x;
        let lt = -r.exponent_thermal * x;
        let lf = -r.exponent_foreign * x;
        t.push(vec![
            x.into(),
            lc.exp().into(),
            l3.exp().into(),
            lt.exp().into(),
            lf.exp().into(),
            (l3 + lt + lf).exp().into(),
            (lc + l3 + lt + lf).into(),
        ]);
    }
    let summary = json!({
        "verb": "decoherence",
        "scenario": s,
        "report": r,
        "headline": format!("collapse {} /s vs decoherence {} /s: {}",
            super::output::fmt_num(r.collapse_rate), super::output::fmt_num(r.total_exponent), r.verdict.as_str()),
    });
    Ok(RunOutput { tables: vec![t], summary })
}

fn scan_axis(spec: &str) -> Result<ScanAxis> {
    let f: Vec<&str> = spec.split(',').map(str::trim).collect();
    if !(4..=5).contains(&f.len()) {
        return Err(invalid(format!("scan axis `{spec}`: expected param,min,max,points[,lin|log]")));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|_| invalid(format!("scan axis `{spec}`: `{s}` is not a number")));
    let points = f[3].parse::<usize>().map_err(|_| invalid(format!("scan axis `{spec}`: bad point count")))?;
    let spacing = match f.get(4).copied().unwrap_or("lin") {
        "lin" => Spacing::Linear,
        "log" => Spacing::Log,
        s => return Err(invalid(format!("scan spacing must be lin or log, got `{s}`"))),
    };
    Ok(ScanAxis { param: ScanParam::parse(f[0])?, min: num(f[1])?, max: num(f[2])?, points, spacing })
}

fn ratio_text(r: f64) -> String {
    if (1e-2..1e4).contains(&r) {
        format!("{r:.3}")
    } else {
        format!("{r:.3e}")
    }
}

fn feasibility(p: &Params) -> Result<RunOutput> {
    let s = scenario(p)?;
    let base = s.evaluate()?;
    let axes: Vec<ScanAxis> = ["scan1", "scan2"].iter().filter(|k| p.is_set(k)).map(|k| scan_axis(p.str(k))).collect::<Result<_>>()?;
    let mut cols: Vec<(String, String)> =
        axes.iter().map(|a| (a.param.as_str().to_string(), a.param.unit().to_string())).collect();
    for (n, u) in [
        ("radius", "m"),
        ("eg", "J"),
        ("tau", "s"),
        ("collapse_rate", "1/s"),
        ("gamma3", "1/s"),
        ("gamma_t", "1/s"),
        ("gamma_f", "1/s"),
        ("exponent_three_body", "1/s"),
        ("exponent_thermal", "1/s"),
        ("exponent_foreign", "1/s"),
        ("total_exponent", "1/s"),
        ("ratio", "1"),
        ("verdict", "-"),
    ] {
        cols.push((n.into(), u.into()));
    }
    let colrefs: Vec<(&str, &str)> = cols.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let mut t = Table::new("feasibility", "feasibility/1", &colrefs);
    let points = if axes.is_empty() {
        vec![crate::feasibility::ScanPoint { coords: vec![], report: base.clone() }]
    } else {
        dominance_scan(&ScanRequest { base: s.clone(), axes: axes.clone() })?
    };
    for pt in &points {
        let r = &pt.report;
        let mut row: Vec<Cell> = pt.coords.iter().map(|&c| c.into()).collect();
        row.extend([
            r.radius.into(),
            r.e_g.into(),
            r.tau.into(),
            r.collapse_rate.into(),
            r.rates.gamma3.into(),
            r.rates.gamma_t.into(),
            r.rates.gamma_f.into(),
            r.exponent_three_body.into(),
            r.exponent_thermal.into(),
            r.exponent_foreign.into(),
            r.total_exponent.into(),
            r.ratio.into(),
            r.verdict.as_str().into(),
        ]);
        t.push(row);
    }
    let flip = match (p.opt_f64("flip_t_min")?, p.opt_f64("flip_t_max")?) {
        (Some(lo), Some(hi)) => flip_temperature(&s, lo, hi)?,
        (None, None) => None,
        _ => return Err(invalid("give both flip_t_min and flip_t_max")),
    };
    let best = best_point(&points).map(|b| json!({ "coords": b.coords, "ratio": b.report.ratio }));
    let label = format!("{} x{}", base.verdict.as_str(), ratio_text(base.ratio));
    let summary = json!({
        "verb": "feasibility",
        "scenario": s,
        "report": base,
        "verdict_label": label,
        "three_body_fraction": base.exponent_three_body / base.collapse_rate,
        "gamma_factor": s.gamma.factor(),
        "flip_temperature": flip,
        "best_point": best,
        "verdict_counts": verdict_counts(&points),
        "headline": label,
    });
    Ok(RunOutput { tables: vec![t], summary })
}

// ---------------------------------------------------------------- oracle-check

enum Case {
    Voxel { regime: Regime, lambda: f64 },
    Lindblad { channel: Channel, n: usize },
}

fn parse_case(name: &str) -> Result<Case> {
    let bad = || invalid(format!("unknown case `{name}` (e.g. uniform-sphere-l1, tf-sphere-l0.5, lindblad-thermal-n4)"));
    if let Some(rest) = name.strip_prefix("lindblad-") {
        let (ch, n) = rest.rsplit_once("-n").ok_or_else(bad)?;
        return Ok(Case::Lindblad { channel: Channel::parse(ch)?, n: n.parse().map_err(|_| bad())? });
    }
    let (reg, l) = name.split_once("-sphere-l").ok_or_else(bad)?;
    let regime = Regime::parse(reg)?;
    Ok(Case::Voxel { regime, lambda: l.parse().map_err(|_| bad())? })
}

fn expand_cases(list: Vec<&str>) -> Vec<String> {
    let mut out = Vec::new();
    for c in list {
        match c {
            "all-voxel" => {
                for l in ["0.25", "0.5", "1", "2"] {
                    out.push(format!("uniform-sphere-l{l}"));
                }
                out.push("tf-sphere-l1".into());
            }
            "all-lindblad" => {
                for ch in Channel::ALL {
                    for n in 2..=crate::oracle::lindblad::MAX_N {
                        out.push(format!("lindblad-{}-n{n}", ch.as_str()));
                    }
                }
            }
            _ => out.push(c.to_string()),
        }
    }
    out
}

fn oracle_check(p: &Params) -> Result<VerbOutput> {
    let cases = expand_cases(p.list("cases"));
    if cases.is_empty() {
        return Err(invalid("no cases given"));
    }
    let (tol, ltol, cells) = (p.f64("tolerance")?, p.f64("lindblad_tolerance")?, p.usize("cells")?);
    let mut t = Table::new(
        "oracle_check",
        "oracle-check/1",
        &[
            ("case", "-"),
            ("reference", "G M^2 / R | 1/s"),
            ("oracle", "G M^2 / R | 1/s"),
            ("rel_diff", "1"),
            ("tolerance", "1"),
            ("pass", "-"),
        ],
    );
    let mut failures = Vec::new();
    for name in &cases {
        let (reference, oracle, tolerance) = match parse_case(name)? {
            Case::Voxel { regime, lambda } => {
                let s = Shape::sphere(1.0)?;
                let prof = DensityProfile::new(regime, s, 1.0)?;
                let cfg = SuperpositionConfig::new(s, 2.0 * lambda, Axis::Symmetry)?;
                let o = eg_bruteforce(&prof, &cfg, 2.0 / cells as f64)?;
                (sphere_eg(regime, lambda, 1.0, 1.0)?.dimensionless, o.dimensionless, tol)
            }
            Case::Lindblad { channel, n } => {
                let law = channel_exponent(channel, n as f64, 1.0);
                let times = grid(0.0, 2.0 / law, 11, Spacing::Linear)?;
                let tr = lindblad_decay(channel, n, 1.0, &times, None)?;
                let fit = fit_decay_exponent(&tr.times, &tr.correlation).unwrap_or(0.0);
                (law, fit, ltol)
            }
        };
        let rel = (oracle / reference - 1.0).abs();
        let pass = rel <= tolerance;
        if !pass {
            failures.push(format!("{name}: relative difference {rel:.3e} > {tolerance}"));
        }
        t.push(vec![name.as_str().into(), reference.into(), oracle.into(), rel.into(), tolerance.into(), pass.into()]);
    }
    let summary = json!({
        "verb": "oracle-check",
        "cases": cases.len(),
        "failed": failures,
        "headline": format!("{}/{} cases pass", cases.len() - failures.len(), cases.len()),
    });
    Ok(VerbOutput { output: RunOutput { tables: vec![t], summary }, failures })
}

// ---------------------------------------------------------------- twomode-check

fn twomode_check(p: &Params) -> Result<VerbOutput> {
    let n_max = p.usize("n_max")?;
    if !(2..=20).contains(&n_max) {
        return Err(invalid("n_max must be in 2..=20"));
    }
    let mut failures = Vec::new();
    let mut noon = Table::new(
        "twomode_noon",
        "twomode-noon/1",
        &[("n", "1"), ("correlation", "1"), ("exact", "1"), ("match", "-")],
    );
    for n in 2..=n_max {
        let c = n_particle_correlation(&noon_state(n)?);
        let exact = noon_correlation_exact(n as u32);
        let ok = c == exact as f64;
        if !ok {
            failures.push(format!("N={n}: NOON correlation {c} != {exact}"));
        }
        noon.push(vec![n.into(), c.into(), Cell::Int(exact as i64), ok.into()]);
    }
    let n = p.usize("n")?;
    let mut fid = Table::new(
        "twomode_fidelity",
        "twomode-fidelity/1",
        &[("n", "1"), ("u_over_e", "1"), ("branch", "-"), ("fidelity", "1"), ("degenerate", "-"), ("gap", "E_LR")],
    );
    let mut best = 0.0f64;
    for u in p.f64_list("u_over_e")? {
        let branch = match p.str("branch") {
            "auto" if u <= 0.0 => Branch::Ground,
            "auto" => Branch::Highest,
            "ground" => Branch::Ground,
            "highest" => Branch::Highest,
            s => return Err(invalid(format!("branch must be auto, ground or highest, got `{s}`"))),
        };
        let f = ground_state_fidelity_with_noon(&BoseHubbardParams { e_lr: 1.0, u }, n, branch)?;
        best = best.max(f.fidelity);
        let name = match branch {
            Branch::Ground => "ground",
            Branch::Highest => "highest",
        };
        fid.push(vec![n.into(), u.into(), name.into(), f.fidelity.into(), f.degenerate.into(), f.gap.into()]);
    }
    let summary = json!({
        "verb": "twomode-check",
        "noon_exact_through": n_max,
        "noon_half_factorial_max": factorial(n_max as u32) / 2,
        "fidelity_max": best,
        "failed": failures,
        "headline": format!("NOON correlations exact to N={n_max}; best fidelity {best:.6}"),
    });
    Ok(VerbOutput { output: RunOutput { tables: vec![noon, fid], summary }, failures })
}
