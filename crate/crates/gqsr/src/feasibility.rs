//! Experiment planning: collapse rate against decoherence over parameter
//! grids, the two-sphere entanglement phases and the Casimir separation bound.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{lookup_species, GammaParameter, Species, C, G, HBAR};
use crate::decoherence::{
    foreign_atom_rate, three_body_rate, thermal_rate, verdict, Background, Channel, ChannelRates, DensityScale,
    ThermalModel, Verdict, DEFAULT_THRESHOLD,
};
use crate::density::{condensate_profile, oscillator_length, CondensateSpec, DensityProfile, Regime};
use crate::error::{invalid, non_negative, positive, Error, Result};
use crate::geometry::{Shape, ShapeKind};
use crate::self_energy::{eg_gaussian_sphere, eg_tf_sphere, eg_uniform_sphere};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Phases {
    pub phi1: f64,
    pub phi2: f64,
    pub sum: f64,
}

/// Relative phases picked up by two masses `m` (kg) at distance `d` (m), one
/// of them split by `b` (m), after time `t` (s).
pub fn entanglement_phases(m: f64, d: f64, b: f64, t: f64) -> Result<Phases> {
    positive("mass", m)?;
    positive("d", d)?;
    non_negative("b", b)?;
    non_negative("t", t)?;
    if d == b {
        return Err(invalid("d = b: the near branch touches the other mass"));
    }
    let k = G * m * m * t * b / HBAR;
    let phi1 = k / (d * (d - b));
    let phi2 = -k / (d * (d + b));
    Ok(Phases { phi1, phi2, sum: phi1 + phi2 })
}

/// Surface separation (m) above which the Casimir-Polder force between two
/// dielectric spheres stays below a tenth of gravity.
pub fn casimir_min_separation(m: f64, r: f64, eps_r: f64) -> Result<f64> {
    positive("mass", m)?;
    positive("radius", r)?;
    if !(eps_r > 1.0) {
        return Err(invalid(format!("relative permittivity must be > 1, got {eps_r}")));
    }
    let cm = (eps_r - 1.0) / (eps_r + 2.0);
    Ok((23.0 * HBAR * C / (0.1 * 4.0 * PI * G * m * m) * cm * cm).powf(1.0 / 6.0) * r)
}

/// One fully specified experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub species: Species,
    pub n_atoms: f64,
    /// TF radius or Gaussian width (m); derived from the trap when absent.
    pub radius: Option<f64>,
    /// Scattering length (m).
    pub a_s: f64,
    /// Trap angular frequency (rad/s). With a given radius it defaults to
    /// the trap producing that radius: ħ/(mR²) for Gaussian clouds, the
    /// inverted TF radius otherwise.
    pub omega: Option<f64>,
    pub temperature: f64,
    pub regime: Regime,
    /// b/(2R); 1 means touching.
    pub lambda: f64,
    pub gamma: GammaParameter,
    pub density_scale: DensityScale,
    pub thermal_model: ThermalModel,
    /// Chemical potential of the thermal cloud (J).
    pub mu_thermal: f64,
    pub background: Option<Background>,
    pub threshold: f64,
}

impl Scenario {
    /// Touching condensates with stock a_s, T = 0 and no background gas.
    pub fn new(species: Species, n_atoms: f64, regime: Regime) -> Self {
        Self {
            a_s: species.default_scattering_length(),
            species,
            n_atoms,
            radius: None,
            omega: None,
            temperature: 0.0,
            regime,
            lambda: 1.0,
            gamma: GammaParameter::default(),
            density_scale: DensityScale::Peak,
            thermal_model: match regime {
                Regime::ThomasFermi => ThermalModel::TfCloud,
                _ => ThermalModel::GaussianCloud,
            },
            mu_thermal: 0.0,
            background: None,
            threshold: DEFAULT_THRESHOLD,
        }
    }

    fn omega(&self) -> Result<f64> {
        match (self.omega, self.radius, self.regime) {
            (Some(w), _, _) => positive("omega", w),
            (None, Some(r), Regime::Gaussian) => Ok(HBAR / (self.species.mass() * r * r)),
            (None, Some(r), Regime::ThomasFermi) if self.a_s > 0.0 => {
                // trap whose TF radius (15 N a_s)^{1/5} s₀^{4/5} equals r
                let s0 = (r / (15.0 * self.n_atoms * self.a_s).powf(0.2)).powf(1.25);
                Ok(HBAR / (self.species.mass() * s0 * s0))
            }
            _ => Err(invalid("trap frequency `omega` is required for this scenario")),
        }
    }

    fn condensate(&self) -> Result<CondensateSpec> {
        let mut spec = CondensateSpec::new(self.species.clone(), self.n_atoms, self.omega()?, self.omega()?, self.a_s)?;
        spec.temperature = self.temperature;
        spec.pressure = self.background.as_ref().map_or(0.0, |b| b.pressure);
        spec.validate()?;
        Ok(spec)
    }

    fn profile(&self, spec: &CondensateSpec) -> Result<DensityProfile> {
        match self.radius {
            Some(r) => DensityProfile::new(self.regime, Shape::sphere(r)?, spec.mass()),
            None => condensate_profile(spec, self.regime),
        }
    }

    /// Collapse rate against every decoherence channel.
    pub fn evaluate(&self) -> Result<RateReport> {
        positive("threshold", self.threshold)?;
        let spec = self.condensate()?;
        let profile = self.profile(&spec)?;
        if profile.shape.kind() != ShapeKind::Sphere {
            return Err(Error::NotApplicable("feasibility assumes spherical clouds".into()));
        }
        let r = profile.shape.a();
        let m = profile.mass;
        let eg = match self.regime {
            Regime::ThomasFermi => eg_tf_sphere(self.lambda, m, r)?,
            Regime::Gaussian => eg_gaussian_sphere(self.lambda, m, r)?,
            Regime::Uniform => eg_uniform_sphere(self.lambda, m, r)?,
        }
        .scaled(self.gamma);
        let thermal = thermal_rate(&spec, self.thermal_model, self.mu_thermal)?;
        let rates = ChannelRates {
            gamma3: three_body_rate(&spec, &profile, self.density_scale),
            gamma_t: thermal.gamma,
            gamma_f: self.background.as_ref().map(foreign_atom_rate).transpose()?.unwrap_or(0.0),
            n_atoms: self.n_atoms,
        };
        let collapse_rate = eg.value / HBAR;
        let total = rates.total_exponent();
        Ok(RateReport {
            e_g: eg.value,
            tau: eg.lifetime(),
            collapse_rate,
            radius: r,
            rates,
            exponent_three_body: rates.exponent(Channel::ThreeBody),
            exponent_thermal: rates.exponent(Channel::Thermal),
            exponent_foreign: rates.exponent(Channel::Foreign),
            total_exponent: total,
            ratio: if total > 0.0 { collapse_rate / total } else { f64::INFINITY },
            verdict: verdict(collapse_rate, total, self.threshold),
            note: thermal.note,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    /// J.
    pub e_g: f64,
    /// s.
    pub tau: f64,
    /// E_G/ħ (s⁻¹).
    pub collapse_rate: f64,
    /// m.
    pub radius: f64,
    pub rates: ChannelRates,
    pub exponent_three_body: f64,
    pub exponent_thermal: f64,
    pub exponent_foreign: f64,
    pub total_exponent: f64,
    /// Collapse rate over the total decoherence exponent.
    pub ratio: f64,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// Temperature (K) in [lo, hi] at which the ratio crosses the scenario's
/// threshold, found by bisection in ln T. `None` when it does not cross.
pub fn flip_temperature(base: &Scenario, lo: f64, hi: f64) -> Result<Option<f64>> {
    positive("lower temperature", lo)?;
    if !(hi > lo) {
        return Err(invalid("need lo < hi"));
    }
    let f = |t: f64| -> Result<f64> {
        let mut s = base.clone();
        s.temperature = t;
        let r = s.evaluate()?;
        Ok(r.ratio.ln() - base.threshold.ln())
    };
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let (fa, fb) = (f(lo)?, f(hi)?);
    if fa.signum() == fb.signum() {
        return Ok(None);
    }
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if f(mid.exp())?.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-12 {
            break;
        }
    }
    Ok(Some((0.5 * (a + b)).exp()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanParam {
    NAtoms,
    /// m.
    Radius,
    /// m.
    ScatteringLength,
    /// K.
    Temperature,
    /// Pa; needs a background species.
    Pressure,
    Gamma,
    /// rad/s.
    Omega,
}

impl ScanParam {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "n_atoms" => Self::NAtoms,
            "radius" => Self::Radius,
            "a_s" => Self::ScatteringLength,
            "temperature" => Self::Temperature,
            "pressure" => Self::Pressure,
            "gamma" => Self::Gamma,
            "omega" => Self::Omega,
            _ => {
                return Err(invalid(format!(
                    "unknown scan parameter `{s}` (n_atoms, radius, a_s, temperature, pressure, gamma, omega)"
                )))
            }
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::NAtoms => "n_atoms",
            Self::Radius => "radius",
            Self::ScatteringLength => "a_s",
            Self::Temperature => "temperature",
            Self::Pressure => "pressure",
            Self::Gamma => "gamma",
            Self::Omega => "omega",
        }
    }

    /// Unit label for CSV headers.
    pub fn unit(self) -> &'static str {
        match self {
            Self::NAtoms | Self::Gamma => "1",
            Self::Radius | Self::ScatteringLength => "m",
            Self::Temperature => "K",
            Self::Pressure => "Pa",
            Self::Omega => "rad/s",
        }
    }

    fn apply(self, s: &mut Scenario, v: f64) -> Result<()> {
        match self {
            Self::NAtoms => s.n_atoms = v,
            Self::Radius => s.radius = Some(positive("radius", v)?),
            Self::ScatteringLength => s.a_s = v,
            Self::Temperature => s.temperature = v,
            Self::Pressure => {
                s.background.as_mut().ok_or_else(|| invalid("pressure scan needs a background species"))?.pressure = v
            }
            Self::Gamma => s.gamma = GammaParameter::new(v)?,
            Self::Omega => s.omega = Some(v),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanAxis {
    pub param: ScanParam,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl ScanAxis {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points == 0 || !self.min.is_finite() || !self.max.is_finite() || self.min > self.max {
            return Err(invalid(format!("bad {} axis: [{}, {}] x {}", self.param.as_str(), self.min, self.max, self.points)));
        }
        if self.spacing == Spacing::Log && !(self.min > 0.0) {
            return Err(invalid(format!("log axis {} needs min > 0", self.param.as_str())));
        }
        if self.points == 1 {
            return Ok(vec![self.min]);
        }
        let k = (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| {
                let f = i as f64 / k;
                // pin the ends so a log grid cannot overshoot `max`
                if i + 1 == self.points {
                    return self.max;
                }
                match self.spacing {
                    Spacing::Linear => self.min + f * (self.max - self.min),
                    Spacing::Log => (self.min.ln() + f * (self.max / self.min).ln()).exp(),
                }
            })
            .collect())
    }
}

pub const MAX_SCAN_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRequest {
    pub base: Scenario,
    pub axes: Vec<ScanAxis>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub coords: Vec<f64>,
    pub report: RateReport,
}

/// Evaluates every grid point, first axis slowest. Points are spread over
/// threads; output order does not depend on scheduling.
pub fn dominance_scan(req: &ScanRequest) -> Result<Vec<ScanPoint>> {
    if req.axes.is_empty() || req.axes.len() > 2 {
        return Err(invalid("a scan needs one or two axes"));
    }
    if req.axes.len() == 2 && req.axes[0].param == req.axes[1].param {
        return Err(invalid("scan axes must differ"));
    }
    let values = req.axes.iter().map(ScanAxis::values).collect::<Result<Vec<_>>>()?;
    let total: usize = values.iter().map(Vec::len).product();
    if total > MAX_SCAN_POINTS {
        return Err(invalid(format!("scan has {total} points; limit {MAX_SCAN_POINTS}")));
    }
    let grid: Vec<Vec<f64>> = match values.as_slice() {
        [x] => x.iter().map(|&v| vec![v]).collect(),
        [x, y] => x.iter().flat_map(|&u| y.iter().map(move |&v| vec![u, v])).collect(),
        _ => unreachable!(),
    };
    let eval = |coords: &Vec<f64>| -> Result<ScanPoint> {
        let mut s = req.base.clone();
        for (ax, &v) in req.axes.iter().zip(coords) {
            ax.param.apply(&mut s, v)?;
        }
        Ok(ScanPoint { coords: coords.clone(), report: s.evaluate()? })
    };
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(grid.len()).max(1);
    let chunk = grid.len().div_ceil(threads);
    let parts: Vec<Result<Vec<ScanPoint>>> = std::thread::scope(|sc| {
        let handles: Vec<_> = grid.chunks(chunk).map(|c| sc.spawn(move || c.iter().map(eval).collect())).collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(grid.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub collapse_dominated: usize,
    pub marginal: usize,
    pub decoherence_dominated: usize,
}

pub fn verdict_counts(points: &[ScanPoint]) -> VerdictCounts {
    let mut c = VerdictCounts { collapse_dominated: 0, marginal: 0, decoherence_dominated: 0 };
    for p in points {
        match p.report.verdict {
            Verdict::CollapseDominated => c.collapse_dominated += 1,
            Verdict::Marginal => c.marginal += 1,
            Verdict::DecoherenceDominated => c.decoherence_dominated += 1,
        }
    }
    c
}

/// Point with the largest collapse-to-decoherence ratio (first one on ties).
pub fn best_point(points: &[ScanPoint]) -> Option<&ScanPoint> {
    points.iter().fold(None, |best: Option<&ScanPoint>, p| match best {
        Some(b) if b.report.ratio >= p.report.ratio => Some(b),
        _ => Some(p),
    })
}

/// Named scenarios.
pub const PRESETS: [&str; 6] =
    ["tf-threebody", "tf-threebody-large", "gamma-8pi", "gaussian-thermal", "tf-thermal", "cs-4e9-1um"];

pub fn preset(name: &str) -> Result<Scenario> {
    let cs = lookup_species("Cs133")?;
    let stock = cs.default_scattering_length();
    let tf = |n: f64, r: f64, shrink: f64, w: f64| {
        let mut s = Scenario::new(cs.clone(), n, Regime::ThomasFermi);
        s.radius = Some(r);
        s.a_s = stock / shrink;
        s.omega = Some(w);
        s.density_scale = DensityScale::Mean;
        s
    };
    Ok(match name {
        "tf-threebody" => tf(4e9, 10e-6, 1e4, 300.0),
        "tf-threebody-large" => tf(4e10, 0.1e-3, 1e3, 10.0),
        "gamma-8pi" => {
            let mut s = tf(6e8, 0.1e-3, 1e2, 10.0);
            s.gamma = GammaParameter::eight_pi();
            s
        }
        "gaussian-thermal" => {
            let mut s = Scenario::new(cs.clone(), 4e9, Regime::Gaussian);
            s.radius = Some(1e-6);
            s.a_s = stock / 1e6;
            s.temperature = 1e-9;
            s.density_scale = DensityScale::Mean;
            s
        }
        "tf-thermal" => {
            let mut s = tf(4e11, 0.1e-3, 1e6, 10.0);
            s.omega = None;
            s.temperature = 0.1e-9;
            s
        }
        "cs-4e9-1um" => tf(4e9, 1e-6, 1.0, 100.0),
        _ => return Err(invalid(format!("unknown preset `{name}`; available: {}", PRESETS.join(", ")))),
    })
}

/// Trap frequency whose oscillator length equals `r` (rad/s).
pub fn omega_for_width(species: &Species, r: f64) -> f64 {
    let l0 = oscillator_length(species.mass(), 1.0);
    (l0 / r).powi(2)
}
