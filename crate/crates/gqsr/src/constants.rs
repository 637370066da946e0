//! Physical constants (CODATA 2018, SI), the atomic species database and the
//! collapse-strength parameter γ.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Gravitational constant (m³ kg⁻¹ s⁻²).
pub const G: f64 = 6.674_30e-11;
/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J K⁻¹).
pub const KB: f64 = 1.380_649e-23;
/// Speed of light (m s⁻¹).
pub const C: f64 = 299_792_458.0;
/// Unified atomic mass unit (kg).
pub const AMU: f64 = 1.660_539_066_60e-27;
/// Bohr radius (m).
pub const BOHR: f64 = 5.291_772_109_03e-11;
/// Hartree energy (J).
pub const HARTREE: f64 = 4.359_744_722_207_1e-18;

/// Tag written into every manifest so outputs can be traced to a constants set.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// The constants bundled as a value, for code that wants to pass them around
/// or echo them into a manifest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub g: f64,
    pub hbar: f64,
    pub kb: f64,
    pub c: f64,
    pub amu: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        g: G,
        hbar: HBAR,
        kb: KB,
        c: C,
        amu: AMU,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// Dimensionless prefactor of the collapse rate.
///
/// Every closed form in this crate is quoted for the default `1/(8π)`; other
/// values rescale energies by [`GammaParameter::factor`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaParameter(f64);

impl GammaParameter {
    pub const DEFAULT: f64 = 1.0 / (8.0 * PI);

    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_finite() && gamma > 0.0 {
            Ok(Self(gamma))
        } else {
            Err(invalid(format!("gamma must be > 0, got {gamma}")))
        }
    }

    /// The alternative normalisation γ = 8π.
    pub fn eight_pi() -> Self {
        Self(8.0 * PI)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Multiplier relative to the default normalisation, 8πγ.
    pub fn factor(self) -> f64 {
        8.0 * PI * self.0
    }
}

impl Default for GammaParameter {
    fn default() -> Self {
        Self(Self::DEFAULT)
    }
}

/// Unruh temperature ħa/(2π k_B c) for a proper acceleration `a` (m s⁻²).
pub fn unruh_temperature(a: f64) -> Result<f64> {
    if !a.is_finite() || a < 0.0 {
        return Err(invalid(format!("acceleration must be >= 0, got {a}")));
    }
    Ok(HBAR * a / (2.0 * PI * KB * C))
}

/// One entry of the species database.
///
/// Values are kept in the units of the text file so that a parse/serialise
/// cycle is bit-exact; SI accessors convert on the way out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Species {
    pub name: String,
    pub mass_amu: f64,
    pub a_s_nm: f64,
    /// C₆ in atomic units (E_h a₀⁶).
    pub c6_au: Option<f64>,
}

impl Species {
    /// Atomic mass (kg).
    pub fn mass(&self) -> f64 {
        self.mass_amu * AMU
    }

    /// Default s-wave scattering length (m).
    pub fn default_scattering_length(&self) -> f64 {
        self.a_s_nm * 1e-9
    }

    /// Van der Waals C₆ (J m⁶), if known.
    pub fn c6(&self) -> Option<f64> {
        self.c6_au.map(|c| c * HARTREE * BOHR.powi(6))
    }
}

/// A parsed species database.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesDb {
    species: Vec<Species>,
}

const BUILTIN_DB: &str = include_str!("../data/species.txt");

impl SpeciesDb {
    /// The database shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_DB).expect("bundled species database parses")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Parses the `key = value` block format described in `data/species.txt`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut species = Vec::new();
        let mut cur: Vec<(usize, String, String)> = Vec::new();
        let flush = |cur: &mut Vec<(usize, String, String)>, out: &mut Vec<Species>| -> Result<()> {
            if cur.is_empty() {
                return Ok(());
            }
            let entry = block_to_species(cur)?;
            if out.iter().any(|s: &Species| s.name == entry.name) {
                return Err(Error::Config(format!("duplicate species `{}`", entry.name)));
            }
            out.push(entry);
            cur.clear();
            Ok(())
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.starts_with('#') {
                continue;
            }
            if line.is_empty() {
                flush(&mut cur, &mut species)?;
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("species line {}: expected key = value", i + 1)))?;
            cur.push((i + 1, k.trim().to_string(), v.trim().to_string()));
        }
        flush(&mut cur, &mut species)?;
        Ok(Self { species })
    }

    /// Writes the database back in the same format.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.species.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "name = {}", s.name);
            let _ = writeln!(out, "mass_amu = {}", s.mass_amu);
            let _ = writeln!(out, "a_s_nm = {}", s.a_s_nm);
            if let Some(c6) = s.c6_au {
                let _ = writeln!(out, "C6 = {c6}");
            }
        }
        out
    }

    pub fn names(&self) -> Vec<&str> {
        self.species.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Species> {
        self.species.iter()
    }

    pub fn lookup(&self, name: &str) -> Result<Species> {
        self.species
            .iter()
            .find(|s| s.name == name)
            .cloned()
            .ok_or_else(|| Error::UnknownSpecies {
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }
}

fn block_to_species(block: &[(usize, String, String)]) -> Result<Species> {
    let mut name = None;
    let mut mass = None;
    let mut a_s = None;
    let mut c6 = None;
    for (line, k, v) in block {
        let num = || {
            v.parse::<f64>()
                .map_err(|_| Error::Config(format!("species line {line}: `{v}` is not a number")))
        };
        match k.as_str() {
            "name" => name = Some(v.clone()),
            "mass_amu" => mass = Some(num()?),
            "a_s_nm" => a_s = Some(num()?),
            "C6" => c6 = Some(num()?),
            other => {
                return Err(Error::Config(format!("species line {line}: unknown key `{other}`")));
            }
        }
    }
    let first = block[0].0;
    let name = name.ok_or_else(|| Error::Config(format!("species block at line {first}: missing name")))?;
    let mass_amu = mass.ok_or_else(|| Error::Config(format!("species `{name}`: missing mass_amu")))?;
    if !(mass_amu > 0.0) {
        return Err(Error::Config(format!("species `{name}`: mass_amu must be > 0")));
    }
    let a_s_nm = a_s.ok_or_else(|| Error::Config(format!("species `{name}`: missing a_s_nm")))?;
    Ok(Species { name, mass_amu, a_s_nm, c6_au: c6 })
}

/// Looks a species up in the bundled database.
pub fn lookup_species(name: &str) -> Result<Species> {
    SpeciesDb::builtin().lookup(name)
}
