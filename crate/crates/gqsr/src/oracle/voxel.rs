//! E_G from a voxelised double sum.
//!
//! With cell masses m_i of one body and the copy shifted by a whole number
//! of cells s, the sum over cell pairs collapses onto the autocorrelation
//! A(d) = Σ_i m_i m_{i+d}:
//!
//! ```text
//! E_G / G = Σ_d A(d) [K(d) − K(d + s)]
//! ```
//!
//! with K(d) = 1/(h|d|) and, on the diagonal, the self-interaction of the
//! equal-volume uniform sphere, (6/5)/r_e. A(d) comes from a zero-padded FFT.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};

use crate::density::{DensityProfile, Regime};
use crate::error::{invalid, Error, Result};
use crate::geometry::{Axis, SuperpositionConfig};
use crate::self_energy::{Method, SelfEnergyResult};

/// Gaussian grids stop this many widths from the centre.
pub const GAUSSIAN_EXTENT: f64 = 3.5;

/// Minimum number of cells across the largest diameter.
pub const MIN_CELLS: f64 = 48.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoxelOptions {
    /// Sub-samples per axis in cells cut by the surface.
    pub surface_subsamples: usize,
    /// Bytes allowed for the padded FFT buffer.
    pub memory_budget: usize,
    /// Convergence order p assumed by the Richardson step.
    pub richardson_order: f64,
}

impl Default for VoxelOptions {
    fn default() -> Self {
        Self { surface_subsamples: 8, memory_budget: 1 << 30, richardson_order: 2.0 }
    }
}

/// Cell masses of one body on a regular grid centred on the origin.
#[derive(Debug, Clone)]
pub struct VoxelGrid {
    /// Cell size (m).
    pub h: f64,
    /// Cells along x, y, z.
    pub dims: [usize; 3],
    /// Centre of cell (0,0,0) (m).
    pub origin: [f64; 3],
    /// Cell masses (kg), z fastest.
    pub mass: Vec<f64>,
}

impl VoxelGrid {
    pub fn new(profile: &DensityProfile, h: f64, opts: &VoxelOptions) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(invalid(format!("cell size must be > 0, got {h}")));
        }
        let s = profile.shape;
        let reach = |x: f64| match profile.regime {
            Regime::Gaussian => GAUSSIAN_EXTENT * x,
            _ => x,
        };
        let (hx, hz) = (reach(s.a()), reach(s.c()));
        let n = |half: f64| (2.0 * half / h).ceil() as usize;
        let dims = [n(hx), n(hx), n(hz)];
        let padded: usize = dims.iter().map(|&d| fft_size(2 * d - 1)).product();
        let needed = padded * std::mem::size_of::<Complex<f64>>();
        if needed > opts.memory_budget {
            return Err(Error::MemoryBudget { needed, budget: opts.memory_budget });
        }
        let origin = dims.map(|d| -0.5 * (d as f64 - 1.0) * h);
        let ns = opts.surface_subsamples.max(1);
        // two-point Gauss-Legendre per axis inside the body, exact for the
        // quadratic Thomas-Fermi profile
        let g = 0.5 / 3f64.sqrt();
        let rho = |x: f64, y: f64, z: f64| profile.density(x.hypot(y), z);
        let mut mass = Vec::with_capacity(dims[0] * dims[1] * dims[2]);
        for i in 0..dims[0] {
            let x = origin[0] + i as f64 * h;
            for j in 0..dims[1] {
                let y = origin[1] + j as f64 * h;
                for k in 0..dims[2] {
                    let z = origin[2] + k as f64 * h;
                    let cut = profile.regime != Regime::Gaussian && straddles(profile, x, y, z, h);
                    let avg = if cut {
                        let mut acc = 0.0;
                        for p in 0..ns {
                            let dx = ((p as f64 + 0.5) / ns as f64 - 0.5) * h;
                            for q in 0..ns {
                                let dy = ((q as f64 + 0.5) / ns as f64 - 0.5) * h;
                                for r in 0..ns {
                                    let dz = ((r as f64 + 0.5) / ns as f64 - 0.5) * h;
                                    acc += rho(x + dx, y + dy, z + dz);
                                }
                            }
                        }
                        acc / (ns * ns * ns) as f64
                    } else {
                        let mut acc = 0.0;
                        for sx in [-g, g] {
                            for sy in [-g, g] {
                                for sz in [-g, g] {
                                    acc += rho(x + sx * h, y + sy * h, z + sz * h);
                                }
                            }
                        }
                        acc / 8.0
                    };
                    mass.push(avg * h * h * h);
                }
            }
        }
        Ok(Self { h, dims, origin, mass })
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Σ_d A(d)[K(d) − K(d + s)] for an integer cell shift `s`.
    pub fn pair_sum(&self, shift: [i64; 3]) -> f64 {
        let [nx, ny, nz] = self.dims;
        let p = [fft_size(2 * nx - 1), fft_size(2 * ny - 1), fft_size(2 * nz - 1)];
        let mut buf = vec![Complex::new(0.0, 0.0); p[0] * p[1] * p[2]];
        for i in 0..nx {
            for j in 0..ny {
                let src = (i * ny + j) * nz;
                let dst = (i * p[1] + j) * p[2];
                for k in 0..nz {
                    buf[dst + k].re = self.mass[src + k];
                }
            }
        }
        let mut planner = FftPlanner::new();
        fft3(&mut planner, &mut buf, p, FftDirection::Forward);
        for c in buf.iter_mut() {
            *c = Complex::new(c.norm_sqr(), 0.0);
        }
        fft3(&mut planner, &mut buf, p, FftDirection::Inverse);
        let norm = (p[0] * p[1] * p[2]) as f64;

        let self_k = 1.2 * (4.0 * PI / 3.0).cbrt() / self.h;
        let kern = |d: [i64; 3]| {
            let r2 = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) as f64;
            if r2 == 0.0 {
                self_k
            } else {
                1.0 / (self.h * r2.sqrt())
            }
        };
        let wrap = |d: i64, n: usize| if d < 0 { (d + n as i64) as usize } else { d as usize };
        let mut total = 0.0;
        let mut comp = 0.0;
        for dx in -(nx as i64 - 1)..nx as i64 {
            for dy in -(ny as i64 - 1)..ny as i64 {
                let row = (wrap(dx, p[0]) * p[1] + wrap(dy, p[1])) * p[2];
                for dz in -(nz as i64 - 1)..nz as i64 {
                    let a = buf[row + wrap(dz, p[2])].re / norm;
                    let d = [dx, dy, dz];
                    let t = a * (kern(d) - kern([dx + shift[0], dy + shift[1], dz + shift[2]]));
                    // compensated sum; the two kernels nearly cancel far out
                    let y = t - comp;
                    let s = total + y;
                    comp = (s - total) - y;
                    total = s;
                }
            }
        }
        total
    }
}

// some cell corner lies outside the body while another lies inside
fn straddles(p: &DensityProfile, x: f64, y: f64, z: f64, h: f64) -> bool {
    let mut inside = 0;
    for sx in [-0.5, 0.5] {
        for sy in [-0.5, 0.5] {
            for sz in [-0.5, 0.5] {
                if p.shape.contains((x + sx * h).hypot(y + sy * h), z + sz * h) {
                    inside += 1;
                }
            }
        }
    }
    inside != 0 && inside != 8
}

fn fft_size(min: usize) -> usize {
    // smallest 2^a 3^b 5^c ≥ min
    (min..).find(|&n| {
        let mut m = n;
        for f in [2, 3, 5] {
            while m % f == 0 {
                m /= f;
            }
        }
        m == 1
    })
    .unwrap_or(min)
}

fn fft3(planner: &mut FftPlanner<f64>, buf: &mut [Complex<f64>], p: [usize; 3], dir: FftDirection) {
    let [px, py, pz] = p;
    planner.plan_fft(pz, dir).process(buf);
    let mut line = vec![Complex::new(0.0, 0.0); px.max(py)];
    let fy = planner.plan_fft(py, dir);
    for i in 0..px {
        for k in 0..pz {
            for j in 0..py {
                line[j] = buf[(i * py + j) * pz + k];
            }
            fy.process(&mut line[..py]);
            for j in 0..py {
                buf[(i * py + j) * pz + k] = line[j];
            }
        }
    }
    let fx = planner.plan_fft(px, dir);
    for j in 0..py {
        for k in 0..pz {
            for i in 0..px {
                line[i] = buf[(i * py + j) * pz + k];
            }
            fx.process(&mut line[..px]);
            for i in 0..px {
                buf[(i * py + j) * pz + k] = line[i];
            }
        }
    }
}

/// One grid level: E_G/G at cell size `h`, which must divide `b`.
pub fn eg_voxel_level(profile: &DensityProfile, cfg: &SuperpositionConfig, h: f64, opts: &VoxelOptions) -> Result<f64> {
    let grid = VoxelGrid::new(profile, h, opts)?;
    let cells = (cfg.b / h).round() as i64;
    let shift = match cfg.axis {
        Axis::Symmetry => [0, 0, cells],
        Axis::Equatorial => [cells, 0, 0],
    };
    Ok(grid.pair_sum(shift))
}

/// Brute-force E_G with Richardson extrapolation over cell sizes h and h/2.
///
/// `h` is rounded down so that it divides the displacement. The grid must
/// have at least 48 cells across the largest diameter.
pub fn eg_bruteforce(profile: &DensityProfile, cfg: &SuperpositionConfig, h: f64) -> Result<SelfEnergyResult> {
    eg_bruteforce_with(profile, cfg, h, &VoxelOptions::default())
}

pub fn eg_bruteforce_with(
    profile: &DensityProfile,
    cfg: &SuperpositionConfig,
    h: f64,
    opts: &VoxelOptions,
) -> Result<SelfEnergyResult> {
    if cfg.shape != profile.shape {
        return Err(invalid("configuration shape differs from the profile shape"));
    }
    let big = profile.shape.major();
    if !(h > 0.0) || 2.0 * big / h < MIN_CELLS - 1e-9 {
        return Err(invalid(format!("cell size {h} gives fewer than {MIN_CELLS} cells per diameter")));
    }
    let h = if cfg.b > 0.0 { cfg.b / (cfg.b / h - 1e-9).ceil() } else { h };
    let coarse = eg_voxel_level(profile, cfg, h, opts)?;
    let fine = eg_voxel_level(profile, cfg, 0.5 * h, opts)?;
    let f = 2f64.powf(opts.richardson_order) - 1.0;
    let value = fine + (fine - coarse) / f;
    let m2 = profile.mass * profile.mass;
    let rel_error = if value != 0.0 { ((fine - coarse) / f / value).abs() } else { 0.0 };
    Ok(SelfEnergyResult::from_dimensionless(value * big / m2, profile.mass, big, Method::Oracle, rel_error))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Shape;

    #[test]
    fn fft_sizes_are_smooth() {
        assert_eq!(fft_size(95), 96);
        assert_eq!(fft_size(191), 192);
        assert_eq!(fft_size(7), 8);
    }

    #[test]
    fn mass_is_reproduced() {
        let s = Shape::spheroid(1.0, 0.6).unwrap();
        for p in [DensityProfile::uniform(s, 2.0).unwrap(), DensityProfile::thomas_fermi(s, 2.0).unwrap()] {
            let g = VoxelGrid::new(&p, 2.0 / 48.0, &VoxelOptions::default()).unwrap();
            assert!((g.total_mass() / 2.0 - 1.0).abs() < 5e-3, "{}", g.total_mass());
        }
    }

    #[test]
    fn no_displacement_is_zero() {
        let s = Shape::sphere(1.0).unwrap();
        let p = DensityProfile::uniform(s, 1.0).unwrap();
        let g = VoxelGrid::new(&p, 2.0 / 24.0, &VoxelOptions::default()).unwrap();
        assert_eq!(g.pair_sum([0, 0, 0]), 0.0);
    }

    #[test]
    fn memory_budget() {
        let s = Shape::sphere(1.0).unwrap();
        let p = DensityProfile::uniform(s, 1.0).unwrap();
        let opts = VoxelOptions { memory_budget: 1000, ..VoxelOptions::default() };
        assert_eq!(VoxelGrid::new(&p, 0.1, &opts).unwrap_err().exit_code(), 2);
    }
}
