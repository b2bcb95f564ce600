//! Immutable tabulations of radial functions (transition densities, Levy
//! densities, potential kernels) on log-spaced grids, with shape-preserving
//! interpolation, power-law tail extrapolation and mass accounting.

use crate::error::{Error, Result};
use crate::interp::Pchip;
use crate::special::sphere_surface;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileMeta {
    pub dim: u32,
    /// time parameter for transition-density profiles
    pub t: Option<f64>,
    /// total integral over R^d; may be infinite for Levy densities
    pub mass: f64,
    pub monotone: bool,
    pub origin_finite: bool,
    pub origin_value: Option<f64>,
}

#[derive(Debug, Clone)]
enum Interp {
    /// pchip on (ln r, ln v); only for strictly positive values
    LogLog(Pchip),
    /// pchip on (ln r, v)
    SemiLog(Pchip),
}

#[derive(Debug, Clone)]
pub struct RadialProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
    pub meta: ProfileMeta,
    interp: Interp,
    /// log-log slope over the last decade, for tail extrapolation
    tail_slope: Option<f64>,
}

const MONOTONE_JITTER: f64 = 1e-9;

impl RadialProfile {
    pub fn new(
        grid: Vec<f64>,
        values: Vec<f64>,
        dim: u32,
        t: Option<f64>,
        origin_value: Option<f64>,
    ) -> Result<Self> {
        if grid.len() != values.len() || grid.len() < 2 {
            return Err(Error::Domain("profile needs matching grid/values, length >= 2".into()));
        }
        if !grid.windows(2).all(|w| w[1] > w[0] && w[0] > 0.0) {
            return Err(Error::Domain("profile grid must be strictly increasing and positive".into()));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("profile values must be finite".into()));
        }
        let peak = values.iter().cloned().fold(f64::MIN, f64::max).abs();
        let monotone = values
            .windows(2)
            .all(|w| w[1] <= w[0] + MONOTONE_JITTER * peak);
        let all_positive = values.iter().all(|&v| v > 0.0);
        let interp = if all_positive {
            Interp::LogLog(Pchip::new(
                grid.iter().map(|r| r.ln()).collect(),
                values.iter().map(|v| v.ln()).collect(),
            ))
        } else {
            Interp::SemiLog(Pchip::new(grid.iter().map(|r| r.ln()).collect(), values.clone()))
        };
        let tail_slope = if all_positive {
            let n = grid.len();
            let mut i0 = n - 2;
            while i0 > 0 && grid[i0] > 0.1 * grid[n - 1] {
                i0 -= 1;
            }
            Some((values[n - 1] / values[i0]).ln() / (grid[n - 1] / grid[i0]).ln())
        } else {
            None
        };
        // near-flat left end means the density stays bounded at the origin
        let head_slope = if values[0] > 0.0 && values[1] > 0.0 {
            (values[1] / values[0]).ln() / (grid[1] / grid[0]).ln()
        } else {
            0.0
        };
        let origin_finite = origin_value.is_some() || head_slope > -0.5;
        let mut profile = RadialProfile {
            grid,
            values,
            meta: ProfileMeta { dim, t, mass: f64::NAN, monotone, origin_finite, origin_value },
            interp,
            tail_slope,
        };
        profile.meta.mass = profile.integral_over_space();
        Ok(profile)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn dim(&self) -> u32 {
        self.meta.dim
    }

    /// Interpolated evaluation with flat extension below the grid and
    /// power-law (log-log) extrapolation above it.
    pub fn eval(&self, r: f64) -> f64 {
        let (r0, rn) = (self.grid[0], *self.grid.last().unwrap());
        if r <= 0.0 {
            return self.meta.origin_value.unwrap_or(self.values[0]);
        }
        if r < r0 {
            return match self.meta.origin_value {
                // linear blend between origin and first node, in ln r is ill
                // posed at 0, so blend in r
                Some(v0) => v0 + (self.values[0] - v0) * (r / r0),
                None => self.values[0],
            };
        }
        if r > rn {
            let vn = self.values[self.values.len() - 1];
            return match self.tail_slope {
                Some(s) if s < 0.0 => vn * (r / rn).powf(s),
                _ => 0.0,
            };
        }
        match &self.interp {
            Interp::LogLog(p) => p.eval(r.ln()).exp(),
            Interp::SemiLog(p) => p.eval(r.ln()),
        }
    }

    /// omega_{d-1} int_0^inf v(r) r^{d-1} dr: composite Simpson on the log
    /// grid plus a flat head model and a power-law tail model.
    pub fn integral_over_space(&self) -> f64 {
        let d = self.meta.dim as f64;
        let n = self.grid.len();
        let u: Vec<f64> = self.grid.iter().map(|r| r.ln()).collect();
        let w: Vec<f64> = (0..n).map(|i| self.values[i] * self.grid[i].powf(d)).collect();
        let mut body = 0.0;
        let mut i = 0;
        while i + 2 < n {
            let h1 = u[i + 1] - u[i];
            let h2 = u[i + 2] - u[i + 1];
            // nonuniform Simpson
            let c = (h1 + h2) / 6.0;
            body += c
                * ((2.0 - h2 / h1) * w[i]
                    + (h1 + h2).powi(2) / (h1 * h2) * w[i + 1]
                    + (2.0 - h1 / h2) * w[i + 2]);
            i += 2;
        }
        if i + 1 < n {
            body += 0.5 * (u[i + 1] - u[i]) * (w[i] + w[i + 1]);
        }
        let head = if self.meta.origin_finite {
            // flat density below the first node
            self.values[0] * self.grid[0].powf(d) / d
        } else {
            // extend the left log-log slope; diverges when slope <= -d
            let s = (self.values[1] / self.values[0]).ln() / (self.grid[1] / self.grid[0]).ln();
            if s + d <= 0.0 {
                return f64::INFINITY;
            }
            self.values[0] * self.grid[0].powf(d) / (s + d)
        };
        let tail = match self.tail_slope {
            Some(s) if s + d < 0.0 => {
                let vn = self.values[n - 1];
                vn * self.grid[n - 1].powf(d) / -(s + d)
            }
            Some(_) => {
                let vn = self.values[n - 1];
                if vn.abs() > 1e-300 {
                    return f64::INFINITY;
                }
                0.0
            }
            None => 0.0,
        };
        sphere_surface(self.meta.dim) * (head + body + tail)
    }

    /// CSV export (columns r, value), with an r = 0 row when the origin value
    /// is known, plus a JSON sidecar carrying the metadata.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut out = std::fs::File::create(path)?;
        writeln!(out, "r,value")?;
        if let Some(v0) = self.meta.origin_value {
            writeln!(out, "0,{v0}")?;
        }
        for (r, v) in self.grid.iter().zip(&self.values) {
            writeln!(out, "{r},{v}")?;
        }
        let sidecar = path.with_extension("json");
        let meta = serde_json::to_string_pretty(&self.meta)
            .map_err(|e| Error::Config(format!("sidecar serialization: {e}")))?;
        std::fs::write(sidecar, meta)?;
        Ok(())
    }

    /// Checks that the stored mass matches a recomputation from the values.
    pub fn mass_consistent(&self, rel_tol: f64) -> bool {
        let m = self.integral_over_space();
        if !m.is_finite() && !self.meta.mass.is_finite() {
            return true;
        }
        (m - self.meta.mass).abs() <= rel_tol * self.meta.mass.abs()
    }
}
