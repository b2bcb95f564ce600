//! Characteristic exponents psi, Laplace exponents phi, the maximal exponent
//! psi*, its generalized inverse, the scale function L(r) = psi*(1/r)^{-1/2},
//! and the weak scaling-condition checkers.

use crate::error::{Error, Result};
use crate::interp::Pchip;
use crate::levy::LevyDensity;
use crate::process::{log_spaced, ProcessKind, ProcessSpec};
use crate::quad::{adaptive, integral_upper_power, oscillatory_kernel_integral, Tol};
use crate::special::{kernel_zero, one_minus_kernel, sphere_surface};
use serde::Serialize;
use std::f64::consts::PI;

/// Laplace exponent of a subordinator, phi(0) = 0, nondecreasing, concave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LaplaceExponent {
    /// phi(lambda) = lambda^index, index = alpha/2 in (0, 1).
    Stable { index: f64 },
    /// phi(lambda) = sqrt(lambda + m^2) - m.
    Relativistic { m: f64 },
    /// phi(lambda) = log(1 + lambda^index), index = beta/2 in (0, 1].
    GeometricStable { index: f64 },
    /// phi(lambda) = lambda / log(1 + lambda) - 1.
    ConjugateVarianceGamma,
}

impl LaplaceExponent {
    pub fn for_spec(spec: &ProcessSpec) -> Option<Self> {
        match spec.kind {
            ProcessKind::Stable { alpha } => Some(LaplaceExponent::Stable { index: alpha / 2.0 }),
            ProcessKind::Relativistic { m } => Some(LaplaceExponent::Relativistic { m }),
            ProcessKind::GeometricStable { beta } => {
                Some(LaplaceExponent::GeometricStable { index: beta / 2.0 })
            }
            ProcessKind::ConjugateVarianceGamma => Some(LaplaceExponent::ConjugateVarianceGamma),
            _ => None,
        }
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        debug_assert!(lambda >= 0.0);
        match *self {
            LaplaceExponent::Stable { index } => lambda.powf(index),
            LaplaceExponent::Relativistic { m } => (lambda + m * m).sqrt() - m,
            LaplaceExponent::GeometricStable { index } => lambda.powf(index).ln_1p(),
            LaplaceExponent::ConjugateVarianceGamma => {
                if lambda < 1e-3 {
                    lambda * (0.5 - lambda / 12.0 + lambda * lambda / 24.0)
                } else {
                    lambda / lambda.ln_1p() - 1.0
                }
            }
        }
    }

    pub fn derivative(&self, lambda: f64) -> f64 {
        match *self {
            LaplaceExponent::Stable { index } => index * lambda.powf(index - 1.0),
            LaplaceExponent::Relativistic { m } => 0.5 / (lambda + m * m).sqrt(),
            LaplaceExponent::GeometricStable { index } => {
                let p = lambda.powf(index);
                index * p / (lambda * (1.0 + p))
            }
            LaplaceExponent::ConjugateVarianceGamma => {
                if lambda < 1e-3 {
                    0.5 - lambda / 6.0 + lambda * lambda / 8.0
                } else {
                    let l = lambda.ln_1p();
                    1.0 / l - lambda / ((1.0 + lambda) * l * l)
                }
            }
        }
    }
}

/// Characteristic exponent psi(R) of the radial frequency R >= 0 via the
/// radial Levy-Khintchine integral
///   psi(R) = int_0^inf (omega_{d-1} - k_d(r R)) nu(r) r^{d-1} dr.
pub fn psi_from_levy(nu: &LevyDensity, d: u32, big_r: f64, tol: Tol) -> Result<f64> {
    if big_r == 0.0 {
        return Ok(0.0);
    }
    let om = sphere_surface(d);
    let di = d as i32;
    let z1 = kernel_zero(d, 1) / big_r;
    // head in log coordinates: the integrand behaves like r^{2-alpha} near 0,
    // so after r = e^u it decays exponentially to the left
    let head_f = |u: f64| {
        let r = u.exp();
        om * one_minus_kernel(d, r * big_r) * nu.eval(r) * r.powi(di)
    };
    let u_hi = z1.ln();
    let mut u_lo = u_hi - 40.0;
    let peak = head_f(u_hi - 0.5).abs().max(1e-300);
    for _ in 0..20 {
        if head_f(u_lo).abs() > 1e-16 * peak {
            u_lo -= 30.0;
        } else {
            break;
        }
    }
    if head_f(u_lo).abs() > 1e-14 * peak {
        return Err(Error::Domain(
            "Levy density is not locally integrable against r^{d+1}".into(),
        ));
    }
    let head = adaptive(&head_f, u_lo, u_hi, tol, 6000)?;
    let weight = |r: f64| nu.eval(r) * r.powi(di - 1);
    let tail_mass = integral_upper_power(&weight, z1, tol)?;
    let tail_osc = oscillatory_kernel_integral(d, big_r, &weight, z1, tol, 60_000)?;
    Ok(head.value + om * tail_mass.value - tail_osc.value)
}

/// Evaluation route for psi.
#[derive(Debug, Clone)]
enum PsiRoute {
    /// |xi|^alpha
    ClosedStable { alpha: f64 },
    /// phi(|xi|^2)
    FromLaplace(LaplaceExponent),
    /// Levy-Khintchine quadrature, tabulated once and interpolated log-log.
    FromLevy { nu: LevyDensity, table: Pchip },
    /// Externally tabulated exponent (synthetic or measured), log-log table.
    Tabulated { table: Pchip },
}

#[derive(Debug, Clone)]
pub struct CharacteristicExponent {
    pub d: u32,
    route: PsiRoute,
}

const PSI_TABLE_RANGE: (f64, f64) = (1e-8, 1e8);
const PSI_TABLE_POINTS: usize = 640;

impl CharacteristicExponent {
    pub fn for_spec(spec: &ProcessSpec) -> Result<Self> {
        let d = spec.dimension;
        match spec.kind {
            ProcessKind::Stable { alpha } => {
                Ok(CharacteristicExponent { d, route: PsiRoute::ClosedStable { alpha } })
            }
            ProcessKind::Relativistic { .. }
            | ProcessKind::GeometricStable { .. }
            | ProcessKind::ConjugateVarianceGamma => Ok(CharacteristicExponent {
                d,
                route: PsiRoute::FromLaplace(LaplaceExponent::for_spec(spec).unwrap()),
            }),
            ProcessKind::TruncatedStable { .. } | ProcessKind::Counterexample { .. } => {
                let nu = LevyDensity::for_spec(spec)?;
                Self::from_levy(nu, d)
            }
        }
    }

    pub fn from_laplace(phi: LaplaceExponent, d: u32) -> Self {
        CharacteristicExponent { d, route: PsiRoute::FromLaplace(phi) }
    }

    /// Build from strictly positive samples of psi on an increasing radius grid.
    pub fn from_values(d: u32, radii: &[f64], values: &[f64]) -> Self {
        let lx: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
        let ly: Vec<f64> = values.iter().map(|v| v.ln()).collect();
        CharacteristicExponent { d, route: PsiRoute::Tabulated { table: Pchip::new(lx, ly) } }
    }

    pub fn from_levy(nu: LevyDensity, d: u32) -> Result<Self> {
        let grid = log_spaced(PSI_TABLE_RANGE.0, PSI_TABLE_RANGE.1, PSI_TABLE_POINTS);
        let tol = Tol::new(1e-14, 1e-8);
        let mut lx = Vec::with_capacity(grid.len());
        let mut ly = Vec::with_capacity(grid.len());
        for &r in &grid {
            let v = psi_from_levy(&nu, d, r, tol)?;
            if v > 0.0 {
                lx.push(r.ln());
                ly.push(v.ln());
            }
        }
        if lx.len() < grid.len() {
            return Err(Error::Domain("characteristic exponent non-positive on grid".into()));
        }
        Ok(CharacteristicExponent { d, route: PsiRoute::FromLevy { nu, table: Pchip::new(lx, ly) } })
    }

    /// psi at radial frequency R >= 0.
    pub fn eval(&self, big_r: f64) -> f64 {
        if big_r == 0.0 {
            return 0.0;
        }
        match &self.route {
            PsiRoute::ClosedStable { alpha } => big_r.powf(*alpha),
            PsiRoute::FromLaplace(phi) => phi.eval(big_r * big_r),
            PsiRoute::FromLevy { table, .. } | PsiRoute::Tabulated { table } => {
                table.eval(big_r.ln()).exp()
            }
        }
    }

    pub fn levy_density(&self) -> Option<&LevyDensity> {
        match &self.route {
            PsiRoute::FromLevy { nu, .. } => Some(nu),
            _ => None,
        }
    }

    /// Numeric check of lim psi(rho)/log(rho) = infinity, the growth condition
    /// for transition densities to exist at all t > 0.
    pub fn grows_superlogarithmically(&self) -> bool {
        let probes = [1e4, 1e6, 1e8];
        let mut prev = 0.0;
        for &rho in &probes {
            let ratio = self.eval(rho) / rho.ln();
            if ratio < prev || !ratio.is_finite() {
                return false;
            }
            prev = ratio;
        }
        prev > 50.0
    }
}

/// The maximal exponent psi*(r) = sup_{s <= r} psi(s), its generalized
/// inverse, and the scale function L.
#[derive(Debug, Clone)]
pub struct ScaleFunctions {
    psi: CharacteristicExponent,
    pub monotone: bool,
    /// running-max envelope, present only when psi is not monotone
    envelope: Option<Pchip>,
    r_hi: f64,
}

const MONOTONE_SCAN_POINTS: usize = 256;

impl ScaleFunctions {
    pub fn new(psi: CharacteristicExponent) -> Self {
        let (lo, hi) = PSI_TABLE_RANGE;
        let scan = log_spaced(lo, hi, MONOTONE_SCAN_POINTS);
        let vals: Vec<f64> = scan.iter().map(|&r| psi.eval(r)).collect();
        let monotone = vals.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-12));
        let envelope = if monotone {
            None
        } else {
            let fine = log_spaced(lo, hi, 4096);
            let mut running = f64::MIN;
            let (mut lx, mut ly) = (Vec::new(), Vec::new());
            for &r in &fine {
                running = running.max(psi.eval(r));
                lx.push(r.ln());
                ly.push(running.ln());
            }
            Some(Pchip::new(lx, ly))
        };
        ScaleFunctions { psi, monotone, envelope, r_hi: hi }
    }

    pub fn for_spec(spec: &ProcessSpec) -> Result<Self> {
        Ok(Self::new(CharacteristicExponent::for_spec(spec)?))
    }

    /// psi*(r) = sup_{s <= r} psi(s).
    pub fn psi_star(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        match &self.envelope {
            None => self.psi.eval(r),
            Some(env) => {
                if r < PSI_TABLE_RANGE.0 {
                    self.psi.eval(r)
                } else {
                    env.eval(r.ln()).exp()
                }
            }
        }
    }

    /// Generalized inverse psi^-(u) = inf { s : psi*(s) >= u }.
    pub fn psi_inverse(&self, u: f64) -> Result<f64> {
        if u <= 0.0 {
            return Ok(0.0);
        }
        let achievable = self.psi_star(self.r_hi);
        if u > achievable {
            return Err(Error::Range { requested: u, achievable });
        }
        let (mut lo, mut hi) = (1e-150f64.ln(), self.r_hi.ln());
        if self.psi_star(lo.exp()) >= u {
            return Ok(lo.exp());
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.psi_star(mid.exp()) >= u {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi.exp())
    }

    /// L(r) = (psi*(1/r))^{-1/2}, L(0) = 0.
    pub fn scale_l(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        assert!(r > 0.0);
        self.psi_star(1.0 / r).powf(-0.5)
    }

    pub fn psi(&self) -> &CharacteristicExponent {
        &self.psi
    }

    /// Upper bound constant check: psi <= psi* <= pi^2 psi pointwise.
    pub fn comparability_holds(&self, r: f64) -> bool {
        let p = self.psi.eval(r);
        let s = self.psi_star(r);
        p <= s * (1.0 + 1e-9) && s <= PI * PI * p * (1.0 + 1e-9)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ScalingCondition {
    Wlsc,
    Wusc,
}

/// Result of a weak-scaling grid scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub condition: ScalingCondition,
    pub exponent: f64,
    pub theta0: f64,
    /// fitted constant on the extended grid (lower C for WLSC, upper C for WUSC)
    pub constant: f64,
    /// base-grid constant / extended-grid constant (WLSC), reciprocal for WUSC;
    /// near 1 when the condition is genuinely scale-invariant
    pub violation_ratio: f64,
    pub witness: (f64, f64),
    pub pass: bool,
}

const SCALING_STABILITY_TOL: f64 = 0.5;

fn scaling_scan<F: Fn(f64) -> f64>(
    f: &F,
    exponent: f64,
    theta0: f64,
    lam_hi: f64,
    theta_hi: f64,
    lower: bool,
) -> (f64, (f64, f64)) {
    let lams = log_spaced(1.0, lam_hi, 48);
    let th_lo = if theta0 > 0.0 { theta0 } else { 1e-6 };
    let thetas = log_spaced(th_lo, theta_hi, 48);
    let mut best = if lower { f64::INFINITY } else { f64::NEG_INFINITY };
    let mut witness = (1.0, th_lo);
    for &l in &lams {
        for &t in &thetas {
            let ratio = f(l * t) / (l.powf(exponent) * f(t));
            let better = if lower { ratio < best } else { ratio > best };
            if better {
                best = ratio;
                witness = (l, t);
            }
        }
    }
    (best, witness)
}

/// Largest C making f(lambda theta) >= C lambda^a f(theta) hold on the grid.
pub fn check_wlsc<F: Fn(f64) -> f64>(f: &F, exponent: f64, theta0: f64) -> ScalingReport {
    let (c_base, _) = scaling_scan(f, exponent, theta0, 1e4, 1e4, true);
    let (c_ext, witness) = scaling_scan(f, exponent, theta0, 1e6, 1e6, true);
    let violation = c_base / c_ext;
    ScalingReport {
        condition: ScalingCondition::Wlsc,
        exponent,
        theta0,
        constant: c_ext,
        violation_ratio: violation,
        witness,
        pass: c_ext > 0.0 && violation <= 1.0 + SCALING_STABILITY_TOL,
    }
}

/// Smallest C making f(lambda theta) <= C lambda^a f(theta) hold on the grid.
pub fn check_wusc<F: Fn(f64) -> f64>(f: &F, exponent: f64, theta0: f64) -> ScalingReport {
    let (c_base, _) = scaling_scan(f, exponent, theta0, 1e4, 1e4, false);
    let (c_ext, witness) = scaling_scan(f, exponent, theta0, 1e6, 1e6, false);
    let violation = c_ext / c_base;
    ScalingReport {
        condition: ScalingCondition::Wusc,
        exponent,
        theta0,
        constant: c_ext,
        violation_ratio: violation,
        witness,
        pass: c_ext.is_finite() && violation <= 1.0 + SCALING_STABILITY_TOL,
    }
}
