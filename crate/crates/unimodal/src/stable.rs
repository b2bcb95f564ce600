//! Closed-form potential theory of the isotropic alpha-stable process with
//! characteristic exponent |xi|^alpha: Levy density constant, ball exit-time
//! moments, the Poisson kernel of a ball, the ball Green function and the
//! Riesz potential kernel. These serve as exact evaluators for the
//! inequality-verification harness.

use crate::quad::{adaptive, Tol};
use crate::special::{gamma, ln_gamma};
use std::f64::consts::PI;

/// Constant of the stable Levy density nu(r) = A(d, alpha) r^{-d-alpha}
/// normalized so the characteristic exponent is exactly |xi|^alpha.
pub fn levy_constant(d: u32, alpha: f64) -> f64 {
    let d = d as f64;
    alpha * (2.0f64).powf(alpha - 1.0) * gamma((d + alpha) / 2.0)
        / (PI.powf(d / 2.0) * gamma(1.0 - alpha / 2.0))
}

/// E^x tau_{B(0,r)} = Gamma(d/2) (r^2 - |x|^2)^{alpha/2}
///                    / (2^alpha Gamma(1 + alpha/2) Gamma((d+alpha)/2)).
pub fn exit_time_mean(d: u32, alpha: f64, r: f64, x_norm: f64) -> f64 {
    assert!(x_norm < r);
    let d = d as f64;
    let c = (ln_gamma(d / 2.0)
        - alpha * (2.0f64).ln()
        - ln_gamma(1.0 + alpha / 2.0)
        - ln_gamma((d + alpha) / 2.0))
        .exp();
    c * (r * r - x_norm * x_norm).powf(alpha / 2.0)
}

/// Poisson kernel of the ball B(0,r): density of the exit law at z, |z| > r,
/// for the process started at x, |x| < r.
pub fn poisson_kernel_ball(d: u32, alpha: f64, r: f64, x: &[f64], z: &[f64]) -> f64 {
    let xn = norm(x);
    let zn = norm(z);
    assert!(xn < r && zn > r);
    let c = gamma(d as f64 / 2.0) * PI.powf(-(d as f64) / 2.0 - 1.0) * (PI * alpha / 2.0).sin();
    let ratio = (r * r - xn * xn) / (zn * zn - r * r);
    c * ratio.powf(alpha / 2.0) / dist(x, z).powi(d as i32)
}

/// Green function of the ball B(0,r):
/// G(x,y) = kappa |x-y|^{alpha-d} int_0^w u^{alpha/2-1} (1+u)^{-d/2} du,
/// w = (r^2-|x|^2)(r^2-|y|^2) / (r^2 |x-y|^2).
pub fn green_ball(d: u32, alpha: f64, r: f64, x: &[f64], y: &[f64]) -> f64 {
    let xn = norm(x);
    let yn = norm(y);
    if xn >= r || yn >= r {
        return 0.0;
    }
    let rho = dist(x, y);
    if rho == 0.0 {
        return f64::INFINITY;
    }
    let df = d as f64;
    let kappa = (ln_gamma(df / 2.0)
        - alpha * (2.0f64).ln()
        - df / 2.0 * PI.ln()
        - 2.0 * ln_gamma(alpha / 2.0))
        .exp();
    let w = (r * r - xn * xn) * (r * r - yn * yn) / (r * r * rho * rho);
    kappa * rho.powf(alpha - df) * incomplete_ball_integral(df, alpha, w)
}

/// int_0^w u^{alpha/2 - 1} (1 + u)^{-d/2} du via the substitution u = v^{2/alpha}.
fn incomplete_ball_integral(d: f64, alpha: f64, w: f64) -> f64 {
    let vmax = w.powf(alpha / 2.0);
    let two_over_alpha = 2.0 / alpha;
    // u = v^{2/alpha} turns u^{alpha/2-1} du into (2/alpha) dv
    let g = |v: f64| two_over_alpha * (1.0 + v.powf(two_over_alpha)).powf(-d / 2.0);
    if vmax <= 1.0 {
        adaptive(&g, 0.0, vmax, Tol::new(1e-14, 1e-12), 2000).map(|q| q.value).unwrap_or(0.0)
    } else {
        // split at v = 1 to keep panels balanced for huge w
        let a = adaptive(&g, 0.0, 1.0, Tol::new(1e-14, 1e-12), 2000).map(|q| q.value).unwrap_or(0.0);
        let b = adaptive(&g, 1.0, vmax, Tol::new(1e-14, 1e-12), 4000).map(|q| q.value).unwrap_or(0.0);
        a + b
    }
}

/// Riesz potential kernel U(x) = C(d,alpha) |x|^{alpha - d} for d > alpha.
pub fn riesz_potential(d: u32, alpha: f64, r: f64) -> f64 {
    let df = d as f64;
    assert!(df > alpha, "potential kernel requires transience (d > alpha)");
    let c = (ln_gamma((df - alpha) / 2.0)
        - alpha * (2.0f64).ln()
        - df / 2.0 * PI.ln()
        - ln_gamma(alpha / 2.0))
        .exp();
    c * r.powf(alpha - df)
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}
