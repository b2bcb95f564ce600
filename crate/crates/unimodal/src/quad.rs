//! Adaptive Gauss-Kronrod quadrature, semi-infinite integrals and the
//! zero-partitioned oscillatory engine used by the radial transforms.

use crate::error::{Error, Result};
use crate::special::{fourier_kernel, kernel_zero};
use std::collections::BinaryHeap;

/// 15-point Kronrod abscissae on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct Tol {
    pub abs: f64,
    pub rel: f64,
}

impl Tol {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tol { abs, rel }
    }
    pub fn default_quad() -> Self {
        Tol::new(1e-13, 1e-10)
    }
    pub fn met(&self, err: f64, value: f64) -> bool {
        err <= self.abs.max(self.rel * value.abs())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub err: f64,
    pub evals: usize,
}

/// One Gauss-Kronrod 15(7) panel. Returns (integral, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut result_k = WGK[7] * fc;
    let mut result_g = WG[3] * fc;
    let mut abs_k = result_k.abs();
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        let s = f1 + f2;
        result_k += WGK[j] * s;
        abs_k += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            result_g += WG[j / 2] * s;
        }
    }
    let value = result_k * h;
    let diff = ((result_k - result_g) * h).abs();
    // QUADPACK-style error damping
    let scale = abs_k * h.abs();
    let err = if scale == 0.0 {
        diff
    } else {
        diff.min(scale * (200.0 * diff / scale).powf(1.5).min(1.0)).max(diff * 1e-14)
    };
    (value, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive quadrature over a finite interval; bisects the worst panel.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: Tol, max_panels: usize) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, err: 0.0, evals: 0 });
    }
    let mut evals = 15usize;
    let (v, e) = gk15(f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value: v, err: e });
    let mut total_v = v;
    let mut total_e = e;
    while !tol.met(total_e, total_v) {
        if heap.len() >= max_panels {
            return Err(Error::QuadratureBudget {
                context: format!("adaptive on [{a:.3e},{b:.3e}]"),
                partial: total_v,
                err_estimate: total_e,
                evals,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let m = 0.5 * (worst.a + worst.b);
        if m == worst.a || m == worst.b {
            // interval at machine resolution; accept its contribution
            total_e -= worst.err * 0.99;
            heap.push(Panel { err: worst.err * 0.01, ..worst });
            if heap.len() >= max_panels {
                break;
            }
            continue;
        }
        let (v1, e1) = gk15(f, worst.a, m);
        let (v2, e2) = gk15(f, m, worst.b);
        evals += 30;
        total_v += v1 + v2 - worst.value;
        total_e += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: m, value: v1, err: e1 });
        heap.push(Panel { a: m, b: worst.b, value: v2, err: e2 });
    }
    Ok(Quadrature { value: total_v, err: total_e, evals })
}

/// Integral over [a, infinity) via the substitution r = a + t/(1-t) when the
/// integrand decays faster than r^{-2}, suitable for exponential-type tails.
pub fn integral_upper_exp<F: Fn(f64) -> f64>(f: &F, a: f64, tol: Tol) -> Result<Quadrature> {
    let g = |t: f64| {
        let om = 1.0 - t;
        if om <= 0.0 {
            return 0.0;
        }
        let r = a + t / om;
        let v = f(r);
        if v == 0.0 {
            0.0
        } else {
            v / (om * om)
        }
    };
    adaptive(&g, 0.0, 1.0, tol, 4000)
}

/// Integral over [a, infinity) via r = a/t, robust for power-law tails
/// f ~ r^{-1-s} with any s > 0. Requires a > 0.
pub fn integral_upper_power<F: Fn(f64) -> f64>(f: &F, a: f64, tol: Tol) -> Result<Quadrature> {
    assert!(a > 0.0, "power-tail substitution needs a positive left endpoint");
    let g = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let r = a / t;
        let v = f(r);
        if v == 0.0 {
            0.0
        } else {
            v * a / (t * t)
        }
    };
    adaptive(&g, 0.0, 1.0, tol, 6000)
}

/// Euler transformation of an alternating-ish series given its raw terms.
/// Returns (sum estimate, error heuristic).
fn euler_accelerate(terms: &[f64]) -> (f64, f64) {
    let n = terms.len();
    let mut row: Vec<f64> = Vec::with_capacity(n);
    let mut s = 0.0;
    for &t in terms {
        s += t;
        row.push(s);
    }
    let mut prev_head = row[row.len() - 1];
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
        let head = row[row.len() - 1];
        if (head - prev_head).abs() < 1e-17 * head.abs() {
            return (head, (head - prev_head).abs());
        }
        prev_head = head;
    }
    (row[0], f64::NAN)
}

/// Zero-partitioned integral of the oscillatory kernel against a weight:
///   I = int_{r_lo}^{infty} k_d(r R) w(r) dr
/// partitioned at the kernel zeros z_k / R, with Euler acceleration of the
/// alternating cell sums once enough cells are available. `w` must decay.
pub fn oscillatory_kernel_integral<W: Fn(f64) -> f64>(
    d: u32,
    big_r: f64,
    w: &W,
    r_lo: f64,
    tol: Tol,
    max_cells: usize,
) -> Result<Quadrature> {
    assert!(big_r > 0.0);
    let integrand = |r: f64| fourier_kernel(d, r * big_r) * w(r);
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evals = 0usize;
    let mut terms: Vec<f64> = Vec::new();
    // first kernel zero at or beyond r_lo
    let mut k = 1usize;
    while kernel_zero(d, k) / big_r <= r_lo {
        k += 1;
    }
    let mut a = r_lo;
    let mut small_streak = 0usize;
    let mut prev_accel: Option<f64> = None;
    let mut stable_count = 0usize;
    loop {
        let b = kernel_zero(d, k) / big_r;
        let cell = adaptive(&integrand, a, b, Tol::new(tol.abs * 1e-2, tol.rel * 1e-2), 200)
            .unwrap_or_else(|e| match e {
                Error::QuadratureBudget { partial, err_estimate, evals, .. } => {
                    Quadrature { value: partial, err: err_estimate, evals }
                }
                _ => unreachable!(),
            });
        evals += cell.evals;
        total += cell.value;
        total_err += cell.err;
        terms.push(cell.value);
        a = b;
        k += 1;

        let scale = total.abs().max(tol.abs);
        if cell.value.abs() < 0.005 * tol.abs.max(tol.rel * scale) {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(Quadrature { value: total, err: total_err + cell.value.abs(), evals });
            }
        } else {
            small_streak = 0;
        }

        // accelerate the alternating tail; accept once the accelerated value
        // stabilizes between checks
        if terms.len() >= 24 && terms.len() % 8 == 0 {
            let m = terms.len() - 16;
            let head: f64 = terms[..m].iter().sum();
            let (tail_est, tail_err) = euler_accelerate(&terms[m..]);
            if !tail_err.is_nan() {
                let accel = head + tail_est;
                if let Some(prev) = prev_accel {
                    let delta = (accel - prev).abs();
                    let err_est = delta + tail_err.abs();
                    if tol.met(err_est, accel) || err_est <= 1e-14 * accel.abs() {
                        stable_count += 1;
                        if stable_count >= 2 {
                            return Ok(Quadrature { value: accel, err: err_est, evals });
                        }
                    } else {
                        stable_count = 0;
                    }
                }
                prev_accel = Some(accel);
            }
        }

        if terms.len() >= max_cells {
            return Err(Error::QuadratureBudget {
                context: format!("oscillatory kernel integral d={d} R={big_r:.3e}"),
                partial: total,
                err_estimate: total_err + terms[terms.len() - 1].abs(),
                evals,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn adaptive_polynomial_exact() {
        let q = adaptive(&|x: f64| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, Tol::default_quad(), 100).unwrap();
        // antiderivative x^4/4 - x^2 + x
        assert_relative_eq!(q.value, (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0), max_relative = 1e-13);
    }

    #[test]
    fn adaptive_endpoint_singularity() {
        // int_0^1 x^{-1/2} dx = 2
        let q = adaptive(&|x: f64| x.sqrt().recip(), 0.0, 1.0, Tol::new(1e-9, 1e-9), 4000).unwrap();
        assert_relative_eq!(q.value, 2.0, max_relative = 1e-8);
    }

    #[test]
    fn upper_exp_tail() {
        let q = integral_upper_exp(&|x: f64| (-x).exp(), 0.0, Tol::default_quad()).unwrap();
        assert_relative_eq!(q.value, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn upper_power_tail() {
        // int_1^infty r^{-1.3} dr = 1/0.3
        let q = integral_upper_power(&|r: f64| r.powf(-1.3), 1.0, Tol::new(1e-10, 1e-9)).unwrap();
        assert_relative_eq!(q.value, 1.0 / 0.3, max_relative = 1e-7);
    }

    #[test]
    fn oscillatory_cosine_exponential() {
        // d=1 kernel is 2 cos(rR); int_0^infty 2 cos(rR) e^{-r} dr = 2/(1+R^2)
        for &big_r in &[0.5, 3.0, 40.0] {
            let q = oscillatory_kernel_integral(1, big_r, &|r: f64| (-r).exp(), 0.0, Tol::new(1e-12, 1e-9), 100_000)
                .unwrap();
            assert_relative_eq!(q.value, 2.0 / (1.0 + big_r * big_r), max_relative = 1e-7);
        }
    }

    #[test]
    fn oscillatory_slow_decay_accelerated() {
        // int_0^infty 2 cos(rR) / (1+r^2) dr = pi e^{-R}  (R=1)
        let q = oscillatory_kernel_integral(1, 1.0, &|r: f64| 1.0 / (1.0 + r * r), 0.0, Tol::new(1e-10, 1e-8), 100_000)
            .unwrap();
        assert_relative_eq!(q.value, PI * (-1.0f64).exp(), max_relative = 1e-6);
    }

    #[test]
    fn oscillatory_sine_kernel_d3() {
        // d=3 kernel 4 pi sin(u)/u: int_0^infty 4 pi sin(rR)/(rR) e^{-r} r^2 dr
        // = (4 pi / R) int r sin(rR) e^{-r} dr = (4 pi / R) * 2R/(1+R^2)^2
        let big_r = 2.0;
        let w = |r: f64| (-r).exp() * r * r;
        let q = oscillatory_kernel_integral(3, big_r, &w, 0.0, Tol::new(1e-12, 1e-9), 100_000).unwrap();
        let expect = 8.0 * PI / (1.0 + big_r * big_r).powi(2);
        assert_relative_eq!(q.value, expect, max_relative = 1e-8);
    }

    #[test]
    fn budget_error_carries_partial() {
        let res = oscillatory_kernel_integral(1, 1.0, &|r: f64| 1.0 / (1.0 + r), 0.0, Tol::new(1e-14, 1e-14), 40);
        match res {
            Err(Error::QuadratureBudget { partial, .. }) => assert!(partial.is_finite()),
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
