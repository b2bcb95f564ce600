//! Special functions used by the radial transforms: gamma, error function,
//! Bessel functions of the first kind and their zeros, and the radial
//! Fourier kernels for dimensions 1 through 5.

use std::f64::consts::PI;

/// Natural log of the gamma function, Lanczos approximation (g = 7, n = 9).
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection formula
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    let t = x + 7.5;
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        ln_gamma(x).exp()
    }
}

/// Complementary error function, |error| < 1.2e-7 (Numerical Recipes ERFCC).
pub fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let ans = t
        * (-z * z - 1.265_512_23
            + t * (1.000_023_68
                + t * (0.374_091_96
                    + t * (0.096_784_18
                        + t * (-0.186_288_06
                            + t * (0.278_868_07
                                + t * (-1.135_203_98
                                    + t * (1.488_515_87
                                        + t * (-0.822_152_23 + t * 0.170_872_77)))))))))
            .exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}

/// Surface area of the unit sphere S^{d-1} in R^d.
pub fn sphere_surface(d: u32) -> f64 {
    2.0 * PI.powf(d as f64 / 2.0) / gamma(d as f64 / 2.0)
}

/// Bessel J0: power series below x = 14, asymptotic phase expansion beyond.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 14.0 {
        // sum (-1)^k (x/2)^{2k} / (k!)^2
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut acc = 1.0;
        for k in 1..40 {
            term *= -q / ((k * k) as f64);
            acc += term;
            if term.abs() < 1e-17 {
                break;
            }
        }
        acc
    } else {
        let t = 1.0 / (8.0 * ax);
        let t2 = t * t;
        let p = 1.0 + t2 * (-4.5 + t2 * (459.375 - t2 * 150_077.812_5));
        let q = t * (-1.0 + t2 * (37.5 - t2 * 7_441.875));
        let chi = ax - 0.25 * PI;
        (2.0 / (PI * ax)).sqrt() * (p * chi.cos() - q * chi.sin())
    }
}

/// Bessel J1: power series below x = 14, asymptotic phase expansion beyond.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let ans = if ax < 14.0 {
        // (x/2) sum (-1)^k (x/2)^{2k} / (k! (k+1)!)
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut acc = 1.0;
        for k in 1..40 {
            term *= -q / ((k * (k + 1)) as f64);
            acc += term;
            if term.abs() < 1e-17 {
                break;
            }
        }
        0.5 * ax * acc
    } else {
        let t = 1.0 / (8.0 * ax);
        let t2 = t * t;
        let p = 1.0 + t2 * (7.5 + t2 * (-590.625 + t2 * 177_364.687_5));
        let q = t * (3.0 + t2 * (-52.5 + t2 * 9_095.625));
        let chi = ax - 0.75 * PI;
        (2.0 / (PI * ax)).sqrt() * (p * chi.cos() - q * chi.sin())
    };
    if x < 0.0 {
        -ans
    } else {
        ans
    }
}

/// The radial Fourier kernel k_d(u) = (2pi)^{d/2} u^{-(d-2)/2} J_{(d-2)/2}(u),
/// normalized so that k_d(0) = sphere_surface(d). The surface integral of
/// e^{i xi.x} over the sphere |x| = r equals k_d(r|xi|) r^{d-1}.
pub fn fourier_kernel(d: u32, u: f64) -> f64 {
    match d {
        1 => 2.0 * u.cos(),
        2 => 2.0 * PI * bessel_j0(u),
        3 => {
            if u.abs() < 1e-4 {
                4.0 * PI * (1.0 - u * u / 6.0 + u.powi(4) / 120.0)
            } else {
                4.0 * PI * u.sin() / u
            }
        }
        4 => {
            if u.abs() < 1e-4 {
                2.0 * PI * PI * (1.0 - u * u / 8.0 + u.powi(4) / 192.0)
            } else {
                4.0 * PI * PI * bessel_j1(u) / u
            }
        }
        5 => {
            let c = 8.0 * PI * PI;
            if u.abs() < 0.1 {
                c / 3.0 * (1.0 - u * u / 10.0 + u.powi(4) / 280.0 - u.powi(6) / 15_120.0)
            } else {
                c * (u.sin() - u * u.cos()) / (u * u * u)
            }
        }
        _ => unsupported_dimension(d),
    }
}

/// 1 - k_d(u)/omega_{d-1}, the Levy-Khintchine integrand factor, computed
/// without cancellation near u = 0. Nonnegative for all u.
pub fn one_minus_kernel(d: u32, u: f64) -> f64 {
    let u = u.abs();
    match d {
        1 => {
            let s = (0.5 * u).sin();
            2.0 * s * s
        }
        2 => {
            if u < 1.0 {
                // 1 - J0(u) = sum_{k>=1} (-1)^{k+1} (u/2)^{2k} / (k!)^2
                let q = 0.25 * u * u;
                let mut term = q;
                let mut acc = 0.0;
                for k in 1..20 {
                    acc += term;
                    term *= -q / ((k + 1) as f64 * (k + 1) as f64);
                    if term.abs() < 1e-18 * acc.abs().max(1e-300) {
                        break;
                    }
                }
                acc
            } else {
                1.0 - bessel_j0(u)
            }
        }
        3 => {
            if u < 0.5 {
                let q = u * u;
                q / 6.0 - q * q / 120.0 + q * q * q / 5040.0 - q * q * q * q / 362_880.0
            } else {
                1.0 - u.sin() / u
            }
        }
        4 => {
            if u < 1.0 {
                // 1 - 2 J1(u)/u = sum_{k>=1} (-1)^{k+1} (u/2)^{2k} / (k! (k+1)!)
                let q = 0.25 * u * u;
                let mut term = 0.5 * q;
                let mut acc = 0.0;
                for k in 1..20 {
                    acc += term;
                    term *= -q / ((k + 1) as f64 * (k + 2) as f64);
                    if term.abs() < 1e-18 * acc.abs().max(1e-300) {
                        break;
                    }
                }
                acc
            } else {
                1.0 - 2.0 * bessel_j1(u) / u
            }
        }
        5 => {
            if u < 0.5 {
                let q = u * u;
                q / 10.0 - q * q / 280.0 + q * q * q / 15_120.0
            } else {
                1.0 - 3.0 * (u.sin() - u * u.cos()) / (u * u * u)
            }
        }
        _ => unsupported_dimension(d),
    }
}

/// k-th positive zero (k >= 1) of the oscillating factor of the kernel k_d:
/// cos for d=1, J0 for d=2, sin for d=3, J1 for d=4, (sin u - u cos u) for d=5.
pub fn kernel_zero(d: u32, k: usize) -> f64 {
    let kf = k as f64;
    match d {
        1 => (kf - 0.5) * PI,
        3 => kf * PI,
        2 => {
            // McMahon start, two Newton steps on J0 (J0' = -J1)
            let b = (kf - 0.25) * PI;
            let mut x = b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b.powi(3));
            for _ in 0..2 {
                x += bessel_j0(x) / bessel_j1(x);
            }
            x
        }
        4 => {
            // zeros of J1; J1'(x) = J0(x) - J1(x)/x
            let b = (kf + 0.25) * PI;
            let mut x = b - 3.0 / (8.0 * b) - 3.0 / (128.0 * b.powi(3));
            for _ in 0..2 {
                x -= bessel_j1(x) / (bessel_j0(x) - bessel_j1(x) / x);
            }
            x
        }
        5 => {
            // tan u = u; Newton on f(u) = sin u - u cos u, f'(u) = u sin u
            let b = (kf + 0.5) * PI;
            let mut x = b - 1.0 / b;
            for _ in 0..3 {
                x -= (x.sin() - x * x.cos()) / (x * x.sin());
            }
            x
        }
        _ => unsupported_dimension(d),
    }
}

fn unsupported_dimension(d: u32) -> ! {
    panic!("radial kernels are implemented for dimensions 1..=5, got {d}")
}
