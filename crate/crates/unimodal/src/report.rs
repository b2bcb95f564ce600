//! Uniform reporting types for checked inequalities: evaluation grids, LHS
//! and RHS arrays, fitted constants and pass/fail flags, serializable to JSON
//! with the full witness grid.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct BoundPoint {
    pub coords: Vec<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum FitMode {
    /// the inequality must hold with the given constant
    FixedConstant(f64),
    /// the constant is fitted as the supremum of lhs/rhs over the grid
    FitConstant,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub points: Vec<BoundPoint>,
    /// max over the grid of lhs / (c rhs), with c = 1 in FitConstant mode
    pub max_ratio: f64,
    pub fitted_constant: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// coordinates where the max ratio is attained
    pub witness: Vec<f64>,
}

impl BoundReport {
    pub fn from_points(name: &str, points: Vec<BoundPoint>, mode: FitMode, tolerance: f64) -> Self {
        assert!(!points.is_empty(), "bound check needs a nonempty regime grid");
        let c0 = match mode {
            FitMode::FixedConstant(c) => c,
            FitMode::FitConstant => 1.0,
        };
        let mut max_ratio = f64::NEG_INFINITY;
        let mut witness = points[0].coords.clone();
        for p in &points {
            let ratio = p.lhs / (c0 * p.rhs);
            if ratio > max_ratio {
                max_ratio = ratio;
                witness = p.coords.clone();
            }
        }
        let (fitted, pass) = match mode {
            FitMode::FixedConstant(c) => (c, max_ratio <= 1.0 + tolerance && max_ratio.is_finite()),
            FitMode::FitConstant => (max_ratio, max_ratio.is_finite() && max_ratio > 0.0),
        };
        BoundReport {
            name: name.to_string(),
            points,
            max_ratio,
            fitted_constant: fitted,
            tolerance,
            pass,
            witness,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bound report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    /// nu nonincreasing, absolutely continuous, -nu'(r)/r nonincreasing
    H1Monotone,
    /// nu(r) <= a1 nu(r+1) for r >= 1
    H1RatioShift,
    /// nu(r) <= a1 nu(2r) for 0 < r <= 1
    H1Doubling,
    /// potential measure of the subordinator has a decreasing density
    H5PotentialDensity,
    /// phi'(lambda theta)/phi'(theta) <= C lambda^{-delta}
    H7PhiPrimeScaling,
    /// nu(r) <= a1 nu(r+1), subordinate-BM variant
    H8NuShift,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisReport {
    pub hypothesis: Hypothesis,
    pub pass: bool,
    /// worst grid point and the value observed there
    pub witness: (f64, f64),
    /// fitted a1 / C / delta, with headroom where documented
    pub constant: f64,
}

impl HypothesisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("hypothesis report serializes")
    }
}

/// Least-squares slope of y against x (used for log-log exponent fits).
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_constant_mode_records_witness() {
        let pts = vec![
            BoundPoint { coords: vec![1.0], lhs: 2.0, rhs: 1.0 },
            BoundPoint { coords: vec![2.0], lhs: 9.0, rhs: 3.0 },
            BoundPoint { coords: vec![3.0], lhs: 1.0, rhs: 1.0 },
        ];
        let rep = BoundReport::from_points("demo", pts, FitMode::FitConstant, 0.0);
        assert!(rep.pass);
        assert_eq!(rep.fitted_constant, 3.0);
        assert_eq!(rep.witness, vec![2.0]);
        let json = rep.to_json();
        assert!(json.contains("\"max_ratio\""));
        assert!(json.contains("\"points\""));
    }

    #[test]
    fn fixed_constant_mode_fails_on_violation() {
        let pts = vec![BoundPoint { coords: vec![0.5], lhs: 3.0, rhs: 1.0 }];
        let rep = BoundReport::from_points("demo", pts, FitMode::FixedConstant(2.0), 0.1);
        assert!(!rep.pass);
        assert!((rep.max_ratio - 1.5).abs() < 1e-12);
    }

    #[test]
    fn slope_fit_exact_line() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.5 * x - 2.0).collect();
        assert!((fit_slope(&xs, &ys) - 3.5).abs() < 1e-12);
    }
}
