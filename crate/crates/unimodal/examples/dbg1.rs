use unimodal::levy::*;
use unimodal::process::*;
use unimodal::hypotheses::*;
fn main() {
    // relativistic monotone failure detail
    let nu = LevyDensity::Subordinated { d: 3, nu_s: SubordinatorDensity::TemperedHalf { m: 1.0 } };
    let grid = log_spaced(1e-4, 1e2, 600);
    let mut prev_q = f64::INFINITY;
    for &r in &grid {
        let q = -nu.derivative(r) / r;
        if q > prev_q * (1.0 + 1e-9) {
            println!("relativistic -nu'/r up-jump at r={r}: q={q:.6e} prev={prev_q:.6e} rel={}", q/prev_q - 1.0);
        }
        prev_q = q;
    }
    // quotient bounds relativistic
    let a1 = fitted_a1(&nu);
    println!("a1 = {a1:?}");
    if let Ok(a1) = a1 {
        let rep = levy_quotient_bounds(&nu, a1);
        println!("quotient max_ratio {} witness {:?}", rep.max_ratio, rep.witness);
    }
    // ce small-time at r=3
    let spec = ProcessSpec { id: "ce".into(), kind: ProcessKind::Counterexample { alpha: 0.3, gamma: 0.6 }, dimension: 1, grid: Default::default(), flags: Default::default() };
    println!("ce small-time r=3 -> {:?}", nu_small_time_for_spec(&spec, 3.0));
}
