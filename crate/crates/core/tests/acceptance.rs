//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::{FRAC_PI_2, LN_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use altapprox::apoly::{
    a_derivative, b_prime_gram, build_a_system, build_b_system, gram_matrix,
};
use altapprox::operators::{
    fit, omega_hat, omega_spectral, omega_weak, w_discrete, w_hat, w_via_pseudo,
    weak_transform, BPath, Expansion, FitOptions, FuncSpec, Operator,
};
use altapprox::poly::{int, rat, weighted_inner};
use altapprox::quadrature::{gauss_rule, QuadOptions};
use altapprox::roots::{bisect, bracketed_roots, linspace, sign_changes};
use altapprox::structured::{
    build_structured, lobatto_from_s1, rodrigues, sin_reference_quadratic, wavelet_subset,
};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q() -> QuadOptions {
    QuadOptions::default()
}

fn unit_grid(points: usize) -> Vec<f64> {
    linspace(0.0, 1.0, points)
}

fn max_abs_diff(e: &Expansion, f: impl Fn(f64) -> f64, grid: &[f64]) -> f64 {
    grid.iter().map(|&x| (e.value(x) - f(x)).abs()).fold(0.0, f64::max)
}

fn coeff_check(label: &str, got: &[f64], want: &[f64], tol: f64) -> Result<f64, String> {
    ensure(got.len() == want.len(), || format!("{label}: length {} vs {}", got.len(), want.len()))?;
    let err = got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(err <= tol, || format!("{label}: max coefficient error {err:e} > {tol:e} (got {got:?})"))?;
    Ok(err)
}

fn sin_half() -> FuncSpec {
    FuncSpec::new(|x| (FRAC_PI_2 * x).sin()).with_derivative(|x| FRAC_PI_2 * (FRAC_PI_2 * x).cos())
}

fn c1_exact_identities() -> Outcome {
    for n in 1..=20 {
        let a = build_a_system(n).map_err(|e| e.to_string())?;
        let g = gram_matrix(&a);
        for k in 1..=n {
            for l in 1..=n {
                let want = if k == l { rat(1, (k + l) as i64) } else { Zero::zero() };
                ensure(g[k - 1][l - 1] == want, || format!("gram n={n} ({k},{l})"))?;
            }
        }
        for k in 0..=n {
            let want = if (n - k) % 2 == 0 { int(1) } else { int(-1) };
            ensure(a.polys()[k].eval_rational(&One::one()) == want, || format!("A({n},{k})(1)"))?;
        }
        for k in 1..=n {
            let d = a_derivative(&a, k).map_err(|e| e.to_string())?;
            ensure(d == a.polys()[k].derivative(), || format!("derivative identity n={n} k={k}"))?;
        }
        let bg = b_prime_gram(&build_b_system(&a));
        for k in 1..=n {
            for l in 1..=n {
                let want = if k == l { rat((k + l) as i64, 4) } else { Zero::zero() };
                ensure(bg[k - 1][l - 1] == want, || format!("B' gram n={n} ({k},{l})"))?;
            }
        }
    }
    let mut antisym = 0;
    for n in 1..=12 {
        let s = build_structured(n).map_err(|e| e.to_string())?;
        for k in 0..=n {
            for l in k + 1..=n {
                let v = weighted_inner(&s.raw()[k], &s.raw()[l]).map_err(|e| e.to_string())?;
                ensure(v.is_zero(), || format!("structured n={n} ({k},{l}) = {v}"))?;
            }
            if s.is_antisymmetric(k) {
                antisym += 1;
                ensure(s.raw_mean(k).is_zero(), || format!("structured mean n={n} k={k}"))?;
            }
        }
    }
    Ok(format!("n <= 20 exact; structured n <= 12 exact, {antisym} antisymmetric members with zero mean"))
}

fn c2_log() -> Outcome {
    let f = FuncSpec::new(|x: f64| x.ln_1p()).with_derivative(|x| 1.0 / (1.0 + x));
    let want = [0.0, 342.0 - 492.0 * LN_2, -(645.0 - 930.0 * LN_2), 1040.0 / 3.0 - 500.0 * LN_2];
    let weak = omega_weak(&f, 3, &q()).map_err(|e| e.to_string())?;
    let e1 = coeff_check("weak", &weak.monomial_coeffs().map_err(|e| e.to_string())?, &want, 1e-9)?;
    let spec = omega_spectral(&f, 3, BPath::FromC, &q()).map_err(|e| e.to_string())?;
    let e2 = coeff_check("spectral", &spec.monomial_coeffs().map_err(|e| e.to_string())?, &want, 1e-9)?;
    Ok(format!("max coefficient error weak {e1:.1e}, spectral via c {e2:.1e}"))
}

fn one_minus_sin() -> FuncSpec {
    FuncSpec::new(|x| 1.0 - (PI * x).sin()).with_derivative(|x| -PI * (PI * x).cos())
}

fn c3_one_minus_sin() -> Outcome {
    let p2 = PI * PI;
    let s = 12.0 / (p2 * PI);
    let want = [1.0, s * (17.0 * p2 - 180.0), -s * (35.0 * p2 - 360.0), s * (20.0 * p2 - 200.0)];
    let spec = omega_spectral(&one_minus_sin(), 3, BPath::Direct, &q()).map_err(|e| e.to_string())?;
    let e1 = coeff_check("spectral", &spec.monomial_coeffs().map_err(|e| e.to_string())?, &want, 1e-9)?;
    let weak = omega_weak(&one_minus_sin(), 3, &q()).map_err(|e| e.to_string())?;
    let e2 = coeff_check("weak", &weak.monomial_coeffs().map_err(|e| e.to_string())?, &want, 1e-9)?;
    Ok(format!("max coefficient error spectral {e1:.1e}, weak {e2:.1e}"))
}

fn c4_sqrt() -> Outcome {
    let f = FuncSpec::new(f64::sqrt)
        .with_derivative(|x| 0.5 / x.sqrt())
        .endpoint_singular(true);
    let want: Vec<f64> = [0.0, 15.0, -35.0, 56.0, -45.0, 14.0]
        .iter()
        .map(|v| v * 2.0 / 11.0)
        .collect();
    let weak = omega_weak(&f, 5, &q()).map_err(|e| e.to_string())?;
    let e = coeff_check("weak", &weak.monomial_coeffs().map_err(|e| e.to_string())?, &want, 1e-6)?;
    Ok(format!("max coefficient error {e:.1e}"))
}

fn c5_intercepts() -> Outcome {
    let f = one_minus_sin();
    let e = omega_spectral(&f, 3, BPath::Direct, &q()).map_err(|e| e.to_string())?;
    let grid: Vec<f64> = linspace(0.0, 1.0, 2001)[1..2000].to_vec();
    let roots = bracketed_roots(|x| e.derivative(x) - f.deriv(x).unwrap(), &grid)
        .map_err(|e| e.to_string())?;
    let want = [0.213063, 0.585763, 0.907986];
    ensure(roots.len() == 3, || format!("found {} intercepts: {roots:?}", roots.len()))?;
    let err = roots.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(err <= 5e-6, || format!("intercepts {roots:?}, max error {err:e}"))?;
    Ok(format!("roots {:.9} {:.9} {:.9}", roots[0], roots[1], roots[2]))
}

fn c6_projection_sin() -> Outcome {
    let f = FuncSpec::new(|x| (PI * x).sin()).with_derivative(|x| PI * (PI * x).cos());
    let p2 = PI * PI;
    let p3 = p2 * PI;
    let want = [
        6.0 * (3.0 * p2 - 28.0) / p3,
        4.0 / PI,
        -6.0 * (p2 - 20.0) / p3,
        8.0 * (p2 - 6.0) / p3,
    ];
    let hat = omega_hat(&f, 4, &q()).map_err(|e| e.to_string())?;
    let e1 = coeff_check("projection", hat.coeffs(), &want, 1e-9)?;
    let again = omega_weak(&hat.to_func_spec(), 4, &q()).map_err(|e| e.to_string())?;
    let grid = unit_grid(101);
    let e2 = max_abs_diff(&again, |x| hat.value(x), &grid);
    ensure(e2 <= 1e-9, || format!("weak operator moved the projection by {e2:e}"))?;
    let mapped = weak_transform(hat.coeffs(), hat.value(1.0) - hat.constant());
    let e3 = coeff_check("S-map fixed point", &mapped, hat.coeffs(), 1e-9)?;
    Ok(format!("coefficients {e1:.1e}, idempotence {e2:.1e}, fixed point {e3:.1e}"))
}

fn c7_discrete() -> Outcome {
    let f = sin_half();
    let grid = unit_grid(2001);
    let w = w_discrete(&f, 9).map_err(|e| e.to_string())?;
    let weak = omega_weak(&f, 9, &q()).map_err(|e| e.to_string())?;
    let e1 = max_abs_diff(&w, |x| weak.value(x), &grid);
    ensure(e1 <= 2e-6, || format!("w vs weak: {e1:e}"))?;
    let g = FuncSpec::new(|x: f64| x.ln_1p());
    let mut e2: f64 = 0.0;
    for n in 1..=8 {
        for func in [&f, &g] {
            let a = w_discrete(func, n).map_err(|e| e.to_string())?;
            let b = w_via_pseudo(func, n).map_err(|e| e.to_string())?;
            e2 = e2.max(max_abs_diff(&b, |x| a.value(x), &grid));
        }
    }
    ensure(e2 <= 1e-8, || format!("pseudo-basis vs direct: {e2:e}"))?;
    let mut e3: f64 = 0.0;
    for n in 1..=12 {
        let h = w_hat(&f, n).map_err(|e| e.to_string())?;
        e3 = e3.max((h.value(0.0) - f.eval(0.0)).abs());
        for &x in gauss_rule(n).map_err(|e| e.to_string())?.nodes() {
            e3 = e3.max((h.value(x) - f.eval(x)).abs());
        }
    }
    ensure(e3 <= 1e-10, || format!("w_hat interpolation: {e3:e}"))?;
    Ok(format!("w-weak {e1:.1e}, pseudo {e2:.1e}, interpolation {e3:.1e}"))
}

fn c8_reproduction() -> Outcome {
    let grid = unit_grid(101);
    let mut worst: f64 = 0.0;
    for n in 1..=8 {
        for m in 1..=n {
            let mi = m as i32;
            let f = FuncSpec::new(move |x: f64| x.powi(mi))
                .with_derivative(move |x: f64| mi as f64 * x.powi(mi - 1));
            for op in Operator::ALL {
                let e = fit(op, &f, n, &FitOptions::default()).map_err(|e| e.to_string())?;
                let err = max_abs_diff(&e, |x| x.powi(mi), &grid);
                ensure(err <= 1e-9, || format!("{op} n={n} m={m}: {err:e}"))?;
                worst = worst.max(err);
            }
        }
    }
    Ok(format!("5 operators, 1 <= m <= n <= 8, max error {worst:.1e}"))
}

fn c9_extrapolation() -> Outcome {
    let f = sin_half();
    let omega = omega_weak(&f, 9, &q()).map_err(|e| e.to_string())?;
    let hat = omega_hat(&f, 9, &q()).map_err(|e| e.to_string())?;
    let interior: Vec<f64> = linspace(0.0, 1.0, 2001)[1..].to_vec();
    let err: Vec<f64> = interior.iter().map(|&x| omega.value(x) - f.eval(x)).collect();
    let zero_free = err.iter().all(|v| *v != 0.0) && sign_changes(&err) == 0;
    ensure(zero_free, || format!("omega error changes sign {} times", sign_changes(&err)))?;
    let open: Vec<f64> = interior[..interior.len() - 1].to_vec();
    let herr: Vec<f64> = open.iter().map(|&x| hat.value(x) - f.eval(x)).collect();
    let changes = sign_changes(&herr);
    ensure(changes >= 9, || format!("omega_hat error changes sign only {changes} times"))?;
    let left = (0..=40).map(|i| -1.5 + 0.5 * i as f64 / 40.0);
    let right = (1..=40).map(|i| 2.0 + 0.5 * i as f64 / 40.0);
    let mut checked = 0;
    for x in left.chain(right) {
        let (fx, ox) = (f.eval(x), omega.value(x));
        ensure(fx.signum() == ox.signum(), || format!("sign mismatch at x = {x}: f = {fx:e}, omega = {ox:e}"))?;
        checked += 1;
    }
    Ok(format!(
        "omega error one-signed on (0,1]; omega_hat error has {changes} sign changes; {checked} outside points sign-compliant"
    ))
}

/// Legendre `P_n'(t)` by the standard recurrence.
fn legendre_deriv(n: usize, t: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, t);
    for m in 1..n {
        let mf = m as f64;
        let p2 = ((2.0 * mf + 1.0) * t * p1 - mf * p0) / (mf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    n as f64 * (t * p1 - p0) / (t * t - 1.0)
}

fn c10_structured() -> Outcome {
    let s3 = build_structured(3).map_err(|e| e.to_string())?;
    let want: Vec<_> = [1, -2, -10, 20].iter().map(|&v| int(v)).collect();
    ensure(s3.to_pi_basis(0).map_err(|e| e.to_string())? == want.as_slice(), || {
        format!("raw_0 in pi basis: {:?}", s3.to_pi_basis(0))
    })?;
    for n in 1..=10 {
        let s = build_structured(n).map_err(|e| e.to_string())?;
        for k in 0..=n {
            let r = rodrigues(n, k).map_err(|e| e.to_string())?;
            ensure(r.proportionality(&s.raw()[k]).is_some(), || format!("rodrigues n={n} k={k}"))?;
        }
    }
    let mut worst: f64 = 0.0;
    for n in 2..=10 {
        let s = build_structured(n).map_err(|e| e.to_string())?;
        let got = lobatto_from_s1(&s).map_err(|e| e.to_string())?;
        // oracle: roots of P_n'(2x - 1), bracketed on a fine grid
        let g = linspace(1e-9, 1.0 - 1e-9, 20001);
        let mut oracle = Vec::new();
        for w in g.windows(2) {
            let (a, b) = (legendre_deriv(n, 2.0 * w[0] - 1.0), legendre_deriv(n, 2.0 * w[1] - 1.0));
            if a.signum() != b.signum() {
                oracle.push(
                    bisect(|x| legendre_deriv(n, 2.0 * x - 1.0), w[0], w[1]).map_err(|e| e.to_string())?,
                );
            }
        }
        ensure(got.len() == oracle.len(), || format!("n={n}: {} vs {} nodes", got.len(), oracle.len()))?;
        for (a, b) in got.iter().zip(&oracle) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("Lobatto mismatch {worst:e}"))?;
    let r = sin_reference_quadratic;
    ensure(r(0.0) == 0.0 && r(1.0) == 0.0, || "reference does not vanish at the endpoints".into())?;
    let interior = &linspace(0.0, 1.0, 2001)[1..2000];
    ensure(interior.iter().all(|&x| r(x) > 0.0), || "reference not positive".into())?;
    let h = 1e-3;
    let concave = interior.iter().all(|&x| r(x - h) + r(x + h) - 2.0 * r(x) < 0.0);
    ensure(concave, || "reference not concave".into())?;
    Ok(format!("pi basis, Rodrigues n <= 10, Lobatto max error {worst:.1e}, reference quadratic checked"))
}

fn c11_wavelets() -> Outcome {
    let s7 = build_structured(7).map_err(|e| e.to_string())?;
    let anti7: Vec<usize> = (2..=7).filter(|&k| s7.is_antisymmetric(k)).collect();
    ensure(anti7.len() == 3, || format!("n=7 antisymmetric members {anti7:?}"))?;
    ensure(
        wavelet_subset(&s7).iter().map(|p| p.1).collect::<Vec<_>>() == anti7,
        || "n=7 wavelet subset differs".into(),
    )?;
    let s11 = build_structured(11).map_err(|e| e.to_string())?;
    let anti11: Vec<usize> = (2..=11).filter(|&k| s11.is_antisymmetric(k)).collect();
    ensure(anti11 == [2, 4, 6, 8, 10], || format!("n=11 antisymmetric members {anti11:?}"))?;
    for (s, ks) in [(&s7, &anti7), (&s11, &anti11)] {
        for &k in ks.iter() {
            ensure(s.raw_mean(k).is_zero(), || format!("mean of k={k}"))?;
            let l = s.lambda(k).map_err(|e| e.to_string())?;
            ensure(l.moment() == 0.0, || format!("moment of k={k}"))?;
        }
        for k in 2..=s.n() {
            let l = s.lambda(k).map_err(|e| e.to_string())?;
            for x in [-3.0, -0.5, 0.0, 1.0, 1.5, 10.0] {
                ensure(l.eval(x) == 0.0, || format!("Λ k={k} nonzero at {x}"))?;
            }
        }
    }
    Ok(format!("n=7 -> {anti7:?}, n=11 -> {anti11:?}"))
}

fn c12_convergence() -> Outcome {
    let f = sin_half();
    let grid = unit_grid(2001);
    let mut errs = Vec::new();
    for n in [3, 5, 7, 9] {
        let e = omega_weak(&f, n, &q()).map_err(|e| e.to_string())?;
        errs.push(max_abs_diff(&e, |x| f.eval(x), &grid));
    }
    ensure(errs.windows(2).all(|w| w[1] < w[0]), || format!("errors {errs:?}"))?;
    Ok(format!(
        "max errors {}",
        errs.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>().join(" > ")
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("exact identities", c1_exact_identities),
        ("ln(1+x), n=3 monomial coefficients", c2_log),
        ("1-sin(pi x), n=3 monomial coefficients", c3_one_minus_sin),
        ("sqrt(x), n=5 weak coefficients", c4_sqrt),
        ("derivative intercepts of 1-sin(pi x), n=3", c5_intercepts),
        ("sin(pi x), n=4 projection, idempotence, fixed point", c6_projection_sin),
        ("discrete operators consistency", c7_discrete),
        ("polynomial reproduction", c8_reproduction),
        ("extrapolation experiment, sin(pi x/2), n=9", c9_extrapolation),
        ("structured system", c10_structured),
        ("wavelets", c11_wavelets),
        ("weak operator error decreasing in n", c12_convergence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
