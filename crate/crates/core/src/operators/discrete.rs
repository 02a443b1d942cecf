use super::expansion::{Basis, Expansion, Provenance};
use super::func::FuncSpec;
use super::matrices::s_matrix;
use crate::apoly::AEvaluator;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_rule, QuadratureRule};

/// Largest degree accepted by [`pseudo_basis`]; its coefficients grow quickly with `n`.
pub const PSEUDO_BASIS_MAX: usize = 12;

/// `d_k = 2k Σ_j (w_j/x_j) f₀(x_j) A_{n,k}(x_j)`, the discrete counterpart of `c_k`.
pub fn d_coeffs(f0_at_nodes: &[f64], rule: &QuadratureRule) -> Result<Vec<f64>> {
    let n = rule.n();
    if f0_at_nodes.len() != n {
        return Err(Error::arg(format!(
            "{} samples for a {n}-point rule",
            f0_at_nodes.len()
        )));
    }
    let ev = AEvaluator::new(n);
    let mut d = vec![0.0; n];
    for ((&x, &w), &g) in rule.nodes().iter().zip(rule.weights()).zip(f0_at_nodes) {
        let v = ev.at(x);
        for k in 1..=n {
            d[k - 1] += w / x * g * v.a(k);
        }
    }
    for (k, dk) in (1..=n).zip(d.iter_mut()) {
        *dk *= 2.0 * k as f64;
    }
    Ok(d)
}

fn subtract(values: &[f64], f_at_0: f64) -> Vec<f64> {
    values.iter().map(|v| v - f_at_0).collect()
}

/// `Ŵ` from `f(0)` and `f` at the rule's nodes: interpolates at `{0} ∪ nodes`.
pub fn w_hat_from_values(f_at_0: f64, f_at_nodes: &[f64], rule: &QuadratureRule) -> Result<Expansion> {
    let d = d_coeffs(&subtract(f_at_nodes, f_at_0), rule)?;
    Expansion::new(rule.n(), f_at_0, d, Basis::AWithConstant, Provenance::DiscreteWhat)
}

/// `𝒲` from `f(0)`, `f` at the rule's nodes, and `f(1)`:
/// `a_k = 2[(-1)^{n-1} f₀(1) + Σ_l S_kl l Σ_j (w_j/x_j) f₀(x_j) A_{n,l}(x_j)]`.
pub fn w_discrete_from_values(
    f_at_0: f64,
    f_at_nodes: &[f64],
    f_at_1: f64,
    rule: &QuadratureRule,
) -> Result<Expansion> {
    let n = rule.n();
    if f_at_nodes.len() != n {
        return Err(Error::arg(format!("{} samples for a {n}-point rule", f_at_nodes.len())));
    }
    let f0_1 = f_at_1 - f_at_0;
    let ev = AEvaluator::new(n);
    // inner[l-1] = l Σ_j (w_j/x_j) f₀(x_j) A_{n,l}(x_j)
    let mut inner = vec![0.0; n];
    for ((&x, &w), &fx) in rule.nodes().iter().zip(rule.weights()).zip(f_at_nodes) {
        let v = ev.at(x);
        let g = fx - f_at_0;
        for l in 1..=n {
            inner[l - 1] += w / x * g * v.a(l);
        }
    }
    for (l, s) in (1..=n).zip(inner.iter_mut()) {
        *s *= l as f64;
    }
    let boundary = if (n - 1).is_multiple_of(2) { f0_1 } else { -f0_1 };
    let a = s_matrix(n)
        .apply(&inner)
        .into_iter()
        .map(|v| 2.0 * (boundary + v))
        .collect();
    Expansion::new(n, f_at_0, a, Basis::AWithConstant, Provenance::DiscreteW)
}

fn sample(f: &FuncSpec, rule: &QuadratureRule) -> Result<Vec<f64>> {
    f.check_endpoints()?;
    let vals: Vec<f64> = rule.nodes().iter().map(|&x| f.eval(x)).collect();
    match vals.iter().position(|v| !v.is_finite()) {
        Some(j) => Err(Error::Numeric(format!(
            "f is not finite at node x = {}",
            rule.nodes()[j]
        ))),
        None => Ok(vals),
    }
}

/// `Ŵ_n f`.
pub fn w_hat(f: &FuncSpec, n: usize) -> Result<Expansion> {
    let rule = gauss_rule(n)?;
    w_hat_from_values(f.f_at_0(), &sample(f, &rule)?, &rule)
}

/// `𝒲_n f`.
pub fn w_discrete(f: &FuncSpec, n: usize) -> Result<Expansion> {
    let rule = gauss_rule(n)?;
    w_discrete_from_values(f.f_at_0(), &sample(f, &rule)?, f.f_at_1(), &rule)
}

/// Cardinal functions of `𝒲_n`: `P_{n,0} = 1`, `P_{n,j}` for each node, and
/// `P_{n,n+1}`, such that `𝒲_n f = f(0) P_{n,0} + Σ_j f₀(x_j) P_{n,j} + f₀(1) P_{n,n+1}`.
/// Each is returned as an A-basis expansion.
pub fn pseudo_basis(n: usize) -> Result<Vec<Expansion>> {
    if n > PSEUDO_BASIS_MAX {
        return Err(Error::arg(format!(
            "pseudo-basis limited to n <= {PSEUDO_BASIS_MAX}: its coefficients grow fast \
             enough to make the cardinal form numerically unstable; use w_discrete instead"
        )));
    }
    let rule = gauss_rule(n)?;
    let ev = AEvaluator::new(n);
    let s = s_matrix(n);
    let mut out = Vec::with_capacity(n + 2);
    out.push(Expansion::new(n, 1.0, vec![0.0; n], Basis::AWithConstant, Provenance::DiscreteW)?);
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let v = ev.at(x);
        let la: Vec<f64> = (1..=n).map(|l| l as f64 * v.a(l)).collect();
        let coeffs = s.apply(&la).into_iter().map(|t| 2.0 * w / x * t).collect();
        out.push(Expansion::new(n, 0.0, coeffs, Basis::AWithConstant, Provenance::DiscreteW)?);
    }
    let last = if (n - 1).is_multiple_of(2) { 2.0 } else { -2.0 };
    out.push(Expansion::new(n, 0.0, vec![last; n], Basis::AWithConstant, Provenance::DiscreteW)?);
    Ok(out)
}

/// `𝒲_n f` assembled from [`pseudo_basis`].
pub fn w_via_pseudo(f: &FuncSpec, n: usize) -> Result<Expansion> {
    let basis = pseudo_basis(n)?;
    let rule = gauss_rule(n)?;
    let vals = sample(f, &rule)?;
    let mut weights = vec![f.f_at_0()];
    weights.extend(vals.iter().map(|v| v - f.f_at_0()));
    weights.push(f.f0_at_1());
    let mut constant = 0.0;
    let mut coeffs = vec![0.0; n];
    for (p, wt) in basis.iter().zip(&weights) {
        constant += wt * p.constant();
        for (c, pc) in coeffs.iter_mut().zip(p.coeffs()) {
            *c += wt * pc;
        }
    }
    Expansion::new(n, constant, coeffs, Basis::AWithConstant, Provenance::DiscreteW)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apoly::{a_eval, build_a_system};

    #[test]
    fn d_for_identity_and_member() {
        let rule = gauss_rule(2).unwrap();
        let d = d_coeffs(rule.nodes(), &rule).unwrap();
        assert!((d[0] - 1.0 / 3.0).abs() < 1e-12 && (d[1] - 4.0 / 3.0).abs() < 1e-12);
        let sys = build_a_system(2).unwrap();
        let member: Vec<f64> = rule.nodes().iter().map(|&x| a_eval(&sys, 2, x).unwrap()).collect();
        let d = d_coeffs(&member, &rule).unwrap();
        assert!(d[0].abs() < 1e-12 && (d[1] - 1.0).abs() < 1e-12, "{d:?}");
        assert_eq!(d_coeffs(&[0.0, 0.0], &rule).unwrap(), vec![0.0, 0.0]);
        assert!(d_coeffs(&[0.0], &rule).is_err());
    }

    #[test]
    fn w_hat_interpolates() {
        let f = FuncSpec::new(|x| (std::f64::consts::FRAC_PI_2 * x).sin());
        let e = w_hat(&f, 5).unwrap();
        let rule = gauss_rule(5).unwrap();
        assert_eq!(e.value(0.0), 0.0);
        for &x in rule.nodes() {
            assert!((e.value(x) - f.eval(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn pseudo_basis_endpoints() {
        let p = pseudo_basis(4).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p[0].value(0.37), 1.0);
        assert!(p[5].value(1.0).abs() < 1e-12);
        assert!(pseudo_basis(PSEUDO_BASIS_MAX + 1).is_err());
    }

    #[test]
    fn pseudo_basis_sign_pattern() {
        let grid: Vec<f64> = (1..=2000).map(|i| i as f64 / 2000.0).collect();
        let one_signed = |e: &Expansion| {
            let v: Vec<f64> = grid.iter().map(|&x| e.value(x)).collect();
            v.iter().all(|&y| y > 0.0) || v.iter().all(|&y| y < 0.0)
        };
        for n in 1..=5 {
            let p = pseudo_basis(n).unwrap();
            assert!(p[1..=n].iter().all(one_signed), "n={n}");
        }
        // from n = 6 on the middle members change sign: P_63 rises to about +0.04
        let p = pseudo_basis(6).unwrap();
        let v: Vec<f64> = grid.iter().map(|&x| p[3].value(x)).collect();
        assert!(v.iter().any(|&y| y > 0.04) && v.iter().any(|&y| y < -1.0));
    }

    #[test]
    fn pseudo_form_matches_direct() {
        let f = FuncSpec::new(|x: f64| (3.0 * x).cos() + x);
        for n in 1..=8 {
            let a = w_discrete(&f, n).unwrap();
            let b = w_via_pseudo(&f, n).unwrap();
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                assert!((a.value(x) - b.value(x)).abs() < 1e-8, "n={n} x={x}");
            }
        }
    }
}
