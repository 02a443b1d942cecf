use super::expansion::{Basis, Expansion, Provenance};
use super::func::FuncSpec;
use super::matrices::s_matrix;
use crate::apoly::{AEvaluator, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_family, QuadOptions};

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        Err(Error::arg(format!("degree n must be in 1..={MAX_DEGREE}, got {n}")))
    } else {
        Ok(())
    }
}

/// `b_k = ∫₀¹ f₀'(t) A_{n,k}(t) dt`, `k = 1..n`.
pub fn b_coeffs_direct(f: &FuncSpec, n: usize, opts: &QuadOptions) -> Result<Vec<f64>> {
    check_n(n)?;
    if !f.has_derivative() {
        return Err(Error::MissingDerivative);
    }
    let ev = AEvaluator::new(n);
    integrate_family(
        n,
        |t, out| {
            let d = f.deriv(t).expect("derivative checked above");
            let v = ev.at(t);
            for (k, o) in (1..=n).zip(out.iter_mut()) {
                *o = d * v.a(k);
            }
        },
        f.is_endpoint_singular(),
        opts,
    )
}

/// `c_k = 2k ∫₀¹ f₀(t) A_{n,k}(t) / t dt`, `k = 1..n`.
pub fn c_coeffs(f: &FuncSpec, n: usize, opts: &QuadOptions) -> Result<Vec<f64>> {
    check_n(n)?;
    f.check_endpoints()?;
    let ev = AEvaluator::new(n);
    integrate_family(
        n,
        |t, out| {
            let g = f.f0(t);
            let v = ev.at(t);
            for (k, o) in (1..=n).zip(out.iter_mut()) {
                *o = 2.0 * k as f64 * g * v.a_over_x(k);
            }
        },
        f.is_endpoint_singular(),
        opts,
    )
}

/// B-coefficients from c-coefficients by integration by parts:
/// `b_k = (-1)^{n-k} f₀(1) - c_k/2 - Σ_{l>k} (-1)^{l-k} c_l`.
pub fn b_from_c(c: &[f64], f0_at_1: f64) -> Vec<f64> {
    let n = c.len();
    (1..=n)
        .map(|k| {
            let boundary = if (n - k).is_multiple_of(2) { f0_at_1 } else { -f0_at_1 };
            let tail: f64 = (k + 1..=n)
                .map(|l| if (l - k) % 2 == 0 { c[l - 1] } else { -c[l - 1] })
                .sum();
            boundary - 0.5 * c[k - 1] - tail
        })
        .collect()
}

/// A-coefficients of the weak form: `a_k = 2(-1)^{n-1} f₀(1) + Σ_l S_kl c_l`.
/// The boundary term is the same for every `k`.
pub fn weak_transform(c: &[f64], f0_at_1: f64) -> Vec<f64> {
    let n = c.len();
    let boundary = if (n - 1).is_multiple_of(2) { 2.0 * f0_at_1 } else { -2.0 * f0_at_1 };
    s_matrix(n).apply(c).into_iter().map(|v| boundary + v).collect()
}

/// `Ω̂`: weighted least-squares projection of `f₀` on `A_{n,1..n}`.
pub fn omega_hat(f: &FuncSpec, n: usize, opts: &QuadOptions) -> Result<Expansion> {
    let c = c_coeffs(f, n, opts)?;
    Expansion::new(n, f.f_at_0(), c, Basis::AWithConstant, Provenance::Projection)
}

/// `Ω` in weak form: needs only values of `f`.
pub fn omega_weak(f: &FuncSpec, n: usize, opts: &QuadOptions) -> Result<Expansion> {
    let c = c_coeffs(f, n, opts)?;
    let a = weak_transform(&c, f.f0_at_1());
    Expansion::new(n, f.f_at_0(), a, Basis::AWithConstant, Provenance::Weak)
}

/// How the spectral operator gets its B-coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BPath {
    /// Integrals of `f₀'`; the function must carry a derivative.
    Direct,
    /// From the c-coefficients of `f₀` via [`b_from_c`].
    FromC,
}

/// `Ω` in spectral form: `f(0) + 2 Σ b_k B_{n,k}`, whose derivative
/// `2 Σ b_k k A_{n,k}/x` jointly approximates `f'`.
pub fn omega_spectral(f: &FuncSpec, n: usize, path: BPath, opts: &QuadOptions) -> Result<Expansion> {
    let b = match path {
        BPath::Direct => b_coeffs_direct(f, n, opts)?,
        BPath::FromC => b_from_c(&c_coeffs(f, n, opts)?, f.f0_at_1()),
    };
    Expansion::new(n, f.f_at_0(), b, Basis::BWithConstant, Provenance::Spectral)
}
