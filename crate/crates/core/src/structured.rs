//! Structured orthogonal polynomials `S_{n,k}` and the compactly supported `Λ_{n,k}`.
//!
//! The system comes from orthogonalizing `π_k = x^{k-⌊k/2⌋} (1-x)^{⌊k/2⌋}` under the
//! weight `1/x` in the order `k = n, n-1, ..., 0`. Member `k` keeps a zero of order
//! `⌈k/2⌉` at 0 and `⌊k/2⌋` at 1, so extending it by zero outside `[0, 1]` gives a
//! function with some global smoothness. Polynomials and squared norms are exact; the
//! square root of the norm is only taken when evaluating in floating point.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::operators::{Expansion, FuncSpec, Provenance};
use crate::poly::{to_f64, weighted_inner, RationalPoly, RoundedEvaluator};
use crate::quadrature::{integrate_family, QuadOptions};
use crate::roots::newton_bisect;

pub const MAX_STRUCTURED: usize = 32;

/// `π_0, ..., π_n`.
pub fn pi_seq(n: usize) -> Vec<RationalPoly> {
    (0..=n)
        .map(|k| {
            let ones = k / 2;
            &RationalPoly::x().pow(k - ones) * &RationalPoly::one_minus_x().pow(ones)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct StructuredSystem {
    n: usize,
    raw: Vec<RationalPoly>,
    /// `raw[k]` in the π basis.
    pi_coeffs: Vec<Vec<BigRational>>,
    /// `∫ raw_k² / x`, `None` for `k = 0`.
    norm_sq: Vec<Option<BigRational>>,
    scale: Vec<f64>,
    evals: Vec<RoundedEvaluator>,
    deriv_evals: Vec<RoundedEvaluator>,
}

/// Exact inverse-order Gram–Schmidt with weight `1/x`.
///
/// `raw_k = π_k - Σ_{l>k} (⟨π_k, raw_l⟩ / ⟨raw_l, raw_l⟩) raw_l`, so `⟨raw_k, π_k⟩ =
/// ⟨raw_k, raw_k⟩ > 0` for `k >= 1`, and `raw_0` keeps unit weight on `π_0`.
pub fn build_structured(n: usize) -> Result<StructuredSystem> {
    if n == 0 || n > MAX_STRUCTURED {
        return Err(Error::arg(format!(
            "structured system needs 1 <= n <= {MAX_STRUCTURED}, got {n}"
        )));
    }
    let pis = pi_seq(n);
    let mut raw = vec![RationalPoly::zero(); n + 1];
    let mut pi_coeffs = vec![Vec::new(); n + 1];
    let mut norm_sq: Vec<Option<BigRational>> = vec![None; n + 1];
    for k in (0..=n).rev() {
        let mut p = pis[k].clone();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[k] = BigRational::one();
        for l in k + 1..=n {
            let nl = norm_sq[l].as_ref().expect("set for l >= 1");
            let mu = weighted_inner(&pis[k], &raw[l])? / nl;
            p = &p - &raw[l].scale(&mu);
            for (c, cl) in coeffs.iter_mut().zip(&pi_coeffs[l]) {
                *c -= &mu * cl;
            }
        }
        if k >= 1 {
            norm_sq[k] = Some(weighted_inner(&p, &p)?);
        }
        raw[k] = p;
        pi_coeffs[k] = coeffs;
    }
    let at_one = raw[0].eval_rational(&BigRational::one());
    let scale = (0..=n)
        .map(|k| match &norm_sq[k] {
            Some(s) => 1.0 / to_f64(s).sqrt(),
            None => 1.0 / to_f64(&at_one),
        })
        .collect();
    let evals = raw.iter().map(RoundedEvaluator::new).collect();
    let deriv_evals = raw
        .iter()
        .map(|p| RoundedEvaluator::new(&p.derivative()))
        .collect();
    Ok(StructuredSystem {
        n,
        raw,
        pi_coeffs,
        norm_sq,
        scale,
        evals,
        deriv_evals,
    })
}

impl StructuredSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn raw(&self) -> &[RationalPoly] {
        &self.raw
    }

    pub fn raw_poly(&self, k: usize) -> Result<&RationalPoly> {
        self.raw
            .get(k)
            .ok_or_else(|| Error::arg(format!("index k = {k} outside 0..={}", self.n)))
    }

    /// Exact `∫₀¹ raw_k² / x dx`; `None` for the marginal member `k = 0`.
    pub fn norm_sq(&self, k: usize) -> Option<&BigRational> {
        self.norm_sq.get(k).and_then(Option::as_ref)
    }

    /// Coefficients of `raw_k` on `π_0, ..., π_n`.
    pub fn to_pi_basis(&self, k: usize) -> Result<&[BigRational]> {
        self.pi_coeffs
            .get(k)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::arg(format!("index k = {k} outside 0..={}", self.n)))
    }

    /// Factor turning `raw_k` into `S_{n,k}`: `1/√norm_sq` for `k >= 1`; for `k = 0`
    /// the factor that makes the value at 1 equal to 1.
    pub fn scale(&self, k: usize) -> f64 {
        self.scale[k]
    }

    /// `S_{n,k}(x)`.
    pub fn eval(&self, k: usize, x: f64) -> f64 {
        self.scale[k] * self.evals[k].eval(x)
    }

    /// `S'_{n,k}(x)`.
    pub fn eval_derivative(&self, k: usize, x: f64) -> f64 {
        self.scale[k] * self.deriv_evals[k].eval(x)
    }

    /// Whether `raw_k(1 - x) = -raw_k(x)` exactly.
    pub fn is_antisymmetric(&self, k: usize) -> bool {
        let p = &self.raw[k];
        !p.is_zero() && p.reflect() == -p
    }

    /// Whether `raw_k(1 - x) = raw_k(x)` exactly.
    pub fn is_symmetric(&self, k: usize) -> bool {
        self.raw[k].reflect() == self.raw[k]
    }

    /// Exact `∫₀¹ raw_k dx`.
    pub fn raw_mean(&self, k: usize) -> BigRational {
        self.raw[k].integral_unit()
    }

    /// `Λ_{n,k}`, defined for `2 <= k <= n`.
    pub fn lambda(&self, k: usize) -> Result<LambdaFunction<'_>> {
        if k <= 1 || k > self.n {
            return Err(Error::arg(format!(
                "Λ_(n,k) needs 1 < k <= n = {}, got k = {k}",
                self.n
            )));
        }
        Ok(LambdaFunction { sys: self, k })
    }
}

/// `[π_k / (x^k (1-x)^k)] · d^{n-k}/dx^{n-k} [x^n (1-x)^n]`, exact.
pub fn rodrigues(n: usize, k: usize) -> Result<RationalPoly> {
    if k > n || n > MAX_STRUCTURED {
        return Err(Error::arg(format!(
            "Rodrigues formula needs 0 <= k <= n <= {MAX_STRUCTURED}, got n = {n}, k = {k}"
        )));
    }
    let x = RationalPoly::x();
    let omx = RationalPoly::one_minus_x();
    let base = &x.pow(n) * &omx.pow(n);
    let d = base.nth_derivative(n - k);
    let pik = &pi_seq(k)[k];
    let divisor = &x.pow(k) * &omx.pow(k);
    (&d * pik).div_exact(&divisor)
}

/// Interior zeros of `S_{n,1}`, ascending.
///
/// `S_{n,1}` vanishes once at the origin; the remaining `n-1` zeros are bracketed on a
/// Chebyshev-spaced grid and refined by safeguarded Newton on the exact polynomial.
pub fn lobatto_from_s1(sys: &StructuredSystem) -> Result<Vec<f64>> {
    let n = sys.n;
    if n < 2 {
        return Err(Error::arg("S_(n,1) has interior zeros only for n >= 2"));
    }
    let q = sys.raw[1]
        .div_x()
        .map_err(|e| Error::Internal(format!("raw_1 / x: {e}")))?;
    let qe = RoundedEvaluator::new(&q);
    let dq = RoundedEvaluator::new(&q.derivative());
    let m = 64 * n;
    let grid: Vec<f64> = (0..=m)
        .map(|i| 0.5 - 0.5 * (std::f64::consts::PI * i as f64 / m as f64).cos())
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&x| qe.eval(x)).collect();
    let mut roots = Vec::with_capacity(n - 1);
    for i in 0..m {
        if vals[i] == 0.0 && i > 0 {
            roots.push(grid[i]);
        } else if vals[i] != 0.0 && vals[i + 1] != 0.0 && vals[i].signum() != vals[i + 1].signum() {
            roots.push(newton_bisect(|x| (qe.eval(x), dq.eval(x)), grid[i], grid[i + 1])?);
        }
    }
    if roots.len() != n - 1 {
        return Err(Error::RootCount {
            expected: n - 1,
            found: roots.len(),
        });
    }
    Ok(roots)
}

/// `S_{n,k}` on `(0, 1)`, extended by zero to the real line.
#[derive(Clone, Copy, Debug)]
pub struct LambdaFunction<'a> {
    sys: &'a StructuredSystem,
    k: usize,
}

impl LambdaFunction<'_> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 || x >= 1.0 {
            0.0
        } else {
            self.sys.eval(self.k, x)
        }
    }

    /// `∫_ℝ Λ_{n,k}`: exact rational mean of `raw_k` times the float normalization.
    pub fn moment(&self) -> f64 {
        let m = self.sys.raw_mean(self.k);
        if m.is_zero() {
            0.0
        } else {
            to_f64(&m) * self.sys.scale(self.k)
        }
    }

    /// Endpoint zero orders and the continuity class they guarantee.
    pub fn smoothness(&self) -> Smoothness {
        let p = &self.sys.raw[self.k];
        let at0 = zero_order(p, &BigRational::zero());
        let at1 = zero_order(p, &BigRational::one());
        Smoothness {
            k: self.k,
            zero_order_at_0: at0,
            zero_order_at_1: at1,
            class: at0.min(at1) as i64 - 1,
        }
    }
}

/// Order of the zero of `p` at `x0` (number of vanishing derivatives).
fn zero_order(p: &RationalPoly, x0: &BigRational) -> usize {
    let mut d = p.clone();
    let mut order = 0;
    while !d.is_zero() && d.eval_rational(x0).is_zero() {
        d = d.derivative();
        order += 1;
    }
    order
}

/// Global smoothness of a `Λ` member. `class = c` means `C^c` on the real line;
/// `-1` means the extension by zero is discontinuous.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Smoothness {
    pub k: usize,
    pub zero_order_at_0: usize,
    pub zero_order_at_1: usize,
    pub class: i64,
}

/// `Λ_{n,k}` members that are antisymmetric about `1/2`, taking `k` of the parity
/// opposite to `n` in `2..=n`.
pub fn wavelet_subset(sys: &StructuredSystem) -> Vec<(usize, usize)> {
    let n = sys.n;
    (2..=n)
        .filter(|k| k % 2 != n % 2 && sys.is_antisymmetric(*k))
        .map(|k| (n, k))
        .collect()
}

/// Weighted least-squares projection of `f₀` onto `S_{n,1}, ..., S_{n,n}`:
/// coefficient `k` is `∫₀¹ f₀(t) S_{n,k}(t) / t dt`.
pub fn structured_project(f: &FuncSpec, n: usize, opts: &QuadOptions) -> Result<Expansion> {
    let sys = build_structured(n)?;
    f.check_endpoints()?;
    let over_x: Vec<RoundedEvaluator> = sys.raw[1..]
        .iter()
        .map(|p| p.div_x().map(|q| RoundedEvaluator::new(&q)))
        .collect::<Result<_>>()?;
    let f0 = |t: f64| f.f0(t);
    let raw = integrate_family(
        n,
        |t, out| {
            let v = f0(t);
            for (o, e) in out.iter_mut().zip(&over_x) {
                *o = v * e.eval(t);
            }
        },
        f.is_endpoint_singular(),
        opts,
    )?;
    let coeffs = raw
        .iter()
        .enumerate()
        .map(|(i, v)| v * sys.scale(i + 1))
        .collect();
    Expansion::new_structured(sys, f.f_at_0(), coeffs, Provenance::Projection)
}

/// A shape-preserving quadratic for `sin(πx)` at `n = 3`:
/// `60(12 - π²)/π³ · x(1 - x)`. Kept for comparison; no operator here produces it.
pub fn sin_reference_quadratic(x: f64) -> f64 {
    use std::f64::consts::PI;
    60.0 * (12.0 - PI * PI) / (PI * PI * PI) * x * (1.0 - x)
}

/// Whether the π-basis coefficient vector has integer entries (helper for display).
pub fn pi_coeffs_as_integers(c: &[BigRational]) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    c.iter()
        .map(|v| v.is_integer().then(|| v.to_integer().to_i64()).flatten())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use num_traits::Signed;

    fn p(cs: &[i64]) -> RationalPoly {
        RationalPoly::from_i64s(cs)
    }

    /// Shifted Legendre `P_n(2x-1)` from its own three-term recurrence.
    fn shifted_legendre(n: usize) -> RationalPoly {
        let mut prev = RationalPoly::one();
        let mut cur = p(&[-1, 2]);
        if n == 0 {
            return prev;
        }
        for m in 1..n {
            let m = m as i64;
            let next = &(&p(&[-1, 2]) * &cur).scale(&rat(2 * m + 1, m + 1))
                - &prev.scale(&rat(m, m + 1));
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn pi_sequence() {
        let pis = pi_seq(3);
        assert_eq!(pis[0], RationalPoly::one());
        assert_eq!(pis[2], p(&[0, 1, -1]));
        assert_eq!(pis[3], p(&[0, 0, 1, -1]));
    }

    #[test]
    fn n3_members() {
        let s = build_structured(3).unwrap();
        assert_eq!(s.raw()[3], p(&[0, 0, 1, -1]));
        assert_eq!(s.norm_sq(3), Some(&rat(1, 60)));
        assert!(s.raw()[2].proportionality(&p(&[0, 1, -3, 2])).is_some());
        let pi0: Vec<BigRational> = [1, -2, -10, 20].iter().map(|&v| int(v)).collect();
        assert_eq!(s.to_pi_basis(0).unwrap(), pi0.as_slice());
        assert_eq!(s.raw()[0], p(&[1, -12, 30, -20]));
        assert!(s.norm_sq(0).is_none());
    }

    #[test]
    fn exact_orthogonality_and_signs() {
        for n in 1..=12 {
            let s = build_structured(n).unwrap();
            let pis = pi_seq(n);
            for k in 0..=n {
                for l in (0..=n).filter(|&l| l != k) {
                    let v = weighted_inner(&s.raw()[k], &s.raw()[l]).unwrap();
                    assert!(v.is_zero(), "n={n} ({k},{l})");
                }
                if k >= 1 {
                    assert!(weighted_inner(&s.raw()[k], &pis[k]).unwrap().is_positive());
                }
            }
        }
    }

    #[test]
    fn float_orthonormality() {
        let s = build_structured(8).unwrap();
        let rule = crate::quadrature::gauss_rule(12).unwrap();
        for k in 1..=8 {
            for l in 1..=8 {
                // integrand S_k S_l / x is a polynomial of degree <= 15
                let v = rule.apply(|x| s.eval(k, x) * s.eval(l, x) / x);
                let want = if k == l { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12, "({k},{l}) {v}");
            }
        }
    }

    #[test]
    fn rodrigues_matches_gram_schmidt() {
        assert_eq!(rodrigues(3, 3).unwrap(), p(&[0, 0, 1, -1]));
        assert!(rodrigues(3, 0).unwrap().proportionality(&p(&[1, -12, 30, -20])).is_some());
        for n in 1..=10 {
            let s = build_structured(n).unwrap();
            for k in 0..=n {
                let r = rodrigues(n, k).unwrap();
                assert!(r.proportionality(&s.raw()[k]).is_some(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn marginal_member_is_shifted_legendre() {
        for n in 1..=10 {
            let s = build_structured(n).unwrap();
            let r0 = &s.raw()[0];
            let normalized = r0.scale(&(BigRational::one() / r0.eval_rational(&BigRational::one())));
            assert_eq!(normalized, shifted_legendre(n), "n={n}");
        }
    }

    #[test]
    fn endpoint_zero_orders() {
        for n in 2..=10 {
            let s = build_structured(n).unwrap();
            for k in 0..=n {
                let r = &s.raw()[k];
                assert!(zero_order(r, &BigRational::zero()) >= k.div_ceil(2));
                assert!(zero_order(r, &BigRational::one()) >= k / 2);
            }
        }
    }

    #[test]
    fn lobatto_nodes() {
        let s2 = build_structured(2).unwrap();
        assert_eq!(lobatto_from_s1(&s2).unwrap(), vec![0.5]);
        let s3 = build_structured(3).unwrap();
        let r = lobatto_from_s1(&s3).unwrap();
        let d = 0.5 / 5f64.sqrt();
        assert!((r[0] - (0.5 - d)).abs() < 1e-15 && (r[1] - (0.5 + d)).abs() < 1e-15);
        let s4 = build_structured(4).unwrap();
        let r = lobatto_from_s1(&s4).unwrap();
        assert_eq!(r.len(), 3);
        assert!((r[0] + r[2] - 1.0).abs() < 1e-15 && (r[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn odd_n_wavelets_are_the_even_k() {
        for n in (3..=13).step_by(2) {
            let s = build_structured(n).unwrap();
            let ks: Vec<usize> = wavelet_subset(&s).iter().map(|p| p.1).collect();
            let even: Vec<usize> = (2..=n).filter(|k| k % 2 == 0).collect();
            assert_eq!(ks, even, "n={n}");
        }
    }

    #[test]
    fn smoothness_follows_endpoint_multiplicities() {
        for n in 2..=12 {
            let s = build_structured(n).unwrap();
            for k in 2..=n {
                let sm = s.lambda(k).unwrap().smoothness();
                assert_eq!(sm.zero_order_at_0, k.div_ceil(2), "n={n} k={k}");
                assert_eq!(sm.zero_order_at_1, k / 2, "n={n} k={k}");
                assert_eq!(sm.class, (k / 2) as i64 - 1);
                // C^{k-2} holds only for k = 2
                assert_eq!(sm.class >= k as i64 - 2, k == 2);
            }
        }
    }

    #[test]
    fn wavelets_and_lambda() {
        let s3 = build_structured(3).unwrap();
        assert_eq!(wavelet_subset(&s3), vec![(3, 2)]);
        let s7 = build_structured(7).unwrap();
        assert_eq!(wavelet_subset(&s7), vec![(7, 2), (7, 4), (7, 6)]);
        let s11 = build_structured(11).unwrap();
        let ks: Vec<usize> = wavelet_subset(&s11).iter().map(|p| p.1).collect();
        assert_eq!(ks, vec![2, 4, 6, 8, 10]);
        for &(_, k) in &wavelet_subset(&s11) {
            assert!(s11.raw_mean(k).is_zero());
        }
        let l = s3.lambda(2).unwrap();
        assert_eq!(l.eval(-0.5), 0.0);
        assert_eq!(l.eval(1.0), 0.0);
        assert_eq!(l.moment(), 0.0);
        assert!(s3.lambda(1).is_err());
        assert!(s3.lambda(4).is_err());
        assert_eq!(
            s7.lambda(4).unwrap().smoothness(),
            Smoothness { k: 4, zero_order_at_0: 2, zero_order_at_1: 2, class: 1 }
        );
    }

    #[test]
    fn even_n_has_no_antisymmetric_members() {
        for n in [4, 6, 8] {
            let s = build_structured(n).unwrap();
            assert!(wavelet_subset(&s).is_empty(), "n={n}");
        }
    }

    #[test]
    fn reference_quadratic_shape() {
        assert_eq!(sin_reference_quadratic(0.0), 0.0);
        assert_eq!(sin_reference_quadratic(1.0), 0.0);
        assert!(sin_reference_quadratic(0.5) > 0.0);
    }
}
