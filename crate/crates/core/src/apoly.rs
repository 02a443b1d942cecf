//! The alternative orthogonal system `A_{n,k}`, `k = n, ..., 0`, on `[0, 1]` and its
//! integral co-basis `B_{n,k}`.
//!
//! `A_{n,k}` has degree `n` and a zero of order `k` at the origin; the members with
//! `k >= 1` are orthogonal under the weight `1/x` with
//! `∫₀¹ A_{n,k} A_{n,l} / x dx = δ_kl / (k + l)`, and `A_{n,0}` (the shifted Legendre
//! polynomial up to sign) is orthogonal to all of them but has no finite weighted norm.
//!
//! Construction is exact. Floating evaluation goes through [`AEvaluator`], which runs
//! the same three-term recurrence on `u_k = A_{n,k} / x^k`; that form needs no division
//! by `x` and stays accurate to a few ulps far beyond the degree at which monomial
//! Horner evaluation collapses.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{int, rat, weighted_inner, RationalPoly};

pub const MAX_DEGREE: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASystem {
    n: usize,
    polys: Vec<RationalPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSystem {
    n: usize,
    polys: Vec<RationalPoly>,
}

/// Builds `A_{n,n}, ..., A_{n,0}` by the downward three-term recurrence
///
/// ```text
/// (2k+1)(n+k)(n-k+1) A_{k-1} = 2k[(2k-1)(2k+1)/x - 2(n²+k²+n)] A_k - (2k-1)(n-k)(n+k+1) A_{k+1}
/// ```
///
/// seeded with `A_{n,n} = x^n` and `A_{n,n-1} = (2n-1)x^{n-1} - 2n x^n`.
pub fn build_a_system(n: usize) -> Result<ASystem> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::arg(format!(
            "degree n must be in 1..={MAX_DEGREE}, got {n}"
        )));
    }
    let ni = n as i64;
    let mut polys = vec![RationalPoly::zero(); n + 1];
    polys[n] = RationalPoly::monomial(n, int(1));
    polys[n - 1] = &RationalPoly::monomial(n - 1, int(2 * ni - 1))
        - &RationalPoly::monomial(n, int(2 * ni));
    for k in (1..n).rev() {
        let ki = k as i64;
        let ak = &polys[k];
        let over_x = ak.div_x().map_err(|e| {
            Error::Internal(format!("recurrence step k={k}: A_{{n,k}} / x: {e}"))
        })?;
        let first = &over_x.scale(&int((2 * ki - 1) * (2 * ki + 1)))
            - &ak.scale(&int(2 * (ni * ni + ki * ki + ni)));
        let first = first.scale(&int(2 * ki));
        let second = polys[k + 1].scale(&int((2 * ki - 1) * (ni - ki) * (ni + ki + 1)));
        let denom = (2 * ki + 1) * (ni + ki) * (ni - ki + 1);
        polys[k - 1] = (&first - &second).scale(&rat(1, denom));
    }
    let sys = ASystem { n, polys };
    for (k, p) in sys.polys.iter().enumerate() {
        if p.degree() != n {
            return Err(Error::Internal(format!(
                "A_{{{n},{k}}} has degree {} instead of {n}",
                p.degree()
            )));
        }
    }
    Ok(sys)
}

impl ASystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[RationalPoly] {
        &self.polys
    }

    pub fn poly(&self, k: usize) -> Result<&RationalPoly> {
        self.polys
            .get(k)
            .ok_or_else(|| Error::arg(format!("index k = {k} outside 0..={}", self.n)))
    }

    pub fn evaluator(&self) -> AEvaluator {
        AEvaluator::new(self.n)
    }
}

/// Floating value of `A_{n,k}(x)`. Defined on the whole real line.
pub fn a_eval(sys: &ASystem, k: usize, x: f64) -> Result<f64> {
    if k > sys.n {
        return Err(Error::arg(format!("index k = {k} outside 0..={}", sys.n)));
    }
    Ok(sys.evaluator().at(x).a(k))
}

/// `A'_{n,k}` from the identity `A'_{n,k} = k A_{n,k}/x + 2 Σ_{l>k} (-1)^{l-k} l A_{n,l}/x`.
pub fn a_derivative(sys: &ASystem, k: usize) -> Result<RationalPoly> {
    if k == 0 || k > sys.n {
        return Err(Error::arg(format!(
            "derivative identity holds for 1 <= k <= n, got k = {k}"
        )));
    }
    let mut acc = sys.polys[k].scale(&int(k as i64));
    for l in k + 1..=sys.n {
        let sign = if (l - k).is_multiple_of(2) { 2 } else { -2 };
        acc = &acc + &sys.polys[l].scale(&int(sign * l as i64));
    }
    acc.div_x()
        .map_err(|e| Error::Internal(format!("derivative identity for k={k}: {e}")))
}

/// `B_{n,k} = A_{n,k} + 2 Σ_{l>k} A_{n,l}` for `k >= 1`, with `B_{n,0} = 1`.
pub fn build_b_system(sys: &ASystem) -> BSystem {
    let n = sys.n;
    let mut polys = vec![RationalPoly::zero(); n + 1];
    let mut tail = RationalPoly::zero();
    for k in (1..=n).rev() {
        polys[k] = &sys.polys[k] + &tail.scale(&int(2));
        tail = &tail + &sys.polys[k];
    }
    polys[0] = RationalPoly::one();
    BSystem { n, polys }
}

impl BSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[RationalPoly] {
        &self.polys
    }

    pub fn poly(&self, k: usize) -> Result<&RationalPoly> {
        self.polys
            .get(k)
            .ok_or_else(|| Error::arg(format!("index k = {k} outside 0..={}", self.n)))
    }
}

/// Entry `[k-1][l-1]` is `∫₀¹ A_{n,k} A_{n,l} / x dx` for `k, l = 1..n`, exactly.
pub fn gram_matrix(sys: &ASystem) -> Vec<Vec<BigRational>> {
    let n = sys.n;
    let mut g = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        for l in k..=n {
            let v = weighted_inner(&sys.polys[k], &sys.polys[l])
                .expect("A_{n,k} vanishes at 0 for k >= 1");
            g[k - 1][l - 1] = v.clone();
            g[l - 1][k - 1] = v;
        }
    }
    g
}

/// `∫₀¹ A_{n,0} A_{n,l} / x dx` for `l = 1..n`; all zero for the marginal member.
pub fn marginal_inner_products(sys: &ASystem) -> Vec<BigRational> {
    (1..=sys.n)
        .map(|l| {
            weighted_inner(&sys.polys[0], &sys.polys[l]).expect("A_{n,l} vanishes at 0")
        })
        .collect()
}

/// Entry `[k][l]` is `∫₀¹ A_{n,k}(x) B'_{n,l}(x) dx` for `k, l = 0..n`.
pub fn shifted_orthogonality_check(a: &ASystem, b: &BSystem) -> Result<Vec<Vec<BigRational>>> {
    if a.n != b.n {
        return Err(Error::arg(format!(
            "system sizes differ: A has n = {}, B has n = {}",
            a.n, b.n
        )));
    }
    let dbs: Vec<RationalPoly> = b.polys.iter().map(RationalPoly::derivative).collect();
    Ok(a.polys
        .iter()
        .map(|ak| dbs.iter().map(|db| (ak * db).integral_unit()).collect())
        .collect())
}

/// Entry `[k-1][l-1]` is `∫₀¹ x B'_{n,k} B'_{n,l} dx` for `k, l = 1..n`.
pub fn b_prime_gram(b: &BSystem) -> Vec<Vec<BigRational>> {
    let dbs: Vec<RationalPoly> = b.polys[1..]
        .iter()
        .map(|p| p.derivative().mul_x())
        .collect();
    let derivs: Vec<RationalPoly> = b.polys[1..].iter().map(RationalPoly::derivative).collect();
    dbs.iter()
        .map(|xdk| derivs.iter().map(|dl| (xdk * dl).integral_unit()).collect())
        .collect()
}

/// Floating-point evaluation of a whole `A_n` family at one abscissa.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AEvaluator {
    n: usize,
}

impl AEvaluator {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "A-system needs n >= 1");
        AEvaluator { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, x: f64) -> AValues {
        let n = self.n;
        let nf = n as f64;
        let mut u = vec![0.0; n + 1];
        u[n] = 1.0;
        u[n - 1] = (2.0 * nf - 1.0) - 2.0 * nf * x;
        let x2 = x * x;
        for k in (1..n).rev() {
            let kf = k as f64;
            let lead = 2.0 * kf * ((2.0 * kf - 1.0) * (2.0 * kf + 1.0) - 2.0 * (nf * nf + kf * kf + nf) * x);
            let tail = (2.0 * kf - 1.0) * (nf - kf) * (nf + kf + 1.0) * x2;
            let denom = (2.0 * kf + 1.0) * (nf + kf) * (nf - kf + 1.0);
            u[k - 1] = (lead * u[k] - tail * u[k + 1]) / denom;
        }
        let mut pow = vec![1.0; n + 1];
        for k in 1..=n {
            pow[k] = pow[k - 1] * x;
        }
        AValues { n, u, pow }
    }
}

/// All family values at one abscissa; cheap accessors on top of one recurrence sweep.
#[derive(Clone, Debug)]
pub struct AValues {
    n: usize,
    u: Vec<f64>,
    pow: Vec<f64>,
}

impl AValues {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `A_{n,k}(x)`, `0 <= k <= n`.
    pub fn a(&self, k: usize) -> f64 {
        self.pow[k] * self.u[k]
    }

    /// `A_{n,k}(x) / x`, `1 <= k <= n`; finite at `x = 0`.
    pub fn a_over_x(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        self.pow[k - 1] * self.u[k]
    }

    /// `A'_{n,k}(x)`, `1 <= k <= n`.
    pub fn a_prime(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        let mut acc = k as f64 * self.a_over_x(k);
        for l in k + 1..=self.n {
            let t = 2.0 * l as f64 * self.a_over_x(l);
            acc += if (l - k).is_multiple_of(2) { t } else { -t };
        }
        acc
    }

    /// `B_{n,k}(x)`; `B_{n,0} = 1`.
    pub fn b(&self, k: usize) -> f64 {
        if k == 0 {
            return 1.0;
        }
        let tail: f64 = (k + 1..=self.n).map(|l| self.a(l)).sum();
        self.a(k) + 2.0 * tail
    }

    /// `B'_{n,k}(x) = k A_{n,k}(x) / x`.
    pub fn b_prime(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        k as f64 * self.a_over_x(k)
    }
}
