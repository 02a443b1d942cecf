//! Shifted Gauss–Legendre rules on `[0, 1]` and adaptive composite integration.

use crate::apoly::ASystem;
use crate::error::{Error, Result};
use crate::poly::{RationalPoly, RoundedEvaluator};
use crate::roots::newton_bisect;

pub const MAX_ORDER: usize = 128;

/// Environment variable overriding [`QuadOptions::tol`].
pub const TOL_ENV: &str = "ALTAPPROX_QUAD_TOL";

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ascending abscissas in `(0, 1)`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_j g(x_j)`
    pub fn apply<F: FnMut(f64) -> f64>(&self, mut g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// Shifted Legendre polynomial `P_n(2x - 1)` and its `x`-derivative.
fn shifted_legendre(n: usize, x: f64) -> (f64, f64) {
    let t = 2.0 * x - 1.0;
    let (mut p_prev, mut p) = (1.0, t);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * t * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    // (1 - t²) = 4x(1 - x); P'_n(t) = n (P_{n-1} - t P_n) / (1 - t²)
    let one_minus_t2 = 4.0 * x * (1.0 - x);
    let dp_dt = n as f64 * (p_prev - t * p) / one_minus_t2;
    (p, 2.0 * dp_dt)
}

/// Gauss–Legendre nodes and weights mapped to `[0, 1]`.
///
/// Roots of the shifted Legendre polynomial by Newton's method seeded with
/// Chebyshev-angle guesses, each kept inside the classical angular bracket
/// `(j - 1/2)π/(n + 1/2) < θ_j < jπ/(n + 1/2)` with bisection as the fallback.
/// Only the lower half is computed; the upper half is its mirror image.
pub fn gauss_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::arg(format!(
            "quadrature order must be in 1..={MAX_ORDER}, got {n}"
        )));
    }
    let nf = n as f64;
    let half = n / 2;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let from_angle = |theta: f64| 0.5 * (1.0 - theta.cos());
    for j in 1..=half {
        let jf = j as f64;
        let lo = from_angle((jf - 0.5) * std::f64::consts::PI / (nf + 0.5));
        let hi = from_angle(jf * std::f64::consts::PI / (nf + 0.5));
        let x = newton_bisect(|x| shifted_legendre(n, x), lo, hi)?;
        let (_, dp) = shifted_legendre(n, x);
        // w = 1 / ((1 - t²) P'_n(t)²) with dP/dx = 2 P'_n(t)
        let w = 1.0 / (x * (1.0 - x) * dp * dp);
        nodes[j - 1] = x;
        weights[j - 1] = w;
        nodes[n - j] = 1.0 - x;
        weights[n - j] = w;
    }
    if n % 2 == 1 {
        let (_, dp) = shifted_legendre(n, 0.5);
        nodes[half] = 0.5;
        weights[half] = 1.0 / (0.25 * dp * dp);
    }
    Ok(QuadratureRule { n, nodes, weights })
}

/// Entry `[k-1][l-1]` is `Σ_j (w_j/x_j) A_{n,k}(x_j) A_{n,l}(x_j)` for `k, l = 1..n`.
pub fn discrete_gram(sys: &ASystem, rule: &QuadratureRule) -> Result<Vec<Vec<f64>>> {
    let n = sys.n();
    if rule.n() != n {
        return Err(Error::arg(format!(
            "rule order {} does not match system degree {n}",
            rule.n()
        )));
    }
    let ev = sys.evaluator();
    let mut g = vec![vec![0.0; n]; n];
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let vals = ev.at(x);
        for k in 1..=n {
            let wk = w * vals.a_over_x(k);
            for l in 1..=n {
                g[k - 1][l - 1] += wk * vals.a(l);
            }
        }
    }
    Ok(g)
}

/// Settings for [`integrate_family`].
#[derive(Clone, Debug, PartialEq)]
pub struct QuadOptions {
    /// Convergence target for the panel-doubling test.
    pub tol: f64,
    /// Target used instead of `tol` when the integrand is flagged endpoint-singular.
    pub relaxed_tol: f64,
    /// Gauss–Legendre points per panel.
    pub panel_order: usize,
    /// Number of refinements attempted before giving up.
    pub max_level: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            tol: 1e-11,
            relaxed_tol: 1e-8,
            panel_order: 20,
            max_level: 6,
        }
    }
}

impl QuadOptions {
    /// Defaults, with `tol` taken from `ALTAPPROX_QUAD_TOL` when set.
    pub fn from_env() -> Result<Self> {
        let mut opts = Self::default();
        if let Ok(raw) = std::env::var(TOL_ENV) {
            let tol: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::arg(format!("{TOL_ENV}={raw:?} is not a number")))?;
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::arg(format!("{TOL_ENV} must be positive, got {raw}")));
            }
            opts.tol = tol;
        }
        Ok(opts)
    }

    pub fn target(&self, endpoint_singular: bool) -> f64 {
        if endpoint_singular {
            self.relaxed_tol.max(self.tol)
        } else {
            self.tol
        }
    }
}

/// How the polynomial enters [`integrate_weighted`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    /// `∫₀¹ f(t) p(t) dt`
    AgainstP,
    /// `∫₀¹ f(t) p(t)/t dt`; `p` must vanish at 0.
    AgainstPOverX,
}

/// `∫₀¹ f(t) p(t) dt` or `∫₀¹ f(t) p(t)/t dt` by [`integrate_family`].
pub fn integrate_weighted<F: Fn(f64) -> f64>(
    f: F,
    p: &RationalPoly,
    mode: WeightMode,
    endpoint_singular: bool,
    opts: &QuadOptions,
) -> Result<f64> {
    let q = match mode {
        WeightMode::AgainstP => p.clone(),
        WeightMode::AgainstPOverX => p.div_x().map_err(|e| Error::arg(e.to_string()))?,
    };
    let ev = RoundedEvaluator::new(&q);
    let out = integrate_family(1, |t, out| out[0] = f(t) * ev.eval(t), endpoint_singular, opts)?;
    Ok(out[0])
}

/// Integrates `m` integrands over `[0, 1]` at once.
///
/// `integrand(t, out)` fills `out[..m]`. The composite rule uses panels graded
/// geometrically toward both endpoints (ratio 1/2) with `panel_order` Gauss points each;
/// every refinement doubles the grading depth and halves the interior panels. Interior
/// panels are bisected locally until their halves agree, which handles kinks and jumps
/// inside `(0, 1)`. The result is accepted once a refinement changes every component by
/// less than the target times `max(1, |value|)`. Gauss points never touch the
/// endpoints, so integrable endpoint singularities are admissible.
pub fn integrate_family<F>(
    m: usize,
    mut integrand: F,
    endpoint_singular: bool,
    opts: &QuadOptions,
) -> Result<Vec<f64>>
where
    F: FnMut(f64, &mut [f64]),
{
    let base = gauss_rule(opts.panel_order)?;
    let tol = opts.target(endpoint_singular);
    let mut buf = vec![0.0; m];
    let mut previous: Option<Vec<f64>> = None;
    let mut worst = (0.0, 0.0, f64::INFINITY);
    for level in 0..=opts.max_level {
        let panels = graded_panels(level);
        let last = panels.len() - 1;
        let mut acc = vec![0.0; m];
        let mut p = Panels {
            integrand: &mut integrand,
            base: &base,
            buf: &mut buf,
            tol: tol / 8.0,
            budget: BISECTION_BUDGET,
        };
        for (i, &(a, b)) in panels.iter().enumerate() {
            let (whole, _) = p.integral(a, b);
            if i == 0 || i == last {
                // the terminal panels hold the endpoint behaviour; grading handles them
                add(&mut acc, &whole);
            } else {
                p.bisect(a, b, whole, MAX_BISECTIONS, &mut acc);
            }
        }
        if let Some(i) = acc.iter().position(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!(
                "integrand component {i} produced a non-finite integral"
            )));
        }
        if let Some(prev) = previous.as_ref() {
            worst = (0.0, 0.0, 0.0);
            let mut ok = true;
            for (cur, old) in acc.iter().zip(prev) {
                let change = (cur - old).abs();
                if change > tol * cur.abs().max(1.0) {
                    ok = false;
                }
                if change >= worst.2 {
                    worst = (*cur, *old, change);
                }
            }
            if ok {
                return Ok(acc);
            }
        }
        previous = Some(acc);
    }
    Err(Error::QuadratureNotConverged {
        levels: opts.max_level,
        last: worst.0,
        previous: worst.1,
        change: worst.2,
        tol,
    })
}

const MIN_SPLIT_WIDTH: f64 = 1.0 / (1u64 << 40) as f64;
const MAX_BISECTIONS: usize = 30;
// Caps the work one refinement level may spend on local bisection.
const BISECTION_BUDGET: usize = 1 << 14;
// Below this width, nodes near 1 are placed too coarsely for halves to agree.
const MIN_BISECT_WIDTH: f64 = 1.0 / (1u64 << 30) as f64;

fn add(acc: &mut [f64], v: &[f64]) {
    for (s, x) in acc.iter_mut().zip(v) {
        *s += x;
    }
}

/// Integral over `[a, b]` of each component, and of its absolute value.
fn panel_integral<F>(
    integrand: &mut F,
    base: &QuadratureRule,
    a: f64,
    b: f64,
    buf: &mut [f64],
) -> (Vec<f64>, Vec<f64>)
where
    F: FnMut(f64, &mut [f64]),
{
    let h = b - a;
    let mut out = vec![0.0; buf.len()];
    let mut mag = vec![0.0; buf.len()];
    for (&x, &w) in base.nodes().iter().zip(base.weights()) {
        let t = a + h * x;
        if t >= 1.0 {
            // panel narrower than the spacing of doubles below 1
            continue;
        }
        integrand(t, buf);
        for ((s, m), v) in out.iter_mut().zip(mag.iter_mut()).zip(buf.iter()) {
            *s += h * w * v;
            *m += h * w * v.abs();
        }
    }
    (out, mag)
}

struct Panels<'a, F> {
    integrand: &'a mut F,
    base: &'a QuadratureRule,
    buf: &'a mut [f64],
    tol: f64,
    /// Bisections left for this refinement level.
    budget: usize,
}

impl<F: FnMut(f64, &mut [f64])> Panels<'_, F> {
    fn integral(&mut self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        panel_integral(self.integrand, self.base, a, b, self.buf)
    }

    /// Adds the integral over `[a, b]` to `acc`, halving until both halves together
    /// agree with the whole to `tol · max(b - a, |value|)` or to rounding level.
    fn bisect(&mut self, a: f64, b: f64, whole: Vec<f64>, depth: usize, acc: &mut [f64]) {
        if depth == 0 || self.budget == 0 || b - a < MIN_BISECT_WIDTH {
            add(acc, &whole);
            return;
        }
        self.budget -= 1;
        let mid = 0.5 * (a + b);
        let (left, left_mag) = self.integral(a, mid);
        let (right, right_mag) = self.integral(mid, b);
        let settled = (0..whole.len()).all(|i| {
            let sum = left[i] + right[i];
            let noise = 64.0 * f64::EPSILON * (left_mag[i] + right_mag[i]);
            (sum - whole[i]).abs() <= (self.tol * (b - a).max(sum.abs())).max(noise)
        });
        if settled {
            add(acc, &left);
            add(acc, &right);
        } else {
            self.bisect(a, mid, left, depth - 1, acc);
            self.bisect(mid, b, right, depth - 1, acc);
        }
    }
}

/// Panels for refinement `level`: grading depth `8·2^level` toward 0 and toward 1
/// (toward 1 capped where `1 - 2^-j` stops being representable), with every
/// non-terminal panel split into `2^level` equal parts.
fn graded_panels(level: usize) -> Vec<(f64, f64)> {
    let depth = 8usize << level;
    let split = 1usize << level;
    let mut out = Vec::new();
    // Near 1 the doubles are too coarse to subdivide tiny panels, and splitting them
    // would only jitter the node positions between levels.
    let push_split = |a: f64, b: f64, out: &mut Vec<(f64, f64)>| {
        let parts = if b - a < MIN_SPLIT_WIDTH { 1 } else { split };
        let h = (b - a) / parts as f64;
        for i in 0..parts {
            let lo = a + h * i as f64;
            let hi = if i + 1 == parts { b } else { lo + h };
            out.push((lo, hi));
        }
    };
    // toward 0: [0, 2^-(d+1)], [2^-(j+1), 2^-j] for j = d..1
    let tiny = 0.5f64.powi(depth as i32 + 1);
    out.push((0.0, tiny));
    for j in (1..=depth).rev() {
        push_split(0.5f64.powi(j as i32 + 1), 0.5f64.powi(j as i32), &mut out);
    }
    // toward 1, mirrored
    let right_depth = depth.min(50);
    for j in 1..=right_depth {
        push_split(1.0 - 0.5f64.powi(j as i32), 1.0 - 0.5f64.powi(j as i32 + 1), &mut out);
    }
    out.push((1.0 - 0.5f64.powi(right_depth as i32 + 1), 1.0));
    out
}
