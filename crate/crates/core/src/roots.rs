//! Scalar root finding: safeguarded Newton and bracketing on sampled grids.

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Newton iteration kept inside `[lo, hi]`, falling back to bisection whenever a step
/// leaves the bracket or fails to shrink it. `f(lo)` and `f(hi)` must differ in sign.
pub fn newton_bisect<F>(mut f_df: F, lo: f64, hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (mut a, mut b) = (lo, hi);
    let (fa, _) = f_df(a);
    let (fb, _) = f_df(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Numeric(format!(
            "no sign change on [{lo}, {hi}] ({fa:e}, {fb:e})"
        )));
    }
    // orient so that f(a) < 0 < f(b)
    if fa > 0.0 {
        std::mem::swap(&mut a, &mut b);
    }
    let mut x = 0.5 * (a + b);
    let mut dx_old = (b - a).abs();
    let mut dx = dx_old;
    let (mut fx, mut dfx) = f_df(x);
    for _ in 0..MAX_ITER {
        let outside = ((x - b) * dfx - fx) * ((x - a) * dfx - fx) > 0.0;
        let slow = (2.0 * fx).abs() > (dx_old * dfx).abs();
        dx_old = dx;
        if outside || slow || dfx == 0.0 {
            dx = 0.5 * (b - a);
            x = a + dx;
        } else {
            dx = fx / dfx;
            x -= dx;
        }
        if dx.abs() <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            return Ok(x);
        }
        let next = f_df(x);
        fx = next.0;
        dfx = next.1;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            a = x;
        } else {
            b = x;
        }
        if (b - a).abs() <= 2.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
    }
    Err(Error::Numeric(format!(
        "safeguarded Newton did not converge on [{lo}, {hi}]"
    )))
}

/// Plain bisection to full precision. `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Numeric(format!(
            "no sign change on [{lo}, {hi}] ({fa:e}, {fb:e})"
        )));
    }
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// All roots of `f` bracketed by sign changes (or exact zeros) between consecutive
/// points of `grid`, refined by bisection. Roots closer together than the grid
/// spacing can be missed.
pub fn bracketed_roots<F: FnMut(f64) -> f64>(mut f: F, grid: &[f64]) -> Result<Vec<f64>> {
    let vals: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..grid.len() {
        if vals[i] == 0.0 {
            roots.push(grid[i]);
            continue;
        }
        if i + 1 < grid.len() && vals[i + 1] != 0.0 && vals[i].signum() != vals[i + 1].signum() {
            roots.push(bisect(&mut f, grid[i], grid[i + 1])?);
        }
    }
    Ok(roots)
}

/// Number of strict sign changes along a sequence, ignoring exact zeros.
pub fn sign_changes(vals: &[f64]) -> usize {
    let signs: Vec<f64> = vals.iter().filter(|v| **v != 0.0).map(|v| v.signum()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `count` equally spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| {
                if i == count - 1 {
                    stop
                } else {
                    start + (stop - start) * i as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}
