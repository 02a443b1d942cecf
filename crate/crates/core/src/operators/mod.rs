//! Approximation operators on `[0, 1]`.
//!
//! Every operator writes `f = f(0) + f₀` and approximates `f₀` by a combination of
//! members that vanish at the origin:
//!
//! * [`omega_spectral`]: `f(0) + 2 Σ b_k B_{n,k}` with `b_k = ∫ f₀' A_{n,k}`; its
//!   derivative approximates `f'` with the same coefficients.
//! * [`omega_weak`]: the same operator rewritten through `c_k = 2k ∫ f₀ A_{n,k}/t`, so
//!   no derivative is needed.
//! * [`omega_hat`]: the weighted least-squares projection `f(0) + Σ c_k A_{n,k}`.
//! * [`w_discrete`] and [`w_hat`]: the same two with integrals replaced by the
//!   `n`-point Gauss rule, so they need `f` only at `0`, the nodes, and `1`.

mod continuous;
mod discrete;
mod expansion;
mod func;
mod matrices;
mod parity;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use continuous::{
    b_coeffs_direct, b_from_c, c_coeffs, omega_hat, omega_spectral, omega_weak, weak_transform,
    BPath,
};
pub use discrete::{
    d_coeffs, pseudo_basis, w_discrete, w_discrete_from_values, w_hat, w_hat_from_values,
    w_via_pseudo, PSEUDO_BASIS_MAX,
};
pub use expansion::{derivative_of, Basis, Expansion, Provenance};
pub use func::{FuncSpec, RealFn};
pub use matrices::{s_matrix, t_matrix, MatrixS, TriangularT};
pub use parity::{detect_parity, parity_select_n, Parity, ParityChoice, PARITY_POINTS, PARITY_TOL};

use crate::error::{Error, Result};
use crate::quadrature::QuadOptions;

/// Operator selector, named as on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    Spectral,
    Weak,
    Projection,
    W,
    What,
}

impl Operator {
    pub const ALL: [Operator; 5] = [
        Operator::Spectral,
        Operator::Weak,
        Operator::Projection,
        Operator::W,
        Operator::What,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Spectral => "spectral",
            Operator::Weak => "weak",
            Operator::Projection => "projection",
            Operator::W => "w",
            Operator::What => "what",
        }
    }

    /// Whether the operator uses only values at `0`, the Gauss nodes, and `1`.
    pub fn is_discrete(self) -> bool {
        matches!(self, Operator::W | Operator::What)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Operator::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| {
                Error::arg(format!(
                    "unknown operator {s:?} (expected spectral, weak, projection, w or what)"
                ))
            })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FitOptions {
    pub quad: QuadOptions,
    /// Spectral operator: take `b` from the c-coefficients instead of `f'`.
    pub b_from_c: bool,
    /// Adjust `n` with [`parity_select_n`] and record the decision.
    pub auto_parity: bool,
}

/// Runs `op` on `f` at degree `n`.
pub fn fit(op: Operator, f: &FuncSpec, n: usize, opts: &FitOptions) -> Result<Expansion> {
    let (n, parity) = if opts.auto_parity {
        let detected = detect_parity(f);
        let chosen = parity_select_n(detected, n);
        (
            chosen,
            Some(ParityChoice {
                detected,
                requested_n: n,
                chosen_n: chosen,
            }),
        )
    } else {
        (n, None)
    };
    let e = match op {
        Operator::Spectral => {
            let path = if opts.b_from_c { BPath::FromC } else { BPath::Direct };
            omega_spectral(f, n, path, &opts.quad)?
        }
        Operator::Weak => omega_weak(f, n, &opts.quad)?,
        Operator::Projection => omega_hat(f, n, &opts.quad)?,
        Operator::W => w_discrete(f, n)?,
        Operator::What => w_hat(f, n)?,
    };
    Ok(e.with_parity(parity))
}
