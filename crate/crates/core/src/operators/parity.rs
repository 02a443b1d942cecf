use std::fmt;

use serde::{Deserialize, Serialize};

use super::func::FuncSpec;

/// Symmetry of `f₀` about `x = 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// `f₀(1 - x) = f₀(x)`
    Even,
    /// `f₀(1 - x) = -f₀(x)`
    Odd,
    Asymmetric,
    /// Sampling failed or `f₀` vanishes identically.
    Unknown,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Asymmetric => "asymmetric",
            Parity::Unknown => "unknown",
        })
    }
}

pub const PARITY_POINTS: usize = 33;
pub const PARITY_TOL: f64 = 1e-9;

/// Compares `f₀(x)` with `±f₀(1 - x)` at 33 equally spaced points of `[0, 1]`.
pub fn detect_parity(f: &FuncSpec) -> Parity {
    let m = PARITY_POINTS - 1;
    let mut even = true;
    let mut odd = true;
    let mut all_zero = true;
    for i in 0..=m {
        let x = i as f64 / m as f64;
        let (u, v) = (f.f0(x), f.f0(1.0 - x));
        if !(u.is_finite() && v.is_finite()) {
            return Parity::Unknown;
        }
        let tol = PARITY_TOL * u.abs().max(v.abs()).max(1.0);
        even &= (u - v).abs() <= tol;
        odd &= (u + v).abs() <= tol;
        all_zero &= u.abs() <= tol;
    }
    match (even, odd) {
        _ if all_zero => Parity::Unknown,
        (true, _) => Parity::Even,
        (_, true) => Parity::Odd,
        _ => Parity::Asymmetric,
    }
}

/// Degree breaking the symmetry of `f₀`: odd `n` for even `f₀`, even `n` for odd `f₀`,
/// unchanged otherwise. Moves up by one when the requested degree does not fit.
pub fn parity_select_n(parity: Parity, n_requested: usize) -> usize {
    let wants_odd = match parity {
        Parity::Even => true,
        Parity::Odd => false,
        Parity::Asymmetric | Parity::Unknown => return n_requested,
    };
    if (n_requested % 2 == 1) == wants_odd {
        n_requested
    } else {
        n_requested + 1
    }
}

/// The parity decision recorded with an expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParityChoice {
    pub detected: Parity,
    pub requested_n: usize,
    pub chosen_n: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn selection_rule() {
        assert_eq!(parity_select_n(Parity::Even, 4), 5);
        assert_eq!(parity_select_n(Parity::Even, 5), 5);
        assert_eq!(parity_select_n(Parity::Odd, 4), 4);
        assert_eq!(parity_select_n(Parity::Odd, 3), 4);
        assert_eq!(parity_select_n(Parity::Asymmetric, 7), 7);
        assert_eq!(parity_select_n(Parity::Unknown, 2), 2);
    }

    #[test]
    fn detection() {
        assert_eq!(detect_parity(&FuncSpec::new(|x| (PI * x).sin())), Parity::Even);
        assert_eq!(detect_parity(&FuncSpec::new(|x| x * (1.0 - x) * (1.0 - 2.0 * x))), Parity::Odd);
        assert_eq!(detect_parity(&FuncSpec::new(|x| (1.0 + x).ln())), Parity::Asymmetric);
        assert_eq!(detect_parity(&FuncSpec::new(|_| 3.0)), Parity::Unknown);
        assert_eq!(detect_parity(&FuncSpec::new(|x| 1.0 / x)), Parity::Unknown);
    }
}
