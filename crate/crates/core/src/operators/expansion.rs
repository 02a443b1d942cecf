use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::func::FuncSpec;
use super::matrices::t_matrix;
use super::parity::ParityChoice;
use crate::apoly::{build_a_system, AEvaluator, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::poly::{from_f64, int, to_f64, RationalPoly};
use crate::structured::{build_structured, StructuredSystem};

/// Which family the coefficients multiply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// `constant + Σ a_k A_{n,k}(x)`
    #[serde(rename = "A_with_constant")]
    AWithConstant,
    /// `constant + 2 Σ b_k B_{n,k}(x)`
    #[serde(rename = "B_with_constant")]
    BWithConstant,
    /// `constant + Σ s_k S_{n,k}(x)` with normalized structured members
    #[serde(rename = "structured")]
    Structured,
}

/// The operator that produced an expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Spectral,
    Weak,
    Projection,
    DiscreteW,
    DiscreteWhat,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Spectral => "spectral",
            Provenance::Weak => "weak",
            Provenance::Projection => "projection",
            Provenance::DiscreteW => "discrete_w",
            Provenance::DiscreteWhat => "discrete_what",
        })
    }
}

/// A polynomial approximation: a constant term plus `n` coefficients on a basis
/// whose members (`k >= 1`) all vanish at 0, so `value(0) = constant`.
#[derive(Clone)]
pub struct Expansion {
    n: usize,
    constant: f64,
    coeffs: Vec<f64>,
    basis: Basis,
    provenance: Provenance,
    parity: Option<ParityChoice>,
    structured: Option<Arc<StructuredSystem>>,
    eval: AEvaluator,
}

impl Expansion {
    pub fn new(
        n: usize,
        constant: f64,
        coeffs: Vec<f64>,
        basis: Basis,
        provenance: Provenance,
    ) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::arg(format!("degree n must be in 1..={MAX_DEGREE}, got {n}")));
        }
        if coeffs.len() != n {
            return Err(Error::arg(format!(
                "expected {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        let structured = match basis {
            Basis::Structured => Some(Arc::new(build_structured(n)?)),
            _ => None,
        };
        Ok(Expansion {
            n,
            constant,
            coeffs,
            basis,
            provenance,
            parity: None,
            structured,
            eval: AEvaluator::new(n),
        })
    }

    pub(crate) fn new_structured(
        sys: StructuredSystem,
        constant: f64,
        coeffs: Vec<f64>,
        provenance: Provenance,
    ) -> Result<Self> {
        let n = sys.n();
        if coeffs.len() != n {
            return Err(Error::arg(format!(
                "expected {n} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Expansion {
            n,
            constant,
            coeffs,
            basis: Basis::Structured,
            provenance,
            parity: None,
            structured: Some(Arc::new(sys)),
            eval: AEvaluator::new(n),
        })
    }

    /// Records the degree decision taken by parity selection.
    pub fn with_parity(mut self, parity: Option<ParityChoice>) -> Self {
        self.parity = parity;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// `coeffs()[k - 1]` multiplies member `k`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn parity(&self) -> Option<&ParityChoice> {
        self.parity.as_ref()
    }

    pub fn value(&self, x: f64) -> f64 {
        match self.basis {
            Basis::AWithConstant => {
                let v = self.eval.at(x);
                self.constant + (1..=self.n).map(|k| self.coeffs[k - 1] * v.a(k)).sum::<f64>()
            }
            Basis::BWithConstant => {
                let v = self.eval.at(x);
                self.constant
                    + 2.0 * (1..=self.n).map(|k| self.coeffs[k - 1] * v.b(k)).sum::<f64>()
            }
            Basis::Structured => {
                let s = self.structured.as_ref().expect("structured system present");
                self.constant + (1..=self.n).map(|k| self.coeffs[k - 1] * s.eval(k, x)).sum::<f64>()
            }
        }
    }

    /// Derivative of the expansion, term by term. In the B basis this uses
    /// `B'_{n,k} = k A_{n,k} / x`, i.e. the joint approximation of `f'`.
    pub fn derivative(&self, x: f64) -> f64 {
        match self.basis {
            Basis::AWithConstant => {
                let v = self.eval.at(x);
                (1..=self.n).map(|k| self.coeffs[k - 1] * v.a_prime(k)).sum()
            }
            Basis::BWithConstant => {
                let v = self.eval.at(x);
                2.0 * (1..=self.n).map(|k| self.coeffs[k - 1] * v.b_prime(k)).sum::<f64>()
            }
            Basis::Structured => {
                let s = self.structured.as_ref().expect("structured system present");
                (1..=self.n).map(|k| self.coeffs[k - 1] * s.eval_derivative(k, x)).sum()
            }
        }
    }

    pub fn values(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.value(x)).collect()
    }

    /// The same polynomial in the A basis. From B this uses
    /// `a_m = 2 b_m + 4 Σ_{k<m} b_k`.
    pub fn to_a_basis(&self) -> Result<Expansion> {
        match self.basis {
            Basis::AWithConstant => Ok(self.clone()),
            Basis::BWithConstant => {
                let mut prefix = 0.0;
                let a = self
                    .coeffs
                    .iter()
                    .map(|&b| {
                        let am = 2.0 * b + 4.0 * prefix;
                        prefix += b;
                        am
                    })
                    .collect();
                self.rebased(a)
            }
            Basis::Structured => Err(Error::arg(
                "structured expansions have no A-basis form here",
            )),
        }
    }

    /// As [`Expansion::to_a_basis`], but by forward substitution in `T a = b`.
    pub fn to_a_basis_via_t(&self) -> Result<Expansion> {
        match self.basis {
            Basis::BWithConstant => self.rebased(t_matrix(self.n).solve(&self.coeffs)),
            _ => self.to_a_basis(),
        }
    }

    fn rebased(&self, a: Vec<f64>) -> Result<Expansion> {
        let mut e = Expansion::new(self.n, self.constant, a, Basis::AWithConstant, self.provenance)?;
        e.parity = self.parity.clone();
        Ok(e)
    }

    /// The exact polynomial `constant + Σ ...` with the stored doubles taken as exact
    /// binary rationals.
    pub fn exact_polynomial(&self) -> Result<RationalPoly> {
        let mut acc = RationalPoly::constant(from_f64(self.constant));
        match self.basis {
            Basis::AWithConstant | Basis::BWithConstant => {
                let sys = build_a_system(self.n)?;
                let a = self.exact_a_coeffs();
                for (k, ak) in a.iter().enumerate() {
                    acc = &acc + &sys.polys()[k + 1].scale(ak);
                }
            }
            Basis::Structured => {
                let s = self.structured.as_ref().expect("structured system present");
                for k in 1..=self.n {
                    let c = from_f64(self.coeffs[k - 1] * s.scale(k));
                    acc = &acc + &s.raw()[k].scale(&c);
                }
            }
        }
        Ok(acc)
    }

    /// Monomial coefficients `[c_0, ..., c_n]`, each correctly rounded from
    /// [`Expansion::exact_polynomial`].
    pub fn monomial_coeffs(&self) -> Result<Vec<f64>> {
        let p = self.exact_polynomial()?;
        Ok((0..=self.n).map(|i| to_f64(&p.coeff(i))).collect())
    }

    fn exact_a_coeffs(&self) -> Vec<BigRational> {
        let exact: Vec<BigRational> = self.coeffs.iter().map(|&c| from_f64(c)).collect();
        match self.basis {
            Basis::BWithConstant => {
                let mut prefix = BigRational::zero();
                exact
                    .iter()
                    .map(|b| {
                        let am = b * int(2) + &prefix * int(4);
                        prefix += b;
                        am
                    })
                    .collect()
            }
            _ => exact,
        }
    }

    /// The expansion as a function, with its exact derivative attached.
    pub fn to_func_spec(&self) -> FuncSpec {
        let (e1, e2) = (self.clone(), self.clone());
        FuncSpec::new(move |x| e1.value(x))
            .with_derivative(move |x| e2.derivative(x))
            .with_endpoint_values(self.constant, self.value(1.0))
            .with_label(format!("{} expansion, n = {}", self.provenance, self.n))
    }
}

/// Evaluator of the derivative of `e`.
pub fn derivative_of(e: &Expansion) -> impl Fn(f64) -> f64 + Send + Sync + '_ {
    move |x| e.derivative(x)
}

impl fmt::Debug for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Expansion")
            .field("n", &self.n)
            .field("constant", &self.constant)
            .field("coeffs", &self.coeffs)
            .field("basis", &self.basis)
            .field("provenance", &self.provenance)
            .field("parity", &self.parity)
            .finish()
    }
}

impl PartialEq for Expansion {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.constant.to_bits() == other.constant.to_bits()
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.to_bits() == b.to_bits())
            && self.basis == other.basis
            && self.provenance == other.provenance
            && self.parity == other.parity
    }
}
