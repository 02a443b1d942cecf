use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function to approximate on `[0, 1]`: its evaluator, an optional derivative, and
/// its endpoint values. Operators work with `f₀(x) = f(x) - f(0)`.
#[derive(Clone)]
pub struct FuncSpec {
    eval: RealFn,
    deriv: Option<RealFn>,
    f_at_0: f64,
    f_at_1: f64,
    endpoint_singular: bool,
    label: Option<String>,
}

impl FuncSpec {
    /// Endpoint values are taken from `f` itself.
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let (f_at_0, f_at_1) = (f(0.0), f(1.0));
        FuncSpec {
            eval: Arc::new(f),
            deriv: None,
            f_at_0,
            f_at_1,
            endpoint_singular: false,
            label: None,
        }
    }

    pub fn with_derivative<D>(mut self, d: D) -> Self
    where
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.deriv = Some(Arc::new(d));
        self
    }

    /// Overrides `f(0)` and `f(1)`, e.g. for functions given only on the open interval.
    pub fn with_endpoint_values(mut self, f_at_0: f64, f_at_1: f64) -> Self {
        self.f_at_0 = f_at_0;
        self.f_at_1 = f_at_1;
        self
    }

    /// Marks the integrands of this function as singular at an endpoint, which selects
    /// the relaxed quadrature tolerance.
    pub fn endpoint_singular(mut self, flag: bool) -> Self {
        self.endpoint_singular = flag;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// `f₀(x) = f(x) - f(0)`.
    pub fn f0(&self, x: f64) -> f64 {
        (self.eval)(x) - self.f_at_0
    }

    pub fn deriv(&self, x: f64) -> Option<f64> {
        self.deriv.as_ref().map(|d| d(x))
    }

    pub fn has_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    pub fn f_at_0(&self) -> f64 {
        self.f_at_0
    }

    pub fn f_at_1(&self) -> f64 {
        self.f_at_1
    }

    /// `f₀(1) = f(1) - f(0)`.
    pub fn f0_at_1(&self) -> f64 {
        self.f_at_1 - self.f_at_0
    }

    pub fn is_endpoint_singular(&self) -> bool {
        self.endpoint_singular
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub(crate) fn check_endpoints(&self) -> Result<()> {
        if self.f_at_0.is_finite() && self.f_at_1.is_finite() {
            Ok(())
        } else {
            Err(Error::Numeric(format!(
                "f(0) = {} and f(1) = {} must both be finite",
                self.f_at_0, self.f_at_1
            )))
        }
    }
}

impl fmt::Debug for FuncSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FuncSpec")
            .field("label", &self.label)
            .field("f_at_0", &self.f_at_0)
            .field("f_at_1", &self.f_at_1)
            .field("has_derivative", &self.deriv.is_some())
            .field("endpoint_singular", &self.endpoint_singular)
            .finish()
    }
}
