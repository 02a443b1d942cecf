//! Orthogonal polynomial systems on `[0, 1]` and operators that approximate a
//! function together with its derivative.
//!
//! The examples directory is the best entry point:
//!
//! - **`a_system`**: exact A- and B-systems and their orthogonality tables
//! - **`gauss_nodes`**: Gauss rules on `[0, 1]` and discrete orthogonality
//! - **`spectral_examples`**: `ln(1+x)`, `1 - sin(πx)` and `√x`
//! - **`weak_composition`**: c-coefficients, the S map and the projection fixed point
//! - **`extrapolation`**: one-sided error inside `[0, 1]` and behaviour beyond it
//! - **`discrete_operators`**: operators from values at the Gauss nodes only
//! - **`structured_system`**: π-sequence, Rodrigues form, Lobatto nodes
//! - **`wavelets`**: compactly supported Λ members and their smoothness
//! - **`expression_fit`**: parse, fit with every operator, save and reload
//!
//! ```bash
//! cargo run --example spectral_examples
//! cargo run --example expression_fit -- "x*exp(-x)"
//! ```

pub mod apoly;
pub mod cli;
pub mod error;
pub mod expr;
pub mod io;
pub mod operators;
pub mod poly;
pub mod quadrature;
pub mod roots;
pub mod structured;

pub use error::{Error, Result};
