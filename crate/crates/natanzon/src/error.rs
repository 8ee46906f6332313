//! Error taxonomy shared by every module in the crate.

use thiserror::Error;

/// All failure modes surfaced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input lies outside the mathematical domain of the operation.
    #[error("domain: {0}")]
    Domain(String),

    /// Evaluation requested at, or within guard distance of, a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// A parameter zero-pattern does not match the requested special case.
    #[error("degenerate parameters: {0}")]
    DegenerateParameter(String),

    /// More than one distinct energy survived the residual filter.
    #[error("quantization condition at n={n} has {} surviving roots: {roots:?}", roots.len())]
    MultipleRoots { n: u32, roots: Vec<f64> },

    /// A series or iteration stopped short of its accuracy budget.
    #[error("convergence: {0}")]
    Convergence(String),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature: {0}")]
    Quadrature(String),

    /// Generic numerical failure (overflow, loss of significance, ...).
    #[error("numerical: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
