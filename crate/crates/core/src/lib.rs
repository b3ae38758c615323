//! Exact computation of affine Kac-Moody fusion coefficients.
//!
//! The primary route evaluates the dimension of the Walton space
//! `{v in V^lambda_beta : e_j^{<mu,alpha_j>+1} v = 0, e_theta^{k-<beta+mu,theta>+1} v = 0}`
//! inside an explicitly constructed irreducible module. Two independent
//! oracles are provided alongside it: Kac-Walton folding of Racah-Speiser
//! tensor multiplicities, and a direct Frenkel-Zhu computation inside
//! `V^lambda ⊗ V^mu`.

pub mod checks;
pub mod context;
pub mod error;
pub mod fusion;
pub mod linalg;
pub mod multiplicity;
pub mod repspace;
pub mod rootdata;
pub mod tensor;
pub mod weight;

pub use context::{Context, Limits};
pub use error::{Error, Result};
pub use fusion::{Backend, FusionTable, Level};
pub use linalg::{Rational, RationalMatrix};
pub use multiplicity::WeightDiagram;
pub use repspace::{Op, RepModule};
pub use rootdata::{CartanType, RootSystem, Series, WeylElement};
pub use tensor::{TensorDecomposition, WeightString};
pub use weight::Weight;
