//! Exact computation of projective invariants, cone connections and
//! infinitesimal holonomy algebras from truncated Christoffel jets.

pub mod acceptance;
pub mod catalog;
pub mod classify;
pub mod cone;
pub mod error;
pub mod holonomy;
pub mod jet;
pub mod linalg;
pub mod poly;
pub mod projective;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use jet::Jet;
pub use linalg::{Matrix, Span};
pub use poly::jet_from_polynomial;
pub use scalar::{Field, Gaussian, Rational};
pub use tensor::{ConnectionChart, Slot, TensorJet};
