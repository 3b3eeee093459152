//! Free pre-Lie algebras on decorated rooted trees, the blow-up differential
//! `δ`, and exact checks that its kernel is the free Lie algebra.

pub mod blowup;
pub mod bridge;
pub mod error;
pub mod freelie;
pub mod prelie;
pub mod scalars;
pub mod shuffle;
pub mod suite;
pub mod trees;

pub use error::{Error, Result};
pub use prelie::TreeVector;
pub use scalars::{LinComb, Scalar, SubspaceBasis};
pub use trees::{parse_tree, DecoratedTree, Mode};
