//! Geometry of the associated indefinite metric of a skew-circulant structure
//! on a 4-dimensional tangent space.
//!
//! - [`structure`]: the structure `S` (`S^4 = -I`), compatible metrics, the
//!   associated metric `g~`, angles, causal character and S-bases.
//! - [`frames`]: orthonormal frames of the subspaces spanned by S-basis vectors
//!   and the `g~` Gram matrices on them.
//! - [`quadrics`]: the `g~`-spheres as Euclidean quadrics, their diagonalizing
//!   rotations and an inertia-based classifier.
//! - [`verify`]: fixed-seed invariant suites, run by `skewcirc verify`.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod frames;
pub mod quadrics;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use frames::{Frame, SubspaceTag};
pub use quadrics::{classify, QuadraticForm, QuadricClass, TransformP};
pub use structure::{CausalCharacter, Mat4, Metric, SBasis, Vec4};
