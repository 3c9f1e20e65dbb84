//! Exact computation of orthogonal determinants of finite group
//! representations: square classes of invariant symmetric bilinear forms,
//! computed through invertible skew-adjoint elements, the isometry
//! characteristic-polynomial shortcut, the reduced-norm path for doubled
//! representations, and the split-extension formula.
//!
//! All arithmetic is exact, over the rationals or a real quadratic field.

pub mod catalog;
pub mod exactla;
pub mod jsonio;
pub mod numfield;
pub mod repkit;

pub use exactla::{Matrix, Polynomial};
pub use numfield::{FieldDescriptor, FieldElement, Rational, SquareClass};
pub use repkit::{AutomorphismData, GroupWord, Representation};
