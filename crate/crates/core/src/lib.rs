//! Exact Coxeter-group combinatorics: root systems over real cyclotomic fields,
//! weak and Bruhat orders, Bruhat preclosures and twisted Bruhat orders.

pub mod ball;
pub mod closure;
pub mod error;
pub mod field;
pub mod matrix;
pub mod orders;
pub mod reflection;
pub mod roots;
pub mod system;
pub mod twisted;
pub mod type_a;

pub use ball::Ball;
pub use closure::PreclosureResult;
pub use error::{CoxeterError, Result};
pub use field::{CyclotomicField, FieldElement};
pub use matrix::{CoxeterMatrix, MatrixFile};
pub use reflection::{Reflection, ReflectionSet};
pub use roots::{RootVector, SignedRoot};
pub use system::{CoxeterSystem, GroupElement};
pub use twisted::{Acyclicity, TwistDescriptor, TwistKind, Verdict};
pub use type_a::{Permutation, Transposition};
