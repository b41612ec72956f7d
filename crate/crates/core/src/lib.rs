//! Exact workbench for crossed products of function algebras over finite
//! dynamical systems.
//!
//! A finite dynamical system is a finite set of points together with a
//! bijection sigma. The complex-valued functions on the points form a
//! commutative algebra, sigma induces an automorphism of that algebra, and
//! the two together generate a crossed product: finitely supported Laurent
//! series in a twist symbol delta with function coefficients, multiplied by
//! the rule (f dn) (g dm) = f . sigma^n(g) d(n+m).
//!
//! Everything here is computed exactly over the Gaussian rationals. The
//! modules layer as follows:
//!
//! * [`scalar`], [`dynsys`], [`funcalg`]: scalars, systems, coefficient
//!   functions and graded subspaces of them.
//! * [`crossed`]: crossed product elements, convolution, the commutant.
//! * [`idealwin`]: degree-windowed subspaces, two-sided ideal generation
//!   inside a window, membership with certificates.
//! * [`reduce`]: the constructive push of an element into the commutant,
//!   with a replayable certificate.
//! * [`between`]: algebras strictly between the coefficient algebra and its
//!   commutant, and intersection-property probes against them.
//! * [`laurent`]: the one-point case, where the crossed product is the
//!   algebra of Laurent polynomials.
//! * [`gelfand`]: finite-dimensional commutative algebras given by structure
//!   constants, their characters, and transport of a crossed product over
//!   such an algebra onto a function-algebra model.
//! * [`banach`]: the l1 layer: norms, point-circle characters, and the
//!   commutator ideal.

pub mod banach;
pub mod between;
pub mod crossed;
pub mod dynsys;
pub mod error;
pub mod funcalg;
pub mod gelfand;
pub mod idealwin;
pub mod laurent;
mod linalg;
pub mod reduce;
pub mod scalar;

pub use crossed::CrossedElement;
pub use dynsys::{DynSystem, PointSet};
pub use error::Error;
pub use funcalg::Func;
pub use idealwin::{DegreeWindow, SubspaceWindow};
pub use scalar::{Rational, Scalar, UnitScalar};
