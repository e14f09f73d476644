//! Obstructions to polynomial integrability of Birkhoff billiards on the
//! sphere and the hyperbolic plane.
//!
//! The crate has two halves that certify the same theory from opposite
//! directions:
//!
//! * an exact symbolic half ([`poly`], [`obstruction`], [`expansion`])
//!   that verifies the dual-curve identities, the Hessian divisibility
//!   criterion and the mu-expansion derivation over the rationals, and
//! * a numeric half ([`projgeom`], [`dynamics`]) that simulates billiards
//!   inside cone-cut convex domains on the sphere / hyperboloid and
//!   checks the tangent-line symmetry and midpoint properties of the
//!   dual (outer) billiard on concrete tables.
//!
//! See the `examples/` directory for one runnable walkthrough per major
//! capability, and the `billiards` binary for the batch interface.

pub mod dynamics;
pub mod expansion;
pub mod obstruction;
pub mod poly;
pub mod projgeom;

pub use poly::{parse_poly, MultiPoly, PolyError, Var, XY, XYP, XYZ};
pub use projgeom::Curvature;
