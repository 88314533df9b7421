//! Small quantum cohomology of the moduli space of stable 5-pointed rational
//! curves, realized as the plane blown up at four general points, together
//! with the boundary-divisor combinatorics of `M_{0,n}` and a triple
//! intersection check on the threefold model of `M_{0,6}`.

pub mod error;
pub mod gw;
pub mod lattice;
pub mod moduli;
pub mod presentation;
pub mod qpoly;
pub mod quantum;
pub mod report;
pub mod threefold;

pub use error::{Error, Result};
pub use gw::{Insertion, Mode, Rational};
pub use lattice::SurfaceClass;
pub use moduli::BoundaryIndex;
pub use qpoly::{Basis, QClass, QPolynomial};
