//! Degree bounds for Frobenius powers, tight closure, Frobenius closure and
//! Castelnuovo-Mumford regularity of homogeneous ideals in standard-graded
//! complete intersections of characteristic `p`, together with an exact
//! linear-algebra engine that checks those bounds on concrete instances.

pub mod assumptions;
pub mod bounds;
pub mod cli;
pub mod engine;
pub mod field;
pub mod graded_ring;
pub mod grading;
pub mod groebner;
pub mod linalg;
pub mod order;
pub mod poly;
pub mod problem;
pub mod report;

pub use assumptions::{Assumption, AssumptionSet};
pub use field::{FieldElement, FieldError, PrimeField};
pub use graded_ring::{GradedBasis, RingError, RingPresentation};
pub use groebner::{buchberger, GroebnerBasis, GroebnerError};
pub use order::MonomialOrder;
pub use poly::{Monomial, PolyError, Polynomial};
