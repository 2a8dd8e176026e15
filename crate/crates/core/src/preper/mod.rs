//! Structure of preperiodic points: collision binomials, Capelli's
//! criterion, degree bounds, Galois orbits, minimal polynomials, and
//! enumeration.

pub mod enumerate;
pub mod minpoly;
pub mod modular;
pub mod orbit;
pub mod structure;

pub use enumerate::{enumerate_preperiodic, enumerate_preperiodic_capped, Enumeration, PreperOrbit, PreperRecord, Witness};
pub use minpoly::{conjugates, minimal_polynomial, minimal_polynomial_capped, Conjugates};
pub use orbit::{galois_orbit, GaloisOrbit};
pub use structure::{
    capelli_reducible, collision_binomial, degree_bound_mq, degree_lower_bound, structure_decompose, Capelli,
    CollisionBinomial, DegreeBound, StructuredPreper,
};
