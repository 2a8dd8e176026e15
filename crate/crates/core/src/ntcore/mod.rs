//! Number-theoretic core: rationals, places, heights, polynomials over Q
//! and their factorization, Newton polygons.

pub mod arith;
pub mod cyclotomic;
pub mod factor;
pub mod modp;
pub mod newton;
pub mod place;
pub mod poly;
pub mod rational;
pub mod roots;

pub use cyclotomic::{cyclotomic_poly, euler_phi, max_power_exponent};
pub use factor::{factor_poly, Factorization, DEFAULT_DEGREE_CAP};
pub use newton::newton_polygon_root_valuations;
pub use place::{log_abs, product_formula_check, ExactLog, LogAbs, Place};
pub use poly::UniPoly;
pub use rational::{factor_rational, height_rational, parse_rational, Modulus, PrimeFactorization, Rational};
pub use roots::height_from_minpoly;
