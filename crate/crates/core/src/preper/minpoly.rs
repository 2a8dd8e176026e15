//! Minimal polynomials and conjugates of radical points.

use super::modular::minpoly_integer_coeffs;
use super::orbit::{galois_orbit, GaloisOrbit};
use crate::error::{Error, Result};
use crate::ntcore::rational::Rational;
use crate::ntcore::{newton_polygon_root_valuations, Place, UniPoly, DEFAULT_DEGREE_CAP};
use crate::semigroup::RadicalPoint;
use num_complex::Complex64;

/// Monic minimal polynomial over Q.
pub fn minimal_polynomial(x: &RadicalPoint) -> Result<UniPoly> {
    minimal_polynomial_capped(x, DEFAULT_DEGREE_CAP)
}

pub fn minimal_polynomial_capped(x: &RadicalPoint, cap: usize) -> Result<UniPoly> {
    let orbit = galois_orbit(x)?;
    orbit_minpoly(&orbit, cap)
}

pub fn orbit_minpoly(orbit: &GaloisOrbit, cap: usize) -> Result<UniPoly> {
    let deg = orbit.degree() as usize;
    if deg > cap {
        return Err(Error::DegreeCapExceeded { degree: deg, cap });
    }
    Ok(UniPoly::from_bigints(&minpoly_integer_coeffs(orbit)?).monic())
}

/// Conjugates at a place: complex values at infinity, root valuations
/// at a prime.
#[derive(Debug, Clone, PartialEq)]
pub enum Conjugates {
    Complex(Vec<Complex64>),
    Valuations(Vec<Rational>),
}

pub fn conjugates(x: &RadicalPoint, v: Place) -> Result<Conjugates> {
    let orbit = galois_orbit(x)?;
    match v {
        Place::Infinite => Ok(Conjugates::Complex(orbit.complex_conjugates())),
        Place::Finite(p) => {
            let f = orbit_minpoly(&orbit, DEFAULT_DEGREE_CAP)?;
            Ok(Conjugates::Valuations(newton_polygon_root_valuations(&f, p)))
        }
    }
}
