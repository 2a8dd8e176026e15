//! Shared fixtures for the kernel benchmarks.

use monodyn::ntcore::rational::rat_int;
use monodyn::scan::ScanConfig;
use monodyn::semigroup::Semigroup;
use monodyn::{Place, UniPoly};

/// `<2z^2, 3z^3>`.
pub fn two_generators() -> Semigroup {
    Semigroup::from_triples(&[(2, 1, 2), (3, 1, 3)]).expect("valid generators")
}

/// `<z^-2, 2z^2>`, with a negative degree.
pub fn mixed_signs() -> Semigroup {
    Semigroup::from_triples(&[(1, 1, -2), (2, 1, 2)]).expect("valid generators")
}

pub fn x6_plus_27() -> UniPoly {
    UniPoly::from_ints(&[27, 0, 0, 0, 0, 0, 1])
}

pub fn scan_config(depth: usize) -> ScanConfig {
    let s = vec![Place::Infinite, Place::Finite(2), Place::Finite(3), Place::Finite(5)];
    ScanConfig::new(two_generators(), s, rat_int(2), depth).expect("valid scan config")
}
