//! p-adic Newton polygons.

use super::poly::UniPoly;
use super::rational::{ord_p, Rational};
use num_traits::Zero;

/// Segments `(root valuation, multiplicity)` of the lower hull of
/// `{(i, ord_p c_i)}`, ordered by increasing index. Zero roots (a power
/// of X dividing f) are skipped.
pub fn newton_segments(f: &UniPoly, p: u64) -> Vec<(Rational, usize)> {
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, ord_p(c, p)))
        .collect();
    lower_hull_segments(&pts)
}

/// Lower convex hull over integer points sorted by abscissa.
pub fn lower_hull_segments(pts: &[(i64, i64)]) -> Vec<(Rational, usize)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let cross = (x2 - x1) as i128 * (pt.1 - y1) as i128 - (y2 - y1) as i128 * (pt.0 - x1) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let (x1, y1) = w[0];
            let (x2, y2) = w[1];
            let slope = Rational::new((y2 - y1).into(), (x2 - x1).into());
            (-slope, (x2 - x1) as usize)
        })
        .collect()
}

/// Multiset of p-adic valuations of the nonzero roots of `f`.
pub fn newton_polygon_root_valuations(f: &UniPoly, p: u64) -> Vec<Rational> {
    let mut v = Vec::new();
    for (s, m) in newton_segments(f, p) {
        for _ in 0..m {
            v.push(s.clone());
        }
    }
    v.sort();
    v
}
