//! Exact q-deformed rational numbers.
//!
//! Right (`♯`) and left (`♭`) q-deformations of extended rationals are
//! computed from continued fractions, from matrix words, from Farey
//! recursions, and from two-variable arc intersection polynomials. The crate
//! also derives Grothendieck classes, Calabi–Yau-N reductions and Jones
//! polynomials of two-bridge knots from the same data.

pub mod arcmodel;
pub mod cyx;
pub mod farey;
pub mod knots;
pub mod laurent;
pub mod qdeform;

pub use farey::{frac, ExtRational};
pub use laurent::{Exp2, FracPair, LPoly1, LPoly2};
pub use qdeform::{Flavor, Method, QRational};
