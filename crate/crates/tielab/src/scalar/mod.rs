//! Exact scalar tower: multivariate Laurent polynomials over ℚ or a
//! cyclotomic field, their fraction field, and quadratic extensions by a
//! formal square root. Everything is exact; nothing floats.

pub mod coeff;
pub mod cyclotomic;
pub mod fmt;
pub mod poly;
pub mod quadext;
pub mod ratfunc;
pub mod varset;

pub use coeff::{big_ratio, Coeff};
pub use cyclotomic::Cyclotomic;
pub use fmt::{RenderFormat, ScalarValue};
pub use poly::{LaurentPoly, QPoly};
pub use quadext::{QExt, QuadExt};
pub use ratfunc::{QRat, RatFunc};
pub use varset::VarSet;
