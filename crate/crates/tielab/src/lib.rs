//! Exact-arithmetic invariants of classical and tied links.
//!
//! The crate computes the Kauffman bracket and Jones polynomial from braid
//! or planar-diagram input, the Homflypt polynomial through the Ocneanu
//! trace on the Iwahori–Hecke algebra, and the newer framization
//! invariants: Δ_m and Θ_m through Markov traces on Yokonuma–Hecke
//! algebras, and their partition-algebra counterparts Δ̄, Θ̄ and the tied-link
//! invariant F through a relative trace on the algebra of braids and ties.
//!
//! All arithmetic is exact (arbitrary-precision rationals, cyclotomic
//! integers, Laurent polynomials, rational functions, quadratic towers).
//! The `verify` module replays the algebraic laws these constructions rest
//! on — trace rules, skein relations, Markov-move invariance — on randomized
//! inputs.

pub mod error;
pub mod limits;
pub mod scalar;

pub mod perm;
pub mod setpartition;

pub mod braid;

pub mod bracket;
pub mod btalgebra;
pub mod hecke;
pub mod yokonuma;

pub mod verify;

pub use error::{Error, Result};

/// Map `f` over `items` and fold the results with `merge`, in parallel when
/// the `parallel` feature is enabled and sequentially otherwise. `zero` is
/// the fold identity.
pub(crate) fn map_reduce<T, R, F, M, Z>(items: Vec<T>, f: F, zero: Z, merge: M) -> R
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
    M: Fn(R, R) -> R + Sync + Send,
    Z: Fn() -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.into_par_iter().map(f).reduce(&zero, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).fold(zero(), merge)
    }
}
