use std::fmt::{Debug, Display};

use num::BigRational;

use crate::error::{Error, Result};

/// Coefficient field for the polynomial tower. Two models are provided:
/// arbitrary-precision rationals and cyclotomic numbers Q(zeta_d).
pub trait Coeff: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse; `Err` on zero.
    fn inv(&self) -> Result<Self>;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(p: i64, q: i64) -> Self;
    /// Canonical string for JSON round-trips.
    fn coeff_string(&self) -> String;
    /// Inverse of `coeff_string`.
    fn parse_coeff(s: &str) -> Result<Self>;
}

pub fn big_ratio(p: i64, q: i64) -> BigRational {
    assert!(q != 0, "zero denominator");
    BigRational::new(p.into(), q.into())
}

impl Coeff for BigRational {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Result<Self> {
        if Coeff::is_zero(self) {
            return Err(Error::DivisionByZero("rational inverse of 0".into()));
        }
        Ok(self.recip())
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        big_ratio(p, q)
    }
    fn coeff_string(&self) -> String {
        self.to_string()
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
    }
}
