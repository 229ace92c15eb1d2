use std::fmt;
use std::sync::Arc;

use num::BigRational;

use crate::error::{Error, Result};
use crate::scalar::coeff::Coeff;
use crate::scalar::ratfunc::RatFunc;
use crate::scalar::varset::VarSet;

/// Value `re + im*w` in the quadratic extension adjoining a formal square
/// root w with w^2 = rad. The radicand is carried with the value; arithmetic
/// between values demands literally equal radicands.
#[derive(Clone)]
pub struct QuadExt<C: Coeff> {
    re: RatFunc<C>,
    im: RatFunc<C>,
    rad: RatFunc<C>,
}

pub type QExt = QuadExt<BigRational>;

impl<C: Coeff> QuadExt<C> {
    pub fn new(re: RatFunc<C>, im: RatFunc<C>, rad: RatFunc<C>) -> Self {
        assert!(
            re.vars() == im.vars() && re.vars() == rad.vars(),
            "mismatched variable lists"
        );
        QuadExt { re, im, rad }
    }

    pub fn from_rat(re: RatFunc<C>, rad: RatFunc<C>) -> Self {
        let im = RatFunc::zero(re.vars());
        Self::new(re, im, rad)
    }

    pub fn one(vars: &Arc<VarSet>, rad: RatFunc<C>) -> Self {
        Self::from_rat(RatFunc::one(vars), rad)
    }

    /// The root itself: 0 + 1*w.
    pub fn omega(vars: &Arc<VarSet>, rad: RatFunc<C>) -> Self {
        Self::new(RatFunc::zero(vars), RatFunc::one(vars), rad)
    }

    /// c * w^m with w^m folded to rad^floor(m/2) * w^(m mod 2).
    pub fn omega_pow(c: RatFunc<C>, rad: RatFunc<C>, m: i64) -> Result<Self> {
        let half = rad.pow(m.div_euclid(2))?;
        let body = c.mul(&half);
        if m.rem_euclid(2) == 0 {
            Ok(Self::from_rat(body, rad))
        } else {
            let zero = RatFunc::zero(body.vars());
            Ok(Self::new(zero, body, rad))
        }
    }

    pub fn re(&self) -> &RatFunc<C> {
        &self.re
    }

    pub fn im(&self) -> &RatFunc<C> {
        &self.im
    }

    pub fn rad(&self) -> &RatFunc<C> {
        &self.rad
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.re.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn assert_compatible(&self, rhs: &Self) {
        assert!(
            self.rad == rhs.rad,
            "mismatched radicands: {} vs {}",
            self.rad,
            rhs.rad
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        Self::new(self.re.add(&rhs.re), self.im.add(&rhs.im), self.rad.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        Self::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im), self.rad.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg(), self.rad.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_compatible(rhs);
        let re = self
            .re
            .mul(&rhs.re)
            .add(&self.im.mul(&rhs.im).mul(&self.rad));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Self::new(re, im, self.rad.clone())
    }

    pub fn scale(&self, c: &RatFunc<C>) -> Self {
        Self::new(self.re.mul(c), self.im.mul(c), self.rad.clone())
    }

    /// Field norm re^2 - im^2 * rad.
    pub fn norm(&self) -> RatFunc<C> {
        self.re
            .mul(&self.re)
            .sub(&self.im.mul(&self.im).mul(&self.rad))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero(
                "quadratic extension element has zero norm".into(),
            ));
        }
        let ninv = n.inv()?;
        Ok(Self::new(
            self.re.mul(&ninv),
            self.im.neg().mul(&ninv),
            self.rad.clone(),
        ))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.vars(), self.rad.clone());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute the base variables and replace the formal root by an
    /// explicit value. The caller asserts `root^2 = rad` after substitution;
    /// this is checked exactly and rejected otherwise.
    pub fn specialize_root(
        &self,
        target: &Arc<VarSet>,
        images: &[RatFunc<C>],
        root: &RatFunc<C>,
    ) -> Result<RatFunc<C>> {
        let rad = self.rad.substitute(target, images)?;
        if root.mul(root) != rad {
            return Err(Error::Invalid(format!(
                "declared root does not square to the substituted radicand: ({root})^2 != {rad}"
            )));
        }
        let re = self.re.substitute(target, images)?;
        let im = self.im.substitute(target, images)?;
        Ok(re.add(&im.mul(root)))
    }

    /// Substitute the base variables, keeping the root formal.
    pub fn substitute(&self, target: &Arc<VarSet>, images: &[RatFunc<C>]) -> Result<Self> {
        Ok(Self::new(
            self.re.substitute(target, images)?,
            self.im.substitute(target, images)?,
            self.rad.substitute(target, images)?,
        ))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> QuadExt<D> {
        QuadExt {
            re: self.re.map_coeffs(&f),
            im: self.im.map_coeffs(&f),
            rad: self.rad.map_coeffs(&f),
        }
    }
}

impl<C: Coeff> PartialEq for QuadExt<C> {
    fn eq(&self, other: &Self) -> bool {
        self.rad == other.rad && self.re == other.re && self.im == other.im
    }
}

impl<C: Coeff> fmt::Display for QuadExt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "({})*sqrt({})", self.im, self.rad);
        }
        write!(f, "{} + ({})*sqrt({})", self.re, self.im, self.rad)
    }
}

impl<C: Coeff> fmt::Debug for QuadExt<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
