use std::fmt;
use std::sync::Arc;

use num::BigRational;

use crate::error::{Error, Result};
use crate::scalar::coeff::Coeff;
use crate::scalar::poly::LaurentPoly;
use crate::scalar::varset::VarSet;

/// Quotient of Laurent polynomials. Kept lightly normalized (no general
/// multivariate gcd): monomial factors of the denominator are shifted into
/// the numerator (the Laurent ring makes that exact) and the denominator is
/// made monic in its lex-leading coefficient. Equality is decided by
/// cross-multiplication, so normalization is cosmetic, not semantic.
#[derive(Clone)]
pub struct RatFunc<C: Coeff> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

pub type QRat = RatFunc<BigRational>;

impl<C: Coeff> RatFunc<C> {
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(
                "rational function with zero denominator".into(),
            ));
        }
        assert!(num.vars() == den.vars(), "mismatched variable lists");
        let mut rf = RatFunc { num, den };
        rf.normalize();
        Ok(rf)
    }

    pub fn from_poly(num: LaurentPoly<C>) -> Self {
        let den = LaurentPoly::one(num.vars());
        RatFunc { num, den }
    }

    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Self::from_poly(LaurentPoly::zero(vars))
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::from_poly(LaurentPoly::one(vars))
    }

    pub fn int(vars: &Arc<VarSet>, v: i64) -> Self {
        Self::from_poly(LaurentPoly::int(vars, v))
    }

    pub fn ratio(vars: &Arc<VarSet>, p: i64, q: i64) -> Self {
        Self::from_poly(LaurentPoly::ratio(vars, p, q))
    }

    pub fn constant(vars: &Arc<VarSet>, c: C) -> Self {
        Self::from_poly(LaurentPoly::constant(vars, c))
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        Ok(Self::from_poly(LaurentPoly::var(vars, name)?))
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.num.vars()
    }

    pub fn num(&self) -> &LaurentPoly<C> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one(self.vars())
    }

    /// The polynomial value when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly<C>> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<C> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.num.vars());
            return;
        }
        // Shift the denominator's monomial content into the numerator.
        let shift = self.den.min_exponents();
        if shift.iter().any(|&e| e != 0) {
            let neg: Vec<i32> = shift.iter().map(|&e| -e).collect();
            self.den = self.den.mul_term(&neg, &C::one());
            self.num = self.num.mul_term(&neg, &C::one());
        }
        // Make the denominator monic in its lex-leading coefficient.
        let lead = self.den.leading().map(|(_, c)| c.clone()).unwrap();
        if lead != C::one() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            let mut rf = RatFunc {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
            rf.normalize();
            return rf;
        }
        let mut rf = RatFunc {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        };
        rf.normalize();
        rf
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut rf = RatFunc {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        };
        rf.normalize();
        rf
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut rf = RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        };
        rf.normalize();
        rf
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero(
                "inverse of zero rational function".into(),
            ));
        }
        let mut rf = RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        };
        rf.normalize();
        Ok(rf)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.vars());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> RatFunc<D> {
        RatFunc {
            num: self.num.map_coeffs(&f),
            den: self.den.map_coeffs(&f),
        }
    }

    /// Substitute every variable by an image over `target`; see
    /// `LaurentPoly::substitute` for the quarter-variable convention.
    pub fn substitute(&self, target: &Arc<VarSet>, images: &[RatFunc<C>]) -> Result<Self> {
        let n = self.num.substitute(target, images)?;
        let d = self.den.substitute(target, images)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero(
                "denominator vanishes under specialization".into(),
            ));
        }
        n.div(&d)
    }
}

impl<C: Coeff> PartialEq for RatFunc<C> {
    /// Exact equality of values via cross-multiplication. Values over
    /// different variable sets are never equal.
    fn eq(&self, other: &Self) -> bool {
        if self.vars() != other.vars() {
            return false;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<C: Coeff> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<C: Coeff> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs() -> Arc<VarSet> {
        VarSet::new(["u", "z"])
    }

    fn v(name: &str) -> QRat {
        RatFunc::var(&vs(), name).unwrap()
    }

    #[test]
    fn cross_multiplication_equality() {
        let u = v("u");
        let z = v("z");
        // (u^2 - z^2)/(u - z) == u + z
        let num = u.mul(&u).sub(&z.mul(&z));
        let den = u.sub(&z);
        let q = num.div(&den).unwrap();
        assert_eq!(q, u.add(&z));
        assert_ne!(q, u.sub(&z));
    }

    #[test]
    fn monomial_denominators_collapse() {
        let u = v("u");
        let z = v("z");
        // (1 - u + z)/(u z) normalizes to a Laurent polynomial.
        let lam = QRat::one(&vs()).sub(&u).add(&z).div(&u.mul(&z)).unwrap();
        assert!(
            lam.as_poly().is_some(),
            "monomial denominator should shift: {lam}"
        );
        let back = lam.mul(&u).mul(&z);
        assert_eq!(back, QRat::one(&vs()).sub(&u).add(&z));
    }

    #[test]
    fn inverse_and_pow() {
        let u = v("u");
        let z = v("z");
        let r = u.add(&z).div(&u.sub(&z)).unwrap();
        assert!(r.mul(&r.inv().unwrap()).is_one());
        assert_eq!(r.pow(-2).unwrap(), r.inv().unwrap().mul(&r.inv().unwrap()));
        assert!(QRat::zero(&vs()).inv().is_err());
    }

    #[test]
    fn substitution() {
        let q_vars = VarSet::new(["q"]);
        let q = QRat::var(&q_vars, "q").unwrap();
        let u = v("u");
        let z = v("z");
        // u -> q^4, z -> -1/(1+q^4) applied to u*z
        let q4 = q.pow(4).unwrap();
        let img_z = QRat::int(&q_vars, -1)
            .div(&QRat::one(&q_vars).add(&q4))
            .unwrap();
        let got = u
            .mul(&z)
            .substitute(&q_vars, &[q4.clone(), img_z.clone()])
            .unwrap();
        assert_eq!(got, q4.mul(&img_z));
    }
}
