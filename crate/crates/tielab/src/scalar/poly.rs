use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::BigRational;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::scalar::coeff::Coeff;
use crate::scalar::ratfunc::RatFunc;
use crate::scalar::varset::VarSet;

pub type Exp = SmallVec<[i32; 4]>;

/// Multivariate Laurent polynomial with exact coefficients. Terms live in a
/// BTreeMap keyed by exponent vectors, so iteration order (and therefore
/// printing) is canonical. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C: Coeff> {
    vars: Arc<VarSet>,
    terms: BTreeMap<Exp, C>,
}

pub type QPoly = LaurentPoly<BigRational>;

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(smallvec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn int(vars: &Arc<VarSet>, v: i64) -> Self {
        Self::constant(vars, C::from_i64(v))
    }

    pub fn ratio(vars: &Arc<VarSet>, p: i64, q: i64) -> Self {
        Self::constant(vars, C::from_ratio(p, q))
    }

    /// The named variable to the first power (stored exponent is 4 when the
    /// variable is quarter-scaled: exponents of quarter variables count
    /// quarter units).
    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial_units(
            vars,
            idx,
            if vars.is_quarter(idx) { 4 } else { 1 },
        ))
    }

    /// Monomial with a raw stored exponent (quarter units on flagged vars).
    pub fn monomial_units(vars: &Arc<VarSet>, idx: usize, units: i32) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut exp: Exp = smallvec![0; vars.len()];
        exp[idx] = units;
        let mut p = Self::zero(vars);
        p.terms.insert(exp, C::one());
        p
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: impl IntoIterator<Item = (Exp, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c == C::one())
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.terms.is_empty() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, e: Exp, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn assert_same_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "mismatched variable lists: {} vs {}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// Multiply by the monomial c * x^units.
    pub fn mul_term(&self, units: &[i32], c: &C) -> Self {
        assert_eq!(units.len(), self.vars.len());
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    let mut ne = e.clone();
                    for (a, b) in ne.iter_mut().zip(units) {
                        *a += *b;
                    }
                    (ne, x.mul(c))
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a monomial (the units of the Laurent ring). `Err` otherwise.
    pub fn inv_monomial(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::DivisionByZero(format!(
                "`{self}` is not an invertible monomial"
            )));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let mut p = Self::zero(&self.vars);
        p.terms
            .insert(e.iter().map(|&x| -x).collect::<Exp>(), c.inv()?);
        Ok(p)
    }

    /// Per-variable minimum stored exponent over all terms (0 if zero poly).
    pub fn min_exponents(&self) -> Exp {
        let mut out: Exp = smallvec![0; self.vars.len()];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
        }
        out
    }

    /// Lex-leading (exponent, coefficient) pair.
    pub fn leading(&self) -> Option<(&Exp, &C)> {
        self.terms.iter().next_back()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut p = LaurentPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    /// Substitute every variable by a rational function over `target`.
    /// `images[i]` is the image of variable i itself, or of its quarter power
    /// when variable i is quarter-flagged (stored exponents apply verbatim).
    pub fn substitute(&self, target: &Arc<VarSet>, images: &[RatFunc<C>]) -> Result<RatFunc<C>> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        for im in images {
            assert!(im.vars() == target, "image not over target variable set");
        }
        let mut acc = RatFunc::zero(target);
        for (e, c) in &self.terms {
            let mut term = RatFunc::constant(target, c.clone());
            for (i, &units) in e.iter().enumerate() {
                if units != 0 {
                    term = term.mul(&images[i].pow(units as i64)?);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Reinterpret a quarter-scaled variable as an integer variable with the
    /// same stored exponents (e.g. rewrite t with quarter exponents as the
    /// integer variable q = t^(1/4)).
    pub fn reinterpret_quarter(&self, from: &str, to: &str) -> Result<Self> {
        let idx = self
            .vars
            .index_of(from)
            .ok_or_else(|| Error::UnknownVariable(from.to_string()))?;
        assert!(self.vars.is_quarter(idx), "`{from}` is not quarter-scaled");
        let vars = VarSet::with_flags((0..self.vars.len()).map(|i| {
            if i == idx {
                (to.to_string(), false)
            } else {
                (self.vars.name(i).to_string(), self.vars.is_quarter(i))
            }
        }));
        Ok(LaurentPoly {
            vars,
            terms: self.terms.clone(),
        })
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.assert_same_vars(rhs);
        let mut out = LaurentPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exp = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        out
    }
}

/// Render one stored exponent, folding quarter units back to a rational
/// power: stored -3 on a quarter variable prints as `^(-3/4)`.
pub(crate) fn exponent_text(units: i32, quarter: bool) -> Option<String> {
    if !quarter {
        return match units {
            1 => None,
            e => Some(format!("^{e}")),
        };
    }
    if units % 4 == 0 {
        return exponent_text(units / 4, false);
    }
    let (p, q) = if units % 2 == 0 {
        (units / 2, 2)
    } else {
        (units, 4)
    };
    Some(format!("^({p}/{q})"))
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Leading (lex-largest) term first.
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.coeff_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !cs.starts_with("zeta") => (true, rest.to_string()),
                _ => (false, cs),
            };
            let composite = mag.contains(['+', '-', ',']);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut pieces: Vec<String> = Vec::new();
            for (i, &units) in e.iter().enumerate() {
                if units == 0 {
                    continue;
                }
                let name = self.vars.name(i);
                match exponent_text(units, self.vars.is_quarter(i)) {
                    None => pieces.push(name.to_string()),
                    Some(suffix) => pieces.push(format!("{name}{suffix}")),
                }
            }
            let coeff_part = if composite {
                Some(format!("({mag})"))
            } else if mag == "1" && !pieces.is_empty() {
                None
            } else {
                Some(mag)
            };
            let body: Vec<String> = coeff_part.into_iter().chain(pieces).collect();
            write!(f, "{}", body.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::coeff::big_ratio;

    fn uz() -> Arc<VarSet> {
        VarSet::new(["u", "z"])
    }

    fn u(vs: &Arc<VarSet>) -> QPoly {
        LaurentPoly::var(vs, "u").unwrap()
    }

    fn z(vs: &Arc<VarSet>) -> QPoly {
        LaurentPoly::var(vs, "z").unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let vs = uz();
        let p = &u(&vs) + &z(&vs);
        let q = &u(&vs) - &z(&vs);
        let prod = &p * &q;
        let expect = &(&u(&vs) * &u(&vs)) - &(&z(&vs) * &z(&vs));
        assert_eq!(prod, expect);
        assert!((&p - &p).is_zero());
        assert_eq!(p.pow(0), QPoly::one(&vs));
    }

    #[test]
    fn laurent_units() {
        let vs = uz();
        let m = u(&vs).mul_term(&[-2, 1], &big_ratio(3, 2)); // (3/2) u^-1 z
        let inv = m.inv_monomial().unwrap();
        assert!((&m * &inv).is_one());
        assert!((&u(&vs) + &z(&vs)).inv_monomial().is_err());
    }

    #[test]
    fn display_canonical() {
        let vs = uz();
        let p = &(&u(&vs) * &u(&vs)) - &QPoly::ratio(&vs, 1, 2);
        assert_eq!(p.to_string(), "u^2 - 1/2");
        let m = QPoly::one(&vs).mul_term(&[0, -1], &big_ratio(-1, 1));
        assert_eq!(m.to_string(), "-z^-1");
        assert_eq!(QPoly::zero(&vs).to_string(), "0");
    }

    #[test]
    fn quarter_exponents() {
        let vs = VarSet::with_flags([("t", true)]);
        let t_quarter = QPoly::monomial_units(&vs, 0, 1);
        assert_eq!(t_quarter.to_string(), "t^(1/4)");
        assert_eq!(QPoly::monomial_units(&vs, 0, -3).to_string(), "t^(-3/4)");
        assert_eq!(QPoly::monomial_units(&vs, 0, 2).to_string(), "t^(1/2)");
        assert_eq!(QPoly::monomial_units(&vs, 0, 8).to_string(), "t^2");
        assert_eq!(QPoly::var(&vs, "t").unwrap().to_string(), "t");
        let q = t_quarter.reinterpret_quarter("t", "q").unwrap();
        assert_eq!(q.to_string(), "q");
    }

    #[test]
    #[should_panic(expected = "mismatched variable lists")]
    fn var_mismatch_panics() {
        let a = QPoly::one(&uz());
        let b = QPoly::one(&VarSet::new(["a"]));
        let _ = &a + &b;
    }
}
