//! Exact arithmetic in Q(zeta_d), represented as Q[x] mod the d-th
//! cyclotomic polynomial. Rationals embed as the case d = 1 and promote
//! silently, so `Cyclotomic` satisfies the `Coeff` contract (which has
//! context-free `zero`/`one`).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::BigRational;

use crate::error::{Error, Result};
use crate::scalar::coeff::Coeff;

/// Ascending dense coefficients; invariant: length = deg(Phi_d), entries
/// reduced mod Phi_d, no trailing-zero trimming (fixed length per d).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    d: u32,
    c: Vec<BigRational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.d == other.d {
            return self.c == other.c;
        }
        // Different orders compare equal only through their rational parts
        // (rationals embed in every Q(zeta_d)).
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigRational>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigRational>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Phi_d, ascending, monic. Computed once per d by exact
/// division of x^d - 1 by all lower cyclotomic factors.
pub fn cyclotomic_phi(d: u32) -> Arc<Vec<BigRational>> {
    assert!(d >= 1, "cyclotomic order must be positive");
    if let Some(hit) = phi_cache().lock().unwrap().get(&d) {
        return hit.clone();
    }
    // x^d - 1
    let mut num = vec![BigRational::zero(); d as usize + 1];
    num[0] = -BigRational::one();
    num[d as usize] = BigRational::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            let fe = cyclotomic_phi(e);
            num = exact_div(&num, &fe);
        }
    }
    let arc = Arc::new(num);
    phi_cache().lock().unwrap().insert(d, arc.clone());
    arc
}

/// Dense exact division of polynomials over Q; panics if not exact
/// (only used on products of cyclotomic factors, where it always is).
fn exact_div(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd && !den[dd].is_zero());
    let mut rem = num.to_vec();
    let mut quo = vec![BigRational::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let q = &rem[k + dd] / &den[dd];
        if !q.is_zero() {
            for j in 0..=dd {
                let t = &q * &den[j];
                rem[k + j] = &rem[k + j] - t;
            }
        }
        quo[k] = q;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    quo
}

/// Reduce an ascending coefficient vector mod Phi_d, returning exactly
/// deg(Phi_d) entries.
fn reduce_mod_phi(mut v: Vec<BigRational>, d: u32) -> Vec<BigRational> {
    let phi = cyclotomic_phi(d);
    let deg = phi.len() - 1;
    while v.len() > deg {
        let k = v.len() - 1;
        let lead = v.pop().unwrap();
        if !lead.is_zero() {
            // x^k = x^(k-deg) * (x^deg - Phi_d)  since Phi_d is monic
            for j in 0..deg {
                let t = &lead * &phi[j];
                v[k - deg + j] = &v[k - deg + j] - t;
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

impl Cyclotomic {
    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic { d: 1, c: vec![r] }
    }

    /// zeta_d^k.
    pub fn zeta_pow(d: u32, k: i64) -> Self {
        assert!(d >= 1);
        let k = k.rem_euclid(d as i64) as usize;
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = BigRational::one();
        Cyclotomic {
            d,
            c: reduce_mod_phi(v, d),
        }
    }

    pub fn zeta(d: u32) -> Self {
        Self::zeta_pow(d, 1)
    }

    pub fn order(&self) -> u32 {
        self.d
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn promote(&self, d: u32) -> Cyclotomic {
        if self.d == d {
            return self.clone();
        }
        assert_eq!(
            self.d, 1,
            "cannot mix cyclotomic orders {} and {}",
            self.d, d
        );
        let mut v = vec![BigRational::zero(); cyclotomic_phi(d).len() - 1];
        v[0] = self.c[0].clone();
        Cyclotomic { d, c: v }
    }

    fn aligned(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let d = self.d.max(other.d);
        (self.promote(d), other.promote(d))
    }

    fn zip_with(
        &self,
        other: &Cyclotomic,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Cyclotomic {
        let (a, b) = self.aligned(other);
        let c = a.c.iter().zip(b.c.iter()).map(|(x, y)| f(x, y)).collect();
        Cyclotomic { d: a.d, c }
    }
}

impl Coeff for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }
    fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            d: self.d,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut v = vec![BigRational::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    let t = x * y;
                    v[i + j] = &v[i + j] + t;
                }
            }
        }
        Cyclotomic {
            d: a.d,
            c: reduce_mod_phi(v, a.d),
        }
    }
    fn inv(&self) -> Result<Self> {
        if Coeff::is_zero(self) {
            return Err(Error::DivisionByZero("cyclotomic inverse of 0".into()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyclotomic {
                d: self.d,
                c: {
                    let mut v = vec![BigRational::zero(); self.c.len()];
                    v[0] = r.recip();
                    v
                },
            });
        }
        // Extended Euclid in Q[x] for gcd(a, Phi_d) = 1: s*a + t*Phi = 1.
        let phi = cyclotomic_phi(self.d);
        let (mut r0, mut r1) = (phi.to_vec(), trim(self.c.clone()));
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (nonzero constant since Phi_d is irreducible), s0 * a = r0 mod Phi.
        assert_eq!(r0.len(), 1, "cyclotomic polynomial not coprime to element");
        let scale = r0[0].recip();
        let inv: Vec<BigRational> = s0.iter().map(|x| x * &scale).collect();
        Ok(Cyclotomic {
            d: self.d,
            c: reduce_mod_phi(inv, self.d),
        })
    }
    fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(crate::scalar::coeff::big_ratio(p, q))
    }
    fn coeff_string(&self) -> String {
        if self.d == 1 || self.as_rational().is_some() {
            return self.c[0].to_string();
        }
        let parts: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        format!("zeta{}:[{}]", self.d, parts.join(","))
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("zeta") {
            let (d, vec) = rest
                .split_once(":[")
                .ok_or_else(|| Error::Parse(format!("bad cyclotomic `{s}`")))?;
            let d: u32 = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclotomic order in `{s}`")))?;
            let vec = vec
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("bad cyclotomic `{s}`")))?;
            let mut c = Vec::new();
            for part in vec.split(',') {
                c.push(
                    part.trim()
                        .parse()
                        .map_err(|e| Error::Parse(format!("bad rational `{part}`: {e}")))?,
                );
            }
            let want = cyclotomic_phi(d).len() - 1;
            if c.len() != want {
                return Err(Error::Parse(format!(
                    "cyclotomic vector for d={d} needs {want} entries, got {}",
                    c.len()
                )));
            }
            Ok(Cyclotomic { d, c })
        } else {
            Ok(Self::from_rational(BigRational::parse_coeff(s)?))
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if coeff.is_negative() { "-" } else { "+" })?;
            } else if coeff.is_negative() {
                write!(f, "-")?;
            }
            let mag = if coeff.is_negative() {
                -coeff
            } else {
                coeff.clone()
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !num::One::is_one(&mag) {
                    write!(f, "{mag}*")?;
                }
                write!(f, "z{}", self.d)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

use num::Signed;

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            v[i + j] = &v[i + j] + t;
        }
    }
    trim(v)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        v[i] = &v[i] + x;
    }
    for (i, y) in b.iter().enumerate() {
        v[i] = &v[i] - y;
    }
    trim(v)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quo = vec![BigRational::zero(); a.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let q = &rem[k + db] / &b[db];
        if !q.is_zero() {
            for j in 0..=db {
                let t = &q * &b[j];
                rem[k + j] = &rem[k + j] - t;
            }
        }
        quo[k] = q;
    }
    (trim(quo), trim(rem))
}
