//! The Yokonuma–Hecke algebra Y_{d,n}(u), its Markov traces, and the link
//! invariants Δ and Θ they induce.
//!
//! Basis: t_1^{a_1} .. t_n^{a_n} g_w with a ∈ (ℤ/d)^n and w a permutation
//! (stored 0-indexed). Defining relations, with e_i the idempotent
//! (1/d) Σ_s t_i^s t_{i+1}^{-s}:
//!
//!   g_i^2 = 1 + (u - 1) e_i + (u - 1) e_i g_i,     t_i^d = 1,
//!   g_i t_j = t_{s_i(j)} g_i,     plus braid and far-commutation relations.
//!
//! The trace tr is determined by tr(1) = 1 and, peeling the top strand,
//! tr(x g_{n-1} y) = z tr(x y) and tr(x t_{n-1}^m) = x_m tr(x) for lower
//! x, y. Its parameters x_1, .., x_{d-1} may be free variables; the traces
//! that give link invariants fix them to a solution of the E-system,
//! x_k = (1/|S|) Σ_{s ∈ S} ζ_d^{ks} for a nonempty S ⊆ ℤ/d.
//!
//! Δ uses the crossing g_i scaled by ω with ω^2 = λ_Δ; Θ uses the
//! alternative crossing f_i = g_i + (v^{-1} - 1) e_i g_i at u = v^2.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::BigRational;
use smallvec::SmallVec;

use crate::braid::BraidWord;
use crate::perm::Perm;
use crate::scalar::{Coeff, Cyclotomic, LaurentPoly, QuadExt, RatFunc, VarSet};

type Framing = SmallVec<[u8; 8]>;

/// Basis key: framing exponents a (one per strand) and a permutation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct YKey {
    pub a: Framing,
    pub w: Perm,
}

#[derive(Clone, Debug)]
pub struct YCtx<C: Coeff> {
    pub d: u32,
    vars: Arc<VarSet>,
    pub u: RatFunc<C>,
    pub u_inv: RatFunc<C>,
    pub z: RatFunc<C>,
    /// Trace parameters x_0 = 1, x_1, .., x_{d-1}.
    pub x: Vec<RatFunc<C>>,
    /// (v, v^{-1}) with v^2 = u, when the square root is in the ring.
    pub v: Option<(RatFunc<C>, RatFunc<C>)>,
}

impl YCtx<BigRational> {
    /// Free trace parameters: variables u, z, x1, .., x_{d-1}.
    pub fn generic(d: u32) -> Self {
        assert!(d >= 1);
        let mut names = vec!["u".to_string(), "z".to_string()];
        for k in 1..d {
            names.push(format!("x{k}"));
        }
        let vars = VarSet::new(names);
        let u = RatFunc::<BigRational>::var(&vars, "u").unwrap();
        let z = RatFunc::var(&vars, "z").unwrap();
        let mut x = vec![RatFunc::from_poly(LaurentPoly::one(&vars))];
        for k in 1..d {
            x.push(RatFunc::var(&vars, &format!("x{k}")).unwrap());
        }
        YCtx {
            d,
            vars: vars.clone(),
            u_inv: u.inv().unwrap(),
            u,
            z,
            x,
            v: None,
        }
    }
}

impl YCtx<Cyclotomic> {
    /// Trace parameters fixed to the E-system solution indexed by the
    /// nonempty subset `s` of ℤ/d, over the variables [u, z].
    pub fn esystem(d: u32, s: &[u32]) -> Self {
        let vars = VarSet::new(["u", "z"]);
        let u = RatFunc::<Cyclotomic>::var(&vars, "u").unwrap();
        let z = RatFunc::var(&vars, "z").unwrap();
        let x = esystem_values(d, s)
            .into_iter()
            .map(|c| RatFunc::constant(&vars, c))
            .collect();
        YCtx {
            d,
            vars: vars.clone(),
            u_inv: u.inv().unwrap(),
            u,
            z,
            x,
            v: None,
        }
    }

    /// Same, over [v, z] with u = v^2 (the ring Θ lives in).
    pub fn esystem_sqrt(d: u32, s: &[u32]) -> Self {
        let vars = VarSet::new(["v", "z"]);
        let v = RatFunc::<Cyclotomic>::var(&vars, "v").unwrap();
        let z = RatFunc::var(&vars, "z").unwrap();
        let u = v.mul(&v);
        let x = esystem_values(d, s)
            .into_iter()
            .map(|c| RatFunc::constant(&vars, c))
            .collect();
        YCtx {
            d,
            vars: vars.clone(),
            u_inv: u.inv().unwrap(),
            u,
            z,
            x,
            v: Some((v.clone(), v.inv().unwrap())),
        }
    }
}

impl<C: Coeff> YCtx<C> {
    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn scalar_one(&self) -> RatFunc<C> {
        RatFunc::from_poly(LaurentPoly::one(&self.vars))
    }

    pub fn x_at(&self, k: u8) -> &RatFunc<C> {
        &self.x[k as usize % self.d as usize]
    }

    /// E^{(m)} = (1/d) Σ_s x_{m+s} x_{d-s}; E = E^{(0)} is the trace of e_i.
    pub fn e_shifted(&self, m: i64) -> RatFunc<C> {
        let d = self.d as i64;
        let mut acc = RatFunc::from_poly(LaurentPoly::zero(&self.vars));
        for s in 0..d {
            let a = self.x[((m + s).rem_euclid(d)) as usize].clone();
            let b = self.x[((-s).rem_euclid(d)) as usize].clone();
            acc = acc.add(&a.mul(&b));
        }
        acc.scale(&C::from_ratio(1, d))
    }

    pub fn e_value(&self) -> RatFunc<C> {
        self.e_shifted(0)
    }
}

/// x_k = (1/|S|) Σ_{s ∈ S} ζ_d^{ks}, the E-system solution for S.
pub fn esystem_values(d: u32, s: &[u32]) -> Vec<Cyclotomic> {
    assert!(d >= 1, "d must be positive");
    assert!(!s.is_empty(), "the subset S must be nonempty");
    let mut seen = vec![false; d as usize];
    for &e in s {
        assert!(e < d, "subset entry {e} out of range mod {d}");
        assert!(!seen[e as usize], "subset entry {e} repeated");
        seen[e as usize] = true;
    }
    let inv_m = Cyclotomic::from_ratio(1, s.len() as i64);
    (0..d)
        .map(|k| {
            let mut acc = Cyclotomic::zero();
            for &e in s {
                acc = acc.add(&Cyclotomic::zeta_pow(d, (k as i64) * (e as i64)));
            }
            acc.mul(&inv_m)
        })
        .collect()
}

/// An element of Y_{d,n} on the t^a g_w basis.
#[derive(Clone, PartialEq, Debug)]
pub struct YElem<C: Coeff> {
    d: u32,
    n: usize,
    terms: BTreeMap<YKey, RatFunc<C>>,
}

impl<C: Coeff> YElem<C> {
    pub fn zero(d: u32, n: usize) -> Self {
        YElem {
            d,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &YCtx<C>, n: usize) -> Self {
        Self::basis(
            ctx.d,
            YKey {
                a: Framing::from_elem(0, n),
                w: Perm::identity(n),
            },
            ctx.scalar_one(),
        )
    }

    pub fn basis(d: u32, key: YKey, coeff: RatFunc<C>) -> Self {
        assert_eq!(key.a.len(), key.w.n());
        let n = key.w.n();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        YElem { d, n, terms }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YKey, &RatFunc<C>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, key: YKey, c: RatFunc<C>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &YElem<C>) -> YElem<C> {
        assert!(
            self.d == other.d && self.n == other.n,
            "mismatched algebras"
        );
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &YElem<C>) -> YElem<C> {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: &RatFunc<C>) -> YElem<C> {
        if s.is_zero() {
            return YElem::zero(self.d, self.n);
        }
        YElem {
            d: self.d,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Right multiplication by t_j^m: framing bumps at the strand w(j).
    pub fn right_mul_t_pow(&self, j: usize, m: i64) -> YElem<C> {
        let d = self.d;
        let m = m.rem_euclid(d as i64) as u8;
        if m == 0 {
            return self.clone();
        }
        let mut out = YElem::zero(d, self.n);
        for (key, c) in &self.terms {
            let mut a = key.a.clone();
            let p = key.w.apply(j);
            a[p] = (a[p] + m) % d as u8;
            out.add_term(
                YKey {
                    a,
                    w: key.w.clone(),
                },
                c.clone(),
            );
        }
        out
    }

    /// Right multiplication by e_i^{(m)} = (1/d) Σ_s t_i^{m+s} t_{i+1}^{-s};
    /// m = 0 gives the tie idempotent e_i.
    pub fn right_mul_e_shifted(&self, i: usize, m: i64) -> YElem<C> {
        let d = self.d as i64;
        let inv_d = C::from_ratio(1, d);
        let mut out = YElem::zero(self.d, self.n);
        for (key, c) in &self.terms {
            let scaled = c.scale(&inv_d);
            let p = key.w.apply(i);
            let q = key.w.apply(i + 1);
            for s in 0..d {
                let mut a = key.a.clone();
                a[p] = ((a[p] as i64 + m + s).rem_euclid(d)) as u8;
                a[q] = ((a[q] as i64 - s).rem_euclid(d)) as u8;
                out.add_term(
                    YKey {
                        a,
                        w: key.w.clone(),
                    },
                    scaled.clone(),
                );
            }
        }
        out
    }

    pub fn right_mul_e(&self, i: usize) -> YElem<C> {
        self.right_mul_e_shifted(i, 0)
    }

    /// Right multiplication by g_i or its inverse.
    pub fn right_mul_g(&self, ctx: &YCtx<C>, i: usize, inverse: bool) -> YElem<C> {
        assert!(
            i + 1 < self.n,
            "generator {i} out of range for n={}",
            self.n
        );
        if inverse {
            // g_i^{-1} = g_i + (u^{-1} - 1) e_i + (u^{-1} - 1) e_i g_i
            let shift = ctx.u_inv.sub(&ctx.scalar_one());
            let xe = self.right_mul_e(i);
            return self
                .right_mul_g(ctx, i, false)
                .add(&xe.scale(&shift))
                .add(&xe.right_mul_g(ctx, i, false).scale(&shift));
        }
        let u_minus_1 = ctx.u.sub(&ctx.scalar_one());
        let mut out = YElem::zero(self.d, self.n);
        for (key, c) in &self.terms {
            let ws = key.w.right_mul_s(i);
            if key.w.right_ascent(i) {
                out.add_term(
                    YKey {
                        a: key.a.clone(),
                        w: ws,
                    },
                    c.clone(),
                );
            } else {
                // t^a g_w g_i = t^a g_{w s_i} (1 + (u-1) e_i + (u-1) e_i g_i)
                let base = YElem::basis(
                    self.d,
                    YKey {
                        a: key.a.clone(),
                        w: ws,
                    },
                    c.clone(),
                );
                out = out.add(&base);
                let be = base.right_mul_e(i).scale(&u_minus_1);
                out = out.add(&be);
                // every term of base·e_i has the ascent back at i
                for (k2, c2) in &be.terms {
                    out.add_term(
                        YKey {
                            a: k2.a.clone(),
                            w: k2.w.right_mul_s(i),
                        },
                        c2.clone(),
                    );
                }
            }
        }
        out
    }

    /// Right multiplication by the Θ crossing f_i = g_i + (v^{-1} - 1) e_i g_i.
    pub fn right_mul_f(&self, ctx: &YCtx<C>, i: usize, inverse: bool) -> YElem<C> {
        let (v, v_inv) = ctx.v.as_ref().expect("f_i needs v = sqrt(u) in the ring");
        if inverse {
            // f_i^{-1} = f_i - (v - v^{-1}) e_i
            let pos = self.right_mul_f(ctx, i, false);
            return pos.sub(&self.right_mul_e(i).scale(&v.sub(v_inv)));
        }
        let shift = v_inv.sub(&ctx.scalar_one());
        self.right_mul_g(ctx, i, false)
            .add(&self.right_mul_e(i).right_mul_g(ctx, i, false).scale(&shift))
    }

    /// Right multiplication by the basis element t^b g_{w2}.
    pub fn right_mul_basis(&self, ctx: &YCtx<C>, key: &YKey) -> YElem<C> {
        let mut acc = self.clone();
        for (j, &b) in key.a.iter().enumerate() {
            if b != 0 {
                acc = acc.right_mul_t_pow(j, b as i64);
            }
        }
        for i in key.w.reduced_word() {
            acc = acc.right_mul_g(ctx, i, false);
        }
        acc
    }

    pub fn mul(&self, ctx: &YCtx<C>, other: &YElem<C>) -> YElem<C> {
        assert!(
            self.d == other.d && self.n == other.n,
            "mismatched algebras"
        );
        let mut out = YElem::zero(self.d, self.n);
        for (key, c) in &other.terms {
            out = out.add(&self.right_mul_basis(ctx, key).scale(c));
        }
        out
    }
}

impl<C: Coeff> fmt::Display for YElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*t{:?}g{}", key.a.as_slice(), key.w)?;
        }
        Ok(())
    }
}

/// π(word) with ω stripped: σ_i^± maps to g_i^± (or f_i^± with `theta`).
pub fn braid_image<C: Coeff>(ctx: &YCtx<C>, word: &BraidWord, theta: bool) -> YElem<C> {
    let mut acc = YElem::one(ctx, word.n());
    for &(k, inv) in word.letters() {
        acc = if theta {
            acc.right_mul_f(ctx, k, inv)
        } else {
            acc.right_mul_g(ctx, k, inv)
        };
    }
    acc
}

/// The Markov trace on Y_{d,n}, peeling the top strand.
pub fn y_trace<C: Coeff>(ctx: &YCtx<C>, elem: &YElem<C>) -> RatFunc<C> {
    let n = elem.n();
    if n == 1 {
        let mut acc = RatFunc::from_poly(LaurentPoly::zero(ctx.vars()));
        for (key, c) in elem.terms() {
            acc = acc.add(&c.mul(ctx.x_at(key.a[0])));
        }
        return acc;
    }
    let top = n - 1;
    let mut lower = YElem::zero(ctx.d, n - 1);
    let mut moving: Vec<(YKey, RatFunc<C>)> = Vec::new();
    for (key, c) in elem.terms() {
        if key.w.fixes(top) {
            // t_top^m costs a factor x_m
            lower.add_term(
                YKey {
                    a: key.a[..top].iter().copied().collect(),
                    w: key.w.restrict(n - 1),
                },
                c.mul(ctx.x_at(key.a[top])),
            );
        } else {
            moving.push((key.clone(), c.clone()));
        }
    }
    // t^a g_w = t^{a'} g_{w'} g_{top-1} (t_{top-1}^{a_top} g_{top-2} .. g_{i0})
    // after sliding t_top^{a_top} through, so the g_{top-1} costs a factor z.
    let folded = crate::map_reduce(
        moving,
        |(key, c)| {
            let (a, w) = (&key.a, &key.w);
            let i0 = w.preimage(top);
            let mut images: Vec<usize> = Vec::with_capacity(n - 1);
            for k in 0..n {
                if k != i0 {
                    images.push(w.apply(k));
                }
            }
            let w_prime = Perm::from_images(images);
            let mut acc = YElem::basis(
                ctx.d,
                YKey {
                    a: a[..top].iter().copied().collect(),
                    w: w_prime,
                },
                c.mul(&ctx.z),
            );
            acc = acc.right_mul_t_pow(top - 1, a[top] as i64);
            for i in (i0..top - 1).rev() {
                acc = acc.right_mul_g(ctx, i, false);
            }
            acc
        },
        || YElem::zero(ctx.d, n - 1),
        |x, y| x.add(&y),
    );
    y_trace(ctx, &lower.add(&folded))
}

/// Δ for the E-system trace indexed by S: only |S| = m survives into the
/// normalization, λ_Δ = (1 - u + zm)/(uzm).
pub fn delta(word: &BraidWord, d: u32, s: &[u32]) -> QuadExt<Cyclotomic> {
    let ctx = YCtx::esystem(d, s);
    let tr = y_trace(&ctx, &braid_image(&ctx, word, false));
    let n = word.n() as i64;
    let e = word.exponent_sum();
    let m = RatFunc::int(ctx.vars(), s.len() as i64);
    let one = ctx.scalar_one();
    let lambda = one
        .sub(&ctx.u)
        .add(&ctx.z.mul(&m))
        .div(&ctx.u.mul(&ctx.z).mul(&m))
        .unwrap();
    let z_pow = ctx.z.pow(1 - n).expect("z invertible");
    QuadExt::omega_pow(tr.mul(&z_pow), lambda, e - n + 1).expect("λ invertible")
}

/// Θ for the E-system trace indexed by S, over [v, z] with u = v^2:
/// normalization v^{n-1} z^{1-n} ω^{e-n+1}, ω^2 = (zm - (v^2 - 1))/(zm).
pub fn theta(word: &BraidWord, d: u32, s: &[u32]) -> QuadExt<Cyclotomic> {
    let ctx = YCtx::esystem_sqrt(d, s);
    let tr = y_trace(&ctx, &braid_image(&ctx, word, true));
    let n = word.n() as i64;
    let e = word.exponent_sum();
    let m = RatFunc::int(ctx.vars(), s.len() as i64);
    let (v, _) = ctx.v.as_ref().unwrap();
    let zm = ctx.z.mul(&m);
    let lambda = zm.sub(&ctx.u.sub(&ctx.scalar_one())).div(&zm).unwrap();
    let norm = ctx.z.pow(1 - n).unwrap().mul(&v.pow(n - 1).unwrap());
    QuadExt::omega_pow(tr.mul(&norm), lambda, e - n + 1).expect("λ invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn key(a: &[u8], w: &Perm) -> YKey {
        YKey {
            a: a.iter().copied().collect(),
            w: w.clone(),
        }
    }

    fn gen_g(ctx: &YCtx<BigRational>, n: usize, i: usize) -> YElem<BigRational> {
        YElem::one(ctx, n).right_mul_g(ctx, i, false)
    }

    fn gen_t(ctx: &YCtx<BigRational>, n: usize, j: usize) -> YElem<BigRational> {
        YElem::one(ctx, n).right_mul_t_pow(j, 1)
    }

    fn random_elem(ctx: &YCtx<BigRational>, rng: &mut ChaCha8Rng, n: usize) -> YElem<BigRational> {
        let perms = Perm::enumerate(n);
        let mut out = YElem::zero(ctx.d, n);
        for _ in 0..rng.random_range(1..4) {
            let w = perms[rng.random_range(0..perms.len())].clone();
            let a: Framing = (0..n).map(|_| rng.random_range(0..ctx.d) as u8).collect();
            let c = RatFunc::ratio(ctx.vars(), rng.random_range(-3..=3), 1);
            out.add_term(YKey { a, w }, c);
        }
        out
    }

    #[test]
    fn framing_and_idempotent_relations() {
        let ctx = YCtx::generic(3);
        let n = 3;
        // t_j^d = 1
        let t0 = gen_t(&ctx, n, 0);
        let t0_cubed = t0.right_mul_t_pow(0, 2);
        assert_eq!(t0_cubed, YElem::one(&ctx, n));
        // t's commute
        let t1 = gen_t(&ctx, n, 1);
        assert_eq!(t0.mul(&ctx, &t1), t1.mul(&ctx, &t0));
        // e_i^2 = e_i
        let e0 = YElem::one(&ctx, n).right_mul_e(0);
        assert_eq!(e0.right_mul_e(0), e0);
        // e_i g_i = g_i e_i
        let g0 = gen_g(&ctx, n, 0);
        assert_eq!(e0.mul(&ctx, &g0), g0.right_mul_e(0));
    }

    #[test]
    fn crossing_relations() {
        for d in [2u32, 3] {
            let ctx = YCtx::generic(d);
            let n = 3;
            let g0 = gen_g(&ctx, n, 0);
            let g1 = gen_g(&ctx, n, 1);
            // braid relation
            assert_eq!(
                g0.mul(&ctx, &g1).mul(&ctx, &g0),
                g1.mul(&ctx, &g0).mul(&ctx, &g1)
            );
            // quadratic relation g^2 = 1 + (u-1) e (1 + g)
            let sq = g0.mul(&ctx, &g0);
            let um1 = ctx.u.sub(&ctx.scalar_one());
            let one = YElem::one(&ctx, n);
            let e0 = one.right_mul_e(0);
            let expect = one
                .add(&e0.scale(&um1))
                .add(&e0.right_mul_g(&ctx, 0, false).scale(&um1));
            assert_eq!(sq, expect);
            // inverses
            assert_eq!(
                g0.right_mul_g(&ctx, 0, true),
                YElem::one(&ctx, n),
                "g g^-1 = 1 at d={d}"
            );
            // g_i t_i = t_{i+1} g_i
            let lhs = g0.right_mul_t_pow(0, 1);
            let rhs = gen_t(&ctx, n, 1).right_mul_g(&ctx, 0, false);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn f_crossing_relations() {
        // with v present, f f^{-1} = 1 and f satisfies the braid relation
        let vars = VarSet::new(["v", "z"]);
        let v = RatFunc::<BigRational>::var(&vars, "v").unwrap();
        let z = RatFunc::var(&vars, "z").unwrap();
        let u = v.mul(&v);
        let ctx = YCtx {
            d: 2,
            vars: vars.clone(),
            u_inv: u.inv().unwrap(),
            u,
            z,
            x: vec![
                RatFunc::from_poly(LaurentPoly::one(&vars)),
                RatFunc::ratio(&vars, 1, 3),
            ],
            v: Some((v.clone(), v.inv().unwrap())),
        };
        let f0 = YElem::one(&ctx, 3).right_mul_f(&ctx, 0, false);
        assert_eq!(f0.right_mul_f(&ctx, 0, true), YElem::one(&ctx, 3));
        // f also satisfies the braid relation
        let f1 = YElem::one(&ctx, 3).right_mul_f(&ctx, 1, false);
        let lhs = f0.mul(&ctx, &f1);
        let lhs = lhs.right_mul_f(&ctx, 0, false);
        let rhs = f1.mul(&ctx, &f0);
        let rhs = rhs.right_mul_f(&ctx, 1, false);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn associativity_fuzz() {
        let ctx = YCtx::generic(2);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..8 {
            let a = random_elem(&ctx, &mut rng, 3);
            let b = random_elem(&ctx, &mut rng, 3);
            let c = random_elem(&ctx, &mut rng, 3);
            assert_eq!(a.mul(&ctx, &b).mul(&ctx, &c), a.mul(&ctx, &b.mul(&ctx, &c)));
        }
    }

    #[test]
    fn trace_base_values() {
        let ctx = YCtx::generic(3);
        // tr(t_0^k) = x_k on one strand
        for k in 0..3u8 {
            let e = YElem::basis(3, key(&[k], &Perm::identity(1)), ctx.scalar_one());
            assert_eq!(y_trace(&ctx, &e), ctx.x[k as usize]);
        }
        // tr(1) = 1 at higher rank
        for n in 1..4 {
            assert_eq!(y_trace(&ctx, &YElem::one(&ctx, n)), ctx.scalar_one());
        }
        // tr(g_0) = z, tr(e_0) = E
        assert_eq!(y_trace(&ctx, &gen_g(&ctx, 2, 0)), ctx.z);
        assert_eq!(
            y_trace(&ctx, &YElem::one(&ctx, 2).right_mul_e(0)),
            ctx.e_value()
        );
    }

    #[test]
    fn trace_markov_rules() {
        // tr(x g_{n-1}) = z tr(x) and tr(x t_{n-1}^m) = x_m tr(x) for lower x
        let ctx = YCtx::generic(2);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for n in 2..=3usize {
            for _ in 0..8 {
                let x = random_elem(&ctx, &mut rng, n - 1);
                let mut lifted = YElem::zero(ctx.d, n);
                for (k, c) in x.terms() {
                    lifted.add_term(
                        YKey {
                            a: {
                                let mut a = k.a.clone();
                                a.push(0);
                                a
                            },
                            w: k.w.extend(n),
                        },
                        c.clone(),
                    );
                }
                let tr_x = y_trace(&ctx, &x);
                assert_eq!(
                    y_trace(&ctx, &lifted.right_mul_g(&ctx, n - 2, false)),
                    ctx.z.mul(&tr_x)
                );
                for m in 0..ctx.d as i64 {
                    assert_eq!(
                        y_trace(&ctx, &lifted.right_mul_t_pow(n - 1, m)),
                        ctx.x[m as usize].mul(&tr_x)
                    );
                }
            }
        }
    }

    #[test]
    fn trace_is_a_trace() {
        let ctx = YCtx::generic(2);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..6 {
            let a = random_elem(&ctx, &mut rng, 3);
            let b = random_elem(&ctx, &mut rng, 3);
            assert_eq!(
                y_trace(&ctx, &a.mul(&ctx, &b)),
                y_trace(&ctx, &b.mul(&ctx, &a))
            );
        }
    }

    #[test]
    fn esystem_solutions_satisfy_the_system() {
        // E^{(k)} = x_k E for every nonempty S, d up to 4
        for d in 1..=4u32 {
            for mask in 1u32..(1 << d) {
                let s: Vec<u32> = (0..d).filter(|k| mask & (1 << k) != 0).collect();
                let x = esystem_values(d, &s);
                assert_eq!(x[0], Cyclotomic::one());
                let e_of = |m: i64| {
                    let mut acc = Cyclotomic::zero();
                    for t in 0..d as i64 {
                        let a = &x[((m + t).rem_euclid(d as i64)) as usize];
                        let b = &x[((-t).rem_euclid(d as i64)) as usize];
                        acc = acc.add(&a.mul(b));
                    }
                    acc.mul(&Cyclotomic::from_ratio(1, d as i64))
                };
                let e0 = e_of(0);
                assert_eq!(
                    e0,
                    Cyclotomic::from_ratio(1, s.len() as i64),
                    "E = 1/|S| for d={d} S={s:?}"
                );
                for k in 0..d as i64 {
                    assert_eq!(e_of(k), x[k as usize].mul(&e0), "d={d} S={s:?} k={k}");
                }
            }
        }
        // the full subset gives the plain Hecke specialization x = (1,0,..)
        let x = esystem_values(3, &[0, 1, 2]);
        assert_eq!(x[1], Cyclotomic::zero());
        assert_eq!(x[2], Cyclotomic::zero());
    }

    #[test]
    fn generic_x_fails_the_esystem_rule() {
        // with x_1 left free (d = 2), tr(α e_1) = E tr(α) must fail for
        // some α — the E-system is a genuine constraint, not an identity
        let ctx = YCtx::generic(2);
        let n = 2;
        let perms = Perm::enumerate(n);
        let mut found = false;
        'search: for w in &perms {
            for a0 in 0..2u8 {
                for a1 in 0..2u8 {
                    let alpha = YElem::basis(2, key(&[a0, a1], w), ctx.scalar_one());
                    let lifted = {
                        let mut l = YElem::zero(2, n + 1);
                        for (k, c) in alpha.terms() {
                            let mut a = k.a.clone();
                            a.push(0);
                            l.add_term(
                                YKey {
                                    a,
                                    w: k.w.extend(n + 1),
                                },
                                c.clone(),
                            );
                        }
                        l
                    };
                    let lhs = y_trace(&ctx, &lifted.right_mul_e(n - 1 + 1 - 1));
                    let rhs = ctx.e_value().mul(&y_trace(&ctx, &alpha));
                    if lhs != rhs {
                        found = true;
                        break 'search;
                    }
                }
            }
        }
        assert!(found, "free x_1 should violate tr(α e_n) = E tr(α)");
    }

    #[test]
    fn dimension_of_y23() {
        // d^n n! = 2^3 · 6 = 48 basis keys, and products stay inside
        let ctx = YCtx::generic(2);
        let mut all = YElem::zero(2, 3);
        for w in Perm::enumerate(3) {
            for bits in 0..8u8 {
                let a = [bits & 1, (bits >> 1) & 1, (bits >> 2) & 1];
                all.add_term(key(&a, &w), ctx.scalar_one());
            }
        }
        assert_eq!(all.num_terms(), 48);
        let sq = all.mul(&ctx, &all);
        assert!(sq.num_terms() <= 48);
    }

    #[test]
    fn delta_theta_unknot_normalization() {
        for (d, s) in [
            (1u32, vec![0u32]),
            (2, vec![0]),
            (2, vec![0, 1]),
            (3, vec![0, 2]),
        ] {
            for n in 1..=3usize {
                let w = BraidWord::new(n, (0..n.saturating_sub(1)).map(|k| (k, false)).collect());
                let dv = delta(&w, d, &s);
                assert!(dv.im().is_zero(), "unknot Δ has no radical part");
                assert_eq!(dv.re(), &YCtx::esystem(d, &s).scalar_one());
                let tv = theta(&w, d, &s);
                assert!(tv.im().is_zero());
                assert_eq!(tv.re(), &YCtx::esystem_sqrt(d, &s).scalar_one());
            }
        }
    }

    #[test]
    fn delta_at_d1_is_homflypt() {
        use crate::hecke;
        let hctx = hecke::HeckeCtx::standard();
        for letters in [vec![1, 1, 1], vec![1, 1], vec![-1, -1], vec![1, -2, 1, -2]] {
            let max = letters
                .iter()
                .map(|v: &i32| v.unsigned_abs() as usize)
                .max()
                .unwrap();
            let w = BraidWord::from_signed(max + 1, letters);
            let x = hecke::homflypt(&hctx, &w);
            let dv = delta(&w, 1, &[0]);
            // compare through the rational coefficient strings (one is over
            // BigRational, the other over Cyclotomic with d = 1)
            assert_eq!(dv.re().to_string(), x.re().to_string());
            assert_eq!(dv.im().to_string(), x.im().to_string());
            assert_eq!(dv.rad().to_string(), x.rad().to_string());
        }
    }
}
