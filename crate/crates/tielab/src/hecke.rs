//! The Iwahori–Hecke algebra H_n(u), its Markov trace, and the Homflypt
//! polynomial.
//!
//! Elements are stored on the permutation basis {T_w}. The defining
//! relations (h_i = T_{s_i}):
//!
//!   h_i^2 = (u - 1) h_i + u,    h_i h_j h_i = h_j h_i h_j (|i-j| = 1),
//!   h_i h_j = h_j h_i (|i-j| >= 2)
//!
//! drive the right-multiplication rule: T_w h_i = T_{w s_i} on an ascent,
//! and u T_{w s_i} + (u-1) T_w on a descent. The trace is the unique
//! family tr_n with tr(1) = 1, tr(x h_{n-1} y) = z tr(x y) for lower x, y.
//!
//! The braid-letter square root: a crossing maps to ω h_i with ω^2 = λ =
//! (1 - u + z)/(uz). Engines track ω by letter parity instead of carrying
//! the extension ring, so the trace itself stays rational in u, z.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::BigRational;

use crate::braid::BraidWord;
use crate::perm::Perm;
use crate::scalar::{Coeff, LaurentPoly, QuadExt, RatFunc, VarSet};

#[derive(Clone, Debug)]
pub struct HeckeCtx<C: Coeff> {
    vars: Arc<VarSet>,
    pub u: RatFunc<C>,
    pub u_inv: RatFunc<C>,
    pub z: RatFunc<C>,
}

impl HeckeCtx<BigRational> {
    /// Generic parameters: u, z as free variables.
    pub fn standard() -> Self {
        let vars = VarSet::new(["u", "z"]);
        let u = RatFunc::var(&vars, "u").unwrap();
        let z = RatFunc::var(&vars, "z").unwrap();
        HeckeCtx::with_values(u, z)
    }

    /// Parameters over the variables [v, z] with u = v^2, for identities
    /// that live in the square-root tower.
    pub fn sqrt_u() -> Self {
        let vars = VarSet::new(["v", "z"]);
        let v = RatFunc::<BigRational>::var(&vars, "v").unwrap();
        let z = RatFunc::var(&vars, "z").unwrap();
        HeckeCtx::with_values(v.mul(&v), z)
    }
}

impl<C: Coeff> HeckeCtx<C> {
    /// Arbitrary parameter values (u must be invertible).
    pub fn with_values(u: RatFunc<C>, z: RatFunc<C>) -> Self {
        let u_inv = u.inv().expect("u must be invertible");
        HeckeCtx {
            vars: u.num().vars().clone(),
            u,
            u_inv,
            z,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn scalar_one(&self) -> RatFunc<C> {
        RatFunc::from_poly(LaurentPoly::one(&self.vars))
    }

    /// λ = (1 - u + z)/(uz), the square of the crossing normalization ω.
    pub fn lambda(&self) -> RatFunc<C> {
        let one = self.scalar_one();
        one.sub(&self.u)
            .add(&self.z)
            .div(&self.u.mul(&self.z))
            .expect("u z invertible")
    }
}

/// An element of H_n on the T_w basis.
#[derive(Clone, PartialEq, Debug)]
pub struct HeckeElem<C: Coeff> {
    n: usize,
    terms: BTreeMap<Perm, RatFunc<C>>,
}

impl<C: Coeff> HeckeElem<C> {
    pub fn zero(n: usize) -> Self {
        HeckeElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &HeckeCtx<C>, n: usize) -> Self {
        Self::basis(Perm::identity(n), ctx.scalar_one())
    }

    pub fn basis(w: Perm, coeff: RatFunc<C>) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(w.clone(), coeff);
        }
        HeckeElem { n: w.n(), terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &RatFunc<C>)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, w: &Perm) -> Option<&RatFunc<C>> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: Perm, c: RatFunc<C>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &HeckeElem<C>) -> HeckeElem<C> {
        assert_eq!(self.n, other.n, "mismatched strand counts");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElem<C>) -> HeckeElem<C> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: &RatFunc<C>) -> HeckeElem<C> {
        if s.is_zero() {
            return HeckeElem::zero(self.n);
        }
        HeckeElem {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Right multiplication by h_i (or its inverse).
    pub fn right_mul_gen(&self, ctx: &HeckeCtx<C>, i: usize, inverse: bool) -> HeckeElem<C> {
        assert!(
            i + 1 < self.n,
            "generator {i} out of range for n={}",
            self.n
        );
        if inverse {
            // x h_i^{-1} = u^{-1} (x h_i) + (u^{-1} - 1) x
            let pos = self.right_mul_gen(ctx, i, false);
            let shift = ctx.u_inv.sub(&ctx.scalar_one());
            return pos.scale(&ctx.u_inv).add(&self.scale(&shift));
        }
        let mut out = HeckeElem::zero(self.n);
        let u_minus_1 = ctx.u.sub(&ctx.scalar_one());
        for (w, c) in &self.terms {
            let ws = w.right_mul_s(i);
            if w.right_ascent(i) {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(ws, ctx.u.mul(c));
                out.add_term(w.clone(), u_minus_1.mul(c));
            }
        }
        out
    }

    /// Right multiplication by T_w, by folding a reduced word of w.
    pub fn right_mul_basis(&self, ctx: &HeckeCtx<C>, w: &Perm) -> HeckeElem<C> {
        let mut acc = self.clone();
        for i in w.reduced_word() {
            acc = acc.right_mul_gen(ctx, i, false);
        }
        acc
    }

    pub fn mul(&self, ctx: &HeckeCtx<C>, other: &HeckeElem<C>) -> HeckeElem<C> {
        assert_eq!(self.n, other.n, "mismatched strand counts");
        let mut out = HeckeElem::zero(self.n);
        for (w, c) in &other.terms {
            out = out.add(&self.right_mul_basis(ctx, w).scale(c));
        }
        out
    }
}

impl<C: Coeff> fmt::Display for HeckeElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*T{w}")?;
        }
        Ok(())
    }
}

/// π(word) with the ω-normalization stripped: each letter σ_i^± maps to
/// h_i^±. The caller accounts for one factor of ω per positive letter and
/// ω^{-1} per negative letter.
pub fn braid_image<C: Coeff>(ctx: &HeckeCtx<C>, word: &BraidWord) -> HeckeElem<C> {
    let mut acc = HeckeElem::one(ctx, word.n());
    for &(k, inv) in word.letters() {
        acc = acc.right_mul_gen(ctx, k, inv);
    }
    acc
}

/// The Markov trace tr_n, computed by peeling the top strand.
pub fn ocneanu_trace<C: Coeff>(ctx: &HeckeCtx<C>, elem: &HeckeElem<C>) -> RatFunc<C> {
    let n = elem.n();
    if n == 1 {
        let mut acc = RatFunc::from_poly(LaurentPoly::zero(ctx.vars()));
        for (_, c) in elem.terms() {
            acc = acc.add(c);
        }
        return acc;
    }
    let top = n - 1;
    let mut lower = HeckeElem::zero(n - 1);
    let mut moving: Vec<(Perm, RatFunc<C>)> = Vec::new();
    for (w, c) in elem.terms() {
        if w.fixes(top) {
            lower.add_term(w.restrict(n - 1), c.clone());
        } else {
            moving.push((w.clone(), c.clone()));
        }
    }
    // T_w = T_{w'} h_{top-1} (h_{top-2} .. h_{i0}) with w' fixing the top
    // strand, so the trace rule trades the h_{top-1} for a factor z and
    // leaves a product inside H_{n-1}.
    let ctx_ref = &ctx;
    let folded = crate::map_reduce(
        moving,
        move |(w, c)| {
            let i0 = w.preimage(top);
            // one-line of w' = w with position i0 deleted and the top fixed
            let mut images: Vec<usize> = Vec::with_capacity(n - 1);
            for k in 0..n {
                if k != i0 {
                    images.push(w.apply(k));
                }
            }
            let w_prime = Perm::from_images(images);
            let mut acc = HeckeElem::basis(w_prime, c.mul(&ctx_ref.z));
            for i in (i0..top - 1).rev() {
                acc = acc.right_mul_gen(ctx_ref, i, false);
            }
            acc
        },
        || HeckeElem::zero(n - 1),
        |a, b| a.add(&b),
    );
    ocneanu_trace(ctx, &lower.add(&folded))
}

/// The Homflypt polynomial of the closure of `word`, as an element of the
/// quadratic tower over ℚ(u, z) with ω = sqrt(λ).
pub fn homflypt<C: Coeff>(ctx: &HeckeCtx<C>, word: &BraidWord) -> QuadExt<C> {
    let n = word.n() as i64;
    let e = word.exponent_sum();
    let tr = ocneanu_trace(ctx, &braid_image(ctx, word));
    let z_pow = ctx.z.pow(1 - n).expect("z is invertible");
    QuadExt::omega_pow(tr.mul(&z_pow), ctx.lambda(), e - n + 1).expect("λ is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = BigRational;

    fn ctx() -> HeckeCtx<Q> {
        HeckeCtx::standard()
    }

    fn gen(ctx: &HeckeCtx<Q>, n: usize, i: usize) -> HeckeElem<Q> {
        HeckeElem::one(ctx, n).right_mul_gen(ctx, i, false)
    }

    fn random_elem(ctx: &HeckeCtx<Q>, rng: &mut ChaCha8Rng, n: usize) -> HeckeElem<Q> {
        let perms = Perm::enumerate(n);
        let mut out = HeckeElem::zero(n);
        for _ in 0..rng.random_range(1..4) {
            let w = perms[rng.random_range(0..perms.len())].clone();
            let c = RatFunc::ratio(
                ctx.vars(),
                rng.random_range(-3..=3),
                rng.random_range(1..=2),
            );
            out.add_term(w, c);
        }
        out
    }

    #[test]
    fn quadratic_and_braid_relations() {
        let c = ctx();
        let h1 = gen(&c, 3, 0);
        let h2 = gen(&c, 3, 1);
        // h^2 = (u-1) h + u
        let sq = h1.mul(&c, &h1);
        let expect = h1
            .scale(&c.u.sub(&c.scalar_one()))
            .add(&HeckeElem::one(&c, 3).scale(&c.u));
        assert_eq!(sq, expect);
        // braid relation
        assert_eq!(h1.mul(&c, &h2).mul(&c, &h1), h2.mul(&c, &h1).mul(&c, &h2));
        // inverse
        let inv = HeckeElem::one(&c, 3).right_mul_gen(&c, 0, true);
        assert_eq!(h1.mul(&c, &inv), HeckeElem::one(&c, 3));
        // far commutation in H_4
        let a = gen(&c, 4, 0);
        let b = gen(&c, 4, 2);
        assert_eq!(a.mul(&c, &b), b.mul(&c, &a));
    }

    #[test]
    fn associativity_fuzz() {
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let a = random_elem(&c, &mut rng, 3);
            let b = random_elem(&c, &mut rng, 3);
            let d = random_elem(&c, &mut rng, 3);
            assert_eq!(a.mul(&c, &b).mul(&c, &d), a.mul(&c, &b.mul(&c, &d)));
        }
    }

    #[test]
    fn trace_small_golden_values() {
        let c = ctx();
        // tr(h_1) = z in H_2
        assert_eq!(ocneanu_trace(&c, &gen(&c, 2, 0)), c.z);
        // tr(h_1 h_2 h_1) = z(u + (u-1)z) in H_3: expand h1h2h1 and peel
        // the top strand by hand — the h_2 costs z, leaving tr(h_1^2)
        let h1 = gen(&c, 3, 0);
        let h2 = gen(&c, 3, 1);
        let prod = h1.mul(&c, &h2).mul(&c, &h1);
        let expect = c.z.mul(&c.u.add(&c.u.sub(&c.scalar_one()).mul(&c.z)));
        assert_eq!(ocneanu_trace(&c, &prod), expect);
        // tr(1) = 1 at every rank
        for n in 1..5 {
            assert_eq!(ocneanu_trace(&c, &HeckeElem::one(&c, n)), c.scalar_one());
        }
    }

    #[test]
    fn trace_markov_rule() {
        // tr(x h_{n-1}) = z tr(x) for x from the lower algebra
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 2..=4usize {
            for _ in 0..10 {
                let x = random_elem(&c, &mut rng, n - 1);
                let mut lifted = HeckeElem::zero(n);
                for (w, co) in x.terms() {
                    lifted.add_term(w.extend(n), co.clone());
                }
                let xh = lifted.right_mul_gen(&c, n - 2, false);
                assert_eq!(ocneanu_trace(&c, &xh), c.z.mul(&ocneanu_trace(&c, &x)));
            }
        }
    }

    #[test]
    fn trace_is_a_trace() {
        // tr(ab) = tr(ba)
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let a = random_elem(&c, &mut rng, 3);
            let b = random_elem(&c, &mut rng, 3);
            assert_eq!(
                ocneanu_trace(&c, &a.mul(&c, &b)),
                ocneanu_trace(&c, &b.mul(&c, &a))
            );
        }
    }

    #[test]
    fn homflypt_unknots_are_one() {
        let c = ctx();
        let one = QuadExt::from_rat(c.scalar_one(), c.lambda());
        // 1-strand empty braid
        assert_eq!(homflypt(&c, &BraidWord::new(1, vec![])), one);
        // sigma_1 sigma_2 .. sigma_{n-1} closes to the unknot
        for n in 2..=5 {
            let w = BraidWord::new(n, (0..n - 1).map(|k| (k, false)).collect());
            assert_eq!(homflypt(&c, &w), one);
            assert_eq!(homflypt(&c, &w.mirror()), one);
        }
    }

    #[test]
    fn homflypt_trefoil_golden() {
        // tr(h_1^3) = (u^2-u+1) z + u(u-1), exponent parity even:
        // X = z^{-1} λ ((u^2-u+1) z + u(u-1))
        let c = ctx();
        let trefoil = BraidWord::from_signed(2, [1, 1, 1]);
        let x = homflypt(&c, &trefoil);
        let u2 = c.u.mul(&c.u);
        let poly = u2
            .sub(&c.u)
            .add(&c.scalar_one())
            .mul(&c.z)
            .add(&c.u.mul(&c.u.sub(&c.scalar_one())));
        let expect = QuadExt::from_rat(c.lambda().mul(&poly).div(&c.z).unwrap(), c.lambda());
        assert_eq!(x, expect);
    }

    #[test]
    fn homflypt_distinguishes_mirror_trefoils() {
        let c = ctx();
        let t = BraidWord::from_signed(2, [1, 1, 1]);
        assert_ne!(homflypt(&c, &t), homflypt(&c, &t.mirror()));
    }
}
