//! Kauffman bracket state sum on planar diagram codes: the generic
//! three-variable bracket, its one-variable specialization, the writhe
//! normalization f(L), and the Jones polynomial, plus braid-closure
//! diagrams and mirror images.
//!
//! A diagram is stored as a PD code: one record `X[a,b,c,d]` per crossing
//! listing the four incident arc labels counterclockwise starting at the
//! incoming under-arc, plus a count of crossingless circles. With that
//! slot convention the A-smoothing joins (a,d) and (b,c), the B-smoothing
//! joins (a,b) and (c,d); this is pinned by the golden values
//! ⟨Hopf⟩ = zA² + 2AB + zB² and ⟨positive kink⟩ = −A³⟨arc⟩.
//!
//! Each of the 2^n states contributes (product of marks)·z^{loops−1},
//! where loops are counted by disjoint-set merging of arc labels; the
//! specialization substitutes B = A⁻¹ and z = −A²−A⁻². States are
//! independent, so the sum is evaluated in parallel chunks.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;
use smallvec::smallvec;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::scalar::poly::Exp;
use crate::scalar::{big_ratio, LaurentPoly, VarSet};

/// Planar diagram code with optional orientation data (crossing signs).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    signs: Option<Vec<i8>>,
    free_loops: usize,
}

impl PdCode {
    pub fn new(
        crossings: Vec<[u32; 4]>,
        signs: Option<Vec<i8>>,
        free_loops: usize,
    ) -> Result<Self> {
        if let Some(s) = &signs {
            if s.len() != crossings.len() {
                return Err(Error::InconsistentDiagram(format!(
                    "{} signs for {} crossings",
                    s.len(),
                    crossings.len()
                )));
            }
            if let Some(bad) = s.iter().find(|&&v| v != 1 && v != -1) {
                return Err(Error::InconsistentDiagram(format!(
                    "crossing sign {bad} is not ±1"
                )));
            }
        }
        let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &crossings {
            for &l in x {
                *seen.entry(l).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = seen.iter().find(|(_, &c)| c != 2) {
            return Err(Error::InconsistentDiagram(format!(
                "arc label {label} occurs {count} times (want exactly 2)"
            )));
        }
        Ok(PdCode {
            crossings,
            signs,
            free_loops,
        })
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_oriented(&self) -> bool {
        self.signs.is_some()
    }

    pub fn signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    pub fn writhe(&self) -> Result<i64> {
        let signs = self
            .signs
            .as_ref()
            .ok_or_else(|| Error::Unoriented("writhe needs crossing signs".into()))?;
        Ok(signs.iter().map(|&s| s as i64).sum())
    }

    /// Exchange over- and under-strand at every crossing: rotate each
    /// record by one slot and flip its sign. On oriented diagrams the
    /// rotation direction is forced by keeping slot `a` on an incoming
    /// arc (forward for positive crossings, backward for negative ones),
    /// which makes the map an involution; it negates the writhe and maps
    /// the bracket A ↔ A⁻¹.
    pub fn mirror(&self) -> PdCode {
        let crossings = match &self.signs {
            Some(s) => self
                .crossings
                .iter()
                .zip(s)
                .map(
                    |(&[a, b, c, d], &sign)| {
                        if sign > 0 {
                            [b, c, d, a]
                        } else {
                            [d, a, b, c]
                        }
                    },
                )
                .collect(),
            None => self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| [b, c, d, a])
                .collect(),
        };
        PdCode {
            crossings,
            signs: self.signs.as_ref().map(|s| s.iter().map(|&v| -v).collect()),
            free_loops: self.free_loops,
        }
    }

    /// Parse the text form: whitespace-separated `X[a,b,c,d]` records,
    /// an optional `O*k` for k crossingless circles, and an optional
    /// `or=+1,-1,…` giving one sign per crossing.
    pub fn parse(input: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        let mut signs: Option<Vec<i8>> = None;
        let mut free_loops = 0usize;
        for tok in input.split_whitespace() {
            if let Some(rest) = tok.strip_prefix("X[") {
                let body = rest
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Parse(format!("unterminated record `{tok}`")))?;
                let labels: Vec<u32> = body
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad arc label `{p}` in `{tok}`")))
                    })
                    .collect::<Result<_>>()?;
                let [a, b, c, d] = labels[..] else {
                    return Err(Error::Parse(format!(
                        "`{tok}` has {} slots (want 4)",
                        labels.len()
                    )));
                };
                crossings.push([a, b, c, d]);
            } else if let Some(rest) = tok.strip_prefix("O*") {
                free_loops += rest
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad loop count `{tok}`")))?;
            } else if tok == "O" {
                free_loops += 1;
            } else if let Some(rest) = tok.strip_prefix("or=") {
                let parsed: Vec<i8> = rest
                    .split(',')
                    .map(|p| match p.trim() {
                        "+1" | "1" | "+" => Ok(1),
                        "-1" | "-" => Ok(-1),
                        other => Err(Error::Parse(format!("bad crossing sign `{other}`"))),
                    })
                    .collect::<Result<_>>()?;
                signs = Some(parsed);
            } else {
                return Err(Error::Parse(format!("unrecognized token `{tok}`")));
            }
        }
        PdCode::new(crossings, signs, free_loops)
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.crossings {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "X[{},{},{},{}]", x[0], x[1], x[2], x[3])?;
            first = false;
        }
        if self.free_loops > 0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "O*{}", self.free_loops)?;
            first = false;
        }
        if let Some(s) = &self.signs {
            if !s.is_empty() {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "or=")?;
                for (i, v) in s.iter().enumerate() {
                    write!(f, "{}{:+}", if i > 0 { "," } else { "" }, v)?;
                }
            }
        }
        if first {
            write!(f, "O*0")?;
        }
        Ok(())
    }
}

/// Diagram of the braid closure: arcs thread down the strands, one
/// crossing per letter, and the closure identifies each strand's end with
/// its start. Strands no letter touches close into free loops.
pub fn braid_to_pd(word: &BraidWord) -> PdCode {
    let n = word.n();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    let mut next = n as u32;
    let mut crossings = Vec::with_capacity(word.letters().len());
    let mut signs = Vec::with_capacity(word.letters().len());
    for &(k, inv) in word.letters() {
        let (li, ri) = (cur[k], cur[k + 1]);
        let (lo, ro) = (next, next + 1);
        next += 2;
        // counterclockwise from the incoming under-arc (strands run down)
        if !inv {
            crossings.push([ri, li, lo, ro]);
            signs.push(1);
        } else {
            crossings.push([li, lo, ro, ri]);
            signs.push(-1);
        }
        cur[k] = lo;
        cur[k + 1] = ro;
    }
    // close up: strand ends rejoin their starts
    let mut uf = Dsu::new(next as usize);
    for (j, &arc) in cur.iter().enumerate() {
        uf.union(arc as usize, j);
    }
    let mut used = vec![false; next as usize];
    for x in &mut crossings {
        for slot in x.iter_mut() {
            let r = uf.find(*slot as usize) as u32;
            *slot = r;
            used[r as usize] = true;
        }
    }
    let free_loops = (0..next as usize)
        .filter(|&i| uf.find(i) == i && !used[i])
        .count();
    // compact the surviving labels
    let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
    for x in &mut crossings {
        for slot in x.iter_mut() {
            let fresh = relabel.len() as u32;
            *slot = *relabel.entry(*slot).or_insert(fresh);
        }
    }
    PdCode {
        crossings,
        signs: Some(signs),
        free_loops,
    }
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let g = self.parent[self.parent[x] as usize];
            self.parent[x] = g;
            x = g as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb as u32;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BracketMode {
    Generic,
    Specialized,
}

/// ⟨D⟩ over the variables [A, B, z]: Σ over all 2^n smoothing states of
/// A^{#A-marks} B^{#B-marks} z^{loops − 1}.
pub fn bracket_generic(pd: &PdCode) -> Result<LaurentPoly<BigRational>> {
    state_sum(pd, BracketMode::Generic)
}

/// ⟨D⟩ with B = A⁻¹ and z = −A² − A⁻², over the single variable [A].
pub fn bracket_specialized(pd: &PdCode) -> Result<LaurentPoly<BigRational>> {
    state_sum(pd, BracketMode::Specialized)
}

fn state_sum(pd: &PdCode, mode: BracketMode) -> Result<LaurentPoly<BigRational>> {
    let nx = pd.num_crossings();
    if nx > 62 {
        return Err(Error::LimitExceeded(format!(
            "{nx} crossings exceeds the state-sum ceiling of 62"
        )));
    }
    let vars = match mode {
        BracketMode::Generic => VarSet::new(["A", "B", "z"]),
        BracketMode::Specialized => VarSet::new(["A"]),
    };
    // dense arc indices
    let mut index: BTreeMap<u32, usize> = BTreeMap::new();
    for x in pd.crossings() {
        for &l in x {
            let fresh = index.len();
            index.entry(l).or_insert(fresh);
        }
    }
    let arcs = index.len();
    let crossings: Vec<[usize; 4]> = pd
        .crossings()
        .iter()
        .map(|x| [index[&x[0]], index[&x[1]], index[&x[2]], index[&x[3]]])
        .collect();
    let free = pd.free_loops();

    // specialized mode: δ^k for δ = −A²−A⁻², k ≤ max loop count
    let delta_pows: Vec<LaurentPoly<BigRational>> = match mode {
        BracketMode::Specialized => {
            let delta = &(-&LaurentPoly::<BigRational>::monomial_units(&vars, 0, 2))
                - &LaurentPoly::monomial_units(&vars, 0, -2);
            let mut pows = vec![LaurentPoly::one(&vars)];
            for k in 1..=(nx + free + 1) {
                pows.push(&pows[k - 1] * &delta);
            }
            pows
        }
        BracketMode::Generic => Vec::new(),
    };

    let states: u64 = 1u64 << nx;
    let chunk_count = states.min(512);
    let chunk_len = states / chunk_count;
    let ranges: Vec<(u64, u64)> = (0..chunk_count)
        .map(|i| {
            let lo = i * chunk_len;
            let hi = if i + 1 == chunk_count {
                states
            } else {
                lo + chunk_len
            };
            (lo, hi)
        })
        .collect();

    if nx == 0 && free == 0 && mode == BracketMode::Specialized {
        return Err(Error::InconsistentDiagram(
            "empty diagram has no loop to normalize against".into(),
        ));
    }
    let crossings_ref = &crossings;
    let delta_ref = &delta_pows;
    let merged = crate::map_reduce(
        ranges,
        move |(lo, hi)| {
            let mut acc: BTreeMap<Exp, BigRational> = BTreeMap::new();
            let mut dsu = Dsu::new(arcs);
            for state in lo..hi {
                dsu.parent.clear();
                dsu.parent.extend(0..arcs as u32);
                let mut a_marks = 0i32;
                for (i, x) in crossings_ref.iter().enumerate() {
                    if state >> i & 1 == 0 {
                        a_marks += 1;
                        dsu.union(x[0], x[3]);
                        dsu.union(x[1], x[2]);
                    } else {
                        dsu.union(x[0], x[1]);
                        dsu.union(x[2], x[3]);
                    }
                }
                let mut loops = free;
                for i in 0..arcs {
                    if dsu.find(i) == i {
                        loops += 1;
                    }
                }
                let b_marks = nx as i32 - a_marks;
                match mode {
                    BracketMode::Generic => {
                        let exp: Exp = smallvec![a_marks, b_marks, loops as i32 - 1];
                        *acc.entry(exp).or_insert_with(|| big_ratio(0, 1)) += big_ratio(1, 1);
                    }
                    BracketMode::Specialized => {
                        let shift = a_marks - b_marks;
                        for (e, c) in delta_ref[loops - 1].terms() {
                            let exp: Exp = smallvec![e[0] + shift];
                            *acc.entry(exp).or_insert_with(|| big_ratio(0, 1)) += c.clone();
                        }
                    }
                }
            }
            acc
        },
        BTreeMap::new,
        |mut x, y| {
            for (e, c) in y {
                *x.entry(e).or_insert_with(|| big_ratio(0, 1)) += c;
            }
            x
        },
    );
    Ok(LaurentPoly::from_terms(&vars, merged))
}

/// f(L) = (−A³)^{−w(D)} ⟨D⟩ with the specialized bracket: a regular-isotopy
/// invariant made into an ambient one by cancelling the writhe.
pub fn f_invariant(pd: &PdCode) -> Result<LaurentPoly<BigRational>> {
    let w = pd.writhe()?;
    let br = bracket_specialized(pd)?;
    let vars = br.vars().clone();
    // (−A³)^{−w} = (−1)^w · A^{−3w}
    let mut factor = LaurentPoly::monomial_units(&vars, 0, (-3 * w) as i32);
    if w % 2 != 0 {
        factor = -&factor;
    }
    Ok(&br * &factor)
}

/// The Jones polynomial: A = t^{−1/4} in f(L). The result lives over a
/// quarter-scaled variable t; for knots all exponents land on integers.
pub fn jones(pd: &PdCode) -> Result<LaurentPoly<BigRational>> {
    let f = f_invariant(pd)?;
    let tvars = VarSet::with_flags([("t", true)]);
    Ok(LaurentPoly::from_terms(
        &tvars,
        f.terms().map(|(e, c)| {
            let exp: Exp = smallvec![-e[0]];
            (exp, c.clone())
        }),
    ))
}

/// Jones with t = q⁴ read off exactly: the quarter-exponents of t become
/// integer exponents of q.
pub fn jones_in_q(pd: &PdCode) -> Result<LaurentPoly<BigRational>> {
    jones(pd)?.reinterpret_quarter("t", "q")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pd(word: &[i32]) -> PdCode {
        let n = word
            .iter()
            .map(|v| v.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
            + 1;
        braid_to_pd(&BraidWord::from_signed(n, word.iter().copied()))
    }

    fn poly_a(pairs: &[(i32, i64)]) -> LaurentPoly<BigRational> {
        let vars = VarSet::new(["A"]);
        LaurentPoly::from_terms(
            &vars,
            pairs
                .iter()
                .map(|&(e, c)| (smallvec![e] as Exp, big_ratio(c, 1))),
        )
    }

    fn poly_t(pairs: &[(i32, i64)]) -> LaurentPoly<BigRational> {
        let vars = VarSet::with_flags([("t", true)]);
        LaurentPoly::from_terms(
            &vars,
            pairs
                .iter()
                .map(|&(e, c)| (smallvec![4 * e] as Exp, big_ratio(c, 1))),
        )
    }

    #[test]
    fn unknot_and_free_loops() {
        let empty = PdCode::new(vec![], Some(vec![]), 1).unwrap();
        assert!(bracket_generic(&empty).unwrap().is_one());
        assert!(f_invariant(&empty).unwrap().is_one());
        // ⟨◯ ⊔ D⟩ = z ⟨D⟩ in generic mode
        let two = PdCode::new(vec![], Some(vec![]), 2).unwrap();
        let z = LaurentPoly::<BigRational>::var(&VarSet::new(["A", "B", "z"]), "z").unwrap();
        assert_eq!(bracket_generic(&two).unwrap(), z);
    }

    #[test]
    fn hopf_generic_golden() {
        let hopf = pd(&[1, 1]);
        let vars = VarSet::new(["A", "B", "z"]);
        let term =
            |ea: i32, eb: i32, ez: i32, c: i64| (smallvec![ea, eb, ez] as Exp, big_ratio(c, 1));
        let expect = LaurentPoly::from_terms(
            &vars,
            [term(2, 0, 1, 1), term(1, 1, 0, 2), term(0, 2, 1, 1)],
        );
        assert_eq!(bracket_generic(&hopf).unwrap(), expect);
        assert_eq!(
            bracket_specialized(&hopf).unwrap(),
            poly_a(&[(4, -1), (-4, -1)])
        );
    }

    #[test]
    fn kink_brackets() {
        // positive kink: ⟨D⟩ = −A³; negative: −A⁻³; f stays 1
        let plus = pd(&[1]);
        assert_eq!(bracket_specialized(&plus).unwrap(), poly_a(&[(3, -1)]));
        assert!(f_invariant(&plus).unwrap().is_one());
        let neg = pd(&[-1]);
        assert_eq!(bracket_specialized(&neg).unwrap(), poly_a(&[(-3, -1)]));
        assert!(f_invariant(&neg).unwrap().is_one());
    }

    #[test]
    fn trefoil_goldens() {
        let tre = pd(&[1, 1, 1]);
        assert_eq!(tre.writhe().unwrap(), 3);
        assert_eq!(
            bracket_specialized(&tre).unwrap(),
            poly_a(&[(5, -1), (-3, -1), (-7, 1)])
        );
        assert_eq!(
            f_invariant(&tre).unwrap(),
            poly_a(&[(-4, 1), (-12, 1), (-16, -1)])
        );
        assert_eq!(jones(&tre).unwrap(), poly_t(&[(1, 1), (3, 1), (4, -1)]));
        // cheirality: the mirror has the reflected polynomial, so they differ
        let mir = tre.mirror();
        assert_eq!(mir.writhe().unwrap(), -3);
        assert_eq!(
            f_invariant(&mir).unwrap(),
            poly_a(&[(4, 1), (12, 1), (16, -1)])
        );
        assert_ne!(f_invariant(&tre).unwrap(), f_invariant(&mir).unwrap());
    }

    #[test]
    fn figure_eight_amphicheiral() {
        let fig8 = pd(&[1, -2, 1, -2]);
        let j = jones(&fig8).unwrap();
        assert_eq!(j, poly_t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
        assert_eq!(j, jones(&fig8.mirror()).unwrap());
    }

    #[test]
    fn mirror_structure() {
        let tre = pd(&[1, 1, 1]);
        assert_eq!(tre.mirror().mirror(), tre);
        // bracket of the mirror = bracket with A ↔ A⁻¹
        let b = bracket_specialized(&tre).unwrap();
        let bm = bracket_specialized(&tre.mirror()).unwrap();
        let vars = b.vars().clone();
        let flipped = LaurentPoly::from_terms(
            &vars,
            b.terms().map(|(e, c)| {
                let exp: Exp = smallvec![-e[0]];
                (exp, c.clone())
            }),
        );
        assert_eq!(bm, flipped);
    }

    #[test]
    fn braid_to_pd_shapes() {
        let empty = braid_to_pd(&BraidWord::new(1, vec![]));
        assert_eq!(empty.num_crossings(), 0);
        assert_eq!(empty.free_loops(), 1);
        let sigma = pd(&[1]);
        assert_eq!(sigma.num_crossings(), 1);
        assert_eq!(sigma.free_loops(), 0);
        // untouched strand becomes a free loop
        let loose = braid_to_pd(&BraidWord::from_signed(3, [1]));
        assert_eq!(loose.free_loops(), 1);
        assert_eq!(pd(&[1, -1]).writhe().unwrap(), 0);
    }

    #[test]
    fn generic_specializes_to_specialized() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let avars = VarSet::new(["A"]);
        let a_inv = LaurentPoly::<BigRational>::monomial_units(&avars, 0, -1);
        let delta = &(-&LaurentPoly::monomial_units(&avars, 0, 2))
            - &LaurentPoly::monomial_units(&avars, 0, -2);
        for _ in 0..12 {
            let len = rng.random_range(0..=8);
            let n = rng.random_range(2..=4);
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let k = rng.random_range(1..n as i32);
                    if rng.random_bool(0.5) {
                        k
                    } else {
                        -k
                    }
                })
                .collect();
            let code = braid_to_pd(&BraidWord::from_signed(n, letters));
            let gen = bracket_generic(&code).unwrap();
            let direct = bracket_specialized(&code).unwrap();
            // substitute B = A⁻¹, z = δ into the generic value
            let mut acc = LaurentPoly::zero(&avars);
            for (e, c) in gen.terms() {
                let mut term = LaurentPoly::constant(&avars, c.clone());
                let mut mono = LaurentPoly::monomial_units(&avars, 0, e[0]);
                for _ in 0..e[1] {
                    mono = &mono * &a_inv;
                }
                term = &term * &mono;
                let zexp = e[2];
                if zexp >= 0 {
                    term = &term * &delta.pow(zexp as u32);
                } else {
                    panic!("negative loop exponent");
                }
                acc = &acc + &term;
            }
            assert_eq!(acc, direct);
        }
    }

    #[test]
    fn state_count_is_two_to_the_n() {
        // the generic bracket's total coefficient mass at A=B=z=1 … states
        // appear once each: sum of coefficients = 2^n
        let code = pd(&[1, 2, 1, 2]);
        let gen = bracket_generic(&code).unwrap();
        let mut total = big_ratio(0, 1);
        for (_, c) in gen.terms() {
            total += c.clone();
        }
        assert_eq!(total, big_ratio(16, 1));
    }

    #[test]
    fn pd_text_round_trip() {
        let tre = pd(&[1, 1, 1]);
        let text = tre.to_string();
        assert_eq!(PdCode::parse(&text).unwrap(), tre);
        let with_loops = PdCode::new(vec![], None, 3).unwrap();
        assert_eq!(PdCode::parse(&with_loops.to_string()).unwrap(), with_loops);
        // inconsistent labels rejected
        assert!(PdCode::parse("X[0,1,2,2] X[0,1,3,4]").is_err());
        assert!(PdCode::parse("X[0,1,2]").is_err());
        assert!(PdCode::parse("garbage").is_err());
        // unoriented diagrams can't take a writhe
        let unor = PdCode::parse("X[1,0,2,3] X[3,2,0,1]").unwrap();
        assert!(unor.writhe().is_err());
        assert!(matches!(unor.writhe().unwrap_err(), Error::Unoriented(_)));
    }

    #[test]
    fn jones_in_q_integer_exponents() {
        let tre = pd(&[1, 1, 1]);
        let q = jones_in_q(&tre).unwrap();
        let qvars = VarSet::new(["q"]);
        let expect = LaurentPoly::from_terms(
            &qvars,
            [(4, 1i64), (12, 1), (16, -1)]
                .iter()
                .map(|&(e, c)| (smallvec![e] as Exp, big_ratio(c, 1))),
        );
        assert_eq!(q, expect);
    }
}
