//! Permutations of {0, .., n-1} in one-line notation, with the Coxeter
//! bookkeeping the algebra engines need (reduced words, ascent/descent
//! tests, restriction to the strands a trace has not yet consumed).
//!
//! Composition is function composition: `(v.compose(&w)).apply(i) ==
//! v.apply(w.apply(i))`. A word of adjacent transpositions `[a, b, c]`
//! therefore evaluates as `s_a ∘ s_b ∘ s_c` when folded left to right with
//! `compose`, matching how the engines consume generator tokens.

use std::fmt;

use smallvec::SmallVec;

type Images = SmallVec<[u8; 8]>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    images: Images,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// The adjacent transposition swapping i and i+1 inside S_n.
    pub fn transposition(n: usize, i: usize) -> Self {
        assert!(i + 1 < n, "transposition index {i} out of range for n={n}");
        let mut p = Perm::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    pub fn from_images(images: impl IntoIterator<Item = usize>) -> Self {
        let images: Images = images.into_iter().map(|x| x as u8).collect();
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!((v as usize) < n && !seen[v as usize], "not a permutation");
            seen[v as usize] = true;
        }
        Perm { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// The position mapped to `v`, i.e. the inverse image.
    pub fn preimage(&self, v: usize) -> usize {
        self.images
            .iter()
            .position(|&x| x as usize == v)
            .expect("value out of range")
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| i == v as usize)
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// Function composition: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n(), "mismatched permutation sizes");
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = smallvec::smallvec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Perm { images }
    }

    /// Coxeter length: number of inversions.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right multiplication by s_i lengthens the word exactly when
    /// w(i) < w(i+1).
    pub fn right_ascent(&self, i: usize) -> bool {
        self.images[i] < self.images[i + 1]
    }

    /// `self ∘ s_i`: swaps the one-line entries at positions i, i+1.
    pub fn right_mul_s(&self, i: usize) -> Perm {
        let mut p = self.clone();
        p.images.swap(i, i + 1);
        p
    }

    /// A reduced word `[a, b, ...]` with `self = s_a ∘ s_b ∘ ...` (fold
    /// left to right with `compose`). Length equals `self.length()`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut collected = Vec::with_capacity(self.length());
        'outer: while !w.is_identity() {
            for i in 0..w.n() - 1 {
                if w.images[i] > w.images[i + 1] {
                    collected.push(i);
                    w = w.right_mul_s(i);
                    continue 'outer;
                }
            }
            unreachable!("non-identity permutation with no descent");
        }
        collected.reverse();
        collected
    }

    /// Disjoint cycles, each starting at its minimum, ordered by minima.
    /// Fixed points are included as singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of disjoint cycles (fixed points count).
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Restriction to {0, .., m-1}; panics unless every strand >= m is fixed.
    pub fn restrict(&self, m: usize) -> Perm {
        assert!(m >= 1 && m <= self.n());
        assert!(
            (m..self.n()).all(|i| self.fixes(i)),
            "restriction would cut a moved strand"
        );
        Perm {
            images: self.images[..m].iter().copied().collect(),
        }
    }

    /// Extension to S_m fixing the new strands.
    pub fn extend(&self, m: usize) -> Perm {
        assert!(m >= self.n());
        let mut images = self.images.clone();
        images.extend(self.n() as u8..m as u8);
        Perm { images }
    }

    /// All n! permutations of S_n (lexicographic by one-line notation).
    pub fn enumerate(n: usize) -> Vec<Perm> {
        assert!((1..=8).contains(&n), "full enumeration only for small n");
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm::from_images(images.iter().copied()));
            // next_permutation in place
            let Some(i) = (0..n - 1).rev().find(|&i| images[i] < images[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
            images.swap(i, j);
            images[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
