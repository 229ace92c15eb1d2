//! Set partitions of {0, .., n-1} in canonical restricted-growth form:
//! entry i is the index of the block containing i, blocks numbered by
//! first appearance. Printed 1-indexed as `{1,3|2,5,6|4}` (blocks ordered
//! by minimum, elements ascending).

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::perm::Perm;

type Rgs = SmallVec<[u8; 8]>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SetPartition {
    rgs: Rgs,
}

fn canonicalize(raw: impl IntoIterator<Item = u8>) -> Rgs {
    let raw: Rgs = raw.into_iter().collect();
    let mut relabel: Vec<Option<u8>> = vec![None; raw.len()];
    let mut next = 0u8;
    let mut out = Rgs::with_capacity(raw.len());
    for &b in &raw {
        let slot = &mut relabel[b as usize];
        if slot.is_none() {
            *slot = Some(next);
            next += 1;
        }
        out.push(slot.unwrap());
    }
    out
}

impl SetPartition {
    /// The discrete partition: every element its own block.
    pub fn singletons(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        SetPartition {
            rgs: (0..n as u8).collect(),
        }
    }

    /// The partition whose only non-singleton block is {i, j}.
    pub fn pair(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n && i != j);
        let mut p = SetPartition::singletons(n);
        p = p.join_elements(i, j);
        p
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut raw = vec![u8::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                assert!(i < n && raw[i] == u8::MAX, "blocks must partition 0..n");
                raw[i] = b as u8;
            }
        }
        assert!(raw.iter().all(|&b| b != u8::MAX), "blocks must cover 0..n");
        SetPartition {
            rgs: canonicalize(raw),
        }
    }

    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.rgs[i] == self.rgs[j]
    }

    pub fn block_index(&self, i: usize) -> usize {
        self.rgs[i] as usize
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Blocks ordered by minimum element, elements ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    /// The block containing i, ascending.
    pub fn block_of(&self, i: usize) -> Vec<usize> {
        let b = self.rgs[i];
        (0..self.n()).filter(|&j| self.rgs[j] == b).collect()
    }

    /// Finest partition with i and j in one block on top of self.
    pub fn join_elements(&self, i: usize, j: usize) -> Self {
        let (a, b) = (self.rgs[i].min(self.rgs[j]), self.rgs[i].max(self.rgs[j]));
        if a == b {
            return self.clone();
        }
        SetPartition {
            rgs: canonicalize(self.rgs.iter().map(|&x| if x == b { a } else { x })),
        }
    }

    /// Join (finest common coarsening) in the partition lattice.
    pub fn join(&self, other: &SetPartition) -> Self {
        assert_eq!(self.n(), other.n(), "mismatched partition sizes");
        let mut acc = self.clone();
        for block in other.blocks() {
            for pair in block.windows(2) {
                acc = acc.join_elements(pair[0], pair[1]);
            }
        }
        acc
    }

    /// Refinement order: every block of self lies inside a block of other.
    pub fn leq(&self, other: &SetPartition) -> bool {
        assert_eq!(self.n(), other.n(), "mismatched partition sizes");
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.same_block(i, j) && !other.same_block(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// The image partition w(I): blocks are the images of the blocks.
    pub fn apply_perm(&self, w: &Perm) -> Self {
        assert_eq!(self.n(), w.n(), "mismatched sizes");
        let mut raw = vec![0u8; self.n()];
        for i in 0..self.n() {
            raw[w.apply(i)] = self.rgs[i];
        }
        SetPartition {
            rgs: canonicalize(raw),
        }
    }

    /// The partition whose blocks are the cycles of w.
    pub fn from_perm_cycles(w: &Perm) -> Self {
        let cycles = w.cycles();
        SetPartition::from_blocks(w.n(), &cycles)
    }

    /// Drop the last element (used by the strand-by-strand trace).
    pub fn remove_last(&self) -> Self {
        assert!(self.n() >= 2);
        SetPartition {
            rgs: canonicalize(self.rgs[..self.n() - 1].iter().copied()),
        }
    }

    /// Extend with new singleton elements up to size m.
    pub fn extend(&self, m: usize) -> Self {
        assert!(m >= self.n());
        let mut rgs = self.rgs.clone();
        let first_new = self.num_blocks() as u8;
        rgs.extend((0..m - self.n()).map(|k| first_new + k as u8));
        SetPartition { rgs }
    }

    /// All partitions of {0, .., n-1} (restricted-growth enumeration).
    pub fn enumerate(n: usize) -> Vec<SetPartition> {
        assert!((1..=8).contains(&n), "full enumeration only for small n");
        let mut out = Vec::new();
        let mut rgs = Rgs::from_elem(0, n);
        loop {
            out.push(SetPartition { rgs: rgs.clone() });
            // next RGS: increment rightmost entry that may grow
            let mut i = n;
            loop {
                if i == 1 {
                    return out;
                }
                i -= 1;
                let cap = rgs[..i].iter().copied().max().unwrap() + 1;
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for j in i + 1..n {
                        rgs[j] = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Parse the 1-indexed block notation `{1,3|2,5,6|4}`. The blocks must
    /// cover 1..=n exactly, where n is the largest element named.
    pub fn parse(s: &str) -> Result<SetPartition> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("partition `{s}` must be wrapped in {{..}}")))?;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut n = 0usize;
        for part in inner.split('|') {
            let mut block = Vec::new();
            for elem in part.split(',') {
                let v: usize = elem
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad partition element `{elem}`")))?;
                if v == 0 {
                    return Err(Error::Parse("partition elements are 1-indexed".into()));
                }
                n = n.max(v);
                block.push(v - 1);
            }
            blocks.push(block);
        }
        let mut raw = vec![u8::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                if raw[i] != u8::MAX {
                    return Err(Error::Parse(format!("element {} repeated", i + 1)));
                }
                raw[i] = b as u8;
            }
        }
        if raw.contains(&u8::MAX) {
            return Err(Error::Parse(
                "partition must cover 1..=n with no gaps".into(),
            ));
        }
        Ok(SetPartition {
            rgs: canonicalize(raw),
        })
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, "|")?;
            }
            for (k, i) in block.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            assert_eq!(SetPartition::enumerate(n).len(), bell);
        }
    }

    #[test]
    fn parse_display_round_trip() {
        let p = SetPartition::parse("{1,3|2,5,6|4}").unwrap();
        assert_eq!(p.to_string(), "{1,3|2,5,6|4}");
        assert_eq!(p.n(), 6);
        assert!(p.same_block(0, 2) && p.same_block(1, 4) && !p.same_block(0, 1));
        let q = SetPartition::parse("{2,1|3}").unwrap(); // unsorted input canonicalizes
        assert_eq!(q.to_string(), "{1,2|3}");
    }

    #[test]
    fn parse_errors() {
        assert!(SetPartition::parse("1,3|2").is_err()); // no braces
        assert!(SetPartition::parse("{1,4|2}").is_err()); // gap at 3
        assert!(SetPartition::parse("{1,2|2,3}").is_err()); // repeat
        assert!(SetPartition::parse("{0,1}").is_err()); // 0 not allowed
    }

    #[test]
    fn lattice_operations() {
        let a = SetPartition::pair(4, 0, 1);
        let b = SetPartition::pair(4, 1, 2);
        let j = a.join(&b);
        assert_eq!(j.to_string(), "{1,2,3|4}");
        assert!(a.leq(&j) && b.leq(&j));
        assert!(!j.leq(&a));
        assert!(SetPartition::singletons(4).leq(&a));
    }

    #[test]
    fn perm_action_blockwise() {
        // w = (1 6)(2 3 4 5) in 1-indexed cycle notation; 0-indexed images:
        // 0->5, 1->2, 2->3, 3->4, 4->1, 5->0
        let w = Perm::from_images([5, 2, 3, 4, 1, 0]);
        let i = SetPartition::parse("{1,2|3|4,5|6}").unwrap();
        assert_eq!(i.apply_perm(&w).to_string(), "{1|2,5|3,6|4}");
    }

    #[test]
    fn cycles_removal_extension() {
        let w = Perm::from_images([1, 0, 2, 4, 3]);
        let c = SetPartition::from_perm_cycles(&w);
        assert_eq!(c.to_string(), "{1,2|3|4,5}");
        assert_eq!(c.remove_last().to_string(), "{1,2|3|4}");
        assert_eq!(
            SetPartition::pair(2, 0, 1).extend(4).to_string(),
            "{1,2|3|4}"
        );
    }
}
