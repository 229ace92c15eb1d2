use std::fmt;
use std::sync::Arc;

/// Ordered list of polynomial variables. A variable flagged `quarter` stores
/// its exponents in units of 1/4 (so stored exponent -3 prints as `^(-3/4)`);
/// this keeps fractional powers like t^(1/4) in exact integer bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    quarter: Vec<bool>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<VarSet> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let quarter = vec![false; names.len()];
        Self::build(names, quarter)
    }

    pub fn with_flags<S: Into<String>>(vars: impl IntoIterator<Item = (S, bool)>) -> Arc<VarSet> {
        let (names, quarter): (Vec<String>, Vec<bool>) =
            vars.into_iter().map(|(n, q)| (n.into(), q)).unzip();
        Self::build(names, quarter)
    }

    fn build(names: Vec<String>, quarter: Vec<bool>) -> Arc<VarSet> {
        for (i, n) in names.iter().enumerate() {
            assert!(!n.is_empty(), "empty variable name");
            assert!(!names[..i].contains(n), "duplicate variable name `{n}`");
        }
        Arc::new(VarSet { names, quarter })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_quarter(&self, i: usize) -> bool {
        self.quarter[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, n) in self.names.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}{}", if self.quarter[i] { "~1/4" } else { "" })?;
        }
        write!(f, "]")
    }
}
