//! Desk-scale guard rails. Exact arithmetic on these algebras grows
//! factorially with strand count, so the CLI refuses oversized inputs unless
//! explicitly overridden (`--unsafe-limits` or the `TIELAB_LIMITS` variable).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of braid/tied word letters.
    pub max_word_len: usize,
    /// Maximum number of strands.
    pub max_strands: usize,
    /// Maximum framing modulus d.
    pub max_d: u32,
    /// Maximum number of crossings in a planar diagram.
    pub max_crossings: usize,
}

pub const DEFAULT_LIMITS: Limits = Limits {
    max_word_len: 64,
    max_strands: 8,
    max_d: 6,
    max_crossings: 24,
};

/// Effectively unlimited; selected by `--unsafe-limits` or `TIELAB_LIMITS=off`.
pub const UNLIMITED: Limits = Limits {
    max_word_len: usize::MAX,
    max_strands: 64,
    max_d: 1 << 20,
    max_crossings: 62,
};

impl Default for Limits {
    fn default() -> Self {
        DEFAULT_LIMITS
    }
}

impl Limits {
    /// Parse an override string: `off`, or comma-separated `key=value` pairs
    /// with keys `len`, `n`, `d`, `pd` (unmentioned keys keep their defaults).
    pub fn parse_override(s: &str) -> Result<Limits> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("off") {
            return Ok(UNLIMITED);
        }
        let mut lim = DEFAULT_LIMITS;
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("limit override `{part}` is not key=value")))?;
            let value = value.trim();
            match key.trim() {
                "len" => lim.max_word_len = parse_num(value)?,
                "n" => lim.max_strands = parse_num(value)?,
                "d" => lim.max_d = parse_num(value)? as u32,
                "pd" => lim.max_crossings = parse_num(value)?,
                other => return Err(Error::Parse(format!("unknown limit key `{other}`"))),
            }
        }
        Ok(lim)
    }

    pub fn check_word_len(&self, len: usize) -> Result<()> {
        if len > self.max_word_len {
            return Err(Error::LimitExceeded(format!(
                "word has {len} letters (limit {})",
                self.max_word_len
            )));
        }
        Ok(())
    }

    pub fn check_strands(&self, n: usize) -> Result<()> {
        if n > self.max_strands {
            return Err(Error::LimitExceeded(format!(
                "word uses {n} strands (limit {})",
                self.max_strands
            )));
        }
        Ok(())
    }

    pub fn check_d(&self, d: u32) -> Result<()> {
        if d > self.max_d {
            return Err(Error::LimitExceeded(format!(
                "framing modulus d={d} (limit {})",
                self.max_d
            )));
        }
        Ok(())
    }

    pub fn check_crossings(&self, c: usize) -> Result<()> {
        if c > self.max_crossings {
            return Err(Error::LimitExceeded(format!(
                "diagram has {c} crossings (limit {})",
                self.max_crossings
            )));
        }
        Ok(())
    }
}

fn parse_num(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad limit value `{s}`")))
}
