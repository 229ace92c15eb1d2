//! tielab — exact polynomial link invariants from braid words, tied braid
//! words, or planar-diagram codes, plus the library's verification suites.
//!
//! Exit codes: 0 success, 1 suite failure, 2 parse error, 3 incompatible
//! request, 4 input rejected by the desk-scale guards.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tielab::bracket::{self, PdCode};
use tielab::braid::parse_word;
use tielab::btalgebra::{self, BtCtx};
use tielab::error::{Error, Result};
use tielab::hecke::{self, HeckeCtx};
use tielab::limits::{Limits, DEFAULT_LIMITS, UNLIMITED};
use tielab::scalar::{RenderFormat, ScalarValue};
use tielab::verify;
use tielab::yokonuma;

#[derive(Parser)]
#[command(
    name = "tielab",
    version,
    about = "Exact polynomial link invariants: Kauffman bracket, Jones, Homflypt, \
             and the framed- and tied-link families",
    after_help = "Run `tielab formats` for the input syntaxes, parameters, and exit codes."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant of one link
    Compute {
        /// Invariant to compute
        #[arg(long, value_enum)]
        invariant: Invariant,
        /// Braid word ("1 1 -2"), tied word ("n=2: s1 e1"), or PD code ("X[1,4,2,3] ...")
        input: String,
        /// Output format: plain, latex, or json
        #[arg(long, default_value = "plain")]
        format: String,
        /// Semicolon-separated options, e.g. "m=3", "d=4;S=0,2", "mode=generic"
        #[arg(long, default_value = "")]
        params: String,
        /// Lift the desk-scale input guards for this run
        #[arg(long)]
        unsafe_limits: bool,
    },
    /// Run a verification suite and print its JSON report
    Verify {
        /// Suite name: trace-rules, skein-x, skein-f, markov, cross-route, esystem, dims
        #[arg(long)]
        suite: String,
        /// RNG seed; every randomized suite is fully reproducible from it
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-property case count (randomized suites only)
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Describe the accepted input syntaxes, parameters, and output formats
    Formats,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Invariant {
    /// Kauffman bracket of an unoriented diagram
    Bracket,
    /// Jones polynomial via the bracket, written in t (quarter powers)
    Jones,
    /// Two-variable Homflypt polynomial X(u, z) via the Hecke trace
    Homflypt,
    /// Framed-family invariant Δ_m(u, z); needs m= or d=;S=
    DeltaM,
    /// Framed-family invariant Θ_m(v, z); needs m= or d=;S=
    ThetaM,
    /// Three-variable invariant Δ̄(u, a, b) from the tie algebra
    DeltaBar,
    /// Three-variable invariant Θ̄(v, a, b) from the tie algebra
    ThetaBar,
    /// Tied-link invariant F(u, a, b); the only invariant accepting ties
    FTied,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::UnknownVariable(_) | Error::InvalidIndex(_) => 2,
        Error::Incompatible(_) => 3,
        Error::LimitExceeded(_) => 4,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute {
            invariant,
            input,
            format,
            params,
            unsafe_limits,
        } => {
            let format = RenderFormat::parse(&format)?;
            let params = Params::parse(&params)?;
            let limits = resolve_limits(unsafe_limits)?;
            let rendered = compute(invariant, &input, format, &params, &limits)?;
            println!("{rendered}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, seed, count } => {
            let report = verify::run_suite(&suite, seed, count)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Formats => {
            print!("{}", FORMATS_TEXT);
            Ok(ExitCode::SUCCESS)
        }
    }
}

// ------------------------------------------------------------------ params

#[derive(Default)]
struct Params {
    d: Option<u32>,
    s: Option<Vec<u32>>,
    m: Option<u32>,
    mode: Option<String>,
}

impl Params {
    fn parse(raw: &str) -> Result<Params> {
        let mut p = Params::default();
        for part in raw.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("option `{part}` is not key=value")))?;
            let value = value.trim();
            match key.trim() {
                "d" => p.d = Some(parse_u32(value, "d")?),
                "m" => p.m = Some(parse_u32(value, "m")?),
                "S" | "s" => {
                    let residues = value
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| parse_u32(t, "S"))
                        .collect::<Result<Vec<u32>>>()?;
                    p.s = Some(residues);
                }
                "mode" => p.mode = Some(value.to_string()),
                other => {
                    return Err(Error::Incompatible(format!(
                        "unknown option `{other}` (known: d, S, m, mode)"
                    )))
                }
            }
        }
        Ok(p)
    }

    fn any_framing(&self) -> bool {
        self.d.is_some() || self.s.is_some() || self.m.is_some()
    }

    /// Resolve (d, S) for the framed invariants: either `m=k` (meaning
    /// d = k with S all of ℤ/k — the invariant depends only on |S|) or an
    /// explicit `d=… ; S=…` pair.
    fn framing(&self) -> Result<(u32, Vec<u32>)> {
        match (self.m, self.d, &self.s) {
            (Some(m), None, None) => {
                if m == 0 {
                    return Err(Error::Incompatible("m must be at least 1".into()));
                }
                Ok((m, (0..m).collect()))
            }
            (None, Some(d), Some(s)) => {
                if d == 0 {
                    return Err(Error::Incompatible("d must be at least 1".into()));
                }
                let mut s = s.clone();
                s.sort_unstable();
                s.dedup();
                if s.is_empty() {
                    return Err(Error::Incompatible("S must be a nonempty set".into()));
                }
                if let Some(&bad) = s.iter().find(|&&r| r >= d) {
                    return Err(Error::Incompatible(format!(
                        "S contains {bad}, which is not a residue mod {d}"
                    )));
                }
                Ok((d, s))
            }
            (None, Some(d), None) => Err(Error::Incompatible(format!(
                "d={d} needs an accompanying S=… (or use m={d} for S = all of ℤ/{d})"
            ))),
            (None, None, Some(_)) => {
                Err(Error::Incompatible("S=… needs an accompanying d=…".into()))
            }
            (None, None, None) => Err(Error::Incompatible(
                "this invariant needs framing parameters: m=… or d=…;S=…".into(),
            )),
            _ => Err(Error::Incompatible(
                "give either m=… or d=…;S=…, not both".into(),
            )),
        }
    }
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad {what} value `{s}`")))
}

fn resolve_limits(unsafe_limits: bool) -> Result<Limits> {
    if unsafe_limits {
        return Ok(UNLIMITED);
    }
    match std::env::var("TIELAB_LIMITS") {
        Ok(v) => Limits::parse_override(&v),
        Err(_) => Ok(DEFAULT_LIMITS),
    }
}

// ----------------------------------------------------------------- compute

enum LinkInput {
    Word(tielab::braid::TiedWord),
    Pd(PdCode),
}

fn parse_input(raw: &str) -> Result<LinkInput> {
    let t = raw.trim();
    if t.starts_with('X') || t.starts_with('O') {
        Ok(LinkInput::Pd(PdCode::parse(t)?))
    } else {
        Ok(LinkInput::Word(parse_word(t)?))
    }
}

fn compute(
    invariant: Invariant,
    input: &str,
    format: RenderFormat,
    params: &Params,
    limits: &Limits,
) -> Result<String> {
    use Invariant::*;

    if params.any_framing() && !matches!(invariant, DeltaM | ThetaM) {
        return Err(Error::Incompatible(
            "d/S/m options apply only to delta-m and theta-m".into(),
        ));
    }
    if params.mode.is_some() && invariant != Bracket {
        return Err(Error::Incompatible(
            "mode=generic|specialized applies only to bracket".into(),
        ));
    }

    let pd = match parse_input(input)? {
        LinkInput::Pd(pd) => {
            if !matches!(invariant, Bracket | Jones) {
                return Err(Error::Incompatible(
                    "PD-code input is only supported for bracket and jones".into(),
                ));
            }
            limits.check_crossings(pd.num_crossings())?;
            pd
        }
        LinkInput::Word(word) => {
            limits.check_word_len(word.letters().len())?;
            limits.check_strands(word.n())?;
            if word.has_ties() && invariant != FTied {
                return Err(Error::Incompatible(
                    "tied input is only supported for f-tied".into(),
                ));
            }
            match invariant {
                FTied => {
                    let value = btalgebra::f_invariant(&BtCtx::standard(), &word);
                    return Ok(ScalarValue::Quad(value).render(format));
                }
                Homflypt => {
                    let braid = word.to_braid()?;
                    let value = hecke::homflypt(&HeckeCtx::standard(), &braid);
                    return Ok(ScalarValue::Quad(value).render(format));
                }
                DeltaM | ThetaM => {
                    let braid = word.to_braid()?;
                    let (d, s) = params.framing()?;
                    limits.check_d(d)?;
                    let value = if invariant == DeltaM {
                        yokonuma::delta(&braid, d, &s)
                    } else {
                        yokonuma::theta(&braid, d, &s)
                    };
                    return Ok(ScalarValue::Quad(value).render(format));
                }
                DeltaBar => {
                    let braid = word.to_braid()?;
                    let value = btalgebra::delta_bar(&BtCtx::standard(), &braid);
                    return Ok(ScalarValue::Quad(value).render(format));
                }
                ThetaBar => {
                    let braid = word.to_braid()?;
                    let value = btalgebra::theta_bar(&BtCtx::sqrt_u(), &braid);
                    return Ok(ScalarValue::Quad(value).render(format));
                }
                Bracket | Jones => {
                    let braid = word.to_braid()?;
                    let pd = bracket::braid_to_pd(&braid);
                    limits.check_crossings(pd.num_crossings())?;
                    pd
                }
            }
        }
    };

    // diagram-side invariants
    match invariant {
        Bracket => {
            let value = match params.mode.as_deref() {
                Some("generic") => bracket::bracket_generic(&pd)?,
                Some("specialized") | None => bracket::bracket_specialized(&pd)?,
                Some(other) => {
                    return Err(Error::Incompatible(format!(
                        "unknown bracket mode `{other}` (generic or specialized)"
                    )))
                }
            };
            Ok(ScalarValue::Poly(value).render(format))
        }
        Jones => Ok(ScalarValue::Poly(bracket::jones(&pd)?).render(format)),
        _ => unreachable!("word-only invariants returned above"),
    }
}

// ------------------------------------------------------------------- docs

const FORMATS_TEXT: &str = "\
INPUTS
  braid word   1-indexed signed generators separated by spaces or commas:
               \"1 1 -2\" or equivalently \"s1 s1 -s2\". An optional prefix
               \"n=4:\" fixes the strand count (otherwise the smallest count
               that fits is used). The closure of the braid is the link.
  tied word    braid letters plus tie generators: \"n=2: s1 e1\". The tie ek
               joins strands k and k+1 and cannot be inverted. Only f-tied
               accepts words containing ties.
  PD code      whitespace-separated crossings \"X[a,b,c,d]\" with arc labels
               counterclockwise from the incoming under-arc, optional free
               unknots \"O\" or \"O*k\", and optional crossing orientations
               \"or=+1,-1,...\" (needed by jones when the diagram is not a
               braid closure). Only bracket and jones accept PD codes.

INVARIANTS
  bracket      Kauffman bracket of the unoriented diagram. mode=specialized
               (default) gives the one-variable bracket in A; mode=generic
               keeps the three state-sum variables A, B, z.
  jones        Jones polynomial through the bracket route, printed in t with
               quarter-integer exponents.
  homflypt     Homflypt polynomial X(u, z) through the algebra trace route.
  delta-m      Framed-family invariant Δ_m(u, z). Needs m=… (or d=…;S=…,
               a nonempty set of residues mod d; only |S| matters).
  theta-m      Framed-family invariant Θ_m(v, z) with v² = u. Same options.
  delta-bar    Three-variable invariant Δ̄(u, a, b) from the tie algebra.
  theta-bar    Three-variable invariant Θ̄(v, a, b) with v² = u.
  f-tied       Tied-link invariant F(u, a, b); input may contain ties.

OUTPUT FORMATS (--format)
  plain        canonical text with a stable term order; values living in a
               quadratic extension print as re + (im)*sqrt(rad).
  latex        the same content as LaTeX markup.
  json         structured terms (variables, exponents, coefficient strings);
               round-trips through the library's scalar parser. Exponents of
               quarter-power variables are emitted in quarter units.

OPTIONS (--params \"key=value;key=value\")
  m=3          framing shorthand: d = 3 with S = {0,1,2}
  d=4;S=0,2    explicit framing modulus and subset for delta-m / theta-m
  mode=generic bracket state sum in A, B, z instead of specializing

LIMITS
  Default guards: word length <= 64, strands <= 8, d <= 6, crossings <= 24.
  Override with --unsafe-limits (lifts everything) or TIELAB_LIMITS, either
  \"off\" or comma-separated keys len=, n=, d=, pd=.

EXIT CODES
  0 success | 1 verification failure | 2 parse error | 3 incompatible
  request | 4 refused by limits
";
