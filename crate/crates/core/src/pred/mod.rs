//! Exact predicates over the integers and the sign abstraction.
//!
//! An [`IntPred`] is a finite union of integer intervals, possibly
//! unbounded on either side, kept in a canonical form (sorted, disjoint,
//! non-adjacent) so that equality of predicates is equality of values.

pub mod flow;
pub mod sign;
pub mod toy;

pub use sign::SignElem;

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredError {
    #[error("bad predicate literal `{0}`: {1}")]
    BadLiteral(String, String),
}

/// One maximal interval: `lo = None` means −∞, `hi = None` means +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Span {
    lo: Option<i64>,
    hi: Option<i64>,
}

fn lo_key(lo: Option<i64>) -> i128 {
    lo.map_or(i128::MIN, |v| v as i128)
}

fn hi_key(hi: Option<i64>) -> i128 {
    hi.map_or(i128::MAX, |v| v as i128)
}

/// A finite union of integer intervals in canonical form: spans are sorted
/// by lower bound, pairwise disjoint, and separated by gaps of at least
/// two (adjacent spans like [0,2],[3,5] are merged), so each set of
/// integers has exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPred {
    spans: Vec<Span>,
}

impl IntPred {
    pub fn empty() -> Self {
        IntPred { spans: Vec::new() }
    }

    /// All of ℤ.
    pub fn all() -> Self {
        IntPred::range(None, None)
    }

    pub fn singleton(v: i64) -> Self {
        IntPred::range(Some(v), Some(v))
    }

    /// The interval `[lo, hi]`, with `None` for an unbounded side.
    pub fn range(lo: Option<i64>, hi: Option<i64>) -> Self {
        IntPred::canonicalize(vec![Span { lo, hi }])
    }

    pub fn from_values(values: &[i64]) -> Self {
        IntPred::canonicalize(
            values
                .iter()
                .map(|&v| Span {
                    lo: Some(v),
                    hi: Some(v),
                })
                .collect(),
        )
    }

    fn canonicalize(mut spans: Vec<Span>) -> Self {
        spans.retain(|s| lo_key(s.lo) <= hi_key(s.hi));
        spans.sort_by_key(|s| (lo_key(s.lo), hi_key(s.hi)));
        let mut merged: Vec<Span> = Vec::with_capacity(spans.len());
        for span in spans {
            match merged.last_mut() {
                Some(last) if lo_key(span.lo) <= hi_key(last.hi).saturating_add(1) => {
                    if hi_key(span.hi) > hi_key(last.hi) {
                        last.hi = span.hi;
                    }
                }
                _ => merged.push(span),
            }
        }
        IntPred { spans: merged }
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn contains(&self, v: i64) -> bool {
        self.spans
            .iter()
            .any(|s| lo_key(s.lo) <= v as i128 && (v as i128) <= hi_key(s.hi))
    }

    pub fn union(&self, other: &IntPred) -> IntPred {
        let mut spans = self.spans.clone();
        spans.extend_from_slice(&other.spans);
        IntPred::canonicalize(spans)
    }

    pub fn intersect(&self, other: &IntPred) -> IntPred {
        let mut spans = Vec::new();
        for a in &self.spans {
            for b in &other.spans {
                let lo = if lo_key(a.lo) >= lo_key(b.lo) {
                    a.lo
                } else {
                    b.lo
                };
                let hi = if hi_key(a.hi) <= hi_key(b.hi) {
                    a.hi
                } else {
                    b.hi
                };
                if lo_key(lo) <= hi_key(hi) {
                    spans.push(Span { lo, hi });
                }
            }
        }
        IntPred::canonicalize(spans)
    }

    /// `{i + k | i ∈ P}`.
    pub fn shift(&self, k: i64) -> IntPred {
        IntPred::canonicalize(
            self.spans
                .iter()
                .map(|s| Span {
                    lo: s.lo.map(|v| v + k),
                    hi: s.hi.map(|v| v + k),
                })
                .collect(),
        )
    }

    /// Subset test (the order of the predicate lattice).
    pub fn leq(&self, other: &IntPred) -> bool {
        self.intersect(other) == *self
    }

    /// Parses a predicate literal: `{}`, `{0,3,7}`, `[1,5]`, `[1,inf)`,
    /// `(-inf,0]`, `(-inf,inf)`, or a union of those joined by `u`.
    pub fn parse(text: &str) -> Result<IntPred, PredError> {
        let bad = |msg: &str| PredError::BadLiteral(text.to_string(), msg.to_string());
        let mut result = IntPred::empty();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty literal"));
        }
        loop {
            let (atom, remainder) = split_atom(rest).ok_or_else(|| bad("unterminated atom"))?;
            result = result.union(&parse_atom(atom).map_err(|msg| bad(&msg))?);
            rest = remainder.trim_start();
            if rest.is_empty() {
                return Ok(result);
            }
            rest = rest
                .strip_prefix('u')
                .ok_or_else(|| bad("expected `u` between atoms"))?
                .trim_start();
        }
    }
}

/// Splits one self-delimiting atom (`{…}`, `[…]`/`[…)`, `(…]`/`(…)`) off
/// the front of the input.
fn split_atom(text: &str) -> Option<(&str, &str)> {
    let mut chars = text.char_indices();
    let (_, open) = chars.next()?;
    match open {
        '{' => {
            let end = text.find('}')?;
            Some((&text[..=end], &text[end + 1..]))
        }
        '[' | '(' => {
            let end = text.find([']', ')'])?;
            Some((&text[..=end], &text[end + 1..]))
        }
        _ => None,
    }
}

fn parse_atom(atom: &str) -> Result<IntPred, String> {
    if let Some(inner) = atom.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(IntPred::empty());
        }
        let values: Result<Vec<i64>, _> = inner
            .split(',')
            .map(|tok| tok.trim().parse::<i64>())
            .collect();
        return values
            .map(|vs| IntPred::from_values(&vs))
            .map_err(|_| format!("bad integer in `{atom}`"));
    }
    let open = atom.chars().next().ok_or("empty atom")?;
    let close = atom.chars().last().ok_or("empty atom")?;
    let inner = &atom[1..atom.len() - 1];
    let (lo_txt, hi_txt) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi` in `{atom}`"))?;
    let lo = match (open, lo_txt.trim()) {
        ('(', "-inf") => None,
        ('[', tok) => Some(
            tok.parse::<i64>()
                .map_err(|_| format!("bad bound `{tok}`"))?,
        ),
        _ => return Err("finite lower bounds use `[`, -inf uses `(`".to_string()),
    };
    let hi = match (close, hi_txt.trim()) {
        (')', "inf") => None,
        (']', tok) => Some(
            tok.parse::<i64>()
                .map_err(|_| format!("bad bound `{tok}`"))?,
        ),
        _ => return Err("finite upper bounds use `]`, inf uses `)`".to_string()),
    };
    if let (Some(l), Some(h)) = (lo, hi) {
        if l > h {
            return Err(format!("empty interval `{atom}`"));
        }
    }
    Ok(IntPred::range(lo, hi))
}

impl fmt::Display for IntPred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return write!(f, "{{}}");
        }
        let atoms: Vec<String> = self
            .spans
            .iter()
            .map(|s| match (s.lo, s.hi) {
                (Some(l), Some(h)) if l == h => format!("{{{l}}}"),
                (Some(l), Some(h)) => format!("[{l},{h}]"),
                (Some(l), None) => format!("[{l},inf)"),
                (None, Some(h)) => format!("(-inf,{h}]"),
                (None, None) => "(-inf,inf)".to_string(),
            })
            .collect();
        write!(f, "{}", atoms.join(" u "))
    }
}
