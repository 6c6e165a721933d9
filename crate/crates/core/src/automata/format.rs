//! Line-oriented DFA file format.
//!
//! ```text
//! # states are indices 0..n
//! states 3
//! alphabet a b
//! final 1 2
//! trans 0 a 1
//! trans 0 b 2
//! …
//! ```
//!
//! The transition table must be total: one `trans` line per state and
//! symbol.

use super::{Dfa, DfaError};

pub fn parse_dfa_file(text: &str) -> Result<Dfa, DfaError> {
    let mut states: Option<usize> = None;
    let mut alphabet: Vec<String> = Vec::new();
    let mut finals: Vec<usize> = Vec::new();
    let mut trans_lines: Vec<(usize, String, String, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(keyword) = words.next() else {
            continue;
        };
        let rest: Vec<&str> = words.collect();
        let parse_err = |msg: String| DfaError::Parse { line, msg };
        match keyword {
            "states" => match rest.as_slice() {
                [n] => {
                    states = Some(
                        n.parse()
                            .map_err(|_| parse_err(format!("bad state count `{n}`")))?,
                    )
                }
                _ => return Err(parse_err("expected `states <n>`".into())),
            },
            "alphabet" => {
                if rest.is_empty() {
                    return Err(parse_err("alphabet must be non-empty".into()));
                }
                alphabet = rest.iter().map(|s| s.to_string()).collect();
            }
            "final" => {
                for s in rest {
                    finals.push(
                        s.parse()
                            .map_err(|_| parse_err(format!("bad state `{s}`")))?,
                    );
                }
            }
            "trans" => match rest.as_slice() {
                [from, sym, to] => trans_lines.push((
                    line,
                    (*from).to_string(),
                    (*sym).to_string(),
                    (*to).to_string(),
                )),
                _ => return Err(parse_err("expected `trans <from> <sym> <to>`".into())),
            },
            other => return Err(parse_err(format!("unknown keyword `{other}`"))),
        }
    }

    let n = states.ok_or(DfaError::Parse {
        line: 0,
        msg: "missing `states` line".into(),
    })?;
    if n == 0 || alphabet.is_empty() {
        return Err(DfaError::Empty);
    }
    let mut out = vec![false; n];
    for s in finals {
        if s >= n {
            return Err(DfaError::BadState(s));
        }
        out[s] = true;
    }
    let mut trans: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; n];
    for (line, from, sym, to) in trans_lines {
        let parse_err = |msg: String| DfaError::Parse { line, msg };
        let from: usize = from
            .parse()
            .map_err(|_| parse_err(format!("bad state `{from}`")))?;
        let to: usize = to
            .parse()
            .map_err(|_| parse_err(format!("bad state `{to}`")))?;
        if from >= n || to >= n {
            return Err(DfaError::BadState(from.max(to)));
        }
        let a = alphabet
            .iter()
            .position(|s| *s == sym)
            .ok_or(DfaError::UnknownSymbol(sym))?;
        trans[from][a] = Some(to);
    }
    let mut table = Vec::with_capacity(n);
    for (state, row) in trans.into_iter().enumerate() {
        let got = row.iter().filter(|e| e.is_some()).count();
        let complete: Option<Vec<usize>> = row.into_iter().collect();
        match complete {
            Some(r) => table.push(r),
            None => {
                return Err(DfaError::PartialTransitions {
                    state,
                    got,
                    want: alphabet.len(),
                })
            }
        }
    }
    Dfa::new(alphabet, out, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn the_main_fixture_round_trips_through_its_file() {
        let text = fixtures::main_dfa_file();
        let parsed = parse_dfa_file(&text).unwrap();
        assert_eq!(parsed, fixtures::main_dfa().dfa);
    }

    #[test]
    fn missing_transitions_are_rejected() {
        let text = "states 2\nalphabet a\nfinal 1\ntrans 0 a 1\n";
        assert_eq!(
            parse_dfa_file(text),
            Err(DfaError::PartialTransitions {
                state: 1,
                got: 0,
                want: 1
            })
        );
    }

    #[test]
    fn unknown_symbols_and_bad_states_are_rejected() {
        let text = "states 1\nalphabet a\ntrans 0 b 0\n";
        assert_eq!(
            parse_dfa_file(text),
            Err(DfaError::UnknownSymbol("b".into()))
        );
        let text = "states 1\nalphabet a\ntrans 0 a 3\n";
        assert_eq!(parse_dfa_file(text), Err(DfaError::BadState(3)));
    }
}
