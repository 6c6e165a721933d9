//! Line-oriented lattice file format.
//!
//! ```text
//! # comment
//! elem bot
//! elem top
//! cover bot top
//! map a bot top
//! map a top top
//! ```
//!
//! `elem` lines declare elements, `cover` lines the covering relation, and
//! `map <name> <from> <to>` lines the rows of named function tables. Map
//! tables must be total; monotonicity is checked by whoever turns a table
//! into a [`MonotoneMap`].

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use super::{Elem, FiniteLattice, LatticeError};

#[derive(Debug, Error)]
pub enum LatticeFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Lattice { line: usize, source: LatticeError },
    #[error("{0}")]
    Build(#[from] LatticeError),
    #[error("map `{map}` is missing an entry for `{elem}`")]
    PartialMap { map: String, elem: String },
}

/// A parsed lattice file: the lattice plus named raw function tables.
#[derive(Debug, Clone)]
pub struct LatticeFile {
    pub lattice: Arc<FiniteLattice>,
    pub tables: BTreeMap<String, Vec<Elem>>,
}

pub fn parse_lattice_file(text: &str) -> Result<LatticeFile, LatticeFileError> {
    let mut names: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut map_rows: Vec<(usize, String, String, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(keyword) = words.next() else {
            continue;
        };
        let rest: Vec<&str> = words.collect();
        let syntax = |msg: &str| LatticeFileError::Syntax {
            line,
            msg: msg.to_string(),
        };
        match keyword {
            "elem" => match rest.as_slice() {
                [name] => names.push((*name).to_string()),
                _ => return Err(syntax("expected `elem <name>`")),
            },
            "cover" => match rest.as_slice() {
                [lo, hi] => covers.push(((*lo).to_string(), (*hi).to_string())),
                _ => return Err(syntax("expected `cover <lo> <hi>`")),
            },
            "map" => match rest.as_slice() {
                [map, from, to] => map_rows.push((
                    line,
                    (*map).to_string(),
                    (*from).to_string(),
                    (*to).to_string(),
                )),
                _ => return Err(syntax("expected `map <name> <from> <to>`")),
            },
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }

    let lattice = FiniteLattice::from_covers(&names, &covers)?;

    let mut tables: BTreeMap<String, Vec<Option<Elem>>> = BTreeMap::new();
    for (line, map, from, to) in map_rows {
        let from = lattice
            .index_of(&from)
            .map_err(|source| LatticeFileError::Lattice { line, source })?;
        let to = lattice
            .index_of(&to)
            .map_err(|source| LatticeFileError::Lattice { line, source })?;
        let table = tables
            .entry(map)
            .or_insert_with(|| vec![None; lattice.len()]);
        table[from] = Some(to);
    }
    let mut complete = BTreeMap::new();
    for (map, table) in tables {
        let mut out = Vec::with_capacity(table.len());
        for (x, entry) in table.into_iter().enumerate() {
            match entry {
                Some(v) => out.push(v),
                None => {
                    return Err(LatticeFileError::PartialMap {
                        map,
                        elem: lattice.name(x).to_string(),
                    })
                }
            }
        }
        complete.insert(map, out);
    }
    Ok(LatticeFile {
        lattice,
        tables: complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a three-element chain with one map
elem bot
elem mid
elem top
cover bot mid
cover mid top   # comments may trail
map up bot mid
map up mid top
map up top top
";

    #[test]
    fn parses_elements_covers_and_maps() {
        let file = parse_lattice_file(SAMPLE).unwrap();
        assert_eq!(file.lattice.len(), 3);
        assert_eq!(file.lattice.name(file.lattice.top()), "top");
        assert_eq!(file.tables["up"], vec![1, 2, 2]);
    }

    #[test]
    fn partial_maps_are_rejected() {
        let text = "elem a\nelem b\ncover a b\nmap f a b\n";
        assert!(matches!(
            parse_lattice_file(text),
            Err(LatticeFileError::PartialMap { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "elem a\ncover a\n";
        match parse_lattice_file(text) {
            Err(LatticeFileError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_map_element_is_an_error() {
        let text = "elem a\nmap f a zz\n";
        assert!(matches!(
            parse_lattice_file(text),
            Err(LatticeFileError::Lattice { line: 2, .. })
        ));
    }
}
