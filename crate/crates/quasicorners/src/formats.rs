//! Plain-text formats for groups and subsets.
//!
//! * `GTBL 1 <n>`: identity index, `n` rows of the Cayley table, `n` labels.
//! * `SUBG 1 <n>`: one line of `n` characters `0`/`1`.
//! * `SUBM 1 <n>`: `n` lines (row `x`) of `n` characters (column `y`).
//!
//! Writers emit LF line endings and a final newline; readers reject anything
//! else, so a canonical file survives `store(load(x))` byte for byte.

use std::fs;
use std::path::Path;

use quasicorners_core::{BitSet, GroupTable, SubsetG, SubsetGG};

use crate::error::{CliError, ParseError, Result};

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> std::result::Result<Self, ParseError> {
        if let Some(i) = text.find('\r') {
            let line = text[..i].matches('\n').count() + 1;
            let column = i - text[..i].rfind('\n').map_or(0, |p| p + 1) + 1;
            return Err(ParseError::new(
                line,
                column,
                "carriage return; files must use LF line endings",
            ));
        }
        let mut lines: Vec<&str> = text.split('\n').collect();
        if lines.last() == Some(&"") {
            lines.pop();
        } else {
            let line = lines.len();
            return Err(ParseError::new(
                line,
                lines[line - 1].len() + 1,
                "missing final newline",
            ));
        }
        Ok(Lines { lines, pos: 0 })
    }

    /// Next line and its 1-based number.
    fn next(&mut self, what: &str) -> std::result::Result<(usize, &'a str), ParseError> {
        let line = self.pos + 1;
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok((line, l))
            }
            None => Err(ParseError::new(
                line,
                1,
                format!("unexpected end of file, expected {what}"),
            )),
        }
    }

    fn finish(&self) -> std::result::Result<(), ParseError> {
        if self.pos < self.lines.len() {
            return Err(ParseError::new(self.pos + 1, 1, "trailing content"));
        }
        Ok(())
    }
}

/// Splits on single spaces, returning each token with its 1-based column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut col = 1;
    line.split(' ').map(move |t| {
        let c = col;
        col += t.len() + 1;
        (c, t)
    })
}

fn number(lineno: usize, col: usize, tok: &str) -> std::result::Result<usize, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
        return Err(ParseError::new(
            lineno,
            col,
            format!("expected a non-negative integer, found {tok:?}"),
        ));
    }
    tok.parse()
        .map_err(|_| ParseError::new(lineno, col, "integer out of range"))
}

fn header(lines: &mut Lines<'_>, magic: &str) -> std::result::Result<usize, ParseError> {
    let (ln, text) = lines.next("header")?;
    let toks: Vec<(usize, &str)> = tokens(text).collect();
    if toks.len() != 3 || toks[0].1 != magic {
        return Err(ParseError::new(ln, 1, format!("expected header `{magic} 1 <n>`")));
    }
    if toks[1].1 != "1" {
        return Err(ParseError::new(
            ln,
            toks[1].0,
            format!("unsupported version {:?}", toks[1].1),
        ));
    }
    let n = number(ln, toks[2].0, toks[2].1)?;
    if n == 0 {
        return Err(ParseError::new(ln, toks[2].0, "order must be positive"));
    }
    Ok(n)
}

fn bits_line(ln: usize, text: &str, n: usize) -> std::result::Result<BitSet, ParseError> {
    let mut bits = BitSet::new(n);
    for (i, b) in text.bytes().enumerate() {
        match b {
            b'1' if i < n => bits.insert(i),
            b'0' if i < n => {}
            _ if i >= n => return Err(ParseError::new(ln, i + 1, format!("line longer than n = {n}"))),
            _ => {
                return Err(ParseError::new(
                    ln,
                    i + 1,
                    format!("expected '0' or '1', found {:?}", b as char),
                ))
            }
        }
    }
    if text.len() < n {
        return Err(ParseError::new(
            ln,
            text.len() + 1,
            format!("line shorter than n = {n}"),
        ));
    }
    Ok(bits)
}

fn bits_string(bits: &BitSet) -> String {
    (0..bits.len())
        .map(|i| if bits.contains(i) { '1' } else { '0' })
        .collect()
}

pub fn parse_gtbl(text: &str) -> std::result::Result<GroupTable, ParseError> {
    let mut lines = Lines::new(text)?;
    let n = header(&mut lines, "GTBL")?;
    let (ln, id_line) = lines.next("identity index")?;
    let id = number(ln, 1, id_line)?;
    if id >= n {
        return Err(ParseError::new(ln, 1, format!("identity index {id} out of range")));
    }
    let mut mul = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (ln, row) = lines.next("table row")?;
        let mut count = 0;
        for (col, tok) in tokens(row) {
            count += 1;
            if count > n {
                return Err(ParseError::new(ln, col, format!("more than {n} entries")));
            }
            let v = number(ln, col, tok)?;
            if v >= n {
                return Err(ParseError::new(ln, col, format!("entry {v} out of range")));
            }
            mul.push(v as u32);
        }
        if count < n {
            return Err(ParseError::new(
                ln,
                row.len() + 1,
                format!("expected {n} entries, found {count}"),
            ));
        }
    }
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        labels.push(lines.next("label")?.1.to_string());
    }
    lines.finish()?;
    GroupTable::from_parts(n, mul, id, labels, None).map_err(|e| ParseError::new(1, 1, e))
}

pub fn write_gtbl(g: &GroupTable) -> String {
    let n = g.order();
    let mut out = format!("GTBL 1 {n}\n{}\n", g.identity());
    for a in 0..n {
        let row: Vec<String> = g.row(a).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for label in g.labels() {
        out.push_str(label);
        out.push('\n');
    }
    out
}

pub fn parse_subg(text: &str) -> std::result::Result<SubsetG, ParseError> {
    let mut lines = Lines::new(text)?;
    let n = header(&mut lines, "SUBG")?;
    let (ln, body) = lines.next("membership string")?;
    let bits = bits_line(ln, body, n)?;
    lines.finish()?;
    Ok(SubsetG::from_bitset(bits))
}

pub fn write_subg(s: &SubsetG) -> String {
    format!("SUBG 1 {}\n{}\n", s.group_order(), bits_string(s.bits()))
}

pub fn parse_subm(text: &str) -> std::result::Result<SubsetGG, ParseError> {
    let mut lines = Lines::new(text)?;
    let n = header(&mut lines, "SUBM")?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, body) = lines.next("row")?;
        rows.push(bits_line(ln, body, n)?);
    }
    lines.finish()?;
    SubsetGG::from_rows(rows).map_err(|e| ParseError::new(1, 1, e))
}

pub fn write_subm(s: &SubsetGG) -> String {
    let mut out = format!("SUBM 1 {}\n", s.n());
    for row in s.rows() {
        out.push_str(&bits_string(row));
        out.push('\n');
    }
    out
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn parsed<T>(path: &Path, r: std::result::Result<T, ParseError>) -> Result<T> {
    r.map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })
}

/// Loads a `GTBL` file and checks the group axioms.
pub fn load_group(path: &Path) -> Result<GroupTable> {
    let g = parsed(path, parse_gtbl(&read(path)?))?;
    let report = g.validate(0);
    if !report.all_pass() {
        return Err(CliError::InvalidGroup(format!(
            "{}: {:?}",
            path.display(),
            report.counterexample
        )));
    }
    Ok(g)
}

pub fn load_subg(path: &Path) -> Result<SubsetG> {
    parsed(path, parse_subg(&read(path)?))
}

pub fn load_subm(path: &Path) -> Result<SubsetGG> {
    parsed(path, parse_subm(&read(path)?))
}

/// Loads a `SUBM` file whose header must match the group order `n`.
pub fn load_subm_for(path: &Path, n: usize) -> Result<SubsetGG> {
    let s = load_subm(path)?;
    if s.n() != n {
        let source = ParseError::new(1, 8, format!("set has n = {}, group has order {n}", s.n()));
        return Err(CliError::Parse {
            path: path.into(),
            source,
        });
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quasicorners_core::group::{build_group, BuildOptions, GroupSpec};

    #[test]
    fn group_round_trip() {
        let g = build_group(&GroupSpec::parse("dihedral(3)").unwrap(), &BuildOptions::default()).unwrap();
        let text = write_gtbl(&g);
        let back = parse_gtbl(&text).unwrap();
        assert_eq!(write_gtbl(&back), text);
        assert_eq!(back.table(), g.table());
    }

    #[test]
    fn gtbl_errors_have_positions() {
        let e = parse_gtbl("GTBL 1 2\n0\n0 1\n1 5\na\nb\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 3));
        let e = parse_gtbl("GTBL 2 2\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 6));
        let e = parse_gtbl("GTBL 1 2\n0\n0 1\n1 0\na\n").unwrap_err();
        assert_eq!(e.line, 6);
        let e = parse_gtbl("GTBL 1 1\r\n0\n0\ne\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        assert!(parse_gtbl("GTBL 1 1\n0\n0\ne").is_err());
    }

    #[test]
    fn subsets_round_trip() {
        let text = "SUBG 1 5\n01101\n";
        assert_eq!(write_subg(&parse_subg(text).unwrap()), text);
        let text = "SUBM 1 3\n100\n011\n000\n";
        let m = parse_subm(text).unwrap();
        assert!(m.contains(1, 2) && !m.contains(2, 2));
        assert_eq!(write_subm(&m), text);
    }

    #[test]
    fn subset_errors() {
        let e = parse_subg("SUBG 1 3\n0120\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_subm("SUBM 1 3\n100\n01\n000\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        let e = parse_subm("SUBM 1 2\n10\n01\n11\n").unwrap_err();
        assert_eq!(e.line, 4);
    }
}
