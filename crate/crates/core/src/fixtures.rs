//! Golden data transcribed from the published charts, product tables,
//! inequality lists and generator list, embedded at compile time.
//!
//! Each file carries a pinned SHA-256 so an accidental edit is caught before
//! any comparison runs. The CLI can load a replacement directory for testing
//! how corrupted fixtures are reported.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rootdata::parse_word;

pub const P1_CHART: &str = "p1_chart.txt";
pub const P2_CHART: &str = "p2_chart.txt";
pub const P1_TABLE: &str = "p1_table.txt";
pub const P2_TABLE: &str = "p2_table.txt";
pub const PRINTED_INEQUALITIES: &str = "printed_inequalities.txt";
pub const H_PRIME: &str = "h_prime.txt";

const EMBEDDED: [(&str, &str, &str); 6] = [
    (
        P1_CHART,
        include_str!("../data/p1_chart.txt"),
        "5c36c36b5f60234103684646991e27bec8170942eb078110e6b9cdaff8896774",
    ),
    (
        P2_CHART,
        include_str!("../data/p2_chart.txt"),
        "baf3cc8b4b34e50271ecdb03c73fc2634e517fa6d657fb13c5870b2c4d66d294",
    ),
    (
        P1_TABLE,
        include_str!("../data/p1_table.txt"),
        "63305d47073cce6d150bf1e8e8e106623468bce8eec1a23b90023c764e30810d",
    ),
    (
        P2_TABLE,
        include_str!("../data/p2_table.txt"),
        "f33a7a61671ecc7dd8d489e4aad82027e1d812ac6353ebcd0a201e497b27e5eb",
    ),
    (
        PRINTED_INEQUALITIES,
        include_str!("../data/printed_inequalities.txt"),
        "0c59441ee847eee494b54a70eb0fd6b5ce5776edada81fbfeb2f7de3722e97ab",
    ),
    (
        H_PRIME,
        include_str!("../data/h_prime.txt"),
        "54bc2a75f0494dd80a5fa99ba66c64e91b2cbe67dcd2993b92b373bfade9648b",
    ),
];

pub fn sha256_hex(data: &str) -> String {
    Sha256::digest(data.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A set of fixture files, keyed by file name.
#[derive(Clone, Debug)]
pub struct Fixtures {
    files: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartRow {
    pub label: String,
    pub word: Vec<u8>,
    pub lambda: [i64; 4],
    pub level: i64,
}

/// `(coefficient, class label)` terms; the empty list is zero.
pub type LinearCombination = Vec<(i64, String)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub row: String,
    pub col: String,
    pub value: LinearCombination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedInequality {
    pub section: String,
    pub parabolic: u8,
    pub essential: bool,
    pub triple: Option<[String; 3]>,
    /// Left side minus right side, in the order x1,y1,z1,w1,x2,…,w3.
    pub coefficients: [i64; 12],
    pub orbit_size: Option<usize>,
}

impl Default for Fixtures {
    fn default() -> Self {
        Self::embedded()
    }
}

impl Fixtures {
    pub fn embedded() -> Self {
        Self {
            files: EMBEDDED
                .iter()
                .map(|(name, body, _)| (name.to_string(), body.to_string()))
                .collect(),
        }
    }

    /// Embedded fixtures with any same-named file in `dir` substituted.
    pub fn with_overrides(dir: &Path) -> Result<Self> {
        let mut out = Self::embedded();
        for (name, _, _) in EMBEDDED {
            let path = dir.join(name);
            if path.exists() {
                out.files
                    .insert(name.to_string(), std::fs::read_to_string(path)?);
            }
        }
        Ok(out)
    }

    pub fn get(&self, name: &str) -> &str {
        self.files.get(name).map(String::as_str).unwrap_or("")
    }

    pub fn set(&mut self, name: &str, contents: String) {
        self.files.insert(name.to_string(), contents);
    }

    pub fn verify_checksums(&self) -> Result<()> {
        for (name, _, expected) in EMBEDDED {
            let actual = sha256_hex(self.get(name));
            if actual != expected {
                return Err(Error::Checksum {
                    name: name.to_string(),
                    expected: expected.to_string(),
                    actual,
                });
            }
        }
        Ok(())
    }

    pub fn chart(&self, parabolic: u8) -> Result<Vec<ChartRow>> {
        let name = match parabolic {
            1 => P1_CHART,
            2 => P2_CHART,
            _ => return Err(Error::Parse(format!("no printed chart for P{parabolic}"))),
        };
        data_lines(self.get(name))
            .map(|(n, line)| {
                let f = fields(line);
                if f.len() != 4 {
                    return Err(line_error(name, n, "expected four fields"));
                }
                let lambda = parse_int_list(f[2]).map_err(|e| line_error(name, n, &e))?;
                let lambda: [i64; 4] = lambda
                    .try_into()
                    .map_err(|_| line_error(name, n, "weight needs four coordinates"))?;
                Ok(ChartRow {
                    label: normalize_label(f[0]),
                    word: parse_word(f[1])?,
                    lambda,
                    level: f[3].parse().map_err(|_| line_error(name, n, "bad level"))?,
                })
            })
            .collect()
    }

    /// Printed product table cells, row times column.
    pub fn table(&self, parabolic: u8) -> Result<Vec<TableCell>> {
        let name = match parabolic {
            1 => P1_TABLE,
            2 => P2_TABLE,
            _ => return Err(Error::Parse(format!("no printed table for P{parabolic}"))),
        };
        let mut columns: Vec<String> = Vec::new();
        let mut cells = Vec::new();
        for (n, line) in data_lines(self.get(name)) {
            let f = fields(line);
            if f[0] == "cols" {
                columns = f[1..].iter().map(|c| normalize_label(c)).collect();
                continue;
            }
            if f.len() - 1 > columns.len() {
                return Err(line_error(name, n, "more cells than columns"));
            }
            let row = normalize_label(f[0]);
            for (col, cell) in columns.iter().zip(&f[1..]) {
                cells.push(TableCell {
                    row: row.clone(),
                    col: col.clone(),
                    value: parse_combination(cell).map_err(|e| line_error(name, n, &e))?,
                });
            }
        }
        Ok(cells)
    }

    pub fn printed_inequalities(&self) -> Result<Vec<PrintedInequality>> {
        let name = PRINTED_INEQUALITIES;
        data_lines(self.get(name))
            .map(|(n, line)| {
                let f = fields(line);
                if f.len() != 4 {
                    return Err(line_error(name, n, "expected four fields"));
                }
                let section = f[0].to_string();
                let essential = section.starts_with("ETI");
                let parabolic = section
                    .chars()
                    .find(|c| c.is_ascii_digit())
                    .and_then(|c| c.to_digit(10))
                    .ok_or_else(|| line_error(name, n, "section without parabolic"))?
                    as u8;
                let triple = if f[1] == "-" {
                    None
                } else {
                    let parts: Vec<String> = f[1].split(',').map(normalize_label).collect();
                    Some(
                        parts
                            .try_into()
                            .map_err(|_| line_error(name, n, "triple needs three classes"))?,
                    )
                };
                let coefficients = parse_inequality(f[2]).map_err(|e| line_error(name, n, &e))?;
                let orbit_size = if f[3] == "-" {
                    None
                } else {
                    Some(
                        f[3].parse()
                            .map_err(|_| line_error(name, n, "bad orbit size"))?,
                    )
                };
                Ok(PrintedInequality {
                    section,
                    parabolic,
                    essential,
                    triple,
                    coefficients,
                    orbit_size,
                })
            })
            .collect()
    }

    /// Generator triples in fundamental-weight coordinates.
    pub fn h_prime(&self) -> Result<Vec<[[i64; 4]; 3]>> {
        let name = H_PRIME;
        data_lines(self.get(name))
            .map(|(n, line)| {
                let parts: Vec<&str> = line.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(line_error(name, n, "expected three weights"));
                }
                let mut out = [[0i64; 4]; 3];
                for (o, p) in out.iter_mut().zip(parts) {
                    *o = parse_fundamental(p).map_err(|e| line_error(name, n, &e))?;
                }
                Ok(out)
            })
            .collect()
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn fields(line: &str) -> Vec<&str> {
    line.split('|').map(str::trim).collect()
}

fn line_error(name: &str, line: usize, msg: &str) -> Error {
    Error::Parse(format!("{name}:{line}: {msg}"))
}

fn parse_int_list(s: &str) -> std::result::Result<Vec<i64>, String> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| format!("bad integer {x:?}")))
        .collect()
}

/// `1` is the identity class `b_0`; whitespace is dropped.
pub fn normalize_label(s: &str) -> String {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "1" {
        "b_0".to_string()
    } else {
        t
    }
}

/// Parses `0`, `b_4`, `2b_4`, `b_3^1+b_3^2`.
pub fn parse_combination(s: &str) -> std::result::Result<LinearCombination, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "0" {
        return Ok(Vec::new());
    }
    let mut terms: BTreeMap<String, i64> = BTreeMap::new();
    for term in t.split('+') {
        let split = term
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(term.len());
        let (num, label) = term.split_at(split);
        if label.is_empty() || !label.starts_with('b') {
            return Err(format!("bad term {term:?}"));
        }
        let coeff = if num.is_empty() {
            1
        } else {
            num.parse()
                .map_err(|_| format!("bad coefficient in {term:?}"))?
        };
        *terms.entry(label.to_string()).or_default() += coeff;
    }
    Ok(terms
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(l, c)| (c, l))
        .collect())
}

fn parse_linear_form(s: &str) -> std::result::Result<[i64; 12], String> {
    let mut out = [0i64; 12];
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "0" {
        return Ok(out);
    }
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        let digits = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        let coeff: i64 = if digits == 0 {
            1
        } else {
            rest[..digits]
                .parse()
                .map_err(|_| format!("bad coefficient in {s:?}"))?
        };
        rest = &rest[digits..];
        let mut chars = rest.chars();
        let var = chars
            .next()
            .ok_or_else(|| format!("dangling sign in {s:?}"))?;
        let slot = match var {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            'w' => 3,
            _ => return Err(format!("unknown variable {var:?} in {s:?}")),
        };
        if chars.next() != Some('_') {
            return Err(format!("expected subscript in {s:?}"));
        }
        let factor = chars
            .next()
            .and_then(|c| c.to_digit(10))
            .filter(|d| (1..=3).contains(d))
            .ok_or_else(|| format!("bad factor index in {s:?}"))? as usize;
        out[4 * (factor - 1) + slot] += sign * coeff;
        rest = chars.as_str();
    }
    Ok(out)
}

/// Parses `lhs >= rhs` into the coefficients of `lhs - rhs ≥ 0`.
pub fn parse_inequality(s: &str) -> std::result::Result<[i64; 12], String> {
    let (lhs, rhs) = s
        .split_once(">=")
        .ok_or_else(|| format!("missing >= in {s:?}"))?;
    let l = parse_linear_form(lhs)?;
    let r = parse_linear_form(rhs)?;
    Ok(std::array::from_fn(|i| l[i] - r[i]))
}

/// Parses `0`, `w1`, `2w2`, `w1+w3+w4` into fundamental coordinates.
pub fn parse_fundamental(s: &str) -> std::result::Result<[i64; 4], String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = [0i64; 4];
    if t == "0" {
        return Ok(out);
    }
    for term in t.split('+') {
        let (num, idx) = term
            .split_once('w')
            .ok_or_else(|| format!("bad weight term {term:?}"))?;
        let coeff = if num.is_empty() {
            1
        } else {
            num.parse()
                .map_err(|_| format!("bad coefficient in {term:?}"))?
        };
        let i: usize = idx
            .parse()
            .ok()
            .filter(|i| (1..=4).contains(i))
            .ok_or_else(|| format!("bad index in {term:?}"))?;
        out[i - 1] += coeff;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_checksums_hold() {
        Fixtures::embedded().verify_checksums().unwrap();
    }

    #[test]
    fn corrupted_fixture_fails_checksum() {
        let mut f = Fixtures::embedded();
        let body = f.get(P1_TABLE).replace("2b_4", "3b_4");
        f.set(P1_TABLE, body);
        match f.verify_checksums() {
            Err(Error::Checksum { name, .. }) => assert_eq!(name, P1_TABLE),
            other => panic!("expected checksum failure, got {other:?}"),
        }
    }

    #[test]
    fn parses_all_fixtures() {
        let f = Fixtures::embedded();
        assert_eq!(f.chart(1).unwrap().len(), 8);
        assert_eq!(f.chart(2).unwrap().len(), 24);
        assert_eq!(f.table(1).unwrap().len(), 22);
        // lower triangle of an 11-column table over 22 rows
        let p2 = f.table(2).unwrap();
        assert_eq!(p2.len(), 1 + 2 + 3 + 4 + 5 + 6 + 7 + 8 + 9 + 10 + 11 * 12);
        assert_eq!(f.printed_inequalities().unwrap().len(), 33);
        assert_eq!(f.h_prime().unwrap().len(), 10);
    }

    #[test]
    fn combination_parsing() {
        assert_eq!(parse_combination("0").unwrap(), vec![]);
        assert_eq!(
            parse_combination("b_3^1 + b_3^2").unwrap(),
            vec![(1, "b_3^1".to_string()), (1, "b_3^2".to_string())]
        );
        assert_eq!(
            parse_combination("2b_4").unwrap(),
            vec![(2, "b_4".to_string())]
        );
        assert!(parse_combination("x").is_err());
    }

    #[test]
    fn inequality_parsing() {
        let c = parse_inequality("x_1+z_1 + x_2+z_2 >= y_3+z_3").unwrap();
        assert_eq!(c, [1, 0, 1, 0, 1, 0, 1, 0, 0, -1, -1, 0]);
        let c = parse_inequality("z_1-w_2+y_3 >= 0").unwrap();
        assert_eq!(c, [0, 0, 1, 0, 0, 0, 0, -1, 0, 1, 0, 0]);
        assert!(parse_inequality("x_4 >= 0").is_err());
        assert!(parse_inequality("x_1").is_err());
    }

    #[test]
    fn fundamental_parsing() {
        assert_eq!(parse_fundamental("2w2").unwrap(), [0, 2, 0, 0]);
        assert_eq!(parse_fundamental("w1+w3+w4").unwrap(), [1, 0, 1, 1]);
        assert_eq!(parse_fundamental("0").unwrap(), [0; 4]);
        assert!(parse_fundamental("w5").is_err());
    }
}
