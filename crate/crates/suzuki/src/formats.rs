//! Line-oriented text formats: group files, labeled tables, linear
//! combinations of characters, fragment blocks, problems and elimination
//! scripts. `#` starts a comment line everywhere.

use std::fmt::Write as _;
use std::str::FromStr;

use suzuki_core::cyclo::Cyclotomic;
use suzuki_core::elim::Var;
use suzuki_core::perm::{GeneratedGroup, Permutation};

use crate::error::InputError;

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn err(line: usize, msg: impl Into<String>) -> InputError {
    InputError::Syntax { line, message: msg.into() }
}

/// `degree N`, `gen <cycles>`, plus optional `class <label> <rep>` and
/// `element <name> <perm>` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub classes: Vec<(String, Permutation)>,
    pub elements: Vec<(String, Permutation)>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let mut degree = None;
        let mut out = GroupFile { degree: 0, generators: Vec::new(), classes: Vec::new(), elements: Vec::new() };
        for (no, line) in lines(text) {
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let perm = |s: &str| {
                let d = degree.ok_or_else(|| err(no, "`degree` must come first"))?;
                Permutation::parse(s, d).map_err(|e| err(no, e.to_string()))
            };
            match key {
                "degree" => {
                    if degree.is_some() {
                        return Err(err(no, "repeated `degree`"));
                    }
                    let d: usize = rest.parse().map_err(|_| err(no, format!("bad degree {rest:?}")))?;
                    if d == 0 {
                        return Err(err(no, "degree must be positive"));
                    }
                    degree = Some(d);
                }
                "gen" => out.generators.push(perm(rest)?),
                "class" | "element" => {
                    let (name, p) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| err(no, "expected a name and a permutation"))?;
                    let entry = (name.to_string(), perm(p.trim())?);
                    if key == "class" {
                        out.classes.push(entry)
                    } else {
                        out.elements.push(entry)
                    }
                }
                _ => return Err(err(no, format!("unknown directive {key:?}"))),
            }
        }
        out.degree = degree.ok_or_else(|| err(0, "missing `degree` line"))?;
        Ok(out)
    }

    pub fn group(&self) -> Result<GeneratedGroup, InputError> {
        Ok(GeneratedGroup::generate(self.degree, &self.generators)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("degree {}\n", self.degree);
        for g in &self.generators {
            let _ = writeln!(s, "gen {g}");
        }
        for (l, p) in &self.classes {
            let _ = writeln!(s, "class {l} {p}");
        }
        for (l, p) in &self.elements {
            let _ = writeln!(s, "element {l} {p}");
        }
        s
    }
}

/// A character table as printed: class labels, optional size and order
/// rows, then one named row per character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTable {
    pub labels: Vec<String>,
    pub sizes: Option<Vec<u64>>,
    pub orders: Option<Vec<u64>>,
    pub rows: Vec<(String, Vec<Cyclotomic>)>,
}

fn tsv_cells(line: &str) -> Vec<&str> {
    line.split('\t').map(str::trim).collect()
}

impl LabeledTable {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let mut it = lines(text);
        let (no, header) = it.next().ok_or_else(|| err(0, "empty table"))?;
        let cells = tsv_cells(header);
        if cells.first() != Some(&"class") {
            return Err(err(no, "table must start with a `class` header row"));
        }
        let labels: Vec<String> = cells[1..].iter().map(|s| s.to_string()).collect();
        let mut t = LabeledTable { labels, sizes: None, orders: None, rows: Vec::new() };
        for (no, line) in it {
            let cells = tsv_cells(line);
            if cells.len() != t.labels.len() + 1 {
                return Err(err(no, format!("expected {} cells, found {}", t.labels.len() + 1, cells.len())));
            }
            let ints = || -> Result<Vec<u64>, InputError> {
                cells[1..].iter().map(|c| c.parse().map_err(|_| err(no, format!("bad integer {c:?}")))).collect()
            };
            match cells[0] {
                "size" => t.sizes = Some(ints()?),
                "order" => t.orders = Some(ints()?),
                name => {
                    let vals = cells[1..]
                        .iter()
                        .map(|c| Cyclotomic::from_str(c).map_err(|e| err(no, e.to_string())))
                        .collect::<Result<_, _>>()?;
                    t.rows.push((name.to_string(), vals));
                }
            }
        }
        Ok(t)
    }

    pub fn row_index(&self, name: &str) -> Option<usize> {
        self.rows.iter().position(|(n, _)| n == name)
    }
}

/// Emits a table either as aligned text or as TSV.
pub fn render_table(header: &[String], rows: &[Vec<String>], tsv: bool) -> String {
    let mut out = String::new();
    if tsv {
        for r in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        return out;
    }
    let cols = header.len();
    let width: Vec<usize> = (0..cols)
        .map(|c| {
            std::iter::once(header)
                .chain(rows.iter().map(|r| r.as_slice()))
                .map(|r| r.get(c).map_or(0, |s| s.chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    for r in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = width[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// `2*chi1 + chi13 - chi6`: an integer combination of named characters.
pub fn parse_combination(text: &str, names: &[String]) -> Result<Vec<i128>, String> {
    let mut out = vec![0i128; names.len()];
    let spaced = text.replace('-', " - ").replace('+', " + ");
    let mut sign = 1i128;
    let mut expect_term = true;
    for tok in spaced.split_whitespace() {
        match tok {
            "+" | "-" if expect_term => {
                if tok == "-" {
                    sign = -sign;
                }
            }
            "+" | "-" => {
                sign = if tok == "-" { -1 } else { 1 };
                expect_term = true;
            }
            term if expect_term => {
                let (c, name) = match term.split_once('*') {
                    Some((c, n)) => (c.parse::<i128>().map_err(|_| format!("bad coefficient {c:?}"))?, n),
                    None => (1, term),
                };
                let i = names.iter().position(|n| n == name).ok_or_else(|| format!("unknown character {name:?}"))?;
                out[i] += sign * c;
                sign = 1;
                expect_term = false;
            }
            other => return Err(format!("unexpected {other:?}")),
        }
    }
    if expect_term {
        return Err(format!("incomplete combination {text:?}"));
    }
    Ok(out)
}

/// Lines `lambdaK = <combination>`.
pub fn parse_named_combinations(text: &str, names: &[String]) -> Result<Vec<(String, Vec<i128>)>, InputError> {
    lines(text)
        .map(|(no, line)| {
            let (name, rhs) = line.split_once('=').ok_or_else(|| err(no, "expected `name = combination`"))?;
            Ok((name.trim().to_string(), parse_combination(rhs, names).map_err(|m| err(no, m))?))
        })
        .collect()
}

/// A block of printed fragment rows on named columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentBlock {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cyclotomic>>,
}

/// Blocks introduced by `fragment <name> columns <labels...>`.
pub fn parse_fragment_blocks(text: &str) -> Result<Vec<FragmentBlock>, InputError> {
    let mut blocks: Vec<FragmentBlock> = Vec::new();
    for (no, line) in lines(text) {
        if let Some(rest) = line.strip_prefix("fragment ") {
            let (name, cols) =
                rest.split_once(" columns ").ok_or_else(|| err(no, "expected `fragment <name> columns ...`"))?;
            blocks.push(FragmentBlock {
                name: name.trim().to_string(),
                columns: cols.split_whitespace().map(str::to_string).collect(),
                rows: Vec::new(),
            });
            continue;
        }
        let b = blocks.last_mut().ok_or_else(|| err(no, "row before the first `fragment` header"))?;
        let cells = tsv_cells(line);
        if cells.len() != b.columns.len() {
            return Err(err(no, format!("expected {} values", b.columns.len())));
        }
        b.rows.push(
            cells
                .iter()
                .map(|c| Cyclotomic::from_str(c).map_err(|e| err(no, e.to_string())))
                .collect::<Result<_, _>>()?,
        );
    }
    Ok(blocks)
}

/// Bundles a group with its special classes and optional fixtures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub name: String,
    pub group: String,
    pub table: Option<String>,
    pub lambda: Option<String>,
    pub special: Vec<String>,
    pub psi: Vec<(String, String)>,
    /// `|G:H| ≡ residue (mod modulus)`.
    pub index: Option<(u64, u64)>,
    pub fragments: Option<String>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let mut p = ProblemFile {
            name: String::new(),
            group: String::new(),
            table: None,
            lambda: None,
            special: Vec::new(),
            psi: Vec::new(),
            index: None,
            fragments: None,
        };
        for (no, line) in lines(text) {
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim().to_string();
            match key {
                "name" => p.name = rest,
                "group" => p.group = rest,
                "table" => p.table = Some(rest),
                "lambda" => p.lambda = Some(rest),
                "fragments" => p.fragments = Some(rest),
                "special" => p.special = rest.split_whitespace().map(str::to_string).collect(),
                "psi" => {
                    let (n, c) = rest.split_once('=').ok_or_else(|| err(no, "expected `psi <name> = combination`"))?;
                    p.psi.push((n.trim().to_string(), c.trim().to_string()));
                }
                "index" => {
                    let v: Vec<u64> = rest
                        .split_whitespace()
                        .map(|s| s.parse().map_err(|_| err(no, "bad index congruence")))
                        .collect::<Result<_, _>>()?;
                    match v[..] {
                        [r, m] if m > 0 => p.index = Some((r, m)),
                        _ => return Err(err(no, "expected `index <residue> <modulus>`")),
                    }
                }
                _ => return Err(err(no, format!("unknown directive {key:?}"))),
            }
        }
        if p.group.is_empty() {
            return Err(err(0, "problem names no group file"));
        }
        if p.special.is_empty() {
            return Err(err(0, "the special class set is empty (dimension 0)"));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    Problem(String),
    Fragment(String),
    Merge,
    Equation { triple: [String; 3], a: u64 },
    Congruence { psi: String, row: usize },
    Project(Vec<Var>),
    Finisher(String),
}

/// Parses an elimination script; rows are 1-based in the text and 0-based here.
pub fn parse_script(text: &str) -> Result<Vec<Directive>, InputError> {
    lines(text)
        .map(|(no, line)| {
            let w: Vec<&str> = line.split_whitespace().collect();
            Ok(match w[..] {
                ["problem", p] => Directive::Problem(p.to_string()),
                ["fragment", f] => Directive::Fragment(f.to_string()),
                ["merge"] => Directive::Merge,
                ["equation", x, y, z, a] => Directive::Equation {
                    triple: [x.to_string(), y.to_string(), z.to_string()],
                    a: a.parse().map_err(|_| err(no, format!("bad structure constant {a:?}")))?,
                },
                ["congruence", psi, row] => {
                    let r: usize = row.parse().map_err(|_| err(no, format!("bad row {row:?}")))?;
                    if r == 0 {
                        return Err(err(no, "rows are numbered from 1"));
                    }
                    Directive::Congruence { psi: psi.to_string(), row: r - 1 }
                }
                ["project", keep] => {
                    let list = keep.strip_prefix("keep=").ok_or_else(|| err(no, "expected `project keep=<vars>`"))?;
                    Directive::Project(
                        list.split(',')
                            .map(|v| v.parse::<Var>().map_err(|e| err(no, e.to_string())))
                            .collect::<Result<_, _>>()?,
                    )
                }
                ["finisher", name] => Directive::Finisher(name.to_string()),
                _ => return Err(err(no, format!("unrecognized directive {line:?}"))),
            })
        })
        .collect()
}

/// `a,b,c;d,e,f` for an integer matrix.
pub fn matrix_to_line(rows: &[Vec<i64>]) -> String {
    rows.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";")
}

pub fn matrix_from_line(s: &str) -> Option<Vec<Vec<i64>>> {
    s.split(';').map(|r| r.split(',').map(|x| x.trim().parse().ok()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_round_trip() {
        let text = "# c\ndegree 4\ngen (1,2,3,4)\ngen (1,3)\nclass r (1,2,3,4)\nelement s (1,3)\n";
        let g = GroupFile::parse(text).unwrap();
        assert_eq!(GroupFile::parse(&g.to_text()).unwrap(), g);
        assert_eq!(g.group().unwrap().order(), 8);
    }

    #[test]
    fn group_file_errors() {
        assert!(GroupFile::parse("gen (1,2)\n").is_err());
        assert!(GroupFile::parse("degree 3\ngen (1,4)\n").is_err());
        assert!(GroupFile::parse("degree 3\nfoo\n").is_err());
    }

    #[test]
    fn combination_parsing() {
        let names: Vec<String> = (1..=4).map(|i| format!("chi{i}")).collect();
        assert_eq!(parse_combination("2*chi1 + chi3-chi4", &names).unwrap(), vec![2, 0, 1, -1]);
        assert_eq!(parse_combination("-chi2", &names).unwrap(), vec![0, -1, 0, 0]);
        assert!(parse_combination("chi5", &names).is_err());
        assert!(parse_combination("chi1 +", &names).is_err());
    }

    #[test]
    fn script_parsing() {
        let d =
            parse_script("fragment 4\nequation x y z 3\ncongruence mod27 3\nproject keep=1/|G|,1/d3\nfinisher frag4\n")
                .unwrap();
        assert_eq!(d[2], Directive::Congruence { psi: "mod27".into(), row: 2 });
        assert_eq!(d[3], Directive::Project(vec![Var::InvOrder, Var::InvDegree(2)]));
        assert!(parse_script("congruence mod9 0\n").is_err());
    }

    #[test]
    fn matrix_line_round_trip() {
        let m = vec![vec![1, -2], vec![0, 3]];
        assert_eq!(matrix_from_line(&matrix_to_line(&m)).unwrap(), m);
    }

    #[test]
    fn empty_special_set_rejected() {
        assert!(ProblemFile::parse("group g.grp\nspecial\n").is_err());
    }
}
