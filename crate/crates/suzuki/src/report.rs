//! The `verify-paper` report: every acceptance check, in order.
//!
//! Content is deterministic for a fixed fixture set; wall-clock timings are
//! kept apart in [`Report::timings`] and never rendered into the report text.

use std::fmt::Write as _;
use std::rc::Rc;
use std::str::FromStr;
use std::time::{Duration, Instant};

use suzuki_core::chartab::{class_coefficient, verify_orthogonality, CharacterTable};
use suzuki_core::cyclo::Cyclotomic;
use suzuki_core::elim::{Certificate, EliminationOutcome, IndexCongruence, PolyVar, Var};
use suzuki_core::gf3mod::{alt6, hyperplane_coverage, permutation_module_section, WittType};

use crate::error::InputError;
use crate::fixtures::Source;
use crate::formats::LabeledTable;
use crate::pipeline::{Analysis, Problem};
use crate::script::{run_script, ScriptRun, Session};
use crate::search::SearchOptions;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Elimination certificates, one block per script.
    pub certificates: Vec<(String, String)>,
    pub timings: Vec<(String, Duration)>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn criterion_passed(&self, criterion: u8) -> bool {
        let mut it = self.checks.iter().filter(|c| c.criterion == criterion).peekable();
        it.peek().is_some() && it.all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{verdict} [{}] {}: expected {}; got {}", c.criterion, c.name, c.expected, c.got);
        }
        for (name, text) in &self.certificates {
            let _ = writeln!(s, "\n== {name} ==");
            s.push_str(text);
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(s, "\n{passed}/{} checks passed", self.checks.len());
        s
    }

    fn check(
        &mut self,
        criterion: u8,
        name: impl Into<String>,
        expected: impl ToString,
        got: impl ToString,
        pass: bool,
    ) {
        self.checks.push(Check {
            criterion,
            name: name.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass,
        });
    }

    /// Records `got == expected`.
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, criterion: u8, name: &str, expected: T, got: T) {
        let pass = expected == got;
        self.check(criterion, name, format!("{expected:?}"), format!("{got:?}"), pass);
    }

    fn fail(&mut self, criterion: u8, name: &str, expected: &str, err: impl ToString) {
        self.check(criterion, name, expected, format!("error: {}", err.to_string()), false);
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub fixtures: Source,
    pub search: SearchOptions,
    /// Replaces the `|G:H|` congruence of every problem.
    pub index_override: Option<IndexCongruence>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { fixtures: Source::Embedded, search: SearchOptions::default(), index_override: None }
    }
}

struct Timer<'a> {
    report: &'a mut Report,
}

impl Timer<'_> {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.report.timings.push((name.to_string(), start.elapsed()));
        out
    }
}

pub fn verify_paper(opts: &VerifyOptions) -> Report {
    let mut report = Report::default();
    let mut session = Session::new(opts.fixtures.clone(), opts.search.clone());
    session.index_override = opts.index_override;

    let h = Timer { report: &mut report }.time("H character table", || load(&opts.fixtures, "h108.problem"));
    check_table(&mut report, 1, "h108.problem", "table1.tsv", &h);
    if let Ok(p) = &h {
        check_galois_pair(&mut report, p);
    }

    let k = Timer { report: &mut report }.time("K character table", || load(&opts.fixtures, "k648.problem"));
    check_table(&mut report, 2, "k648.problem", "table3.tsv", &k);

    match &k {
        Ok(p) => check_structure_constants(&mut report, p),
        Err(e) => report.fail(3, "structure constants in K", "7 values", e),
    }

    let ha = Timer { report: &mut report }.time("H pipeline", || session.analysis("h108.problem"));
    let ka = Timer { report: &mut report }.time("K pipeline", || session.analysis("k648.problem"));
    check_lattice(&mut report, "H", &ha, 8);
    check_lattice(&mut report, "K", &ka, 9);

    check_gamma(&mut report, &opts.fixtures, "H", &ha, "h108.gamma.tsv", Some("h108.gram.tsv"));
    check_gamma(&mut report, &opts.fixtures, "K", &ka, "k648.gamma.tsv", None);

    check_table4(&mut report, &ka);

    let mut runs = Vec::new();
    for name in ["frag1", "frag2", "frag3", "frag4"] {
        let run = Timer { report: &mut report }.time(name, || script(&mut session, &format!("{name}.elim")));
        check_fragment_script(&mut report, name, &run);
        runs.push((name, run));
    }
    check_table2(&mut report, &ha);
    let run = Timer { report: &mut report }.time("thm108", || script(&mut session, "thm108.elim"));
    check_thm108(&mut report, &run);
    runs.push(("thm108", run));

    // frag1..frag3 describe no group, so only the two pipelines realized by
    // H and K themselves can be evaluated at G = H
    for (name, run) in &runs {
        if !matches!(*name, "frag4" | "thm108") {
            if let Ok(r) = run {
                report.certificates.push((name.to_string(), r.render()));
            }
            continue;
        }
        match run {
            Ok(r) => {
                match r.consistency_failures() {
                    Ok(bad) => report.check(
                        9,
                        format!("{name} at G = H"),
                        "all relations hold",
                        got_list(&bad),
                        bad.is_empty(),
                    ),
                    Err(e) => report.fail(9, &format!("{name} at G = H"), "all relations hold", e),
                }
                report.certificates.push((name.to_string(), r.render()));
            }
            Err(e) => report.fail(9, &format!("{name} at G = H"), "all relations hold", e),
        }
    }
    check_psi_congruences(&mut report, &ka);

    let start = Instant::now();
    check_gf3(&mut report);
    report.timings.push(("GF(3) module".into(), start.elapsed()));
    report
}

fn load(source: &Source, name: &str) -> Result<Problem, InputError> {
    let text = source.read(name)?;
    Problem::load(&text, source).map_err(|e| e.in_file(name))
}

fn script(session: &mut Session, name: &str) -> Result<ScriptRun, InputError> {
    let text = session.source.read(name)?;
    run_script(&text, session).map_err(|e| e.in_file(name))
}

fn got_list(items: &[String]) -> String {
    if items.is_empty() {
        "none failed".into()
    } else {
        items.join("; ")
    }
}

/// The printed table as a table over the computed classes.
fn printed_as_table(p: &Problem) -> Result<CharacterTable, String> {
    let (t, cols) = p.printed.as_ref().ok_or("no printed table")?;
    let rows = t
        .rows
        .iter()
        .map(|(_, vals)| {
            let mut row = vec![Cyclotomic::zero(); cols.len()];
            for (&c, v) in cols.iter().zip(vals) {
                row[c] = v.clone();
            }
            row
        })
        .collect();
    CharacterTable::from_values(p.table.group().clone(), p.table.classes().clone(), rows).map_err(|e| e.to_string())
}

fn check_table(report: &mut Report, criterion: u8, problem: &str, table_name: &str, p: &Result<Problem, InputError>) {
    let p = match p {
        Ok(p) => p,
        Err(e) => return report.fail(criterion, &format!("load {problem}"), "labels, sizes and orders agree", e),
    };
    let orth = match printed_as_table(p) {
        Ok(t) => {
            let r = verify_orthogonality(&t);
            let got = format!("{} row and {} column failures", r.row_failures.len(), r.column_failures.len());
            (got, r.passed())
        }
        Err(e) => (format!("error: {e}"), false),
    };
    report.check(criterion, format!("{table_name} orthogonality"), "both relations hold", orth.0, orth.1);
    let (t, _) = p.printed.as_ref().expect("problem has a printed table");
    let n = t.rows.len();
    let mut facts = vec![format!("{} classes", p.table.len())];
    if t.sizes.is_some() {
        facts.push("sizes".into());
    }
    if t.orders.is_some() {
        facts.push("orders".into());
    }
    report.check(
        criterion,
        format!("{table_name} labels"),
        "order, size and representative agree",
        facts.join(", "),
        true,
    );
    match p.printed_rows() {
        Ok(_) => report.check(
            criterion,
            format!("{table_name} rows equal the computed table"),
            format!("{n} rows matched"),
            format!("{n} rows matched"),
            true,
        ),
        Err(e) => report.fail(
            criterion,
            &format!("{table_name} rows equal the computed table"),
            &format!("{n} rows matched"),
            e,
        ),
    }
    let irrational: usize = t.rows.iter().flat_map(|(_, v)| v).filter(|v| v.as_integer().is_none()).count();
    let matched = p.printed_rows().is_ok();
    report.check(
        criterion,
        format!("{table_name} irrational entries"),
        format!("{irrational} entries reproduced"),
        format!("{} entries reproduced", if matched { irrational } else { 0 }),
        matched,
    );
}

fn check_galois_pair(report: &mut Report, p: &Problem) {
    let alpha = Cyclotomic::from_str("-2 + -3*E(3)^1").expect("literal");
    let beta = Cyclotomic::from_str("1 + 3*E(3)^1").expect("literal");
    let name = "chi14(t7) in {alpha, beta}";
    let expected = format!("{alpha} or {beta}");
    let (Some((t, _)), Some(t7)) = (&p.printed, p.labels.resolve("t7")) else {
        return report.fail(1, name, &expected, "fixture lacks chi14 or t7");
    };
    let Some(j) = t.row_index("chi14") else {
        return report.fail(1, name, &expected, "fixture lacks chi14");
    };
    match p.printed_rows() {
        Ok(map) => {
            let v = p.table.character(map[j]).value(t7).clone();
            let pass = v == alpha || v == beta;
            report.check(1, name, expected, v, pass);
        }
        Err(e) => report.fail(1, name, &expected, e),
    }
}

fn check_structure_constants(report: &mut Report, p: &Problem) {
    let want = [
        ("x", "y", "z", 3),
        ("x", "x", "y", 2),
        ("x", "x", "z", 0),
        ("y", "y", "x", 4),
        ("y", "y", "z", 6),
        ("z", "z", "x", 4),
        ("z", "z", "y", 2),
    ];
    for (a, b, c, n) in want {
        let name = format!("a_{a}{b}{c}");
        let cls: Option<Vec<usize>> = [a, b, c].iter().map(|l| p.labels.resolve(l)).collect();
        let Some(cls) = cls else {
            report.fail(3, &name, &n.to_string(), "element names missing from k648.grp");
            continue;
        };
        let formula = p.table.structure_constant(cls[0], cls[1], cls[2]);
        let count = class_coefficient(p.table.group(), p.table.classes(), cls[0], cls[1], cls[2]);
        match (formula, count) {
            (Ok(f), Ok(k)) => report.check(
                3,
                name,
                format!("{n} by formula and by count"),
                format!("formula {f}, count {k}"),
                f == n && k == n,
            ),
            (Err(e), _) | (_, Err(e)) => report.fail(3, &name, &n.to_string(), e),
        }
    }
}

fn check_lattice(report: &mut Report, which: &str, a: &Result<Rc<Analysis>, InputError>, dim: usize) {
    let name = format!("{which} vanishing lattice");
    let expected = format!("dimension {dim}, lambda list in lattice, det ±1");
    match a {
        Ok(a) => {
            let (inside, det) = match &a.lattice {
                Some(l) => (l.all_in_lattice(), l.determinant),
                None => (false, None),
            };
            let pass = a.vanishing.len() == dim && inside && matches!(det, Some(1) | Some(-1));
            let det = det.map_or("none".to_string(), |d| d.to_string());
            report.check(
                4,
                name,
                expected,
                format!("dimension {}, in lattice {inside}, det {det}", a.vanishing.len()),
                pass,
            );
        }
        Err(e) => report.fail(4, &name, &expected, e),
    }
}

fn read_matrix(source: &Source, name: &str) -> Result<LabeledTable, InputError> {
    LabeledTable::parse(&source.read(name)?).map_err(|e| e.in_file(name))
}

fn check_gamma(
    report: &mut Report,
    source: &Source,
    which: &str,
    a: &Result<Rc<Analysis>, InputError>,
    gamma_file: &str,
    gram_file: Option<&str>,
) {
    let a = match a {
        Ok(a) => a,
        Err(e) => return report.fail(5, &format!("{which} gamma matrix"), gamma_file, e),
    };
    match read_matrix(source, gamma_file) {
        Ok(t) => {
            let mut bad = Vec::new();
            let mut rows = 0;
            for (label, printed) in &t.rows {
                rows += 1;
                match a.problem.column_of(label) {
                    Some(i) if a.gamma.rows[i] == *printed => {}
                    Some(i) => {
                        let got: Vec<String> = a.gamma.rows[i].iter().map(|v| v.to_string()).collect();
                        bad.push(format!("{label}: [{}]", got.join(", ")));
                    }
                    None => bad.push(format!("{label} is not a special class")),
                }
            }
            let pass = bad.is_empty() && rows == a.gamma.rows.len();
            report.check(
                5,
                format!("{which} gamma matrix"),
                format!("{gamma_file} entry for entry"),
                if pass { "equal".into() } else { got_list(&bad) },
                pass,
            );
        }
        Err(e) => report.fail(5, &format!("{which} gamma matrix"), gamma_file, e),
    }
    if let Some(gram_file) = gram_file {
        match read_matrix(source, gram_file) {
            Ok(t) => {
                let printed: Option<Vec<Vec<i64>>> =
                    t.rows.iter().map(|(_, r)| r.iter().map(|v| v.as_integer().map(|x| x as i64)).collect()).collect();
                let pass = printed.as_ref() == Some(&a.gram.d);
                let diag: Vec<i64> = (0..a.gram.d.len()).map(|i| a.gram.d[i][i]).collect();
                report.check(
                    5,
                    format!("{which} Gram matrix"),
                    format!("{gram_file} entry for entry"),
                    format!("diagonal {diag:?}, {}", if pass { "equal" } else { "different" }),
                    pass,
                );
            }
            Err(e) => report.fail(5, &format!("{which} Gram matrix"), gram_file, e),
        }
    }
}

fn check_table4(report: &mut Report, ka: &Result<Rc<Analysis>, InputError>) {
    let a = match ka {
        Ok(a) => a,
        Err(e) => return report.fail(6, "K solutions", "4", e),
    };
    report.eq(6, "K canonical solutions", 4, a.solutions.len());
    let mut hits = Vec::new();
    for block in &a.problem.blocks {
        let name = format!("table4.tsv fragment {}", block.name);
        match a.matching_fragments(block) {
            Ok(m) => {
                let rows: Vec<usize> = m.iter().map(|&i| a.fragments[i].row_count()).collect();
                report.check(
                    6,
                    name,
                    format!("one solution with {} rows", block.rows.len()),
                    format!("solutions {m:?} with rows {rows:?}"),
                    m.len() == 1 && rows == [block.rows.len()],
                );
                hits.extend(m);
            }
            Err(e) => report.fail(6, &name, "one solution", e),
        }
    }
    let counts: Vec<usize> = a.problem.blocks.iter().map(|b| b.rows.len()).collect();
    report.eq(6, "table4.tsv row counts", vec![13, 12, 13, 14], counts);
    hits.sort();
    hits.dedup();
    report.check(
        6,
        "table4.tsv blocks use distinct solutions",
        "4 distinct",
        format!("{} distinct", hits.len()),
        hits.len() == 4,
    );
}

fn check_fragment_script(report: &mut Report, name: &str, run: &Result<ScriptRun, InputError>) {
    let r = match run {
        Ok(r) => r,
        Err(e) => return report.fail(7, name, "a completed elimination", e),
    };
    report.check(
        7,
        format!("{name} certificates"),
        "multipliers recombine to every relation",
        r.certified,
        r.certified,
    );
    let inv = |k: usize| Var::InvDegree(k - 1);
    match name {
        "frag1" => {
            report.check(7, "frag1 outcome", "Contradiction", &r.outcome, r.outcome.is_contradiction());
            let rel = r.relations.first().map(|p| &p.relation);
            let pass = rel.is_some_and(|rel| {
                rel.variables().into_iter().collect::<Vec<_>>() == [inv(7), inv(11)]
                    && rel.coefficient(inv(7)) * 5 == rel.coefficient(inv(11)) * 2
            });
            report.check(
                7,
                "frag1 relation",
                "w2 = w3, i.e. 2/d7 + 5/d11 = 0 up to scale",
                rel.map_or("none".into(), |x| x.to_string()),
                pass,
            );
            let got: Vec<String> = r.congruences.iter().map(|c| c.to_string()).collect();
            let want = ["d7 ≡ 2 (mod 9)", "d11 ≡ 1 (mod 9)"];
            report.check(7, "frag1 mod-9 residues", want.join(", "), got.join(", "), got == want);
        }
        "frag2" => {
            report.check(7, "frag2 outcome", "Contradiction", &r.outcome, r.outcome.is_contradiction());
            let d2 = PolyVar::D(1);
            let pass = r.polys.first().is_some_and(|p| {
                let (a, b, c) = (p.coefficient(&[d2]), p.coefficient(&[PolyVar::N, d2]), p.coefficient(&[PolyVar::N]));
                a != 0 && a == -21 * b && a * 8 == -21 * c && p.variables().len() == 2
            });
            let got = r.polys.first().map_or("none".into(), |p| p.to_string());
            report.check(7, "frag2 relation", "21·d2 - d2·n - 8·n = 0", got, pass);
            let n = r.index.residue % 9;
            let residue = (8 * n) % 9;
            report.check(
                7,
                "frag2 right side 8|G:H| mod 9",
                "-1 ≡ 8 (mod 9)",
                residue,
                r.index.modulus % 9 == 0 && residue == 8,
            );
        }
        "frag3" => {
            let pass = matches!(&r.outcome, EliminationOutcome::Contradiction(Certificate::NonzeroConstant { .. }));
            report.check(7, "frag3 outcome", "Contradiction from a nonzero constant", &r.outcome, pass);
            let rel = r.relations.first().map(|p| &p.relation);
            let only_d3 = rel.is_some_and(|rel| rel.variables().into_iter().collect::<Vec<_>>() == [inv(3)]);
            report.check(
                7,
                "frag3 relation",
                "c/d3 = 0 with c ≠ 0",
                rel.map_or("none".into(), |x| x.to_string()),
                only_d3,
            );
        }
        "frag4" => {
            let orders = r.outcome.forced_orders();
            report.check(7, "frag4 outcome", "ForcedOrder {648}", &r.outcome, orders == Some(&[648][..]));
            let (d3, d9) = (PolyVar::D(2), PolyVar::D(8));
            let pass = r.polys.first().is_some_and(|p| {
                let (a, b, c) =
                    (p.coefficient(&[d3, d9]), p.coefficient(&[PolyVar::N, d3]), p.coefficient(&[PolyVar::N, d9]));
                a != 0 && b == -6 * a && c == -6 * a && p.variables().len() == 3
            });
            let got = r.polys.first().map_or("none".into(), |p| p.to_string());
            report.check(7, "frag4 relation", "d3·d9 = 6n(d3 + d9)", got, pass);
            let steps = match &r.outcome {
                EliminationOutcome::ForcedOrder { steps, .. } => steps.len(),
                _ => 0,
            };
            report.check(7, "frag4 case analysis", "recorded steps", format!("{steps} steps"), steps > 0);
        }
        _ => {}
    }
}

fn check_table2(report: &mut Report, ha: &Result<Rc<Analysis>, InputError>) {
    match ha {
        Ok(a) => {
            report.eq(8, "H canonical solutions", 10, a.solutions.len());
            match a.aligned_fragment("table2") {
                Ok(f) => report.check(
                    8,
                    "table2.tsv among the solutions",
                    "one matching solution",
                    format!("{} rows aligned", f.row_count()),
                    true,
                ),
                Err(e) => report.fail(8, "table2.tsv among the solutions", "one matching solution", e),
            }
        }
        Err(e) => report.fail(8, "table2.tsv among the solutions", "one matching solution", e),
    }
}

fn check_thm108(report: &mut Report, run: &Result<ScriptRun, InputError>) {
    let r = match run {
        Ok(r) => r,
        Err(e) => return report.fail(8, "thm108", "ForcedOrder {108}", e),
    };
    report.check(8, "thm108 certificates", "multipliers recombine to every relation", r.certified, r.certified);
    let rel = r.relations.first().map(|p| &p.relation);
    let ratio = rel.and_then(|rel| suzuki_core::elim::order_degree_ratio(rel, 1).ok());
    let got = ratio.map_or("none".to_string(), |q| format!("|G| = {q}·d2"));
    let pass = ratio.is_some_and(|q| q == 27.into() || q == (-27).into());
    report.check(8, "thm108 order relation", "|G| = ±27·d2", got, pass);
    report.check(8, "thm108 outcome", "ForcedOrder {108}", &r.outcome, r.outcome.forced_orders() == Some(&[108][..]));
}

fn check_psi_congruences(report: &mut Report, ka: &Result<Rc<Analysis>, InputError>) {
    let a = match ka {
        Ok(a) => a,
        Err(e) => return report.fail(9, "psi congruences on Irr(K)", "all hold", e),
    };
    let p = &a.problem;
    for (name, _) in &p.psi {
        let label = format!("{name} congruence on every irreducible of K");
        let psi = match p.psi_rows(name) {
            Ok(v) => v,
            Err(e) => {
                report.fail(9, &label, "all hold", e);
                continue;
            }
        };
        let mut bad = Vec::new();
        for (i, chi) in p.table.irreducibles().iter().enumerate() {
            let row: Vec<Cyclotomic> = p.special_classes.iter().map(|&c| chi.value(c).clone()).collect();
            match suzuki_core::elim::congruence_from_psi(&p.table, &p.special, &p.special_classes, &psi, &row, 0) {
                Ok(c) if c.holds(p.table.degrees()[i] as i128) => {}
                Ok(c) => bad.push(format!("row {}: {c} but degree {}", i + 1, p.table.degrees()[i])),
                Err(e) => bad.push(e.to_string()),
            }
        }
        report.check(9, label, "all hold", got_list(&bad), bad.is_empty());
    }
}

fn check_gf3(report: &mut Report) {
    let module = match alt6().and_then(|g| permutation_module_section(&g)) {
        Ok(m) => m,
        Err(e) => return report.fail(10, "Alt(6) module", "built", e),
    };
    report.eq(10, "module is irreducible", true, module.is_irreducible());
    let orbits = module.orbits_on_lines();
    let lens: Vec<usize> = orbits.iter().map(Vec::len).collect();
    report.eq(10, "line orbit lengths", vec![10, 15, 15], lens.clone());
    let ten: Vec<Vec<u8>> = orbits.iter().find(|o| o.len() == 10).cloned().unwrap_or_default();
    if let Some(o15) = orbits.iter().find(|o| o.len() == 15) {
        match module
            .vector_stabilizer(&o15[0])
            .and_then(|s| Ok((s.order(), s.derived_subgroup()?.order(), s.elements().iter().any(|g| g.order() == 6))))
        {
            Ok((n, d, six)) => report.check(
                10,
                "15-orbit vector stabilizer",
                "order 12, derived order 4, no element of order 6",
                format!("order {n}, derived order {d}, order-6 element {six}"),
                n == 12 && d == 4 && !six,
            ),
            Err(e) => report.fail(10, "15-orbit vector stabilizer", "Alt(4) profile", e),
        }
    }
    let cover = hyperplane_coverage(module.dim(), &ten);
    let met = cover.iter().filter(|&&b| b).count();
    report.check(
        10,
        "hyperplanes meeting the 10-orbit",
        "40 of 40",
        format!("{met} of {}", cover.len()),
        met == 40 && cover.len() == 40,
    );
    let mut fixed = module.order4_fixed_points();
    fixed.sort();
    fixed.dedup();
    report.eq(10, "order-4 fixed-space sizes", vec![(1u64, 9u64)], fixed);
    let forms = module.invariant_forms();
    report.eq(10, "invariant forms up to scalar", 1, forms.len());
    match forms.first() {
        Some(q) => {
            report.eq(10, "form is non-degenerate", true, q.is_nondegenerate());
            let mut singular = q.singular_lines();
            singular.sort();
            let mut ten_sorted = ten.clone();
            ten_sorted.sort();
            report.eq(10, "singular lines", 10, singular.len());
            report.eq(10, "singular lines are the 10-orbit", true, singular == ten_sorted);
            report.eq(10, "Witt type", WittType::Minus, q.witt_type());
        }
        None => report.fail(10, "invariant quadratic form", "one", "none found"),
    }
}
