//! Command implementations behind the `suzuki` binary; each returns the text
//! for stdout and leaves exit-code policy to the caller.

use std::path::Path;

use suzuki_core::chartab::{character_table, class_coefficient};
use suzuki_core::perm::conjugacy_classes;

use crate::error::InputError;
use crate::fixtures::{read_path_or_fixture, Source};
use crate::formats::{render_table, GroupFile};
use crate::pipeline::{Analysis, ClassLabels, Problem};
use crate::report::{verify_paper, Report, VerifyOptions};
use crate::script::{run_script, ScriptRun, Session};
use crate::search::SearchOptions;

fn load_group(arg: &str) -> Result<(GroupFile, suzuki_core::perm::GeneratedGroup), InputError> {
    let (text, _) = read_path_or_fixture(arg)?;
    let gf = GroupFile::parse(&text).map_err(|e| e.in_file(arg))?;
    let g = gf.group()?;
    Ok((gf, g))
}

pub fn classes(group: &str, tsv: bool) -> Result<String, InputError> {
    let (gf, g) = load_group(group)?;
    let cd = conjugacy_classes(&g);
    let labels = ClassLabels::from_group_file(&gf, &g, &cd)?;
    let header: Vec<String> = ["class", "size", "order", "centralizer", "representative"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = cd
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![
                labels.label(i).to_string(),
                c.size.to_string(),
                c.element_order.to_string(),
                cd.centralizer_order(i, g.order()).to_string(),
                c.representative.to_string(),
            ]
        })
        .collect();
    let mut out = render_table(&header, &rows, tsv);
    if !tsv {
        out.push_str(&format!("{} classes, group order {}\n", cd.len(), g.order()));
    }
    Ok(out)
}

pub fn chartab(group: &str, tsv: bool) -> Result<String, InputError> {
    let (gf, g) = load_group(group)?;
    let table = character_table(&g)?;
    let cd = table.classes();
    let labels = ClassLabels::from_group_file(&gf, &g, cd)?;
    let mut header = vec!["class".to_string()];
    header.extend(labels.labels().iter().cloned());
    let mut rows = vec![
        std::iter::once("size".to_string()).chain(cd.classes().iter().map(|c| c.size.to_string())).collect(),
        std::iter::once("order".to_string()).chain(cd.classes().iter().map(|c| c.element_order.to_string())).collect(),
    ];
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let mut r = vec![format!("X.{}", i + 1)];
        r.extend(chi.values().iter().map(|v| v.to_string()));
        rows.push(r);
    }
    Ok(render_table(&header, &rows, tsv))
}

/// `a_xyz` by the character formula, cross-checked by counting pairs.
pub fn structconst(group: &str, x: &str, y: &str, z: &str) -> Result<(String, bool), InputError> {
    let (gf, g) = load_group(group)?;
    let table = character_table(&g)?;
    let labels = ClassLabels::from_group_file(&gf, &g, table.classes())?;
    let resolve =
        |n: &str| labels.resolve(n).ok_or_else(|| InputError::Other(format!("unknown class or element {n:?}")));
    let (i, j, k) = (resolve(x)?, resolve(y)?, resolve(z)?);
    let formula = table.structure_constant(i, j, k)?;
    let count = class_coefficient(&g, table.classes(), i, j, k)?;
    if formula == count {
        Ok((format!("{formula}\n"), true))
    } else {
        Ok((format!("character formula {formula} but pair count {count}\n"), false))
    }
}

fn cyclo_rows(labels: &[String], rows: &[Vec<suzuki_core::cyclo::Cyclotomic>]) -> Vec<Vec<String>> {
    labels
        .iter()
        .zip(rows)
        .map(|(l, r)| std::iter::once(l.clone()).chain(r.iter().map(|v| v.to_string())).collect())
        .collect()
}

fn int_rows(labels: &[String], rows: &[Vec<i64>]) -> Vec<Vec<String>> {
    labels
        .iter()
        .zip(rows)
        .map(|(l, r)| std::iter::once(l.clone()).chain(r.iter().map(|v| v.to_string())).collect())
        .collect()
}

/// Emitted artifacts of the special-classes pipeline, keyed by file name.
pub fn suzuki_artifacts(a: &Analysis, tsv: bool) -> Vec<(String, String)> {
    let p = &a.problem;
    let lambda_names: Vec<String> = match &p.lambda {
        Some(l) => l.iter().map(|(n, _)| n.clone()).collect(),
        None => (1..=a.basis.len()).map(|i| format!("lambda{i}")).collect(),
    };
    let header = |first: &str, rest: &[String]| {
        std::iter::once(first.to_string()).chain(rest.iter().cloned()).collect::<Vec<_>>()
    };
    let mut out = Vec::new();
    out.push((
        "C.tsv".into(),
        render_table(&header("gamma", &lambda_names), &cyclo_rows(&p.special_labels, &a.gamma.rows), tsv),
    ));
    let mut d = render_table(&header("D", &lambda_names), &int_rows(&lambda_names, &a.gram.d), tsv);
    d.push_str(&render_table(
        &header("principal", &lambda_names),
        &int_rows(&["p".into()], std::slice::from_ref(&a.gram.principal)),
        tsv,
    ));
    out.push(("D.tsv".into(), d));
    for (i, (b, f)) in a.solutions.iter().zip(&a.fragments).enumerate() {
        let cols: Vec<String> = (1..=b.column_count()).map(|k| format!("theta{k}")).collect();
        out.push((
            format!("B{}.tsv", i + 1),
            render_table(&header("mu", &cols), &int_rows(&lambda_names, &b.rows), tsv),
        ));
        let rows: Vec<String> = (1..=f.row_count()).map(|k| format!("theta{k}")).collect();
        out.push((
            format!("fragment{}.tsv", i + 1),
            render_table(&header("row", &p.special_labels), &cyclo_rows(&rows, f.values()), tsv),
        ));
    }
    out
}

pub fn suzuki(problem: &str, opts: &SearchOptions, out_dir: Option<&Path>, tsv: bool) -> Result<String, InputError> {
    let (text, source) = read_path_or_fixture(problem)?;
    let p = Problem::load(&text, &source).map_err(|e| e.in_file(problem))?;
    let a = Analysis::run(p, opts)?;
    let artifacts = suzuki_artifacts(&a, tsv);
    let mut s = format!(
        "problem {}: |H| = {}, {} special classes, vanishing lattice dimension {}\n",
        a.problem.file.name,
        a.problem.order(),
        a.problem.special_classes.len(),
        a.vanishing.len()
    );
    if !a.axioms_passed {
        s.push_str("warning: special-class axioms failed\n");
    }
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|source| InputError::Io { path: dir.display().to_string(), source })?;
            for (name, body) in &artifacts {
                let path = dir.join(name);
                std::fs::write(&path, body)
                    .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
            }
            s.push_str(&format!("wrote {} files to {}\n", artifacts.len(), dir.display()));
        }
        None => {
            for (name, body) in &artifacts {
                s.push_str(&format!("\n# {name}\n{body}"));
            }
        }
    }
    s.push_str(&format!("{} solutions\n", a.solutions.len()));
    Ok(s)
}

pub fn elim_run(script: &str, opts: &SearchOptions) -> Result<ScriptRun, InputError> {
    let (text, source) = read_path_or_fixture(script)?;
    let mut session = Session::new(source, opts.clone());
    run_script(&text, &mut session).map_err(|e| e.in_file(script))
}

pub fn verify(fixtures: Option<&Path>, opts: VerifyOptions) -> Report {
    let opts = VerifyOptions { fixtures: fixtures.map_or(Source::Embedded, |d| Source::Dir(d.to_path_buf())), ..opts };
    verify_paper(&opts)
}
