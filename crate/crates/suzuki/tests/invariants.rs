use std::sync::OnceLock;

use suzuki::fixtures::{embedded, Source};
use suzuki::pipeline::{Analysis, Problem};
use suzuki::report::{verify_paper, VerifyOptions};
use suzuki::search::SearchOptions;
use suzuki_core::cyclo::Cyclotomic;
use suzuki_core::elim::{structure_equation, DegreeMerge};

fn analysis(name: &str) -> Analysis {
    let p = Problem::load(embedded(name).unwrap(), &Source::Embedded).unwrap();
    Analysis::run(p, &SearchOptions::default()).unwrap()
}

fn h() -> &'static Analysis {
    static A: OnceLock<Analysis> = OnceLock::new();
    A.get_or_init(|| analysis("h108.problem"))
}

fn k() -> &'static Analysis {
    static A: OnceLock<Analysis> = OnceLock::new();
    A.get_or_init(|| analysis("k648.problem"))
}

/// Column orthogonality on the special classes, which only sees fragment rows.
#[test]
fn fragments_reconstruct_centralizer_orders() {
    for a in [h(), k()] {
        let p = &a.problem;
        for f in &a.fragments {
            for (i, &ci) in p.special_classes.iter().enumerate() {
                for (j, &cj) in p.special_classes.iter().enumerate() {
                    let mut sum = Cyclotomic::zero();
                    for row in f.values() {
                        sum = &sum + &(&row[i] * &row[j].conj());
                    }
                    let want = if ci == cj { p.centralizer_order(ci) as i128 } else { 0 };
                    assert_eq!(sum, Cyclotomic::from_integer(want), "{} fragment, columns {i} {j}", p.file.name);
                }
            }
        }
    }
}

#[test]
fn printed_table2_entry_breaks_orthogonality() {
    let a = h();
    let f = a.aligned_fragment("table2").unwrap();
    let t5 = a.problem.column_of("t5").unwrap();
    let norm = |f: &suzuki_core::suzuki::Fragment| {
        f.values().iter().map(|r| (&r[t5] * &r[t5].conj()).as_integer().unwrap()).sum::<i128>()
    };
    assert_eq!(norm(&f), 27);
    assert_eq!(a.problem.centralizer_order(a.problem.special_classes[t5]), 27);
    // rows 10 and 11 with -1 at t5 instead of 2
    let as_printed: i128 = norm(&f) - 2 * (4 - 1);
    assert_eq!(as_printed, 21);
    assert_ne!(108 % as_printed, 0);
}

#[test]
fn degree_relations_hold_for_true_degrees() {
    for (a, block) in [(h(), "table2"), (k(), "4")] {
        let f = a.aligned_fragment(block).unwrap();
        let d = a.true_degrees(&f).expect("fragment realized by the group itself");
        for row in &f.b().rows {
            let s: i128 = row.iter().zip(&d).map(|(&b, &x)| b as i128 * x).sum();
            assert_eq!(s, 0);
        }
    }
}

/// Negating a row and its degree leaves every equation's value unchanged.
#[test]
fn structure_equations_are_sign_invariant() {
    let a = k();
    let order = a.problem.order() as i128;
    let cent = |c: usize| a.problem.centralizer_order(a.problem.special_classes[c]);
    for f in &a.fragments {
        let merge = DegreeMerge::identity(f.row_count());
        let degrees: Vec<i128> = (0..f.row_count() as i128).map(|i| 3 * i + 1).collect();
        for triple in [(0, 2, 1), (0, 0, 2), (2, 2, 1), (1, 1, 0)] {
            let eq = structure_equation(f, triple, 3, (cent(triple.0), cent(triple.1)), &merge).unwrap();
            for row in 1..f.row_count() {
                let mut g = f.clone();
                g.negate_row(row);
                let mut d = degrees.clone();
                d[row] = -d[row];
                let eq2 = structure_equation(&g, triple, 3, (cent(triple.0), cent(triple.1)), &merge).unwrap();
                assert_eq!(eq.evaluate(order, &degrees).unwrap(), eq2.evaluate(order, &d).unwrap());
            }
        }
    }
}

#[test]
fn report_is_deterministic_across_workers() {
    let one = verify_paper(&VerifyOptions::default()).render();
    let opts =
        VerifyOptions { search: SearchOptions { workers: 4, depth: 3, checkpoint: None }, ..VerifyOptions::default() };
    assert_eq!(verify_paper(&opts).render(), one);
}

#[test]
fn every_fixture_problem_loads() {
    for name in ["h108.problem", "k648.problem", "c3.problem"] {
        let p = Problem::load(embedded(name).unwrap(), &Source::Embedded).unwrap();
        assert!(!p.special_classes.is_empty());
        if p.printed.is_some() {
            assert!(p.printed_rows().is_ok(), "{name}");
        }
    }
    let c3 = analysis("c3.problem");
    // rank 3 minus vanishing at the identity
    assert_eq!(c3.vanishing.basis.len(), 2);
}
