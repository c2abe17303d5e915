use proptest::prelude::*;
use suzuki_core::suzuki::{enumerate_b, BMatrix, BProblem};

/// A decomposition matrix with nonzero non-principal columns.
fn b_matrix() -> impl Strategy<Value = BMatrix> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(rows, cols)| {
        (
            prop::collection::vec(0i64..=1, rows),
            prop::collection::vec(
                prop::collection::vec(-1i64..=1, rows).prop_filter("zero column", |c| c.iter().any(|&x| x != 0)),
                cols,
            ),
        )
            .prop_map(|(p, c)| BMatrix::from_columns(&p, &c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planted_solution_is_found(b in b_matrix()) {
        let d = b.gram();
        let principal: Vec<i64> = b.rows.iter().map(|r| r[0]).collect();
        let sols = enumerate_b(&d, &principal).unwrap();
        prop_assert!(sols.contains(&b.canonical()));
        for s in &sols {
            prop_assert_eq!(s.gram(), d.clone());
            prop_assert_eq!(s, &s.canonical());
        }
        let mut sorted = sols.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted, sols);
    }

    #[test]
    fn task_split_does_not_change_solutions(b in b_matrix(), depth in 0usize..4) {
        let d = b.gram();
        let principal: Vec<i64> = b.rows.iter().map(|r| r[0]).collect();
        let problem = BProblem::new(&d, &principal).unwrap();
        let mut split: Vec<BMatrix> = problem.tasks(depth).iter().flat_map(|t| problem.solve_task(t)).collect();
        split.sort();
        split.dedup();
        prop_assert_eq!(split, problem.solve_all());
    }
}
