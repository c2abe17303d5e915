use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use suzuki_core::elim::{
    project, residue_refute, CongruenceConstraint, IndexCongruence, PolyRelation, PolyVar, ReciprocalEquation, Var,
};

type Rational = num_rational::Ratio<i128>;

const VARS: [Var; 6] =
    [Var::One, Var::InvOrder, Var::InvDegree(0), Var::InvDegree(1), Var::InvDegree(2), Var::InvDegree(3)];

fn equation() -> impl Strategy<Value = ReciprocalEquation> {
    prop::collection::vec(-9i128..=9, VARS.len())
        .prop_map(|c| ReciprocalEquation::from_terms(VARS.iter().zip(c).map(|(v, x)| (*v, Rational::from_integer(x)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn projection_certificates_recombine(eqs in prop::collection::vec(equation(), 1..5), mask in 0u8..64) {
        let keep: BTreeSet<Var> = VARS.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect();
        for r in project(&eqs, &keep) {
            prop_assert!(r.verify(&eqs));
            prop_assert!(r.relation.variables().is_subset(&keep));
            prop_assert!(!r.relation.is_zero());
        }
    }

    /// A contradiction from the scan means no residue pair solves the
    /// relation; a survivor means one does.
    #[test]
    fn residue_scan_is_exhaustive(
        a in -20i128..=20, b in -20i128..=20, c in -20i128..=20, ab in -5i128..=5,
        m1 in 1u64..=9, r1 in 0u64..9, m2 in 1u64..=9, r2 in 0u64..9,
    ) {
        let d = PolyVar::D(0);
        let rel = PolyRelation::from_terms(vec![(vec![d], a), (vec![PolyVar::N], b), (vec![], c), (vec![PolyVar::N, d], ab)]);
        prop_assume!(!rel.is_zero() && rel.constant_only().is_none());
        let cong = CongruenceConstraint { row: 0, modulus: m1, residue: r1 % m1, form: vec![] };
        let index = IndexCongruence { modulus: m2, residue: r2 % m2 };
        let outcome = residue_refute(std::slice::from_ref(&rel), &[cong], index);
        // moduli of variables absent from the relation carry no information
        let involved = rel.variables();
        let m1 = if involved.contains(&d) { m1 } else { 1 };
        let m2 = if involved.contains(&PolyVar::N) { m2 } else { 1 };
        let (r1, r2) = (r1 % m1, r2 % m2);
        let m = (m1 as i128).lcm(&(m2 as i128));
        let mut solvable = false;
        for x in 0..m {
            for n in 0..m {
                let ok = x % m1 as i128 == r1 as i128 && n % m2 as i128 == r2 as i128;
                let v = a * x + b * n + c + ab * n * x;
                if ok && v.mod_floor(&m) == 0 {
                    solvable = true;
                }
            }
        }
        let effective = m1 > 1 || m2 > 1;
        if effective {
            prop_assert_eq!(outcome.is_contradiction(), !solvable, "{}", outcome);
        } else {
            prop_assert!(!outcome.is_contradiction());
        }
    }
}
