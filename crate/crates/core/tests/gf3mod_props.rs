use std::sync::OnceLock;

use proptest::prelude::*;
use suzuki_core::gf3mod::{all_lines, alt6, permutation_module_section, GModule};

fn section() -> &'static GModule {
    static MODULE: OnceLock<GModule> = OnceLock::new();
    MODULE.get_or_init(|| permutation_module_section(&alt6().unwrap()).unwrap())
}

#[test]
fn orbits_partition_the_lines() {
    let m = section();
    let orbits = m.orbits_on_lines();
    assert!(orbits.iter().all(|o| 360 % o.len() == 0));
    assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), all_lines(4).len());
    assert_eq!(all_lines(4).len(), 40);
}

#[test]
fn form_space_is_one_dimensional() {
    let m = section();
    let forms = m.invariant_forms();
    assert_eq!(forms.len(), 1);
    let q = &forms[0];
    assert!(q.is_invariant(m));
    assert_eq!(q.scaled(2).singular_lines(), q.singular_lines());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn action_is_a_homomorphism(i in 0usize..360, j in 0usize..360) {
        let m = section();
        prop_assert!(m.homomorphism_failures(&[(i, j)]).is_empty());
    }
}
