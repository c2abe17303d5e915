use proptest::prelude::*;
use suzuki_core::perm::{conjugacy_classes, GeneratedGroup, Permutation};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn small_group() -> impl Strategy<Value = GeneratedGroup> {
    (3usize..=6).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 1..=2).prop_map(move |g| GeneratedGroup::generate(n, &g).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_cycles_parse_back(p in perm(9)) {
        prop_assert_eq!(Permutation::parse(&p.to_string(), 9).unwrap(), p);
    }

    #[test]
    fn group_laws(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        let lcm = a.cycles().iter().fold(1usize, |acc, cy| num_lcm(acc, cy.len()));
        prop_assert_eq!(a.order(), lcm);
    }

    #[test]
    fn class_equation_and_lagrange(g in small_group()) {
        let cd = conjugacy_classes(&g);
        prop_assert_eq!(cd.sizes().iter().sum::<usize>(), g.order());
        for (i, c) in cd.classes().iter().enumerate() {
            let cent = g.centralizer(&c.representative).unwrap();
            prop_assert_eq!(g.order() % cent.order(), 0);
            prop_assert_eq!(cent.order() * c.size, g.order());
            prop_assert_eq!(cd.centralizer_order(i, g.order()), cent.order());
        }
        let derived = g.derived_subgroup().unwrap();
        prop_assert_eq!(g.order() % derived.order(), 0);
    }

    #[test]
    fn power_maps_agree_with_powers(g in small_group(), m in -7i64..=7) {
        let cd = conjugacy_classes(&g);
        let pm = cd.power_map(m);
        for (i, c) in cd.classes().iter().enumerate() {
            let target = &cd.classes()[pm[i]].representative;
            let power = c.representative.pow(m);
            // an explicit conjugator, not a class lookup
            let witness = g.elements().iter().any(|h| power.conjugate_by(h) == *target);
            prop_assert!(witness, "no conjugator for class {} power {}", i, m);
        }
    }
}

fn num_lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}
