use proptest::prelude::*;
use relc::oracle::naive_relational_complexity;
use relc::structures::{automorphism_group, canonical_structure, is_homogeneous, Digraph};
use relc::witness::{
    k_closure, r_ell_by_elements, r_ell_by_orbits, test1_character_bound, test3_triples, test4_suborbits,
    test6_trivial_two_point, TestOutcome,
};
use relc::{Permutation, PermutationGroup};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|img| Permutation::from_images(img).unwrap())
}

fn group(min: usize, max: usize) -> impl Strategy<Value = PermutationGroup> {
    (min..=max).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 1..=3).prop_map(move |gens| PermutationGroup::new(n, gens).unwrap())
    })
}

fn transitive_group(min: usize, max: usize) -> impl Strategy<Value = PermutationGroup> {
    group(min, max).prop_filter("transitive", PermutationGroup::is_transitive)
}

fn digraph(max: usize) -> impl Strategy<Value = Digraph> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e).collect();
            Digraph::new(n, edges).unwrap()
        })
    })
}

fn brute_force_aut_count(d: &Digraph) -> usize {
    fn rec(d: &Digraph, img: &mut Vec<usize>, used: &mut Vec<bool>) -> usize {
        let n = d.vertices();
        if img.len() == n {
            let ok = d.edges().iter().all(|&(a, b)| d.has_edge(img[a], img[b]));
            return ok as usize;
        }
        let mut total = 0;
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                img.push(v);
                total += rec(d, img, used);
                img.pop();
                used[v] = false;
            }
        }
        total
    }
    rec(d, &mut Vec::new(), &mut vec![false; d.vertices()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closure_contains_and_is_idempotent(g in group(2, 7)) {
        let c = k_closure(&g, 2).unwrap();
        prop_assert!(g.is_subgroup_of(&c));
        prop_assert!(k_closure(&c, 2).unwrap().same_group(&c));
        let c3 = k_closure(&g, 3).unwrap();
        prop_assert!(g.is_subgroup_of(&c3) && c3.is_subgroup_of(&c));
    }

    #[test]
    fn aut_of_canonical_is_two_closure(g in group(2, 7)) {
        let aut = automorphism_group(&canonical_structure(&g, 2).unwrap()).unwrap();
        prop_assert!(aut.same_group(&k_closure(&g, 2).unwrap()));
    }

    #[test]
    fn canonical_full_arity_recovers_group(g in group(3, 6)) {
        let t = g.degree();
        let aut = automorphism_group(&canonical_structure(&g, t - 1).unwrap()).unwrap();
        prop_assert!(aut.same_group(&g));
    }

    #[test]
    fn aut_order_matches_brute_force(d in digraph(6)) {
        let aut = automorphism_group(&d.to_structure()).unwrap();
        prop_assert_eq!(aut.order_u128(), Some(brute_force_aut_count(&d) as u128));
    }

    #[test]
    fn complement_preserves_homogeneity(d in digraph(5)) {
        let a = is_homogeneous(&d.to_structure()).unwrap().homogeneous;
        let b = is_homogeneous(&d.complement().to_structure()).unwrap().homogeneous;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn test1_routes_agree(g in group(2, 7), ell in 1usize..=4) {
        prop_assert_eq!(r_ell_by_elements(&g, ell).unwrap(), r_ell_by_orbits(&g, ell).unwrap());
    }

    #[test]
    fn tests_sound_against_oracle(g in transitive_group(3, 7)) {
        let outcomes: Vec<TestOutcome> = [
            test1_character_bound(&g, 5),
            test3_triples(&g),
            test4_suborbits(&g),
            test6_trivial_two_point(&g, 500, 7),
        ]
        .into_iter()
        .filter_map(Result::ok)
        .collect();
        let rc = naive_relational_complexity(&g, None).0;
        for t in outcomes.iter().filter(|t| t.is_not_binary()) {
            prop_assert!(rc > 2, "{} fired on a binary group", t.test);
            prop_assert!(t.recheck(&g).unwrap());
        }
    }
}
