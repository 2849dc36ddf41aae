use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use relc::oracle::naive_relational_complexity;
use relc::relcomp::{height, max_irredundant_base, max_minimal_base, min_base, relational_complexity, subtuple_complete};
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

fn group_with_tuple_pair() -> impl Strategy<Value = (PermutationGroup, Vec<usize>, Vec<usize>)> {
    group(3, 6).prop_flat_map(|g| {
        let n = g.degree();
        (1..=n.min(4)).prop_flat_map(move |len| {
            let g = g.clone();
            let pick = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (pick.clone(), pick).prop_map(move |(a, b)| (g.clone(), a[..len].to_vec(), b[..len].to_vec()))
        })
    })
}

fn closure_elements(g: &PermutationGroup) -> HashSet<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(g.degree());
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn ceil_log2(t: usize) -> usize {
    t.next_power_of_two().trailing_zeros() as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_matches_closure(g in group(1, 7)) {
        let elems = closure_elements(&g);
        prop_assert_eq!(g.order(), BigUint::from(elems.len()));
    }

    #[test]
    fn orbit_stabilizer(g in group(2, 8), p in 0usize..8) {
        let p = p % g.degree();
        let orbit = g.orbit(p).unwrap().len();
        let stab = g.pointwise_stabilizer(&[p]).unwrap();
        prop_assert_eq!(g.order(), stab.order() * BigUint::from(orbit));
    }

    #[test]
    fn transporter_agrees_with_brute_force((g, i, j) in group_with_tuple_pair()) {
        match g.transporter(&i, &j).unwrap() {
            Some(x) => {
                prop_assert!(g.contains(&x).unwrap());
                prop_assert_eq!(x.apply_tuple(&i), j);
            }
            None => {
                let hit = closure_elements(&g).into_iter().any(|x| x.apply_tuple(&i) == j);
                prop_assert!(!hit);
            }
        }
    }

    #[test]
    fn stabilizers_and_induced_action((g, set, _) in group_with_tuple_pair()) {
        let setwise = g.setwise_stabilizer(&set).unwrap();
        let pointwise = g.pointwise_stabilizer(&set).unwrap();
        prop_assert!(pointwise.is_subgroup_of(&setwise));
        let (image, kernel) = g.induced_action(&set).unwrap();
        prop_assert_eq!(&kernel, &pointwise.order());
        prop_assert_eq!(kernel * image.order(), setwise.order());
    }

    #[test]
    fn element_conjugator_agrees(g in group(2, 6), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let elems: Vec<Permutation> = {
            let mut v: Vec<Permutation> = closure_elements(&g).into_iter().collect();
            v.sort_by_key(|x| x.to_images());
            v
        };
        let x = &elems[a.index(elems.len())];
        let y = &elems[b.index(elems.len())];
        let brute = elems.iter().any(|c| &x.conjugate_by(c) == y);
        match g.element_conjugator(x, y).unwrap() {
            Some(c) => {
                prop_assert!(g.contains(&c).unwrap());
                prop_assert_eq!(&x.conjugate_by(&c), y);
            }
            None => prop_assert!(!brute),
        }
    }

    #[test]
    fn statistic_chain(g in group(2, 7)) {
        let b = min_base(&g).unwrap().0;
        let big_b = max_minimal_base(&g).unwrap().0;
        let h = height(&g).unwrap().0;
        let i = max_irredundant_base(&g).unwrap().0;
        prop_assert!(b <= big_b && big_b <= h && h <= i);
        prop_assert!(i <= b * ceil_log2(g.degree()));
        // RC is floored at 2, which exceeds H+1 only for the trivial group
        prop_assert!(relational_complexity(&g).unwrap().rc <= (h + 1).max(2));
    }

    #[test]
    fn rc_matches_naive_oracle(g in group(2, 6)) {
        let rc = relational_complexity(&g).unwrap().rc;
        prop_assert_eq!(rc, naive_relational_complexity(&g, None).0);
    }

    #[test]
    fn rc_invariant_under_conjugation(g in group(2, 6), c in perm(6)) {
        let n = g.degree();
        let mut img: Vec<usize> = c.to_images().into_iter().filter(|&p| p < n).collect();
        img.truncate(n);
        let c = Permutation::from_images(img).unwrap();
        let conj = PermutationGroup::new(n, g.generators().iter().map(|x| x.conjugate_by(&c)).collect()).unwrap();
        prop_assert_eq!(relational_complexity(&g).unwrap().rc, relational_complexity(&conj).unwrap().rc);
    }

    #[test]
    fn rc_bounded_by_orbit_actions(g in group(2, 7)) {
        let rc = relational_complexity(&g).unwrap().rc;
        for orbit in g.orbits() {
            let on_orbit = g.restrict(&orbit).unwrap();
            prop_assert!(rc >= relational_complexity(&on_orbit).unwrap().rc);
        }
    }

    #[test]
    fn completeness_is_downward_closed((g, i, j) in group_with_tuple_pair()) {
        let len = i.len();
        for k in (1..=len).rev() {
            if subtuple_complete(&g, &i, &j, k).unwrap().complete {
                for u in 1..k {
                    prop_assert!(subtuple_complete(&g, &i, &j, u).unwrap().complete);
                }
                break;
            }
        }
    }
}
