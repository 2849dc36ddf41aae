//! Subsets with 2-transitive set-stabilizers, explicit strongly non-binary
//! certificates and the diagonal-type patch witness.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::relcomp::{certify_pair, TuplePair};

use super::{Certificate, TestOutcome};

fn is_2transitive(h: &PermutationGroup) -> Result<bool> {
    if h.degree() < 2 || !h.is_transitive() {
        return Ok(false);
    }
    let stab = h.pointwise_stabilizer(&[0])?;
    Ok(stab.orbit(1)?.len() == h.degree() - 1)
}

/// Whether `h`, acting on `0..m`, contains `Alt(m)`.
fn contains_alt(h: &PermutationGroup) -> Result<bool> {
    let m = h.degree();
    match m {
        0..=2 => Ok(true),
        3 | 4 => {
            let three = |a, b, c| Permutation::from_cycles(m, &[vec![a, b, c]]);
            let mut gens = vec![three(0, 1, 2)?];
            if m == 4 {
                gens.push(three(1, 2, 3)?);
            }
            for s in &gens {
                if !h.contains(s)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            let half: BigUint = (1..=m as u64).map(BigUint::from).product::<BigUint>() / 2u32;
            Ok(h.order() >= half)
        }
    }
}

fn set_action(g: &PermutationGroup, lambda: &[usize]) -> Result<PermutationGroup> {
    g.setwise_stabilizer(lambda)?.restrict(lambda)
}

/// `NotBinary` when `S^Λ` is 2-transitive without containing `Alt(Λ)`.
///
/// The certificate swaps two points of `Λ` by a transposition outside
/// `G^Λ`, which exists since `G^Λ` normalizes `S^Λ`.
pub fn check_beautiful(g: &PermutationGroup, s: &PermutationGroup, lambda: &[usize]) -> Result<TestOutcome> {
    let name = "beautiful";
    let n = g.degree();
    if s.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: s.degree(),
        });
    }
    if lambda.len() < 2 {
        return Err(Error::BadParameter("subset needs at least 2 points".into()));
    }
    let mut seen = vec![false; n];
    for &p in lambda {
        if p >= n {
            return Err(Error::PointOutOfRange { point: p, degree: n });
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::RepeatedPoint(p));
        }
    }
    if !s.is_subgroup_of(g) || !s.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let local = set_action(s, lambda)?;
    if !is_2transitive(&local)? || contains_alt(&local)? {
        return Ok(TestOutcome::inconclusive(name));
    }
    let full = set_action(g, lambda)?;
    let m = lambda.len();
    for a in 0..m {
        for b in a + 1..m {
            let sigma = Permutation::from_cycles(m, &[vec![a, b]])?;
            if full.contains(&sigma)? {
                continue;
            }
            let j: Vec<usize> = (0..m).map(|x| lambda[sigma.apply(x)]).collect();
            if let Some(pair) = certify_pair(g, lambda, &j, 2)? {
                return Ok(TestOutcome::not_binary(name, Certificate::Witness(pair)));
            }
        }
    }
    Ok(TestOutcome::inconclusive(name))
}

/// Whether `H` acts 2-transitively on the orbit of `omega`.
pub fn check_2transitive_orbit(h: &PermutationGroup, omega: usize) -> Result<bool> {
    let mut orbit = h.orbit(omega)?;
    orbit.sort_unstable();
    if orbit.len() < 2 {
        return Ok(false);
    }
    is_2transitive(&h.restrict(&orbit)?)
}

/// Checks the hypotheses on `τ` and `η_1, …, η_r`, returning the full-length
/// pair `(ω_1, …, ω_t)`, `(ω_1^τ, …, ω_t^τ)` on success.
pub fn verify_snb_certificate(g: &PermutationGroup, tau: &Permutation, etas: &[Permutation]) -> Result<TestOutcome> {
    let n = g.degree();
    for p in std::iter::once(tau).chain(etas) {
        if p.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: p.degree(),
            });
        }
    }
    let fail = |what: &str| Err(Error::ConditionFailed(what.to_string()));
    if etas.is_empty() {
        return fail("no eta given");
    }
    let tau_support = tau.support();
    for (i, eta) in etas.iter().enumerate() {
        if !g.contains(&tau.then(eta))? {
            return fail(&format!("tau * eta_{} is not in G", i + 1));
        }
        if eta.support().iter().any(|p| tau_support.contains(p)) {
            return fail(&format!("supports of tau and eta_{} meet", i + 1));
        }
    }
    if let Some(w) = (0..n).find(|&w| etas.iter().all(|e| e.apply(w) != w)) {
        return fail(&format!("point {} is moved by every eta", w + 1));
    }
    if g.contains(tau)? {
        return fail("tau is in G");
    }
    let full: Vec<usize> = (0..n).collect();
    let image = tau.apply_tuple(&full);
    match certify_pair(g, &full, &image, 2)? {
        Some(pair) if !pair.equivalent => Ok(TestOutcome::not_binary("snb", Certificate::Witness(pair))),
        _ => fail("pair is not a non-binary witness"),
    }
}

/// `(1, a, b, ab)` against `(1, a, b, ba)` in the diagonal-type action on `T`,
/// for noncommuting `a, b` not both of order 2, taken in element order.
///
/// The conjugations by `1`, `a` and `b⁻¹` always certify 2-subtuple
/// completeness. The two 4-tuples still share an orbit when some
/// automorphism in `G_1` inverts both `a` and `b`, since composing it with
/// inversion fixes `1, a, b` and sends `ab` to `ba`; such pairs are skipped,
/// and the verdict is `Inconclusive` when every pair is of this kind.
pub fn diagonal_patch_witness(t: &PermutationGroup) -> Result<TestOutcome> {
    diagonal_patch_witness_with(t, None)
}

pub fn diagonal_patch_witness_with(
    t: &PermutationGroup,
    pair: Option<(Permutation, Permutation)>,
) -> Result<TestOutcome> {
    if t.is_abelian() {
        return Err(Error::AbelianInput);
    }
    let g = catalog::diagonal_type_on_t(t)?.group;
    let els = catalog::group_elements_sorted(t);
    let index: HashMap<&Permutation, usize> = els.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let valid = |a: &Permutation, b: &Permutation| !a.commutes_with(b) && (a.order() > 2 || b.order() > 2);
    let candidates: Vec<(Permutation, Permutation)> = match pair {
        Some((a, b)) => {
            if !t.contains(&a)? || !t.contains(&b)? {
                return Err(Error::NotInGroup);
            }
            if !valid(&a, &b) {
                return Err(Error::NoValidPair);
            }
            vec![(a, b)]
        }
        None => els
            .iter()
            .flat_map(|a| els.iter().map(move |b| (a, b)))
            .filter(|(a, b)| valid(a, b))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect(),
    };
    if candidates.is_empty() {
        return Err(Error::NoValidPair);
    }
    let conj = |c: &Permutation| -> Result<Permutation> {
        Permutation::from_images(els.iter().map(|x| index[&x.conjugate_by(c)]).collect())
    };
    let id = Permutation::identity(els.len());
    let one = Permutation::identity(t.degree());
    for (a, b) in candidates {
        let i = vec![index[&one], index[&a], index[&b], index[&a.then(&b)]];
        let j = vec![index[&one], index[&a], index[&b], index[&b.then(&a)]];
        if g.transporter(&i, &j)?.is_some() {
            continue;
        }
        let by_a = conj(&a)?;
        let by_b_inv = conj(&b.inverse())?;
        let mut certs = BTreeMap::new();
        for (s, x) in [
            (vec![0, 1], &id),
            (vec![0, 2], &id),
            (vec![1, 2], &id),
            (vec![0, 3], &by_a),
            (vec![1, 3], &by_a),
            (vec![2, 3], &by_b_inv),
        ] {
            let moved = s.iter().all(|&k| x.apply(i[k]) == j[k]);
            if !moved || !g.contains(x)? {
                return Err(Error::ConditionFailed(format!("conjugation does not map positions {s:?}")));
            }
            certs.insert(s, x.clone());
        }
        let witness = TuplePair {
            i,
            j,
            k: 2,
            certs,
            equivalent: false,
        };
        return Ok(TestOutcome::not_binary("diagonal", Certificate::Witness(witness)));
    }
    Ok(TestOutcome::inconclusive("diagonal"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beautiful_examples() {
        let s5 = PermutationGroup::symmetric(5);
        let all: Vec<usize> = (0..5).collect();
        assert!(!check_beautiful(&s5, &s5, &all).unwrap().is_not_binary());

        let agl8 = catalog::agl1(8).unwrap().group;
        let all8: Vec<usize> = (0..8).collect();
        let t = check_beautiful(&agl8, &agl8, &all8).unwrap();
        assert!(t.is_not_binary());
        assert!(t.recheck(&agl8).unwrap());

        let c5 = PermutationGroup::cyclic(5);
        assert!(matches!(check_beautiful(&s5, &c5, &all), Err(Error::NotNormal)));
    }

    #[test]
    fn beautiful_on_pairs() {
        // Alt(6) on 2-subsets, Λ the five 2-subsets containing point 0
        let e = catalog::k_subsets_action(catalog::Base::Alt, 6, 2).unwrap();
        let subsets = catalog::k_subsets(6, 2);
        let lambda: Vec<usize> = (0..subsets.len()).filter(|&i| subsets[i].contains(&0)).collect();
        let induced = set_action(&e.group, &lambda).unwrap();
        // the stabilizer of point 0 is Alt(5), acting naturally on Λ
        assert_eq!(induced.order_u128(), Some(60));
        let t = check_beautiful(&e.group, &e.group, &lambda).unwrap();
        assert!(!t.is_not_binary());
    }

    #[test]
    fn alt_detection_small() {
        assert!(contains_alt(&PermutationGroup::alternating(4)).unwrap());
        assert!(!contains_alt(&catalog::dihedral_polygon(4).unwrap().group).unwrap());
        assert!(contains_alt(&PermutationGroup::cyclic(3)).unwrap());
        assert!(!contains_alt(&catalog::agl1(5).unwrap().group).unwrap());
    }

    #[test]
    fn two_transitive_orbits() {
        assert!(check_2transitive_orbit(&PermutationGroup::symmetric(3), 0).unwrap());
        assert!(!check_2transitive_orbit(&PermutationGroup::cyclic(4), 0).unwrap());
        let d10 = catalog::dihedral_polygon(5).unwrap().group;
        assert!(!check_2transitive_orbit(&d10, 0).unwrap());
        assert!(!check_2transitive_orbit(&PermutationGroup::trivial(3), 1).unwrap());
    }

    fn p(n: usize, cycles: &[Vec<usize>]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn snb_alt5() {
        let a5 = PermutationGroup::alternating(5);
        let tau = p(5, &[vec![0, 1]]);
        let etas = [p(5, &[vec![2, 3]]), p(5, &[vec![3, 4]]), p(5, &[vec![2, 4]])];
        let t = verify_snb_certificate(&a5, &tau, &etas).unwrap();
        assert!(t.is_not_binary());
        assert!(t.recheck(&a5).unwrap());

        let inside = p(5, &[vec![0, 1, 2]]);
        let e = verify_snb_certificate(&a5, &inside, &[Permutation::identity(5)]);
        assert!(matches!(e, Err(Error::ConditionFailed(m)) if m.contains("tau is in G")));

        let overlap = [p(5, &[vec![1, 2]])];
        let e = verify_snb_certificate(&a5, &tau, &overlap);
        assert!(matches!(e, Err(Error::ConditionFailed(m)) if m.contains("meet")));

        let e = verify_snb_certificate(&a5, &tau, &etas[..1]);
        assert!(matches!(e, Err(Error::ConditionFailed(m)) if m.contains("moved by every eta")));
    }

    #[test]
    fn diagonal_examples() {
        for t in [PermutationGroup::alternating(4), PermutationGroup::alternating(5)] {
            let g = catalog::diagonal_type_on_t(&t).unwrap().group;
            let out = diagonal_patch_witness(&t).unwrap();
            assert!(out.is_not_binary());
            assert!(out.recheck(&g).unwrap());
        }
        // (123) is inverted by conjugation with (12), so inversion after that
        // conjugation carries (1, a, b, ab) to (1, a, b, ba); this action is binary
        let s3 = PermutationGroup::symmetric(3);
        let g = catalog::diagonal_type_on_t(&s3).unwrap().group;
        assert!(crate::relcomp::is_binary(&g).unwrap());
        let a = p(3, &[vec![0, 1, 2]]);
        let b = p(3, &[vec![0, 1]]);
        assert!(!diagonal_patch_witness_with(&s3, Some((a, b.clone()))).unwrap().is_not_binary());
        assert!(!diagonal_patch_witness(&s3).unwrap().is_not_binary());
        let c = p(3, &[vec![1, 2]]);
        assert_eq!(
            diagonal_patch_witness_with(&s3, Some((b, c))).unwrap_err(),
            Error::NoValidPair
        );
        assert_eq!(diagonal_patch_witness(&PermutationGroup::cyclic(6)).unwrap_err(), Error::AbelianInput);
    }
}
