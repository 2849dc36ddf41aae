//! Tests 1, 3, 4 and 6: orbit counting, triples, suborbits and random
//! two-point configurations.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::relcomp::{certify_pair, suborbit_rc_lower_bound};

use super::{violates, Certificate, TestOutcome};

pub const DEFAULT_TRIALS: usize = 100_000;
pub const DEFAULT_SEED: u64 = 0xC4E2;

const ELEMENT_SUM_CAP: u128 = 10_000_000;
const TUPLE_CAP: usize = 4_000_000;
const MAX_ELL: usize = 5;

/// `r_ℓ` by the orbit-counting lemma over all elements.
pub fn r_ell_by_elements(g: &PermutationGroup, ell: usize) -> Result<u128> {
    let order = g.order_u128().filter(|&o| o <= ELEMENT_SUM_CAP);
    let Some(order) = order else {
        return Err(Error::GroupTooLarge { cap: ELEMENT_SUM_CAP });
    };
    let mut by_fix: HashMap<usize, u128> = HashMap::new();
    let _ = g.for_each_element(|x| {
        *by_fix.entry(x.fixed_points()).or_default() += 1;
        ControlFlow::Continue(())
    });
    let mut sum = BigUint::default();
    for (f, count) in by_fix {
        let falling = (0..ell).fold(BigUint::from(1u32), |acc, i| {
            acc * BigUint::from(f.saturating_sub(i) as u64)
        });
        sum += falling * BigUint::from(count);
    }
    let r = sum / BigUint::from(order);
    Ok(r.to_u128().expect("orbit count fits"))
}

/// `r_ℓ` by closing distinct-entry tuples under the generators.
pub fn r_ell_by_orbits(g: &PermutationGroup, ell: usize) -> Result<u128> {
    let n = g.degree();
    let count = (0..ell).try_fold(1usize, |acc, i| acc.checked_mul(n.saturating_sub(i)));
    if count.is_none_or(|c| c > TUPLE_CAP) {
        return Err(Error::TooLarge(format!("distinct {ell}-tuples on {n} points")));
    }
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut orbits = 0u128;
    let mut cur: Vec<u32> = Vec::with_capacity(ell);
    let mut all = Vec::new();
    distinct(n, ell, &mut cur, &mut all);
    for t in all {
        if seen.contains(&t) {
            continue;
        }
        orbits += 1;
        seen.insert(t.clone());
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            for s in g.generators() {
                let v: Vec<u32> = u.iter().map(|&p| s.apply(p as usize) as u32).collect();
                if seen.insert(v.clone()) {
                    stack.push(v);
                }
            }
        }
    }
    Ok(orbits)
}

fn distinct(n: usize, ell: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == ell {
        out.push(cur.clone());
        return;
    }
    for p in 0..n as u32 {
        if !cur.contains(&p) {
            cur.push(p);
            distinct(n, ell, cur, out);
            cur.pop();
        }
    }
}

fn r_ell(g: &PermutationGroup, ell: usize) -> Result<u128> {
    match r_ell_by_elements(g, ell) {
        Err(Error::GroupTooLarge { .. }) => r_ell_by_orbits(g, ell),
        other => other,
    }
}

/// Test 1: `r_ℓ ≤ r_2^(ℓ(ℓ-1)/2)` for `ℓ = 3..=ell_max` in a binary group.
pub fn test1_character_bound(g: &PermutationGroup, ell_max: usize) -> Result<TestOutcome> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if ell_max > MAX_ELL {
        return Err(Error::BadParameter(format!("ell_max {ell_max} exceeds {MAX_ELL}")));
    }
    let r2 = r_ell(g, 2)?;
    for ell in 3..=ell_max.min(g.degree()) {
        let r = r_ell(g, ell)?;
        if violates(ell, r, r2) {
            return Ok(TestOutcome::not_binary("test1", Certificate::Inequality { ell, r_ell: r, r2 }));
        }
    }
    Ok(TestOutcome::inconclusive("test1"))
}

/// Test 3: triples `(α, β, γ)`, `(α, β, γ')` with `γ' ∈ γ^{G_α} ∩ γ^{G_β}`.
pub fn test3_triples(g: &PermutationGroup) -> Result<TestOutcome> {
    const MAX_DEGREE: usize = 10_000;
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if g.degree() > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: g.degree(),
            cap: MAX_DEGREE,
        });
    }
    let alpha = 0;
    let ga = g.pointwise_stabilizer(&[alpha])?;
    for orbit in ga.orbits() {
        let beta = orbit[0];
        if beta == alpha {
            continue;
        }
        let gb = g.pointwise_stabilizer(&[beta])?;
        let gab = ga.pointwise_stabilizer(&[beta])?;
        for sub in gab.orbits() {
            let gamma = sub[0];
            if gamma == alpha || gamma == beta {
                continue;
            }
            let from_a: HashSet<usize> = ga.orbit(gamma)?.into_iter().collect();
            let inner: HashSet<usize> = sub.iter().copied().collect();
            for gp in gb.orbit(gamma)? {
                if from_a.contains(&gp) && !inner.contains(&gp) {
                    let i = [alpha, beta, gamma];
                    let j = [alpha, beta, gp];
                    let pair = certify_pair(g, &i, &j, 2)?
                        .ok_or_else(|| Error::ConditionFailed("triple pair not 2-subtuple complete".into()))?;
                    return Ok(TestOutcome::not_binary("test3", Certificate::Witness(pair)));
                }
            }
        }
    }
    Ok(TestOutcome::inconclusive("test3"))
}

/// Test 4: a non-binary suborbit action, lifted by prepending the fixed point.
pub fn test4_suborbits(g: &PermutationGroup) -> Result<TestOutcome> {
    let r = suborbit_rc_lower_bound(g)?;
    match r.witness {
        Some(w) if r.rc > 2 => Ok(TestOutcome::not_binary("test4", Certificate::Witness(w))),
        _ => Ok(TestOutcome::inconclusive("test4")),
    }
}

/// Test 6: random `ω1, ω2` with `G_{ω0} ∩ G_{ω1} = 1`, looking for
/// `g ∈ G_{ω0} ∩ G_{ω2} G_{ω1}` outside `G_{ω2}`.
///
/// Such `g` exists exactly when `ω2^{G_{ω0}} ∩ ω2^{G_{ω1}}` has a point other
/// than `ω2`, which then gives the triple pair.
pub fn test6_trivial_two_point(g: &PermutationGroup, trials: usize, seed: u64) -> Result<TestOutcome> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    let name = "test6";
    if n < 3 {
        return Ok(TestOutcome::inconclusive(name));
    }
    let w0 = 0;
    let g0 = g.pointwise_stabilizer(&[w0])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stab: HashMap<usize, Option<PermutationGroup>> = HashMap::new();
    let mut tried: HashSet<(usize, usize)> = HashSet::new();
    let total = (n - 1) * (n - 2);
    for _ in 0..trials {
        if tried.len() == total {
            break;
        }
        let w1 = rng.gen_range(1..n);
        let w2 = rng.gen_range(1..n);
        if w2 == w1 || !tried.insert((w1, w2)) {
            continue;
        }
        let g1 = match stab.get(&w1) {
            Some(s) => s.clone(),
            None => {
                let s = if g0.pointwise_stabilizer(&[w1])?.is_trivial() {
                    Some(g.pointwise_stabilizer(&[w1])?)
                } else {
                    None
                };
                stab.insert(w1, s.clone());
                s
            }
        };
        let Some(g1) = g1 else { continue };
        let from0: HashSet<usize> = g0.orbit(w2)?.into_iter().collect();
        if let Some(w3) = g1.orbit(w2)?.into_iter().find(|&p| p != w2 && from0.contains(&p)) {
            let pair = certify_pair(g, &[w0, w1, w2], &[w0, w1, w3], 2)?
                .ok_or_else(|| Error::ConditionFailed("triple pair not 2-subtuple complete".into()))?;
            return Ok(TestOutcome::not_binary(name, Certificate::Witness(pair)));
        }
    }
    Ok(TestOutcome::inconclusive(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn r_ell_paths_agree() {
        for g in [
            PermutationGroup::alternating(5),
            PermutationGroup::cyclic(5),
            catalog::agl1(7).unwrap().group,
            catalog::psl2_projective(7).unwrap().group,
        ] {
            for ell in 1..=4 {
                assert_eq!(r_ell_by_elements(&g, ell).unwrap(), r_ell_by_orbits(&g, ell).unwrap());
            }
        }
        assert_eq!(r_ell_by_orbits(&PermutationGroup::alternating(5), 4).unwrap(), 2);
        assert_eq!(r_ell_by_orbits(&PermutationGroup::cyclic(5), 2).unwrap(), 4);
    }

    #[test]
    fn test1_examples() {
        let a5 = PermutationGroup::alternating(5);
        let t = test1_character_bound(&a5, 5).unwrap();
        assert!(t.is_not_binary());
        assert!(matches!(t.certificate, Some(Certificate::Inequality { ell: 4, r_ell: 2, r2: 1 })));
        assert!(t.recheck(&a5).unwrap());
        assert!(!test1_character_bound(&PermutationGroup::symmetric(5), 5).unwrap().is_not_binary());
        assert!(!test1_character_bound(&PermutationGroup::cyclic(5), 4).unwrap().is_not_binary());
        assert!(matches!(
            test1_character_bound(&a5, 6),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn test3_examples() {
        // 3-transitive, so 2-completeness of triples already gives 3-completeness
        assert!(!test3_triples(&PermutationGroup::alternating(5)).unwrap().is_not_binary());
        assert!(!test3_triples(&PermutationGroup::symmetric(5)).unwrap().is_not_binary());
        let agl = catalog::agl1(5).unwrap().group;
        let t = test3_triples(&agl).unwrap();
        assert!(t.is_not_binary());
        assert!(t.recheck(&agl).unwrap());
    }

    #[test]
    fn test4_examples() {
        let a6 = PermutationGroup::alternating(6);
        let t = test4_suborbits(&a6).unwrap();
        assert!(t.is_not_binary());
        assert!(t.recheck(&a6).unwrap());
        assert!(!test4_suborbits(&PermutationGroup::cyclic(7)).unwrap().is_not_binary());
    }

    #[test]
    fn test6_examples() {
        let agl = catalog::agl1(7).unwrap().group;
        let t = test6_trivial_two_point(&agl, 1000, DEFAULT_SEED).unwrap();
        assert!(t.is_not_binary());
        assert!(t.recheck(&agl).unwrap());
        // two-point stabilizers of PSL(2,7) on the projective line have order 3
        let psl = catalog::psl2_projective(7).unwrap().group;
        assert!(!test6_trivial_two_point(&psl, 1000, DEFAULT_SEED).unwrap().is_not_binary());
        assert!(!test6_trivial_two_point(&PermutationGroup::symmetric(5), 1000, 1).unwrap().is_not_binary());
        assert!(!test6_trivial_two_point(&PermutationGroup::cyclic(7), 1000, 1).unwrap().is_not_binary());
    }
}
