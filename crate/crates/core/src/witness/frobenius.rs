//! Frobenius actions: complements of order above 2, cyclic kernels and the
//! counting criterion for `T ⋊ C` inside `G`.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::relcomp::certify_pair;

use super::{Certificate, TestOutcome};

const ELEMENT_CAP: u128 = 100_000;

fn witness(g: &PermutationGroup, name: &str, i: &[usize], j: &[usize]) -> Result<TestOutcome> {
    match certify_pair(g, i, j, 2)? {
        Some(pair) if !pair.equivalent => Ok(TestOutcome::not_binary(name, Certificate::Witness(pair))),
        _ => Err(Error::ConditionFailed(format!("{i:?} and {j:?} do not form a witness"))),
    }
}

/// Point stabilizer of `alpha` when all two-point stabilizers through it are
/// trivial and it is not.
fn frobenius_stabilizer(g: &PermutationGroup, alpha: usize) -> Result<PermutationGroup> {
    let ga = g.pointwise_stabilizer(&[alpha])?;
    if ga.is_trivial() {
        return Err(Error::NotFrobenius("point stabilizer is trivial".into()));
    }
    for orbit in ga.orbits() {
        let beta = orbit[0];
        if beta != alpha && !ga.pointwise_stabilizer(&[beta])?.is_trivial() {
            return Err(Error::NotFrobenius(format!("points {} and {} have a nontrivial joint stabilizer", alpha + 1, beta + 1)));
        }
    }
    Ok(ga)
}

/// A transitive Frobenius group whose complement has order above 2 is not
/// binary: some `β ≠ α` lies in `α^{G_x} ∩ α^{G_y}`, giving the triples
/// `(α, x, y)` and `(β, x, y)`.
pub fn frobenius_test(g: &PermutationGroup) -> Result<TestOutcome> {
    let name = "frobenius";
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let alpha = 0;
    let ga = frobenius_stabilizer(g, alpha)?;
    if ga.order_u128() == Some(2) {
        return Ok(TestOutcome::inconclusive(name));
    }
    let n = g.degree();
    let mut from: Vec<Option<HashSet<usize>>> = vec![None; n];
    for x in 1..n {
        let ox: HashSet<usize> = g.pointwise_stabilizer(&[x])?.orbit(alpha)?.into_iter().collect();
        from[x] = Some(ox);
        for y in 1..x {
            let (ox, oy) = (from[x].as_ref().unwrap(), from[y].as_ref().unwrap());
            let mut common: Vec<usize> = ox.intersection(oy).copied().filter(|&b| b != alpha).collect();
            common.sort_unstable();
            if let Some(&beta) = common.first() {
                return witness(g, name, &[alpha, x, y], &[beta, x, y]);
            }
        }
    }
    Err(Error::ConditionFailed("no two suborbits of alpha meet outside alpha".into()))
}

fn sorted_orbit(g: &PermutationGroup, p: usize) -> Result<Vec<usize>> {
    let mut o = g.orbit(p)?;
    o.sort_unstable();
    Ok(o)
}

fn bounded_elements(g: &PermutationGroup) -> Result<Vec<Permutation>> {
    if g.order_u128().is_none_or(|o| o > ELEMENT_CAP) {
        return Err(Error::GroupTooLarge { cap: ELEMENT_CAP });
    }
    Ok(g.elements())
}

/// `F ⊴ G` acting as a Frobenius group on `Λ = α^F` with cyclic kernel
/// `T = ⟨y⟩` and an element `x` of the complement of order above 2, where
/// `y^x = y^k`: the triples `(α, α^y, α^{y^a})` and `(α, α^y, α^{y^b})` with
/// `a = (1 + k)/k` and `b = 1 + k` modulo `|T|`.
pub fn frobenius_cyclic_kernel(g: &PermutationGroup, f: &PermutationGroup, alpha: usize) -> Result<TestOutcome> {
    let name = "frobenius";
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: f.degree(),
        });
    }
    if !f.is_subgroup_of(g) || !f.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let lambda = sorted_orbit(f, alpha)?;
    let local = f.restrict(&lambda)?;
    let a0 = lambda.binary_search(&alpha).expect("alpha lies in its orbit");
    if lambda.len() < 3 || !local.is_transitive() {
        return Err(Error::NotFrobenius("orbit too small".into()));
    }
    let complement = frobenius_stabilizer(&local, a0)?;
    let elements = bounded_elements(&local)?;
    let kernel: Vec<&Permutation> = elements
        .iter()
        .filter(|x| x.is_identity() || x.fixed_points() == 0)
        .collect();
    let n = kernel.len() as u64;
    let Some(y) = kernel.iter().find(|x| x.order() == n) else {
        return Ok(TestOutcome::inconclusive(name));
    };
    let Some(x) = bounded_elements(&complement)?.into_iter().find(|x| x.order() > 2) else {
        return Ok(TestOutcome::inconclusive(name));
    };
    let yx = y.conjugate_by(&x);
    let k = (1..n)
        .find(|&k| y.pow(k as i64) == yx)
        .ok_or_else(|| Error::ConditionFailed("complement does not normalize the kernel".into()))?;
    let k_inv = (1..n)
        .find(|&v| v * k % n == 1)
        .ok_or_else(|| Error::ConditionFailed("conjugation exponent is not a unit".into()))?;
    let a = (1 + k) * k_inv % n;
    let b = (1 + k) % n;
    let at = |e: u64| lambda[y.pow(e as i64).apply(a0)];
    let i = [alpha, at(1), at(a)];
    let j = [alpha, at(1), at(b)];
    witness(g, name, &i, &j)
}

/// `F = T ⋊ C ≤ G` with `C = F_α` acting fixed-point-freely on `T`: when
/// `⌈(|C| - 1)(|C| - 2)/(|Λ| - 2)⌉ ≥ m`, some `(c1, c2)` yields triples
/// `(α, β, γ)`, `(α, β, δ)` with `δ` outside `γ^{G_{αβ}}`.
pub fn frobenius_subgroup_test(
    g: &PermutationGroup,
    t: &PermutationGroup,
    c: &PermutationGroup,
    alpha: usize,
) -> Result<TestOutcome> {
    let name = "frobenius";
    let fail = |what: &str| Err(Error::ConditionFailed(what.to_string()));
    if !t.is_subgroup_of(g) || !c.is_subgroup_of(g) {
        return Err(Error::NotInGroup);
    }
    for s in c.generators() {
        for x in t.generators() {
            if !t.contains(&x.conjugate_by(s))? {
                return fail("C does not normalize T");
            }
        }
    }
    let t_els = bounded_elements(t)?;
    let c_els = bounded_elements(c)?;
    for ce in c_els.iter().filter(|x| !x.is_identity()) {
        if t_els.iter().any(|x| !x.is_identity() && x.conjugate_by(ce) == *x) {
            return fail("C does not act fixed-point-freely on T");
        }
    }
    let mut gens = t.generators().to_vec();
    gens.extend(c.generators().iter().cloned());
    let f = PermutationGroup::new(g.degree(), gens)?;
    if c.generators().iter().any(|s| s.apply(alpha) != alpha) || f.point_stabilizer_order(alpha)? != c.order() {
        return fail("C is not the stabilizer of alpha in F");
    }
    let lambda = sorted_orbit(&f, alpha)?;
    if lambda.len() < 3 {
        return fail("orbit of alpha has fewer than 3 points");
    }
    let ga = g.pointwise_stabilizer(&[alpha])?;
    let mut best: Option<(u128, usize, PermutationGroup)> = None;
    for &beta in lambda.iter().filter(|&&b| b != alpha) {
        let gab = ga.pointwise_stabilizer(&[beta])?;
        let size = gab.order().to_u128().unwrap_or(u128::MAX);
        if best.as_ref().is_none_or(|(s, _, _)| size < *s) {
            best = Some((size, beta, gab));
        }
    }
    let (m, beta, gab) = best.expect("orbit has a second point");
    let cc = c_els.len() as u128;
    let bound = ((cc - 1) * (cc - 2)).div_ceil(lambda.len() as u128 - 2);
    if bound < m {
        return Ok(TestOutcome::inconclusive(name));
    }
    for c1 in c_els.iter().filter(|x| !x.is_identity()) {
        let Some(t1) = t_els.iter().find(|x| c1.apply(x.apply(beta)) == beta) else {
            return fail("T is not regular on the orbit");
        };
        let h1 = t1.then(c1);
        for c2 in c_els.iter().filter(|x| !x.is_identity() && *x != c1) {
            let z = h1.then(&c2.inverse());
            let Some(&gamma) = lambda.iter().find(|&&p| z.apply(p) == p) else {
                return fail("an element of F fixes no point of the orbit");
            };
            let delta = c2.apply(gamma);
            if !gab.orbit(gamma)?.contains(&delta) {
                return witness(g, name, &[alpha, beta, gamma], &[alpha, beta, delta]);
            }
        }
    }
    fail("counting bound holds but every delta lies in the orbit of gamma")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn split(q: usize) -> (PermutationGroup, PermutationGroup, PermutationGroup) {
        let g = catalog::agl1(q).unwrap().group;
        let gens = g.generators().to_vec();
        // prime fields list the translation first; F_{2^k} lists the scaling first
        let (t, c) = if q % 2 == 1 {
            (vec![gens[0].clone()], vec![gens[1].clone()])
        } else {
            (gens[1..].to_vec(), vec![gens[0].clone()])
        };
        let t = PermutationGroup::new(q, t).unwrap();
        let c = PermutationGroup::new(q, c).unwrap();
        (g, t, c)
    }

    #[test]
    fn auto_path() {
        for q in [5, 7, 8] {
            let g = catalog::agl1(q).unwrap().group;
            let out = frobenius_test(&g).unwrap();
            assert!(out.is_not_binary(), "agl1({q})");
            assert!(out.recheck(&g).unwrap());
        }
        let d14 = catalog::dihedral_polygon(7).unwrap().group;
        assert!(!frobenius_test(&d14).unwrap().is_not_binary());
        assert!(matches!(frobenius_test(&PermutationGroup::symmetric(4)), Err(Error::NotFrobenius(_))));
        assert!(matches!(frobenius_test(&PermutationGroup::cyclic(5)), Err(Error::NotFrobenius(_))));
    }

    #[test]
    fn cyclic_kernel() {
        for q in [5, 7] {
            let g = catalog::agl1(q).unwrap().group;
            let out = frobenius_cyclic_kernel(&g, &g, 0).unwrap();
            assert!(out.is_not_binary());
            assert!(out.recheck(&g).unwrap());
        }
        // kernel of AGL_1(8) is elementary abelian
        let g8 = catalog::agl1(8).unwrap().group;
        assert!(!frobenius_cyclic_kernel(&g8, &g8, 0).unwrap().is_not_binary());
        let d14 = catalog::dihedral_polygon(7).unwrap().group;
        assert!(!frobenius_cyclic_kernel(&d14, &d14, 0).unwrap().is_not_binary());
        let s5 = PermutationGroup::symmetric(5);
        let agl5 = catalog::agl1(5).unwrap().group;
        assert_eq!(frobenius_cyclic_kernel(&s5, &agl5, 0).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn counting_criterion() {
        for q in [5, 7, 8] {
            let (g, t, c) = split(q);
            let out = frobenius_subgroup_test(&g, &t, &c, 0).unwrap();
            assert!(out.is_not_binary(), "agl1({q})");
            assert!(out.recheck(&g).unwrap());
        }
        // inside Sym(5) the two-point stabilizers have order 6 > 2
        let (_, t, c) = split(5);
        let s5 = PermutationGroup::symmetric(5);
        assert!(!frobenius_subgroup_test(&s5, &t, &c, 0).unwrap().is_not_binary());
        assert!(matches!(
            frobenius_subgroup_test(&s5, &t, &c, 1),
            Err(Error::ConditionFailed(_))
        ));
    }
}
