//! Test 5: elementary abelian `p²`-subgroups `⟨g, h⟩` of special shape.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

use super::{Certificate, TestOutcome, DEFAULT_SEED};

const ENUMERATION_CAP: u128 = 100_000;
const CLOSURE_TRIALS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeLemma {
    /// `p` divides `|Ω|` and `|G_α|` exactly once, with `⟨h⟩` and `⟨gh⟩`
    /// conjugate to `⟨g⟩` for some `g ∈ G_α`.
    M2,
    /// `g ~ h ~ gh⁻¹`, `g` fixing the most points among elements of order `p`,
    /// and `⟨g, h⟩` fixing fewer points than `g`.
    Added,
}

impl PrimeLemma {
    pub fn as_str(self) -> &'static str {
        match self {
            PrimeLemma::M2 => "M2",
            PrimeLemma::Added => "added",
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn p_part(order: &BigUint, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let mut rest = order.clone();
    let mut part = BigUint::one();
    while (&rest % &p).is_zero() {
        rest /= &p;
        part *= &p;
    }
    part
}

fn fixed_common(g: &Permutation, h: &Permutation) -> usize {
    (0..g.degree()).filter(|&x| g.apply(x) == x && h.apply(x) == x).count()
}

fn in_cyclic(g: &Permutation, h: &Permutation, p: u64) -> bool {
    (0..p as i64).any(|e| g.pow(e) == *h)
}

/// Conjugacy inside `G`, by a class table when `G` is enumerated and by
/// backtrack search otherwise.
enum Classes<'a> {
    Table(HashMap<Permutation, u32>),
    Search(&'a PermutationGroup),
}

impl Classes<'_> {
    fn table(g: &PermutationGroup, elements: &[Permutation]) -> Self {
        let mut id: HashMap<Permutation, u32> = HashMap::with_capacity(elements.len());
        let mut next = 0u32;
        for x in elements {
            if id.contains_key(x) {
                continue;
            }
            id.insert(x.clone(), next);
            let mut stack = vec![x.clone()];
            while let Some(y) = stack.pop() {
                for s in g.generators() {
                    let z = y.conjugate_by(s);
                    if !id.contains_key(&z) {
                        id.insert(z.clone(), next);
                        stack.push(z);
                    }
                }
            }
            next += 1;
        }
        Classes::Table(id)
    }

    fn same(&self, a: &Permutation, b: &Permutation) -> Result<bool> {
        match self {
            Classes::Table(id) => Ok(id.get(a) == id.get(b)),
            Classes::Search(g) => Ok(g.element_conjugator(a, b)?.is_some()),
        }
    }

    /// Whether `⟨a⟩` is conjugate to `⟨b⟩`.
    fn same_subgroup(&self, a: &Permutation, b: &Permutation, p: u64) -> Result<bool> {
        for e in 1..p as i64 {
            if self.same(&a.pow(e), b)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// A `p`-subgroup grown from `p`-parts of random elements; it is a Sylow
/// subgroup when its order reaches the `p`-part of `|G|`.
fn p_subgroup(g: &PermutationGroup, p: u64, seed: u64) -> Result<PermutationGroup> {
    let target = p_part(&g.order(), p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sub = PermutationGroup::trivial(g.degree());
    for _ in 0..CLOSURE_TRIALS {
        if sub.order() == target {
            break;
        }
        let x = g.random_element(&mut rng);
        let o = x.order();
        let mut e = o;
        while e.is_multiple_of(p) {
            e /= p;
        }
        if e == o {
            continue;
        }
        let z = x.pow(e as i64);
        if sub.contains(&z)? {
            continue;
        }
        let mut gens = sub.generators().to_vec();
        gens.push(z);
        let cand = PermutationGroup::new(g.degree(), gens)?;
        if p_part(&cand.order(), p) == cand.order() {
            sub = cand;
        }
    }
    Ok(sub)
}

/// Largest fixed-point count of an element of order `p`, when it can be
/// certified: by enumeration, or over a full Sylow `p`-subgroup.
fn max_fix_order_p(g: &PermutationGroup, p: u64, seed: u64) -> Result<Option<usize>> {
    let pool = if g.order_u128().is_some_and(|o| o <= ENUMERATION_CAP) {
        g.clone()
    } else {
        let s = p_subgroup(g, p, seed)?;
        if s.order() != p_part(&g.order(), p) {
            return Ok(None);
        }
        s
    };
    let mut best = None;
    let _ = pool.for_each_element(|x| {
        if x.order() == p {
            best = best.max(Some(x.fixed_points()));
        }
        ControlFlow::Continue(())
    });
    Ok(best)
}

fn m2_numeric(g: &PermutationGroup, p: u64) -> Result<bool> {
    let n = g.degree() as u64;
    let stab = g.point_stabilizer_order(0)?;
    let bp = BigUint::from(p);
    Ok(g.is_transitive() && n.is_multiple_of(p) && stab.is_multiple_of(&bp) && !stab.is_multiple_of(&(&bp * &bp)))
}

pub fn test5_special_primes(g: &PermutationGroup, p: u64) -> Result<TestOutcome> {
    test5_special_primes_seeded(g, p, DEFAULT_SEED)
}

/// Searches for configurations meeting either lemma; exhaustive up to
/// `10^5` elements, otherwise inside one sampled `p`-subgroup.
pub fn test5_special_primes_seeded(g: &PermutationGroup, p: u64, seed: u64) -> Result<TestOutcome> {
    let name = "test5";
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if !is_prime(p) {
        return Err(Error::BadParameter(format!("{p} is not prime")));
    }
    if !g.order().is_multiple_of(&BigUint::from(p)) {
        return Err(Error::PrimeDoesNotDivide(p));
    }
    let small = g.order_u128().is_some_and(|o| o <= ENUMERATION_CAP);
    let (pool, classes, full_sylow) = if small {
        let els = g.elements();
        let classes = Classes::table(g, &els);
        (els, classes, true)
    } else {
        let s = p_subgroup(g, p, seed)?;
        if s.order_u128().is_none_or(|o| o > ENUMERATION_CAP) {
            return Ok(TestOutcome::inconclusive(name));
        }
        let full = s.order() == p_part(&g.order(), p);
        (s.elements(), Classes::Search(g), full)
    };
    let order_p: Vec<&Permutation> = pool.iter().filter(|x| x.order() == p).collect();
    let found = |lemma, a: &Permutation, b: &Permutation| {
        TestOutcome::not_binary(
            name,
            Certificate::Configuration {
                lemma,
                prime: p,
                g: a.clone(),
                h: b.clone(),
            },
        )
    };

    if m2_numeric(g, p)? {
        // a Sylow p-subgroup of G_α has order p, so one choice of ⟨g⟩ suffices
        let reference: Option<Permutation> = if small {
            g.pointwise_stabilizer(&[0])?.elements().into_iter().find(|x| x.order() == p)
        } else {
            order_p.iter().find(|x| x.fixed_points() > 0).map(|x| (*x).clone())
        };
        if let Some(g0) = reference {
            for e in 1..p as i64 {
                let gi = g0.pow(e);
                for h in &order_p {
                    if !gi.commutes_with(h) || in_cyclic(&g0, h, p) {
                        continue;
                    }
                    if classes.same_subgroup(h, &g0, p)? && classes.same_subgroup(&gi.then(h), &g0, p)? {
                        return Ok(found(PrimeLemma::M2, &gi, h));
                    }
                }
            }
        }
    }

    if full_sylow {
        let fmax = order_p.iter().map(|x| x.fixed_points()).max().unwrap_or(0);
        let mut reps: Vec<&Permutation> = Vec::new();
        for gc in order_p.iter().filter(|x| x.fixed_points() == fmax) {
            if small {
                let mut seen = false;
                for r in &reps {
                    if classes.same(r, gc)? {
                        seen = true;
                        break;
                    }
                }
                if seen {
                    continue;
                }
                reps.push(gc);
            }
            for h in &order_p {
                if !gc.commutes_with(h) || in_cyclic(gc, h, p) || fixed_common(gc, h) >= fmax {
                    continue;
                }
                if classes.same(h, gc)? && classes.same(&gc.then(&h.inverse()), gc)? {
                    return Ok(found(PrimeLemma::Added, gc, h));
                }
            }
        }
    }
    Ok(TestOutcome::inconclusive(name))
}

/// Verifies a configuration from scratch.
pub(crate) fn recheck(grp: &PermutationGroup, lemma: PrimeLemma, p: u64, g: &Permutation, h: &Permutation) -> Result<bool> {
    if !is_prime(p) || !grp.contains(g)? || !grp.contains(h)? {
        return Ok(false);
    }
    if g.order() != p || h.order() != p || !g.commutes_with(h) || in_cyclic(g, h, p) {
        return Ok(false);
    }
    let classes = Classes::Search(grp);
    match lemma {
        PrimeLemma::M2 => Ok(m2_numeric(grp, p)?
            && g.fixed_points() > 0
            && classes.same_subgroup(h, g, p)?
            && classes.same_subgroup(&g.then(h), g, p)?),
        PrimeLemma::Added => {
            if !classes.same(h, g)? || !classes.same(&g.then(&h.inverse()), g)? {
                return Ok(false);
            }
            if fixed_common(g, h) >= g.fixed_points() {
                return Ok(false);
            }
            match max_fix_order_p(grp, p, DEFAULT_SEED)? {
                Some(m) => Ok(m == g.fixed_points()),
                None => Err(Error::CapExceeded("no full Sylow subgroup to certify maximality".into())),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::relcomp;

    #[test]
    fn sylow_closure_reaches_full_order() {
        let s6 = PermutationGroup::symmetric(6);
        assert_eq!(p_subgroup(&s6, 2, 1).unwrap().order_u128(), Some(16));
        assert_eq!(p_subgroup(&s6, 3, 1).unwrap().order_u128(), Some(9));
        assert_eq!(max_fix_order_p(&s6, 3, 1).unwrap(), Some(3));
    }

    #[test]
    fn preconditions() {
        let s5 = PermutationGroup::symmetric(5);
        assert_eq!(test5_special_primes(&s5, 7).unwrap_err(), Error::PrimeDoesNotDivide(7));
        assert!(matches!(test5_special_primes(&s5, 4), Err(Error::BadParameter(_))));
        // a cyclic Sylow subgroup holds no elementary abelian group of order p²
        let c9 = PermutationGroup::cyclic(9);
        assert!(!test5_special_primes(&c9, 3).unwrap().is_not_binary());
    }

    #[test]
    fn alt6_at_two() {
        let a6 = PermutationGroup::alternating(6);
        let t = test5_special_primes(&a6, 2).unwrap();
        assert!(t.is_not_binary());
        assert!(t.recheck(&a6).unwrap());
        let Some(Certificate::Configuration { g, h, .. }) = &t.certificate else {
            panic!("expected a configuration");
        };
        assert!(!recheck(&a6, PrimeLemma::Added, 3, g, h).unwrap());
    }

    #[test]
    fn wreath_example_matches_oracle() {
        let g = catalog::imprimitive_wreath(3, 3).unwrap().group;
        let t = test5_special_primes(&g, 3).unwrap();
        assert!(t.recheck(&g).unwrap());
        if t.is_not_binary() {
            assert!(!relcomp::is_binary(&g).unwrap());
        }
    }

    #[test]
    fn sound_on_small_catalog() {
        for e in catalog::standard_entries() {
            let g = &e.group;
            if g.degree() > 12 || !g.is_transitive() || g.order_u128().is_none_or(|o| o > 50_000) {
                continue;
            }
            for p in [2u64, 3, 5, 7] {
                let Ok(t) = test5_special_primes(g, p) else { continue };
                assert!(t.recheck(g).unwrap(), "{}", e.label());
                if t.is_not_binary() {
                    assert!(!relcomp::is_binary(g).unwrap(), "{}", e.label());
                }
            }
        }
    }
}
