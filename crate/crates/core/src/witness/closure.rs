//! Orbitals and `k`-closures.

use crate::backtrack::{self, Colored};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::relcomp::certify_pair;

use super::{Certificate, TestOutcome};

pub const CLOSURE_MAX_DEGREE: usize = 64;

/// Orbit labels of `G` on ordered pairs, diagonal included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalColoring {
    pub degree: usize,
    color: Vec<u32>,
    count: usize,
}

impl OrbitalColoring {
    pub fn new(g: &PermutationGroup) -> Self {
        let (color, count) = orbit_labels(g, 2);
        OrbitalColoring {
            degree: g.degree(),
            color,
            count,
        }
    }

    pub fn color(&self, a: usize, b: usize) -> u32 {
        self.color[a * self.degree + b]
    }

    pub fn orbital_count(&self) -> usize {
        self.count
    }

    /// `color(a, b) = color(a^s, b^s)` for every generator `s`.
    pub fn is_invariant(&self, g: &PermutationGroup) -> bool {
        let n = self.degree;
        g.generators().iter().all(|s| {
            (0..n).all(|a| (0..n).all(|b| self.color(a, b) == self.color(s.apply(a), s.apply(b))))
        })
    }
}

/// Orbit ids of `g` on `Ω^len` indexed in base `n`, and the orbit count.
fn orbit_labels(g: &PermutationGroup, len: usize) -> (Vec<u32>, usize) {
    let n = g.degree();
    let total = n.pow(len as u32);
    let mut label = vec![u32::MAX; total];
    let mut next = 0u32;
    let mut stack = Vec::new();
    let mut digits = vec![0usize; len];
    for start in 0..total {
        if label[start] != u32::MAX {
            continue;
        }
        label[start] = next;
        stack.push(start);
        while let Some(code) = stack.pop() {
            let mut c = code;
            for d in digits.iter_mut().rev() {
                *d = c % n;
                c /= n;
            }
            for s in g.generators() {
                let img = digits.iter().fold(0usize, |acc, &p| acc * n + s.apply(p));
                if label[img] == u32::MAX {
                    label[img] = next;
                    stack.push(img);
                }
            }
        }
        next += 1;
    }
    (label, next as usize)
}

/// The group of all permutations preserving every orbit of `G` on `Ω^k`.
pub fn k_closure(g: &PermutationGroup, k: usize) -> Result<PermutationGroup> {
    if !(2..=3).contains(&k) {
        return Err(Error::BadParameter(format!("closure arity {k} not in 2..=3")));
    }
    let n = g.degree();
    if n > CLOSURE_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            cap: CLOSURE_MAX_DEGREE,
        });
    }
    let pairs = OrbitalColoring::new(g);
    let mut tuples = Vec::new();
    if k == 3 {
        let (labels, _) = orbit_labels(g, 3);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && b != c && a != c {
                        let code = (a * n + b) * n + c;
                        tuples.push((vec![a as u32, b as u32, c as u32], labels[code] + 1));
                    }
                }
            }
        }
    }
    let colored = Colored::new(n, pairs.color.clone(), tuples);
    let gens = backtrack::automorphism_generators(&colored, g.generators());
    PermutationGroup::new(n, gens)
}

/// `NotBinary` exactly when `G` differs from its `k`-closure.
pub fn test2_strongly_non_k_ary(g: &PermutationGroup, k: usize) -> Result<TestOutcome> {
    let name = "test2";
    if g.degree() > CLOSURE_MAX_DEGREE {
        return Ok(TestOutcome::inconclusive(name));
    }
    let closure = k_closure(g, k)?;
    for s in closure.generators() {
        if g.contains(s)? {
            continue;
        }
        let full: Vec<usize> = (0..g.degree()).collect();
        let image = s.apply_tuple(&full);
        let pair = certify_pair(g, &full, &image, k)?
            .ok_or_else(|| Error::ConditionFailed("closure element breaks a k-subtuple".into()))?;
        return Ok(TestOutcome::not_binary(
            name,
            Certificate::ClosureElement {
                element: s.clone(),
                pair,
            },
        ));
    }
    Ok(TestOutcome::inconclusive(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbitals() {
        let c = OrbitalColoring::new(&PermutationGroup::cyclic(5));
        assert_eq!(c.orbital_count(), 5);
        assert!(c.is_invariant(&PermutationGroup::cyclic(5)));
        assert!(!c.is_invariant(&PermutationGroup::symmetric(5)));
    }

    #[test]
    fn closures() {
        let a4 = PermutationGroup::alternating(4);
        assert_eq!(k_closure(&a4, 2).unwrap().order_u128(), Some(24));
        // sharply 2-transitive, so the two orbits on distinct triples separate parities
        assert_eq!(k_closure(&a4, 3).unwrap().order_u128(), Some(12));
        let s5 = PermutationGroup::symmetric(5);
        assert!(k_closure(&s5, 2).unwrap().same_group(&s5));
        // C4 regular: the orbital of difference 1 is a directed 4-cycle, so
        // brute force over Sym(4) keeps only the rotations
        let c4 = PermutationGroup::cyclic(4);
        let col = OrbitalColoring::new(&c4);
        let brute = PermutationGroup::symmetric(4)
            .elements()
            .into_iter()
            .filter(|s| (0..4).all(|a| (0..4).all(|b| col.color(a, b) == col.color(s.apply(a), s.apply(b)))))
            .count();
        let closed = k_closure(&c4, 2).unwrap();
        assert_eq!(closed.order_u128(), Some(brute as u128));
        assert_eq!(brute, 4);
        assert!(matches!(k_closure(&c4, 4), Err(Error::BadParameter(_))));
    }

    #[test]
    fn test2_examples() {
        let t = test2_strongly_non_k_ary(&PermutationGroup::alternating(4), 2).unwrap();
        assert!(t.is_not_binary());
        assert!(t.recheck(&PermutationGroup::alternating(4)).unwrap());
        match t.certificate.unwrap() {
            super::Certificate::ClosureElement { element, .. } => {
                assert!(!PermutationGroup::alternating(4).contains(&element).unwrap());
                let odd = element.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
                assert!(odd);
            }
            _ => panic!("expected a closure element"),
        }
        let s4 = PermutationGroup::symmetric(4);
        assert!(!test2_strongly_non_k_ary(&s4, 2).unwrap().is_not_binary());
    }
}
