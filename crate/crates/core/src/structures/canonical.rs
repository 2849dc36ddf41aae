//! The canonical structure of a group: its orbits on tuples as relations.

use super::{automorphism_group_with, homog, RelationalStructure};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::relcomp;

/// Largest number of tuples of one length the canonical structure builds.
pub const CANONICAL_TUPLE_CAP: usize = 1_000_000;

const ARITY_CAP: usize = 4;
const STRUCTURAL_MAX_DEGREE: usize = 8;

fn tuple_count(n: usize, len: usize) -> Option<usize> {
    n.checked_pow(len as u32)
}

/// Orbits of `g` on all of `Ω^len`, each as a sorted tuple list.
fn tuple_orbits(g: &PermutationGroup, len: usize) -> Vec<Vec<Vec<usize>>> {
    let n = g.degree();
    let total = n.pow(len as u32);
    let decode = |mut code: usize| -> Vec<usize> {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    };
    let mut orbit = vec![u32::MAX; total];
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    for start in 0..total {
        if orbit[start] != u32::MAX {
            continue;
        }
        let id = out.len() as u32;
        orbit[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let t = decode(members[head]);
            head += 1;
            for s in g.generators() {
                let code = t.iter().fold(0usize, |c, &p| c * n + s.apply(p));
                if orbit[code] == u32::MAX {
                    orbit[code] = id;
                    members.push(code);
                }
            }
        }
        members.sort_unstable();
        out.push(members.into_iter().map(decode).collect());
    }
    out
}

/// Relations are the orbits of `g` on `Ω^i` for `i = 2..=s`, ordered by
/// arity and then by least member.
pub fn canonical_structure(g: &PermutationGroup, s: usize) -> Result<RelationalStructure> {
    if s < 2 {
        return Err(Error::BadParameter(format!("arity {s} is below 2")));
    }
    let fits = tuple_count(g.degree(), s).is_some_and(|c| c <= CANONICAL_TUPLE_CAP);
    if s > ARITY_CAP && !fits {
        return Err(Error::ArityTooLarge { arity: s, cap: ARITY_CAP });
    }
    if !fits {
        return Err(Error::TooLarge(format!(
            "{}^{s} tuples exceed {CANONICAL_TUPLE_CAP}",
            g.degree()
        )));
    }
    let mut relations = Vec::new();
    for len in 2..=s {
        // orbit discovery order is already least-member order
        for orbit in tuple_orbits(g, len) {
            relations.push((len, orbit));
        }
    }
    RelationalStructure::new(g.degree(), relations)
}

/// Smallest arity of a homogeneous canonical structure with automorphism
/// group exactly `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralRc {
    pub value: usize,
    /// Set when the arity search hit the tuple cap and `value` is the
    /// tuple-based relational complexity instead.
    pub from_tuple_rc: bool,
}

pub fn structural_rc(g: &PermutationGroup) -> Result<StructuralRc> {
    let n = g.degree();
    if n > STRUCTURAL_MAX_DEGREE {
        return Err(Error::TooLarge(format!(
            "degree {n} exceeds the structural limit {STRUCTURAL_MAX_DEGREE}"
        )));
    }
    let order = g.order();
    for s in 2..=n.max(2) {
        let r = match canonical_structure(g, s) {
            Ok(r) => r,
            Err(Error::ArityTooLarge { .. }) | Err(Error::TooLarge(_)) => {
                let rc = relcomp::relational_complexity(g)?;
                return Ok(StructuralRc {
                    value: rc.rc,
                    from_tuple_rc: true,
                });
            }
            Err(e) => return Err(e),
        };
        let aut = automorphism_group_with(&r, g.generators())?;
        if aut.order() != order {
            continue;
        }
        if homog::is_homogeneous_with(&r, STRUCTURAL_MAX_DEGREE)?.homogeneous {
            return Ok(StructuralRc {
                value: s,
                from_tuple_rc: false,
            });
        }
    }
    Err(Error::CapExceeded("no canonical structure up to the degree is homogeneous".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_counts() {
        let s3 = canonical_structure(&PermutationGroup::symmetric(3), 2).unwrap();
        assert_eq!(s3.relations().len(), 2);
        let c3 = canonical_structure(&PermutationGroup::cyclic(3), 2).unwrap();
        assert_eq!(c3.relations().len(), 3);
        assert!(matches!(
            canonical_structure(&PermutationGroup::symmetric(3), 1),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            canonical_structure(&PermutationGroup::symmetric(40), 5),
            Err(Error::ArityTooLarge { .. })
        ));
    }

    #[test]
    fn ordered_by_arity_then_least_member() {
        let r = canonical_structure(&PermutationGroup::cyclic(4), 3).unwrap();
        let firsts: Vec<(usize, Vec<usize>)> = r
            .relations()
            .iter()
            .map(|rel| (rel.arity, rel.tuples.iter().next().unwrap().clone()))
            .collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        assert_eq!(firsts, sorted);
    }

    #[test]
    fn structural_examples() {
        let v = |g: PermutationGroup| structural_rc(&g).unwrap().value;
        assert_eq!(v(PermutationGroup::symmetric(4)), 2);
        assert_eq!(v(PermutationGroup::alternating(4)), 3);
        assert_eq!(v(PermutationGroup::cyclic(5)), 2);
    }
}
