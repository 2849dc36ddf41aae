//! Finite relational structures, their isomorphisms and homogeneity.

mod canonical;
pub mod digraph;
mod homog;

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;

use crate::backtrack::{self, Colored, Interner, MAX_POINTS};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

pub use canonical::{canonical_structure, structural_rc, StructuralRc, CANONICAL_TUPLE_CAP};
pub use digraph::{enumerate_homogeneous_digraphs, predicted_homogeneous_digraphs, Digraph};
pub use homog::{is_homogeneous, is_homogeneous_with, Homogeneity, DEFAULT_MAX_VERTICES};

/// One relation: a set of tuples of a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

/// A finite set `0..vertices` with an ordered list of relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationalStructure {
    vertices: usize,
    relations: Vec<Relation>,
}

impl RelationalStructure {
    pub fn new(vertices: usize, relations: Vec<(usize, Vec<Vec<usize>>)>) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for (arity, tuples) in relations {
            if arity < 2 {
                return Err(Error::BadParameter(format!("relation arity {arity} is below 2")));
            }
            let mut set = BTreeSet::new();
            for t in tuples {
                if t.len() != arity {
                    return Err(Error::LengthMismatch(arity, t.len()));
                }
                if let Some(&v) = t.iter().find(|&&v| v >= vertices) {
                    return Err(Error::VertexOutOfRange { vertex: v, vertices });
                }
                set.insert(t);
            }
            rels.push(Relation { arity, tuples: set });
        }
        Ok(RelationalStructure {
            vertices,
            relations: rels,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn arities(&self) -> Vec<usize> {
        self.relations.iter().map(|r| r.arity).collect()
    }

    /// Image of the structure under a relabelling of its vertices.
    pub fn permuted(&self, g: &Permutation) -> Result<Self> {
        if g.degree() != self.vertices {
            return Err(Error::DegreeMismatch {
                expected: self.vertices,
                found: g.degree(),
            });
        }
        Ok(RelationalStructure {
            vertices: self.vertices,
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    arity: r.arity,
                    tuples: r.tuples.iter().map(|t| g.apply_tuple(t)).collect(),
                })
                .collect(),
        })
    }
}

/// Substructure induced on `subset`, relabelled in ascending order.
pub fn induced_substructure(r: &RelationalStructure, subset: &[usize]) -> Result<RelationalStructure> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut pos = vec![usize::MAX; r.vertices];
    for (i, &v) in sorted.iter().enumerate() {
        if v >= r.vertices {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertices: r.vertices,
            });
        }
        pos[v] = i;
    }
    let relations = r
        .relations
        .iter()
        .map(|rel| Relation {
            arity: rel.arity,
            tuples: rel
                .tuples
                .iter()
                .filter(|t| t.iter().all(|&v| pos[v] != usize::MAX))
                .map(|t| t.iter().map(|&v| pos[v]).collect())
                .collect(),
        })
        .collect();
    Ok(RelationalStructure {
        vertices: sorted.len(),
        relations,
    })
}

/// Colors several structures in one shared color space.
///
/// The color of `(u, v)` records, for every relation, which words over
/// `{u, v}` lie in it; tuples with three or more distinct entries are
/// labelled by the set of relations containing them.
pub(crate) fn encode(structs: &[&RelationalStructure]) -> Vec<Colored> {
    let mut pair_ids: Interner<(bool, Vec<(u32, u32)>)> = Interner::default();
    let mut label_ids: Interner<Vec<u32>> = Interner::default();
    structs
        .iter()
        .map(|r| {
            let n = r.vertices;
            let mut keys: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n * n];
            let mut higher: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            for (ri, rel) in r.relations.iter().enumerate() {
                let ri = ri as u32;
                for t in &rel.tuples {
                    let mut d = t.clone();
                    d.sort_unstable();
                    d.dedup();
                    match d.len() {
                        1 => keys[d[0] * n + d[0]].push((ri, 0)),
                        2 => {
                            for (x, y) in [(d[0], d[1]), (d[1], d[0])] {
                                let word = t
                                    .iter()
                                    .enumerate()
                                    .filter(|&(_, &v)| v == y)
                                    .fold(0u32, |w, (p, _)| w | 1 << p);
                                keys[x * n + y].push((ri, word));
                            }
                        }
                        _ => higher
                            .entry(t.iter().map(|&v| v as u32).collect())
                            .or_default()
                            .push(ri),
                    }
                }
            }
            let pair = keys
                .into_iter()
                .enumerate()
                .map(|(idx, mut k)| {
                    k.sort_unstable();
                    pair_ids.id((idx / n == idx % n, k))
                })
                .collect();
            let mut tuples: Vec<(Vec<u32>, u32)> = higher
                .into_iter()
                .map(|(t, rels)| (t, label_ids.id(rels) + 1))
                .collect();
            tuples.sort_unstable();
            Colored::new(n, pair, tuples)
        })
        .collect()
}

fn check_size(r: &RelationalStructure) -> Result<()> {
    if r.vertices > MAX_POINTS {
        return Err(Error::TooLarge(format!(
            "{} vertices exceed the backtrack limit {MAX_POINTS}",
            r.vertices
        )));
    }
    Ok(())
}

/// Streams every isomorphism from `r1` onto `r2`.
pub fn for_each_structure_isomorphism<F>(r1: &RelationalStructure, r2: &RelationalStructure, mut f: F) -> Result<()>
where
    F: FnMut(&Permutation) -> ControlFlow<()>,
{
    check_size(r1)?;
    check_size(r2)?;
    if r1.vertices != r2.vertices || r1.arities() != r2.arities() {
        return Ok(());
    }
    let c = encode(&[r1, r2]);
    let _ = backtrack::for_each_isomorphism(&c[0], &c[1], |m| {
        let g = Permutation::from_images(m.iter().map(|&x| x as usize).collect()).expect("bijection");
        f(&g)
    });
    Ok(())
}

/// All isomorphisms from `r1` onto `r2`.
pub fn structure_isomorphisms(r1: &RelationalStructure, r2: &RelationalStructure) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for_each_structure_isomorphism(r1, r2, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Whether the two structures are isomorphic.
pub fn isomorphic(r1: &RelationalStructure, r2: &RelationalStructure) -> Result<bool> {
    let mut found = false;
    for_each_structure_isomorphism(r1, r2, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// `Aut(R)` as a permutation group on the vertices.
pub fn automorphism_group(r: &RelationalStructure) -> Result<PermutationGroup> {
    automorphism_group_with(r, &[])
}

/// `Aut(R)` when some automorphisms are already known.
pub fn automorphism_group_with(r: &RelationalStructure, known: &[Permutation]) -> Result<PermutationGroup> {
    check_size(r)?;
    let c = encode(&[r]);
    let gens = backtrack::automorphism_generators(&c[0], known);
    PermutationGroup::new(r.vertices, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> RelationalStructure {
        Digraph::complete(n).to_structure()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            RelationalStructure::new(3, vec![(1, vec![vec![0]])]),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            RelationalStructure::new(3, vec![(2, vec![vec![0, 3]])]),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
        let r = RelationalStructure::new(3, vec![(2, vec![vec![0, 1], vec![0, 1]])]).unwrap();
        assert_eq!(r.relations()[0].tuples.len(), 1);
    }

    #[test]
    fn induced() {
        let sub = induced_substructure(&k(4), &[1, 3]).unwrap();
        assert_eq!(sub, k(2));
        let cyc = Digraph::cycle_undirected(5).unwrap().to_structure();
        let path = induced_substructure(&cyc, &[0, 1, 2]).unwrap();
        let expect = RelationalStructure::new(3, vec![(2, vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1]])]).unwrap();
        assert_eq!(path, expect);
        assert_eq!(induced_substructure(&cyc, &[0, 1, 2, 3, 4]).unwrap(), cyc);
        assert!(induced_substructure(&cyc, &[5]).is_err());
    }

    #[test]
    fn isomorphism_counts() {
        assert_eq!(structure_isomorphisms(&k(3), &k(3)).unwrap().len(), 6);
        let l3 = Digraph::cycle_directed(3).unwrap();
        let rev = Digraph::new(3, l3.edges().iter().map(|&(a, b)| (b, a)).collect()).unwrap();
        assert_eq!(structure_isomorphisms(&l3.to_structure(), &rev.to_structure()).unwrap().len(), 3);
        assert!(structure_isomorphisms(&k(2), &Digraph::empty(2).to_structure()).unwrap().is_empty());
    }

    #[test]
    fn mixed_arity_isomorphisms() {
        let a = RelationalStructure::new(4, vec![(2, vec![vec![0, 1]]), (3, vec![vec![0, 1, 2], vec![1, 1, 3]])]).unwrap();
        let g = Permutation::parse("(1 4 2)", 4).unwrap();
        let b = a.permuted(&g).unwrap();
        let isos = structure_isomorphisms(&a, &b).unwrap();
        assert!(isos.contains(&g));
        for h in &isos {
            assert_eq!(a.permuted(h).unwrap(), b);
        }
    }
}
