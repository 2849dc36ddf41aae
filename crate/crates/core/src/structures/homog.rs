//! Homogeneity testing.
//!
//! A structure is homogeneous exactly when, for every vertex set `S` and
//! vertices `x, y` outside it, whenever fixing `S` and sending `x` to `y`
//! is a partial isomorphism, some automorphism fixing `S` pointwise sends
//! `x` to `y`: an arbitrary partial isomorphism is then extended one point
//! at a time. Adding a point fixed by `Aut_(S)` leaves the condition
//! implied, so only sets grown by moved points, up to conjugacy, are
//! visited.

use std::collections::HashSet;

use super::{automorphism_group, check_size, encode, RelationalStructure};
use crate::backtrack::Colored;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;

pub const DEFAULT_MAX_VERTICES: usize = 10;

/// Verdict with a partial isomorphism that fails to extend.
#[derive(Clone, Debug)]
pub struct Homogeneity {
    pub homogeneous: bool,
    /// `domain[i] -> image[i]` is an isomorphism of induced substructures
    /// that no automorphism extends.
    pub failure: Option<(Vec<usize>, Vec<usize>)>,
    pub automorphisms: PermutationGroup,
}

pub fn is_homogeneous(r: &RelationalStructure) -> Result<Homogeneity> {
    is_homogeneous_with(r, DEFAULT_MAX_VERTICES)
}

pub fn is_homogeneous_with(r: &RelationalStructure, max_vertices: usize) -> Result<Homogeneity> {
    if r.vertices() > max_vertices {
        return Err(Error::TooLarge(format!(
            "{} vertices exceed the homogeneity cap {max_vertices}",
            r.vertices()
        )));
    }
    check_size(r)?;
    let aut = automorphism_group(r)?;
    let c = &encode(&[r])[0];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(s) = stack.pop() {
        let stab = aut.pointwise_stabilizer(&s)?;
        let orbits = stab.orbits();
        let mut orbit_of = vec![0usize; r.vertices()];
        for (i, o) in orbits.iter().enumerate() {
            for &p in o {
                orbit_of[p] = i;
            }
        }
        for o in &orbits {
            let x = o[0];
            if s.contains(&x) {
                continue;
            }
            for y in 0..r.vertices() {
                if s.contains(&y) || orbit_of[y] == orbit_of[x] {
                    continue;
                }
                if extends_identity(c, &s, x, y) {
                    let mut domain = s.clone();
                    let mut image = s.clone();
                    domain.push(x);
                    image.push(y);
                    return Ok(Homogeneity {
                        homogeneous: false,
                        failure: Some((domain, image)),
                        automorphisms: aut,
                    });
                }
            }
            if o.len() > 1 {
                let mut next = s.clone();
                next.push(x);
                next.sort_unstable();
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    Ok(Homogeneity {
        homogeneous: true,
        failure: None,
        automorphisms: aut,
    })
}

/// Whether the identity on `s` together with `x -> y` is an isomorphism
/// between the substructures induced on `s + x` and `s + y`.
fn extends_identity(c: &Colored, s: &[usize], x: usize, y: usize) -> bool {
    if c.color(x, x) != c.color(y, y) {
        return false;
    }
    if s.iter().any(|&p| c.color(p, x) != c.color(p, y) || c.color(x, p) != c.color(y, p)) {
        return false;
    }
    let inside = |v: u32, extra: usize| v as usize == extra || s.contains(&(v as usize));
    for (from, to) in [(x, y), (y, x)] {
        for &ti in &c.incidence[from] {
            let (t, label) = &c.tuples[ti as usize];
            if !t.iter().all(|&v| inside(v, from)) {
                continue;
            }
            let image: Vec<u32> = t.iter().map(|&v| if v as usize == from { to as u32 } else { v }).collect();
            if c.label(&image) != *label {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Digraph;

    #[test]
    fn complete_and_cycles() {
        assert!(is_homogeneous(&Digraph::complete(4).to_structure()).unwrap().homogeneous);
        assert!(is_homogeneous(&Digraph::cycle_undirected(5).unwrap().to_structure()).unwrap().homogeneous);
        assert!(!is_homogeneous(&Digraph::cycle_undirected(6).unwrap().to_structure()).unwrap().homogeneous);
    }

    #[test]
    fn path_fails_with_a_partial_isomorphism() {
        let path = Digraph::new(3, vec![(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap().to_structure();
        let h = is_homogeneous(&path).unwrap();
        assert!(!h.homogeneous);
        let (dom, img) = h.failure.unwrap();
        // the map is an isomorphism of induced substructures
        let a = crate::structures::induced_substructure(&path, &dom).unwrap();
        let b = crate::structures::induced_substructure(&path, &img).unwrap();
        let mut da = dom.clone();
        da.sort_unstable();
        let mut ib = img.clone();
        ib.sort_unstable();
        let images: Vec<usize> = da
            .iter()
            .map(|v| ib.binary_search(&img[dom.iter().position(|w| w == v).unwrap()]).unwrap())
            .collect();
        let g = crate::perm::Permutation::from_images(images).unwrap();
        assert_eq!(a.permuted(&g).unwrap(), b);
        // and no automorphism extends it
        assert!(h.automorphisms.transporter(&dom, &img).unwrap().is_none());
    }

    #[test]
    fn cap() {
        assert!(matches!(
            is_homogeneous(&Digraph::empty(11).to_structure()),
            Err(Error::TooLarge(_))
        ));
        assert!(is_homogeneous_with(&Digraph::empty(11).to_structure(), 11).unwrap().homogeneous);
    }
}
