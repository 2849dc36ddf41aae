//! Backtrack searches over a stabilizer chain.
//!
//! Elements are visited in lexicographic order of their base images. A
//! group element is written `g = u_{k-1} ... u_1 u_0` with `u_i` a coset
//! representative of level `i`, so the image of base point `i` is
//! `x_i^(u_{i-1} ... u_0)` where `x_i` is the orbit point `u_i` reaches.

use crate::chain::StabilizerChain;
use crate::perm::Permutation;

/// Pruning hooks for a chain backtrack.
pub(crate) trait Property {
    /// `images[j]` is the image of base point `j` for `j <= level`.
    fn allow(&mut self, level: usize, images: &[usize]) -> bool;
    /// Final test on a complete element.
    fn accept(&mut self, g: &Permutation) -> bool;
}

/// First element (in base-image order) of the chain's group with the property.
pub(crate) fn first_element(chain: &StabilizerChain, prop: &mut dyn Property) -> Option<Permutation> {
    let id = Permutation::identity(chain.degree());
    let mut images = Vec::with_capacity(chain.levels().len());
    dfs(chain, 0, &id, &mut images, prop)
}

fn dfs(
    chain: &StabilizerChain,
    level: usize,
    suffix: &Permutation,
    images: &mut Vec<usize>,
    prop: &mut dyn Property,
) -> Option<Permutation> {
    let levels = chain.levels();
    if level == levels.len() {
        return prop.accept(suffix).then(|| suffix.clone());
    }
    let lv = &levels[level];
    let mut cands: Vec<(usize, usize)> = lv.orbit().iter().map(|&x| (suffix.apply(x), x)).collect();
    cands.sort_unstable();
    for (img, x) in cands {
        images.push(img);
        if prop.allow(level, images) {
            let next = lv.rep(x).expect("orbit point").then(suffix);
            if let Some(g) = dfs(chain, level + 1, &next, images, prop) {
                images.pop();
                return Some(g);
            }
        }
        images.pop();
    }
    None
}

/// Generators of the subgroup `{g : prop holds}`.
///
/// The property must define a subgroup and `allow` must hold on every
/// prefix of its elements. `known` are elements already known to lie in
/// the subgroup.
pub(crate) fn subgroup_generators(
    chain: &StabilizerChain,
    prop: &mut dyn Property,
    known: &[Permutation],
) -> Vec<Permutation> {
    let n = chain.degree();
    let levels = chain.levels();
    let base = chain.base();
    let mut gens: Vec<Permutation> = known.iter().filter(|g| !g.is_identity()).cloned().collect();
    for i in (0..levels.len()).rev() {
        let lv = &levels[i];
        if lv.orbit_len() == 1 {
            continue;
        }
        let mut failed: Vec<usize> = Vec::new();
        let mut part = fixing_partition(n, &gens, &base[..i]);
        let mut orbit: Vec<usize> = lv.orbit().to_vec();
        orbit.sort_unstable();
        for &c in &orbit {
            if c == base[i] {
                continue;
            }
            let rc = part[c];
            if rc == part[base[i]] || failed.iter().any(|&f| part[f] == rc) {
                continue;
            }
            let mut images: Vec<usize> = base[..i].to_vec();
            images.push(c);
            let found = if prop.allow(i, &images) {
                let u = lv.rep(c).expect("orbit point");
                dfs(chain, i + 1, u, &mut images, prop)
            } else {
                None
            };
            match found {
                Some(g) => {
                    gens.push(g);
                    part = fixing_partition(n, &gens, &base[..i]);
                }
                None => failed.push(c),
            }
        }
    }
    gens
}

/// Orbit representatives (least point) under the generators fixing `fixed` pointwise.
pub(crate) fn fixing_partition(n: usize, gens: &[Permutation], fixed: &[usize]) -> Vec<usize> {
    let sub: Vec<&Permutation> = gens
        .iter()
        .filter(|g| fixed.iter().all(|&b| g.apply(b) == b))
        .collect();
    let mut rep = vec![usize::MAX; n];
    for start in 0..n {
        if rep[start] != usize::MAX {
            continue;
        }
        rep[start] = start;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in &sub {
                let y = g.apply(x);
                if rep[y] == usize::MAX {
                    rep[y] = start;
                    stack.push(y);
                }
            }
        }
    }
    rep
}
