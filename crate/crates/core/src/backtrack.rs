//! Isomorphism backtracking for colored structures on at most 128 points.
//!
//! Every ordered pair carries a color (the diagonal holds the vertex
//! color) and tuples with three or more distinct entries carry labels.
//! Candidate sets are bitmasks; assigning `a -> b` intersects every open
//! domain with the targets whose colors towards `b` match those of `a`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::perm::Permutation;
use crate::search::fixing_partition;

pub(crate) const MAX_POINTS: usize = 128;

/// Interns arbitrary keys as dense color ids.
#[derive(Default)]
pub(crate) struct Interner<K> {
    ids: HashMap<K, u32>,
}

impl<K: std::hash::Hash + Eq> Interner<K> {
    pub(crate) fn id(&mut self, key: K) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(key).or_insert(next)
    }
}

/// A colored structure. Labels of higher tuples are nonzero.
#[derive(Clone, Debug)]
pub(crate) struct Colored {
    pub n: usize,
    pub pair: Vec<u32>,
    pub tuples: Vec<(Vec<u32>, u32)>,
    pub lookup: HashMap<Vec<u32>, u32>,
    /// Per vertex, indices of the higher tuples containing it (once each).
    pub incidence: Vec<Vec<u32>>,
}

impl Colored {
    pub(crate) fn new(n: usize, pair: Vec<u32>, tuples: Vec<(Vec<u32>, u32)>) -> Self {
        assert!(n <= MAX_POINTS);
        assert_eq!(pair.len(), n * n);
        let mut incidence = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(tuples.len());
        for (idx, (t, label)) in tuples.iter().enumerate() {
            lookup.insert(t.clone(), *label);
            let mut seen: Vec<u32> = t.clone();
            seen.sort_unstable();
            seen.dedup();
            for v in seen {
                incidence[v as usize].push(idx as u32);
            }
        }
        Colored {
            n,
            pair,
            tuples,
            lookup,
            incidence,
        }
    }

    #[inline]
    pub(crate) fn color(&self, a: usize, b: usize) -> u32 {
        self.pair[a * self.n + b]
    }

    pub(crate) fn label(&self, t: &[u32]) -> u32 {
        self.lookup.get(t).copied().unwrap_or(0)
    }
}

/// Isomorphism search from `a` onto `b`; both must use one color space.
pub(crate) struct Matcher<'s> {
    a: &'s Colored,
    b: &'s Colored,
    masks: Vec<HashMap<(u32, u32), u128>>,
    init: Option<Vec<u128>>,
}

fn bit(x: usize) -> u128 {
    1u128 << x
}

fn ones(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(x)
        }
    })
}

impl<'s> Matcher<'s> {
    pub(crate) fn new(a: &'s Colored, b: &'s Colored) -> Self {
        let masks = (0..b.n)
            .map(|x| {
                let mut m: HashMap<(u32, u32), u128> = HashMap::new();
                for y in 0..b.n {
                    *m.entry((b.color(x, y), b.color(y, x))).or_default() |= bit(y);
                }
                m
            })
            .collect();
        let init = if a.n == b.n && label_counts(a) == label_counts(b) {
            refine(a, b)
        } else {
            None
        };
        Matcher { a, b, masks, init }
    }

    /// Domains after the refinement, or `None` when no isomorphism exists.
    pub(crate) fn initial(&self) -> Option<Vec<u128>> {
        self.init.clone()
    }

    /// Restricts `doms` by the assignment `x -> y`; false on a wipe-out.
    pub(crate) fn assign(&self, doms: &mut [u128], fixed: &mut [u32], x: usize, y: usize) -> bool {
        if doms[x] & bit(y) == 0 {
            return false;
        }
        doms[x] = bit(y);
        fixed[x] = y as u32;
        let masks = &self.masks[y];
        for w in 0..self.a.n {
            if fixed[w] != u32::MAX {
                continue;
            }
            let key = (self.a.color(x, w), self.a.color(w, x));
            let m = masks.get(&key).copied().unwrap_or(0) & !bit(y);
            doms[w] &= m;
            if doms[w] == 0 {
                return false;
            }
        }
        for &ti in &self.a.incidence[x] {
            let (t, label) = &self.a.tuples[ti as usize];
            if t.iter().all(|&v| fixed[v as usize] != u32::MAX) {
                let image: Vec<u32> = t.iter().map(|&v| fixed[v as usize]).collect();
                if self.b.label(&image) != *label {
                    return false;
                }
            }
        }
        true
    }

    /// Visits every completion of the state, in increasing target order.
    pub(crate) fn complete<F>(&self, doms: &[u128], fixed: &[u32], visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let next = (0..self.a.n)
            .filter(|&w| fixed[w] == u32::MAX)
            .min_by_key(|&w| doms[w].count_ones());
        let Some(x) = next else {
            return visit(fixed);
        };
        for y in ones(doms[x]) {
            let mut d = doms.to_vec();
            let mut f = fixed.to_vec();
            if self.assign(&mut d, &mut f, x, y) {
                self.complete(&d, &f, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    pub(crate) fn first_completion(&self, doms: &[u128], fixed: &[u32]) -> Option<Vec<u32>> {
        let mut found = None;
        let _ = self.complete(doms, fixed, &mut |m: &[u32]| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found
    }
}

fn label_counts(c: &Colored) -> Vec<(u32, usize)> {
    let mut h: HashMap<u32, usize> = HashMap::new();
    for (_, l) in &c.tuples {
        *h.entry(*l).or_default() += 1;
    }
    let mut v: Vec<_> = h.into_iter().collect();
    v.sort_unstable();
    v
}

/// Joint color refinement of both sides; returns the starting domains.
fn refine(a: &Colored, b: &Colored) -> Option<Vec<u128>> {
    let n = a.n;
    let sides = [a, b];
    let mut interner: Interner<(u32, Vec<(u32, u32, u32)>)> = Interner::default();
    let mut col: Vec<[u32; 2]> = vec![[0; 2]; n];
    for (s, c) in sides.iter().enumerate() {
        for v in 0..n {
            let mut inc: Vec<(u32, u32, u32)> = Vec::new();
            for &ti in &c.incidence[v] {
                let (t, label) = &c.tuples[ti as usize];
                let mut pos = 0u32;
                for (p, &x) in t.iter().enumerate() {
                    if x as usize == v {
                        pos |= 1 << p;
                    }
                }
                inc.push((*label, pos, 0));
            }
            inc.sort_unstable();
            col[v][s] = interner.id((c.color(v, v), inc));
        }
    }
    let mut classes = count_classes(&col);
    loop {
        let mut interner: Interner<(u32, Vec<(u32, u32, u32)>)> = Interner::default();
        let mut next: Vec<[u32; 2]> = vec![[0; 2]; n];
        for (s, c) in sides.iter().enumerate() {
            for v in 0..n {
                let mut sig: Vec<(u32, u32, u32)> = (0..n)
                    .filter(|&w| w != v)
                    .map(|w| (c.color(v, w), c.color(w, v), col[w][s]))
                    .collect();
                sig.sort_unstable();
                next[v][s] = interner.id((col[v][s], sig));
            }
        }
        let c = count_classes(&next);
        col = next;
        if c == classes {
            break;
        }
        classes = c;
    }
    let mut hist: HashMap<u32, (usize, usize)> = HashMap::new();
    for v in 0..n {
        hist.entry(col[v][0]).or_default().0 += 1;
        hist.entry(col[v][1]).or_default().1 += 1;
    }
    if hist.values().any(|&(x, y)| x != y) {
        return None;
    }
    let mut by_color: HashMap<u32, u128> = HashMap::new();
    for v in 0..n {
        *by_color.entry(col[v][1]).or_default() |= bit(v);
    }
    Some((0..n).map(|v| by_color[&col[v][0]]).collect())
}

fn count_classes(col: &[[u32; 2]]) -> usize {
    let mut all: Vec<u32> = col.iter().flat_map(|c| c.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn to_perm(m: &[u32]) -> Permutation {
    Permutation::from_images(m.iter().map(|&x| x as usize).collect()).expect("bijection")
}

/// Generators of the automorphism group of `c`. `known` are automorphisms
/// already at hand; they seed the orbit pruning.
pub(crate) fn automorphism_generators(c: &Colored, known: &[Permutation]) -> Vec<Permutation> {
    let n = c.n;
    let matcher = Matcher::new(c, c);
    let mut gens: Vec<Permutation> = known.iter().filter(|g| !g.is_identity()).cloned().collect();
    let Some(start) = matcher.initial() else {
        return gens;
    };
    // prefix states with base points 0..i fixed
    let mut states: Vec<(Vec<u128>, Vec<u32>)> = vec![(start, vec![u32::MAX; n])];
    for i in 0..n {
        let (mut d, mut f) = states[i].clone();
        let ok = matcher.assign(&mut d, &mut f, i, i);
        assert!(ok, "identity is an automorphism");
        states.push((d, f));
    }
    let base: Vec<usize> = (0..n).collect();
    for i in (0..n).rev() {
        let (doms, fixed) = &states[i];
        if doms[i].count_ones() <= 1 {
            continue;
        }
        let mut part = fixing_partition(n, &gens, &base[..i]);
        let mut failed: Vec<usize> = Vec::new();
        for cand in ones(doms[i]) {
            if cand == i || part[cand] == part[i] || failed.iter().any(|&f| part[f] == part[cand]) {
                continue;
            }
            let mut d = doms.clone();
            let mut f = fixed.clone();
            let found = if matcher.assign(&mut d, &mut f, i, cand) {
                matcher.first_completion(&d, &f)
            } else {
                None
            };
            match found {
                Some(m) => {
                    gens.push(to_perm(&m));
                    part = fixing_partition(n, &gens, &base[..i]);
                }
                None => failed.push(cand),
            }
        }
    }
    gens
}

/// Every isomorphism from `a` onto `b` as an image vector.
pub(crate) fn for_each_isomorphism<F>(a: &Colored, b: &Colored, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    let matcher = Matcher::new(a, b);
    match matcher.initial() {
        Some(d) => matcher.complete(&d, &vec![u32::MAX; a.n], &mut visit),
        None => ControlFlow::Continue(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermutationGroup;

    fn cycle(n: usize, directed: bool) -> Colored {
        let mut pair = vec![1u32; n * n];
        for v in 0..n {
            pair[v * n + v] = 0;
            let w = (v + 1) % n;
            pair[v * n + w] = 2;
            pair[w * n + v] = if directed { 3 } else { 2 };
        }
        Colored::new(n, pair, Vec::new())
    }

    #[test]
    fn cycle_automorphisms() {
        let und = PermutationGroup::new(6, automorphism_generators(&cycle(6, false), &[])).unwrap();
        assert_eq!(und.order_u128(), Some(12));
        let dir = PermutationGroup::new(6, automorphism_generators(&cycle(6, true), &[])).unwrap();
        assert_eq!(dir.order_u128(), Some(6));
    }

    #[test]
    fn isomorphism_count_matches_group() {
        let c = cycle(5, false);
        let mut count = 0;
        let _ = for_each_isomorphism(&c, &c, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 10);
    }

    #[test]
    fn higher_tuples_restrict() {
        // a single cyclically labelled triple on 3 points
        let pair = vec![0, 1, 1, 1, 0, 1, 1, 1, 0];
        let tuples = vec![(vec![0, 1, 2], 1), (vec![1, 2, 0], 1), (vec![2, 0, 1], 1)];
        let c = Colored::new(3, pair, tuples);
        let g = PermutationGroup::new(3, automorphism_generators(&c, &[])).unwrap();
        assert_eq!(g.order_u128(), Some(3));
    }
}
