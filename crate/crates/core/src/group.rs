//! Permutation groups given by generators, with a lazily built chain.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::chain::StabilizerChain;
use crate::error::{Error, Result};
use crate::perm::{Permutation, MAX_DEGREE};
use crate::search::{self, Property};

#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BadParameter("degree must be at least 1".into()));
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge {
                degree,
                cap: MAX_DEGREE,
            });
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermutationGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// Group generated by 1-based cycle strings.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, perms)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("valid degree")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
        }
        Self::new(n, gens).expect("valid degree")
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).unwrap())
            .collect();
        Self::new(n, gens).expect("valid degree")
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        Self::new(n, gens).expect("valid degree")
    }

    pub(crate) fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabilizerChain) -> Self {
        let lock = OnceLock::new();
        let _ = lock.set(chain);
        PermutationGroup {
            degree,
            generators,
            chain: lock,
        }
    }

    /// Attaches a previously computed chain of this group. Only containment
    /// of the generators is checked, not that they generate the whole chain.
    pub fn with_known_chain(degree: usize, generators: Vec<Permutation>, chain: StabilizerChain) -> Result<Self> {
        if chain.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: chain.degree(),
            });
        }
        let g = Self::new(degree, generators)?;
        if !g.generators.iter().all(|x| chain.contains(x)) {
            return Err(Error::NotInGroup);
        }
        Ok(Self::with_chain(degree, g.generators, chain))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        self.chain
            .get_or_init(|| StabilizerChain::build(self.degree, &self.generators, &[], None))
    }

    /// A fresh chain whose base begins with `prefix`.
    pub fn rebased_chain(&self, prefix: &[usize]) -> StabilizerChain {
        let chain = self.chain();
        if chain.base().starts_with(prefix) {
            return chain.clone();
        }
        let order = chain.order();
        StabilizerChain::build(self.degree, &chain.strong_generators(), prefix, Some(&order))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.order().to_u128()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    fn check_point(&self, p: usize) -> Result<()> {
        if p >= self.degree {
            Err(Error::PointOutOfRange {
                point: p,
                degree: self.degree,
            })
        } else {
            Ok(())
        }
    }

    fn check_perm(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            })
        } else {
            Ok(())
        }
    }

    /// Orbit of `p` in breadth-first insertion order.
    pub fn orbit(&self, p: usize) -> Result<Vec<usize>> {
        self.check_point(p)?;
        let mut seen = vec![false; self.degree];
        seen[p] = true;
        let mut out = vec![p];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            head += 1;
        }
        Ok(out)
    }

    /// All orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut orb = self.orbit(p).expect("in range");
            for &q in &orb {
                seen[q] = true;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_perm(g)?;
        Ok(self.chain().contains(g))
    }

    /// Some `g` with `I_i^g = J_i` for every `i`, or `None` when no element exists.
    pub fn transporter(&self, i: &[usize], j: &[usize]) -> Result<Option<Permutation>> {
        if i.len() != j.len() {
            return Err(Error::LengthMismatch(i.len(), j.len()));
        }
        for &p in i.iter().chain(j) {
            self.check_point(p)?;
        }
        let mut src: Vec<usize> = Vec::new();
        let mut dst: Vec<usize> = Vec::new();
        for (&a, &b) in i.iter().zip(j) {
            match src.iter().position(|&x| x == a) {
                Some(k) if dst[k] != b => return Ok(None),
                Some(_) => {}
                None => {
                    if dst.contains(&b) {
                        return Ok(None);
                    }
                    src.push(a);
                    dst.push(b);
                }
            }
        }
        let chain = self.rebased_chain(&src);
        Ok(descend(&chain, &dst))
    }

    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermutationGroup> {
        for &p in points {
            self.check_point(p)?;
        }
        let mut distinct: Vec<usize> = Vec::new();
        for &p in points {
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        let chain = self.rebased_chain(&distinct);
        let tail = chain.tail(distinct.len());
        let gens = tail.levels().first().map(|l| l.generators().to_vec()).unwrap_or_default();
        Ok(Self::with_chain(self.degree, gens, tail))
    }

    pub fn setwise_stabilizer(&self, set: &[usize]) -> Result<PermutationGroup> {
        let mut inside = vec![false; self.degree];
        for &p in set {
            self.check_point(p)?;
            inside[p] = true;
        }
        let size = inside.iter().filter(|&&b| b).count();
        if size == 0 || size == self.degree {
            return Ok(self.clone());
        }
        let prefix: Vec<usize> = (0..self.degree).filter(|&p| inside[p]).collect();
        let chain = self.rebased_chain(&prefix);
        let base = chain.base();
        let known: Vec<Permutation> = self
            .generators
            .iter()
            .filter(|g| (0..self.degree).all(|p| inside[g.apply(p)] == inside[p]))
            .cloned()
            .collect();
        let mut prop = SetPreserving {
            inside: &inside,
            base: &base,
        };
        let gens = search::subgroup_generators(&chain, &mut prop, &known);
        Ok(Self::new(self.degree, gens).expect("same degree"))
    }

    /// Action of the setwise stabilizer on `set`, relabeled in ascending
    /// order, together with the order of the kernel.
    pub fn induced_action(&self, set: &[usize]) -> Result<(PermutationGroup, BigUint)> {
        let stab = self.setwise_stabilizer(set)?;
        let image = stab.restrict(set)?;
        let kernel = stab.order() / image.order();
        Ok((image, kernel))
    }

    /// Action on an invariant set, relabeled in ascending order.
    pub fn restrict(&self, set: &[usize]) -> Result<PermutationGroup> {
        let mut sorted: Vec<usize> = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![usize::MAX; self.degree];
        for (k, &p) in sorted.iter().enumerate() {
            self.check_point(p)?;
            index[p] = k;
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in &self.generators {
            let mut imgs = Vec::with_capacity(sorted.len());
            for &p in &sorted {
                let q = index[g.apply(p)];
                if q == usize::MAX {
                    return Err(Error::ConditionFailed("set is not invariant".into()));
                }
                imgs.push(q);
            }
            let h = Permutation::from_images(imgs)?;
            if !h.is_identity() && !gens.contains(&h) {
                gens.push(h);
            }
        }
        Self::new(sorted.len().max(1), gens)
    }

    /// A nontrivial block system, or `None` when the action is primitive.
    pub fn block_system(&self) -> Result<Option<Vec<Vec<usize>>>> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.degree;
        for x in 1..n {
            let mut uf: Vec<usize> = (0..n).collect();
            let mut queue = vec![(0usize, x)];
            union(&mut uf, 0, x);
            while let Some((a, b)) = queue.pop() {
                for g in &self.generators {
                    let c = find(&mut uf, g.apply(a));
                    let d = find(&mut uf, g.apply(b));
                    if c != d {
                        union(&mut uf, c, d);
                        queue.push((c, d));
                    }
                }
            }
            let root = find(&mut uf, 0);
            let block_size = (0..n).filter(|&p| find(&mut uf, p) == root).count();
            if block_size < n {
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                let mut which: Vec<usize> = vec![usize::MAX; n];
                for p in 0..n {
                    let r = find(&mut uf, p);
                    if which[r] == usize::MAX {
                        which[r] = blocks.len();
                        blocks.push(Vec::new());
                    }
                    blocks[which[r]].push(p);
                }
                return Ok(Some(blocks));
            }
        }
        Ok(None)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.block_system()?.is_none())
    }

    /// Some `x` in the group with `g^x = h`.
    pub fn element_conjugator(&self, g: &Permutation, h: &Permutation) -> Result<Option<Permutation>> {
        if !self.contains(g)? || !self.contains(h)? {
            return Err(Error::NotInGroup);
        }
        if g == h {
            return Ok(Some(Permutation::identity(self.degree)));
        }
        let cycle_type = |p: &Permutation| {
            let mut t: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
            t.sort_unstable();
            t
        };
        if cycle_type(g) != cycle_type(h) {
            return Ok(None);
        }
        let n = self.degree;
        let g_len = cycle_lengths(g);
        let h_len = cycle_lengths(h);
        let mut prefix: Vec<usize> = Vec::with_capacity(n);
        let mut cycles = g.cycles();
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        for c in &cycles {
            prefix.extend_from_slice(c);
        }
        prefix.extend((0..n).filter(|&p| g.apply(p) == p));
        let chain = self.rebased_chain(&prefix);
        let base = chain.base();
        let mut pos = vec![usize::MAX; n];
        for (k, &b) in base.iter().enumerate() {
            pos[b] = k;
        }
        let mut prop = Conjugating {
            g,
            g_inv: g.inverse(),
            h,
            base: &base,
            pos: &pos,
            g_len: &g_len,
            h_len: &h_len,
        };
        Ok(search::first_element(&chain, &mut prop))
    }

    /// Visits every element.
    pub fn for_each_element<F>(&self, f: F) -> ControlFlow<()>
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        self.chain().for_each_element(f)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let _ = self.for_each_element(|g| {
            out.push(g.clone());
            ControlFlow::Continue(())
        });
        out
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for lv in self.chain().levels().iter().rev() {
            let x = lv.orbit()[rng.gen_range(0..lv.orbit_len())];
            g = g.then(lv.rep(x).expect("orbit point"));
        }
        g
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.chain().contains(g))
    }

    /// Same degree and same element set.
    pub fn same_group(&self, other: &PermutationGroup) -> bool {
        self.is_subgroup_of(other) && self.order() == other.order()
    }

    /// Whether every generator of `other` normalizes this group.
    pub fn is_normal_in(&self, other: &PermutationGroup) -> bool {
        other.generators.iter().all(|t| {
            self.generators
                .iter()
                .all(|s| self.chain().contains(&s.conjugate_by(t)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gs = &self.generators;
        gs.iter()
            .enumerate()
            .all(|(i, a)| gs[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Order of the stabilizer of a point (the same for every point of a
    /// transitive group).
    pub fn point_stabilizer_order(&self, p: usize) -> Result<BigUint> {
        Ok(self.order() / BigUint::from(self.orbit(p)?.len()))
    }

    /// Least points of the orbits.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        self.orbits().iter().map(|o| o[0]).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == BigUint::from(self.degree)
    }

    /// Set of points moved by some generator.
    pub fn support(&self) -> BTreeSet<usize> {
        self.generators.iter().flat_map(|g| g.support()).collect()
    }

    pub fn order_is_one(&self) -> bool {
        self.order().is_one()
    }
}

/// Walks down a chain whose base starts with the source points, returning
/// the coset representative product sending them to `dst`.
fn descend(chain: &StabilizerChain, dst: &[usize]) -> Option<Permutation> {
    let n = chain.degree();
    let mut suffix = Permutation::identity(n);
    let mut suffix_inv = Permutation::identity(n);
    for (lv, &target) in chain.levels().iter().zip(dst) {
        let x = suffix_inv.apply(target);
        let rep = lv.rep(x)?;
        let rep_inv = lv.rep_inv(x).expect("orbit point");
        suffix = rep.then(&suffix);
        suffix_inv = suffix_inv.then(rep_inv);
    }
    Some(suffix)
}

fn cycle_lengths(g: &Permutation) -> Vec<usize> {
    let mut len = vec![1; g.degree()];
    for c in g.cycles() {
        for &p in &c {
            len[p] = c.len();
        }
    }
    len
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn union(uf: &mut [usize], a: usize, b: usize) {
    let ra = find(uf, a);
    let rb = find(uf, b);
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        uf[hi] = lo;
    }
}

struct SetPreserving<'a> {
    inside: &'a [bool],
    base: &'a [usize],
}

impl Property for SetPreserving<'_> {
    fn allow(&mut self, level: usize, images: &[usize]) -> bool {
        self.inside[self.base[level]] == self.inside[images[level]]
    }

    fn accept(&mut self, g: &Permutation) -> bool {
        (0..self.inside.len()).all(|p| self.inside[g.apply(p)] == self.inside[p])
    }
}

struct Conjugating<'a> {
    g: &'a Permutation,
    g_inv: Permutation,
    h: &'a Permutation,
    base: &'a [usize],
    pos: &'a [usize],
    g_len: &'a [usize],
    h_len: &'a [usize],
}

impl Property for Conjugating<'_> {
    // (b^g)^x must equal (b^x)^h.
    fn allow(&mut self, level: usize, images: &[usize]) -> bool {
        let b = self.base[level];
        let img = images[level];
        if self.g_len[b] != self.h_len[img] {
            return false;
        }
        let prev = self.pos[self.g_inv.apply(b)];
        if prev < level && images[level] != self.h.apply(images[prev]) {
            return false;
        }
        let next = self.pos[self.g.apply(b)];
        if next < level && images[next] != self.h.apply(img) {
            return false;
        }
        true
    }

    fn accept(&mut self, x: &Permutation) -> bool {
        &self.g.conjugate_by(x) == self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn d8() -> PermutationGroup {
        PermutationGroup::from_cycles(4, &["(1 2 3 4)", "(2 4)"]).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let a4 = PermutationGroup::alternating(4);
        let mut o = a4.orbit(0).unwrap();
        o.sort_unstable();
        assert_eq!(o, vec![0, 1, 2, 3]);
        let g = PermutationGroup::from_cycles(4, &["(1 2)"]).unwrap();
        assert_eq!(g.orbit(2).unwrap(), vec![2]);
        let s3 = PermutationGroup::from_cycles(5, &["(1 2)", "(1 2 3)"]).unwrap();
        assert_eq!(s3.orbit(3).unwrap(), vec![3]);
        assert!(matches!(a4.orbit(4), Err(Error::PointOutOfRange { .. })));
    }

    #[test]
    fn contains_examples() {
        let a4 = PermutationGroup::alternating(4);
        assert!(!a4.contains(&p("(1 2)", 4)).unwrap());
        assert!(a4.contains(&p("(1 2)(3 4)", 4)).unwrap());
        assert!(a4.contains(&Permutation::identity(4)).unwrap());
        assert!(matches!(
            a4.contains(&Permutation::identity(5)),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn transporter_examples() {
        let c4 = PermutationGroup::cyclic(4);
        assert_eq!(c4.transporter(&[0, 1], &[1, 2]).unwrap(), Some(p("(1 2 3 4)", 4)));
        let a4 = PermutationGroup::alternating(4);
        let g = a4.transporter(&[0, 1], &[1, 0]).unwrap().unwrap();
        assert_eq!((g.apply(0), g.apply(1)), (1, 0));
        assert!(a4.contains(&g).unwrap());
        let c3 = PermutationGroup::cyclic(3);
        assert_eq!(c3.transporter(&[0, 1], &[0, 2]).unwrap(), None);
        assert_eq!(c3.transporter(&[0, 0], &[1, 2]).unwrap(), None);
        assert!(matches!(c3.transporter(&[0], &[0, 1]), Err(Error::LengthMismatch(1, 2))));
    }

    #[test]
    fn stabilizers() {
        let s4 = PermutationGroup::symmetric(4);
        assert_eq!(s4.pointwise_stabilizer(&[0]).unwrap().order(), BigUint::from(6u32));
        assert!(s4.pointwise_stabilizer(&[0, 1, 2]).unwrap().order_is_one());
        assert_eq!(d8().pointwise_stabilizer(&[0]).unwrap().order(), BigUint::from(2u32));
        assert_eq!(s4.setwise_stabilizer(&[0, 1]).unwrap().order(), BigUint::from(4u32));
        let a4 = PermutationGroup::alternating(4);
        assert_eq!(a4.setwise_stabilizer(&[0, 1]).unwrap().order(), BigUint::from(2u32));
        assert_eq!(a4.setwise_stabilizer(&[0, 1, 2, 3]).unwrap().order(), BigUint::from(12u32));
    }

    #[test]
    fn induced_actions() {
        let s4 = PermutationGroup::symmetric(4);
        let (img, ker) = s4.induced_action(&[0, 1, 2]).unwrap();
        assert_eq!((img.degree(), img.order(), ker), (3, BigUint::from(6u32), BigUint::one()));
        let s2s3 = PermutationGroup::from_cycles(5, &["(1 2)", "(3 4)", "(3 4 5)"]).unwrap();
        let (img, ker) = s2s3.induced_action(&[0, 1]).unwrap();
        assert_eq!((img.degree(), img.order(), ker), (2, BigUint::from(2u32), BigUint::from(6u32)));
        let a4 = PermutationGroup::alternating(4);
        let (img, ker) = a4.induced_action(&[0, 1, 2, 3]).unwrap();
        assert_eq!((img.order(), ker), (BigUint::from(12u32), BigUint::one()));
    }

    #[test]
    fn primitivity() {
        assert!(PermutationGroup::symmetric(4).is_primitive().unwrap());
        assert_eq!(d8().block_system().unwrap(), Some(vec![vec![0, 2], vec![1, 3]]));
        assert!(!PermutationGroup::cyclic(6).is_primitive().unwrap());
        assert!(PermutationGroup::cyclic(7).is_primitive().unwrap());
        let intrans = PermutationGroup::from_cycles(4, &["(1 2)"]).unwrap();
        assert_eq!(intrans.is_primitive(), Err(Error::NotTransitive));
    }

    #[test]
    fn conjugators() {
        let s3 = PermutationGroup::symmetric(3);
        let (g, h) = (p("(1 2)", 3), p("(1 3)", 3));
        let x = s3.element_conjugator(&g, &h).unwrap().unwrap();
        assert_eq!(g.conjugate_by(&x), h);
        let a4 = PermutationGroup::alternating(4);
        assert_eq!(a4.element_conjugator(&p("(1 2 3)", 4), &p("(1 3 2)", 4)).unwrap(), None);
        let g = p("(1 2)(3 4)", 4);
        assert!(a4.element_conjugator(&g, &g).unwrap().unwrap().is_identity());
        assert_eq!(
            a4.element_conjugator(&p("(1 2)", 4), &g),
            Err(Error::NotInGroup)
        );
    }
}
