//! Deterministic Schreier–Sims stabilizer chains.

use std::ops::ControlFlow;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;

/// One level of a stabilizer chain: a base point, the strong generators
/// fixing all earlier base points, and a transversal for the base point's
/// orbit under those generators.
#[derive(Clone, Debug)]
pub struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    slot: Vec<u32>,
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
}

impl Level {
    fn new(degree: usize, base_point: usize, generators: Vec<Permutation>) -> Self {
        let mut lvl = Level {
            base_point,
            generators,
            orbit: Vec::new(),
            slot: vec![NOT_IN_ORBIT; degree],
            reps: Vec::new(),
            reps_inv: Vec::new(),
        };
        lvl.rebuild_orbit(degree);
        lvl
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.slot.iter_mut().for_each(|s| *s = NOT_IN_ORBIT);
        self.orbit.clear();
        self.reps.clear();
        self.reps_inv.clear();
        self.slot[self.base_point] = 0;
        self.orbit.push(self.base_point);
        self.reps.push(Permutation::identity(degree));
        self.reps_inv.push(Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            for s in &self.generators {
                let y = s.apply(x);
                if self.slot[y] == NOT_IN_ORBIT {
                    let rep = self.reps[head].then(s);
                    self.slot[y] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Orbit of the base point, in breadth-first discovery order.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    pub fn in_orbit(&self, p: usize) -> bool {
        self.slot[p] != NOT_IN_ORBIT
    }

    /// Coset representative mapping the base point to `p`.
    pub fn rep(&self, p: usize) -> Option<&Permutation> {
        match self.slot[p] {
            NOT_IN_ORBIT => None,
            i => Some(&self.reps[i as usize]),
        }
    }

    pub fn rep_inv(&self, p: usize) -> Option<&Permutation> {
        match self.slot[p] {
            NOT_IN_ORBIT => None,
            i => Some(&self.reps_inv[i as usize]),
        }
    }
}

/// A base and strong generating set with transversals.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Runs Schreier–Sims on `generators`.
    ///
    /// The base starts with `base_prefix` (duplicates dropped, redundant
    /// points kept as trivial levels). When `known_order` is given the
    /// construction stops as soon as the transversal sizes reach it.
    pub fn build(
        degree: usize,
        generators: &[Permutation],
        base_prefix: &[usize],
        known_order: Option<&BigUint>,
    ) -> Self {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let mut base: Vec<usize> = Vec::new();
        for &p in base_prefix {
            if !base.contains(&p) {
                base.push(p);
            }
        }
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                let moved = (0..degree).find(|&p| g.apply(p) != p).expect("non-identity");
                base.push(moved);
            }
        }
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::with_capacity(base.len()),
        };
        for (i, &b) in base.iter().enumerate() {
            let lvl_gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(degree, b, lvl_gens));
        }
        if let Some(target) = known_order {
            if &chain.order() == target {
                return chain;
            }
        }
        chain.complete(known_order);
        chain
    }

    fn complete(&mut self, known_order: Option<&BigUint>) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match self.find_nonsifting_schreier(lvl) {
                None => i -= 1,
                Some((residue, stop)) => {
                    let stop = if stop == self.levels.len() {
                        let moved = (0..self.degree)
                            .find(|&p| residue.apply(p) != p)
                            .expect("non-identity residue");
                        self.levels
                            .push(Level::new(self.degree, moved, Vec::new()));
                        stop
                    } else {
                        stop
                    };
                    for l in lvl + 1..=stop {
                        self.levels[l].generators.push(residue.clone());
                        self.levels[l].rebuild_orbit(self.degree);
                    }
                    if let Some(target) = known_order {
                        if &self.order() == target {
                            return;
                        }
                    }
                    i = stop + 1;
                }
            }
        }
    }

    /// First Schreier generator at `lvl` that does not sift to the identity
    /// through the levels below, with its residue and the level it stopped at.
    fn find_nonsifting_schreier(&self, lvl: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[lvl];
        for (pos, &x) in level.orbit.iter().enumerate() {
            for s in &level.generators {
                let y = s.apply(x);
                let h = level.reps[pos]
                    .then(s)
                    .then(level.rep_inv(y).expect("orbit closed"));
                if h.is_identity() {
                    continue;
                }
                let (residue, stop) = self.sift_from(h, lvl + 1);
                if stop < self.levels.len() || !residue.is_identity() {
                    return Some((residue, stop));
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `start..`; returns the residue and the index
    /// of the level where sifting stopped (`len()` when it went through).
    pub fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let x = g.apply(level.base_point);
            match level.rep_inv(x) {
                None => return (g, i),
                Some(inv) => g = g.then(inv),
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, stop) = self.sift_from(g.clone(), 0);
        stop == self.levels.len() && residue.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order of the stabilizer of the first `depth` base points.
    pub fn stabilizer_order(&self, depth: usize) -> BigUint {
        self.levels[depth.min(self.levels.len())..]
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// All strong generators, deduplicated, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Base point and generators of every level; `from_levels` rebuilds an
    /// identical chain from them.
    pub fn level_data(&self) -> Vec<(usize, Vec<Permutation>)> {
        self.levels.iter().map(|l| (l.base_point, l.generators.clone())).collect()
    }

    /// Rebuilds a chain from `level_data`, rejecting input that is not a
    /// complete stabilizer chain.
    pub fn from_levels(degree: usize, data: Vec<(usize, Vec<Permutation>)>) -> Result<Self> {
        let mut levels: Vec<Level> = Vec::with_capacity(data.len());
        for (b, gens) in data {
            if b >= degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
            for g in &gens {
                if g.degree() != degree {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: g.degree(),
                    });
                }
                if levels.iter().any(|l| g.apply(l.base_point) != l.base_point) {
                    return Err(Error::ConditionFailed("level generator moves an earlier base point".into()));
                }
            }
            levels.push(Level::new(degree, b, gens));
        }
        let chain = StabilizerChain { degree, levels };
        if (0..chain.levels.len()).any(|i| chain.find_nonsifting_schreier(i).is_some()) {
            return Err(Error::ConditionFailed("chain is not complete".into()));
        }
        Ok(chain)
    }

    /// Generators of the stabilizer of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        match self.levels.get(depth) {
            Some(l) => l.generators.clone(),
            None => Vec::new(),
        }
    }

    /// Chain of the stabilizer of the first `depth` base points.
    pub fn tail(&self, depth: usize) -> StabilizerChain {
        StabilizerChain {
            degree: self.degree,
            levels: self.levels[depth.min(self.levels.len())..].to_vec(),
        }
    }

    /// Visits every group element once.
    pub fn for_each_element<F>(&self, mut f: F) -> ControlFlow<()>
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        let id = Permutation::identity(self.degree);
        self.walk(self.levels.len(), &id, &mut f)
    }

    // Elements are products rep_{k-1} * ... * rep_0; build them from the deepest level.
    fn walk<F>(&self, depth: usize, acc: &Permutation, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&Permutation) -> ControlFlow<()>,
    {
        if depth == 0 {
            return f(acc);
        }
        let level = &self.levels[depth - 1];
        for rep in &level.reps {
            let next = acc.then(rep);
            self.walk(depth - 1, &next, f)?;
        }
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn level_data_round_trip() {
        let c = StabilizerChain::build(5, &[p("(1 2 3)", 5), p("(3 4 5)", 5)], &[], None);
        let back = StabilizerChain::from_levels(5, c.level_data()).unwrap();
        assert_eq!(back.base(), c.base());
        assert_eq!(back.order(), c.order());
        for (a, b) in back.levels().iter().zip(c.levels()) {
            assert_eq!(a.orbit(), b.orbit());
        }
        // dropping the deepest level leaves Schreier generators that do not sift
        let mut partial = c.level_data();
        partial.pop();
        assert!(StabilizerChain::from_levels(5, partial).is_err());
    }

    #[test]
    fn sym4_order() {
        let c = StabilizerChain::build(4, &[p("(1 2)", 4), p("(1 2 3 4)", 4)], &[], None);
        assert_eq!(c.order(), BigUint::from(24u32));
    }

    #[test]
    fn alt5_order() {
        let c = StabilizerChain::build(5, &[p("(1 2 3)", 5), p("(3 4 5)", 5)], &[], None);
        assert_eq!(c.order(), BigUint::from(60u32));
    }

    #[test]
    fn cyclic7_single_level() {
        let c = StabilizerChain::build(7, &[p("(1 2 3 4 5 6 7)", 7)], &[], None);
        assert_eq!(c.order(), BigUint::from(7u32));
        assert_eq!(c.levels().len(), 1);
    }

    #[test]
    fn base_prefix_is_respected_with_redundant_points() {
        let gens = [p("(1 2 3)", 4)];
        let c = StabilizerChain::build(4, &gens, &[3, 0], None);
        assert_eq!(&c.base()[..2], &[3, 0]);
        assert_eq!(c.levels()[0].orbit_len(), 1);
        assert_eq!(c.order(), BigUint::from(3u32));
    }

    #[test]
    fn element_walk_counts_order() {
        let c = StabilizerChain::build(5, &[p("(1 2)", 5), p("(1 2 3 4 5)", 5)], &[], None);
        let mut count = 0;
        let _ = c.for_each_element(|g| {
            assert!(c.contains(g));
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 120);
    }

    #[test]
    fn known_order_rebase_matches() {
        let gens = [p("(1 2)", 6), p("(1 2 3 4 5 6)", 6)];
        let full = StabilizerChain::build(6, &gens, &[], None);
        let order = full.order();
        let rebased = StabilizerChain::build(6, &full.strong_generators(), &[5, 4], Some(&order));
        assert_eq!(rebased.order(), order);
        assert_eq!(&rebased.base()[..2], &[5, 4]);
        assert!(rebased.contains(&p("(1 6)", 6)));
    }
}
