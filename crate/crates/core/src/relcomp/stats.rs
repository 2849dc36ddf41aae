//! Base and height statistics.

use std::collections::{HashMap, HashSet};

use num_traits::One;
use serde::Serialize;
use serde_json::Value;

use super::{relational_complexity_with, Caps, StabCache};
use crate::error::Result;
use crate::group::PermutationGroup;

fn sorted(set: &[usize]) -> Vec<usize> {
    let mut k = set.to_vec();
    k.sort_unstable();
    k
}

/// Whether removing any single point enlarges the pointwise stabilizer.
fn is_independent(cache: &mut StabCache, set: &[usize]) -> bool {
    let full = cache.get(set).order.clone();
    (0..set.len()).all(|j| {
        let rest: Vec<usize> = set.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &p)| p).collect();
        cache.get(&rest).order > full
    })
}

/// Walks independent sets up to conjugacy, largest first by bound.
struct IndependentWalk<'a> {
    cache: &'a mut StabCache,
    visited: HashSet<Vec<usize>>,
    require_base: bool,
    best: Vec<usize>,
    found: bool,
}

impl IndependentWalk<'_> {
    fn explore(&mut self, set: &mut Vec<usize>) {
        if !self.visited.insert(sorted(set)) {
            return;
        }
        let stab = self.cache.get(set);
        let trivial = stab.order.is_one();
        if (!self.require_base || trivial) && (!self.found || set.len() > self.best.len()) {
            self.best = set.clone();
            self.found = true;
        }
        if self.found && set.len() as u64 + stab.log2 <= self.best.len() as u64 {
            return;
        }
        for &p in &stab.moved_reps {
            set.push(p);
            if is_independent(self.cache, set) {
                self.explore(set);
            }
            set.pop();
        }
    }
}

/// Largest independent set: no point of it is fixed by the pointwise
/// stabilizer of the others.
pub fn height(g: &PermutationGroup) -> Result<(usize, Vec<usize>)> {
    Caps::default().check(g)?;
    let mut cache = StabCache::new(g);
    let mut walk = IndependentWalk {
        cache: &mut cache,
        visited: HashSet::new(),
        require_base: false,
        best: Vec::new(),
        found: false,
    };
    walk.explore(&mut Vec::new());
    let best = walk.best;
    Ok((best.len(), best))
}

/// Largest base with no redundant point (a minimal base).
pub fn max_minimal_base(g: &PermutationGroup) -> Result<(usize, Vec<usize>)> {
    Caps::default().check(g)?;
    let mut cache = StabCache::new(g);
    let mut walk = IndependentWalk {
        cache: &mut cache,
        visited: HashSet::new(),
        require_base: true,
        best: Vec::new(),
        found: false,
    };
    walk.explore(&mut Vec::new());
    let best = walk.best;
    Ok((best.len(), best))
}

/// Longest irredundant base: each point strictly shrinks the stabilizer
/// of the points before it.
pub fn max_irredundant_base(g: &PermutationGroup) -> Result<(usize, Vec<usize>)> {
    Caps::default().check(g)?;
    let mut cache = StabCache::new(g);
    let mut memo: HashMap<Vec<usize>, (usize, Option<usize>)> = HashMap::new();
    fn longest(
        cache: &mut StabCache,
        memo: &mut HashMap<Vec<usize>, (usize, Option<usize>)>,
        set: &mut Vec<usize>,
    ) -> usize {
        let key = sorted(set);
        if let Some(&(v, _)) = memo.get(&key) {
            return v;
        }
        let stab = cache.get(set);
        let mut best = (0, None);
        for &p in &stab.moved_reps {
            if best.0 as u64 >= stab.log2 {
                break;
            }
            set.push(p);
            let v = 1 + longest(cache, memo, set);
            set.pop();
            if v > best.0 {
                best = (v, Some(p));
            }
        }
        memo.insert(key, best);
        best.0
    }
    let mut set = Vec::new();
    let len = longest(&mut cache, &mut memo, &mut set);
    while let Some(&(_, Some(p))) = memo.get(&sorted(&set)) {
        set.push(p);
    }
    Ok((len, set))
}

/// Smallest base, by iterative deepening.
pub fn min_base(g: &PermutationGroup) -> Result<(usize, Vec<usize>)> {
    Caps::default().check(g)?;
    let mut cache = StabCache::new(g);
    fn reach(
        cache: &mut StabCache,
        failed: &mut HashSet<Vec<usize>>,
        set: &mut Vec<usize>,
        left: usize,
    ) -> bool {
        let stab = cache.get(set);
        if stab.order.is_one() {
            return true;
        }
        if left == 0 || failed.contains(&sorted(set)) {
            return false;
        }
        let widest = stab.orbit_sizes.iter().copied().max().unwrap_or(1);
        if num_bigint::BigUint::from(widest).pow(left as u32) < stab.order {
            failed.insert(sorted(set));
            return false;
        }
        let mut reps = stab.moved_reps.clone();
        reps.sort_by_key(|&p| std::cmp::Reverse(stab.orbit_sizes[stab.orbit_id[p] as usize]));
        for p in reps {
            set.push(p);
            if reach(cache, failed, set, left - 1) {
                return true;
            }
            set.pop();
        }
        failed.insert(sorted(set));
        false
    }
    for d in 0..=g.degree() {
        let mut failed = HashSet::new();
        let mut set = Vec::new();
        if reach(&mut cache, &mut failed, &mut set, d) {
            return Ok((d, set));
        }
    }
    unreachable!("the whole point set is a base")
}

/// All statistics of a group in one record.
#[derive(Clone, Debug, Serialize)]
pub struct StatisticsReport {
    pub order: String,
    pub degree: usize,
    pub transitive: bool,
    pub primitive: Option<bool>,
    pub rc: usize,
    pub rc_witness: Option<Value>,
    pub b: usize,
    pub b_witness: Vec<usize>,
    #[serde(rename = "B")]
    pub big_b: usize,
    #[serde(rename = "B_witness")]
    pub big_b_witness: Vec<usize>,
    #[serde(rename = "H")]
    pub h: usize,
    #[serde(rename = "H_witness")]
    pub h_witness: Vec<usize>,
    #[serde(rename = "I")]
    pub i_stat: usize,
    #[serde(rename = "I_witness")]
    pub i_witness: Vec<usize>,
}

pub fn statistics(g: &PermutationGroup, caps: &Caps) -> Result<StatisticsReport> {
    caps.check(g)?;
    let transitive = g.is_transitive();
    let primitive = if transitive { Some(g.is_primitive()?) } else { None };
    let rc = relational_complexity_with(g, caps)?;
    let (b, b_witness) = min_base(g)?;
    let (big_b, big_b_witness) = max_minimal_base(g)?;
    let (h, h_witness) = height(g)?;
    let (i_stat, i_witness) = max_irredundant_base(g)?;
    Ok(StatisticsReport {
        order: g.order().to_string(),
        degree: g.degree(),
        transitive,
        primitive,
        rc: rc.rc,
        rc_witness: rc.witness.map(|w| w.to_json()),
        b,
        b_witness: b_witness.iter().map(|p| p + 1).collect(),
        big_b,
        big_b_witness: big_b_witness.iter().map(|p| p + 1).collect(),
        h,
        h_witness: h_witness.iter().map(|p| p + 1).collect(),
        i_stat,
        i_witness: i_witness.iter().map(|p| p + 1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> PermutationGroup {
        PermutationGroup::from_cycles(4, &["(1 2 3 4)", "(2 4)"]).unwrap()
    }

    #[test]
    fn symmetric_four() {
        let g = PermutationGroup::symmetric(4);
        assert_eq!(min_base(&g).unwrap().0, 3);
        assert_eq!(max_minimal_base(&g).unwrap().0, 3);
        assert_eq!(height(&g).unwrap().0, 3);
        assert_eq!(max_irredundant_base(&g).unwrap().0, 3);
    }

    #[test]
    fn dihedral_square() {
        assert_eq!(min_base(&d8()).unwrap().0, 2);
        assert_eq!(max_irredundant_base(&d8()).unwrap().0, 2);
    }

    #[test]
    fn regular_groups_have_unit_statistics() {
        let g = PermutationGroup::cyclic(6);
        let r = statistics(&g, &Caps::default()).unwrap();
        assert_eq!((r.b, r.big_b, r.h, r.i_stat), (1, 1, 1, 1));
        assert_eq!(height(&PermutationGroup::cyclic(7)).unwrap().0, 1);
    }

    #[test]
    fn product_action_height() {
        // Sym(2) wr Sym(2) on {0,1}^2 in mixed-radix order.
        let g = PermutationGroup::from_cycles(4, &["(1 2)(3 4)", "(2 3)"]).unwrap();
        assert_eq!(g.order(), num_bigint::BigUint::from(8u32));
        assert_eq!(height(&g).unwrap().0, 2);
    }

    #[test]
    fn witnesses_are_bases() {
        let g = PermutationGroup::alternating(5);
        let (b, w) = min_base(&g).unwrap();
        assert_eq!(b, w.len());
        assert!(g.pointwise_stabilizer(&w).unwrap().order().is_one());
        let (i, w) = max_irredundant_base(&g).unwrap();
        assert_eq!(i, w.len());
        assert!(g.pointwise_stabilizer(&w).unwrap().order().is_one());
    }
}
