//! Pointwise stabilizers of point sets, memoized by sorted set.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;

use crate::group::PermutationGroup;

/// A pointwise stabilizer with its orbit partition.
pub(crate) struct Stab {
    pub group: PermutationGroup,
    pub order: BigUint,
    /// floor(log2 |G_(S)|)
    pub log2: u64,
    /// Orbit index of each point.
    pub orbit_id: Vec<u32>,
    /// Size of each orbit, indexed by orbit id.
    pub orbit_sizes: Vec<usize>,
    /// Least point of each orbit of size at least 2.
    pub moved_reps: Vec<usize>,
}

impl Stab {
    fn new(group: PermutationGroup) -> Self {
        let order = group.order();
        let log2 = order.bits().saturating_sub(1);
        let n = group.degree();
        let mut orbit_id = vec![u32::MAX; n];
        let mut moved_reps = Vec::new();
        let mut orbit_sizes = Vec::new();
        let mut next = 0u32;
        for start in 0..n {
            if orbit_id[start] != u32::MAX {
                continue;
            }
            orbit_id[start] = next;
            let mut stack = vec![start];
            let mut size = 1;
            while let Some(x) = stack.pop() {
                for g in group.generators() {
                    let y = g.apply(x);
                    if orbit_id[y] == u32::MAX {
                        orbit_id[y] = next;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            if size > 1 {
                moved_reps.push(start);
            }
            orbit_sizes.push(size);
            next += 1;
        }
        Stab {
            group,
            order,
            log2,
            orbit_id,
            orbit_sizes,
            moved_reps,
        }
    }

    pub fn same_orbit(&self, a: usize, b: usize) -> bool {
        self.orbit_id[a] == self.orbit_id[b]
    }
}

pub(crate) struct StabCache {
    map: HashMap<Vec<u32>, Rc<Stab>>,
}

impl StabCache {
    pub fn new(group: &PermutationGroup) -> Self {
        let mut map = HashMap::new();
        map.insert(Vec::new(), Rc::new(Stab::new(group.clone())));
        StabCache { map }
    }

    /// Stabilizer of the points of `set`, given in any order.
    pub fn get(&mut self, set: &[usize]) -> Rc<Stab> {
        let mut key: Vec<u32> = set.iter().map(|&p| p as u32).collect();
        key.sort_unstable();
        key.dedup();
        self.get_sorted(&key)
    }

    fn get_sorted(&mut self, key: &[u32]) -> Rc<Stab> {
        if let Some(s) = self.map.get(key) {
            return Rc::clone(s);
        }
        let (last, rest) = key.split_last().expect("empty key is preloaded");
        let parent = self.get_sorted(rest);
        let stab = if parent.orbit_sizes[parent.orbit_id[*last as usize] as usize] == 1 {
            Rc::clone(&parent)
        } else {
            let group = parent
                .group
                .pointwise_stabilizer(&[*last as usize])
                .expect("point in range");
            Rc::new(Stab::new(group))
        };
        self.map.insert(key.to_vec(), Rc::clone(&stab));
        stab
    }
}
