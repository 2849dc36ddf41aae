//! Brute-force relational complexity, independent of stabilizer chains.
//!
//! Orbits on tuples are found by closing every tuple under the generators;
//! every pair of distinct-entry tuples (first tuple an orbit representative)
//! is then scored by the largest `k` for which it is `k`-subtuple complete.

use std::collections::HashMap;

use crate::group::PermutationGroup;

/// Orbit labels of all distinct-entry tuples of one length.
struct TupleOrbits {
    index: HashMap<Vec<u8>, usize>,
    tuples: Vec<Vec<u8>>,
    orbit: Vec<u32>,
}

fn distinct_tuples(n: usize, len: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, len: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for p in 0..n {
            if !used[p] {
                used[p] = true;
                cur.push(p as u8);
                rec(n, len, cur, used, out);
                cur.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, len, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl TupleOrbits {
    fn new(g: &PermutationGroup, len: usize) -> Self {
        let tuples = distinct_tuples(g.degree(), len);
        let index: HashMap<Vec<u8>, usize> = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut orbit = vec![u32::MAX; tuples.len()];
        let mut next = 0;
        for start in 0..tuples.len() {
            if orbit[start] != u32::MAX {
                continue;
            }
            orbit[start] = next;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for s in g.generators() {
                    let img: Vec<u8> = tuples[t].iter().map(|&p| s.apply(p as usize) as u8).collect();
                    let u = index[&img];
                    if orbit[u] == u32::MAX {
                        orbit[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        TupleOrbits { index, tuples, orbit }
    }

    fn id(&self, t: &[u8]) -> u32 {
        self.orbit[self.index[t]]
    }
}

/// A pair of tuples and the completeness level they reach.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveWitness {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub level: usize,
}

/// Relational complexity by exhaustive comparison of tuple pairs of every
/// length up to `max_len` (the degree when `None`).
pub fn naive_relational_complexity(g: &PermutationGroup, max_len: Option<usize>) -> (usize, Option<NaiveWitness>) {
    let n = g.degree();
    assert!(n <= 255, "naive oracle works on at most 255 points");
    let max_len = max_len.unwrap_or(n).min(n);
    let orbits: Vec<TupleOrbits> = (0..=max_len).map(|l| TupleOrbits::new(g, l)).collect();
    let mut best = 2;
    let mut witness = None;
    for len in 2..=max_len {
        let level_orbits = &orbits[len];
        let mut seen_orbit = vec![false; level_orbits.tuples.len()];
        for (a, i) in level_orbits.tuples.iter().enumerate() {
            let oi = level_orbits.orbit[a] as usize;
            if std::mem::replace(&mut seen_orbit[oi], true) {
                continue;
            }
            for (b, j) in level_orbits.tuples.iter().enumerate() {
                if level_orbits.orbit[b] as usize == oi {
                    continue;
                }
                // Only levels of at least `best` can raise the answer.
                if !complete_at(&orbits, i, j, best) {
                    continue;
                }
                let mut level = best;
                while level + 1 < len && complete_at(&orbits, i, j, level + 1) {
                    level += 1;
                }
                if level + 1 > best {
                    best = level + 1;
                    witness = Some(NaiveWitness {
                        i: i.iter().map(|&p| p as usize).collect(),
                        j: j.iter().map(|&p| p as usize).collect(),
                        level,
                    });
                }
            }
        }
    }
    (best, witness)
}

fn complete_at(orbits: &[TupleOrbits], i: &[u8], j: &[u8], k: usize) -> bool {
    if k >= i.len() {
        return false;
    }
    let table = &orbits[k];
    let mut idx: Vec<usize> = (0..k).collect();
    let mut si = vec![0u8; k];
    let mut sj = vec![0u8; k];
    loop {
        for (t, &x) in idx.iter().enumerate() {
            si[t] = i[x];
            sj[t] = j[x];
        }
        if table.id(&si) != table.id(&sj) {
            return false;
        }
        // next k-subset in lexicographic order
        let mut t = k;
        while t > 0 && idx[t - 1] == t - 1 + i.len() - k {
            t -= 1;
        }
        if t == 0 {
            return true;
        }
        idx[t - 1] += 1;
        for u in t..k {
            idx[u] = idx[u - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_naturals() {
        assert_eq!(naive_relational_complexity(&PermutationGroup::symmetric(4), None).0, 2);
        assert_eq!(naive_relational_complexity(&PermutationGroup::alternating(4), None).0, 3);
        assert_eq!(naive_relational_complexity(&PermutationGroup::alternating(5), None).0, 4);
        assert_eq!(naive_relational_complexity(&PermutationGroup::cyclic(5), None).0, 2);
    }

    #[test]
    fn witness_is_incomplete_at_next_level() {
        let (rc, w) = naive_relational_complexity(&PermutationGroup::alternating(5), None);
        let w = w.unwrap();
        assert_eq!(w.level + 1, rc);
        assert_ne!(w.i, w.j);
    }
}
