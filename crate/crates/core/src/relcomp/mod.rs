//! Relational complexity and subtuple completeness.
//!
//! A witness for `RC > k` is a pair `(γ, x)`, `(γ, y)` of `(k+1)`-tuples that
//! is `k`-subtuple complete but not in one orbit. Normalizing `J` to agree
//! with `I` on its first `k` entries, this says `y ∉ x^{G_(γ)}` while
//! `y ∈ x^{G_(γ∖γ_j)}` for every `j`. Such a `γ` is an independent set, so
//! the search walks independent sets up to conjugacy and stops at the
//! height of the group.

mod cache;
pub mod stats;

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;

pub(crate) use cache::StabCache;
pub use stats::{height, max_irredundant_base, max_minimal_base, min_base, statistics, StatisticsReport};

/// Size limits for exact searches.
#[derive(Clone, Debug)]
pub struct Caps {
    pub max_degree: usize,
    pub max_order: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_degree: 120,
            max_order: 10_000_000,
        }
    }
}

impl Caps {
    pub fn unlimited() -> Self {
        Caps {
            max_degree: usize::MAX,
            max_order: u128::MAX,
        }
    }

    pub fn check(&self, g: &PermutationGroup) -> Result<()> {
        if g.degree() > self.max_degree {
            return Err(Error::DegreeTooLarge {
                degree: g.degree(),
                cap: self.max_degree,
            });
        }
        if g.order() > BigUint::from(self.max_order) {
            return Err(Error::GroupTooLarge { cap: self.max_order });
        }
        Ok(())
    }
}

/// Two tuples with transporters proving `k`-subtuple completeness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuplePair {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    /// Completeness level the certificates establish.
    pub k: usize,
    /// Index subset (ascending, 0-based) to an element mapping `I|S` onto `J|S`.
    pub certs: BTreeMap<Vec<usize>, Permutation>,
    pub equivalent: bool,
}

impl TuplePair {
    /// Checks every certificate and that the recorded subsets cover all
    /// `k`-subsets of indices.
    pub fn certificates_hold(&self, g: &PermutationGroup) -> Result<bool> {
        if self.i.len() != self.j.len() {
            return Err(Error::LengthMismatch(self.i.len(), self.j.len()));
        }
        let needed = subsets(self.i.len(), self.k);
        for s in &needed {
            let Some(x) = self.certs.get(s) else {
                return Ok(false);
            };
            if !g.contains(x)? || s.iter().any(|&t| x.apply(self.i[t]) != self.j[t]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-derives the claims with group primitives only: `k`-subtuple
    /// completeness holds and the full tuples are (not) in one orbit.
    pub fn revalidate(&self, g: &PermutationGroup) -> Result<bool> {
        Ok(self.certificates_hold(g)?
            && subtuple_complete(g, &self.i, &self.j, self.k)?.complete
            && orbit_equivalent(g, &self.i, &self.j)? == self.equivalent)
    }

    /// JSON form with 1-based points and positions.
    pub fn to_json(&self) -> Value {
        let mut certs = Map::new();
        for (s, x) in &self.certs {
            let key = format!(
                "[{}]",
                s.iter().map(|t| (t + 1).to_string()).collect::<Vec<_>>().join(",")
            );
            certs.insert(key, Value::String(x.to_string()));
        }
        json!({
            "I": self.i.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "J": self.j.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "k": self.k,
            "certs": certs,
            "equivalent": self.equivalent,
        })
    }

    pub fn from_json(v: &Value, degree: usize) -> Result<Self> {
        let tuple = |key: &str| -> Result<Vec<usize>> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("missing {key}")))?;
            arr.iter()
                .map(|x| {
                    x.as_u64()
                        .filter(|&p| p >= 1 && (p as usize) <= degree)
                        .map(|p| p as usize - 1)
                        .ok_or_else(|| Error::Parse(format!("bad point in {key}")))
                })
                .collect()
        };
        let i = tuple("I")?;
        let j = tuple("J")?;
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing k".into()))? as usize;
        let equivalent = v.get("equivalent").and_then(Value::as_bool).unwrap_or(false);
        let mut certs = BTreeMap::new();
        if let Some(obj) = v.get("certs").and_then(Value::as_object) {
            for (key, val) in obj {
                let inner = key
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("bad cert key {key}")))?;
                let idx = inner
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .ok()
                            .filter(|&t| t >= 1)
                            .map(|t| t - 1)
                            .ok_or_else(|| Error::Parse(format!("bad cert key {key}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let text = val
                    .as_str()
                    .ok_or_else(|| Error::Parse("certificate must be a string".into()))?;
                certs.insert(idx, Permutation::parse(text, degree)?);
            }
        }
        Ok(TuplePair {
            i,
            j,
            k,
            certs,
            equivalent,
        })
    }
}

/// Result of a subtuple-completeness check.
#[derive(Clone, Debug)]
pub struct Completeness {
    pub complete: bool,
    pub certificates: BTreeMap<Vec<usize>, Permutation>,
    /// First index subset without a transporter.
    pub failing: Option<Vec<usize>>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for t in start..n {
            if n - t < k - cur.len() {
                break;
            }
            cur.push(t);
            rec(t + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Whether every `k`-subtuple of `I` maps to the matching subtuple of `J`.
pub fn subtuple_complete(g: &PermutationGroup, i: &[usize], j: &[usize], k: usize) -> Result<Completeness> {
    if i.len() != j.len() {
        return Err(Error::LengthMismatch(i.len(), j.len()));
    }
    if k == 0 || k > i.len() {
        return Err(Error::BadParameter(format!("k = {k} for tuples of length {}", i.len())));
    }
    let mut memo: HashMap<(Vec<usize>, Vec<usize>), Option<Permutation>> = HashMap::new();
    let mut certificates = BTreeMap::new();
    for s in subsets(i.len(), k) {
        let a: Vec<usize> = s.iter().map(|&t| i[t]).collect();
        let b: Vec<usize> = s.iter().map(|&t| j[t]).collect();
        let found = match memo.get(&(a.clone(), b.clone())) {
            Some(r) => r.clone(),
            None => {
                let r = g.transporter(&a, &b)?;
                memo.insert((a, b), r.clone());
                r
            }
        };
        match found {
            Some(x) => {
                certificates.insert(s, x);
            }
            None => {
                return Ok(Completeness {
                    complete: false,
                    certificates,
                    failing: Some(s),
                })
            }
        }
    }
    Ok(Completeness {
        complete: true,
        certificates,
        failing: None,
    })
}

/// Whether some element maps `I` onto `J`.
pub fn orbit_equivalent(g: &PermutationGroup, i: &[usize], j: &[usize]) -> Result<bool> {
    Ok(g.transporter(i, j)?.is_some())
}

/// Packages `I`, `J` as a certified pair when they are `k`-subtuple complete.
pub fn certify_pair(g: &PermutationGroup, i: &[usize], j: &[usize], k: usize) -> Result<Option<TuplePair>> {
    let c = subtuple_complete(g, i, j, k)?;
    if !c.complete {
        return Ok(None);
    }
    Ok(Some(TuplePair {
        i: i.to_vec(),
        j: j.to_vec(),
        k,
        certs: c.certificates,
        equivalent: orbit_equivalent(g, i, j)?,
    }))
}

/// Relational complexity with a witness of maximal length.
#[derive(Clone, Debug)]
pub struct RcResult {
    pub rc: usize,
    pub witness: Option<TuplePair>,
}

pub fn relational_complexity(g: &PermutationGroup) -> Result<RcResult> {
    relational_complexity_with(g, &Caps::default())
}

pub fn is_binary(g: &PermutationGroup) -> Result<bool> {
    Ok(relational_complexity(g)?.rc == 2)
}

pub fn relational_complexity_with(g: &PermutationGroup, caps: &Caps) -> Result<RcResult> {
    caps.check(g)?;
    let mut search = WitnessSearch {
        n: g.degree(),
        cache: StabCache::new(g),
        visited: HashSet::new(),
        best: 2,
        found: None,
    };
    let mut gamma = Vec::new();
    search.explore(&mut gamma);
    let witness = match search.found.take() {
        Some((gamma, x, y)) => Some(build_witness(&mut search.cache, &gamma, x, y)),
        None => None,
    };
    Ok(RcResult {
        rc: search.best,
        witness,
    })
}

struct WitnessSearch {
    n: usize,
    cache: StabCache,
    visited: HashSet<Vec<usize>>,
    best: usize,
    found: Option<(Vec<usize>, usize, usize)>,
}

impl WitnessSearch {
    fn explore(&mut self, gamma: &mut Vec<usize>) {
        let mut key = gamma.clone();
        key.sort_unstable();
        if !self.visited.insert(key) {
            return;
        }
        let stab = self.cache.get(gamma);
        if gamma.len() + 1 > self.best {
            if let Some((x, y)) = self.witness_at(gamma) {
                self.best = gamma.len() + 1;
                self.found = Some((gamma.clone(), x, y));
            }
        }
        if gamma.len() as u64 + stab.log2 < self.best as u64 {
            return;
        }
        for &p in &stab.moved_reps {
            gamma.push(p);
            if self.independent(gamma) {
                self.explore(gamma);
            }
            gamma.pop();
        }
    }

    /// The last point shrank the stabilizer; check that every earlier one
    /// still does.
    fn independent(&mut self, gamma: &[usize]) -> bool {
        let full = self.cache.get(gamma).order.clone();
        (0..gamma.len().saturating_sub(1)).all(|j| {
            let rest: Vec<usize> = without(gamma, j);
            self.cache.get(&rest).order > full
        })
    }

    fn witness_at(&mut self, gamma: &[usize]) -> Option<(usize, usize)> {
        if gamma.len() < 2 {
            return None;
        }
        let stab = self.cache.get(gamma);
        let subs: Vec<_> = (0..gamma.len()).map(|j| self.cache.get(&without(gamma, j))).collect();
        let mut seen_orbit = vec![false; self.n];
        for x in 0..self.n {
            let o = stab.orbit_id[x] as usize;
            if std::mem::replace(&mut seen_orbit[o], true) || gamma.contains(&x) {
                continue;
            }
            for y in 0..self.n {
                if gamma.contains(&y) || stab.same_orbit(x, y) {
                    continue;
                }
                if subs.iter().all(|s| s.same_orbit(x, y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

fn without(tuple: &[usize], j: usize) -> Vec<usize> {
    tuple
        .iter()
        .enumerate()
        .filter(|&(t, _)| t != j)
        .map(|(_, &p)| p)
        .collect()
}

fn build_witness(cache: &mut StabCache, gamma: &[usize], x: usize, y: usize) -> TuplePair {
    let k = gamma.len();
    let mut i = gamma.to_vec();
    let mut j = gamma.to_vec();
    i.push(x);
    j.push(y);
    let n = cache.get(&[]).group.degree();
    let mut certs = BTreeMap::new();
    for s in subsets(k + 1, k) {
        let dropped = (0..=k).find(|t| !s.contains(t)).expect("one index missing");
        let cert = if dropped == k {
            Permutation::identity(n)
        } else {
            let sub = cache.get(&without(gamma, dropped));
            sub.group
                .transporter(&[x], &[y])
                .expect("points in range")
                .expect("witness condition")
        };
        certs.insert(s, cert);
    }
    TuplePair {
        i,
        j,
        k,
        certs,
        equivalent: false,
    }
}

/// Lower bound from suborbits: the largest relational complexity of a
/// point stabilizer acting on one of its nontrivial orbits, with the
/// witness lifted to the whole group by prepending the fixed point.
pub fn suborbit_rc_lower_bound(g: &PermutationGroup) -> Result<RcResult> {
    suborbit_rc_lower_bound_with(g, &Caps::default())
}

pub fn suborbit_rc_lower_bound_with(g: &PermutationGroup, caps: &Caps) -> Result<RcResult> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let alpha = 0;
    let m = g.pointwise_stabilizer(&[alpha])?;
    let mut best = RcResult { rc: 2, witness: None };
    for orbit in m.orbits() {
        if orbit.len() < 2 {
            continue;
        }
        let action = m.restrict(&orbit)?;
        let r = relational_complexity_with(&action, caps)?;
        if r.rc > best.rc {
            let witness = r.witness.map(|w| lift_witness(g, &orbit, alpha, &w));
            best = RcResult { rc: r.rc, witness };
        }
    }
    Ok(best)
}

/// Lifts a witness for `M = G_alpha` on `orbit` (relabeled) to `G` by
/// prepending `alpha`. The completeness level is unchanged; the tuples
/// stay inequivalent because `alpha` is fixed.
fn lift_witness(
    g: &PermutationGroup,
    orbit: &[usize],
    alpha: usize,
    w: &TuplePair,
) -> TuplePair {
    let mut i = vec![alpha];
    let mut j = vec![alpha];
    i.extend(w.i.iter().map(|&p| orbit[p]));
    j.extend(w.j.iter().map(|&p| orbit[p]));
    let k = w.k;
    let mut certs = BTreeMap::new();
    for s in subsets(i.len(), k) {
        let a: Vec<usize> = s.iter().map(|&t| i[t]).collect();
        let b: Vec<usize> = s.iter().map(|&t| j[t]).collect();
        let x = g
            .transporter(&a, &b)
            .expect("points in range")
        .expect("lifted subtuples are complete");
        certs.insert(s, x);
    }
    TuplePair {
        i,
        j,
        k,
        certs,
        equivalent: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_tuples_are_complete() {
        let g = PermutationGroup::alternating(5);
        let t = [0, 3, 1];
        for k in 1..=3 {
            assert!(subtuple_complete(&g, &t, &t, k).unwrap().complete);
        }
    }

    #[test]
    fn alternating_transposition_pair() {
        for t in 4..=6 {
            let g = PermutationGroup::alternating(t);
            let i: Vec<usize> = (0..t).collect();
            let mut j = i.clone();
            j.swap(0, 1);
            assert!(subtuple_complete(&g, &i, &j, t - 2).unwrap().complete);
            assert!(!subtuple_complete(&g, &i, &j, t).unwrap().complete);
        }
    }

    #[test]
    fn orbit_equivalence_examples() {
        let s5 = PermutationGroup::symmetric(5);
        assert!(orbit_equivalent(&s5, &[0, 1, 2, 3, 4], &[4, 2, 0, 1, 3]).unwrap());
        let a4 = PermutationGroup::alternating(4);
        assert!(!orbit_equivalent(&a4, &[0, 1, 2], &[1, 0, 2]).unwrap());
        let c5 = PermutationGroup::cyclic(5);
        assert!(orbit_equivalent(&c5, &[0, 1], &[1, 2]).unwrap());
        assert_eq!(orbit_equivalent(&c5, &[0], &[1, 2]), Err(Error::LengthMismatch(1, 2)));
    }

    #[test]
    fn natural_actions() {
        assert_eq!(relational_complexity(&PermutationGroup::symmetric(5)).unwrap().rc, 2);
        let r = relational_complexity(&PermutationGroup::alternating(5)).unwrap();
        assert_eq!(r.rc, 4);
        let w = r.witness.unwrap();
        assert_eq!(w.i.len(), 4);
        assert!(w.revalidate(&PermutationGroup::alternating(5)).unwrap());
        assert_eq!(relational_complexity(&PermutationGroup::cyclic(7)).unwrap().rc, 2);
    }

    #[test]
    fn degenerate_groups_floor_at_two() {
        assert_eq!(relational_complexity(&PermutationGroup::trivial(1)).unwrap().rc, 2);
        assert_eq!(relational_complexity(&PermutationGroup::cyclic(2)).unwrap().rc, 2);
        assert_eq!(relational_complexity(&PermutationGroup::trivial(4)).unwrap().rc, 2);
    }

    #[test]
    fn caps_reject_large_inputs() {
        let caps = Caps {
            max_degree: 4,
            max_order: 10,
        };
        assert!(matches!(
            relational_complexity_with(&PermutationGroup::symmetric(5), &caps),
            Err(Error::DegreeTooLarge { .. })
        ));
        assert!(matches!(
            relational_complexity_with(&PermutationGroup::symmetric(4), &caps),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn suborbit_bounds() {
        assert_eq!(suborbit_rc_lower_bound(&PermutationGroup::symmetric(5)).unwrap().rc, 2);
        let a6 = PermutationGroup::alternating(6);
        let r = suborbit_rc_lower_bound(&a6).unwrap();
        assert_eq!(r.rc, 4);
        assert!(r.witness.unwrap().revalidate(&a6).unwrap());
        assert_eq!(suborbit_rc_lower_bound(&PermutationGroup::cyclic(7)).unwrap().rc, 2);
    }

    #[test]
    fn witness_json_roundtrip() {
        let g = PermutationGroup::alternating(5);
        let w = relational_complexity(&g).unwrap().witness.unwrap();
        let v = w.to_json();
        assert_eq!(v["equivalent"], Value::Bool(false));
        let back = TuplePair::from_json(&v, 5).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(subsets(2, 3).is_empty());
    }
}
