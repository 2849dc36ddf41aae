//! Loop-free digraphs, the homogeneous families and small enumerations.

use std::collections::{BTreeMap, BTreeSet};

use super::{homog, RelationalStructure};
use crate::error::{Error, Result};

/// A digraph on `0..vertices` without loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= vertices {
                    return Err(Error::VertexOutOfRange { vertex: v, vertices });
                }
            }
            if a == b {
                return Err(Error::BadParameter(format!("loop at vertex {a}")));
            }
            set.insert((a, b));
        }
        Ok(Digraph { vertices, edges: set })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    pub fn to_structure(&self) -> RelationalStructure {
        RelationalStructure::new(
            self.vertices,
            vec![(2, self.edges.iter().map(|&(a, b)| vec![a, b]).collect())],
        )
        .expect("digraph edges are in range")
    }

    /// `K_n`: every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        Digraph { vertices: n, edges }
    }

    /// `K̄_n`: no edges.
    pub fn empty(n: usize) -> Self {
        Digraph {
            vertices: n,
            edges: BTreeSet::new(),
        }
    }

    /// `Λ_n`: `(x, y)` is an edge when `x - y ≡ 1 (mod n)`.
    pub fn cycle_directed(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadParameter(format!("cycle on {n} vertices")));
        }
        Digraph::new(n, (0..n).map(|x| (x, (x + n - 1) % n)).collect())
    }

    /// `Δ_n`: the undirected cycle.
    pub fn cycle_undirected(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadParameter(format!("cycle on {n} vertices")));
        }
        Digraph::new(
            n,
            (0..n).flat_map(|x| [(x, (x + 1) % n), ((x + 1) % n, x)]).collect(),
        )
    }

    pub fn complement(&self) -> Self {
        let n = self.vertices;
        let edges = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && !self.has_edge(a, b))
            .collect();
        Digraph { vertices: n, edges }
    }

    /// `Γ[Δ]` on pairs `(u, v)`, numbered `u·|Δ| + v`.
    pub fn composition(&self, inner: &Digraph) -> Self {
        let m = inner.vertices;
        let n = self.vertices * m;
        let mut edges = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                let (u1, v1, u2, v2) = (x / m, x % m, y / m, y % m);
                if self.has_edge(u1, u2) || (u1 == u2 && inner.has_edge(v1, v2)) {
                    edges.insert((x, y));
                }
            }
        }
        Digraph { vertices: n, edges }
    }

    /// `Γ × Δ`: both coordinates must be edges.
    pub fn direct_product(&self, other: &Digraph) -> Self {
        let m = other.vertices;
        let n = self.vertices * m;
        let mut edges = BTreeSet::new();
        for &(u1, u2) in &self.edges {
            for &(v1, v2) in &other.edges {
                edges.insert((u1 * m + v1, u2 * m + v2));
            }
        }
        Digraph { vertices: n, edges }
    }

    /// The sporadic antisymmetric digraph on 8 vertices.
    pub fn h0() -> Self {
        const ARCS: [(usize, usize); 24] = [
            (1, 4), (1, 6), (1, 7), (2, 3), (2, 4), (2, 1), (3, 6), (3, 8),
            (3, 1), (4, 3), (4, 5), (4, 6), (5, 2), (5, 3), (5, 8), (6, 5),
            (6, 7), (6, 8), (7, 5), (7, 2), (7, 4), (8, 2), (8, 7), (8, 1),
        ];
        from_one_based(8, &[], &ARCS)
    }

    /// The 8-vertex digraph with four undirected mate pairs.
    pub fn h1() -> Self {
        const MATES: [(usize, usize); 4] = [(1, 2), (3, 4), (5, 6), (7, 8)];
        const ARCS: [(usize, usize); 16] = [
            (1, 8), (1, 3), (2, 7), (2, 4), (3, 6), (3, 2), (4, 1), (4, 5),
            (5, 7), (5, 3), (6, 4), (6, 8), (7, 6), (7, 1), (8, 2), (8, 5),
        ];
        from_one_based(8, &MATES, &ARCS)
    }

    /// The 12-vertex digraph: six mate pairs, twelve drawn arcs, and the
    /// arcs forced by `(v, w) ⇒ (w', v)` and `(w, v) ⇒ (v, w')`.
    pub fn h2() -> Self {
        const MATES: [(usize, usize); 6] = [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (11, 12)];
        const ARCS: [(usize, usize); 12] = [
            (1, 12), (1, 10), (2, 5), (3, 2), (4, 5), (4, 7),
            (6, 7), (8, 9), (9, 6), (11, 10), (11, 8), (12, 3),
        ];
        let drawn = from_one_based(12, &MATES, &ARCS);
        let mate = |v: usize| v ^ 1;
        let mut edges = drawn.edges;
        loop {
            let mut added = Vec::new();
            for &(v, w) in &edges {
                if mate(v) == w {
                    continue;
                }
                for e in [(mate(w), v), (w, mate(v))] {
                    if e.0 != e.1 && !edges.contains(&e) {
                        added.push(e);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            edges.extend(added);
        }
        Digraph { vertices: 12, edges }
    }

    /// Least adjacency bitstring over all relabellings.
    pub fn canonical_code(&self) -> Result<u128> {
        let n = self.vertices;
        if n > MAX_CANONICAL {
            return Err(Error::TooLarge(format!("canonical form needs at most {MAX_CANONICAL} vertices")));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u128::MAX;
        loop {
            let mut code = 0u128;
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        code <<= 1;
                        if self.has_edge(perm[a], perm[b]) {
                            code |= 1;
                        }
                    }
                }
            }
            best = best.min(code);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(best)
    }

    fn from_code(n: usize, code: u128) -> Self {
        let mut edges = BTreeSet::new();
        let mut bit = n * n.saturating_sub(1);
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    bit -= 1;
                    if code >> bit & 1 == 1 {
                        edges.insert((a, b));
                    }
                }
            }
        }
        Digraph { vertices: n, edges }
    }
}

const MAX_CANONICAL: usize = 8;
const MAX_ENUMERATION: usize = 5;

fn from_one_based(n: usize, mates: &[(usize, usize)], arcs: &[(usize, usize)]) -> Digraph {
    let mut edges = Vec::new();
    for &(a, b) in mates {
        edges.push((a - 1, b - 1));
        edges.push((b - 1, a - 1));
    }
    edges.extend(arcs.iter().map(|&(a, b)| (a - 1, b - 1)));
    Digraph::new(n, edges).expect("figure data is valid")
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn is_regular(d: &Digraph) -> bool {
    let n = d.vertices;
    let mut out = vec![0usize; n];
    let mut inn = vec![0usize; n];
    for &(a, b) in &d.edges {
        out[a] += 1;
        inn[b] += 1;
    }
    out.iter().all(|&x| x == out[0]) && inn.iter().all(|&x| x == inn[0])
}

/// Homogeneous digraphs on `n` vertices up to isomorphism, by exhaustive
/// generation, keyed by canonical code.
pub fn enumerate_homogeneous_digraphs(n: usize) -> Result<BTreeMap<u128, Digraph>> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(Error::TooLarge(format!("enumeration supports 1..={MAX_ENUMERATION} vertices")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut reps: BTreeSet<u128> = BTreeSet::new();
    for mask in 0u64..(1u64 << (2 * pairs.len())) {
        let mut edges = BTreeSet::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let s = mask >> (2 * i) & 3;
            if s & 1 == 1 {
                edges.insert((a, b));
            }
            if s & 2 == 2 {
                edges.insert((b, a));
            }
        }
        let d = Digraph { vertices: n, edges };
        if is_regular(&d) {
            reps.insert(d.canonical_code()?);
        }
    }
    let mut out = BTreeMap::new();
    for code in reps {
        let d = Digraph::from_code(n, code);
        if homog::is_homogeneous(&d.to_structure())?.homogeneous {
            out.insert(code, d);
        }
    }
    Ok(out)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn symmetric_family(n: usize) -> Result<Vec<Digraph>> {
    let mut out = Vec::new();
    if n == 5 {
        out.push(Digraph::cycle_undirected(5)?);
    }
    if n == 9 {
        out.push(Digraph::complete(3).direct_product(&Digraph::complete(3)));
    }
    for m in divisors(n) {
        out.push(Digraph::complete(m).composition(&Digraph::empty(n / m)));
    }
    let comps: Vec<Digraph> = out.iter().map(Digraph::complement).collect();
    out.extend(comps);
    Ok(out)
}

fn antisymmetric_family(n: usize) -> Result<Vec<Digraph>> {
    let mut out = vec![Digraph::empty(n)];
    if n == 4 {
        out.push(Digraph::cycle_directed(4)?);
    }
    if n.is_multiple_of(3) {
        let l3 = Digraph::cycle_directed(3)?;
        out.push(Digraph::empty(n / 3).composition(&l3));
        out.push(l3.composition(&Digraph::empty(n / 3)));
    }
    if n == 8 {
        out.push(Digraph::h0());
    }
    Ok(out)
}

/// The digraphs on exactly `n` vertices listed by the classification of
/// homogeneous digraphs, closed under complement, keyed by canonical code.
pub fn predicted_homogeneous_digraphs(n: usize) -> Result<BTreeMap<u128, Digraph>> {
    if n == 0 || n > MAX_CANONICAL {
        return Err(Error::TooLarge(format!("prediction supports 1..={MAX_CANONICAL} vertices")));
    }
    let mut all = Vec::new();
    for d in divisors(n) {
        for a in antisymmetric_family(d)? {
            all.push(Digraph::complete(n / d).composition(&a));
            all.push(a.composition(&Digraph::complete(n / d)));
        }
    }
    all.extend(symmetric_family(n)?);
    if n.is_multiple_of(3) {
        let l3 = Digraph::cycle_directed(3)?;
        for s in symmetric_family(n / 3)? {
            all.push(l3.composition(&s));
            all.push(s.composition(&l3));
        }
    }
    if n == 8 {
        all.push(Digraph::h1());
    }
    let comps: Vec<Digraph> = all.iter().map(Digraph::complement).collect();
    all.extend(comps);
    let mut out = BTreeMap::new();
    for d in all {
        let code = d.canonical_code()?;
        out.entry(code).or_insert_with(|| Digraph::from_code(n, code));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::automorphism_group;

    fn aut_order(d: &Digraph) -> u128 {
        automorphism_group(&d.to_structure()).unwrap().order_u128().unwrap()
    }

    #[test]
    fn constructors() {
        assert_eq!(Digraph::cycle_undirected(5).unwrap().edges().len(), 10);
        assert_eq!(Digraph::cycle_directed(4).unwrap().edges().len(), 4);
        assert!(Digraph::cycle_directed(2).is_err());
        assert!(Digraph::new(2, vec![(1, 1)]).is_err());
        assert_eq!(Digraph::complete(4).complement(), Digraph::empty(4));
        let c = Digraph::complete(2).composition(&Digraph::empty(3));
        assert_eq!(c.vertices(), 6);
        assert_eq!(c.edges().len(), 18);
    }

    #[test]
    fn sporadic_counts() {
        assert_eq!(Digraph::h0().edges().len(), 24);
        assert_eq!(Digraph::h1().edges().len(), 24);
        let h2 = Digraph::h2();
        assert_eq!(h2.vertices(), 12);
        assert_eq!(h2.edges().len(), 60);
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(aut_order(&Digraph::h0()), 24);
        assert_eq!(aut_order(&Digraph::h1()), 16);
        assert_eq!(aut_order(&Digraph::h2()), 48);
        assert_eq!(aut_order(&Digraph::complete(3).direct_product(&Digraph::complete(3))), 72);
        for n in 4..=6 {
            assert_eq!(aut_order(&Digraph::cycle_undirected(n).unwrap()), 2 * n as u128);
        }
    }

    #[test]
    fn canonical_code_is_invariant() {
        let a = Digraph::cycle_directed(4).unwrap();
        let b = Digraph::new(4, vec![(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(a.canonical_code().unwrap(), b.canonical_code().unwrap());
        assert_ne!(a.canonical_code().unwrap(), Digraph::cycle_undirected(4).unwrap().canonical_code().unwrap());
        let d = Digraph::from_code(4, a.canonical_code().unwrap());
        assert_eq!(d.canonical_code().unwrap(), a.canonical_code().unwrap());
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_homogeneous_digraphs(1).unwrap().len(), 1);
        // the single arc on two vertices is not vertex-transitive
        let two = enumerate_homogeneous_digraphs(2).unwrap();
        assert_eq!(two.len(), 2);
        let three = enumerate_homogeneous_digraphs(3).unwrap();
        let codes: BTreeSet<u128> = [Digraph::empty(3), Digraph::complete(3), Digraph::cycle_directed(3).unwrap()]
            .iter()
            .map(|d| d.canonical_code().unwrap())
            .collect();
        assert_eq!(three.keys().copied().collect::<BTreeSet<_>>(), codes);
        for n in 1..=4 {
            assert_eq!(
                enumerate_homogeneous_digraphs(n).unwrap().keys().collect::<Vec<_>>(),
                predicted_homogeneous_digraphs(n).unwrap().keys().collect::<Vec<_>>(),
                "n = {n}"
            );
        }
    }
}
