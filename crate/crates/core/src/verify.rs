//! The acceptance suite: fourteen end-to-end checks over the catalog.

use std::time::Instant;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, Base, CatalogEntry};
use crate::error::Result;
use crate::group::PermutationGroup;
use crate::oracle::naive_relational_complexity;
use crate::perm::Permutation;
use crate::relcomp::{height, max_irredundant_base, max_minimal_base, min_base, relational_complexity};
use crate::structures::{
    automorphism_group, canonical_structure, enumerate_homogeneous_digraphs, is_homogeneous,
    predicted_homogeneous_digraphs, structural_rc, Digraph,
};
use crate::witness::{
    diagonal_patch_witness, frobenius_test, k_closure, test1_character_bound, test2_strongly_non_k_ary,
    test3_triples, test4_suborbits, test5_special_primes, test6_trivial_two_point, Certificate, TestOutcome,
    DEFAULT_SEED,
};

/// One acceptance check. `tags` are matched by `--filter`.
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    check: fn(&mut Failures) -> Result<()>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
    pub runtime_ms: u128,
}

#[derive(Default)]
pub struct Failures(Vec<String>);

impl Failures {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_ascii_lowercase();
        self.id.to_string() == f || self.name.contains(f.as_str()) || self.tags.iter().any(|t| *t == f)
    }

    pub fn run(&self) -> CriterionReport {
        let start = Instant::now();
        let mut failures = Failures::default();
        if let Err(e) = (self.check)(&mut failures) {
            failures.0.push(format!("error: {e}"));
        }
        CriterionReport {
            id: self.id,
            name: self.name,
            passed: failures.0.is_empty(),
            failures: failures.0,
            runtime_ms: start.elapsed().as_millis(),
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "natural-actions", tags: &["rc"], check: natural_actions },
        Criterion { id: 2, name: "binary-families", tags: &["rc"], check: binary_families },
        Criterion { id: 3, name: "k-subsets", tags: &["rc"], check: k_subsets },
        Criterion { id: 4, name: "matchings", tags: &["rc"], check: matchings },
        Criterion { id: 5, name: "product-actions", tags: &["rc"], check: product_actions },
        Criterion { id: 6, name: "intransitive", tags: &["rc"], check: intransitive },
        Criterion { id: 7, name: "statistic-chain", tags: &["stats"], check: statistic_chain },
        Criterion { id: 8, name: "height-bound", tags: &["stats"], check: height_bound },
        Criterion { id: 9, name: "test-soundness", tags: &["tests"], check: test_soundness },
        Criterion { id: 10, name: "closure-identities", tags: &["closure"], check: closure_identities },
        Criterion { id: 11, name: "homogeneity", tags: &["structures"], check: homogeneity },
        Criterion { id: 12, name: "structural-rc", tags: &["structures", "rc"], check: structural_equivalence },
        Criterion { id: 13, name: "diagonal-patch", tags: &["tests"], check: diagonal_patch },
        Criterion { id: 14, name: "oracle-equivalence", tags: &["rc"], check: oracle_equivalence },
    ]
}

/// Runs the criteria selected by `filter` (all when `None`) in order.
pub fn run(filter: Option<&str>) -> Vec<CriterionReport> {
    criteria()
        .iter()
        .filter(|c| filter.is_none_or(|f| c.matches(f)))
        .map(Criterion::run)
        .collect()
}

/// Exact RC with its witness revalidated whenever RC exceeds 2.
fn checked_rc(g: &PermutationGroup) -> Result<usize> {
    let r = relational_complexity(g)?;
    if let Some(w) = &r.witness {
        if r.rc > 2 && !w.revalidate(g)? {
            return Err(crate::Error::ConditionFailed("RC witness fails revalidation".into()));
        }
    }
    Ok(r.rc)
}

fn expect_rc(f: &mut Failures, e: &CatalogEntry, want: usize) -> Result<()> {
    let rc = checked_rc(&e.group)?;
    f.expect(rc == want, || format!("{}: RC {rc}, expected {want}", e.label()));
    Ok(())
}

fn natural_actions(f: &mut Failures) -> Result<()> {
    for n in 3..=8 {
        expect_rc(f, &catalog::symmetric_natural(n)?, 2)?;
    }
    for n in 4..=7 {
        expect_rc(f, &catalog::alternating_natural(n)?, n - 1)?;
    }
    Ok(())
}

fn binary_families(f: &mut Failures) -> Result<()> {
    for p in [5, 7, 11, 13] {
        expect_rc(f, &catalog::cyclic_regular(p)?, 2)?;
    }
    for p in [5, 7, 11] {
        expect_rc(f, &catalog::dihedral_polygon(p)?, 2)?;
    }
    expect_rc(f, &catalog::affine_orthogonal(3, 2)?, 2)
}

fn k_subsets(f: &mut Failures) -> Result<()> {
    for (b, n, k, want) in [
        (Base::Sym, 6, 2, 3),
        (Base::Sym, 8, 4, 4),
        (Base::Alt, 5, 2, 3),
        (Base::Alt, 6, 2, 4),
        (Base::Alt, 7, 3, 4),
    ] {
        expect_rc(f, &catalog::k_subsets_action(b, n, k)?, want)?;
    }
    Ok(())
}

fn matchings(f: &mut Failures) -> Result<()> {
    for (b, pts, want) in [(Base::Sym, 6, 3), (Base::Alt, 6, 4), (Base::Sym, 4, 2), (Base::Alt, 4, 2)] {
        expect_rc(f, &catalog::matchings_action(b, pts)?, want)?;
    }
    Ok(())
}

fn product_actions(f: &mut Failures) -> Result<()> {
    for r in 2..=4usize {
        expect_rc(f, &catalog::product_action(2, r)?, 2 + r.ilog2() as usize)?;
    }
    Ok(())
}

fn intransitive(f: &mut Failures) -> Result<()> {
    for n in 3..=5 {
        expect_rc(f, &catalog::intransitive_join(n)?, n)?;
    }
    Ok(())
}

fn ceil_log2(t: usize) -> usize {
    t.next_power_of_two().trailing_zeros() as usize
}

fn statistic_chain(f: &mut Failures) -> Result<()> {
    for e in catalog::standard_entries().iter().filter(|e| e.group.degree() <= 30) {
        let g = &e.group;
        let b = min_base(g)?.0;
        let big_b = max_minimal_base(g)?.0;
        let h = height(g)?.0;
        let i = max_irredundant_base(g)?.0;
        let rc = checked_rc(g)?;
        let bound = b * ceil_log2(g.degree());
        f.expect(b <= big_b && big_b <= h && h <= i && i <= bound, || {
            format!("{}: chain b={b} B={big_b} H={h} I={i} b*ceil(log t)={bound}", e.label())
        });
        f.expect(rc <= (h + 1).max(2), || format!("{}: RC {rc} > H+1 = {}", e.label(), h + 1));
    }
    Ok(())
}

fn height_bound(f: &mut Failures) -> Result<()> {
    for e in catalog::standard_entries() {
        let g = &e.group;
        if e.in_product_family || !g.is_transitive() || !g.is_primitive()? {
            continue;
        }
        let h = height(g)?.0;
        let bound = 9.0 * (g.degree() as f64).log2();
        f.expect((h as f64) < bound, || format!("{}: H={h} not below {bound:.2}", e.label()));
    }
    Ok(())
}

fn primes_up_to(n: usize) -> Vec<u64> {
    (2..=n as u64).filter(|&p| (2..p).all(|d| p % d != 0)).collect()
}

/// Every test on a transitive group, skipping precondition errors.
fn all_tests(g: &PermutationGroup) -> Vec<TestOutcome> {
    let mut runs = vec![
        test1_character_bound(g, 5),
        test2_strongly_non_k_ary(g, 2),
        test3_triples(g),
        test4_suborbits(g),
    ];
    let order = g.order();
    for p in primes_up_to(g.degree()) {
        if &order % BigUint::from(p) == BigUint::from(0u32) && (g.degree() as u64).is_multiple_of(p) {
            runs.push(test5_special_primes(g, p));
        }
    }
    runs.push(test6_trivial_two_point(g, 2000, DEFAULT_SEED));
    runs.push(frobenius_test(g));
    runs.into_iter().filter_map(|r| r.ok()).collect()
}

fn test_soundness(f: &mut Failures) -> Result<()> {
    for e in catalog::standard_entries() {
        let g = &e.group;
        if g.degree() > 15 || !g.is_transitive() {
            continue;
        }
        let fired: Vec<TestOutcome> = all_tests(g).into_iter().filter(TestOutcome::is_not_binary).collect();
        if fired.is_empty() {
            continue;
        }
        let rc = checked_rc(g)?;
        for t in fired {
            f.expect(rc > 2, || format!("{}: {} fired on a binary group", e.label(), t.test));
            f.expect(t.recheck(g)?, || format!("{}: {} certificate fails recheck", e.label(), t.test));
        }
    }
    let a5 = PermutationGroup::alternating(5);
    let t1 = test1_character_bound(&a5, 5)?;
    f.expect(
        matches!(t1.certificate, Some(Certificate::Inequality { ell: 4, .. })),
        || "test1 does not flag Alt(5) at l=4".into(),
    );
    for p in [5, 7] {
        let g = catalog::agl1(p)?.group;
        let t = frobenius_test(&g)?;
        f.expect(t.is_not_binary() && t.recheck(&g)?, || format!("frobenius does not flag AGL1({p})"));
    }
    Ok(())
}

fn closure_identities(f: &mut Failures) -> Result<()> {
    for n in 4..=6 {
        let c = k_closure(&PermutationGroup::alternating(n), 2)?;
        f.expect(c.same_group(&PermutationGroup::symmetric(n)), || format!("2-closure of Alt({n}) is not Sym({n})"));
    }
    let small: Vec<CatalogEntry> = catalog::standard_entries()
        .into_iter()
        .filter(|e| e.group.degree() <= 12)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..20 {
        let e = &small[rng.gen_range(0..small.len())];
        let closure = k_closure(&e.group, 2)?;
        let aut = automorphism_group(&canonical_structure(&e.group, 2)?)?;
        f.expect(closure.same_group(&aut), || format!("{}: 2-closure differs from Aut of the canonical structure", e.label()));
    }
    Ok(())
}

fn homogeneity(f: &mut Failures) -> Result<()> {
    let k3 = Digraph::complete(3);
    let mut orders = vec![
        ("H0", Digraph::h0(), 24u128),
        ("H1", Digraph::h1(), 16),
        ("H2", Digraph::h2(), 48),
        ("K3xK3", k3.direct_product(&k3), 72),
    ];
    for n in 4..=6 {
        orders.push(("Delta", Digraph::cycle_undirected(n)?, 2 * n as u128));
    }
    for (name, d, want) in &orders {
        let got = automorphism_group(&d.to_structure())?.order_u128();
        f.expect(got == Some(*want), || format!("|Aut({name} on {})| = {got:?}, expected {want}", d.vertices()));
    }
    let mut members = vec![
        ("H0", Digraph::h0()),
        ("Delta5", Digraph::cycle_undirected(5)?),
        ("K2[K3bar]", Digraph::complete(2).composition(&Digraph::empty(3))),
        ("K3xK3", k3.direct_product(&k3)),
    ];
    for n in 1..=5 {
        for d in predicted_homogeneous_digraphs(n)?.into_values() {
            members.push(("predicted", d));
        }
    }
    for (name, d) in &members {
        f.expect(is_homogeneous(&d.to_structure())?.homogeneous, || {
            format!("{name} on {} vertices is not homogeneous", d.vertices())
        });
    }
    for n in 3..=5 {
        let found: Vec<u128> = enumerate_homogeneous_digraphs(n)?.into_keys().collect();
        let predicted: Vec<u128> = predicted_homogeneous_digraphs(n)?.into_keys().collect();
        f.expect(found == predicted, || {
            format!("n={n}: enumeration finds {} digraphs, classification predicts {}", found.len(), predicted.len())
        });
    }
    Ok(())
}

fn structural_equivalence(f: &mut Failures) -> Result<()> {
    for e in catalog::standard_entries().iter().filter(|e| e.group.degree() <= 6) {
        let s = structural_rc(&e.group)?;
        let rc = checked_rc(&e.group)?;
        f.expect(!s.from_tuple_rc, || format!("{}: structural search hit its cap", e.label()));
        f.expect(s.value == rc, || format!("{}: structural RC {} vs tuple RC {rc}", e.label(), s.value));
    }
    Ok(())
}

fn diagonal_patch(f: &mut Failures) -> Result<()> {
    for (name, t) in [
        ("Sym(3)", PermutationGroup::symmetric(3)),
        ("Alt(4)", PermutationGroup::alternating(4)),
        ("Alt(5)", PermutationGroup::alternating(5)),
    ] {
        let g = catalog::diagonal_type_on_t(&t)?.group;
        let out = diagonal_patch_witness(&t)?;
        f.expect(out.is_not_binary() && out.recheck(&g)?, || format!("T = {name}: no verified witness"));
    }
    Ok(())
}

/// Subgroups of `Sym(6)` generated by one to three seeded random elements.
pub fn random_sym6_subgroups(count: usize, seed: u64) -> Vec<PermutationGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            let gens = (0..k)
                .map(|_| {
                    let mut img: Vec<usize> = (0..6).collect();
                    img.shuffle(&mut rng);
                    Permutation::from_images(img).expect("a shuffle is a permutation")
                })
                .collect();
            PermutationGroup::new(6, gens).expect("generators have degree 6")
        })
        .collect()
}

fn oracle_equivalence(f: &mut Failures) -> Result<()> {
    let mut groups: Vec<(String, PermutationGroup)> = catalog::standard_entries()
        .into_iter()
        .filter(|e| e.group.degree() <= 7)
        .map(|e| (e.label(), e.group))
        .collect();
    for (i, g) in random_sym6_subgroups(50, DEFAULT_SEED).into_iter().enumerate() {
        groups.push((format!("random#{i}"), g));
    }
    for (label, g) in &groups {
        let rc = relational_complexity(g)?.rc;
        let (naive, _) = naive_relational_complexity(g, None);
        f.expect(rc == naive, || format!("{label}: RC {rc}, naive oracle {naive}"));
    }
    Ok(())
}
