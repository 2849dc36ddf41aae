//! Non-binarity tests. A `NotBinary` verdict always carries a certificate
//! that can be rechecked with group primitives alone.

mod closure;
mod frobenius;
mod primes;
mod subsets;
mod tests_basic;

use serde_json::{json, Value};

use crate::error::Result;
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::relcomp::TuplePair;

pub use closure::{k_closure, test2_strongly_non_k_ary, OrbitalColoring, CLOSURE_MAX_DEGREE};
pub use frobenius::{frobenius_cyclic_kernel, frobenius_subgroup_test, frobenius_test};
pub use primes::{test5_special_primes, test5_special_primes_seeded, PrimeLemma};
pub use subsets::{
    check_2transitive_orbit, check_beautiful, diagonal_patch_witness, diagonal_patch_witness_with,
    verify_snb_certificate,
};
pub use tests_basic::{
    r_ell_by_elements, r_ell_by_orbits, test1_character_bound, test3_triples, test4_suborbits,
    test6_trivial_two_point, DEFAULT_SEED, DEFAULT_TRIALS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotBinary,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotBinary => "NotBinary",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// Tuples that are `k`-subtuple complete but not in one orbit.
    Witness(TuplePair),
    /// A closure element outside the group and the full-length pair it gives.
    ClosureElement { element: Permutation, pair: TuplePair },
    /// Orbit counts violating `r_ℓ ≤ r_2^(ℓ(ℓ-1)/2)`.
    Inequality { ell: usize, r_ell: u128, r2: u128 },
    /// Elements meeting the hypotheses of a special-primes lemma.
    Configuration {
        lemma: PrimeLemma,
        prime: u64,
        g: Permutation,
        h: Permutation,
    },
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Witness(p) => json!({"kind": "witness", "pair": p.to_json()}),
            Certificate::ClosureElement { element, pair } => json!({
                "kind": "closure-element",
                "element": element.to_string(),
                "pair": pair.to_json(),
            }),
            Certificate::Inequality { ell, r_ell, r2 } => json!({
                "kind": "inequality",
                "ell": ell,
                "r_ell": r_ell.to_string(),
                "r2": r2.to_string(),
            }),
            Certificate::Configuration { lemma, prime, g, h } => json!({
                "kind": "configuration",
                "lemma": lemma.as_str(),
                "prime": prime,
                "g": g.to_string(),
                "h": h.to_string(),
            }),
        }
    }

    /// Rechecks the certificate against `g` from scratch.
    pub fn recheck(&self, grp: &PermutationGroup) -> Result<bool> {
        match self {
            Certificate::Witness(p) => Ok(!p.equivalent && p.revalidate(grp)?),
            Certificate::ClosureElement { element, pair } => {
                let full: Vec<usize> = (0..grp.degree()).collect();
                Ok(!grp.contains(element)?
                    && pair.i == full
                    && pair.j == element.apply_tuple(&full)
                    && !pair.equivalent
                    && pair.revalidate(grp)?)
            }
            Certificate::Inequality { ell, r_ell, r2 } => {
                let a = r_ell_by_orbits(grp, *ell)?;
                let b = r_ell_by_orbits(grp, 2)?;
                Ok(a == *r_ell && b == *r2 && violates(*ell, a, b))
            }
            Certificate::Configuration { lemma, prime, g, h } => primes::recheck(grp, *lemma, *prime, g, h),
        }
    }

    /// The tuple pair carried by the certificate, if any.
    pub fn pair(&self) -> Option<&TuplePair> {
        match self {
            Certificate::Witness(p) | Certificate::ClosureElement { pair: p, .. } => Some(p),
            _ => None,
        }
    }
}

/// `r_ℓ > r_2^(ℓ(ℓ-1)/2)`.
pub(crate) fn violates(ell: usize, r_ell: u128, r2: u128) -> bool {
    let e = (ell * (ell - 1) / 2) as u32;
    match r2.checked_pow(e) {
        Some(bound) => r_ell > bound,
        None => false,
    }
}

#[derive(Clone, Debug)]
pub struct TestOutcome {
    pub test: String,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

impl TestOutcome {
    pub(crate) fn inconclusive(test: &str) -> Self {
        TestOutcome {
            test: test.to_string(),
            verdict: Verdict::Inconclusive,
            certificate: None,
        }
    }

    pub(crate) fn not_binary(test: &str, certificate: Certificate) -> Self {
        TestOutcome {
            test: test.to_string(),
            verdict: Verdict::NotBinary,
            certificate: Some(certificate),
        }
    }

    pub fn is_not_binary(&self) -> bool {
        self.verdict == Verdict::NotBinary
    }

    pub fn to_json(&self) -> Value {
        json!({
            "test": self.test,
            "verdict": self.verdict.as_str(),
            "certificate": self.certificate.as_ref().map(Certificate::to_json),
        })
    }

    /// A `NotBinary` verdict needs a certificate that rechecks.
    pub fn recheck(&self, g: &PermutationGroup) -> Result<bool> {
        match (&self.verdict, &self.certificate) {
            (Verdict::NotBinary, Some(c)) => c.recheck(g),
            (Verdict::NotBinary, None) => Ok(false),
            (Verdict::Inconclusive, _) => Ok(true),
        }
    }
}
