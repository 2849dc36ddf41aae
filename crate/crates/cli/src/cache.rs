//! On-disk cache of stabilizer chains.
//!
//! Files are keyed by a SHA-256 of the degree and the generator images in
//! their given order, since the chain built by Schreier-Sims depends on that
//! order. A cached chain is identical to a freshly built one.

use std::fs;
use std::path::{Path, PathBuf};

use relc::{Permutation, PermutationGroup, StabilizerChain};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct CachedLevel {
    base: usize,
    generators: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct CachedChain {
    degree: usize,
    levels: Vec<CachedLevel>,
}

pub struct ChainCache {
    dir: PathBuf,
}

impl ChainCache {
    pub fn new(dir: &Path) -> Self {
        ChainCache { dir: dir.to_path_buf() }
    }

    pub fn key(g: &PermutationGroup) -> String {
        let mut h = Sha256::new();
        h.update((g.degree() as u64).to_le_bytes());
        for x in g.generators() {
            h.update(b"|");
            for p in x.to_images() {
                h.update((p as u32).to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    fn path(&self, g: &PermutationGroup) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(g)))
    }

    fn load(&self, g: &PermutationGroup) -> Option<PermutationGroup> {
        let text = fs::read_to_string(self.path(g)).ok()?;
        let c: CachedChain = serde_json::from_str(&text).ok()?;
        let levels = c
            .levels
            .into_iter()
            .map(|l| {
                let gens = l
                    .generators
                    .into_iter()
                    .map(Permutation::from_images)
                    .collect::<relc::Result<Vec<_>>>()?;
                Ok((l.base, gens))
            })
            .collect::<relc::Result<Vec<_>>>()
            .ok()?;
        let chain = StabilizerChain::from_levels(c.degree, levels).ok()?;
        PermutationGroup::with_known_chain(g.degree(), g.generators().to_vec(), chain).ok()
    }

    fn store(&self, g: &PermutationGroup) -> std::io::Result<()> {
        let c = CachedChain {
            degree: g.degree(),
            levels: g
                .chain()
                .level_data()
                .into_iter()
                .map(|(base, gens)| CachedLevel {
                    base,
                    generators: gens.iter().map(Permutation::to_images).collect(),
                })
                .collect(),
        };
        fs::create_dir_all(&self.dir)?;
        fs::write(self.path(g), serde_json::to_string(&c).expect("chain serializes"))
    }

    /// The group with its chain taken from the cache, or built and stored.
    pub fn attach(&self, g: PermutationGroup) -> PermutationGroup {
        if let Some(cached) = self.load(&g) {
            return cached;
        }
        if let Err(e) = self.store(&g) {
            eprintln!("warning: cannot write chain cache in {}: {e}", self.dir.display());
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_gives_identical_chain() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ChainCache::new(dir.path());
        let g = PermutationGroup::alternating(6);
        let first = cache.attach(g.clone());
        let second = cache.attach(g.clone());
        assert_eq!(first.chain().base(), second.chain().base());
        assert_eq!(first.chain().level_data(), second.chain().level_data());
        assert_eq!(second.order_u128(), Some(360));
    }

    #[test]
    fn corrupt_file_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ChainCache::new(dir.path());
        let g = PermutationGroup::symmetric(5);
        fs::write(cache.path(&g), "{not json").unwrap();
        assert_eq!(cache.attach(g.clone()).order_u128(), Some(120));
        assert!(cache.load(&g).is_some());
    }

    #[test]
    fn key_depends_on_generator_order() {
        let a = PermutationGroup::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let b = PermutationGroup::from_cycles(4, &["(1 2 3 4)", "(1 2)"]).unwrap();
        assert_ne!(ChainCache::key(&a), ChainCache::key(&b));
    }
}
