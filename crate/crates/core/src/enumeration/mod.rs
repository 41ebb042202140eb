//! Exhaustive enumeration of based multifunctors and multinatural
//! transformations, assembled into finite hom-categories.

mod functors;
mod hom;
mod lemma;

use sha2::{Digest, Sha256};
use thiserror::Error;

pub use functors::{enumerate_based_multifunctors, enumerate_multifunctors, Multifunctor};
pub use hom::{enumerate_multinat, HomCategory, MultinatTransformation, NaturalityPlan};
pub use lemma::{check_lemma_arrow, check_module_arrows, i_inclusions, IsoWitness, LemmaError, LemmaSides};

use crate::multicat::BasedMulticategory;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("search budget of {budget} nodes exceeded")]
    Budget { budget: u64 },
    #[error("arity caps differ ({0} vs {1})")]
    CapMismatch(usize, usize),
}

/// Byte storage for memoized hom-categories, keyed by [`cache_key`].
pub trait EnumerationCache: Sync {
    fn load(&self, key: &str) -> Option<Vec<u8>>;
    fn store(&self, key: &str, bytes: &[u8]);
    /// Called when a stored entry fails to decode; it is then recomputed and
    /// overwritten.
    fn corrupt(&self, _key: &str) {}
}

/// Content address of `Hom(S, M)`: both digests and the arity cap.
pub fn cache_key(s: &BasedMulticategory, m: &BasedMulticategory) -> String {
    let mut h = Sha256::new();
    h.update(b"hom-category v1\n");
    h.update(s.digest());
    h.update(b"\n");
    h.update(m.digest());
    h.update(format!("\ncap {}", m.arity_cap()));
    hex::encode(h.finalize())
}

/// [`HomCategory::build`] through an optional cache.
pub fn hom_category(
    s: &BasedMulticategory,
    m: &BasedMulticategory,
    budget: u64,
    cache: Option<&dyn EnumerationCache>,
) -> Result<HomCategory, EnumerationError> {
    let Some(cache) = cache else {
        return HomCategory::build(s, m, budget);
    };
    let key = cache_key(s, m);
    if let Some(bytes) = cache.load(&key) {
        match serde_json::from_slice::<HomCategory>(&bytes) {
            Ok(h) => return Ok(h.reindex()),
            Err(_) => cache.corrupt(&key),
        }
    }
    let h = HomCategory::build(s, m, budget)?;
    let bytes = serde_json::to_vec(&h).expect("hom-category serializes");
    cache.store(&key, &bytes);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;
    use std::sync::Mutex;

    use super::*;
    use crate::category::{validate_category, FiniteCategory};
    use crate::multicat::{
        build_e, build_i, build_terminal, from_permutative, power_e, PermutativeCategory,
    };

    fn z3(cap: usize) -> BasedMulticategory {
        from_permutative(&PermutativeCategory::delooped_cyclic(3), cap).unwrap()
    }

    #[test]
    fn hom_e_e_is_discrete() {
        let e = build_e(4);
        let h = HomCategory::build(&e, &e, DEFAULT_BUDGET).unwrap();
        assert_eq!((h.object_count(), h.arrow_count()), (2, 2));
        assert!(validate_category(&h).is_empty());
    }

    #[test]
    fn hom_e_z3_is_z3() {
        let m = z3(4);
        let e = build_e(4);
        let h = HomCategory::build(&e, &m, DEFAULT_BUDGET).unwrap();
        assert_eq!((h.object_count(), h.arrow_count()), (1, 3));
        assert!(h.is_groupoid());
        assert!(validate_category(&h).is_empty());
        let f = h.functor(0);
        assert_eq!(enumerate_multinat(&e, &m, f, f, DEFAULT_BUDGET).unwrap().len(), 3);
    }

    #[test]
    fn no_transformations_between_distinct_modules_of_e() {
        let e = build_e(4);
        let fs = enumerate_based_multifunctors(&e, &e, DEFAULT_BUDGET).unwrap();
        assert!(enumerate_multinat(&e, &e, &fs[0], &fs[1], DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn level_zero_is_terminal() {
        for m in [build_e(4), z3(4), build_i(4)] {
            let h = HomCategory::build(&power_e(0, 4), &m, DEFAULT_BUDGET).unwrap();
            assert_eq!((h.object_count(), h.arrow_count()), (1, 1));
        }
    }

    #[test]
    fn lemma_arrow_counts() {
        let e = build_e(4);
        let w = check_lemma_arrow(&e, DEFAULT_BUDGET).unwrap();
        assert_eq!((w.left_objects, w.left_arrows), (2, 2));
        let w = check_lemma_arrow(&z3(4), DEFAULT_BUDGET).unwrap();
        assert_eq!((w.left_objects, w.right_objects), (3, 3));
        assert_eq!(w.left_arrows, w.right_arrows);
        let w = check_lemma_arrow(&build_terminal(4), DEFAULT_BUDGET).unwrap();
        assert_eq!((w.left_objects, w.left_arrows), (1, 1));
    }

    #[test]
    fn module_arrows_match_transformations() {
        for m in [build_e(4), z3(4), build_i(4)] {
            check_module_arrows(&m, DEFAULT_BUDGET).unwrap();
        }
    }

    #[derive(Default)]
    struct MemoryCache(Mutex<HashMap<String, Vec<u8>>>, Mutex<usize>);

    impl EnumerationCache for MemoryCache {
        fn load(&self, key: &str) -> Option<Vec<u8>> {
            self.0.lock().unwrap().get(key).cloned()
        }
        fn store(&self, key: &str, bytes: &[u8]) {
            self.0.lock().unwrap().insert(key.into(), bytes.to_vec());
        }
        fn corrupt(&self, _key: &str) {
            *self.1.lock().unwrap() += 1;
        }
    }

    #[test]
    fn cached_hom_category_matches() {
        let cache = MemoryCache::default();
        let (s, m) = (power_e(2, 4), z3(4));
        let a = hom_category(&s, &m, DEFAULT_BUDGET, Some(&cache)).unwrap();
        let b = hom_category(&s, &m, DEFAULT_BUDGET, Some(&cache)).unwrap();
        assert_eq!(serde_json::to_vec(&a).unwrap(), serde_json::to_vec(&b).unwrap());
        assert_eq!(b.compose(0, 0), a.compose(0, 0));
        let key = cache_key(&s, &m);
        cache.store(&key, b"not json");
        let c = hom_category(&s, &m, DEFAULT_BUDGET, Some(&cache)).unwrap();
        assert_eq!(c.arrow_count(), a.arrow_count());
        assert_eq!(*cache.1.lock().unwrap(), 1);
    }
}
