//! Adem rewriting with a memoized pair table.
//!
//! For `a < 2b` the relation is
//! `Sq^a Sq^b = sum_{c=0}^{a/2} binom(b-c-1, a-2c) Sq^{a+b-c} Sq^c  (mod 2)`
//! with `Sq^0 = 1`. Rewriting the leftmost inadmissible pair strictly
//! decreases the position-weighted moment of a word, so the recursion
//! terminates; GF(2) cancellation is handled by toggling.
//!
//! Two caches, both safe under concurrent insertion (writes are idempotent):
//! the raw pair expansion keyed on `(a, b)`, and the normal form of
//! `Sq^k * (admissible monomial)` which is the hot path for module actions.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{binom_mod2, AdmissibleMonomial};

type PairCache = RwLock<HashMap<(u32, u32), Arc<Vec<Vec<u32>>>>>;
type LeftCache = RwLock<HashMap<(u32, AdmissibleMonomial), Arc<Vec<AdmissibleMonomial>>>>;

fn pair_cache() -> &'static PairCache {
    static CACHE: OnceLock<PairCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn left_cache() -> &'static LeftCache {
    static CACHE: OnceLock<LeftCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Expansion of the inadmissible pair `Sq^a Sq^b` (`0 < a < 2b`) as a list
/// of admissible words of length 1 or 2.
pub(crate) fn adem_pair(a: u32, b: u32) -> Arc<Vec<Vec<u32>>> {
    debug_assert!(a >= 1 && b >= 1 && a < 2 * b);
    if let Some(hit) = pair_cache().read().unwrap().get(&(a, b)) {
        return Arc::clone(hit);
    }
    let mut terms: Vec<Vec<u32>> = Vec::new();
    for c in 0..=a / 2 {
        // b - c - 1 >= 0 because c <= a/2 < b
        if binom_mod2((b - c - 1) as u64, (a - 2 * c) as u64) {
            if c == 0 {
                terms.push(vec![a + b]);
            } else {
                // a + b - c > 2c always holds here, so the word is admissible
                terms.push(vec![a + b - c, c]);
            }
        }
    }
    let arc = Arc::new(terms);
    pair_cache()
        .write()
        .unwrap()
        .entry((a, b))
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

/// Normal form of `Sq^k * m` for an admissible `m` and `k >= 1`.
pub(crate) fn normalize_left(k: u32, m: &AdmissibleMonomial) -> Arc<Vec<AdmissibleMonomial>> {
    debug_assert!(k >= 1);
    let key = (k, m.clone());
    if let Some(hit) = left_cache().read().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let result = compute_normalize_left(k, m);
    let arc = Arc::new(result);
    left_cache()
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&arc));
    arc
}

fn compute_normalize_left(k: u32, m: &AdmissibleMonomial) -> Vec<AdmissibleMonomial> {
    let exps = m.exponents();
    if exps.is_empty() {
        return vec![AdmissibleMonomial::new_unchecked(vec![k])];
    }
    if k >= 2 * exps[0] {
        let mut word = Vec::with_capacity(exps.len() + 1);
        word.push(k);
        word.extend_from_slice(exps);
        return vec![AdmissibleMonomial::new_unchecked(word)];
    }
    // k Sq-multiplies the head inadmissibly; expand and recurse on GF(2) sums
    let tail = AdmissibleMonomial::new_unchecked(exps[1..].to_vec());
    let mut acc: HashMap<AdmissibleMonomial, bool> = HashMap::new();
    let toggle = |t: AdmissibleMonomial, acc: &mut HashMap<AdmissibleMonomial, bool>| {
        let e = acc.entry(t).or_insert(false);
        *e = !*e;
    };
    for word in adem_pair(k, exps[0]).iter() {
        match word.as_slice() {
            [s] => {
                for t in normalize_left(*s, &tail).iter() {
                    toggle(t.clone(), &mut acc);
                }
            }
            [s, c] => {
                for mid in normalize_left(*c, &tail).iter() {
                    for t in normalize_left(*s, mid).iter() {
                        toggle(t.clone(), &mut acc);
                    }
                }
            }
            _ => unreachable!("pair expansion words have length 1 or 2"),
        }
    }
    let mut out: Vec<AdmissibleMonomial> =
        acc.into_iter().filter(|(_, on)| *on).map(|(t, _)| t).collect();
    out.sort();
    out
}

/// Serialize the pair cache so a CLI run can persist it. Keys are the pair
/// itself, which makes the file content-addressed and safe to delete.
pub fn pair_cache_json() -> String {
    let guard = pair_cache().read().unwrap();
    let mut entries: Vec<(u32, u32, Vec<Vec<u32>>)> = guard
        .iter()
        .map(|(&(a, b), v)| (a, b, v.as_ref().clone()))
        .collect();
    entries.sort();
    serde_json::to_string(&entries).expect("pair cache serialization")
}

/// Install previously saved pair expansions. Entries that fail validation
/// are ignored rather than trusted.
pub fn seed_pair_cache_json(json: &str) -> usize {
    let Ok(entries) = serde_json::from_str::<Vec<(u32, u32, Vec<Vec<u32>>)>>(json) else {
        return 0;
    };
    let mut installed = 0;
    let mut guard = pair_cache().write().unwrap();
    for (a, b, words) in entries {
        if a >= 1 && b >= 1 && a < 2 * b && words.iter().all(|w| super::is_admissible(w)) {
            guard.entry((a, b)).or_insert_with(|| Arc::new(words));
            installed += 1;
        }
    }
    installed
}

/// Load a cache file if it exists; see [`seed_pair_cache_json`].
pub fn load_pair_cache(path: &std::path::Path) -> usize {
    match std::fs::read_to_string(path) {
        Ok(text) => seed_pair_cache_json(&text),
        Err(_) => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::adem_normalize;

    #[test]
    fn pair_expansion_sq1_sq1() {
        // Sq^1 Sq^1: c = 0 term has binom(0, 1) = 0, so the expansion is empty
        assert!(adem_pair(1, 1).is_empty());
    }

    #[test]
    fn pair_expansion_sq2_sq2() {
        let terms = adem_pair(2, 2);
        assert_eq!(terms.as_slice(), &[vec![3, 1]]);
    }

    #[test]
    fn cache_roundtrip() {
        adem_pair(3, 2);
        adem_pair(2, 3);
        let json = pair_cache_json();
        assert!(seed_pair_cache_json(&json) >= 2);
        // seeding twice is idempotent
        seed_pair_cache_json(&json);
        assert_eq!(adem_normalize(&[2, 3]).num_terms(), 2);
    }
}
