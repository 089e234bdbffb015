//! The mod-2 Steenrod algebra in the admissible basis.
//!
//! Elements are GF(2)-sums of admissible monomials `Sq^{i_1} … Sq^{i_m}`
//! (each `i_k >= 2 i_{k+1}`). Products are rewritten into this normal form
//! with the Adem relations; the polynomial action in [`poly`] serves as an
//! independent oracle for the rewriting.

mod adem;
pub mod parse;
pub mod poly;
pub mod wall;

pub use adem::{load_pair_cache, pair_cache_json, seed_pair_cache_json};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// `C(m, k) mod 2` by Lucas: odd exactly when the bits of `k` sit inside `m`.
#[inline]
pub(crate) fn binom_mod2(m: u64, k: u64) -> bool {
    k <= m && (m & k) == k
}

/// An admissible monomial `Sq^{i_1} … Sq^{i_m}`; the empty sequence is the
/// unit. Admissibility (`i_k >= 2 i_{k+1}`, entries positive) is enforced at
/// construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleMonomial {
    exps: Vec<u32>,
}

impl AdmissibleMonomial {
    pub fn unit() -> Self {
        AdmissibleMonomial { exps: Vec::new() }
    }

    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if !is_admissible(&exps) {
            return Err(Error::Usage(format!("{exps:?} is not admissible")));
        }
        Ok(AdmissibleMonomial { exps })
    }

    /// Unchecked constructor for internal callers that guarantee shape.
    pub(crate) fn new_unchecked(exps: Vec<u32>) -> Self {
        debug_assert!(is_admissible(&exps));
        AdmissibleMonomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Excess `i_1 - i_2 - … - i_m`; zero for the unit.
    pub fn excess(&self) -> i64 {
        match self.exps.split_first() {
            None => 0,
            Some((&head, tail)) => {
                head as i64 - tail.iter().map(|&x| x as i64).sum::<i64>()
            }
        }
    }
}

impl fmt::Debug for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sq{:?}", self.exps)
    }
}

pub fn is_admissible(exps: &[u32]) -> bool {
    exps.iter().all(|&x| x >= 1) && exps.windows(2).all(|w| w[0] >= 2 * w[1])
}

/// Excess of a not-necessarily-admissible word, same formula.
pub fn word_excess(word: &[u32]) -> i64 {
    match word.split_first() {
        None => 0,
        Some((&head, tail)) => head as i64 - tail.iter().map(|&x| x as i64).sum::<i64>(),
    }
}

/// A homogeneous element of the Steenrod algebra: a GF(2)-set of admissible
/// monomials of one common degree. The empty set is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SteenrodElement {
    terms: BTreeSet<AdmissibleMonomial>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        SteenrodElement {
            terms: BTreeSet::new(),
        }
    }

    pub fn unit() -> Self {
        SteenrodElement::from_monomial(AdmissibleMonomial::unit())
    }

    pub fn sq(k: u32) -> Self {
        if k == 0 {
            SteenrodElement::unit()
        } else {
            SteenrodElement::from_monomial(AdmissibleMonomial::new_unchecked(vec![k]))
        }
    }

    pub fn from_monomial(m: AdmissibleMonomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        SteenrodElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = AdmissibleMonomial>) -> Result<Self> {
        let mut e = SteenrodElement::zero();
        for t in terms {
            e.toggle(t);
        }
        if let Some(d) = e.degree() {
            if e.terms.iter().any(|t| t.degree() != d) {
                return Err(Error::Usage("terms of mixed degree".into()));
            }
        }
        Ok(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().unwrap().is_unit()
    }

    /// Common degree of the terms; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().next().map(AdmissibleMonomial::degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = &AdmissibleMonomial> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, m: &AdmissibleMonomial) -> bool {
        self.terms.contains(m)
    }

    fn toggle(&mut self, m: AdmissibleMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// GF(2) sum.
    pub fn add(&self, other: &SteenrodElement) -> SteenrodElement {
        let mut out = self.clone();
        for t in &other.terms {
            out.toggle(t.clone());
        }
        out
    }
}

impl fmt::Debug for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", parse::print_element(self))
    }
}

/// Rewrite an arbitrary word `Sq^{w_1} … Sq^{w_m}` into the admissible
/// basis, expanding the leftmost inadmissible pair first. Entries equal to 0
/// act as the unit and are dropped.
pub fn adem_normalize(word: &[u32]) -> SteenrodElement {
    let mut acc = SteenrodElement::unit();
    for &letter in word.iter().rev() {
        if letter == 0 {
            continue;
        }
        acc = apply_sq_left(letter, &acc);
    }
    acc
}

/// Left multiplication `Sq^k · e` in normal form.
pub fn apply_sq_left(k: u32, e: &SteenrodElement) -> SteenrodElement {
    if k == 0 {
        return e.clone();
    }
    let mut out = SteenrodElement::zero();
    for t in &e.terms {
        for m in adem::normalize_left(k, t).iter() {
            out.toggle(m.clone());
        }
    }
    out
}

/// Product in the admissible basis; GF(2)-bilinear and associative.
pub fn multiply(a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
    let mut out = SteenrodElement::zero();
    for ta in &a.terms {
        let mut partial = b.clone();
        for &letter in ta.exponents().iter().rev() {
            partial = apply_sq_left(letter, &partial);
        }
        out = out.add(&partial);
    }
    out
}

/// All admissible monomials of the given degree, in lexicographic order on
/// the exponent sequences. Cached; the table is shared engine-wide.
pub fn admissibles_of_degree(degree: u32) -> Arc<Vec<AdmissibleMonomial>> {
    static CACHE: OnceLock<RwLock<Vec<Option<Arc<Vec<AdmissibleMonomial>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(Vec::new()));
    {
        let guard = cache.read().unwrap();
        if let Some(Some(hit)) = guard.get(degree as usize) {
            return Arc::clone(hit);
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    enumerate_admissible(degree, u32::MAX, &mut prefix, &mut out);
    out.sort();
    let arc = Arc::new(out);
    let mut guard = cache.write().unwrap();
    if guard.len() <= degree as usize {
        guard.resize(degree as usize + 1, None);
    }
    guard[degree as usize] = Some(Arc::clone(&arc));
    arc
}

fn enumerate_admissible(
    remaining: u32,
    max_first: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<AdmissibleMonomial>,
) {
    if remaining == 0 {
        out.push(AdmissibleMonomial::new_unchecked(prefix.clone()));
        return;
    }
    // next entry i must satisfy i <= max_first and leave an admissible tail:
    // the tail sums to remaining - i with every entry <= i/2, hence
    // remaining - i <= i (sum of a geometric-type chain) is not a valid cut;
    // we simply recurse with the exact bound.
    let hi = remaining.min(max_first);
    for i in (1..=hi).rev() {
        let tail = remaining - i;
        // tail entries are bounded by i/2; the most a chain below i/2 can
        // sum to is i/2 + i/4 + ... < i, so prune when tail >= i.
        if tail >= i {
            continue;
        }
        prefix.push(i);
        enumerate_admissible(tail, i / 2, prefix, out);
        prefix.pop();
    }
}

/// Index of a monomial within `admissibles_of_degree(d)`.
pub fn admissible_index(m: &AdmissibleMonomial) -> usize {
    let list = admissibles_of_degree(m.degree());
    list.binary_search(m).expect("admissible monomial not in table")
}

/// Vector of `e` in the admissible basis of its degree.
pub fn element_to_vector(e: &SteenrodElement, degree: u32) -> crate::f2::BitVec {
    let list = admissibles_of_degree(degree);
    let mut v = crate::f2::BitVec::zeros(list.len());
    for t in e.terms() {
        assert_eq!(t.degree(), degree, "element degree mismatch");
        v.set(list.binary_search(t).unwrap(), true);
    }
    v
}

pub fn vector_to_element(v: &crate::f2::BitVec, degree: u32) -> SteenrodElement {
    let list = admissibles_of_degree(degree);
    SteenrodElement::from_terms(v.ones().into_iter().map(|i| list[i].clone())).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(exps: &[u32]) -> AdmissibleMonomial {
        AdmissibleMonomial::new(exps.to_vec()).unwrap()
    }

    #[test]
    fn excess_examples() {
        assert_eq!(mono(&[4, 2, 1]).excess(), 1);
        assert_eq!(AdmissibleMonomial::unit().excess(), 0);
        assert_eq!(mono(&[7]).excess(), 7);
    }

    #[test]
    fn admissibility_rejects_bad_words() {
        assert!(AdmissibleMonomial::new(vec![2, 2]).is_err());
        assert!(AdmissibleMonomial::new(vec![1, 0]).is_err());
        assert!(AdmissibleMonomial::new(vec![5, 2, 1]).is_ok());
    }

    #[test]
    fn normalize_basic_relations() {
        // Sq^1 Sq^1 = 0
        assert!(adem_normalize(&[1, 1]).is_zero());
        // Sq^2 Sq^2 = Sq^3 Sq^1
        let e = adem_normalize(&[2, 2]);
        assert_eq!(e.num_terms(), 1);
        assert!(e.contains(&mono(&[3, 1])));
        // Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1
        let e = adem_normalize(&[2, 3]);
        assert_eq!(e.num_terms(), 2);
        assert!(e.contains(&mono(&[5])));
        assert!(e.contains(&mono(&[4, 1])));
        // already admissible words pass through
        let e = adem_normalize(&[3]);
        assert!(e.contains(&mono(&[3])) && e.num_terms() == 1);
        // zero entries act as the unit
        assert_eq!(adem_normalize(&[0, 3, 0]), adem_normalize(&[3]));
    }

    #[test]
    fn multiply_matches_normalization() {
        let sq = SteenrodElement::sq;
        assert!(multiply(&sq(1), &sq(1)).is_zero());
        assert_eq!(multiply(&sq(2), &sq(2)), adem_normalize(&[2, 2]));
        let x = adem_normalize(&[5, 2]);
        assert_eq!(multiply(&SteenrodElement::unit(), &x), x);
        assert_eq!(multiply(&x, &SteenrodElement::unit()), x);
    }

    #[test]
    fn degree_preserved_by_normalization() {
        for word in [vec![2, 2], vec![3, 5, 1], vec![1, 2, 4], vec![6, 6]] {
            let total: u32 = word.iter().sum();
            let e = adem_normalize(&word);
            for t in e.terms() {
                assert_eq!(t.degree(), total);
            }
        }
    }

    #[test]
    fn admissible_enumeration_counts() {
        // degree 0: unit; degree 1: Sq^1; degree 2: Sq^2;
        // degree 3: Sq^3, Sq^2 Sq^1
        assert_eq!(admissibles_of_degree(0).len(), 1);
        assert_eq!(admissibles_of_degree(1).len(), 1);
        assert_eq!(admissibles_of_degree(2).len(), 1);
        assert_eq!(admissibles_of_degree(3).len(), 2);
        assert_eq!(admissibles_of_degree(7).len(), 4); // 7; 6,1; 5,2; 4,2,1
    }
}
