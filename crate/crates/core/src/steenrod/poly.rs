//! The action on truncated polynomial algebras `F2[u_1..u_k]`.
//!
//! Generators carry `Sq^0 u = u`, `Sq^1 u = u^2`, `Sq^{>=2} u = 0`; on a
//! power this collapses to `Sq^j(u^e) = binom(e, j) u^{e+j}` and the Cartan
//! formula distributes a total square across a monomial. This path never
//! touches the Adem rewriter, which is what makes it an independent oracle
//! for normalization.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::{binom_mod2, SteenrodElement};

/// A polynomial over GF(2) in `vars` variables; monomials are exponent
/// vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyF2 {
    vars: usize,
    terms: BTreeSet<Vec<u32>>,
}

impl PolyF2 {
    pub fn zero(vars: usize) -> Self {
        PolyF2 {
            vars,
            terms: BTreeSet::new(),
        }
    }

    pub fn monomial(vars: usize, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), vars);
        let mut terms = BTreeSet::new();
        terms.insert(exps.to_vec());
        PolyF2 { vars, terms }
    }

    /// The product `u_1 u_2 … u_k` of all variables.
    pub fn product_of_variables(vars: usize) -> Self {
        PolyF2::monomial(vars, &vec![1; vars])
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|m| m.iter().sum()).max()
    }

    pub fn add(&self, other: &PolyF2) -> PolyF2 {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for t in &other.terms {
            out.toggle(t.clone());
        }
        out
    }

    fn toggle(&mut self, m: Vec<u32>) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }
}

/// `Sq^k` on a polynomial, computed monomial by monomial via the binomial
/// rule per variable.
pub fn sq_on_poly(k: u32, p: &PolyF2) -> PolyF2 {
    let mut out = PolyF2::zero(p.vars);
    for mono in p.terms() {
        distribute(k, mono, 0, &mut vec![0; p.vars.max(1)], &mut out);
    }
    out
}

fn distribute(remaining: u32, mono: &[u32], var: usize, picked: &mut Vec<u32>, out: &mut PolyF2) {
    if var == mono.len() {
        if remaining == 0 {
            let new_mono: Vec<u32> = mono
                .iter()
                .zip(picked.iter())
                .map(|(&e, &j)| e + j)
                .collect();
            out.toggle(new_mono);
        }
        return;
    }
    let e = mono[var];
    let hi = remaining.min(e);
    for j in 0..=hi {
        if binom_mod2(e as u64, j as u64) {
            picked[var] = j;
            distribute(remaining - j, mono, var + 1, picked, out);
        }
    }
    picked[var] = 0;
}

/// Action of a raw word `Sq^{w_1} … Sq^{w_m}` (rightmost letter first).
pub fn word_action(word: &[u32], p: &PolyF2) -> PolyF2 {
    let mut acc = p.clone();
    for &k in word.iter().rev() {
        if k == 0 {
            continue;
        }
        acc = sq_on_poly(k, &acc);
    }
    acc
}

/// Action of a normalized element, term by term. The truncation degree `cap`
/// is a precondition: `deg p + deg e <= cap` or the call is rejected.
pub fn act_on_polynomials(e: &SteenrodElement, p: &PolyF2, cap: u32) -> Result<PolyF2> {
    let pdeg = p.degree().unwrap_or(0);
    let edeg = e.degree().unwrap_or(0);
    if pdeg + edeg > cap {
        return Err(Error::WindowExceeded(format!(
            "action of degree-{edeg} element on degree-{pdeg} polynomial exceeds truncation {cap}"
        )));
    }
    let mut out = PolyF2::zero(p.vars());
    for t in e.terms() {
        out = out.add(&word_action(t.exponents(), p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::adem_normalize;

    #[test]
    fn generator_rules() {
        let u = PolyF2::monomial(1, &[1]);
        assert_eq!(sq_on_poly(1, &u), PolyF2::monomial(1, &[2]));
        assert!(sq_on_poly(2, &u).is_zero());
        let e = adem_normalize(&[1]);
        assert_eq!(
            act_on_polynomials(&e, &u, 10).unwrap(),
            PolyF2::monomial(1, &[2])
        );
    }

    #[test]
    fn cartan_on_two_variables() {
        // Sq^2(u1 u2) = u1^2 u2^2: the only surviving Cartan term is
        // Sq^1 u1 * Sq^1 u2
        let p = PolyF2::monomial(2, &[1, 1]);
        assert_eq!(sq_on_poly(2, &p), PolyF2::monomial(2, &[2, 2]));
        // Sq^1(u1 u2) = u1^2 u2 + u1 u2^2
        let q = sq_on_poly(1, &p);
        assert_eq!(
            q,
            PolyF2::monomial(2, &[2, 1]).add(&PolyF2::monomial(2, &[1, 2]))
        );
    }

    #[test]
    fn unit_acts_trivially() {
        let p = PolyF2::monomial(3, &[2, 0, 1]);
        let unit = SteenrodElement::unit();
        assert_eq!(act_on_polynomials(&unit, &p, 10).unwrap(), p);
    }

    #[test]
    fn truncation_guard() {
        let p = PolyF2::monomial(1, &[4]);
        let e = adem_normalize(&[4]);
        assert!(act_on_polynomials(&e, &p, 7).is_err());
        assert!(act_on_polynomials(&e, &p, 8).is_ok());
    }
}
