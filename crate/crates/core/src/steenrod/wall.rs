//! Wall's generators-only presentation: the blocks `Q^n_k`, membership in
//! the finite subalgebras `A(n)`, and the decomposition of `Sq^{2^i} Sq^{2^j}`
//! along left factors `Sq^{2^{i-t}}`.

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSpan};

use super::{
    admissibles_of_degree, adem_normalize, apply_sq_left, element_to_vector, multiply,
    vector_to_element, AdmissibleMonomial, SteenrodElement,
};

/// `Q^n_k = Sq^{2^k} Sq^{2^{k+1}} … Sq^{2^n}` in the admissible basis.
pub fn wall_monomial(n: u32, k: u32) -> Result<SteenrodElement> {
    if n < k {
        return Err(Error::Usage(format!("Q^{n}_{k} requires n >= k")));
    }
    let word: Vec<u32> = (k..=n).map(|j| 1u32 << j).collect();
    Ok(adem_normalize(&word))
}

/// A product `Q^{n_0}_{k_0} Q^{n_1}_{k_1} …` with the `(n_j, k_j)` strictly
/// decreasing in lexicographic order; these products form a basis of the
/// algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallMonomial {
    factors: Vec<(u32, u32)>,
}

impl WallMonomial {
    pub fn new(factors: Vec<(u32, u32)>) -> Result<Self> {
        for &(n, k) in &factors {
            if n < k {
                return Err(Error::Usage(format!("factor Q^{n}_{k} requires n >= k")));
            }
        }
        if !factors.windows(2).all(|w| w[1] < w[0]) {
            return Err(Error::Usage(
                "Wall factors must strictly decrease lexicographically".into(),
            ));
        }
        Ok(WallMonomial { factors })
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    /// Degree of `Q^n_k` is `2^{n+1} - 2^k`; factors add.
    pub fn degree(&self) -> u32 {
        self.factors
            .iter()
            .map(|&(n, k)| (1u32 << (n + 1)) - (1u32 << k))
            .sum()
    }

    pub fn expand(&self) -> Result<SteenrodElement> {
        let mut acc = SteenrodElement::unit();
        for &(n, k) in &self.factors {
            acc = multiply(&acc, &wall_monomial(n, k)?);
        }
        Ok(acc)
    }
}

/// All Wall monomials of the given degree (for basis tests at small degree).
pub fn wall_monomials_of_degree(degree: u32) -> Vec<WallMonomial> {
    let mut singles = Vec::new();
    let mut n = 0u32;
    // the cheapest block for a given n is Q^n_n of degree 2^n
    while (1u64 << n) <= degree as u64 {
        for k in 0..=n {
            let d = (1u32 << (n + 1)) - (1u32 << k);
            if d <= degree {
                singles.push((n, k, d));
            }
        }
        n += 1;
    }
    // factors strictly decreasing in (n, k); enumerate with the larger pair first
    singles.sort();
    let mut out = Vec::new();
    let mut chosen: Vec<(u32, u32)> = Vec::new();
    fn rec(
        singles: &[(u32, u32, u32)],
        max_idx: usize,
        remaining: u32,
        chosen: &mut Vec<(u32, u32)>,
        out: &mut Vec<WallMonomial>,
    ) {
        if remaining == 0 {
            out.push(WallMonomial {
                factors: chosen.clone(),
            });
            return;
        }
        for idx in (0..max_idx).rev() {
            let (n, k, d) = singles[idx];
            if d > remaining {
                continue;
            }
            chosen.push((n, k));
            rec(singles, idx, remaining - d, chosen, out);
            chosen.pop();
        }
    }
    rec(&singles, singles.len(), degree, &mut chosen, &mut out);
    out
}

/// Degreewise spans of the subalgebra `A(n)` generated by
/// `Sq^1, Sq^2, …, Sq^{2^n}`, in the admissible basis, through `degree_cap`.
pub struct SubalgebraSpan {
    n: u32,
    cap: u32,
    spans: Vec<RowSpan>,
}

impl SubalgebraSpan {
    pub fn build(n: u32, degree_cap: u32) -> Self {
        let gens: Vec<u32> = (0..=n).map(|i| 1u32 << i).collect();
        let mut spans: Vec<RowSpan> = Vec::with_capacity(degree_cap as usize + 1);
        for d in 0..=degree_cap {
            let ambient = admissibles_of_degree(d).len();
            let mut span = RowSpan::empty(ambient);
            if d == 0 {
                span.insert(&element_to_vector(&SteenrodElement::unit(), 0));
            } else {
                // every word in the generators is generator * shorter word,
                // so left-multiplying the lower spans by generators closes up
                for &g in &gens {
                    if g > d {
                        break;
                    }
                    let lower = &spans[(d - g) as usize];
                    for row in lower.basis() {
                        let e = vector_to_element(row, d - g);
                        let prod = apply_sq_left(g, &e);
                        if !prod.is_zero() {
                            span.insert(&element_to_vector(&prod, d));
                        }
                    }
                }
            }
            spans.push(span);
        }
        SubalgebraSpan {
            n,
            cap: degree_cap,
            spans,
        }
    }

    pub fn contains(&self, e: &SteenrodElement) -> bool {
        match e.degree() {
            None => true,
            Some(d) => {
                assert!(d <= self.cap, "degree beyond built cap");
                self.spans[d as usize].contains(&element_to_vector(e, d))
            }
        }
    }

    pub fn generator_bound(&self) -> u32 {
        self.n
    }
}

/// Membership of `e` in `A(n)`; spans are rebuilt per call, so prefer
/// [`SubalgebraSpan`] when testing many elements.
pub fn in_subalgebra(e: &SteenrodElement, n: u32, degree_cap: u32) -> Result<bool> {
    let Some(d) = e.degree() else {
        return Ok(true);
    };
    if d > degree_cap {
        return Err(Error::Usage(format!(
            "element degree {d} exceeds cap {degree_cap}"
        )));
    }
    Ok(SubalgebraSpan::build(n, degree_cap).contains(e))
}

/// Solve `Sq^{2^i} Sq^{2^j} = sum_{t=1}^{i} Sq^{2^{i-t}} m^t` for the family
/// `m^t` (degree of `m^t` is `2^i + 2^j - 2^{i-t}`), returning the
/// pivot-canonical solution of the underlying linear system.
pub fn wall_m_decomposition(i: u32, j: u32) -> Result<Vec<(u32, SteenrodElement)>> {
    if !(j + 2 <= i || j == i) {
        return Err(Error::Usage(format!(
            "wall decomposition needs j <= i-2 or j = i, got ({i}, {j})"
        )));
    }
    let total = (1u32 << i) + (1u32 << j);
    let target = adem_normalize(&[1 << i, 1 << j]);
    let rhs = element_to_vector(&target, total);

    // columns: for each t and each admissible monomial of the right degree,
    // the expansion of Sq^{2^{i-t}} * monomial
    let mut cols: Vec<BitVec> = Vec::new();
    let mut col_keys: Vec<(u32, AdmissibleMonomial)> = Vec::new();
    for t in 1..=i {
        let d_t = total - (1u32 << (i - t));
        for m in admissibles_of_degree(d_t).iter() {
            let prod = apply_sq_left(1 << (i - t), &SteenrodElement::from_monomial(m.clone()));
            cols.push(element_to_vector(&prod, total));
            col_keys.push((t, m.clone()));
        }
    }
    let ambient = admissibles_of_degree(total).len();
    let a = BitMatrix::from_cols(&cols, ambient);
    let x = a
        .solve(&rhs)?
        .ok_or_else(|| Error::Internal(format!("no Wall decomposition for ({i}, {j})")))?;

    let mut parts: Vec<SteenrodElement> = vec![SteenrodElement::zero(); i as usize + 1];
    for idx in x.ones() {
        let (t, ref m) = col_keys[idx];
        parts[t as usize] = parts[t as usize].add(&SteenrodElement::from_monomial(m.clone()));
    }
    Ok((1..=i).map(|t| (t, parts[t as usize].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wall_blocks() {
        // Q^0_0 = Sq^1
        assert_eq!(wall_monomial(0, 0).unwrap(), adem_normalize(&[1]));
        // Q^1_1 = Sq^2
        assert_eq!(wall_monomial(1, 1).unwrap(), adem_normalize(&[2]));
        // Q^1_0 = Sq^1 Sq^2 normalized
        assert_eq!(wall_monomial(1, 0).unwrap(), adem_normalize(&[1, 2]));
        assert!(wall_monomial(0, 1).is_err());
    }

    #[test]
    fn subalgebra_membership() {
        // Sq^1 generates A(0); its square is zero so degree 2 is empty
        assert!(in_subalgebra(&adem_normalize(&[1]), 0, 4).unwrap());
        assert!(!in_subalgebra(&adem_normalize(&[2]), 0, 4).unwrap());
        assert!(in_subalgebra(&adem_normalize(&[2]), 1, 4).unwrap());
    }

    #[test]
    fn commutator_lands_in_lower_subalgebra() {
        // Sq^{2^i} Sq^{2^j} + Sq^{2^j} Sq^{2^i} lies in A(i-1) for j <= i-2
        for (i, j) in [(2u32, 0u32), (3, 0), (3, 1)] {
            let a = adem_normalize(&[1 << i, 1 << j]);
            let b = adem_normalize(&[1 << j, 1 << i]);
            let comm = a.add(&b);
            let cap = (1 << i) + (1 << j);
            assert!(
                in_subalgebra(&comm, i - 1, cap).unwrap(),
                "commutator ({i},{j}) escapes A({})",
                i - 1
            );
        }
    }

    #[test]
    fn wall_monomials_form_a_basis_in_small_degrees() {
        for d in 1..=12u32 {
            let walls = wall_monomials_of_degree(d);
            let ambient = admissibles_of_degree(d).len();
            let mut span = RowSpan::empty(ambient);
            let mut independent = 0;
            for w in &walls {
                assert_eq!(w.degree(), d);
                let e = w.expand().unwrap();
                if span.insert(&element_to_vector(&e, d)) {
                    independent += 1;
                }
            }
            assert_eq!(independent, walls.len(), "dependence among Wall monomials at degree {d}");
            assert_eq!(span.dim(), ambient, "Wall span short at degree {d}");
        }
    }

    #[test]
    fn wall_decomposition_identities() {
        for (i, j) in [(2u32, 0u32), (2, 2), (3, 0), (3, 1), (3, 3)] {
            let parts = wall_m_decomposition(i, j).unwrap();
            let mut sum = SteenrodElement::zero();
            for &(t, ref m) in &parts {
                if let Some(d) = m.degree() {
                    assert_eq!(d, (1 << i) + (1 << j) - (1 << (i - t)));
                }
                sum = sum.add(&apply_sq_left(1 << (i - t), m));
            }
            assert_eq!(sum, adem_normalize(&[1 << i, 1 << j]), "({i},{j})");
        }
        assert!(wall_m_decomposition(2, 1).is_err());
    }
}
