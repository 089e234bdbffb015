//! Duality into the Brown-Gitler modules: `Hom(M, J(n))` is the dual of
//! `M^n`, and a functional on `M^n` is realized as an actual map by solving
//! the commutation constraints degree by degree from the top. `J(n)` has its
//! socle concentrated in degree `n`, which makes each step uniquely
//! solvable.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::steenrod::SteenrodElement;

use super::{brown_gitler, Module, ModuleMap};

/// The Hom-space `Hom(M, J(n))`, realized lazily per functional.
pub struct HomToJ {
    m: Module,
    n: u32,
    j: Module,
}

/// `Hom(M, J(n))`; `M` must be complete or truncated with window >= n.
pub fn hom_to_j(m: &Module, n: u32) -> Result<HomToJ> {
    if m.truncated() && m.window() < n {
        return Err(Error::Usage(format!(
            "Hom(-, J({n})) needs window >= {n}, module {} has {}",
            m.name(),
            m.window()
        )));
    }
    Ok(HomToJ {
        m: Arc::clone(m),
        n,
        j: brown_gitler(n)?,
    })
}

impl HomToJ {
    /// `dim Hom(M, J(n)) = dim M^n`.
    pub fn dim(&self) -> usize {
        self.m.dim_at(self.n).unwrap_or(0)
    }

    pub fn target(&self) -> &Module {
        &self.j
    }

    /// Realize the map whose degree-`n` component is the functional `f`
    /// (`x -> f(x) * x_0^n`). Components below `n` are the unique solutions
    /// of the commutation constraints, solved top-down.
    pub fn realize(&self, f: &BitVec) -> Result<ModuleMap> {
        let m = &self.m;
        let j = &self.j;
        let n = self.n;
        let dim_mn = m.dim_at(n).unwrap_or(0);
        if f.len() != dim_mn {
            return Err(Error::DimMismatch(format!(
                "functional length {} vs dim M^{n} = {dim_mn}",
                f.len()
            )));
        }
        let window = m.window().min(j.window());
        let mut blocks: Vec<Option<BitMatrix>> = vec![None; window as usize + 1];
        for d in (0..=window).rev() {
            if d > n {
                blocks[d as usize] = Some(BitMatrix::zero(0, m.dim(d)));
                continue;
            }
            if d == n {
                // J(n)^n is one-dimensional, spanned by the top class
                debug_assert_eq!(j.dim(n), 1);
                let mut b = BitMatrix::zero(1, m.dim(n));
                for c in f.ones() {
                    b.set(0, c, true);
                }
                blocks[d as usize] = Some(b);
                continue;
            }
            if j.dim(d) == 0 || m.dim(d) == 0 {
                blocks[d as usize] = Some(BitMatrix::zero(j.dim(d), m.dim(d)));
                continue;
            }
            // stack Sq^k_J * X = phi_{d+k} * Sq^k_M over k = 1..=n-d
            let mut lhs: Option<BitMatrix> = None;
            let mut rhs: Option<BitMatrix> = None;
            for k in 1..=(n - d) {
                let jk = j.sq(k, d);
                let upper = blocks[(d + k) as usize].as_ref().unwrap();
                let mk = m.sq(k, d);
                let r = upper.mul(&mk);
                lhs = Some(match lhs {
                    None => jk,
                    Some(s) => s.vstack(&jk),
                });
                rhs = Some(match rhs {
                    None => r,
                    Some(s) => s.vstack(&r),
                });
            }
            let (lhs, rhs) = (lhs.unwrap(), rhs.unwrap());
            // uniqueness: the stacked operator matrix must be injective on
            // J(n)^d (the socle sits in degree n only)
            if !lhs.kernel_basis().is_empty() {
                return Err(Error::Internal(format!(
                    "J({n}) degree {d}: operations have a joint kernel"
                )));
            }
            let x = lhs.solve_matrix(&rhs)?.ok_or_else(|| {
                Error::Internal(format!(
                    "no solution realizing a functional into J({n}) at degree {d}"
                ))
            })?;
            blocks[d as usize] = Some(x);
        }
        let blocks: Vec<BitMatrix> = blocks.into_iter().map(Option::unwrap).collect();
        ModuleMap::new(Arc::clone(m), Arc::clone(j), blocks)
    }

    /// Realize the dual basis of `M^n`: one map per coordinate.
    pub fn basis(&self) -> Result<Vec<ModuleMap>> {
        (0..self.dim())
            .map(|i| self.realize(&BitVec::standard(self.dim(), i)))
            .collect()
    }
}

/// The map `•θ : J(n) -> J(m)` determined by a Steenrod operation of degree
/// `n - m`: its defining functional sends `x ∈ J(n)^m` to the coefficient of
/// the top class in `θ · x`.
pub fn bullet_map(theta: &SteenrodElement, n: u32, m: u32) -> Result<ModuleMap> {
    if m > n {
        return Err(Error::Usage(format!("bullet map needs n >= m, got {n} < {m}")));
    }
    if let Some(d) = theta.degree() {
        if d != n - m {
            return Err(Error::Usage(format!(
                "operation degree {d} does not match {n} - {m}"
            )));
        }
    }
    let jn = brown_gitler(n)?;
    let f = bullet_functional(&jn, theta, n, m);
    hom_to_j(&jn, m)?.realize(&f)
}

/// The functional on `J(n)^m` attached to `θ`: coefficient of the top class
/// of `J(n)` in `θ · x`.
pub fn bullet_functional(jn: &Module, theta: &SteenrodElement, n: u32, m: u32) -> BitVec {
    let dim = jn.dim(m);
    let mut f = BitVec::zeros(dim);
    debug_assert_eq!(jn.dim(n), 1);
    for i in 0..dim {
        let image = theta
            .terms()
            .fold(BitVec::zeros(1), |mut acc, t| {
                let v = jn.apply_word(t.exponents(), m, &BitVec::standard(dim, i));
                acc.xor_assign(&v);
                acc
            });
        if image.get(0) {
            f.set(i, true);
        }
    }
    f
}

/// Dual-basis functionals for a list of independent vectors: `f_i(v_j) =
/// delta_ij`, pivot-canonical among all choices.
pub fn dual_functionals(vectors: &[BitVec], ambient: usize) -> Result<Vec<BitVec>> {
    let b = BitMatrix::from_cols(vectors, ambient);
    let bt = b.transpose();
    let mut out = Vec::with_capacity(vectors.len());
    for i in 0..vectors.len() {
        let e = BitVec::standard(vectors.len(), i);
        let f = bt
            .solve(&e)?
            .ok_or_else(|| Error::Usage("vectors are dependent".into()))?;
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::umod::{same_module_structure, sigma_simple};

    #[test]
    fn hom_sigma_f2_into_j1() {
        let s = sigma_simple(1).unwrap();
        let h = hom_to_j(&s, 1).unwrap();
        assert_eq!(h.dim(), 1);
        let map = h.realize(&BitVec::standard(1, 0)).unwrap();
        assert!(map.is_module_map());
        assert!(map.is_injective());
        // Sigma F2 and J(1) coincide, so this is the identity
        assert!(same_module_structure(map.source(), map.target()));
    }

    #[test]
    fn hom_j2_into_j1_is_bullet_sq1() {
        let j2 = brown_gitler(2).unwrap();
        let h = hom_to_j(&j2, 1).unwrap();
        assert_eq!(h.dim(), 1); // dim J(2)^1 = 1
        let map = h.realize(&BitVec::standard(1, 0)).unwrap();
        assert!(map.is_module_map());
        let bullet = bullet_map(&SteenrodElement::sq(1), 2, 1).unwrap();
        for d in 0..=map.window() {
            assert_eq!(map.block(d), bullet.block(d));
        }
    }

    #[test]
    fn bullet_zero_degree_is_identity_functional() {
        let id = bullet_map(&SteenrodElement::unit(), 3, 3).unwrap();
        assert!(id.is_module_map());
        assert!(id.is_injective() && id.is_surjective());
    }
}
