//! Constructors for the named unstable modules.
//!
//! * `J(n)` — Brown-Gitler modules in the polynomial model: weight-`n`
//!   monomials in generators `x_i` of degree 1 and weight `2^i`, with
//!   `Sq^1 x_i = x_{i-1}^2` (and `x_{-1} = 0`) extended by Cartan.
//! * `F(n)` — free unstable modules: basis `Sq^I ι_n` over admissible `I`
//!   of excess at most `n`, truncated at the requested window.
//! * suspensions of the point, truncated `F2[u_1..u_k]`, and the finite
//!   quotients `H(k) = F(1)/Phi^k F(1)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::Result;
use crate::f2::BitMatrix;
use crate::steenrod::{admissibles_of_degree, binom_mod2, AdmissibleMonomial};

use super::{GradedModule, Module};

/// A weight-homogeneous monomial in the `x_i`: sorted `(generator, exponent)`
/// pairs with positive exponents.
type XMonomial = Vec<(u32, u32)>;

fn xmono_degree(m: &XMonomial) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

fn xmono_label(m: &XMonomial) -> String {
    if m.is_empty() {
        return "1".to_string();
    }
    m.iter()
        .map(|&(g, e)| {
            if e == 1 {
                format!("x{g}")
            } else {
                format!("x{g}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// All monomials of weight `n` with exactly `parts` factors: partitions of
/// `n` into `parts` powers of two.
fn xmonomials(n: u32, parts: u32) -> Vec<XMonomial> {
    fn rec(n: u32, parts: u32, max_gen: i64, current: &mut XMonomial, out: &mut Vec<XMonomial>) {
        if parts == 0 {
            if n == 0 {
                let mut mono = current.clone();
                mono.sort();
                out.push(mono);
            }
            return;
        }
        if n == 0 {
            return;
        }
        // choose the exponent of the largest remaining generator first
        let mut g = max_gen;
        while g >= 0 {
            let w = 1u32 << g;
            if w <= n {
                let max_e = (n / w).min(parts);
                for e in (1..=max_e).rev() {
                    current.push((g as u32, e));
                    rec(n - e * w, parts - e, g - 1, current, out);
                    current.pop();
                }
            }
            g -= 1;
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    let max_gen = if n == 0 { -1 } else { n.ilog2() as i64 };
    rec(n, parts, max_gen, &mut current, &mut out);
    out.sort();
    out
}

/// `Sq^k` on an `x`-monomial: choose `j_g <= e_g` raises per generator with
/// `sum j_g = k`, each odd binomial `C(e_g, j_g)`, replacing `x_g^{j_g}` by
/// `x_{g-1}^{2 j_g}`; raises of `x_0` die.
fn sq_on_xmonomial(k: u32, mono: &XMonomial) -> Vec<XMonomial> {
    fn rec(
        k: u32,
        rest: &[(u32, u32)],
        acc: &mut BTreeMap<u32, u32>,
        toggles: &mut HashMap<XMonomial, bool>,
    ) {
        match rest.split_first() {
            None => {
                if k == 0 {
                    let result: XMonomial =
                        acc.iter().map(|(&g, &e)| (g, e)).filter(|&(_, e)| e > 0).collect();
                    let t = toggles.entry(result).or_insert(false);
                    *t = !*t;
                }
            }
            Some((&(g, e), tail)) => {
                let hi = if g == 0 { 0 } else { k.min(e) };
                for j in 0..=hi {
                    if !binom_mod2(e as u64, j as u64) {
                        continue;
                    }
                    if j > 0 {
                        *acc.entry(g - 1).or_insert(0) += 2 * j;
                    }
                    if e - j > 0 {
                        *acc.entry(g).or_insert(0) += e - j;
                    }
                    rec(k - j, tail, acc, toggles);
                    if j > 0 {
                        let v = acc.get_mut(&(g - 1)).unwrap();
                        *v -= 2 * j;
                        if *v == 0 {
                            acc.remove(&(g - 1));
                        }
                    }
                    if e - j > 0 {
                        let v = acc.get_mut(&g).unwrap();
                        *v -= e - j;
                        if *v == 0 {
                            acc.remove(&g);
                        }
                    }
                }
            }
        }
    }
    let mut toggles = HashMap::new();
    let mut acc = BTreeMap::new();
    rec(k, mono, &mut acc, &mut toggles);
    toggles
        .into_iter()
        .filter(|(_, on)| *on)
        .map(|(m, _)| m)
        .collect()
}

/// The Brown-Gitler module `J(n)`; `J(0)` is GF(2) in degree 0.
pub fn brown_gitler(n: u32) -> Result<Module> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Module>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.read().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }

    let window = n;
    let len = window as usize + 1;
    let mut basis: Vec<Vec<XMonomial>> = Vec::with_capacity(len);
    for d in 0..=window {
        if n == 0 {
            basis.push(if d == 0 { vec![Vec::new()] } else { Vec::new() });
        } else {
            basis.push(if d == 0 { Vec::new() } else { xmonomials(n, d) });
        }
    }
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = basis
        .iter()
        .map(|b| b.iter().map(xmono_label).collect())
        .collect();
    let index: Vec<HashMap<&XMonomial, usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    let mut action: BTreeMap<(u32, u32), BitMatrix> = BTreeMap::new();
    for k in 1..=window {
        for d in 0..=(window - k) {
            if dims[d as usize] == 0 || dims[(d + k) as usize] == 0 {
                continue;
            }
            let mut mat = BitMatrix::zero(dims[(d + k) as usize], dims[d as usize]);
            for (col, mono) in basis[d as usize].iter().enumerate() {
                for image in sq_on_xmonomial(k, mono) {
                    debug_assert_eq!(xmono_degree(&image), d + k);
                    let row = index[(d + k) as usize][&image];
                    mat.set(row, col, !mat.get(row, col));
                }
            }
            if !mat.is_zero() {
                action.insert((k, d), mat);
            }
        }
    }
    let module = Arc::new(GradedModule::assemble(
        format!("J({n})"),
        window,
        false,
        dims,
        labels,
        action,
    )?);
    cache
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&module));
    Ok(module)
}

/// Basis of `F(n)` in degree `d`: admissible monomials of degree `d - n`
/// and excess at most `n` (empty list below the generator).
pub fn free_basis(n: u32, d: u32) -> Vec<AdmissibleMonomial> {
    if d < n {
        return Vec::new();
    }
    admissibles_of_degree(d - n)
        .iter()
        .filter(|m| m.excess() <= n as i64)
        .cloned()
        .collect()
}

/// The free unstable module `F(n)` truncated at `window`.
pub fn free_module(n: u32, window: u32) -> Result<Module> {
    assert!(n >= 1 && window >= n, "free module needs window >= n >= 1");
    let len = window as usize + 1;
    let mut basis: Vec<Vec<AdmissibleMonomial>> = Vec::with_capacity(len);
    for d in 0..=window {
        basis.push(free_basis(n, d));
    }
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = basis
        .iter()
        .map(|b| {
            b.iter()
                .map(|m| {
                    if m.is_unit() {
                        format!("i{n}")
                    } else {
                        let exps: Vec<String> =
                            m.exponents().iter().map(u32::to_string).collect();
                        format!("Sq[{}]i{n}", exps.join(","))
                    }
                })
                .collect()
        })
        .collect();
    let mut action: BTreeMap<(u32, u32), BitMatrix> = BTreeMap::new();
    for k in 1..=window {
        for d in n..=(window - k) {
            if dims[d as usize] == 0 || dims[(d + k) as usize] == 0 {
                continue;
            }
            let target = &basis[(d + k) as usize];
            let mut mat = BitMatrix::zero(dims[(d + k) as usize], dims[d as usize]);
            for (col, mono) in basis[d as usize].iter().enumerate() {
                for term in crate::steenrod::apply_sq_left(
                    k,
                    &crate::steenrod::SteenrodElement::from_monomial(mono.clone()),
                )
                .terms()
                {
                    if term.excess() <= n as i64 {
                        let row = target
                            .binary_search(term)
                            .expect("normalized term missing from basis");
                        mat.set(row, col, !mat.get(row, col));
                    }
                }
            }
            if !mat.is_zero() {
                action.insert((k, d), mat);
            }
        }
    }
    Ok(Arc::new(GradedModule::assemble(
        format!("F({n})"),
        window,
        true,
        dims,
        labels,
        action,
    )?))
}

/// GF(2) concentrated in degree 0.
pub fn point_module() -> Module {
    Arc::new(
        GradedModule::assemble(
            "F2",
            0,
            false,
            vec![1],
            vec![vec!["1".to_string()]],
            BTreeMap::new(),
        )
        .unwrap(),
    )
}

/// `Sigma^n F2`: one class in degree `n`, labelled like the top class of
/// `J(n)` so that `sigma_simple(1)` coincides with `brown_gitler(1)`.
pub fn sigma_simple(n: u32) -> Result<Module> {
    let len = n as usize + 1;
    let mut dims = vec![0usize; len];
    let mut labels = vec![Vec::new(); len];
    dims[n as usize] = 1;
    labels[n as usize] = vec![if n == 0 {
        "1".to_string()
    } else if n == 1 {
        "x0".to_string()
    } else {
        format!("x0^{n}")
    }];
    Ok(Arc::new(GradedModule::assemble(
        if n == 0 { "F2".to_string() } else { format!("Sigma^{n} F2") },
        n,
        false,
        dims,
        labels,
        BTreeMap::new(),
    )?))
}

/// Truncated `F2[u_1..u_k]` with the squaring action; reduced and injective
/// as an unstable module, used as a test bed.
pub fn cohomology_bv(k: u32, window: u32) -> Result<Module> {
    assert!(k >= 1 && window >= 1);
    let vars = k as usize;
    let len = window as usize + 1;
    let mut basis: Vec<Vec<Vec<u32>>> = Vec::with_capacity(len);
    for d in 0..=window {
        let mut monos = Vec::new();
        let mut current = vec![0u32; vars];
        fn rec(d: u32, var: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if var + 1 == current.len() {
                current[var] = d;
                out.push(current.clone());
                current[var] = 0;
                return;
            }
            for e in 0..=d {
                current[var] = e;
                rec(d - e, var + 1, current, out);
            }
            current[var] = 0;
        }
        rec(d, 0, &mut current, &mut monos);
        monos.sort();
        basis.push(monos);
    }
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = basis
        .iter()
        .map(|b| {
            b.iter()
                .map(|m| {
                    let parts: Vec<String> = m
                        .iter()
                        .enumerate()
                        .filter(|&(_, &e)| e > 0)
                        .map(|(v, &e)| {
                            if e == 1 {
                                format!("u{}", v + 1)
                            } else {
                                format!("u{}^{e}", v + 1)
                            }
                        })
                        .collect();
                    if parts.is_empty() {
                        "1".to_string()
                    } else {
                        parts.join("*")
                    }
                })
                .collect()
        })
        .collect();
    let index: Vec<HashMap<&Vec<u32>, usize>> = basis
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    let mut action: BTreeMap<(u32, u32), BitMatrix> = BTreeMap::new();
    for sqk in 1..=window {
        for d in 0..=(window - sqk) {
            if dims[d as usize] == 0 {
                continue;
            }
            let mut mat = BitMatrix::zero(dims[(d + sqk) as usize], dims[d as usize]);
            for (col, mono) in basis[d as usize].iter().enumerate() {
                // distribute sqk over variables with odd binomials
                fn rec(
                    k: u32,
                    var: usize,
                    mono: &[u32],
                    picked: &mut Vec<u32>,
                    out: &mut Vec<Vec<u32>>,
                ) {
                    if var == mono.len() {
                        if k == 0 {
                            out.push(
                                mono.iter().zip(picked.iter()).map(|(&e, &j)| e + j).collect(),
                            );
                        }
                        return;
                    }
                    let hi = k.min(mono[var]);
                    for j in 0..=hi {
                        if binom_mod2(mono[var] as u64, j as u64) {
                            picked[var] = j;
                            rec(k - j, var + 1, mono, picked, out);
                        }
                    }
                    picked[var] = 0;
                }
                let mut images = Vec::new();
                let mut picked = vec![0u32; vars];
                rec(sqk, 0, mono, &mut picked, &mut images);
                for img in images {
                    let row = index[(d + sqk) as usize][&img];
                    mat.set(row, col, !mat.get(row, col));
                }
            }
            if !mat.is_zero() {
                action.insert((sqk, d), mat);
            }
        }
    }
    Ok(Arc::new(GradedModule::assemble(
        format!("H*(BV_{k})"),
        window,
        true,
        dims,
        labels,
        action,
    )?))
}

/// `H(k) = F(1)/Phi^k F(1)`: the span of `u, u^2, …, u^{2^{k-1}}`. This is
/// the degree-wise truncation of `F(1)` at `2^{k-1}`, which is already the
/// whole quotient, so the result is a complete finite module.
pub fn h_k(k: u32) -> Result<Module> {
    assert!(k >= 1);
    let top = 1u32 << (k - 1);
    let f1 = free_module(1, top)?;
    let mut dims = vec![0usize; top as usize + 1];
    let mut labels = vec![Vec::new(); top as usize + 1];
    for d in 0..=top {
        dims[d as usize] = f1.dim(d);
        labels[d as usize] = if f1.dim(d) > 0 {
            vec![if d == 1 { "u".to_string() } else { format!("u^{d}") }]
        } else {
            Vec::new()
        };
    }
    let mut action = BTreeMap::new();
    for (&(kk, n), mat) in f1.action_entries() {
        action.insert((kk, n), mat.clone());
    }
    Ok(Arc::new(GradedModule::assemble(
        format!("H({k})"),
        top,
        false,
        dims,
        labels,
        action,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xmonomial_enumeration_matches_binary_partitions() {
        // J(4) has one basis monomial in each degree 1..4
        assert_eq!(xmonomials(4, 1), vec![vec![(2, 1)]]);
        assert_eq!(xmonomials(4, 2), vec![vec![(1, 2)]]);
        assert_eq!(xmonomials(4, 3), vec![vec![(0, 2), (1, 1)]]);
        assert_eq!(xmonomials(4, 4), vec![vec![(0, 4)]]);
        // J(8) in degree 4: x1^4 and x2*x1*x0^2
        assert_eq!(xmonomials(8, 4).len(), 2);
    }

    #[test]
    fn sq1_on_generators() {
        // Sq^1 x_2 = x_1^2
        let img = sq_on_xmonomial(1, &vec![(2, 1)]);
        assert_eq!(img, vec![vec![(1, 2)]]);
        // Sq^1 x_0 = 0
        assert!(sq_on_xmonomial(1, &vec![(0, 1)]).is_empty());
        // Sq^1 (x_1^2) = 0 by the even binomial
        assert!(sq_on_xmonomial(1, &vec![(1, 2)]).is_empty());
    }
}
