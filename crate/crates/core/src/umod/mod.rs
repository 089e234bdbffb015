//! Explicit unstable modules on a bounded degree window.
//!
//! A [`GradedModule`] stores a dimension, printable basis labels and the
//! matrices of every `Sq^k` for each source degree inside the window. Two
//! invariants are checked by [`GradedModule::validate`]: instability
//! (`Sq^k` kills classes of degree `< k`) and consistency of composites
//! with the admissible normal form of `Sq^a Sq^b`.
//!
//! Modules are immutable once built and shared via [`Module`] handles; all
//! operations here are pure.

pub mod build;
pub mod homj;
pub mod json;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSpan};
use crate::steenrod::adem_normalize;

/// Hard sanity cap on degree windows.
pub const MAX_WINDOW: u32 = 1 << 20;

pub type Module = Arc<GradedModule>;

#[derive(Clone)]
pub struct GradedModule {
    name: String,
    window: u32,
    /// True when the module is the bounded part of something that continues
    /// above the window; structural operations that need the whole module
    /// (socle, hulls) reject truncated inputs.
    truncated: bool,
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
    /// `(k, n) ->` matrix of `Sq^k : M^n -> M^{n+k}`; absent means zero.
    action: BTreeMap<(u32, u32), BitMatrix>,
}

/// Violations reported by `validate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `Sq^k` nonzero on degree `n < k`.
    Instability { k: u32, n: u32 },
    /// Composite `Sq^a Sq^b` on degree `n` disagrees with the normal form.
    Adem { a: u32, b: u32, n: u32 },
    /// A stored matrix has the wrong shape.
    Shape { k: u32, n: u32 },
}

impl GradedModule {
    /// Assemble and freeze a module. Matrix shapes are checked here;
    /// mathematical invariants are the business of [`Self::validate`].
    pub fn assemble(
        name: impl Into<String>,
        window: u32,
        truncated: bool,
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        action: BTreeMap<(u32, u32), BitMatrix>,
    ) -> Result<GradedModule> {
        if window > MAX_WINDOW {
            return Err(Error::WindowExceeded(format!(
                "window {window} exceeds capacity {MAX_WINDOW}"
            )));
        }
        let len = window as usize + 1;
        if dims.len() != len || labels.len() != len {
            return Err(Error::DimMismatch(
                "dims/labels must cover degrees 0..=window".into(),
            ));
        }
        for (d, (l, &dim)) in labels.iter().zip(&dims).enumerate() {
            if l.len() != dim {
                return Err(Error::DimMismatch(format!(
                    "degree {d}: {} labels for dimension {dim}",
                    l.len()
                )));
            }
        }
        let mut clean = BTreeMap::new();
        for ((k, n), m) in action {
            if k == 0 || n + k > window {
                return Err(Error::Usage(format!(
                    "action key (k={k}, n={n}) outside window {window}"
                )));
            }
            if m.rows() != dims[(n + k) as usize] || m.cols() != dims[n as usize] {
                return Err(Error::DimMismatch(format!(
                    "Sq^{k} at degree {n} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[(n + k) as usize],
                    dims[n as usize]
                )));
            }
            if !m.is_zero() {
                clean.insert((k, n), m);
            }
        }
        Ok(GradedModule {
            name: name.into(),
            window,
            truncated,
            dims,
            labels,
            action: clean,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Dimension at a degree inside the window.
    pub fn dim(&self, n: u32) -> usize {
        self.dims[n as usize]
    }

    /// Dimension at any degree: zero above the window for complete modules,
    /// unknown (error) for truncated ones.
    pub fn dim_at(&self, n: u32) -> Result<usize> {
        if n <= self.window {
            Ok(self.dims[n as usize])
        } else if self.truncated {
            Err(Error::WindowExceeded(format!(
                "degree {n} beyond truncation window {} of {}",
                self.window, self.name
            )))
        } else {
            Ok(0)
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self, n: u32) -> &[String] {
        &self.labels[n as usize]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Largest degree with a nonzero component, if any.
    pub fn top_degree(&self) -> Option<u32> {
        (0..=self.window).rev().find(|&n| self.dim(n) > 0)
    }

    pub fn is_zero_module(&self) -> bool {
        self.top_degree().is_none()
    }

    /// The stored matrix if present.
    pub fn action_ref(&self, k: u32, n: u32) -> Option<&BitMatrix> {
        self.action.get(&(k, n))
    }

    pub fn action_entries(&self) -> impl Iterator<Item = (&(u32, u32), &BitMatrix)> {
        self.action.iter()
    }

    /// Matrix of `Sq^k : M^n -> M^{n+k}` (zero when unstored). Requires
    /// `n + k <= window`.
    pub fn sq(&self, k: u32, n: u32) -> BitMatrix {
        assert!(n + k <= self.window, "Sq^{k} from degree {n} leaves the window");
        if k == 0 {
            return BitMatrix::identity(self.dim(n));
        }
        match self.action.get(&(k, n)) {
            Some(m) => m.clone(),
            None => BitMatrix::zero(self.dim(n + k), self.dim(n)),
        }
    }

    /// Apply `Sq^k` to a vector in degree `n`.
    pub fn apply_sq(&self, k: u32, n: u32, v: &BitVec) -> BitVec {
        if k == 0 {
            return v.clone();
        }
        match self.action.get(&(k, n)) {
            Some(m) => m.mul_vec(v),
            None => BitVec::zeros(self.dim(n + k)),
        }
    }

    /// Apply an admissible word `Sq^{i_1} … Sq^{i_m}` (rightmost first).
    pub fn apply_word(&self, word: &[u32], n: u32, v: &BitVec) -> BitVec {
        let mut deg = n;
        let mut acc = v.clone();
        for &k in word.iter().rev() {
            acc = self.apply_sq(k, deg, &acc);
            deg += k;
        }
        acc
    }

    /// Matrix of an admissible word from degree `n`.
    pub fn word_matrix(&self, word: &[u32], n: u32) -> BitMatrix {
        let mut deg = n;
        let mut acc = BitMatrix::identity(self.dim(n));
        for &k in word.iter().rev() {
            acc = self.sq(k, deg).mul(&acc);
            deg += k;
        }
        acc
    }

    /// Matrix of a whole element (sum of admissible word matrices).
    pub fn element_matrix(&self, e: &crate::steenrod::SteenrodElement, n: u32) -> BitMatrix {
        let d = e.degree().unwrap_or(0);
        let mut acc = BitMatrix::zero(self.dim(n + d), self.dim(n));
        for t in e.terms() {
            acc = acc.add(&self.word_matrix(t.exponents(), n));
        }
        acc
    }

    /// Check instability and Adem consistency; empty diagnostics means both
    /// invariants hold on the window.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (&(k, n), m) in &self.action {
            if m.rows() != self.dim(n + k) || m.cols() != self.dim(n) {
                out.push(Violation::Shape { k, n });
            }
            if k > n && !m.is_zero() {
                out.push(Violation::Instability { k, n });
            }
        }
        // composites against the admissible normal form of Sq^a Sq^b
        for b in 1..=self.window {
            if b + 1 > self.window {
                break;
            }
            for a in 1..(2 * b) {
                if a + b > self.window {
                    break;
                }
                let rule = adem_normalize(&[a, b]);
                for n in 0..=(self.window - a - b) {
                    if self.dim(n) == 0 || self.dim(n + a + b) == 0 {
                        continue;
                    }
                    let lhs = self.sq(a, n + b).mul(&self.sq(b, n));
                    let mut rhs = BitMatrix::zero(self.dim(n + a + b), self.dim(n));
                    for t in rule.terms() {
                        rhs = rhs.add(&self.word_matrix(t.exponents(), n));
                    }
                    if lhs != rhs {
                        out.push(Violation::Adem { a, b, n });
                    }
                }
            }
        }
        out
    }

    /// Rename without touching structure.
    pub fn renamed(&self, name: impl Into<String>) -> GradedModule {
        let mut m = self.clone();
        m.name = name.into();
        m
    }
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GradedModule({}, window {}, dims {:?})",
            self.name, self.window, self.dims
        )
    }
}

/// Structural equality ignoring names: same window, truncation flag,
/// dimensions, labels and action.
pub fn same_labeled_module(a: &GradedModule, b: &GradedModule) -> bool {
    a.window == b.window
        && a.truncated == b.truncated
        && a.dims == b.dims
        && a.labels == b.labels
        && a.action == b.action
}

/// Structural equality ignoring names and labels.
pub fn same_module_structure(a: &GradedModule, b: &GradedModule) -> bool {
    a.window == b.window && a.dims == b.dims && a.action == b.action
}

/// A degree-preserving GF(2)-linear map commuting with the action, stored
/// blockwise on the common window.
#[derive(Clone)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    blocks: Vec<BitMatrix>,
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, blocks: Vec<BitMatrix>) -> Result<ModuleMap> {
        let window = source.window().min(target.window());
        if blocks.len() != window as usize + 1 {
            return Err(Error::DimMismatch(format!(
                "map needs {} blocks, got {}",
                window + 1,
                blocks.len()
            )));
        }
        for (n, b) in blocks.iter().enumerate() {
            if b.rows() != target.dim(n as u32) || b.cols() != source.dim(n as u32) {
                return Err(Error::DimMismatch(format!(
                    "block at degree {n} has shape {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dim(n as u32),
                    source.dim(n as u32)
                )));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            blocks,
        })
    }

    pub fn zero(source: Module, target: Module) -> ModuleMap {
        let window = source.window().min(target.window());
        let blocks = (0..=window)
            .map(|n| BitMatrix::zero(target.dim(n), source.dim(n)))
            .collect();
        ModuleMap {
            source,
            target,
            blocks,
        }
    }

    pub fn identity(m: &Module) -> ModuleMap {
        let blocks = (0..=m.window()).map(|n| BitMatrix::identity(m.dim(n))).collect();
        ModuleMap {
            source: Arc::clone(m),
            target: Arc::clone(m),
            blocks,
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn window(&self) -> u32 {
        self.blocks.len() as u32 - 1
    }

    pub fn block(&self, n: u32) -> &BitMatrix {
        &self.blocks[n as usize]
    }

    pub fn apply(&self, n: u32, v: &BitVec) -> BitVec {
        self.blocks[n as usize].mul_vec(v)
    }

    /// Commutation failures `(k, n)` with every `Sq^k` on the window.
    pub fn commutation_failures(&self) -> Vec<(u32, u32)> {
        let w = self.window();
        let mut bad = Vec::new();
        for k in 1..=w {
            for n in 0..=(w - k) {
                let lhs = self.target.sq(k, n).mul(self.block(n));
                let rhs = self.block(n + k).mul(&self.source.sq(k, n));
                if lhs != rhs {
                    bad.push((k, n));
                }
            }
        }
        bad
    }

    pub fn is_module_map(&self) -> bool {
        self.commutation_failures().is_empty()
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.kernel_basis().is_empty())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(BitMatrix::is_zero)
    }

    /// Composite `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        let w = self.window().min(inner.window());
        let mut blocks = Vec::with_capacity(w as usize + 1);
        for n in 0..=w {
            if self.block(n).cols() != inner.block(n).rows() {
                return Err(Error::DimMismatch(format!(
                    "composition blocks disagree at degree {n}"
                )));
            }
            blocks.push(self.block(n).mul(inner.block(n)));
        }
        ModuleMap::new(
            Arc::clone(inner.source()),
            Arc::clone(self.target()),
            blocks,
        )
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        let w = self.window().min(other.window());
        let blocks = (0..=w)
            .map(|n| self.block(n).add(other.block(n)))
            .collect();
        ModuleMap::new(Arc::clone(&self.source), Arc::clone(&self.target), blocks)
    }

    /// Ranks of all blocks (used for exactness certificates).
    pub fn block_ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(BitMatrix::rank).collect()
    }
}

impl std::fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ModuleMap({} -> {}, window {})",
            self.source.name(),
            self.target.name(),
            self.window()
        )
    }
}

// ---------------------------------------------------------------------------
// structural operations
// ---------------------------------------------------------------------------

/// Shift all degrees up by `s`.
pub fn suspension(m: &Module, s: u32) -> Result<Module> {
    let window = m.window() + s;
    if window > MAX_WINDOW {
        return Err(Error::WindowExceeded("suspension leaves capacity".into()));
    }
    let mut dims = vec![0usize; window as usize + 1];
    let mut labels = vec![Vec::new(); window as usize + 1];
    for n in 0..=m.window() {
        dims[(n + s) as usize] = m.dim(n);
        labels[(n + s) as usize] = m.labels(n).to_vec();
    }
    let mut action = BTreeMap::new();
    for (&(k, n), mat) in m.action_entries() {
        action.insert((k, n + s), mat.clone());
    }
    let name = if s == 0 {
        m.name().to_string()
    } else {
        format!("Sigma^{s} {}", m.name())
    };
    Ok(Arc::new(GradedModule::assemble(
        name,
        window,
        m.truncated(),
        dims,
        labels,
        action,
    )?))
}

/// The doubling functor: `(Phi M)^{2n} = M^n`, `Sq^{2k} Phi x = Phi(Sq^k x)`,
/// odd squares act by zero.
pub fn frobenius(m: &Module) -> Result<Module> {
    let window = 2 * m.window();
    if window > MAX_WINDOW {
        return Err(Error::WindowExceeded("doubling leaves capacity".into()));
    }
    let mut dims = vec![0usize; window as usize + 1];
    let mut labels = vec![Vec::new(); window as usize + 1];
    for n in 0..=m.window() {
        dims[(2 * n) as usize] = m.dim(n);
        labels[(2 * n) as usize] = m
            .labels(n)
            .iter()
            .map(|l| format!("Phi({l})"))
            .collect();
    }
    let mut action = BTreeMap::new();
    for (&(k, n), mat) in m.action_entries() {
        action.insert((2 * k, 2 * n), mat.clone());
    }
    Ok(Arc::new(GradedModule::assemble(
        format!("Phi({})", m.name()),
        window,
        m.truncated(),
        dims,
        labels,
        action,
    )?))
}

/// Restrict or zero-extend to the given window. Restricting below the top
/// degree of a complete module marks the result truncated.
pub fn with_window(m: &Module, window: u32) -> Result<Module> {
    if window == m.window() {
        return Ok(Arc::clone(m));
    }
    let len = window as usize + 1;
    let mut dims = vec![0usize; len];
    let mut labels = vec![Vec::new(); len];
    for n in 0..=window.min(m.window()) {
        dims[n as usize] = m.dim(n);
        labels[n as usize] = m.labels(n).to_vec();
    }
    let mut action = BTreeMap::new();
    for (&(k, n), mat) in m.action_entries() {
        if n + k <= window {
            action.insert((k, n), mat.clone());
        }
    }
    let truncated = if window < m.window() {
        m.truncated() || m.top_degree().is_some_and(|t| t > window)
    } else {
        m.truncated()
    };
    Ok(Arc::new(GradedModule::assemble(
        m.name().to_string(),
        window,
        truncated,
        dims,
        labels,
        action,
    )?))
}

/// `lambda_M : Phi M -> M`, `Phi x -> Sq^{|x|} x`. Faithful through the
/// window of `M`.
pub fn lambda(m: &Module) -> Result<ModuleMap> {
    let phi = frobenius(m)?;
    let w = m.window();
    let mut blocks = Vec::with_capacity(w as usize + 1);
    for n in 0..=w {
        if n % 2 == 1 {
            blocks.push(BitMatrix::zero(m.dim(n), 0));
        } else if n == 0 {
            blocks.push(BitMatrix::identity(m.dim(0)));
        } else {
            let half = n / 2;
            blocks.push(m.sq(half, half));
        }
    }
    ModuleMap::new(phi, Arc::clone(m), blocks)
}

/// Doubling applied to a map.
pub fn frobenius_map(f: &ModuleMap) -> Result<ModuleMap> {
    let src = frobenius(f.source())?;
    let tgt = frobenius(f.target())?;
    let w = src.window().min(tgt.window());
    let mut blocks = Vec::with_capacity(w as usize + 1);
    for n in 0..=w {
        if n % 2 == 0 {
            blocks.push(f.block(n / 2).clone());
        } else {
            blocks.push(BitMatrix::zero(tgt.dim(n), src.dim(n)));
        }
    }
    ModuleMap::new(src, tgt, blocks)
}

/// Iterated `lambda^k : Phi^k M -> M` via `lambda ∘ Phi(lambda^{k-1})`.
pub fn lambda_iterate(m: &Module, k: u32) -> Result<ModuleMap> {
    assert!(k >= 1);
    if k == 1 {
        return lambda(m);
    }
    let prev = lambda_iterate(m, k - 1)?;
    lambda(m)?.compose(&frobenius_map(&prev)?)
}

/// Tensor product with Cartan action, truncated at `window`.
pub fn tensor(a: &Module, b: &Module, window: u32) -> Result<Module> {
    if window > MAX_WINDOW {
        return Err(Error::WindowExceeded("tensor window exceeds capacity".into()));
    }
    let len = window as usize + 1;
    // basis of degree d: pairs (x in A^p, y in B^{d-p}), p ascending
    let mut dims = vec![0usize; len];
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); len];
    let mut offsets: Vec<Vec<usize>> = vec![Vec::new(); len]; // per degree, per p
    for d in 0..=window {
        let mut off = vec![usize::MAX; d as usize + 1];
        let mut total = 0usize;
        for p in 0..=d {
            let q = d - p;
            if p <= a.window() && q <= b.window() {
                off[p as usize] = total;
                for la in a.labels(p) {
                    for lb in b.labels(q) {
                        labels[d as usize].push(format!("{la}⊗{lb}"));
                    }
                }
                total += a.dim(p) * b.dim(q);
            }
        }
        offsets[d as usize] = off;
        dims[d as usize] = total;
    }
    let index = |p: u32, i: usize, d: u32, j: usize| -> usize {
        offsets[d as usize][p as usize] + i * b.dim(d - p) + j
    };
    let mut action: BTreeMap<(u32, u32), BitMatrix> = BTreeMap::new();
    for k in 1..=window {
        for d in 0..=(window - k) {
            if dims[d as usize] == 0 || dims[(d + k) as usize] == 0 {
                continue;
            }
            let mut mat = BitMatrix::zero(dims[(d + k) as usize], dims[d as usize]);
            for p in 0..=d.min(a.window()) {
                let q = d - p;
                if q > b.window() || a.dim(p) == 0 || b.dim(q) == 0 {
                    continue;
                }
                for i in 0..a.dim(p) {
                    for j in 0..b.dim(q) {
                        let col = index(p, i, d, j);
                        // Cartan: Sq^k(x ⊗ y) = sum_s Sq^s x ⊗ Sq^{k-s} y
                        for s in 0..=k {
                            let (tp, tq) = (p + s, q + (k - s));
                            if tp > a.window() || tq > b.window() {
                                continue;
                            }
                            if a.dim(tp) == 0 || b.dim(tq) == 0 {
                                continue;
                            }
                            let xa = a.apply_sq(s, p, &BitVec::standard(a.dim(p), i));
                            let yb = b.apply_sq(k - s, q, &BitVec::standard(b.dim(q), j));
                            for ii in xa.ones() {
                                for jj in yb.ones() {
                                    let row = index(tp, ii, d + k, jj);
                                    mat.set(row, col, !mat.get(row, col));
                                }
                            }
                        }
                    }
                }
            }
            mat_insert(&mut action, (k, d), mat);
        }
    }
    let truncated = a.truncated()
        || b.truncated()
        || window < a.top_degree().unwrap_or(0) + b.top_degree().unwrap_or(0);
    Ok(Arc::new(GradedModule::assemble(
        format!("T({},{})", a.name(), b.name()),
        window,
        truncated,
        dims,
        labels,
        action,
    )?))
}

fn mat_insert(map: &mut BTreeMap<(u32, u32), BitMatrix>, key: (u32, u32), m: BitMatrix) {
    if !m.is_zero() {
        map.insert(key, m);
    }
}

/// Direct sum, with labels prefixed by the summand index.
pub fn direct_sum(parts: &[Module], name: impl Into<String>) -> Result<Module> {
    let window = parts.iter().map(|m| m.window()).max().unwrap_or(0);
    let len = window as usize + 1;
    let mut dims = vec![0usize; len];
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); len];
    let mut offsets: Vec<Vec<usize>> = vec![vec![0; parts.len()]; len];
    for (pi, m) in parts.iter().enumerate() {
        for n in 0..=window {
            offsets[n as usize][pi] = dims[n as usize];
            if n <= m.window() {
                dims[n as usize] += m.dim(n);
                for l in m.labels(n) {
                    labels[n as usize].push(format!("{}[{}]:{}", m.name(), pi, l));
                }
            } else {
                m.dim_at(n)?; // complete modules contribute zero; truncated ones error
            }
        }
    }
    let mut action: BTreeMap<(u32, u32), BitMatrix> = BTreeMap::new();
    for (pi, m) in parts.iter().enumerate() {
        for (&(k, n), mat) in m.action_entries() {
            let entry = action
                .entry((k, n))
                .or_insert_with(|| BitMatrix::zero(dims[(n + k) as usize], dims[n as usize]));
            for r in 0..mat.rows() {
                for c in mat.row(r).ones() {
                    entry.set(
                        offsets[(n + k) as usize][pi] + r,
                        offsets[n as usize][pi] + c,
                        true,
                    );
                }
            }
        }
    }
    Ok(Arc::new(GradedModule::assemble(
        name,
        window,
        parts.iter().any(|m| m.truncated()),
        dims,
        labels,
        action,
    )?))
}

/// Offsets of each summand inside `direct_sum(parts)` at the given degree.
pub fn sum_offsets(parts: &[Module], n: u32) -> Vec<usize> {
    let mut off = Vec::with_capacity(parts.len());
    let mut total = 0usize;
    for m in parts {
        off.push(total);
        total += if n <= m.window() { m.dim(n) } else { 0 };
    }
    off
}

/// Cokernel of an injective map `S -> M`, with the projection.
///
/// The quotient basis is canonical: coordinates of `M` away from the pivot
/// rows of the image, so labels are inherited from `M`.
pub fn quotient(m: &Module, inclusion: &ModuleMap) -> Result<(Module, ModuleMap)> {
    if !Arc::ptr_eq(inclusion.target(), m) && !same_module_structure(inclusion.target(), m) {
        return Err(Error::Usage("inclusion does not land in the module".into()));
    }
    if !inclusion.is_injective() {
        return Err(Error::Usage("quotient requires an injective inclusion".into()));
    }
    let w = m.window();
    let mut spans: Vec<RowSpan> = Vec::with_capacity(w as usize + 1);
    let mut keep: Vec<Vec<usize>> = Vec::with_capacity(w as usize + 1);
    let mut dims = vec![0usize; w as usize + 1];
    let mut labels: Vec<Vec<String>> = vec![Vec::new(); w as usize + 1];
    for n in 0..=w {
        let image = if n <= inclusion.window() {
            RowSpan::col_space(inclusion.block(n))
        } else {
            RowSpan::empty(m.dim(n))
        };
        let pivot_set: std::collections::BTreeSet<usize> =
            image.pivots().iter().copied().collect();
        let kept: Vec<usize> = (0..m.dim(n)).filter(|i| !pivot_set.contains(i)).collect();
        dims[n as usize] = kept.len();
        labels[n as usize] = kept.iter().map(|&i| m.labels(n)[i].clone()).collect();
        spans.push(image);
        keep.push(kept);
    }
    let project = |n: u32, v: &BitVec| -> BitVec {
        let reduced = spans[n as usize].reduce(v);
        let mut out = BitVec::zeros(keep[n as usize].len());
        for (qi, &coord) in keep[n as usize].iter().enumerate() {
            if reduced.get(coord) {
                out.set(qi, true);
            }
        }
        out
    };
    let mut action: BTreeMap<(u32, u32), BitMatrix> = BTreeMap::new();
    for k in 1..=w {
        for n in 0..=(w - k) {
            if dims[n as usize] == 0 || dims[(n + k) as usize] == 0 {
                continue;
            }
            let mut mat = BitMatrix::zero(dims[(n + k) as usize], dims[n as usize]);
            for (qi, &coord) in keep[n as usize].iter().enumerate() {
                let img = m.apply_sq(k, n, &BitVec::standard(m.dim(n), coord));
                for r in project(n + k, &img).ones() {
                    mat.set(r, qi, true);
                }
            }
            mat_insert(&mut action, (k, n), mat);
        }
    }
    let q = Arc::new(GradedModule::assemble(
        format!("{}/im", m.name()),
        w,
        m.truncated(),
        dims,
        labels,
        action,
    )?);
    let blocks = (0..=w)
        .map(|n| {
            let mut b = BitMatrix::zero(q.dim(n), m.dim(n));
            for i in 0..m.dim(n) {
                for r in project(n, &BitVec::standard(m.dim(n), i)).ones() {
                    b.set(r, i, true);
                }
            }
            b
        })
        .collect();
    let proj = ModuleMap::new(Arc::clone(m), Arc::clone(&q), blocks)?;
    Ok((q, proj))
}

/// Kernel of a map as a module with its inclusion.
pub fn kernel_module(f: &ModuleMap) -> Result<(Module, ModuleMap)> {
    let src = f.source();
    let w = f.window();
    if src.window() > w {
        return Err(Error::Usage(
            "kernel: map window smaller than source window".into(),
        ));
    }
    let mut bases: Vec<Vec<BitVec>> = Vec::with_capacity(w as usize + 1);
    for n in 0..=w {
        bases.push(f.block(n).kernel_basis());
    }
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(n, &d)| (0..d).map(|i| format!("k{n}_{i}")).collect())
        .collect();
    let incl_blocks: Vec<BitMatrix> = bases
        .iter()
        .enumerate()
        .map(|(n, b)| BitMatrix::from_cols(b, src.dim(n as u32)))
        .collect();
    let mut action: BTreeMap<(u32, u32), BitMatrix> = BTreeMap::new();
    for k in 1..=w {
        for n in 0..=(w - k) {
            if dims[n as usize] == 0 || dims[(n + k) as usize] == 0 {
                continue;
            }
            let target_cols = &incl_blocks[(n + k) as usize];
            let mut mat = BitMatrix::zero(dims[(n + k) as usize], dims[n as usize]);
            for (i, v) in bases[n as usize].iter().enumerate() {
                let img = src.apply_sq(k, n, v);
                let expr = target_cols
                    .solve(&img)
                    .expect("shape")
                    .ok_or_else(|| Error::Internal("kernel not closed under the action".into()))?;
                for r in expr.ones() {
                    mat.set(r, i, true);
                }
            }
            mat_insert(&mut action, (k, n), mat);
        }
    }
    let km = Arc::new(GradedModule::assemble(
        format!("ker({}->{})", src.name(), f.target().name()),
        w,
        src.truncated(),
        dims,
        labels,
        action,
    )?);
    let incl = ModuleMap::new(Arc::clone(&km), Arc::clone(src), incl_blocks)?;
    Ok((km, incl))
}

/// Smallest submodule containing the given vectors, with its inclusion.
pub fn submodule_generated_by(
    m: &Module,
    generators: &[(u32, BitVec)],
) -> Result<(Module, ModuleMap)> {
    let w = m.window();
    let mut spans: Vec<RowSpan> = (0..=w).map(|n| RowSpan::empty(m.dim(n))).collect();
    let mut queue: Vec<(u32, BitVec)> = Vec::new();
    for (n, v) in generators {
        if spans[*n as usize].insert(v) {
            queue.push((*n, v.clone()));
        }
    }
    while let Some((n, v)) = queue.pop() {
        for k in 1..=(w - n) {
            let img = m.apply_sq(k, n, &v);
            if !img.is_zero() && spans[(n + k) as usize].insert(&img) {
                queue.push((n + k, img));
            }
        }
    }
    let bases: Vec<Vec<BitVec>> = spans.iter().map(|s| s.basis().to_vec()).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let labels: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(n, &d)| (0..d).map(|i| format!("s{n}_{i}")).collect())
        .collect();
    let incl_blocks: Vec<BitMatrix> = bases
        .iter()
        .enumerate()
        .map(|(n, b)| BitMatrix::from_cols(b, m.dim(n as u32)))
        .collect();
    let mut action: BTreeMap<(u32, u32), BitMatrix> = BTreeMap::new();
    for k in 1..=w {
        for n in 0..=(w - k) {
            if dims[n as usize] == 0 || dims[(n + k) as usize] == 0 {
                continue;
            }
            let mut mat = BitMatrix::zero(dims[(n + k) as usize], dims[n as usize]);
            for (i, v) in bases[n as usize].iter().enumerate() {
                let img = m.apply_sq(k, n, v);
                let expr = incl_blocks[(n + k) as usize]
                    .solve(&img)
                    .expect("shape")
                    .ok_or_else(|| Error::Internal("span not closed".into()))?;
                for r in expr.ones() {
                    mat.set(r, i, true);
                }
            }
            mat_insert(&mut action, (k, n), mat);
        }
    }
    let sm = Arc::new(GradedModule::assemble(
        format!("<gens> in {}", m.name()),
        w,
        m.truncated(),
        dims,
        labels,
        action,
    )?);
    let incl = ModuleMap::new(Arc::clone(&sm), Arc::clone(m), incl_blocks)?;
    Ok((sm, incl))
}

/// Degreewise basis of the socle `∩_{k>=1} ker Sq^k` of a finite module.
pub fn socle(m: &Module) -> Result<Vec<Vec<BitVec>>> {
    if m.truncated() {
        return Err(Error::Usage(format!(
            "socle requires a complete module; {} is truncated",
            m.name()
        )));
    }
    let w = m.window();
    let mut out = Vec::with_capacity(w as usize + 1);
    for n in 0..=w {
        if m.dim(n) == 0 {
            out.push(Vec::new());
            continue;
        }
        let mut stacked: Option<BitMatrix> = None;
        for k in 1..=(w - n) {
            if let Some(mat) = m.action_ref(k, n) {
                stacked = Some(match stacked {
                    None => mat.clone(),
                    Some(s) => s.vstack(mat),
                });
            }
        }
        match stacked {
            None => out.push((0..m.dim(n)).map(|i| BitVec::standard(m.dim(n), i)).collect()),
            Some(s) => out.push(s.kernel_basis()),
        }
    }
    Ok(out)
}

/// Degreewise data of `M` modulo the image of all positive operations: the
/// radical span and the complementary coordinates, which serve as canonical
/// generator representatives.
pub fn top(m: &Module) -> Vec<(RowSpan, Vec<usize>)> {
    let w = m.window();
    let mut out = Vec::with_capacity(w as usize + 1);
    for n in 0..=w {
        let mut span = RowSpan::empty(m.dim(n));
        for k in 1..=n {
            if let Some(mat) = m.action_ref(k, n - k) {
                for c in 0..mat.cols() {
                    span.insert(&mat.col(c));
                }
            }
        }
        let pivots: std::collections::BTreeSet<usize> = span.pivots().iter().copied().collect();
        let free: Vec<usize> = (0..m.dim(n)).filter(|i| !pivots.contains(i)).collect();
        out.push((span, free));
    }
    out
}

/// Iterated `Sq_0` (`x -> Sq^{|x|} x`) eventually vanishes on every degree.
/// Computed by iterating the matrices `ceil(log2(window)) + 1` times; for a
/// finite module the iteration leaves the window.
pub fn is_nilpotent(m: &Module) -> Result<bool> {
    if m.truncated() {
        return Err(Error::Usage(format!(
            "nilpotency requires a complete module; {} is truncated",
            m.name()
        )));
    }
    let w = m.window();
    let iterations = (w + 2).ilog2() as usize + 2;
    for n in 0..=w {
        if m.dim(n) == 0 {
            continue;
        }
        if n == 0 {
            return Ok(false); // Sq_0 is the identity in degree 0
        }
        let mut deg = n;
        let mut acc = BitMatrix::identity(m.dim(n));
        let mut vanished = false;
        for _ in 0..iterations {
            if 2 * deg > w {
                vanished = true; // lands beyond the top of a finite module
                break;
            }
            acc = m.sq(deg, deg).mul(&acc);
            deg *= 2;
            if acc.is_zero() {
                vanished = true;
                break;
            }
        }
        if !vanished {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `lambda_M` injective on the valid window (degrees `2n <= window`).
pub fn is_reduced(m: &Module) -> bool {
    let w = m.window();
    if m.dim(0) > 0 {
        // degree 0: Sq_0 is the identity, always injective
    }
    for n in 1..=(w / 2) {
        if m.dim(n) == 0 {
            continue;
        }
        if !m.sq(n, n).kernel_basis().is_empty() {
            return false;
        }
    }
    true
}

/// Maps `F(n) -> M` enumerated explicitly: one candidate per basis vector
/// of `M^n`, each checked to commute with the action. The count of valid
/// maps is `dim M^n` exactly when freeness holds.
pub fn count_maps_from_free(n: u32, m: &Module) -> Result<usize> {
    let f = build::free_module(n, m.window())?;
    let mut count = 0usize;
    for i in 0..m.dim(n) {
        let x = BitVec::standard(m.dim(n), i);
        let mut blocks = Vec::with_capacity(m.window() as usize + 1);
        for d in 0..=m.window() {
            let mut b = BitMatrix::zero(m.dim(d), f.dim(d));
            if d >= n {
                for (col, mono) in build::free_basis(n, d).iter().enumerate() {
                    let v = m.apply_word(mono.exponents(), n, &x);
                    for r in v.ones() {
                        b.set(r, col, true);
                    }
                }
            }
            blocks.push(b);
        }
        let map = ModuleMap::new(Arc::clone(&f), Arc::clone(m), blocks)?;
        if map.is_module_map() {
            count += 1;
        } else {
            return Err(Error::Internal(format!(
                "freeness failed: generator image {i} in degree {n} does not extend"
            )));
        }
    }
    Ok(count)
}

pub use build::{brown_gitler, cohomology_bv, free_module, h_k, point_module, sigma_simple};
pub use homj::{bullet_map, hom_to_j, HomToJ};
