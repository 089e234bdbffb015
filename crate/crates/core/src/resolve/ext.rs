//! Ext groups from minimal projective resolutions, plus the maps induced by
//! module maps (contravariant, via chain lifts) and by the doubling functor.
//!
//! The cochain group in homological degree `d` is the sum of one copy of
//! `N^{n_i}` per generator of `P_d` of degree `n_i`; the differential sends
//! a tuple to its values on the next level's generators. Cohomology classes
//! get canonical representatives (reduced echelon against the boundary
//! space), and each representative's leading coordinate assigns it an
//! internal degree for the `(d, t)` table.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSpan};
use crate::umod::{Module, ModuleMap};

use super::projective::ProjectiveResolution;

/// Dimensions of `Ext^d` split by the internal degree of the canonical
/// representatives. Entries that are zero are omitted, and degrees above
/// the window are absent rather than guessed.
#[derive(Clone, Debug, Serialize)]
pub struct ExtTable {
    pub source: String,
    pub target: String,
    pub d_max: u32,
    pub window: u32,
    /// `(homological degree, internal degree) -> dimension`, nonzero only.
    #[serde(serialize_with = "entries_as_triples")]
    pub entries: BTreeMap<(u32, u32), usize>,
}

fn entries_as_triples<S: serde::Serializer>(
    entries: &BTreeMap<(u32, u32), usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let triples: Vec<(u32, u32, usize)> =
        entries.iter().map(|(&(d, t), &v)| (d, t, v)).collect();
    triples.serialize(s)
}

impl ExtTable {
    pub fn total(&self, d: u32) -> usize {
        self.entries
            .iter()
            .filter(|((dd, _), _)| *dd == d)
            .map(|(_, &v)| v)
            .sum()
    }

    pub fn entry(&self, d: u32, t: u32) -> usize {
        self.entries.get(&(d, t)).copied().unwrap_or(0)
    }
}

/// One cohomology group with canonical representative data, so induced maps
/// can be expressed in a reproducible basis.
pub struct ExtGroup {
    pub d: u32,
    /// Canonical cocycle representatives, mutually reduced (echelon).
    reps: Vec<BitVec>,
    rep_pivots: Vec<usize>,
    /// Span of the boundaries.
    boundary: RowSpan,
    /// Internal degree of each representative's leading coordinate.
    pub rep_degrees: Vec<u32>,
}

impl ExtGroup {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[BitVec] {
        &self.reps
    }

    /// Coordinates of a cocycle in the canonical basis; errors if the
    /// vector is not a cocycle-modulo-boundary combination.
    pub fn express(&self, v: &BitVec) -> Result<BitVec> {
        let mut r = self.boundary.reduce(v);
        let mut coords = BitVec::zeros(self.reps.len());
        for (i, rep) in self.reps.iter().enumerate() {
            if r.get(self.rep_pivots[i]) {
                coords.set(i, true);
                r.xor_assign(rep);
            }
        }
        if !self.boundary.reduce(&r).is_zero() {
            return Err(Error::Internal(
                "vector is not a boundary-modulo combination of representatives".into(),
            ));
        }
        Ok(coords)
    }
}

/// Layout of the cochain group `Hom(P_d, N)`: one block per generator.
pub struct CochainLayout {
    /// `(generator degree, block offset, block dim)` per generator of `P_d`.
    pub blocks: Vec<(u32, usize, usize)>,
    pub total: usize,
}

fn layout(res: &ProjectiveResolution, n: &Module, d: usize) -> Result<CochainLayout> {
    let mut blocks = Vec::new();
    let mut total = 0usize;
    for &gdeg in res.level(d).gens() {
        let dim = n.dim_at(gdeg)?;
        blocks.push((gdeg, total, dim));
        total += dim;
    }
    Ok(CochainLayout { blocks, total })
}

/// The Ext computation for a fixed resolution and coefficient module.
pub struct ExtComputation {
    pub res_window: u32,
    pub d_max: u32,
    layouts: Vec<CochainLayout>,
    pub groups: Vec<ExtGroup>,
    source_name: String,
    target_name: String,
}

/// Compute `Ext^d(M, N)` for `d <= d_max` from a resolution of `M` with at
/// least `d_max + 2` levels.
pub fn compute_ext(res: &ProjectiveResolution, n: &Module, d_max: u32) -> Result<ExtComputation> {
    if res.num_levels() < d_max as usize + 2 {
        return Err(Error::Usage(format!(
            "resolution has {} levels; Ext through degree {d_max} needs {}",
            res.num_levels(),
            d_max + 2
        )));
    }
    if n.truncated() && n.window() < res.window {
        return Err(Error::Usage(
            "coefficient window is smaller than the resolution window".into(),
        ));
    }
    let layouts: Vec<CochainLayout> = (0..=d_max as usize + 1)
        .map(|d| layout(res, n, d))
        .collect::<Result<_>>()?;
    let mut groups = Vec::with_capacity(d_max as usize + 1);
    let mut incoming: Option<BitMatrix> = None; // differential C^{d-1} -> C^d
    for d in 0..=d_max {
        let outgoing = cochain_matrix(res, n, &layouts[d as usize], &layouts[d as usize + 1], d)?;
        let kernel = outgoing.kernel_basis();
        let mut boundary = RowSpan::empty(layouts[d as usize].total);
        if let Some(inc) = &incoming {
            for c in 0..inc.cols() {
                boundary.insert(&inc.col(c));
            }
        }
        // canonical representatives: reduce the kernel basis against the
        // boundary and itself, then echelonize
        let mut combined = boundary.clone();
        let mut raw_reps = Vec::new();
        for z in &kernel {
            let r = combined.reduce(z);
            if !r.is_zero() {
                raw_reps.push(r.clone());
                combined.insert(&r);
            }
        }
        let reduced = BitMatrix::from_rows(&raw_reps).rref();
        let mut reps = Vec::new();
        let mut rep_pivots = Vec::new();
        for (i, &p) in reduced.pivots.iter().enumerate() {
            reps.push(reduced.mat.row(i));
            rep_pivots.push(p);
        }
        let rep_degrees = reps
            .iter()
            .map(|r| coordinate_degree(&layouts[d as usize], r.first_one().unwrap()))
            .collect();
        groups.push(ExtGroup {
            d,
            reps,
            rep_pivots,
            boundary,
            rep_degrees,
        });
        incoming = Some(outgoing);
    }
    Ok(ExtComputation {
        res_window: res.window,
        d_max,
        layouts,
        groups,
        source_name: res.base.name().to_string(),
        target_name: n.name().to_string(),
    })
}

fn coordinate_degree(layout: &CochainLayout, coord: usize) -> u32 {
    for &(gdeg, offset, dim) in &layout.blocks {
        if coord >= offset && coord < offset + dim {
            return gdeg;
        }
    }
    unreachable!("coordinate outside layout")
}

/// The differential `Hom(P_d, N) -> Hom(P_{d+1}, N)`: evaluate against each
/// next-level generator's boundary, acting with the tagged operations on N.
fn cochain_matrix(
    res: &ProjectiveResolution,
    n: &Module,
    from: &CochainLayout,
    to: &CochainLayout,
    d: u32,
) -> Result<BitMatrix> {
    let mut mat = BitMatrix::zero(to.total, from.total);
    let next = res.level(d as usize + 1);
    for (h, &(hdeg, hoff, hdim)) in to.blocks.iter().enumerate() {
        if hdim == 0 {
            continue;
        }
        let tag = (h, crate::steenrod::AdmissibleMonomial::unit());
        let pos = next
            .index_of(hdeg, &tag)
            .ok_or_else(|| Error::Internal("generator tag missing".into()))?;
        let boundary = &next.columns(hdeg)[pos];
        for c in boundary.ones() {
            let (i, mono) = &res.level(d as usize).basis(hdeg)[c];
            let (gdeg, goff, gdim) = from.blocks[*i];
            if gdim == 0 {
                continue;
            }
            // contribution: N-action matrix of the word from degree gdeg
            let word = n.word_matrix(mono.exponents(), gdeg);
            debug_assert_eq!(word.rows(), hdim);
            debug_assert_eq!(word.cols(), gdim);
            for r in 0..word.rows() {
                for cc in word.row(r).ones() {
                    mat.set(hoff + r, goff + cc, !mat.get(hoff + r, goff + cc));
                }
            }
        }
    }
    Ok(mat)
}

impl ExtComputation {
    pub fn table(&self) -> ExtTable {
        let mut entries = BTreeMap::new();
        for g in &self.groups {
            for &t in &g.rep_degrees {
                *entries.entry((g.d, t)).or_insert(0) += 1;
            }
        }
        ExtTable {
            source: self.source_name.clone(),
            target: self.target_name.clone(),
            d_max: self.d_max,
            window: self.res_window,
            entries,
        }
    }

    pub fn group(&self, d: u32) -> &ExtGroup {
        &self.groups[d as usize]
    }

    pub fn layout(&self, d: u32) -> &CochainLayout {
        &self.layouts[d as usize]
    }
}

/// A chain map between resolutions, stored by generator images.
pub struct ChainMap {
    /// `gen_images[s][j]`: image in `P_s(target-resolution)` coordinates at
    /// the degree of generator `j` of `P_s(source-resolution)`.
    gen_images: Vec<Vec<BitVec>>,
}

impl ChainMap {
    pub fn levels(&self) -> usize {
        self.gen_images.len()
    }

    /// Evaluate the level-`s` component on a vector at degree `t`.
    pub fn eval(
        &self,
        res_src: &ProjectiveResolution,
        res_tgt: &ProjectiveResolution,
        s: usize,
        t: u32,
        v: &BitVec,
    ) -> BitVec {
        let mut out = BitVec::zeros(res_tgt.level(s).dim(t));
        for c in v.ones() {
            let (j, mono) = &res_src.level(s).basis(t)[c];
            let img = &self.gen_images[s][*j];
            let gdeg = res_src.level(s).gens()[*j];
            let moved = res_tgt.level(s).apply_word(mono.exponents(), gdeg, img);
            out.xor_assign(&moved);
        }
        out
    }
}

/// Lift a module map `f : M' -> M` to a chain map between minimal
/// resolutions of `M'` and `M`, through the given number of levels.
/// Solutions are pivot-canonical, so lifts are reproducible.
pub fn lift_chain_map(
    f: &ModuleMap,
    res_src: &ProjectiveResolution, // resolution of M'
    res_tgt: &ProjectiveResolution, // resolution of M
    levels: usize,
) -> Result<ChainMap> {
    if res_src.window != res_tgt.window {
        return Err(Error::Usage("chain lift needs equal windows".into()));
    }
    let window = res_src.window;
    let mut gen_images: Vec<Vec<BitVec>> = Vec::with_capacity(levels);
    for s in 0..levels {
        let mut images = Vec::with_capacity(res_src.level(s).gens().len());
        for (j, &gdeg) in res_src.level(s).gens().iter().enumerate() {
            if gdeg > window {
                return Err(Error::Internal("generator outside window".into()));
            }
            // target vector in the previous stage of the target resolution
            let target_vec = if s == 0 {
                // f(augmentation image of the generator)
                let tag = (j, crate::steenrod::AdmissibleMonomial::unit());
                let pos = res_src.level(0).index_of(gdeg, &tag).unwrap();
                let aug = &res_src.level(0).columns(gdeg)[pos];
                f.block(gdeg).mul_vec(aug)
            } else {
                let tag = (j, crate::steenrod::AdmissibleMonomial::unit());
                let pos = res_src.level(s).index_of(gdeg, &tag).unwrap();
                let boundary = &res_src.level(s).columns(gdeg)[pos];
                let prev: &Vec<BitVec> = &gen_images[s - 1];
                let mut out = BitVec::zeros(res_tgt.level(s - 1).dim(gdeg));
                for c in boundary.ones() {
                    let (jj, mono) = &res_src.level(s - 1).basis(gdeg)[c];
                    let img = &prev[*jj];
                    let jdeg = res_src.level(s - 1).gens()[*jj];
                    out.xor_assign(&res_tgt.level(s - 1).apply_word(
                        mono.exponents(),
                        jdeg,
                        img,
                    ));
                }
                out
            };
            let mat = res_tgt.diff_matrix(s, gdeg);
            let x = mat.solve(&target_vec)?.ok_or_else(|| {
                Error::Internal(format!(
                    "chain lift failed at level {s}, generator degree {gdeg}"
                ))
            })?;
            images.push(x);
        }
        gen_images.push(images);
    }
    Ok(ChainMap { gen_images })
}

/// The cochain-level matrix of precomposition with a chain map:
/// `Hom(P_d(M), N) -> Hom(P_d(M'), N)`.
pub fn pullback_cochain_matrix(
    chain: &ChainMap,
    res_src: &ProjectiveResolution,
    res_tgt: &ProjectiveResolution,
    n: &Module,
    d: u32,
) -> Result<BitMatrix> {
    let from = layout(res_tgt, n, d as usize)?;
    let to = layout(res_src, n, d as usize)?;
    let mut mat = BitMatrix::zero(to.total, from.total);
    for (h, &(hdeg, hoff, hdim)) in to.blocks.iter().enumerate() {
        if hdim == 0 {
            continue;
        }
        // image of the h-th source generator inside P_d(M)
        let img = &chain.gen_images[d as usize][h];
        for c in img.ones() {
            let (i, mono) = &res_tgt.level(d as usize).basis(hdeg)[c];
            let (gdeg, goff, gdim) = from.blocks[*i];
            if gdim == 0 {
                continue;
            }
            let word = n.word_matrix(mono.exponents(), gdeg);
            for r in 0..word.rows() {
                for cc in word.row(r).ones() {
                    mat.set(hoff + r, goff + cc, !mat.get(hoff + r, goff + cc));
                }
            }
        }
    }
    Ok(mat)
}

/// Map induced on Ext by `f : M' -> M` in the canonical bases; entry
/// `[i][j]` column `j` is the image of the `j`-th canonical generator.
pub fn induced_ext_map(
    f: &ModuleMap,
    res_src: &ProjectiveResolution,
    res_tgt: &ProjectiveResolution,
    ext_src: &ExtComputation, // Ext(M, N)
    ext_dst: &ExtComputation, // Ext(M', N)
    n: &Module,
    d: u32,
) -> Result<BitMatrix> {
    let chain = lift_chain_map(f, res_src, res_tgt, d as usize + 1)?;
    let cochain = pullback_cochain_matrix(&chain, res_src, res_tgt, n, d)?;
    let src_group = ext_src.group(d);
    let dst_group = ext_dst.group(d);
    let mut cols = Vec::with_capacity(src_group.dim());
    for rep in src_group.representatives() {
        let image = cochain.mul_vec(rep);
        cols.push(dst_group.express(&image)?);
    }
    Ok(BitMatrix::from_cols(&cols, dst_group.dim()))
}

/// Map induced on Ext by a coefficient map `g : N -> N'` (covariant):
/// blockwise application on each cochain block.
pub fn coefficient_ext_map(
    g: &ModuleMap,
    res: &ProjectiveResolution,
    ext_src: &ExtComputation, // Ext(M, N)
    ext_dst: &ExtComputation, // Ext(M, N')
    d: u32,
) -> Result<BitMatrix> {
    let from = layout(res, g.source(), d as usize)?;
    let to = layout(res, g.target(), d as usize)?;
    let mut mat = BitMatrix::zero(to.total, from.total);
    for (idx, (&(gdeg, foff, fdim), &(_, toff, tdim))) in
        from.blocks.iter().zip(&to.blocks).enumerate()
    {
        let _ = idx;
        if fdim == 0 || tdim == 0 {
            continue;
        }
        let b = g.block(gdeg);
        for r in 0..b.rows() {
            for c in b.row(r).ones() {
                mat.set(toff + r, foff + c, true);
            }
        }
    }
    let src_group = ext_src.group(d);
    let dst_group = ext_dst.group(d);
    let mut cols = Vec::with_capacity(src_group.dim());
    for rep in src_group.representatives() {
        let image = mat.mul_vec(rep);
        cols.push(dst_group.express(&image)?);
    }
    Ok(BitMatrix::from_cols(&cols, dst_group.dim()))
}

/// A chain map `Q_• -> Phi(P_•)` lifting the identity of `Phi M`, where
/// `Q_•` resolves `Phi M` and `P_•` resolves `M`. Images are stored in the
/// halved-degree coordinates of `P_s`; odd-degree generators map to zero.
pub struct FrobeniusChain {
    gen_images: Vec<Vec<Option<BitVec>>>,
}

/// Lift the identity of `Phi M` through the doubled resolution. `res_phi`
/// resolves `Phi M` (same window), `res` resolves `M`; exactness of
/// `Phi P_•` at even degree `2m` is exactness of `P_•` at `m`.
pub fn lift_frobenius_chain(
    res: &ProjectiveResolution,     // resolution of M
    res_phi: &ProjectiveResolution, // resolution of Phi M
    phi_m: &Module,                 // Phi M at the resolution window
    levels: usize,
) -> Result<FrobeniusChain> {
    let mut gen_images: Vec<Vec<Option<BitVec>>> = Vec::with_capacity(levels);
    for s in 0..levels {
        let mut images: Vec<Option<BitVec>> = Vec::new();
        for (j, &gdeg) in res_phi.level(s).gens().iter().enumerate() {
            if gdeg % 2 == 1 {
                images.push(None);
                continue;
            }
            let half = gdeg / 2;
            if half > res.window {
                return Err(Error::WindowExceeded(
                    "twist lift needs the doubled window".into(),
                ));
            }
            let tag = (j, crate::steenrod::AdmissibleMonomial::unit());
            let pos = res_phi.level(s).index_of(gdeg, &tag).unwrap();
            let boundary = &res_phi.level(s).columns(gdeg)[pos];
            let target_vec = if s == 0 {
                // boundary is the augmentation image inside (Phi M)^{gdeg}
                // = M^{half}; the target is its preimage under P_0 -> M
                let mut v = BitVec::zeros(phi_m.dim(gdeg));
                v.xor_assign(boundary);
                v // coordinates agree: (Phi M)^{2m} has the basis of M^m
            } else {
                // push the boundary through the previous chain level into
                // (Phi P_{s-1})^{gdeg} = P_{s-1}^{half}
                let mut out = BitVec::zeros(res.level(s - 1).dim(half));
                for c in boundary.ones() {
                    let (jj, mono) = &res_phi.level(s - 1).basis(gdeg)[c];
                    let Some(img) = &gen_images[s - 1][*jj] else {
                        continue; // odd generators map to zero
                    };
                    let jdeg = res_phi.level(s - 1).gens()[*jj];
                    // the word acts through Phi: odd letters kill, even
                    // letters halve
                    let mut halved = Vec::with_capacity(mono.exponents().len());
                    let mut dead = false;
                    for &e in mono.exponents() {
                        if e % 2 == 1 {
                            dead = true;
                            break;
                        }
                        halved.push(e / 2);
                    }
                    if dead {
                        continue;
                    }
                    out.xor_assign(&res.level(s - 1).apply_word(&halved, jdeg / 2, img));
                }
                out
            };
            let mat = res.diff_matrix(s, half);
            let x = mat.solve(&target_vec)?.ok_or_else(|| {
                Error::Internal(format!(
                    "twist lift failed at level {s}, generator degree {gdeg}"
                ))
            })?;
            images.push(Some(x));
        }
        gen_images.push(images);
    }
    Ok(FrobeniusChain { gen_images })
}

/// The map `Ext^d(M, N) -> Ext^d(Phi M, Phi N)` induced by the doubling
/// functor, in canonical bases. `phi_n` must be `Phi N` truncated to the
/// common window, with the index convention of `frobenius`.
#[allow(clippy::too_many_arguments)]
pub fn frobenius_ext_map(
    res: &ProjectiveResolution,     // of M
    res_phi: &ProjectiveResolution, // of Phi M
    phi_m: &Module,
    n: &Module,
    phi_n: &Module,
    ext_src: &ExtComputation, // Ext(M, N)
    ext_dst: &ExtComputation, // Ext(Phi M, Phi N)
    d: u32,
) -> Result<BitMatrix> {
    let chain = lift_frobenius_chain(res, res_phi, phi_m, d as usize + 1)?;
    let from = layout(res, n, d as usize)?;
    let to = layout(res_phi, phi_n, d as usize)?;
    let mut mat = BitMatrix::zero(to.total, from.total);
    for (h, &(hdeg, hoff, hdim)) in to.blocks.iter().enumerate() {
        if hdim == 0 {
            continue;
        }
        let Some(img) = &chain.gen_images[d as usize][h] else {
            continue; // odd-degree generator: the block is zero
        };
        let half = hdeg / 2;
        for c in img.ones() {
            let (i, mono) = &res.level(d as usize).basis(half)[c];
            let (gdeg, goff, gdim) = from.blocks[*i];
            if gdim == 0 {
                continue;
            }
            // phi phi(y)(…) = Phi(y applied by the word) and (Phi N)^{2k}
            // shares coordinates with N^k
            let word = n.word_matrix(mono.exponents(), gdeg);
            debug_assert_eq!(word.rows(), phi_n.dim(hdeg));
            for r in 0..word.rows() {
                for cc in word.row(r).ones() {
                    mat.set(hoff + r, goff + cc, !mat.get(hoff + r, goff + cc));
                }
            }
        }
    }
    let src_group = ext_src.group(d);
    let dst_group = ext_dst.group(d);
    let mut cols = Vec::with_capacity(src_group.dim());
    for rep in src_group.representatives() {
        let image = mat.mul_vec(rep);
        cols.push(dst_group.express(&image)?);
    }
    Ok(BitMatrix::from_cols(&cols, dst_group.dim()))
}

/// Facade: `Ext(M, N)` dimensions through `d_max` at the given window.
pub fn ext_groups(m: &Module, n: &Module, d_max: u32, window: u32) -> Result<ExtTable> {
    let res = super::projective::minimal_projective_resolution(m, d_max as usize + 1, window)?;
    let n_w = crate::umod::with_window(n, window)?;
    Ok(compute_ext(&res, &n_w, d_max)?.table())
}
