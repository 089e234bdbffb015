//! Minimal projective resolutions, built degree by degree.
//!
//! At each internal degree `t` the sweep finishes level 0 (new generators
//! cover what the augmentation misses, i.e. a basis of `top(M)^t`), then
//! each higher level in turn: new generators cover the kernel of the level
//! below modulo the image already hit. Exactness through degree `t` of
//! everything below is an invariant of the sweep, which is what makes the
//! greedy construction minimal.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, RowSpan};
use crate::umod::{free_module, top, Module, ModuleMap};

use super::free::{FreeLevel, Prev};
use super::injective::Certificates;

pub struct ProjectiveResolution {
    pub base: Module,
    pub window: u32,
    levels: Vec<FreeLevel>,
    pub certificates: Certificates,
}

impl ProjectiveResolution {
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, s: usize) -> &FreeLevel {
        &self.levels[s]
    }

    /// Generator degrees of `P_s`.
    pub fn generator_degrees(&self, s: usize) -> Vec<u32> {
        let mut g = self.levels[s].gens().to_vec();
        g.sort_unstable();
        g
    }

    pub fn prev_dim(&self, s: usize, t: u32) -> usize {
        if s == 0 {
            self.base.dim(t)
        } else {
            self.levels[s - 1].dim(t)
        }
    }

    /// The differential (or augmentation, for `s = 0`) at degree `t`.
    pub fn diff_matrix(&self, s: usize, t: u32) -> BitMatrix {
        self.levels[s].diff_matrix(t, self.prev_dim(s, t))
    }
}

/// Build `steps + 1` levels of the minimal projective resolution, exact in
/// internal degrees `<= window`.
pub fn minimal_projective_resolution(
    m: &Module,
    steps: usize,
    window: u32,
) -> Result<ProjectiveResolution> {
    if m.truncated() && m.window() < window {
        return Err(Error::Usage(format!(
            "resolution window {window} exceeds the truncation window {} of {}",
            m.window(),
            m.name()
        )));
    }
    let m: Module = crate::umod::with_window(m, window)?;
    let m = &m;
    let num_levels = steps + 1;
    let mut levels: Vec<FreeLevel> = (0..num_levels).map(|_| FreeLevel::new(window)).collect();
    let mut exact = true;
    let mut minimal = true;

    for t in 0..=window {
        let m_dim = m.dim(t);
        // level 0: cover the part of M^t the existing generators miss
        {
            let prev = Prev::Base(m);
            levels[0].build_degree(t, &prev);
            let mut image = RowSpan::empty(m_dim);
            for col in levels[0].columns(t) {
                image.insert(col);
            }
            // minimality: old generators hit exactly the radical, and new
            // generator images must be independent modulo it
            let mut radical = RowSpan::empty(m_dim);
            for k in 1..=t {
                if let Some(a) = m.action_ref(k, t - k) {
                    for c in 0..a.cols() {
                        radical.insert(&a.col(c));
                    }
                }
            }
            for pos in levels[0].unit_positions(t) {
                if !radical.insert(&levels[0].columns(t)[pos]) {
                    minimal = false;
                }
            }
            // the complementary coordinates are canonical new generators
            let pivots: BTreeSet<usize> = image.pivots().iter().copied().collect();
            for q in 0..m_dim {
                if !pivots.contains(&q) {
                    levels[0].add_generator(t, BitVec::standard(m_dim, q));
                    image.insert(&BitVec::standard(m_dim, q));
                }
            }
            if image.dim() != m_dim {
                exact = false; // augmentation must be onto
            }
        }
        // higher levels: cover the kernel below modulo what is already hit
        for s in 1..num_levels {
            let (lower, upper) = levels.split_at_mut(s);
            let below = &lower[s - 1];
            let level = &mut upper[0];
            level.build_degree(t, &Prev::Level(below));
            if below.dim(t) == 0 && level.dim(t) == 0 {
                continue;
            }
            let below_matrix = below.diff_matrix(
                t,
                if s == 1 {
                    m_dim
                } else {
                    lower[s - 2].dim(t)
                },
            );
            let kernel = below_matrix.kernel_basis();
            let mut hit = RowSpan::empty(below.dim(t));
            for col in level.columns(t) {
                // exactness: every column must land in the kernel below
                if !below_matrix.mul_vec(col).is_zero() {
                    exact = false;
                }
                hit.insert(col);
            }
            // minimality: differentials avoid generator coordinates
            let units = below.unit_positions(t);
            let pre_count = level.columns(t).len();
            for col in level.columns(t) {
                for &pos in &units {
                    if col.get(pos) {
                        minimal = false;
                    }
                }
            }
            for z in &kernel {
                let r = hit.reduce(z);
                if !r.is_zero() {
                    level.add_generator(t, r.clone());
                    hit.insert(&r);
                }
            }
            // new generator images are kernel vectors by construction but
            // must also avoid the generator coordinates below
            for col in &level.columns(t)[pre_count..] {
                for &pos in &units {
                    if col.get(pos) {
                        minimal = false;
                    }
                }
            }
            // exactness: the image now fills the kernel exactly
            if hit.dim() != kernel.len() {
                exact = false;
            }
        }
    }

    Ok(ProjectiveResolution {
        base: Arc::clone(m),
        window,
        levels,
        certificates: Certificates { exact, minimal },
    })
}

/// The projective cover of `M` through internal degree `window`, as an
/// explicit module with its surjection: one `F(n)` per `top(M)` class.
pub fn projective_cover(m: &Module, window: u32) -> Result<(Vec<u32>, Module, ModuleMap)> {
    if m.truncated() && m.window() < window {
        return Err(Error::Usage(
            "cover window exceeds the module's truncation window".into(),
        ));
    }
    let m_at = crate::umod::with_window(m, window)?;
    let tops = top(&m_at);
    let mut gens: Vec<(u32, usize)> = Vec::new(); // (degree, coordinate)
    for (n, (_, free)) in tops.iter().enumerate() {
        for &q in free {
            gens.push((n as u32, q));
        }
    }
    let degrees: Vec<u32> = gens.iter().map(|&(n, _)| n).collect();
    let parts: Vec<Module> = degrees
        .iter()
        .map(|&n| free_module(n, window))
        .collect::<Result<_>>()?;
    let cover = if parts.is_empty() {
        Arc::new(crate::umod::GradedModule::assemble(
            "0",
            window,
            false,
            vec![0; window as usize + 1],
            vec![Vec::new(); window as usize + 1],
            Default::default(),
        )?)
    } else {
        crate::umod::direct_sum(&parts, crate::umod::json::pretty_free_multiset(&degrees))?
    };
    // surjection: basis element Sq^I of the i-th summand maps to
    // Sq^I applied to the representative of the i-th generator
    let mut blocks = Vec::with_capacity(window as usize + 1);
    for d in 0..=window {
        let mut mat = BitMatrix::zero(m_at.dim(d), cover.dim(d));
        let offsets = crate::umod::sum_offsets(&parts, d);
        for (i, part) in parts.iter().enumerate() {
            let (gdeg, coord) = gens[i];
            if d < gdeg {
                continue;
            }
            let rep = BitVec::standard(m_at.dim(gdeg), coord);
            for (local, mono) in crate::umod::build::free_basis(gdeg, d).iter().enumerate() {
                let v = m_at.apply_word(mono.exponents(), gdeg, &rep);
                for r in v.ones() {
                    mat.set(r, offsets[i] + local, true);
                }
            }
            debug_assert_eq!(part.dim(d), crate::umod::build::free_basis(gdeg, d).len());
        }
        blocks.push(mat);
    }
    let surj = ModuleMap::new(Arc::clone(&cover), m_at, blocks)?;
    Ok((degrees, cover, surj))
}
