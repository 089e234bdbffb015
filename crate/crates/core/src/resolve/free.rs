//! Lean bookkeeping for sums of free unstable modules inside resolutions.
//!
//! A level is a sum of `F(n)`'s given by its generator degrees. The basis
//! in degree `t` is tagged `(generator, admissible monomial)`; differentials
//! are stored as one column per basis element, built incrementally: the
//! column of `(g, (x) · I)` is `Sq^x` applied to the already-known column of
//! `(g, I)`, so each basis element costs one operation application.

use std::collections::HashMap;

use crate::f2::BitVec;
use crate::steenrod::{admissibles_of_degree, AdmissibleMonomial};
use crate::umod::Module;

pub type BasisTag = (usize, AdmissibleMonomial);

pub struct FreeLevel {
    /// Generator degrees in creation order (ascending, since the sweep
    /// walks degrees upward).
    gens: Vec<u32>,
    /// Basis tags per degree; generator index ascending, monomials in
    /// canonical order.
    basis: Vec<Vec<BasisTag>>,
    index: Vec<HashMap<BasisTag, usize>>,
    /// Differential columns per degree, in the coordinates of the previous
    /// level (or of the base module for level 0).
    cols: Vec<Vec<BitVec>>,
}

/// What a level maps into.
pub enum Prev<'a> {
    Base(&'a Module),
    Level(&'a FreeLevel),
}

impl Prev<'_> {
    #[allow(dead_code)]
    fn dim(&self, t: u32) -> usize {
        match self {
            Prev::Base(m) => m.dim(t),
            Prev::Level(l) => l.dim(t),
        }
    }

    fn apply_sq(&self, k: u32, t: u32, v: &BitVec) -> BitVec {
        match self {
            Prev::Base(m) => m.apply_sq(k, t, v),
            Prev::Level(l) => l.apply_sq(k, t, v),
        }
    }
}

impl FreeLevel {
    pub fn new(window: u32) -> FreeLevel {
        let len = window as usize + 1;
        FreeLevel {
            gens: Vec::new(),
            basis: vec![Vec::new(); len],
            index: vec![HashMap::new(); len],
            cols: vec![Vec::new(); len],
        }
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn dim(&self, t: u32) -> usize {
        self.basis[t as usize].len()
    }

    pub fn basis(&self, t: u32) -> &[BasisTag] {
        &self.basis[t as usize]
    }

    pub fn index_of(&self, t: u32, tag: &BasisTag) -> Option<usize> {
        self.index[t as usize].get(tag).copied()
    }

    /// Differential columns at degree `t` (previous-level coordinates).
    pub fn columns(&self, t: u32) -> &[BitVec] {
        &self.cols[t as usize]
    }

    /// The differential at degree `t` as a matrix into the previous level.
    pub fn diff_matrix(&self, t: u32, prev_dim: usize) -> crate::f2::BitMatrix {
        crate::f2::BitMatrix::from_cols(&self.cols[t as usize], prev_dim)
    }

    /// `Sq^k` inside this level: expand each tag by left multiplication,
    /// dropping terms whose excess exceeds the generator degree.
    pub fn apply_sq(&self, k: u32, t: u32, v: &BitVec) -> BitVec {
        let target = t + k;
        let mut out = BitVec::zeros(self.dim(target));
        if k == 0 {
            return v.clone();
        }
        for c in v.ones() {
            let (g, mono) = &self.basis[t as usize][c];
            let excess_cap = self.gens[*g] as i64;
            for term in crate::steenrod::apply_sq_left(
                k,
                &crate::steenrod::SteenrodElement::from_monomial(mono.clone()),
            )
            .terms()
            {
                if term.excess() <= excess_cap {
                    let idx = self.index[target as usize][&(*g, term.clone())];
                    out.toggle(idx);
                }
            }
        }
        out
    }

    /// Apply an admissible word (rightmost letter first).
    pub fn apply_word(&self, word: &[u32], t: u32, v: &BitVec) -> BitVec {
        let mut acc = v.clone();
        let mut deg = t;
        for &k in word.iter().rev() {
            acc = self.apply_sq(k, deg, &acc);
            deg += k;
        }
        acc
    }

    /// Extend basis and differential columns to degree `t`. All generators
    /// of degree `<= t` must already be present; called once per degree,
    /// in ascending order, after the previous level is final at `t`.
    pub fn build_degree(&mut self, t: u32, prev: &Prev<'_>) {
        debug_assert!(self.basis[t as usize].is_empty());
        let mut tags: Vec<BasisTag> = Vec::new();
        for (g, &gdeg) in self.gens.iter().enumerate() {
            if gdeg > t {
                continue;
            }
            for mono in admissibles_of_degree(t - gdeg).iter() {
                if mono.excess() <= gdeg as i64 {
                    tags.push((g, mono.clone()));
                }
            }
        }
        let mut cols = Vec::with_capacity(tags.len());
        for tag in &tags {
            let (g, mono) = tag;
            let exps = mono.exponents();
            debug_assert!(!exps.is_empty(), "unit tags enter with their generator");
            let head = exps[0];
            let tail = AdmissibleMonomial::new_unchecked(exps[1..].to_vec());
            let lower = self.index[(t - head) as usize][&(*g, tail)];
            let below = &self.cols[(t - head) as usize][lower];
            cols.push(prev.apply_sq(head, t - head, below));
        }
        for (i, tag) in tags.iter().enumerate() {
            self.index[t as usize].insert(tag.clone(), i);
        }
        self.basis[t as usize] = tags;
        self.cols[t as usize] = cols;
    }

    /// Add a generator at degree `t` with the given differential image
    /// (previous-level coordinates at `t`).
    pub fn add_generator(&mut self, t: u32, image: BitVec) -> usize {
        let g = self.gens.len();
        self.gens.push(t);
        let tag = (g, AdmissibleMonomial::unit());
        let pos = self.basis[t as usize].len();
        self.index[t as usize].insert(tag.clone(), pos);
        self.basis[t as usize].push(tag);
        self.cols[t as usize].push(image);
        g
    }

    /// Coordinates of the unit tags (generator positions) at degree `t`;
    /// used by the minimality certificate (differentials must avoid them).
    pub fn unit_positions(&self, t: u32) -> Vec<usize> {
        self.basis[t as usize]
            .iter()
            .enumerate()
            .filter(|(_, (_, m))| m.is_unit())
            .map(|(i, _)| i)
            .collect()
    }
}
