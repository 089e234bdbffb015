//! Extraction of differentials between Brown-Gitler sums as matrices of
//! Steenrod operations.
//!
//! A map `J(n) -> J(m)` is `•θ` for some operation `θ` of degree `n - m`;
//! its defining functional on `J(n)^m` takes `x` to the coefficient of the
//! top class in `θ·x`. Each block of a map between sums is matched against
//! that correspondence by a pivot-canonical solve, and the answer is
//! verified by realizing it back into a map.

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::steenrod::{admissibles_of_degree, SteenrodElement};
use crate::umod::homj::{bullet_functional, bullet_map};
use crate::umod::{brown_gitler, ModuleMap};

use super::injective::BgSum;

/// Matrix of operations for a map between Brown-Gitler sums; entry `(i, j)`
/// is the operation of the block from source summand `j` into target
/// summand `i`.
pub fn operation_matrix(
    map: &ModuleMap,
    source: &BgSum,
    target: &BgSum,
) -> Result<Vec<Vec<SteenrodElement>>> {
    let mut rows = Vec::with_capacity(target.indices().len());
    for (i, &mi) in target.indices().iter().enumerate() {
        let mut row = Vec::with_capacity(source.indices().len());
        for (j, &nj) in source.indices().iter().enumerate() {
            row.push(extract_block(map, source, target, j, i, nj, mi)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn extract_block(
    map: &ModuleMap,
    source: &BgSum,
    target: &BgSum,
    j: usize,
    i: usize,
    nj: u32,
    mi: u32,
) -> Result<SteenrodElement> {
    let jn = brown_gitler(nj)?;
    // the block at degree mi determines the whole block map
    if mi > nj {
        // operations have non-negative degree; the block must vanish
        if !block_is_zero(map, source, target, j, i, nj, mi) {
            return Err(Error::Internal(
                "nonzero block where no operation can exist".into(),
            ));
        }
        return Ok(SteenrodElement::zero());
    }
    let deg = nj - mi;
    let dim = jn.dim(mi);
    // functional of the block: row of the degree-mi block restricted to the
    // source summand, composed with the target summand's top coordinate
    let mut functional = BitVec::zeros(dim);
    if mi <= map.window() {
        let block = map.block(mi);
        let src_off = source.offsets(mi)[j];
        let tgt_off = target.offsets(mi)[i];
        // the target summand J(mi) has dimension 1 in its top degree mi
        for c in 0..dim {
            if block.get(tgt_off, src_off + c) {
                functional.set(c, true);
            }
        }
    }
    // solve functional = sum_theta c_theta f_theta over admissibles of the
    // right degree
    let candidates = admissibles_of_degree(deg);
    let cols: Vec<BitVec> = candidates
        .iter()
        .map(|m| {
            bullet_functional(
                &jn,
                &SteenrodElement::from_monomial(m.clone()),
                nj,
                mi,
            )
        })
        .collect();
    let a = BitMatrix::from_cols(&cols, dim);
    let x = a.solve(&functional)?.ok_or_else(|| {
        Error::Internal(format!(
            "block J({nj}) -> J({mi}) is not a Steenrod operation"
        ))
    })?;
    let theta = SteenrodElement::from_terms(
        x.ones().into_iter().map(|k| candidates[k].clone()),
    )?;
    // verify: the realized bullet map equals the block everywhere
    let realized = bullet_map(&theta, nj, mi)?;
    for d in 0..=mi.min(map.window()) {
        let src_off = source.offsets(d)[j];
        let tgt_off = target.offsets(d)[i];
        let block = map.block(d);
        let rb = realized.block(d);
        for r in 0..rb.rows() {
            for c in 0..rb.cols() {
                if rb.get(r, c) != block.get(tgt_off + r, src_off + c) {
                    return Err(Error::Internal(format!(
                        "extracted operation does not reproduce the block J({nj}) -> J({mi})"
                    )));
                }
            }
        }
    }
    Ok(theta)
}

fn block_is_zero(
    map: &ModuleMap,
    source: &BgSum,
    target: &BgSum,
    j: usize,
    i: usize,
    nj: u32,
    mi: u32,
) -> bool {
    for d in 0..=map.window() {
        let jn_dim = brown_gitler(nj).map(|m| if d <= nj { m.dim(d) } else { 0 }).unwrap_or(0);
        let jm_dim = brown_gitler(mi).map(|m| if d <= mi { m.dim(d) } else { 0 }).unwrap_or(0);
        if jn_dim == 0 || jm_dim == 0 {
            continue;
        }
        let src_off = source.offsets(d)[j];
        let tgt_off = target.offsets(d)[i];
        let block = map.block(d);
        for r in 0..jm_dim {
            for c in 0..jn_dim {
                if block.get(tgt_off + r, src_off + c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Print an operation matrix in the compressed syntax, rows joined by `;`.
pub fn print_operation_matrix(rows: &[Vec<SteenrodElement>]) -> String {
    rows.iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(crate::steenrod::parse::print_element)
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}
