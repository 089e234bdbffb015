//! Recorded values: the published table of nilpotent resolution terms, the
//! displayed first-differential blocks, the two competing third-term
//! formulas, and the dimension function driving the Ext vanishing pattern.
//!
//! Each row carries a provenance note. Rows 25–32 are not printed anywhere;
//! they follow from the low range by the periodicity of the nilpotent part
//! and are marked as such (they drive no verification).

use crate::error::{Error, Result};
use crate::steenrod::SteenrodElement;
use crate::umod::json::pretty_bg_multiset;

/// Provenance of a fixture row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Provenance {
    /// Printed in the small-range table (indices 1–24).
    TableLow,
    /// Printed in the 33–49 table.
    TableHigh,
    /// Derived by the periodicity of the nilpotent part; display only.
    Periodicity,
    /// The closed third-term formula.
    ThirdTermFormula,
    /// The stable-range table's third-term entry.
    StableTable,
    /// The displayed first-differential column.
    FirstDifferential,
    /// The dimension function for the twist vanishing pattern.
    VanishingPattern,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::TableLow => "resolution-table rows 1-24",
            Provenance::TableHigh => "resolution-table rows 33-49",
            Provenance::Periodicity => "periodicity extension (display only)",
            Provenance::ThirdTermFormula => "closed third-term formula",
            Provenance::StableTable => "stable-range table",
            Provenance::FirstDifferential => "displayed first-differential column",
            Provenance::VanishingPattern => "twist vanishing pattern",
        }
    }
}

/// One row of the nilpotent-term table: index, Brown-Gitler multiset
/// (descending), provenance.
pub struct NkRow {
    pub k: u32,
    pub indices: Vec<u32>,
    pub provenance: Provenance,
}

/// The table of nilpotent resolution terms for indices 1..=49.
pub fn nk_table() -> Vec<NkRow> {
    use Provenance::*;
    let rows: Vec<(u32, Vec<u32>, Provenance)> = vec![
        (1, vec![], TableLow),
        (2, vec![], TableLow),
        (3, vec![1], TableLow),
        (4, vec![], TableLow),
        (5, vec![2], TableLow),
        (6, vec![], TableLow),
        (7, vec![1], TableLow),
        (8, vec![], TableLow),
        (9, vec![4], TableLow),
        (10, vec![3], TableLow),
        (11, vec![2], TableLow),
        (12, vec![], TableLow),
        (13, vec![2], TableLow),
        (14, vec![], TableLow),
        (15, vec![1], TableLow),
        (16, vec![], TableLow),
        (17, vec![8], TableLow),
        (18, vec![7, 6], TableLow),
        (19, vec![6, 4], TableLow),
        (20, vec![5], TableLow),
        (21, vec![4], TableLow),
        (22, vec![3], TableLow),
        (23, vec![2], TableLow),
        (24, vec![], TableLow),
        (25, vec![4], Periodicity),
        (26, vec![3], Periodicity),
        (27, vec![2], Periodicity),
        (28, vec![], Periodicity),
        (29, vec![2], Periodicity),
        (30, vec![], Periodicity),
        (31, vec![1], Periodicity),
        (32, vec![], Periodicity),
        (33, vec![16], TableHigh),
        (34, vec![15, 14, 12], TableHigh),
        (35, vec![14, 12, 11, 8], TableHigh),
        (36, vec![13, 10, 5], TableHigh),
        (37, vec![12, 4, 3], TableHigh),
        (38, vec![11, 6, 3], TableHigh),
        (39, vec![10, 2], TableHigh),
        (40, vec![9], TableHigh),
        (41, vec![8], TableHigh),
        (42, vec![7, 6], TableHigh),
        (43, vec![6, 4], TableHigh),
        (44, vec![5], TableHigh),
        (45, vec![4], TableHigh),
        (46, vec![3], TableHigh),
        (47, vec![2], TableHigh),
        (48, vec![], TableHigh),
        (49, vec![8], TableHigh),
    ];
    rows.into_iter()
        .map(|(k, indices, provenance)| NkRow {
            k,
            indices,
            provenance,
        })
        .collect()
}

/// Look up one row.
pub fn nk_row(k: u32) -> Result<NkRow> {
    nk_table()
        .into_iter()
        .find(|r| r.k == k)
        .ok_or_else(|| Error::Usage(format!("no recorded row for index {k}")))
}

pub fn nk_pretty(k: u32) -> Result<String> {
    Ok(pretty_bg_multiset(&nk_row(k)?.indices))
}

/// Expected first-differential column for the resolution of `H(k)`:
/// the block into `J(2^{k-1} - 2^i)` is `Sq^{2^i}`, `i = 0..=k-3`.
pub fn first_differential_column(k: u32) -> Vec<(u32, SteenrodElement)> {
    if k < 3 {
        return Vec::new();
    }
    (0..=(k - 3))
        .map(|i| ((1u32 << (k - 1)) - (1 << i), SteenrodElement::sq(1 << i)))
        .collect()
}

/// The closed formula for the third resolution term of `H(k)`:
/// sum of `J(2^{k-1} - 2^i)` for `1 <= i <= k-2`, plus
/// `J(2^{k-1} - 2^i - 2^j)` for `1 <= i <= k-2`, `0 <= j <= i-2`.
pub fn third_term_formula(k: u32) -> Vec<u32> {
    let top = 1u32 << (k - 1);
    let mut out = Vec::new();
    for i in 1..=(k.saturating_sub(2)) {
        out.push(top - (1 << i));
    }
    for i in 1..=(k.saturating_sub(2)) {
        for j in 0..i.saturating_sub(1) {
            out.push(top - (1 << i) - (1 << j));
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// The stable table's value for the index `2^n + 3` entry: `J(2^{n-2})`
/// plus the sum with the first factor range shortened by one.
pub fn stable_third_term(n: u32) -> Vec<u32> {
    let top = 1u32 << (n - 1);
    let mut out = vec![1u32 << (n - 2)];
    for i in 1..=(n.saturating_sub(3)) {
        out.push(top - (1 << i));
    }
    for i in 1..=(n.saturating_sub(2)) {
        for j in 0..i.saturating_sub(1) {
            out.push(top - (1 << i) - (1 << j));
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Expected fourth term of the resolution of `H(k)`: the table row at
/// `2^k + 4` with one extra `J(1)`.
pub fn fourth_term_fixture(k: u32) -> Result<Vec<u32>> {
    let mut indices = nk_row((1 << k) + 4)?.indices;
    indices.push(1);
    indices.sort_unstable_by(|a, b| b.cmp(a));
    Ok(indices)
}

/// `upsilon(d)` for even `d >= 2` with binary expansion
/// `2^{n_1} + … + 2^{n_k}` (`n_1 < … < n_k`): the value `1 + n_k - k`.
pub fn upsilon(d: u32) -> Result<i64> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::Usage(format!("upsilon needs an even d >= 2, got {d}")));
    }
    let n_k = d.ilog2() as i64;
    let k = d.count_ones() as i64;
    Ok(1 + n_k - k)
}

/// The predicted dimension of the degree-`d` twist-`r` extension group:
/// zero for odd `d`, zero for even `d` with `r < upsilon(d)`, one
/// otherwise.
pub fn expected_ext_dim(d: u32, r: u32) -> Result<usize> {
    if d == 0 {
        return Ok(1); // Hom(Phi^r F(1), F(1)) is one-dimensional
    }
    if d % 2 == 1 {
        return Ok(0);
    }
    Ok(if (r as i64) < upsilon(d)? { 0 } else { 1 })
}

/// Context constants from results used only as oracles; displayed in
/// reports, never asserted against engine output.
pub fn context_constants() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "functor-category pattern",
            "the degree-i self-extensions of the inclusion functor vanish unless 2^{k+1} divides i, one generator each otherwise",
        ),
        (
            "self-extension algebra",
            "the total self-extension algebra is polynomial on classes e_n in degree 2^{n+1} modulo the squares e_n^2",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_round_trip() {
        assert_eq!(nk_pretty(35).unwrap(), "J(14,12,11,8)");
        assert_eq!(nk_pretty(18).unwrap(), "J(7,6)");
        assert_eq!(nk_pretty(16).unwrap(), "0");
        assert_eq!(nk_pretty(36).unwrap(), "J(13,10,5)");
    }

    #[test]
    fn upsilon_values() {
        assert_eq!(upsilon(2).unwrap(), 1);
        assert_eq!(upsilon(4).unwrap(), 2);
        assert_eq!(upsilon(6).unwrap(), 1);
        assert_eq!(upsilon(12).unwrap(), 2);
        for n in 1..=6u32 {
            assert_eq!(upsilon(1 << n).unwrap(), n as i64, "upsilon(2^{n})");
        }
        assert!(upsilon(3).is_err());
        assert!(upsilon(0).is_err());
    }

    #[test]
    fn third_term_formulas() {
        assert_eq!(third_term_formula(4), vec![6, 4, 3]);
        assert_eq!(third_term_formula(5), vec![14, 12, 11, 8, 7, 6]);
        // at k = 6 the closed formula and the stable table expand to the
        // same multiset
        assert_eq!(third_term_formula(6), stable_third_term(6));
    }

    #[test]
    fn periodicity_rows_echo_low_range() {
        // rows 25..=31 repeat rows 9..=15
        for t in 0..=6u32 {
            assert_eq!(nk_row(25 + t).unwrap().indices, nk_row(9 + t).unwrap().indices);
        }
    }
}
