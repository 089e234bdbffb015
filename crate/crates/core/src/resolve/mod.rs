//! Minimal resolutions and Ext groups.
//!
//! Injective resolutions are restricted to finite nilpotent modules, where
//! every term is a finite sum of Brown-Gitler modules; projective
//! resolutions work degreewise on a bounded internal-degree window and feed
//! the Ext machinery. Both flavors carry exactness and minimality
//! certificates computed on the result.

pub mod ext;
pub mod free;
pub mod injective;
pub mod ops;
pub mod projective;

pub use ext::{
    coefficient_ext_map, compute_ext, ext_groups, frobenius_ext_map, induced_ext_map,
    lift_chain_map, lift_frobenius_chain, ExtComputation, ExtGroup, ExtTable,
};
pub use injective::{
    injective_hull, minimal_injective_resolution, BgSum, Certificates, InjectiveResolution,
};
pub use ops::{operation_matrix, print_operation_matrix};
pub use projective::{minimal_projective_resolution, projective_cover, ProjectiveResolution};

use serde::Serialize;

/// JSON report for a resolution of either flavor.
#[derive(Serialize)]
pub struct ResolutionReport {
    pub flavor: String,
    pub base: String,
    pub valid_internal_degree: u32,
    pub complete: bool,
    /// Brown-Gitler multisets (injective) or generator degrees (projective)
    /// per term.
    pub terms: Vec<Vec<u32>>,
    pub pretty_terms: Vec<String>,
    /// Operation matrices of the differentials (injective flavor only).
    pub differentials: Vec<Vec<Vec<String>>>,
    pub certificates: Certificates,
}

pub fn injective_report(res: &InjectiveResolution) -> crate::error::Result<ResolutionReport> {
    let mut differentials = Vec::new();
    for (j, map) in res.maps.iter().enumerate() {
        let rows = operation_matrix(map, &res.terms[j], &res.terms[j + 1])?;
        differentials.push(
            rows.iter()
                .map(|row| {
                    row.iter()
                        .map(crate::steenrod::parse::print_element)
                        .collect()
                })
                .collect(),
        );
    }
    Ok(ResolutionReport {
        flavor: "injective".into(),
        base: res.base.name().to_string(),
        valid_internal_degree: res
            .terms
            .iter()
            .map(|t| t.module().window())
            .max()
            .unwrap_or(0),
        complete: res.complete,
        terms: res.terms.iter().map(|t| t.indices().to_vec()).collect(),
        pretty_terms: res.terms.iter().map(BgSum::pretty).collect(),
        differentials,
        certificates: res.certificates.clone(),
    })
}

pub fn projective_report(res: &ProjectiveResolution, steps_shown: usize) -> ResolutionReport {
    let shown = steps_shown.min(res.num_levels());
    let terms: Vec<Vec<u32>> = (0..shown).map(|s| res.generator_degrees(s)).collect();
    let pretty_terms = terms
        .iter()
        .map(|t| crate::umod::json::pretty_free_multiset(t))
        .collect();
    ResolutionReport {
        flavor: "projective".into(),
        base: res.base.name().to_string(),
        valid_internal_degree: res.window,
        complete: false, // projective chains are reported per window, not to exhaustion
        terms,
        pretty_terms,
        differentials: Vec::new(),
        certificates: res.certificates.clone(),
    }
}
