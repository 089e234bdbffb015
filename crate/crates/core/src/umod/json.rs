//! JSON emission for modules: window, dims, labels, and the action as
//! sparse `(k, n, row, col)` quadruples. The schema is stable and the
//! output is canonically ordered, so identical modules serialize
//! byte-identically.

use serde::Serialize;

use super::GradedModule;

#[derive(Serialize)]
pub struct ModuleJson {
    pub name: String,
    pub window: u32,
    pub truncated: bool,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    /// Nonzero entries of every `Sq^k` matrix as `(k, n, row, col)`.
    pub action: Vec<(u32, u32, usize, usize)>,
}

pub fn module_to_json(m: &GradedModule) -> ModuleJson {
    let mut action = Vec::new();
    for (&(k, n), mat) in m.action_entries() {
        for r in 0..mat.rows() {
            for c in mat.row(r).ones() {
                action.push((k, n, r, c));
            }
        }
    }
    action.sort();
    ModuleJson {
        name: m.name().to_string(),
        window: m.window(),
        truncated: m.truncated(),
        dims: m.dims().to_vec(),
        labels: (0..=m.window()).map(|n| m.labels(n).to_vec()).collect(),
        action,
    }
}

pub fn module_json_string(m: &GradedModule) -> String {
    serde_json::to_string_pretty(&module_to_json(m)).expect("module serialization")
}

/// The shorthand `J(n_1,…,n_k)` for a direct sum of Brown-Gitler modules,
/// indices descending; the empty sum prints as `0`.
pub fn pretty_bg_multiset(indices: &[u32]) -> String {
    if indices.is_empty() {
        return "0".to_string();
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<String> = sorted.iter().map(u32::to_string).collect();
    format!("J({})", parts.join(","))
}

/// The analogous shorthand for sums of free modules.
pub fn pretty_free_multiset(degrees: &[u32]) -> String {
    if degrees.is_empty() {
        return "0".to_string();
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let parts: Vec<String> = sorted.iter().map(u32::to_string).collect();
    format!("F({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bg_printer() {
        assert_eq!(pretty_bg_multiset(&[]), "0");
        assert_eq!(pretty_bg_multiset(&[6, 7]), "J(7,6)");
        assert_eq!(pretty_bg_multiset(&[14, 12, 11, 8]), "J(14,12,11,8)");
        assert_eq!(pretty_bg_multiset(&[2]), "J(2)");
    }

    #[test]
    fn json_schema_stable() {
        let j2 = crate::umod::brown_gitler(2).unwrap();
        let a = module_json_string(&j2);
        let b = module_json_string(&j2);
        assert_eq!(a, b);
        assert!(a.contains("\"window\": 2"));
    }
}
