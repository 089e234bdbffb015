//! Verification procedures: run the engine against the recorded fixtures
//! and emit findings. Procedures are deterministic and idempotent; each
//! finding carries its fixture provenance and a hash of the engine artifact
//! it was compared against.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::resolve::{
    coefficient_ext_map, compute_ext, frobenius_ext_map, induced_ext_map, injective_hull,
    injective_report, minimal_injective_resolution, minimal_projective_resolution,
    operation_matrix, ExtComputation, ProjectiveResolution,
};
use crate::steenrod::parse::print_element;
use crate::umod::json::pretty_bg_multiset;
use crate::umod::{
    free_module, frobenius, h_k, sigma_simple, tensor, with_window, Module,
    ModuleMap,
};

use super::fixtures::{
    self, expected_ext_dim, first_differential_column, fourth_term_fixture, nk_row,
    stable_third_term, third_term_formula, Provenance,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    /// Exploratory or adjudicative outcome; never blocks.
    Info,
    /// Not applicable or not computable at the given window.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub check: String,
    pub inputs: serde_json::Value,
    pub expected: String,
    pub provenance: String,
    pub actual: String,
    pub verdict: Verdict,
    pub artifact_sha256: String,
}

#[derive(Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub notes: Vec<String>,
    pub findings: Vec<Finding>,
}

impl Report {
    fn new(suite: &str) -> Report {
        Report {
            suite: suite.to_string(),
            passed: true,
            notes: Vec::new(),
            findings: Vec::new(),
        }
    }

    fn push(&mut self, f: Finding) {
        if f.verdict == Verdict::Fail {
            self.passed = false;
        }
        self.findings.push(f);
    }

    fn merge(&mut self, other: Report) {
        self.passed &= other.passed;
        self.findings.extend(other.findings);
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

fn sha(artifact: &str) -> String {
    let mut h = Sha256::new();
    h.update(artifact.as_bytes());
    hex_string(&h.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// The scale limitation documented in every report.
pub fn desk_scale_note() -> String {
    "full-range statements (indices up to 49 plus the stable ranges, and the \
     periodicity of the nilpotent part) concern internal degrees up to 2^24 \
     or the reduced part of the resolution and are not reproducible at desk \
     scale; this build verifies the truncated ranges stated in each check"
        .to_string()
}

// ---------------------------------------------------------------------------
// tables
// ---------------------------------------------------------------------------

/// Compare the resolution of `H(k)` against the recorded rows: terms 1-3,
/// the fourth term with its extra `J(1)`, and the first-differential
/// blocks.
pub fn verify_hk_vs_table(k: u32) -> Result<Report> {
    assert!((2..=5).contains(&k), "recorded rows cover k = 2..=5");
    let mut report = Report::new(&format!("tables:H({k})"));
    let hk = h_k(k)?;
    let res = minimal_injective_resolution(&hk, 4)?;
    let artifact = serde_json::to_string(&injective_report(&res)?).expect("report json");
    let hash = sha(&artifact);

    // certified chain
    report.push(Finding {
        check: format!("H({k}) resolution certificates"),
        inputs: serde_json::json!({ "k": k, "steps": 4 }),
        expected: "exact and minimal".into(),
        provenance: "engine certificates".into(),
        actual: format!(
            "exact={} minimal={}",
            res.certificates.exact, res.certificates.minimal
        ),
        verdict: if res.certificates.exact && res.certificates.minimal {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        artifact_sha256: hash.clone(),
    });

    for j in 1..=3u32 {
        let row = nk_row((1 << k) + j)?;
        let engine: Vec<u32> = res
            .terms
            .get(j as usize - 1)
            .map(|t| t.indices().to_vec())
            .unwrap_or_default();
        let terminated = res.complete && (j as usize) > res.terms.len();
        let check = format!("H({k}) term {j} vs recorded row {}", (1 << k) + j);
        if terminated && !row.indices.is_empty() {
            // the chain ended exactly; later recorded rows belong to the
            // ambient resolution, not to H(k)
            report.push(Finding {
                check,
                inputs: serde_json::json!({ "k": k, "term": j }),
                expected: pretty_bg_multiset(&row.indices),
                provenance: row.provenance.label().into(),
                actual: "resolution terminated (exact zero cokernel)".into(),
                verdict: Verdict::Skipped,
                artifact_sha256: hash.clone(),
            });
            continue;
        }
        let verdict = if j == 3 && k == 5 {
            // adjudicated term: the recorded row and the closed formula
            // disagree; pass when the engine matches at least one
            let formula = third_term_formula(k);
            let matches_table = engine == row.indices;
            let matches_formula = engine == formula;
            let named = match (matches_table, matches_formula) {
                (true, true) => "matches both candidates",
                (true, false) => "matches the recorded table row",
                (false, true) => "matches the closed formula",
                (false, false) => "matches neither candidate",
            };
            report.push(Finding {
                check: format!("H(5) term 3 adjudication"),
                inputs: serde_json::json!({ "k": k, "term": j }),
                expected: format!(
                    "table {} or formula {}",
                    pretty_bg_multiset(&row.indices),
                    pretty_bg_multiset(&formula)
                ),
                provenance: "stable-range table vs closed third-term formula".into(),
                actual: format!("{} ({named})", pretty_bg_multiset(&engine)),
                verdict: if matches_table || matches_formula {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                artifact_sha256: hash.clone(),
            });
            continue;
        } else if engine == row.indices {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        report.push(Finding {
            check,
            inputs: serde_json::json!({ "k": k, "term": j }),
            expected: pretty_bg_multiset(&row.indices),
            provenance: row.provenance.label().into(),
            actual: pretty_bg_multiset(&engine),
            verdict,
            artifact_sha256: hash.clone(),
        });
    }

    // fourth term: hull of the cokernel of the second differential carries
    // one extra J(1) relative to the recorded row
    if k >= 3 {
        let fixture = fourth_term_fixture(k)?;
        let engine: Vec<u32> = res
            .terms
            .get(3)
            .map(|t| t.indices().to_vec())
            .unwrap_or_default();
        report.push(Finding {
            check: format!("H({k}) term 4 vs recorded row {} plus J(1)", (1 << k) + 4),
            inputs: serde_json::json!({ "k": k, "term": 4 }),
            expected: pretty_bg_multiset(&fixture),
            provenance: Provenance::TableLow.label().into(),
            actual: pretty_bg_multiset(&engine),
            verdict: if engine == fixture {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            artifact_sha256: hash.clone(),
        });
    }

    // first differential blocks
    if k >= 3 && res.maps.len() >= 1 {
        let rows = operation_matrix(&res.maps[0], &res.terms[0], &res.terms[1])?;
        let expected = first_differential_column(k);
        let mut ok = rows.len() == expected.len() && rows.iter().all(|r| r.len() == 1);
        let mut shown = Vec::new();
        if ok {
            for (row, (tgt, theta)) in rows.iter().zip(&expected) {
                let got = &row[0];
                shown.push(format!("J({tgt}) <- {}", print_element(got)));
                if got != theta {
                    ok = false;
                }
            }
        }
        let expected_shown: Vec<String> = expected
            .iter()
            .map(|(tgt, th)| format!("J({tgt}) <- {}", print_element(th)))
            .collect();
        report.push(Finding {
            check: format!("H({k}) first differential blocks"),
            inputs: serde_json::json!({ "k": k }),
            expected: expected_shown.join(", "),
            provenance: Provenance::FirstDifferential.label().into(),
            actual: shown.join(", "),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            artifact_sha256: hash.clone(),
        });
    }
    Ok(report)
}

/// Adjudicate the third resolution term of `H(k)` against the closed
/// formula and, where recorded, the table. The engine is the adjudicator:
/// outcomes are informational, except the internal fixture arithmetic.
pub fn verify_j2k(k: u32) -> Result<Report> {
    assert!((4..=6).contains(&k), "adjudication covers k = 4..=6");
    let mut report = Report::new(&format!("tables:J2({k})"));
    let hk = h_k(k)?;
    let res = minimal_injective_resolution(&hk, 3)?;
    let artifact = serde_json::to_string(&injective_report(&res)?).expect("report json");
    let hash = sha(&artifact);
    let engine: Vec<u32> = res
        .terms
        .get(2)
        .map(|t| t.indices().to_vec())
        .unwrap_or_default();
    let formula = third_term_formula(k);

    let mut candidates = vec![(
        "closed formula".to_string(),
        Provenance::ThirdTermFormula,
        formula.clone(),
    )];
    if k == 5 {
        candidates.push((
            "table row 35".to_string(),
            Provenance::StableTable,
            nk_row(35)?.indices,
        ));
    }
    if k == 4 {
        candidates.push((
            "table row 19".to_string(),
            Provenance::TableLow,
            nk_row(19)?.indices,
        ));
    }
    if k == 6 {
        // fixture-internal arithmetic: the stable table's entry expands to
        // the same multiset as the closed formula
        let stable = stable_third_term(6);
        report.push(Finding {
            check: "third-term formula vs stable-table expansion at k=6".into(),
            inputs: serde_json::json!({ "k": 6 }),
            expected: pretty_bg_multiset(&formula),
            provenance: Provenance::StableTable.label().into(),
            actual: pretty_bg_multiset(&stable),
            verdict: if formula == stable {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            artifact_sha256: hash.clone(),
        });
    }

    let mut matched: Vec<String> = Vec::new();
    for (name, prov, value) in &candidates {
        let hit = *value == engine;
        if hit {
            matched.push(name.clone());
        }
        report.push(Finding {
            check: format!("H({k}) term 3 vs {name}"),
            inputs: serde_json::json!({ "k": k }),
            expected: pretty_bg_multiset(value),
            provenance: prov.label().into(),
            actual: pretty_bg_multiset(&engine),
            verdict: Verdict::Info,
            artifact_sha256: hash.clone(),
        });
    }
    report.push(Finding {
        check: format!("H({k}) term 3 adjudication"),
        inputs: serde_json::json!({ "k": k }),
        expected: "engine decides between the candidates".into(),
        provenance: "engine adjudication".into(),
        actual: if matched.is_empty() {
            format!(
                "{} matches no recorded candidate",
                pretty_bg_multiset(&engine)
            )
        } else {
            format!("{} ({})", pretty_bg_multiset(&engine), matched.join(", "))
        },
        verdict: Verdict::Info,
        artifact_sha256: hash,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// twist machinery shared by the ext checks
// ---------------------------------------------------------------------------

/// `Phi^r` applied to a module, truncated back to the window.
pub fn phi_iterate(m: &Module, r: u32, window: u32) -> Result<Module> {
    let mut cur = with_window(m, window)?;
    for _ in 0..r {
        cur = frobenius(&cur)?;
    }
    with_window(&cur, window)
}

/// `Phi^r F(1)` at the window.
pub fn phi_f1(r: u32, window: u32) -> Result<Module> {
    phi_iterate(&free_module(1, window)?, r, window)
}

/// `lambda` between adjacent twists of the same module family:
/// `Phi^{r+1} -> Phi^r`, block at degree `2n` is `Sq^n` of the lower twist.
pub fn lambda_between(phi_next: &Module, phi_cur: &Module) -> Result<ModuleMap> {
    let w = phi_next.window().min(phi_cur.window());
    let mut blocks = Vec::with_capacity(w as usize + 1);
    for d in 0..=w {
        if d % 2 == 1 {
            blocks.push(crate::f2::BitMatrix::zero(phi_cur.dim(d), phi_next.dim(d)));
        } else if d == 0 {
            blocks.push(crate::f2::BitMatrix::identity(phi_cur.dim(0)));
        } else {
            blocks.push(phi_cur.sq(d / 2, d / 2));
        }
    }
    ModuleMap::new(
        std::sync::Arc::clone(phi_next),
        std::sync::Arc::clone(phi_cur),
        blocks,
    )
}

/// Composite `lambda^r : Phi^r -> Phi^0` through the tower.
pub fn lambda_composite(phis: &[Module], r: u32) -> Result<ModuleMap> {
    assert!(r >= 1);
    let mut map = lambda_between(&phis[1], &phis[0])?;
    for j in 2..=r {
        let step = lambda_between(&phis[j as usize], &phis[j as usize - 1])?;
        map = map.compose(&step)?;
    }
    Ok(map)
}

/// Shared artifacts for the twist tower of `F(1)`.
pub struct TwistTower {
    pub window: u32,
    pub d_max: u32,
    pub f1: Module,
    pub phis: Vec<Module>,
    pub resolutions: Vec<ProjectiveResolution>,
    /// Ext(Phi^r F(1), F(1)).
    pub ext_to_f1: Vec<ExtComputation>,
}

impl TwistTower {
    /// Build resolutions for twists `0..=r_top` through `d_max`.
    pub fn build(r_top: u32, d_max: u32, window: u32) -> Result<TwistTower> {
        let mut phis = Vec::new();
        let mut resolutions = Vec::new();
        let mut ext_to_f1 = Vec::new();
        let f1 = phi_f1(0, window)?;
        for r in 0..=r_top {
            let m = phi_f1(r, window)?;
            let res = minimal_projective_resolution(&m, d_max as usize + 1, window)?;
            let ext = compute_ext(&res, &f1, d_max)?;
            phis.push(m);
            resolutions.push(res);
            ext_to_f1.push(ext);
        }
        Ok(TwistTower {
            window,
            d_max,
            f1,
            phis,
            resolutions,
            ext_to_f1,
        })
    }

    pub fn ext_dim(&self, d: u32, r: u32) -> usize {
        self.ext_to_f1[r as usize].group(d).dim()
    }

    /// Rank of the map `Ext^d(Phi^r, F(1)) -> Ext^d(Phi^{r+1}, F(1))`
    /// induced by `lambda` between the twists, with the source dimension.
    pub fn twist_map_rank(&self, d: u32, r: u32) -> Result<(usize, usize)> {
        let f = lambda_between(&self.phis[r as usize + 1], &self.phis[r as usize])?;
        let mat = induced_ext_map(
            &f,
            &self.resolutions[r as usize + 1],
            &self.resolutions[r as usize],
            &self.ext_to_f1[r as usize],
            &self.ext_to_f1[r as usize + 1],
            &self.f1,
            d,
        )?;
        Ok((mat.rank(), self.ext_dim(d, r)))
    }
}

/// Per-cell availability: the required window for a cell grows like
/// `2^{r + d/2}`, capped at 256.
pub fn cell_available(d: u32, r: u32, window: u32) -> bool {
    let need = 1u64 << (r as u64 + d as u64 / 2);
    window as u64 >= need.min(256)
}

/// Compare the engine's twist Ext table against the recorded vanishing
/// pattern, and check the injectivity of the connecting maps.
pub fn verify_ext_table(d_max: u32, r_max: u32, window: u32) -> Result<Report> {
    assert!(d_max <= 12 && r_max <= 4);
    let mut report = Report::new("ext");
    report.notes.push(desk_scale_note());
    let tower = TwistTower::build(r_max + 1, d_max, window)?;
    let artifact: Vec<String> = tower
        .ext_to_f1
        .iter()
        .map(|e| serde_json::to_string(&e.table()).unwrap())
        .collect();
    let hash = sha(&artifact.join("\n"));

    for r in 0..=r_max {
        for d in 1..=d_max {
            let expected = expected_ext_dim(d, r)?;
            if !cell_available(d, r, window) {
                report.push(Finding {
                    check: format!("ext cell (d={d}, r={r})"),
                    inputs: serde_json::json!({ "d": d, "r": r, "window": window }),
                    expected: expected.to_string(),
                    provenance: Provenance::VanishingPattern.label().into(),
                    actual: "unavailable at this window".into(),
                    verdict: Verdict::Skipped,
                    artifact_sha256: hash.clone(),
                });
                continue;
            }
            let actual = tower.ext_dim(d, r);
            report.push(Finding {
                check: format!("ext cell (d={d}, r={r})"),
                inputs: serde_json::json!({ "d": d, "r": r, "window": window }),
                expected: expected.to_string(),
                provenance: Provenance::VanishingPattern.label().into(),
                actual: actual.to_string(),
                verdict: if actual == expected {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                artifact_sha256: hash.clone(),
            });
        }
    }
    // injectivity of the connecting maps on the same range
    for r in 0..=r_max {
        for d in (2..=d_max).step_by(2) {
            if !cell_available(d, r + 1, window) {
                continue;
            }
            let (rank, src_dim) = tower.twist_map_rank(d, r)?;
            report.push(Finding {
                check: format!("twist map injective (d={d}, r={r}->{})", r + 1),
                inputs: serde_json::json!({ "d": d, "r": r }),
                expected: "rank equals source dimension".into(),
                provenance: "recorded monomorphism statement, truncated range".into(),
                actual: format!("rank {rank} of {src_dim}"),
                verdict: if rank == src_dim {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                artifact_sha256: hash.clone(),
            });
        }
    }
    Ok(report)
}

/// Extend the vanishing-pattern scan and mark every cell consistent,
/// inconsistent or unavailable; purely exploratory.
pub fn explore_conjecture(d_max: u32, r_max: u32, window: u32) -> Result<Report> {
    let mut report = Report::new("conjecture");
    report.notes.push(desk_scale_note());
    report
        .notes
        .push("exploratory scan; verdicts are informational only".to_string());
    let tower = TwistTower::build(r_max, d_max, window)?;
    let hash = sha("conjecture-scan");
    for r in 0..=r_max {
        for d in 1..=d_max {
            let expected = expected_ext_dim(d, r)?;
            let (actual, verdict) = if cell_available(d, r, window) {
                let a = tower.ext_dim(d, r);
                (
                    format!("{a} ({})", if a == expected { "consistent" } else { "inconsistent" }),
                    Verdict::Info,
                )
            } else {
                ("unavailable".to_string(), Verdict::Skipped)
            };
            report.push(Finding {
                check: format!("conjecture cell (d={d}, r={r})"),
                inputs: serde_json::json!({ "d": d, "r": r, "window": window }),
                expected: expected.to_string(),
                provenance: "conjectured vanishing pattern".into(),
                actual,
                verdict,
                artifact_sha256: hash.clone(),
            });
        }
    }
    for (name, text) in fixtures::context_constants() {
        report.notes.push(format!("context: {name}: {text}"));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// counterexamples
// ---------------------------------------------------------------------------

/// The two recorded failures of injectivity, plus the exploratory rank scan
/// for the tensor-square family.
pub fn verify_counterexamples(window: u32) -> Result<Report> {
    assert!(window >= 64, "counterexample checks need window >= 64");
    let mut report = Report::new("counterexamples");
    report.notes.push(desk_scale_note());

    // (a) the degree-5 extension group of the tensor square
    let f1 = free_module(1, window)?;
    let tens = tensor(&f1, &f1, window)?;
    let res_t = minimal_projective_resolution(&tens, 6, window)?;
    let ext_t = compute_ext(&res_t, &f1, 5)?;
    let hash_a = sha(&serde_json::to_string(&ext_t.table()).unwrap());
    let dim5 = ext_t.group(5).dim();
    report.push(Finding {
        check: "dim Ext^5(F(1)⊗F(1), F(1))".into(),
        inputs: serde_json::json!({ "window": window }),
        expected: "1".into(),
        provenance: "recorded tensor-square computation".into(),
        actual: dim5.to_string(),
        verdict: if dim5 == 1 { Verdict::Pass } else { Verdict::Fail },
        artifact_sha256: hash_a.clone(),
    });

    // (b) the twist map out of Ext^3(Sigma F2, F(1)) kills the generator
    let s1 = with_window(&sigma_simple(1)?, window)?;
    let s2 = phi_iterate(&s1, 1, window)?;
    let res_s1 = minimal_projective_resolution(&s1, 4, window)?;
    let res_s2 = minimal_projective_resolution(&s2, 4, window)?;
    let phi_f1_w = phi_f1(1, window)?;
    let ext_src = compute_ext(&res_s1, &f1, 3)?;
    let ext_dst = compute_ext(&res_s2, &phi_f1_w, 3)?;
    let mat = frobenius_ext_map(
        &res_s1, &res_s2, &s2, &f1, &phi_f1_w, &ext_src, &ext_dst, 3,
    )?;
    let src_dim = ext_src.group(3).dim();
    let kernel = src_dim - mat.rank();
    let hash_b = sha(&format!("frobenius-map d3 rank {} of {}", mat.rank(), src_dim));
    report.push(Finding {
        check: "twist map on Ext^3(Sigma F2, F(1)) has nonzero kernel".into(),
        inputs: serde_json::json!({ "window": window, "d": 3 }),
        expected: "kernel dimension >= 1 (source is one-dimensional)".into(),
        provenance: "recorded non-injectivity example".into(),
        actual: format!("source dim {src_dim}, rank {}, kernel {kernel}", mat.rank()),
        verdict: if src_dim >= 1 && kernel >= 1 {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        artifact_sha256: hash_b,
    });

    // (c) exploratory: where does the twist map on the tensor square's
    // degree-5 group first drop rank?
    let mut ranks = Vec::new();
    for i in 0..=3u32 {
        let m_i = phi_iterate(&tens, i, window)?;
        let m_next = phi_iterate(&tens, i + 1, window)?;
        let n_i = phi_f1(i, window)?;
        let n_next = phi_f1(i + 1, window)?;
        let res_i = minimal_projective_resolution(&m_i, 6, window)?;
        let res_next = minimal_projective_resolution(&m_next, 6, window)?;
        let e_i = compute_ext(&res_i, &n_i, 5)?;
        let e_next = compute_ext(&res_next, &n_next, 5)?;
        let mat = frobenius_ext_map(
            &res_i, &res_next, &m_next, &n_i, &n_next, &e_i, &e_next, 5,
        )?;
        ranks.push((i, e_i.group(5).dim(), mat.rank()));
    }
    let drop = ranks.iter().find(|(_, dim, rank)| rank < dim);
    let hash_c = sha(&format!("{ranks:?}"));
    report.push(Finding {
        check: "twist-map rank scan on Ext^5 of the tensor square".into(),
        inputs: serde_json::json!({ "window": window, "twists": 4 }),
        expected: "existence of a rank drop is recorded without a fixed twist".into(),
        provenance: "exploratory scan".into(),
        actual: format!(
            "per twist (i, dim, rank): {ranks:?}; first drop: {}",
            drop.map(|(i, _, _)| i.to_string()).unwrap_or_else(|| "none in range".into())
        ),
        verdict: Verdict::Info,
        artifact_sha256: hash_c,
    });
    Ok(report)
}

// ---------------------------------------------------------------------------
// the doubling-square identity
// ---------------------------------------------------------------------------

/// Check the commuting square relating the twist map, the coefficient maps
/// along the iterated `lambda`, and the pullback along `lambda`, at
/// `M = F(1)`, for one pair `(r, d)`. Returns (lhs, rhs) matrix dims and
/// equality.
pub fn check_doubling_square(r: u32, d: u32, window: u32) -> Result<bool> {
    let r_idx = r as usize;
    let mut phis = Vec::new();
    for j in 0..=(r + 1) {
        phis.push(phi_f1(j, window)?);
    }
    let f1 = &phis[0];
    let res_r = minimal_projective_resolution(&phis[r_idx], d as usize + 1, window)?;
    let res_r1 = minimal_projective_resolution(&phis[r_idx + 1], d as usize + 1, window)?;

    let ext_r_phir = compute_ext(&res_r, &phis[r_idx], d)?;
    let ext_r_f1 = compute_ext(&res_r, f1, d)?;
    let ext_r1_phir1 = compute_ext(&res_r1, &phis[r_idx + 1], d)?;
    let ext_r1_f1 = compute_ext(&res_r1, f1, d)?;

    // left route: push along lambda^r, then pull back along lambda
    let push_r = if r == 0 {
        ModuleMap::identity(f1)
    } else {
        lambda_composite(&phis, r)?
    };
    let a = coefficient_ext_map(&push_r, &res_r, &ext_r_phir, &ext_r_f1, d)?;
    let lam = lambda_between(&phis[r_idx + 1], &phis[r_idx])?;
    let b = induced_ext_map(&lam, &res_r1, &res_r, &ext_r_f1, &ext_r1_f1, f1, d)?;
    let lhs = b.mul(&a);

    // right route: the doubling map, then push along lambda^{r+1}
    let c = frobenius_ext_map(
        &res_r,
        &res_r1,
        &phis[r_idx + 1],
        &phis[r_idx],
        &phis[r_idx + 1],
        &ext_r_phir,
        &ext_r1_phir1,
        d,
    )?;
    let push_r1 = lambda_composite(&phis, r + 1)?;
    let dmat = coefficient_ext_map(&push_r1, &res_r1, &ext_r1_phir1, &ext_r1_f1, d)?;
    let rhs = dmat.mul(&c);

    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// hull checks (shared with the acceptance suite)
// ---------------------------------------------------------------------------

/// Hulls of suspensions and of the finite quotients.
pub fn verify_hulls(n_max: u32, k_max: u32) -> Result<Report> {
    let mut report = Report::new("hulls");
    let hash = sha("hulls");
    let mut all_susp = true;
    for n in 1..=n_max {
        let (hull, emb) = injective_hull(&sigma_simple(n)?)?;
        if hull.indices() != [n] || !emb.is_injective() {
            all_susp = false;
        }
    }
    report.push(Finding {
        check: format!("hull(Sigma^n F2) = J(n) for n <= {n_max}"),
        inputs: serde_json::json!({ "n_max": n_max }),
        expected: "J(n) with an injective essential embedding".into(),
        provenance: "hull of the sphere class".into(),
        actual: if all_susp { "all match".into() } else { "mismatch".to_string() },
        verdict: if all_susp { Verdict::Pass } else { Verdict::Fail },
        artifact_sha256: hash.clone(),
    });
    let mut all_hk = true;
    for k in 2..=k_max {
        let (hull, _) = injective_hull(&h_k(k)?)?;
        if hull.indices() != [1 << (k - 1)] {
            all_hk = false;
        }
    }
    report.push(Finding {
        check: format!("hull(H(k)) = J(2^(k-1)) for k = 2..={k_max}"),
        inputs: serde_json::json!({ "k_max": k_max }),
        expected: "one top Brown-Gitler summand".into(),
        provenance: "recorded hull statement".into(),
        actual: if all_hk { "all match".into() } else { "mismatch".to_string() },
        verdict: if all_hk { Verdict::Pass } else { Verdict::Fail },
        artifact_sha256: hash,
    });
    Ok(report)
}

/// Assemble a named suite.
pub fn run_suite(name: &str, window: u32) -> Result<Report> {
    match name {
        "tables" => {
            let mut report = Report::new("tables");
            report.notes.push(desk_scale_note());
            for k in 2..=5 {
                report.merge(verify_hk_vs_table(k)?);
            }
            for k in 4..=6 {
                report.merge(verify_j2k(k)?);
            }
            report.suite = "tables".into();
            Ok(report)
        }
        "ext" => {
            let (d_max, r_max) = (11, 3);
            let mut r = verify_ext_table(d_max, r_max, window)?;
            r.suite = "ext".into();
            Ok(r)
        }
        "counterexamples" => verify_counterexamples(window.max(64)),
        "all" => {
            let mut report = Report::new("all");
            report.merge(run_suite("tables", window)?);
            report.merge(verify_hulls(32, 6)?);
            report.merge(run_suite("ext", window)?);
            report.merge(run_suite("counterexamples", window)?);
            report.suite = "all".into();
            report.notes.push(desk_scale_note());
            Ok(report)
        }
        other => Err(crate::error::Error::Usage(format!(
            "unknown suite {other:?}; expected tables, ext, counterexamples or all"
        ))),
    }
}
