//! Structured analysis documents and the batch catalog runner behind the
//! CLI. Output is deterministic: struct field order fixes JSON key order,
//! rationals are serialized as canonical `p/q` strings, and catalog results
//! are assembled in catalog order regardless of completion order.

use num::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::CatalogEntry;
use crate::classify::{self, check_invertible, BlockKind, ChainOrientation};
use crate::error::{Error, Result};
use crate::jacobian;
use crate::mirror;
use crate::poly::{rat_string, Polynomial};
use crate::symmetry::{self, DEFAULT_GROUP_BOUND};

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub pairing: bool,
    pub max_group_order: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            pairing: false,
            max_group_order: group_bound_from_env(),
        }
    }
}

/// Enumeration bound: `LGKIT_MAX_GROUP_ORDER` when set and parseable,
/// otherwise the default of 10^6.
pub fn group_bound_from_env() -> u64 {
    std::env::var("LGKIT_MAX_GROUP_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GROUP_BOUND)
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub kind: BlockKind,
    /// 1-based variable indices in listing order.
    pub variables: Vec<usize>,
    pub exponents: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<ChainOrientation>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorReport {
    pub element: Vec<String>,
    /// 1-based fixed variable indices.
    pub fixed: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restricted: Option<String>,
    pub dimension: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateSpaceReport {
    pub total_dimension: u64,
    pub sectors: Vec<SectorReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub basis: Vec<String>,
    pub degrees: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MirrorReportDoc {
    pub state_dim: u64,
    pub mirror_milnor: u64,
    pub good_basis_size: u64,
    pub equal: bool,
    pub weight_half_chain: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub polynomial: String,
    pub num_vars: usize,
    pub exponent_matrix: Vec<Vec<u32>>,
    pub blocks: Vec<BlockReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ade_label: Option<String>,
    pub weights: Vec<String>,
    /// 1-based indices of variables with weight exactly 1/2.
    pub boundary_weight_vars: Vec<usize>,
    pub central_charge: String,
    pub milnor_number: u64,
    pub group: GroupReport,
    pub exponential_grading: Vec<String>,
    pub transpose: String,
    pub good_basis: Vec<String>,
    pub good_basis_size: u64,
    pub state_space: StateSpaceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue_pairing: Option<PairingReport>,
    pub mirror: MirrorReportDoc,
}

fn to_u64(v: &num::BigInt, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Internal(format!("{what} exceeds u64")))
}

/// Full analysis pipeline: parse, classify, weights, symmetry group,
/// transpose, good basis, state space, optional residue pairing, and the
/// mirror report.
pub fn analyze(text: &str, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let f = Polynomial::parse(text)?;
    let w = check_invertible(&f)?;
    let ws = classify::weight_system(&w.matrix)?;

    let group = symmetry::max_symmetry_group(&w.matrix)?;
    if group.order > num::BigInt::from(opts.max_group_order) {
        return Err(Error::BoundExceeded {
            order: group.order,
            bound: opts.max_group_order,
        });
    }
    let milnor = to_u64(&ws.milnor_number, "milnor number")?;

    let grading = symmetry::exponential_grading_element(&ws.weights);
    if !symmetry::is_member(&w.matrix, &grading) {
        return Err(Error::Internal(
            "exponential grading element fails group membership".into(),
        ));
    }

    let tp = mirror::transpose(&w);
    let good_basis = mirror::standard_good_basis(&w)?;
    let state = mirror::fjrw_state_space(&w, opts.max_group_order)?;
    let mirror_report = mirror::mirror_check(&w, opts.max_group_order)?;

    let residue = if opts.pairing {
        let basis = jacobian::jacobian_basis(&f, &ws.weights)?;
        let pairing = jacobian::residue_pairing(&f, &basis, &ws.weights)?;
        Some(PairingReport {
            basis: basis.elements.iter().map(|e| e.monomial.to_string()).collect(),
            degrees: basis.elements.iter().map(|e| rat_string(&e.degree)).collect(),
            matrix: pairing
                .matrix
                .iter()
                .map(|row| row.iter().map(rat_string).collect())
                .collect(),
        })
    } else {
        None
    };

    Ok(AnalysisReport {
        input: text.to_string(),
        polynomial: f.to_string(),
        num_vars: f.num_vars(),
        exponent_matrix: w.matrix.row_vecs(),
        blocks: w
            .blocks
            .iter()
            .map(|b| BlockReport {
                kind: b.kind,
                variables: b.variables.iter().map(|v| v + 1).collect(),
                exponents: b.exponents.clone(),
                orientation: b.orientation,
            })
            .collect(),
        ade_label: classify::ade_label(&w.blocks),
        weights: ws.weights.iter().map(rat_string).collect(),
        boundary_weight_vars: ws.boundary_weight_vars.iter().map(|v| v + 1).collect(),
        central_charge: rat_string(&ws.central_charge),
        milnor_number: milnor,
        group: GroupReport {
            order: to_u64(&group.order, "group order")?,
            invariant_factors: group
                .invariant_factors
                .iter()
                .map(|d| to_u64(d, "invariant factor"))
                .collect::<Result<_>>()?,
            generators: group
                .generators
                .iter()
                .map(|g| g.phases().iter().map(rat_string).collect())
                .collect(),
        },
        exponential_grading: grading.phases().iter().map(rat_string).collect(),
        transpose: tp.to_string(),
        good_basis: good_basis.iter().map(|m| m.to_string()).collect(),
        good_basis_size: good_basis.len() as u64,
        state_space: StateSpaceReport {
            total_dimension: state.total_dimension,
            sectors: state
                .sectors
                .iter()
                .map(|s| SectorReport {
                    element: s.element.phases().iter().map(rat_string).collect(),
                    fixed: s.fixed.iter().map(|v| v + 1).collect(),
                    restricted: s.restricted.as_ref().map(|p| p.to_string()),
                    dimension: s.dimension,
                })
                .collect(),
        },
        residue_pairing: residue,
        mirror: MirrorReportDoc {
            state_dim: mirror_report.state_dim,
            mirror_milnor: mirror_report.mirror_milnor,
            good_basis_size: mirror_report.good_basis_size,
            equal: mirror_report.equal,
            weight_half_chain: mirror_report.weight_half_chain,
        },
    })
}

/// Human-readable rendering of an analysis report.
pub fn render_pretty(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("polynomial      {}", r.polynomial));
    let blocks: Vec<String> = r
        .blocks
        .iter()
        .map(|b| {
            let vars: Vec<String> = b.variables.iter().map(|v| format!("x{v}")).collect();
            let exps: Vec<String> = b.exponents.iter().map(|e| e.to_string()).collect();
            let orient = match b.orientation {
                Some(ChainOrientation::HeadPowerFirst) => ", head-power-first",
                Some(ChainOrientation::TailPowerLast) => ", tail-power-last",
                None => "",
            };
            format!("{:?}({}; a={}{})", b.kind, vars.join(","), exps.join(","), orient)
        })
        .collect();
    line(format!(
        "blocks          {}{}",
        blocks.join("  +  "),
        r.ade_label
            .as_ref()
            .map(|l| format!("   [{l}]"))
            .unwrap_or_default()
    ));
    line(format!("weights         ({})", r.weights.join(", ")));
    if !r.boundary_weight_vars.is_empty() {
        let vars: Vec<String> = r
            .boundary_weight_vars
            .iter()
            .map(|v| format!("x{v}"))
            .collect();
        line(format!("warning         weight exactly 1/2 on {}", vars.join(", ")));
    }
    line(format!("central charge  {}", r.central_charge));
    line(format!("milnor number   {}", r.milnor_number));
    line(format!(
        "symmetry group  order {}, invariant factors [{}]",
        r.group.order,
        r.group
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    for g in &r.group.generators {
        line(format!("  generator     ({})", g.join(", ")));
    }
    line(format!("grading element ({})", r.exponential_grading.join(", ")));
    line(format!("transpose       {}", r.transpose));
    line(format!(
        "good basis      {} elements: {}",
        r.good_basis_size,
        r.good_basis.join(", ")
    ));
    line(format!("state space     total dimension {}", r.state_space.total_dimension));
    for s in &r.state_space.sectors {
        let fixed: Vec<String> = s.fixed.iter().map(|v| format!("x{v}")).collect();
        line(format!(
            "  sector ({})  fix {{{}}}  dim {}{}",
            s.element.join(", "),
            fixed.join(","),
            s.dimension,
            s.restricted
                .as_ref()
                .map(|p| format!("  W| = {p}"))
                .unwrap_or_default()
        ));
    }
    if let Some(p) = &r.residue_pairing {
        line(format!("residue pairing on {{{}}}", p.basis.join(", ")));
        for row in &p.matrix {
            line(format!("  [{}]", row.join(", ")));
        }
    }
    line(format!(
        "mirror          state_dim {} vs mu(W^T) {} (good basis {}), equal: {}{}",
        r.mirror.state_dim,
        r.mirror.mirror_milnor,
        r.mirror.good_basis_size,
        r.mirror.equal,
        if r.mirror.weight_half_chain {
            "  [chain variable of weight 1/2]"
        } else {
            ""
        }
    ));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputedSummary {
    pub mu: u64,
    pub c: String,
    pub g_order: u64,
    pub state_dim: u64,
    pub mirror_equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntryReport {
    pub name: String,
    pub polynomial: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<ComputedSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<CatalogEntryReport>,
}

#[derive(Debug, Clone)]
pub struct CatalogOptions {
    pub filter: Option<String>,
    pub jobs: usize,
    pub max_group_order: u64,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            filter: None,
            jobs: 0,
            max_group_order: group_bound_from_env(),
        }
    }
}

fn check_entry(entry: &CatalogEntry, bound: u64) -> CatalogEntryReport {
    let opts = AnalyzeOptions {
        pairing: false,
        max_group_order: bound,
    };
    match analyze(&entry.polynomial, &opts) {
        Ok(rep) => {
            let computed = ComputedSummary {
                mu: rep.milnor_number,
                c: rep.central_charge.clone(),
                g_order: rep.group.order,
                state_dim: rep.state_space.total_dimension,
                mirror_equal: rep.mirror.equal,
            };
            let mut mismatches = Vec::new();
            if let Some(exp) = &entry.expected {
                compare(&mut mismatches, "mu", exp.mu, computed.mu);
                if let Some(c) = &exp.c {
                    if *c != computed.c {
                        mismatches.push(format!("c: expected {}, got {}", c, computed.c));
                    }
                }
                compare(&mut mismatches, "g_order", exp.g_order, computed.g_order);
                compare(&mut mismatches, "state_dim", exp.state_dim, computed.state_dim);
            }
            if !rep.mirror.equal {
                mismatches.push("mirror dimension identity failed".into());
            }
            CatalogEntryReport {
                name: entry.name.clone(),
                polynomial: entry.polynomial.clone(),
                ok: mismatches.is_empty(),
                mismatches,
                computed: Some(computed),
                error: None,
            }
        }
        Err(e) => CatalogEntryReport {
            name: entry.name.clone(),
            polynomial: entry.polynomial.clone(),
            ok: false,
            mismatches: Vec::new(),
            computed: None,
            error: Some(e.to_string()),
        },
    }
}

fn compare(mismatches: &mut Vec<String>, what: &str, expected: Option<u64>, got: u64) {
    if let Some(e) = expected {
        if e != got {
            mismatches.push(format!("{what}: expected {e}, got {got}"));
        }
    }
}

/// Run the catalog, optionally filtered by a name substring, optionally in
/// parallel; results come back in catalog order.
pub fn run_catalog(entries: &[CatalogEntry], opts: &CatalogOptions) -> Result<CatalogReport> {
    let selected: Vec<&CatalogEntry> = entries
        .iter()
        .filter(|e| {
            opts.filter
                .as_ref()
                .map_or(true, |f| e.name.contains(f.as_str()))
        })
        .collect();
    let reports: Vec<CatalogEntryReport> = if opts.jobs == 1 {
        selected
            .iter()
            .map(|e| check_entry(e, opts.max_group_order))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
        pool.install(|| {
            selected
                .par_iter()
                .map(|e| check_entry(e, opts.max_group_order))
                .collect()
        })
    };
    let passed = reports.iter().filter(|r| r.ok).count();
    Ok(CatalogReport {
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
        entries: reports,
    })
}

/// Machine-readable error object for the error stream.
pub fn error_object(e: &Error) -> serde_json::Value {
    serde_json::json!({
        "error": {
            "code": e.exit_code(),
            "kind": e.kind(),
            "message": e.to_string(),
        }
    })
}
