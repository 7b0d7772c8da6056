//! Report assembly and emission.
//!
//! A [`Report`] gathers everything the engine can say about one model at
//! recorded bounds. Serialization is deterministic: struct fields emit in
//! declaration order, maps are sorted, and rationals appear as `num/den`
//! strings inside formatted class expressions.

use std::collections::BTreeMap;

use serde::Serialize;

use sullivan_core::cohomology::{
    bigraded_dims, ellipticity_verdict, fundamental_class, Complex, EllipticityStatus,
    EllipticityVerdict,
};
use sullivan_core::conjecture::{
    e0gap_check, hilali_check, hilali_special_cases, lupton_sequence_check, nogap_check,
    Conclusion, TheoremVerdict,
};
use sullivan_core::model::SullivanModel;
use sullivan_core::spectral::{r_stab, toomer, e0_spectrum_direct, SpectralEngine};

pub const DEFAULT_WINDOW_FACTOR: usize = 2;

/// Bounds every computation in a report; all values are recorded verbatim.
#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    /// Top cohomological degree computed.
    pub max_degree: usize,
    /// Window factor handed to the ellipticity check.
    pub window_factor: usize,
    /// Top degree the ellipticity check actually scanned.
    pub window: usize,
    /// Top total degree for spectral-sequence tables.
    pub max_total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorReport {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub k: Option<usize>,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(rename = "dimVodd")]
    pub dim_v_odd: usize,
    #[serde(rename = "dimVeven")]
    pub dim_v_even: usize,
    #[serde(rename = "N")]
    pub n_formula: i64,
    #[serde(rename = "e")]
    pub e_formula: Option<usize>,
    pub chi_pi: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EllipticityReport {
    pub status: String,
    pub reason: String,
    pub window: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PageReport {
    pub r: usize,
    /// Nonzero entries as (p, q, dim), ordered by (p+q, p).
    pub entries: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ToomerReport {
    pub value: usize,
    pub bound: usize,
    pub certified: bool,
    /// Closed-form e for comparison, when defined.
    pub e_formula: Option<usize>,
    pub agrees_with_formula: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub name: String,
    pub satisfied: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub check: String,
    pub statement: String,
    pub conclusion: String,
    pub detail: Option<String>,
    pub hypotheses: Vec<HypothesisReport>,
    pub evidence: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub model: String,
    pub generators: Vec<GeneratorReport>,
    pub differential: Vec<(String, String)>,
    pub invariants: InvariantsReport,
    pub bounds: Bounds,
    pub ellipticity: EllipticityReport,
    #[serde(rename = "dimH")]
    pub dim_h: Option<usize>,
    /// dim H^n for n = 0..=max_degree.
    pub cohomology: Vec<usize>,
    /// Word-length splitting of each H^n, when d is length-homogeneous.
    pub bigraded: Option<Vec<BTreeMap<usize, usize>>>,
    pub pages: Vec<PageReport>,
    pub einfty_columns: Vec<usize>,
    pub toomer: Option<ToomerReport>,
    pub e0_spectrum: Vec<usize>,
    pub fundamental_class: Option<String>,
    pub verdicts: Vec<VerdictReport>,
    pub engine_version: String,
}

pub fn ellipticity_report(model: &SullivanModel, verdict: &EllipticityVerdict) -> EllipticityReport {
    EllipticityReport {
        status: match verdict.status {
            EllipticityStatus::Elliptic => "elliptic",
            EllipticityStatus::NotElliptic => "not-elliptic",
            EllipticityStatus::Undetermined => "undetermined",
        }
        .to_string(),
        reason: verdict.reason.clone(),
        window: verdict.window,
        witness: verdict
            .witness
            .as_ref()
            .map(|(deg, class)| format!("degree {deg}: {}", model.algebra().format_polynomial(class))),
    }
}

pub fn verdict_report(check: &str, v: &TheoremVerdict) -> VerdictReport {
    let (conclusion, detail) = match &v.conclusion {
        Conclusion::Holds => ("holds".to_string(), None),
        Conclusion::Fails { witness } => ("fails".to_string(), Some(witness.clone())),
        Conclusion::HypothesisNotMet { witness } => {
            ("hypothesis-not-met".to_string(), Some(witness.clone()))
        }
        Conclusion::Undetermined { window } => ("undetermined".to_string(), Some(window.clone())),
    };
    VerdictReport {
        check: check.to_string(),
        statement: v.statement.clone(),
        conclusion,
        detail,
        hypotheses: v
            .hypotheses
            .iter()
            .map(|h| HypothesisReport {
                name: h.name.clone(),
                satisfied: h.satisfied,
                evidence: h.evidence.clone(),
            })
            .collect(),
        evidence: v.evidence.clone(),
    }
}

/// Default degree bound: the formal dimension when it is meaningful,
/// otherwise twice the top generator degree.
pub fn default_max_degree(model: &SullivanModel) -> usize {
    let n = model.invariants().n_formula;
    if n >= 0 {
        n as usize
    } else {
        2 * model.algebra().max_degree()
    }
}

/// Assembles the full report for one model at the given bounds.
pub fn build_report(
    model: &SullivanModel,
    id: &str,
    max_degree: Option<usize>,
    window_factor: usize,
) -> Report {
    let max_degree = max_degree.unwrap_or_else(|| default_max_degree(model));
    let verdict = ellipticity_verdict(model, window_factor);
    let invariants = model.invariants();
    let complex = Complex::new(model.algebra(), model.differential());
    let cohomology: Vec<usize> = (0..=max_degree).map(|n| complex.dim_h(n)).collect();
    let elliptic = verdict.is_elliptic();
    let n = if elliptic {
        verdict.n_formula as usize
    } else {
        max_degree
    };
    let max_total = n.min(max_degree);
    let bigraded = if model.is_length_homogeneous() {
        Some(
            (0..=max_degree)
                .map(|i| {
                    bigraded_dims(model.algebra(), model.differential(), i)
                        .expect("length-homogeneous differential")
                })
                .collect(),
        )
    } else {
        None
    };
    let engine = SpectralEngine::new(model);
    let pages: Vec<PageReport> = (1..=r_stab(max_total))
        .map(|r| PageReport {
            r,
            entries: page_entries(&engine, r, max_total),
        })
        .collect();
    let einfty_columns: Vec<usize> = engine
        .e_infinity_column_support(max_total)
        .into_iter()
        .collect();
    let toomer_report = if elliptic {
        let t = toomer(model, Some(n), n);
        let agrees = invariants.e_formula.map(|e| e == t.value);
        Some(ToomerReport {
            value: t.value,
            bound: t.bound,
            certified: t.certified,
            e_formula: invariants.e_formula,
            agrees_with_formula: agrees,
        })
    } else {
        None
    };
    let e0_spectrum: Vec<usize> = if elliptic {
        e0_spectrum_direct(model, n).into_iter().collect()
    } else {
        Vec::new()
    };
    let fundamental = if elliptic {
        fundamental_class(model, n).map(|c| model.algebra().format_polynomial(&c))
    } else {
        None
    };
    let verdicts = vec![
        verdict_report("hilali", &hilali_check(model, window_factor)),
        verdict_report("nogaps", &nogap_check(model, window_factor)),
        verdict_report("e0gaps", &e0gap_check(model, window_factor)),
        verdict_report("hilali-cases", &hilali_special_cases(model, window_factor)),
        verdict_report("lupton", &lupton_sequence_check(model, window_factor)),
    ];
    Report {
        model: id.to_string(),
        generators: model
            .algebra()
            .generators()
            .iter()
            .map(|g| GeneratorReport {
                name: g.name.clone(),
                degree: g.degree,
            })
            .collect(),
        differential: model
            .algebra()
            .generators()
            .iter()
            .filter_map(|g| {
                let dv = model.differential().value_on(g.id);
                if dv.is_zero() {
                    None
                } else {
                    Some((g.name.clone(), model.algebra().format_polynomial(&dv)))
                }
            })
            .collect(),
        invariants: InvariantsReport {
            k: invariants.k,
            dim_v: model.algebra().len(),
            dim_v_odd: invariants.dim_v_odd,
            dim_v_even: invariants.dim_v_even,
            n_formula: invariants.n_formula,
            e_formula: invariants.e_formula,
            chi_pi: invariants.chi_pi,
        },
        bounds: Bounds {
            max_degree,
            window_factor,
            window: verdict.window,
            max_total,
        },
        ellipticity: ellipticity_report(model, &verdict),
        dim_h: if elliptic {
            Some(cohomology.iter().sum())
        } else {
            None
        },
        cohomology,
        bigraded,
        pages,
        einfty_columns,
        toomer: toomer_report,
        e0_spectrum,
        fundamental_class: fundamental,
        verdicts,
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

pub fn page_entries(engine: &SpectralEngine<'_>, r: usize, max_total: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 0..=max_total {
        for p in 0..=n {
            let q = n - p;
            let dim = engine.page_entry(r, p as i64, q as i64).dim();
            if dim > 0 {
                out.push((p, q, dim));
            }
        }
    }
    out
}

pub fn to_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    text
}

/// Human-readable rendering with the same numbers as the json form.
pub fn to_table(report: &Report) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(&mut out, format!("model: {}", report.model));
    let gens: Vec<String> = report
        .generators
        .iter()
        .map(|g| format!("{}({})", g.name, g.degree))
        .collect();
    push(&mut out, format!("generators: {}", gens.join(" ")));
    for (name, value) in &report.differential {
        push(&mut out, format!("d {name} = {value}"));
    }
    let inv = &report.invariants;
    push(
        &mut out,
        format!(
            "invariants: k={} dimV={} (odd {}, even {}) N={} e={} chi_pi={}",
            opt(inv.k),
            inv.dim_v,
            inv.dim_v_odd,
            inv.dim_v_even,
            inv.n_formula,
            opt(inv.e_formula),
            inv.chi_pi
        ),
    );
    push(
        &mut out,
        format!(
            "bounds: max_degree={} window_factor={} window={} max_total={}",
            report.bounds.max_degree,
            report.bounds.window_factor,
            report.bounds.window,
            report.bounds.max_total
        ),
    );
    push(
        &mut out,
        format!(
            "ellipticity: {} ({})",
            report.ellipticity.status, report.ellipticity.reason
        ),
    );
    if let Some(w) = &report.ellipticity.witness {
        push(&mut out, format!("  witness: {w}"));
    }
    if let Some(d) = report.dim_h {
        push(&mut out, format!("dimH: {d}"));
    }
    let dims: Vec<String> = report
        .cohomology
        .iter()
        .enumerate()
        .map(|(n, d)| format!("H^{n}={d}"))
        .collect();
    push(&mut out, format!("cohomology: {}", dims.join(" ")));
    if let Some(rows) = &report.bigraded {
        for (n, row) in rows.iter().enumerate() {
            if row.values().any(|&d| d > 0) {
                let cells: Vec<String> = row
                    .iter()
                    .filter(|(_, &d)| d > 0)
                    .map(|(p, d)| format!("H^{n}_{p}={d}"))
                    .collect();
                push(&mut out, format!("bigraded: {}", cells.join(" ")));
            }
        }
    }
    for page in &report.pages {
        let cells: Vec<String> = page
            .entries
            .iter()
            .map(|(p, q, d)| format!("E_{{{},{}}}={d}", p, q))
            .collect();
        push(
            &mut out,
            format!(
                "page r={}: {}",
                page.r,
                if cells.is_empty() {
                    "0".to_string()
                } else {
                    cells.join(" ")
                }
            ),
        );
    }
    push(
        &mut out,
        format!("einfty columns: {:?}", report.einfty_columns),
    );
    if let Some(t) = &report.toomer {
        push(
            &mut out,
            format!(
                "toomer: {} (bound {}, certified {}, formula e={}, agree={})",
                t.value,
                t.bound,
                t.certified,
                opt(t.e_formula),
                t.agrees_with_formula
                    .map(|b| b.to_string())
                    .unwrap_or_else(|| "-".into())
            ),
        );
    }
    if !report.e0_spectrum.is_empty() {
        push(&mut out, format!("e0 spectrum: {:?}", report.e0_spectrum));
    }
    if let Some(f) = &report.fundamental_class {
        push(&mut out, format!("fundamental class: {f}"));
    }
    for v in &report.verdicts {
        push(
            &mut out,
            format!(
                "verdict {}: {}{}",
                v.check,
                v.conclusion,
                v.detail
                    .as_ref()
                    .map(|d| format!(" ({d})"))
                    .unwrap_or_default()
            ),
        );
        for h in &v.hypotheses {
            push(
                &mut out,
                format!("  hypothesis [{}] {}: {}", ok_mark(h.satisfied), h.name, h.evidence),
            );
        }
        for (k, val) in &v.evidence {
            push(&mut out, format!("  {k} = {val}"));
        }
    }
    push(&mut out, format!("engine: {}", report.engine_version));
    out
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

fn ok_mark(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "not met"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn cp2_report_core_numbers() {
        let model = corpus::load(corpus::find("cp2").unwrap());
        let report = build_report(&model, "cp2", None, DEFAULT_WINDOW_FACTOR);
        assert_eq!(report.invariants.n_formula, 4);
        assert_eq!(report.invariants.e_formula, Some(2));
        assert_eq!(report.dim_h, Some(3));
        assert_eq!(report.cohomology, vec![1, 0, 1, 0, 1]);
        assert_eq!(report.toomer.as_ref().unwrap().value, 2);
        assert_eq!(report.toomer.as_ref().unwrap().agrees_with_formula, Some(true));
        assert_eq!(report.e0_spectrum, vec![0, 1, 2]);
        let json = to_json(&report);
        assert!(json.contains("\"N\": 4"));
        assert!(json.contains("\"e\": 2"));
        assert!(json.contains("\"dimH\": 3"));
    }

    #[test]
    fn empty_model_report() {
        let model = crate::parser::parse_model("").expect("empty model");
        let report = build_report(&model, "empty", None, DEFAULT_WINDOW_FACTOR);
        assert_eq!(report.cohomology, vec![1]);
        assert_eq!(report.dim_h, Some(1));
        assert_eq!(report.e0_spectrum, vec![0]);
    }

    #[test]
    fn json_is_deterministic() {
        let model = corpus::load(corpus::find("e6-pure").unwrap());
        let a = to_json(&build_report(&model, "e6-pure", None, DEFAULT_WINDOW_FACTOR));
        let b = to_json(&build_report(&model, "e6-pure", None, DEFAULT_WINDOW_FACTOR));
        assert_eq!(a, b);
    }

    #[test]
    fn table_and_json_carry_the_same_numbers() {
        let model = corpus::load(corpus::find("s2").unwrap());
        let report = build_report(&model, "s2", None, DEFAULT_WINDOW_FACTOR);
        let table = to_table(&report);
        assert!(table.contains("N=2"));
        assert!(table.contains("dimH: 2"));
        assert!(table.contains("toomer: 1"));
        let json = to_json(&report);
        assert!(json.contains("\"N\": 2"));
        assert!(json.contains("\"dimH\": 2"));
    }
}
