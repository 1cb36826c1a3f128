//! Invariant reports: JSON and text rendering, and a label-free canonical
//! form for comparing runs on relabeled inputs.

use std::fmt::Write as _;

use eqnielsen_core::analysis::{Analysis, ObjectInvariants, ObjectSummary};
use eqnielsen_core::complex::GapCheck;
use eqnielsen_core::fundamental::FundObject;
use eqnielsen_core::jiang::{ClassCount, ConverseVerdict, Dichotomy};
use eqnielsen_core::nielsen::FixedPointVerdict;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Pi1Order {
    Finite(usize),
    /// Always `"Z"`.
    Infinite(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectRow {
    pub id: usize,
    pub isotropy: usize,
    pub isotropy_class: usize,
    pub component: usize,
    pub basepoint: usize,
    pub f_vector: Vec<usize>,
    pub pi1_order: Pi1Order,
    #[serde(rename = "WHx_order")]
    pub whx_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRow {
    pub dim: Option<usize>,
    pub singular_dim: Option<usize>,
    pub dimension_ok: bool,
    pub codimension_ok: bool,
    pub holds: bool,
    pub diagnosis: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JiangRow {
    pub status: String,
    pub reasons: Vec<String>,
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyRow {
    pub conclusion: String,
    pub predicted_N_G: Option<usize>,
    pub consistent: bool,
}

/// Invariants at an object the map preserves. Class elements are lists of
/// `[label, coefficient]` or `[label, numerator, denominator]`.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub lambda: Vec<(i64, i64)>,
    pub nu: Vec<(i64, i64)>,
    pub L: i64,
    pub Lq: Vec<(i64, i64, i64)>,
    pub classes: String,
    pub surviving_classes: String,
    pub N_G: usize,
    pub N_upper_G: usize,
    pub M_G: String,
    pub M_upper_G: String,
    pub dichotomy: DichotomyRow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub object: usize,
    /// Absent when the map moves the component to another one.
    pub invariants: Option<InvariantRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub verdict: String,
    pub gap: GapRow,
    pub jiang: JiangRow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictBlock {
    pub kind: String,
    pub objects: Vec<usize>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseBlock {
    pub affirmative: bool,
    pub nonzero_lefschetz: Vec<usize>,
    pub not_jiang: Vec<usize>,
    pub gap_fails: Vec<usize>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// The quotient `Z/m` used for infinite cyclic fundamental groups.
    pub modulus: Option<usize>,
    pub objects: Vec<ObjectRow>,
    pub rows: Vec<Row>,
    pub verdict: VerdictBlock,
    pub converse: ConverseBlock,
}

pub const NOT_PRESERVED: &str = "n/a: the map moves this component to another one";

pub fn object_rows(objects: &[FundObject]) -> Vec<ObjectRow> {
    objects
        .iter()
        .map(|o| ObjectRow {
            id: o.id,
            isotropy: o.isotropy.order(),
            isotropy_class: o.isotropy_class,
            component: o.component_index,
            basepoint: o.basepoint,
            f_vector: (0..o.component.dim().map_or(0, |d| d + 1))
                .map(|p| o.component.simplices(p).len())
                .collect(),
            pi1_order: if o.pi1.is_infinite_cyclic() {
                Pi1Order::Infinite("Z".into())
            } else {
                Pi1Order::Finite(o.pi1.order())
            },
            whx_order: o.whx_order(),
        })
        .collect()
}

fn gap_row(g: &GapCheck) -> GapRow {
    let diagnosis = if g.holds() {
        "ok".to_string()
    } else {
        let mut parts = Vec::new();
        if !g.dimension_ok {
            parts.push(match g.dim {
                Some(d) => format!("dimension {d} < 3"),
                None => "empty component".to_string(),
            });
        }
        if !g.codimension_ok {
            if let (Some(d), Some(s)) = (g.dim, g.singular_dim) {
                parts.push(format!("codimension {} < 2", d - s));
            }
        }
        parts.join("; ")
    };
    GapRow {
        dim: g.dim,
        singular_dim: g.singular_dim,
        dimension_ok: g.dimension_ok,
        codimension_ok: g.codimension_ok,
        holds: g.holds(),
        diagnosis,
    }
}

fn count(c: ClassCount) -> String {
    c.render()
}

fn invariant_row(v: &ObjectInvariants) -> InvariantRow {
    let conclusion = match &v.dichotomy.conclusion {
        Dichotomy::Withheld => "withheld: Jiang hypothesis unverified".to_string(),
        Dichotomy::Vanishing => "L_G = 0, so lambda_G = 0 and N_G = 0".to_string(),
        Dichotomy::AllEssential(c) => format!("L_G != 0, so N_G = number of surviving classes = {}", c.render()),
    };
    InvariantRow {
        lambda: v.lambda.clone(),
        nu: v.nu.clone(),
        L: v.lefschetz,
        Lq: v.lq.iter().map(|(k, q)| (*k, *q.numer(), *q.denom())).collect(),
        classes: count(v.classes),
        surviving_classes: count(v.surviving),
        N_G: v.n_lower,
        N_upper_G: v.n_upper,
        M_G: v.m_lower.render(),
        M_upper_G: v.m_upper.render(),
        dichotomy: DichotomyRow {
            conclusion,
            predicted_N_G: v.dichotomy.predicted,
            consistent: v.dichotomy.consistent,
        },
    }
}

fn object_verdict(s: &ObjectSummary) -> String {
    match &s.invariants {
        None => "n/a".into(),
        Some(v) if !v.lambda.is_empty() => "obstruction: lambda_G non-zero".into(),
        Some(_) if !s.gap.holds() => "lambda_G vanishes; gap hypotheses unmet".into(),
        Some(_) => "lambda_G vanishes".into(),
    }
}

pub fn build(analysis: &Analysis) -> Report {
    let rows = analysis
        .summaries
        .iter()
        .map(|s| Row {
            object: s.id,
            invariants: s.invariants.as_ref().map(invariant_row),
            note: s.invariants.is_none().then(|| NOT_PRESERVED.to_string()),
            verdict: object_verdict(s),
            gap: gap_row(&s.gap),
            jiang: JiangRow {
                status: s.jiang.status.render(),
                reasons: s.jiang.reasons.iter().map(|r| r.render()).collect(),
            },
        })
        .collect();
    let (kind, objects) = match &analysis.verdict {
        FixedPointVerdict::HomotopicToFixedPointFree => ("fixed point free", Vec::new()),
        FixedPointVerdict::VanishesGapUnmet { objects } => ("vanishes, gap unmet", objects.clone()),
        FixedPointVerdict::Obstruction { objects } => ("obstruction", objects.clone()),
    };
    let converse = match &analysis.converse {
        ConverseVerdict::Affirmative => ConverseBlock {
            affirmative: true,
            nonzero_lefschetz: Vec::new(),
            not_jiang: Vec::new(),
            gap_fails: Vec::new(),
            text: analysis.converse.render(),
        },
        ConverseVerdict::Fails {
            nonzero_lefschetz,
            not_jiang,
            gap_fails,
        } => ConverseBlock {
            affirmative: false,
            nonzero_lefschetz: nonzero_lefschetz.clone(),
            not_jiang: not_jiang.clone(),
            gap_fails: gap_fails.clone(),
            text: analysis.converse.render(),
        },
    };
    Report {
        modulus: analysis.modulus,
        objects: object_rows(&analysis.objects),
        rows,
        verdict: VerdictBlock {
            kind: kind.into(),
            objects,
            text: analysis.verdict.render(),
        },
        converse,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&objects_table(&self.objects));
        if let Some(m) = self.modulus {
            let _ = writeln!(out, "infinite cyclic pi1 realized modulo {m}");
        }
        for (row, o) in self.rows.iter().zip(&self.objects) {
            let _ = writeln!(out);
            let _ = writeln!(out, "object {} (|H| = {}, component {})", o.id, o.isotropy, o.component);
            match &row.invariants {
                None => {
                    let _ = writeln!(out, "  {}", row.note.as_deref().unwrap_or(NOT_PRESERVED));
                }
                Some(v) => {
                    let _ = writeln!(out, "  lambda_G  {}", element(&v.lambda));
                    let _ = writeln!(out, "  nu_G      {}", element(&v.nu));
                    let _ = writeln!(out, "  L_G       {}", v.L);
                    let _ = writeln!(out, "  L^QAut    {}", rational_element(&v.Lq));
                    let _ = writeln!(out, "  classes   {} ({} surviving)", v.classes, v.surviving_classes);
                    let _ = writeln!(out, "  N_G       {}    M_G {}", v.N_G, v.M_G);
                    let _ = writeln!(out, "  N^G       {}    M^G {}", v.N_upper_G, v.M_upper_G);
                    let _ = writeln!(
                        out,
                        "  dichotomy {}{}",
                        v.dichotomy.conclusion,
                        if v.dichotomy.consistent { "" } else { " [INCONSISTENT]" }
                    );
                }
            }
            let _ = writeln!(out, "  gap       {}", row.gap.diagnosis);
            let _ = writeln!(out, "  jiang     {}", row.jiang.status);
            let _ = writeln!(out, "  verdict   {}", row.verdict);
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "verdict:  {}", self.verdict.text);
        let _ = writeln!(out, "converse: {}", self.converse.text);
        out
    }
}

pub fn objects_table(objects: &[ObjectRow]) -> String {
    let mut out = String::from("id  |H|  class  component  basepoint  pi1  |WH_x|  f-vector\n");
    for o in objects {
        let pi1 = match &o.pi1_order {
            Pi1Order::Finite(n) => n.to_string(),
            Pi1Order::Infinite(s) => s.clone(),
        };
        let _ = writeln!(
            out,
            "{:<3} {:<4} {:<6} {:<10} {:<10} {:<4} {:<7} {:?}",
            o.id, o.isotropy, o.isotropy_class, o.component, o.basepoint, pi1, o.whx_order, o.f_vector
        );
    }
    out
}

fn element(terms: &[(i64, i64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(k, c)| format!("{c}*[{k}]"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn rational_element(terms: &[(i64, i64, i64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(k, n, d)| {
            if *d == 1 {
                format!("{n}*[{k}]")
            } else {
                format!("{n}/{d}*[{k}]")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The report with every vertex- and label-dependent detail removed: each
/// object becomes a descriptor plus its invariants with class labels dropped
/// (coefficients sorted), rows are sorted, and verdicts refer to objects by
/// descriptor.
pub fn canonical(report: &Report) -> String {
    let descriptor = |i: usize| {
        let o = &report.objects[i];
        let r = &report.rows[i];
        serde_json::json!({
            "isotropy": o.isotropy,
            "isotropy_class": o.isotropy_class,
            "f_vector": o.f_vector,
            "pi1_order": o.pi1_order,
            "WHx_order": o.whx_order,
            "gap": r.gap,
            "jiang": r.jiang,
        })
        .to_string()
    };
    let sorted_coeffs = |terms: &[(i64, i64)]| {
        let mut c: Vec<i64> = terms.iter().map(|t| t.1).collect();
        c.sort_unstable();
        c
    };
    let mut rows: Vec<String> = (0..report.rows.len())
        .map(|i| {
            let r = &report.rows[i];
            let inv = r.invariants.as_ref().map(|v| {
                let mut lq: Vec<(i64, i64)> = v.Lq.iter().map(|t| (t.1, t.2)).collect();
                lq.sort_unstable();
                serde_json::json!({
                    "lambda": sorted_coeffs(&v.lambda),
                    "nu": sorted_coeffs(&v.nu),
                    "L": v.L,
                    "Lq": lq,
                    "classes": v.classes,
                    "surviving": v.surviving_classes,
                    "N_G": v.N_G,
                    "N_upper_G": v.N_upper_G,
                    "M_G": v.M_G,
                    "M_upper_G": v.M_upper_G,
                    "dichotomy": v.dichotomy,
                })
            });
            serde_json::json!({
                "object": descriptor(i),
                "invariants": inv,
                "verdict": r.verdict,
            })
            .to_string()
        })
        .collect();
    rows.sort();
    let by_descriptor = |ids: &[usize]| {
        let mut d: Vec<String> = ids.iter().map(|&i| descriptor(i)).collect();
        d.sort();
        d
    };
    serde_json::to_string_pretty(&serde_json::json!({
        "rows": rows,
        "verdict": {"kind": report.verdict.kind, "objects": by_descriptor(&report.verdict.objects)},
        "converse": {
            "affirmative": report.converse.affirmative,
            "nonzero_lefschetz": by_descriptor(&report.converse.nonzero_lefschetz),
            "not_jiang": by_descriptor(&report.converse.not_jiang),
            "gap_fails": by_descriptor(&report.converse.gap_fails),
        },
    }))
    .expect("canonical form serializes")
}
