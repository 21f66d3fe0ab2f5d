//! Machine-readable verdict records and their renderings.

use serde::{Deserialize, Serialize};

use perfcode::perfect::{Evidence, Verdict};
use perfcode::{FiniteGroup, Subgroup};

/// Certificate attached to a record. Element indices refer to the canonical
/// element order of the group rebuilt from `group_generators`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EvidenceRecord {
    Transversal {
        elements: Vec<u32>,
    },
    Witness {
        element: u32,
        images: Vec<u32>,
    },
    Shortcut {
        name: String,
        params: Vec<(String, String)>,
    },
    /// Decided by the independent oracle, which produces no certificate.
    Oracle,
}

impl EvidenceRecord {
    pub fn from_evidence(group: &FiniteGroup, e: &Evidence) -> Self {
        match e {
            Evidence::Transversal(l) => EvidenceRecord::Transversal {
                elements: l.clone(),
            },
            Evidence::Witness(a) => EvidenceRecord::Witness {
                element: *a,
                images: group.element(*a).to_vec(),
            },
            Evidence::Shortcut { name, params } => EvidenceRecord::Shortcut {
                name: name.clone(),
                params: params.clone(),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            EvidenceRecord::Transversal { elements } => format!("transversal({})", elements.len()),
            EvidenceRecord::Witness { element, .. } => format!("witness({element})"),
            EvidenceRecord::Shortcut { name, .. } => format!("shortcut({name})"),
            EvidenceRecord::Oracle => "oracle".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub group: String,
    pub subgroup: String,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub is_perfect_code: bool,
    pub method: String,
    pub trace: Vec<String>,
    pub evidence: EvidenceRecord,
    pub group_generators: Vec<Vec<u32>>,
    pub subgroup_generators: Vec<Vec<u32>>,
    pub wall_time: Option<f64>,
}

impl VerdictRecord {
    pub fn new(
        group_spec: &str,
        description: &str,
        g: &Subgroup,
        h: &Subgroup,
        method: &str,
        v: &Verdict,
    ) -> Self {
        let amb = g.ambient();
        Self::with_evidence(
            group_spec,
            description,
            g,
            h,
            method,
            v.is_perfect_code,
            v.trace.iter().map(ToString::to_string).collect(),
            EvidenceRecord::from_evidence(amb, &v.evidence),
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn with_evidence(
        group_spec: &str,
        description: &str,
        g: &Subgroup,
        h: &Subgroup,
        method: &str,
        is_perfect_code: bool,
        trace: Vec<String>,
        evidence: EvidenceRecord,
    ) -> Self {
        let amb = g.ambient();
        let images = |s: &Subgroup| {
            s.generators()
                .iter()
                .map(|&x| amb.element(x).to_vec())
                .collect()
        };
        VerdictRecord {
            group: group_spec.to_string(),
            subgroup: description.to_string(),
            group_order: g.order(),
            subgroup_order: h.order(),
            index: g.order() / h.order(),
            is_perfect_code,
            method: method.to_string(),
            trace,
            evidence,
            group_generators: amb
                .generators()
                .iter()
                .map(|p| p.images().to_vec())
                .collect(),
            subgroup_generators: images(h),
            wall_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

pub fn render(records: &[VerdictRecord], format: Format) -> String {
    match format {
        Format::Json => records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect(),
        Format::Md => {
            let mut out = String::from(
                "| group | subgroup | |G| | |H| | index | perfect code | method | evidence |\n",
            );
            out.push_str("|---|---|---|---|---|---|---|---|\n");
            for r in records {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    r.group,
                    r.subgroup,
                    r.group_order,
                    r.subgroup_order,
                    r.index,
                    r.is_perfect_code,
                    r.method,
                    r.evidence.label()
                ));
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "group",
                "subgroup",
                "group_order",
                "subgroup_order",
                "index",
                "is_perfect_code",
                "method",
                "trace",
                "evidence",
                "wall_time",
            ])
            .expect("in-memory write");
            for r in records {
                w.write_record([
                    r.group.clone(),
                    r.subgroup.clone(),
                    r.group_order.to_string(),
                    r.subgroup_order.to_string(),
                    r.index.to_string(),
                    r.is_perfect_code.to_string(),
                    r.method.clone(),
                    r.trace.join("; "),
                    serde_json::to_string(&r.evidence).expect("evidence serializes"),
                    r.wall_time.map(|t| t.to_string()).unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
    }
}
