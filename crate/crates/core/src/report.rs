//! JSON shapes for decision reports, certificates, oracle results and
//! subdivision dumps. Rationals are rendered as `"a/b"` strings.

use serde::{Deserialize, Serialize};

use crate::engine::{CertificateEntry, Decision, EngineConfig, Verdict};
use crate::error::{Result, SdsError};
use crate::geometry::{squared_diameter, Cell};
use crate::polynomial::{parse_form, Form, Point};
use crate::rational::{format_rational, format_rationals};
use crate::substitution::Chain;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub polynomial: String,
    pub vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corpus: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub kind: String,
    pub depth: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chain: Option<Chain>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub live_forms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub forms_expanded: u64,
    pub forms_pruned: u64,
    pub duplicates_collapsed: u64,
    /// Seconds; only present when timing was requested.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionReport {
    pub input: InputEcho,
    pub config: EngineConfig,
    pub verdict: VerdictReport,
    pub stats: StatsReport,
}

impl DecisionReport {
    pub fn new(input: InputEcho, config: &EngineConfig, decision: &Decision) -> Self {
        let v = &decision.verdict;
        let mut verdict = VerdictReport {
            kind: v.kind().to_string(),
            depth: v.depth(),
            point: None,
            value: None,
            chain: None,
            live_forms: None,
            certificate_path: None,
        };
        match v {
            Verdict::Counterexample { chain, point, value } => {
                verdict.point = Some(format_rationals(point.coords()));
                verdict.value = Some(format_rational(value));
                verdict.chain = Some(chain.clone());
            }
            Verdict::Inconclusive { live_forms, .. } => verdict.live_forms = Some(*live_forms),
            Verdict::PositiveSemidefinite { .. } => {}
        }
        DecisionReport {
            input,
            config: config.clone(),
            verdict,
            stats: StatsReport {
                forms_expanded: decision.stats.forms_expanded,
                forms_pruned: decision.stats.forms_pruned,
                duplicates_collapsed: decision.stats.duplicates_collapsed,
                wall_time: None,
            },
        }
    }

    pub fn to_text(&self) -> String {
        let v = &self.verdict;
        let mut out = Vec::new();
        match v.kind.as_str() {
            "positive_semidefinite" => out.push(format!(
                "The form is positive semi-definite (certified after {} substitution round{}).",
                v.depth,
                if v.depth == 1 { "" } else { "s" }
            )),
            "counterexample" => {
                out.push(format!(
                    "The form is indefinite (counterexample at depth {}).",
                    v.depth
                ));
                if let Some(chain) = &v.chain {
                    out.push(format!("chain: {chain}"));
                }
                if let Some(point) = &v.point {
                    out.push(format!("point: ({})", point.join(", ")));
                }
                if let Some(value) = &v.value {
                    out.push(format!("value: {value}"));
                }
            }
            _ => out.push(format!(
                "Inconclusive: stopped at depth {} with {} live forms.",
                v.depth,
                v.live_forms.unwrap_or(0)
            )),
        }
        if let Some(path) = &v.certificate_path {
            out.push(format!("certificate: {path}"));
        }
        let s = &self.stats;
        out.push(format!(
            "forms expanded: {}, pruned: {}, duplicates collapsed: {}",
            s.forms_expanded, s.forms_pruned, s.duplicates_collapsed
        ));
        if let Some(t) = s.wall_time {
            out.push(format!("wall time: {t:.3}s"));
        }
        out.join("\n")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub chain: Chain,
    pub form: String,
}

pub fn certificate_to_records(cert: &[CertificateEntry], vars: &[String]) -> Vec<CertificateRecord> {
    cert.iter()
        .map(|e| CertificateRecord {
            chain: e.chain.clone(),
            form: e.form.to_string_with(vars),
        })
        .collect()
}

/// Parses certificate records back into forms over `vars` (`nvars` is taken
/// from the list; each form's degree must match `degree`, zero forms adopt it).
pub fn records_to_certificate(
    records: &[CertificateRecord],
    vars: &[String],
    degree: u32,
) -> Result<Vec<CertificateEntry>> {
    records
        .iter()
        .map(|r| {
            let mut form = parse_form(&r.form, vars)?;
            if form.is_zero() {
                form = Form::zero(vars.len(), degree);
            }
            Ok(CertificateEntry {
                chain: r.chain.clone(),
                form,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub chain: Chain,
    pub vertices: Vec<Vec<String>>,
    pub squared_diameter: String,
}

impl From<&Cell> for CellReport {
    fn from(cell: &Cell) -> Self {
        CellReport {
            chain: cell.chain.clone(),
            vertices: cell
                .vertices
                .iter()
                .map(|v| format_rationals(v.coords()))
                .collect(),
            squared_diameter: format_rational(&squared_diameter(cell)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OracleReport {
    Grid {
        min: String,
        argmin: Vec<String>,
    },
    Random {
        found: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        point: Option<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        value: Option<String>,
    },
}

impl OracleReport {
    pub fn grid(min: &num_rational::BigRational, argmin: &Point) -> Self {
        OracleReport::Grid {
            min: format_rational(min),
            argmin: format_rationals(argmin.coords()),
        }
    }

    pub fn random(hit: Option<&(Point, num_rational::BigRational)>) -> Self {
        OracleReport::Random {
            found: hit.is_some(),
            point: hit.map(|(p, _)| format_rationals(p.coords())),
            value: hit.map(|(_, v)| format_rational(v)),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| SdsError::InvalidConfig(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::yys_decide;

    #[test]
    fn counterexample_report_fields() {
        let vars: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let f = parse_form("x^2 - 3*x*y + y^2", &vars).unwrap();
        let cfg = EngineConfig::default();
        let d = yys_decide(&f, &cfg).unwrap();
        let report = DecisionReport::new(
            InputEcho {
                polynomial: "x^2 - 3*x*y + y^2".into(),
                vars,
                corpus: None,
            },
            &cfg,
            &d,
        );
        let json: serde_json::Value = serde_json::from_str(&to_json(&report).unwrap()).unwrap();
        assert_eq!(json["verdict"]["kind"], "counterexample");
        assert_eq!(json["verdict"]["value"], "-1/4");
        assert_eq!(json["verdict"]["point"][0], "1/2");
        assert_eq!(json["verdict"]["chain"], serde_json::json!([]));
        assert_eq!(json["config"]["negativity_mode"], "value");
        assert!(json["stats"].get("wall_time").is_none());
        assert!(report.to_text().contains("value: -1/4"));
    }

    #[test]
    fn certificate_records_round_trip() {
        let vars: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let f = parse_form("x^2 - x*y + y^2", &vars).unwrap();
        let cfg = EngineConfig {
            emit_certificate: true,
            ..EngineConfig::default()
        };
        let Verdict::PositiveSemidefinite {
            certificate: Some(cert),
            ..
        } = yys_decide(&f, &cfg).unwrap().verdict
        else {
            panic!("expected a certificate");
        };
        let records = certificate_to_records(&cert, &vars);
        let json = serde_json::to_string(&records).unwrap();
        let back: Vec<CertificateRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(records_to_certificate(&back, &vars, 2).unwrap(), cert);
    }
}
