//! Report structures and rendering.
//!
//! Text mode truncates floats to 12 decimal places for display; JSON mode
//! serializes them at full precision. Both renderings are deterministic
//! functions of the report contents.

use serde::Serialize;
use std::fmt::Write;

#[derive(Debug, Clone, Serialize)]
pub struct ValueReport {
    pub coalition: Vec<String>,
    pub base_value: u8,
    pub reliability_value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AgentValue {
    pub agent: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_high: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapleyReport {
    pub agents: usize,
    /// "exact" or "sampled".
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub values: Vec<AgentValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AgentPayoff {
    pub agent: String,
    pub payoff: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreReport {
    pub method: String,
    /// "non-empty", "empty" or "unknown".
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imputation: Option<Vec<AgentPayoff>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VetoReport {
    pub base_veto: Vec<String>,
    pub extension_veto: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// "in core" or "blocked".
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocking_coalition: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coalition_payoff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coalition_value: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Report {
    Value(ValueReport),
    Shapley(ShapleyReport),
    Core(CoreReport),
    Veto(VetoReport),
    Check(CheckReport),
}

impl Report {
    pub fn render(&self, json: bool) -> String {
        if json {
            // Full-precision floats, stable field order.
            let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.render_text()
        }
    }

    fn render_text(&self) -> String {
        match self {
            Report::Value(r) => {
                let mut out = String::new();
                let members = if r.coalition.is_empty() {
                    "(empty)".to_string()
                } else {
                    r.coalition.join(",")
                };
                writeln!(out, "coalition: {members}").unwrap();
                writeln!(out, "base value: {}", r.base_value).unwrap();
                writeln!(out, "reliability value: {:.12}", r.reliability_value).unwrap();
                out
            }
            Report::Shapley(r) => {
                let mut out = String::new();
                writeln!(out, "agents: {}", r.agents).unwrap();
                match &r.mode {
                    Some(mode) => writeln!(out, "method: {} ({mode})", r.method).unwrap(),
                    None => writeln!(out, "method: {}", r.method).unwrap(),
                }
                if let Some(k) = r.samples {
                    writeln!(out, "samples: {k}").unwrap();
                }
                if let Some(delta) = r.delta {
                    writeln!(out, "delta: {delta}").unwrap();
                }
                if let Some(epsilon) = r.epsilon {
                    writeln!(out, "epsilon: {epsilon:.12}").unwrap();
                }
                if let Some(seed) = r.seed {
                    writeln!(out, "seed: {seed}").unwrap();
                }
                let width = label_width(r.values.iter().map(|v| v.agent.as_str()));
                if r.values.iter().any(|v| v.ci_low.is_some()) {
                    writeln!(
                        out,
                        "{:<width$}  {:>16}  {:>16}  {:>16}",
                        "agent", "estimate", "ci_low", "ci_high"
                    )
                    .unwrap();
                    for v in &r.values {
                        writeln!(
                            out,
                            "{:<width$}  {:>16.12}  {:>16.12}  {:>16.12}",
                            v.agent,
                            v.value,
                            v.ci_low.unwrap(),
                            v.ci_high.unwrap()
                        )
                        .unwrap();
                    }
                } else {
                    writeln!(out, "{:<width$}  {:>16}", "agent", "value").unwrap();
                    for v in &r.values {
                        writeln!(out, "{:<width$}  {:>16.12}", v.agent, v.value).unwrap();
                    }
                }
                if let Some(total) = r.total {
                    writeln!(out, "{:<width$}  {:>16.12}", "total", total).unwrap();
                }
                out
            }
            Report::Core(r) => {
                let mut out = String::new();
                writeln!(out, "method: {}", r.method).unwrap();
                writeln!(out, "verdict: {}", r.verdict).unwrap();
                if let Some(reason) = &r.reason {
                    writeln!(out, "reason: {reason}").unwrap();
                }
                if let Some(imputation) = &r.imputation {
                    writeln!(out, "imputation:").unwrap();
                    let width = label_width(imputation.iter().map(|p| p.agent.as_str()));
                    for p in imputation {
                        writeln!(out, "{:<width$}  {:>16.12}", p.agent, p.payoff).unwrap();
                    }
                }
                out
            }
            Report::Veto(r) => {
                let mut out = String::new();
                writeln!(out, "base veto agents: {}", join_or_none(&r.base_veto)).unwrap();
                writeln!(
                    out,
                    "extension veto agents: {}",
                    join_or_none(&r.extension_veto)
                )
                .unwrap();
                out
            }
            Report::Check(r) => {
                let mut out = String::new();
                writeln!(out, "verdict: {}", r.verdict).unwrap();
                if let Some(blocking) = &r.blocking_coalition {
                    writeln!(out, "blocking coalition: {}", join_or_none(blocking)).unwrap();
                }
                if let Some(p) = r.coalition_payoff {
                    writeln!(out, "coalition payoff: {p:.12}").unwrap();
                }
                if let Some(v) = r.coalition_value {
                    writeln!(out, "coalition value: {v:.12}").unwrap();
                }
                out
            }
        }
    }
}

fn join_or_none(labels: &[String]) -> String {
    if labels.is_empty() {
        "(none)".to_string()
    } else {
        labels.join(",")
    }
}

fn label_width<'a>(labels: impl Iterator<Item = &'a str>) -> usize {
    labels.map(|l| l.len()).chain([5usize]).max().unwrap()
}
