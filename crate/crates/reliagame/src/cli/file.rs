//! The JSON game file format and its loader.
//!
//! Every file carries a `game` discriminator (`network`, `explicit`,
//! `weighted_voting`, `typed`), a `format_version`, and kind-specific
//! fields. Unknown fields are rejected. Agent labels are optional
//! everywhere; omitted labels default to `e<i>` for network edges and to
//! plain index strings otherwise. Typed games label expanded agents
//! `<type>.<ordinal>`.

use crate::error::{Error, Result};
use crate::games::typed::expand_typed_capped;
use crate::games::{BaseGame, ExplicitGame, TypedGame, WeightedVotingGame};
use crate::netgame::Network;
use crate::reliability::ReliabilityGame;
use crate::Coalition;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "game", rename_all = "snake_case")]
pub enum GameSpec {
    Network(NetworkSpec),
    Explicit(ExplicitSpec),
    WeightedVoting(WeightedVotingSpec),
    Typed(TypedSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    pub format_version: u32,
    pub vertices: Vec<String>,
    pub source: String,
    pub target: String,
    pub edges: Vec<EdgeSpec>,
    pub survival: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSpec {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_agents: Option<usize>,
    /// Minimal winning coalitions as lists of agent labels.
    pub minimal_winning: Vec<Vec<String>>,
    pub survival: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedVotingSpec {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub weights: Vec<f64>,
    pub quota: f64,
    pub survival: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypedSpec {
    pub format_version: u32,
    pub types: Vec<TypeSpec>,
    pub values: TypedValuesSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub count: u32,
    pub survival: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypedValuesSpec {
    /// Profiles winning in the base game; everything not listed loses.
    pub winning_profiles: Vec<Vec<u32>>,
}

/// A base game ready for analysis, with its agent labels.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseLoad {
    pub game: ReliabilityGame<BaseGame>,
    pub labels: Vec<String>,
    pub warnings: Vec<String>,
}

/// A typed game plus naming for its types.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedLoad {
    pub typed: TypedGame,
    pub type_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedGame {
    Base(BaseLoad),
    Typed(TypedLoad),
}

impl LoadedGame {
    /// The per-agent view: typed games are expanded (subject to the cap),
    /// other kinds pass through.
    pub fn to_base(&self, expansion_cap: usize) -> Result<BaseLoad> {
        match self {
            LoadedGame::Base(b) => Ok(b.clone()),
            LoadedGame::Typed(t) => {
                let (base, survival) = expand_typed_capped(&t.typed, expansion_cap)?;
                let mut labels = Vec::new();
                for (j, &count) in t.typed.counts().iter().enumerate() {
                    for ordinal in 1..=count {
                        labels.push(format!("{}.{ordinal}", t.type_names[j]));
                    }
                }
                Ok(BaseLoad {
                    game: ReliabilityGame::new(base, survival)?,
                    labels,
                    warnings: Vec::new(),
                })
            }
        }
    }

    pub fn typed(&self) -> Option<&TypedLoad> {
        match self {
            LoadedGame::Typed(t) => Some(t),
            LoadedGame::Base(_) => None,
        }
    }

    pub fn warnings(&self) -> &[String] {
        match self {
            LoadedGame::Base(b) => &b.warnings,
            LoadedGame::Typed(_) => &[],
        }
    }
}

pub fn parse_game_spec(json: &str) -> Result<GameSpec> {
    serde_json::from_str(json).map_err(|e| Error::InvalidArgument(format!("bad game file: {e}")))
}

pub fn load_game_str(json: &str) -> Result<LoadedGame> {
    build_game(&parse_game_spec(json)?)
}

pub fn load_game_file(path: &Path) -> Result<LoadedGame> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    load_game_str(&text)
}

fn check_version(version: u32) -> Result<()> {
    if version != FORMAT_VERSION {
        return Err(Error::InvalidArgument(format!(
            "unsupported format_version {version}, expected {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, label) in labels.iter().enumerate() {
        if label.is_empty() {
            return Err(Error::InvalidArgument("empty agent label".into()));
        }
        if label.contains(',') || label.chars().any(char::is_whitespace) {
            return Err(Error::InvalidArgument(format!(
                "agent label {label:?} may not contain commas or whitespace"
            )));
        }
        if labels[..i].contains(label) {
            return Err(Error::InvalidArgument(format!(
                "duplicate agent label {label:?}"
            )));
        }
    }
    Ok(())
}

fn check_survival(survival: &[f64], agents: usize) -> Result<()> {
    if survival.len() != agents {
        return Err(Error::InvalidArgument(format!(
            "{} survival entries for {agents} agents",
            survival.len()
        )));
    }
    if survival
        .iter()
        .any(|r| !r.is_finite() || !(0.0..=1.0).contains(r))
    {
        return Err(Error::InvalidArgument(
            "survival entries must lie in [0, 1]".into(),
        ));
    }
    Ok(())
}

/// Build the in-memory game from a parsed spec.
pub fn build_game(spec: &GameSpec) -> Result<LoadedGame> {
    match spec {
        GameSpec::Network(s) => {
            check_version(s.format_version)?;
            let labels: Vec<String> = s
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| e.label.clone().unwrap_or_else(|| format!("e{i}")))
                .collect();
            check_labels(&labels)?;
            check_survival(&s.survival, s.edges.len())?;
            let edges = s
                .edges
                .iter()
                .zip(&labels)
                .map(|(e, label)| (label.clone(), e.from.clone(), e.to.clone()))
                .collect();
            let net = Network::new(s.vertices.clone(), edges, &s.source, &s.target)?;
            let mut warnings = Vec::new();
            if !net.connected_with_all_edges() {
                warnings.push(
                    "target is unreachable even with every edge present; the game is all-zero"
                        .into(),
                );
            }
            Ok(LoadedGame::Base(BaseLoad {
                game: ReliabilityGame::new(net.into_base_game(), s.survival.clone())?,
                labels,
                warnings,
            }))
        }
        GameSpec::Explicit(s) => {
            check_version(s.format_version)?;
            let labels = match (&s.labels, s.num_agents) {
                (Some(labels), maybe_n) => {
                    if let Some(n) = maybe_n {
                        if labels.len() != n {
                            return Err(Error::InvalidArgument(format!(
                                "num_agents = {n} but {} labels given",
                                labels.len()
                            )));
                        }
                    }
                    labels.clone()
                }
                (None, Some(n)) => (0..n).map(|i| i.to_string()).collect(),
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "explicit game needs labels or num_agents".into(),
                    ))
                }
            };
            check_labels(&labels)?;
            check_survival(&s.survival, labels.len())?;
            let n = labels.len();
            let minimal = s
                .minimal_winning
                .iter()
                .map(|set| {
                    let members = set
                        .iter()
                        .map(|label| resolve_label(&labels, label))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Coalition::from_members(n, members))
                })
                .collect::<Result<Vec<_>>>()?;
            let game = ExplicitGame::new(n, minimal)?;
            Ok(LoadedGame::Base(BaseLoad {
                game: ReliabilityGame::new(BaseGame::Explicit(game), s.survival.clone())?,
                labels,
                warnings: Vec::new(),
            }))
        }
        GameSpec::WeightedVoting(s) => {
            check_version(s.format_version)?;
            let labels = match &s.labels {
                Some(labels) => labels.clone(),
                None => (0..s.weights.len()).map(|i| i.to_string()).collect(),
            };
            if labels.len() != s.weights.len() {
                return Err(Error::InvalidArgument(format!(
                    "{} labels for {} weights",
                    labels.len(),
                    s.weights.len()
                )));
            }
            check_labels(&labels)?;
            check_survival(&s.survival, s.weights.len())?;
            let game = WeightedVotingGame::new(s.weights.clone(), s.quota)?;
            Ok(LoadedGame::Base(BaseLoad {
                game: ReliabilityGame::new(BaseGame::WeightedVoting(game), s.survival.clone())?,
                labels,
                warnings: Vec::new(),
            }))
        }
        GameSpec::Typed(s) => {
            check_version(s.format_version)?;
            if s.types.is_empty() {
                return Err(Error::InvalidArgument(
                    "typed game needs at least one type".into(),
                ));
            }
            let type_names: Vec<String> = s
                .types
                .iter()
                .enumerate()
                .map(|(j, t)| t.name.clone().unwrap_or_else(|| format!("t{j}")))
                .collect();
            check_labels(&type_names)?;
            let counts: Vec<u32> = s.types.iter().map(|t| t.count).collect();
            let survival: Vec<f64> = s.types.iter().map(|t| t.survival).collect();
            let typed =
                TypedGame::from_winning_profiles(counts, survival, &s.values.winning_profiles)?;
            Ok(LoadedGame::Typed(TypedLoad { typed, type_names }))
        }
    }
}

/// Resolve one agent label to its index.
pub fn resolve_label(labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown agent label {label:?}")))
}

/// Parse a comma-separated coalition of labels; the empty string is the
/// empty coalition.
pub fn resolve_coalition(labels: &[String], text: &str) -> Result<Coalition> {
    let mut c = Coalition::empty(labels.len());
    for token in text.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        c = c.with(resolve_label(labels, token)?);
    }
    Ok(c)
}
