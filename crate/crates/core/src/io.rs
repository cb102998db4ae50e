//! Text formats: DMDP files, experiment configs, checkpoint CSVs.
//!
//! A DMDP file lists state and action names and one transition triple per
//! `(state, action)` pair:
//!
//! ```toml
//! states = ["left", "right"]
//! actions = ["go", "stay"]
//! transitions = [
//!   ["left", "go", "right"], ["left", "stay", "left"],
//!   ["right", "go", "left"], ["right", "stay", "right"],
//! ]
//! ```

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::adversary::{AdversarySpec, Labels, Ref};
use crate::dmdp::Dmdp;
use crate::error::{Error, Result};

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmdpDoc {
    pub states: Vec<String>,
    pub actions: Vec<String>,
    pub transitions: Vec<[String; 3]>,
}

/// A DMDP together with the names it was declared with.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedDmdp {
    pub dmdp: Dmdp,
    pub labels: Labels,
}

impl NamedDmdp {
    /// Names states `s0, s1, ...` and actions `a0, a1, ...`.
    pub fn numbered(dmdp: Dmdp) -> Self {
        Self { labels: Labels::numbered(&dmdp), dmdp }
    }

    pub fn to_doc(&self) -> DmdpDoc {
        let l = &self.labels;
        DmdpDoc {
            states: l.states.clone(),
            actions: l.actions.clone(),
            transitions: self
                .dmdp
                .pairs()
                .map(|(s, a)| {
                    [l.states[s].clone(), l.actions[a].clone(), l.states[self.dmdp.next(s, a)].clone()]
                })
                .collect(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_doc()).expect("plain document serializes")
    }
}

fn unique_index(names: &[String], what: &str) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(parse_error(format!("duplicate {what} name {n:?}")));
        }
    }
    Ok(())
}

impl TryFrom<DmdpDoc> for NamedDmdp {
    type Error = Error;

    fn try_from(doc: DmdpDoc) -> Result<Self> {
        if doc.states.is_empty() || doc.actions.is_empty() {
            return Err(parse_error("states and actions must be nonempty"));
        }
        unique_index(&doc.states, "state")?;
        unique_index(&doc.actions, "action")?;
        let (n, na) = (doc.states.len(), doc.actions.len());
        let find = |names: &[String], x: &str, what: &str, row: usize| {
            names
                .iter()
                .position(|y| y == x)
                .ok_or_else(|| parse_error(format!("transitions[{row}]: unknown {what} {x:?}")))
        };
        let mut table = vec![usize::MAX; n * na];
        for (row, [s, a, t]) in doc.transitions.iter().enumerate() {
            let s = find(&doc.states, s, "state", row)?;
            let a = find(&doc.actions, a, "action", row)?;
            let t = find(&doc.states, t, "state", row)?;
            let slot = &mut table[s * na + a];
            if *slot != usize::MAX {
                return Err(parse_error(format!(
                    "transitions[{row}]: pair ({}, {}) is listed twice",
                    doc.states[s], doc.actions[a]
                )));
            }
            *slot = t;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(parse_error(format!(
                "transitions: pair ({}, {}) is missing",
                doc.states[i / na],
                doc.actions[i % na]
            )));
        }
        Ok(Self { dmdp: Dmdp::new(n, na, table)?, labels: Labels { states: doc.states, actions: doc.actions } })
    }
}

pub fn parse_dmdp(text: &str) -> Result<NamedDmdp> {
    let doc: DmdpDoc = toml::from_str(text).map_err(|e| parse_error(e.to_string()))?;
    doc.try_into()
}

pub fn load_dmdp(path: &Path) -> Result<NamedDmdp> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_error(format!("cannot read {}: {e}", path.display())))?;
    parse_dmdp(&text).map_err(|e| match e {
        Error::Parse(msg) => parse_error(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Either a path to a DMDP file or the DMDP fields inline.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmdpSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<Vec<[String; 3]>>,
}

impl DmdpSection {
    /// Loads the DMDP; relative file paths are taken from `base_dir`.
    pub fn load(&self, base_dir: &Path) -> Result<NamedDmdp> {
        match (&self.file, &self.states, &self.actions, &self.transitions) {
            (Some(f), None, None, None) => load_dmdp(&base_dir.join(f)),
            (None, Some(states), Some(actions), Some(transitions)) => DmdpDoc {
                states: states.clone(),
                actions: actions.clone(),
                transitions: transitions.clone(),
            }
            .try_into(),
            _ => Err(parse_error("dmdp: give either `file` or all of `states`, `actions`, `transitions`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgorithmSpec {
    #[serde(rename = "marcopolo")]
    MarcoPolo,
    CycleLearner { k: usize, anchor: Ref },
    /// EXP3 over the actions, one draw per round, ignoring the state.
    Exp3Baseline,
}

fn default_start() -> Ref {
    Ref::Index(0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub horizon: usize,
    /// Longest cycle length `L`.
    pub max_cycle_len: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(default = "default_start")]
    pub start_state: Ref,
    pub seeds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Policy-enumeration cap for the brute-force benchmark.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_enum: Option<u128>,
    pub dmdp: DmdpSection,
    pub adversary: AdversarySpec,
    pub algorithm: AlgorithmSpec,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| parse_error(e.to_string()))?;
        if cfg.seeds.is_empty() {
            return Err(parse_error("seeds: at least one seed is required"));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| parse_error(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Parse(msg) => parse_error(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

/// Reads an adversary given either as a bare table (`kind = ...`) or under
/// an `[adversary]` header.
pub fn parse_adversary(text: &str) -> Result<AdversarySpec> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Wrapped {
        adversary: AdversarySpec,
    }
    match toml::from_str::<Wrapped>(text) {
        Ok(w) => Ok(w.adversary),
        Err(wrapped) => toml::from_str::<AdversarySpec>(text).map_err(|bare| {
            let err = if text.contains("[adversary]") { wrapped } else { bare };
            parse_error(err.to_string())
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckpointRow {
    pub round: usize,
    pub cum_reward: f64,
    pub benchmark_cum: f64,
    pub regret: f64,
}

pub fn write_checkpoints<W: Write>(rows: &[CheckpointRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Internal(format!("csv: {e}")))
}

pub fn read_checkpoints(text: &str) -> Result<Vec<CheckpointRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| parse_error(format!("csv: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{d2, ring4};

    const D2: &str = r#"
states = ["left", "right"]
actions = ["go", "stay"]
transitions = [
  ["left", "go", "right"], ["left", "stay", "left"],
  ["right", "go", "left"], ["right", "stay", "right"],
]
"#;

    #[test]
    fn parses_named_dmdp() {
        let named = parse_dmdp(D2).unwrap();
        assert_eq!(named.dmdp, d2());
        assert_eq!(named.labels.states, vec!["left", "right"]);
    }

    #[test]
    fn round_trips() {
        let named = NamedDmdp::numbered(ring4());
        assert_eq!(parse_dmdp(&named.to_toml()).unwrap(), named);
    }

    #[test]
    fn rejects_bad_documents() {
        let missing = D2.replace(r#"["right", "stay", "right"],"#, "");
        assert!(parse_dmdp(&missing).unwrap_err().to_string().contains("missing"));
        let twice = D2.replace(r#"["right", "stay", "right"],"#, r#"["right", "go", "right"],"#);
        assert!(parse_dmdp(&twice).unwrap_err().to_string().contains("listed twice"));
        let unknown = D2.replace(r#"["left", "go", "right"]"#, r#"["left", "jump", "right"]"#);
        assert!(parse_dmdp(&unknown).unwrap_err().to_string().contains("transitions[0]"));
        let extra = format!("{D2}\nrewards = 1\n");
        assert!(matches!(parse_dmdp(&extra), Err(Error::Parse(_))));
        assert!(matches!(parse_dmdp("states = ["), Err(Error::Parse(_))));
        let dup = D2.replace(r#"actions = ["go", "stay"]"#, r#"actions = ["go", "go"]"#);
        assert!(parse_dmdp(&dup).is_err());
    }

    const CONFIG: &str = r#"
horizon = 1000
max_cycle_len = 2
seeds = [1, 2, 3]
start_state = "left"

[dmdp]
states = ["left", "right"]
actions = ["go", "stay"]
transitions = [
  ["left", "go", "right"], ["left", "stay", "left"],
  ["right", "go", "left"], ["right", "stay", "right"],
]

[adversary]
kind = "indicator"
pairs = [["left", "stay"]]

[algorithm]
kind = "marcopolo"
"#;

    #[test]
    fn parses_config() {
        let cfg = ExperimentConfig::parse(CONFIG).unwrap();
        assert_eq!(cfg.seeds, vec![1, 2, 3]);
        assert_eq!(cfg.algorithm, AlgorithmSpec::MarcoPolo);
        assert_eq!(cfg.start_state, Ref::Name("left".into()));
        let named = cfg.dmdp.load(Path::new(".")).unwrap();
        assert_eq!(named.dmdp, d2());
        assert_eq!(ExperimentConfig::parse(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn config_rejects_typos_and_empty_seeds() {
        let typo = CONFIG.replace("max_cycle_len", "max_cycle_length");
        assert!(matches!(ExperimentConfig::parse(&typo), Err(Error::Parse(_))));
        let no_seeds = CONFIG.replace("seeds = [1, 2, 3]", "seeds = []");
        assert!(ExperimentConfig::parse(&no_seeds).is_err());
        let algo = CONFIG.replace("kind = \"marcopolo\"", "kind = \"cycle_learner\"\nk = 2\nanchor = 0");
        assert_eq!(
            ExperimentConfig::parse(&algo).unwrap().algorithm,
            AlgorithmSpec::CycleLearner { k: 2, anchor: Ref::Index(0) }
        );
        let both = CONFIG.replace("[dmdp]", "[dmdp]\nfile = \"x.toml\"");
        assert!(ExperimentConfig::parse(&both).unwrap().dmdp.load(Path::new(".")).is_err());
    }

    #[test]
    fn adversary_files() {
        let bare = parse_adversary("kind = \"constant\"\nvalue = 0.25\n").unwrap();
        assert_eq!(bare, AdversarySpec::Constant { value: 0.25 });
        let wrapped = parse_adversary("[adversary]\nkind = \"seeded_random\"\nseed = 4\n").unwrap();
        assert_eq!(wrapped, AdversarySpec::SeededRandom { seed: 4 });
        let err = parse_adversary("[adversary]\nkind = \"constant\"\nvalu = 1\n").unwrap_err();
        assert!(err.to_string().contains("valu"), "{err}");
        assert!(parse_adversary("kind = \"wobble\"\n").is_err());
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![
            CheckpointRow { round: 1, cum_reward: 0.5, benchmark_cum: 1.0, regret: 0.5 },
            CheckpointRow { round: 2, cum_reward: 1.25, benchmark_cum: 1.0, regret: -0.25 },
        ];
        let mut buf = Vec::new();
        write_checkpoints(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("round,cum_reward,benchmark_cum,regret\n"));
        assert_eq!(read_checkpoints(&text).unwrap(), rows);
    }
}
