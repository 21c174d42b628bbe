//! Schwartz value taxonomy and potential value conflict scores.
//!
//! Each of the 56 values has a position in a two-dimensional configuration.
//! The conflict score of two values is their Euclidean distance divided by
//! the largest distance between any two values, so it lies in `[0, 1]`.
//! Scores are banded into quartiles of the distribution over all 1540
//! unordered pairs.
//!
//! The coordinate table is embedded data (`data/values.json`). It
//! approximates the circular arrangement of the ten value types and is
//! calibrated so that freedom/authority scores about 0.55 and
//! authority/healthy about 0.27.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUILTIN: &str = include_str!("../data/values.json");

pub const VALUE_COUNT: usize = 56;
pub const PAIR_COUNT: usize = VALUE_COUNT * (VALUE_COUNT - 1) / 2;

/// The ten universal value types, in circle order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueGroup {
    SelfDirection,
    Stimulation,
    Hedonism,
    Achievement,
    Power,
    Security,
    Conformity,
    Tradition,
    Benevolence,
    Universalism,
}

impl ValueGroup {
    pub const ALL: [ValueGroup; 10] = [
        ValueGroup::SelfDirection,
        ValueGroup::Stimulation,
        ValueGroup::Hedonism,
        ValueGroup::Achievement,
        ValueGroup::Power,
        ValueGroup::Security,
        ValueGroup::Conformity,
        ValueGroup::Tradition,
        ValueGroup::Benevolence,
        ValueGroup::Universalism,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ValueGroup::SelfDirection => "self_direction",
            ValueGroup::Stimulation => "stimulation",
            ValueGroup::Hedonism => "hedonism",
            ValueGroup::Achievement => "achievement",
            ValueGroup::Power => "power",
            ValueGroup::Security => "security",
            ValueGroup::Conformity => "conformity",
            ValueGroup::Tradition => "tradition",
            ValueGroup::Benevolence => "benevolence",
            ValueGroup::Universalism => "universalism",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ValueGroup::SelfDirection => "Self-Direction",
            ValueGroup::Stimulation => "Stimulation",
            ValueGroup::Hedonism => "Hedonism",
            ValueGroup::Achievement => "Achievement",
            ValueGroup::Power => "Power",
            ValueGroup::Security => "Security",
            ValueGroup::Conformity => "Conformity",
            ValueGroup::Tradition => "Tradition",
            ValueGroup::Benevolence => "Benevolence",
            ValueGroup::Universalism => "Universalism",
        }
    }

    /// The group lying across the circle in the shipped configuration.
    pub fn opposite(self) -> ValueGroup {
        use ValueGroup::*;
        match self {
            SelfDirection => Power,
            Stimulation => Security,
            Hedonism => Tradition,
            Achievement => Benevolence,
            Power => SelfDirection,
            Security => Stimulation,
            Conformity => Hedonism,
            Tradition => Hedonism,
            Benevolence => Achievement,
            Universalism => Power,
        }
    }
}

impl FromStr for ValueGroup {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ValueGroup::ALL
            .into_iter()
            .find(|g| g.id() == s)
            .ok_or_else(|| ValueError::UnknownGroup(s.to_string()))
    }
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwartzValue {
    pub id: String,
    pub label: String,
    pub group: ValueGroup,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quartile {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Quartile {
    pub const ALL: [Quartile; 4] = [Quartile::Q1, Quartile::Q2, Quartile::Q3, Quartile::Q4];

    pub fn as_str(self) -> &'static str {
        match self {
            Quartile::Q1 => "Q1",
            Quartile::Q2 => "Q2",
            Quartile::Q3 => "Q3",
            Quartile::Q4 => "Q4",
        }
    }
}

impl FromStr for Quartile {
    type Err = ValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Quartile::ALL
            .into_iter()
            .find(|q| q.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| ValueError::UnknownQuartile(s.to_string()))
    }
}

impl fmt::Display for Quartile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConflictScore {
    pub score: f64,
    pub quartile: Quartile,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuartileThresholds {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl QuartileThresholds {
    /// Upper bounds are inclusive: a score equal to `q1` is in Q1.
    pub fn classify(&self, score: f64) -> Quartile {
        if score <= self.q1 {
            Quartile::Q1
        } else if score <= self.q2 {
            Quartile::Q2
        } else if score <= self.q3 {
            Quartile::Q3
        } else {
            Quartile::Q4
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreDistribution {
    /// All pairwise scores, ascending.
    pub scores: Vec<f64>,
    pub thresholds: QuartileThresholds,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValueError {
    #[error("unknown value `{0}`")]
    UnknownValue(String),
    #[error("unknown value group `{0}`")]
    UnknownGroup(String),
    #[error("unknown quartile `{0}`")]
    UnknownQuartile(String),
    #[error("malformed value table: {0}")]
    Malformed(String),
    #[error("value table must contain {VALUE_COUNT} values, found {0}")]
    Count(usize),
    #[error("duplicate value id `{0}`")]
    DuplicateValue(String),
    #[error("value group {0} has no values")]
    EmptyGroup(ValueGroup),
    #[error("value `{0}` has a non-finite coordinate")]
    NonFinite(String),
    #[error("all values share one position")]
    Degenerate,
    #[error("stakeholder `{0}` has more than one value on this requirement")]
    DuplicateStakeholder(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValueFile {
    version: String,
    values: Vec<SchwartzValue>,
}

#[derive(Debug, Clone)]
pub struct ValueSpace {
    version: String,
    values: Vec<SchwartzValue>,
    index: HashMap<String, usize>,
    max_distance: f64,
    distribution: ScoreDistribution,
}

impl ValueSpace {
    /// The embedded coordinate table, loaded once.
    pub fn builtin() -> &'static ValueSpace {
        static SPACE: OnceLock<ValueSpace> = OnceLock::new();
        SPACE.get_or_init(|| ValueSpace::load(BUILTIN).expect("embedded value table is valid"))
    }

    pub fn builtin_text() -> &'static str {
        BUILTIN
    }

    pub fn load(text: &str) -> Result<ValueSpace, ValueError> {
        let file: ValueFile =
            serde_json::from_str(text).map_err(|e| ValueError::Malformed(e.to_string()))?;
        ValueSpace::new(file.version, file.values)
    }

    pub fn new(version: impl Into<String>, values: Vec<SchwartzValue>) -> Result<ValueSpace, ValueError> {
        if values.len() != VALUE_COUNT {
            return Err(ValueError::Count(values.len()));
        }
        let mut index = HashMap::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(ValueError::NonFinite(v.id.clone()));
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(ValueError::DuplicateValue(v.id.clone()));
            }
        }
        let groups: HashSet<ValueGroup> = values.iter().map(|v| v.group).collect();
        if let Some(g) = ValueGroup::ALL.into_iter().find(|g| !groups.contains(g)) {
            return Err(ValueError::EmptyGroup(g));
        }

        let mut distances = Vec::with_capacity(PAIR_COUNT);
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                distances.push(distance(a, b));
            }
        }
        let max_distance = distances.iter().copied().fold(0.0, f64::max);
        if max_distance <= 0.0 {
            return Err(ValueError::Degenerate);
        }

        let mut scores: Vec<f64> = distances.into_iter().map(|d| d / max_distance).collect();
        scores.sort_by(f64::total_cmp);
        let thresholds = QuartileThresholds {
            q1: percentile(&scores, 0.25),
            q2: percentile(&scores, 0.50),
            q3: percentile(&scores, 0.75),
        };
        Ok(ValueSpace {
            version: version.into(),
            values,
            index,
            max_distance,
            distribution: ScoreDistribution { scores, thresholds },
        })
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn values(&self) -> &[SchwartzValue] {
        &self.values
    }

    pub fn get(&self, id: &str) -> Option<&SchwartzValue> {
        self.index.get(id).map(|&i| &self.values[i])
    }

    pub fn value(&self, id: &str) -> Result<&SchwartzValue, ValueError> {
        self.get(id).ok_or_else(|| ValueError::UnknownValue(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn max_distance(&self) -> f64 {
        self.max_distance
    }

    pub fn score_distribution(&self) -> &ScoreDistribution {
        &self.distribution
    }

    pub fn thresholds(&self) -> QuartileThresholds {
        self.distribution.thresholds
    }

    pub fn score_values(&self, a: &SchwartzValue, b: &SchwartzValue) -> ConflictScore {
        let score = distance(a, b) / self.max_distance;
        ConflictScore {
            score,
            quartile: self.distribution.thresholds.classify(score),
        }
    }

    pub fn conflict_score(&self, a: &str, b: &str) -> Result<ConflictScore, ValueError> {
        Ok(self.score_values(self.value(a)?, self.value(b)?))
    }
}

/// Symmetric by construction: both orders square the same magnitudes.
fn distance(a: &SchwartzValue, b: &SchwartzValue) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// Linear interpolation between closest ranks over a sorted slice.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let rank = p * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (rank - lo as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConflictPair {
    pub stakeholder_a: String,
    pub stakeholder_b: String,
    pub value_a: String,
    pub value_b: String,
    pub score: f64,
    pub quartile: Quartile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConflictReport {
    pub pairs: Vec<ConflictPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub average: Option<f64>,
}

/// Pairwise scores between the values assigned to one requirement, given as
/// `(stakeholder, value id)` in assignment order. Pairs follow that order.
pub fn requirement_conflicts<'a, I>(assignments: I, space: &ValueSpace) -> Result<ConflictReport, ValueError>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut resolved: Vec<(&str, &SchwartzValue)> = Vec::new();
    for (stakeholder, value) in assignments {
        if resolved.iter().any(|(s, _)| *s == stakeholder) {
            return Err(ValueError::DuplicateStakeholder(stakeholder.to_string()));
        }
        resolved.push((stakeholder, space.value(value)?));
    }
    let mut pairs = Vec::new();
    for (i, (sa, va)) in resolved.iter().enumerate() {
        for (sb, vb) in &resolved[i + 1..] {
            let s = space.score_values(va, vb);
            pairs.push(ConflictPair {
                stakeholder_a: sa.to_string(),
                stakeholder_b: sb.to_string(),
                value_a: va.id.clone(),
                value_b: vb.id.clone(),
                score: s.score,
                quartile: s.quartile,
            });
        }
    }
    let average = (!pairs.is_empty())
        .then(|| pairs.iter().map(|p| p.score).sum::<f64>() / pairs.len() as f64);
    Ok(ConflictReport { pairs, average })
}
