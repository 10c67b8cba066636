//! JSON file formats.
//!
//! * space: `{"points": ["a", "b"], "matrix": [["0", "1/4"], [1, 0]], "bound": "1"}`
//!   (entries are strings such as `"1/4"` or `"0.25"`, or integers; `bound` optional)
//! * topology: `{"points": [...], "opens": [["b"], ["a", "b"]]}` or
//!   `{"points": [...], "min_nbhd": {"a": ["a", "b"], "b": ["b"]}}`; when both
//!   are given they must agree
//! * group: `{"order": 4, "table": [[0, 1, 2, 3], ...], "subsets": [[...], ...],
//!   "ks": [2, 2], "r": 1}` (`ks` and `r` optional)
//! * embedding: `{"space": <topology>, "subspace": ["a", "b"], "d": <space>,
//!   "subspace_topology": <topology>}` (`subspace_topology` optional, defaults
//!   to the subspace topology)
//! * Abelian word: `{"a": -2, "b": 2}`

use std::collections::BTreeMap;
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extend::EmbeddingInstance;
use crate::qpspace::Qpm;
use crate::quniform::{FiniteGroup, FiniteTopology, GroupSubset};
use crate::rational::{parse_rational, Rational};
use crate::words::label_index;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Entry::Int(n) => Ok(Rational::from_integer((*n).into())),
            Entry::Text(s) => parse_rational(s),
        }
    }
}

impl From<&Rational> for Entry {
    fn from(value: &Rational) -> Entry {
        Entry::Text(value.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub matrix: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<Entry>,
}

impl SpaceFile {
    pub fn to_qpm(&self) -> Result<Qpm> {
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(Entry::to_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let qpm = Qpm::new(self.points.clone(), matrix)?;
        match &self.bound {
            Some(b) => qpm.with_bound(b.to_rational()?),
            None => Ok(qpm),
        }
    }

    pub fn from_qpm(qpm: &Qpm) -> SpaceFile {
        SpaceFile {
            points: qpm.labels().to_vec(),
            matrix: qpm.matrix().iter().map(|row| row.iter().map(Entry::from).collect()).collect(),
            bound: qpm.bound().map(Entry::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_nbhd: Option<BTreeMap<String, Vec<String>>>,
}

fn indices(labels: &[String], names: &[String]) -> Result<Vec<usize>> {
    names.iter().map(|n| label_index(labels, n)).collect()
}

impl TopologyFile {
    pub fn to_topology(&self) -> Result<FiniteTopology> {
        let labels = self.points.clone();
        let from_opens = match &self.opens {
            Some(opens) => {
                let opens = opens.iter().map(|o| indices(&labels, o)).collect::<Result<Vec<_>>>()?;
                Some(FiniteTopology::from_opens(labels.clone(), &opens)?)
            }
            None => None,
        };
        let from_nbhd = match &self.min_nbhd {
            Some(map) => {
                for key in map.keys() {
                    label_index(&labels, key)?;
                }
                let nbhd = labels
                    .iter()
                    .map(|p| {
                        let members = map
                            .get(p)
                            .ok_or_else(|| Error::Parse(format!("min_nbhd has no entry for `{p}`")))?;
                        indices(&labels, members)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(FiniteTopology::from_min_nbhd(labels.clone(), &nbhd)?)
            }
            None => None,
        };
        match (from_opens, from_nbhd) {
            (Some(a), Some(b)) if a != b => Err(Error::InvalidTopology(
                "`opens` and `min_nbhd` describe different topologies".into(),
            )),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(Error::Parse("topology needs `opens` or `min_nbhd`".into())),
        }
    }

    pub fn from_topology(t: &FiniteTopology) -> TopologyFile {
        let labels = t.labels();
        let min_nbhd = (0..t.size())
            .map(|x| {
                let members = t.min_nbhd_points(x).into_iter().map(|y| labels[y].clone()).collect();
                (labels[x].clone(), members)
            })
            .collect();
        TopologyFile {
            points: labels.to_vec(),
            opens: None,
            min_nbhd: Some(min_nbhd),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub subsets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

impl GroupFile {
    pub fn to_group(&self) -> Result<(FiniteGroup, Vec<GroupSubset>)> {
        if self.table.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "{} table rows for order {}",
                self.table.len(),
                self.order
            )));
        }
        let group = FiniteGroup::from_table(self.order, self.table.concat())?;
        let chain = self
            .subsets
            .iter()
            .map(|s| GroupSubset::from_elements(self.order, s))
            .collect::<Result<Vec<_>>>()?;
        Ok((group, chain))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    pub space: TopologyFile,
    pub subspace: Vec<String>,
    pub d: SpaceFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace_topology: Option<TopologyFile>,
}

impl EmbeddingFile {
    pub fn to_instance(&self) -> Result<EmbeddingInstance> {
        let y = self.space.to_topology()?;
        let subset = indices(y.labels(), &self.subspace)?;
        let d = self.d.to_qpm()?;
        if d.labels() != self.subspace.as_slice() {
            return Err(Error::Parse("`d.points` must list the subspace labels in order".into()));
        }
        match &self.subspace_topology {
            Some(t) => {
                let x = t.to_topology()?;
                if x.labels() != self.subspace.as_slice() {
                    return Err(Error::Parse(
                        "`subspace_topology.points` must list the subspace labels in order".into(),
                    ));
                }
                EmbeddingInstance::with_topology(y, subset, x, d)
            }
            None => EmbeddingInstance::new(y, subset, d),
        }
    }
}

/// A space file, or its `space` field inside another file.
pub fn parse_space(text: &str) -> Result<Qpm> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let inner = value.get("space").filter(|s| s.get("matrix").is_some()).cloned().unwrap_or(value);
    let file: SpaceFile = serde_json::from_value(inner)?;
    file.to_qpm()
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

pub fn read_space(path: &Path) -> Result<Qpm> {
    parse_space(&read_text(path)?)
}
