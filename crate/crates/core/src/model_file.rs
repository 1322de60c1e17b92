//! JSON model files shared by the command-line tools.
//!
//! ```json
//! {
//!   "R": [[0,1]],
//!   "S": [[0,0],[1,1]],
//!   "kind": "model",
//!   "size": 2,
//!   "valuation": {"p0":[1]}
//! }
//! ```
//!
//! Frames carry `R` and `S` as pair lists, spaces carry `opens0` and
//! `opens1` as lists of point lists. Kind `model` is a frame with a
//! mandatory valuation; frames and spaces may carry one optionally. Output
//! is canonical: keys sorted, pairs sorted, opens sorted by size and then
//! lexicographically.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bitopology::BitopSpace;
use crate::error::{Error, Result};
use crate::frames::{VisserFrame, VisserModel};
use crate::relation::Relation;
use crate::subset::Subset;
use crate::topology::FiniteSpace;
use crate::valuation::Valuation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Frame,
    Space,
    Model,
}

/// Field order is alphabetical so serialization is key-sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<(usize, usize)>>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<(usize, usize)>>,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens0: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens1: Option<Vec<Vec<usize>>>,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<usize>>>,
}

/// A validated model file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loaded {
    Frame {
        frame: VisserFrame,
        valuation: Option<Valuation>,
    },
    Space {
        space: BitopSpace,
        valuation: Option<Valuation>,
    },
}

impl Loaded {
    pub fn size(&self) -> usize {
        match self {
            Loaded::Frame { frame, .. } => frame.size(),
            Loaded::Space { space, .. } => space.size(),
        }
    }

    pub fn valuation(&self) -> Option<&Valuation> {
        match self {
            Loaded::Frame { valuation, .. } | Loaded::Space { valuation, .. } => valuation.as_ref(),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::ModelFile(msg.into())
}

fn sorted_opens(t: &FiniteSpace) -> Vec<Vec<usize>> {
    let mut opens: Vec<Vec<usize>> = t.opens().map(Subset::points).collect();
    opens.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    opens
}

fn encode_valuation(v: &Valuation) -> BTreeMap<String, Vec<usize>> {
    v.iter().map(|(i, s)| (format!("p{i}"), s.points())).collect()
}

fn decode_valuation(size: usize, raw: &BTreeMap<String, Vec<usize>>) -> Result<Valuation> {
    let mut v = Valuation::new();
    for (name, points) in raw {
        let index = name
            .strip_prefix('p')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|d| d.parse::<u32>().ok())
            .ok_or_else(|| bad(format!("valuation key '{name}' is not of the form p<index>")))?;
        v.set(index, Subset::from_points(size, points.iter().copied())?);
    }
    Ok(v)
}

impl ModelFile {
    pub fn from_frame(frame: &VisserFrame, valuation: Option<&Valuation>) -> Self {
        ModelFile {
            r: Some(frame.r().pairs()),
            s: Some(frame.s().pairs()),
            kind: Kind::Frame,
            opens0: None,
            opens1: None,
            size: frame.size(),
            valuation: valuation.map(encode_valuation),
        }
    }

    pub fn from_model(model: &VisserModel) -> Self {
        ModelFile {
            kind: Kind::Model,
            ..ModelFile::from_frame(&model.frame, Some(&model.valuation))
        }
    }

    pub fn from_space(space: &BitopSpace, valuation: Option<&Valuation>) -> Self {
        ModelFile {
            r: None,
            s: None,
            kind: Kind::Space,
            opens0: Some(sorted_opens(space.tau0())),
            opens1: Some(sorted_opens(space.tau1())),
            size: space.size(),
            valuation: valuation.map(encode_valuation),
        }
    }

    pub fn from_loaded(loaded: &Loaded) -> Self {
        match loaded {
            Loaded::Frame { frame, valuation } => ModelFile::from_frame(frame, valuation.as_ref()),
            Loaded::Space { space, valuation } => ModelFile::from_space(space, valuation.as_ref()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    /// Canonical JSON: one key per line in sorted order, each value
    /// compact, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("model files always serialize");
        let serde_json::Value::Object(map) = value else {
            unreachable!("a struct serializes to an object")
        };
        let lines: Vec<String> = map
            .iter()
            .map(|(k, v)| format!("  {}: {}", serde_json::Value::from(k.as_str()), v))
            .collect();
        format!("{{\n{}\n}}\n", lines.join(",\n"))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        ModelFile::from_json(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| bad(format!("{}: {e}", path.display())))
    }

    /// Checks every module invariant and builds the frame or space.
    pub fn load(&self) -> Result<Loaded> {
        let valuation = self
            .valuation
            .as_ref()
            .map(|raw| decode_valuation(self.size, raw))
            .transpose()?;
        match self.kind {
            Kind::Frame | Kind::Model => {
                if self.opens0.is_some() || self.opens1.is_some() {
                    return Err(bad("frame files must not contain opens0/opens1"));
                }
                let r = self.r.as_ref().ok_or_else(|| bad("frame file without R"))?;
                let s = self.s.as_ref().ok_or_else(|| bad("frame file without S"))?;
                if self.kind == Kind::Model && valuation.is_none() {
                    return Err(bad("model file without valuation"));
                }
                let frame = VisserFrame::new(
                    Relation::from_pairs(self.size, r.iter().copied())?,
                    Relation::from_pairs(self.size, s.iter().copied())?,
                )?;
                Ok(Loaded::Frame { frame, valuation })
            }
            Kind::Space => {
                if self.r.is_some() || self.s.is_some() {
                    return Err(bad("space files must not contain R/S"));
                }
                let tau = |opens: &Option<Vec<Vec<usize>>>, name: &str| -> Result<FiniteSpace> {
                    let opens = opens.as_ref().ok_or_else(|| bad(format!("space file without {name}")))?;
                    let sets = opens
                        .iter()
                        .map(|u| Subset::from_points(self.size, u.iter().copied()))
                        .collect::<Result<Vec<_>>>()?;
                    FiniteSpace::from_opens(self.size, &sets)
                };
                let space = BitopSpace::new(tau(&self.opens0, "opens0")?, tau(&self.opens1, "opens1")?)?;
                Ok(Loaded::Space { space, valuation })
            }
        }
    }
}

pub fn load_path(path: impl AsRef<Path>) -> Result<Loaded> {
    ModelFile::read(path)?.load()
}
