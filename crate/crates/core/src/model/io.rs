//! The JSON model/frame file format.
//!
//! ```json
//! {"states": ["s","t"],
//!  "neighborhoods": {"s": [["t"],["s","t"]], "t": []},
//!  "valuation": {"p": ["s"]}}
//! ```
//!
//! A frame file is the same without `"valuation"`. Export is canonical:
//! neighborhoods and valuation keyed in sorted order, each set listed in
//! state order, sets within a neighborhood in bitmask order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Frame, Model, ModelError, StateSet};

/// Raw file contents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub states: Vec<String>,
    pub neighborhoods: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

/// A loaded file: either a bare frame or a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Frame(Frame),
    Model(Model),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let raw: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        raw.build()
    }

    /// The model, with an empty valuation for frames.
    pub fn model(&self) -> Model {
        match self {
            Document::Frame(f) => Model::bare(f.clone()),
            Document::Model(m) => m.clone(),
        }
    }

    pub fn frame(&self) -> &Frame {
        match self {
            Document::Frame(f) => f,
            Document::Model(m) => m.frame(),
        }
    }

    pub fn is_frame(&self) -> bool {
        matches!(self, Document::Frame(_))
    }

    pub fn to_json(&self) -> String {
        match self {
            Document::Frame(f) => f.to_json(),
            Document::Model(m) => m.to_json(),
        }
    }
}

fn lookup_set(frame_labels: &[String], names: &[String]) -> Result<StateSet, ModelError> {
    let mut x = StateSet::EMPTY;
    for name in names {
        let i = frame_labels.iter().position(|l| l == name).ok_or_else(|| ModelError::UnknownState(name.clone()))?;
        x = x.with(i);
    }
    Ok(x)
}

fn names(x: StateSet, labels: &[String]) -> Vec<String> {
    x.iter().map(|i| labels[i].clone()).collect()
}

impl ModelFile {
    pub fn build(&self) -> Result<Document, ModelError> {
        let labels = &self.states;
        for key in self.neighborhoods.keys() {
            if !labels.contains(key) {
                return Err(ModelError::UnknownState(key.clone()));
            }
        }
        let mut nbhd = Vec::with_capacity(labels.len());
        for l in labels {
            let sets = self.neighborhoods.get(l).ok_or_else(|| ModelError::MissingNeighborhood(l.clone()))?;
            nbhd.push(sets.iter().map(|s| lookup_set(labels, s)).collect::<Result<Vec<_>, _>>()?);
        }
        let frame = Frame::new(labels.clone(), nbhd)?;
        match &self.valuation {
            None => Ok(Document::Frame(frame)),
            Some(v) => {
                let mut val = BTreeMap::new();
                for (atom, states) in v {
                    val.insert(atom.clone(), lookup_set(labels, states)?);
                }
                Ok(Document::Model(Model::new(frame, val)?))
            }
        }
    }

    pub fn from_frame(frame: &Frame) -> Self {
        let labels = frame.labels();
        let neighborhoods = (0..frame.size())
            .map(|s| {
                let sets = frame.neighborhood(s).iter().map(|x| names(x, labels)).collect();
                (labels[s].clone(), sets)
            })
            .collect();
        ModelFile { states: labels.to_vec(), neighborhoods, valuation: None }
    }

    pub fn from_model(model: &Model) -> Self {
        let mut f = ModelFile::from_frame(model.frame());
        let labels = model.frame().labels();
        f.valuation = Some(model.valuation().iter().map(|(a, x)| (a.clone(), names(*x, labels))).collect());
        f
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model files always serialize");
        s.push('\n');
        s
    }
}

impl Frame {
    pub fn to_json(&self) -> String {
        ModelFile::from_frame(self).to_json()
    }

    /// Loads a frame; a valuation, if present, is dropped.
    pub fn from_json(text: &str) -> Result<Frame, ModelError> {
        Ok(Document::parse(text)?.frame().clone())
    }
}

impl Model {
    pub fn to_json(&self) -> String {
        ModelFile::from_model(self).to_json()
    }

    /// Loads a model; a frame file yields the empty valuation.
    pub fn from_json(text: &str) -> Result<Model, ModelError> {
        Ok(Document::parse(text)?.model())
    }
}
