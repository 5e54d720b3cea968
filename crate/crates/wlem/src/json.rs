//! JSON interchange formats.
//!
//! Frames: `{"worlds": n, "cover": [[i, j], ...], "root": r}` — cover pairs
//! mean `i R j` and are closed reflexively and transitively on load; the
//! loader rejects cycles and unrooted orders. The `worlds` field may instead
//! be a list of distinct names, in which case cover pairs, the root, and all
//! emitted world references use names.
//!
//! Models add `"valuation": {"p1": [worlds...], ...}` with upward-closed
//! values. Countermodels bundle a frame, a valuation, the failing world and
//! the printed formula. Algebras are
//! `{"elements": m, "leq": [[i, j], ...], "bottom": b, "top": t}` with the
//! order closed on load and validated as a distributive residuated lattice.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::brouwer::BrouwerAlgebra;
use crate::error::{Error, Result};
use crate::formula;
use crate::kripke::{Countermodel, Frame, Model};
use crate::poset::iter_bits;
use crate::sperner::Antichain;

/// World count, or one name per world.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum WorldsSpec {
    Count(usize),
    Names(Vec<String>),
}

/// A reference to a world: positional index or declared name.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum WorldRef {
    Index(usize),
    Name(String),
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FrameDoc {
    pub worlds: WorldsSpec,
    pub cover: Vec<(WorldRef, WorldRef)>,
    pub root: WorldRef,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ModelDoc {
    pub worlds: WorldsSpec,
    pub cover: Vec<(WorldRef, WorldRef)>,
    pub root: WorldRef,
    pub valuation: BTreeMap<String, Vec<WorldRef>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CountermodelDoc {
    pub frame: FrameDoc,
    pub valuation: BTreeMap<String, Vec<WorldRef>>,
    pub world: WorldRef,
    pub formula: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AlgebraDoc {
    pub elements: usize,
    pub leq: Vec<(usize, usize)>,
    pub bottom: usize,
    pub top: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AntichainDoc {
    pub n: usize,
    pub family: Vec<Vec<usize>>,
}

/// A frame plus the optional world names it was declared with, so that
/// outputs can speak the caller's language.
#[derive(Debug, Clone)]
pub struct NamedFrame {
    pub frame: Frame,
    pub names: Option<Vec<String>>,
}

struct WorldTable {
    size: usize,
    names: Option<Vec<String>>,
}

impl WorldTable {
    fn new(spec: &WorldsSpec) -> Result<WorldTable> {
        match spec {
            WorldsSpec::Count(n) => Ok(WorldTable {
                size: *n,
                names: None,
            }),
            WorldsSpec::Names(names) => {
                for (i, a) in names.iter().enumerate() {
                    if names[..i].contains(a) {
                        return Err(Error::InvalidInput(format!("duplicate world name {a:?}")));
                    }
                }
                Ok(WorldTable {
                    size: names.len(),
                    names: Some(names.clone()),
                })
            }
        }
    }

    fn resolve(&self, r: &WorldRef) -> Result<usize> {
        match r {
            WorldRef::Index(i) => {
                if *i < self.size {
                    Ok(*i)
                } else {
                    Err(Error::WorldOutOfRange {
                        world: *i,
                        size: self.size,
                    })
                }
            }
            WorldRef::Name(name) => match &self.names {
                Some(names) => names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown world {name:?}"))),
                None => Err(Error::InvalidInput(format!(
                    "world {name:?} referenced but the frame declares no names"
                ))),
            },
        }
    }

    fn render(&self, index: usize) -> WorldRef {
        match &self.names {
            Some(names) => WorldRef::Name(names[index].clone()),
            None => WorldRef::Index(index),
        }
    }
}

fn valuation_from_doc(
    table: &WorldTable,
    doc: &BTreeMap<String, Vec<WorldRef>>,
) -> Result<BTreeMap<u32, u64>> {
    let mut out = BTreeMap::new();
    for (key, worlds) in doc {
        let index = variable_index(key)?;
        let mut mask = 0u64;
        for w in worlds {
            mask |= 1 << table.resolve(w)?;
        }
        out.insert(index, mask);
    }
    Ok(out)
}

fn valuation_to_doc(
    table: &WorldTable,
    valuation: &BTreeMap<u32, u64>,
) -> BTreeMap<String, Vec<WorldRef>> {
    valuation
        .iter()
        .map(|(&var, &mask)| {
            let worlds = iter_bits(mask).map(|w| table.render(w)).collect();
            (format!("p{var}"), worlds)
        })
        .collect()
}

fn variable_index(key: &str) -> Result<u32> {
    let digits = key.strip_prefix('p').unwrap_or("");
    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
        if let Ok(n) = digits.parse::<u32>() {
            if n >= 1 {
                return Ok(n);
            }
        }
    }
    Err(Error::InvalidInput(format!(
        "valuation keys must look like \"p1\"; got {key:?}"
    )))
}

fn frame_from_doc(doc: &FrameDoc) -> Result<NamedFrame> {
    let table = WorldTable::new(&doc.worlds)?;
    let mut pairs = Vec::with_capacity(doc.cover.len());
    for (a, b) in &doc.cover {
        pairs.push((table.resolve(a)?, table.resolve(b)?));
    }
    let root = table.resolve(&doc.root)?;
    let frame = Frame::from_cover(table.size, &pairs, root)?;
    Ok(NamedFrame {
        frame,
        names: table.names,
    })
}

fn frame_to_doc(frame: &Frame, names: Option<&[String]>) -> FrameDoc {
    let table = WorldTable {
        size: frame.size(),
        names: names.map(|n| n.to_vec()),
    };
    FrameDoc {
        worlds: match names {
            Some(n) => WorldsSpec::Names(n.to_vec()),
            None => WorldsSpec::Count(frame.size()),
        },
        cover: frame
            .poset()
            .covers()
            .into_iter()
            .map(|(a, b)| (table.render(a), table.render(b)))
            .collect(),
        root: table.render(frame.root()),
    }
}

pub fn parse_frame(text: &str) -> Result<NamedFrame> {
    let doc: FrameDoc = serde_json::from_str(text)?;
    frame_from_doc(&doc)
}

pub fn frame_to_json(frame: &Frame, names: Option<&[String]>) -> String {
    serde_json::to_string(&frame_to_doc(frame, names)).expect("frame docs serialize")
}

pub fn parse_model(text: &str) -> Result<(Model, Option<Vec<String>>)> {
    let doc: ModelDoc = serde_json::from_str(text)?;
    let named = frame_from_doc(&FrameDoc {
        worlds: doc.worlds.clone(),
        cover: doc.cover.clone(),
        root: doc.root.clone(),
    })?;
    let table = WorldTable {
        size: named.frame.size(),
        names: named.names.clone(),
    };
    let valuation = valuation_from_doc(&table, &doc.valuation)?;
    Ok((Model::new(named.frame, valuation)?, named.names))
}

pub fn model_to_json(model: &Model, names: Option<&[String]>) -> String {
    let frame_doc = frame_to_doc(model.frame(), names);
    let table = WorldTable {
        size: model.frame().size(),
        names: names.map(|n| n.to_vec()),
    };
    let doc = ModelDoc {
        worlds: frame_doc.worlds,
        cover: frame_doc.cover,
        root: frame_doc.root,
        valuation: valuation_to_doc(&table, model.valuation()),
    };
    serde_json::to_string(&doc).expect("model docs serialize")
}

pub fn parse_countermodel(text: &str) -> Result<(Countermodel, Option<Vec<String>>)> {
    let doc: CountermodelDoc = serde_json::from_str(text)?;
    countermodel_from_doc(&doc)
}

pub fn countermodel_from_doc(doc: &CountermodelDoc) -> Result<(Countermodel, Option<Vec<String>>)> {
    let named = frame_from_doc(&doc.frame)?;
    let table = WorldTable {
        size: named.frame.size(),
        names: named.names.clone(),
    };
    let valuation = valuation_from_doc(&table, &doc.valuation)?;
    let model = Model::new(named.frame, valuation)?;
    let world = table.resolve(&doc.world)?;
    let formula = formula::parse(&doc.formula)?;
    Ok((Countermodel::new(model, world, formula)?, named.names))
}

pub fn countermodel_to_doc(cm: &Countermodel, names: Option<&[String]>) -> CountermodelDoc {
    let model = cm.model();
    let table = WorldTable {
        size: model.frame().size(),
        names: names.map(|n| n.to_vec()),
    };
    CountermodelDoc {
        frame: frame_to_doc(model.frame(), names),
        valuation: valuation_to_doc(&table, model.valuation()),
        world: table.render(cm.world()),
        formula: cm.formula().to_string(),
    }
}

pub fn countermodel_to_json(cm: &Countermodel, names: Option<&[String]>) -> String {
    serde_json::to_string(&countermodel_to_doc(cm, names)).expect("countermodel docs serialize")
}

pub fn parse_algebra(text: &str) -> Result<BrouwerAlgebra> {
    let doc: AlgebraDoc = serde_json::from_str(text)?;
    BrouwerAlgebra::from_pairs(doc.elements, &doc.leq, doc.bottom, doc.top)
}

pub fn algebra_to_json(alg: &BrouwerAlgebra) -> String {
    let doc = AlgebraDoc {
        elements: alg.size(),
        leq: alg.order().covers(),
        bottom: alg.bottom(),
        top: alg.top(),
    };
    serde_json::to_string(&doc).expect("algebra docs serialize")
}

pub fn antichain_to_json(antichain: &Antichain) -> String {
    let doc = AntichainDoc {
        n: antichain.ground_size(),
        family: antichain.element_lists(),
    };
    serde_json::to_string(&doc).expect("antichain docs serialize")
}
