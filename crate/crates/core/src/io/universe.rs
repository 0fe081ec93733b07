use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::cat::{functor_from_tables, parse_fin2cat, parse_fincat, two_functor_from_tables, CellRow};
use super::{Fin2CatDoc, FinCatDoc};
use crate::category::CatFunctor;
use crate::error::{Error, Result};
use crate::localizer::{DiagramUniverse, MarkedClass};
use crate::twocat::TwoFunctor;

/// A node: `category` is a `fincat.v1` document at level 1 and a
/// `fin2cat.v1` document at level 2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub category: Value,
}

/// An edge between nodes, given by its tables. Level 1 uses `objects` and
/// `arrows`; level 2 uses `objects`, `one_cells` and `two_cells`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
    #[serde(default)]
    pub one_cells: Vec<CellRow>,
    #[serde(default)]
    pub two_cells: Vec<CellRow>,
}

/// A commuting triangle `q ∘ u = p`, by edge id; its slices are computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleDoc {
    pub u: String,
    pub p: String,
    pub q: String,
}

/// Universe document. With `collapses` every node gets its edge to the
/// terminal node; with `composites` all binary composites of the listed
/// edges are added before slices are taken.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseDoc {
    pub level: u8,
    pub nodes: Vec<NodeDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub terminal: Option<String>,
    #[serde(default)]
    pub triangles: Vec<TriangleDoc>,
    #[serde(default)]
    pub collapses: bool,
    #[serde(default)]
    pub composites: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedDoc {
    pub marked: Vec<String>,
}

pub enum LoadedUniverse {
    One(DiagramUniverse<CatFunctor>),
    Two(DiagramUniverse<TwoFunctor>),
}

fn embedded<T: serde::de::DeserializeOwned>(v: &Value, at: &str) -> Result<T> {
    super::from_json(&v.to_string()).map_err(|e| Error::Malformed(format!("at `{at}`: {e}")))
}

fn build<M: crate::localizer::Ambient>(
    doc: &UniverseDoc,
    parse_node: impl Fn(&Value, &str) -> Result<M::Object>,
    parse_edge: impl Fn(&EdgeDoc, Arc<M::Object>, Arc<M::Object>) -> Result<M>,
) -> Result<DiagramUniverse<M>> {
    let mut u = DiagramUniverse::new();
    let mut values: BTreeMap<&str, Arc<M::Object>> = BTreeMap::new();
    for (k, n) in doc.nodes.iter().enumerate() {
        let at = format!("nodes[{k}].category");
        let value = Arc::new(parse_node(&n.category, &at)?);
        if values.insert(&n.id, value.clone()).is_some() {
            return Err(Error::Malformed(format!("at `nodes[{k}]`: duplicate node `{}`", n.id)));
        }
        if doc.terminal.as_deref() == Some(n.id.as_str()) {
            u.set_terminal(&n.id, value)?;
        } else {
            u.add_node(&n.id, value)?;
        }
    }
    if let Some(t) = &doc.terminal {
        if !values.contains_key(t.as_str()) {
            return Err(Error::UnknownId { id: t.clone(), context: "at `terminal`".into() });
        }
    }
    for (k, e) in doc.edges.iter().enumerate() {
        let at = format!("at `edges[{k}]`");
        let node = |id: &String| values.get(id.as_str()).cloned().ok_or_else(|| Error::UnknownId { id: id.clone(), context: at.clone() });
        let map = parse_edge(e, node(&e.src)?, node(&e.dst)?).map_err(|err| Error::Malformed(format!("{at}: {err}")))?;
        u.add_edge(&e.id, map)?;
    }
    if doc.collapses {
        u.add_collapses()?;
    }
    if doc.composites {
        u.add_composites()?;
    }
    for (k, t) in doc.triangles.iter().enumerate() {
        let at = format!("at `triangles[{k}]`");
        let edge = |id: &String| u.edge_index(id).ok_or_else(|| Error::UnknownId { id: id.clone(), context: at.clone() });
        let (eu, ep, eq) = (edge(&t.u)?, edge(&t.p)?, edge(&t.q)?);
        u.add_slice_triangle(eu, ep, eq)?;
    }
    Ok(u)
}

pub fn load_universe(doc: &UniverseDoc) -> Result<LoadedUniverse> {
    match doc.level {
        1 => Ok(LoadedUniverse::One(build(
            doc,
            |v, at| parse_fincat(&embedded::<FinCatDoc>(v, at)?),
            |e, s, t| functor_from_tables(s, t, &e.objects, &e.arrows),
        )?)),
        2 => Ok(LoadedUniverse::Two(build(
            doc,
            |v, at| parse_fin2cat(&embedded::<Fin2CatDoc>(v, at)?),
            |e, s, t| two_functor_from_tables(s, t, &e.objects, &e.one_cells, &e.two_cells),
        )?)),
        l => Err(Error::Parameter(format!("universe level must be 1 or 2, got {l}"))),
    }
}

/// Edge indices of a marked document.
pub fn marked_ids<M: crate::localizer::Ambient>(u: &DiagramUniverse<M>, doc: &MarkedDoc) -> Result<MarkedClass> {
    doc.marked
        .iter()
        .enumerate()
        .map(|(k, id)| u.edge_index(id).ok_or_else(|| Error::UnknownId { id: id.clone(), context: format!("at `marked[{k}]`") }))
        .collect()
}
