//! Versioned JSON documents: `sset.v1`, `fincat.v1`, `fin2cat.v1`,
//! `pres.v1`, maps, lifting problems and localizer universes.
//!
//! Output is canonical: object keys sorted, list fields sorted wherever
//! their order carries no meaning, no insignificant whitespace.

mod cat;
mod sset;
mod universe;

use serde::de::DeserializeOwned;
use serde::Serialize;

pub use cat::{
    fin2cat_doc, fincat_doc, functor_doc, parse_fin2cat, parse_fincat, parse_functor, parse_two_functor, two_functor_doc, ArrowDoc,
    Fin2CatDoc, FinCatDoc, FunctorDoc, HomDoc, TwoFunctorDoc,
};
pub use sset::{
    lift_doc, map_from_triples, parse_lift, parse_map, parse_span, parse_sset, smap_doc, span_doc, sset_doc, LiftDoc, SmapDoc, SpanDoc,
    SsetDoc,
};
pub use universe::{load_universe, marked_ids, EdgeDoc, LoadedUniverse, MarkedDoc, NodeDoc, TriangleDoc, UniverseDoc};

use crate::error::{Error, Result};

/// Parses a document, reporting the path of the offending key.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." || path.is_empty() {
            Error::Malformed(format!("{inner}"))
        } else {
            Error::Malformed(format!("at `{path}`: {inner}"))
        }
    })?;
    de.end().map_err(|e| Error::Malformed(format!("trailing data: {e}")))?;
    Ok(value)
}

/// Canonical compact JSON.
pub fn to_json<T: Serialize>(value: &T) -> String {
    // routing through `Value` sorts every object's keys
    let v = serde_json::to_value(value).expect("documents serialize");
    serde_json::to_string(&v).expect("values serialize")
}
