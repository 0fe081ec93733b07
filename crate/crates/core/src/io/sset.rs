use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lifting::LiftingProblem;
use crate::simplicial::{SimplicialMap, SimplicialSet};

/// `sset.v1`: cells by level, then face and degeneracy entries
/// `[n, i, src, dst]` meaning `dᵢ(src) = dst` on level `n` (resp. `sᵢ`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SsetDoc {
    pub dim_bound: usize,
    pub cells: BTreeMap<String, Vec<String>>,
    pub face: Vec<(usize, usize, String, String)>,
    pub degeneracy: Vec<(usize, usize, String, String)>,
}

pub fn sset_doc(x: &SimplicialSet) -> SsetDoc {
    let d = x.dim_bound();
    let cells = (0..=d)
        .map(|n| {
            let mut ids = x.ids(n).to_vec();
            ids.sort();
            (n.to_string(), ids)
        })
        .collect();
    let mut face = Vec::new();
    let mut degeneracy = Vec::new();
    for n in 0..=d {
        for c in 0..x.level_size(n) {
            for i in 0..=n {
                if n >= 1 {
                    face.push((n, i, x.id(n, c).to_string(), x.id(n - 1, x.face(n, i, c)).to_string()));
                }
                if n < d {
                    degeneracy.push((n, i, x.id(n, c).to_string(), x.id(n + 1, x.degeneracy(n, i, c)).to_string()));
                }
            }
        }
    }
    face.sort();
    degeneracy.sort();
    SsetDoc { dim_bound: d, cells, face, degeneracy }
}

pub fn parse_sset(doc: &SsetDoc) -> Result<SimplicialSet> {
    let d = doc.dim_bound;
    let mut ids = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let level = doc.cells.get(&n.to_string()).ok_or_else(|| Error::Malformed(format!("at `cells.{n}`: missing level")))?;
        ids.push(level.clone());
    }
    if let Some(extra) = doc.cells.keys().find(|k| k.parse::<usize>().map_or(true, |n| n > d)) {
        return Err(Error::Malformed(format!("at `cells.{extra}`: level outside 0..={d}")));
    }
    let index: Vec<HashMap<&str, usize>> = ids.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()).collect();
    for (n, level) in index.iter().enumerate() {
        if level.len() != ids[n].len() {
            return Err(Error::Malformed(format!("at `cells.{n}`: duplicate cell id")));
        }
    }
    let fill = |entries: &[(usize, usize, String, String)], what: &str, levels: std::ops::Range<usize>, shift: isize| -> Result<Vec<Vec<Vec<usize>>>> {
        let mut table: Vec<Vec<Vec<usize>>> = (0..=d)
            .map(|n| if levels.contains(&n) { vec![vec![usize::MAX; ids[n].len()]; n + 1] } else { Vec::new() })
            .collect();
        for (k, (n, i, src, dst)) in entries.iter().enumerate() {
            let at = || format!("at `{what}[{k}]`");
            if !levels.contains(n) || *i > *n {
                return Err(Error::Malformed(format!("{}: no operator {what} {i} on level {n}", at())));
            }
            let m = (*n as isize + shift) as usize;
            let s = *index[*n].get(src.as_str()).ok_or_else(|| Error::UnknownId { id: src.clone(), context: at() })?;
            let t = *index[m].get(dst.as_str()).ok_or_else(|| Error::UnknownId { id: dst.clone(), context: at() })?;
            let slot = &mut table[*n][*i][s];
            if *slot != usize::MAX && *slot != t {
                return Err(Error::Malformed(format!("{}: conflicting entry", at())));
            }
            *slot = t;
        }
        for (n, rows) in table.iter().enumerate() {
            for (i, row) in rows.iter().enumerate() {
                if let Some(c) = row.iter().position(|&v| v == usize::MAX) {
                    return Err(Error::Malformed(format!("at `{what}`: missing {what} {i} of `{}`", ids[n][c])));
                }
            }
        }
        Ok(table)
    };
    let face = fill(&doc.face, "face", 1..d + 1, -1)?;
    let degeneracy = fill(&doc.degeneracy, "degeneracy", 0..d, 1)?;
    SimplicialSet::from_tables(d, ids, face, degeneracy)
}

/// A simplicial map with its endpoints; `map` lists `[n, src, dst]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmapDoc {
    pub source: SsetDoc,
    pub target: SsetDoc,
    pub map: Vec<(usize, String, String)>,
}

pub fn smap_doc(f: &SimplicialMap) -> SmapDoc {
    SmapDoc { source: sset_doc(f.source()), target: sset_doc(f.target()), map: triples(f) }
}

pub fn parse_map(doc: &SmapDoc) -> Result<SimplicialMap> {
    let x = Arc::new(parse_sset(&doc.source)?);
    let y = Arc::new(parse_sset(&doc.target)?);
    map_from_triples(x, y, &doc.map, "map")
}

/// A map between parsed sets from `[n, src, dst]` rows.
pub fn map_from_triples(x: Arc<SimplicialSet>, y: Arc<SimplicialSet>, rows: &[(usize, String, String)], what: &str) -> Result<SimplicialMap> {
    let bound = x.dim_bound().min(y.dim_bound());
    let mut levels: Vec<Vec<usize>> = (0..=bound).map(|n| vec![usize::MAX; x.level_size(n)]).collect();
    for (k, (n, a, b)) in rows.iter().enumerate() {
        let at = || format!("at `{what}[{k}]`");
        if *n > bound {
            return Err(Error::Malformed(format!("{}: level {n} above the bound {bound}", at())));
        }
        let s = x.index_of(*n, a).ok_or_else(|| Error::UnknownId { id: a.clone(), context: at() })?;
        let t = y.index_of(*n, b).ok_or_else(|| Error::UnknownId { id: b.clone(), context: at() })?;
        levels[*n][s] = t;
    }
    for (n, l) in levels.iter().enumerate() {
        if let Some(c) = l.iter().position(|&v| v == usize::MAX) {
            return Err(Error::Malformed(format!("at `{what}`: no image for `{}` on level {n}", x.id(n, c))));
        }
    }
    SimplicialMap::new(x, y, levels)
}

fn triples(f: &SimplicialMap) -> Vec<(usize, String, String)> {
    let mut t = f.id_triples();
    t.sort();
    t
}

/// A lifting square `u: A → X`, `i: A → B`, `p: X → Y`, `v: B → Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftDoc {
    pub a: SsetDoc,
    pub b: SsetDoc,
    pub x: SsetDoc,
    pub y: SsetDoc,
    pub i: Vec<(usize, String, String)>,
    pub p: Vec<(usize, String, String)>,
    pub u: Vec<(usize, String, String)>,
    pub v: Vec<(usize, String, String)>,
}

pub fn lift_doc(sq: &LiftingProblem<SimplicialMap>) -> LiftDoc {
    LiftDoc {
        a: sset_doc(sq.i.source()),
        b: sset_doc(sq.i.target()),
        x: sset_doc(sq.p.source()),
        y: sset_doc(sq.p.target()),
        i: triples(&sq.i),
        p: triples(&sq.p),
        u: triples(&sq.u),
        v: triples(&sq.v),
    }
}

pub fn parse_lift(doc: &LiftDoc) -> Result<LiftingProblem<SimplicialMap>> {
    let [a, b, x, y] = [&doc.a, &doc.b, &doc.x, &doc.y].map(|d| parse_sset(d).map(Arc::new));
    let (a, b, x, y) = (a?, b?, x?, y?);
    let i = map_from_triples(a.clone(), b.clone(), &doc.i, "i")?;
    let p = map_from_triples(x.clone(), y.clone(), &doc.p, "p")?;
    let u = map_from_triples(a, x, &doc.u, "u")?;
    let v = map_from_triples(b, y, &doc.v, "v")?;
    LiftingProblem::new(i, p, u, v)
}

/// A span `X ←f– A –g→ Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanDoc {
    pub a: SsetDoc,
    pub x: SsetDoc,
    pub y: SsetDoc,
    pub f: Vec<(usize, String, String)>,
    pub g: Vec<(usize, String, String)>,
}

pub fn span_doc(f: &SimplicialMap, g: &SimplicialMap) -> SpanDoc {
    SpanDoc { a: sset_doc(f.source()), x: sset_doc(f.target()), y: sset_doc(g.target()), f: triples(f), g: triples(g) }
}

pub fn parse_span(doc: &SpanDoc) -> Result<(SimplicialMap, SimplicialMap)> {
    let a = Arc::new(parse_sset(&doc.a)?);
    let f = map_from_triples(a.clone(), Arc::new(parse_sset(&doc.x)?), &doc.f, "f")?;
    let g = map_from_triples(a, Arc::new(parse_sset(&doc.y)?), &doc.g, "g")?;
    Ok((f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{from_json, to_json};
    use crate::simplicial::standard::{boundary, simplex};

    #[test]
    fn round_trip() {
        for x in [simplex(2, 3).unwrap(), boundary(3, 3).unwrap(), SimplicialSet::empty(2)] {
            let doc = sset_doc(&x);
            let text = to_json(&doc);
            let back: SsetDoc = from_json(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(parse_sset(&back).unwrap(), x);
        }
    }

    #[test]
    fn missing_key_is_named() {
        let err = from_json::<SsetDoc>(r#"{"dim_bound": 0, "cells": {"0": ["v"]}, "face": []}"#).unwrap_err();
        assert!(err.to_string().contains("degeneracy"), "{err}");
        let err = from_json::<SsetDoc>(r#"{"dim_bound": 0, "cells": {"0": ["v"]}, "face": [], "degeneracy": [], "extra": 1}"#).unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
        let err = from_json::<SsetDoc>(r#"{"dim_bound": "x", "cells": {}, "face": [], "degeneracy": []}"#).unwrap_err();
        assert!(err.to_string().contains("dim_bound"), "{err}");
    }

    #[test]
    fn lift_and_span_round_trip() {
        let d1 = Arc::new(simplex(1, 2).unwrap());
        let d0 = Arc::new(simplex(0, 2).unwrap());
        let b1 = Arc::new(boundary(1, 2).unwrap());
        let i = SimplicialMap::inclusion(b1.clone(), d1.clone()).unwrap();
        let p = SimplicialMap::to_point(d1.clone(), d0.clone()).unwrap();
        let u = i.clone();
        let v = SimplicialMap::identity(d1.clone()).then(&SimplicialMap::to_point(d1.clone(), d0.clone()).unwrap()).unwrap();
        let sq = LiftingProblem::new(i.clone(), p, u, v).unwrap();
        let back = parse_lift(&from_json(&to_json(&lift_doc(&sq))).unwrap()).unwrap();
        assert_eq!(back.i, sq.i);
        assert_eq!(back.v, sq.v);
        let (f, g) = parse_span(&from_json(&to_json(&span_doc(&i, &i))).unwrap()).unwrap();
        assert_eq!((f.clone(), g), (i.clone(), i));
    }

    #[test]
    fn unknown_cell_in_face_table() {
        let mut doc = sset_doc(&simplex(1, 1).unwrap());
        doc.face[0].3 = "nowhere".into();
        assert!(matches!(parse_sset(&doc), Err(Error::UnknownId { .. })));
    }
}
