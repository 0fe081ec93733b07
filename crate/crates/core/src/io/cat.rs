use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{CatFunctor, FinCat};
use crate::error::{Error, Result};
use crate::twocat::{Fin2Cat, TwoFunctor};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// `fincat.v1`. `compose` rows are `[g, f, g∘f]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinCatDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub compose: Vec<(String, String, String)>,
    pub identity: BTreeMap<String, String>,
}

pub fn fincat_doc(c: &FinCat) -> FinCatDoc {
    let mut objects = c.objects().to_vec();
    objects.sort();
    let mut arrows: Vec<ArrowDoc> = (0..c.arrow_count())
        .map(|f| ArrowDoc { id: c.arrow_id(f).into(), src: c.object_id(c.src(f)).into(), dst: c.object_id(c.dst(f)).into() })
        .collect();
    arrows.sort();
    let mut compose: Vec<(String, String, String)> = c
        .composition_triples()
        .into_iter()
        .map(|(g, f, gf)| (c.arrow_id(g).into(), c.arrow_id(f).into(), c.arrow_id(gf).into()))
        .collect();
    compose.sort();
    let identity = (0..c.object_count()).map(|a| (c.object_id(a).into(), c.arrow_id(c.identity(a)).into())).collect();
    FinCatDoc { objects, arrows, compose, identity }
}

pub fn parse_fincat(doc: &FinCatDoc) -> Result<FinCat> {
    let c = FinCat::from_parts(
        doc.objects.clone(),
        doc.arrows.iter().map(|a| (a.id.clone(), a.src.clone(), a.dst.clone())).collect(),
        doc.identity.iter().map(|(o, f)| (o.clone(), f.clone())).collect(),
        doc.compose.clone(),
    )?;
    c.check_laws()?;
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub src: String,
    pub dst: String,
    pub category: FinCatDoc,
}

/// `fin2cat.v1`. Homs not listed are empty. Rows of `hcompose1` are
/// `[a, b, c, f, g, g∘f]`, rows of `hcompose2` are `[a, b, c, α, β, β∗α]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fin2CatDoc {
    pub objects: Vec<String>,
    pub homs: Vec<HomDoc>,
    pub units: BTreeMap<String, String>,
    pub hcompose1: Vec<(String, String, String, String, String, String)>,
    pub hcompose2: Vec<(String, String, String, String, String, String)>,
}

pub fn fin2cat_doc(c: &Fin2Cat) -> Fin2CatDoc {
    let n = c.object_count();
    let o = |a: usize| c.object_id(a).to_string();
    let mut objects = c.objects().to_vec();
    objects.sort();
    let mut homs = Vec::new();
    let mut hcompose1 = Vec::new();
    let mut hcompose2 = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let h = c.hom(a, b);
            if h.object_count() > 0 {
                homs.push(HomDoc { src: o(a), dst: o(b), category: fincat_doc(h) });
            }
            for k in 0..n {
                let (hb, hc) = (c.hom(b, k), c.hom(a, k));
                for f in 0..h.object_count() {
                    for g in 0..hb.object_count() {
                        let r = c.hcomp1(a, b, k, f, g);
                        hcompose1.push((o(a), o(b), o(k), h.object_id(f).into(), hb.object_id(g).into(), hc.object_id(r).into()));
                    }
                }
                for al in 0..h.arrow_count() {
                    for be in 0..hb.arrow_count() {
                        let r = c.hcomp2(a, b, k, al, be);
                        hcompose2.push((o(a), o(b), o(k), h.arrow_id(al).into(), hb.arrow_id(be).into(), hc.arrow_id(r).into()));
                    }
                }
            }
        }
    }
    homs.sort_by(|x, y| (&x.src, &x.dst).cmp(&(&y.src, &y.dst)));
    hcompose1.sort();
    hcompose2.sort();
    let units = (0..n).map(|a| (o(a), c.hom(a, a).object_id(c.unit(a)).to_string())).collect();
    Fin2CatDoc { objects, homs, units, hcompose1, hcompose2 }
}

type Key = (usize, usize, usize, usize, usize);

pub fn parse_fin2cat(doc: &Fin2CatDoc) -> Result<Fin2Cat> {
    let n = doc.objects.len();
    let obj: HashMap<&str, usize> = doc.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if obj.len() != n {
        return Err(Error::Malformed("at `objects`: duplicate object".into()));
    }
    let obj_of = |s: &str, at: String| obj.get(s).copied().ok_or_else(|| Error::UnknownId { id: s.into(), context: at });
    let mut homs: Vec<Option<FinCat>> = vec![None; n * n];
    for (k, h) in doc.homs.iter().enumerate() {
        let at = format!("at `homs[{k}]`");
        let p = obj_of(&h.src, at.clone())? * n + obj_of(&h.dst, at.clone())?;
        if homs[p].is_some() {
            return Err(Error::Malformed(format!("{at}: hom listed twice")));
        }
        homs[p] = Some(parse_fincat(&h.category).map_err(|e| Error::Malformed(format!("{at}.category: {e}")))?);
    }
    let homs: Vec<FinCat> = homs.into_iter().map(|h| h.unwrap_or_else(FinCat::empty)).collect();
    let mut units = vec![None; n];
    for (a, u) in &doc.units {
        let at = format!("at `units.{a}`");
        let i = obj_of(a, at.clone())?;
        units[i] = Some(homs[i * n + i].object_index(u).ok_or_else(|| Error::UnknownId { id: u.clone(), context: at })?);
    }
    let units = units
        .into_iter()
        .enumerate()
        .map(|(a, u)| u.ok_or_else(|| Error::Malformed(format!("at `units`: object `{}` has no unit", doc.objects[a]))))
        .collect::<Result<Vec<_>>>()?;

    let table = |rows: &[(String, String, String, String, String, String)], what: &str, cells: fn(&FinCat, &str) -> Option<usize>, count: fn(&FinCat) -> usize| -> Result<HashMap<Key, usize>> {
        let mut out = HashMap::new();
        for (k, (a, b, c, x, y, r)) in rows.iter().enumerate() {
            let at = || format!("at `{what}[{k}]`");
            let (a, b, c) = (obj_of(a, at())?, obj_of(b, at())?, obj_of(c, at())?);
            let look = |h: &FinCat, s: &str| cells(h, s).ok_or_else(|| Error::UnknownId { id: s.into(), context: at() });
            let key = (a, b, c, look(&homs[a * n + b], x)?, look(&homs[b * n + c], y)?);
            if out.insert(key, look(&homs[a * n + c], r)?).is_some() {
                return Err(Error::Malformed(format!("{}: duplicate entry", at())));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let expected = count(&homs[a * n + b]) * count(&homs[b * n + c]);
                    let present = out.keys().filter(|k| (k.0, k.1, k.2) == (a, b, c)).count();
                    if present != expected {
                        return Err(Error::Malformed(format!(
                            "at `{what}`: {present} of {expected} entries for `{}`, `{}`, `{}`",
                            doc.objects[a], doc.objects[b], doc.objects[c]
                        )));
                    }
                }
            }
        }
        Ok(out)
    };
    let c1 = table(&doc.hcompose1, "hcompose1", FinCat::object_index, FinCat::object_count)?;
    let c2 = table(&doc.hcompose2, "hcompose2", FinCat::arrow_index, FinCat::arrow_count)?;
    let c = Fin2Cat::build(doc.objects.clone(), homs, units, |a, b, c, f, g| c1[&(a, b, c, f, g)], |a, b, c, x, y| {
        c2[&(a, b, c, x, y)]
    })?;
    c.check_laws()?;
    Ok(c)
}

/// A functor with its endpoints; tables are keyed by source identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: FinCatDoc,
    pub target: FinCatDoc,
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

pub fn functor_doc(f: &CatFunctor) -> FunctorDoc {
    let (s, t) = (f.source(), f.target());
    FunctorDoc {
        source: fincat_doc(s),
        target: fincat_doc(t),
        objects: (0..s.object_count()).map(|a| (s.object_id(a).into(), t.object_id(f.object(a)).into())).collect(),
        arrows: (0..s.arrow_count()).map(|a| (s.arrow_id(a).into(), t.arrow_id(f.arrow(a)).into())).collect(),
    }
}

fn lookup_table(
    table: &BTreeMap<String, String>,
    what: &str,
    count: usize,
    src: impl Fn(&str) -> Option<usize>,
    dst: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<usize>> {
    let mut out = vec![usize::MAX; count];
    for (x, y) in table {
        let at = format!("at `{what}.{x}`");
        let i = src(x).ok_or_else(|| Error::UnknownId { id: x.clone(), context: at.clone() })?;
        out[i] = dst(y).ok_or_else(|| Error::UnknownId { id: y.clone(), context: at })?;
    }
    if out.contains(&usize::MAX) {
        return Err(Error::Malformed(format!("at `{what}`: table does not cover the source")));
    }
    Ok(out)
}

pub fn parse_functor(doc: &FunctorDoc) -> Result<CatFunctor> {
    let s = Arc::new(parse_fincat(&doc.source)?);
    let t = Arc::new(parse_fincat(&doc.target)?);
    functor_from_tables(s, t, &doc.objects, &doc.arrows)
}

pub(crate) fn functor_from_tables(
    s: Arc<FinCat>,
    t: Arc<FinCat>,
    objects: &BTreeMap<String, String>,
    arrows: &BTreeMap<String, String>,
) -> Result<CatFunctor> {
    let objects = lookup_table(objects, "objects", s.object_count(), |x| s.object_index(x), |y| t.object_index(y))?;
    let arrows = lookup_table(arrows, "arrows", s.arrow_count(), |x| s.arrow_index(x), |y| t.arrow_index(y))?;
    CatFunctor::new(s, t, objects, arrows)
}

/// A strict 2-functor. Rows of `one_cells` and `two_cells` are
/// `[a, b, cell, image]` with `cell` in the source hom `a → b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoFunctorDoc {
    pub source: Fin2CatDoc,
    pub target: Fin2CatDoc,
    pub objects: BTreeMap<String, String>,
    pub one_cells: Vec<CellRow>,
    pub two_cells: Vec<CellRow>,
}

pub fn two_functor_doc(f: &TwoFunctor) -> TwoFunctorDoc {
    let (s, t) = (f.source(), f.target());
    let n = s.object_count();
    let mut one_cells = Vec::new();
    let mut two_cells = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let (h, th) = (s.hom(a, b), t.hom(f.object(a), f.object(b)));
            let (sa, sb) = (s.object_id(a).to_string(), s.object_id(b).to_string());
            for x in 0..h.object_count() {
                one_cells.push((sa.clone(), sb.clone(), h.object_id(x).into(), th.object_id(f.one_cell(a, b, x)).into()));
            }
            for x in 0..h.arrow_count() {
                two_cells.push((sa.clone(), sb.clone(), h.arrow_id(x).into(), th.arrow_id(f.two_cell(a, b, x)).into()));
            }
        }
    }
    one_cells.sort();
    two_cells.sort();
    TwoFunctorDoc {
        source: fin2cat_doc(s),
        target: fin2cat_doc(t),
        objects: (0..n).map(|a| (s.object_id(a).into(), t.object_id(f.object(a)).into())).collect(),
        one_cells,
        two_cells,
    }
}

pub fn parse_two_functor(doc: &TwoFunctorDoc) -> Result<TwoFunctor> {
    let s = Arc::new(parse_fin2cat(&doc.source)?);
    let t = Arc::new(parse_fin2cat(&doc.target)?);
    two_functor_from_tables(s, t, &doc.objects, &doc.one_cells, &doc.two_cells)
}

pub(crate) type CellRow = (String, String, String, String);

pub(crate) fn two_functor_from_tables(
    s: Arc<Fin2Cat>,
    t: Arc<Fin2Cat>,
    objects: &BTreeMap<String, String>,
    one_cells: &[CellRow],
    two_cells: &[CellRow],
) -> Result<TwoFunctor> {
    let n = s.object_count();
    let objects = lookup_table(objects, "objects", n, |x| s.object_index(x), |y| t.object_index(y))?;
    let rows = |entries: &[CellRow], what: &str, cells: fn(&FinCat, &str) -> Option<usize>, count: fn(&FinCat) -> usize| -> Result<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<usize>> = (0..n * n).map(|p| vec![usize::MAX; count(s.hom(p / n, p % n))]).collect();
        for (k, (a, b, x, y)) in entries.iter().enumerate() {
            let at = || format!("at `{what}[{k}]`");
            let unknown = |id: &str| Error::UnknownId { id: id.into(), context: at() };
            let a = s.object_index(a).ok_or_else(|| unknown(a))?;
            let b = s.object_index(b).ok_or_else(|| unknown(b))?;
            let i = cells(s.hom(a, b), x).ok_or_else(|| unknown(x))?;
            out[a * n + b][i] = cells(t.hom(objects[a], objects[b]), y).ok_or_else(|| unknown(y))?;
        }
        if out.iter().flatten().any(|&v| v == usize::MAX) {
            return Err(Error::Malformed(format!("at `{what}`: table does not cover the source")));
        }
        Ok(out)
    };
    let one = rows(one_cells, "one_cells", FinCat::object_index, FinCat::object_count)?;
    let two = rows(two_cells, "two_cells", FinCat::arrow_index, FinCat::arrow_count)?;
    TwoFunctor::new(s, t, objects, one, two)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{named_categories, two_categories};
    use crate::io::{from_json, to_json};
    use crate::twocat::delta_tilde;

    #[test]
    fn fincat_round_trip() {
        for (_, c) in named_categories() {
            let doc = fincat_doc(&c);
            let back: FinCatDoc = from_json(&to_json(&doc)).unwrap();
            assert_eq!(back, doc);
            assert_eq!(parse_fincat(&back).unwrap(), c);
        }
    }

    #[test]
    fn fin2cat_round_trip() {
        for (_, c) in two_categories() {
            let doc = fin2cat_doc(&c);
            let back: Fin2CatDoc = from_json(&to_json(&doc)).unwrap();
            assert_eq!(parse_fin2cat(&back).unwrap(), c);
        }
    }

    #[test]
    fn two_functor_round_trip() {
        let f = crate::twocat::cosimplicial_operator(&[0, 2], 2).unwrap();
        let back = parse_two_functor(&from_json(&to_json(&two_functor_doc(&f))).unwrap()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut doc = fin2cat_doc(&delta_tilde(2));
        doc.hcompose1.pop();
        assert!(matches!(parse_fin2cat(&doc), Err(Error::Malformed(_))));
        let mut doc = fincat_doc(&FinCat::ordinal(2));
        doc.compose.pop();
        assert!(parse_fincat(&doc).is_err());
    }
}
