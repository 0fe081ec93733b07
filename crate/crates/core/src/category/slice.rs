use std::collections::HashMap;
use std::sync::Arc;

use super::{CatFunctor, FinCat};
use crate::error::{Error, Result};

/// The comma category `A/c` of a functor `v: A → C` over an object `c`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub category: Arc<FinCat>,
    /// The forgetful functor `A/c → A`.
    pub projection: CatFunctor,
    /// `(a, f)` for every object of the slice, by object index; `f` is an
    /// arrow `v(a) → c` of `C`.
    pub pairs: Vec<(usize, usize)>,
}

pub(crate) fn pair_id(a: &FinCat, c: &FinCat, (x, f): (usize, usize)) -> String {
    format!("({},{})", a.object_id(x), c.arrow_id(f))
}

/// `A/c` for `v: A → C`. Objects are pairs `(a, f: v(a) → c)`; an arrow
/// `(a, f) → (a', f')` is an arrow `h: a → a'` with `f' ∘ v(h) = f`.
pub fn slice_category(v: &CatFunctor, c: usize) -> Result<Slice> {
    let (a, cc) = (&**v.source(), &**v.target());
    if c >= cc.object_count() {
        return Err(Error::Domain(format!("object index {c} is not in the target category")));
    }
    let mut pairs = Vec::new();
    let mut pair_index = HashMap::new();
    for x in 0..a.object_count() {
        for &f in cc.hom(v.object(x), c) {
            pair_index.insert((x, f), pairs.len());
            pairs.push((x, f));
        }
    }
    let mut arrows = Vec::new();
    let mut arrow_index = HashMap::new();
    let mut base = Vec::new();
    for h in 0..a.arrow_count() {
        let (s, d) = (a.src(h), a.dst(h));
        for &f in cc.hom(v.object(s), c) {
            for &f2 in cc.hom(v.object(d), c) {
                if cc.compose(f2, v.arrow(h)) == Some(f) {
                    let (p, q) = (pair_index[&(s, f)], pair_index[&(d, f2)]);
                    arrow_index.insert((h, p, q), arrows.len());
                    arrows.push((format!("{}:{}->{}", a.arrow_id(h), pair_id(a, cc, (s, f)), pair_id(a, cc, (d, f2))), p, q));
                    base.push(h);
                }
            }
        }
    }
    let identity: Vec<usize> = pairs.iter().enumerate().map(|(p, &(x, _))| arrow_index[&(a.identity(x), p, p)]).collect();
    let objects: Vec<String> = pairs.iter().map(|&p| pair_id(a, cc, p)).collect();
    let ends: Vec<(usize, usize)> = arrows.iter().map(|t| (t.1, t.2)).collect();
    let arrow_ids: Vec<String> = arrows.iter().map(|t| t.0.clone()).collect();
    let category = FinCat::build(objects, arrows, identity, |g, f| {
        let h = a.compose(base[g], base[f]).unwrap();
        arrow_index[&(h, ends[f].0, ends[g].1)]
    })?;
    let category = Arc::new(category);
    let mut sorted_pairs = vec![(0, 0); pairs.len()];
    let mut proj_objects = vec![0; pairs.len()];
    for &p in &pairs {
        let k = category.object_index(&pair_id(a, cc, p)).unwrap();
        sorted_pairs[k] = p;
        proj_objects[k] = p.0;
    }
    let base_of: HashMap<&str, usize> = arrow_ids.iter().map(String::as_str).zip(base.iter().copied()).collect();
    let proj_arrows = (0..category.arrow_count()).map(|k| base_of[category.arrow_id(k)]).collect();
    let projection = CatFunctor::new_unchecked(category.clone(), v.source().clone(), proj_objects, proj_arrows)?;
    Ok(Slice { category, projection, pairs: sorted_pairs })
}

/// The functor `u/c: A/c → B/c`, `(a, f) ↦ (u(a), f)`, induced by a
/// commuting triangle `q ∘ u = p` over `C`.
pub fn slice_functor(u: &CatFunctor, p: &CatFunctor, q: &CatFunctor, c: usize) -> Result<CatFunctor> {
    if **u.source() != **p.source() || **u.target() != **q.source() || **p.target() != **q.target() {
        return Err(Error::Contract("functors do not form a triangle".into()));
    }
    let composite = u.then(q)?;
    if composite.object_table() != p.object_table() || composite.arrow_table() != p.arrow_table() {
        return Err(Error::Contract("triangle does not commute".into()));
    }
    let sa = slice_category(p, c)?;
    let sb = slice_category(q, c)?;
    let (b, cc) = (&**u.target(), &**p.target());
    let objects = sa
        .pairs
        .iter()
        .map(|&(x, f)| sb.category.object_index(&pair_id(b, cc, (u.object(x), f))).unwrap())
        .collect();
    let arrows = (0..sa.category.arrow_count())
        .map(|k| {
            let (s, d) = (sa.category.src(k), sa.category.dst(k));
            let h = sa.projection.arrow(k);
            let id = format!(
                "{}:{}->{}",
                b.arrow_id(u.arrow(h)),
                pair_id(b, cc, (u.object(sa.pairs[s].0), sa.pairs[s].1)),
                pair_id(b, cc, (u.object(sa.pairs[d].0), sa.pairs[d].1))
            );
            sb.category.arrow_index(&id).unwrap()
        })
        .collect();
    CatFunctor::new(sa.category, sb.category, objects, arrows)
}
