//! The 2-categorical comma `A/c` of a strict 2-functor `v: A → C`.
//!
//! - objects: pairs `(a, f)` with `f: v(a) → c`;
//! - 1-cells `(a, f) → (a', f')`: pairs `(g, α)` with `g: a → a'` and
//!   `α: f' ∘ v(g) ⇒ f`;
//! - 2-cells `(g, α) ⇒ (g', α')`: 2-cells `β: g ⇒ g'` of `A` with
//!   `α' · (f' ∗ v(β)) = α`.
//!
//! Composition: `(g', α') ∘ (g, α) = (g' ∘ g, α · (α' ∗ v(g)))`, units
//! `(1_a, id_f)`; 2-cells compose as in `A`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Fin2Cat, TwoFunctor};
use crate::category::FinCat;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Slice2 {
    pub category: Arc<Fin2Cat>,
    /// The forgetful 2-functor `A/c → A`.
    pub projection: TwoFunctor,
    /// `(a, f)` for every object of the slice, by object index.
    pub pairs: Vec<(usize, usize)>,
    /// `(g, α)` for every 1-cell of `hom(s, t)`, at `s * n + t`.
    pub one_cells: Vec<Vec<(usize, usize)>>,
}

struct HomData {
    cat: FinCat,
    one: Vec<(usize, usize)>,
    two: Vec<usize>,
    one_index: HashMap<(usize, usize), usize>,
    two_index: HashMap<(usize, usize, usize), usize>,
}

fn object_name(a: &Fin2Cat, c: &Fin2Cat, va: usize, target: usize, (x, f): (usize, usize)) -> String {
    format!("({},{})", a.object_id(x), c.hom(va, target).object_id(f))
}

fn one_name(a: &Fin2Cat, c: &Fin2Cat, (x, y): (usize, usize), (vx, t): (usize, usize), (g, al): (usize, usize)) -> String {
    format!("({},{})", a.hom(x, y).object_id(g), c.hom(vx, t).arrow_id(al))
}

/// `A/c` for a strict 2-functor `v: A → C` and an object `c` of `C`.
pub fn slice_2category(v: &TwoFunctor, c: usize) -> Result<Slice2> {
    let (a, cc) = (&**v.source(), &**v.target());
    if c >= cc.object_count() {
        return Err(Error::Domain(format!("object index {c} is not in the target 2-category")));
    }
    let mut pairs = Vec::new();
    for x in 0..a.object_count() {
        for f in 0..cc.hom(v.object(x), c).object_count() {
            pairs.push((x, f));
        }
    }
    let np = pairs.len();
    let mut homs: Vec<HomData> = Vec::with_capacity(np * np);
    for &(x, f) in &pairs {
        for &(y, f2) in &pairs {
            let (vx, vy) = (v.object(x), v.object(y));
            let hxy = a.hom(x, y);
            let hvc = cc.hom(vx, c);
            let mut objs = Vec::new();
            for g in 0..hxy.object_count() {
                let src = cc.hcomp1(vx, vy, c, v.one_cell(x, y, g), f2);
                for &al in hvc.hom(src, f) {
                    objs.push((g, al));
                }
            }
            let mut arrows = Vec::new();
            let mut base = Vec::new();
            let mut arrow_index = HashMap::new();
            for be in 0..hxy.arrow_count() {
                let (g, g2) = (hxy.src(be), hxy.dst(be));
                let whiskered = cc.whisker_after(vx, vy, c, v.two_cell(x, y, be), f2);
                for (k1, &(gg, al)) in objs.iter().enumerate() {
                    if gg != g {
                        continue;
                    }
                    for (k2, &(gg2, al2)) in objs.iter().enumerate() {
                        if gg2 != g2 || hvc.compose(al2, whiskered) != Some(al) {
                            continue;
                        }
                        arrow_index.insert((be, k1, k2), arrows.len());
                        let id = format!(
                            "{}:{}->{}",
                            hxy.arrow_id(be),
                            one_name(a, cc, (x, y), (vx, c), (gg, al)),
                            one_name(a, cc, (x, y), (vx, c), (gg2, al2))
                        );
                        arrows.push((id, k1, k2));
                        base.push(be);
                    }
                }
            }
            let identity: Vec<usize> = objs
                .iter()
                .enumerate()
                .map(|(k, &(g, _))| arrow_index[&(hxy.identity(g), k, k)])
                .collect();
            let ends: Vec<(usize, usize)> = arrows.iter().map(|t| (t.1, t.2)).collect();
            let names: Vec<String> = objs.iter().map(|&o| one_name(a, cc, (x, y), (vx, c), o)).collect();
            let arrow_names: Vec<String> = arrows.iter().map(|t| t.0.clone()).collect();
            let cat = FinCat::build(names.clone(), arrows, identity, |g, f| {
                arrow_index[&(hxy.compose(base[g], base[f]).unwrap(), ends[f].0, ends[g].1)]
            })?;
            let mut one = vec![(0, 0); objs.len()];
            for (k, o) in objs.iter().enumerate() {
                one[cat.object_index(&names[k]).unwrap()] = *o;
            }
            let mut two = vec![0; base.len()];
            for (k, &b) in base.iter().enumerate() {
                two[cat.arrow_index(&arrow_names[k]).unwrap()] = b;
            }
            let one_index = one.iter().enumerate().map(|(k, &o)| (o, k)).collect();
            let two_index = (0..cat.arrow_count()).map(|k| ((two[k], cat.src(k), cat.dst(k)), k)).collect();
            homs.push(HomData { cat, one, two, one_index, two_index });
        }
    }
    let comp1 = |p: usize, q: usize, r: usize, s: usize, t: usize| -> usize {
        let ((x, _), (y, _), (z, _)) = (pairs[p], pairs[q], pairs[r]);
        let (vx, vy) = (v.object(x), v.object(y));
        let (g, al) = homs[p * np + q].one[s];
        let (g2, al2) = homs[q * np + r].one[t];
        let gg = a.hcomp1(x, y, z, g, g2);
        let whiskered = cc.whisker_before(vx, vy, c, v.one_cell(x, y, g), al2);
        let aa = cc.hom(vx, c).compose(al, whiskered).expect("slice composite is typed");
        homs[p * np + r].one_index[&(gg, aa)]
    };
    let comp2 = |p: usize, q: usize, r: usize, s: usize, t: usize| -> usize {
        let ((x, _), (y, _), (z, _)) = (pairs[p], pairs[q], pairs[r]);
        let (h1, h2) = (&homs[p * np + q], &homs[q * np + r]);
        let be = a.hcomp2(x, y, z, h1.two[s], h2.two[t]);
        let src = comp1(p, q, r, h1.cat.src(s), h2.cat.src(t));
        let dst = comp1(p, q, r, h1.cat.dst(s), h2.cat.dst(t));
        homs[p * np + r].two_index[&(be, src, dst)]
    };
    let units: Vec<usize> = (0..np)
        .map(|p| {
            let (x, f) = pairs[p];
            let id_f = cc.hom(v.object(x), c).identity(f);
            homs[p * np + p].one_index[&(a.unit(x), id_f)]
        })
        .collect();
    let names: Vec<String> = pairs.iter().map(|&o| object_name(a, cc, v.object(o.0), c, o)).collect();
    let hom_cats: Vec<FinCat> = homs.iter().map(|h| h.cat.clone()).collect();
    let category = Arc::new(Fin2Cat::build(names.clone(), hom_cats, units, comp1, comp2)?);
    let mut order = vec![0; np];
    for (old, name) in names.iter().enumerate() {
        order[category.object_index(name).unwrap()] = old;
    }
    let sorted_pairs: Vec<(usize, usize)> = order.iter().map(|&o| pairs[o]).collect();
    let mut one = Vec::with_capacity(np * np);
    let mut two = Vec::with_capacity(np * np);
    let mut one_cells = Vec::with_capacity(np * np);
    for &p in &order {
        for &q in &order {
            let h = &homs[p * np + q];
            one.push(h.one.iter().map(|&(g, _)| g).collect());
            two.push(h.two.clone());
            one_cells.push(h.one.clone());
        }
    }
    let objects = sorted_pairs.iter().map(|&(x, _)| x).collect();
    let projection = TwoFunctor::new_unchecked(category.clone(), v.source().clone(), objects, one, two)?;
    Ok(Slice2 { category, projection, pairs: sorted_pairs, one_cells })
}

/// The 2-functor `u/c: A/c → B/c` induced by a commuting triangle
/// `q ∘ u = p` of strict 2-functors over `C`.
pub fn slice_2functor(u: &TwoFunctor, p: &TwoFunctor, q: &TwoFunctor, c: usize) -> Result<TwoFunctor> {
    if **u.source() != **p.source() || **u.target() != **q.source() || **p.target() != **q.target() {
        return Err(Error::Contract("2-functors do not form a triangle".into()));
    }
    let composite = u.then(q)?;
    if composite.object_table() != p.object_table()
        || composite.one_tables() != p.one_tables()
        || composite.two_tables() != p.two_tables()
    {
        return Err(Error::Contract("triangle does not commute".into()));
    }
    let sa = slice_2category(p, c)?;
    let sb = slice_2category(q, c)?;
    let (b, cc) = (&**u.target(), &**p.target());
    let (ca, cb) = (&*sa.category, &*sb.category);
    let n = ca.object_count();
    let objects: Vec<usize> = sa
        .pairs
        .iter()
        .map(|&(x, f)| cb.object_index(&object_name(b, cc, q.object(u.object(x)), c, (u.object(x), f))).unwrap())
        .collect();
    let mut one = Vec::with_capacity(n * n);
    let mut two = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let (x, y) = (sa.pairs[s].0, sa.pairs[t].0);
            let (ux, uy) = (u.object(x), u.object(y));
            let (h, th) = (ca.hom(s, t), cb.hom(objects[s], objects[t]));
            let vux = q.object(ux);
            let map_one = |k: usize| -> usize {
                let (g, al) = sa.one_cells[s * n + t][k];
                th.object_index(&one_name(b, cc, (ux, uy), (vux, c), (u.one_cell(x, y, g), al))).unwrap()
            };
            one.push((0..h.object_count()).map(map_one).collect::<Vec<_>>());
            two.push(
                (0..h.arrow_count())
                    .map(|k| {
                        let be = sa.projection.two_cell(s, t, k);
                        let (s1, t1) = (map_one(h.src(k)), map_one(h.dst(k)));
                        let id = format!("{}:{}->{}", b.hom(ux, uy).arrow_id(u.two_cell(x, y, be)), th.object_id(s1), th.object_id(t1));
                        th.arrow_index(&id).unwrap()
                    })
                    .collect(),
            );
        }
    }
    TwoFunctor::new(sa.category.clone(), sb.category.clone(), objects, one, two)
}
