//! Finite strict 2-categories and strict 2-functors.
//!
//! A [`Fin2Cat`] stores one [`FinCat`] per ordered pair of objects: its
//! objects are the 1-cells and its arrows the 2-cells. Horizontal
//! composition is tabulated per triple of objects. Throughout, the
//! horizontal composite of `f: a → b` followed by `g: b → c` is written
//! `g ∘ f` and computed by `hcomp1(a, b, c, f, g)`; on 2-cells
//! `hcomp2(a, b, c, α, β)` is `β ∗ α : g ∘ f ⇒ g' ∘ f'`.

mod delta;
pub(crate) use delta::subset_name;
mod functor;
mod nerve;
mod slice;

use std::collections::HashMap;

use crate::category::FinCat;
use crate::error::{Error, Result};

pub use delta::{cosimplicial_operator, cosimplicial_operator_between, delta_tilde};
pub use functor::{enumerate_two_functors, find_two_isomorphism, for_each_two_functor, TwoFunctor};
pub use nerve::{
    duskin_cell, geometric_nerve, geometric_nerve_by_functors, geometric_nerve_map, iota_nerve_comparison, DuskinCell,
};
pub use slice::{slice_2category, slice_2functor, Slice2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fin2Cat {
    objects: Vec<String>,
    homs: Vec<FinCat>,
    units: Vec<usize>,
    comp1: Vec<Vec<usize>>,
    comp2: Vec<Vec<usize>>,
    object_lookup: HashMap<String, usize>,
}

impl Fin2Cat {
    /// Builds a 2-category from indexed data. `homs[a * n + b]` is the
    /// hom-category `a → b`; `units[a]` an object of `homs[a * n + a]`;
    /// `comp1(a, b, c, f, g)` the 1-cell `g ∘ f` and `comp2(a, b, c, α, β)`
    /// the 2-cell `β ∗ α`. Objects are re-sorted by identifier. Only
    /// typing is checked; see [`Fin2Cat::check_laws`].
    pub fn build<F, G>(objects: Vec<String>, homs: Vec<FinCat>, units: Vec<usize>, comp1: F, comp2: G) -> Result<Self>
    where
        F: Fn(usize, usize, usize, usize, usize) -> usize,
        G: Fn(usize, usize, usize, usize, usize) -> usize,
    {
        let n = objects.len();
        if homs.len() != n * n || units.len() != n {
            return Err(Error::Malformed("hom or unit table has the wrong size".into()));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| objects[a].cmp(&objects[b]));
        for w in order.windows(2) {
            if objects[w[0]] == objects[w[1]] {
                return Err(Error::Malformed(format!("duplicate object `{}`", objects[w[0]])));
            }
        }
        let mut homs: Vec<Option<FinCat>> = homs.into_iter().map(Some).collect();
        let mut new_homs = Vec::with_capacity(n * n);
        for &a in &order {
            for &b in &order {
                new_homs.push(homs[a * n + b].take().unwrap());
            }
        }
        let new_units: Vec<usize> = order.iter().map(|&a| units[a]).collect();
        for (k, &u) in new_units.iter().enumerate() {
            if u >= new_homs[k * n + k].object_count() {
                return Err(Error::Malformed(format!("unit of `{}` is not a 1-cell", objects[order[k]])));
            }
        }
        let mut comp1_t = Vec::with_capacity(n * n * n);
        let mut comp2_t = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (hab, hbc, hac) = (&new_homs[a * n + b], &new_homs[b * n + c], &new_homs[a * n + c]);
                    let (oa, ob, oc) = (order[a], order[b], order[c]);
                    let mut t1 = Vec::with_capacity(hab.object_count() * hbc.object_count());
                    for f in 0..hab.object_count() {
                        for g in 0..hbc.object_count() {
                            let h = comp1(oa, ob, oc, f, g);
                            if h >= hac.object_count() {
                                return Err(Error::Malformed("horizontal composite is not a 1-cell".into()));
                            }
                            t1.push(h);
                        }
                    }
                    let mut t2 = Vec::with_capacity(hab.arrow_count() * hbc.arrow_count());
                    for al in 0..hab.arrow_count() {
                        for be in 0..hbc.arrow_count() {
                            let h = comp2(oa, ob, oc, al, be);
                            if h >= hac.arrow_count() {
                                return Err(Error::Malformed("horizontal composite is not a 2-cell".into()));
                            }
                            t2.push(h);
                        }
                    }
                    comp1_t.push(t1);
                    comp2_t.push(t2);
                }
            }
        }
        let objects: Vec<String> = order.iter().map(|&a| objects[a].clone()).collect();
        let object_lookup = objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(Self { objects, homs: new_homs, units: new_units, comp1: comp1_t, comp2: comp2_t, object_lookup })
    }

    /// The terminal 2-category: one object, one 1-cell, one 2-cell.
    pub fn terminal() -> Self {
        iota(&FinCat::terminal())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.object_lookup.get(id).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> &FinCat {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn unit(&self, a: usize) -> usize {
        self.units[a]
    }

    fn triple(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.objects.len();
        (a * n + b) * n + c
    }

    /// `g ∘ f` for `f: a → b`, `g: b → c`.
    pub fn hcomp1(&self, a: usize, b: usize, c: usize, f: usize, g: usize) -> usize {
        self.comp1[self.triple(a, b, c)][f * self.hom(b, c).object_count() + g]
    }

    /// `β ∗ α` for `α` in `hom(a, b)`, `β` in `hom(b, c)`.
    pub fn hcomp2(&self, a: usize, b: usize, c: usize, alpha: usize, beta: usize) -> usize {
        self.comp2[self.triple(a, b, c)][alpha * self.hom(b, c).arrow_count() + beta]
    }

    /// `g ∗ α`: the 2-cell `α` in `hom(a, b)` followed by the 1-cell `g: b → c`.
    pub fn whisker_after(&self, a: usize, b: usize, c: usize, alpha: usize, g: usize) -> usize {
        self.hcomp2(a, b, c, alpha, self.hom(b, c).identity(g))
    }

    /// `α ∗ f`: the 1-cell `f: a → b` followed by the 2-cell `α` in `hom(b, c)`.
    pub fn whisker_before(&self, a: usize, b: usize, c: usize, f: usize, alpha: usize) -> usize {
        self.hcomp2(a, b, c, self.hom(a, b).identity(f), alpha)
    }

    pub fn one_cell_count(&self) -> usize {
        self.homs.iter().map(FinCat::object_count).sum()
    }

    pub fn two_cell_count(&self) -> usize {
        self.homs.iter().map(FinCat::arrow_count).sum()
    }

    /// Checks every hom-category, the unit and associativity laws of
    /// horizontal composition on 1- and 2-cells, and functoriality of
    /// horizontal composition (identities and interchange).
    pub fn check_laws(&self) -> Result<()> {
        let n = self.objects.len();
        for h in &self.homs {
            h.check_laws()?;
        }
        let fail = |what: &str, a: usize, b: usize, c: usize| {
            Err(Error::Contract(format!(
                "{what} fails at `{}`, `{}`, `{}`",
                self.objects[a], self.objects[b], self.objects[c]
            )))
        };
        for a in 0..n {
            for b in 0..n {
                let hab = self.hom(a, b);
                let (ua, ub) = (self.units[a], self.units[b]);
                for f in 0..hab.object_count() {
                    if self.hcomp1(a, a, b, ua, f) != f || self.hcomp1(a, b, b, f, ub) != f {
                        return fail("unit law on 1-cells", a, a, b);
                    }
                }
                let (iua, iub) = (self.hom(a, a).identity(ua), self.hom(b, b).identity(ub));
                for al in 0..hab.arrow_count() {
                    if self.hcomp2(a, a, b, iua, al) != al || self.hcomp2(a, b, b, al, iub) != al {
                        return fail("unit law on 2-cells", a, a, b);
                    }
                }
                for c in 0..n {
                    let (hbc, hac) = (self.hom(b, c), self.hom(a, c));
                    for al in 0..hab.arrow_count() {
                        for be in 0..hbc.arrow_count() {
                            let h = self.hcomp2(a, b, c, al, be);
                            let s = self.hcomp1(a, b, c, hab.src(al), hbc.src(be));
                            let t = self.hcomp1(a, b, c, hab.dst(al), hbc.dst(be));
                            if hac.src(h) != s || hac.dst(h) != t {
                                return fail("typing of horizontal composition", a, b, c);
                            }
                        }
                    }
                    for f in 0..hab.object_count() {
                        for g in 0..hbc.object_count() {
                            let id = self.hcomp2(a, b, c, hab.identity(f), hbc.identity(g));
                            if id != hac.identity(self.hcomp1(a, b, c, f, g)) {
                                return fail("preservation of identity 2-cells", a, b, c);
                            }
                        }
                    }
                    for (al2, al1, al) in hab.composition_triples() {
                        for (be2, be1, be) in hbc.composition_triples() {
                            let lhs = self.hcomp2(a, b, c, al, be);
                            let rhs = hac.compose(self.hcomp2(a, b, c, al2, be2), self.hcomp2(a, b, c, al1, be1));
                            if rhs != Some(lhs) {
                                return fail("interchange", a, b, c);
                            }
                        }
                    }
                    for d in 0..n {
                        let hcd = self.hom(c, d);
                        for f in 0..hab.object_count() {
                            for g in 0..hbc.object_count() {
                                let gf = self.hcomp1(a, b, c, f, g);
                                for h in 0..hcd.object_count() {
                                    let hg = self.hcomp1(b, c, d, g, h);
                                    if self.hcomp1(a, c, d, gf, h) != self.hcomp1(a, b, d, f, hg) {
                                        return fail("associativity on 1-cells", a, b, c);
                                    }
                                }
                            }
                        }
                        for al in 0..hab.arrow_count() {
                            for be in 0..hbc.arrow_count() {
                                let ba = self.hcomp2(a, b, c, al, be);
                                for ga in 0..hcd.arrow_count() {
                                    let gb = self.hcomp2(b, c, d, be, ga);
                                    if self.hcomp2(a, c, d, ba, ga) != self.hcomp2(a, b, d, al, gb) {
                                        return fail("associativity on 2-cells", a, b, c);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `ι(C)`: the 2-category with the same objects and 1-cells as `c` and only
/// identity 2-cells. The 1-cell `f` is named by its arrow id.
pub fn iota(c: &FinCat) -> Fin2Cat {
    let n = c.object_count();
    let mut homs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let names: Vec<&str> = c.hom(a, b).iter().map(|&f| c.arrow_id(f)).collect();
            homs.push(FinCat::discrete(&names));
        }
    }
    let cell = |homs: &Vec<FinCat>, a: usize, b: usize, f: usize| homs[a * n + b].object_index(c.arrow_id(f)).unwrap();
    let arrow_of = |homs: &Vec<FinCat>, a: usize, b: usize, x: usize| c.arrow_index(homs[a * n + b].object_id(x)).unwrap();
    let units = (0..n).map(|a| cell(&homs, a, a, c.identity(a))).collect();
    let comp1 = |a: usize, b: usize, cc: usize, f: usize, g: usize| {
        let h = c.compose(arrow_of(&homs, b, cc, g), arrow_of(&homs, a, b, f)).unwrap();
        cell(&homs, a, cc, h)
    };
    let comp2 = |a: usize, b: usize, cc: usize, x: usize, y: usize| {
        let f = homs[a * n + b].src(x);
        let g = homs[b * n + cc].src(y);
        homs[a * n + cc].identity(comp1(a, b, cc, f, g))
    };
    Fin2Cat::build(c.objects().to_vec(), homs.clone(), units, comp1, comp2).expect("ι of a category is well typed")
}

/// `τ(C)`: same objects, arrows the connected components of the
/// hom-categories, each named by its least 1-cell identifier.
pub fn tau(c: &Fin2Cat) -> FinCat {
    let n = c.object_count();
    let mut comp_of: Vec<Vec<usize>> = Vec::with_capacity(n * n);
    let mut arrows = Vec::new();
    let mut rep = Vec::new();
    let mut first_arrow = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let h = c.hom(a, b);
            let classes = components(h);
            let k = classes.iter().copied().max().map_or(0, |m| m + 1);
            first_arrow[a * n + b] = arrows.len();
            for class in 0..k {
                let members: Vec<usize> = (0..h.object_count()).filter(|&x| classes[x] == class).collect();
                let name = members.iter().map(|&x| h.object_id(x)).min().unwrap().to_string();
                arrows.push((name, a, b));
                rep.push(members[0]);
            }
            comp_of.push(classes);
        }
    }
    let identity = (0..n).map(|a| first_arrow[a * n + a] + comp_of[a * n + a][c.unit(a)]).collect();
    let ends: Vec<(usize, usize)> = arrows.iter().map(|t| (t.1, t.2)).collect();
    FinCat::build(c.objects().to_vec(), arrows, identity, |g, f| {
        let ((a, b), (_, cc)) = (ends[f], ends[g]);
        let h = c.hcomp1(a, b, cc, rep[f], rep[g]);
        first_arrow[a * n + cc] + comp_of[a * n + cc][h]
    })
    .expect("τ of a 2-category is well typed")
}

/// Connected-component labels of the objects of `c`, numbered in order of
/// first appearance.
pub(crate) fn components(c: &FinCat) -> Vec<usize> {
    let n = c.object_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for f in 0..c.arrow_count() {
        let (s, d) = (find(&mut parent, c.src(f)), find(&mut parent, c.dst(f)));
        if s != d {
            parent[s.max(d)] = s.min(d);
        }
    }
    let mut label = HashMap::new();
    (0..n)
        .map(|x| {
            let r = find(&mut parent, x);
            let next = label.len();
            *label.entry(r).or_insert(next)
        })
        .collect()
}

/// Whether every hom-category `hom(a, z)` has a final object; returns the
/// final 1-cell per source object (`None` where it is missing).
pub fn object_admits_final(c: &Fin2Cat, z: usize) -> Result<(bool, Vec<Option<usize>>)> {
    if z >= c.object_count() {
        return Err(Error::Domain(format!("object index {z} is not in the 2-category")));
    }
    let witnesses: Vec<Option<usize>> = (0..c.object_count()).map(|a| c.hom(a, z).final_object()).collect();
    Ok((witnesses.iter().all(Option::is_some), witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::has_final_object;

    #[test]
    fn iota_is_a_two_category() {
        let c = FinCat::ordinal(2);
        let i = iota(&c);
        i.check_laws().unwrap();
        assert_eq!(i.one_cell_count(), c.arrow_count());
        assert_eq!(i.two_cell_count(), c.arrow_count());
    }

    #[test]
    fn tau_of_iota_is_isomorphic() {
        use crate::category::find_isomorphism;
        use std::sync::Arc;
        let z2 = FinCat::monoid(&["e", "s"], &[vec![0, 1], vec![1, 0]], 0).unwrap();
        for c in [FinCat::ordinal(2), z2, FinCat::discrete(&["a", "b"])] {
            let t = Arc::new(tau(&iota(&c)));
            t.check_laws().unwrap();
            assert!(find_isomorphism(&Arc::new(c), &t).is_some());
        }
    }

    #[test]
    fn admits_final_on_iota_matches_final_object() {
        let c = FinCat::ordinal(2);
        let i = iota(&c);
        let z = has_final_object(&c).unwrap();
        for x in 0..c.object_count() {
            assert_eq!(object_admits_final(&i, x).unwrap().0, x == z);
        }
    }

    #[test]
    fn components_of_discrete_and_connected() {
        assert_eq!(components(&FinCat::discrete(&["a", "b"])), vec![0, 1]);
        assert_eq!(components(&FinCat::ordinal(2)), vec![0, 0, 0]);
    }
}
