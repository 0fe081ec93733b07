//! Finite categories, functors, nerves, slices and categories of elements.

mod elements;
mod functor;
pub(crate) mod nerve;
mod slice;

use std::collections::HashMap;

use crate::error::{Error, Result};

pub use elements::category_of_elements;
pub use functor::{enumerate_functors, find_isomorphism, for_each_functor, CatFunctor};
pub use nerve::{nerve, nerve_map};
pub use slice::{slice_category, slice_functor, Slice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category. Objects and arrows are ordered by identifier.
///
/// Composition is stored per arrow `f` as the list of composites `g ∘ f`
/// for `g` ranging over the arrows out of `dst(f)`, so memory is linear in
/// the number of composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<usize>,
    out: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    post: Vec<Vec<usize>>,
    hom: HashMap<(usize, usize), Vec<usize>>,
    object_lookup: HashMap<String, usize>,
    arrow_lookup: HashMap<String, usize>,
}

impl FinCat {
    /// Builds a category from indexed data. `arrows` are `(id, src, dst)`
    /// with object indices into `objects`; `compose(g, f)` gives the index of
    /// `g ∘ f` and is only called on composable pairs. Objects and arrows are
    /// re-sorted by identifier. Typing and identities are checked here;
    /// associativity is left to [`FinCat::check_laws`].
    pub fn build<C>(objects: Vec<String>, arrows: Vec<(String, usize, usize)>, identity: Vec<usize>, compose: C) -> Result<Self>
    where
        C: Fn(usize, usize) -> usize,
    {
        if identity.len() != objects.len() {
            return Err(Error::Malformed("identity table does not cover every object".into()));
        }
        let mut obj_order: Vec<usize> = (0..objects.len()).collect();
        obj_order.sort_by(|&a, &b| objects[a].cmp(&objects[b]));
        let mut obj_new = vec![0; objects.len()];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_new[old] = new;
        }
        let mut arr_order: Vec<usize> = (0..arrows.len()).collect();
        arr_order.sort_by(|&a, &b| arrows[a].0.cmp(&arrows[b].0));
        let mut arr_new = vec![0; arrows.len()];
        for (new, &old) in arr_order.iter().enumerate() {
            arr_new[old] = new;
        }
        for w in obj_order.windows(2) {
            if objects[w[0]] == objects[w[1]] {
                return Err(Error::Malformed(format!("duplicate object `{}`", objects[w[0]])));
            }
        }
        for w in arr_order.windows(2) {
            if arrows[w[0]].0 == arrows[w[1]].0 {
                return Err(Error::Malformed(format!("duplicate arrow `{}`", arrows[w[0]].0)));
            }
        }
        for (id, s, d) in &arrows {
            if *s >= objects.len() || *d >= objects.len() {
                return Err(Error::Malformed(format!("arrow `{id}` has an unknown endpoint")));
            }
        }
        let new_objects: Vec<String> = obj_order.iter().map(|&o| objects[o].clone()).collect();
        let new_arrows: Vec<Arrow> = arr_order
            .iter()
            .map(|&f| Arrow { id: arrows[f].0.clone(), src: obj_new[arrows[f].1], dst: obj_new[arrows[f].2] })
            .collect();
        let mut new_identity = vec![0; objects.len()];
        for (old, &f) in identity.iter().enumerate() {
            if f >= arrows.len() {
                return Err(Error::Malformed(format!("identity of `{}` is not an arrow", objects[old])));
            }
            new_identity[obj_new[old]] = arr_new[f];
        }
        let n_obj = new_objects.len();
        let mut out = vec![Vec::new(); n_obj];
        let mut out_pos = vec![0; new_arrows.len()];
        for (f, a) in new_arrows.iter().enumerate() {
            out_pos[f] = out[a.src].len();
            out[a.src].push(f);
        }
        let mut post = Vec::with_capacity(new_arrows.len());
        for f in 0..new_arrows.len() {
            let (s, d) = (new_arrows[f].src, new_arrows[f].dst);
            let mut row = Vec::with_capacity(out[d].len());
            for &g in &out[d] {
                let gf = compose(arr_order[g], arr_order[f]);
                if gf >= arrows.len() {
                    return Err(Error::Malformed("composite is not an arrow".into()));
                }
                let gf = arr_new[gf];
                if new_arrows[gf].src != s || new_arrows[gf].dst != new_arrows[g].dst {
                    return Err(Error::Malformed(format!(
                        "composite of `{}` after `{}` has the wrong type",
                        new_arrows[g].id, new_arrows[f].id
                    )));
                }
                row.push(gf);
            }
            post.push(row);
        }
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (f, a) in new_arrows.iter().enumerate() {
            hom.entry((a.src, a.dst)).or_default().push(f);
        }
        let object_lookup = new_objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let arrow_lookup = new_arrows.iter().enumerate().map(|(i, a)| (a.id.clone(), i)).collect();
        let cat = Self {
            objects: new_objects,
            arrows: new_arrows,
            identity: new_identity,
            out,
            out_pos,
            post,
            hom,
            object_lookup,
            arrow_lookup,
        };
        for a in 0..n_obj {
            let i = cat.identity[a];
            if cat.arrows[i].src != a || cat.arrows[i].dst != a {
                return Err(Error::Malformed(format!("identity of `{}` is not an endomorphism", cat.objects[a])));
            }
        }
        Ok(cat)
    }

    /// Builds a category from identifier-level data, as found in documents.
    /// Every composable pair must have a composite entry.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        identity: Vec<(String, String)>,
        compose: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let obj: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let arr: HashMap<&str, usize> = arrows.iter().enumerate().map(|(i, a)| (a.0.as_str(), i)).collect();
        let obj_of = |s: &str| obj.get(s).copied().ok_or_else(|| Error::UnknownId { id: s.into(), context: "objects".into() });
        let arr_of = |s: &str| arr.get(s).copied().ok_or_else(|| Error::UnknownId { id: s.into(), context: "arrows".into() });
        let mut indexed = Vec::with_capacity(arrows.len());
        for (id, s, d) in &arrows {
            indexed.push((id.clone(), obj_of(s)?, obj_of(d)?));
        }
        let mut ident = vec![None; objects.len()];
        for (o, f) in &identity {
            ident[obj_of(o)?] = Some(arr_of(f)?);
        }
        let ident = ident
            .into_iter()
            .enumerate()
            .map(|(o, f)| f.ok_or_else(|| Error::Malformed(format!("object `{}` has no identity", objects[o]))))
            .collect::<Result<Vec<_>>>()?;
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for (g, f, gf) in &compose {
            let key = (arr_of(g)?, arr_of(f)?);
            if indexed[key.0].1 != indexed[key.1].2 {
                return Err(Error::Malformed(format!("composite entry for non-composable `{g}`, `{f}`")));
            }
            if table.insert(key, arr_of(gf)?).is_some() {
                return Err(Error::Malformed(format!("duplicate composite entry for `{g}`, `{f}`")));
            }
        }
        for g in 0..indexed.len() {
            for f in 0..indexed.len() {
                if indexed[g].1 == indexed[f].2 && !table.contains_key(&(g, f)) {
                    return Err(Error::Malformed(format!(
                        "missing composite of `{}` after `{}`",
                        indexed[g].0, indexed[f].0
                    )));
                }
            }
        }
        Self::build(objects, indexed, ident, |g, f| table[&(g, f)])
    }

    /// The category with one object `*` and one arrow.
    pub fn terminal() -> Self {
        Self::build(vec!["*".into()], vec![("1".into(), 0, 0)], vec![0], |_, _| 0).unwrap()
    }

    /// The empty category.
    pub fn empty() -> Self {
        Self::build(Vec::new(), Vec::new(), Vec::new(), |_, _| 0).unwrap()
    }

    /// A preorder on `names`, given by `leq(i, j)`; the relation must be
    /// reflexive and transitive. Arrows are named `a<=b`.
    pub fn preorder<F>(names: &[&str], leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = names.len();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    index.insert((i, j), arrows.len());
                    arrows.push((format!("{}<={}", names[i], names[j]), i, j));
                }
            }
        }
        let mut identity = Vec::with_capacity(n);
        for i in 0..n {
            identity.push(*index.get(&(i, i)).ok_or_else(|| Error::Domain("relation is not reflexive".into()))?);
        }
        for &(_, i, j) in &arrows {
            for &(_, j2, k) in &arrows {
                if j == j2 && !index.contains_key(&(i, k)) {
                    return Err(Error::Domain("relation is not transitive".into()));
                }
            }
        }
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.1, a.2)).collect();
        Self::build(names.iter().map(|s| s.to_string()).collect(), arrows, identity, |g, f| index[&(ends[f].0, ends[g].1)])
    }

    /// The ordinal `[n] = {0 < 1 < … < n}` as a category.
    pub fn ordinal(n: usize) -> Self {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::preorder(&refs, |i, j| i <= j).unwrap()
    }

    /// The discrete category on `names`.
    pub fn discrete(names: &[&str]) -> Self {
        Self::preorder(names, |i, j| i == j).unwrap()
    }

    /// A one-object category `*` on a monoid given by its multiplication
    /// table (`table[g][f] = g·f`) and unit element.
    pub fn monoid(elements: &[&str], table: &[Vec<usize>], unit: usize) -> Result<Self> {
        let arrows = elements.iter().map(|e| (e.to_string(), 0, 0)).collect();
        let cat = Self::build(vec!["*".into()], arrows, vec![unit], |g, f| table[g][f])?;
        cat.check_laws()?;
        Ok(cat)
    }

    /// Checks associativity and the unit laws exhaustively.
    pub fn check_laws(&self) -> Result<()> {
        for (f, a) in self.arrows.iter().enumerate() {
            if self.compose(self.identity[a.dst], f) != Some(f) || self.compose(f, self.identity[a.src]) != Some(f) {
                return Err(Error::Contract(format!("unit law fails at `{}`", a.id)));
            }
            for &g in &self.out[a.dst] {
                let gf = self.compose(g, f).unwrap();
                for &h in &self.out[self.arrows[g].dst] {
                    let hg = self.compose(h, g).unwrap();
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(Error::Contract(format!(
                            "associativity fails at `{}`, `{}`, `{}`",
                            self.arrows[h].id, self.arrows[g].id, a.id
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn object_id(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn arrow_id(&self, f: usize) -> &str {
        &self.arrows[f].id
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.object_lookup.get(id).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrow_lookup.get(id).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.arrows[f].dst
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identity[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.arrows[f].src] == f
    }

    /// `g ∘ f`, or `None` when `dst(f) ≠ src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        if self.arrows[f].dst != self.arrows[g].src {
            return None;
        }
        Some(self.post[f][self.out_pos[g]])
    }

    /// Arrows `a → b` in index order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.hom.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    /// Arrows with source `a`.
    pub fn arrows_from(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    /// Composite of a path `f_1, …, f_k` (first arrow first); identity of
    /// `start` when empty.
    pub fn compose_path(&self, start: usize, path: &[usize]) -> Option<usize> {
        let mut acc = self.identity[start];
        for &f in path {
            acc = self.compose(f, acc)?;
        }
        Some(acc)
    }

    /// True if every endomorphism is an identity and no two distinct
    /// objects have arrows in both directions.
    pub fn is_loop_free(&self) -> bool {
        self.arrows.iter().enumerate().all(|(f, a)| {
            if a.src == a.dst {
                self.is_identity(f)
            } else {
                self.hom(a.dst, a.src).is_empty()
            }
        })
    }

    /// `(id, src id, dst id)` for every arrow, with `(g, f, g∘f)` composites.
    pub fn composition_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for f in 0..self.arrows.len() {
            for &g in &self.out[self.arrows[f].dst] {
                out.push((g, f, self.compose(g, f).unwrap()));
            }
        }
        out
    }

    /// The opposite category, with the same identifiers.
    pub fn opposite(&self) -> Self {
        let arrows = self.arrows.iter().map(|a| (a.id.clone(), a.dst, a.src)).collect();
        Self::build(self.objects.clone(), arrows, self.identity.clone(), |g, f| self.compose(f, g).unwrap()).unwrap()
    }

    /// A final object: first `z` in object order with exactly one arrow
    /// from every object.
    pub fn final_object(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&z| (0..self.objects.len()).all(|a| self.hom(a, z).len() == 1))
    }
}

/// First final object of `c` in canonical object order, if any.
pub fn has_final_object(c: &FinCat) -> Option<usize> {
    c.final_object()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FinCat {
        FinCat::monoid(&["e", "s"], &[vec![0, 1], vec![1, 0]], 0).unwrap()
    }

    #[test]
    fn ordinal_has_expected_shape() {
        let c = FinCat::ordinal(2);
        assert_eq!(c.object_count(), 3);
        assert_eq!(c.arrow_count(), 6);
        c.check_laws().unwrap();
        let f = c.arrow_index("0<=1").unwrap();
        let g = c.arrow_index("1<=2").unwrap();
        assert_eq!(c.arrow_id(c.compose(g, f).unwrap()), "0<=2");
        assert_eq!(c.compose(f, g), None);
    }

    #[test]
    fn final_objects() {
        assert_eq!(has_final_object(&FinCat::terminal()), Some(0));
        let arrow = FinCat::ordinal(1);
        assert_eq!(has_final_object(&arrow).map(|z| arrow.object_id(z).to_string()), Some("1".into()));
        assert_eq!(has_final_object(&FinCat::discrete(&["a", "b"])), None);
        assert_eq!(has_final_object(&z2()), None);
        // chaotic category on two objects: both final, first wins
        let chaotic = FinCat::preorder(&["a", "b"], |_, _| true).unwrap();
        assert_eq!(has_final_object(&chaotic), Some(0));
    }

    #[test]
    fn non_associative_table_is_caught() {
        // Z2 with an adjoined zero is a monoid; changing x·y breaks associativity
        let t = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]];
        assert!(FinCat::monoid(&["e", "x", "y"], &t, 0).is_ok());
        let bad = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 2]];
        assert!(matches!(FinCat::monoid(&["e", "x", "y"], &bad, 0), Err(Error::Contract(_))));
    }

    #[test]
    fn from_parts_requires_total_composition() {
        let objects = vec!["a".to_string()];
        let arrows = vec![("1".to_string(), "a".to_string(), "a".to_string()), ("s".into(), "a".into(), "a".into())];
        let identity = vec![("a".to_string(), "1".to_string())];
        let compose = vec![("1".to_string(), "1".to_string(), "1".to_string()), ("1".into(), "s".into(), "s".into()), ("s".into(), "1".into(), "s".into())];
        assert!(matches!(
            FinCat::from_parts(objects.clone(), arrows.clone(), identity.clone(), compose.clone()),
            Err(Error::Malformed(_))
        ));
        let mut full = compose;
        full.push(("s".into(), "s".into(), "1".into()));
        let c = FinCat::from_parts(objects, arrows, identity, full).unwrap();
        c.check_laws().unwrap();
        assert_eq!(c.arrow_count(), 2);
    }

    #[test]
    fn opposite_swaps_endpoints() {
        let c = FinCat::ordinal(1);
        let op = c.opposite();
        let f = op.arrow_index("0<=1").unwrap();
        assert_eq!(op.object_id(op.src(f)), "1");
        assert_eq!(has_final_object(&op).map(|z| op.object_id(z).to_string()), Some("0".into()));
    }
}
