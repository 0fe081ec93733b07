use std::ops::ControlFlow;
use std::sync::Arc;

use super::FinCat;
use crate::csp::{Csp, Equation};
use crate::error::{Error, Result};

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    objects: Vec<usize>,
    arrows: Vec<usize>,
}

impl CatFunctor {
    /// Checked constructor.
    pub fn new(source: Arc<FinCat>, target: Arc<FinCat>, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, objects, arrows)?;
        if let Some(msg) = f.first_defect() {
            return Err(Error::Contract(msg));
        }
        Ok(f)
    }

    /// Shape-checked constructor without the functor-law check.
    pub fn new_unchecked(source: Arc<FinCat>, target: Arc<FinCat>, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        if objects.len() != source.object_count() || arrows.len() != source.arrow_count() {
            return Err(Error::Malformed("functor tables do not cover the source".into()));
        }
        if objects.iter().any(|&o| o >= target.object_count()) || arrows.iter().any(|&f| f >= target.arrow_count()) {
            return Err(Error::Malformed("functor points outside the target".into()));
        }
        Ok(Self { source, target, objects, arrows })
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let objects = (0..c.object_count()).collect();
        let arrows = (0..c.arrow_count()).collect();
        Self { source: c.clone(), target: c, objects, arrows }
    }

    /// The functor to the terminal category.
    pub fn to_terminal(c: Arc<FinCat>, terminal: Arc<FinCat>) -> Result<Self> {
        if terminal.object_count() != 1 || terminal.arrow_count() != 1 {
            return Err(Error::Domain("target is not terminal".into()));
        }
        Self::new(c.clone(), terminal, vec![0; c.object_count()], vec![0; c.arrow_count()])
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn object(&self, a: usize) -> usize {
        self.objects[a]
    }

    pub fn arrow(&self, f: usize) -> usize {
        self.arrows[f]
    }

    pub fn object_table(&self) -> &[usize] {
        &self.objects
    }

    pub fn arrow_table(&self) -> &[usize] {
        &self.arrows
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CatFunctor) -> Result<CatFunctor> {
        if *self.target != *other.source {
            return Err(Error::Contract("composite of non-composable functors".into()));
        }
        Ok(Self {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&o| other.objects[o]).collect(),
            arrows: self.arrows.iter().map(|&f| other.arrows[f]).collect(),
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        let bij = |t: &[usize], n: usize| {
            let mut seen = vec![false; n];
            t.len() == n && t.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        };
        bij(&self.objects, self.target.object_count()) && bij(&self.arrows, self.target.arrow_count())
    }

    /// Description of the first violated functor law, if any.
    pub fn first_defect(&self) -> Option<String> {
        let (s, t) = (&*self.source, &*self.target);
        for a in 0..s.object_count() {
            if self.arrows[s.identity(a)] != t.identity(self.objects[a]) {
                return Some(format!("identity of `{}` is not preserved", s.object_id(a)));
            }
        }
        for f in 0..s.arrow_count() {
            let ff = self.arrows[f];
            if t.src(ff) != self.objects[s.src(f)] || t.dst(ff) != self.objects[s.dst(f)] {
                return Some(format!("arrow `{}` is sent to an arrow of the wrong type", s.arrow_id(f)));
            }
        }
        for (g, f, gf) in s.composition_triples() {
            if t.compose(self.arrows[g], self.arrows[f]) != Some(self.arrows[gf]) {
                return Some(format!("composite of `{}` after `{}` is not preserved", s.arrow_id(g), s.arrow_id(f)));
            }
        }
        None
    }

    pub fn is_functor(&self) -> bool {
        self.first_defect().is_none()
    }
}

const SRC: usize = 0;
const DST: usize = 1;
const ID: usize = 2;
const COMP: usize = 3;

/// Calls `visit(objects, arrows)` for every functor `a → b` (bijective on
/// objects and arrows when `injective`), in lexicographic order of the
/// object table followed by the arrow table restricted to search order.
pub fn for_each_functor<V>(a: &FinCat, b: &FinCat, injective: bool, mut visit: V)
where
    V: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    let no = a.object_count();
    // identities first, then indecomposable arrows, then the rest: composites
    // are then forced by their factors
    let mut order: Vec<usize> = (0..a.arrow_count()).filter(|&f| a.is_identity(f)).collect();
    let mut decomposable = vec![false; a.arrow_count()];
    for (g, f, gf) in a.composition_triples() {
        if !a.is_identity(g) && !a.is_identity(f) {
            decomposable[gf] = true;
        }
    }
    order.extend((0..a.arrow_count()).filter(|&f| !a.is_identity(f) && !decomposable[f]));
    order.extend((0..a.arrow_count()).filter(|&f| !a.is_identity(f) && decomposable[f]));
    let mut var_of = vec![0; a.arrow_count()];
    for (k, &f) in order.iter().enumerate() {
        var_of[f] = no + k;
    }
    let mut csp = Csp {
        domains: vec![(0..b.object_count()).collect(); no],
        ..Default::default()
    };
    csp.domains.extend(std::iter::repeat_n((0..b.arrow_count()).collect(), a.arrow_count()));
    for f in 0..a.arrow_count() {
        let v = var_of[f];
        csp.equations.push(Equation { x: v, y: v, z: a.src(f), op: SRC });
        csp.equations.push(Equation { x: v, y: v, z: a.dst(f), op: DST });
    }
    for o in 0..no {
        csp.equations.push(Equation { x: o, y: o, z: var_of[a.identity(o)], op: ID });
    }
    for (g, f, gf) in a.composition_triples() {
        if !a.is_identity(g) && !a.is_identity(f) {
            csp.equations.push(Equation { x: var_of[g], y: var_of[f], z: var_of[gf], op: COMP });
        }
    }
    if injective {
        let mut groups = vec![0; no];
        groups.extend(std::iter::repeat_n(1, a.arrow_count()));
        csp.distinct_groups = Some(groups);
    }
    let op = |op: usize, x: usize, y: usize| match op {
        SRC => Some(b.src(x)),
        DST => Some(b.dst(x)),
        ID => Some(b.identity(x)),
        _ => b.compose(x, y),
    };
    let mut arrows = vec![0; a.arrow_count()];
    csp.solve(op, |vals| {
        for (f, &v) in var_of.iter().enumerate() {
            arrows[f] = vals[v];
        }
        visit(&vals[..no], &arrows)
    });
}

/// All functors `a → b`, sorted by object table then arrow table.
pub fn enumerate_functors(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Vec<CatFunctor> {
    let mut tables = Vec::new();
    for_each_functor(a, b, false, |o, f| {
        tables.push((o.to_vec(), f.to_vec()));
        ControlFlow::Continue(())
    });
    tables.sort();
    tables
        .into_iter()
        .map(|(o, f)| CatFunctor { source: a.clone(), target: b.clone(), objects: o, arrows: f })
        .collect()
}

/// An isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<CatFunctor> {
    if a.object_count() != b.object_count() || a.arrow_count() != b.arrow_count() {
        return None;
    }
    let mut found = None;
    for_each_functor(a, b, true, |o, f| {
        found = Some((o.to_vec(), f.to_vec()));
        ControlFlow::Break(())
    });
    found.map(|(o, f)| CatFunctor { source: a.clone(), target: b.clone(), objects: o, arrows: f })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all object and arrow assignments.
    fn brute_force_count(a: &Arc<FinCat>, b: &Arc<FinCat>) -> usize {
        let mut count = 0;
        let no = a.object_count();
        let na = a.arrow_count();
        let total_o = b.object_count().pow(no as u32);
        let total_a = b.arrow_count().pow(na as u32);
        for oi in 0..total_o {
            let objects: Vec<usize> = (0..no).map(|k| oi / b.object_count().pow(k as u32) % b.object_count()).collect();
            for ai in 0..total_a {
                let arrows: Vec<usize> = (0..na).map(|k| ai / b.arrow_count().pow(k as u32) % b.arrow_count()).collect();
                if CatFunctor::new(a.clone(), b.clone(), objects.clone(), arrows).is_ok() {
                    count += 1;
                }
            }
        }
        count
    }

    fn z2() -> Arc<FinCat> {
        Arc::new(FinCat::monoid(&["e", "s"], &[vec![0, 1], vec![1, 0]], 0).unwrap())
    }

    #[test]
    fn counts_match_brute_force() {
        let cats = vec![
            Arc::new(FinCat::terminal()),
            Arc::new(FinCat::ordinal(1)),
            Arc::new(FinCat::ordinal(2)),
            Arc::new(FinCat::discrete(&["a", "b"])),
            z2(),
        ];
        for a in &cats {
            for b in &cats {
                assert_eq!(enumerate_functors(a, b).len(), brute_force_count(a, b));
            }
        }
    }

    #[test]
    fn functors_between_ordinals_are_monotone_maps() {
        let a = Arc::new(FinCat::ordinal(2));
        let b = Arc::new(FinCat::ordinal(2));
        // monotone self-maps of [2]
        assert_eq!(enumerate_functors(&a, &b).len(), 10);
    }

    #[test]
    fn isomorphism_search() {
        let chaotic = Arc::new(FinCat::preorder(&["a", "b"], |_, _| true).unwrap());
        let arrow = Arc::new(FinCat::ordinal(1));
        let iso = find_isomorphism(&chaotic, &chaotic).unwrap();
        assert!(iso.is_isomorphism() && iso.is_functor());
        assert!(find_isomorphism(&arrow, &Arc::new(FinCat::discrete(&["x", "y", "z"]))).is_none());
        assert!(find_isomorphism(&arrow, &arrow.clone()).is_some());
    }

    #[test]
    fn composite_functor() {
        let a = Arc::new(FinCat::ordinal(1));
        let t = Arc::new(FinCat::terminal());
        let f = CatFunctor::to_terminal(a.clone(), t.clone()).unwrap();
        let g = CatFunctor::identity(t);
        assert!(f.then(&g).unwrap().is_functor());
    }
}
