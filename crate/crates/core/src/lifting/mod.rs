//! Lifting problems, right lifting properties against finite generator
//! sets, bounded small-object factorization and homotopy pushouts.

mod factorize;
mod hpushout;

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

pub use factorize::{replay, small_object_factorize, Attachment, FactorizationReport};
pub use hpushout::{homotopy_pushout, is_homotopy_cocartesian, HomotopyPushout, Square};

use crate::category::{for_each_functor, CatFunctor, FinCat};
use crate::error::{Error, Result};
use crate::simplicial::{for_each_map, MapConstraints, SimplicialMap, SimplicialSet};
use crate::twocat::{for_each_two_functor, Fin2Cat, TwoFunctor};

/// Morphisms of an ambient category in which lifting problems are searched
/// exhaustively.
pub trait Liftable: Clone + Sized {
    type Object;

    fn source(&self) -> &Arc<Self::Object>;
    fn target(&self) -> &Arc<Self::Object>;
    /// `other ∘ self`.
    fn then(&self, other: &Self) -> Result<Self>;
    /// Equality of underlying assignments.
    fn agrees(&self, other: &Self) -> bool;
    /// Calls `visit` on every `h: from → to` with `fix(h)` as a cheap
    /// necessary condition pre-filter; returns on the first `Break`.
    fn for_each(from: &Arc<Self::Object>, to: &Arc<Self::Object>, visit: &mut dyn FnMut(Self) -> ControlFlow<()>);
    /// Searches for `h: B → X` with `h ∘ i = u` and `p ∘ h = v`.
    fn search_lift(problem: &LiftingProblem<Self>) -> Option<Self> {
        let mut found = None;
        Self::for_each(problem.i.target(), problem.u.target(), &mut |h| {
            if problem.is_filler(&h) {
                found = Some(h);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        found
    }
}

/// A commutative square
/// ```text
///   A --u--> X
///   |        |
///   i        p
///   v        v
///   B --v--> Y
/// ```
#[derive(Clone, Debug)]
pub struct LiftingProblem<M> {
    pub i: M,
    pub p: M,
    pub u: M,
    pub v: M,
}

impl<M: Liftable> LiftingProblem<M> {
    /// Checks typing and `p ∘ u = v ∘ i`.
    pub fn new(i: M, p: M, u: M, v: M) -> Result<Self> {
        let pu = u.then(&p)?;
        let vi = i.then(&v)?;
        if !pu.agrees(&vi) {
            return Err(Error::Contract("lifting square does not commute".into()));
        }
        Ok(Self { i, p, u, v })
    }

    pub fn is_filler(&self, h: &M) -> bool {
        matches!(self.i.then(h), Ok(hi) if hi.agrees(&self.u)) && matches!(h.then(&self.p), Ok(ph) if ph.agrees(&self.v))
    }
}

/// A filler for the square, found in canonical order, or `None` after an
/// exhaustive search.
pub fn find_lift<M: Liftable>(problem: &LiftingProblem<M>) -> Option<M> {
    M::search_lift(problem)
}

/// Outcome of [`has_rlp`].
#[derive(Clone, Debug)]
pub struct RlpReport<M> {
    pub holds: bool,
    pub squares_checked: usize,
    /// The first square without a filler, by generator then canonical
    /// order of `(v, u)`.
    pub counterexample: Option<(usize, LiftingProblem<M>)>,
}

/// Every commutative square from `i` to `p`, in canonical order: bottom
/// maps first, then top maps.
pub fn squares<M: Liftable>(i: &M, p: &M, visit: &mut dyn FnMut(LiftingProblem<M>) -> ControlFlow<()>) {
    M::for_each(i.target(), p.target(), &mut |v| {
        let Ok(vi) = i.then(&v) else { return ControlFlow::Continue(()) };
        let mut flow = ControlFlow::Continue(());
        M::for_each(i.source(), p.source(), &mut |u| {
            if matches!(u.then(p), Ok(pu) if pu.agrees(&vi)) {
                flow = visit(LiftingProblem { i: i.clone(), p: p.clone(), u, v: v.clone() });
                return flow;
            }
            ControlFlow::Continue(())
        });
        flow
    })
}

/// Whether `p` has the right lifting property against every generator.
pub fn has_rlp<M: Liftable>(p: &M, generators: &[M]) -> RlpReport<M> {
    let mut checked = 0;
    for (k, i) in generators.iter().enumerate() {
        let mut bad = None;
        squares(i, p, &mut |sq| {
            checked += 1;
            if find_lift(&sq).is_none() {
                bad = Some(sq);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some(sq) = bad {
            return RlpReport { holds: false, squares_checked: checked, counterexample: Some((k, sq)) };
        }
    }
    RlpReport { holds: true, squares_checked: checked, counterexample: None }
}

/// Printable summary of a simplicial lifting problem.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SquareSummary {
    /// `(source id, image id)` for the nondegenerate cells of `A` under `u`.
    pub top: Vec<(String, String)>,
    pub bottom: Vec<(String, String)>,
}

pub(crate) fn nondegenerate_assignment(f: &SimplicialMap) -> Vec<(String, String)> {
    let (s, t) = (f.source(), f.target());
    (0..=f.bound())
        .flat_map(|n| s.nondegenerate(n).map(move |x| (s.id(n, x).to_string(), t.id(n, f.apply(n, x)).to_string())))
        .collect()
}

impl LiftingProblem<SimplicialMap> {
    pub fn summary(&self) -> SquareSummary {
        SquareSummary { top: nondegenerate_assignment(&self.u), bottom: nondegenerate_assignment(&self.v) }
    }
}

impl Liftable for SimplicialMap {
    type Object = SimplicialSet;

    fn source(&self) -> &Arc<SimplicialSet> {
        SimplicialMap::source(self)
    }

    fn target(&self) -> &Arc<SimplicialSet> {
        SimplicialMap::target(self)
    }

    fn then(&self, other: &Self) -> Result<Self> {
        SimplicialMap::then(self, other)
    }

    fn agrees(&self, other: &Self) -> bool {
        self.levels() == other.levels()
    }

    fn for_each(from: &Arc<SimplicialSet>, to: &Arc<SimplicialSet>, visit: &mut dyn FnMut(Self) -> ControlFlow<()>) {
        for_each_map(from, to, &MapConstraints::default(), |levels| {
            visit(SimplicialMap::new_unchecked(from.clone(), to.clone(), levels.to_vec()).unwrap())
        });
    }

    /// Cells in the image of `i` are pinned to `u`; the others are searched
    /// with `p ∘ h = v` checked cell by cell.
    fn search_lift(problem: &LiftingProblem<Self>) -> Option<Self> {
        let (i, p, u, v) = (&problem.i, &problem.p, &problem.u, &problem.v);
        let (b, x) = (i.target(), u.target());
        let bound = b.dim_bound().min(x.dim_bound());
        let mut fixed: Vec<Vec<Option<usize>>> = (0..=bound).map(|n| vec![None; b.level_size(n)]).collect();
        for n in 0..=bound.min(i.bound()).min(u.bound()) {
            for a in 0..i.source().level_size(n) {
                let slot = &mut fixed[n][i.apply(n, a)];
                match *slot {
                    Some(y) if y != u.apply(n, a) => return None,
                    _ => *slot = Some(u.apply(n, a)),
                }
            }
        }
        let filter = |n: usize, c: usize, y: usize| n > p.bound() || n > v.bound() || p.apply(n, y) == v.apply(n, c);
        let constraints = MapConstraints { fixed: Some(fixed), filter: Some(&filter), injective: false };
        let mut found = None;
        for_each_map(b, x, &constraints, |levels| {
            let h = SimplicialMap::new_unchecked(b.clone(), x.clone(), levels.to_vec()).unwrap();
            if problem.is_filler(&h) {
                found = Some(h);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        found
    }
}

impl Liftable for CatFunctor {
    type Object = FinCat;

    fn source(&self) -> &Arc<FinCat> {
        CatFunctor::source(self)
    }

    fn target(&self) -> &Arc<FinCat> {
        CatFunctor::target(self)
    }

    fn then(&self, other: &Self) -> Result<Self> {
        CatFunctor::then(self, other)
    }

    fn agrees(&self, other: &Self) -> bool {
        self.object_table() == other.object_table() && self.arrow_table() == other.arrow_table()
    }

    fn for_each(from: &Arc<FinCat>, to: &Arc<FinCat>, visit: &mut dyn FnMut(Self) -> ControlFlow<()>) {
        for_each_functor(from, to, false, |o, f| {
            visit(CatFunctor::new_unchecked(from.clone(), to.clone(), o.to_vec(), f.to_vec()).unwrap())
        });
    }
}

impl Liftable for TwoFunctor {
    type Object = Fin2Cat;

    fn source(&self) -> &Arc<Fin2Cat> {
        TwoFunctor::source(self)
    }

    fn target(&self) -> &Arc<Fin2Cat> {
        TwoFunctor::target(self)
    }

    fn then(&self, other: &Self) -> Result<Self> {
        TwoFunctor::then(self, other)
    }

    fn agrees(&self, other: &Self) -> bool {
        self.object_table() == other.object_table() && self.one_tables() == other.one_tables() && self.two_tables() == other.two_tables()
    }

    fn for_each(from: &Arc<Fin2Cat>, to: &Arc<Fin2Cat>, visit: &mut dyn FnMut(Self) -> ControlFlow<()>) {
        for_each_two_functor(from, to, |o, one, two| {
            visit(TwoFunctor::new_unchecked(from.clone(), to.clone(), o.to_vec(), one.to_vec(), two.to_vec()).unwrap())
        });
    }
}

/// The boundary inclusions `∂Δₙ ↪ Δₙ` for `n ≤ n_max`, at the given bound.
pub fn boundary_inclusions(n_max: usize, bound: usize) -> Result<Vec<SimplicialMap>> {
    use crate::simplicial::standard::{boundary, simplex};
    (0..=n_max)
        .map(|n| SimplicialMap::inclusion(Arc::new(boundary(n, bound)?), Arc::new(simplex(n, bound)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, simplex};

    fn pt(bound: usize) -> Arc<SimplicialSet> {
        Arc::new(simplex(0, bound).unwrap())
    }

    #[test]
    fn interval_to_point_lifts_boundary() {
        let i = boundary_inclusions(1, 2).unwrap().pop().unwrap();
        let d1 = Arc::new(simplex(1, 2).unwrap());
        let p = SimplicialMap::to_point(d1.clone(), pt(2)).unwrap();
        let v = SimplicialMap::to_point(i.target().clone(), pt(2)).unwrap();
        let mut seen = 0;
        SimplicialMap::for_each(i.source(), &d1, &mut |u| {
            let sq = LiftingProblem::new(i.clone(), p.clone(), u.clone(), v.clone()).unwrap();
            let decreasing = u.apply(0, 0) > u.apply(0, 1);
            assert_eq!(find_lift(&sq).is_some(), !decreasing);
            seen += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(seen, 4);
    }

    #[test]
    fn identity_generator_lifts_to_top() {
        let d1 = Arc::new(simplex(1, 2).unwrap());
        let id = SimplicialMap::identity(d1.clone());
        let u = SimplicialMap::to_point(d1.clone(), pt(2)).unwrap();
        let p = SimplicialMap::identity(pt(2));
        let sq = LiftingProblem::new(id, p, u.clone(), u.clone()).unwrap();
        assert!(find_lift(&sq).unwrap().agrees(&u));
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let i = boundary_inclusions(1, 1).unwrap().pop().unwrap();
        let d1 = i.target().clone();
        let p = SimplicialMap::identity(d1.clone());
        let mut first = None;
        SimplicialMap::for_each(i.source(), &d1, &mut |m| {
            first = Some(m);
            ControlFlow::Break(())
        });
        let u = first.unwrap();
        assert_eq!(u.levels()[0], vec![0, 0]);
        let v = SimplicialMap::identity(d1);
        assert!(matches!(LiftingProblem::new(i, p, u, v), Err(Error::Contract(_))));
    }

    #[test]
    fn rlp_counterexample_is_decreasing_edge() {
        let gens = boundary_inclusions(2, 2).unwrap();
        let d1 = Arc::new(simplex(1, 2).unwrap());
        let p = SimplicialMap::to_point(d1, pt(2)).unwrap();
        let r = has_rlp(&p, &gens);
        assert!(!r.holds);
        let (k, sq) = r.counterexample.unwrap();
        assert_eq!(k, 1);
        assert_eq!(sq.u.levels()[0], vec![1, 0]);
    }

    #[test]
    fn rlp_of_point_and_identity() {
        let gens = boundary_inclusions(2, 2).unwrap();
        assert!(has_rlp(&SimplicialMap::identity(pt(2)), &gens).holds);
        let x = Arc::new(boundary(2, 2).unwrap());
        assert!(has_rlp(&SimplicialMap::identity(x), &gens).holds);
    }

    #[test]
    fn functor_lifting() {
        // the object inclusion {0, 1} → [1] against [1] → [0]
        let two = Arc::new(FinCat::discrete(&["0", "1"]));
        let arrow = Arc::new(FinCat::ordinal(2));
        let point = Arc::new(FinCat::terminal());
        let i = CatFunctor::new(two.clone(), arrow.clone(), vec![0, 1], vec![arrow.identity(0), arrow.identity(1)]).unwrap();
        let p = CatFunctor::to_terminal(arrow.clone(), point.clone()).unwrap();
        let r = has_rlp(&p, &[i]);
        assert!(!r.holds);
        let (_, sq) = r.counterexample.unwrap();
        assert_eq!(sq.u.object_table(), &[1, 0]);
    }
}
