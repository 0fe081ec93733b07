//! Exact homology, fundamental groups and graded weak-equivalence evidence.

mod chains;
mod evidence;
mod homology;
mod matrix;
mod pi;
mod scalar;
mod smith;
mod sparse;

pub use chains::{mapping_cone, normalized_chains, ChainComplex};
pub use evidence::{w2_evidence, weak_equivalence_evidence, Check, EvidenceReport, Verdict};
pub use homology::{complex_homology, homology, AbelianGroup, HomologyReport};
pub use matrix::Matrix;
pub use pi::{
    free_reduce, invert, pi0, pi1_presentation, pi1_presentation_with_budget, Components, Letter, Presentation, Word,
    TIETZE_BUDGET,
};
pub use scalar::Scalar;
pub use smith::{smith_generic, smith_normal_form, SmithForm};
pub use sparse::SparseMatrix;

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::simplicial::standard::{boundary, simplex};
    use crate::simplicial::{coproduct, SimplicialMap, SimplicialSet};
    use crate::twocat::{delta_tilde, iota, Fin2Cat, TwoFunctor};

    #[test]
    fn identity_passes_everything() {
        for x in [boundary(2, 4).unwrap(), simplex(2, 4).unwrap(), boundary(3, 4).unwrap()] {
            let r = weak_equivalence_evidence(&SimplicialMap::identity(Arc::new(x)), 2).unwrap();
            assert_eq!(r.verdict(), Verdict::Pass, "{r:?}");
            assert_eq!(r.checks.len(), 5);
        }
    }

    #[test]
    fn fold_fails_at_pi0() {
        let point = Arc::new(simplex(0, 3).unwrap());
        let two = coproduct(&[point.clone(), point.clone()], 3);
        let fold = SimplicialMap::to_point(two.object.clone(), point).unwrap();
        let r = weak_equivalence_evidence(&fold, 1).unwrap();
        let c = r.check("pi0").unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(c.detail.contains("both map"), "{}", c.detail);
        assert_eq!(r.verdict(), Verdict::Fail);
    }

    #[test]
    fn circle_to_point_fails_in_degree_one() {
        let circle = Arc::new(boundary(2, 3).unwrap());
        let point = Arc::new(simplex(0, 3).unwrap());
        let r = weak_equivalence_evidence(&SimplicialMap::to_point(circle, point).unwrap(), 1).unwrap();
        assert_eq!(r.check("pi0").unwrap().verdict, Verdict::Pass);
        assert_eq!(r.check("H0").unwrap().verdict, Verdict::Pass);
        assert_eq!(r.check("H1").unwrap().verdict, Verdict::Fail);
        assert_eq!(r.check("pi1").unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn simplex_to_point_passes() {
        let x = Arc::new(simplex(3, 4).unwrap());
        let point = Arc::new(simplex(0, 4).unwrap());
        let r = weak_equivalence_evidence(&SimplicialMap::to_point(x, point).unwrap(), 2).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{r:?}");
    }

    #[test]
    fn bound_is_checked() {
        let x = Arc::new(simplex(1, 2).unwrap());
        assert_eq!(weak_equivalence_evidence(&SimplicialMap::identity(x), 1).unwrap_err(), crate::Error::Bound { requested: 3, bound: 2 });
    }

    #[test]
    fn torsion_shows_up() {
        // one vertex, one loop, one disc glued along the loop twice
        let c = ChainComplex::new(
            vec![vec!["v".into()], vec!["a".into()], vec!["D".into()], vec![]],
            vec![
                SparseMatrix::zeros(0, 1),
                SparseMatrix::zeros(1, 1),
                SparseMatrix::from_triples(1, 1, [(0, 0, 2)]),
                SparseMatrix::zeros(1, 0),
            ],
        );
        let h = complex_homology(&c, 2).unwrap();
        assert_eq!(h.groups[1].torsion, vec![num_bigint::BigInt::from(2)]);
        assert!(h.groups[2].is_zero());
    }

    #[test]
    fn delta_tilde_to_point_passes() {
        let u = TwoFunctor::to_terminal(Arc::new(delta_tilde(2)), Arc::new(Fin2Cat::terminal())).unwrap();
        let r = w2_evidence(&u, 4, 2).unwrap();
        assert_eq!(r.verdict(), Verdict::Pass, "{r:?}");
    }

    #[test]
    fn identity_two_functor_passes() {
        let u = TwoFunctor::identity(Arc::new(delta_tilde(2)));
        assert_eq!(w2_evidence(&u, 3, 1).unwrap().verdict(), Verdict::Pass);
    }

    #[test]
    fn object_inclusion_fails_at_pi0() {
        let disc = Arc::new(iota(&crate::category::FinCat::discrete(&["p", "q"])));
        let point = Arc::new(Fin2Cat::terminal());
        let u = TwoFunctor::new(point, disc, vec![0], vec![vec![0]], vec![vec![0]]).unwrap();
        let r = w2_evidence(&u, 3, 1).unwrap();
        assert_eq!(r.check("pi0").unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn empty_sets() {
        let e = Arc::new(SimplicialSet::empty(3));
        assert_eq!(weak_equivalence_evidence(&SimplicialMap::identity(e), 1).unwrap().verdict(), Verdict::Pass);
    }
}
