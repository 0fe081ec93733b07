//! The left adjoints `c` and `c₂` as finite presentations, and their
//! bounded realization.

mod presentation;
mod realize;
mod rewrite;

use std::sync::Arc;

pub use presentation::{
    c2_of, c2_of_map, c_of, c_of_map, CatPresentation, Generator, Pasting, Path, Presentation, PresentedMap,
    TwoCatPresentation, TwoGenerator, Whiskered,
};
pub use realize::{realize, realize_2, Realized};
pub use rewrite::{complete, normal_form, normal_forms, shortlex, Budget, Completion, NormalForms, Rule, Word};

use crate::category::FinCat;
use crate::error::{Error, Result};
use crate::simplicial::standard::{boundary, simplex};
use crate::simplicial::SimplicialMap;
use crate::subdivision::{sd, sd_map};
use crate::twocat::Fin2Cat;

/// Realization of either kind of presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    Cat(Realized<FinCat>),
    TwoCat(Realized<Fin2Cat>),
}

pub fn realize_any(p: &Presentation, budget: &Budget) -> Result<Realization> {
    Ok(match p {
        Presentation::Cat(q) => Realization::Cat(realize(q, budget)?),
        Presentation::TwoCat(q) => Realization::TwoCat(realize_2(q, budget)?),
    })
}

/// The images of `Sd²(∂Δₙ) ↪ Sd²(Δₙ)` under `c` (level 1) or `c₂`
/// (level 2), for `n ≤ n_max`.
pub fn thomason_generators(n_max: usize, level: usize) -> Result<Vec<PresentedMap>> {
    if !(1..=2).contains(&level) {
        return Err(Error::Domain(format!("level must be 1 or 2, got {level}")));
    }
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let b = Arc::new(boundary(n, n)?);
        let s = Arc::new(simplex(n, n)?);
        let i = SimplicialMap::inclusion(b.clone(), s.clone())?;
        let (sb, ss) = (sd(&b), sd(&s));
        let once = sd_map(&i, &sb, &ss)?;
        let (ssb, sss) = (sd(&sb.object), sd(&ss.object));
        let twice = sd_map(&once, &ssb, &sss)?;
        out.push(if level == 1 { c_of_map(&twice)? } else { c2_of_map(&twice)? });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialSet;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn point_presentation() {
        let p = c_of(&simplex(0, 0).unwrap());
        assert_eq!(p.objects.len(), 1);
        assert!(p.generators.is_empty());
        let q = c2_of(&simplex(0, 0).unwrap());
        assert!(q.one_generators.is_empty() && q.two_generators.is_empty());
        let c = realize_2(&q, &b()).unwrap().finite().unwrap();
        assert_eq!((c.object_count(), c.one_cell_count(), c.two_cell_count()), (1, 1, 1));
    }

    #[test]
    fn boundary_of_triangle_is_free() {
        let p = c_of(&boundary(2, 2).unwrap());
        assert_eq!(p.generators.len(), 3);
        assert!(p.relations.is_empty());
        let c = realize(&p, &b()).unwrap().finite().unwrap();
        // three identities, three generators, one composite
        assert_eq!(c.arrow_count(), 7);
    }

    #[test]
    fn idempotent_monoid() {
        let p = CatPresentation {
            objects: vec!["*".into()],
            generators: vec![Generator { id: "e".into(), src: 0, dst: 0 }],
            relations: vec![(Path { src: 0, dst: 0, arrows: vec![0, 0] }, Path { src: 0, dst: 0, arrows: vec![0] })],
        };
        let r = realize(&p, &b()).unwrap();
        let Realized::Finite { value, rules } = r else { panic!("expected finite") };
        assert_eq!(value.arrow_count(), 2);
        assert_eq!(rules, vec!["e∘e -> e".to_string()]);
    }

    #[test]
    fn free_loop_is_infinite() {
        let p = CatPresentation {
            objects: vec!["*".into()],
            generators: vec![Generator { id: "t".into(), src: 0, dst: 0 }],
            relations: Vec::new(),
        };
        assert!(matches!(realize(&p, &b()).unwrap(), Realized::Infinite { .. }));
    }

    #[test]
    fn two_simplex_realizes_to_delta_tilde() {
        for n in 0..=3 {
            let p = c2_of(&simplex(n, n.max(3)).unwrap());
            let c = realize_2(&p, &b()).unwrap().finite().unwrap();
            let d = crate::twocat::delta_tilde(n);
            assert_eq!(c.one_cell_count(), d.one_cell_count(), "n = {n}");
            assert_eq!(c.two_cell_count(), d.two_cell_count(), "n = {n}");
        }
    }

    #[test]
    fn thomason_interval_level_two() {
        let gens = thomason_generators(1, 2).unwrap();
        assert_eq!(gens.len(), 2);
        let Presentation::TwoCat(src) = &gens[1].source else { panic!() };
        let Presentation::TwoCat(tgt) = &gens[1].target else { panic!() };
        assert_eq!(src.objects.len(), 2);
        assert!(src.one_generators.is_empty());
        assert_eq!(tgt.one_generators.len(), 4);
        assert!(tgt.two_generators.is_empty());
        let Presentation::TwoCat(empty) = &gens[0].source else { panic!() };
        assert!(empty.objects.is_empty());
    }

    #[test]
    fn degenerate_edges_are_identities() {
        let x: SimplicialSet = simplex(1, 2).unwrap();
        let p = c_of(&x);
        assert_eq!(p.generators.len(), 1);
        assert!(p.relations.is_empty());
    }
}
