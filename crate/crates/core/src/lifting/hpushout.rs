use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::{weak_equivalence_evidence, EvidenceReport};
use crate::simplicial::standard::simplex;
use crate::simplicial::{product, product_projections, pushout, SimplicialMap, SimplicialSet};

/// A commutative square `h ∘ f = k ∘ g` under `A`:
/// ```text
///   A --f--> X
///   |        |
///   g        h
///   v        v
///   Y --k--> Z
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub f: SimplicialMap,
    pub g: SimplicialMap,
    pub h: SimplicialMap,
    pub k: SimplicialMap,
}

impl Square {
    pub fn new(f: SimplicialMap, g: SimplicialMap, h: SimplicialMap, k: SimplicialMap) -> Result<Self> {
        if f.then(&h)?.levels() != g.then(&k)?.levels() {
            return Err(Error::Contract("square does not commute".into()));
        }
        Ok(Self { f, g, h, k })
    }

    /// The same square with the two legs exchanged.
    pub fn flip(&self) -> Self {
        Self { f: self.g.clone(), g: self.f.clone(), h: self.k.clone(), k: self.h.clone() }
    }
}

/// The double mapping cylinder `X ∪ (A × Δ₁) ∪ Y` of a span.
#[derive(Clone, Debug)]
pub struct HomotopyPushout {
    pub object: Arc<SimplicialSet>,
    pub from_x: SimplicialMap,
    pub from_y: SimplicialMap,
    pub from_cylinder: SimplicialMap,
    cylinder_projection: SimplicialMap,
    first: crate::simplicial::Pushout,
    second: crate::simplicial::Pushout,
}

impl HomotopyPushout {
    /// The canonical comparison map to the corner of a square on the same
    /// span: the cylinder is collapsed onto `A`.
    pub fn comparison(&self, sq: &Square) -> Result<SimplicialMap> {
        let diagonal = sq.f.then(&sq.h)?;
        let on_cylinder = self.cylinder_projection.then(&diagonal)?;
        let on_first = self.first.copair(&on_cylinder, &sq.h)?;
        self.second.copair(&on_first, &sq.k)
    }
}

/// `A → A × Δ₁`, `a ↦ (a, e)` with `e` the constant simplex at vertex `end`.
fn end_inclusion(a: &Arc<SimplicialSet>, interval: &SimplicialSet, cyl: &Arc<SimplicialSet>, end: usize) -> Result<SimplicialMap> {
    let bound = cyl.dim_bound();
    let top = interval.nondegenerate(1).next().expect("Δ₁ has an edge");
    let levels = (0..=bound)
        .map(|n| {
            let c = interval.apply_monotone(1, top, &vec![end; n + 1]);
            (0..a.level_size(n))
                .map(|x| cyl.index_of(n, &format!("({},{})", a.id(n, x), interval.id(n, c))).expect("product cell"))
                .collect()
        })
        .collect();
    SimplicialMap::new(a.clone(), cyl.clone(), levels)
}

/// The homotopy pushout of `X ←f– A –g→ Y`.
pub fn homotopy_pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<HomotopyPushout> {
    if **f.source() != **g.source() {
        return Err(Error::Contract("span legs must share their source".into()));
    }
    let a = f.source().clone();
    let bound = f.bound().min(g.bound());
    if bound < 1 {
        return Err(Error::Bound { requested: 1, bound });
    }
    let a = if a.dim_bound() == bound { a } else { Arc::new(a.truncate(bound)) };
    let interval = Arc::new(simplex(1, bound)?);
    let cyl = Arc::new(product(&a, &interval));
    let (proj, _) = product_projections(&a, &interval, &cyl);
    let i0 = end_inclusion(&a, &interval, &cyl, 0)?;
    let i1 = end_inclusion(&a, &interval, &cyl, 1)?;
    let restrict = |m: &SimplicialMap| -> Result<SimplicialMap> {
        if m.source().dim_bound() == bound && m.target().dim_bound() == bound {
            return Ok(m.clone());
        }
        let t = Arc::new(m.target().truncate(bound));
        SimplicialMap::new(a.clone(), t, m.levels()[..=bound].to_vec())
    };
    let (f, g) = (restrict(f)?, restrict(g)?);
    let first = pushout(&i0, &f)?;
    let second = pushout(&i1.then(&first.left)?, &g)?;
    let object = second.object.clone();
    Ok(HomotopyPushout {
        from_x: first.right.then(&second.left)?,
        from_y: second.right.clone(),
        from_cylinder: first.left.then(&second.left)?,
        object,
        cylinder_projection: proj,
        first,
        second,
    })
}

/// Homology comparison, through degree `k`, of the map from the homotopy
/// pushout of the span to the corner.
pub fn is_homotopy_cocartesian(sq: &Square, k: usize) -> Result<EvidenceReport> {
    let hp = homotopy_pushout(&sq.f, &sq.g)?;
    weak_equivalence_evidence(&hp.comparison(sq)?, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::{homology, Verdict};
    use crate::lifting::boundary_inclusions;

    fn span(bound: usize) -> (SimplicialMap, SimplicialMap) {
        let i = boundary_inclusions(1, bound).unwrap().pop().unwrap();
        let c = SimplicialMap::to_point(i.source().clone(), Arc::new(simplex(0, bound).unwrap())).unwrap();
        (c, i)
    }

    #[test]
    fn cylinder_on_two_points_is_a_circle() {
        let (c, i) = span(3);
        let hp = homotopy_pushout(&c, &i).unwrap();
        let h = homology(&hp.object, 1).unwrap();
        assert_eq!(h.groups[0].to_string(), "Z");
        assert_eq!(h.groups[1].to_string(), "Z");
    }

    #[test]
    fn identity_square_is_cocartesian() {
        let x = Arc::new(simplex(1, 3).unwrap());
        let id = SimplicialMap::identity(x);
        let sq = Square::new(id.clone(), id.clone(), id.clone(), id).unwrap();
        assert_eq!(is_homotopy_cocartesian(&sq, 1).unwrap().verdict(), Verdict::Pass);
    }

    #[test]
    fn strict_pushout_along_inclusion() {
        let (c, i) = span(3);
        let po = pushout(&c, &i).unwrap();
        let sq = Square::new(c, i, po.left.clone(), po.right.clone()).unwrap();
        assert_eq!(is_homotopy_cocartesian(&sq, 1).unwrap().verdict(), Verdict::Pass);
        assert_eq!(is_homotopy_cocartesian(&sq.flip(), 1).unwrap().verdict(), Verdict::Pass);
    }
}
