use std::collections::HashMap;

use super::FinCat;
use crate::simplicial::standard::{compose_monotone, monotone_maps};
use crate::simplicial::{digits, SimplicialSet};

/// The category of elements of `x`, truncated at `dim_bound` (clamped to
/// the bound of `x`).
///
/// Objects are pairs `(n, x)` written `n:x`. An arrow `(m, y) → (n, x)` is
/// a monotone map `φ: [m] → [n]` with `φ*(x) = y`, written `φ@n:x`. The
/// full category of elements is infinite as soon as `x` is nonempty, so
/// only levels up to the bound are present.
pub fn category_of_elements(x: &SimplicialSet, dim_bound: usize) -> FinCat {
    let d = dim_bound.min(x.dim_bound());
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for n in 0..=d {
        for c in 0..x.level_size(n) {
            obj_index.insert((n, c), objects.len());
            objects.push(format!("{n}:{}", x.id(n, c)));
        }
    }
    let maps: Vec<Vec<Vec<Vec<usize>>>> = (0..=d).map(|m| (0..=d).map(|n| monotone_maps(m, n)).collect()).collect();
    let mut arrows = Vec::new();
    let mut keys: Vec<(Vec<usize>, usize, usize)> = Vec::new();
    let mut arrow_index = HashMap::new();
    for n in 0..=d {
        for c in 0..x.level_size(n) {
            for (m, by_target) in maps.iter().enumerate() {
                for phi in &by_target[n] {
                    let y = x.apply_monotone(n, c, phi);
                    arrow_index.insert((phi.clone(), n, c), arrows.len());
                    arrows.push((format!("{}@{n}:{}", digits(phi), x.id(n, c)), obj_index[&(m, y)], obj_index[&(n, c)]));
                    keys.push((phi.clone(), n, c));
                }
            }
        }
    }
    let identity = (0..=d)
        .flat_map(|n| (0..x.level_size(n)).map(move |c| (n, c)))
        .map(|(n, c)| arrow_index[&((0..=n).collect::<Vec<_>>(), n, c)])
        .collect();
    FinCat::build(objects, arrows, identity, |g, f| {
        let (psi, p, w) = &keys[g];
        let (phi, _, _) = &keys[f];
        arrow_index[&(compose_monotone(psi, phi), *p, *w)]
    })
    .expect("category of elements is well typed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, simplex};

    #[test]
    fn point_at_level_zero_is_terminal() {
        let c = category_of_elements(&simplex(0, 3).unwrap(), 0);
        assert_eq!((c.object_count(), c.arrow_count()), (1, 1));
    }

    #[test]
    fn point_at_level_one() {
        let c = category_of_elements(&simplex(0, 3).unwrap(), 1);
        assert_eq!((c.object_count(), c.arrow_count()), (2, 7));
        c.check_laws().unwrap();
    }

    #[test]
    fn boundary_of_edge() {
        let x = boundary(1, 1).unwrap();
        let c = category_of_elements(&x, 1);
        // two vertices and their two degenerate edges
        assert_eq!(c.object_count(), 4);
        // per component: Δ restricted to [0],[1] over a point
        assert_eq!(c.arrow_count(), 14);
        c.check_laws().unwrap();
    }
}
