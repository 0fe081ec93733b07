#![allow(dead_code)]

use std::sync::Arc;

use strictcat::simplicial::standard::{boundary, simplex};
use strictcat::simplicial::{pushout, SimplicialMap, SimplicialSet};

pub fn arc(x: SimplicialSet) -> Arc<SimplicialSet> {
    Arc::new(x)
}

/// `Δ₁ / ∂Δ₁`, a single loop.
pub fn circle(bound: usize) -> Arc<SimplicialSet> {
    let b = arc(boundary(1, bound).unwrap());
    let i = SimplicialMap::inclusion(b.clone(), arc(simplex(1, bound).unwrap())).unwrap();
    let c = SimplicialMap::to_point(b, arc(simplex(0, bound).unwrap())).unwrap();
    pushout(&i, &c).unwrap().object
}

/// Small simplicial sets used across the suites.
pub fn sample_sets(bound: usize) -> Vec<(String, Arc<SimplicialSet>)> {
    let mut out = vec![
        ("∂Δ2".to_string(), arc(boundary(2, bound).unwrap())),
        ("Δ1".to_string(), arc(simplex(1, bound).unwrap())),
        ("circle".to_string(), circle(bound)),
    ];
    if bound >= 3 {
        out.push(("∂Δ3".into(), arc(boundary(3, bound).unwrap())));
        out.push(("Δ3".into(), arc(simplex(3, bound).unwrap())));
    }
    out
}
