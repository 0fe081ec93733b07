use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use super::chains::mapping_cone;
use super::homology::{complex_homology, homology, AbelianGroup};
use super::matrix::Matrix;
use super::pi::{free_reduce, invert, pi0, pi1_presentation, Components, Letter, Presentation, Word};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialMap;
use crate::twocat::{geometric_nerve, geometric_nerve_map, TwoFunctor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    /// `pi0`, `H0`, `H1`, …, or `pi1`.
    pub name: String,
    pub verdict: Verdict,
    /// Certificate for a pass, witness for a failure, reason otherwise.
    pub detail: String,
}

/// Graded evidence that a map is a weak equivalence, valid only through
/// the recorded degree and dimension bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvidenceReport {
    pub degree: usize,
    pub dim_bound: usize,
    pub checks: Vec<Check>,
    /// Homology of the mapping cone in degrees `0 … degree + 1`.
    pub cone_homology: Vec<AbelianGroup>,
}

impl EvidenceReport {
    pub fn verdict(&self) -> Verdict {
        if self.checks.iter().any(|c| c.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.checks.iter().all(|c| c.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Unknown
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The failing checks, in report order.
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }
}

fn check(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Check {
    Check { name: name.into(), verdict, detail: detail.into() }
}

/// Evidence for `f` through degree `k`: π₀ by component matching, each
/// `H_i` (`i ≤ k`) from the mapping cone's homology through degree `k + 1`,
/// and π₁ by comparing Tietze-reduced presentations. Needs both dimension
/// bounds to be at least `k + 2`.
pub fn weak_equivalence_evidence(f: &SimplicialMap, k: usize) -> Result<EvidenceReport> {
    let bound = f.source().dim_bound().min(f.target().dim_bound());
    if bound < k + 2 {
        return Err(Error::Bound { requested: k + 2, bound });
    }
    let (x, y) = (f.source(), f.target());
    let mut checks = Vec::new();
    let (cx, cy) = (pi0(x), pi0(y));
    let pi0_check = pi0_comparison(f, &cx, &cy);
    let pi0_pass = pi0_check.verdict == Verdict::Pass;
    checks.push(pi0_check);

    let cone = complex_homology(&mapping_cone(f, k + 2), k + 1)?.groups;
    let (hx, hy) = (homology(x, k)?.groups, homology(y, k)?.groups);
    // H_i(cone) = 0 makes f_i onto and f_{i-1} one-to-one; H_i(cone) ≠ 0
    // with f_{i-1} one-to-one means f_i is not onto
    let mut prev_injective = true;
    for i in 0..=k {
        let name = format!("H{i}");
        let c = if hx[i] != hy[i] {
            check(&name, Verdict::Fail, format!("H{i} of source is {} but H{i} of target is {}", hx[i], hy[i]))
        } else if cone[i].is_zero() {
            check(&name, Verdict::Pass, format!("H{i} = {} on both sides and H{i}(cone) = 0, so the induced map is onto", hx[i]))
        } else if prev_injective {
            check(&name, Verdict::Fail, format!("H{i}(cone) = {} while the map is injective one degree down, so H{i} is not onto", cone[i]))
        } else {
            check(&name, Verdict::Unknown, format!("H{i}(cone) = {} and injectivity one degree down is not established", cone[i]))
        };
        prev_injective = c.verdict == Verdict::Pass || cone[i + 1].is_zero();
        checks.push(c);
    }

    checks.push(if pi0_pass { pi1_comparison(f, &cx) } else { check("pi1", Verdict::Unknown, "π₀ is not a bijection") });
    Ok(EvidenceReport { degree: k, dim_bound: bound, checks, cone_homology: cone })
}

fn pi0_comparison(f: &SimplicialMap, cx: &Components, cy: &Components) -> Check {
    let (x, y) = (f.source(), f.target());
    let mut image: Vec<Option<usize>> = vec![None; cx.count];
    for v in 0..x.level_size(0) {
        image[cx.component[v]] = Some(cy.component[f.apply(0, v)]);
    }
    let mut hit: Vec<Option<usize>> = vec![None; cy.count];
    for (a, b) in image.iter().enumerate() {
        let b = b.expect("component has a vertex");
        if let Some(a0) = hit[b] {
            let (va, vb) = (cx.representative(a0), cx.representative(a));
            return check(
                "pi0",
                Verdict::Fail,
                format!(
                    "source components of vertices {} and {} both map to the component of {}",
                    x.id(0, va),
                    x.id(0, vb),
                    y.id(0, cy.representative(b))
                ),
            );
        }
        hit[b] = Some(a);
    }
    if let Some(b) = hit.iter().position(Option::is_none) {
        return check("pi0", Verdict::Fail, format!("target component of vertex {} is not hit", y.id(0, cy.representative(b))));
    }
    check("pi0", Verdict::Pass, format!("bijection on {} components", cx.count))
}

fn pi1_comparison(f: &SimplicialMap, cx: &Components) -> Check {
    let (x, y) = (f.source(), f.target());
    let mut unknown = Vec::new();
    for comp in 0..cx.count {
        let v = cx.representative(comp);
        let (Ok(p), Ok(q)) = (pi1_presentation(x, v), pi1_presentation(y, f.apply(0, v))) else {
            unreachable!("basepoints are vertices");
        };
        match compare_fundamental_groups(f, &p, &q) {
            Verdict::Pass => {}
            Verdict::Fail => {
                return check("pi1", Verdict::Fail, format!("at vertex {}: source {p} but target {q}", x.id(0, v)));
            }
            Verdict::Unknown => unknown.push(format!("at vertex {}: {p} vs {q}", x.id(0, v))),
        }
    }
    if unknown.is_empty() {
        check("pi1", Verdict::Pass, format!("induced map is an isomorphism on all {} components", cx.count))
    } else {
        check("pi1", Verdict::Unknown, unknown.join("; "))
    }
}

/// The image under `f` of each source generator, as a reduced word in the
/// target generators.
fn generator_images(f: &SimplicialMap, p: &Presentation, q: &Presentation) -> Vec<Word> {
    let x = f.source();
    p.generator_edges
        .iter()
        .map(|&e| {
            let mut w = Vec::new();
            for (edge, back) in p.loop_path(x, e) {
                let image = q.edge_word(f.apply(1, edge)).expect("image edge lies in the target component");
                w.extend(if back { invert(image) } else { image.clone() });
            }
            free_reduce(&w)
        })
        .collect()
}

fn compare_fundamental_groups(f: &SimplicialMap, p: &Presentation, q: &Presentation) -> Verdict {
    if p.is_trivial() && q.is_trivial() {
        return Verdict::Pass;
    }
    if !(p.is_free() && q.is_free()) {
        return Verdict::Unknown;
    }
    if p.generators.len() != q.generators.len() {
        return Verdict::Fail;
    }
    let images = generator_images(f, p, q);
    // a signed permutation of free generators is an isomorphism
    let mut used = vec![false; q.generators.len()];
    let permutes = images.iter().all(|w| match w.as_slice() {
        [Letter { generator, .. }] if !used[*generator] => {
            used[*generator] = true;
            true
        }
        _ => false,
    });
    if permutes {
        return Verdict::Pass;
    }
    // an isomorphism of free groups abelianizes to a unimodular matrix
    let n = q.generators.len();
    let mut entries = Vec::new();
    for (j, w) in images.iter().enumerate() {
        for l in w {
            entries.push((l.generator, j, BigInt::from(if l.inverse { -1 } else { 1 })));
        }
    }
    let m = Matrix::from_entries(n, n, entries).expect("no overflow in arbitrary precision");
    if m.is_unimodular() {
        Verdict::Unknown
    } else {
        Verdict::Fail
    }
}

/// Evidence for the 2-functor `u` via its geometric nerve at bound `d`.
pub fn w2_evidence(u: &TwoFunctor, d: usize, k: usize) -> Result<EvidenceReport> {
    if d < k + 2 {
        return Err(Error::Bound { requested: k + 2, bound: d });
    }
    let source = Arc::new(geometric_nerve(u.source(), d));
    let target = Arc::new(geometric_nerve(u.target(), d));
    weak_equivalence_evidence(&geometric_nerve_map(u, source, target)?, k)
}
