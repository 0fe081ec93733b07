use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::SimplicialSet;

/// Connected components: `component[v]` for each vertex `v`, numbered in
/// order of their least vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub component: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn representative(&self, c: usize) -> usize {
        self.component.iter().position(|&k| k == c).expect("component has a vertex")
    }
}

pub fn pi0(x: &SimplicialSet) -> Components {
    let n = x.level_size(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    if x.dim_bound() >= 1 {
        for e in x.nondegenerate(1) {
            let (a, b) = (find(&mut parent, x.face(1, 1, e)), find(&mut parent, x.face(1, 0, e)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut component = vec![0; n];
    let mut count = 0;
    for v in 0..n {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        component[v] = label[r];
    }
    Components { component, count }
}

/// A letter of a group word: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter { inverse: !self.inverse, ..self }
    }
}

pub type Word = Vec<Letter>;

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
        w.pop();
        w.remove(0);
    }
    w
}

/// A finite group presentation. `edge_words` expresses every edge of the
/// basepoint component in the current generators, so maps between
/// simplicial sets can be pushed through the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub basepoint: usize,
    /// The edge each generator came from.
    pub generator_edges: Vec<usize>,
    #[serde(skip)]
    edge_words: Vec<Option<Word>>,
    /// Spanning-tree edge into each vertex of the component, its other end,
    /// and `true` when the edge points away from the basepoint.
    #[serde(skip)]
    tree_parent: Vec<Option<(usize, usize, bool)>>,
}

impl Presentation {
    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// The word of edge `e` (any edge of the basepoint component).
    pub fn edge_word(&self, e: usize) -> Option<&Word> {
        self.edge_words.get(e).and_then(Option::as_ref)
    }

    /// The edge path of the loop represented by edge `e`: tree path to its
    /// source, `e`, tree path back from its target. `true` marks an edge
    /// traversed backwards.
    pub fn loop_path(&self, x: &SimplicialSet, e: usize) -> Vec<(usize, bool)> {
        let mut path = self.tree_path(x.face(1, 1, e));
        path.push((e, false));
        path.extend(self.tree_path(x.face(1, 0, e)).into_iter().rev().map(|(f, b)| (f, !b)));
        path
    }

    fn tree_path(&self, mut v: usize) -> Vec<(usize, bool)> {
        let mut rev = Vec::new();
        while v != self.basepoint {
            let (e, parent, forward) = self.tree_parent[v].expect("vertex in basepoint component");
            rev.push((e, !forward));
            v = parent;
        }
        rev.reverse();
        rev
    }

    fn render(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|l| format!("{}{}", self.generators[l.generator], if l.inverse { "^-1" } else { "" })).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// Default budget of Tietze eliminations.
pub const TIETZE_BUDGET: usize = 10_000;

/// Edge-path presentation of `π₁(X, basepoint)` from the 2-skeleton: the
/// edges off a breadth-first spanning tree generate, each nondegenerate
/// triangle `σ` gives `d₂σ · d₀σ · (d₁σ)⁻¹`. Tietze eliminations then
/// remove generators occurring exactly once in some relator.
pub fn pi1_presentation(x: &SimplicialSet, basepoint: usize) -> Result<Presentation> {
    pi1_presentation_with_budget(x, basepoint, TIETZE_BUDGET)
}

pub fn pi1_presentation_with_budget(x: &SimplicialSet, basepoint: usize, budget: usize) -> Result<Presentation> {
    if basepoint >= x.level_size(0) {
        return Err(Error::UnknownId { id: basepoint.to_string(), context: "vertices".into() });
    }
    let edges: Vec<usize> = if x.dim_bound() >= 1 { x.nondegenerate(1).collect() } else { Vec::new() };
    let mut incident = vec![Vec::new(); x.level_size(0)];
    for &e in &edges {
        incident[x.face(1, 1, e)].push(e);
        incident[x.face(1, 0, e)].push(e);
    }
    let mut seen = vec![false; x.level_size(0)];
    let mut tree = vec![false; if x.dim_bound() >= 1 { x.level_size(1) } else { 0 }];
    let mut tree_parent = vec![None; x.level_size(0)];
    seen[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            let forward = x.face(1, 1, e) == v;
            let w = if forward { x.face(1, 0, e) } else { x.face(1, 1, e) };
            if !seen[w] {
                seen[w] = true;
                tree[e] = true;
                tree_parent[w] = Some((e, v, forward));
                queue.push_back(w);
            }
        }
    }
    let mut generators = Vec::new();
    let mut generator_edges = Vec::new();
    let mut edge_words: Vec<Option<Word>> = vec![None; tree.len()];
    if x.dim_bound() >= 1 {
        for e in 0..x.level_size(1) {
            let v = x.face(1, 1, e);
            if !seen[v] {
                continue;
            }
            edge_words[e] = Some(if !x.is_nondegenerate(1, e) || tree[e] {
                Vec::new()
            } else {
                generators.push(x.id(1, e).to_string());
                generator_edges.push(e);
                vec![Letter { generator: generators.len() - 1, inverse: false }]
            });
        }
    }
    let mut relators = Vec::new();
    if x.dim_bound() >= 2 {
        for s in x.nondegenerate(2) {
            if !seen[x.vertex(2, s, 0)] {
                continue;
            }
            let w = |i: usize| edge_words[x.face(2, i, s)].clone().expect("edge in component");
            let mut r = w(2);
            r.extend(w(0));
            r.extend(invert(&w(1)));
            relators.push(r);
        }
    }
    let mut p = Presentation { generators, relators, basepoint, generator_edges, edge_words, tree_parent };
    tietze(&mut p, budget);
    Ok(p)
}

/// Removes relators that reduce to nothing and eliminates a generator
/// whenever it occurs exactly once in a relator, until no move applies or
/// the budget runs out.
fn tietze(p: &mut Presentation, budget: usize) {
    let mut moves = 0;
    loop {
        let mut rels: Vec<Word> = p.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
        rels.sort_by_key(|r| (r.len(), r.clone()));
        rels.dedup();
        p.relators = rels;
        if moves >= budget {
            return;
        }
        let found = p.relators.iter().enumerate().find_map(|(ri, r)| {
            (0..r.len()).find(|&pos| r.iter().filter(|l| l.generator == r[pos].generator).count() == 1).map(|pos| (ri, pos))
        });
        let Some((ri, pos)) = found else { return };
        let r = p.relators.remove(ri);
        let g = r[pos].generator;
        // r = a·g^ε·b = 1, so g^ε = a⁻¹·b⁻¹ and g = (b·a)^{-ε}
        let mut ba: Word = r[pos + 1..].to_vec();
        ba.extend_from_slice(&r[..pos]);
        let value = if r[pos].inverse { free_reduce(&ba) } else { invert(&ba) };
        substitute(p, g, &value);
        moves += 1;
    }
}

fn substitute(p: &mut Presentation, g: usize, value: &[Letter]) {
    let renumber = |l: Letter| Letter { generator: if l.generator > g { l.generator - 1 } else { l.generator }, ..l };
    let rewrite = |w: &Word| -> Word {
        let mut out = Vec::new();
        for &l in w {
            if l.generator == g {
                if l.inverse {
                    out.extend(invert(value));
                } else {
                    out.extend_from_slice(value);
                }
            } else {
                out.push(l);
            }
        }
        free_reduce(&out).into_iter().map(renumber).collect()
    };
    p.relators = p.relators.iter().map(rewrite).collect();
    p.edge_words = p.edge_words.iter().map(|w| w.as_ref().map(rewrite)).collect();
    p.generators.remove(g);
    p.generator_edges.remove(g);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard::{boundary, simplex};

    #[test]
    fn triangle_boundary_is_a_circle() {
        let p = pi1_presentation(&boundary(2, 2).unwrap(), 0).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert!(p.relators.is_empty());
    }

    #[test]
    fn simplices_are_simply_connected() {
        for n in 0..=4 {
            let p = pi1_presentation(&simplex(n, n.max(2)).unwrap(), 0).unwrap();
            assert!(p.is_trivial(), "Δ{n}: {p}");
        }
    }

    #[test]
    fn sphere_is_simply_connected() {
        let p = pi1_presentation(&boundary(3, 3).unwrap(), 0).unwrap();
        assert!(p.is_trivial(), "{p}");
    }

    #[test]
    fn zero_budget_keeps_raw_presentation() {
        let p = pi1_presentation_with_budget(&simplex(2, 2).unwrap(), 0, 0).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.relators.len(), 1);
    }

    #[test]
    fn loops_close_up() {
        let x = boundary(3, 3).unwrap();
        let p = pi1_presentation_with_budget(&x, 2, 0).unwrap();
        for e in x.nondegenerate(1) {
            let path = p.loop_path(&x, e);
            let ends = |&(f, back): &(usize, bool)| if back { (x.face(1, 0, f), x.face(1, 1, f)) } else { (x.face(1, 1, f), x.face(1, 0, f)) };
            assert_eq!(ends(&path[0]).0, 2);
            assert_eq!(ends(path.last().unwrap()).1, 2);
            assert!(path.windows(2).all(|w| ends(&w[0]).1 == ends(&w[1]).0));
        }
    }

    #[test]
    fn missing_basepoint() {
        assert!(matches!(pi1_presentation(&simplex(1, 1).unwrap(), 5), Err(Error::UnknownId { .. })));
    }

    #[test]
    fn components_of_boundary_of_edge() {
        let c = pi0(&boundary(1, 1).unwrap());
        assert_eq!(c.count, 2);
        assert_eq!(pi0(&simplex(3, 3).unwrap()).count, 1);
    }

    #[test]
    fn substitution_keeps_edge_words_consistent() {
        let x = boundary(3, 3).unwrap();
        let p = pi1_presentation(&x, 0).unwrap();
        for e in 0..x.level_size(1) {
            assert_eq!(p.edge_word(e), Some(&Vec::new()));
        }
    }
}
