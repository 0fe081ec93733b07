//! Axiom checking for weak saturation and fundamental localizers on a
//! finite universe of (2-)categories, and bounded closure of a marked class.
//!
//! FS3 is read as: a section `i` with retraction `r` (`r ∘ i = 1`) is
//! marked whenever `i ∘ r` is. With `r ∘ i` in place of `i ∘ r` the
//! condition would hold trivially.

mod ambient;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

pub use ambient::Ambient;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Node<O> {
    pub id: String,
    pub value: Arc<O>,
}

#[derive(Clone, Debug)]
pub struct Edge<M> {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub map: M,
}

/// A triangle `q ∘ u = p` over `C` with the induced maps `u/c` recorded
/// for every object `c` of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceTriangle {
    pub u: usize,
    pub p: usize,
    pub q: usize,
    /// Edge `u/c` by object `c` of `C`.
    pub slices: Vec<Option<usize>>,
}

/// A finite stand-in for `Cat` or `2-Cat`: nodes, edges between them, the
/// terminal node and the slice data needed by the LF3 checks. Every node
/// carries its identity edge.
#[derive(Clone, Debug)]
pub struct DiagramUniverse<M: Ambient> {
    nodes: Vec<Node<M::Object>>,
    edges: Vec<Edge<M>>,
    terminal: Option<usize>,
    triangles: Vec<SliceTriangle>,
}

/// A set of universe edges, by index.
pub type MarkedClass = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    /// Edge ids the axiom was applied to.
    pub witnesses: Vec<String>,
    pub detail: String,
}

impl<M: Ambient> Default for DiagramUniverse<M> {
    fn default() -> Self {
        Self { nodes: Vec::new(), edges: Vec::new(), terminal: None, triangles: Vec::new() }
    }
}

impl<M: Ambient> DiagramUniverse<M> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn nodes(&self) -> &[Node<M::Object>] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge<M>] {
        &self.edges
    }

    pub fn triangles(&self) -> &[SliceTriangle] {
        &self.triangles
    }

    pub fn terminal(&self) -> Option<usize> {
        self.terminal
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    fn node_of(&self, value: &M::Object) -> Option<usize> {
        self.nodes.iter().position(|n| *n.value == *value)
    }

    /// Adds a node with its identity edge `1_id`; a node with the same
    /// content is reused.
    pub fn add_node(&mut self, id: &str, value: Arc<M::Object>) -> Result<usize> {
        if let Some(k) = self.node_of(&value) {
            return Ok(k);
        }
        if self.node_index(id).is_some() {
            return Err(Error::Malformed(format!("duplicate node `{id}`")));
        }
        let k = self.nodes.len();
        self.nodes.push(Node { id: id.to_string(), value: value.clone() });
        self.edges.push(Edge { id: format!("1_{id}"), src: k, dst: k, map: M::identity_on(&value) });
        Ok(k)
    }

    /// Adds (or finds) the terminal node `e`.
    pub fn set_terminal(&mut self, id: &str, value: Arc<M::Object>) -> Result<usize> {
        let k = self.add_node(id, value)?;
        self.terminal = Some(k);
        Ok(k)
    }

    /// Adds an edge between existing nodes; an edge with the same
    /// assignment is reused.
    pub fn add_edge(&mut self, id: &str, map: M) -> Result<usize> {
        let missing = |what: &str| Error::MissingUniverseEntry(format!("{what} of edge `{id}`"));
        let src = self.node_of(map.source()).ok_or_else(|| missing("source"))?;
        let dst = self.node_of(map.target()).ok_or_else(|| missing("target"))?;
        if let Some(k) = self.find_edge(src, dst, &map) {
            return Ok(k);
        }
        if self.edge_index(id).is_some() {
            return Err(Error::Malformed(format!("duplicate edge `{id}`")));
        }
        self.edges.push(Edge { id: id.to_string(), src, dst, map });
        Ok(self.edges.len() - 1)
    }

    fn find_edge(&self, src: usize, dst: usize, map: &M) -> Option<usize> {
        self.edges.iter().position(|e| e.src == src && e.dst == dst && e.map.agrees(map))
    }

    /// Adds the collapse `X → e` for every node.
    pub fn add_collapses(&mut self) -> Result<()> {
        let e = self.terminal.ok_or_else(|| Error::MissingUniverseEntry("terminal node".into()))?;
        for k in 0..self.nodes.len() {
            let map = M::collapse(&self.nodes[k].value, &self.nodes[e].value)?;
            let id = format!("{}→{}", self.nodes[k].id, self.nodes[e].id);
            self.add_edge(&id, map)?;
        }
        Ok(())
    }

    /// Adds every composite of two edges, once.
    pub fn add_composites(&mut self) -> Result<()> {
        let n = self.edges.len();
        for f in 0..n {
            for g in 0..n {
                if self.edges[f].dst != self.edges[g].src {
                    continue;
                }
                let gf = self.edges[f].map.then(&self.edges[g].map)?;
                let id = format!("{}∘{}", self.edges[g].id, self.edges[f].id);
                if self.find_edge(self.edges[f].src, self.edges[g].dst, &gf).is_none() {
                    self.add_edge(&id, gf)?;
                }
            }
        }
        Ok(())
    }

    /// Records the triangle `q ∘ u = p` and adds the slices `A/c`, `B/c`
    /// and the maps `u/c` for every object `c` of `C`.
    pub fn add_slice_triangle(&mut self, u: usize, p: usize, q: usize) -> Result<usize> {
        let (eu, ep, eq) = (&self.edges[u], &self.edges[p], &self.edges[q]);
        if eu.src != ep.src || eu.dst != eq.src || ep.dst != eq.dst {
            return Err(Error::Contract("triangle edges are not typed A → B → C".into()));
        }
        if !eu.map.then(&eq.map)?.agrees(&ep.map) {
            return Err(Error::Contract("triangle does not commute".into()));
        }
        let (mu, mp, mq) = (eu.map.clone(), ep.map.clone(), eq.map.clone());
        let (a, b, c_node) = (eu.src, eu.dst, ep.dst);
        let names = M::object_names(&self.nodes[c_node].value);
        let mut slices = Vec::with_capacity(names.len());
        for (c, name) in names.iter().enumerate() {
            let sa = M::slice(&mp, c)?;
            let sb = M::slice(&mq, c)?;
            let ia = self.add_node(&format!("{}/{}", self.nodes[a].id, name), sa)?;
            let ib = self.add_node(&format!("{}/{}", self.nodes[b].id, name), sb)?;
            let map = M::slice_map(&mu, &mp, &mq, c)?;
            let id = format!("{}/{}", self.edges[u].id, name);
            let k = self.add_edge(&id, map)?;
            debug_assert!(self.edges[k].src == ia && self.edges[k].dst == ib);
            slices.push(Some(k));
        }
        self.triangles.push(SliceTriangle { u, p, q, slices });
        Ok(self.triangles.len() - 1)
    }

    /// Registers slice data supplied from outside, e.g. a parsed document.
    pub fn add_triangle_entry(&mut self, t: SliceTriangle) -> Result<usize> {
        for &k in [t.u, t.p, t.q].iter().chain(t.slices.iter().flatten()) {
            if k >= self.edges.len() {
                return Err(Error::MissingUniverseEntry(format!("edge {k}")));
            }
        }
        self.triangles.push(t);
        Ok(self.triangles.len() - 1)
    }

    /// Composite table: `(f, g) ↦ g ∘ f` where the composite is an edge.
    pub fn composites(&self) -> HashMap<(usize, usize), usize> {
        let mut out = HashMap::new();
        let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            by_ends.entry((e.src, e.dst)).or_default().push(k);
        }
        for (f, ef) in self.edges.iter().enumerate() {
            for (g, eg) in self.edges.iter().enumerate() {
                if ef.dst != eg.src {
                    continue;
                }
                let Ok(gf) = ef.map.then(&eg.map) else { continue };
                if let Some(h) = by_ends.get(&(ef.src, eg.dst)).and_then(|c| c.iter().copied().find(|&h| self.edges[h].map.agrees(&gf))) {
                    out.insert((f, g), h);
                }
            }
        }
        out
    }

    fn identity_edge(&self, node: usize) -> usize {
        let id = M::identity_on(&self.nodes[node].value);
        self.find_edge(node, node, &id).expect("identity edges are added with their node")
    }

    fn ids(&self, edges: &[usize]) -> Vec<String> {
        edges.iter().map(|&k| self.edges[k].id.clone()).collect()
    }

    /// `(i, r)` with `r ∘ i = 1`, and the edge `i ∘ r`.
    fn sections(&self, comp: &HashMap<(usize, usize), usize>) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (&(i, r), &ri) in comp {
            if ri == self.identity_edge(self.edges[i].src) {
                if let Some(&ir) = comp.get(&(r, i)) {
                    out.push((i, r, ir));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn lf2_edges(&self) -> Result<Vec<usize>> {
        let e = self.terminal.ok_or_else(|| Error::MissingUniverseEntry("terminal node".into()))?;
        let mut out = Vec::new();
        for (k, edge) in self.edges.iter().enumerate() {
            if edge.dst == e && M::admits_final(&self.nodes[edge.src].value)? {
                out.push(k);
            }
        }
        Ok(out)
    }
}

fn check_marked<M: Ambient>(u: &DiagramUniverse<M>, w: &MarkedClass) -> Result<()> {
    match w.iter().find(|&&k| k >= u.edges.len()) {
        Some(k) => Err(Error::MissingUniverseEntry(format!("marked edge {k}"))),
        None => Ok(()),
    }
}

/// FS1, FS2 and FS3 on every instance present in the universe.
pub fn check_weak_saturation<M: Ambient>(u: &DiagramUniverse<M>, w: &MarkedClass) -> Result<Vec<Violation>> {
    check_marked(u, w)?;
    let mut out = Vec::new();
    for k in 0..u.nodes.len() {
        let id = u.identity_edge(k);
        if !w.contains(&id) {
            out.push(Violation { axiom: "FS1".into(), witnesses: u.ids(&[id]), detail: "identity is not marked".into() });
        }
    }
    let comp = u.composites();
    let mut triangles: Vec<(usize, usize, usize)> = comp.iter().map(|(&(f, g), &h)| (f, g, h)).collect();
    triangles.sort_unstable();
    for (f, g, h) in triangles {
        let marked = [f, g, h].map(|k| w.contains(&k));
        if marked.iter().filter(|&&m| m).count() == 2 {
            let missing = [f, g, h][marked.iter().position(|&m| !m).unwrap()];
            out.push(Violation {
                axiom: "FS2".into(),
                witnesses: u.ids(&[f, g, h]),
                detail: format!("two of three marked but not `{}`", u.edges[missing].id),
            });
        }
    }
    for (i, r, ir) in u.sections(&comp) {
        if w.contains(&ir) && !w.contains(&i) {
            out.push(Violation {
                axiom: "FS3".into(),
                witnesses: u.ids(&[i, r, ir]),
                detail: "section whose idempotent is marked is not marked".into(),
            });
        }
    }
    Ok(out)
}

/// Every collapse `X → e` with `X` satisfying the final-object criterion
/// of the universe's level must be marked.
pub fn check_lf2<M: Ambient>(u: &DiagramUniverse<M>, w: &MarkedClass) -> Result<Vec<Violation>> {
    check_marked(u, w)?;
    let axiom = if M::LEVEL == 1 { "LF2" } else { "LF₂2" };
    Ok(u.lf2_edges()?
        .into_iter()
        .filter(|k| !w.contains(k))
        .map(|k| Violation { axiom: axiom.into(), witnesses: u.ids(&[k]), detail: "collapse of a node with a final object is not marked".into() })
        .collect())
}

/// The slice criterion on one recorded triangle: if every `u/c` is
/// marked then so is `u`.
pub fn check_lf3_instance<M: Ambient>(u: &DiagramUniverse<M>, triangle: usize, w: &MarkedClass) -> Result<Option<Violation>> {
    check_marked(u, w)?;
    let t = u.triangles.get(triangle).ok_or_else(|| Error::MissingUniverseEntry(format!("triangle {triangle}")))?;
    let mut slices = Vec::with_capacity(t.slices.len());
    for (c, s) in t.slices.iter().enumerate() {
        slices.push(s.ok_or_else(|| Error::MissingUniverseEntry(format!("slice over object {c} of triangle {triangle}")))?);
    }
    if slices.iter().all(|s| w.contains(s)) && !w.contains(&t.u) {
        let mut witnesses = vec![t.u, t.p, t.q];
        witnesses.extend(&slices);
        let axiom = if M::LEVEL == 1 { "LF3" } else { "LF₂3" };
        return Ok(Some(Violation { axiom: axiom.into(), witnesses: u.ids(&witnesses), detail: "every u/c is marked but u is not".into() }));
    }
    Ok(None)
}

/// Violations of every axiom on every instance in the universe.
pub fn check_all<M: Ambient>(u: &DiagramUniverse<M>, w: &MarkedClass) -> Result<Vec<Violation>> {
    let mut out = check_weak_saturation(u, w)?;
    if u.terminal.is_some() {
        out.extend(check_lf2(u, w)?);
    }
    for t in 0..u.triangles.len() {
        out.extend(check_lf3_instance(u, t, w)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub marked: MarkedClass,
    pub sweeps: usize,
    /// Whether the last sweep added nothing.
    pub saturated: bool,
}

/// The least class containing `seed` and closed, within the universe,
/// under identities, 2-out-of-3, the section rule, final-object
/// collapses and the slice rule. Each sweep applies every rule once; at
/// most `budget` sweeps are run.
pub fn closure<M: Ambient>(u: &DiagramUniverse<M>, seed: &MarkedClass, budget: usize) -> Result<ClosureReport> {
    check_marked(u, seed)?;
    let comp = u.composites();
    let mut triangles: Vec<(usize, usize, usize)> = comp.iter().map(|(&(f, g), &h)| (f, g, h)).collect();
    triangles.sort_unstable();
    let sections = u.sections(&comp);
    let collapses = if u.terminal.is_some() { u.lf2_edges()? } else { Vec::new() };
    let mut w = seed.clone();
    let mut sweeps = 0;
    loop {
        if sweeps == budget {
            return Ok(ClosureReport { marked: w, sweeps, saturated: false });
        }
        sweeps += 1;
        let before = w.len();
        for k in 0..u.nodes.len() {
            w.insert(u.identity_edge(k));
        }
        w.extend(collapses.iter().copied());
        for &(f, g, h) in &triangles {
            let marked = [f, g, h].map(|k| w.contains(&k));
            if marked.iter().filter(|&&m| m).count() == 2 {
                w.extend([f, g, h]);
            }
        }
        for &(i, _, ir) in &sections {
            if w.contains(&ir) {
                w.insert(i);
            }
        }
        for t in &u.triangles {
            if t.slices.iter().all(|s| s.is_some_and(|s| w.contains(&s))) {
                w.insert(t.u);
            }
        }
        if w.len() == before {
            return Ok(ClosureReport { marked: w, sweeps, saturated: true });
        }
    }
}

/// Marks given by edge id.
pub fn marked_by_ids<M: Ambient>(u: &DiagramUniverse<M>, ids: &[&str]) -> Result<MarkedClass> {
    ids.iter()
        .map(|id| u.edge_index(id).ok_or_else(|| Error::UnknownId { id: id.to_string(), context: "universe edges".into() }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{CatFunctor, FinCat};
    use crate::twocat::{delta_tilde, Fin2Cat, TwoFunctor};

    fn arrow_universe() -> DiagramUniverse<CatFunctor> {
        let mut u = DiagramUniverse::new();
        u.add_node("[1]", Arc::new(FinCat::ordinal(2))).unwrap();
        u.set_terminal("e", Arc::new(FinCat::terminal())).unwrap();
        u.add_collapses().unwrap();
        u
    }

    #[test]
    fn everything_marked_is_clean() {
        let u = arrow_universe();
        let all: MarkedClass = (0..u.edges().len()).collect();
        assert!(check_all(&u, &all).unwrap().is_empty());
    }

    #[test]
    fn missing_identity_is_one_fs1_violation() {
        let u = arrow_universe();
        let mut w: MarkedClass = (0..u.edges().len()).collect();
        w.remove(&u.edge_index("1_e").unwrap());
        let v = check_weak_saturation(&u, &w).unwrap();
        assert_eq!(v.iter().filter(|v| v.axiom == "FS1").count(), 1);
        assert_eq!(v[0].witnesses, vec!["1_e".to_string()]);
    }

    #[test]
    fn lf2_on_the_arrow_category() {
        let u = arrow_universe();
        let all: MarkedClass = (0..u.edges().len()).collect();
        assert!(check_lf2(&u, &all).unwrap().is_empty());
        let v = check_lf2(&u, &MarkedClass::new()).unwrap();
        // [1] → e, and e → e is the identity
        assert_eq!(v.len(), 2);
        assert!(v.iter().any(|v| v.witnesses == vec!["[1]→e".to_string()]));
    }

    #[test]
    fn lf2_needs_a_terminal_node() {
        let mut u: DiagramUniverse<CatFunctor> = DiagramUniverse::new();
        u.add_node("[1]", Arc::new(FinCat::ordinal(2))).unwrap();
        assert!(matches!(check_lf2(&u, &MarkedClass::new()), Err(Error::MissingUniverseEntry(_))));
    }

    #[test]
    fn fs2_names_the_triangle() {
        let mut u = arrow_universe();
        let d = Arc::new(FinCat::discrete(&["0", "1"]));
        u.add_node("2", d.clone()).unwrap();
        let arrow = u.nodes()[0].value.clone();
        let i = CatFunctor::new(d, arrow.clone(), vec![0, 1], vec![arrow.identity(0), arrow.identity(1)]).unwrap();
        u.add_edge("i", i).unwrap();
        u.add_collapses().unwrap();
        u.add_composites().unwrap();
        let w = marked_by_ids(&u, &["1_[1]", "1_e", "1_2", "i", "[1]→e"]).unwrap();
        let v = check_weak_saturation(&u, &w).unwrap();
        let fs2: Vec<_> = v.iter().filter(|v| v.axiom == "FS2").collect();
        assert_eq!(fs2.len(), 1);
        assert_eq!(fs2[0].witnesses, vec!["i".to_string(), "[1]→e".to_string(), "2→e".to_string()]);
    }

    #[test]
    fn delta_tilde_two_at_level_two() {
        let mut u: DiagramUniverse<TwoFunctor> = DiagramUniverse::new();
        u.add_node("Δ̃2", Arc::new(delta_tilde(2))).unwrap();
        u.set_terminal("e", Arc::new(Fin2Cat::terminal())).unwrap();
        u.add_collapses().unwrap();
        let v = check_lf2(&u, &MarkedClass::new()).unwrap();
        assert!(v.iter().any(|v| v.witnesses == vec!["Δ̃2→e".to_string()]));
        let w = marked_by_ids(&u, &["Δ̃2→e", "1_e"]).unwrap();
        assert!(check_lf2(&u, &w).unwrap().is_empty());
    }

    #[test]
    fn closure_of_nothing_marks_collapses() {
        let u = arrow_universe();
        let r = closure(&u, &MarkedClass::new(), 10).unwrap();
        assert!(r.saturated);
        assert!(r.marked.contains(&u.edge_index("[1]→e").unwrap()));
        assert!(check_all(&u, &r.marked).unwrap().is_empty());
    }
}
