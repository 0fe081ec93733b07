use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{SimplicialMap, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A path of generators in diagrammatic order: `arrows[0]` comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub src: usize,
    pub dst: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn identity(object: usize) -> Self {
        Path { src: object, dst: object, arrows: Vec::new() }
    }

    pub fn then(&self, other: &Path) -> Path {
        debug_assert_eq!(self.dst, other.src);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Path { src: self.src, dst: other.dst, arrows }
    }
}

fn check_path(objects: usize, gens: &[Generator], p: &Path, what: &str) -> Result<()> {
    if p.src >= objects || p.dst >= objects {
        return Err(Error::Malformed(format!("{what}: endpoint out of range")));
    }
    let mut at = p.src;
    for &g in &p.arrows {
        let gen = gens.get(g).ok_or_else(|| Error::Malformed(format!("{what}: unknown generator {g}")))?;
        if gen.src != at {
            return Err(Error::Malformed(format!("{what}: `{}` does not compose", gen.id)));
        }
        at = gen.dst;
    }
    if at != p.dst {
        return Err(Error::Malformed(format!("{what}: path does not end at its target")));
    }
    Ok(())
}

fn render(objects: &[String], gens: &[Generator], p: &Path) -> String {
    if p.arrows.is_empty() {
        return format!("1_{}", objects[p.src]);
    }
    p.arrows.iter().rev().map(|&g| gens[g].id.as_str()).collect::<Vec<_>>().join("∘")
}

/// Generators and relations for a category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatPresentation {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<(Path, Path)>,
}

impl CatPresentation {
    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            check_path(self.objects.len(), &[], &Path::identity(g.src), &g.id)?;
            check_path(self.objects.len(), &[], &Path::identity(g.dst), &g.id)?;
        }
        for (k, (a, b)) in self.relations.iter().enumerate() {
            check_path(self.objects.len(), &self.generators, a, &format!("relation {k}"))?;
            check_path(self.objects.len(), &self.generators, b, &format!("relation {k}"))?;
            if (a.src, a.dst) != (b.src, b.dst) {
                return Err(Error::Malformed(format!("relation {k} has sides that are not parallel")));
            }
        }
        Ok(())
    }

    /// Applicative rendering, e.g. `g∘f`, or `1_x` for an empty path.
    pub fn render(&self, p: &Path) -> String {
        render(&self.objects, &self.generators, p)
    }
}

/// A 2-generator between parallel paths of 1-generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGenerator {
    pub id: String,
    pub src: Path,
    pub dst: Path,
}

/// `left · generator · right`, a 2-generator whiskered by paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Whiskered {
    pub left: Vec<usize>,
    pub generator: usize,
    pub right: Vec<usize>,
}

/// A vertical composite of whiskered 2-generators starting at `src`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pasting {
    pub src: Path,
    pub steps: Vec<Whiskered>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCatPresentation {
    pub objects: Vec<String>,
    pub one_generators: Vec<Generator>,
    pub two_generators: Vec<TwoGenerator>,
    pub relations: Vec<(Pasting, Pasting)>,
}

impl TwoCatPresentation {
    /// Source and target path of a pasting, checking every step.
    pub fn pasting_ends(&self, p: &Pasting) -> Result<(Path, Path)> {
        let mut cur = p.src.clone();
        for w in &p.steps {
            let g = self
                .two_generators
                .get(w.generator)
                .ok_or_else(|| Error::Malformed(format!("unknown 2-generator {}", w.generator)))?;
            let mut expect = w.left.clone();
            expect.extend_from_slice(&g.src.arrows);
            expect.extend_from_slice(&w.right);
            if expect != cur.arrows {
                return Err(Error::Malformed(format!("`{}` does not apply to {}", g.id, self.render(&cur))));
            }
            let mut next = w.left.clone();
            next.extend_from_slice(&g.dst.arrows);
            next.extend_from_slice(&w.right);
            cur = Path { src: cur.src, dst: cur.dst, arrows: next };
        }
        Ok((p.src.clone(), cur))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        for g in &self.two_generators {
            check_path(n, &self.one_generators, &g.src, &g.id)?;
            check_path(n, &self.one_generators, &g.dst, &g.id)?;
            if (g.src.src, g.src.dst) != (g.dst.src, g.dst.dst) {
                return Err(Error::Malformed(format!("2-generator `{}` between non-parallel paths", g.id)));
            }
        }
        for (k, (a, b)) in self.relations.iter().enumerate() {
            check_path(n, &self.one_generators, &a.src, &format!("relation {k}"))?;
            if self.pasting_ends(a)? != self.pasting_ends(b)? {
                return Err(Error::Malformed(format!("relation {k} has sides that are not parallel")));
            }
        }
        Ok(())
    }

    pub fn render(&self, p: &Path) -> String {
        render(&self.objects, &self.one_generators, p)
    }

    pub fn one_skeleton(&self) -> CatPresentation {
        CatPresentation { objects: self.objects.clone(), generators: self.one_generators.clone(), relations: Vec::new() }
    }
}

/// Either kind of presentation, for maps and serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Presentation {
    Cat(CatPresentation),
    TwoCat(TwoCatPresentation),
}

impl Presentation {
    pub fn validate(&self) -> Result<()> {
        match self {
            Presentation::Cat(p) => p.validate(),
            Presentation::TwoCat(p) => p.validate(),
        }
    }
}

/// A map of presentations given on generators: objects to objects,
/// 1-generators to paths, 2-generators to pastings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedMap {
    pub source: Presentation,
    pub target: Presentation,
    pub objects: Vec<usize>,
    pub one_cells: Vec<Path>,
    pub two_cells: Vec<Pasting>,
}

/// The edge `e` as a path: a generator if nondegenerate, else an identity.
struct EdgePaths {
    generator_of: Vec<Option<usize>>,
    generators: Vec<Generator>,
}

impl EdgePaths {
    fn of(x: &SimplicialSet) -> Self {
        let mut generator_of = Vec::new();
        let mut generators = Vec::new();
        if x.dim_bound() >= 1 {
            generator_of = vec![None; x.level_size(1)];
            for e in x.nondegenerate(1) {
                generator_of[e] = Some(generators.len());
                generators.push(Generator { id: x.id(1, e).to_string(), src: x.face(1, 1, e), dst: x.face(1, 0, e) });
            }
        }
        EdgePaths { generator_of, generators }
    }

    fn path(&self, x: &SimplicialSet, e: usize) -> Path {
        let (s, d) = (x.face(1, 1, e), x.face(1, 0, e));
        Path { src: s, dst: d, arrows: self.generator_of[e].into_iter().collect() }
    }
}

fn vertex_names(x: &SimplicialSet) -> Vec<String> {
    (0..x.level_size(0)).map(|v| x.id(0, v).to_string()).collect()
}

/// Generators for the nondegenerate edges and, for each nondegenerate
/// triangle `σ`, the relation `d₁σ = d₀σ ∘ d₂σ` (degenerate edges read as
/// identities).
pub fn c_of(x: &SimplicialSet) -> CatPresentation {
    let edges = EdgePaths::of(x);
    let mut relations = Vec::new();
    if x.dim_bound() >= 2 {
        for s in x.nondegenerate(2) {
            let lhs = edges.path(x, x.face(2, 2, s)).then(&edges.path(x, x.face(2, 0, s)));
            let rhs = edges.path(x, x.face(2, 1, s));
            if lhs != rhs {
                relations.push((lhs, rhs));
            }
        }
    }
    CatPresentation { objects: vertex_names(x), generators: edges.generators, relations }
}

struct TwoCells {
    generator_of: Vec<Option<usize>>,
    generators: Vec<TwoGenerator>,
}

impl TwoCells {
    /// The 2-cell of the triangle `s` whiskered by `left` and `right`; an
    /// empty pasting for a degenerate triangle.
    fn step(&self, s: usize, left: &[usize], right: &[usize]) -> Option<Whiskered> {
        self.generator_of[s].map(|g| Whiskered { left: left.to_vec(), generator: g, right: right.to_vec() })
    }
}

/// Adds to `c_of(X)` a 2-generator `α_σ: d₀σ ∘ d₂σ ⇒ d₁σ` per nondegenerate
/// triangle in place of the relation, and per nondegenerate 3-simplex `τ`
/// the pasting relation
/// `(α_{d₃τ} whiskered by f₂₃) · α_{d₁τ} = (f₀₁ whiskering α_{d₀τ}) · α_{d₂τ}`.
pub fn c2_of(x: &SimplicialSet) -> TwoCatPresentation {
    let edges = EdgePaths::of(x);
    let mut cells = TwoCells { generator_of: Vec::new(), generators: Vec::new() };
    if x.dim_bound() >= 2 {
        cells.generator_of = vec![None; x.level_size(2)];
        for s in x.nondegenerate(2) {
            cells.generator_of[s] = Some(cells.generators.len());
            let src = edges.path(x, x.face(2, 2, s)).then(&edges.path(x, x.face(2, 0, s)));
            let dst = edges.path(x, x.face(2, 1, s));
            cells.generators.push(TwoGenerator { id: x.id(2, s).to_string(), src, dst });
        }
    }
    let mut relations = Vec::new();
    if x.dim_bound() >= 3 {
        for t in x.nondegenerate(3) {
            let edge = |i: usize, j: usize| {
                let phi = [i, j];
                edges.path(x, x.apply_monotone(3, t, &phi))
            };
            let (f01, f12, f23) = (edge(0, 1), edge(1, 2), edge(2, 3));
            let src = f01.then(&f12).then(&f23);
            let lhs: Vec<Whiskered> = [cells.step(x.face(3, 3, t), &[], &f23.arrows), cells.step(x.face(3, 1, t), &[], &[])]
                .into_iter()
                .flatten()
                .collect();
            let rhs: Vec<Whiskered> = [cells.step(x.face(3, 0, t), &f01.arrows, &[]), cells.step(x.face(3, 2, t), &[], &[])]
                .into_iter()
                .flatten()
                .collect();
            if lhs != rhs {
                relations.push((Pasting { src: src.clone(), steps: lhs }, Pasting { src, steps: rhs }));
            }
        }
    }
    TwoCatPresentation {
        objects: vertex_names(x),
        one_generators: edges.generators,
        two_generators: cells.generators,
        relations,
    }
}

/// The map `c(f)` on generators.
pub fn c_of_map(f: &SimplicialMap) -> Result<PresentedMap> {
    let (x, y) = (f.source(), f.target());
    if f.bound() < 1.min(x.dim_bound()) {
        return Err(Error::Bound { requested: 1, bound: f.bound() });
    }
    let target_edges = EdgePaths::of(y);
    let objects = (0..x.level_size(0)).map(|v| f.apply(0, v)).collect();
    let one_cells = if x.dim_bound() >= 1 { x.nondegenerate(1).map(|e| target_edges.path(y, f.apply(1, e))).collect() } else { Vec::new() };
    Ok(PresentedMap { source: Presentation::Cat(c_of(x)), target: Presentation::Cat(c_of(y)), objects, one_cells, two_cells: Vec::new() })
}

/// The map `c₂(f)` on generators.
pub fn c2_of_map(f: &SimplicialMap) -> Result<PresentedMap> {
    let (x, y) = (f.source(), f.target());
    if f.bound() < 2.min(x.dim_bound()) {
        return Err(Error::Bound { requested: 2, bound: f.bound() });
    }
    let target_edges = EdgePaths::of(y);
    let target = c2_of(y);
    let mut generator_of = vec![None; if y.dim_bound() >= 2 { y.level_size(2) } else { 0 }];
    if y.dim_bound() >= 2 {
        for (k, s) in y.nondegenerate(2).enumerate() {
            generator_of[s] = Some(k);
        }
    }
    let objects = (0..x.level_size(0)).map(|v| f.apply(0, v)).collect();
    let one_cells = if x.dim_bound() >= 1 { x.nondegenerate(1).map(|e| target_edges.path(y, f.apply(1, e))).collect() } else { Vec::new() };
    let two_cells = if x.dim_bound() >= 2 {
        x.nondegenerate(2)
            .map(|s| {
                let t = f.apply(2, s);
                let src = target_edges.path(y, y.face(2, 2, t)).then(&target_edges.path(y, y.face(2, 0, t)));
                let steps = generator_of[t].map(|g| Whiskered { left: Vec::new(), generator: g, right: Vec::new() }).into_iter().collect();
                Pasting { src, steps }
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(PresentedMap { source: Presentation::TwoCat(c2_of(x)), target: Presentation::TwoCat(target), objects, one_cells, two_cells })
}
