//! The geometric nerve `N₂`.
//!
//! An `n`-simplex is a strict 2-functor `Δ̃ₙ → C`. Such a functor is
//! determined by its values on the generators of `Δ̃ₙ`: objects `x_i`,
//! 1-cells `f_ij = F({i,j})` for `i < j` and 2-cells
//! `α_imj = F({i,m,j} → {i,j}) : f_mj ∘ f_im ⇒ f_ij` for `i < m < j`,
//! subject to the cocycle condition for `i < j < k < l`
//!
//! ```text
//! α_ikl · (f_kl ∗ α_ijk) = α_ijl · (α_jkl ∗ f_ij)
//! ```
//!
//! [`geometric_nerve`] enumerates this data directly, extending
//! `(n-1)`-simplices by a last vertex. [`geometric_nerve_by_functors`]
//! enumerates whole 2-functors and acts by precomposition with the
//! cosimplicial operators; the two constructions produce identical
//! simplicial sets, which the tests check.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::delta::cosimplicial_operator_between;
use super::{delta_tilde, for_each_two_functor, Fin2Cat, TwoFunctor};
use crate::category::nerve::chain_id;
use crate::category::FinCat;
use crate::error::{Error, Result};
use crate::simplicial::standard::{codegeneracy, coface};
use crate::simplicial::{SimplicialMap, SimplicialSet};

/// Generator data of an `n`-simplex of `N₂(C)`. `one` lists `f_ij` for
/// `i < j` in lexicographic order of `(i, j)`; `two` lists `α_imj` for
/// `i < m < j` in lexicographic order of `(i, m, j)`. Cells are local
/// indices in the relevant hom-category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DuskinCell {
    pub objects: Vec<usize>,
    pub one: Vec<usize>,
    pub two: Vec<usize>,
}

struct Layout {
    n: usize,
    pairs: HashMap<(usize, usize), usize>,
    triples: HashMap<(usize, usize, usize), usize>,
}

impl Layout {
    fn new(n: usize) -> Self {
        let mut pairs = HashMap::new();
        let mut triples = HashMap::new();
        for i in 0..=n {
            for j in i + 1..=n {
                let k = pairs.len();
                pairs.insert((i, j), k);
            }
        }
        for i in 0..=n {
            for m in i + 1..=n {
                for j in m + 1..=n {
                    let k = triples.len();
                    triples.insert((i, m, j), k);
                }
            }
        }
        Self { n, pairs, triples }
    }
}

impl DuskinCell {
    pub fn dim(&self) -> usize {
        self.objects.len() - 1
    }

    /// `F({i, j})` for `i ≤ j`.
    fn f(&self, c: &Fin2Cat, lay: &Layout, i: usize, j: usize) -> usize {
        if i == j {
            c.unit(self.objects[i])
        } else {
            self.one[lay.pairs[&(i, j)]]
        }
    }

    /// `F({i, m, j} → {i, j})` for `i ≤ m ≤ j`.
    fn alpha(&self, c: &Fin2Cat, lay: &Layout, i: usize, m: usize, j: usize) -> usize {
        if i == m || m == j {
            c.hom(self.objects[i], self.objects[j]).identity(self.f(c, lay, i, j))
        } else {
            self.two[lay.triples[&(i, m, j)]]
        }
    }

    /// The simplex `φ*(self)` for a monotone `φ: [m] → [n]`.
    fn apply(&self, c: &Fin2Cat, lay: &Layout, target: &Layout, phi: &[usize]) -> DuskinCell {
        let m = phi.len() - 1;
        let objects = phi.iter().map(|&v| self.objects[v]).collect();
        let mut one = vec![0; target.pairs.len()];
        for a in 0..=m {
            for b in a + 1..=m {
                one[target.pairs[&(a, b)]] = self.f(c, lay, phi[a], phi[b]);
            }
        }
        let mut two = vec![0; target.triples.len()];
        for a in 0..=m {
            for k in a + 1..=m {
                for b in k + 1..=m {
                    two[target.triples[&(a, k, b)]] = self.alpha(c, lay, phi[a], phi[k], phi[b]);
                }
            }
        }
        DuskinCell { objects, one, two }
    }

    fn id(&self, c: &Fin2Cat, lay: &Layout) -> String {
        let n = lay.n;
        let xs: Vec<&str> = self.objects.iter().map(|&x| c.object_id(x)).collect();
        if n == 0 {
            return xs[0].to_string();
        }
        let mut fs = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                fs.push(c.hom(self.objects[i], self.objects[j]).object_id(self.f(c, lay, i, j)));
            }
        }
        let mut als = Vec::new();
        for i in 0..=n {
            for m in i + 1..=n {
                for j in m + 1..=n {
                    als.push(c.hom(self.objects[i], self.objects[j]).arrow_id(self.alpha(c, lay, i, m, j)));
                }
            }
        }
        format!("{};{};{}", xs.join("|"), fs.join("|"), als.join("|"))
    }
}

/// Extends an `(n-1)`-simplex by a vertex `n` in every possible way.
fn extensions(c: &Fin2Cat, base: &DuskinCell, lay_prev: &Layout, lay: &Layout, out: &mut Vec<DuskinCell>) {
    let n = lay.n;
    let mut cell = DuskinCell {
        objects: base.objects.clone(),
        one: vec![usize::MAX; lay.pairs.len()],
        two: vec![usize::MAX; lay.triples.len()],
    };
    cell.objects.push(0);
    for i in 0..n {
        for j in i + 1..n {
            cell.one[lay.pairs[&(i, j)]] = base.f(c, lay_prev, i, j);
        }
    }
    for i in 0..n {
        for m in i + 1..n {
            for j in m + 1..n {
                cell.two[lay.triples[&(i, m, j)]] = base.alpha(c, lay_prev, i, m, j);
            }
        }
    }
    for xn in 0..c.object_count() {
        cell.objects[n] = xn;
        extend_from(c, lay, &mut cell, n - 1, out);
    }
}

/// Chooses `f_in` and the `α_imn` for `i = top, top-1, …, 0`.
fn extend_from(c: &Fin2Cat, lay: &Layout, cell: &mut DuskinCell, i: usize, out: &mut Vec<DuskinCell>) {
    let n = lay.n;
    let (xi, xn) = (cell.objects[i], cell.objects[n]);
    let h = c.hom(xi, xn);
    for fin in 0..h.object_count() {
        cell.one[lay.pairs[&(i, n)]] = fin;
        choose_alphas(c, lay, cell, i, i + 1, out);
    }
}

fn choose_alphas(c: &Fin2Cat, lay: &Layout, cell: &mut DuskinCell, i: usize, m: usize, out: &mut Vec<DuskinCell>) {
    let n = lay.n;
    if m == n {
        if !cocycles_hold(c, lay, cell, i) {
            return;
        }
        if i == 0 {
            out.push(cell.clone());
        } else {
            extend_from(c, lay, cell, i - 1, out);
        }
        return;
    }
    let (xi, xm, xn) = (cell.objects[i], cell.objects[m], cell.objects[n]);
    let src = c.hcomp1(xi, xm, xn, cell.f(c, lay, i, m), cell.f(c, lay, m, n));
    let dst = cell.f(c, lay, i, n);
    let candidates: Vec<usize> = c.hom(xi, xn).hom(src, dst).to_vec();
    let slot = lay.triples[&(i, m, n)];
    for al in candidates {
        cell.two[slot] = al;
        choose_alphas(c, lay, cell, i, m + 1, out);
    }
}

/// Cocycle conditions `(i, j, k, n)` for all `i < j < k < n`.
fn cocycles_hold(c: &Fin2Cat, lay: &Layout, cell: &DuskinCell, i: usize) -> bool {
    let l = lay.n;
    for j in i + 1..l {
        for k in j + 1..l {
            if !cocycle(c, lay, cell, i, j, k, l) {
                return false;
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn cocycle(c: &Fin2Cat, lay: &Layout, cell: &DuskinCell, i: usize, j: usize, k: usize, l: usize) -> bool {
    let x = &cell.objects;
    let hil = c.hom(x[i], x[l]);
    let route1 = hil.compose(
        cell.alpha(c, lay, i, k, l),
        c.whisker_after(x[i], x[k], x[l], cell.alpha(c, lay, i, j, k), cell.f(c, lay, k, l)),
    );
    let route2 = hil.compose(
        cell.alpha(c, lay, i, j, l),
        c.whisker_before(x[i], x[j], x[l], cell.f(c, lay, i, j), cell.alpha(c, lay, j, k, l)),
    );
    route1.is_some() && route1 == route2
}

/// The geometric nerve of `c`, truncated at `dim_bound`.
///
/// Vertex ids are object ids. An `n`-simplex with `n ≥ 1` is written
/// `x_0|…|x_n;f_01|f_02|…;α_012|…` with 1-cells listed by `(i, j)` and
/// 2-cells by `(i, m, j)`, each in lexicographic order.
fn duskin_levels(c: &Fin2Cat, layouts: &[Layout]) -> Vec<Vec<DuskinCell>> {
    let mut levels: Vec<Vec<DuskinCell>> = Vec::with_capacity(layouts.len());
    levels.push((0..c.object_count()).map(|x| DuskinCell { objects: vec![x], one: vec![], two: vec![] }).collect());
    for n in 1..layouts.len() {
        let mut next = Vec::new();
        for base in &levels[n - 1] {
            extensions(c, base, &layouts[n - 1], &layouts[n], &mut next);
        }
        levels.push(next);
    }
    levels
}

pub fn geometric_nerve(c: &Fin2Cat, dim_bound: usize) -> SimplicialSet {
    let layouts: Vec<Layout> = (0..=dim_bound).map(Layout::new).collect();
    let levels = duskin_levels(c, &layouts);
    SimplicialSet::from_keys(
        dim_bound,
        levels,
        |n, cell| cell.id(c, &layouts[n]),
        |n, i, cell| cell.apply(c, &layouts[n], &layouts[n - 1], &coface(n, i)),
        |n, i, cell| cell.apply(c, &layouts[n], &layouts[n + 1], &codegeneracy(n, i)),
    )
    .expect("geometric nerve operators stay inside the nerve")
}

/// `N₂(u)`, given the nerves of the source and target of `u` (built by
/// [`geometric_nerve`] at a common bound).
pub fn geometric_nerve_map(u: &TwoFunctor, source: Arc<SimplicialSet>, target: Arc<SimplicialSet>) -> Result<SimplicialMap> {
    let (s, t) = (u.source(), u.target());
    let bound = source.dim_bound().min(target.dim_bound());
    let layouts: Vec<Layout> = (0..=bound).map(Layout::new).collect();
    let mut levels: Vec<Vec<usize>> = (0..=bound).map(|n| vec![usize::MAX; source.level_size(n)]).collect();
    for (n, level) in duskin_levels(s, &layouts).iter().enumerate() {
        for cell in level {
            let lay = &layouts[n];
            let x = source
                .index_of(n, &cell.id(s, lay))
                .ok_or_else(|| Error::Contract("source is not the geometric nerve of u's source".into()))?;
            let mut image = DuskinCell { objects: cell.objects.iter().map(|&o| u.object(o)).collect(), one: vec![0; cell.one.len()], two: vec![0; cell.two.len()] };
            for (&(i, j), &k) in &lay.pairs {
                image.one[k] = u.one_cell(cell.objects[i], cell.objects[j], cell.one[k]);
            }
            for (&(i, _, j), &k) in &lay.triples {
                image.two[k] = u.two_cell(cell.objects[i], cell.objects[j], cell.two[k]);
            }
            levels[n][x] = target
                .index_of(n, &image.id(t, lay))
                .ok_or_else(|| Error::Contract("target is not the geometric nerve of u's target".into()))?;
        }
    }
    SimplicialMap::new(source, target, levels)
}

/// The generator data of a 2-functor `Δ̃ₙ → C`.
pub fn duskin_cell(f: &TwoFunctor) -> DuskinCell {
    let s = f.source();
    let n = s.object_count() - 1;
    let lay = Layout::new(n);
    let idx = |i: usize| s.object_index(&i.to_string()).unwrap();
    let objects = (0..=n).map(|i| f.object(idx(i))).collect();
    let mut one = vec![0; lay.pairs.len()];
    let mut two = vec![0; lay.triples.len()];
    for (&(i, j), &k) in &lay.pairs {
        let h = s.hom(idx(i), idx(j));
        let x = h.object_index(&super::delta::subset_name(1 << i | 1 << j)).unwrap();
        one[k] = f.one_cell(idx(i), idx(j), x);
    }
    for (&(i, m, j), &k) in &lay.triples {
        let h = s.hom(idx(i), idx(j));
        let from = h.object_index(&super::delta::subset_name(1 << i | 1 << m | 1 << j)).unwrap();
        let to = h.object_index(&super::delta::subset_name(1 << i | 1 << j)).unwrap();
        two[k] = f.two_cell(idx(i), idx(j), h.hom(from, to)[0]);
    }
    DuskinCell { objects, one, two }
}

type Tables = (Vec<usize>, Vec<Vec<usize>>, Vec<Vec<usize>>);

/// The geometric nerve computed from whole 2-functors `Δ̃ₙ → C`, with
/// operators given by precomposition with [`super::cosimplicial_operator`].
/// Cell ids agree with [`geometric_nerve`].
pub fn geometric_nerve_by_functors(c: &Arc<Fin2Cat>, dim_bound: usize) -> Result<SimplicialSet> {
    let deltas: Vec<Arc<Fin2Cat>> = (0..=dim_bound + 1).map(|n| Arc::new(delta_tilde(n))).collect();
    let layouts: Vec<Layout> = (0..=dim_bound).map(Layout::new).collect();
    let mut levels: Vec<Vec<Tables>> = Vec::with_capacity(dim_bound + 1);
    for d in deltas.iter().take(dim_bound + 1) {
        let mut level = Vec::new();
        for_each_two_functor(d, c, |o, one, two| {
            level.push((o.to_vec(), one.to_vec(), two.to_vec()));
            ControlFlow::Continue(())
        });
        levels.push(level);
    }
    let functor = |n: usize, t: &Tables| {
        TwoFunctor::new_unchecked(deltas[n].clone(), c.clone(), t.0.clone(), t.1.clone(), t.2.clone()).unwrap()
    };
    let tables = |f: &TwoFunctor| (f.object_table().to_vec(), f.one_tables().to_vec(), f.two_tables().to_vec());
    let pre = |n: usize, m: usize, phi: &[usize], t: &Tables| {
        let op = cosimplicial_operator_between(phi, deltas[m].clone(), deltas[n].clone()).unwrap();
        tables(&op.then(&functor(n, t)).unwrap())
    };
    let x = SimplicialSet::from_keys(
        dim_bound,
        levels,
        |n, t| duskin_cell(&functor(n, t)).id(c, &layouts[n]),
        |n, i, t| pre(n, n - 1, &coface(n, i), t),
        |n, i, t| pre(n, n + 1, &codegeneracy(n, i), t),
    )?;
    Ok(x)
}

/// The comparison `N₂(ι C) → N(C)` sending a simplex to its chain of
/// 1-cells `f_01, f_12, …`. It is an isomorphism of simplicial sets; the
/// map is returned checked for compatibility with all operators.
pub fn iota_nerve_comparison(
    c: &FinCat,
    n2: Arc<SimplicialSet>,
    nerve: Arc<SimplicialSet>,
) -> Result<SimplicialMap> {
    let ic = super::iota(c);
    let bound = n2.dim_bound().min(nerve.dim_bound());
    let mut levels: Vec<Vec<usize>> = (0..=bound).map(|n| vec![usize::MAX; n2.level_size(n)]).collect();
    let layouts: Vec<Layout> = (0..=bound).map(Layout::new).collect();
    let cells = duskin_levels(&ic, &layouts);
    for (n, level) in cells.iter().enumerate() {
        for cell in level {
            let x = n2
                .index_of(n, &cell.id(&ic, &layouts[n]))
                .ok_or_else(|| Error::Contract("first argument is not N₂(ι C)".into()))?;
            let chain: Vec<usize> = if n == 0 {
                vec![c.object_index(ic.object_id(cell.objects[0])).unwrap()]
            } else {
                (0..n)
                    .map(|i| {
                        let h = ic.hom(cell.objects[i], cell.objects[i + 1]);
                        c.arrow_index(h.object_id(cell.f(&ic, &layouts[n], i, i + 1))).unwrap()
                    })
                    .collect()
            };
            levels[n][x] = nerve
                .index_of(n, &chain_id(c, n, &chain))
                .ok_or_else(|| Error::Contract("second argument is not N(C)".into()))?;
        }
    }
    SimplicialMap::new(n2, nerve, levels)
}
