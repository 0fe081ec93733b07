//! Generated and hand-picked inputs shared by the test suites and the
//! acceptance run.

use std::sync::Arc;
use std::time::Instant;

use crate::category::{find_isomorphism, FinCat};
use crate::simplicial::standard::{boundary, horn, simplex};
use crate::simplicial::{pushout, SimplicialMap, SimplicialSet};
use crate::twocat::{delta_tilde, iota, Fin2Cat};

/// Result of [`enumerate_categories`]: one category per isomorphism class.
#[derive(Clone, Debug)]
pub struct CategoryEnumeration {
    pub categories: Vec<FinCat>,
    /// False when the deadline cut the search short.
    pub complete: bool,
    /// Labelled composition tables visited.
    pub tables: usize,
    /// Every category with at most this many arrows has been found.
    pub complete_through: usize,
}

const UNSET: usize = usize::MAX;

struct Shape {
    objects: usize,
    /// `(src, dst)` of each arrow; identities come first.
    ends: Vec<(usize, usize)>,
    /// Arrows by `(src, dst)`.
    hom: Vec<Vec<usize>>,
    /// Composable pairs of non-identity arrows, in assignment order.
    pairs: Vec<(usize, usize)>,
}

impl Shape {
    fn new(k: usize, sizes: &[usize]) -> Option<Self> {
        let mut ends: Vec<(usize, usize)> = (0..k).map(|a| (a, a)).collect();
        for a in 0..k {
            for b in 0..k {
                let extra = sizes[a * k + b] - usize::from(a == b);
                ends.extend(std::iter::repeat_n((a, b), extra));
            }
        }
        let mut hom = vec![Vec::new(); k * k];
        for (f, &(s, d)) in ends.iter().enumerate() {
            hom[s * k + d].push(f);
        }
        let mut pairs = Vec::new();
        for f in k..ends.len() {
            for g in k..ends.len() {
                if ends[f].1 == ends[g].0 {
                    if hom[ends[f].0 * k + ends[g].1].is_empty() {
                        return None;
                    }
                    pairs.push((f, g));
                }
            }
        }
        Some(Self { objects: k, ends, hom, pairs })
    }
}

fn value(c: &[Vec<usize>], f: usize, g: usize) -> usize {
    if f == UNSET || g == UNSET {
        UNSET
    } else {
        c[f][g]
    }
}

struct Search<'a> {
    shape: &'a Shape,
    comp: Vec<Vec<usize>>,
    found: Vec<Vec<Vec<usize>>>,
    deadline: Option<Instant>,
    stopped: bool,
}

impl Search<'_> {
    /// Associativity on every triple in which the entry `g ∘ f` occurs and
    /// whose other composites are already assigned.
    fn consistent_at(&self, f: usize, g: usize) -> bool {
        let n = self.shape.ends.len();
        let c = &self.comp;
        let v = c[f][g];
        let ok = |a: usize, b: usize| a == UNSET || b == UNSET || a == b;
        let after = |x: usize, y: usize| self.shape.ends[x].1 == self.shape.ends[y].0;
        for z in 0..n {
            // (f, g, z): z ∘ (g ∘ f) = (z ∘ g) ∘ f
            if after(g, z) && c[g][z] != UNSET && !ok(c[v][z], c[f][c[g][z]]) {
                return false;
            }
            // (z, f, g): (g ∘ f) ∘ z = g ∘ (f ∘ z)
            if after(z, f) && c[z][f] != UNSET && !ok(c[z][v], c[c[z][f]][g]) {
                return false;
            }
        }
        for x in 0..n {
            for y in 0..n {
                // g = y ∘ x: (y ∘ x) ∘ f = y ∘ (x ∘ f)
                if c[x][y] == g && after(f, x) && !ok(v, value(c, c[f][x], y)) {
                    return false;
                }
                // f = y ∘ x: g ∘ (y ∘ x) = (g ∘ y) ∘ x
                if c[x][y] == f && after(y, g) && !ok(v, value(c, x, c[y][g])) {
                    return false;
                }
            }
        }
        true
    }

    fn rec(&mut self, pos: usize) {
        if self.stopped {
            return;
        }
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            self.stopped = true;
            return;
        }
        if pos == self.shape.pairs.len() {
            self.found.push(self.comp.clone());
            return;
        }
        let (f, g) = self.shape.pairs[pos];
        let k = self.shape.objects;
        let target = self.shape.ends[f].0 * k + self.shape.ends[g].1;
        for i in 0..self.shape.hom[target].len() {
            let v = self.shape.hom[target][i];
            self.comp[f][g] = v;
            if self.consistent_at(f, g) {
                self.rec(pos + 1);
            }
        }
        self.comp[f][g] = UNSET;
    }
}

/// Hom-size matrices for `k` objects, up to permuting objects.
fn shapes(k: usize, max_arrows: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut sizes = vec![0; k * k];
    fn rec(pos: usize, k: usize, left: usize, sizes: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == k * k {
            out.push(sizes.clone());
            return;
        }
        let diagonal = pos / k == pos % k;
        let lo = usize::from(diagonal);
        for s in lo..=left + lo {
            if s - lo > left {
                break;
            }
            sizes[pos] = s;
            rec(pos + 1, k, left - (s - lo), sizes, out);
        }
    }
    rec(0, k, max_arrows.saturating_sub(k), &mut sizes, &mut out);
    let perms = permutations(k);
    out.retain(|s| perms.iter().all(|p| permuted(s, p, k) >= *s));
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

fn permuted(s: &[usize], p: &[usize], k: usize) -> Vec<usize> {
    let mut out = vec![0; k * k];
    for a in 0..k {
        for b in 0..k {
            out[p[a] * k + p[b]] = s[a * k + b];
        }
    }
    out
}

fn build(shape: &Shape, comp: &[Vec<usize>]) -> FinCat {
    const NAMES: [&str; 3] = ["a", "b", "c"];
    let k = shape.objects;
    let objects = NAMES[..k].iter().map(|s| s.to_string()).collect();
    let arrows = shape
        .ends
        .iter()
        .enumerate()
        .map(|(f, &(s, d))| (if f < k { format!("1{}", NAMES[s]) } else { format!("f{}", f - k) }, s, d))
        .collect();
    FinCat::build(objects, arrows, (0..k).collect(), |g, f| comp[f][g]).expect("enumerated table is well typed")
}

/// Lexicographically least encoding of the composition table over all
/// relabellings that fix the shape.
fn canonical(shape: &Shape, sizes: &[usize], comp: &[Vec<usize>], object_perms: &[Vec<usize>]) -> Vec<usize> {
    let k = shape.objects;
    let n = shape.ends.len();
    let mut best: Option<Vec<usize>> = None;
    let mut sigma = vec![0; n];
    for pi in object_perms {
        debug_assert_eq!(permuted(sizes, pi, k), sizes);
        sigma[..k].copy_from_slice(&pi[..k]);
        // non-identity arrows of each hom, old and new
        let homs: Vec<(Vec<usize>, Vec<usize>)> = (0..k * k)
            .map(|h| {
                let (a, b) = (h / k, h % k);
                let old: Vec<usize> = shape.hom[h].iter().copied().filter(|&f| f >= k).collect();
                let new: Vec<usize> = shape.hom[pi[a] * k + pi[b]].iter().copied().filter(|&f| f >= k).collect();
                (old, new)
            })
            .filter(|(o, _)| !o.is_empty())
            .collect();
        let perms: Vec<Vec<Vec<usize>>> = homs.iter().map(|(o, _)| permutations(o.len())).collect();
        let mut choice = vec![0; homs.len()];
        loop {
            for (h, (old, new)) in homs.iter().enumerate() {
                for (i, &f) in old.iter().enumerate() {
                    sigma[f] = new[perms[h][choice[h]][i]];
                }
            }
            let mut inverse = vec![0; n];
            for (f, &t) in sigma.iter().enumerate() {
                inverse[t] = f;
            }
            let mut code = Vec::with_capacity(shape.pairs.len());
            for &(f, g) in &shape.pairs {
                code.push(sigma[comp[inverse[f]][inverse[g]]]);
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
            // next combination
            let mut h = 0;
            while h < choice.len() {
                choice[h] += 1;
                if choice[h] < perms[h].len() {
                    break;
                }
                choice[h] = 0;
                h += 1;
            }
            if h == choice.len() {
                break;
            }
        }
    }
    best.unwrap_or_default()
}

/// Which categories [`enumerate_categories`] visits.
#[derive(Clone, Debug)]
pub struct CategoryQuery {
    pub max_objects: usize,
    /// Identities included.
    pub max_arrows: usize,
    /// Only categories whose endomorphisms are identities and with no
    /// arrows both ways between distinct objects.
    pub loop_free: bool,
    pub deadline: Option<Instant>,
}

impl CategoryQuery {
    pub fn new(max_objects: usize, max_arrows: usize) -> Self {
        Self { max_objects, max_arrows, loop_free: false, deadline: None }
    }
}

fn loop_free_shape(k: usize, sizes: &[usize]) -> bool {
    (0..k).all(|a| sizes[a * k + a] == 1 && (0..k).all(|b| a == b || sizes[a * k + b] == 0 || sizes[b * k + a] == 0))
}

/// Every category with `1..=max_objects` objects and at most `max_arrows`
/// arrows (identities included), one per isomorphism class. The empty
/// category is not included.
pub fn enumerate_categories(q: &CategoryQuery) -> CategoryEnumeration {
    assert!(q.max_objects <= 3, "object names run a, b, c");
    let mut tables = 0;
    let mut complete = true;
    let mut categories = Vec::new();
    // shapes by total arrow count first, so a cut-off search is still
    // exhaustive below the count it stopped at
    let mut all: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for k in 1..=q.max_objects {
        for sizes in shapes(k, q.max_arrows) {
            if !q.loop_free || loop_free_shape(k, &sizes) {
                all.push((sizes.iter().sum(), k, sizes));
            }
        }
    }
    all.sort();
    let perms: Vec<Vec<Vec<usize>>> = (0..=q.max_objects).map(permutations).collect();
    let mut complete_through = q.max_arrows;
    for (total, k, sizes) in all {
        let Some(shape) = Shape::new(k, &sizes) else { continue };
        let n = shape.ends.len();
        let mut comp = vec![vec![UNSET; n]; n];
        for f in 0..n {
            let (s, d) = shape.ends[f];
            comp[f][d] = f;
            comp[s][f] = f;
        }
        let mut search = Search { shape: &shape, comp, found: Vec::new(), deadline: q.deadline, stopped: false };
        search.rec(0);
        tables += search.found.len();
        if search.stopped {
            // a partially searched shape is dropped rather than canonicalized
            complete = false;
            complete_through = total - 1;
            break;
        }
        let stable: Vec<Vec<usize>> = perms[k].iter().filter(|p| permuted(&sizes, p, k) == sizes).cloned().collect();
        let mut seen = std::collections::BTreeMap::new();
        for table in search.found {
            seen.entry(canonical(&shape, &sizes, &table, &stable)).or_insert(table);
        }
        categories.extend(seen.values().map(|t| build(&shape, t)));
    }
    if !complete {
        categories.retain(|c| c.arrow_count() <= complete_through);
    }
    CategoryEnumeration { categories, complete, tables, complete_through }
}

fn monoid(elements: &[&str], table: &[Vec<usize>]) -> FinCat {
    FinCat::monoid(elements, table, 0).expect("monoid table")
}

/// Hand-picked categories, including some with more arrows than the
/// enumerated range.
pub fn named_categories() -> Vec<(String, FinCat)> {
    let mut out = vec![
        ("[0]".to_string(), FinCat::ordinal(0)),
        ("[1]".into(), FinCat::ordinal(1)),
        ("[2]".into(), FinCat::ordinal(2)),
        ("[3]".into(), FinCat::ordinal(3)),
        ("discrete 2".into(), FinCat::discrete(&["p", "q"])),
        ("span".into(), FinCat::preorder(&["o", "l", "r"], |x, y| x == y || x == 0).unwrap()),
        ("cospan".into(), FinCat::preorder(&["l", "r", "o"], |x, y| x == y || y == 2).unwrap()),
        ("iso".into(), FinCat::preorder(&["x", "y"], |_, _| true).unwrap()),
        ("Z/2".into(), monoid(&["1", "s"], &[vec![0, 1], vec![1, 0]])),
        ("Z/3".into(), monoid(&["1", "r", "rr"], &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]])),
        ("idempotent".into(), monoid(&["1", "e"], &[vec![0, 1], vec![1, 1]])),
        ("left zeros".into(), monoid(&["1", "x", "y"], &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]])),
    ];
    let parallel = FinCat::build(
        vec!["a".into(), "b".into()],
        vec![("1a".into(), 0, 0), ("1b".into(), 1, 1), ("f".into(), 0, 1), ("g".into(), 0, 1)],
        vec![0, 1],
        |g, f| if g <= 1 { f } else { g },
    )
    .unwrap();
    out.push(("parallel pair".into(), parallel));
    // an idempotent e on a split through b: a → b → a
    let split = FinCat::build(
        vec!["a".into(), "b".into()],
        vec![("1a".into(), 0, 0), ("1b".into(), 1, 1), ("r".into(), 0, 1), ("i".into(), 1, 0), ("e".into(), 0, 0)],
        vec![0, 1],
        |g, f| match (g, f) {
            (0, f) | (1, f) => f,
            (g, 0) | (g, 1) => g,
            (2, 3) => 1,     // r ∘ i = 1b
            (3, 2) => 4,     // i ∘ r = e
            (2, 4) => 2,     // r ∘ e = r
            (4, 3) => 3,     // e ∘ i = i
            (4, 4) => 4,
            _ => unreachable!("not composable"),
        },
    )
    .unwrap();
    out.push(("split idempotent".into(), split));
    out
}

/// The enumerated categories with at most four arrows, then the named
/// ones not isomorphic to any of them.
pub fn standard_categories() -> Vec<(String, FinCat)> {
    let e = enumerate_categories(&CategoryQuery::new(3, 4));
    let mut out: Vec<(String, Arc<FinCat>)> =
        e.categories.into_iter().enumerate().map(|(i, c)| (format!("enum{i}"), Arc::new(c))).collect();
    for (name, c) in named_categories() {
        let c = Arc::new(c);
        if out.iter().all(|(_, d)| find_isomorphism(d, &c).is_none()) {
            out.push((name, c));
        }
    }
    out.into_iter().map(|(n, c)| (n, Arc::try_unwrap(c).unwrap_or_else(|c| (*c).clone()))).collect()
}

/// Standard cells `Δₙ`, `∂Δₙ` and horns for `n ≤ max_n`, plus the circle
/// `Δ₁/∂Δ₁`, at the given bound.
pub fn simplicial_corpus(max_n: usize, bound: usize) -> Vec<(String, Arc<SimplicialSet>)> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.push((format!("Δ{n}"), Arc::new(simplex(n, bound).unwrap())));
        out.push((format!("∂Δ{n}"), Arc::new(boundary(n, bound).unwrap())));
        for k in 0..=n {
            if n >= 1 {
                out.push((format!("Λ{n},{k}"), Arc::new(horn(n, k, bound).unwrap())));
            }
        }
    }
    out.push(("circle".into(), circle(bound)));
    out
}

/// `Δ₁ / ∂Δ₁`.
pub fn circle(bound: usize) -> Arc<SimplicialSet> {
    let b = Arc::new(boundary(1, bound).unwrap());
    let i = SimplicialMap::inclusion(b.clone(), Arc::new(simplex(1, bound).unwrap())).unwrap();
    let c = SimplicialMap::to_point(b, Arc::new(simplex(0, bound).unwrap())).unwrap();
    pushout(&i, &c).unwrap().object
}

/// `Δ̃ₙ` for `n ≤ 3` and `ι` of the standard categories.
pub fn two_categories() -> Vec<(String, Fin2Cat)> {
    let mut out: Vec<(String, Fin2Cat)> = (0..=3).map(|n| (format!("Δ̃{n}"), delta_tilde(n))).collect();
    out.extend(standard_categories().into_iter().map(|(n, c)| (format!("ι({n})"), iota(&c))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_monoid_counts() {
        // monoids of order 1..=4 up to isomorphism: 1, 2, 7, 35
        let e = enumerate_categories(&CategoryQuery::new(1, 4));
        assert!(e.complete);
        let mut by_order = [0; 5];
        for c in &e.categories {
            by_order[c.arrow_count()] += 1;
        }
        assert_eq!(by_order[1..], [1, 2, 7, 35]);
    }

    #[test]
    fn posets_on_three_points() {
        // loop-free categories with one arrow per nonempty hom are posets:
        // 1 + 2 + 5 on one, two, three points
        let e = enumerate_categories(&CategoryQuery { loop_free: true, ..CategoryQuery::new(3, 6) });
        let posets = e.categories.iter().filter(|c| c.arrows().iter().all(|f| c.hom(f.src, f.dst).len() == 1)).count();
        assert_eq!(posets, 8);
    }

    #[test]
    fn named_categories_satisfy_the_laws() {
        for (name, c) in named_categories() {
            c.check_laws().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn classes_are_pairwise_non_isomorphic() {
        let e = enumerate_categories(&CategoryQuery::new(3, 5));
        assert!(e.complete);
        // monoids of order 5: 228
        assert_eq!(e.categories.iter().filter(|c| c.object_count() == 1 && c.arrow_count() == 5).count(), 228);
        let cats: Vec<Arc<FinCat>> = e.categories.into_iter().filter(|c| c.object_count() > 1).map(Arc::new).collect();
        for (i, a) in cats.iter().enumerate() {
            a.check_laws().unwrap();
            for b in &cats[i + 1..] {
                assert!(find_isomorphism(a, b).is_none());
            }
        }
    }
}
