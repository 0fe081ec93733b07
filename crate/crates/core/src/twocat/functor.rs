use std::ops::ControlFlow;
use std::sync::Arc;

use super::Fin2Cat;
use crate::csp::{Csp, Equation};
use crate::error::{Error, Result};

/// A strict 2-functor. `one[a * n + b]` and `two[a * n + b]` map the
/// 1-cells and 2-cells of `hom(a, b)` into `hom(F a, F b)`, where `n` is
/// the number of source objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFunctor {
    source: Arc<Fin2Cat>,
    target: Arc<Fin2Cat>,
    objects: Vec<usize>,
    one: Vec<Vec<usize>>,
    two: Vec<Vec<usize>>,
}

impl TwoFunctor {
    pub fn new(
        source: Arc<Fin2Cat>,
        target: Arc<Fin2Cat>,
        objects: Vec<usize>,
        one: Vec<Vec<usize>>,
        two: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(source, target, objects, one, two)?;
        if let Some(msg) = f.first_defect() {
            return Err(Error::Contract(msg));
        }
        Ok(f)
    }

    /// Shape- and range-checked constructor without the 2-functor laws.
    pub fn new_unchecked(
        source: Arc<Fin2Cat>,
        target: Arc<Fin2Cat>,
        objects: Vec<usize>,
        one: Vec<Vec<usize>>,
        two: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = source.object_count();
        if objects.len() != n || one.len() != n * n || two.len() != n * n {
            return Err(Error::Malformed("2-functor tables do not cover the source".into()));
        }
        if objects.iter().any(|&o| o >= target.object_count()) {
            return Err(Error::Malformed("2-functor points outside the target".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let (h, th) = (source.hom(a, b), target.hom(objects[a], objects[b]));
                let p = a * n + b;
                if one[p].len() != h.object_count() || two[p].len() != h.arrow_count() {
                    return Err(Error::Malformed("2-functor hom tables have the wrong size".into()));
                }
                if one[p].iter().any(|&x| x >= th.object_count()) || two[p].iter().any(|&x| x >= th.arrow_count()) {
                    return Err(Error::Malformed("2-functor hom tables point outside the target".into()));
                }
            }
        }
        Ok(Self { source, target, objects, one, two })
    }

    pub fn identity(c: Arc<Fin2Cat>) -> Self {
        let n = c.object_count();
        let mut one = Vec::with_capacity(n * n);
        let mut two = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                one.push((0..c.hom(a, b).object_count()).collect());
                two.push((0..c.hom(a, b).arrow_count()).collect());
            }
        }
        Self { source: c.clone(), target: c, objects: (0..n).collect(), one, two }
    }

    /// The 2-functor to a terminal 2-category.
    pub fn to_terminal(c: Arc<Fin2Cat>, terminal: Arc<Fin2Cat>) -> Result<Self> {
        if terminal.object_count() != 1 || terminal.one_cell_count() != 1 || terminal.two_cell_count() != 1 {
            return Err(Error::Domain("target is not terminal".into()));
        }
        let n = c.object_count();
        let mut one = Vec::with_capacity(n * n);
        let mut two = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                one.push(vec![0; c.hom(a, b).object_count()]);
                two.push(vec![0; c.hom(a, b).arrow_count()]);
            }
        }
        Self::new(c, terminal, vec![0; n], one, two)
    }

    pub fn source(&self) -> &Arc<Fin2Cat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Fin2Cat> {
        &self.target
    }

    pub fn object(&self, a: usize) -> usize {
        self.objects[a]
    }

    pub fn object_table(&self) -> &[usize] {
        &self.objects
    }

    /// Image of the 1-cell `f` of `hom(a, b)`.
    pub fn one_cell(&self, a: usize, b: usize, f: usize) -> usize {
        self.one[a * self.source.object_count() + b][f]
    }

    /// Image of the 2-cell `α` of `hom(a, b)`.
    pub fn two_cell(&self, a: usize, b: usize, alpha: usize) -> usize {
        self.two[a * self.source.object_count() + b][alpha]
    }

    pub fn one_tables(&self) -> &[Vec<usize>] {
        &self.one
    }

    pub fn two_tables(&self) -> &[Vec<usize>] {
        &self.two
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TwoFunctor) -> Result<TwoFunctor> {
        if *self.target != *other.source {
            return Err(Error::Contract("composite of non-composable 2-functors".into()));
        }
        let n = self.source.object_count();
        let mut one = Vec::with_capacity(n * n);
        let mut two = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (fa, fb) = (self.objects[a], self.objects[b]);
                one.push(self.one[a * n + b].iter().map(|&x| other.one_cell(fa, fb, x)).collect());
                two.push(self.two[a * n + b].iter().map(|&x| other.two_cell(fa, fb, x)).collect());
            }
        }
        Ok(Self {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&o| other.objects[o]).collect(),
            one,
            two,
        })
    }

    /// Description of the first violated 2-functor law, if any.
    pub fn first_defect(&self) -> Option<String> {
        let (s, t) = (&*self.source, &*self.target);
        let n = s.object_count();
        let name = |a: usize, b: usize| format!("`{}` → `{}`", s.object_id(a), s.object_id(b));
        for a in 0..n {
            if self.one_cell(a, a, s.unit(a)) != t.unit(self.objects[a]) {
                return Some(format!("unit of `{}` is not preserved", s.object_id(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (h, th) = (s.hom(a, b), t.hom(self.objects[a], self.objects[b]));
                for f in 0..h.object_count() {
                    if self.two_cell(a, b, h.identity(f)) != th.identity(self.one_cell(a, b, f)) {
                        return Some(format!("identity 2-cell not preserved in {}", name(a, b)));
                    }
                }
                for al in 0..h.arrow_count() {
                    let x = self.two_cell(a, b, al);
                    if th.src(x) != self.one_cell(a, b, h.src(al)) || th.dst(x) != self.one_cell(a, b, h.dst(al)) {
                        return Some(format!("2-cell sent to a 2-cell of the wrong type in {}", name(a, b)));
                    }
                }
                for (g, f, gf) in h.composition_triples() {
                    if th.compose(self.two_cell(a, b, g), self.two_cell(a, b, f)) != Some(self.two_cell(a, b, gf)) {
                        return Some(format!("vertical composition not preserved in {}", name(a, b)));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (fa, fb, fc) = (self.objects[a], self.objects[b], self.objects[c]);
                    let (hab, hbc) = (s.hom(a, b), s.hom(b, c));
                    for f in 0..hab.object_count() {
                        for g in 0..hbc.object_count() {
                            let lhs = self.one_cell(a, c, s.hcomp1(a, b, c, f, g));
                            let rhs = t.hcomp1(fa, fb, fc, self.one_cell(a, b, f), self.one_cell(b, c, g));
                            if lhs != rhs {
                                return Some(format!("horizontal composition of 1-cells not preserved through `{}`", s.object_id(b)));
                            }
                        }
                    }
                    for al in 0..hab.arrow_count() {
                        for be in 0..hbc.arrow_count() {
                            let lhs = self.two_cell(a, c, s.hcomp2(a, b, c, al, be));
                            let rhs = t.hcomp2(fa, fb, fc, self.two_cell(a, b, al), self.two_cell(b, c, be));
                            if lhs != rhs {
                                return Some(format!("horizontal composition of 2-cells not preserved through `{}`", s.object_id(b)));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_isomorphism(&self) -> bool {
        tables_bijective(&self.source, &self.target, &self.objects, &self.one, &self.two)
    }

    pub fn is_two_functor(&self) -> bool {
        self.first_defect().is_none()
    }
}

/// Global numbering of the cells of a 2-category, hom by hom.
struct CellIndex {
    n: usize,
    off1: Vec<usize>,
    off2: Vec<usize>,
    pair1: Vec<usize>,
    pair2: Vec<usize>,
}

impl CellIndex {
    fn new(c: &Fin2Cat) -> Self {
        let n = c.object_count();
        let (mut off1, mut off2, mut pair1, mut pair2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for a in 0..n {
            for b in 0..n {
                let p = a * n + b;
                off1.push(pair1.len());
                off2.push(pair2.len());
                pair1.extend(std::iter::repeat_n(p, c.hom(a, b).object_count()));
                pair2.extend(std::iter::repeat_n(p, c.hom(a, b).arrow_count()));
            }
        }
        Self { n, off1, off2, pair1, pair2 }
    }

    fn ends(&self, p: usize) -> (usize, usize) {
        (p / self.n, p % self.n)
    }
}

const SRC1: usize = 0;
const DST1: usize = 1;
const UNIT: usize = 2;
const SRC2: usize = 3;
const DST2: usize = 4;
const ID2: usize = 5;
const VCOMP: usize = 6;
const H1: usize = 7;
const H2: usize = 8;

/// Calls `visit(objects, one, two)` for every strict 2-functor `a → b`.
/// Tables have the layout of [`TwoFunctor`].
pub fn for_each_two_functor<V>(a: &Fin2Cat, b: &Fin2Cat, mut visit: V)
where
    V: FnMut(&[usize], &[Vec<usize>], &[Vec<usize>]) -> ControlFlow<()>,
{
    let sa = CellIndex::new(a);
    let tb = CellIndex::new(b);
    let n = a.object_count();
    let n1 = sa.pair1.len();
    let n2 = sa.pair2.len();
    let local1 = |g: usize| g - sa.off1[sa.pair1[g]];
    let local2 = |g: usize| g - sa.off2[sa.pair2[g]];

    // variable order: objects, 1-cells (units, indecomposable, rest),
    // 2-cells (identities, indecomposable, rest)
    let mut is_unit = vec![false; n1];
    for x in 0..n {
        is_unit[sa.off1[x * n + x] + a.unit(x)] = true;
    }
    let mut dec1 = vec![false; n1];
    let mut dec2 = vec![false; n2];
    let mut is_id2 = vec![false; n2];
    for x in 0..n {
        for y in 0..n {
            let h = a.hom(x, y);
            for f in 0..h.object_count() {
                is_id2[sa.off2[x * n + y] + h.identity(f)] = true;
            }
            for (g, f, gf) in h.composition_triples() {
                if !h.is_identity(g) && !h.is_identity(f) {
                    dec2[sa.off2[x * n + y] + gf] = true;
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz) = (a.hom(x, y), a.hom(y, z));
                for f in 0..hxy.object_count() {
                    for g in 0..hyz.object_count() {
                        if !is_unit[sa.off1[x * n + y] + f] && !is_unit[sa.off1[y * n + z] + g] {
                            dec1[sa.off1[x * n + z] + a.hcomp1(x, y, z, f, g)] = true;
                        }
                    }
                }
                for al in 0..hxy.arrow_count() {
                    for be in 0..hyz.arrow_count() {
                        if !is_id2[sa.off2[x * n + y] + al] || !is_id2[sa.off2[y * n + z] + be] {
                            let gamma = sa.off2[x * n + z] + a.hcomp2(x, y, z, al, be);
                            if !is_id2[gamma] && gamma != sa.off2[x * n + y] + al && gamma != sa.off2[y * n + z] + be {
                                dec2[gamma] = true;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut order1: Vec<usize> = (0..n1).filter(|&g| is_unit[g]).collect();
    order1.extend((0..n1).filter(|&g| !is_unit[g] && !dec1[g]));
    order1.extend((0..n1).filter(|&g| !is_unit[g] && dec1[g]));
    let mut order2: Vec<usize> = (0..n2).filter(|&g| is_id2[g]).collect();
    order2.extend((0..n2).filter(|&g| !is_id2[g] && !dec2[g]));
    order2.extend((0..n2).filter(|&g| !is_id2[g] && dec2[g]));
    let mut var1 = vec![0; n1];
    for (k, &g) in order1.iter().enumerate() {
        var1[g] = n + k;
    }
    let mut var2 = vec![0; n2];
    for (k, &g) in order2.iter().enumerate() {
        var2[g] = n + n1 + k;
    }

    let mut csp = Csp::default();
    csp.domains.extend(std::iter::repeat_n((0..b.object_count()).collect::<Vec<_>>(), n));
    csp.domains.extend(std::iter::repeat_n((0..tb.pair1.len()).collect::<Vec<_>>(), n1));
    csp.domains.extend(std::iter::repeat_n((0..tb.pair2.len()).collect::<Vec<_>>(), n2));
    let eq = |csp: &mut Csp, x: usize, y: usize, z: usize, op: usize| csp.equations.push(Equation { x, y, z, op });
    for g in 0..n1 {
        let (x, y) = sa.ends(sa.pair1[g]);
        eq(&mut csp, var1[g], var1[g], x, SRC1);
        eq(&mut csp, var1[g], var1[g], y, DST1);
    }
    for x in 0..n {
        eq(&mut csp, x, x, var1[sa.off1[x * n + x] + a.unit(x)], UNIT);
    }
    for x in 0..n {
        for y in 0..n {
            let p = x * n + y;
            let h = a.hom(x, y);
            for al in 0..h.arrow_count() {
                let g = sa.off2[p] + al;
                eq(&mut csp, var2[g], var2[g], var1[sa.off1[p] + h.src(al)], SRC2);
                eq(&mut csp, var2[g], var2[g], var1[sa.off1[p] + h.dst(al)], DST2);
            }
            for f in 0..h.object_count() {
                eq(&mut csp, var1[sa.off1[p] + f], var1[sa.off1[p] + f], var2[sa.off2[p] + h.identity(f)], ID2);
            }
            for (g, f, gf) in h.composition_triples() {
                if !h.is_identity(g) && !h.is_identity(f) {
                    eq(&mut csp, var2[sa.off2[p] + g], var2[sa.off2[p] + f], var2[sa.off2[p] + gf], VCOMP);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz) = (a.hom(x, y), a.hom(y, z));
                let (pxy, pyz, pxz) = (x * n + y, y * n + z, x * n + z);
                for f in 0..hxy.object_count() {
                    for g in 0..hyz.object_count() {
                        if is_unit[sa.off1[pxy] + f] || is_unit[sa.off1[pyz] + g] {
                            continue;
                        }
                        let h = a.hcomp1(x, y, z, f, g);
                        eq(&mut csp, var1[sa.off1[pxy] + f], var1[sa.off1[pyz] + g], var1[sa.off1[pxz] + h], H1);
                    }
                }
                let unit_id = |w: usize| a.hom(w, w).identity(a.unit(w));
                for al in 0..hxy.arrow_count() {
                    for be in 0..hyz.arrow_count() {
                        if (x == y && al == unit_id(x)) || (y == z && be == unit_id(y)) {
                            continue;
                        }
                        let h = a.hcomp2(x, y, z, al, be);
                        eq(&mut csp, var2[sa.off2[pxy] + al], var2[sa.off2[pyz] + be], var2[sa.off2[pxz] + h], H2);
                    }
                }
            }
        }
    }

    let nb = b.object_count();
    let op = |op: usize, x: usize, y: usize| -> Option<usize> {
        match op {
            SRC1 => Some(tb.ends(tb.pair1[x]).0),
            DST1 => Some(tb.ends(tb.pair1[x]).1),
            UNIT => Some(tb.off1[x * nb + x] + b.unit(x)),
            SRC2 => {
                let p = tb.pair2[x];
                let (u, v) = tb.ends(p);
                Some(tb.off1[p] + b.hom(u, v).src(x - tb.off2[p]))
            }
            DST2 => {
                let p = tb.pair2[x];
                let (u, v) = tb.ends(p);
                Some(tb.off1[p] + b.hom(u, v).dst(x - tb.off2[p]))
            }
            ID2 => {
                let p = tb.pair1[x];
                let (u, v) = tb.ends(p);
                Some(tb.off2[p] + b.hom(u, v).identity(x - tb.off1[p]))
            }
            VCOMP => {
                let p = tb.pair2[x];
                if tb.pair2[y] != p {
                    return None;
                }
                let (u, v) = tb.ends(p);
                b.hom(u, v).compose(x - tb.off2[p], y - tb.off2[p]).map(|c| tb.off2[p] + c)
            }
            H1 => {
                let (u, v) = tb.ends(tb.pair1[x]);
                let (v2, w) = tb.ends(tb.pair1[y]);
                if v != v2 {
                    return None;
                }
                let c = b.hcomp1(u, v, w, x - tb.off1[tb.pair1[x]], y - tb.off1[tb.pair1[y]]);
                Some(tb.off1[u * nb + w] + c)
            }
            _ => {
                let (u, v) = tb.ends(tb.pair2[x]);
                let (v2, w) = tb.ends(tb.pair2[y]);
                if v != v2 {
                    return None;
                }
                let c = b.hcomp2(u, v, w, x - tb.off2[tb.pair2[x]], y - tb.off2[tb.pair2[y]]);
                Some(tb.off2[u * nb + w] + c)
            }
        }
    };
    let mut one: Vec<Vec<usize>> = (0..n * n).map(|p| vec![0; sa.off1.get(p + 1).copied().unwrap_or(n1) - sa.off1[p]]).collect();
    let mut two: Vec<Vec<usize>> = (0..n * n).map(|p| vec![0; sa.off2.get(p + 1).copied().unwrap_or(n2) - sa.off2[p]]).collect();
    csp.solve(op, |vals| {
        for g in 0..n1 {
            let v = vals[var1[g]];
            one[sa.pair1[g]][local1(g)] = v - tb.off1[tb.pair1[v]];
        }
        for g in 0..n2 {
            let v = vals[var2[g]];
            two[sa.pair2[g]][local2(g)] = v - tb.off2[tb.pair2[v]];
        }
        visit(&vals[..n], &one, &two)
    });
}

fn is_bijection(t: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    t.len() == n && t.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn tables_bijective(a: &Fin2Cat, b: &Fin2Cat, objects: &[usize], one: &[Vec<usize>], two: &[Vec<usize>]) -> bool {
    let n = a.object_count();
    if !is_bijection(objects, b.object_count()) {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            let h = b.hom(objects[x], objects[y]);
            is_bijection(&one[x * n + y], h.object_count()) && is_bijection(&two[x * n + y], h.arrow_count())
        })
    })
}

/// A strict 2-isomorphism `a → b`, if one exists.
pub fn find_two_isomorphism(a: &Arc<Fin2Cat>, b: &Arc<Fin2Cat>) -> Option<TwoFunctor> {
    if a.object_count() != b.object_count() || a.one_cell_count() != b.one_cell_count() || a.two_cell_count() != b.two_cell_count() {
        return None;
    }
    let mut found = None;
    for_each_two_functor(a, b, |o, one, two| {
        if tables_bijective(a, b, o, one, two) {
            found = Some((o.to_vec(), one.to_vec(), two.to_vec()));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found.map(|(objects, one, two)| TwoFunctor { source: a.clone(), target: b.clone(), objects, one, two })
}

/// All strict 2-functors `a → b`, ordered by object table, then 1-cell
/// tables, then 2-cell tables.
pub fn enumerate_two_functors(a: &Arc<Fin2Cat>, b: &Arc<Fin2Cat>) -> Vec<TwoFunctor> {
    let mut out = Vec::new();
    for_each_two_functor(a, b, |o, one, two| {
        out.push((o.to_vec(), one.to_vec(), two.to_vec()));
        ControlFlow::Continue(())
    });
    out.sort();
    out.into_iter()
        .map(|(objects, one, two)| TwoFunctor { source: a.clone(), target: b.clone(), objects, one, two })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{enumerate_functors, FinCat};
    use crate::twocat::{delta_tilde, iota, tau};

    #[test]
    fn into_terminal_is_unique() {
        let e = Arc::new(Fin2Cat::terminal());
        for n in 0..=3 {
            let d = Arc::new(delta_tilde(n));
            assert_eq!(enumerate_two_functors(&d, &e).len(), 1);
        }
    }

    #[test]
    fn delta_one_into_arrow() {
        let d1 = Arc::new(delta_tilde(1));
        let arrow = Arc::new(iota(&FinCat::ordinal(1)));
        let all = enumerate_two_functors(&d1, &arrow);
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(TwoFunctor::is_two_functor));
    }

    #[test]
    fn delta_two_into_iota_counts_composable_pairs() {
        let z2 = FinCat::monoid(&["e", "s"], &[vec![0, 1], vec![1, 0]], 0).unwrap();
        for c in [FinCat::ordinal(2), z2, FinCat::discrete(&["a", "b"])] {
            let pairs = c.composition_triples().len();
            let d2 = Arc::new(delta_tilde(2));
            assert_eq!(enumerate_two_functors(&d2, &Arc::new(iota(&c))).len(), pairs);
        }
    }

    #[test]
    fn tau_iota_adjunction_counts() {
        let cats = [FinCat::ordinal(1), FinCat::ordinal(2), FinCat::discrete(&["a", "b"])];
        let twos = [delta_tilde(2), delta_tilde(1), iota(&FinCat::ordinal(1))];
        for a in &twos {
            for d in &cats {
                let lhs = enumerate_two_functors(&Arc::new(a.clone()), &Arc::new(iota(d))).len();
                let rhs = enumerate_functors(&Arc::new(tau(a)), &Arc::new(d.clone())).len();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
