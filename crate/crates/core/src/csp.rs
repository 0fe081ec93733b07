//! A small finite-domain constraint solver shared by the functor and
//! 2-functor enumerators.
//!
//! Every variable takes a value from a fixed domain. Constraints are
//! equations `z = op(x, y)` where `op` is a partial binary operation of the
//! target structure; unary constraints are expressed through the domains.
//! Variables are assigned in index order; when an equation defines a
//! variable from two earlier ones its value is forced instead of searched.

use std::ops::ControlFlow;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Equation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub op: usize,
}

#[derive(Default)]
pub(crate) struct Csp {
    pub domains: Vec<Vec<usize>>,
    pub equations: Vec<Equation>,
    /// When set, variables sharing a group must take distinct values.
    pub distinct_groups: Option<Vec<usize>>,
}

impl Csp {
    pub fn solve<O, V>(&self, op: O, mut visit: V)
    where
        O: Fn(usize, usize, usize) -> Option<usize>,
        V: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = self.domains.len();
        let mut sorted_domains = self.domains.clone();
        for d in &mut sorted_domains {
            d.sort_unstable();
            d.dedup();
        }
        let mut defining: Vec<Option<Equation>> = vec![None; n];
        let mut checks: Vec<Vec<Equation>> = vec![Vec::new(); n];
        for &e in &self.equations {
            let last = e.x.max(e.y).max(e.z);
            checks[last].push(e);
            if e.z == last && e.x < e.z && e.y < e.z && defining[e.z].is_none() {
                defining[e.z] = Some(e);
            }
        }
        let max_group = self.distinct_groups.as_ref().map_or(0, |g| g.iter().copied().max().map_or(0, |m| m + 1));
        let mut used: Vec<std::collections::HashSet<usize>> = vec![Default::default(); max_group];
        let mut assign = vec![usize::MAX; n];
        let ctx = Ctx { csp: self, domains: &sorted_domains, defining: &defining, checks: &checks, op: &op };
        let _ = ctx.rec(0, &mut assign, &mut used, &mut visit);
    }
}

struct Ctx<'a, O> {
    csp: &'a Csp,
    domains: &'a [Vec<usize>],
    defining: &'a [Option<Equation>],
    checks: &'a [Vec<Equation>],
    op: &'a O,
}

impl<O> Ctx<'_, O>
where
    O: Fn(usize, usize, usize) -> Option<usize>,
{
    fn rec<V>(&self, v: usize, assign: &mut Vec<usize>, used: &mut Vec<std::collections::HashSet<usize>>, visit: &mut V) -> ControlFlow<()>
    where
        V: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if v == assign.len() {
            return visit(assign);
        }
        let group = self.csp.distinct_groups.as_ref().map(|g| g[v]);
        let mut attempt = |val: usize, assign: &mut Vec<usize>, used: &mut Vec<std::collections::HashSet<usize>>| -> ControlFlow<()> {
            if let Some(g) = group {
                if used[g].contains(&val) {
                    return ControlFlow::Continue(());
                }
            }
            assign[v] = val;
            let ok = self.checks[v]
                .iter()
                .all(|e| (self.op)(e.op, assign[e.x], assign[e.y]) == Some(assign[e.z]));
            if ok {
                if let Some(g) = group {
                    used[g].insert(val);
                }
                let flow = self.rec(v + 1, assign, used, visit);
                if let Some(g) = group {
                    used[g].remove(&val);
                }
                flow?;
            }
            ControlFlow::Continue(())
        };
        if let Some(e) = self.defining[v] {
            if let Some(val) = (self.op)(e.op, assign[e.x], assign[e.y]) {
                if self.domains[v].binary_search(&val).is_ok() {
                    attempt(val, assign, used)?;
                }
            }
        } else {
            for &val in &self.domains[v] {
                attempt(val, assign, used)?;
            }
        }
        assign[v] = usize::MAX;
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_addition_mod_three() {
        // x + y = z over Z/3 with z fixed to 0
        let csp = Csp {
            domains: vec![vec![0, 1, 2], vec![0, 1, 2], vec![0]],
            equations: vec![Equation { x: 0, y: 1, z: 2, op: 0 }],
            distinct_groups: None,
        };
        let mut sols = Vec::new();
        csp.solve(|_, a, b| Some((a + b) % 3), |s| {
            sols.push(s.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(sols, vec![vec![0, 0, 0], vec![1, 2, 0], vec![2, 1, 0]]);
    }

    #[test]
    fn distinct_groups_prune() {
        let csp = Csp {
            domains: vec![vec![0, 1], vec![0, 1]],
            equations: vec![],
            distinct_groups: Some(vec![0, 0]),
        };
        let mut count = 0;
        csp.solve(|_, _, _| None, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 2);
    }
}
