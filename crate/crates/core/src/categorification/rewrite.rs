//! Knuth–Bendix completion for typed string rewriting (paths in a graph).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

pub type Word = Vec<usize>;

/// Bounds for completion and normal-form enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_rules: usize,
    pub max_word: usize,
    pub max_elements: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_rules: 400, max_word: 24, max_elements: 20_000 }
    }
}

/// Length first, then lexicographic on generator indices.
pub fn shortlex(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

fn orient(a: Word, b: Word) -> Option<Rule> {
    match shortlex(&a, &b) {
        Ordering::Greater => Some(Rule { lhs: a, rhs: b }),
        Ordering::Less => Some(Rule { lhs: b, rhs: a }),
        Ordering::Equal => None,
    }
}

fn find(hay: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&p| hay[p..p + needle.len()] == *needle)
}

/// Leftmost-first rewriting to normal form.
pub fn normal_form(rules: &[Rule], w: &[usize]) -> Word {
    let mut w = w.to_vec();
    'outer: loop {
        for r in rules {
            if let Some(p) = find(&w, &r.lhs) {
                w.splice(p..p + r.lhs.len(), r.rhs.iter().copied());
                continue 'outer;
            }
        }
        return w;
    }
}

pub fn is_reducible(rules: &[Rule], w: &[usize]) -> bool {
    rules.iter().any(|r| find(w, &r.lhs).is_some())
}

pub enum Completion {
    Confluent(Vec<Rule>),
    Exhausted(String),
}

fn critical_pairs(a: &Rule, b: &Rule) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    let (l1, l2) = (&a.lhs, &b.lhs);
    // a suffix of l1 overlapping a prefix of l2
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let mut x = a.rhs.clone();
            x.extend_from_slice(&l2[k..]);
            let mut y = l1[..l1.len() - k].to_vec();
            y.extend_from_slice(&b.rhs);
            out.push((x, y));
        }
    }
    // l2 inside l1
    if l2.len() <= l1.len() {
        for p in 0..=l1.len() - l2.len() {
            if l1[p..p + l2.len()] == **l2 && !(std::ptr::eq(a, b)) {
                let mut y = l1[..p].to_vec();
                y.extend_from_slice(&b.rhs);
                y.extend_from_slice(&l1[p + l2.len()..]);
                out.push((a.rhs.clone(), y));
            }
        }
    }
    out
}

/// Drops rules with reducible left sides (feeding them back as equations)
/// and normalizes right sides, until stable.
fn interreduce(mut rules: Vec<Rule>) -> Vec<Rule> {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < rules.len() {
            let others: Vec<Rule> = rules.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
            if is_reducible(&others, &rules[i].lhs) {
                let r = rules.remove(i);
                let (a, b) = (normal_form(&rules, &r.lhs), normal_form(&rules, &r.rhs));
                if let Some(nr) = orient(a, b) {
                    if !rules.contains(&nr) {
                        rules.push(nr);
                    }
                }
                changed = true;
                continue;
            }
            let rhs = normal_form(&others, &rules[i].rhs);
            if rhs != rules[i].rhs {
                rules[i].rhs = rhs;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            rules.sort_by(|a, b| shortlex(&a.lhs, &b.lhs).then_with(|| shortlex(&a.rhs, &b.rhs)));
            return rules;
        }
    }
}

/// Completes the equations into a confluent, terminating system, or gives
/// up when the rule count or a word length exceeds the budget.
pub fn complete(equations: &[(Word, Word)], budget: &Budget) -> Completion {
    let mut rules: Vec<Rule> = Vec::new();
    for (a, b) in equations {
        let (a, b) = (normal_form(&rules, a), normal_form(&rules, b));
        if let Some(r) = orient(a, b) {
            rules.push(r);
            rules = interreduce(rules);
        }
    }
    let mut checked: BTreeSet<(Word, Word, Word, Word)> = BTreeSet::new();
    loop {
        let mut fresh: Vec<Rule> = Vec::new();
        for a in &rules {
            for b in &rules {
                let key = (a.lhs.clone(), a.rhs.clone(), b.lhs.clone(), b.rhs.clone());
                if checked.contains(&key) {
                    continue;
                }
                checked.insert(key);
                for (x, y) in critical_pairs(a, b) {
                    let (x, y) = (normal_form(&rules, &x), normal_form(&rules, &y));
                    if let Some(r) = orient(x, y) {
                        if r.lhs.len() > budget.max_word {
                            return Completion::Exhausted(format!("a rule of length {} exceeds the word bound", r.lhs.len()));
                        }
                        if !fresh.contains(&r) {
                            fresh.push(r);
                        }
                    }
                }
            }
        }
        if fresh.is_empty() {
            return Completion::Confluent(rules);
        }
        rules.extend(fresh);
        rules = interreduce(rules);
        if rules.len() > budget.max_rules {
            return Completion::Exhausted(format!("more than {} rules", budget.max_rules));
        }
    }
}

/// What the irreducible paths of a confluent system look like.
pub enum NormalForms {
    /// All irreducible paths, grouped by source object (empty paths first).
    Finite(Vec<(usize, usize, Word)>),
    /// An irreducible `prefix · loop^k` for every `k`.
    Infinite { prefix: Word, cycle: Word },
    TooMany,
}

struct WindowSearch<'a> {
    window: usize,
    ends: &'a [(usize, usize)],
    out_of: Vec<Vec<usize>>,
    rules: &'a [Rule],
    limit: usize,
    /// 1 while on the stack, 2 when finished.
    state: HashMap<(usize, Word), u8>,
    /// Nodes on the stack with the path length at which they were entered.
    trail: Vec<((usize, Word), usize)>,
    path: Word,
}

enum Stop {
    Cycle(Word, Word),
    Limit,
}

impl WindowSearch<'_> {
    /// Whether `w·g` stays irreducible given that `w` is; only left sides
    /// ending at the new letter can appear.
    fn extends(&self, w: &[usize], g: usize) -> bool {
        self.rules.iter().all(|r| {
            let l = r.lhs.len();
            l > w.len() + 1 || !(r.lhs[l - 1] == g && w[w.len() + 1 - l..] == r.lhs[..l - 1])
        })
    }

    fn visit(&mut self, node: (usize, Word)) -> Result<(), Stop> {
        if self.state.len() > self.limit {
            return Err(Stop::Limit);
        }
        self.state.insert(node.clone(), 1);
        self.trail.push((node.clone(), self.path.len()));
        for g in self.out_of[node.0].clone() {
            if !self.extends(&self.path, g) {
                continue;
            }
            self.path.push(g);
            let mut w = node.1.clone();
            w.push(g);
            if w.len() > self.window {
                w.remove(0);
            }
            let next = (self.ends[g].1, w);
            match self.state.get(&next) {
                Some(1) => {
                    let start = self.trail.iter().find(|t| t.0 == next).map_or(0, |t| t.1);
                    return Err(Stop::Cycle(self.path[..start].to_vec(), self.path[start..].to_vec()));
                }
                Some(_) => {}
                None => self.visit(next)?,
            }
            self.path.pop();
        }
        self.trail.pop();
        self.state.insert(node, 2);
        Ok(())
    }
}

/// Enumerates irreducible paths in the graph with generator endpoints
/// `ends`. Irreducibility only depends on windows as long as the longest
/// left side, so the paths are infinite exactly when the window graph has
/// a cycle.
pub fn normal_forms(objects: usize, ends: &[(usize, usize)], rules: &[Rule], budget: &Budget) -> NormalForms {
    let window = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(1).max(1) - 1;
    let out_of: Vec<Vec<usize>> = (0..objects).map(|o| (0..ends.len()).filter(|&g| ends[g].0 == o).collect()).collect();
    let mut search = WindowSearch {
        window,
        ends,
        out_of,
        rules,
        limit: budget.max_elements,
        state: HashMap::new(),
        trail: Vec::new(),
        path: Vec::new(),
    };
    for o in 0..objects {
        if search.state.contains_key(&(o, Vec::new())) {
            continue;
        }
        search.path.clear();
        search.trail.clear();
        match search.visit((o, Vec::new())) {
            Ok(()) => {}
            Err(Stop::Cycle(prefix, cycle)) => return NormalForms::Infinite { prefix, cycle },
            Err(Stop::Limit) => return NormalForms::TooMany,
        }
    }
    // no cycles, so plain enumeration terminates
    let mut out = Vec::new();
    for o in 0..objects {
        let mut stack: Vec<(usize, Word)> = vec![(o, Vec::new())];
        while let Some((end, w)) = stack.pop() {
            if out.len() >= budget.max_elements {
                return NormalForms::TooMany;
            }
            for &g in search.out_of[end].iter().rev() {
                if search.extends(&w, g) {
                    let mut v = w.clone();
                    v.push(g);
                    stack.push((ends[g].1, v));
                }
            }
            out.push((o, end, w));
        }
    }
    NormalForms::Finite(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn confluent(eqs: &[(Word, Word)]) -> Vec<Rule> {
        match complete(eqs, &Budget::default()) {
            Completion::Confluent(r) => r,
            Completion::Exhausted(m) => panic!("{m}"),
        }
    }

    #[test]
    fn idempotent() {
        let rules = confluent(&[(vec![0, 0], vec![0])]);
        assert_eq!(normal_form(&rules, &[0, 0, 0, 0]), vec![0]);
        match normal_forms(1, &[(0, 0)], &rules, &Budget::default()) {
            NormalForms::Finite(f) => assert_eq!(f.len(), 2),
            _ => panic!("finite expected"),
        }
    }

    #[test]
    fn free_loop_is_infinite() {
        match normal_forms(1, &[(0, 0)], &[], &Budget::default()) {
            NormalForms::Infinite { cycle, .. } => assert_eq!(cycle, vec![0]),
            _ => panic!("infinite expected"),
        }
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let rules = confluent(&[(vec![0, 0, 0], vec![])]);
        match normal_forms(1, &[(0, 0)], &rules, &Budget::default()) {
            NormalForms::Finite(f) => assert_eq!(f.len(), 3),
            _ => panic!("finite expected"),
        }
    }

    #[test]
    fn completion_adds_critical_pairs() {
        // ab = ba, aa = 1, bb = 1: the Klein four-group
        let rules = confluent(&[(vec![0, 1], vec![1, 0]), (vec![0, 0], vec![]), (vec![1, 1], vec![])]);
        match normal_forms(1, &[(0, 0), (0, 0)], &rules, &Budget::default()) {
            NormalForms::Finite(f) => assert_eq!(f.len(), 4),
            _ => panic!("finite expected"),
        }
        // ba = ab has no overlap issue, but aba = b needs completion
        let rules = confluent(&[(vec![0, 1, 0], vec![1]), (vec![0, 0], vec![])]);
        assert_eq!(normal_form(&rules, &[1, 0]), normal_form(&rules, &[0, 1]));
    }

    #[test]
    fn path_category_of_a_chain() {
        let ends = [(0, 1), (1, 2)];
        match normal_forms(3, &ends, &[], &Budget::default()) {
            NormalForms::Finite(f) => assert_eq!(f.len(), 6),
            _ => panic!("finite expected"),
        }
    }
}
