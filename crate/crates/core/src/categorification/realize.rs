use std::collections::HashMap;

use super::presentation::{CatPresentation, Path, TwoCatPresentation, Whiskered};
use super::rewrite::{complete, normal_form, normal_forms, Budget, Completion, NormalForms, Rule, Word};
use crate::category::FinCat;
use crate::error::{Error, Result};
use crate::twocat::Fin2Cat;

/// Outcome of a bounded realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realized<T> {
    /// The realization, with the completed rewriting system that certifies
    /// its normal forms.
    Finite { value: T, rules: Vec<String> },
    Infinite { witness: String },
    Unknown { reason: String },
}

impl<T> Realized<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Realized::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Realized::Finite { .. })
    }
}

/// A realized category together with the normal form of each arrow.
struct Words {
    category: FinCat,
    rules: Vec<Rule>,
    /// Normal form of each arrow, by arrow index.
    words: Vec<Word>,
    /// Arrow by (source, target, normal form), with objects as indexed in
    /// `category`.
    arrow_of: HashMap<(usize, usize, Word), usize>,
}

fn realize_words(p: &CatPresentation, names: &dyn Fn(&Path) -> String, budget: &Budget) -> Result<Realized<Words>> {
    p.validate()?;
    let equations: Vec<(Word, Word)> = p.relations.iter().map(|(a, b)| (a.arrows.clone(), b.arrows.clone())).collect();
    let rules = match complete(&equations, budget) {
        Completion::Confluent(r) => r,
        Completion::Exhausted(reason) => return Ok(Realized::Unknown { reason }),
    };
    let ends: Vec<(usize, usize)> = p.generators.iter().map(|g| (g.src, g.dst)).collect();
    let forms = match normal_forms(p.objects.len(), &ends, &rules, budget) {
        NormalForms::Finite(f) => f,
        NormalForms::Infinite { prefix, cycle } => {
            let path = |w: &Word, src: usize| Path {
                src,
                dst: w.last().map_or(src, |&g| p.generators[g].dst),
                arrows: w.clone(),
            };
            let start = if let Some(&g) = prefix.first().or(cycle.first()) { p.generators[g].src } else { 0 };
            let loop_start = cycle.first().map_or(start, |&g| p.generators[g].src);
            return Ok(Realized::Infinite {
                witness: format!(
                    "({})^k after {} is irreducible for every k",
                    names(&path(&cycle, loop_start)),
                    names(&path(&prefix, start))
                ),
            });
        }
        NormalForms::TooMany => {
            return Ok(Realized::Unknown { reason: format!("more than {} normal forms", budget.max_elements) })
        }
    };
    let arrows: Vec<(String, usize, usize)> =
        forms.iter().map(|(s, d, w)| (names(&Path { src: *s, dst: *d, arrows: w.clone() }), *s, *d)).collect();
    let index: HashMap<(usize, usize, Word), usize> = forms.iter().enumerate().map(|(i, (s, d, w))| ((*s, *d, w.clone()), i)).collect();
    let identity: Vec<usize> = (0..p.objects.len()).map(|o| index[&(o, o, Vec::new())]).collect();
    let compose = |g: usize, f: usize| {
        let (s, _, wf) = &forms[f];
        let (_, d, wg) = &forms[g];
        let mut w = wf.clone();
        w.extend_from_slice(wg);
        index[&(*s, *d, normal_form(&rules, &w))]
    };
    let category = FinCat::build(p.objects.clone(), arrows, identity, compose)?;
    category.check_laws().map_err(|e| Error::Contract(format!("realization is not a category: {e}")))?;
    let mut words = vec![Vec::new(); forms.len()];
    let mut arrow_of = HashMap::new();
    for (s, d, w) in forms {
        let a = category.arrow_index(&names(&Path { src: s, dst: d, arrows: w.clone() })).expect("named arrow");
        arrow_of.insert((category.src(a), category.dst(a), w.clone()), a);
        words[a] = w;
    }
    Ok(Realized::Finite { value: Words { category, rules, words, arrow_of }, rules: Vec::new() })
}

fn render_rules(p: &CatPresentation, rules: &[Rule]) -> Vec<String> {
    let ends = |w: &Word| w.first().map_or(0, |&g| p.generators[g].src);
    let show = |w: &Word, src: usize| {
        if w.is_empty() {
            format!("1_{}", p.objects[src])
        } else {
            p.render(&Path { src, dst: p.generators[*w.last().unwrap()].dst, arrows: w.clone() })
        }
    };
    rules.iter().map(|r| format!("{} -> {}", show(&r.lhs, ends(&r.lhs)), show(&r.rhs, ends(&r.lhs)))).collect()
}

/// Realizes a category presentation by completion: normal forms become
/// arrows, named like `g∘f` (or `1_x`).
pub fn realize(p: &CatPresentation, budget: &Budget) -> Result<Realized<FinCat>> {
    Ok(match realize_words(p, &|q| p.render(q), budget)? {
        Realized::Finite { value, .. } => {
            let rules = render_rules(p, &value.rules);
            Realized::Finite { value: value.category, rules }
        }
        Realized::Infinite { witness } => Realized::Infinite { witness },
        Realized::Unknown { reason } => Realized::Unknown { reason },
    })
}

/// Realizes a 2-category presentation. The 1-cells are the paths of the
/// free category on the 1-generators; each hom-category is realized from
/// whiskered 2-generators subject to the interchange law and the whiskered
/// relations.
pub fn realize_2(p: &TwoCatPresentation, budget: &Budget) -> Result<Realized<Fin2Cat>> {
    p.validate()?;
    let n = p.objects.len();
    let ends: Vec<(usize, usize)> = p.one_generators.iter().map(|g| (g.src, g.dst)).collect();
    let paths = match normal_forms(n, &ends, &[], budget) {
        NormalForms::Finite(f) => f,
        NormalForms::Infinite { cycle, .. } => {
            let src = p.one_generators[cycle[0]].src;
            return Ok(Realized::Infinite {
                witness: format!("the 1-cells include every power of the loop {}", p.render(&Path { src, dst: src, arrows: cycle })),
            });
        }
        NormalForms::TooMany => return Ok(Realized::Unknown { reason: format!("more than {} 1-cells", budget.max_elements) }),
    };
    let mut between: Vec<Vec<Word>> = vec![Vec::new(); n * n];
    for (s, d, w) in &paths {
        between[s * n + d].push(w.clone());
    }
    let homs_words: Vec<Words> = {
        let mut out = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                match hom_presentation(p, &between, a, b, budget)? {
                    Realized::Finite { value, .. } => out.push(value),
                    Realized::Infinite { witness } => {
                        return Ok(Realized::Infinite { witness: format!("hom({}, {}): {witness}", p.objects[a], p.objects[b]) })
                    }
                    Realized::Unknown { reason } => {
                        return Ok(Realized::Unknown { reason: format!("hom({}, {}): {reason}", p.objects[a], p.objects[b]) })
                    }
                }
            }
        }
        out
    };
    // 1-cell words by hom-object index, and back
    let object_words: Vec<Vec<Word>> = (0..n * n)
        .map(|k| {
            let h = &homs_words[k].category;
            let mut ws = vec![Vec::new(); h.object_count()];
            for w in &between[k] {
                ws[h.object_index(&path_name(p, k / n, k % n, w)).unwrap()] = w.clone();
            }
            ws
        })
        .collect();
    let object_of = |a: usize, c: usize, w: &Word| homs_words[a * n + c].category.object_index(&path_name(p, a, c, w)).unwrap();
    let comp1 = |a: usize, b: usize, c: usize, f: usize, g: usize| {
        let mut w = object_words[a * n + b][f].clone();
        w.extend_from_slice(&object_words[b * n + c][g]);
        object_of(a, c, &w)
    };
    let gen_index: Vec<HashMap<Whiskered, usize>> = (0..n * n).map(|k| hom_generators(p, &between, k / n, k % n).1).collect();
    let gens: Vec<Vec<Whiskered>> = (0..n * n).map(|k| hom_generators(p, &between, k / n, k % n).0).collect();
    let comp2 = |a: usize, b: usize, c: usize, al: usize, be: usize| {
        let (hab, hbc) = (&homs_words[a * n + b], &homs_words[b * n + c]);
        let s_beta = &object_words[b * n + c][hbc.category.src(be)];
        let t_alpha = &object_words[a * n + b][hab.category.dst(al)];
        let mut word = Vec::new();
        for &g in &hab.words[al] {
            let w = &gens[a * n + b][g];
            let mut right = w.right.clone();
            right.extend_from_slice(s_beta);
            word.push(gen_index[a * n + c][&Whiskered { left: w.left.clone(), generator: w.generator, right }]);
        }
        for &g in &hbc.words[be] {
            let w = &gens[b * n + c][g];
            let mut left = t_alpha.clone();
            left.extend_from_slice(&w.left);
            word.push(gen_index[a * n + c][&Whiskered { left, generator: w.generator, right: w.right.clone() }]);
        }
        let hac = &homs_words[a * n + c];
        let s = object_of(a, c, &[object_words[a * n + b][hab.category.src(al)].clone(), s_beta.clone()].concat());
        let d = object_of(a, c, &[t_alpha.clone(), object_words[b * n + c][hbc.category.dst(be)].clone()].concat());
        hac.arrow_of[&(s, d, normal_form(&hac.rules, &word))]
    };
    let units: Vec<usize> = (0..n).map(|a| object_of(a, a, &Vec::new())).collect();
    let homs: Vec<FinCat> = homs_words.iter().map(|h| h.category.clone()).collect();
    let c = Fin2Cat::build(p.objects.clone(), homs, units, comp1, comp2)?;
    c.check_laws().map_err(|e| Error::Contract(format!("realization is not a 2-category: {e}")))?;
    let rules = (0..n * n).map(|k| format!("hom({}, {}): {} rules", p.objects[k / n], p.objects[k % n], homs_words[k].rules.len())).collect();
    Ok(Realized::Finite { value: c, rules })
}

fn path_name(p: &TwoCatPresentation, a: usize, b: usize, w: &Word) -> String {
    p.render(&Path { src: a, dst: b, arrows: w.clone() })
}

/// All whiskerings `u · γ · v` landing in `hom(a, b)`.
fn hom_generators(p: &TwoCatPresentation, between: &[Vec<Word>], a: usize, b: usize) -> (Vec<Whiskered>, HashMap<Whiskered, usize>) {
    let n = p.objects.len();
    let mut out = Vec::new();
    for (g, gen) in p.two_generators.iter().enumerate() {
        for u in &between[a * n + gen.src.src] {
            for v in &between[gen.src.dst * n + b] {
                out.push(Whiskered { left: u.clone(), generator: g, right: v.clone() });
            }
        }
    }
    let index = out.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    (out, index)
}

fn hom_presentation(p: &TwoCatPresentation, between: &[Vec<Word>], a: usize, b: usize, budget: &Budget) -> Result<Realized<Words>> {
    let n = p.objects.len();
    let objects_w = &between[a * n + b];
    let names: Vec<String> = objects_w.iter().map(|w| path_name(p, a, b, w)).collect();
    let obj_of: HashMap<&Word, usize> = objects_w.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let (gens, index) = hom_generators(p, between, a, b);
    let cat_gens: Vec<super::presentation::Generator> = gens
        .iter()
        .map(|w| {
            let g = &p.two_generators[w.generator];
            let src = [w.left.clone(), g.src.arrows.clone(), w.right.clone()].concat();
            let dst = [w.left.clone(), g.dst.arrows.clone(), w.right.clone()].concat();
            super::presentation::Generator { id: whisker_name(p, w), src: obj_of[&src], dst: obj_of[&dst] }
        })
        .collect();
    let step_path = |start: usize, steps: Vec<usize>| -> Path {
        let dst = steps.last().map_or(start, |&g| cat_gens[g].dst);
        Path { src: start, dst, arrows: steps }
    };
    let mut relations = Vec::new();
    // interchange for two generators side by side: u γ₁ m γ₂ v
    for (i, g1) in p.two_generators.iter().enumerate() {
        for (j, g2) in p.two_generators.iter().enumerate() {
            for u in &between[a * n + g1.src.src] {
                for m in &between[g1.src.dst * n + g2.src.src] {
                    for v in &between[g2.src.dst * n + b] {
                        let w = |left: Vec<Vec<usize>>, generator: usize, right: Vec<Vec<usize>>| index[&Whiskered { left: left.concat(), generator, right: right.concat() }];
                        let (s1, t1, s2, t2) = (&g1.src.arrows, &g1.dst.arrows, &g2.src.arrows, &g2.dst.arrows);
                        let first = vec![w(vec![u.clone()], i, vec![m.clone(), s2.clone(), v.clone()]), w(vec![u.clone(), t1.clone(), m.clone()], j, vec![v.clone()])];
                        let second = vec![w(vec![u.clone(), s1.clone(), m.clone()], j, vec![v.clone()]), w(vec![u.clone()], i, vec![m.clone(), t2.clone(), v.clone()])];
                        let start = obj_of[&[u.clone(), s1.clone(), m.clone(), s2.clone(), v.clone()].concat()];
                        relations.push((step_path(start, first), step_path(start, second)));
                    }
                }
            }
        }
    }
    // whiskered pasting relations
    for (lhs, rhs) in &p.relations {
        for u in &between[a * n + lhs.src.src] {
            for v in &between[lhs.src.dst * n + b] {
                let whisk = |steps: &[Whiskered]| -> Vec<usize> {
                    steps
                        .iter()
                        .map(|s| index[&Whiskered { left: [u.clone(), s.left.clone()].concat(), generator: s.generator, right: [s.right.clone(), v.clone()].concat() }])
                        .collect()
                };
                let start = obj_of[&[u.clone(), lhs.src.arrows.clone(), v.clone()].concat()];
                relations.push((step_path(start, whisk(&lhs.steps)), step_path(start, whisk(&rhs.steps))));
            }
        }
    }
    let hom = CatPresentation { objects: names, generators: cat_gens, relations };
    realize_words(&hom, &|q| hom.render(q), budget)
}

fn whisker_name(p: &TwoCatPresentation, w: &Whiskered) -> String {
    let side = |ws: &Word| ws.iter().rev().map(|&g| p.one_generators[g].id.as_str()).collect::<Vec<_>>().join("∘");
    let g = &p.two_generators[w.generator].id;
    match (w.left.is_empty(), w.right.is_empty()) {
        (true, true) => g.clone(),
        _ => format!("({}|{}|{})", side(&w.right), g, side(&w.left)),
    }
}
