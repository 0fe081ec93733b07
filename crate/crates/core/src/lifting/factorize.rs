use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::{find_lift, nondegenerate_assignment, squares, LiftingProblem, SquareSummary};
use crate::error::{Error, Result};
use crate::simplicial::{coproduct, pushout, SimplicialMap, SimplicialSet};

/// One generator cell glued in during a stage.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Attachment {
    pub stage: usize,
    pub generator: usize,
    /// Attaching map `A → M` on nondegenerate cells.
    pub attaching: Vec<(String, String)>,
    /// The bottom map `B → Y` it was attached for.
    pub bottom: Vec<(String, String)>,
}

/// `f = q ∘ j` with `j` a relative cell complex and `q` checked against the
/// generators within the bound.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub middle: Arc<SimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pub attachments: Vec<Attachment>,
    /// Squares against `right` still without a filler after the last stage.
    pub residual: Vec<(usize, SquareSummary)>,
    pub stages: usize,
    pub dim_bound: usize,
}

impl FactorizationReport {
    pub fn is_certified(&self) -> bool {
        self.residual.is_empty()
    }
}

struct Unsolved {
    generator: usize,
    problem: LiftingProblem<SimplicialMap>,
}

fn unsolved(q: &SimplicialMap, generators: &[SimplicialMap]) -> Vec<Unsolved> {
    let mut out = Vec::new();
    for (k, i) in generators.iter().enumerate() {
        squares(i, q, &mut |sq| {
            if find_lift(&sq).is_none() {
                out.push(Unsolved { generator: k, problem: sq });
            }
            ControlFlow::Continue(())
        });
    }
    out
}

/// The map `∐ Aₖ → Z` restricting to `maps[k]` on summand `k`.
fn copair_maps(sum: &Arc<SimplicialSet>, injections: &[SimplicialMap], maps: &[SimplicialMap], z: &Arc<SimplicialSet>) -> Result<SimplicialMap> {
    let bound = sum.dim_bound().min(z.dim_bound());
    let mut levels: Vec<Vec<usize>> = (0..=bound).map(|n| vec![usize::MAX; sum.level_size(n)]).collect();
    for (inj, m) in injections.iter().zip(maps) {
        for (n, level) in levels.iter_mut().enumerate() {
            for a in 0..inj.source().level_size(n) {
                level[inj.apply(n, a)] = m.apply(n, a);
            }
        }
    }
    SimplicialMap::new(sum.clone(), z.clone(), levels)
}

struct Stage {
    middle: Arc<SimplicialSet>,
    left: SimplicialMap,
    right: SimplicialMap,
}

/// Glues one copy of `Bₖ` along `Aₖ → M` for each pair.
fn attach(stage: &Stage, cells: &[(&SimplicialMap, &SimplicialMap, &SimplicialMap)], bound: usize) -> Result<Stage> {
    let sources: Vec<Arc<SimplicialSet>> = cells.iter().map(|(i, _, _)| i.source().clone()).collect();
    let targets: Vec<Arc<SimplicialSet>> = cells.iter().map(|(i, _, _)| i.target().clone()).collect();
    let sa = coproduct(&sources, bound);
    let sb = coproduct(&targets, bound);
    let attaching: Vec<SimplicialMap> = cells.iter().map(|(_, u, _)| (*u).clone()).collect();
    let legs: Vec<SimplicialMap> = cells
        .iter()
        .zip(&sb.injections)
        .map(|((i, _, _), inj)| i.then(inj))
        .collect::<Result<_>>()?;
    let u = copair_maps(&sa.object, &sa.injections, &attaching, &stage.middle)?;
    let i = copair_maps(&sa.object, &sa.injections, &legs, &sb.object)?;
    let po = pushout(&u, &i)?;
    let bottoms: Vec<SimplicialMap> = cells.iter().map(|(_, _, v)| (*v).clone()).collect();
    let v = copair_maps(&sb.object, &sb.injections, &bottoms, stage.right.target())?;
    let right = po.copair(&stage.right, &v)?;
    let left = stage.left.then(&po.left)?;
    Ok(Stage { middle: po.object, left, right })
}

/// Factors `f` by attaching, once per stage, a generator cell for every
/// square against the current right factor that has no filler.
pub fn small_object_factorize(f: &SimplicialMap, generators: &[SimplicialMap], stage_budget: usize) -> Result<FactorizationReport> {
    let bound = f.bound();
    if let Some(g) = generators.iter().find(|g| g.bound() < bound) {
        return Err(Error::Bound { requested: bound, bound: g.bound() });
    }
    let x = f.source().clone();
    let mut stage = Stage { middle: x.clone(), left: SimplicialMap::identity(x), right: f.clone() };
    let mut attachments = Vec::new();
    let mut stages = 0;
    let mut pending = unsolved(&stage.right, generators);
    while !pending.is_empty() && stages < stage_budget {
        stages += 1;
        let cells: Vec<(&SimplicialMap, &SimplicialMap, &SimplicialMap)> =
            pending.iter().map(|w| (&generators[w.generator], &w.problem.u, &w.problem.v)).collect();
        for w in &pending {
            attachments.push(Attachment {
                stage: stages,
                generator: w.generator,
                attaching: nondegenerate_assignment(&w.problem.u),
                bottom: nondegenerate_assignment(&w.problem.v),
            });
        }
        stage = attach(&stage, &cells, bound)?;
        pending = unsolved(&stage.right, generators);
    }
    let residual = pending.iter().map(|w| (w.generator, w.problem.summary())).collect();
    Ok(FactorizationReport { middle: stage.middle, left: stage.left, right: stage.right, attachments, residual, stages, dim_bound: bound })
}

fn resolve(x: &SimplicialSet, y: &SimplicialSet, pairs: &[(String, String)], what: &str) -> Result<Vec<Vec<Option<usize>>>> {
    let bound = x.dim_bound().min(y.dim_bound());
    let mut fixed: Vec<Vec<Option<usize>>> = (0..=bound).map(|n| vec![None; x.level_size(n)]).collect();
    for (a, b) in pairs {
        let n = (0..=bound).find(|&n| x.index_of(n, a).is_some()).ok_or_else(|| Error::UnknownId { id: a.clone(), context: what.into() })?;
        let t = y.index_of(n, b).ok_or_else(|| Error::UnknownId { id: b.clone(), context: what.into() })?;
        fixed[n][x.index_of(n, a).unwrap()] = Some(t);
    }
    Ok(fixed)
}

/// The map determined by its values on nondegenerate cells.
fn from_assignment(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>, pairs: &[(String, String)], what: &str) -> Result<SimplicialMap> {
    let fixed = resolve(x, y, pairs, what)?;
    let c = crate::simplicial::MapConstraints { fixed: Some(fixed), ..Default::default() };
    let mut found = None;
    crate::simplicial::for_each_map(x, y, &c, |levels| {
        found = Some(levels.to_vec());
        ControlFlow::Break(())
    });
    let levels = found.ok_or_else(|| Error::Contract(format!("{what} is not a simplicial map")))?;
    SimplicialMap::new(x.clone(), y.clone(), levels)
}

/// Rebuilds the middle object and both factors from an attachment trace.
pub fn replay(f: &SimplicialMap, generators: &[SimplicialMap], attachments: &[Attachment]) -> Result<(SimplicialMap, SimplicialMap)> {
    let bound = f.bound();
    let x = f.source().clone();
    let mut stage = Stage { middle: x.clone(), left: SimplicialMap::identity(x), right: f.clone() };
    let last = attachments.iter().map(|a| a.stage).max().unwrap_or(0);
    for s in 1..=last {
        let batch: Vec<&Attachment> = attachments.iter().filter(|a| a.stage == s).collect();
        let mut maps = Vec::with_capacity(batch.len());
        for a in &batch {
            let g = generators.get(a.generator).ok_or_else(|| Error::Parameter(format!("no generator {}", a.generator)))?;
            let u = from_assignment(g.source(), &stage.middle, &a.attaching, "attaching map")?;
            let v = from_assignment(g.target(), stage.right.target(), &a.bottom, "bottom map")?;
            maps.push((a.generator, u, v));
        }
        let cells: Vec<_> = maps.iter().map(|(k, u, v)| (&generators[*k], u, v)).collect();
        stage = attach(&stage, &cells, bound)?;
    }
    Ok((stage.left, stage.right))
}
