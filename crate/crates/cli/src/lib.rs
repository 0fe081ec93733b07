//! Command-line front end: each subcommand parses its input documents,
//! calls one library operation and prints the canonical JSON report.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use strictcat::categorification::{c2_of, c_of, realize_any, Budget, Presentation, Realization, Realized};
use strictcat::category::{category_of_elements, has_final_object, nerve, slice_category};
use strictcat::homotopy::{homology, pi1_presentation, w2_evidence, weak_equivalence_evidence};
use strictcat::io::{self, from_json, to_json};
use strictcat::lifting::{
    boundary_inclusions, find_lift, has_rlp, homotopy_pushout, is_homotopy_cocartesian, small_object_factorize, Square,
};
use strictcat::localizer::{check_all, closure, Ambient, DiagramUniverse, MarkedClass};
use strictcat::simplicial::{pushout, validate, SimplicialMap, SimplicialSet};
use strictcat::subdivision::{alpha, beta, ex, sd};
use strictcat::twocat::{delta_tilde, geometric_nerve, object_admits_final, slice_2category};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "strictcat", version, about = "Finite simplicial sets, categories and 2-categories")]
pub struct Cli {
    /// Dimension bound for nerves, Ex, elements and generator sets.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_dim: usize,
    /// Completion, stage or sweep budget; each command has its own default.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Homology / evidence degree.
    #[arg(long, global = true, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a document of any kind against its laws.
    Validate { input: PathBuf },
    /// Nerve of a `fincat.v1` category.
    Nerve { input: PathBuf },
    /// Geometric nerve of a `fin2cat.v1` 2-category.
    Nerve2 { input: PathBuf },
    /// The 2-category Δ̃ₙ.
    DeltaTilde { n: usize },
    /// Barycentric subdivision with its gluing certificate.
    Sd { input: PathBuf },
    /// Kan's Ex, truncated at --max-dim.
    Ex { input: PathBuf },
    /// The maps α: Sd X → X and β: X → Ex X.
    AlphaBeta { input: PathBuf },
    /// Presentation of c X.
    CatOf { input: PathBuf },
    /// Presentation of c₂ X.
    TwocatOf { input: PathBuf },
    /// Realize a `pres.v1` presentation within --budget normal forms.
    Realize { input: PathBuf },
    /// Slice A/c of a functor.
    Slice {
        input: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Slice A/c of a strict 2-functor.
    Slice2 {
        input: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Category of elements, truncated at --max-dim.
    Elements { input: PathBuf },
    /// Final objects of a category, or objects admitting final 1-cells in a 2-category.
    Final { input: PathBuf },
    /// Search a filler for a lifting square.
    Lift { input: PathBuf },
    /// Right lifting property against ∂Δₙ ↪ Δₙ, n ≤ --max-dim.
    Rlp { input: PathBuf },
    /// Small-object factorization against ∂Δₙ ↪ Δₙ, n ≤ --max-dim.
    Factorize { input: PathBuf },
    /// Double mapping cylinder of a span, compared with the strict pushout.
    Hpushout { input: PathBuf },
    /// Integral homology H₀ … H_k with k = --degree.
    Homology { input: PathBuf },
    /// Presentation of π₁.
    Pi1 {
        input: PathBuf,
        /// Base vertex id; defaults to the first vertex.
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Weak-equivalence evidence for a simplicial map.
    Evidence { input: PathBuf },
    /// Evidence for a strict 2-functor through its geometric nerve.
    Evidence2 { input: PathBuf },
    /// Check a marked class of edges against the saturation and localizer axioms.
    LocalizerCheck {
        universe: PathBuf,
        #[arg(long)]
        marked: PathBuf,
    },
    /// Smallest marked class containing the seed that satisfies the axioms, within --budget sweeps.
    LocalizerClosure {
        universe: PathBuf,
        #[arg(long)]
        seed: Option<PathBuf>,
    },
}

/// Parses a document file, prefixing diagnostics with the path.
pub fn read_doc<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    from_json(&text).with_context(|| format!("{}", path.display()))
}

fn sset(path: &Path) -> Result<Arc<SimplicialSet>> {
    Ok(Arc::new(io::parse_sset(&read_doc(path)?).with_context(|| path.display().to_string())?))
}

fn smap(path: &Path) -> Result<SimplicialMap> {
    io::parse_map(&read_doc(path)?).with_context(|| path.display().to_string())
}

fn triples(f: &SimplicialMap) -> Vec<(usize, String, String)> {
    let mut t = f.id_triples();
    t.sort();
    t
}

fn value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn budget(cli: &Cli) -> Budget {
    match cli.budget {
        Some(b) => Budget { max_elements: b, ..Budget::default() },
        None => Budget::default(),
    }
}

fn doc_kind(v: &Value) -> Option<&'static str> {
    let o = v.as_object()?;
    if o.contains_key("kind") {
        Some("pres.v1")
    } else if o.contains_key("hcompose1") {
        Some("fin2cat.v1")
    } else if o.contains_key("face") {
        Some("sset.v1")
    } else if o.contains_key("compose") {
        Some("fincat.v1")
    } else {
        None
    }
}

fn validity(kind: &str, errors: Vec<Value>) -> Value {
    json!({ "kind": kind, "valid": errors.is_empty(), "violations": errors })
}

fn run_validate(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let raw: Value = from_json(&text).with_context(|| path.display().to_string())?;
    let kind = doc_kind(&raw).with_context(|| format!("{}: not a known document kind", path.display()))?;
    let as_error = |e: strictcat::Error| vec![Value::String(e.to_string())];
    Ok(match kind {
        "sset.v1" => match io::parse_sset(&read_doc(path)?) {
            Ok(x) => validity(kind, validate(&x).iter().map(value).collect()),
            Err(e) => validity(kind, as_error(e)),
        },
        "fincat.v1" => validity(kind, io::parse_fincat(&read_doc(path)?).err().map_or_else(Vec::new, as_error)),
        "fin2cat.v1" => validity(kind, io::parse_fin2cat(&read_doc(path)?).err().map_or_else(Vec::new, as_error)),
        _ => {
            let p: Presentation = read_doc(path)?;
            validity(kind, p.validate().err().map_or_else(Vec::new, as_error))
        }
    })
}

fn realization(r: Realization) -> Value {
    fn other<T>(level: u8, r: Realized<T>, finite: impl FnOnce(T) -> Value) -> Value {
        match r {
            Realized::Finite { value, rules } => json!({ "status": "finite", "level": level, "result": finite(value), "rules": rules }),
            Realized::Infinite { witness } => json!({ "status": "infinite", "level": level, "witness": witness }),
            Realized::Unknown { reason } => json!({ "status": "unknown", "level": level, "reason": reason }),
        }
    }
    match r {
        Realization::Cat(r) => other(1, r, |c| value(&io::fincat_doc(&c))),
        Realization::TwoCat(r) => other(2, r, |c| value(&io::fin2cat_doc(&c))),
    }
}

fn localizer_check<M: Ambient>(u: &DiagramUniverse<M>, marked: &io::MarkedDoc) -> Result<Value> {
    let w = io::marked_ids(u, marked)?;
    let violations = check_all(u, &w)?;
    Ok(json!({ "violations": value(&violations) }))
}

fn localizer_closure<M: Ambient>(u: &DiagramUniverse<M>, seed: Option<&io::MarkedDoc>, budget: usize) -> Result<Value> {
    let w = match seed {
        Some(doc) => io::marked_ids(u, doc)?,
        None => MarkedClass::new(),
    };
    let report = closure(u, &w, budget)?;
    let mut marked: Vec<&str> = report.marked.iter().map(|&k| u.edges()[k].id.as_str()).collect();
    marked.sort();
    Ok(json!({ "marked": marked, "sweeps": report.sweeps, "saturated": report.saturated }))
}

/// Runs a parsed invocation and returns the report document.
pub fn run(cli: &Cli) -> Result<Value> {
    let (d, k) = (cli.max_dim, cli.degree);
    Ok(match &cli.command {
        Command::Validate { input } => run_validate(input)?,
        Command::Nerve { input } => {
            let c = io::parse_fincat(&read_doc(input)?)?;
            value(&io::sset_doc(&nerve(&c, d)))
        }
        Command::Nerve2 { input } => {
            let c = io::parse_fin2cat(&read_doc(input)?)?;
            value(&io::sset_doc(&geometric_nerve(&c, d)))
        }
        Command::DeltaTilde { n } => {
            if *n > 6 {
                bail!("n = {n} is out of range (at most 6)");
            }
            value(&io::fin2cat_doc(&delta_tilde(*n)))
        }
        Command::Sd { input } => {
            let s = sd(&sset(input)?);
            json!({ "object": value(&io::sset_doc(&s.object)), "certificate": value(&s.certificate) })
        }
        Command::Ex { input } => value(&io::sset_doc(&ex(&sset(input)?, d).object)),
        Command::AlphaBeta { input } => {
            let x = sset(input)?;
            json!({
                "alpha": value(&io::smap_doc(&alpha(&sd(&x)))),
                "beta": value(&io::smap_doc(&beta(&ex(&x, d)))),
            })
        }
        Command::CatOf { input } => value(&Presentation::Cat(c_of(&*sset(input)?))),
        Command::TwocatOf { input } => value(&Presentation::TwoCat(c2_of(&*sset(input)?))),
        Command::Realize { input } => {
            let p: Presentation = read_doc(input)?;
            realization(realize_any(&p, &budget(cli))?)
        }
        Command::Slice { input, object } => {
            let f = io::parse_functor(&read_doc(input)?)?;
            let c = f.target().object_index(object).with_context(|| format!("unknown object `{object}`"))?;
            value(&io::fincat_doc(&slice_category(&f, c)?.category))
        }
        Command::Slice2 { input, object } => {
            let f = io::parse_two_functor(&read_doc(input)?)?;
            let c = f.target().object_index(object).with_context(|| format!("unknown object `{object}`"))?;
            value(&io::fin2cat_doc(&slice_2category(&f, c)?.category))
        }
        Command::Elements { input } => value(&io::fincat_doc(&category_of_elements(&*sset(input)?, d))),
        Command::Final { input } => {
            let text = fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?;
            let raw: Value = from_json(&text).with_context(|| input.display().to_string())?;
            match doc_kind(&raw) {
                Some("fincat.v1") => {
                    let c = io::parse_fincat(&read_doc(input)?)?;
                    let fin = has_final_object(&c).map(|z| c.object_id(z).to_string());
                    json!({ "level": 1, "final": fin })
                }
                Some("fin2cat.v1") => {
                    let c = io::parse_fin2cat(&read_doc(input)?)?;
                    let mut admits = Vec::new();
                    for z in 0..c.object_count() {
                        if object_admits_final(&c, z)?.0 {
                            admits.push(c.object_id(z).to_string());
                        }
                    }
                    json!({ "level": 2, "final": admits })
                }
                _ => bail!("{}: expected a fincat.v1 or fin2cat.v1 document", input.display()),
            }
        }
        Command::Lift { input } => {
            let sq = io::parse_lift(&read_doc(input)?)?;
            json!({ "lift": find_lift(&sq).map(|h| triples(&h)) })
        }
        Command::Rlp { input } => {
            let p = smap(input)?;
            let gens = boundary_inclusions(d.min(p.bound()), p.bound())?;
            let r = has_rlp(&p, &gens);
            json!({
                "holds": r.holds,
                "generators": gens.len(),
                "squares_checked": r.squares_checked,
                "counterexample": r.counterexample.map(|(g, sq)| json!({ "generator": g, "square": value(&sq.summary()) })),
            })
        }
        Command::Factorize { input } => {
            let f = smap(input)?;
            let gens = boundary_inclusions(d.min(f.bound()), f.bound())?;
            let r = small_object_factorize(&f, &gens, cli.budget.unwrap_or(8))?;
            json!({
                "certified": r.is_certified(),
                "stages": r.stages,
                "dim_bound": r.dim_bound,
                "attachments": value(&r.attachments),
                "residual": value(&r.residual),
                "middle": value(&io::sset_doc(&r.middle)),
                "left": triples(&r.left),
                "right": triples(&r.right),
            })
        }
        Command::Hpushout { input } => {
            let (f, g) = io::parse_span(&read_doc(input)?)?;
            let po = pushout(&f, &g)?;
            let hp = homotopy_pushout(&f, &g)?;
            let sq = Square::new(f, g, po.left.clone(), po.right.clone())?;
            json!({
                "homotopy_pushout": value(&io::sset_doc(&hp.object)),
                "strict_pushout": value(&io::sset_doc(&po.object)),
                "evidence": value(&is_homotopy_cocartesian(&sq, k)?),
            })
        }
        Command::Homology { input } => value(&homology(&*sset(input)?, k)?),
        Command::Pi1 { input, basepoint } => {
            let x = sset(input)?;
            let b = match basepoint {
                Some(id) => x.index_of(0, id).with_context(|| format!("unknown vertex `{id}`"))?,
                None => 0,
            };
            if x.level_size(0) == 0 {
                bail!("{}: π₁ needs a nonempty set", input.display());
            }
            value(&pi1_presentation(&x, b)?)
        }
        Command::Evidence { input } => value(&weak_equivalence_evidence(&smap(input)?, k)?),
        Command::Evidence2 { input } => {
            let f = io::parse_two_functor(&read_doc(input)?)?;
            value(&w2_evidence(&f, d, k)?)
        }
        Command::LocalizerCheck { universe, marked } => {
            let u = io::load_universe(&read_doc(universe)?)?;
            let m: io::MarkedDoc = read_doc(marked)?;
            match u {
                io::LoadedUniverse::One(u) => localizer_check(&u, &m)?,
                io::LoadedUniverse::Two(u) => localizer_check(&u, &m)?,
            }
        }
        Command::LocalizerClosure { universe, seed } => {
            let u = io::load_universe(&read_doc(universe)?)?;
            let s: Option<io::MarkedDoc> = seed.as_deref().map(read_doc).transpose()?;
            let b = cli.budget.unwrap_or(64);
            match u {
                io::LoadedUniverse::One(u) => localizer_closure(&u, s.as_ref(), b)?,
                io::LoadedUniverse::Two(u) => localizer_closure(&u, s.as_ref(), b)?,
            }
        }
    })
}

/// Canonical report text, newline-terminated.
pub fn render(report: &Value) -> String {
    let mut s = to_json(report);
    s.push('\n');
    s
}
