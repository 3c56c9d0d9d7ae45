//! The `reason` command-line front end.
//!
//! Every subcommand produces a human-readable text and a JSON value; the
//! `--json` flag selects which one is printed. Exit codes: 0 holds or
//! passes, 1 fails, 2 usage or parse error, 3 size limit, 4 internal
//! invariant violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bridge::{self, Status, VerificationReport, VerifyOptions};
use crate::cost::{self, CostTable, Entailment};
use crate::crep::{self, CRepresentation, PenaltyTable, Quantifier, SearchBudget, Verdict};
use crate::error::{Error, Result};
use crate::gen::Generator;
use crate::herbrand::{BitBudget, Interpretation, Omega};
use crate::ranking::{ModelViolation, RankingFunction, SatisfactionMode};
use crate::syntax::{
    parse_document, parse_statement, render, DefeasibleKb, Document, Statement, WeightedKb,
};

#[derive(Debug, Parser)]
#[command(
    name = "reason",
    version,
    about = "Cost-based and c-representation reasoning over weighted and defeasible ALCO knowledge bases"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest interpretation space, in bits, that may be enumerated.
    #[arg(long, global = true, default_value_t = BitBudget::DEFAULT.bits())]
    pub bit_budget: u32,
    /// Accept defeasible inclusions under the full condition (A or B)
    /// instead of the strict one.
    #[arg(long, global = true)]
    pub mode_b: bool,
    /// Seed for randomly generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Allow zero impact factors.
    #[arg(long, global = true)]
    pub allow_zero_eta: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a document and print it in canonical form.
    Parse { file: PathBuf },
    /// List interpretations with finite cost (weighted KB) or satisfying
    /// the strict part (defeasible KB).
    Models {
        file: PathBuf,
        /// List every interpretation, including those of infinite cost.
        #[arg(long)]
        all: bool,
    },
    /// Cost of one interpretation, or the optimal cost.
    Cost {
        file: PathBuf,
        /// Interpretation literal, e.g. '{"concepts":{"L":["N"]}}'.
        #[arg(long)]
        interpretation: Option<String>,
    },
    /// Evaluate a statement or a KB against a ranking given as JSON.
    Rank {
        file: PathBuf,
        #[arg(long)]
        ranking: PathBuf,
        #[arg(long)]
        query: Option<String>,
        /// Check whether the ranking is a model of the (defeasible) KB.
        #[arg(long)]
        check: bool,
    },
    /// Cost-based entailment from a weighted KB.
    Entail {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        query: String,
    },
    /// Build the c-representation for given impact factors.
    Crep {
        file: PathBuf,
        /// Comma-separated impact factors; defaults to the document's hints.
        #[arg(long, value_delimiter = ',')]
        eta: Option<Vec<u64>>,
        /// Expected normalization constant (validated).
        #[arg(long, allow_hyphen_values = true)]
        kappa0: Option<i64>,
        /// Check whether it is a model of the KB.
        #[arg(long, conflicts_with = "entail")]
        check: bool,
        /// κ-entailment of a statement.
        #[arg(long)]
        entail: Option<String>,
    },
    /// Skeptical or credulous c-inference within an impact-factor bound.
    Infer {
        file: PathBuf,
        #[arg(long, value_enum)]
        quantifier: QuantifierArg,
        #[arg(long, default_value_t = SearchBudget::default().eta_max)]
        eta_max: u64,
        #[arg(long)]
        query: String,
    },
    /// Translate between weighted KBs and c-representations.
    Translate {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Impact factors for `to-wkb`; defaults to the document's hints.
        #[arg(long, value_delimiter = ',')]
        eta: Option<Vec<u64>>,
        /// Write the translated document here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a property of a weighted KB.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: PropertyArg,
    },
    /// Run the correspondence checks on a KB, or on random instances when
    /// no file is given.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = VerifyOptions::default().search.eta_max)]
        eta_max: u64,
        /// Number of random instances (only without a file).
        #[arg(long)]
        random: Option<usize>,
        /// Most c-representations checked per instance.
        #[arg(long, default_value_t = VerifyOptions::default().max_creps)]
        max_creps: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Kc,
    Kp,
    Optc,
    Optp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantifierArg {
    Skeptical,
    Credulous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    ToWkb,
    Open,
    Quantified,
    StrictAbox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropertyArg {
    CCompatible,
    StronglyCCompatible,
    StrictAbox,
}

/// Default number of random instances for `verify` without a file.
const DEFAULT_RANDOM: usize = 20;

/// Result of a command: its exit code and both renderings.
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(holds: bool, text: String, json: Value) -> Self {
        Outcome {
            code: if holds { 0 } else { 1 },
            text,
            json,
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes to `out`/`err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let printed = if cli.global.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("JSON values serialize")
                )
            } else {
                write!(out, "{}", o.text)
            };
            if printed.is_err() {
                return 2;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn budget(g: &GlobalOpts) -> Result<BitBudget> {
    BitBudget::new(g.bit_budget)
}

fn mode(g: &GlobalOpts) -> SatisfactionMode {
    if g.mode_b {
        SatisfactionMode::Full
    } else {
        SatisfactionMode::Strict
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &PathBuf) -> Result<Document> {
    Ok(parse_document(&read(path)?)?)
}

fn load_weighted(path: &PathBuf, what: &str) -> Result<WeightedKb> {
    match load(path)? {
        Document::Weighted(w) => Ok(w),
        Document::Defeasible(_) => Err(Error::Usage(format!(
            "{what} needs a weighted KB (no dbox block)"
        ))),
    }
}

fn load_defeasible(path: &PathBuf, what: &str) -> Result<DefeasibleKb> {
    match load(path)? {
        Document::Defeasible(k) => Ok(k),
        Document::Weighted(_) => Err(Error::Usage(format!(
            "{what} needs a defeasible KB (with a dbox block)"
        ))),
    }
}

fn literal(omega: &Omega, i: &Interpretation) -> Value {
    serde_json::to_value(omega.to_literal(i)).expect("literal serializes")
}

fn eta_or_hints(eta: &Option<Vec<u64>>, kb: &DefeasibleKb) -> Result<Vec<u64>> {
    match eta {
        Some(e) => Ok(e.clone()),
        None => kb.impact_hints().ok_or_else(|| {
            Error::Usage(
                "impact factors needed: pass --eta or annotate every DBox entry with [n]".into(),
            )
        }),
    }
}

/// Checks flag combinations that do not depend on the input file.
fn validate(cli: &Cli) -> Result<()> {
    budget(&cli.global)?;
    match &cli.command {
        Command::Entail { mode, k, .. } => match (mode, k) {
            (ModeArg::Kc | ModeArg::Kp, None) => {
                Err(Error::Usage("--mode kc and kp need --k".into()))
            }
            (ModeArg::Optc | ModeArg::Optp, Some(_)) => {
                Err(Error::Usage("--k only applies to --mode kc and kp".into()))
            }
            _ => Ok(()),
        },
        Command::Rank { query, check, .. } if query.is_none() && !check => {
            Err(Error::Usage("rank needs --query or --check".into()))
        }
        Command::Translate { kind, eta, .. } if *kind != KindArg::ToWkb && eta.is_some() => {
            Err(Error::Usage("--eta only applies to --kind to-wkb".into()))
        }
        Command::Verify { file, random, .. } if file.is_some() && random.is_some() => Err(
            Error::Usage("--random cannot be combined with a file".into()),
        ),
        _ => Ok(()),
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    validate(cli)?;
    let g = &cli.global;
    match &cli.command {
        Command::Parse { file } => cmd_parse(file),
        Command::Models { file, all } => cmd_models(g, file, *all),
        Command::Cost {
            file,
            interpretation,
        } => cmd_cost(g, file, interpretation.as_deref()),
        Command::Rank {
            file,
            ranking,
            query,
            check,
        } => cmd_rank(g, file, ranking, query.as_deref(), *check),
        Command::Entail {
            file,
            mode,
            k,
            query,
        } => cmd_entail(g, file, *mode, *k, query),
        Command::Crep {
            file,
            eta,
            kappa0,
            check,
            entail,
        } => cmd_crep(g, file, eta, *kappa0, *check, entail.as_deref()),
        Command::Infer {
            file,
            quantifier,
            eta_max,
            query,
        } => cmd_infer(g, file, *quantifier, *eta_max, query),
        Command::Translate {
            file,
            kind,
            eta,
            output,
        } => cmd_translate(g, file, *kind, eta, output.as_ref()),
        Command::Check { file, property } => cmd_check(g, file, *property),
        Command::Verify {
            file,
            eta_max,
            random,
            max_creps,
        } => {
            let opts = VerifyOptions {
                search: SearchBudget {
                    eta_max: *eta_max,
                    mode: SatisfactionMode::Strict,
                    allow_zero: g.allow_zero_eta,
                },
                budget: budget(g)?,
                max_creps: *max_creps,
                full_mode: g.mode_b,
            };
            match file {
                Some(f) => cmd_verify_file(f, &opts),
                None => cmd_verify_random(g.seed, random.unwrap_or(DEFAULT_RANDOM), &opts),
            }
        }
    }
}

fn kind_name(doc: &Document) -> &'static str {
    match doc {
        Document::Weighted(_) => "weighted",
        Document::Defeasible(_) => "defeasible",
    }
}

fn cmd_parse(file: &PathBuf) -> Result<Outcome> {
    let doc = load(file)?;
    let text = render::document(&doc);
    let v = doc.vocab();
    let json = json!({
        "kind": kind_name(&doc),
        "concepts": v.concepts(),
        "roles": v.roles(),
        "individuals": v.individuals(),
        "document": text,
    });
    Ok(Outcome::new(true, text, json))
}

fn cmd_models(g: &GlobalOpts, file: &PathBuf, all: bool) -> Result<Outcome> {
    let doc = load(file)?;
    let budget = budget(g)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    match &doc {
        Document::Weighted(w) => {
            let table = CostTable::new(w, budget)?;
            let omega = table.omega();
            writeln!(text, "optimal cost: {}", table.optimal_cost()).unwrap();
            for (ix, &c) in table.costs().iter().enumerate() {
                if all || c.is_finite() {
                    let i = omega.decode(ix as u64)?;
                    writeln!(text, "#{ix}  cost {c}  {}", omega.describe(&i)).unwrap();
                    rows.push(
                        json!({ "index": ix, "interpretation": literal(omega, &i), "cost": c }),
                    );
                }
            }
            let json = json!({ "kind": "weighted", "optimal_cost": table.optimal_cost(), "interpretations": rows });
            Ok(Outcome::new(true, text, json))
        }
        Document::Defeasible(kb) => {
            let table = PenaltyTable::new(kb, budget)?;
            let omega = table.omega();
            let models = table.models();
            writeln!(
                text,
                "{} of {} interpretations satisfy the strict part",
                models.len(),
                omega.len()
            )
            .unwrap();
            let mut next = models.iter().peekable();
            for ix in 0..omega.len() {
                let is_model = next.next_if(|&&m| m == ix).is_some();
                if all || is_model {
                    let i = omega.decode(ix)?;
                    writeln!(
                        text,
                        "#{ix}  {}  {}",
                        if is_model { "model" } else { "-" },
                        omega.describe(&i)
                    )
                    .unwrap();
                    rows.push(json!({ "index": ix, "interpretation": literal(omega, &i), "model": is_model }));
                }
            }
            let json = json!({ "kind": "defeasible", "model_count": models.len(), "interpretations": rows });
            Ok(Outcome::new(true, text, json))
        }
    }
}

fn cmd_cost(g: &GlobalOpts, file: &PathBuf, interpretation: Option<&str>) -> Result<Outcome> {
    let w = load_weighted(file, "cost")?;
    let budget = budget(g)?;
    let Some(lit) = interpretation else {
        let table = CostTable::new(&w, budget)?;
        let optc = table.optimal_cost();
        let text = format!("optimal cost: {optc}\n");
        return Ok(Outcome::new(true, text, json!({ "optimal_cost": optc })));
    };
    let omega = Omega::new(&w.vocab, budget)?;
    let i = omega.parse_literal(lit)?;
    let c = cost::cost(&w, &i, budget)?;
    let mut text = format!("cost: {c}\n");
    let mut violated = Vec::new();
    for g in &w.tbox {
        let n = cost::gci_violations(&omega, &i, &g.item)?;
        if n > 0 {
            writeln!(
                text,
                "  {} [{}] violated by {n} individual(s)",
                g.item, g.weight
            )
            .unwrap();
            violated
                .push(json!({ "axiom": g.item.to_string(), "weight": g.weight, "violations": n }));
        }
    }
    let items: Vec<_> = w.abox.iter().map(|a| a.item.clone()).collect();
    for ix in cost::abox_violations(&omega, &i, &items)? {
        let a = &w.abox[ix];
        writeln!(text, "  {} [{}] violated", a.item, a.weight).unwrap();
        violated.push(json!({ "axiom": a.item.to_string(), "weight": a.weight, "violations": 1 }));
    }
    let json = json!({ "interpretation": literal(&omega, &i), "cost": c, "violated": violated });
    Ok(Outcome::new(true, text, json))
}

fn violation_json(v: &ModelViolation, omega: &Omega) -> Result<Value> {
    Ok(match v {
        ModelViolation::Dci {
            inclusion,
            individual,
            ..
        } => json!({ "inclusion": inclusion.to_string(), "individual": individual }),
        ModelViolation::FiniteRankOutsideStrictModels { world } => {
            json!({ "interpretation": literal(omega, &omega.decode(*world)?) })
        }
    })
}

fn model_check(r: &RankingFunction, kb: &DefeasibleKb, mode: SatisfactionMode) -> Result<Outcome> {
    let violation = r.model_violation(kb, mode)?;
    let text = match &violation {
        None => format!("model: yes ({mode} acceptance)\n"),
        Some(v) => format!("model: no ({mode} acceptance): {v}\n"),
    };
    let json = json!({
        "model": violation.is_none(),
        "mode": mode.to_string(),
        "violation": violation.as_ref().map(|v| violation_json(v, r.omega())).transpose()?,
    });
    Ok(Outcome::new(violation.is_none(), text, json))
}

fn cmd_rank(
    g: &GlobalOpts,
    file: &PathBuf,
    ranking: &PathBuf,
    query: Option<&str>,
    check: bool,
) -> Result<Outcome> {
    let doc = load(file)?;
    let omega = Omega::new(doc.vocab(), budget(g)?)?;
    let r = RankingFunction::from_json(omega, &read(ranking)?)?;
    let mode = mode(g);
    if check {
        let Document::Defeasible(kb) = &doc else {
            return Err(Error::Usage("--check needs a defeasible KB".into()));
        };
        return model_check(&r, kb, mode);
    }
    let q = parse_statement(query.expect("validated"), doc.vocab())?;
    let rank = match &q {
        Statement::Defeasible(d) => r.rank_of_dci(&d.sub, &d.sup)?,
        other => r.rank_of_axiom(&other.as_axiom().expect("classical"))?,
    };
    let accepted = r.satisfies(&q, mode)?;
    let text = format!(
        "rank of `{q}`: {rank}\naccepted: {}\n",
        if accepted { "yes" } else { "no" }
    );
    let json = json!({ "query": q.to_string(), "rank": rank, "accepted": accepted, "mode": mode.to_string() });
    Ok(Outcome::new(accepted, text, json))
}

fn cmd_entail(
    g: &GlobalOpts,
    file: &PathBuf,
    mode: ModeArg,
    k: Option<u64>,
    query: &str,
) -> Result<Outcome> {
    let w = load_weighted(file, "entail")?;
    let q = parse_statement(query, &w.vocab)?;
    if matches!(q, Statement::Defeasible(_)) {
        return Err(Error::DefeasibleStatement);
    }
    let entailment = match (mode, k) {
        (ModeArg::Kc, Some(k)) => Entailment::KCertain(k),
        (ModeArg::Kp, Some(k)) => Entailment::KPossible(k),
        (ModeArg::Optc, _) => Entailment::OptCertain,
        (ModeArg::Optp, _) => Entailment::OptPossible,
        _ => unreachable!("validated"),
    };
    let table = CostTable::new(&w, budget(g)?)?;
    let omega = table.omega();
    let compiled = omega.compile_statement(&q)?;
    let holds = table.entails_axiom(entailment, &compiled);
    let deciding = table.deciding_world(entailment, &compiled);
    let mut text = format!(
        "{entailment} `{q}`: {}\n",
        if holds { "holds" } else { "does not hold" }
    );
    if let Some(ix) = deciding {
        let label = if entailment.is_certain() {
            "counterexample"
        } else {
            "witness"
        };
        writeln!(
            text,
            "{label}: #{ix} {} (cost {})",
            omega.describe(&omega.decode(ix)?),
            table.cost_at(ix)
        )
        .unwrap();
    }
    let json = json!({
        "query": q.to_string(),
        "mode": entailment.to_string(),
        "holds": holds,
        "optimal_cost": table.optimal_cost(),
        "deciding_interpretation": deciding.map(|ix| omega.decode(ix).map(|i| literal(omega, &i))).transpose()?,
    });
    Ok(Outcome::new(holds, text, json))
}

fn rank_rows(c: &CRepresentation) -> Result<(String, Vec<Value>)> {
    let r = c.ranking();
    let omega = r.omega();
    let mut text = String::new();
    let mut rows = Vec::new();
    for (ix, &rank) in r.table().iter().enumerate() {
        if rank.is_finite() {
            let i = omega.decode(ix as u64)?;
            writeln!(text, "#{ix}  rank {rank}  {}", omega.describe(&i)).unwrap();
            rows.push(json!({ "index": ix, "interpretation": literal(omega, &i), "rank": rank }));
        }
    }
    Ok((text, rows))
}

fn cmd_crep(
    g: &GlobalOpts,
    file: &PathBuf,
    eta: &Option<Vec<u64>>,
    kappa0: Option<i64>,
    check: bool,
    entail: Option<&str>,
) -> Result<Outcome> {
    let kb = load_defeasible(file, "crep")?;
    let eta = eta_or_hints(eta, &kb)?;
    let c = PenaltyTable::new(&kb, budget(g)?)?
        .build(&eta, kappa0, g.allow_zero_eta)?
        .with_mode(mode(g));
    let head = json!({ "eta": c.eta(), "kappa0": c.kappa0() });
    if check {
        let mut o = model_check(c.ranking(), &kb, c.mode())?;
        o.text = format!("eta = {:?}, kappa0 = {}\n{}", c.eta(), c.kappa0(), o.text);
        o.json
            .as_object_mut()
            .expect("object")
            .extend(head.as_object().expect("object").clone());
        return Ok(o);
    }
    if let Some(q) = entail {
        let q = parse_statement(q, &kb.vocab)?;
        let holds = c.entails(&q)?;
        let text = format!(
            "eta = {:?}, kappa0 = {}\nkappa-entailment of `{q}`: {}\n",
            c.eta(),
            c.kappa0(),
            if holds { "holds" } else { "does not hold" }
        );
        let json =
            json!({ "eta": c.eta(), "kappa0": c.kappa0(), "query": q.to_string(), "holds": holds });
        return Ok(Outcome::new(holds, text, json));
    }
    let (rows_text, rows) = rank_rows(&c)?;
    let text = format!("eta = {:?}, kappa0 = {}\n{rows_text}", c.eta(), c.kappa0());
    let json = json!({ "eta": c.eta(), "kappa0": c.kappa0(), "ranks": rows });
    Ok(Outcome::new(true, text, json))
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Holds(w) | Verdict::Fails(w) => json!({ "verdict": v.label(), "witness": w }),
        Verdict::HoldsWithinBound { checked } | Verdict::FailsWithinBound { checked } => {
            json!({ "verdict": v.label(), "checked": checked })
        }
        Verdict::NoCRepresentationWithinBound => json!({ "verdict": v.label() }),
    }
}

fn cmd_infer(
    g: &GlobalOpts,
    file: &PathBuf,
    quantifier: QuantifierArg,
    eta_max: u64,
    query: &str,
) -> Result<Outcome> {
    let kb = load_defeasible(file, "infer")?;
    let q = parse_statement(query, &kb.vocab)?;
    let quantifier = match quantifier {
        QuantifierArg::Skeptical => Quantifier::Skeptical,
        QuantifierArg::Credulous => Quantifier::Credulous,
    };
    let search = SearchBudget {
        eta_max,
        mode: mode(g),
        allow_zero: g.allow_zero_eta,
    };
    let v = crep::c_inference(&kb, &q, quantifier, &search, budget(g)?)?;
    let name = match quantifier {
        Quantifier::Skeptical => "skeptical",
        Quantifier::Credulous => "credulous",
    };
    let text = format!("{name} c-inference of `{q}`: {v}\n");
    let mut json = verdict_json(&v);
    let obj = json.as_object_mut().expect("object");
    obj.insert("query".into(), q.to_string().into());
    obj.insert("eta_max".into(), eta_max.into());
    Ok(Outcome::new(v.holds(), text, json))
}

fn cmd_translate(
    g: &GlobalOpts,
    file: &PathBuf,
    kind: KindArg,
    eta: &Option<Vec<u64>>,
    output: Option<&PathBuf>,
) -> Result<Outcome> {
    let budget = budget(g)?;
    let (doc, kappa0) = match kind {
        KindArg::ToWkb => {
            let kb = load_defeasible(file, "to-wkb")?;
            let eta = eta_or_hints(eta, &kb)?;
            let c = PenaltyTable::new(&kb, budget)?.build(&eta, None, g.allow_zero_eta)?;
            (
                Document::Weighted(bridge::to_wkb(&c)),
                Some((c.eta().to_vec(), c.kappa0())),
            )
        }
        KindArg::StrictAbox => {
            let w = load_weighted(file, "strict-abox")?;
            (
                Document::Weighted(bridge::strict_abox_translation(&w)?),
                None,
            )
        }
        KindArg::Open | KindArg::Quantified => {
            let w = load_weighted(file, "this translation")?;
            let c = if kind == KindArg::Open {
                bridge::open_translation(&w, budget)?
            } else {
                bridge::quantified_translation(&w, budget)?
            };
            (
                Document::Defeasible(c.kb().clone()),
                Some((c.eta().to_vec(), c.kappa0())),
            )
        }
    };
    let body = render::document(&doc);
    // Zero impact factors have no hint syntax, so the factors are repeated
    // in a comment header.
    let header = match &kappa0 {
        Some((eta, k)) => format!("# eta = {eta:?}, kappa0 = {k}\n"),
        None => String::new(),
    };
    let text = format!("{header}{body}");
    let json = json!({
        "kind": kind_name(&doc),
        "eta": kappa0.as_ref().map(|(e, _)| e),
        "kappa0": kappa0.as_ref().map(|(_, k)| k),
        "document": body,
    });
    if let Some(path) = output {
        std::fs::write(path, &text)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
        let note = format!("wrote {}\n", path.display());
        return Ok(Outcome::new(true, note, json));
    }
    Ok(Outcome::new(true, text, json))
}

fn cmd_check(g: &GlobalOpts, file: &PathBuf, property: PropertyArg) -> Result<Outcome> {
    let w = load_weighted(file, "check")?;
    let budget = budget(g)?;
    let (name, failure) = match property {
        PropertyArg::StrictAbox => {
            let weak: Vec<String> = w
                .abox
                .iter()
                .filter(|a| a.weight.is_finite())
                .map(|a| format!("{} [{}]", a.item, a.weight))
                .collect();
            let holds = weak.is_empty();
            let text = if holds {
                "strict ABox: yes\n".to_string()
            } else {
                format!(
                    "strict ABox: no; finite-weight assertions: {}\n",
                    weak.join(", ")
                )
            };
            let json = json!({ "property": "strict-abox", "holds": holds, "finite_weight_assertions": weak });
            return Ok(Outcome::new(holds, text, json));
        }
        PropertyArg::CCompatible => ("c-compatible", bridge::c_compatibility(&w, budget)?),
        PropertyArg::StronglyCCompatible => (
            "strongly-c-compatible",
            bridge::strong_c_compatibility(&w, budget)?,
        ),
    };
    let holds = failure.is_none();
    let text = match &failure {
        None => format!("{name}: yes\n"),
        Some(f) => format!("{name}: no; {f}\n"),
    };
    let json = json!({
        "property": name,
        "holds": holds,
        "witness": failure.as_ref().map(|f| json!({
            "gci": f.gci.to_string(),
            "individual": f.individual,
            "verified_cost": f.verified_cost,
            "falsified_cost": f.falsified_cost,
        })),
    });
    Ok(Outcome::new(holds, text, json))
}

fn report_text(r: &VerificationReport) -> String {
    let mut text = String::new();
    for c in &r.checks {
        writeln!(
            text,
            "{:<13} {}: {}",
            format!("[{}]", c.status),
            c.name,
            c.details
        )
        .unwrap();
        if let Some(w) = &c.witness {
            writeln!(text, "              witness: {w}").unwrap();
        }
    }
    for c in &r.informational {
        writeln!(
            text,
            "{:<13} {} (informational): {}",
            format!("[{}]", c.status),
            c.name,
            c.details
        )
        .unwrap();
        if let Some(w) = &c.witness {
            writeln!(text, "              witness: {w}").unwrap();
        }
    }
    text
}

fn cmd_verify_file(file: &PathBuf, opts: &VerifyOptions) -> Result<Outcome> {
    let doc = load(file)?;
    let report = bridge::verify_instance(&doc, opts)?;
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome::new(report.passed(), report_text(&report), json))
}

fn cmd_verify_random(seed: u64, count: usize, opts: &VerifyOptions) -> Result<Outcome> {
    let mut gen = Generator::from_seed(seed);
    let mut text = String::new();
    let mut instances = Vec::new();
    let mut failed = 0;
    for index in 0..count {
        let doc = gen.verifiable_document(opts.budget)?;
        let report = bridge::verify_instance(&doc, opts)?;
        let rendered = render::document(&doc);
        if !report.passed() {
            failed += 1;
            writeln!(text, "instance {index}: FAIL\n{rendered}").unwrap();
            for c in report.failures() {
                writeln!(text, "  {}: {}", c.name, c.details).unwrap();
                if let Some(w) = &c.witness {
                    writeln!(text, "    witness: {w}").unwrap();
                }
            }
        }
        instances.push(json!({ "index": index, "document": rendered, "report": report }));
    }
    let counts = |s: Status| {
        instances
            .iter()
            .map(|i| {
                i["report"]["checks"].as_array().map_or(0, |cs| {
                    cs.iter().filter(|c| c["status"] == json!(s)).count()
                })
            })
            .sum::<usize>()
    };
    writeln!(
        text,
        "seed {seed}: {count} instances, {failed} with failures ({} checks passed, {} failed, {} n/a, {} within bound)",
        counts(Status::Pass),
        counts(Status::Fail),
        counts(Status::NotApplicable),
        counts(Status::WithinBound)
    )
    .unwrap();
    let json =
        json!({ "seed": seed, "count": count, "failed_instances": failed, "instances": instances });
    Ok(Outcome::new(failed == 0, text, json))
}
