//! Runs the correspondences between cost-based semantics and
//! c-representations on one concrete instance and reports each as a check
//! with a counterexample on failure.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use super::{
    compatibility_failure, open_translation, quantified_translation, strict_abox_translation,
    to_wkb, CompatFailure,
};
use crate::cost::{CostTable, Entailment};
use crate::crep::{c_inference_among, CRepresentation, PenaltyTable, Quantifier, SearchBudget};
use crate::error::{Error, Result};
use crate::herbrand::{BitBudget, Omega};
use crate::ranking::SatisfactionMode;
use crate::syntax::{
    Assertion, ConceptExpr, DefeasibleInclusion, DefeasibleKb, DefeasibleKind, Document,
    ExtendedNat, Gci, Statement, Vocabulary, WeightedKb,
};

/// Upper limit on impact vectors enumerated for the bounded-inference
/// implication, which widens the search to the largest weight.
const WIDE_SEARCH_LIMIT: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Bound for the c-representation search. The mode is ignored: the
    /// correspondences are stated for strict acceptance.
    pub search: SearchBudget,
    pub budget: BitBudget,
    /// Most c-representations taken from the search.
    pub max_creps: usize,
    /// Also report modelhood under full acceptance (informational).
    pub full_mode: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            search: SearchBudget::new(3),
            budget: BitBudget::DEFAULT,
            max_creps: 16,
            full_mode: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
    /// Agreement over the bounded family of c-representations only.
    #[serde(rename = "within-bound")]
    WithinBound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "n/a",
            Status::WithinBound => "within-bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    fn new(name: &str, status: Status, details: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status,
            details: details.into(),
            witness: None,
        }
    }

    fn failed(name: &str, details: impl Into<String>, witness: Value) -> Self {
        Check {
            witness: Some(witness),
            ..Check::new(name, Status::Fail, details)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Results that are not claims of the correspondence, e.g. whether the
    /// input's own c-representation is a model.
    pub informational: Vec<Check>,
}

impl VerificationReport {
    /// No check failed (informational entries do not count).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks
            .iter()
            .chain(&self.informational)
            .find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Queries the entailment correspondences are checked on.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuerySet {
    pub classical: Vec<Statement>,
    pub defeasible: Vec<DefeasibleInclusion>,
}

impl QuerySet {
    fn push(&mut self, seen: &mut HashSet<Statement>, s: Statement) {
        if seen.insert(s.clone()) {
            match s {
                Statement::Defeasible(d) => {
                    if d.kind == DefeasibleKind::Open {
                        self.defeasible.push(d)
                    }
                }
                other => self.classical.push(other),
            }
        }
    }

    fn concept_assertions(&self) -> impl Iterator<Item = (&str, &ConceptExpr)> {
        self.classical.iter().filter_map(|s| match s {
            Statement::Assertion(Assertion::Concept {
                individual,
                concept,
            }) => Some((individual.as_str(), concept)),
            _ => None,
        })
    }

    fn gcis(&self) -> impl Iterator<Item = &Gci> {
        self.classical.iter().filter_map(|s| match s {
            Statement::Gci(g) => Some(g),
            _ => None,
        })
    }
}

/// Every assertion `a : L` and `(a, b) : r`, every inclusion `L ⊑ M` and
/// `L ⊑~ M` between distinct literals `L`, `M` (concept names and their
/// negations), followed by the `extra` statements, without duplicates.
/// Quantified inclusions are dropped.
pub fn query_set(vocab: &Vocabulary, extra: impl IntoIterator<Item = Statement>) -> QuerySet {
    let literals: Vec<ConceptExpr> = vocab
        .concepts()
        .iter()
        .flat_map(|c| {
            [
                ConceptExpr::atomic(c.clone()),
                ConceptExpr::not(ConceptExpr::atomic(c.clone())),
            ]
        })
        .collect();
    let mut out = QuerySet::default();
    let mut seen = HashSet::new();
    for a in vocab.individuals() {
        for l in &literals {
            out.push(&mut seen, Assertion::concept(a.clone(), l.clone()).into());
        }
    }
    for r in vocab.roles() {
        for a in vocab.individuals() {
            for b in vocab.individuals() {
                out.push(
                    &mut seen,
                    Assertion::role(a.clone(), b.clone(), r.clone()).into(),
                );
            }
        }
    }
    for x in &literals {
        for y in literals.iter().filter(|y| *y != x) {
            out.push(&mut seen, Gci::new(x.clone(), y.clone()).into());
        }
    }
    for x in &literals {
        for y in literals.iter().filter(|y| *y != x) {
            out.push(
                &mut seen,
                DefeasibleInclusion::open(x.clone(), y.clone()).into(),
            );
        }
    }
    for s in extra {
        out.push(&mut seen, s);
    }
    out
}

fn kb_statements(kb: &DefeasibleKb) -> Vec<Statement> {
    kb.tbox
        .iter()
        .cloned()
        .map(Statement::from)
        .chain(kb.dcis().cloned().map(Statement::from))
        .chain(kb.abox.iter().cloned().map(Statement::from))
        .collect()
}

fn wkb_statements(w: &WeightedKb) -> Vec<Statement> {
    w.tbox
        .iter()
        .map(|g| g.item.clone().into())
        .chain(w.abox.iter().map(|a| a.item.clone().into()))
        .collect()
}

/// A c-representation with the cost table of a WKB whose costs it should
/// mirror (`rank = cost + κ0`).
struct Pair {
    label: String,
    costs: CostTable,
    crep: CRepresentation,
}

struct Instance {
    /// The WKB as given, before the strict ABox translation.
    source: WeightedKb,
    /// Strict-ABox WKB the translations start from.
    wkb: WeightedKb,
    costs: CostTable,
    open: CRepresentation,
    quantified: CRepresentation,
    /// c-representations checked against their own translations.
    creps: Vec<CRepresentation>,
    pairs: Vec<Pair>,
    /// Defeasible KB whose bounded c-inference is compared with costs.
    inference_kb: DefeasibleKb,
    queries: QuerySet,
    informational: Vec<Check>,
}

fn eta_label(c: &CRepresentation) -> String {
    format!("eta={:?} kappa0={}", c.eta(), c.kappa0())
}

fn strict_search(opts: &VerifyOptions) -> SearchBudget {
    SearchBudget {
        mode: SatisfactionMode::Strict,
        ..opts.search
    }
}

fn build_family(
    kb: &DefeasibleKb,
    search: &SearchBudget,
    cap: usize,
    budget: BitBudget,
) -> Result<Vec<CRepresentation>> {
    let table = PenaltyTable::new(kb, budget)?;
    let found = match table.find(search) {
        Err(Error::UnsatisfiableStrictPart) => Vec::new(),
        other => other?,
    };
    found
        .iter()
        .take(cap)
        .map(|(eta, k0)| table.build(eta, Some(*k0), search.allow_zero))
        .collect()
}

fn translation_pairs(
    costs: &CostTable,
    open: &CRepresentation,
    quantified: &CRepresentation,
) -> Vec<Pair> {
    vec![
        Pair {
            label: "open translation".into(),
            costs: costs.clone(),
            crep: open.clone(),
        },
        Pair {
            label: "quantified translation".into(),
            costs: costs.clone(),
            crep: quantified.clone(),
        },
    ]
}

fn prepare(doc: &Document, opts: &VerifyOptions) -> Result<Instance> {
    let budget = opts.budget;
    match doc {
        Document::Weighted(source) => {
            let wkb = strict_abox_translation(source)?;
            let costs = CostTable::new(&wkb, budget)?;
            if costs.optimal_cost().is_infinite() {
                return Err(Error::UnsatisfiableStrictPart);
            }
            let open = open_translation(&wkb, budget)?;
            let quantified = quantified_translation(&wkb, budget)?;
            let pairs = translation_pairs(&costs, &open, &quantified);
            let queries = query_set(&wkb.vocab, wkb_statements(source));
            Ok(Instance {
                source: source.clone(),
                creps: vec![open.clone(), quantified.clone()],
                inference_kb: open.kb().clone(),
                wkb,
                costs,
                open,
                quantified,
                pairs,
                queries,
                informational: Vec::new(),
            })
        }
        Document::Defeasible(kb) => {
            let table = PenaltyTable::new(kb, budget)?;
            if table.models().is_empty() {
                return Err(Error::UnsatisfiableStrictPart);
            }
            let eta = kb.impact_hints().unwrap_or_else(|| vec![1; kb.dbox.len()]);
            let structural = table.build(&eta, None, false)?;
            let mut informational = vec![modelhood(
                &structural,
                "input-crep-modelhood",
                SatisfactionMode::Strict,
            )?];
            if opts.full_mode {
                informational.push(modelhood(
                    &structural,
                    "input-crep-modelhood-full-mode",
                    SatisfactionMode::Full,
                )?);
            }
            let mut creps = vec![structural.clone()];
            for c in build_family(kb, &strict_search(opts), opts.max_creps, budget)? {
                if c.eta() != structural.eta() {
                    creps.push(c);
                }
            }
            let wkb = to_wkb(&structural);
            let costs = CostTable::new(&wkb, budget)?;
            let open = open_translation(&wkb, budget)?;
            let quantified = quantified_translation(&wkb, budget)?;
            let mut pairs = translation_pairs(&costs, &open, &quantified);
            for c in &creps {
                pairs.push(Pair {
                    label: format!("c-representation {}", eta_label(c)),
                    costs: CostTable::new(&to_wkb(c), budget)?,
                    crep: c.clone(),
                });
            }
            let queries = query_set(&kb.vocab, kb_statements(kb));
            Ok(Instance {
                source: wkb.clone(),
                wkb,
                costs,
                open,
                quantified,
                creps,
                pairs,
                inference_kb: kb.clone(),
                queries,
                informational,
            })
        }
    }
}

fn modelhood(c: &CRepresentation, name: &str, mode: SatisfactionMode) -> Result<Check> {
    let details = format!("{} under {mode} acceptance", eta_label(c));
    Ok(match c.ranking().model_violation(c.kb(), mode)? {
        None => Check::new(name, Status::Pass, format!("{details} is a model")),
        Some(v) => {
            let witness = match &v {
                crate::ranking::ModelViolation::Dci {
                    inclusion,
                    individual,
                    ..
                } => json!({ "inclusion": inclusion.to_string(), "individual": individual }),
                crate::ranking::ModelViolation::FiniteRankOutsideStrictModels { world } => {
                    json!({ "interpretation": c.ranking().omega().to_literal(&c.ranking().omega().decode(*world)?) })
                }
            };
            Check::failed(name, format!("{details} is not a model: {v}"), witness)
        }
    })
}

fn world(omega: &Omega, ix: u64) -> Result<Value> {
    Ok(serde_json::to_value(omega.to_literal(&omega.decode(ix)?)).expect("literal serializes"))
}

fn compat_json(f: &CompatFailure) -> Value {
    json!({
        "gci": f.gci.to_string(),
        "individual": f.individual,
        "verified_cost": f.verified_cost,
        "falsified_cost": f.falsified_cost,
    })
}

/// Compares two tables pointwise; on the first mismatch returns its index.
fn first_mismatch(a: &[ExtendedNat], b: &[ExtendedNat]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

/// Verifies every applicable correspondence on one instance. A weighted
/// KB is first given a strict ABox; a defeasible KB is checked through
/// the c-representation given by its impact hints (all ones if any is
/// missing) and those found within the search bound.
pub fn verify_instance(doc: &Document, opts: &VerifyOptions) -> Result<VerificationReport> {
    let inst = prepare(doc, opts)?;
    let compat = compatibility_failure(&inst.wkb, &inst.costs, false)?;
    let strong = compatibility_failure(&inst.wkb, &inst.costs, true)?;
    let checks = vec![
        check_cost_vs_rank(&inst, opts)?,
        check_translations_agree(&inst)?,
        check_rank_vs_cost(&inst)?,
        check_strong_implies_compatible(&compat, &strong),
        check_compat_vs_model(
            "compatible-iff-open-translation-is-model",
            &compat,
            &inst.open,
        )?,
        check_compat_vs_model(
            "strongly-compatible-iff-quantified-translation-is-model",
            &strong,
            &inst.quantified,
        )?,
        check_wkb_round_trip(&inst, compat.is_none(), opts)?,
        check_crep_round_trip(&inst, opts)?,
        check_strict_abox_costs(&inst, opts)?,
        check_opt_certain(&inst)?,
        check_opt_possible_assertions(&inst)?,
        check_opt_possible_gcis(&inst)?,
        check_dci_k_possible(&inst, opts)?,
        check_bounded_inference(&inst, opts)?,
        check_skeptical_implies_opt_certain(&inst, compat.is_none(), opts)?,
    ];
    Ok(VerificationReport {
        checks,
        informational: inst.informational,
    })
}

fn check_cost_vs_rank(inst: &Instance, opts: &VerifyOptions) -> Result<Check> {
    const NAME: &str = "cost-equals-rank-minus-kappa0";
    for c in &inst.creps {
        let costs = CostTable::new(&to_wkb(c), opts.budget)?;
        let expected: Vec<ExtendedNat> = c
            .ranking()
            .table()
            .iter()
            .map(|r| {
                r.offset(-c.kappa0())
                    .ok_or_else(|| Error::Internal("rank below kappa0".into()))
            })
            .collect::<Result<_>>()?;
        if let Some(ix) = first_mismatch(costs.costs(), &expected) {
            return Ok(Check::failed(
                NAME,
                format!(
                    "{}: cost of the translated WKB differs from rank - kappa0",
                    eta_label(c)
                ),
                json!({
                    "eta": c.eta(),
                    "kappa0": c.kappa0(),
                    "interpretation": world(costs.omega(), ix as u64)?,
                    "cost": costs.costs()[ix],
                    "rank": c.ranking().table()[ix],
                }),
            ));
        }
    }
    Ok(Check::new(
        NAME,
        Status::Pass,
        format!(
            "{} c-representations, every interpretation",
            inst.creps.len()
        ),
    ))
}

fn check_translations_agree(inst: &Instance) -> Result<Check> {
    const NAME: &str = "quantified-equals-open-ranking";
    let (o, q) = (inst.open.ranking(), inst.quantified.ranking());
    Ok(match first_mismatch(o.table(), q.table()) {
        None => Check::new(
            NAME,
            Status::Pass,
            format!("{} interpretations", o.table().len()),
        ),
        Some(ix) => Check::failed(
            NAME,
            "quantified and open translations rank an interpretation differently",
            json!({
                "interpretation": world(o.omega(), ix as u64)?,
                "open": o.table()[ix],
                "quantified": q.table()[ix],
            }),
        ),
    })
}

fn check_rank_vs_cost(inst: &Instance) -> Result<Check> {
    const NAME: &str = "open-ranking-equals-cost-plus-kappa0";
    let optc = inst.costs.optimal_cost();
    for (label, c) in [("open", &inst.open), ("quantified", &inst.quantified)] {
        if optc.finite().map(|v| -(v as i64)) != Some(c.kappa0()) {
            return Ok(Check::failed(
                NAME,
                format!("{label} translation: kappa0 is not minus the optimal cost"),
                json!({ "translation": label, "kappa0": c.kappa0(), "optimal_cost": optc }),
            ));
        }
        let expected: Vec<ExtendedNat> = inst
            .costs
            .costs()
            .iter()
            .map(|v| {
                v.offset(c.kappa0())
                    .ok_or_else(|| Error::Internal("cost below optimum".into()))
            })
            .collect::<Result<_>>()?;
        if let Some(ix) = first_mismatch(c.ranking().table(), &expected) {
            return Ok(Check::failed(
                NAME,
                format!("{label} translation: rank differs from cost + kappa0"),
                json!({
                    "translation": label,
                    "interpretation": world(inst.costs.omega(), ix as u64)?,
                    "rank": c.ranking().table()[ix],
                    "cost": inst.costs.costs()[ix],
                    "kappa0": c.kappa0(),
                }),
            ));
        }
    }
    Ok(Check::new(
        NAME,
        Status::Pass,
        format!("both translations, kappa0 = -{optc}"),
    ))
}

fn check_strong_implies_compatible(
    compat: &Option<CompatFailure>,
    strong: &Option<CompatFailure>,
) -> Check {
    const NAME: &str = "strong-compatibility-implies-compatibility";
    let flags = format!(
        "c-compatible = {}, strongly c-compatible = {}",
        compat.is_none(),
        strong.is_none()
    );
    match (strong, compat) {
        (None, Some(f)) => Check::failed(NAME, flags, compat_json(f)),
        _ => Check::new(NAME, Status::Pass, flags),
    }
}

fn check_compat_vs_model(
    name: &str,
    failure: &Option<CompatFailure>,
    c: &CRepresentation,
) -> Result<Check> {
    let violation = c
        .ranking()
        .model_violation(c.kb(), SatisfactionMode::Strict)?;
    let details = format!(
        "compatible = {}, translation is a model = {}",
        failure.is_none(),
        violation.is_none()
    );
    Ok(match (failure, &violation) {
        (None, None) | (Some(_), Some(_)) => Check::new(name, Status::Pass, details),
        (Some(f), None) => Check::failed(name, details, compat_json(f)),
        (None, Some(v)) => Check::failed(name, details, json!({ "violation": v.to_string() })),
    })
}

type WeightedItems<T> = Vec<(T, ExtendedNat)>;

fn sorted_wkb(w: &WeightedKb) -> (WeightedItems<Gci>, WeightedItems<Assertion>) {
    let mut t: Vec<_> = w.tbox.iter().map(|g| (g.item.clone(), g.weight)).collect();
    let mut a: Vec<_> = w.abox.iter().map(|x| (x.item.clone(), x.weight)).collect();
    t.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    a.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    (t, a)
}

fn check_wkb_round_trip(inst: &Instance, compatible: bool, opts: &VerifyOptions) -> Result<Check> {
    const NAME: &str = "wkb-round-trip";
    if !compatible {
        return Ok(Check::new(
            NAME,
            Status::NotApplicable,
            "the WKB is not c-compatible",
        ));
    }
    let back = to_wkb(&open_translation(&inst.wkb, opts.budget)?);
    Ok(
        if sorted_wkb(&back) == sorted_wkb(&inst.wkb) && back.vocab == inst.wkb.vocab {
            Check::new(
                NAME,
                Status::Pass,
                "WKB -> open translation -> WKB gives the same axioms and weights",
            )
        } else {
            Check::failed(
                NAME,
                "round trip changed the weighted KB",
                json!({ "before": crate::syntax::render::document(&Document::Weighted(inst.wkb.clone())),
                    "after": crate::syntax::render::document(&Document::Weighted(back)) }),
            )
        },
    )
}

fn check_crep_round_trip(inst: &Instance, opts: &VerifyOptions) -> Result<Check> {
    const NAME: &str = "crep-round-trip";
    let mut checked = 0;
    let mut skipped = 0;
    for c in &inst.creps {
        let back = match open_translation(&to_wkb(c), opts.budget) {
            Ok(b) => b,
            // Two DBox entries with the same GCI merge under translation.
            Err(Error::DuplicateWeakGci(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        if let Some(ix) = first_mismatch(back.ranking().table(), c.ranking().table()) {
            return Ok(Check::failed(
                NAME,
                format!(
                    "{}: c-representation -> WKB -> open translation changed the ranking",
                    eta_label(c)
                ),
                json!({
                    "eta": c.eta(),
                    "interpretation": world(c.ranking().omega(), ix as u64)?,
                    "before": c.ranking().table()[ix],
                    "after": back.ranking().table()[ix],
                }),
            ));
        }
    }
    Ok(if checked == 0 {
        Check::new(
            NAME,
            Status::NotApplicable,
            "no c-representation without duplicate DBox entries",
        )
    } else {
        Check::new(
            NAME,
            Status::Pass,
            format!("{checked} c-representations reproduced pointwise, {skipped} skipped for duplicate entries"),
        )
    })
}

fn check_strict_abox_costs(inst: &Instance, opts: &VerifyOptions) -> Result<Check> {
    const NAME: &str = "strict-abox-translation-preserves-cost";
    let before = CostTable::new(&inst.source, opts.budget)?;
    let after = CostTable::new(&strict_abox_translation(&inst.source)?, opts.budget)?;
    Ok(match first_mismatch(before.costs(), after.costs()) {
        None => Check::new(
            NAME,
            Status::Pass,
            format!("{} interpretations", before.costs().len()),
        ),
        Some(ix) => Check::failed(
            NAME,
            "the strict ABox translation changed a cost",
            json!({
                "interpretation": world(before.omega(), ix as u64)?,
                "before": before.costs()[ix],
                "after": after.costs()[ix],
            }),
        ),
    })
}

fn check_opt_certain(inst: &Instance) -> Result<Check> {
    const NAME: &str = "opt-certain-iff-kappa-entailment";
    for p in &inst.pairs {
        for q in &inst.queries.classical {
            let cost_side = p.costs.entails(Entailment::OptCertain, q)?;
            let rank_side = p.crep.ranking().satisfies_classical(q)?;
            if cost_side != rank_side {
                return Ok(Check::failed(
                    NAME,
                    format!("{}: `{q}` disagrees", p.label),
                    json!({ "pair": p.label, "query": q.to_string(), "opt_certain": cost_side, "kappa_entailed": rank_side }),
                ));
            }
        }
    }
    Ok(Check::new(
        NAME,
        Status::Pass,
        format!(
            "{} queries on {} pairs",
            inst.queries.classical.len(),
            inst.pairs.len()
        ),
    ))
}

fn check_opt_possible_assertions(inst: &Instance) -> Result<Check> {
    const NAME: &str = "opt-possible-assertion-iff-negation-not-kappa-entailed";
    let mut count = 0;
    for p in &inst.pairs {
        for (a, c) in inst.queries.concept_assertions() {
            count += 1;
            let q = Statement::from(Assertion::concept(a, c.clone()));
            let neg = Statement::from(Assertion::concept(a, ConceptExpr::not(c.clone())));
            let possible = p.costs.entails(Entailment::OptPossible, &q)?;
            let neg_entailed = p.crep.ranking().satisfies_classical(&neg)?;
            if possible == neg_entailed {
                return Ok(Check::failed(
                    NAME,
                    format!("{}: `{q}` disagrees", p.label),
                    json!({ "pair": p.label, "query": q.to_string(), "opt_possible": possible, "negation_kappa_entailed": neg_entailed }),
                ));
            }
        }
    }
    Ok(Check::new(
        NAME,
        Status::Pass,
        format!("{count} query instances"),
    ))
}

/// `opt_p(C ⊑ D)` against "no individual `a` has `κ ⊨ a : C ⊓ ¬D`". Only
/// the left-to-right direction holds in general: with `a : exists r.A`
/// every optimal interpretation violates `A ⊑ ¬A`, at `a` in some and at
/// `b` in others. Failures here carry both sides so they can be re-checked.
fn check_opt_possible_gcis(inst: &Instance) -> Result<Check> {
    const NAME: &str = "opt-possible-gci-iff-no-violation-kappa-entailed";
    let mut count = 0;
    for p in &inst.pairs {
        let ranking = p.crep.ranking();
        let omega = ranking.omega();
        for g in inst.queries.gcis() {
            count += 1;
            let q = omega.compile_gci(g)?;
            let possible = p.costs.entails_axiom(Entailment::OptPossible, &q);
            let violation = omega.compile(&ConceptExpr::and(
                g.sub.clone(),
                ConceptExpr::not(g.sup.clone()),
            ))?;
            // Per individual, a rank-0 interpretation where it does not
            // violate the GCI; none means the violation is κ-entailed.
            let mut avoiding = Vec::new();
            for a in 0..omega.universe_size() {
                let found = ranking.zero_worlds().find(|&ix| {
                    omega
                        .decode(ix)
                        .map(|i| violation.eval(&i) >> a & 1 == 0)
                        .unwrap_or(false)
                });
                avoiding.push(found);
            }
            let rhs = avoiding.iter().all(Option::is_some);
            if possible != rhs {
                let mut per_individual = serde_json::Map::new();
                for (a, found) in omega.vocab().individuals().iter().zip(&avoiding) {
                    let w = found.map(|ix| world(omega, ix)).transpose()?;
                    per_individual.insert(a.clone(), w.unwrap_or(Value::Null));
                }
                let satisfying = p.costs.deciding_world(Entailment::OptPossible, &q);
                return Ok(Check::failed(
                    NAME,
                    format!(
                        "{}: `{g}` is {}opt-possible but {} individual has a kappa-entailed violation",
                        p.label,
                        if possible { "" } else { "not " },
                        if rhs { "no" } else { "some" }
                    ),
                    json!({
                        "pair": p.label,
                        "query": g.to_string(),
                        "opt_possible": possible,
                        "optimal_interpretation_satisfying_query": satisfying.map(|ix| world(omega, ix)).transpose()?,
                        "rank_zero_interpretation_avoiding_violation": per_individual,
                    }),
                ));
            }
        }
    }
    Ok(Check::new(
        NAME,
        Status::Pass,
        format!("{count} query instances"),
    ))
}

/// Least `k` with `k_p(a : C ⊓ D)` for some `a` and `k_p(b : C ⊓ ¬D)` for
/// no `b`, searching `0..=max finite cost` (beyond it nothing changes).
fn k_possible_witness(
    costs: &CostTable,
    omega: &Omega,
    d: &DefeasibleInclusion,
) -> Result<Option<u64>> {
    let inds = omega.vocab().individuals();
    let verified = ConceptExpr::and(d.sub.clone(), d.sup.clone());
    let falsified = ConceptExpr::and(d.sub.clone(), ConceptExpr::not(d.sup.clone()));
    let assert =
        |a: &String, c: &ConceptExpr| Statement::from(Assertion::concept(a.clone(), c.clone()));
    for k in 0..=costs.max_finite_cost().unwrap_or(0) {
        let mode = Entailment::KPossible(k);
        let mut some = false;
        for a in inds {
            some |= costs.entails(mode, &assert(a, &verified))?;
        }
        if !some {
            continue;
        }
        let mut none = true;
        for b in inds {
            none &= !costs.entails(mode, &assert(b, &falsified))?;
        }
        if none {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn check_dci_k_possible(inst: &Instance, opts: &VerifyOptions) -> Result<Check> {
    const NAME: &str = "dci-entailment-iff-k-possible";
    let mut models = 0;
    let mut count = 0;
    for p in &inst.pairs {
        if !p
            .crep
            .ranking()
            .is_model(p.crep.kb(), SatisfactionMode::Strict)?
        {
            continue;
        }
        models += 1;
        let costs = CostTable::new(&to_wkb(&p.crep), opts.budget)?;
        let omega = p.crep.ranking().omega();
        let own = p
            .crep
            .kb()
            .dcis()
            .filter(|d| d.kind == DefeasibleKind::Open);
        let mut seen = HashSet::new();
        for d in inst.queries.defeasible.iter().chain(own) {
            if !seen.insert(d) {
                continue;
            }
            count += 1;
            let entailed =
                p.crep
                    .ranking()
                    .satisfies_dci(&d.sub, &d.sup, SatisfactionMode::Strict)?;
            let k = k_possible_witness(&costs, omega, d)?;
            if entailed != k.is_some() {
                return Ok(Check::failed(
                    NAME,
                    format!("{}: `{d}` disagrees", p.label),
                    json!({ "pair": p.label, "query": d.to_string(), "kappa_entailed": entailed, "k": k }),
                ));
            }
        }
    }
    Ok(if models == 0 {
        Check::new(
            NAME,
            Status::NotApplicable,
            "no c-representation under test is a model",
        )
    } else {
        Check::new(
            NAME,
            Status::Pass,
            format!("{count} query instances on {models} models"),
        )
    })
}

fn bounded_agreement(
    name: &str,
    family: &[CRepresentation],
    tables: &[CostTable],
    queries: &[Statement],
) -> Result<Check> {
    for q in queries {
        let opt: Vec<bool> = tables
            .iter()
            .map(|t| t.entails(Entailment::OptCertain, q))
            .collect::<Result<_>>()?;
        for (quantifier, expected) in [
            (Quantifier::Skeptical, opt.iter().all(|&b| b)),
            (Quantifier::Credulous, opt.iter().any(|&b| b)),
        ] {
            let verdict = c_inference_among(family, q, quantifier)?;
            if verdict.holds() != expected {
                return Ok(Check::failed(
                    name,
                    format!("`{q}`: {quantifier:?} c-inference gives {verdict}"),
                    json!({ "query": q.to_string(), "verdict": verdict.label(), "translated_opt_certain": opt }),
                ));
            }
        }
    }
    Ok(Check::new(
        name,
        Status::WithinBound,
        format!(
            "{} queries over {} c-representations",
            queries.len(),
            family.len()
        ),
    ))
}

fn check_bounded_inference(inst: &Instance, opts: &VerifyOptions) -> Result<Check> {
    const NAME: &str = "c-inference-iff-opt-certain-on-translations";
    let family = build_family(
        &inst.inference_kb,
        &strict_search(opts),
        opts.max_creps,
        opts.budget,
    )?;
    if family.is_empty() {
        return Ok(Check::new(
            NAME,
            Status::NotApplicable,
            format!(
                "no c-representation with impact factors up to {}",
                opts.search.eta_max
            ),
        ));
    }
    let tables: Vec<CostTable> = family
        .iter()
        .map(|c| CostTable::new(&to_wkb(c), opts.budget))
        .collect::<Result<_>>()?;
    bounded_agreement(NAME, &family, &tables, &inst.queries.classical)
}

/// Skeptical c-inference over a family containing `η = ω` implies
/// opt-certain entailment, for c-compatible WKBs. The search is widened
/// to the largest weight so that the family contains it.
fn check_skeptical_implies_opt_certain(
    inst: &Instance,
    compatible: bool,
    opts: &VerifyOptions,
) -> Result<Check> {
    const NAME: &str = "skeptical-c-inference-implies-opt-certain";
    if !compatible {
        return Ok(Check::new(
            NAME,
            Status::NotApplicable,
            "the WKB is not c-compatible",
        ));
    }
    let weights = inst.open.eta();
    let eta_max = weights
        .iter()
        .copied()
        .max()
        .unwrap_or(0)
        .max(opts.search.eta_max);
    let allow_zero = weights.contains(&0);
    let span = eta_max + u64::from(allow_zero);
    let vectors = u32::try_from(weights.len())
        .ok()
        .and_then(|n| span.checked_pow(n))
        .filter(|&v| v <= WIDE_SEARCH_LIMIT);
    if vectors.is_none() {
        return Ok(Check::new(
            NAME,
            Status::NotApplicable,
            format!(
                "search up to {eta_max} over {} entries is too large",
                weights.len()
            ),
        ));
    }
    let search = SearchBudget {
        eta_max,
        mode: SatisfactionMode::Strict,
        allow_zero,
    };
    let table = PenaltyTable::new(inst.open.kb(), opts.budget)?;
    let mut family = Vec::new();
    let mut has_weights = false;
    for (eta, k0) in table.find(&search)? {
        if eta == weights {
            has_weights = true;
        } else if family.len() + 1 >= opts.max_creps {
            continue;
        }
        family.push(table.build(&eta, Some(k0), allow_zero)?);
    }
    if !has_weights {
        return Err(Error::Internal(
            "the open translation of a c-compatible WKB was not found by the search".into(),
        ));
    }
    for q in &inst.queries.classical {
        let verdict = c_inference_among(&family, q, Quantifier::Skeptical)?;
        if verdict.holds() && !inst.costs.entails(Entailment::OptCertain, q)? {
            return Ok(Check::failed(
                NAME,
                format!("`{q}` is skeptically inferred but not opt-certain"),
                json!({ "query": q.to_string(), "verdict": verdict.label() }),
            ));
        }
    }
    Ok(Check::new(
        NAME,
        Status::WithinBound,
        format!(
            "{} queries over {} c-representations (impact factors up to {eta_max})",
            inst.queries.classical.len(),
            family.len()
        ),
    ))
}
