//! Translations between c-representations and weighted knowledge bases,
//! the c-compatibility conditions, and instance-level verification of the
//! correspondences between the two semantics.

mod verify;

pub use verify::{query_set, verify_instance, Check, Status, VerificationReport, VerifyOptions};

use std::collections::HashSet;
use std::fmt;

use crate::cost::CostTable;
use crate::crep::{CRepresentation, PenaltyTable};
use crate::error::{Error, Result};
use crate::herbrand::BitBudget;
use crate::ranking::profile_over;
use crate::syntax::{
    Assertion, ConceptExpr, DboxEntry, DefeasibleInclusion, DefeasibleKb, ExtendedNat, Gci,
    Weighted, WeightedKb,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TranslationKind {
    ToWkb,
    Quantified,
    Open,
    StrictAbox,
}

/// The weighted KB of a c-representation: strict axioms get weight
/// infinity and each DBox entry `C ⊑~ D` becomes `C ⊑ D` weighted by its
/// impact factor.
pub fn to_wkb(crep: &CRepresentation) -> WeightedKb {
    let kb = crep.kb();
    let inf = ExtendedNat::Infinity;
    let mut tbox: Vec<Weighted<Gci>> = kb
        .tbox
        .iter()
        .map(|g| Weighted::new(g.clone(), inf))
        .collect();
    tbox.extend(
        kb.dcis()
            .zip(crep.eta())
            .map(|(d, &e)| Weighted::new(d.to_gci(), e)),
    );
    WeightedKb {
        vocab: kb.vocab.clone(),
        tbox,
        abox: kb
            .abox
            .iter()
            .map(|a| Weighted::new(a.clone(), inf))
            .collect(),
    }
}

/// Moves every finite-weight concept assertion `a : C` into the TBox as
/// `{a} ⊑ C` with the same weight. Finite-weight role assertions have no
/// such counterpart and are rejected.
pub fn strict_abox_translation(wkb: &WeightedKb) -> Result<WeightedKb> {
    let mut out = WeightedKb::new(wkb.vocab.clone());
    out.tbox = wkb.tbox.clone();
    for a in &wkb.abox {
        if a.weight.is_infinite() {
            out.abox.push(a.clone());
            continue;
        }
        match &a.item {
            Assertion::Concept {
                individual,
                concept,
            } => out.tbox.push(Weighted::new(
                Gci::new(ConceptExpr::nominal(individual.clone()), concept.clone()),
                a.weight,
            )),
            Assertion::Role { .. } => return Err(Error::WeakRoleAssertion(a.item.to_string())),
        }
    }
    Ok(out)
}

type WeakGcis = Vec<(Gci, u64)>;

/// Splits a strict-ABox WKB into its infinite-weight GCIs and its weak
/// GCIs with their (finite) weights.
fn split_tbox(wkb: &WeightedKb) -> Result<(Vec<Gci>, WeakGcis)> {
    if !wkb.has_strict_abox() {
        return Err(Error::NonStrictAbox);
    }
    let mut strict = Vec::new();
    let mut weak = Vec::new();
    let mut seen = HashSet::new();
    for g in &wkb.tbox {
        match g.weight.finite() {
            None => strict.push(g.item.clone()),
            Some(w) => {
                if !seen.insert(&g.item) {
                    return Err(Error::DuplicateWeakGci(g.item.to_string()));
                }
                weak.push((g.item.clone(), w));
            }
        }
    }
    Ok((strict, weak))
}

fn translate(
    wkb: &WeightedKb,
    dbox: Vec<(DefeasibleInclusion, u64)>,
    strict: Vec<Gci>,
    budget: BitBudget,
) -> Result<CRepresentation> {
    let eta: Vec<u64> = dbox.iter().map(|(_, w)| *w).collect();
    let kb = DefeasibleKb {
        vocab: wkb.vocab.clone(),
        tbox: strict,
        dbox: dbox
            .into_iter()
            .map(|(d, w)| DboxEntry {
                inclusion: d,
                // Zero weights cannot be written as impact hints.
                impact: (w > 0).then_some(w),
            })
            .collect(),
        abox: wkb.abox.iter().map(|a| a.item.clone()).collect(),
    };
    PenaltyTable::new(&kb, budget)?.build(&eta, None, true)
}

/// Open translation: each weak GCI `C ⊑ D` becomes `C ⊑~ D` with its
/// weight as impact factor; `κ0` is minus the optimal cost.
pub fn open_translation(wkb: &WeightedKb, budget: BitBudget) -> Result<CRepresentation> {
    let (strict, weak) = split_tbox(wkb)?;
    let dbox = weak
        .into_iter()
        .map(|(g, w)| (DefeasibleInclusion::open(g.sub, g.sup), w))
        .collect();
    translate(wkb, dbox, strict, budget)
}

/// Quantified translation: each weak GCI `C ⊑ D` becomes one inclusion
/// `{a} ⊓ C ⊑~ D` per individual `a`, all sharing its weight.
pub fn quantified_translation(wkb: &WeightedKb, budget: BitBudget) -> Result<CRepresentation> {
    let (strict, weak) = split_tbox(wkb)?;
    let mut dbox = Vec::new();
    for (g, w) in weak {
        for a in wkb.vocab.individuals() {
            let guarded = ConceptExpr::and(ConceptExpr::nominal(a.clone()), g.sub.clone());
            dbox.push((DefeasibleInclusion::open(guarded, g.sup.clone()), w));
        }
    }
    translate(wkb, dbox, strict, budget)
}

/// A weak GCI for which the c-compatibility inequality fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatFailure {
    pub gci: Gci,
    /// The individual, for the per-individual (strong) condition.
    pub individual: Option<String>,
    /// Least cost of an interpretation with an instance of `C ⊓ D`.
    pub verified_cost: ExtendedNat,
    /// Least cost of an interpretation with an instance of `C ⊓ ¬D`.
    pub falsified_cost: ExtendedNat,
}

impl fmt::Display for CompatFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule `{}`", self.gci)?;
        if let Some(a) = &self.individual {
            write!(f, " at individual {a}")?;
        }
        write!(
            f,
            ": least cost with C ⊓ D is {}, not below the least cost with C ⊓ ¬D ({})",
            self.verified_cost, self.falsified_cost
        )
    }
}

/// Checks the (strong, if `strong`) c-compatibility condition against a
/// precomputed cost table and returns the first failing weak GCI.
pub fn compatibility_failure(
    wkb: &WeightedKb,
    costs: &CostTable,
    strong: bool,
) -> Result<Option<CompatFailure>> {
    if !wkb.has_strict_abox() {
        return Err(Error::NonStrictAbox);
    }
    let omega = costs.omega();
    for g in wkb.tbox.iter().filter(|g| g.weight.is_finite()) {
        let p = profile_over(
            omega,
            costs.costs(),
            &omega.compile(&g.item.sub)?,
            &omega.compile(&g.item.sup)?,
        );
        let failure = |individual, verified_cost, falsified_cost| CompatFailure {
            gci: g.item.clone(),
            individual,
            verified_cost,
            falsified_cost,
        };
        if strong {
            for (a, name) in wkb.vocab.individuals().iter().enumerate() {
                if p.verified[a] >= p.falsified[a] {
                    return Ok(Some(failure(
                        Some(name.clone()),
                        p.verified[a],
                        p.falsified[a],
                    )));
                }
            }
        } else if p.verified_rank() >= p.falsified_rank() {
            return Ok(Some(failure(None, p.verified_rank(), p.falsified_rank())));
        }
    }
    Ok(None)
}

pub fn c_compatibility(wkb: &WeightedKb, budget: BitBudget) -> Result<Option<CompatFailure>> {
    if !wkb.has_strict_abox() {
        return Err(Error::NonStrictAbox);
    }
    compatibility_failure(wkb, &CostTable::new(wkb, budget)?, false)
}

pub fn strong_c_compatibility(
    wkb: &WeightedKb,
    budget: BitBudget,
) -> Result<Option<CompatFailure>> {
    if !wkb.has_strict_abox() {
        return Err(Error::NonStrictAbox);
    }
    compatibility_failure(wkb, &CostTable::new(wkb, budget)?, true)
}

pub fn is_c_compatible(wkb: &WeightedKb, budget: BitBudget) -> Result<bool> {
    Ok(c_compatibility(wkb, budget)?.is_none())
}

pub fn is_strongly_c_compatible(wkb: &WeightedKb, budget: BitBudget) -> Result<bool> {
    Ok(strong_c_compatibility(wkb, budget)?.is_none())
}
