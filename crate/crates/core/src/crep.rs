//! c-representations: ranking functions of the form
//! `κ(I) = κ0 + Σ f_i(I)·η_i` on models of the strict part, where `f_i(I)`
//! counts the individuals violating the `i`-th DBox entry.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::herbrand::{BitBudget, CompiledAxiom, Concept, Interpretation, Omega};
use crate::ranking::{DciProfile, RankingFunction, SatisfactionMode};
use crate::syntax::{DefeasibleKb, DefeasibleKind, ExtendedNat, Statement};

/// Bounds for the impact-factor search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest impact factor tried.
    pub eta_max: u64,
    pub mode: SatisfactionMode,
    /// Also try `η_i = 0`. Off by default: a zero factor leaves its
    /// inclusion without any penalty.
    pub allow_zero: bool,
}

impl SearchBudget {
    pub fn new(eta_max: u64) -> Self {
        SearchBudget {
            eta_max,
            ..Self::default()
        }
    }

    pub fn with_mode(mut self, mode: SatisfactionMode) -> Self {
        self.mode = mode;
        self
    }

    fn lowest(&self) -> u64 {
        u64::from(!self.allow_zero)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            eta_max: 8,
            mode: SatisfactionMode::Strict,
            allow_zero: false,
        }
    }
}

/// Per-interpretation data of a defeasible KB that does not depend on the
/// impact factors: which interpretations satisfy the strict part, and for
/// each DBox entry the individuals verifying and falsifying it.
#[derive(Clone, Debug)]
pub struct PenaltyTable {
    omega: Omega,
    kb: DefeasibleKb,
    strict: Vec<CompiledAxiom>,
    dbox: Vec<(Concept, Concept)>,
    /// Indices of the models of the strict part, ascending.
    models: Vec<u64>,
    /// `(C_i ⊓ D_i)^I` and `(C_i ⊓ ¬D_i)^I` masks, `models.len() × dbox.len()`.
    verified: Vec<u64>,
    falsified: Vec<u64>,
}

impl PenaltyTable {
    pub fn new(kb: &DefeasibleKb, budget: BitBudget) -> Result<Self> {
        let omega = Omega::new(&kb.vocab, budget)?;
        let strict = kb
            .strict_axioms()
            .iter()
            .map(|a| omega.compile_axiom(a))
            .collect::<Result<Vec<_>>>()?;
        let dbox = kb
            .dcis()
            .map(|d| Ok((omega.compile(&d.sub)?, omega.compile(&d.sup)?)))
            .collect::<Result<Vec<_>>>()?;
        let (mut models, mut verified, mut falsified) = (Vec::new(), Vec::new(), Vec::new());
        omega.for_each(|ix, i| {
            if strict.iter().all(|a| a.holds(i)) {
                models.push(ix);
                for (c, d) in &dbox {
                    let (ce, de) = (c.eval(i), d.eval(i));
                    verified.push(ce & de);
                    falsified.push(ce & !de);
                }
            }
        });
        Ok(PenaltyTable {
            omega,
            kb: kb.clone(),
            strict,
            dbox,
            models,
            verified,
            falsified,
        })
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    pub fn kb(&self) -> &DefeasibleKb {
        &self.kb
    }

    /// Indices of the interpretations satisfying the strict part.
    pub fn models(&self) -> &[u64] {
        &self.models
    }

    pub fn is_strict_model(&self, i: &Interpretation) -> bool {
        self.strict.iter().all(|a| a.holds(i))
    }

    /// `f_i(I)`: number of individuals violating entry `i` in model `m`
    /// (a position in `models()`).
    fn violation_count(&self, m: usize, i: usize) -> u64 {
        u64::from(self.falsified[m * self.dbox.len() + i].count_ones())
    }

    fn check_eta(&self, eta: &[u64], allow_zero: bool) -> Result<()> {
        if eta.len() != self.dbox.len() {
            return Err(Error::EtaLength {
                expected: self.dbox.len(),
                got: eta.len(),
            });
        }
        if !allow_zero && eta.contains(&0) {
            return Err(Error::ZeroEta);
        }
        Ok(())
    }

    fn raw_at(&self, m: usize, eta: &[u64]) -> u64 {
        eta.iter()
            .enumerate()
            .map(|(i, e)| self.violation_count(m, i) * e)
            .sum()
    }

    /// `Σ f_i(I)·η_i` for an interpretation satisfying the strict part.
    pub fn raw_penalty(&self, eta: &[u64], i: &Interpretation) -> Result<u64> {
        self.check_eta(eta, true)?;
        if !self.is_strict_model(i) {
            return Err(Error::Usage(format!(
                "interpretation {} falsifies the strict part",
                self.omega.describe(i)
            )));
        }
        Ok(self
            .dbox
            .iter()
            .zip(eta)
            .map(|((c, d), e)| u64::from((c.eval(i) & !d.eval(i)).count_ones()) * e)
            .sum())
    }

    /// The forced `κ0 = −min Σ f_i·η_i` over models of the strict part.
    pub fn normalization_constant(&self, eta: &[u64]) -> Result<i64> {
        self.check_eta(eta, true)?;
        let min = (0..self.models.len())
            .map(|m| self.raw_at(m, eta))
            .min()
            .ok_or(Error::UnsatisfiableStrictPart)?;
        i64::try_from(min)
            .map(|v| -v)
            .map_err(|_| Error::Usage("impact factors are too large".into()))
    }

    /// Ranks of the strict models, normalized so the least is zero.
    fn model_ranks(&self, eta: &[u64]) -> Vec<u64> {
        let raw: Vec<u64> = (0..self.models.len())
            .map(|m| self.raw_at(m, eta))
            .collect();
        let min = raw.iter().copied().min().unwrap_or(0);
        raw.into_iter().map(|r| r - min).collect()
    }

    /// Profiles of all DBox entries under the normalized ranking for `eta`.
    pub fn profiles(&self, eta: &[u64]) -> Vec<DciProfile> {
        let n = self.omega.universe_size();
        let k = self.dbox.len();
        let ranks = self.model_ranks(eta);
        let mut out = vec![
            DciProfile {
                verified: vec![ExtendedNat::Infinity; n],
                falsified: vec![ExtendedNat::Infinity; n],
            };
            k
        ];
        for (m, &r) in ranks.iter().enumerate() {
            let r = ExtendedNat::Finite(r);
            for (i, p) in out.iter_mut().enumerate() {
                for a in crate::herbrand::members(self.verified[m * k + i]) {
                    p.verified[a] = p.verified[a].min(r);
                }
                for a in crate::herbrand::members(self.falsified[m * k + i]) {
                    p.falsified[a] = p.falsified[a].min(r);
                }
            }
        }
        out
    }

    /// Whether the normalized ranking for `eta` is a model of the KB.
    pub fn accepts(&self, eta: &[u64], mode: SatisfactionMode) -> bool {
        if self.models.is_empty() {
            return false;
        }
        self.profiles(eta)
            .iter()
            .zip(self.kb.dcis())
            .all(|(p, d)| match d.kind {
                DefeasibleKind::Open => p.accepted(mode),
                DefeasibleKind::Quantified => p.failing_nominal_copy(mode).is_none(),
            })
    }

    /// Materializes the ranking for `eta`; `kappa0`, when given, must be the
    /// forced normalization constant.
    pub fn build(
        &self,
        eta: &[u64],
        kappa0: Option<i64>,
        allow_zero: bool,
    ) -> Result<CRepresentation> {
        self.check_eta(eta, allow_zero)?;
        let forced = self.normalization_constant(eta)?;
        if let Some(given) = kappa0 {
            if given != forced {
                return Err(Error::NormalizationMismatch {
                    given,
                    expected: forced,
                });
            }
        }
        let mut table = vec![ExtendedNat::Infinity; self.omega.len() as usize];
        for (&ix, r) in self.models.iter().zip(self.model_ranks(eta)) {
            table[ix as usize] = ExtendedNat::Finite(r);
        }
        let ranking = RankingFunction::new(self.omega.clone(), table)?;
        Ok(CRepresentation {
            kb: self.kb.clone(),
            eta: eta.to_vec(),
            kappa0: forced,
            ranking,
            mode: SatisfactionMode::Strict,
        })
    }

    /// Every `η ∈ [lo, eta_max]^n` whose ranking is a model, in
    /// lexicographic order, with its forced `κ0`.
    pub fn find(&self, budget: &SearchBudget) -> Result<Vec<(Vec<u64>, i64)>> {
        if self.models.is_empty() {
            return Err(Error::UnsatisfiableStrictPart);
        }
        let lo = budget.lowest();
        let mut out = Vec::new();
        if budget.eta_max < lo {
            return Ok(out);
        }
        let mut eta = vec![lo; self.dbox.len()];
        loop {
            if self.accepts(&eta, budget.mode) {
                out.push((eta.clone(), self.normalization_constant(&eta)?));
            }
            // Odometer step with the last position varying fastest.
            let mut pos = eta.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                if eta[pos] < budget.eta_max {
                    eta[pos] += 1;
                    break;
                }
                eta[pos] = lo;
            }
        }
    }
}

/// A ranking function generated by impact factors over a defeasible KB.
#[derive(Clone, Debug, PartialEq)]
pub struct CRepresentation {
    kb: DefeasibleKb,
    eta: Vec<u64>,
    kappa0: i64,
    ranking: RankingFunction,
    mode: SatisfactionMode,
}

impl CRepresentation {
    /// Builds the ranking for positive impact factors `eta` (one per DBox
    /// entry, in DBox order). A supplied `kappa0` is validated.
    pub fn build(
        kb: &DefeasibleKb,
        eta: &[u64],
        kappa0: Option<i64>,
        budget: BitBudget,
    ) -> Result<Self> {
        PenaltyTable::new(kb, budget)?.build(eta, kappa0, false)
    }

    pub fn with_mode(mut self, mode: SatisfactionMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn kb(&self) -> &DefeasibleKb {
        &self.kb
    }

    pub fn eta(&self) -> &[u64] {
        &self.eta
    }

    pub fn kappa0(&self) -> i64 {
        self.kappa0
    }

    pub fn ranking(&self) -> &RankingFunction {
        &self.ranking
    }

    pub fn mode(&self) -> SatisfactionMode {
        self.mode
    }

    /// Whether the ranking is a model of the KB, i.e. a genuine
    /// c-representation.
    pub fn is_model(&self) -> Result<bool> {
        self.ranking.is_model(&self.kb, self.mode)
    }

    /// κ-entailment of a classical or defeasible statement.
    pub fn entails(&self, q: &Statement) -> Result<bool> {
        self.ranking.satisfies(q, self.mode)
    }
}

pub fn raw_penalty(
    kb: &DefeasibleKb,
    eta: &[u64],
    i: &Interpretation,
    budget: BitBudget,
) -> Result<u64> {
    PenaltyTable::new(kb, budget)?.raw_penalty(eta, i)
}

pub fn normalization_constant(kb: &DefeasibleKb, eta: &[u64], budget: BitBudget) -> Result<i64> {
    PenaltyTable::new(kb, budget)?.normalization_constant(eta)
}

pub fn is_c_representation(
    kb: &DefeasibleKb,
    eta: &[u64],
    kappa0: Option<i64>,
    mode: SatisfactionMode,
    budget: BitBudget,
) -> Result<bool> {
    CRepresentation::build(kb, eta, kappa0, budget)?
        .with_mode(mode)
        .is_model()
}

pub fn find_c_representations(
    kb: &DefeasibleKb,
    search: &SearchBudget,
    budget: BitBudget,
) -> Result<Vec<(Vec<u64>, i64)>> {
    PenaltyTable::new(kb, budget)?.find(search)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    /// Entailed by every c-representation.
    Skeptical,
    /// Entailed by at least one c-representation.
    Credulous,
}

/// Impact factors and normalization constant of a c-representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub eta: Vec<u64>,
    pub kappa0: i64,
}

/// Outcome of bounded c-inference. `Holds` and `Fails` are backed by a
/// witness and hold regardless of the bound; the `WithinBound` verdicts
/// only speak for the c-representations found within it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds(Witness),
    Fails(Witness),
    HoldsWithinBound { checked: usize },
    FailsWithinBound { checked: usize },
    NoCRepresentationWithinBound,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds(_) => "holds",
            Verdict::Fails(_) => "fails",
            Verdict::HoldsWithinBound { .. } => "holds-within-bound",
            Verdict::FailsWithinBound { .. } => "fails-within-bound",
            Verdict::NoCRepresentationWithinBound => "no-c-representation-within-bound",
        }
    }

    /// Positive verdicts, qualified or not.
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_) | Verdict::HoldsWithinBound { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())?;
        match self {
            Verdict::Holds(w) | Verdict::Fails(w) => {
                write!(f, " (witness eta = {:?}, kappa0 = {})", w.eta, w.kappa0)
            }
            Verdict::HoldsWithinBound { checked } | Verdict::FailsWithinBound { checked } => {
                write!(f, " ({checked} c-representations checked)")
            }
            Verdict::NoCRepresentationWithinBound => Ok(()),
        }
    }
}

/// Skeptical or credulous c-inference over the c-representations found
/// within the search bound. The first witness in lexicographic order of
/// `η` is reported.
pub fn c_inference(
    kb: &DefeasibleKb,
    q: &Statement,
    quantifier: Quantifier,
    search: &SearchBudget,
    budget: BitBudget,
) -> Result<Verdict> {
    let table = PenaltyTable::new(kb, budget)?;
    let found = match table.find(search) {
        Err(Error::UnsatisfiableStrictPart) => return Ok(Verdict::NoCRepresentationWithinBound),
        other => other?,
    };
    decide(
        q,
        quantifier,
        found.iter().map(|(eta, kappa0)| {
            table
                .build(eta, Some(*kappa0), search.allow_zero)
                .map(|c| c.with_mode(search.mode))
        }),
    )
}

/// c-inference over an explicit family of c-representations, e.g. one
/// found earlier with [`find_c_representations`]. An empty family yields
/// `NoCRepresentationWithinBound`.
pub fn c_inference_among(
    creps: &[CRepresentation],
    q: &Statement,
    quantifier: Quantifier,
) -> Result<Verdict> {
    decide(q, quantifier, creps.iter().map(Ok))
}

fn decide<C: std::borrow::Borrow<CRepresentation>>(
    q: &Statement,
    quantifier: Quantifier,
    creps: impl Iterator<Item = Result<C>>,
) -> Result<Verdict> {
    let mut checked = 0;
    for crep in creps {
        let crep = crep?;
        let crep = crep.borrow();
        checked += 1;
        let entailed = crep.entails(q)?;
        let witness = || Witness {
            eta: crep.eta().to_vec(),
            kappa0: crep.kappa0(),
        };
        match quantifier {
            Quantifier::Credulous if entailed => return Ok(Verdict::Holds(witness())),
            Quantifier::Skeptical if !entailed => return Ok(Verdict::Fails(witness())),
            _ => {}
        }
    }
    Ok(match quantifier {
        _ if checked == 0 => Verdict::NoCRepresentationWithinBound,
        Quantifier::Credulous => Verdict::FailsWithinBound { checked },
        Quantifier::Skeptical => Verdict::HoldsWithinBound { checked },
    })
}
