//! Cost-based semantics for weighted knowledge bases: violation sets,
//! interpretation costs, the optimal cost and the four entailment relations.

use std::fmt;

use crate::error::{Error, Result};
use crate::herbrand::{BitBudget, CompiledAxiom, Interpretation, Omega};
use crate::syntax::{Assertion, ExtendedNat, Gci, Statement, WeightedKb};

/// `vio(I)` of a GCI: the individuals in `(C ⊓ ¬D)^I`.
pub fn gci_violations(omega: &Omega, i: &Interpretation, g: &Gci) -> Result<u64> {
    Ok(omega.compile_gci(g)?.violations(i))
}

/// Positions of the ABox assertions that `i` falsifies.
pub fn abox_violations(
    omega: &Omega,
    i: &Interpretation,
    abox: &[Assertion],
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (pos, a) in abox.iter().enumerate() {
        if !omega.compile_assertion(a)?.holds(i) {
            out.push(pos);
        }
    }
    Ok(out)
}

/// Which interpretations an entailment quantifies over, and how.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entailment {
    /// The query holds in every interpretation of cost at most `k`.
    KCertain(u64),
    /// The query holds in some interpretation of cost at most `k`.
    KPossible(u64),
    /// The query holds in every interpretation of optimal cost.
    OptCertain,
    /// The query holds in some interpretation of optimal cost.
    OptPossible,
}

impl Entailment {
    pub fn is_certain(self) -> bool {
        matches!(self, Entailment::KCertain(_) | Entailment::OptCertain)
    }
}

impl fmt::Display for Entailment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entailment::KCertain(k) => write!(f, "{k}-certain"),
            Entailment::KPossible(k) => write!(f, "{k}-possible"),
            Entailment::OptCertain => f.write_str("opt-certain"),
            Entailment::OptPossible => f.write_str("opt-possible"),
        }
    }
}

/// A weighted KB with names resolved, ready for evaluation.
#[derive(Clone, Debug)]
pub struct CostModel {
    omega: Omega,
    axioms: Vec<(CompiledAxiom, ExtendedNat)>,
}

impl CostModel {
    pub fn new(wkb: &WeightedKb, budget: BitBudget) -> Result<Self> {
        let omega = Omega::new(&wkb.vocab, budget)?;
        Self::with_omega(wkb, omega)
    }

    pub fn with_omega(wkb: &WeightedKb, omega: Omega) -> Result<Self> {
        let mut axioms = Vec::with_capacity(wkb.tbox.len() + wkb.abox.len());
        for g in &wkb.tbox {
            axioms.push((omega.compile_gci(&g.item)?, g.weight));
        }
        for a in &wkb.abox {
            axioms.push((omega.compile_assertion(&a.item)?, a.weight));
        }
        Ok(CostModel { omega, axioms })
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    /// `Σ ω(τ)·|vio_τ(I)|` over the TBox plus `Σ ω(α)` over violated assertions.
    pub fn cost(&self, i: &Interpretation) -> ExtendedNat {
        self.axioms
            .iter()
            .map(|(ax, w)| match ax {
                CompiledAxiom::Gci { .. } => *w * u64::from(ax.violations(i).count_ones()),
                _ if ax.holds(i) => ExtendedNat::ZERO,
                _ => *w,
            })
            .sum()
    }

    /// Cost of every interpretation, in index order.
    pub fn table(&self) -> CostTable {
        let mut costs = Vec::with_capacity(self.omega.len() as usize);
        self.omega.for_each(|_, i| costs.push(self.cost(i)));
        CostTable::from_costs(self.omega.clone(), costs)
    }
}

/// Costs of all interpretations of a weighted KB.
#[derive(Clone, Debug)]
pub struct CostTable {
    omega: Omega,
    costs: Vec<ExtendedNat>,
    optimal: ExtendedNat,
}

impl CostTable {
    pub fn new(wkb: &WeightedKb, budget: BitBudget) -> Result<Self> {
        Ok(CostModel::new(wkb, budget)?.table())
    }

    fn from_costs(omega: Omega, costs: Vec<ExtendedNat>) -> Self {
        let optimal = costs.iter().copied().min().unwrap_or(ExtendedNat::Infinity);
        CostTable {
            omega,
            costs,
            optimal,
        }
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    pub fn costs(&self) -> &[ExtendedNat] {
        &self.costs
    }

    pub fn cost_at(&self, ix: u64) -> ExtendedNat {
        self.costs[ix as usize]
    }

    /// `optc`, the minimum cost over all interpretations.
    pub fn optimal_cost(&self) -> ExtendedNat {
        self.optimal
    }

    /// Largest finite cost, if any interpretation has finite cost.
    pub fn max_finite_cost(&self) -> Option<u64> {
        self.costs.iter().filter_map(|c| c.finite()).max()
    }

    fn qualifies(&self, mode: Entailment, cost: ExtendedNat) -> bool {
        match mode {
            Entailment::KCertain(k) | Entailment::KPossible(k) => cost <= ExtendedNat::Finite(k),
            // With optc = inf this selects every interpretation.
            Entailment::OptCertain | Entailment::OptPossible => cost == self.optimal,
        }
    }

    /// Whether the predicate `holds` is entailed in the given mode. Universal
    /// modes are vacuously true and existential modes false when no
    /// interpretation qualifies.
    pub fn entails_with(
        &self,
        mode: Entailment,
        mut holds: impl FnMut(&Interpretation) -> bool,
    ) -> bool {
        let certain = mode.is_certain();
        let mut buf = self.omega.empty();
        for (ix, &c) in self.costs.iter().enumerate() {
            if !self.qualifies(mode, c) {
                continue;
            }
            self.omega.decode_into(ix as u64, &mut buf);
            if holds(&buf) != certain {
                return !certain;
            }
        }
        certain
    }

    pub fn entails_axiom(&self, mode: Entailment, q: &CompiledAxiom) -> bool {
        self.entails_with(mode, |i| q.holds(i))
    }

    pub fn entails(&self, mode: Entailment, q: &Statement) -> Result<bool> {
        let q = self.omega.compile_statement(q)?;
        Ok(self.entails_axiom(mode, &q))
    }

    /// First interpretation (by index) that qualifies for `mode` and decides
    /// the answer: a counterexample for certain modes, a witness for
    /// possible modes.
    pub fn deciding_world(&self, mode: Entailment, q: &CompiledAxiom) -> Option<u64> {
        let certain = mode.is_certain();
        let mut buf = self.omega.empty();
        for (ix, &c) in self.costs.iter().enumerate() {
            if self.qualifies(mode, c) {
                self.omega.decode_into(ix as u64, &mut buf);
                if q.holds(&buf) != certain {
                    return Some(ix as u64);
                }
            }
        }
        None
    }
}

pub fn cost(wkb: &WeightedKb, i: &Interpretation, budget: BitBudget) -> Result<ExtendedNat> {
    Ok(CostModel::new(wkb, budget)?.cost(i))
}

pub fn optimal_cost(wkb: &WeightedKb, budget: BitBudget) -> Result<ExtendedNat> {
    Ok(CostTable::new(wkb, budget)?.optimal_cost())
}

pub fn entails(
    wkb: &WeightedKb,
    mode: Entailment,
    q: &Statement,
    budget: BitBudget,
) -> Result<bool> {
    if matches!(q, Statement::Defeasible(_)) {
        return Err(Error::DefeasibleStatement);
    }
    CostTable::new(wkb, budget)?.entails(mode, q)
}
