//! Ranking functions over Herbrand interpretations and their lift to
//! assertions, concepts and defeasible inclusions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herbrand::{
    members, CompiledAxiom, Concept, Interpretation, InterpretationLiteral, Omega,
};
use crate::syntax::{
    Axiom, ConceptExpr, DefeasibleInclusion, DefeasibleKb, DefeasibleKind, ExtendedNat, Statement,
};

/// How open defeasible inclusions are accepted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SatisfactionMode {
    /// Only the plain comparison `κ(C⊓D) < κ(C⊓¬D)` (condition A).
    #[default]
    Strict,
    /// Condition A, or the tie-break on representatives (condition B).
    Full,
}

impl fmt::Display for SatisfactionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SatisfactionMode::Strict => "strict",
            SatisfactionMode::Full => "full",
        })
    }
}

/// Per-individual ranks `κ(a:C⊓D)` and `κ(a:C⊓¬D)` of a conditional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DciProfile {
    pub verified: Vec<ExtendedNat>,
    pub falsified: Vec<ExtendedNat>,
}

impl DciProfile {
    /// The profile of `C ⊑~ ¬D`.
    pub fn negated(&self) -> DciProfile {
        DciProfile {
            verified: self.falsified.clone(),
            falsified: self.verified.clone(),
        }
    }

    /// `κ(a:C) = min(κ(a:C⊓D), κ(a:C⊓¬D))`.
    pub fn antecedent(&self, a: usize) -> ExtendedNat {
        self.verified[a].min(self.falsified[a])
    }

    /// `κ(C⊓D)`.
    pub fn verified_rank(&self) -> ExtendedNat {
        self.verified
            .iter()
            .copied()
            .min()
            .unwrap_or(ExtendedNat::Infinity)
    }

    /// `κ(C⊓¬D)`.
    pub fn falsified_rank(&self) -> ExtendedNat {
        self.falsified
            .iter()
            .copied()
            .min()
            .unwrap_or(ExtendedNat::Infinity)
    }

    /// `min_a (κ(a:C⊓D) − κ(a:C))`, where an impossible antecedent yields inf.
    pub fn conditional_rank(&self) -> ExtendedNat {
        (0..self.verified.len())
            .map(|a| self.verified[a].saturating_diff(self.antecedent(a)))
            .min()
            .unwrap_or(ExtendedNat::Infinity)
    }

    /// Individuals with `κ(a:C⊓D) = κ(C⊓D) < ∞` and `κ(a:C⊓D) < κ(a:C⊓¬D)`.
    pub fn weak_representatives(&self) -> u64 {
        let best = self.verified_rank();
        if best.is_infinite() {
            return 0;
        }
        (0..self.verified.len())
            .filter(|&a| self.verified[a] == best && self.verified[a] < self.falsified[a])
            .fold(0, |m, a| m | 1 << a)
    }

    /// Weak representatives whose `κ(a:C⊓¬D)` is minimal among them.
    pub fn strong_representatives(&self) -> u64 {
        let weak = self.weak_representatives();
        let Some(best) = members(weak).map(|a| self.falsified[a]).min() else {
            return 0;
        };
        members(weak)
            .filter(|&a| self.falsified[a] == best)
            .fold(0, |m, a| m | 1 << a)
    }

    pub fn accepted(&self, mode: SatisfactionMode) -> bool {
        let rep = self.strong_representatives();
        if rep == 0 {
            return false;
        }
        let (v, f) = (self.verified_rank(), self.falsified_rank());
        if v < f {
            return true;
        }
        if mode == SatisfactionMode::Strict || v != f {
            return false;
        }
        let neg = self.negated();
        let rep_neg = neg.strong_representatives();
        members(rep).all(|a| members(rep_neg).all(|b| self.falsified[a] < self.verified[b]))
    }

    /// Quantified acceptance: `κ(a:C⊓D) < κ(a:C⊓¬D)` for every individual.
    pub fn accepted_for_all(&self) -> bool {
        self.verified
            .iter()
            .zip(&self.falsified)
            .all(|(v, f)| v < f)
    }

    /// Profile of the nominal copy `{a} ⊓ C ⊑~ D`.
    pub fn nominal_copy(&self, a: usize) -> DciProfile {
        let keep = |v: &[ExtendedNat]| {
            v.iter()
                .enumerate()
                .map(|(b, &r)| if b == a { r } else { ExtendedNat::Infinity })
                .collect()
        };
        DciProfile {
            verified: keep(&self.verified),
            falsified: keep(&self.falsified),
        }
    }

    /// First individual whose nominal copy is not accepted, if any.
    pub fn failing_nominal_copy(&self, mode: SatisfactionMode) -> Option<usize> {
        (0..self.verified.len()).find(|&a| !self.nominal_copy(a).accepted(mode))
    }
}

/// Why a ranking function fails to be a model of a defeasible KB.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelViolation {
    /// A DBox entry (position and inclusion) is not accepted. For a
    /// quantified inclusion, `individual` names the failing nominal copy.
    Dci {
        index: usize,
        inclusion: DefeasibleInclusion,
        individual: Option<String>,
    },
    /// An interpretation falsifying the strict part has a finite rank.
    FiniteRankOutsideStrictModels { world: u64 },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::Dci {
                inclusion,
                individual: None,
                ..
            } => write!(f, "`{inclusion}` is not accepted"),
            ModelViolation::Dci {
                inclusion,
                individual: Some(a),
                ..
            } => write!(f, "`{inclusion}` is not accepted for individual {a}"),
            ModelViolation::FiniteRankOutsideStrictModels { world } => write!(
                f,
                "interpretation #{world} falsifies the strict part but has a finite rank"
            ),
        }
    }
}

/// JSON row of a rank table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankEntry {
    pub interpretation: InterpretationLiteral,
    pub rank: ExtendedNat,
}

/// A ranking function given as an explicit table over all interpretations,
/// in index order.
#[derive(Clone, Debug, PartialEq)]
pub struct RankingFunction {
    omega: Omega,
    table: Vec<ExtendedNat>,
}

impl RankingFunction {
    pub fn new(omega: Omega, table: Vec<ExtendedNat>) -> Result<Self> {
        if table.len() as u64 != omega.len() {
            return Err(Error::InvalidRanking(format!(
                "table has {} entries but there are {} interpretations",
                table.len(),
                omega.len()
            )));
        }
        if !table.contains(&ExtendedNat::ZERO) {
            return Err(Error::InvalidRanking("no interpretation has rank 0".into()));
        }
        Ok(RankingFunction { omega, table })
    }

    pub fn from_fn(
        omega: Omega,
        mut f: impl FnMut(u64, &Interpretation) -> ExtendedNat,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(omega.len() as usize);
        omega.for_each(|ix, i| table.push(f(ix, i)));
        Self::new(omega, table)
    }

    pub fn omega(&self) -> &Omega {
        &self.omega
    }

    pub fn table(&self) -> &[ExtendedNat] {
        &self.table
    }

    pub fn rank_at(&self, ix: u64) -> ExtendedNat {
        self.table[ix as usize]
    }

    pub fn rank(&self, i: &Interpretation) -> ExtendedNat {
        self.rank_at(self.omega.encode(i))
    }

    /// Indices of the rank-0 interpretations.
    pub fn zero_worlds(&self) -> impl Iterator<Item = u64> + '_ {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, r)| **r == ExtendedNat::ZERO)
            .map(|(ix, _)| ix as u64)
    }

    /// Visits every finite-rank interpretation.
    fn for_each_finite(&self, mut f: impl FnMut(ExtendedNat, &Interpretation)) {
        let mut buf = self.omega.empty();
        for (ix, &r) in self.table.iter().enumerate() {
            if r.is_finite() {
                self.omega.decode_into(ix as u64, &mut buf);
                f(r, &buf);
            }
        }
    }

    /// `κ(a:C)` for every individual `a`.
    pub fn assertion_profile(&self, c: &Concept) -> Vec<ExtendedNat> {
        let mut out = vec![ExtendedNat::Infinity; self.omega.universe_size()];
        self.for_each_finite(|r, i| {
            for a in members(c.eval(i)) {
                out[a] = out[a].min(r);
            }
        });
        out
    }

    pub fn dci_profile_compiled(&self, c: &Concept, d: &Concept) -> DciProfile {
        profile_over(&self.omega, &self.table, c, d)
    }

    pub fn dci_profile(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<DciProfile> {
        Ok(self.dci_profile_compiled(&self.omega.compile(c)?, &self.omega.compile(d)?))
    }

    /// `κ(a:C)`: the least rank of an interpretation with `a ∈ C^I`.
    pub fn rank_of_assertion(&self, individual: &str, c: &ConceptExpr) -> Result<ExtendedNat> {
        let a = self
            .omega
            .vocab()
            .individual_index(individual)
            .ok_or_else(|| {
                Error::Undeclared(crate::syntax::NameKind::Individual, individual.into())
            })?;
        Ok(self.assertion_profile(&self.omega.compile(c)?)[a])
    }

    /// The least rank of an interpretation satisfying a classical statement.
    pub fn rank_of_axiom(&self, ax: &Axiom) -> Result<ExtendedNat> {
        let q = self.omega.compile_axiom(ax)?;
        let mut best = ExtendedNat::Infinity;
        self.for_each_finite(|r, i| {
            if r < best && q.holds(i) {
                best = r;
            }
        });
        Ok(best)
    }

    /// `κ(C) = min_a κ(a:C)`.
    pub fn rank_of_concept(&self, c: &ConceptExpr) -> Result<ExtendedNat> {
        let p = self.assertion_profile(&self.omega.compile(c)?);
        Ok(p.into_iter().min().unwrap_or(ExtendedNat::Infinity))
    }

    /// `κ(C ⊑~ D) = min_a (κ(a:C⊓D) − κ(a:C))`.
    pub fn rank_of_dci(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<ExtendedNat> {
        Ok(self.dci_profile(c, d)?.conditional_rank())
    }

    pub fn satisfies_compiled(&self, q: &CompiledAxiom) -> bool {
        let mut buf = self.omega.empty();
        self.zero_worlds().all(|ix| {
            self.omega.decode_into(ix, &mut buf);
            q.holds(&buf)
        })
    }

    /// A classical statement is accepted iff it holds in every rank-0
    /// interpretation.
    pub fn satisfies_classical(&self, s: &Statement) -> Result<bool> {
        Ok(self.satisfies_compiled(&self.omega.compile_statement(s)?))
    }

    pub fn satisfies_qdci(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<bool> {
        Ok(self.dci_profile(c, d)?.accepted_for_all())
    }

    pub fn weak_representatives(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<u64> {
        Ok(self.dci_profile(c, d)?.weak_representatives())
    }

    pub fn strong_representatives(&self, c: &ConceptExpr, d: &ConceptExpr) -> Result<u64> {
        Ok(self.dci_profile(c, d)?.strong_representatives())
    }

    pub fn satisfies_dci(
        &self,
        c: &ConceptExpr,
        d: &ConceptExpr,
        mode: SatisfactionMode,
    ) -> Result<bool> {
        Ok(self.dci_profile(c, d)?.accepted(mode))
    }

    /// Acceptance of any statement: classical ones via the rank-0
    /// interpretations, defeasible ones via their profiles.
    pub fn satisfies(&self, s: &Statement, mode: SatisfactionMode) -> Result<bool> {
        match s {
            Statement::Defeasible(d) => match d.kind {
                DefeasibleKind::Open => self.satisfies_dci(&d.sub, &d.sup, mode),
                DefeasibleKind::Quantified => self.satisfies_qdci(&d.sub, &d.sup),
            },
            _ => self.satisfies_classical(s),
        }
    }

    /// First reason, if any, why `self` is not a model of `kb`. Quantified
    /// inclusions are checked through their nominal copies `{a} ⊓ C ⊑~ D`.
    pub fn model_violation(
        &self,
        kb: &DefeasibleKb,
        mode: SatisfactionMode,
    ) -> Result<Option<ModelViolation>> {
        let strict: Vec<CompiledAxiom> = kb
            .strict_axioms()
            .iter()
            .map(|a| self.omega.compile_axiom(a))
            .collect::<Result<_>>()?;
        let mut buf = self.omega.empty();
        for (ix, r) in self.table.iter().enumerate() {
            if r.is_finite() {
                self.omega.decode_into(ix as u64, &mut buf);
                if !strict.iter().all(|ax| ax.holds(&buf)) {
                    return Ok(Some(ModelViolation::FiniteRankOutsideStrictModels {
                        world: ix as u64,
                    }));
                }
            }
        }
        for (index, inc) in kb.dcis().enumerate() {
            let p = self.dci_profile(&inc.sub, &inc.sup)?;
            let failing = match inc.kind {
                DefeasibleKind::Open => (!p.accepted(mode)).then_some(None),
                DefeasibleKind::Quantified => p
                    .failing_nominal_copy(mode)
                    .map(|a| Some(self.omega.vocab().individuals()[a].clone())),
            };
            if let Some(individual) = failing {
                return Ok(Some(ModelViolation::Dci {
                    index,
                    inclusion: inc.clone(),
                    individual,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_model(&self, kb: &DefeasibleKb, mode: SatisfactionMode) -> Result<bool> {
        Ok(self.model_violation(kb, mode)?.is_none())
    }

    pub fn to_entries(&self) -> Vec<RankEntry> {
        let mut buf = self.omega.empty();
        self.table
            .iter()
            .enumerate()
            .map(|(ix, &rank)| {
                self.omega.decode_into(ix as u64, &mut buf);
                RankEntry {
                    interpretation: self.omega.to_literal(&buf),
                    rank,
                }
            })
            .collect()
    }

    /// Builds a ranking from JSON rows; every interpretation must appear
    /// exactly once.
    pub fn from_entries(omega: Omega, entries: &[RankEntry]) -> Result<Self> {
        let mut table = vec![None; omega.len() as usize];
        for e in entries {
            let ix = omega.encode(&omega.from_literal(&e.interpretation)?);
            if table[ix as usize].replace(e.rank).is_some() {
                return Err(Error::InvalidRanking(format!(
                    "interpretation {} is listed twice",
                    omega.describe(&omega.decode(ix)?)
                )));
            }
        }
        let missing = table.iter().filter(|r| r.is_none()).count();
        if missing > 0 {
            return Err(Error::InvalidRanking(format!(
                "{missing} of {} interpretations have no rank",
                table.len()
            )));
        }
        Self::new(omega, table.into_iter().flatten().collect())
    }

    pub fn from_json(omega: Omega, json: &str) -> Result<Self> {
        let entries: Vec<RankEntry> =
            serde_json::from_str(json).map_err(|e| Error::InvalidRanking(e.to_string()))?;
        Self::from_entries(omega, &entries)
    }
}

/// Per-individual minima of `values` (one per interpretation, e.g. ranks
/// or costs) over the interpretations where `a ∈ (C⊓D)` and `a ∈ (C⊓¬D)`.
pub fn profile_over(omega: &Omega, values: &[ExtendedNat], c: &Concept, d: &Concept) -> DciProfile {
    let n = omega.universe_size();
    let mut p = DciProfile {
        verified: vec![ExtendedNat::Infinity; n],
        falsified: vec![ExtendedNat::Infinity; n],
    };
    let mut buf = omega.empty();
    for (ix, &r) in values.iter().enumerate() {
        if r.is_infinite() {
            continue;
        }
        omega.decode_into(ix as u64, &mut buf);
        let (ce, de) = (c.eval(&buf), d.eval(&buf));
        for a in members(ce & de) {
            p.verified[a] = p.verified[a].min(r);
        }
        for a in members(ce & !de) {
            p.falsified[a] = p.falsified[a].min(r);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herbrand::BitBudget;
    use crate::syntax::{parse_concept, parse_statement, Finite, Infinity, Vocabulary};

    /// Ranks 0, 1, 2, 2 on the four worlds with N ∈ L, inf elsewhere.
    fn kappa_star() -> RankingFunction {
        let v = Vocabulary::new(["L", "S", "E"], [], ["N"]).unwrap();
        let o = Omega::new(&v, BitBudget::DEFAULT).unwrap();
        RankingFunction::from_fn(o, |ix, _| {
            let (l, s, e) = (ix & 1 == 1, ix & 2 == 2, ix & 4 == 4);
            match (l, s, e) {
                (false, _, _) => Infinity,
                (true, false, false) => Finite(0),
                (true, true, true) => Finite(1),
                _ => Finite(2),
            }
        })
        .unwrap()
    }

    fn c(k: &RankingFunction, s: &str) -> ConceptExpr {
        parse_concept(s, k.omega().vocab()).unwrap()
    }

    #[test]
    fn lifted_ranks() {
        let k = kappa_star();
        assert_eq!(k.rank_of_assertion("N", &c(&k, "L & S")), Ok(Finite(1)));
        assert_eq!(k.rank_of_assertion("N", &c(&k, "bot")), Ok(Infinity));
        assert_eq!(k.rank_of_assertion("N", &c(&k, "L")), Ok(Finite(0)));
        assert_eq!(k.rank_of_concept(&c(&k, "L & !S")), Ok(Finite(0)));
        assert_eq!(k.rank_of_concept(&c(&k, "top")), Ok(Finite(0)));
        assert_eq!(k.rank_of_concept(&c(&k, "!L")), Ok(Infinity));
        assert_eq!(k.rank_of_dci(&c(&k, "L"), &c(&k, "S")), Ok(Finite(1)));
        assert_eq!(k.rank_of_dci(&c(&k, "L"), &c(&k, "top")), Ok(Finite(0)));
        assert_eq!(k.rank_of_dci(&c(&k, "!L"), &c(&k, "S")), Ok(Infinity));
    }

    #[test]
    fn classical_acceptance() {
        let k = kappa_star();
        let s = |t: &str| k.satisfies_classical(&parse_statement(t, k.omega().vocab()).unwrap());
        assert_eq!(s("N : !S"), Ok(true));
        assert_eq!(s("N : L"), Ok(true));
        assert_eq!(s("L <= S"), Ok(false));
    }

    #[test]
    fn defeasible_acceptance() {
        let k = kappa_star();
        let (l, s, ne) = (c(&k, "L"), c(&k, "S"), c(&k, "!E"));
        assert_eq!(k.satisfies_qdci(&l, &ne), Ok(true));
        assert_eq!(k.satisfies_qdci(&l, &s), Ok(false));
        assert_eq!(k.satisfies_qdci(&ConceptExpr::Bot, &s), Ok(false));
        assert_eq!(k.weak_representatives(&l, &ne), Ok(1));
        assert_eq!(k.weak_representatives(&l, &s), Ok(0));
        assert_eq!(k.strong_representatives(&l, &ne), Ok(1));
        assert_eq!(k.satisfies_dci(&l, &ne, SatisfactionMode::Strict), Ok(true));
        assert_eq!(k.satisfies_dci(&l, &s, SatisfactionMode::Strict), Ok(false));
        assert_eq!(k.satisfies_dci(&l, &s, SatisfactionMode::Full), Ok(false));
    }

    #[test]
    fn ties_fail_in_strict_mode() {
        let v = Vocabulary::new(["C", "D"], [], ["a"]).unwrap();
        let o = Omega::new(&v, BitBudget::DEFAULT).unwrap();
        // rank 0 on {C(a), D(a)} and {C(a)}, inf elsewhere
        let k = RankingFunction::from_fn(o, |ix, _| if ix & 1 == 1 { Finite(0) } else { Infinity })
            .unwrap();
        let (cc, d) = (c(&k, "C"), c(&k, "D"));
        assert_eq!(
            k.satisfies_dci(&cc, &d, SatisfactionMode::Strict),
            Ok(false)
        );
        assert_eq!(k.weak_representatives(&cc, &d), Ok(0));
    }

    #[test]
    fn penguin_modelhood_fails_on_first_rule() {
        let k = kappa_star();
        let doc = crate::syntax::parse_document(
            "vocab { concepts: L, S, E; roles: ; individuals: N; }
             dbox { L ~< S; L ~< !E; S ~< E; } abox { N : L; }",
        )
        .unwrap();
        let crate::syntax::Document::Defeasible(kb) = doc else {
            panic!()
        };
        let v = k
            .model_violation(&kb, SatisfactionMode::Strict)
            .unwrap()
            .unwrap();
        assert!(matches!(v, ModelViolation::Dci { index: 0, .. }));
    }

    #[test]
    fn table_validation_and_json() {
        let k = kappa_star();
        let json = serde_json::to_string(&k.to_entries()).unwrap();
        let back = RankingFunction::from_json(k.omega().clone(), &json).unwrap();
        assert_eq!(back, k);
        let mut entries = k.to_entries();
        entries.pop();
        assert!(RankingFunction::from_entries(k.omega().clone(), &entries).is_err());
        assert!(RankingFunction::new(k.omega().clone(), vec![Finite(1); 8]).is_err());
    }
}
