//! Naive set-based semantics, written against the definitions and not
//! against the engine: extensions are `BTreeSet`s of individual names,
//! interpretations are enumerated concept by concept and role by role, and
//! infinity is `u64::MAX` with saturating arithmetic.

use std::collections::{BTreeMap, BTreeSet};

use alcorank::herbrand::{InterpretationLiteral, Omega};
use alcorank::syntax::{
    Assertion, Axiom, ConceptExpr, DefeasibleKb, DefeasibleKind, ExtendedNat, Gci, Statement,
    Vocabulary, WeightedKb,
};

pub const INF: u64 = u64::MAX;

pub fn to_ext(v: u64) -> ExtendedNat {
    if v == INF {
        ExtendedNat::Infinity
    } else {
        ExtendedNat::Finite(v)
    }
}

pub fn from_ext(v: ExtendedNat) -> u64 {
    v.finite().unwrap_or(INF)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct World {
    pub universe: Vec<String>,
    pub concepts: BTreeMap<String, BTreeSet<String>>,
    pub roles: BTreeMap<String, BTreeSet<(String, String)>>,
}

fn subsets<T: Clone + Ord>(items: &[T]) -> Vec<BTreeSet<T>> {
    let mut out = vec![BTreeSet::new()];
    for x in items {
        let with: Vec<_> = out
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.insert(x.clone());
                s
            })
            .collect();
        out.extend(with);
    }
    out
}

/// Every Herbrand interpretation of the vocabulary.
pub fn worlds(vocab: &Vocabulary) -> Vec<World> {
    let universe = vocab.individuals().to_vec();
    let pairs: Vec<(String, String)> = universe
        .iter()
        .flat_map(|a| universe.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let concept_choices = subsets(&universe);
    let role_choices = subsets(&pairs);
    let mut out = vec![World {
        universe: universe.clone(),
        concepts: BTreeMap::new(),
        roles: BTreeMap::new(),
    }];
    for c in vocab.concepts() {
        out = out
            .into_iter()
            .flat_map(|w| {
                concept_choices.iter().map(move |s| {
                    let mut w = w.clone();
                    w.concepts.insert(c.clone(), s.clone());
                    w
                })
            })
            .collect();
    }
    for r in vocab.roles() {
        out = out
            .into_iter()
            .flat_map(|w| {
                role_choices.iter().map(move |s| {
                    let mut w = w.clone();
                    w.roles.insert(r.clone(), s.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// Position of `w` in the engine's enumeration, found through the JSON
/// literal form rather than the bit layout.
pub fn index_of(omega: &Omega, w: &World) -> u64 {
    let lit = InterpretationLiteral {
        concepts: w
            .concepts
            .iter()
            .map(|(c, s)| (c.clone(), s.iter().cloned().collect()))
            .collect(),
        roles: w
            .roles
            .iter()
            .map(|(r, s)| (r.clone(), s.iter().cloned().collect()))
            .collect(),
    };
    omega.encode(&omega.from_literal(&lit).expect("valid literal"))
}

pub fn ext(w: &World, c: &ConceptExpr) -> BTreeSet<String> {
    let all: BTreeSet<String> = w.universe.iter().cloned().collect();
    match c {
        ConceptExpr::Bot => BTreeSet::new(),
        ConceptExpr::Top => all,
        ConceptExpr::Atomic(n) => w.concepts.get(n).cloned().unwrap_or_default(),
        ConceptExpr::Nominal(n) => BTreeSet::from([n.clone()]),
        ConceptExpr::Not(c) => all.difference(&ext(w, c)).cloned().collect(),
        ConceptExpr::And(a, b) => ext(w, a).intersection(&ext(w, b)).cloned().collect(),
        ConceptExpr::Or(a, b) => ext(w, a).union(&ext(w, b)).cloned().collect(),
        ConceptExpr::Exists(r, c) => {
            let target = ext(w, c);
            let edges = w.roles.get(r).cloned().unwrap_or_default();
            all.into_iter()
                .filter(|x| edges.iter().any(|(s, o)| s == x && target.contains(o)))
                .collect()
        }
        ConceptExpr::Forall(r, c) => {
            let target = ext(w, c);
            let edges = w.roles.get(r).cloned().unwrap_or_default();
            all.into_iter()
                .filter(|x| edges.iter().all(|(s, o)| s != x || target.contains(o)))
                .collect()
        }
    }
}

pub fn gci_violations(w: &World, g: &Gci) -> u64 {
    ext(w, &g.sub).difference(&ext(w, &g.sup)).count() as u64
}

pub fn assertion_holds(w: &World, a: &Assertion) -> bool {
    match a {
        Assertion::Concept {
            individual,
            concept,
        } => ext(w, concept).contains(individual),
        Assertion::Role {
            subject,
            object,
            role,
        } => w
            .roles
            .get(role)
            .is_some_and(|s| s.contains(&(subject.clone(), object.clone()))),
    }
}

pub fn axiom_holds(w: &World, a: &Axiom) -> bool {
    match a {
        Axiom::Gci(g) => gci_violations(w, g) == 0,
        Axiom::Assertion(a) => assertion_holds(w, a),
    }
}

/// Classical truth of a GCI or assertion.
pub fn statement_holds(w: &World, s: &Statement) -> bool {
    axiom_holds(w, &s.as_axiom().expect("classical statement"))
}

fn weighted(weight: ExtendedNat, violations: u64) -> u64 {
    match (weight, violations) {
        (_, 0) => 0,
        (ExtendedNat::Infinity, _) => INF,
        (ExtendedNat::Finite(x), v) => x.saturating_mul(v),
    }
}

pub fn cost(kb: &WeightedKb, w: &World) -> u64 {
    let t = kb
        .tbox
        .iter()
        .map(|g| weighted(g.weight, gci_violations(w, &g.item)));
    let a = kb
        .abox
        .iter()
        .map(|a| weighted(a.weight, u64::from(!assertion_holds(w, &a.item))));
    t.chain(a).fold(0, u64::saturating_add)
}

/// Cost of every world, paired with the world.
pub fn costs(kb: &WeightedKb) -> Vec<(World, u64)> {
    worlds(&kb.vocab)
        .into_iter()
        .map(|w| {
            let c = cost(kb, &w);
            (w, c)
        })
        .collect()
}

pub fn optimal_cost(costs: &[(World, u64)]) -> u64 {
    costs.iter().map(|(_, c)| *c).min().unwrap_or(INF)
}

pub fn k_certain(costs: &[(World, u64)], k: u64, q: &Statement) -> bool {
    costs
        .iter()
        .filter(|(_, c)| *c <= k)
        .all(|(w, _)| statement_holds(w, q))
}

pub fn k_possible(costs: &[(World, u64)], k: u64, q: &Statement) -> bool {
    costs
        .iter()
        .filter(|(_, c)| *c <= k)
        .any(|(w, _)| statement_holds(w, q))
}

/// With no finite-cost interpretation every interpretation is optimal.
pub fn opt_certain(costs: &[(World, u64)], q: &Statement) -> bool {
    k_certain(costs, optimal_cost(costs), q)
}

pub fn opt_possible(costs: &[(World, u64)], q: &Statement) -> bool {
    k_possible(costs, optimal_cost(costs), q)
}

/// A ranking as a list of (world, rank) pairs.
pub type Ranking = Vec<(World, u64)>;

/// `κ(a:C)`.
pub fn rank_assertion(k: &Ranking, a: &str, c: &ConceptExpr) -> u64 {
    k.iter()
        .filter(|(w, _)| ext(w, c).contains(a))
        .map(|(_, r)| *r)
        .min()
        .unwrap_or(INF)
}

/// `κ(C)`, the least rank of a world where `C` is non-empty.
pub fn rank_concept(k: &Ranking, c: &ConceptExpr) -> u64 {
    k.iter()
        .filter(|(w, _)| !ext(w, c).is_empty())
        .map(|(_, r)| *r)
        .min()
        .unwrap_or(INF)
}

fn and(c: &ConceptExpr, d: &ConceptExpr) -> ConceptExpr {
    ConceptExpr::and(c.clone(), d.clone())
}

fn and_not(c: &ConceptExpr, d: &ConceptExpr) -> ConceptExpr {
    ConceptExpr::and(c.clone(), ConceptExpr::not(d.clone()))
}

pub fn weak_reps(
    k: &Ranking,
    universe: &[String],
    c: &ConceptExpr,
    d: &ConceptExpr,
) -> BTreeSet<String> {
    let best = rank_concept(k, &and(c, d));
    universe
        .iter()
        .filter(|a| {
            let v = rank_assertion(k, a, &and(c, d));
            v != INF && v == best && v < rank_assertion(k, a, &and_not(c, d))
        })
        .cloned()
        .collect()
}

pub fn strong_reps(
    k: &Ranking,
    universe: &[String],
    c: &ConceptExpr,
    d: &ConceptExpr,
) -> BTreeSet<String> {
    let weak = weak_reps(k, universe, c, d);
    let falsified = |a: &String| rank_assertion(k, a, &and_not(c, d));
    let best = weak.iter().map(falsified).min();
    weak.iter()
        .filter(|a| Some(falsified(a)) == best)
        .cloned()
        .collect()
}

/// Acceptance of `C ⊑~ D`: representatives exist and either
/// `κ(C⊓D) < κ(C⊓¬D)`, or (full mode only) the two are equal and every
/// representative of `C ⊑~ D` falsifies more plausibly than every
/// representative of `C ⊑~ ¬D` verifies.
pub fn accepts_dci(
    k: &Ranking,
    universe: &[String],
    c: &ConceptExpr,
    d: &ConceptExpr,
    full: bool,
) -> bool {
    let rep = strong_reps(k, universe, c, d);
    if rep.is_empty() {
        return false;
    }
    let v = rank_concept(k, &and(c, d));
    let f = rank_concept(k, &and_not(c, d));
    if v < f {
        return true;
    }
    if !full || v != f {
        return false;
    }
    let not_d = ConceptExpr::not(d.clone());
    let rep_neg = strong_reps(k, universe, c, &not_d);
    rep.iter().all(|a| {
        rep_neg
            .iter()
            .all(|b| rank_assertion(k, a, &and_not(c, d)) < rank_assertion(k, b, &and(c, d)))
    })
}

/// `C ⊑~∀ D` is accepted iff every nominal copy `{a} ⊓ C ⊑~ D` is.
pub fn accepts_qdci(
    k: &Ranking,
    universe: &[String],
    c: &ConceptExpr,
    d: &ConceptExpr,
    full: bool,
) -> bool {
    universe.iter().all(|a| {
        let copy = ConceptExpr::and(ConceptExpr::nominal(a.clone()), c.clone());
        accepts_dci(k, universe, &copy, d, full)
    })
}

pub fn accepts(k: &Ranking, universe: &[String], s: &Statement, full: bool) -> bool {
    match s {
        Statement::Defeasible(d) => match d.kind {
            DefeasibleKind::Open => accepts_dci(k, universe, &d.sub, &d.sup, full),
            DefeasibleKind::Quantified => accepts_qdci(k, universe, &d.sub, &d.sup, full),
        },
        _ => k
            .iter()
            .filter(|(_, r)| *r == 0)
            .all(|(w, _)| statement_holds(w, s)),
    }
}

pub fn is_model(k: &Ranking, kb: &DefeasibleKb, full: bool) -> bool {
    let strict = kb.strict_axioms();
    k.iter()
        .filter(|(_, r)| *r != INF)
        .all(|(w, _)| strict.iter().all(|a| axiom_holds(w, a)))
        && kb.dcis().all(|d| {
            accepts(
                k,
                kb.vocab.individuals(),
                &Statement::Defeasible(d.clone()),
                full,
            )
        })
}

/// The c-representation for `eta`: `Σ η_i·|C_i ⊓ ¬D_i|` shifted to a least
/// rank of zero on models of the strict part, infinity elsewhere. Returns
/// the ranking and `κ0`, or `None` when the strict part has no model.
pub fn c_representation(kb: &DefeasibleKb, eta: &[u64]) -> Option<(Ranking, i64)> {
    let strict = kb.strict_axioms();
    let raw: Vec<(World, u64)> = worlds(&kb.vocab)
        .into_iter()
        .map(|w| {
            let r = if strict.iter().all(|a| axiom_holds(&w, a)) {
                kb.dcis()
                    .zip(eta)
                    .map(|(d, e)| e * ext(&w, &and_not(&d.sub, &d.sup)).len() as u64)
                    .sum()
            } else {
                INF
            };
            (w, r)
        })
        .collect();
    let min = raw.iter().map(|(_, r)| *r).min().filter(|m| *m != INF)?;
    let ranking = raw
        .into_iter()
        .map(|(w, r)| (w, if r == INF { INF } else { r - min }))
        .collect();
    Some((ranking, -(min as i64)))
}
