mod common;

use alcorank::bridge::{self, query_set, verify_instance, Status, VerifyOptions};
use alcorank::cost::{CostTable, Entailment};
use alcorank::gen::{GenConfig, Generator};
use alcorank::herbrand::BitBudget;
use alcorank::syntax::{parse_statement, Assertion, ConceptExpr, Document, Statement};
use common::{oracle, wkb};
use proptest::prelude::*;

const BUDGET: BitBudget = BitBudget::DEFAULT;

/// Right side of the GCI clause: for every individual some optimal
/// interpretation keeps it out of `C ⊓ ¬D`.
fn no_violation_entailed(
    costs: &[(oracle::World, u64)],
    sub: &ConceptExpr,
    sup: &ConceptExpr,
) -> bool {
    let opt = oracle::optimal_cost(costs);
    let violation = ConceptExpr::and(sub.clone(), ConceptExpr::not(sup.clone()));
    let universe = &costs[0].0.universe;
    universe.iter().all(|a| {
        costs
            .iter()
            .any(|(w, c)| *c == opt && !oracle::ext(w, &violation).contains(a))
    })
}

#[test]
fn gci_clause_fails_right_to_left_through_a_role() {
    let text = "vocab { concepts: A; roles: r; individuals: a, b; } abox { a : exists r.A; }";
    let w = wkb(text);
    assert!(bridge::is_strongly_c_compatible(&w, BUDGET).unwrap());
    let q = parse_statement("A <= !A", &w.vocab).unwrap();
    let Statement::Gci(g) = &q else {
        unreachable!()
    };

    // engine and oracle agree that the GCI is not opt-possible
    let table = CostTable::new(&w, BUDGET).unwrap();
    assert!(!table.entails(Entailment::OptPossible, &q).unwrap());
    let costs = oracle::costs(&w);
    assert!(!oracle::opt_possible(&costs, &q));

    // yet no individual's violation `x : A ⊓ ¬¬A` is entailed by the open
    // translation
    let open = bridge::open_translation(&w, BUDGET).unwrap();
    let violation = ConceptExpr::and(g.sub.clone(), ConceptExpr::not(g.sup.clone()));
    for a in ["a", "b"] {
        let s = Statement::Assertion(Assertion::concept(a, violation.clone()));
        assert!(!open.ranking().satisfies_classical(&s).unwrap());
    }
    assert!(no_violation_entailed(&costs, &g.sub, &g.sup));

    let report = verify_instance(&Document::Weighted(w), &VerifyOptions::default()).unwrap();
    let check = report
        .get("opt-possible-gci-iff-no-violation-kappa-entailed")
        .unwrap();
    assert_eq!(check.status, Status::Fail);
    assert_eq!(check.witness.as_ref().unwrap()["query"], "A <= !A");
    assert_eq!(report.failures().count(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Without roles, membership at an individual depends on nothing else,
    /// so the optimal interpretations form a product and the clause holds
    /// in both directions.
    #[test]
    fn gci_clause_holds_without_roles(seed in any::<u64>()) {
        let cfg = GenConfig { max_roles: 0, ..GenConfig::default() };
        let mut g = Generator::new(seed, cfg);
        let w = g.satisfiable_strict_wkb(BUDGET).unwrap();
        let costs = oracle::costs(&w);
        let extra = w.tbox.iter().map(|t| Statement::Gci(t.item.clone()));
        for q in query_set(&w.vocab, extra).classical {
            let Statement::Gci(gci) = &q else { continue };
            prop_assert_eq!(oracle::opt_possible(&costs, &q), no_violation_entailed(&costs, &gci.sub, &gci.sup), "{}", q);
        }
    }

    /// The left-to-right direction holds with roles too.
    #[test]
    fn opt_possible_gci_has_no_entailed_violation(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let w = g.satisfiable_strict_wkb(BUDGET).unwrap();
        let costs = oracle::costs(&w);
        let extra = w.tbox.iter().map(|t| Statement::Gci(t.item.clone()));
        for q in query_set(&w.vocab, extra).classical {
            let Statement::Gci(gci) = &q else { continue };
            if oracle::opt_possible(&costs, &q) {
                prop_assert!(no_violation_entailed(&costs, &gci.sub, &gci.sup), "{}", q);
            }
        }
    }

    /// Open translation ranks are cost + κ0 and the rank-0 interpretations
    /// are the optimal ones, so opt-certain entailment is κ-entailment.
    #[test]
    fn open_translation_tracks_cost(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let w = g.satisfiable_strict_wkb(BUDGET).unwrap();
        let open = bridge::open_translation(&w, BUDGET).unwrap();
        let costs = oracle::costs(&w);
        let opt = oracle::optimal_cost(&costs);
        prop_assert_eq!(open.kappa0(), -(opt as i64));
        let omega = open.ranking().omega();
        for (world, c) in &costs {
            let expected = if *c == oracle::INF { oracle::INF } else { c - opt };
            prop_assert_eq!(open.ranking().rank_at(oracle::index_of(omega, world)), oracle::to_ext(expected));
        }
        for q in query_set(&w.vocab, []).classical {
            prop_assert_eq!(open.ranking().satisfies_classical(&q).unwrap(), oracle::opt_certain(&costs, &q), "{}", q);
        }
    }

    #[test]
    fn strong_compatibility_implies_compatibility(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let w = g.satisfiable_strict_wkb(BUDGET).unwrap();
        if bridge::is_strongly_c_compatible(&w, BUDGET).unwrap() {
            prop_assert!(bridge::is_c_compatible(&w, BUDGET).unwrap());
        }
    }

    #[test]
    fn strict_abox_translation_keeps_costs(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let w = g.weighted_kb();
        let s = bridge::strict_abox_translation(&w).unwrap();
        prop_assert!(s.has_strict_abox());
        let before = oracle::costs(&w);
        let after = oracle::costs(&s);
        for ((_, x), (_, y)) in before.iter().zip(&after) {
            prop_assert_eq!(x, y);
        }
    }

    /// to_wkb of a c-representation costs exactly rank − κ0.
    #[test]
    fn translated_crep_costs_rank_minus_kappa0(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let k = g.satisfiable_defeasible_kb(BUDGET).unwrap();
        let eta = g.eta(k.dbox.len());
        let (ranking, kappa0) = oracle::c_representation(&k, &eta).unwrap();
        let crep = alcorank::crep::CRepresentation::build(&k, &eta, None, BUDGET).unwrap();
        let w = bridge::to_wkb(&crep);
        for (world, r) in &ranking {
            let expected = if *r == oracle::INF { oracle::INF } else { (*r as i64 - kappa0) as u64 };
            prop_assert_eq!(oracle::cost(&w, world), expected);
        }
    }
}
