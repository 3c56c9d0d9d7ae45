mod common;

use alcorank::cost::{CostTable, Entailment};
use alcorank::gen::Generator;
use alcorank::herbrand::{BitBudget, Omega};
use alcorank::ranking::SatisfactionMode;
use alcorank::syntax::{ConceptExpr, DefeasibleInclusion, Statement, Weighted};
use common::oracle;
use proptest::prelude::*;

const BUDGET: BitBudget = BitBudget::DEFAULT;

fn concepts(g: &mut Generator, vocab: &alcorank::syntax::Vocabulary, n: usize) -> Vec<ConceptExpr> {
    let depth = g.config().max_depth;
    (0..n).map(|_| g.concept(vocab, depth)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn encode_inverts_decode(seed in any::<u64>(), pick in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let omega = Omega::new(&g.vocabulary(), BUDGET).unwrap();
        let ix = pick % omega.len();
        let i = omega.decode(ix).unwrap();
        prop_assert_eq!(omega.encode(&i), ix);
        prop_assert_eq!(omega.from_literal(&omega.to_literal(&i)).unwrap(), i);
    }

    #[test]
    fn quantifier_and_boolean_dualities(seed in any::<u64>(), pick in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let vocab = g.vocabulary();
        let omega = Omega::new(&vocab, BUDGET).unwrap();
        let i = omega.decode(pick % omega.len()).unwrap();
        let cs = concepts(&mut g, &vocab, 2);
        let (c, d) = (&cs[0], &cs[1]);
        let ext = |x: ConceptExpr| omega.extension(&i, &x).unwrap();
        let not = |x: &ConceptExpr| ConceptExpr::not(x.clone());
        for r in vocab.roles() {
            prop_assert_eq!(
                ext(ConceptExpr::forall(r.clone(), c.clone())),
                ext(ConceptExpr::not(ConceptExpr::exists(r.clone(), not(c))))
            );
        }
        prop_assert_eq!(
            ext(ConceptExpr::not(ConceptExpr::and(c.clone(), d.clone()))),
            ext(ConceptExpr::or(not(c), not(d)))
        );
        prop_assert_eq!(ext(not(&not(c))), ext(c.clone()));
        prop_assert_eq!(ext(ConceptExpr::or(c.clone(), not(c))), omega.full());
    }

    #[test]
    fn k_entailment_is_monotone_in_k(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let w = g.weighted_kb();
        let t = CostTable::new(&w, BUDGET).unwrap();
        let q = Statement::Gci(g.gci(&w.vocab));
        let top = t.max_finite_cost().unwrap_or(0) + 1;
        for k in 0..top {
            let (c0, c1) = (t.entails(Entailment::KCertain(k), &q).unwrap(), t.entails(Entailment::KCertain(k + 1), &q).unwrap());
            let (p0, p1) = (t.entails(Entailment::KPossible(k), &q).unwrap(), t.entails(Entailment::KPossible(k + 1), &q).unwrap());
            // certain: fewer interpretations as k shrinks; possible: more as k grows
            prop_assert!(!c1 || c0);
            prop_assert!(!p0 || p1);
        }
    }

    /// Adding an axiom can only raise costs, so k-certain conclusions
    /// survive every extension of the KB.
    #[test]
    fn k_certain_is_monotone_in_the_kb(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let w = g.weighted_kb();
        let mut bigger = w.clone();
        let extra = g.gci(&w.vocab);
        let weight = g.weight();
        bigger.tbox.push(Weighted::new(extra, weight));
        if let Some(a) = g.role_assertion(&w.vocab) {
            bigger.abox.push(Weighted::new(a, g.weight()));
        }
        let (small, large) = (CostTable::new(&w, BUDGET).unwrap(), CostTable::new(&bigger, BUDGET).unwrap());
        let queries = [Statement::Gci(g.gci(&w.vocab)), Statement::Assertion(g.concept_assertion(&w.vocab))];
        for q in &queries {
            for k in 0..=4 {
                if small.entails(Entailment::KCertain(k), q).unwrap() {
                    prop_assert!(large.entails(Entailment::KCertain(k), q).unwrap(), "{} at k = {}", q, k);
                }
            }
        }
    }

    #[test]
    fn costs_match_the_oracle(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let w = g.weighted_kb();
        let t = CostTable::new(&w, BUDGET).unwrap();
        for (world, c) in oracle::costs(&w) {
            prop_assert_eq!(t.cost_at(oracle::index_of(t.omega(), &world)), oracle::to_ext(c));
        }
    }

    #[test]
    fn representatives_and_acceptance_modes(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let vocab = g.vocabulary();
        let omega = Omega::new(&vocab, BUDGET).unwrap();
        let kappa = g.ranking(&omega);
        let cs = concepts(&mut g, &vocab, 2);
        let (c, d) = (&cs[0], &cs[1]);
        let weak = kappa.weak_representatives(c, d).unwrap();
        let strong = kappa.strong_representatives(c, d).unwrap();
        prop_assert_eq!(strong & !weak, 0);
        prop_assert_eq!(strong == 0, weak == 0);
        let strict = kappa.satisfies_dci(c, d, SatisfactionMode::Strict).unwrap();
        let full = kappa.satisfies_dci(c, d, SatisfactionMode::Full).unwrap();
        prop_assert!(!strict || full);
        // at most one of C ~< D and C ~< ¬D is accepted
        let neg = kappa.satisfies_dci(c, &ConceptExpr::not(d.clone()), SatisfactionMode::Full).unwrap();
        prop_assert!(!(full && neg));
    }

    #[test]
    fn quantified_inclusion_is_its_nominal_copies(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let vocab = g.vocabulary();
        let omega = Omega::new(&vocab, BUDGET).unwrap();
        let kappa = g.ranking(&omega);
        let cs = concepts(&mut g, &vocab, 2);
        let (c, d) = (&cs[0], &cs[1]);
        let copies = vocab.individuals().iter().all(|a| {
            let copy = ConceptExpr::and(ConceptExpr::nominal(a.clone()), c.clone());
            kappa.satisfies_dci(&copy, d, SatisfactionMode::Strict).unwrap()
        });
        let q = Statement::Defeasible(DefeasibleInclusion::quantified(c.clone(), d.clone()));
        prop_assert_eq!(kappa.satisfies(&q, SatisfactionMode::Strict).unwrap(), copies);
    }

    /// Narrowing a concept can only make it less plausible.
    #[test]
    fn rank_is_antitone(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let vocab = g.vocabulary();
        let omega = Omega::new(&vocab, BUDGET).unwrap();
        let kappa = g.ranking(&omega);
        let cs = concepts(&mut g, &vocab, 2);
        let (c, d) = (&cs[0], &cs[1]);
        let narrow = ConceptExpr::and(c.clone(), d.clone());
        prop_assert!(kappa.rank_of_concept(&narrow).unwrap() >= kappa.rank_of_concept(c).unwrap());
        for a in vocab.individuals() {
            prop_assert!(kappa.rank_of_assertion(a, &narrow).unwrap() >= kappa.rank_of_assertion(a, c).unwrap());
        }
        prop_assert_eq!(kappa.rank_of_concept(&ConceptExpr::Top).unwrap(), alcorank::syntax::ExtendedNat::ZERO);
    }

    #[test]
    fn c_representations_match_the_oracle(seed in any::<u64>()) {
        let mut g = Generator::from_seed(seed);
        let k = g.satisfiable_defeasible_kb(BUDGET).unwrap();
        let eta = g.eta(k.dbox.len());
        let crep = alcorank::crep::CRepresentation::build(&k, &eta, None, BUDGET).unwrap();
        let (naive, kappa0) = oracle::c_representation(&k, &eta).unwrap();
        prop_assert_eq!(crep.kappa0(), kappa0);
        let omega = crep.ranking().omega();
        for (world, r) in &naive {
            prop_assert_eq!(crep.ranking().rank_at(oracle::index_of(omega, world)), oracle::to_ext(*r));
        }
        prop_assert_eq!(crep.is_model().unwrap(), oracle::is_model(&naive, &k, false));
    }
}
