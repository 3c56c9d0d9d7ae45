//! Seeded random knowledge bases, rankings and impact vectors for
//! property tests and `verify --random`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge;
use crate::cost::CostTable;
use crate::crep::PenaltyTable;
use crate::error::Result;
use crate::herbrand::{BitBudget, Omega};
use crate::ranking::RankingFunction;
use crate::syntax::{
    Assertion, ConceptExpr, DboxEntry, DefeasibleInclusion, DefeasibleKb, Document, ExtendedNat,
    Gci, Vocabulary, Weighted, WeightedKb,
};

const CONCEPT_NAMES: [&str; 4] = ["A", "B", "C", "D"];
const ROLE_NAMES: [&str; 2] = ["r", "s"];
const INDIVIDUAL_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Size limits of generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub max_individuals: usize,
    pub max_concepts: usize,
    pub max_roles: usize,
    pub max_depth: usize,
    /// Largest finite weight, impact factor and rank.
    pub max_weight: u64,
    pub max_tbox: usize,
    pub max_abox: usize,
    pub max_dbox: usize,
    pub nominals: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_individuals: 2,
            max_concepts: 3,
            max_roles: 1,
            max_depth: 2,
            max_weight: 3,
            max_tbox: 3,
            max_abox: 2,
            max_dbox: 3,
            nominals: true,
        }
    }
}

pub struct Generator {
    rng: ChaCha8Rng,
    cfg: GenConfig,
}

impl Generator {
    pub fn new(seed: u64, cfg: GenConfig) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            cfg,
        }
    }

    pub fn from_seed(seed: u64) -> Self {
        Self::new(seed, GenConfig::default())
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn vocabulary(&mut self) -> Vocabulary {
        let c = self
            .rng
            .gen_range(1..=self.cfg.max_concepts.min(CONCEPT_NAMES.len()));
        let r = self
            .rng
            .gen_range(0..=self.cfg.max_roles.min(ROLE_NAMES.len()));
        let u = self
            .rng
            .gen_range(1..=self.cfg.max_individuals.min(INDIVIDUAL_NAMES.len()));
        Vocabulary::new(
            CONCEPT_NAMES[..c].iter().copied(),
            ROLE_NAMES[..r].iter().copied(),
            INDIVIDUAL_NAMES[..u].iter().copied(),
        )
        .expect("distinct names")
    }

    fn pick(&mut self, names: &[String]) -> String {
        names.choose(&mut self.rng).expect("non-empty").clone()
    }

    pub fn concept(&mut self, vocab: &Vocabulary, depth: usize) -> ConceptExpr {
        if depth == 0 || self.rng.gen_bool(0.35) {
            return match self.rng.gen_range(0..10) {
                0 => ConceptExpr::Top,
                1 => ConceptExpr::Bot,
                2 | 3 if self.cfg.nominals => ConceptExpr::nominal(self.pick(vocab.individuals())),
                _ => ConceptExpr::atomic(self.pick(vocab.concepts())),
            };
        }
        let d = depth - 1;
        let choices = if vocab.roles().is_empty() { 3 } else { 5 };
        match self.rng.gen_range(0..choices) {
            0 => ConceptExpr::not(self.concept(vocab, d)),
            1 => ConceptExpr::and(self.concept(vocab, d), self.concept(vocab, d)),
            2 => ConceptExpr::or(self.concept(vocab, d), self.concept(vocab, d)),
            3 => ConceptExpr::exists(self.pick(vocab.roles()), self.concept(vocab, d)),
            _ => ConceptExpr::forall(self.pick(vocab.roles()), self.concept(vocab, d)),
        }
    }

    fn any_concept(&mut self, vocab: &Vocabulary) -> ConceptExpr {
        let depth = self.cfg.max_depth;
        self.concept(vocab, depth)
    }

    pub fn gci(&mut self, vocab: &Vocabulary) -> Gci {
        Gci::new(self.any_concept(vocab), self.any_concept(vocab))
    }

    pub fn concept_assertion(&mut self, vocab: &Vocabulary) -> Assertion {
        Assertion::concept(self.pick(vocab.individuals()), self.any_concept(vocab))
    }

    pub fn role_assertion(&mut self, vocab: &Vocabulary) -> Option<Assertion> {
        if vocab.roles().is_empty() {
            return None;
        }
        Some(Assertion::role(
            self.pick(vocab.individuals()),
            self.pick(vocab.individuals()),
            self.pick(vocab.roles()),
        ))
    }

    /// A weight in `1..=max_weight`, or infinity one time in four.
    pub fn weight(&mut self) -> ExtendedNat {
        if self.rng.gen_bool(0.25) {
            ExtendedNat::Infinity
        } else {
            ExtendedNat::Finite(self.rng.gen_range(1..=self.cfg.max_weight))
        }
    }

    pub fn eta(&mut self, n: usize) -> Vec<u64> {
        (0..n)
            .map(|_| self.rng.gen_range(1..=self.cfg.max_weight))
            .collect()
    }

    fn abox(&mut self, vocab: &Vocabulary) -> Vec<Assertion> {
        let n = self.rng.gen_range(0..=self.cfg.max_abox);
        let mut out: Vec<Assertion> = (0..n).map(|_| self.concept_assertion(vocab)).collect();
        if self.rng.gen_bool(0.3) {
            out.extend(self.role_assertion(vocab));
        }
        out
    }

    /// A WKB whose concept assertions may carry finite weights; role
    /// assertions are always strict.
    pub fn weighted_kb(&mut self) -> WeightedKb {
        let vocab = self.vocabulary();
        self.weighted_kb_over(vocab, false)
    }

    /// A WKB whose ABox is strict.
    pub fn strict_weighted_kb(&mut self) -> WeightedKb {
        let vocab = self.vocabulary();
        self.weighted_kb_over(vocab, true)
    }

    pub fn weighted_kb_over(&mut self, vocab: Vocabulary, strict_abox: bool) -> WeightedKb {
        let mut kb = WeightedKb::new(vocab.clone());
        for _ in 0..self.rng.gen_range(0..=self.cfg.max_tbox) {
            let g = self.gci(&vocab);
            let w = self.weight();
            kb.tbox.push(Weighted::new(g, w));
        }
        for a in self.abox(&vocab) {
            let w = match a {
                Assertion::Concept { .. } if !strict_abox => self.weight(),
                _ => ExtendedNat::Infinity,
            };
            kb.abox.push(Weighted::new(a, w));
        }
        kb
    }

    /// A defeasible KB with at most one strict GCI, one to `max_dbox`
    /// distinct DBox entries (about one in five quantified) and, half of
    /// the time, impact hints on every entry.
    pub fn defeasible_kb(&mut self) -> DefeasibleKb {
        let vocab = self.vocabulary();
        let mut kb = DefeasibleKb::new(vocab.clone());
        if self.rng.gen_bool(0.3) {
            kb.tbox.push(self.gci(&vocab));
        }
        let hints = self.rng.gen_bool(0.5);
        let n = self.rng.gen_range(1..=self.cfg.max_dbox);
        while kb.dbox.len() < n {
            let (sub, sup) = (self.any_concept(&vocab), self.any_concept(&vocab));
            let inclusion = if self.rng.gen_bool(0.2) {
                DefeasibleInclusion::quantified(sub, sup)
            } else {
                DefeasibleInclusion::open(sub, sup)
            };
            if kb.dcis().any(|d| *d == inclusion) {
                continue;
            }
            let impact = hints.then(|| self.rng.gen_range(1..=self.cfg.max_weight));
            kb.dbox.push(DboxEntry { inclusion, impact });
        }
        kb.abox = self.abox(&vocab);
        kb
    }

    /// A ranking over `omega` with ranks in `0..=max_weight` or infinity,
    /// at least one of them zero.
    pub fn ranking(&mut self, omega: &Omega) -> RankingFunction {
        let len = omega.len() as usize;
        let mut table: Vec<ExtendedNat> = (0..len)
            .map(|_| {
                if self.rng.gen_bool(0.2) {
                    ExtendedNat::Infinity
                } else {
                    ExtendedNat::Finite(self.rng.gen_range(0..=self.cfg.max_weight))
                }
            })
            .collect();
        let zero = self.rng.gen_range(0..len);
        table[zero] = ExtendedNat::ZERO;
        RankingFunction::new(omega.clone(), table).expect("has a rank-0 world")
    }

    /// A weighted or defeasible document (even odds) whose strict part is
    /// satisfiable, so that it can be verified. Strict ABoxes only for the
    /// weighted case half of the time.
    pub fn verifiable_document(&mut self, budget: BitBudget) -> Result<Document> {
        loop {
            let doc = if self.rng.gen_bool(0.5) {
                let strict = self.rng.gen_bool(0.5);
                let vocab = self.vocabulary();
                Document::Weighted(self.weighted_kb_over(vocab, strict))
            } else {
                Document::Defeasible(self.defeasible_kb())
            };
            let satisfiable = match &doc {
                // Duplicate weak GCIs have no translation to a DBox.
                Document::Weighted(w) => {
                    CostTable::new(w, budget)?.optimal_cost().is_finite()
                        && bridge::strict_abox_translation(w)
                            .and_then(|s| bridge::open_translation(&s, budget))
                            .is_ok()
                }
                Document::Defeasible(k) => !PenaltyTable::new(k, budget)?.models().is_empty(),
            };
            if satisfiable {
                return Ok(doc);
            }
        }
    }

    /// A strict-ABox WKB with a satisfiable infinite-weight part.
    pub fn satisfiable_strict_wkb(&mut self, budget: BitBudget) -> Result<WeightedKb> {
        loop {
            let w = self.strict_weighted_kb();
            if CostTable::new(&w, budget)?.optimal_cost().is_finite()
                && bridge::open_translation(&w, budget).is_ok()
            {
                return Ok(w);
            }
        }
    }

    pub fn satisfiable_defeasible_kb(&mut self, budget: BitBudget) -> Result<DefeasibleKb> {
        loop {
            let k = self.defeasible_kb();
            if !PenaltyTable::new(&k, budget)?.models().is_empty() {
                return Ok(k);
            }
        }
    }
}
