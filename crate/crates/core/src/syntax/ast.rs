use std::collections::HashMap;
use std::fmt;

use super::ext_nat::ExtendedNat;
use super::render;

/// Maximum number of individuals: individual sets are stored as `u64` masks.
pub const MAX_INDIVIDUALS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NameKind {
    Concept,
    Role,
    Individual,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Concept => "concept",
            NameKind::Role => "role",
            NameKind::Individual => "individual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VocabError {
    #[error("duplicate declaration of `{0}`")]
    Duplicate(String),
    #[error("the individual set (Herbrand universe) must be non-empty")]
    NoIndividuals,
    #[error("at most {MAX_INDIVIDUALS} individuals are supported, found {0}")]
    TooManyIndividuals(usize),
}

/// Concept, role and individual names with a fixed order.
///
/// The individual names are the Herbrand universe. Indices into the three
/// lists drive the bit layout of enumerated interpretations.
#[derive(Clone, Debug)]
pub struct Vocabulary {
    concepts: Vec<String>,
    roles: Vec<String>,
    individuals: Vec<String>,
    lookup: HashMap<String, (NameKind, usize)>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.concepts == other.concepts
            && self.roles == other.roles
            && self.individuals == other.individuals
    }
}

impl Eq for Vocabulary {}

impl Vocabulary {
    pub fn new<S: Into<String>>(
        concepts: impl IntoIterator<Item = S>,
        roles: impl IntoIterator<Item = S>,
        individuals: impl IntoIterator<Item = S>,
    ) -> Result<Self, VocabError> {
        let concepts: Vec<String> = concepts.into_iter().map(Into::into).collect();
        let roles: Vec<String> = roles.into_iter().map(Into::into).collect();
        let individuals: Vec<String> = individuals.into_iter().map(Into::into).collect();
        if individuals.is_empty() {
            return Err(VocabError::NoIndividuals);
        }
        if individuals.len() > MAX_INDIVIDUALS {
            return Err(VocabError::TooManyIndividuals(individuals.len()));
        }
        let mut lookup = HashMap::new();
        for (kind, names) in [
            (NameKind::Concept, &concepts),
            (NameKind::Role, &roles),
            (NameKind::Individual, &individuals),
        ] {
            for (i, name) in names.iter().enumerate() {
                if lookup.insert(name.clone(), (kind, i)).is_some() {
                    return Err(VocabError::Duplicate(name.clone()));
                }
            }
        }
        Ok(Vocabulary {
            concepts,
            roles,
            individuals,
            lookup,
        })
    }

    pub fn concepts(&self) -> &[String] {
        &self.concepts
    }

    pub fn roles(&self) -> &[String] {
        &self.roles
    }

    pub fn individuals(&self) -> &[String] {
        &self.individuals
    }

    pub fn kind_of(&self, name: &str) -> Option<NameKind> {
        self.lookup.get(name).map(|&(k, _)| k)
    }

    pub fn index_of(&self, kind: NameKind, name: &str) -> Option<usize> {
        match self.lookup.get(name) {
            Some(&(k, i)) if k == kind => Some(i),
            _ => None,
        }
    }

    pub fn concept_index(&self, name: &str) -> Option<usize> {
        self.index_of(NameKind::Concept, name)
    }

    pub fn role_index(&self, name: &str) -> Option<usize> {
        self.index_of(NameKind::Role, name)
    }

    pub fn individual_index(&self, name: &str) -> Option<usize> {
        self.index_of(NameKind::Individual, name)
    }

    pub fn universe_size(&self) -> usize {
        self.individuals.len()
    }

    /// Checks that every name used by `c` is declared with the right kind.
    pub fn check_concept(&self, c: &ConceptExpr) -> Result<(), (NameKind, String)> {
        let mut err = None;
        c.visit_names(&mut |kind, name| {
            if err.is_none() && self.index_of(kind, name).is_none() {
                err = Some((kind, name.to_owned()));
            }
        });
        err.map_or(Ok(()), Err)
    }

    pub fn check_statement(&self, s: &Statement) -> Result<(), (NameKind, String)> {
        match s {
            Statement::Gci(g) => self.check_gci(g),
            Statement::Defeasible(d) => {
                self.check_concept(&d.sub)?;
                self.check_concept(&d.sup)
            }
            Statement::Assertion(a) => self.check_assertion(a),
        }
    }

    pub fn check_gci(&self, g: &Gci) -> Result<(), (NameKind, String)> {
        self.check_concept(&g.sub)?;
        self.check_concept(&g.sup)
    }

    pub fn check_assertion(&self, a: &Assertion) -> Result<(), (NameKind, String)> {
        let need = |kind, name: &str| {
            self.index_of(kind, name)
                .map(|_| ())
                .ok_or((kind, name.to_owned()))
        };
        match a {
            Assertion::Concept {
                individual,
                concept,
            } => {
                need(NameKind::Individual, individual)?;
                self.check_concept(concept)
            }
            Assertion::Role {
                subject,
                object,
                role,
            } => {
                need(NameKind::Individual, subject)?;
                need(NameKind::Individual, object)?;
                need(NameKind::Role, role)
            }
        }
    }
}

/// An ALCO concept.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConceptExpr {
    Bot,
    Top,
    Atomic(String),
    Nominal(String),
    Not(Box<ConceptExpr>),
    And(Box<ConceptExpr>, Box<ConceptExpr>),
    Or(Box<ConceptExpr>, Box<ConceptExpr>),
    Exists(String, Box<ConceptExpr>),
    Forall(String, Box<ConceptExpr>),
}

impl ConceptExpr {
    pub fn atomic(name: impl Into<String>) -> Self {
        ConceptExpr::Atomic(name.into())
    }

    pub fn nominal(name: impl Into<String>) -> Self {
        ConceptExpr::Nominal(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: ConceptExpr) -> Self {
        ConceptExpr::Not(Box::new(c))
    }

    pub fn and(a: ConceptExpr, b: ConceptExpr) -> Self {
        ConceptExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ConceptExpr, b: ConceptExpr) -> Self {
        ConceptExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(role: impl Into<String>, c: ConceptExpr) -> Self {
        ConceptExpr::Exists(role.into(), Box::new(c))
    }

    pub fn forall(role: impl Into<String>, c: ConceptExpr) -> Self {
        ConceptExpr::Forall(role.into(), Box::new(c))
    }

    pub fn depth(&self) -> usize {
        match self {
            ConceptExpr::Bot
            | ConceptExpr::Top
            | ConceptExpr::Atomic(_)
            | ConceptExpr::Nominal(_) => 0,
            ConceptExpr::Not(c) | ConceptExpr::Exists(_, c) | ConceptExpr::Forall(_, c) => {
                1 + c.depth()
            }
            ConceptExpr::And(a, b) | ConceptExpr::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn visit_names(&self, f: &mut impl FnMut(NameKind, &str)) {
        match self {
            ConceptExpr::Bot | ConceptExpr::Top => {}
            ConceptExpr::Atomic(n) => f(NameKind::Concept, n),
            ConceptExpr::Nominal(n) => f(NameKind::Individual, n),
            ConceptExpr::Not(c) => c.visit_names(f),
            ConceptExpr::And(a, b) | ConceptExpr::Or(a, b) => {
                a.visit_names(f);
                b.visit_names(f);
            }
            ConceptExpr::Exists(r, c) | ConceptExpr::Forall(r, c) => {
                f(NameKind::Role, r);
                c.visit_names(f);
            }
        }
    }
}

impl fmt::Display for ConceptExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::concept(self))
    }
}

/// General concept inclusion `sub ⊑ sup`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gci {
    pub sub: ConceptExpr,
    pub sup: ConceptExpr,
}

impl Gci {
    pub fn new(sub: ConceptExpr, sup: ConceptExpr) -> Self {
        Gci { sub, sup }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assertion {
    Concept {
        individual: String,
        concept: ConceptExpr,
    },
    Role {
        subject: String,
        object: String,
        role: String,
    },
}

impl Assertion {
    pub fn concept(individual: impl Into<String>, concept: ConceptExpr) -> Self {
        Assertion::Concept {
            individual: individual.into(),
            concept,
        }
    }

    pub fn role(
        subject: impl Into<String>,
        object: impl Into<String>,
        role: impl Into<String>,
    ) -> Self {
        Assertion::Role {
            subject: subject.into(),
            object: object.into(),
            role: role.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DefeasibleKind {
    /// `C ~< D`, an open conditional.
    Open,
    /// `C ~<all D`, universally quantified over the Herbrand universe.
    Quantified,
}

/// Defeasible concept inclusion, either open (`⊑~`) or quantified (`⊑~∀`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefeasibleInclusion {
    pub sub: ConceptExpr,
    pub sup: ConceptExpr,
    pub kind: DefeasibleKind,
}

impl DefeasibleInclusion {
    pub fn open(sub: ConceptExpr, sup: ConceptExpr) -> Self {
        DefeasibleInclusion {
            sub,
            sup,
            kind: DefeasibleKind::Open,
        }
    }

    pub fn quantified(sub: ConceptExpr, sup: ConceptExpr) -> Self {
        DefeasibleInclusion {
            sub,
            sup,
            kind: DefeasibleKind::Quantified,
        }
    }

    /// The strict counterpart `sub ⊑ sup`.
    pub fn to_gci(&self) -> Gci {
        Gci::new(self.sub.clone(), self.sup.clone())
    }
}

/// Classical statement: a GCI or an assertion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Gci(Gci),
    Assertion(Assertion),
}

impl From<Gci> for Axiom {
    fn from(g: Gci) -> Self {
        Axiom::Gci(g)
    }
}

impl From<Assertion> for Axiom {
    fn from(a: Assertion) -> Self {
        Axiom::Assertion(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    Gci(Gci),
    Defeasible(DefeasibleInclusion),
    Assertion(Assertion),
}

impl Statement {
    /// The classical view of the statement, if it has one.
    pub fn as_axiom(&self) -> Option<Axiom> {
        match self {
            Statement::Gci(g) => Some(Axiom::Gci(g.clone())),
            Statement::Assertion(a) => Some(Axiom::Assertion(a.clone())),
            Statement::Defeasible(_) => None,
        }
    }
}

impl From<Axiom> for Statement {
    fn from(a: Axiom) -> Self {
        match a {
            Axiom::Gci(g) => Statement::Gci(g),
            Axiom::Assertion(a) => Statement::Assertion(a),
        }
    }
}

impl From<DefeasibleInclusion> for Statement {
    fn from(d: DefeasibleInclusion) -> Self {
        Statement::Defeasible(d)
    }
}

macro_rules! display_via_render {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&render::statement(&Statement::from(self.clone())))
            }
        }
    )*};
}

impl From<Gci> for Statement {
    fn from(g: Gci) -> Self {
        Statement::Gci(g)
    }
}

impl From<Assertion> for Statement {
    fn from(a: Assertion) -> Self {
        Statement::Assertion(a)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::statement(self))
    }
}

display_via_render!(Gci, Assertion, DefeasibleInclusion, Axiom);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weighted<T> {
    pub item: T,
    pub weight: ExtendedNat,
}

impl<T> Weighted<T> {
    pub fn new(item: T, weight: impl Into<ExtendedNat>) -> Self {
        Weighted {
            item,
            weight: weight.into(),
        }
    }
}

/// Weighted knowledge base: every TBox/ABox element carries a weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedKb {
    pub vocab: Vocabulary,
    pub tbox: Vec<Weighted<Gci>>,
    pub abox: Vec<Weighted<Assertion>>,
}

impl WeightedKb {
    pub fn new(vocab: Vocabulary) -> Self {
        WeightedKb {
            vocab,
            tbox: Vec::new(),
            abox: Vec::new(),
        }
    }

    pub fn with_gci(mut self, gci: Gci, weight: impl Into<ExtendedNat>) -> Self {
        self.tbox.push(Weighted::new(gci, weight));
        self
    }

    pub fn with_assertion(mut self, a: Assertion, weight: impl Into<ExtendedNat>) -> Self {
        self.abox.push(Weighted::new(a, weight));
        self
    }

    /// True iff every ABox assertion has weight `Infinity`.
    pub fn has_strict_abox(&self) -> bool {
        self.abox.iter().all(|a| a.weight.is_infinite())
    }

    pub fn validate(&self) -> Result<(), (NameKind, String)> {
        for g in &self.tbox {
            self.vocab.check_gci(&g.item)?;
        }
        for a in &self.abox {
            self.vocab.check_assertion(&a.item)?;
        }
        Ok(())
    }
}

/// A DBox entry: the inclusion plus an optional fixed impact factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DboxEntry {
    pub inclusion: DefeasibleInclusion,
    pub impact: Option<u64>,
}

impl DboxEntry {
    pub fn new(inclusion: DefeasibleInclusion) -> Self {
        DboxEntry {
            inclusion,
            impact: None,
        }
    }

    pub fn with_impact(inclusion: DefeasibleInclusion, impact: u64) -> Self {
        DboxEntry {
            inclusion,
            impact: Some(impact),
        }
    }
}

/// Defeasible knowledge base `(T, D, A)`. DBox order fixes the impact
/// factor indices of c-representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefeasibleKb {
    pub vocab: Vocabulary,
    pub tbox: Vec<Gci>,
    pub dbox: Vec<DboxEntry>,
    pub abox: Vec<Assertion>,
}

impl DefeasibleKb {
    pub fn new(vocab: Vocabulary) -> Self {
        DefeasibleKb {
            vocab,
            tbox: Vec::new(),
            dbox: Vec::new(),
            abox: Vec::new(),
        }
    }

    pub fn with_gci(mut self, gci: Gci) -> Self {
        self.tbox.push(gci);
        self
    }

    pub fn with_dci(mut self, d: DefeasibleInclusion) -> Self {
        self.dbox.push(DboxEntry::new(d));
        self
    }

    pub fn with_assertion(mut self, a: Assertion) -> Self {
        self.abox.push(a);
        self
    }

    pub fn dcis(&self) -> impl Iterator<Item = &DefeasibleInclusion> {
        self.dbox.iter().map(|e| &e.inclusion)
    }

    /// Impact factors written in the document, if every DBox entry has one.
    pub fn impact_hints(&self) -> Option<Vec<u64>> {
        self.dbox.iter().map(|e| e.impact).collect()
    }

    /// The strict part `T ∪ A` as classical axioms.
    pub fn strict_axioms(&self) -> Vec<Axiom> {
        self.tbox
            .iter()
            .cloned()
            .map(Axiom::Gci)
            .chain(self.abox.iter().cloned().map(Axiom::Assertion))
            .collect()
    }

    /// Position of the first repeated DBox inclusion, if any.
    pub fn duplicate_dci(&self) -> Option<usize> {
        let mut seen = std::collections::HashSet::new();
        self.dbox.iter().position(|e| !seen.insert(&e.inclusion))
    }

    pub fn validate(&self) -> Result<(), (NameKind, String)> {
        for g in &self.tbox {
            self.vocab.check_gci(g)?;
        }
        for d in self.dcis() {
            self.vocab
                .check_statement(&Statement::Defeasible(d.clone()))?;
        }
        for a in &self.abox {
            self.vocab.check_assertion(a)?;
        }
        Ok(())
    }
}

/// A parsed knowledge-base document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Weighted(WeightedKb),
    Defeasible(DefeasibleKb),
}

impl Document {
    pub fn vocab(&self) -> &Vocabulary {
        match self {
            Document::Weighted(k) => &k.vocab,
            Document::Defeasible(k) => &k.vocab,
        }
    }
}
