//! Herbrand interpretations over a finite vocabulary: enumeration,
//! concept extensions and satisfaction of classical statements.
//!
//! Individual sets are `u64` masks where bit `i` stands for the `i`-th
//! declared individual. An interpretation index packs the concept bits
//! (concept-major, then individual) followed by the role bits (role,
//! subject, object), least significant bit first.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{Assertion, Axiom, ConceptExpr, Gci, NameKind, Statement, Vocabulary};

/// Upper bound on the number of bits of an interpretation index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitBudget(u32);

impl BitBudget {
    pub const DEFAULT: BitBudget = BitBudget(24);
    /// Indices must fit in a `u64` with room to spare.
    pub const MAX_BITS: u32 = 62;

    pub fn new(bits: u32) -> Result<Self> {
        if bits > Self::MAX_BITS {
            return Err(Error::Usage(format!(
                "bit budget {bits} exceeds the supported maximum of {}",
                Self::MAX_BITS
            )));
        }
        Ok(BitBudget(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }
}

impl Default for BitBudget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Number of bits of an interpretation index, `|N_C|·|U| + |N_R|·|U|²`.
pub fn bit_width(vocab: &Vocabulary) -> u64 {
    let n = vocab.universe_size() as u64;
    vocab.concepts().len() as u64 * n + vocab.roles().len() as u64 * n * n
}

/// Size of the interpretation space, or a size-limit error beyond the budget.
pub fn interpretation_count(vocab: &Vocabulary, budget: BitBudget) -> Result<u64> {
    Omega::new(vocab, budget).map(|o| o.len())
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask as individual indices.
pub fn members(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A Herbrand interpretation. The domain is the vocabulary's individual
/// list and every individual name denotes itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interpretation {
    n: usize,
    concepts: Vec<u64>,
    /// Successor masks, indexed by `role * n + subject`.
    roles: Vec<u64>,
}

impl Interpretation {
    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn concept(&self, c: usize) -> u64 {
        self.concepts[c]
    }

    pub fn successors(&self, r: usize, subject: usize) -> u64 {
        self.roles[r * self.n + subject]
    }

    pub fn has_role(&self, r: usize, subject: usize, object: usize) -> bool {
        self.successors(r, subject) >> object & 1 == 1
    }

    pub fn set_concept(&mut self, c: usize, mask: u64) {
        self.concepts[c] = mask & full_mask(self.n);
    }

    pub fn set_role(&mut self, r: usize, subject: usize, object: usize, present: bool) {
        let slot = &mut self.roles[r * self.n + subject];
        if present {
            *slot |= 1 << object;
        } else {
            *slot &= !(1 << object);
        }
    }
}

/// A concept with names resolved to vocabulary indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Concept {
    Bot,
    Top,
    Atomic(usize),
    Nominal(usize),
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    Exists(usize, Box<Concept>),
    Forall(usize, Box<Concept>),
}

impl Concept {
    /// The extension `C^I` as an individual mask.
    pub fn eval(&self, i: &Interpretation) -> u64 {
        let full = full_mask(i.n);
        match self {
            Concept::Bot => 0,
            Concept::Top => full,
            Concept::Atomic(c) => i.concepts[*c],
            Concept::Nominal(a) => 1 << a,
            Concept::Not(c) => full & !c.eval(i),
            Concept::And(a, b) => a.eval(i) & b.eval(i),
            Concept::Or(a, b) => a.eval(i) | b.eval(i),
            Concept::Exists(r, c) => {
                let target = c.eval(i);
                let succ = &i.roles[r * i.n..(r + 1) * i.n];
                (0..i.n)
                    .filter(|&s| succ[s] & target != 0)
                    .fold(0, |m, s| m | 1 << s)
            }
            Concept::Forall(r, c) => {
                let outside = full & !c.eval(i);
                let succ = &i.roles[r * i.n..(r + 1) * i.n];
                (0..i.n)
                    .filter(|&s| succ[s] & outside == 0)
                    .fold(0, |m, s| m | 1 << s)
            }
        }
    }
}

/// A classical statement with names resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompiledAxiom {
    Gci {
        sub: Concept,
        sup: Concept,
    },
    Member {
        individual: usize,
        concept: Concept,
    },
    Role {
        role: usize,
        subject: usize,
        object: usize,
    },
}

impl CompiledAxiom {
    /// Individuals violating a GCI, `(C ⊓ ¬D)^I`; zero for assertions.
    pub fn violations(&self, i: &Interpretation) -> u64 {
        match self {
            CompiledAxiom::Gci { sub, sup } => sub.eval(i) & !sup.eval(i),
            _ => 0,
        }
    }

    pub fn holds(&self, i: &Interpretation) -> bool {
        match self {
            CompiledAxiom::Gci { .. } => self.violations(i) == 0,
            CompiledAxiom::Member {
                individual,
                concept,
            } => concept.eval(i) >> individual & 1 == 1,
            CompiledAxiom::Role {
                role,
                subject,
                object,
            } => i.has_role(*role, *subject, *object),
        }
    }
}

/// JSON form of an interpretation. Names that are absent have empty
/// extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpretationLiteral {
    #[serde(default)]
    pub concepts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub roles: BTreeMap<String, Vec<(String, String)>>,
}

/// The set Ω of all Herbrand interpretations of a vocabulary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega {
    vocab: Vocabulary,
    bits: u32,
}

impl Omega {
    pub fn new(vocab: &Vocabulary, budget: BitBudget) -> Result<Self> {
        let bits = bit_width(vocab);
        if bits > u64::from(budget.bits()) {
            return Err(Error::SizeLimit {
                bits,
                budget: budget.bits(),
            });
        }
        Ok(Omega {
            vocab: vocab.clone(),
            bits: bits as u32,
        })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> u64 {
        1u64 << self.bits
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn universe_size(&self) -> usize {
        self.vocab.universe_size()
    }

    /// Mask containing every individual.
    pub fn full(&self) -> u64 {
        full_mask(self.universe_size())
    }

    /// The interpretation with all extensions empty (index 0).
    pub fn empty(&self) -> Interpretation {
        let n = self.universe_size();
        Interpretation {
            n,
            concepts: vec![0; self.vocab.concepts().len()],
            roles: vec![0; self.vocab.roles().len() * n],
        }
    }

    pub fn decode(&self, ix: u64) -> Result<Interpretation> {
        if ix >= self.len() {
            return Err(Error::IndexOutOfRange(ix));
        }
        let mut i = self.empty();
        self.decode_into(ix, &mut i);
        Ok(i)
    }

    /// Overwrites `out` with interpretation `ix`, which must be in range.
    pub fn decode_into(&self, ix: u64, out: &mut Interpretation) {
        debug_assert!(ix < self.len());
        let n = out.n;
        let mask = full_mask(n);
        let mut shift = 0;
        for c in out.concepts.iter_mut() {
            *c = ix >> shift & mask;
            shift += n;
        }
        for s in out.roles.iter_mut() {
            *s = ix >> shift & mask;
            shift += n;
        }
    }

    pub fn encode(&self, i: &Interpretation) -> u64 {
        let n = i.n;
        let mut ix = 0u64;
        let mut shift = 0;
        for &c in i.concepts.iter().chain(&i.roles) {
            ix |= c << shift;
            shift += n;
        }
        ix
    }

    /// All interpretations in index order.
    pub fn iter(&self) -> impl Iterator<Item = Interpretation> + '_ {
        (0..self.len()).map(move |ix| {
            let mut i = self.empty();
            self.decode_into(ix, &mut i);
            i
        })
    }

    /// Calls `f` on every interpretation in index order, reusing one buffer.
    pub fn for_each(&self, mut f: impl FnMut(u64, &Interpretation)) {
        let mut buf = self.empty();
        for ix in 0..self.len() {
            self.decode_into(ix, &mut buf);
            f(ix, &buf);
        }
    }

    fn index(&self, kind: NameKind, name: &str) -> Result<usize> {
        self.vocab
            .index_of(kind, name)
            .ok_or_else(|| Error::Undeclared(kind, name.to_owned()))
    }

    pub fn compile(&self, c: &ConceptExpr) -> Result<Concept> {
        let b = |c: &ConceptExpr| self.compile(c).map(Box::new);
        Ok(match c {
            ConceptExpr::Bot => Concept::Bot,
            ConceptExpr::Top => Concept::Top,
            ConceptExpr::Atomic(n) => Concept::Atomic(self.index(NameKind::Concept, n)?),
            ConceptExpr::Nominal(n) => Concept::Nominal(self.index(NameKind::Individual, n)?),
            ConceptExpr::Not(x) => Concept::Not(b(x)?),
            ConceptExpr::And(x, y) => Concept::And(b(x)?, b(y)?),
            ConceptExpr::Or(x, y) => Concept::Or(b(x)?, b(y)?),
            ConceptExpr::Exists(r, x) => Concept::Exists(self.index(NameKind::Role, r)?, b(x)?),
            ConceptExpr::Forall(r, x) => Concept::Forall(self.index(NameKind::Role, r)?, b(x)?),
        })
    }

    pub fn compile_gci(&self, g: &Gci) -> Result<CompiledAxiom> {
        Ok(CompiledAxiom::Gci {
            sub: self.compile(&g.sub)?,
            sup: self.compile(&g.sup)?,
        })
    }

    pub fn compile_assertion(&self, a: &Assertion) -> Result<CompiledAxiom> {
        Ok(match a {
            Assertion::Concept {
                individual,
                concept,
            } => CompiledAxiom::Member {
                individual: self.index(NameKind::Individual, individual)?,
                concept: self.compile(concept)?,
            },
            Assertion::Role {
                subject,
                object,
                role,
            } => CompiledAxiom::Role {
                role: self.index(NameKind::Role, role)?,
                subject: self.index(NameKind::Individual, subject)?,
                object: self.index(NameKind::Individual, object)?,
            },
        })
    }

    pub fn compile_axiom(&self, a: &Axiom) -> Result<CompiledAxiom> {
        match a {
            Axiom::Gci(g) => self.compile_gci(g),
            Axiom::Assertion(a) => self.compile_assertion(a),
        }
    }

    /// Compiles a classical statement; defeasible inclusions are rejected.
    pub fn compile_statement(&self, s: &Statement) -> Result<CompiledAxiom> {
        match s.as_axiom() {
            Some(a) => self.compile_axiom(&a),
            None => Err(Error::DefeasibleStatement),
        }
    }

    pub fn extension(&self, i: &Interpretation, c: &ConceptExpr) -> Result<u64> {
        Ok(self.compile(c)?.eval(i))
    }

    pub fn satisfies(&self, i: &Interpretation, s: &Statement) -> Result<bool> {
        Ok(self.compile_statement(s)?.holds(i))
    }

    pub fn individual_names(&self, mask: u64) -> Vec<&str> {
        members(mask)
            .map(|i| self.vocab.individuals()[i].as_str())
            .collect()
    }

    pub fn from_literal(&self, lit: &InterpretationLiteral) -> Result<Interpretation> {
        let bad = |m: String| Error::InvalidInterpretation(m);
        let ind = |name: &str| {
            self.vocab
                .individual_index(name)
                .ok_or_else(|| bad(format!("`{name}` is not a declared individual")))
        };
        let mut out = self.empty();
        for (name, inds) in &lit.concepts {
            let c = self
                .vocab
                .concept_index(name)
                .ok_or_else(|| bad(format!("`{name}` is not a declared concept")))?;
            for a in inds {
                out.concepts[c] |= 1 << ind(a)?;
            }
        }
        for (name, pairs) in &lit.roles {
            let r = self
                .vocab
                .role_index(name)
                .ok_or_else(|| bad(format!("`{name}` is not a declared role")))?;
            for (s, o) in pairs {
                out.set_role(r, ind(s)?, ind(o)?, true);
            }
        }
        Ok(out)
    }

    pub fn parse_literal(&self, json: &str) -> Result<Interpretation> {
        let lit: InterpretationLiteral =
            serde_json::from_str(json).map_err(|e| Error::InvalidInterpretation(e.to_string()))?;
        self.from_literal(&lit)
    }

    /// The JSON form, listing only non-empty extensions.
    pub fn to_literal(&self, i: &Interpretation) -> InterpretationLiteral {
        let names = |m| {
            self.individual_names(m)
                .into_iter()
                .map(String::from)
                .collect()
        };
        let mut lit = InterpretationLiteral::default();
        for (c, name) in self.vocab.concepts().iter().enumerate() {
            if i.concepts[c] != 0 {
                lit.concepts.insert(name.clone(), names(i.concepts[c]));
            }
        }
        let inds = self.vocab.individuals();
        for (r, name) in self.vocab.roles().iter().enumerate() {
            let pairs: Vec<(String, String)> = (0..i.n)
                .flat_map(|s| members(i.successors(r, s)).map(move |o| (s, o)))
                .map(|(s, o)| (inds[s].clone(), inds[o].clone()))
                .collect();
            if !pairs.is_empty() {
                lit.roles.insert(name.clone(), pairs);
            }
        }
        lit
    }

    /// Compact text form listing the true atomic facts, e.g. `L(N) r(a,b)`.
    pub fn describe(&self, i: &Interpretation) -> String {
        let inds = self.vocab.individuals();
        let mut facts = Vec::new();
        for (c, name) in self.vocab.concepts().iter().enumerate() {
            for a in members(i.concepts[c]) {
                facts.push(format!("{name}({})", inds[a]));
            }
        }
        for (r, name) in self.vocab.roles().iter().enumerate() {
            for s in 0..i.n {
                for o in members(i.successors(r, s)) {
                    facts.push(format!("{name}({},{})", inds[s], inds[o]));
                }
            }
        }
        if facts.is_empty() {
            "{}".into()
        } else {
            facts.join(" ")
        }
    }
}
