use alcorank::syntax::{
    parse_concept, parse_document, parse_statement, render, Assertion, ConceptExpr, DboxEntry,
    DefeasibleInclusion, DefeasibleKb, Document, ExtendedNat, Gci, ParseErrorKind, Statement,
    Vocabulary, Weighted, WeightedKb,
};
use proptest::prelude::*;

fn vocab() -> Vocabulary {
    Vocabulary::new(["A", "B", "C", "Logician"], ["r", "s"], ["a", "b", "N"]).unwrap()
}

fn concept(text: &str) -> ConceptExpr {
    parse_concept(text, &vocab()).unwrap()
}

fn atomic(n: &str) -> ConceptExpr {
    ConceptExpr::atomic(n)
}

fn parse_kind(text: &str) -> ParseErrorKind {
    match parse_document(text) {
        Err(e) => e.kind,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn grammar_examples() {
    assert_eq!(
        concept("exists r.(A & !B)"),
        ConceptExpr::exists(
            "r",
            ConceptExpr::and(atomic("A"), ConceptExpr::not(atomic("B")))
        )
    );
    assert_eq!(
        concept("{N} & Logician"),
        ConceptExpr::and(ConceptExpr::nominal("N"), atomic("Logician"))
    );
    assert_eq!(
        concept("top | bot"),
        ConceptExpr::or(ConceptExpr::Top, ConceptExpr::Bot)
    );
}

#[test]
fn precedence() {
    assert_eq!(
        concept("!A & B"),
        ConceptExpr::and(ConceptExpr::not(atomic("A")), atomic("B"))
    );
    assert_eq!(
        concept("A | B & C"),
        ConceptExpr::or(atomic("A"), ConceptExpr::and(atomic("B"), atomic("C")))
    );
    // a quantifier takes one unary concept
    assert_eq!(
        concept("exists r.A & B"),
        ConceptExpr::and(ConceptExpr::exists("r", atomic("A")), atomic("B"))
    );
    assert_eq!(
        concept("forall s.!exists r.A"),
        ConceptExpr::forall("s", ConceptExpr::not(ConceptExpr::exists("r", atomic("A"))))
    );
    assert_eq!(
        concept("!(A & B)"),
        ConceptExpr::not(ConceptExpr::and(atomic("A"), atomic("B")))
    );
    // both binary operators associate to the left
    assert_eq!(
        concept("A & B & C"),
        ConceptExpr::and(ConceptExpr::and(atomic("A"), atomic("B")), atomic("C"))
    );
}

#[test]
fn statements() {
    let v = vocab();
    assert_eq!(
        parse_statement("A <= B", &v).unwrap(),
        Statement::Gci(Gci::new(atomic("A"), atomic("B")))
    );
    assert_eq!(
        parse_statement("A ~< B", &v).unwrap(),
        Statement::Defeasible(DefeasibleInclusion::open(atomic("A"), atomic("B")))
    );
    assert_eq!(
        parse_statement("A ~<all B", &v).unwrap(),
        Statement::Defeasible(DefeasibleInclusion::quantified(atomic("A"), atomic("B")))
    );
    assert_eq!(
        parse_statement("N : Logician", &v).unwrap(),
        Statement::Assertion(Assertion::concept("N", atomic("Logician")))
    );
    assert_eq!(
        parse_statement("(a, b) : r", &v).unwrap(),
        Statement::Assertion(Assertion::role("a", "b", "r"))
    );
    assert!(parse_statement("a : Unknown", &v).is_err());
    assert!(parse_statement("A <= B extra", &v).is_err());
}

#[test]
fn weighted_document() {
    let doc = parse_document(
        "# Example weights
         vocab { concepts: Logician, Scientist; roles: ; individuals: N; }
         tbox { Logician <= Scientist [3]; Scientist <= Logician; }
         abox { N : Logician [inf]; N : !Scientist [0]; }",
    )
    .unwrap();
    let Document::Weighted(w) = doc else {
        panic!("weighted")
    };
    assert_eq!(
        w.tbox[0],
        Weighted::new(Gci::new(atomic("Logician"), atomic("Scientist")), 3)
    );
    assert_eq!(w.tbox[1].weight, ExtendedNat::Infinity);
    assert_eq!(
        w.abox[0],
        Weighted::new(
            Assertion::concept("N", atomic("Logician")),
            ExtendedNat::Infinity
        )
    );
    assert_eq!(w.abox[1].weight, ExtendedNat::Finite(0));
}

#[test]
fn defeasible_document() {
    let doc = parse_document(
        "vocab { concepts: A, B; roles: r; individuals: a, b; }
         tbox { A <= exists r.top; }
         dbox { A ~< B [2]; B ~<all !A; }
         abox { a : A; (a, b) : r; }",
    )
    .unwrap();
    let Document::Defeasible(k) = doc else {
        panic!("defeasible")
    };
    assert_eq!(
        k.dbox[0],
        DboxEntry::with_impact(DefeasibleInclusion::open(atomic("A"), atomic("B")), 2)
    );
    assert_eq!(k.dbox[1].impact, None);
    assert_eq!(k.impact_hints(), None);
    assert_eq!(k.abox.len(), 2);
}

#[test]
fn empty_kb() {
    let doc =
        parse_document("vocab { concepts: ; roles: ; individuals: a; } tbox { } abox { }").unwrap();
    assert_eq!(
        doc,
        Document::Weighted(WeightedKb::new(
            Vocabulary::new::<&str>([], [], ["a"]).unwrap()
        ))
    );
    assert_eq!(doc.vocab().universe_size(), 1);
}

#[test]
fn rendering_lexemes() {
    let v = Vocabulary::new(["C", "D"], [] as [&str; 0], ["a"]).unwrap();
    let w = WeightedKb::new(v.clone())
        .with_assertion(Assertion::concept("a", atomic("C")), ExtendedNat::Infinity);
    assert!(render::document(&Document::Weighted(w)).contains("a : C [inf];"));
    let k = DefeasibleKb {
        dbox: vec![DboxEntry::with_impact(
            DefeasibleInclusion::open(atomic("C"), atomic("D")),
            2,
        )],
        ..DefeasibleKb::new(v)
    };
    assert!(render::document(&Document::Defeasible(k)).contains("C ~< D [2];"));
}

#[test]
fn diagnostics() {
    let p = parse_document("vocab { concepts: A; roles: ; individuals: a; }\ntbox { A <= ; }")
        .unwrap_err();
    assert_eq!((p.line, p.column), (2, 13));
    assert!(matches!(
        parse_kind("vocab { concepts: A; roles: ; individuals: a; } tbox { A <= Z; }"),
        ParseErrorKind::Undeclared { .. }
    ));
    assert!(matches!(
        parse_kind("vocab { concepts: A, A; roles: ; individuals: a; }"),
        ParseErrorKind::DuplicateDeclaration(_)
    ));
    assert!(matches!(
        parse_kind("vocab { concepts: A; roles: r; individuals: A; }"),
        ParseErrorKind::DuplicateDeclaration(_)
    ));
    assert_eq!(
        parse_kind("vocab { concepts: A; roles: ; individuals: a; } tbox { A <= A [-1]; }"),
        ParseErrorKind::NegativeWeight
    );
    assert!(matches!(
        parse_kind("vocab { concepts: A; roles: ; individuals: a; } dbox { A ~< A; A ~< A; }"),
        ParseErrorKind::DuplicateDci(_)
    ));
    assert_eq!(
        parse_kind("vocab { concepts: A; roles: ; individuals: ; }"),
        ParseErrorKind::EmptyUniverse
    );
    assert_eq!(
        parse_kind(
            "vocab { concepts: A; roles: ; individuals: a; } dbox { A ~< A; } abox { a : A [2]; }"
        ),
        ParseErrorKind::FiniteStrictWeight
    );
}

const CONCEPTS: [&str; 3] = ["A", "B", "C"];
const ROLES: [&str; 2] = ["r", "s"];
const INDIVIDUALS: [&str; 2] = ["a", "b"];

fn name(names: &'static [&'static str]) -> impl Strategy<Value = String> {
    prop::sample::select(names).prop_map(String::from)
}

fn concept_strategy() -> impl Strategy<Value = ConceptExpr> {
    let leaf = prop_oneof![
        Just(ConceptExpr::Top),
        Just(ConceptExpr::Bot),
        name(&CONCEPTS).prop_map(ConceptExpr::Atomic),
        name(&INDIVIDUALS).prop_map(ConceptExpr::Nominal),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ConceptExpr::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ConceptExpr::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ConceptExpr::or(a, b)),
            (name(&ROLES), inner.clone()).prop_map(|(r, c)| ConceptExpr::exists(r, c)),
            (name(&ROLES), inner).prop_map(|(r, c)| ConceptExpr::forall(r, c)),
        ]
    })
}

fn test_vocab() -> Vocabulary {
    Vocabulary::new(CONCEPTS, ROLES, INDIVIDUALS).unwrap()
}

fn weight() -> impl Strategy<Value = ExtendedNat> {
    prop_oneof![
        Just(ExtendedNat::Infinity),
        (0u64..100).prop_map(ExtendedNat::Finite)
    ]
}

fn assertion() -> impl Strategy<Value = Assertion> {
    prop_oneof![
        (name(&INDIVIDUALS), concept_strategy()).prop_map(|(a, c)| Assertion::concept(a, c)),
        (name(&INDIVIDUALS), name(&INDIVIDUALS), name(&ROLES))
            .prop_map(|(a, b, r)| Assertion::role(a, b, r)),
    ]
}

fn weighted_kb() -> impl Strategy<Value = WeightedKb> {
    (
        prop::collection::vec((concept_strategy(), concept_strategy(), weight()), 0..4),
        prop::collection::vec((assertion(), weight()), 0..4),
    )
        .prop_map(|(t, a)| WeightedKb {
            vocab: test_vocab(),
            tbox: t
                .into_iter()
                .map(|(c, d, w)| Weighted::new(Gci::new(c, d), w))
                .collect(),
            abox: a.into_iter().map(|(a, w)| Weighted::new(a, w)).collect(),
        })
}

fn defeasible_kb() -> impl Strategy<Value = DefeasibleKb> {
    (
        prop::collection::vec((concept_strategy(), concept_strategy()), 0..3),
        prop::collection::vec(
            (
                concept_strategy(),
                concept_strategy(),
                any::<bool>(),
                prop::option::of(1u64..9),
            ),
            1..4,
        ),
        prop::collection::vec(assertion(), 0..3),
    )
        .prop_map(|(t, d, a)| {
            let mut kb = DefeasibleKb::new(test_vocab());
            kb.tbox = t.into_iter().map(|(c, d)| Gci::new(c, d)).collect();
            for (c, d, quantified, impact) in d {
                let inclusion = if quantified {
                    DefeasibleInclusion::quantified(c, d)
                } else {
                    DefeasibleInclusion::open(c, d)
                };
                if !kb.dcis().any(|x| *x == inclusion) {
                    kb.dbox.push(DboxEntry { inclusion, impact });
                }
            }
            kb.abox = a;
            kb
        })
}

/// Fragments of the surface syntax, for token soups.
const LEXEMES: [&str; 30] = [
    "vocab",
    "tbox",
    "dbox",
    "abox",
    "{",
    "}",
    "concepts:",
    "roles:",
    "individuals:",
    ";",
    ",",
    "A",
    "a",
    "r",
    "<=",
    "~<",
    "~<all",
    "&",
    "|",
    "!",
    "exists",
    "forall",
    ".",
    "(",
    ")",
    "[",
    "]",
    "inf",
    "3",
    ":",
];

proptest! {
    #[test]
    fn concept_render_round_trip(c in concept_strategy()) {
        let text = render::concept(&c);
        prop_assert_eq!(parse_concept(&text, &test_vocab()).unwrap(), c);
    }

    #[test]
    fn weighted_document_round_trip(kb in weighted_kb()) {
        let doc = Document::Weighted(kb);
        prop_assert_eq!(parse_document(&render::document(&doc)).unwrap(), doc);
    }

    #[test]
    fn defeasible_document_round_trip(kb in defeasible_kb()) {
        let doc = Document::Defeasible(kb);
        prop_assert_eq!(parse_document(&render::document(&doc)).unwrap(), doc);
    }

    #[test]
    fn parser_is_total_on_arbitrary_text(text in ".{0,200}") {
        let _ = parse_document(&text);
        let _ = parse_concept(&text, &test_vocab());
        let _ = parse_statement(&text, &test_vocab());
    }

    #[test]
    fn parser_is_total_on_token_soup(tokens in prop::collection::vec(prop::sample::select(&LEXEMES[..]), 0..60)) {
        let text = tokens.join(" ");
        let _ = parse_document(&text);
        let _ = parse_statement(&text, &test_vocab());
    }

    #[test]
    fn errors_point_inside_the_text(tokens in prop::collection::vec(prop::sample::select(&LEXEMES[..]), 1..40)) {
        let text = tokens.join(" ");
        if let Err(e) = parse_document(&text) {
            prop_assert_eq!(e.line, 1);
            prop_assert!(e.column >= 1 && e.column <= text.chars().count() + 1);
        }
    }
}
