#![allow(dead_code)]

pub mod oracle;

use alcorank::syntax::{parse_document, DefeasibleKb, Document, WeightedKb};

pub const PENGUIN: &str = "
    vocab { concepts: L, S, E; roles: ; individuals: N; }
    dbox { L ~< S; L ~< !E; S ~< E; }
    abox { N : L; }";

pub const PENGUIN_W: &str = "
    vocab { concepts: L, S, E; roles: ; individuals: N; }
    tbox { L <= S [3]; S <= E [2]; L <= !E [1]; }
    abox { N : L [inf]; }";

pub const MONO: &str = "vocab { concepts: A; roles: ; individuals: a; } abox { a : A [1]; }";
pub const MONO2: &str =
    "vocab { concepts: A; roles: ; individuals: a; } abox { a : A [1]; a : !A [2]; }";

pub const SINGLE: &str = "vocab { concepts: A, B; roles: ; individuals: a; } dbox { A ~< B; }";

pub fn wkb(text: &str) -> WeightedKb {
    match parse_document(text).expect("parses") {
        Document::Weighted(k) => k,
        Document::Defeasible(_) => panic!("expected a weighted KB"),
    }
}

pub fn dkb(text: &str) -> DefeasibleKb {
    match parse_document(text).expect("parses") {
        Document::Defeasible(k) => k,
        Document::Weighted(_) => panic!("expected a defeasible KB"),
    }
}
