use std::fmt::Write;

use super::ast::*;

const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

fn write_concept(out: &mut String, c: &ConceptExpr, min_prec: u8) {
    let prec = match c {
        ConceptExpr::Or(..) => OR,
        ConceptExpr::And(..) => AND,
        _ => UNARY,
    };
    let paren = prec < min_prec;
    if paren {
        out.push('(');
    }
    match c {
        ConceptExpr::Bot => out.push_str("bot"),
        ConceptExpr::Top => out.push_str("top"),
        ConceptExpr::Atomic(n) => out.push_str(n),
        ConceptExpr::Nominal(n) => {
            out.push('{');
            out.push_str(n);
            out.push('}');
        }
        ConceptExpr::Not(inner) => {
            out.push('!');
            write_concept(out, inner, UNARY);
        }
        // Left-associative: a right operand of the same precedence needs parentheses.
        ConceptExpr::And(a, b) => {
            write_concept(out, a, AND);
            out.push_str(" & ");
            write_concept(out, b, UNARY);
        }
        ConceptExpr::Or(a, b) => {
            write_concept(out, a, OR);
            out.push_str(" | ");
            write_concept(out, b, AND);
        }
        ConceptExpr::Exists(r, inner) | ConceptExpr::Forall(r, inner) => {
            let q = if matches!(c, ConceptExpr::Exists(..)) {
                "exists"
            } else {
                "forall"
            };
            let _ = write!(out, "{q} {r}.");
            write_concept(out, inner, UNARY);
        }
    }
    if paren {
        out.push(')');
    }
}

pub fn concept(c: &ConceptExpr) -> String {
    let mut s = String::new();
    write_concept(&mut s, c, OR);
    s
}

pub fn assertion(a: &Assertion) -> String {
    match a {
        Assertion::Concept {
            individual,
            concept: c,
        } => format!("{individual} : {}", concept(c)),
        Assertion::Role {
            subject,
            object,
            role,
        } => format!("({subject}, {object}) : {role}"),
    }
}

pub fn statement(s: &Statement) -> String {
    match s {
        Statement::Gci(g) => format!("{} <= {}", concept(&g.sub), concept(&g.sup)),
        Statement::Defeasible(d) => {
            let op = match d.kind {
                DefeasibleKind::Open => "~<",
                DefeasibleKind::Quantified => "~<all",
            };
            format!("{} {op} {}", concept(&d.sub), concept(&d.sup))
        }
        Statement::Assertion(a) => assertion(a),
    }
}

fn vocab_block(out: &mut String, v: &Vocabulary) {
    out.push_str("vocab {\n");
    for (label, names) in [
        ("concepts", v.concepts()),
        ("roles", v.roles()),
        ("individuals", v.individuals()),
    ] {
        let _ = writeln!(out, "  {label}: {};", names.join(", "));
    }
    out.push_str("}\n");
}

/// Renders a document in canonical form. The output re-parses to a
/// structurally identical knowledge base.
pub fn document(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Weighted(kb) => {
            vocab_block(&mut out, &kb.vocab);
            out.push_str("tbox {\n");
            for g in &kb.tbox {
                let _ = writeln!(
                    out,
                    "  {} [{}];",
                    statement(&Statement::Gci(g.item.clone())),
                    g.weight
                );
            }
            out.push_str("}\nabox {\n");
            for a in &kb.abox {
                let _ = writeln!(out, "  {} [{}];", assertion(&a.item), a.weight);
            }
            out.push_str("}\n");
        }
        Document::Defeasible(kb) => {
            vocab_block(&mut out, &kb.vocab);
            out.push_str("tbox {\n");
            for g in &kb.tbox {
                let _ = writeln!(out, "  {};", statement(&Statement::Gci(g.clone())));
            }
            out.push_str("}\ndbox {\n");
            for e in &kb.dbox {
                let text = statement(&Statement::Defeasible(e.inclusion.clone()));
                match e.impact {
                    Some(n) => {
                        let _ = writeln!(out, "  {text} [{n}];");
                    }
                    None => {
                        let _ = writeln!(out, "  {text};");
                    }
                }
            }
            out.push_str("}\nabox {\n");
            for a in &kb.abox {
                let _ = writeln!(out, "  {};", assertion(a));
            }
            out.push_str("}\n");
        }
    }
    out
}
