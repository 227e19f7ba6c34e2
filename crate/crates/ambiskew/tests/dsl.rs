use ambiskew::catalog;
use ambiskew::dsl::ast::{BinOp, Expr, ExprKind};
use ambiskew::dsl::{parse_document, parse_expr, parse_spec, Entity, ErrorKind, Span};
use proptest::prelude::*;

const WEYL: &str = "\
scalars(char = 0)
base F = field
ring R = ambiskew(F, id, v = 1, rho = 1)
check simple(R)
";

#[test]
fn quickstart_document() {
    let doc = parse_spec(WEYL).unwrap();
    assert_eq!(doc.checks.len(), 1);
    assert_eq!(doc.checks[0].call.to_string(), "simple(R)");
    assert_eq!(doc.eval_in(None, "x*y - y*x").unwrap(), "1");
}

#[test]
fn catalog_round_trip() {
    for e in catalog::list() {
        let doc = parse_document(e.source).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        let printed = doc.to_string();
        let again = parse_document(&printed).unwrap_or_else(|err| panic!("{}: {err}\n{printed}", e.name));
        assert_eq!(again, doc, "{}", e.name);
        assert_eq!(again.to_string(), printed, "{}", e.name);
        parse_spec(&printed).unwrap_or_else(|err| panic!("{}: {err}", e.name));
    }
}

#[test]
fn rho_zero_is_rejected_at_its_location() {
    let src = WEYL.replace("rho = 1", "rho = 0");
    let err = parse_spec(&src).unwrap_err();
    assert_eq!(err.kind, ErrorKind::Semantic);
    assert_eq!(err.message, "rho must be nonzero");
    assert_eq!(err.span, Span { line: 3, col: 39 });
    assert_eq!(err.to_string(), "3:39: semantic error: rho must be nonzero");
}

#[test]
fn error_kinds_and_positions() {
    let err = parse_spec("scalars(char = 0)\nbase F = field @\n").unwrap_err();
    assert_eq!((err.kind, err.span), (ErrorKind::Lexical, Span { line: 2, col: 16 }));

    let err = parse_spec("scalars(char = 0)\nbase F = \n").unwrap_err();
    assert_eq!(err.kind, ErrorKind::Syntax);
    assert_eq!(err.span.line, 2);

    let err = parse_spec("scalars(char = 0)\nbase F = field\nring R = ambiskew(G, id, v = 1, rho = 1)\n").unwrap_err();
    assert_eq!((err.kind, err.span), (ErrorKind::Semantic, Span { line: 3, col: 19 }));
    assert!(err.message.contains("unknown name 'G'"), "{err}");

    let err = parse_spec("base F = field\nscalars(char = 0)\n").unwrap_err();
    assert!(err.message.contains("must come first"), "{err}");

    // An automorphism must preserve the defining relations of its carrier.
    let src =
        "scalars(char = 0)\nbase F = field\nring R = ambiskew(F, id, v = 1, rho = 1)\nauto bad on R { y -> 2*y }\n";
    let err = parse_spec(src).unwrap_err();
    assert_eq!((err.kind, err.span.line), (ErrorKind::Semantic, 4));

    // The cyclic group generator must be a primitive root of the right order.
    let src = "scalars(cyclotomic = 4)\nbase A = cyclic_group(s, n = 3)\n";
    let err = parse_spec(src).unwrap_err();
    assert_eq!((err.kind, err.span.line), (ErrorKind::Semantic, 2));

    let src = "scalars(char = 0)\nbase F = field\nring R = ambiskew(F, id, v = 1, rho = 1)\ncheck simple(F)\n";
    let err = parse_spec(src).unwrap_err();
    assert!(err.message.contains("not a ring"), "{err}");
}

#[test]
fn nested_cyclic_document() {
    let doc = parse_spec(catalog::get("cyclic_c4").unwrap().source).unwrap();
    let Some(Entity::Ring { ring, .. }) = doc.entity("S") else { panic!("S is a ring") };
    assert_eq!(ring.tower().len(), 2);
    assert_eq!(doc.eval_in(Some("R1"), "x1*y1 - zeta*y1*x1").unwrap(), "s + 2*s^3");
    assert_eq!(doc.eval_in(Some("S"), "x2*y2 + y2*x2").unwrap(), "s + 2*s^3");
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..1000).prop_map(|n| ExprKind::Int(n.to_string())),
        prop::sample::select(vec!["t", "s", "q", "zeta", "x1"]).prop_map(|s| ExprKind::Ident(s.to_string())),
    ]
    .prop_map(|kind| Expr { kind, span: Span::default() });
    leaf.prop_recursive(5, 40, 2, |inner| {
        let op = prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div]);
        prop_oneof![
            inner.clone().prop_map(|e| ExprKind::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| ExprKind::Bin(o, Box::new(a), Box::new(b))),
            (inner, -3i64..6).prop_map(|(e, k)| ExprKind::Pow(Box::new(e), k)),
        ]
        .prop_map(|kind| Expr { kind, span: Span::default() })
    })
}

proptest! {
    #[test]
    fn expressions_round_trip(e in expr_strategy()) {
        let printed = e.to_string();
        let parsed = parse_expr(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(&parsed, &e, "{}", printed);
        prop_assert_eq!(parsed.to_string(), printed);
    }
}
