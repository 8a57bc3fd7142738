use pilly_core::{print_type, Hint, Prop, Relation, Term, Type, Var};
use pilly_parser::{
    parse_file, parse_file_lossy, parse_prop, parse_relation, parse_term, parse_type, DeclKind,
    Directive, SchemaRequest,
};

fn v(n: &str) -> Type {
    Type::var(n)
}

#[test]
fn bang_binds_tighter_than_lolli() {
    assert_eq!(parse_type("!a -o b").unwrap(), Type::lolli(Type::bang(v("a")), v("b")));
}

#[test]
fn lolli_is_right_associative() {
    assert_eq!(
        parse_type("a -o b -o c").unwrap(),
        Type::lolli(v("a"), Type::lolli(v("b"), v("c")))
    );
}

#[test]
fn arrow_is_sugar() {
    assert_eq!(parse_type("a -> b").unwrap(), parse_type("!a -o b").unwrap());
}

#[test]
fn print_parse_identity_on_lolli() {
    assert_eq!(print_type(&parse_type("I -o I").unwrap()), "I -o I");
}

#[test]
fn tensor_let_with_annotation() {
    let t = parse_term("let x (*) y : a * b = p in x").unwrap();
    match t {
        Term::LetTensor { annot, scrut, body, .. } => {
            assert_eq!(annot, Some((v("a"), v("b"))));
            assert_eq!(*scrut, Term::var("p"));
            assert_eq!(*body, Term::Var(Var::Bound(1)));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn self_application_parses() {
    let t = parse_term("fn x:I. x x").unwrap();
    let expected = Term::Lam {
        hint: Hint::new("x"),
        ty: Type::Unit,
        body: Box::new(Term::app(Term::Var(Var::Bound(0)), Term::Var(Var::Bound(0)))),
    };
    assert_eq!(t, expected);
}

#[test]
fn bang_is_tighter_than_application() {
    let t = parse_term("!f x").unwrap();
    assert_eq!(t, Term::app(Term::bang(Term::var("f")), Term::var("x")));
}

#[test]
fn lam_sugar_expands() {
    let t = parse_term("lam x:I. x").unwrap();
    let expected = parse_term("fn y:!I. let !x : I = y in x").unwrap();
    assert_eq!(t, expected);
}

#[test]
fn type_application_and_pairs() {
    let t = parse_term("f [I] x (*) y").unwrap();
    assert_eq!(
        t,
        Term::pair(
            Term::app(Term::ty_app(Term::var("f"), Type::Unit), Term::var("x")),
            Term::var("y")
        )
    );
}

#[test]
fn id_declaration() {
    let f = parse_file("term id : all a. a -o a = /\\a. fn x:a. x").unwrap();
    match &f.decls[0].kind {
        DeclKind::Term { name, claim, body } => {
            assert_eq!(name, "id");
            assert!(matches!(claim, Some(Type::Forall(..))));
            assert!(matches!(body, Term::TyLam { .. }));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn declarations_expand_in_later_text() {
    let f = parse_file("type N = all a. (a -o a) -> a -o a\nterm z : N = /\\a. lam f:a -o a. fn x:a. x\n#check z").unwrap();
    let Some((Directive::Check { term, .. }, _)) = f.directives().next() else {
        panic!("no directive");
    };
    assert!(matches!(term, Term::TyLam { .. }));
}

#[test]
fn parameterised_type_declaration() {
    let f = parse_file("type Pair a b = a * b\n#check fn p:Pair(I, I). p").unwrap();
    let Some((Directive::Check { term, .. }, _)) = f.directives().next() else {
        panic!();
    };
    match term {
        Term::Lam { ty, .. } => assert_eq!(*ty, Type::tensor(Type::Unit, Type::Unit)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sum_sugar() {
    let t = parse_type("1 + a").unwrap();
    let expected = parse_type("all c. (I -o c) -> (a -o c) -> c").unwrap();
    assert_eq!(t, expected);
}

#[test]
fn relation_forms() {
    let r = parse_relation("(x:I, y:I). x =_{I} y").unwrap();
    assert!(matches!(r, Relation::Compr { .. }));
    let r = parse_relation("(a -o a)[R]").unwrap();
    match r {
        Relation::TypeRel { params, args, .. } => {
            assert_eq!(params.len(), 1);
            assert_eq!(args, vec![Relation::Var(Var::free("R"))]);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        parse_relation("(a -o b)[a := R, b := S]").unwrap(),
        parse_relation("(a -o b)[R, S]").unwrap()
    );
}

#[test]
fn proposition_forms() {
    let p = parse_prop("all R : AdmRel(I, I). all x:I. R(x, x) => x =_{I} x /\\ T").unwrap();
    assert!(matches!(p, Prop::Quant(..)));
    let p = parse_prop("((x:I, y:I). x =_{I} y)(<>, <>)").unwrap();
    assert!(matches!(p, Prop::RelApp(Relation::Compr { .. }, _, _)));
    let p = parse_prop("(f x) =_{I} y \\/ F").unwrap();
    assert!(matches!(p, Prop::Or(..)));
    let p = parse_prop("I[](<>, <>)").unwrap();
    assert!(matches!(p, Prop::RelApp(Relation::TypeRel { .. }, _, _)));
}

#[test]
fn directives() {
    let src = "#normalize (fn x:I. x) <>\n#equal <> == <>\n#schema parametricity all a. (a -> a) -> a\n#schema lrl Y\nrel e (a : Type) (R : Rel(a, a)) = (x:a, y:a). R(x, y)\n#admissible e\n";
    let f = parse_file(src).unwrap();
    let kinds: Vec<&str> = f.directives().map(|(d, _)| d.keyword()).collect();
    assert_eq!(kinds, vec!["normalize", "equal", "schema", "schema", "admissible"]);
    let (last, _) = f.directives().last().unwrap();
    match last {
        Directive::Admissible { name, ctx, .. } => {
            assert_eq!(name.as_deref(), Some("e"));
            assert_eq!(ctx.entries.len(), 1);
            assert_eq!(ctx.terms.xi, vec!["a".to_string()]);
        }
        other => panic!("{other:?}"),
    }
    assert!(f
        .directives()
        .any(|(d, _)| matches!(d, Directive::Schema(SchemaRequest::Lrl(Term::Y)))));
}

#[test]
fn rejections_carry_valid_spans() {
    for src in ["term x = (fn", "type = I", "bogus x", "term a = <>\nterm a = <>", "#check )", "term t = x ~ y"] {
        let (_, diags) = parse_file_lossy(src);
        assert!(!diags.is_empty(), "{src}");
        for d in diags {
            assert!(d.span.start <= d.span.end && d.span.end <= src.len(), "{src}: {d}");
        }
    }
}

#[test]
fn unknown_keyword_is_named() {
    let (_, diags) = parse_file_lossy("bogus x\nterm ok = <>");
    assert!(diags[0].message.contains("unknown keyword `bogus`"));
}

#[test]
fn recovery_continues_after_an_error() {
    let (file, diags) = parse_file_lossy("term bad = (\nterm ok = <>\n");
    assert_eq!(diags.len(), 1);
    assert_eq!(file.decls.len(), 0);
    let (file, diags) = parse_file_lossy("term bad = in\nterm ok = <>\n");
    assert_eq!(diags.len(), 1);
    assert_eq!(file.decls.len(), 1);
}
