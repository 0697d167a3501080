//! The expression language against an independent tree evaluator.

use proptest::prelude::*;
use telegraph_cli::{parse_expression, ExprError};

#[derive(Debug, Clone)]
enum Tree {
    X,
    T,
    Lit(f64),
    Neg(Box<Tree>),
    Bin(char, Box<Tree>, Box<Tree>),
    Pow(Box<Tree>, Box<Tree>),
    Call(&'static str, Box<Tree>),
}

const ATOM: u8 = 5;

fn prec(t: &Tree) -> u8 {
    match t {
        Tree::Bin('+' | '-', ..) => 1,
        Tree::Bin(..) => 2,
        Tree::Neg(_) => 3,
        Tree::Pow(..) => 4,
        Tree::Lit(v) if *v < 0.0 => 3,
        _ => ATOM,
    }
}

/// Render with the fewest parentheses the grammar allows.
fn render(t: &Tree) -> String {
    let wrap = |c: &Tree, need: u8| {
        let s = render(c);
        if prec(c) < need {
            format!("({s})")
        } else {
            s
        }
    };
    match t {
        Tree::X => "x".into(),
        Tree::T => "t".into(),
        Tree::Lit(v) => format!("{v:?}"),
        Tree::Neg(a) => format!("-{}", wrap(a, 3)),
        Tree::Bin(op, a, b) => {
            let (l, r) = match op {
                '+' => (1, 1),
                '-' => (1, 2),
                '*' => (2, 2),
                _ => (2, 3),
            };
            format!("{} {op} {}", wrap(a, l), wrap(b, r))
        }
        Tree::Pow(a, b) => format!("{}^{}", wrap(a, ATOM), wrap(b, 3)),
        Tree::Call(f, a) => format!("{f}({})", render(a)),
    }
}

fn reference(t: &Tree, x: f64, tt: f64) -> f64 {
    match t {
        Tree::X => x,
        Tree::T => tt,
        Tree::Lit(v) => *v,
        Tree::Neg(a) => -reference(a, x, tt),
        Tree::Bin(op, a, b) => {
            let (a, b) = (reference(a, x, tt), reference(b, x, tt));
            match op {
                '+' => a + b,
                '-' => a - b,
                '*' => a * b,
                _ => a / b,
            }
        }
        Tree::Pow(a, b) => {
            let (a, b) = (reference(a, x, tt), reference(b, x, tt));
            if b == 2.0 {
                a * a
            } else {
                a.powf(b)
            }
        }
        Tree::Call(f, a) => {
            let v = reference(a, x, tt);
            match *f {
                "sin" => v.sin(),
                "cos" => v.cos(),
                "sinh" => v.sinh(),
                "cosh" => v.cosh(),
                _ => v.exp(),
            }
        }
    }
}

fn exponent() -> impl Strategy<Value = Tree> {
    let lit = prop_oneof![Just(2.0), Just(0.5), Just(1.5)].prop_map(Tree::Lit);
    lit.prop_recursive(2, 3, 1, |inner| {
        (prop_oneof![Just(2.0), Just(0.5)].prop_map(Tree::Lit), inner).prop_map(|(a, b)| Tree::Pow(Box::new(a), Box::new(b)))
    })
}

fn tree() -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![
        Just(Tree::X),
        Just(Tree::T),
        prop_oneof![Just(0.5), Just(1.0), Just(2.0), Just(3.25), Just(10.0), Just(1e-3)].prop_map(Tree::Lit),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Tree::Neg(Box::new(a))),
            (prop_oneof![Just('+'), Just('-'), Just('*'), Just('/')], inner.clone(), inner.clone())
                .prop_map(|(op, a, b)| Tree::Bin(op, Box::new(a), Box::new(b))),
            (inner.clone(), exponent()).prop_map(|(a, b)| Tree::Pow(Box::new(a), Box::new(b))),
            (prop_oneof![Just("sin"), Just("cos"), Just("sinh"), Just("cosh"), Just("exp")], inner)
                .prop_map(|(f, a)| Tree::Call(f, Box::new(a))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_reference_evaluator(t in tree(), x in -2.0f64..2.0, tt in 0.0f64..1.0) {
        let src = render(&t);
        let e = parse_expression(&src).map_err(|e| TestCaseError::fail(format!("{src}: {e}")))?;
        let want = reference(&t, x, tt);
        let got = e.eval(x, tt);
        if want.is_finite() {
            prop_assert!((got - want).abs() <= 1e-13 * want.abs().max(1e-300) || got == want,
                         "{} at ({}, {}): {} vs {}", src, x, tt, got, want);
        } else {
            prop_assert!(!got.is_finite() || got == want, "{}: {} vs {}", src, got, want);
        }
    }

    #[test]
    fn whitespace_is_insignificant(t in tree(), x in -2.0f64..2.0) {
        let src = render(&t);
        let tight: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let a = parse_expression(&src).unwrap().eval(x, 0.3);
        let b = parse_expression(&tight).unwrap().eval(x, 0.3);
        prop_assert!(a == b || (a.is_nan() && b.is_nan()));
    }

    #[test]
    fn garbage_never_panics(s in "[xt0-9 ()+*/^.,a-z-]{0,24}") {
        let _ = parse_expression(&s);
    }
}

#[test]
fn documented_examples() {
    let e = parse_expression("x^2 + t").unwrap();
    assert!((e.eval(0.5, 0.2) - 0.45).abs() < 1e-15);
    let e = parse_expression("4*(cos(t) - 3*sin(t))*sin(x)").unwrap();
    assert_eq!(e.eval(0.0, 0.0), 0.0);
    let e = parse_expression("-12*exp(-2*t)*sinh(x)").unwrap();
    assert!((e.eval(1.0, 0.0) - (-12.0 * 1f64.sinh())).abs() < 1e-14);
    assert!((e.eval(1.0, 0.0) + 14.1024143).abs() < 1e-7);
}

#[test]
fn error_kinds() {
    assert!(matches!(parse_expression("z"), Err(ExprError::UnknownIdentifier { .. })));
    assert!(matches!(parse_expression("cos(x, t)"), Err(ExprError::Arity { .. })));
    assert!(matches!(parse_expression("(x"), Err(ExprError::Syntax { offset: 2, .. })));
    assert!(matches!(parse_expression("x * * t"), Err(ExprError::Syntax { offset: 4, .. })));
}
