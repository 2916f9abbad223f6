use curvekit::expr::{BinaryOp, UnaryOp};
use curvekit::{parse, Expr, Params};
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::Var),
        Just(Expr::Const(std::f64::consts::PI)),
        (0u32..1000, 0u32..4).prop_map(|(m, e)| Expr::Const(m as f64 / 10f64.powi(e as i32))),
        prop::sample::select(vec!["a", "lambda", "R", "k2"]).prop_map(Expr::param),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        let unary = prop::sample::select(vec![
            UnaryOp::Neg,
            UnaryOp::Sin,
            UnaryOp::Cos,
            UnaryOp::Tan,
            UnaryOp::Sqrt,
            UnaryOp::Abs,
        ]);
        let binary = prop::sample::select(vec![
            BinaryOp::Add,
            BinaryOp::Sub,
            BinaryOp::Mul,
            BinaryOp::Div,
            BinaryOp::Pow,
        ]);
        prop_oneof![
            (unary, inner.clone()).prop_map(|(op, a)| Expr::unary(op, a)),
            (binary, inner.clone(), inner).prop_map(|(op, a, b)| Expr::binary(op, a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_then_parsing_is_stable(e in tree()) {
        let text = e.to_string();
        let once = parse(&text).unwrap();
        prop_assert_eq!(&once, &e, "printed as {}", text);
        let twice = parse(&once.to_string()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn redundant_parentheses_do_not_change_the_tree(e in tree()) {
        let plain = parse(&e.to_string()).unwrap();
        let wrapped = parse(&format!("(({}))", e)).unwrap();
        prop_assert_eq!(plain, wrapped);
    }
}

#[test]
fn hand_written_sources_round_trip() {
    for src in [
        "1 - lambda*sin(theta)",
        "-2^2",
        "2^3^2",
        "(1 + cos(t))/(2 - sin(t))^2",
        "a - (b - c)",
        "a/(b*c)",
        "--t",
        "t^-1",
        "sqrt(abs(t)) * tan(pi/4)",
        "1e-3*t + 2.5E2",
    ] {
        let first = parse(src).unwrap();
        assert_eq!(parse(&first.to_string()).unwrap(), first, "{src}");
    }
}

#[test]
fn evaluation_survives_printing() {
    let params = Params::from([("a".to_string(), 0.7)]);
    let e = parse("a*cos(3*t)^2 - sin(t)/(1 + a^2)").unwrap();
    let back = parse(&e.to_string()).unwrap();
    for x in [0.0, 0.4, 2.2, -1.7] {
        assert_eq!(e.eval(x, &params).unwrap(), back.eval(x, &params).unwrap());
    }
}
