use proptest::prelude::*;
use superyangian::Coeff;
use superyangian_cli::parse::{parse, Ast, Atom, Position, Symbol};

fn atom() -> impl Strategy<Value = Ast> {
    let symbols = prop_oneof![
        Just(Symbol::T),
        Just(Symbol::TPrime),
        Just(Symbol::D),
        Just(Symbol::DPrime),
        Just(Symbol::E),
        Just(Symbol::F),
        Just(Symbol::Lie),
        Just(Symbol::Loop),
    ];
    symbols.prop_flat_map(|s| {
        prop::collection::vec(0usize..12, s.arity())
            .prop_map(move |args| Ast::Atom(Atom { symbol: s, args, at: Position { line: 1, column: 1 } }))
    })
}

fn ast() -> impl Strategy<Value = Ast> {
    let number = (0i64..50, 1i64..9).prop_map(|(p, q)| Ast::Number(Coeff::frac(p, q)));
    let leaf = prop_oneof![number, atom()];
    leaf.prop_recursive(5, 40, 2, |inner| {
        let pair = (inner.clone(), inner.clone()).prop_map(|(x, y)| (Box::new(x), Box::new(y)));
        prop_oneof![
            inner.prop_map(|x| Ast::Neg(Box::new(x))),
            pair.clone().prop_map(|(x, y)| Ast::Add(x, y)),
            pair.clone().prop_map(|(x, y)| Ast::Sub(x, y)),
            pair.clone().prop_map(|(x, y)| Ast::Mul(x, y)),
            pair.prop_map(|(x, y)| Ast::Bracket(x, y)),
        ]
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(tree in ast()) {
        let text = tree.to_string();
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(&back, &tree);
        prop_assert_eq!(back.to_string(), text);
    }
}
