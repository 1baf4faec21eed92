use proptest::prelude::*;
use rbt_core::graph::Graph;
use rbt_core::io::{emit, emit_hex, emit_json, parse_system, SystemFormat};
use rbt_core::rainbow::GraphSystem;
use rbt_core::ParseError;

fn system_strategy() -> impl Strategy<Value = GraphSystem> {
    (1usize..=64, 1usize..=5).prop_flat_map(|(n, t)| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), m), t).prop_map(
            move |masks| {
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
                let graphs = masks
                    .iter()
                    .map(|mask| {
                        Graph::from_edges(
                            n,
                            pairs
                                .iter()
                                .zip(mask)
                                .filter(|(_, &on)| on)
                                .map(|(&e, _)| e),
                        )
                        .unwrap()
                    })
                    .collect();
                GraphSystem::new(graphs).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn round_trip_both_formats(s in system_strategy()) {
        prop_assert_eq!(&parse_system(&emit_json(&s), SystemFormat::Json).unwrap(), &s);
        prop_assert_eq!(&parse_system(&emit_hex(&s), SystemFormat::Hex).unwrap(), &s);
        prop_assert_eq!(&parse_system(&emit(&s, SystemFormat::Hex), SystemFormat::Auto).unwrap(), &s);
    }

    #[test]
    fn garbage_never_panics(text in "\\PC{0,64}") {
        let _ = parse_system(&text, SystemFormat::Auto);
    }
}

#[test]
fn json_shape_is_stable() {
    let s = parse_system(
        r#"{"n":3,"graphs":[[[1,0]],[[1,2]],[]]}"#,
        SystemFormat::Auto,
    )
    .unwrap();
    assert_eq!(emit_json(&s), r#"{"n":3,"graphs":[[[0,1]],[[1,2]],[]]}"#);
    assert_eq!(emit_hex(&s), r#"{"n":3,"hex":["01","04","00"]}"#);
}

#[test]
fn hex_errors() {
    let stray = parse_system(r#"{"n":3,"hex":["08"]}"#, SystemFormat::Auto).unwrap_err();
    assert!(matches!(stray, ParseError::Graph { .. }));
    let short = parse_system(r#"{"n":5,"hex":["ff"]}"#, SystemFormat::Auto).unwrap_err();
    assert!(matches!(short, ParseError::Graph { .. }));
    let bad = parse_system(r#"{"n":3,"hex":["zz"]}"#, SystemFormat::Auto).unwrap_err();
    assert!(matches!(bad, ParseError::Graph { .. }));
    let unknown =
        parse_system(r#"{"n":3,"hex":["00"],"extra":1}"#, SystemFormat::Auto).unwrap_err();
    assert!(matches!(unknown, ParseError::Syntax { .. }));
}
