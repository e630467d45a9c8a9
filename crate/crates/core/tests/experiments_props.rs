use chevalley::censored::Censored;
use chevalley::experiments::{fit_linear_bound, run_table, to_json, ChevalleyReport};
use chevalley::scenario::Scenario;
use proptest::prelude::*;

fn covers(a: u32, b: u32, rows: &[(u32, Censored)]) -> bool {
    rows.iter().all(|&(k, l)| a * k + b >= l.bound())
}

fn rows() -> impl Strategy<Value = Vec<(u32, Censored)>> {
    prop::collection::vec(
        (0u32..=6, 0u32..=20, prop::bool::weighted(0.2))
            .prop_map(|(k, l, c)| (k, if c { Censored::AtLeast(l) } else { Censored::Exact(l) })),
        1..8,
    )
    .prop_filter("one exact row", |r| r.iter().any(|(_, l)| !l.is_censored()))
}

proptest! {
    #[test]
    fn fit_is_a_minimal_envelope(rows in rows()) {
        let b = fit_linear_bound(&rows).unwrap();
        prop_assert!(covers(b.alpha, b.beta, &rows));
        if b.beta > 0 {
            prop_assert!(!covers(b.alpha, b.beta - 1, &rows));
        }
        let max = rows.iter().map(|(_, l)| l.bound()).max().unwrap();
        for a in 0..=max {
            for c in 0..=max {
                if covers(a, c, &rows) {
                    prop_assert!((a + c, a) >= (b.alpha + b.beta, b.alpha), "({a},{c}) beats ({},{})", b.alpha, b.beta);
                }
            }
        }
        for &(k, l) in &b.witnesses {
            prop_assert_eq!(b.alpha * k + b.beta, l);
        }
    }
}

const SQUARING: &str = r#"{
    "map": {"name": "squaring", "m": 1, "n": 1, "components": ["x1^2"]},
    "points": [["0"]], "k_range": [1, 3], "l_max": 9
}"#;

const IDENTITY: &str = r#"{
    "map": {"name": "identity", "m": 2, "n": 2, "components": ["x1", "x2"]},
    "points": [["0", "0"], ["1/3", "-2"]], "k_range": [1, 3], "l_max": 6
}"#;

const CUSP: &str = r#"{
    "map": {"name": "cusp", "m": 1, "n": 2, "components": ["x1^2", "x1^3"]},
    "points": [["0"]], "relations": {"0": ["y1^3 - y2^2"]}, "k_range": [1, 2], "l_max": 8
}"#;

fn ls(text: &str) -> Vec<Censored> {
    run_table(&Scenario::from_json(text).unwrap()).unwrap().into_iter().map(|r| r.l).collect()
}

#[test]
fn run_table_examples() {
    use Censored::Exact;
    assert_eq!(ls(SQUARING), vec![Exact(2), Exact(4), Exact(6)]);
    assert_eq!(ls(IDENTITY), vec![Exact(1), Exact(2), Exact(3), Exact(1), Exact(2), Exact(3)]);
    assert_eq!(ls(CUSP), vec![Exact(3), Exact(5)]);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let sc = Scenario::from_json(IDENTITY).unwrap();
    let a = to_json(&ChevalleyReport::build(&sc).unwrap()).unwrap();
    let b = to_json(&ChevalleyReport::build(&sc).unwrap()).unwrap();
    assert_eq!(a, b);
}
