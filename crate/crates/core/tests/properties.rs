mod common;

use common::exact::*;
use common::{full_corpus, named_corpus, planted_corpus};
use newtonpoly::parse_polynomial;
use proptest::prelude::*;

fn ok(c: Check) {
    match c {
        Ok(summary) => println!("{summary}"),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn parser_round_trip_500() {
    ok(parser_round_trip(500));
}

#[test]
fn factorization_round_trip_100() {
    ok(factorization_round_trip(100));
}

#[test]
fn linear_invariance_100() {
    let mut bases = named_corpus();
    bases.extend(planted_corpus(20));
    ok(linear_invariance(&bases, 100));
}

#[test]
fn varchenko_distance_monotone_on_corpus() {
    ok(distance_monotonicity(&full_corpus()));
}

#[test]
fn r_height_formula_matches_geometry() {
    ok(r_height_geometry(60));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Whitespace and factor order do not change the parsed polynomial.
    #[test]
    fn parser_ignores_layout(c in -20i64..20, e1 in 0u32..9, e2 in 0u32..9, k in 1i64..9) {
        let tight = format!("{c}/{k}*x1^{e1}*x2^{e2}+x1");
        let loose = format!(" x1 + {c} / {k} * x2 ^ {e2} * x1 ^ {e1} ");
        prop_assert_eq!(parse_polynomial(&tight).unwrap(), parse_polynomial(&loose).unwrap());
    }
}
