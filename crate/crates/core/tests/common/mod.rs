#![allow(dead_code)]

use proptest::prelude::*;

use ontoforge::serializer::normalize_tokens;

pub fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn golden_tokens(name: &str) -> Vec<String> {
    normalize_tokens(&golden(name))
}

fn chromosome() -> impl Strategy<Value = String> {
    prop_oneof![
        (1u8..=22).prop_map(|n| n.to_string()),
        Just("X".to_string()),
        Just("Y".to_string()),
    ]
}

fn band() -> impl Strategy<Value = String> {
    (
        prop_oneof![Just('p'), Just('q')],
        1u32..40,
        prop::option::of(prop_oneof![(1u32..10).prop_map(|d| d.to_string()), (10u32..100).prop_map(|d| d.to_string())]),
    )
        .prop_map(|(arm, n, sub)| match sub {
            Some(sub) => format!("{arm}{n}.{sub}"),
            None => format!("{arm}{n}"),
        })
}

#[derive(Clone, Debug)]
enum Abn {
    Gain(String),
    Loss(String),
    Inv(String, String, String),
}

fn abnormality() -> impl Strategy<Value = Abn> {
    prop_oneof![
        chromosome().prop_map(Abn::Gain),
        chromosome().prop_map(Abn::Loss),
        (chromosome(), band(), band()).prop_map(|(c, a, b)| Abn::Inv(c, a, b)),
    ]
}

/// Canonical, count-consistent karyotype strings in the supported subset.
pub fn iscn_string() -> impl Strategy<Value = String> {
    (
        prop::collection::vec(prop_oneof![Just('X'), Just('Y'), Just('N')], 1..=4),
        prop::collection::vec(abnormality(), 0..5),
    )
        .prop_map(|(sex, abns)| {
            let mut total: i64 = 44 + sex.len() as i64;
            let mut parts = Vec::new();
            for a in &abns {
                match a {
                    Abn::Gain(c) => {
                        if c != "X" && c != "Y" {
                            total += 1;
                        }
                        parts.push(format!("+{c}"));
                    }
                    Abn::Loss(c) => {
                        if c != "X" && c != "Y" {
                            total -= 1;
                        }
                        parts.push(format!("-{c}"));
                    }
                    Abn::Inv(c, a, b) => parts.push(format!("inv({c})({a}{b})")),
                }
            }
            let mut s = format!("{total},{}", sex.iter().collect::<String>());
            for p in parts {
                s.push(',');
                s.push_str(&p);
            }
            s
        })
}
