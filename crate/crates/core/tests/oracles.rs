//! Cross-checks against oracles that share no code with the library.

mod common;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use traag::amalgam::{GroupSpec, Syllable};
use traag::mixed_graph::ComponentClass;
use traag::presentation::smith_normal_form;

#[test]
fn burau_matrices_satisfy_the_braid_and_torus_relations() {
    let [s1, _, s2, _] = common::burau_sigma();
    let lhs = common::mat_mul(&common::mat_mul(&s1, &s2), &s1);
    let rhs = common::mat_mul(&common::mat_mul(&s2, &s1), &s2);
    assert_eq!(lhs, rhs);
    let b = common::BurauTrefoil::new();
    assert_eq!(b.eval("xx"), b.eval("yyy"));
    assert!(b.is_identity("xX") && b.is_identity("Yy"));
    assert!(!b.is_identity("xy"));
}

#[test]
fn trefoil_word_problem_matches_burau() {
    let spec = GroupSpec::torus(2, 3).unwrap();
    let burau = common::BurauTrefoil::new();
    let mut trivial = 0;
    for len in 0..=7 {
        for w in common::all_words(len) {
            let engine = common::letters_to_word(spec, &w).is_identity();
            assert_eq!(engine, burau.is_identity(&w), "{w}");
            trivial += usize::from(engine);
        }
    }
    assert!(trivial > 100);
}

#[test]
fn rewrite_oracle_agrees_on_other_torus_groups() {
    for (r, s) in [(2, 5), (3, 4), (4, 3), (3, 5)] {
        let spec = GroupSpec::torus(r, s).unwrap();
        for len in 0..=6 {
            for w in common::all_words(len) {
                let (central, rest) = common::rewrite_normal_form(&w, r as usize, s as usize);
                let nf = common::letters_to_word(spec, &w).normal_form();
                assert_eq!(nf.central_exp, BigInt::from(central), "{w} in {spec}");
                let runs: Vec<(char, usize)> = rest.chars().fold(Vec::new(), |mut acc, c| {
                    match acc.last_mut() {
                        Some((d, n)) if *d == c => *n += 1,
                        _ => acc.push((c, 1)),
                    }
                    acc
                });
                let expected: Vec<Syllable> = runs
                    .into_iter()
                    .map(|(c, n)| {
                        if c == 'x' {
                            Syllable::A(n.into())
                        } else {
                            Syllable::B(n.into())
                        }
                    })
                    .collect();
                assert_eq!(nf.syllables, expected, "{w} in {spec}");
            }
        }
    }
}

#[test]
fn smith_form_matches_determinantal_divisors() {
    let mut rng = common::rng(11);
    for _ in 0..2_000 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect())
            .collect();
        let big: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let expected: Vec<BigInt> = common::invariant_factors_by_minors(&m)
            .into_iter()
            .map(BigInt::from)
            .collect();
        assert_eq!(smith_normal_form(&big), expected, "{m:?}");
    }
}

#[test]
fn sink_star_classification_matches_definition() {
    let stars: usize = (1..=5)
        .map(|n| {
            (0..common::graph_count(n))
                .into_par_iter()
                .map(|code| {
                    let g = common::graph_from_code(n, code);
                    if !g.is_connected() {
                        return 0;
                    }
                    let class = g.classify_component().unwrap();
                    match common::is_sink_star_by_definition(&g) {
                        Some(k) => {
                            assert_eq!(class, ComponentClass::SinkStar(k), "{}", g.to_text());
                            1
                        }
                        None => {
                            assert!(
                                !matches!(class, ComponentClass::SinkStar(_)),
                                "{}",
                                g.to_text()
                            );
                            0
                        }
                    }
                })
                .sum::<usize>()
        })
        .sum();
    // labelled sink stars on n vertices: n choices of head
    assert_eq!(stars, 2 + 3 + 4 + 5);
}
