use lexfree::format::{parse_bfile, parse_plain, render_bfile, render_columns, render_plain};
use lexfree::greedy::{creates_power, generate, verify_lex_least, GreedyGenerator};
use lexfree::word::{first_power, frac_power, is_power_free, power_ending_at};
use lexfree::FracExponent;
use proptest::prelude::*;

fn exp(a: u32, b: u32) -> FracExponent {
    FracExponent::new(a, b).unwrap()
}

/// Periods of all `a/b`-powers ending at `i`, by checking every factor.
fn naive_periods(w: &[u32], i: usize, a: usize, b: usize) -> Vec<usize> {
    (1..=i + 1)
        .filter(|len| (len * b).is_multiple_of(a))
        .map(|len| (len, len * b / a))
        .filter(|&(len, period)| {
            let f = &w[i + 1 - len..=i];
            period < len && (0..len - period).all(|t| f[t] == f[t + period])
        })
        .map(|(_, period)| period)
        .collect()
}

fn naive_power_free(w: &[u32], a: usize, b: usize) -> bool {
    (0..w.len()).all(|i| naive_periods(w, i, a, b).is_empty())
}

/// Greedy construction straight from the definition.
fn naive_greedy(a: usize, b: usize, n: usize) -> Vec<u32> {
    let mut w = Vec::new();
    for i in 0..n {
        let c = (0..).find(|&c| {
            w.push(c);
            let ok = naive_periods(&w, i, a, b).is_empty();
            w.pop();
            ok
        });
        w.push(c.unwrap());
    }
    w
}

#[test]
fn exponent_validation() {
    assert!(FracExponent::new(4, 2).is_err());
    assert!(FracExponent::new(3, 4).is_err());
    assert!(FracExponent::new(1, 1).is_err());
    assert_eq!(exp(5, 4).shape(3), (12, 15));
}

#[test]
fn frac_power_examples() {
    assert_eq!(frac_power(&[1, 2, 3, 4], exp(5, 4)).unwrap(), [1, 2, 3, 4, 1]);
    assert_eq!(frac_power(&[0, 1], exp(3, 2)).unwrap(), [0, 1, 0]);
    assert!(frac_power(&[0, 1, 2], exp(5, 4)).is_err());
}

#[test]
fn greedy_matches_definition() {
    for (a, b, n) in [(2, 1, 400), (3, 2, 400), (5, 4, 400), (7, 6, 300), (7, 5, 300)] {
        assert_eq!(generate(exp(a, b), n), naive_greedy(a as usize, b as usize, n), "{a}/{b}");
    }
}

#[test]
fn greedy_is_lex_least() {
    for (a, b) in [(2, 1), (3, 2), (5, 4), (7, 6)] {
        let w = generate(exp(a, b), 10_000);
        assert_eq!(verify_lex_least(&w, exp(a, b)).unwrap(), None, "{a}/{b}");
        assert!(is_power_free(&w, exp(a, b)));
    }
}

#[test]
fn prefixes_are_consistent() {
    let e = exp(5, 4);
    let long = generate(e, 3000);
    for n in [0, 1, 17, 1000, 2999] {
        assert_eq!(generate(e, n), long[..n]);
    }
    let mut g = GreedyGenerator::new(e);
    g.extend_to(500);
    g.extend_to(100);
    assert_eq!(g.len(), 500);
    assert_eq!(g.word(), &long[..500]);
}

#[test]
fn lowered_letter_is_reported() {
    let e = exp(5, 4);
    let mut w = generate(e, 2000);
    let i = (1000..).find(|&i| w[i] > 0).unwrap();
    w[i] -= 1;
    w.truncate(i + 1);
    let witness = first_power(&w, e).expect("lowering a greedy letter creates a power");
    assert_eq!(witness.end, i);
    assert!(creates_power(&w, i, w[i], e));
}

#[test]
fn lex_least_rejects_improvable_words() {
    let e = exp(2, 1);
    assert_eq!(verify_lex_least(&[0, 2], e).unwrap(), Some((1, 1)));
    assert!(verify_lex_least(&[0, 0], e).is_err());
}

#[test]
fn formats_are_byte_stable() {
    let w = generate(exp(5, 4), 12);
    assert_eq!(render_plain(&w), "0 0 0 0 1 1 1 1 0 2 0 2\n");
    assert_eq!(render_bfile(&w[..3]), "0 0\n1 0\n2 0\n");
    assert_eq!(render_columns(&w, 6).unwrap(), "0 0 0 0 1 1\n1 1 0 2 0 2\n");
    assert_eq!(parse_bfile(&render_bfile(&w)).unwrap(), w);
    assert_eq!(parse_plain(&render_plain(&w)).unwrap(), w);
}

proptest! {
    #[test]
    fn power_ending_at_matches_naive(
        w in prop::collection::vec(0u32..3, 1..200),
        frac in 0usize..1000,
        (a, b) in prop::sample::select(vec![(5u32, 4u32), (2, 1), (3, 2), (7, 5)]),
    ) {
        let i = frac * w.len() / 1000;
        let got = power_ending_at(&w, i, exp(a, b)).unwrap();
        prop_assert_eq!(got, naive_periods(&w, i, a as usize, b as usize));
    }

    #[test]
    fn first_power_agrees_with_naive(w in prop::collection::vec(0u32..3, 0..80)) {
        let e = exp(5, 4);
        prop_assert_eq!(first_power(&w, e).is_none(), naive_power_free(&w, 5, 4));
        if let Some(p) = first_power(&w, e) {
            prop_assert!(naive_periods(&w, p.end, 5, 4).contains(&p.period));
            prop_assert!(naive_power_free(&w[..p.end], 5, 4));
        }
    }

    #[test]
    fn frac_power_has_period(v in prop::collection::vec(0u32..5, 1..10), m in 1usize..4) {
        let v: Vec<u32> = v.into_iter().cycle().take(4 * m).collect();
        let p = frac_power(&v, exp(5, 4)).unwrap();
        prop_assert_eq!(p.len(), 5 * m);
        prop_assert_eq!(naive_periods(&p, p.len() - 1, 5, 4).last().copied(), Some(4 * m));
    }
}
