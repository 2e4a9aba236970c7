//! Self-checks of every computational claim, in two tiers.
//!
//! The quick tier covers everything that runs in minutes. The full tier adds
//! the long scans and the exact rank computation at `e <= 7`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::distinguish::{
    refine_classes, resolve_residual_pairs, verify_short_start_powers, ParamDomain, PositionSet, Template,
    DISTINGUISH_LEN,
};
use crate::error::{Error, Result};
use crate::greedy::generate;
use crate::morphic::access::{background, Column, BACKGROUND_START, RECURRENCE_R};
use crate::morphic::canonical::{PREFIX_LEN, Z_LEN};
use crate::morphic::{desubstitute, CanonicalWords, LetterOracle, PHI};
use crate::prepower::{derive_gamma, is_pre_power, locates_length, scan_pre_powers, verify_power_free_prefix, GammaSet};
use crate::regularity::bounds::rank_bound_report;
use crate::regularity::dimension::kernel_rank;
use crate::regularity::five_fourths;
use crate::regularity::recurrence::{check_preset, five_fourths_recurrence, presets};
use crate::regularity::relations::verify_relations;
use crate::regularity::synthetic::{build_word, periodicity_check, required_len, span_check};
use crate::regularity::RegularityParams;
use crate::word::{frac_power, power_ending_at, with_subscripts, FracExponent, Letter, SubLetter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tier {
    Quick,
    Full,
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Tier::Quick),
            "full" => Ok(Tier::Full),
            _ => Err(Error::Parse(format!("unknown tier {s:?} (expected quick or full)"))),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Quick => "quick",
            Tier::Full => "full",
        })
    }
}

/// What a check found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

pub struct Check {
    /// Acceptance criterion number.
    pub criterion: u8,
    pub name: &'static str,
    pub tier: Tier,
    run: fn() -> Result<Outcome>,
}

impl Check {
    pub fn run(&self) -> CheckReport {
        let start = Instant::now();
        let outcome = (self.run)().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        CheckReport { criterion: self.criterion, name: self.name, outcome, elapsed: start.elapsed() }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub criterion: u8,
    pub name: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:>2}] {:<4} {:<28} {:>8.2}s  {}",
            self.criterion,
            if self.outcome.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.outcome.detail
        )
    }
}

pub fn checks() -> Vec<Check> {
    let c = |criterion, name, tier, run| Check { criterion, name, tier, run };
    vec![
        c(1, "greedy prefixes", Tier::Quick, greedy_prefixes),
        c(2, "canonical reconstruction", Tier::Quick, canonical_reconstruction),
        c(3, "morphic identity", Tier::Quick, morphic_identity),
        c(4, "gamma derivation", Tier::Quick, gamma_derivation),
        c(5, "locating length", Tier::Quick, locating_length),
        c(6, "pre-power scan of z", Tier::Quick, prepower_z),
        c(6, "pre-power scan of z phi(z)", Tier::Full, prepower_z_phi_z),
        c(7, "distinguisher", Tier::Quick, distinguisher),
        c(8, "short-start powers", Tier::Quick, short_start),
        c(9, "column recurrence", Tier::Quick, column_recurrence),
        c(10, "regularity constants", Tier::Quick, regularity_constants),
        c(11, "linear relations", Tier::Quick, linear_relations),
        c(12, "kernel shift", Tier::Quick, kernel_shift),
        c(12, "kernel rank e <= 4", Tier::Quick, kernel_rank_small),
        c(12, "kernel rank e <= 7", Tier::Full, kernel_rank_full),
        c(13, "conjectured recurrences", Tier::Quick, conjectures),
        c(14, "property batteries", Tier::Quick, properties),
        c(14, "power-free prefix 331040", Tier::Full, power_free_prefix),
    ]
}

/// Runs the checks of `tier` (the full tier includes the quick one),
/// reporting each as it finishes.
pub fn run_all(tier: Tier, mut progress: impl FnMut(&CheckReport)) -> Vec<CheckReport> {
    checks()
        .iter()
        .filter(|c| c.tier <= tier)
        .map(|c| {
            let report = c.run();
            progress(&report);
            report
        })
        .collect()
}

fn digits(w: &[Letter]) -> String {
    w.iter().map(|c| c.to_string()).collect()
}

fn greedy_prefixes() -> Result<Outcome> {
    let cases = [
        ((5, 4), "00001111020210100101121200001311"),
        ((2, 1), "01020103010201040102010301020105"),
        ((3, 2), "0011021001120011031001130011021001140011031"),
    ];
    for ((a, b), expected) in cases {
        let got = digits(&generate(FracExponent::new(a, b)?, expected.len()));
        if got != expected {
            return Ok(Outcome::new(false, format!("w_{a}/{b} starts {got}")));
        }
    }
    Ok(Outcome::new(true, "w_5/4, w_2, w_3/2 prefixes match"))
}

fn canonical_reconstruction() -> Result<Outcome> {
    // Validation of lengths, ends of z, the image identity, the common
    // suffix, the alphabet and the last -1 happens during construction.
    let words = CanonicalWords::build()?;
    Ok(Outcome::new(true, format!("|p| = {}, |z| = {}", words.p.len(), words.z.len())))
}

fn morphic_identity() -> Result<Outcome> {
    let words = CanonicalWords::shared();
    let full = words.full_word(PREFIX_LEN);
    let first = full.iter().zip(&words.greedy_prefix).position(|(a, b)| a != b);
    Ok(match first {
        None if full.len() == PREFIX_LEN => Outcome::new(true, format!("{PREFIX_LEN} letters agree")),
        None => Outcome::new(false, format!("only {} letters", full.len())),
        Some(i) => Outcome::new(false, format!("first difference at {i}")),
    })
}

fn gamma_derivation() -> Result<Outcome> {
    let derived = derive_gamma()?;
    Ok(Outcome::new(derived == GammaSet::expected(), format!("{} letters: {derived}", derived.len())))
}

fn locating_length() -> Result<Outcome> {
    let flags: Vec<bool> = (1..=12).map(|l| locates_length(&PHI, l)).collect();
    let monotone = flags.windows(2).all(|p| !p[0] || p[1]);
    let least = flags.iter().position(|&f| f).map(|t| t + 1);
    Ok(Outcome::new(flags[5] && monotone, format!("least locating length {least:?}, monotone {monotone}")))
}

fn prepower_z() -> Result<Outcome> {
    let words = CanonicalWords::shared();
    let found = scan_pre_powers(&words.z, None);
    Ok(Outcome::new(found.is_empty(), format!("{} witnesses in {} letters", found.len(), words.z.len())))
}

fn prepower_z_phi_z() -> Result<Outcome> {
    let words = CanonicalWords::shared();
    let w = words.s_stream(Z_LEN * 7);
    let found = scan_pre_powers(&w, None);
    Ok(Outcome::new(found.is_empty(), format!("{} witnesses in {} letters", found.len(), w.len())))
}

fn distinguisher() -> Result<Outcome> {
    let words = CanonicalWords::shared();
    let template = Template::new(words, DISTINGUISH_LEN)?;
    let narrow = ParamDomain::range(0, 4)?;
    let wide = ParamDomain::range(-1, 4)?;
    let expected = |shift: usize| -> Vec<Vec<usize>> {
        (6760..6764).map(|i| vec![i, i + shift]).collect()
    };
    let mut notes = Vec::new();
    let mut passed = true;
    for (set, shift) in [(PositionSet::S1, 24), (PositionSet::S2, 48)] {
        let positions = set.positions();
        let done = refine_classes(&template, &positions, &narrow, None);
        passed &= done.terminated && done.classes.length == DISTINGUISH_LEN;
        let stopped = refine_classes(&template, &positions, &wide, Some(DISTINGUISH_LEN));
        passed &= stopped.classes.classes == expected(shift);
        let resolved = resolve_residual_pairs(&template, words, &stopped.classes);
        passed &= resolved.iter().all(|r| r.distinct);
        notes.push(format!(
            "{set:?}: ends at {}, {} residual classes resolved",
            done.classes.length,
            stopped.classes.classes.len()
        ));
    }
    Ok(Outcome::new(passed, notes.join("; ")))
}

fn short_start() -> Result<Outcome> {
    let found = verify_short_start_powers(CanonicalWords::shared());
    Ok(Outcome::new(found.is_none(), found.map_or("none".into(), |w| w.to_string())))
}

fn column_recurrence() -> Result<Outcome> {
    let words = CanonicalWords::shared();
    let w = &words.greedy_prefix;
    let rec = five_fourths_recurrence();
    let i_max = rec.max_index(w.len() as u64).expect("prefix reaches the recurrence");
    if let Some(f) = rec.verify(w, i_max)? {
        return Ok(Outcome::new(false, format!("fails at i = {} ({} vs {})", f.i, f.lhs, f.rhs)));
    }
    // The increments split as 3 on i = 0, 2 (mod 8), 1 on i = 4, 6, 2 on odd i.
    let split: Vec<i64> = (0..8).map(|i| if i % 2 == 1 { 2 } else if i % 8 < 4 { 3 } else { 1 }).collect();
    if rec.d.period != split {
        return Ok(Outcome::new(false, format!("increments {:?}", rec.d.period)));
    }
    let rows = (PREFIX_LEN as u64) / 6;
    for q in BACKGROUND_START..rows {
        for m in [0u8, 2, 3, 4, 5] {
            let Column::Value(v) = background(q, m)? else { unreachable!() };
            if w[(6 * q + m as u64) as usize] != v {
                return Ok(Outcome::new(false, format!("background fails at row {q}, column {m}")));
            }
        }
    }
    Ok(Outcome::new(
        true,
        format!("recurrence for i <= {i_max} (6i + {RECURRENCE_R} < {PREFIX_LEN}); background rows {BACKGROUND_START}..{rows}"),
    ))
}

fn regularity_constants() -> Result<Outcome> {
    let p = five_fourths();
    let je: Vec<i128> = (0..10).map(|e| p.j_e(e)).collect::<Result<_>>()?;
    let qe: Vec<i128> = (0..8).map(|e| p.q_e(e)).collect::<Result<_>>()?;
    let big_e = p.E()?;
    let bounds = rank_bound_report(&p)?;
    let passed = je == [0, 1, 31, 31, 895, 7375, 38479, 38479, 318415, 1998031]
        && qe == [5920, 20510, 22941, 23347, 23414, 23425, 23427, 23428]
        && big_e == 7
        && bounds.general.total() == 79472
        && bounds.refined.failure.is_none()
        && bounds.refined.total() == 4078;
    Ok(Outcome::new(
        passed,
        format!("E = {big_e}, bounds {} and {}", bounds.general.total(), bounds.refined.total()),
    ))
}

fn linear_relations() -> Result<Outcome> {
    let oracle = LetterOracle::shared();
    Ok(match verify_relations(&oracle, 4050) {
        None => Outcome::new(true, "five relations hold for i < 4050"),
        Some((r, i)) => Outcome::new(false, format!("relation {} fails at i = {i}", r + 1)),
    })
}

fn kernel_shift() -> Result<Outcome> {
    let p = five_fourths();
    let oracle = LetterOracle::shared();
    let (j7, j8) = (p.j_e(7)? as u64, p.j_e(8)? as u64);
    let (k7, k8) = (6u64.pow(7), 6u64.pow(8));
    let bad = (0..=500u64).find(|&i| oracle.letter_at(k8 * i + j8) != oracle.letter_at(k7 * i + j7) + 2);
    Ok(match bad {
        None => Outcome::new(true, "w(6^8 i + j_8) = w(6^7 i + j_7) + 2 for i <= 500"),
        Some(i) => Outcome::new(false, format!("fails at i = {i}")),
    })
}

fn rank_outcome(e_max: u32, v_expected: usize, total_expected: usize) -> Result<Outcome> {
    let r = kernel_rank(&LetterOracle::shared(), &five_fourths(), e_max, 4050)?;
    let inside = r.inside_v.iter().all(|(_, b)| *b);
    let passed = r.v_dim == v_expected && inside && r.total == total_expected;
    Ok(Outcome::new(
        passed,
        format!(
            "dim V = {} ({} distinct of {} sequences), G_4 and v_0 in V: {inside}, total {}",
            r.v_dim, r.v_distinct, r.v_sequences, r.total
        ),
    ))
}

fn kernel_rank_small() -> Result<Outcome> {
    rank_outcome(4, 139, 145)
}

fn kernel_rank_full() -> Result<Outcome> {
    rank_outcome(7, 179, 188)
}

fn conjectures() -> Result<Outcome> {
    let mut notes = Vec::new();
    for p in presets().iter().filter(|p| p.name != "5/4") {
        let r = check_preset(p, 300_000)?;
        notes.push(match (r.i_max, r.failure) {
            (None, _) => format!("{}: out of reach", p.name),
            (Some(m), None) => format!("{}: holds for i <= {m}", p.name),
            (Some(_), Some(f)) => format!("{}: fails at i = {}", p.name, f.i),
        });
    }
    // Failures of conjectures are findings, not errors.
    Ok(Outcome::new(true, notes.join("; ")))
}

fn power_free_prefix() -> Result<Outcome> {
    let found = verify_power_free_prefix(CanonicalWords::shared(), PREFIX_LEN);
    Ok(Outcome::new(found.is_none(), found.map_or(format!("{PREFIX_LEN} letters 5/4-power-free"), |w| w.to_string())))
}

/// Randomized and exhaustive cross-checks against naive reimplementations.
fn properties() -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut notes = Vec::new();

    // Powers ending at a position, against materialized powers.
    let e = FracExponent::new(5, 4)?;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=200);
        let w: Vec<Letter> = (0..len).map(|_| rng.gen_range(0..3)).collect();
        let i = rng.gen_range(0..len);
        let naive: Vec<usize> = (1..=(i + 1) / 5)
            .map(|m| 4 * m)
            .filter(|&period| {
                let start = i + 1 - period / 4 * 5;
                frac_power(&w[start..start + period], e).is_ok_and(|v| v == w[start..=i])
            })
            .collect();
        if power_ending_at(&w, i, e)? != naive {
            return Ok(Outcome::new(false, format!("power_ending_at disagrees on {w:?} at {i}")));
        }
    }
    notes.push("power_ending_at: 1000 random words".to_string());

    // Pre-powers, against expanding the image.
    let naive_pre = |w: &[SubLetter]| {
        let img = PHI.apply(w);
        let period = img.len() / 5 * 4;
        frac_power(&img[..period], e).is_ok_and(|v| v == img)
    };
    let mut count = 0;
    for start in 0..8u8 {
        for code in 0..8usize.pow(5) {
            let values: Vec<i32> = (0..5).map(|t| (code / 8usize.pow(t) % 8) as i32 - 3).collect();
            let w = with_subscripts(&values, start);
            if is_pre_power(&w)? != naive_pre(&w) {
                return Ok(Outcome::new(false, format!("is_pre_power disagrees on {w:?}")));
            }
            count += 1;
        }
        // Length 10: only positions 0, 1, 8, 9 enter the comparison.
        for code in 0..8usize.pow(4) {
            let mut values: Vec<i32> = (0..10).map(|_| rng.gen_range(-3..=4)).collect();
            for (t, pos) in [0, 1, 8, 9].into_iter().enumerate() {
                values[pos] = (code / 8usize.pow(t as u32) % 8) as i32 - 3;
            }
            let w = with_subscripts(&values, start);
            if is_pre_power(&w)? != naive_pre(&w) {
                return Ok(Outcome::new(false, format!("is_pre_power disagrees on {w:?}")));
            }
            count += 1;
        }
    }
    notes.push(format!("is_pre_power: {count} words"));

    // Desubstitution inverts the image map.
    for _ in 0..1000 {
        let len = rng.gen_range(1..=40);
        let start = rng.gen_range(0..8u8);
        let values: Vec<i32> = (0..len).map(|_| rng.gen_range(-1..=6)).collect();
        let w = with_subscripts(&values, start);
        let image: Vec<i64> = crate::morphic::apply_tau(&PHI.apply(&w)).iter().map(|&x| x as i64).collect();
        if desubstitute(&image, start)? != w {
            return Ok(Outcome::new(false, format!("round trip fails on {w:?}")));
        }
    }
    notes.push("desubstitute round trip: 1000 words".to_string());

    // Synthetic instances of the general recurrence.
    let mut instances = 0;
    while instances < 40 {
        let k = rng.gen_range(2..=3u64);
        let ell = rng.gen_range(1..=2u64);
        let (r, s) = (rng.gen_range(0..=10u64), rng.gen_range(0..=10u64));
        let d: Vec<i64> = (0..ell).map(|_| rng.gen_range(-2..=3)).collect();
        let u: Vec<i64> = (0..k * ell).map(|_| rng.gen_range(0..=4)).collect();
        let Ok(p) = RegularityParams::new(k, ell, r, s, d, u) else { continue };
        if p.big_r() <= 0 {
            continue;
        }
        let init: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=4)).collect();
        let terms = p.q_e(p.E()?)? as usize + 1 + 3 * (k * ell) as usize + 4;
        let w = build_word(&p, &init, required_len(&p, 3, terms)?)?;
        if let Some(ix) = span_check(&p, &w, 3, terms)? {
            return Ok(Outcome::new(false, format!("{ix:?} outside the generator span for {p:?}")));
        }
        if let Some(ix) = periodicity_check(&p, &w, 3, terms)? {
            return Ok(Outcome::new(false, format!("{ix:?} not eventually periodic for {p:?}")));
        }
        instances += 1;
    }
    notes.push(format!("synthetic recurrences: {instances} instances"));

    // Alphabet of the greedy prefix grows slowly; letters stay small.
    let distinct: BTreeSet<Letter> = generate(e, 2000).into_par_iter().collect();
    notes.push(format!("{} letters in 2000-letter prefix", distinct.len()));
    Ok(Outcome::new(true, notes.join("; ")))
}
