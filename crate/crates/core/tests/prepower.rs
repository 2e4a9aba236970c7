use lexfree::morphic::{apply_phi, apply_tau, desubstitute, PHI};
use lexfree::prepower::{
    derive_gamma, image_class, is_pre_power, locates_length, phi_image_equal, scan_pre_powers, GammaSet,
};
use lexfree::word::{is_subscript_increasing, with_subscripts};
use lexfree::SubLetter;
use proptest::prelude::*;

/// `phi(w)` is a 5/4-power: length `5l` with period `4l`.
fn image_is_power(w: &[SubLetter]) -> bool {
    let img = apply_tau(&apply_phi(w));
    let period = img.len() / 5 * 4;
    img.len().is_multiple_of(5) && img[..img.len() - period] == img[period..]
}

fn naive_scan(w: &[SubLetter]) -> Vec<(usize, usize)> {
    let mut found = Vec::new();
    for start in 0..w.len() {
        for l in 1..=(w.len() - start) / 5 {
            if image_is_power(&w[start..start + 5 * l]) {
                found.push((start, l));
            }
        }
    }
    found.sort();
    found
}

fn word(values: &[i32], start: u8) -> Vec<SubLetter> {
    with_subscripts(values, start)
}

#[test]
fn pre_power_exhaustive_length_five() {
    for start in 0..8 {
        for code in 0..8usize.pow(5) {
            let v: Vec<i32> = (0..5).map(|t| (code / 8usize.pow(t) % 8) as i32 - 3).collect();
            let w = word(&v, start);
            assert_eq!(is_pre_power(&w).unwrap(), image_is_power(&w), "{w:?}");
        }
    }
}

#[test]
fn pre_power_length_ten_edges() {
    // The image comparison at length 10 reads only positions 0, 1, 8, 9;
    // every assignment of those is tried under a few fillers.
    for start in 0..8 {
        for filler in [-3, 0, 4] {
            for code in 0..8usize.pow(4) {
                let mut v = vec![filler; 10];
                for (t, pos) in [0usize, 1, 8, 9].into_iter().enumerate() {
                    v[pos] = (code / 8usize.pow(t as u32) % 8) as i32 - 3;
                }
                let w = word(&v, start);
                assert_eq!(is_pre_power(&w).unwrap(), image_is_power(&w), "{w:?}");
            }
        }
    }
}

#[test]
fn image_classes_match_image_equality() {
    let letters: Vec<SubLetter> = (-4..6).flat_map(|v| (0..8).map(move |j| SubLetter::new(v, j))).collect();
    for &a in &letters {
        for &b in &letters {
            let same_image = PHI.apply_letter(a).map(|x| x.value) == PHI.apply_letter(b).map(|x| x.value)
                && (a.subscript() as i32 - b.subscript() as i32).rem_euclid(4) == 0;
            assert_eq!(phi_image_equal(a, b), same_image, "{a} {b}");
            assert_eq!(image_class(a) == image_class(b), same_image, "{a} {b}");
        }
    }
}

#[test]
fn gamma_is_the_known_set() {
    let g = derive_gamma().unwrap();
    assert_eq!(g, GammaSet::expected());
    assert_eq!(g.len(), 16);
    assert!(g.contains(SubLetter::new(-3, 0)));
    assert!(!g.contains(SubLetter::new(0, 0)));
}

#[test]
fn locating_lengths() {
    let flags: Vec<bool> = (1..=12).map(|l| locates_length(&PHI, l)).collect();
    assert!(flags[5]);
    assert!(flags.windows(2).all(|p| !p[0] || p[1]));
}

proptest! {
    #[test]
    fn scan_matches_naive(v in prop::collection::vec(-1i32..3, 0..60), start in 0u8..8) {
        let w = word(&v, start);
        let got: Vec<(usize, usize)> = scan_pre_powers(&w, None).iter().map(|p| (p.start, p.block)).collect();
        prop_assert_eq!(got, naive_scan(&w));
    }

    #[test]
    fn scan_respects_limit(v in prop::collection::vec(0i32..2, 0..60), l_max in 0usize..4) {
        let w = word(&v, 0);
        prop_assert!(scan_pre_powers(&w, Some(l_max)).iter().all(|p| p.block <= l_max));
    }

    #[test]
    fn desubstitute_inverts_image(v in prop::collection::vec(-3i32..8, 1..50), start in 0u8..8) {
        let w = word(&v, start);
        prop_assert!(is_subscript_increasing(&w));
        let image = apply_tau(&apply_phi(&w));
        prop_assert_eq!(image.len(), 6 * w.len());
        prop_assert_eq!(desubstitute(&image, start).unwrap(), w);
    }

    #[test]
    fn desubstitute_rejects_corruption(v in prop::collection::vec(0i32..5, 1..20), at in 0usize..1000) {
        let w = word(&v, 0);
        let mut image = apply_tau(&apply_phi(&w));
        // Columns other than the last of each block are constants of the row.
        let t = at % image.len();
        if t % 6 != 5 {
            image[t] += 1;
            prop_assert!(desubstitute(&image, 0).is_err());
        }
    }
}
