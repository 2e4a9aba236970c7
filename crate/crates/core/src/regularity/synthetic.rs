//! Words built directly from the recurrence, for checking the general
//! machinery on small parameters.

use crate::error::{Error, Result};
use crate::regularity::generators::{generator_set, Generator};
use crate::regularity::kernel::{kernel_sequence, IndexedSequence};
use crate::regularity::rank::ExactBasis;
use crate::regularity::{integral, KernelIndex, RegularityParams};

/// The first `len` letters of the word that starts with `initial` (length
/// `r`) and satisfies the recurrence from position `r` on.
pub fn build_word(p: &RegularityParams, initial: &[i64], len: usize) -> Result<Vec<i64>> {
    if initial.len() as u64 != p.r {
        return Err(Error::Unsupported(format!("need {} initial letters, got {}", p.r, initial.len())));
    }
    if p.big_r() <= 0 {
        return Err(Error::Unsupported("the recurrence refers forward when r - s + k - 1 <= 0".into()));
    }
    let (k, r, s) = (p.k as usize, p.r as usize, p.s as usize);
    let mut w = initial.to_vec();
    w.truncate(len);
    for n in w.len()..len {
        let (i, m) = ((n - r) / k, (n - r) % k);
        let letter = if m < k - 1 { p.u_at((k * i + m) as i128) } else { w[i + s] + p.d_at(i as i128) };
        w.push(letter);
    }
    Ok(w)
}

/// Evaluates `w(k^e i + j)` by applying the self-similar case `h` times,
/// where `h` is the agreement depth of `j`:
/// `w(f_{e,h,j}(i) + s) + sum_{t < h} d(f_{e,t+1,j}(i))`.
///
/// Every `f` value is checked to be an integer. Returns `None` when some
/// `f_{e,t,j}(i)` with `1 <= t <= h` is negative, so the unfolding does not
/// apply.
pub fn unfold<S: IndexedSequence + ?Sized>(p: &RegularityParams, w: &S, e: u32, j: i128, i: i128) -> Result<Option<i64>> {
    let h = p.agreement_depth(e, j)?;
    let mut acc = 0;
    for t in 1..=h {
        let f = integral(p.f_eval(e, t, j, i)?)?;
        if f < 0 {
            return Ok(None);
        }
        acc += p.d_at(f);
    }
    let last = integral(p.f_eval(e, h, j, i)?)? + p.s as i128;
    Ok(Some(w.at(last as u64) + acc))
}

/// Number of letters needed to read `terms` terms of every generator and of
/// every kernel sequence with `e <= e_max`.
pub fn required_len(p: &RegularityParams, e_max: u32, terms: usize) -> Result<usize> {
    let set = generator_set(p)?;
    let top = set.kernel.iter().chain(&set.self_similar).map(|ix| ix.e).max().unwrap_or(0).max(e_max);
    Ok(p.k_pow(top)? as usize * terms)
}

/// First kernel sequence with `e <= e_max` that is not in the span of the
/// generator set, comparing `terms` terms.
pub fn span_check(p: &RegularityParams, w: &[i64], e_max: u32, terms: usize) -> Result<Option<KernelIndex>> {
    let need = required_len(p, e_max, terms)?;
    if w.len() < need {
        return Err(Error::IndexOutOfRange { index: need, len: w.len() });
    }
    let mut basis = ExactBasis::new(terms);
    for g in generator_set(p)?.all() {
        basis.add(&g.materialize(w, p.k, terms))?;
    }
    for e in 0..=e_max {
        for j in 0..p.k_pow(e)? as u64 {
            let ix = KernelIndex { e, j };
            if !basis.contains(&Generator::Kernel(ix).materialize(w, p.k, terms))? {
                return Ok(Some(ix));
            }
        }
    }
    Ok(None)
}

/// First `(e, j)` with `e <= e_max`, `j != j_e` and `q_e <= q_E` whose kernel
/// sequence is not periodic with period `k l` from index `q_E + 1` on.
pub fn periodicity_check(p: &RegularityParams, w: &[i64], e_max: u32, terms: usize) -> Result<Option<KernelIndex>> {
    let big_e = p.E()?;
    let q_big_e = p.q_e(big_e)?;
    let start = q_big_e as usize + 1;
    let period = (p.k * p.ell) as usize;
    if terms < start + period {
        return Err(Error::Unsupported(format!("{terms} terms cannot show periodicity from {start}")));
    }
    for e in 0..=e_max {
        if p.q_e(e)? > q_big_e {
            continue;
        }
        let je = p.j_e(e)? as u64;
        for j in (0..p.k_pow(e)? as u64).filter(|&j| j != je) {
            let ix = KernelIndex { e, j };
            let seq = kernel_sequence(w, p.k, ix, terms);
            if (start..terms - period).any(|i| seq[i] != seq[i + period]) {
                return Ok(Some(ix));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_construction() {
        // k = 2, r = 2, s = 1: w(2i + 2) = u(2i), w(2i + 3) = w(i + 1) + d(i).
        let p = RegularityParams::new(2, 1, 2, 1, vec![1], vec![5, 7]).unwrap();
        let w = build_word(&p, &[0, 3], 10).unwrap();
        assert_eq!(w, vec![0, 3, 5, 4, 5, 6, 5, 5, 5, 6]);
        assert!(build_word(&p, &[0], 10).is_err());
    }
}
