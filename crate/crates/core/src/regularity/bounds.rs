//! Upper bounds on the rank from counting generators.

use num_rational::Ratio;

use crate::error::Result;
use crate::morphic::access::{background, Column, BACKGROUND_START};
use crate::morphic::canonical::P_LEN;
use crate::regularity::RegularityParams;

/// The count behind the general spanning set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCount {
    /// `sum_{e < E} k^e`.
    pub kernel: u128,
    /// `k l`.
    pub periodic: u64,
    /// `q_E + 1`.
    pub one_hot: u64,
    /// `E + 1`, or `E' + 1` in the integral case.
    pub self_similar: u64,
    /// `k l` shifted sequences in the integral case, else 0.
    pub shifted: u64,
}

impl GeneratorCount {
    pub fn total(&self) -> u128 {
        self.kernel + u128::from(self.periodic + self.one_hot + self.self_similar + self.shifted)
    }
}

pub fn generator_count(p: &RegularityParams) -> Result<GeneratorCount> {
    let big_e = p.E()?;
    let kernel = (0..big_e).map(|e| p.k_pow(e).map(|v| v as u128)).sum::<Result<u128>>()?;
    let (self_similar, shifted) = match p.E_prime()? {
        Some(e) => (u64::from(e) + 1, p.k * p.ell),
        None => (u64::from(big_e) + 1, 0),
    };
    Ok(GeneratorCount {
        kernel,
        periodic: p.k * p.ell,
        one_hot: p.q_e(big_e)? as u64 + 1,
        self_similar,
        shifted,
    })
}

/// The sharper count available when the background columns of the word
/// are known: a shorter preperiod and a smaller periodic basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedCount {
    /// Period of the background columns.
    pub periodic: u64,
    /// `R / (k (k - 1)) + (prefix_len - 2 - s) / k`, approached from below.
    pub preperiod_limit: Ratio<i128>,
    /// `floor(preperiod_limit) + 1`, the number of one-hot generators.
    pub one_hot: u64,
    /// `E + 1`.
    pub self_similar: u64,
    /// Pairs `(e, j)`, `e < E`, `j != j_e`, covered by the finite check.
    pub checked_pairs: u64,
    /// First pair for which `f_{e,h,j}(preperiod) + s < prefix_len - 2`.
    pub failure: Option<(u32, i128)>,
}

impl RefinedCount {
    pub fn total(&self) -> u64 {
        self.periodic + self.one_hot + self.self_similar
    }
}

/// Smallest period (a multiple of 6) of the non-recursive background
/// columns of `w_{5/4}`.
pub fn background_period() -> Result<u64> {
    let span = 240u64;
    let value = |q: u64, m: u8| -> Result<Option<u32>> {
        Ok(match background(q, m)? {
            Column::Value(v) => Some(v),
            Column::Recursive => None,
        })
    };
    'period: for rows in 1..=span / 2 {
        for q in BACKGROUND_START..BACKGROUND_START + span {
            for m in 0..6 {
                if value(q, m)? != value(q + rows, m)? {
                    continue 'period;
                }
            }
        }
        return Ok(6 * rows);
    }
    unreachable!("background columns are periodic")
}

/// The refined count for parameters whose word starts with a prefix of
/// length `prefix_len` after which the background is `periodic`-periodic.
pub fn refined_count(p: &RegularityParams, prefix_len: u64, periodic: u64) -> Result<RefinedCount> {
    let k = p.k as i128;
    let s = p.s as i128;
    let floor_target = prefix_len as i128 - 2;
    let limit = Ratio::new(p.big_r(), k * (k - 1)) + Ratio::new(floor_target - s, k);
    let preperiod = limit.floor().to_integer() + 1;
    let big_e = p.E()?;
    let mut checked_pairs = 0;
    let mut failure = None;
    'outer: for e in 0..big_e {
        let je = p.j_e(e)?;
        for j in 0..p.k_pow(e)? {
            if j == je {
                continue;
            }
            checked_pairs += 1;
            let h = p.agreement_depth(e, j)?;
            // f is increasing in i, so the smallest i decides.
            if p.f_eval(e, h, j, preperiod)? + Ratio::from_integer(s) < Ratio::from_integer(floor_target) {
                failure = Some((e, j));
                break 'outer;
            }
        }
    }
    Ok(RefinedCount {
        periodic,
        preperiod_limit: limit,
        one_hot: preperiod as u64,
        self_similar: u64::from(big_e) + 1,
        checked_pairs,
        failure,
    })
}

/// Both bounds for `w_{5/4}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub general: GeneratorCount,
    pub refined: RefinedCount,
}

pub fn rank_bound_report(p: &RegularityParams) -> Result<BoundReport> {
    Ok(BoundReport {
        general: generator_count(p)?,
        refined: refined_count(p, P_LEN as u64, background_period()?)?,
    })
}
