//! k-regularity of sequences with a self-similar column.
//!
//! A sequence satisfies the recurrence handled here when, for all `i >= 0`
//! and `0 <= m < k`,
//!
//! ```text
//! w(k i + r + m) = u(k i + m)          for m < k - 1
//! w(k i + r + k - 1) = w(i + s) + d(i)
//! ```
//!
//! with `d` periodic of period `l` and `u` periodic of period `k l`.

pub mod bounds;
pub mod dimension;
pub mod generators;
pub mod kernel;
pub mod rank;
pub mod recurrence;
pub mod relations;
pub mod synthetic;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// `(e, j)` naming the kernel sequence `w(k^e i + j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KernelIndex {
    pub e: u32,
    pub j: u64,
}

impl KernelIndex {
    pub fn new(k: u64, e: u32, j: u64) -> Result<Self> {
        let ke = pow(k, e)?;
        if j >= ke as u64 {
            return Err(Error::Unsupported(format!("kernel index j = {j} not below {k}^{e}")));
        }
        Ok(Self { e, j })
    }
}

fn pow(k: u64, e: u32) -> Result<i128> {
    (k as i128)
        .checked_pow(e)
        .filter(|&v| v <= i64::MAX as i128)
        .ok_or_else(|| Error::Unsupported(format!("{k}^{e} overflows")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityParams {
    pub k: u64,
    pub ell: u64,
    pub r: u64,
    pub s: u64,
    /// One period of `d`, of length `ell`.
    pub d: Vec<i64>,
    /// One period of `u`, of length `k * ell`.
    pub u: Vec<i64>,
}

impl RegularityParams {
    pub fn new(k: u64, ell: u64, r: u64, s: u64, d: Vec<i64>, u: Vec<i64>) -> Result<Self> {
        if k < 2 || ell < 1 {
            return Err(Error::Unsupported(format!("need k >= 2 and l >= 1, got k = {k}, l = {ell}")));
        }
        if d.len() as u64 != ell || u.len() as u64 != k * ell {
            return Err(Error::Unsupported(format!(
                "d must have length {ell} and u length {}, got {} and {}",
                k * ell,
                d.len(),
                u.len()
            )));
        }
        if r + k - 1 < s {
            return Err(Error::Unsupported(format!("r - s + k - 1 must be nonnegative (r = {r}, s = {s})")));
        }
        Ok(Self { k, ell, r, s, d, u })
    }

    pub fn d_at(&self, i: i128) -> i64 {
        self.d[i.rem_euclid(self.ell as i128) as usize]
    }

    pub fn u_at(&self, i: i128) -> i64 {
        self.u[i.rem_euclid((self.k * self.ell) as i128) as usize]
    }

    /// `r - s + k - 1`.
    pub fn big_r(&self) -> i128 {
        self.r as i128 - self.s as i128 + self.k as i128 - 1
    }

    /// `(r - s + k - 1) / (k - 1)`, the limit of `Q_e`.
    pub fn limit(&self) -> Ratio<i128> {
        Ratio::new(self.big_r(), self.k as i128 - 1)
    }

    pub fn k_pow(&self, e: u32) -> Result<i128> {
        pow(self.k, e)
    }

    /// `(k^e - 1) / (k - 1) * (r - s + k - 1) + s`.
    pub fn j_star(&self, e: u32) -> Result<i128> {
        let geometric = (self.k_pow(e)? - 1) / (self.k as i128 - 1);
        geometric
            .checked_mul(self.big_r())
            .and_then(|v| v.checked_add(self.s as i128))
            .ok_or_else(|| Error::Unsupported(format!("j*_{e} overflows")))
    }

    pub fn q_e(&self, e: u32) -> Result<i128> {
        Ok(self.j_star(e)?.div_euclid(self.k_pow(e)?))
    }

    pub fn j_e(&self, e: u32) -> Result<i128> {
        Ok(self.j_star(e)?.rem_euclid(self.k_pow(e)?))
    }

    #[allow(non_snake_case)]
    pub fn Q_e(&self, e: u32) -> Result<Ratio<i128>> {
        Ok(Ratio::new(self.j_star(e)?, self.k_pow(e)?))
    }

    /// The eventual value of `q_e`.
    pub fn q_limit(&self) -> i128 {
        let lim = self.limit();
        if !lim.is_integer() {
            return lim.floor().to_integer();
        }
        // Q_e = L + (s - L) k^-e approaches the integer L from one side.
        let l = lim.to_integer();
        if self.s as i128 >= l {
            l
        } else {
            l - 1
        }
    }

    /// Smallest `E` with `q_e = q_E` for all `e >= E`.
    #[allow(non_snake_case)]
    pub fn E(&self) -> Result<u32> {
        let target = self.q_limit();
        // q_e is monotone in e, so the first hit is final.
        (0..64).find(|&e| self.q_e(e).map(|q| q == target).unwrap_or(false)).ok_or_else(|| {
            Error::Unsupported("q_e does not settle before overflow".into())
        })
    }

    /// True when `(r - s)/(k - 1)` is an integer and `q_e` settles on the limit
    /// itself, so the self-similar kernel indices become constant.
    pub fn integral_case(&self) -> bool {
        let lim = self.limit();
        lim.is_integer() && self.q_limit() == lim.to_integer()
    }

    /// Smallest `e` with `q_e` equal to the integral limit `L` and `k^e >= L`
    /// (so that `k^e i - L >= 0` for `i >= 1`); `None` outside the integral case.
    #[allow(non_snake_case)]
    pub fn E_prime(&self) -> Result<Option<u32>> {
        if !self.integral_case() {
            return Ok(None);
        }
        let l = self.limit().to_integer();
        for e in 0..64 {
            if self.q_e(e)? == l && self.k_pow(e)? >= l {
                return Ok(Some(e));
            }
        }
        Err(Error::Unsupported("E' not found before overflow".into()))
    }

    /// The constant `j_e = s - L` of the integral case.
    #[allow(non_snake_case)]
    pub fn J(&self) -> Option<i128> {
        self.integral_case().then(|| self.s as i128 - self.limit().to_integer())
    }

    /// The number of times the self-similar case of the recurrence can be
    /// applied to `w(k^e i + j_e)` for every `i >= 0`:
    /// `e + floor(log_k(1 - q_e (k - 1) / (r - s + k - 1)))`.
    ///
    /// `None` when the logarithm's argument is not positive.
    pub fn h_e(&self, e: u32) -> Result<Option<i64>> {
        let big_r = self.big_r();
        let rest = big_r - self.q_e(e)? * (self.k as i128 - 1);
        if rest <= 0 || big_r == 0 {
            return Ok(None);
        }
        // floor(log_k(rest / R)) = -m with m minimal such that R <= k^m rest.
        let mut m = 0i64;
        let mut scaled = rest;
        while scaled < big_r {
            scaled *= self.k as i128;
            m += 1;
        }
        Ok(Some(e as i64 - m))
    }

    /// `f_{e,t,j}(i) = k^{e-t} i + (j - s)/k^t - (k^t - 1)/(k^t (k - 1)) (r - s + k - 1)`.
    pub fn f_eval(&self, e: u32, t: u32, j: i128, i: i128) -> Result<Ratio<i128>> {
        if t > e {
            return Err(Error::Unsupported(format!("f needs t <= e, got t = {t}, e = {e}")));
        }
        let kt = self.k_pow(t)?;
        let head = Ratio::from_integer(self.k_pow(e - t)? * i);
        let mid = Ratio::new(j - self.s as i128, kt);
        let tail = Ratio::new((kt - 1) * self.big_r(), kt * (self.k as i128 - 1));
        Ok(head + mid - tail)
    }

    /// Largest `h <= e` with `j = j_e (mod k^h)`.
    pub fn agreement_depth(&self, e: u32, j: i128) -> Result<u32> {
        let je = self.j_e(e)?;
        let mut h = 0;
        while h < e && (j - je).rem_euclid(self.k_pow(h + 1)?) == 0 {
            h += 1;
        }
        Ok(h)
    }
}

/// Parameters of the self-similar column of `w_{5/4}`.
pub fn five_fourths() -> RegularityParams {
    use crate::morphic::table::{PHI, TYPES};
    use crate::word::SubLetter;
    let background: Vec<i64> = (0..TYPES as u8)
        .flat_map(|j| PHI.apply_letter(SubLetter::new(0, j)))
        .map(|a| a.value as i64)
        .collect();
    let d = PHI.increments().iter().map(|&x| x as i64).collect();
    RegularityParams::new(6, 8, 123056, 5920, d, background).expect("valid parameters")
}

/// Exact integer value of a rational that must be integral.
pub fn integral(x: Ratio<i128>) -> Result<i128> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Invariant(format!("expected an integer, got {x}")))
    }
}
