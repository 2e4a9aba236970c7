//! Spanning families for the kernel.

use std::fmt;

use crate::error::Result;
use crate::regularity::kernel::{kernel_sequence, IndexedSequence};
use crate::regularity::{KernelIndex, RegularityParams};

/// One generating sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `w(k^e i + j)`.
    Kernel(KernelIndex),
    /// `1` when `i = residue (mod period)`, else `0`.
    Periodic { period: u64, residue: u64 },
    /// `v_m`: `1` at `i = m`, else `0`.
    OneHot(u64),
    /// The periodic indicator with its first term replaced by `0`.
    Shifted { period: u64, residue: u64 },
}

impl Generator {
    pub fn term<S: IndexedSequence + ?Sized>(&self, w: &S, k: u64, i: u64) -> i64 {
        match *self {
            Generator::Kernel(ix) => w.at(k.pow(ix.e) * i + ix.j),
            Generator::Periodic { period, residue } => i64::from(i % period == residue),
            Generator::OneHot(m) => i64::from(i == m),
            Generator::Shifted { period, residue } => i64::from(i > 0 && i % period == residue),
        }
    }

    pub fn materialize<S: IndexedSequence + ?Sized>(&self, w: &S, k: u64, len: usize) -> Vec<i64> {
        match *self {
            Generator::Kernel(ix) => kernel_sequence(w, k, ix, len),
            _ => (0..len as u64).map(|i| self.term(w, k, i)).collect(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Kernel(ix) => write!(f, "w(k^{} i + {})", ix.e, ix.j),
            Generator::Periodic { period, residue } => write!(f, "g[{period}]_{residue}"),
            Generator::OneHot(m) => write!(f, "v_{m}"),
            Generator::Shifted { period, residue } => write!(f, "shift(g[{period}]_{residue})"),
        }
    }
}

/// `G_m`: the standard basis of sequences with period `m`.
pub fn periodic_basis(m: u64) -> Vec<Generator> {
    (0..m).map(|residue| Generator::Periodic { period: m, residue }).collect()
}

/// `H_m = {v_0, ..., v_{m-1}}`.
pub fn one_hot(m: u64) -> Vec<Generator> {
    (0..m).map(Generator::OneHot).collect()
}

/// `G_m` with every sequence right-shifted after dropping its first term.
pub fn shifted_basis(m: u64) -> Vec<Generator> {
    (0..m).map(|residue| Generator::Shifted { period: m, residue }).collect()
}

/// The finite spanning set for the kernel, family by family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    /// All `w(k^e i + j)` with `e < E`.
    pub kernel: Vec<KernelIndex>,
    /// `G_{k l}`.
    pub periodic: Vec<Generator>,
    /// `H_{q_E + 1}`.
    pub one_hot: Vec<Generator>,
    /// `w(k^e i + j_e)` for `e <= E`, or `e <= E'` in the integral case.
    pub self_similar: Vec<KernelIndex>,
    /// Shifted `G_{k l}`, only in the integral case.
    pub shifted: Vec<Generator>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.kernel.len() + self.periodic.len() + self.one_hot.len() + self.self_similar.len() + self.shifted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn all(&self) -> Vec<Generator> {
        self.kernel
            .iter()
            .map(|&ix| Generator::Kernel(ix))
            .chain(self.periodic.iter().copied())
            .chain(self.one_hot.iter().copied())
            .chain(self.self_similar.iter().map(|&ix| Generator::Kernel(ix)))
            .chain(self.shifted.iter().copied())
            .collect()
    }
}

/// Builds the spanning set. Materializing it is the caller's choice; for
/// large parameters only the counts are practical.
pub fn generator_set(p: &RegularityParams) -> Result<GeneratorSet> {
    let big_e = p.E()?;
    let kl = p.k * p.ell;
    let q_big_e = p.q_e(big_e)? as u64;
    let mut kernel = Vec::new();
    for e in 0..big_e {
        for j in 0..p.k_pow(e)? as u64 {
            kernel.push(KernelIndex { e, j });
        }
    }
    let top = match p.E_prime()? {
        Some(e) => e,
        None => big_e,
    };
    let self_similar = (0..=top)
        .map(|e| Ok(KernelIndex { e, j: p.j_e(e)? as u64 }))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet {
        kernel,
        periodic: periodic_basis(kl),
        one_hot: one_hot(q_big_e + 1),
        self_similar,
        shifted: if p.integral_case() { shifted_basis(kl) } else { Vec::new() },
    })
}

/// The families used to pin down the exact rank: `V` holds the kernel
/// indices with `e <= e_max` and `j != j_e`, `W` the indices `(e, j_e)`, and
/// `extra` is `(e_max + 1, j_{e_max})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFamilies {
    pub v: Vec<KernelIndex>,
    pub w: Vec<KernelIndex>,
    pub extra: KernelIndex,
}

pub fn rank_families(p: &RegularityParams, e_max: u32) -> Result<RankFamilies> {
    let mut v = Vec::new();
    let mut w = Vec::new();
    for e in 0..=e_max {
        let je = p.j_e(e)? as u64;
        for j in 0..p.k_pow(e)? as u64 {
            if j == je {
                w.push(KernelIndex { e, j });
            } else {
                v.push(KernelIndex { e, j });
            }
        }
    }
    let extra = KernelIndex { e: e_max + 1, j: p.j_e(e_max)? as u64 };
    Ok(RankFamilies { v, w, extra })
}
