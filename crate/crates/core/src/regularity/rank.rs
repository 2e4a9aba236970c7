//! Exact rank of integer sequences truncated to a common length.
//!
//! Two engines:
//!
//! * [`ExactBasis`] keeps rows in integer echelon form: every basis row has a
//!   distinct leading column and is divided by the gcd of its entries. A new
//!   row is reduced by cross-multiplication against each basis row in order
//!   of leading column. Arithmetic is done in `i128` and moves to `BigInt`
//!   for good if an operation would overflow.
//! * [`certified_rank`] works modulo primes. Rows independent modulo a prime
//!   are independent over the rationals, which bounds the rank from below.
//!   If the rank is at most `r` modulo primes whose product exceeds the
//!   Hadamard bound on all `(r + 1)`-minors, every such minor is zero, which
//!   bounds the rank from above.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed};

use crate::error::{Error, Result};

trait Exact: Clone + Integer + Signed + CheckedMul + CheckedSub {}
impl Exact for i128 {}
impl Exact for BigInt {}

#[derive(Debug, Clone)]
struct Echelon<T> {
    // Sorted by leading column.
    rows: Vec<(usize, Vec<T>)>,
}

enum Reduced<T> {
    Zero,
    Leading(usize, Vec<T>),
    Overflow,
}

fn normalize<T: Exact>(row: &mut [T]) {
    let mut g = T::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    // Make the leading entry positive.
    if row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    for x in row.iter_mut() {
        *x = x.div_floor(&g);
    }
}

impl<T: Exact> Echelon<T> {
    fn reduce(&self, mut row: Vec<T>) -> Reduced<T> {
        normalize(&mut row);
        for (lead, b) in &self.rows {
            let x = row[*lead].clone();
            if x.is_zero() {
                continue;
            }
            // row <- row * (p / g) - b * (x / g), with p = b[lead].
            let p = &b[*lead];
            let g = p.gcd(&x);
            let (sr, sb) = (p.div_floor(&g), x.div_floor(&g));
            for (v, bv) in row.iter_mut().zip(b).skip(*lead) {
                let Some(a) = v.checked_mul(&sr) else { return Reduced::Overflow };
                let Some(c) = bv.checked_mul(&sb) else { return Reduced::Overflow };
                let Some(d) = a.checked_sub(&c) else { return Reduced::Overflow };
                *v = d;
            }
            // Entries before `lead` are untouched, so they are zero already
            // for every pivot processed so far.
            for v in row.iter_mut().take(*lead) {
                let Some(a) = v.checked_mul(&sr) else { return Reduced::Overflow };
                *v = a;
            }
            normalize(&mut row);
        }
        match row.iter().position(|x| !x.is_zero()) {
            None => Reduced::Zero,
            Some(lead) => Reduced::Leading(lead, row),
        }
    }

    fn insert(&mut self, lead: usize, row: Vec<T>) {
        let at = self.rows.partition_point(|(l, _)| *l < lead);
        self.rows.insert(at, (lead, row));
    }
}

#[derive(Debug, Clone)]
enum Store {
    Small(Echelon<i128>),
    Big(Echelon<BigInt>),
}

/// Incremental exact row space of integer rows of a fixed length.
#[derive(Debug, Clone)]
pub struct ExactBasis {
    len: usize,
    store: Store,
    seen: HashSet<Vec<i64>>,
    members: Vec<usize>,
    offered: usize,
}

impl ExactBasis {
    pub fn new(len: usize) -> Self {
        Self { len, store: Store::Small(Echelon { rows: Vec::new() }), seen: HashSet::new(), members: Vec::new(), offered: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    pub fn rank(&self) -> usize {
        match &self.store {
            Store::Small(e) => e.rows.len(),
            Store::Big(e) => e.rows.len(),
        }
    }

    /// Offer indices (in call order of [`ExactBasis::add`]) of the rows that
    /// entered the basis.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// True if the arithmetic had to move to arbitrary precision.
    pub fn is_big(&self) -> bool {
        matches!(self.store, Store::Big(_))
    }

    fn check_len(&self, row: &[i64]) -> Result<()> {
        if row.len() != self.len {
            return Err(Error::Unsupported(format!("row of length {} in a basis of length {}", row.len(), self.len)));
        }
        Ok(())
    }

    fn promote(&mut self) {
        if let Store::Small(e) = &self.store {
            let rows = e
                .rows
                .iter()
                .map(|(l, r)| (*l, r.iter().map(|&x| BigInt::from(x)).collect()))
                .collect();
            self.store = Store::Big(Echelon { rows });
        }
    }

    fn reduce_and_maybe_insert(&mut self, row: &[i64], insert: bool) -> bool {
        loop {
            match &mut self.store {
                Store::Small(e) => match e.reduce(row.iter().map(|&x| x as i128).collect()) {
                    Reduced::Zero => return false,
                    Reduced::Leading(lead, r) => {
                        if insert {
                            e.insert(lead, r);
                        }
                        return true;
                    }
                    Reduced::Overflow => self.promote(),
                },
                Store::Big(e) => match e.reduce(row.iter().map(|&x| BigInt::from(x)).collect()) {
                    Reduced::Zero => return false,
                    Reduced::Leading(lead, r) => {
                        if insert {
                            e.insert(lead, r);
                        }
                        return true;
                    }
                    Reduced::Overflow => unreachable!("arbitrary precision cannot overflow"),
                },
            }
        }
    }

    /// Adds `row` if it is independent of the current basis; returns whether
    /// it was added.
    pub fn add(&mut self, row: &[i64]) -> Result<bool> {
        self.check_len(row)?;
        let index = self.offered;
        self.offered += 1;
        if !self.seen.insert(row.to_vec()) {
            return Ok(false);
        }
        let added = self.reduce_and_maybe_insert(row, true);
        if added {
            self.members.push(index);
        }
        Ok(added)
    }

    /// True if `row` lies in the span of the basis.
    pub fn contains(&mut self, row: &[i64]) -> Result<bool> {
        self.check_len(row)?;
        Ok(!self.reduce_and_maybe_insert(row, false))
    }
}

/// Rank of integer rows modulo a prime, with the rows that formed the basis
/// (in input order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModRank {
    pub prime: u64,
    pub rank: usize,
    pub basis_rows: Vec<usize>,
}

/// Gaussian elimination over `Z/pZ`; `p` must be a prime below `2^32`.
pub fn rank_mod<R: AsRef<[i64]>>(rows: &[R], p: u64) -> ModRank {
    assert!(p < 1 << 32, "modulus too large");
    // Basis rows are scaled so that the pivot entry is 1.
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut basis_rows = Vec::new();
    for (t, row) in rows.iter().enumerate() {
        let mut y: Vec<u64> = row.as_ref().iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
        for (piv, b) in &basis {
            let f = y[*piv];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for (v, &bv) in y.iter_mut().zip(b).skip(*piv) {
                *v = (*v + g * bv) % p;
            }
        }
        if let Some(piv) = y.iter().position(|&v| v != 0) {
            let inv = pow_mod(y[piv], p - 2, p);
            for v in y.iter_mut() {
                *v = *v * inv % p;
            }
            basis.push((piv, y));
            basis_rows.push(t);
        }
    }
    ModRank { prime: p, rank: basis.len(), basis_rows }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

// Deterministic for n < 4_759_123_141.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    [2u64, 7, 61].iter().all(|&a| {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 || a % n == 0 {
            return true;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

/// Primes below `2^31`, descending.
pub fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 30..1 << 31).rev().filter(|&n| is_prime(n))
}

/// Square of the Hadamard bound on every `m x m` minor: the product of the
/// `m` largest squared row norms, each row counting only its `m` largest
/// entries.
pub fn hadamard_square<R: AsRef<[i64]>>(rows: &[R], m: usize) -> BigUint {
    let mut norms: Vec<u128> = rows
        .iter()
        .map(|r| {
            let mut sq: Vec<u128> = r.as_ref().iter().map(|&x| (x as i128 * x as i128) as u128).collect();
            sq.sort_unstable_by(|a, b| b.cmp(a));
            sq.iter().take(m).sum()
        })
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    norms.iter().take(m).fold(BigUint::one(), |acc, &n| acc * n)
}

/// Rank with a proof of both bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedRank {
    pub rank: usize,
    /// Rows independent modulo the first prime, forming a rational basis.
    pub basis_rows: Vec<usize>,
    /// Primes used for the upper bound (empty when the rank is the number of
    /// rows or columns).
    pub primes: Vec<u64>,
}

/// Exact rank of integer rows of length `len` (see the module docs).
pub fn certified_rank<R: AsRef<[i64]>>(rows: &[R], len: usize) -> Result<CertifiedRank> {
    if let Some(r) = rows.iter().find(|r| r.as_ref().len() != len) {
        return Err(Error::Unsupported(format!("row of length {} among rows of length {len}", r.as_ref().len())));
    }
    let mut primes_iter = primes();
    let first = rank_mod(rows, primes_iter.next().expect("primes exist"));
    let mut best = first;
    'restart: loop {
        let r = best.rank;
        if r == rows.len() || r == len {
            return Ok(CertifiedRank { rank: r, basis_rows: best.basis_rows, primes: Vec::new() });
        }
        let target = hadamard_square(rows, r + 1);
        let mut product = BigUint::from(best.prime) * best.prime;
        let mut used = vec![best.prime];
        while product <= target {
            let p = primes_iter.next().ok_or_else(|| Error::Unsupported("ran out of primes".into()))?;
            let m = rank_mod(rows, p);
            if m.rank > r {
                best = m;
                continue 'restart;
            }
            product *= BigUint::from(p) * p;
            used.push(p);
        }
        return Ok(CertifiedRank { rank: r, basis_rows: best.basis_rows, primes: used });
    }
}

/// Positions of the first occurrence of each distinct column. Dropping
/// repeated columns leaves the rank unchanged.
pub fn distinct_columns<R: AsRef<[i64]>>(rows: &[R], len: usize) -> Result<Vec<usize>> {
    if let Some(r) = rows.iter().find(|r| r.as_ref().len() != len) {
        return Err(Error::Unsupported(format!("row of length {} among rows of length {len}", r.as_ref().len())));
    }
    let mut seen = HashSet::new();
    Ok((0..len)
        .filter(|&c| seen.insert(rows.iter().map(|r| r.as_ref()[c]).collect::<Vec<_>>()))
        .collect())
}

pub fn project(row: &[i64], columns: &[usize]) -> Vec<i64> {
    columns.iter().map(|&c| row[c]).collect()
}

/// Exact rank of integer rows, all of length `len`.
pub fn rank_of<R: AsRef<[i64]>>(rows: &[R], len: usize) -> Result<usize> {
    let columns = distinct_columns(rows, len)?;
    let projected: Vec<Vec<i64>> = rows.iter().map(|r| project(r.as_ref(), &columns)).collect();
    Ok(certified_rank(&projected, columns.len())?.rank)
}

/// Exact rank of rational rows, each scaled to integers first.
pub fn rank_of_rationals(rows: &[Vec<BigRational>]) -> Result<usize> {
    let len = rows.first().map_or(0, Vec::len);
    let mut ints: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != len {
            return Err(Error::Unsupported("rows of different lengths".into()));
        }
        let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        ints.push(row.iter().map(|x| x.numer() * (&den / x.denom())).collect());
    }
    let mut e: Echelon<BigInt> = Echelon { rows: Vec::new() };
    for row in ints {
        if let Reduced::Leading(lead, r) = e.reduce(row) {
            e.insert(lead, r);
        }
    }
    Ok(e.rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let rows = vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 1, 1, 1], vec![2, 0, 2, 0]];
        assert_eq!(rank_of(&rows, 4).unwrap(), 2);
        let g: Vec<Vec<i64>> = (0..4).map(|m| (0..12).map(|i| i64::from(i % 4 == m)).collect()).collect();
        assert_eq!(rank_of(&g, 12).unwrap(), 4);
        assert_eq!(rank_of::<Vec<i64>>(&[], 3).unwrap(), 0);
        assert!(rank_of(&[vec![1, 2]], 3).is_err());
    }

    #[test]
    fn primes_and_modular_rank() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert_eq!(ps, vec![2147483647, 2147483629, 2147483587]);
        assert!(!is_prime(2147483649));
        // Independent over Q, dependent modulo 3.
        let rows = vec![vec![1, 1], vec![1, 4]];
        assert_eq!(rank_mod(&rows, 3).rank, 1);
        assert_eq!(rank_mod(&rows, 2147483647).rank, 2);
    }

    #[test]
    fn certified_matches_exact_basis() {
        // Rank 3 in a 5 x 6 matrix with entries large enough to need primes.
        let a = [3i64, -1, 4, 1, -5, 9];
        let b = [2i64, 6, -5, 3, 5, -8];
        let c = [9i64, 7, 9, 3, -2, 3];
        let comb = |x: i64, y: i64, z: i64| -> Vec<i64> { (0..6).map(|t| x * a[t] + y * b[t] + z * c[t]).collect() };
        let rows = vec![comb(1, 0, 0), comb(2, -3, 0), comb(1, 1, 1), comb(0, 0, 7), comb(-4, 5, 11)];
        let cert = certified_rank(&rows, 6).unwrap();
        assert_eq!(cert.rank, 3);
        assert!(!cert.primes.is_empty());
        let mut e = ExactBasis::new(6);
        for r in &rows {
            e.add(r).unwrap();
        }
        assert_eq!(e.rank(), 3);
        assert_eq!(cert.basis_rows, vec![0, 1, 2]);
    }

    #[test]
    fn column_compression() {
        let rows = vec![vec![1, 2, 1, 2, 3], vec![4, 0, 4, 0, 4]];
        assert_eq!(distinct_columns(&rows, 5).unwrap(), vec![0, 1, 4]);
        assert_eq!(project(&rows[1], &[0, 1, 4]), vec![4, 0, 4]);
    }

    #[test]
    fn members_and_membership() {
        let mut b = ExactBasis::new(3);
        assert!(b.add(&[0, 2, 4]).unwrap());
        assert!(!b.add(&[0, 1, 2]).unwrap());
        assert!(!b.add(&[0, 2, 4]).unwrap());
        assert!(b.add(&[1, 0, 0]).unwrap());
        assert_eq!(b.members(), &[0, 3]);
        assert!(b.contains(&[3, -1, -2]).unwrap());
        assert!(!b.contains(&[0, 0, 1]).unwrap());
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn overflow_moves_to_big_integers() {
        // Rows with huge entries force products beyond i128.
        let big = i64::MAX / 3;
        let rows = vec![
            vec![big, big - 1, 7, 1],
            vec![big - 5, big, 3, 2],
            vec![big - 7, big - 2, 1, big],
            vec![2 * (big - 5) - big, 2 * big - (big - 1), -1, 3],
        ];
        let mut b = ExactBasis::new(4);
        for r in &rows {
            b.add(r).unwrap();
        }
        assert_eq!(b.rank(), 3);
        assert!(b.is_big());
    }
}
