//! Sparse matrices with exact rational entries and exact rank
//! computation, cross-checked modulo a prime.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub const DEFAULT_PRIME: u64 = 32003;

/// Column count below which the dense fraction-free elimination is used.
pub const DENSE_THRESHOLD: usize = 500;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum MatrixError {
    #[error("rank over Q ({q}) disagrees with rank mod {p} ({modp})")]
    RankMismatch { q: usize, modp: usize, p: u64 },
    #[error("denominator divisible by the checking prime {0}")]
    BadPrime(u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    entries: BTreeMap<(u32, u32), BigRational>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, r: usize, c: usize, v: BigRational) {
        assert!(r < self.nrows && c < self.ncols);
        if v.is_zero() {
            return;
        }
        let e = self
            .entries
            .entry((r as u32, c as u32))
            .or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r as u32, c as u32));
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.entries
            .get(&(r as u32, c as u32))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries
            .iter()
            .map(|(&(r, c), v)| (r as usize, c as usize, v))
    }

    /// Exact rank over Q: dense fraction-free elimination for small
    /// matrices, sparse elimination with Markowitz-style pivoting above
    /// [`DENSE_THRESHOLD`] columns.
    pub fn rank_q(&self) -> usize {
        if self.ncols <= DENSE_THRESHOLD && self.nrows <= DENSE_THRESHOLD {
            self.rank_dense_bareiss()
        } else {
            self.rank_sparse_q()
        }
    }

    fn rank_dense_bareiss(&self) -> usize {
        // clear denominators row by row; rank is unchanged
        let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        let mut lcm_by_row: Vec<BigInt> = vec![BigInt::one(); self.nrows];
        for (&(r, _), v) in &self.entries {
            let l = &lcm_by_row[r as usize];
            lcm_by_row[r as usize] = l.lcm(v.denom());
        }
        for (&(r, c), v) in &self.entries {
            m[r as usize][c as usize] = v.numer() * (&lcm_by_row[r as usize] / v.denom());
        }
        let (rows, cols) = (self.nrows, self.ncols);
        let mut rank = 0usize;
        let mut prev = BigInt::one();
        let mut row = 0usize;
        for col in 0..cols {
            // find pivot
            let piv = (row..rows).find(|&r| !m[r][col].is_zero());
            let Some(piv) = piv else { continue };
            m.swap(row, piv);
            for r in row + 1..rows {
                for c in col + 1..cols {
                    let t = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                    m[r][c] = &t / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[row][col].clone();
            rank += 1;
            row += 1;
            if row == rows {
                break;
            }
        }
        rank
    }

    fn rank_sparse_q(&self) -> usize {
        let mut rows: Vec<BTreeMap<u32, BigRational>> = vec![BTreeMap::new(); self.nrows];
        let mut col_count: Vec<usize> = vec![0; self.ncols];
        for (&(r, c), v) in &self.entries {
            rows[r as usize].insert(c, v.clone());
            col_count[c as usize] += 1;
        }
        let mut rank = 0usize;
        let mut active: Vec<usize> = (0..self.nrows).filter(|&r| !rows[r].is_empty()).collect();
        while !active.is_empty() {
            // Markowitz-style: pick the nonzero entry minimizing
            // (row_nnz - 1) * (col_nnz - 1)
            let mut best: Option<(usize, u32, u128)> = None;
            for &r in &active {
                let rn = rows[r].len() as u128;
                for (&c, _) in &rows[r] {
                    let score = (rn - 1) * (col_count[c as usize] as u128 - 1);
                    if best.as_ref().map_or(true, |&(_, _, s)| score < s) {
                        best = Some((r, c, score));
                        if score == 0 {
                            break;
                        }
                    }
                }
                if matches!(best, Some((_, _, 0))) {
                    break;
                }
            }
            let (pr, pc, _) = best.expect("active rows are nonempty");
            rank += 1;
            let prow = std::mem::take(&mut rows[pr]);
            for (&c, _) in &prow {
                col_count[c as usize] -= 1;
            }
            let pval = prow[&pc].clone();
            active.retain(|&r| r != pr);
            let mut still = Vec::with_capacity(active.len());
            for &r in &active {
                if let Some(f) = rows[r].get(&pc).cloned() {
                    let scale = -&f / &pval;
                    for (&c, v) in &prow {
                        let old_present = rows[r].contains_key(&c);
                        let e = rows[r].entry(c).or_insert_with(BigRational::zero);
                        *e += v * &scale;
                        let now_present = !e.is_zero();
                        if !now_present {
                            rows[r].remove(&c);
                        }
                        match (old_present, now_present) {
                            (false, true) => col_count[c as usize] += 1,
                            (true, false) => col_count[c as usize] -= 1,
                            _ => {}
                        }
                    }
                    debug_assert!(!rows[r].contains_key(&pc));
                }
                if !rows[r].is_empty() {
                    still.push(r);
                }
            }
            active = still;
        }
        rank
    }

    /// Rank over F_p. Fails if any denominator vanishes mod p.
    pub fn rank_mod_p(&self, p: u64) -> Result<usize, MatrixError> {
        let pb = BigInt::from(p);
        let to_fp = |v: &BigRational| -> Result<u64, MatrixError> {
            let num = ((v.numer() % &pb) + &pb) % &pb;
            let den = ((v.denom() % &pb) + &pb) % &pb;
            let den: u64 = den.try_into().expect("reduced mod p");
            if den == 0 {
                return Err(MatrixError::BadPrime(p));
            }
            let num: u64 = num.try_into().expect("reduced mod p");
            Ok(mul_mod(num, inv_mod(den, p), p))
        };
        let mut rows: Vec<BTreeMap<u32, u64>> = vec![BTreeMap::new(); self.nrows];
        for (&(r, c), v) in &self.entries {
            let x = to_fp(v)?;
            if x != 0 {
                rows[r as usize].insert(c, x);
            }
        }
        let mut rank = 0usize;
        let mut active: Vec<usize> = (0..self.nrows).filter(|&r| !rows[r].is_empty()).collect();
        while !active.is_empty() {
            // pick the sparsest row
            let (ai, &pr) = active
                .iter()
                .enumerate()
                .min_by_key(|(_, &r)| rows[r].len())
                .unwrap();
            active.swap_remove(ai);
            let prow = std::mem::take(&mut rows[pr]);
            let (&pc, &pval) = prow.iter().next().unwrap();
            rank += 1;
            let pinv = inv_mod(pval, p);
            let mut still = Vec::with_capacity(active.len());
            for &r in &active {
                if let Some(&f) = rows[r].get(&pc) {
                    let scale = p - mul_mod(f, pinv, p);
                    for (&c, &v) in &prow {
                        let add = mul_mod(v, scale, p);
                        let e = rows[r].entry(c).or_insert(0);
                        *e = (*e + add) % p;
                        if *e == 0 {
                            rows[r].remove(&c);
                        }
                    }
                }
                if !rows[r].is_empty() {
                    still.push(r);
                }
            }
            active = still;
        }
        Ok(rank)
    }

    /// Exact rank with a modular cross-check; a mismatch is a hard error.
    pub fn rank_checked(&self, p: u64) -> Result<usize, MatrixError> {
        let q = self.rank_q();
        let modp = self.rank_mod_p(p)?;
        // rank mod p can only drop below the rational rank
        if modp != q {
            return Err(MatrixError::RankMismatch { q, modp, p });
        }
        Ok(q)
    }

    /// Matrix Market coordinate format, with the nonstandard field
    /// `rational`: entries are written exactly as `p/q` strings.
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::new();
        s.push_str("%%MatrixMarket matrix coordinate rational general\n");
        s.push_str("% entries are exact rationals written as p/q\n");
        let _ = writeln!(s, "{} {} {}", self.nrows, self.ncols, self.nnz());
        for (&(r, c), v) in &self.entries {
            let _ = writeln!(s, "{} {} {}/{}", r + 1, c + 1, v.numer(), v.denom());
        }
        s
    }

    pub fn from_matrix_market(text: &str) -> Option<SparseMatrix> {
        let mut lines = text.lines().filter(|l| !l.starts_with('%'));
        let head = lines.next()?;
        let dims: Vec<usize> = head
            .split_whitespace()
            .map(|x| x.parse().ok())
            .collect::<Option<_>>()?;
        let [nrows, ncols, nnz] = dims[..] else { return None };
        let mut m = SparseMatrix::new(nrows, ncols);
        let mut count = 0;
        for line in lines {
            let mut it = line.split_whitespace();
            let r: usize = it.next()?.parse().ok()?;
            let c: usize = it.next()?.parse().ok()?;
            let val = it.next()?;
            let (num, den) = val.split_once('/').unwrap_or((val, "1"));
            let v = BigRational::new(num.parse().ok()?, den.parse().ok()?);
            m.add(r - 1, c - 1, v);
            count += 1;
        }
        (count == nnz).then_some(m)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: p prime
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.add(r, c, rat(v, 1));
            }
        }
        m
    }

    #[test]
    fn small_ranks() {
        assert_eq!(from_dense(&[&[1, 2], &[2, 4]]).rank_q(), 1);
        assert_eq!(from_dense(&[&[1, 2], &[3, 4]]).rank_q(), 2);
        assert_eq!(from_dense(&[&[0, 0], &[0, 0]]).rank_q(), 0);
        // rank 2 with cancellation-prone entries
        let m = from_dense(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(m.rank_q(), 2);
        assert_eq!(m.rank_checked(DEFAULT_PRIME).unwrap(), 2);
    }

    #[test]
    fn rational_entries() {
        let mut m = SparseMatrix::new(2, 2);
        m.add(0, 0, rat(1, 2));
        m.add(0, 1, rat(1, 3));
        m.add(1, 0, rat(3, 2));
        m.add(1, 1, rat(1, 1));
        assert_eq!(m.rank_q(), 1);
        assert_eq!(m.rank_mod_p(DEFAULT_PRIME).unwrap(), 1);
    }

    #[test]
    fn sparse_and_dense_agree() {
        let m = from_dense(&[
            &[1, 0, 2, 0, 3],
            &[0, 1, 0, 4, 0],
            &[1, 1, 2, 4, 3],
            &[0, 0, 0, 0, 7],
        ]);
        assert_eq!(m.rank_dense_bareiss(), 3);
        assert_eq!(m.rank_sparse_q(), 3);
        assert_eq!(m.rank_mod_p(DEFAULT_PRIME).unwrap(), 3);
    }

    #[test]
    fn matrix_market_roundtrip() {
        let mut m = SparseMatrix::new(3, 2);
        m.add(0, 1, rat(-5, 3));
        m.add(2, 0, rat(7, 1));
        let text = m.to_matrix_market();
        assert!(text.starts_with("%%MatrixMarket matrix coordinate rational general"));
        assert_eq!(SparseMatrix::from_matrix_market(&text).unwrap(), m);
    }

    proptest! {
        /// dense and sparse exact ranks and the modular rank agree on
        /// random small integer matrices
        #[test]
        fn rank_engines_agree(vals in proptest::collection::vec(-4i64..=4, 30)) {
            let mut m = SparseMatrix::new(5, 6);
            for (i, &v) in vals.iter().enumerate() {
                m.add(i / 6, i % 6, rat(v, 1));
            }
            let d = m.rank_dense_bareiss();
            prop_assert_eq!(m.rank_sparse_q(), d);
            prop_assert_eq!(m.rank_mod_p(DEFAULT_PRIME).unwrap(), d);
        }
    }
}
