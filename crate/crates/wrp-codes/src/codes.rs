//! Generic GF(3) linear-code machinery: generator matrices, weight
//! distributions, duals, self-orthogonality, LCD tests, Pless power moments
//! and the sphere-packing bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

use crate::field::Gf3;

/// Codeword enumeration is capped at this dimension (3^20 messages).
pub const MAX_ENUMERATION_DIMENSION: usize = 20;

const SYMBOLS_PER_WORD: usize = 32;
const LANE_MASK: u64 = 0x5555_5555_5555_5555;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("dimension {0} exceeds the enumeration cap {MAX_ENUMERATION_DIMENSION}")]
    DimensionTooLarge(usize),
    #[error("matrix rows must all have length {expected}, found {found}")]
    RaggedRows { expected: usize, found: usize },
    #[error("matrix entry {0} is not in {{0,1,2}}")]
    BadEntry(u8),
    #[error("cannot parse matrix file: {0}")]
    BadMatrixFile(String),
}

fn add_table() -> &'static [[u8; 256]; 256] {
    static TABLE: OnceLock<Box<[[u8; 256]; 256]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u8; 256]; 256]);
        for a in 0..256usize {
            for b in 0..256usize {
                let mut out = 0u8;
                for lane in 0..4 {
                    let x = (a >> (2 * lane)) & 3;
                    let y = (b >> (2 * lane)) & 3;
                    out |= (((x + y) % 3) as u8) << (2 * lane);
                }
                t[a][b] = out;
            }
        }
        t
    })
}

fn double_table() -> &'static [u8; 256] {
    static TABLE: OnceLock<[u8; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0u8; 256];
        for (a, slot) in t.iter_mut().enumerate() {
            let mut out = 0u8;
            for lane in 0..4 {
                let x = (a >> (2 * lane)) & 3;
                out |= (((2 * x) % 3) as u8) << (2 * lane);
            }
            *slot = out;
        }
        t
    })
}

fn word_add(a: u64, b: u64) -> u64 {
    let t = add_table();
    let (xa, xb) = (a.to_le_bytes(), b.to_le_bytes());
    let mut out = [0u8; 8];
    for i in 0..8 {
        out[i] = t[xa[i] as usize][xb[i] as usize];
    }
    u64::from_le_bytes(out)
}

fn word_double(a: u64) -> u64 {
    let t = double_table();
    let xa = a.to_le_bytes();
    let mut out = [0u8; 8];
    for i in 0..8 {
        out[i] = t[xa[i] as usize];
    }
    u64::from_le_bytes(out)
}

fn words_nonzero_lanes(words: &[u64]) -> u64 {
    words
        .iter()
        .map(|&w| ((w | (w >> 1)) & LANE_MASK).count_ones() as u64)
        .sum()
}

/// A dense matrix over GF(3), rows packed two bits per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf3Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf3Matrix {
    pub fn zero(rows: usize, cols: usize) -> Gf3Matrix {
        let words_per_row = cols.div_ceil(SYMBOLS_PER_WORD).max(1);
        Gf3Matrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Gf3Matrix, CodeError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Gf3Matrix::zero(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(CodeError::RaggedRows {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v > 2 {
                    return Err(CodeError::BadEntry(v));
                }
                m.set(r, c, Gf3::new(v as i64));
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Gf3Matrix {
        let mut m = Gf3Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Gf3::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Gf3 {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.data[r * self.words_per_row + c / SYMBOLS_PER_WORD];
        Gf3::new(((w >> (2 * (c % SYMBOLS_PER_WORD))) & 3) as i64)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Gf3) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / SYMBOLS_PER_WORD;
        let shift = 2 * (c % SYMBOLS_PER_WORD);
        self.data[idx] = (self.data[idx] & !(3 << shift)) | ((v.value() as u64) << shift);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    pub fn row(&self, r: usize) -> Vec<Gf3> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    pub fn row_weight(&self, r: usize) -> u64 {
        words_nonzero_lanes(self.row_words(r))
    }

    /// dst += c * src, in place.
    fn row_add_scaled(&mut self, dst: usize, src: usize, c: Gf3) {
        if c.is_zero() {
            return;
        }
        let wpr = self.words_per_row;
        let (dst_off, src_off) = (dst * wpr, src * wpr);
        for i in 0..wpr {
            let mut s = self.data[src_off + i];
            if c == Gf3::TWO {
                s = word_double(s);
            }
            self.data[dst_off + i] = word_add(self.data[dst_off + i], s);
        }
    }

    fn row_scale(&mut self, r: usize, c: Gf3) {
        if c == Gf3::TWO {
            let wpr = self.words_per_row;
            for i in 0..wpr {
                self.data[r * wpr + i] = word_double(self.data[r * wpr + i]);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for i in 0..wpr {
            self.data.swap(a * wpr + i, b * wpr + i);
        }
    }

    /// Gaussian elimination with deterministic pivoting (first nonzero entry
    /// in column order). Returns (rank, reduced row echelon form, pivots).
    pub fn rank_and_rref(&self) -> (usize, Gf3Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pivot_row) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pivot_row);
            m.row_scale(r, m.get(r, c).inv());
            for i in 0..m.rows {
                if i != r {
                    let coeff = m.get(i, c);
                    if !coeff.is_zero() {
                        m.row_add_scaled(i, r, -coeff);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut rref = Gf3Matrix::zero(r, m.cols);
        rref.data
            .copy_from_slice(&m.data[..r * m.words_per_row]);
        (r, rref, pivots)
    }

    /// G * G^T as a dense rows x rows matrix.
    pub fn gram(&self) -> Gf3Matrix {
        let mut g = Gf3Matrix::zero(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let mut acc = Gf3::ZERO;
                for c in 0..self.cols {
                    acc = acc + self.get(i, c) * self.get(j, c);
                }
                g.set(i, j, acc);
                g.set(j, i, acc);
            }
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Horizontal concatenation (A | B).
    pub fn hconcat(&self, rhs: &Gf3Matrix) -> Gf3Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Gf3Matrix::zero(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c));
            }
        }
        out
    }

    /// Serializes as the matrix file format: `rows cols` then one digit
    /// string per row.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push((b'0' + self.get(r, c).value()) as char);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_file_string(text: &str) -> Result<Gf3Matrix, CodeError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| CodeError::BadMatrixFile("empty input".into()))?;
        let mut parts = header.split_whitespace();
        let rows: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| CodeError::BadMatrixFile("bad header".into()))?;
        let cols: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| CodeError::BadMatrixFile("bad header".into()))?;
        let mut m = Gf3Matrix::zero(rows, cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| CodeError::BadMatrixFile(format!("missing row {r}")))?;
            let line = line.trim();
            if line.len() != cols {
                return Err(CodeError::BadMatrixFile(format!(
                    "row {r} has {} symbols, expected {cols}",
                    line.len()
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, Gf3::ONE),
                    '2' => m.set(r, c, Gf3::TWO),
                    _ => {
                        return Err(CodeError::BadMatrixFile(format!(
                            "bad symbol {ch:?} in row {r}"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }
}

/// Weight distribution of a code: multiplicity per Hamming weight, with
/// A_0 = 1 included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.counts
            .iter()
            .find(|(&w, &a)| w > 0 && a > 0)
            .map(|(&w, _)| w)
    }

    pub fn max_weight(&self) -> u64 {
        self.counts.keys().copied().max().unwrap_or(0)
    }

    pub fn all_weights_divisible_by(&self, d: u64) -> bool {
        self.counts.iter().all(|(&w, &a)| a == 0 || w % d == 0)
    }

    pub fn power_sum(&self, p: u32) -> BigInt {
        self.counts
            .iter()
            .map(|(&w, &a)| BigInt::from(w).pow(p) * BigInt::from(a))
            .sum()
    }

    /// Number of distinct nonzero weights (the t of a t-weight code).
    pub fn distinct_nonzero_weights(&self) -> usize {
        self.counts.iter().filter(|(&w, &a)| w > 0 && a > 0).count()
    }

    /// Renders `1 + A_w x^w + ...`.
    pub fn enumerator_string(&self) -> String {
        let mut parts = Vec::new();
        for (&w, &a) in &self.counts {
            if a == 0 {
                continue;
            }
            if w == 0 {
                parts.push(a.to_string());
            } else {
                parts.push(format!("{a}x^{w}"));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enumerator_string())
    }
}

/// A linear code over GF(3), held as a generator matrix (not necessarily
/// full rank) plus its computed row-reduced basis.
#[derive(Debug, Clone)]
pub struct LinearCode {
    gen: Gf3Matrix,
    basis: Gf3Matrix,
    dimension: usize,
    length: usize,
}

impl LinearCode {
    pub fn from_generator(gen: Gf3Matrix) -> LinearCode {
        let (rank, basis, _) = gen.rank_and_rref();
        LinearCode {
            length: gen.cols(),
            dimension: rank,
            gen,
            basis,
        }
    }

    pub fn generator(&self) -> &Gf3Matrix {
        &self.gen
    }

    /// Full-rank row basis in reduced echelon form.
    pub fn basis(&self) -> &Gf3Matrix {
        &self.basis
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Enumerates all 3^k codewords on `jobs` worker threads and counts
    /// Hamming weights. Deterministic: per-worker histograms merge by
    /// addition, so the result is independent of the partitioning.
    pub fn weight_distribution(&self, jobs: usize) -> Result<WeightDistribution, CodeError> {
        let k = self.dimension;
        if k > MAX_ENUMERATION_DIMENSION {
            return Err(CodeError::DimensionTooLarge(k));
        }
        let jobs = jobs.max(1);
        // partition on leading message digits so each worker walks a subtree
        let mut prefix_depth = 0;
        while prefix_depth < k && 3usize.pow(prefix_depth as u32) < jobs {
            prefix_depth += 1;
        }
        let prefixes = 3usize.pow(prefix_depth as u32);
        let wpr = self.basis.words_per_row;

        let worker = |mine: Vec<usize>| -> BTreeMap<u64, u64> {
            let mut counts = BTreeMap::new();
            let mut acc = vec![0u64; wpr];
            for prefix in mine {
                acc.iter_mut().for_each(|w| *w = 0);
                let mut rem = prefix;
                for row in 0..prefix_depth {
                    let digit = (rem % 3) as u8;
                    rem /= 3;
                    for _ in 0..digit {
                        for (i, w) in acc.iter_mut().enumerate() {
                            *w = word_add(*w, self.basis.row_words(row)[i]);
                        }
                    }
                }
                self.enumerate_subtree(prefix_depth, &mut acc, &mut counts);
            }
            counts
        };

        let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
        if jobs == 1 {
            merged = worker((0..prefixes).collect());
        } else {
            let assignments: Vec<Vec<usize>> = (0..jobs)
                .map(|j| (0..prefixes).filter(|p| p % jobs == j).collect())
                .collect();
            let partials = std::thread::scope(|scope| {
                let handles: Vec<_> = assignments
                    .into_iter()
                    .map(|mine| scope.spawn(|| worker(mine)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("weight worker panicked"))
                    .collect::<Vec<_>>()
            });
            for partial in partials {
                for (w, a) in partial {
                    *merged.entry(w).or_insert(0) += a;
                }
            }
        }
        debug_assert_eq!(
            merged.values().sum::<u64>(),
            3u64.pow(k as u32),
            "weight histogram must cover the whole message space"
        );
        Ok(WeightDistribution { counts: merged })
    }

    fn enumerate_subtree(&self, depth: usize, acc: &mut [u64], counts: &mut BTreeMap<u64, u64>) {
        if depth == self.dimension {
            *counts.entry(words_nonzero_lanes(acc)).or_insert(0) += 1;
            return;
        }
        // three visits; the third row addition restores acc
        for _ in 0..3 {
            self.enumerate_subtree(depth + 1, acc, counts);
            let row = self.basis.row_words(depth);
            for (i, w) in acc.iter_mut().enumerate() {
                *w = word_add(*w, row[i]);
            }
        }
    }

    pub fn minimum_distance(&self, jobs: usize) -> Result<u64, CodeError> {
        Ok(self
            .weight_distribution(jobs)?
            .min_nonzero_weight()
            .unwrap_or(0))
    }

    /// Basis of the dual code via the standard null-space construction; only
    /// sensible at small scale (used by oracles and small fixtures).
    pub fn dual_code(&self) -> LinearCode {
        let (_, rref, pivots) = self.gen.rank_and_rref();
        let n = self.length;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut row = vec![0u8; n];
            row[fc] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                row[pc] = (-rref.get(ri, fc)).value();
            }
            rows.push(row);
        }
        if rows.is_empty() {
            rows.push(vec![0u8; n]);
        }
        LinearCode::from_generator(Gf3Matrix::from_rows(&rows).expect("valid dual rows"))
    }

    /// Dual minimum distance capped at 3, by bounded column-dependency
    /// search on the row basis; no dual enumeration.
    pub fn dual_min_distance_upto3(&self) -> DualDistanceBound {
        if self.dimension == self.length {
            return DualDistanceBound::DualTrivial;
        }
        let b = &self.basis;
        let k = self.dimension;
        let columns: Vec<Vec<u8>> = (0..self.length)
            .map(|c| (0..k).map(|r| b.get(r, c).value()).collect())
            .collect();
        // weight 1: a zero column
        if let Some(c) = columns.iter().position(|col| col.iter().all(|&v| v == 0)) {
            return DualDistanceBound::One { column: c };
        }
        // weight 2: two proportional columns; normalize first nonzero to 1
        let mut seen: std::collections::HashMap<Vec<u8>, usize> = std::collections::HashMap::new();
        for (c, col) in columns.iter().enumerate() {
            let lead = col.iter().find(|&&v| v != 0).copied().unwrap();
            let scale = Gf3::new(lead as i64).inv();
            let normalized: Vec<u8> = col
                .iter()
                .map(|&v| (Gf3::new(v as i64) * scale).value())
                .collect();
            if let Some(&prev) = seen.get(&normalized) {
                return DualDistanceBound::Two { columns: (prev, c) };
            }
            seen.insert(normalized, c);
        }
        // weight 3: some column is a combination a*c_i + b*c_j
        let index: std::collections::HashMap<&Vec<u8>, usize> = columns
            .iter()
            .enumerate()
            .map(|(c, col)| (col, c))
            .collect();
        for i in 0..columns.len() {
            for j in i + 1..columns.len() {
                for a in [Gf3::ONE, Gf3::TWO] {
                    for bb in [Gf3::ONE, Gf3::TWO] {
                        let combo: Vec<u8> = (0..k)
                            .map(|r| {
                                (a * Gf3::new(columns[i][r] as i64)
                                    + bb * Gf3::new(columns[j][r] as i64))
                                .value()
                            })
                            .collect();
                        if let Some(&l) = index.get(&combo) {
                            if l != i && l != j {
                                // c_l = a*c_i + b*c_j, so a*c_i + b*c_j - c_l = 0
                                return DualDistanceBound::Three {
                                    columns: (i, j, l),
                                    coefficients: (a, bb, Gf3::TWO),
                                };
                            }
                        }
                    }
                }
            }
        }
        DualDistanceBound::GreaterThan3
    }

    /// Self-orthogonality by two independent routes: Gram matrix vanishing
    /// and (when enumerable) all weights divisible by 3.
    pub fn self_orthogonality(&self, jobs: usize) -> SelfOrthogonality {
        let gram_zero = self.basis.gram().is_zero();
        let weights_divisible = self
            .weight_distribution(jobs)
            .ok()
            .map(|d| d.all_weights_divisible_by(3));
        if let Some(by_weights) = weights_divisible {
            assert_eq!(
                gram_zero, by_weights,
                "self-orthogonality methods disagree"
            );
        }
        SelfOrthogonality {
            gram_zero,
            weights_divisible,
        }
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.self_orthogonality(1).gram_zero
    }

    /// LCD test on the full-rank row basis: det(G G^T) != 0 over GF(3).
    pub fn is_lcd(&self) -> bool {
        let gram = self.basis.gram();
        let (rank, _, _) = gram.rank_and_rref();
        rank == self.dimension
    }
}

/// Verdict of the bounded dual-distance search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DualDistanceBound {
    /// The dual code is {0}; minimum distance undefined.
    DualTrivial,
    One {
        column: usize,
    },
    Two {
        columns: (usize, usize),
    },
    Three {
        columns: (usize, usize, usize),
        /// GF(3) coefficients (values) of the dependency on those columns.
        coefficients: (Gf3, Gf3, Gf3),
    },
    GreaterThan3,
}

impl DualDistanceBound {
    pub fn distance(&self) -> Option<u64> {
        match self {
            DualDistanceBound::One { .. } => Some(1),
            DualDistanceBound::Two { .. } => Some(2),
            DualDistanceBound::Three { .. } => Some(3),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            DualDistanceBound::DualTrivial => "dual trivial".to_string(),
            DualDistanceBound::GreaterThan3 => ">3".to_string(),
            other => other.distance().unwrap().to_string(),
        }
    }
}

impl Serialize for Gf3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

impl<'de> Deserialize<'de> for Gf3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        if v > 2 {
            return Err(serde::de::Error::custom("GF(3) value out of range"));
        }
        Ok(Gf3::new(v as i64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfOrthogonality {
    pub gram_zero: bool,
    /// None when the code is too large to enumerate.
    pub weights_divisible: Option<bool>,
}

impl SelfOrthogonality {
    pub fn verdict(&self) -> bool {
        self.gram_zero
    }
}

/// Solved low-weight dual counts from the first four Pless power moments
/// (q = 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlessReport {
    pub a1_dual: BigInt,
    pub a2_dual: BigInt,
    pub a3_dual: BigInt,
    /// All solved values are nonnegative integers and P1 holds.
    pub consistent: bool,
}

/// Solves A1-perp, A2-perp, A3-perp from the primal weight distribution via
/// the power moments P2..P4 with q = 3; P1 is checked directly.
pub fn pless_check(n_len: usize, k: usize, dist: &WeightDistribution) -> PlessReport {
    let q = BigRational::from_integer(BigInt::from(3));
    let n = BigRational::from_integer(BigInt::from(n_len as i64));
    let rat = |v: BigInt| BigRational::from_integer(v);
    let qpow = |e: i64| {
        if e >= 0 {
            rat(BigInt::from(3).pow(e as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(3).pow((-e) as u32))
        }
    };
    let s1 = rat(dist.power_sum(1));
    let s2 = rat(dist.power_sum(2));
    let s3 = rat(dist.power_sum(3));
    let k = k as i64;

    let p1_ok = dist.power_sum(0) == BigInt::from(3).pow(k as u32);

    // P2: sum j A_j = q^(k-1) (q n - n - A1)
    let a1 = (&q * &n - &n) - s1 / qpow(k - 1);
    // P3: sum j^2 A_j = q^(k-2) ((q-1) n (q n - n + 1) - (2 q n - q - 2 n + 2) A1 + 2 A2)
    let c0 = (&q - BigRational::one()) * &n * (&q * &n - &n + BigRational::one());
    let c1 = &q * &n * BigRational::from_integer(2.into()) - &q
        - &n * BigRational::from_integer(2.into())
        + BigRational::from_integer(2.into());
    let a2 = (s2 / qpow(k - 2) - c0 + &c1 * &a1) / BigRational::from_integer(2.into());
    // P4: sum j^3 A_j = q^(k-3) ((q-1) n (q^2 n^2 - 2 q n^2 + 3 q n - q + n^2 - 3 n + 2)
    //     - (3 q^2 n^2 - 3 q^2 n - 6 q n^2 + 12 q n + q^2 - 6 q + 3 n^2 - 9 n + 6) A1
    //     + 6 (q n - q - n + 2) A2 - 6 A3)
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let six = BigRational::from_integer(6.into());
    let nine = BigRational::from_integer(9.into());
    let twelve = BigRational::from_integer(12.into());
    let q2 = &q * &q;
    let n2 = &n * &n;
    let d0 = (&q - BigRational::one())
        * &n
        * (&q2 * &n2 - &two * &q * &n2 + &three * &q * &n - &q + &n2 - &three * &n + &two);
    let d1 = &three * &q2 * &n2 - &three * &q2 * &n - &six * &q * &n2 + &twelve * &q * &n + &q2
        - &six * &q
        + &three * &n2
        - &nine * &n
        + &six;
    let d2 = &six * (&q * &n - &q - &n + &two);
    let a3 = (d0 - &d1 * &a1 + &d2 * &a2 - s3 / qpow(k - 3)) / &six;

    let to_int = |r: &BigRational| -> Option<BigInt> {
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    };
    let ints = (to_int(&a1), to_int(&a2), to_int(&a3));
    let consistent = p1_ok
        && matches!(&ints, (Some(x), Some(y), Some(z))
            if !x.is_negative() && !y.is_negative() && !z.is_negative());
    PlessReport {
        a1_dual: ints.0.unwrap_or_else(|| BigInt::from(-1)),
        a2_dual: ints.1.unwrap_or_else(|| BigInt::from(-1)),
        a3_dual: ints.2.unwrap_or_else(|| BigInt::from(-1)),
        consistent,
    }
}

/// Optimality of a minimum distance against the sphere-packing bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundClass {
    OptimalVsBound,
    AlmostOptimalVsBound,
    Neither,
}

impl fmt::Display for BoundClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundClass::OptimalVsBound => "optimal-vs-bound",
            BoundClass::AlmostOptimalVsBound => "almost-optimal-vs-bound",
            BoundClass::Neither => "neither",
        };
        write!(f, "{s}")
    }
}

/// Largest d admitted for an [n, k] ternary code by the sphere-packing
/// volume inequality 3^n >= 3^k * sum_{i <= (d-1)/2} C(n,i) 2^i, additionally
/// capped by the Singleton bound d <= n - k + 1. Exact big-integer
/// arithmetic throughout.
pub fn sphere_packing_max_d(n_len: usize, k: usize) -> usize {
    assert!(k >= 1 && k <= n_len);
    let budget = BigInt::from(3).pow((n_len - k) as u32);
    let singleton = n_len - k + 1;
    let mut volume = BigInt::one(); // sum for radius 0
    let mut max_d = 0;
    for d in 1..=singleton {
        let radius = (d - 1) / 2;
        if d >= 3 && d % 2 == 1 {
            // radius grew by one; extend the volume sum
            volume += num_integer::binomial(BigInt::from(n_len), BigInt::from(radius))
                * BigInt::from(2).pow(radius as u32);
        }
        if volume <= budget {
            max_d = d;
        } else {
            break;
        }
    }
    max_d.max(1)
}

pub fn classify_vs_bound(n_len: usize, k: usize, d: usize) -> BoundClass {
    let max_d = sphere_packing_max_d(n_len, k);
    if d == max_d {
        BoundClass::OptimalVsBound
    } else if d + 1 == max_d {
        BoundClass::AlmostOptimalVsBound
    } else {
        BoundClass::Neither
    }
}

/// JSON report for a single analyzed code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeReport {
    pub n: usize,
    pub k: usize,
    pub d: u64,
    pub weight_distribution: Vec<(u64, u64)>,
    pub self_orthogonal: bool,
    pub lcd: bool,
    pub dual_d_upto3: String,
    pub bound: BoundReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub max_d: usize,
    pub class: BoundClass,
}

impl CodeReport {
    pub fn from_code(code: &LinearCode, jobs: usize) -> Result<CodeReport, CodeError> {
        let dist = code.weight_distribution(jobs)?;
        let d = dist.min_nonzero_weight().unwrap_or(0);
        let dual = code.dual_min_distance_upto3();
        let dual_n = code.length();
        let dual_k = code.length() - code.dimension();
        let bound = if dual_k >= 1 {
            let max_d = sphere_packing_max_d(dual_n, dual_k);
            BoundReport {
                max_d,
                class: match dual.distance() {
                    Some(dd) => classify_vs_bound(dual_n, dual_k, dd as usize),
                    None => BoundClass::Neither,
                },
            }
        } else {
            BoundReport {
                max_d: sphere_packing_max_d(code.length(), code.dimension()),
                class: BoundClass::Neither,
            }
        };
        Ok(CodeReport {
            n: code.length(),
            k: code.dimension(),
            d,
            weight_distribution: dist
                .counts
                .iter()
                .filter(|(_, &a)| a > 0)
                .map(|(&w, &a)| (w, a))
                .collect(),
            self_orthogonal: code.self_orthogonality(jobs).verdict(),
            lcd: code.is_lcd(),
            dual_d_upto3: dual.label(),
            bound,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn repetition3() -> LinearCode {
        LinearCode::from_generator(Gf3Matrix::from_rows(&[vec![1, 1, 1]]).unwrap())
    }

    /// Reference unpacked implementation used to validate the packed layout.
    mod reference {
        pub fn add(a: &[u8], b: &[u8]) -> Vec<u8> {
            a.iter().zip(b).map(|(&x, &y)| (x + y) % 3).collect()
        }

        pub fn scale(a: &[u8], c: u8) -> Vec<u8> {
            a.iter().map(|&x| (x * c) % 3).collect()
        }

        pub fn weight(a: &[u8]) -> u64 {
            a.iter().filter(|&&x| x != 0).count() as u64
        }

        pub fn rank(rows: &[Vec<u8>]) -> usize {
            let mut m: Vec<Vec<u8>> = rows.to_vec();
            let cols = m.first().map_or(0, Vec::len);
            let mut r = 0;
            for c in 0..cols {
                let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                    continue;
                };
                m.swap(r, p);
                let inv = m[r][c]; // 1 and 2 are self-inverse mod 3
                m[r] = scale(&m[r], inv);
                for i in 0..m.len() {
                    if i != r && m[i][c] != 0 {
                        let f = (3 - m[i][c]) % 3;
                        m[i] = add(&m[i], &scale(&m[r], f));
                    }
                }
                r += 1;
                if r == m.len() {
                    break;
                }
            }
            r
        }
    }

    #[test]
    fn rank_of_identity_and_zero() {
        let (rank, _, _) = Gf3Matrix::identity(5).rank_and_rref();
        assert_eq!(rank, 5);
        let (rank, _, pivots) = Gf3Matrix::zero(4, 7).rank_and_rref();
        assert_eq!(rank, 0);
        assert!(pivots.is_empty());
    }

    #[test]
    fn repetition_code_basics() {
        let c = repetition3();
        let dist = c.weight_distribution(1).unwrap();
        assert_eq!(dist.counts, BTreeMap::from([(0, 1), (3, 2)]));
        assert_eq!(c.minimum_distance(1).unwrap(), 3);
        assert!(c.is_self_orthogonal()); // 1 + 1 + 1 = 0
        assert!(!c.is_lcd());
    }

    #[test]
    fn identity_code_is_lcd_not_so() {
        let c = LinearCode::from_generator(Gf3Matrix::identity(4));
        assert!(c.is_lcd());
        assert!(!c.is_self_orthogonal());
        assert_eq!(c.dual_min_distance_upto3(), DualDistanceBound::DualTrivial);
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let m = Gf3Matrix::identity(21);
        let c = LinearCode::from_generator(m);
        assert!(matches!(
            c.weight_distribution(1),
            Err(CodeError::DimensionTooLarge(21))
        ));
    }

    #[test]
    fn repeated_column_gives_dual_distance_two() {
        let gen = Gf3Matrix::from_rows(&[vec![1, 1, 0, 2], vec![0, 0, 1, 0]]).unwrap();
        // columns 0 and 1 are equal
        let c = LinearCode::from_generator(gen);
        match c.dual_min_distance_upto3() {
            DualDistanceBound::Two { columns: (0, 1) } => {}
            other => panic!("expected Two(0,1), got {other:?}"),
        }
    }

    #[test]
    fn zero_column_gives_dual_distance_one() {
        let gen = Gf3Matrix::from_rows(&[vec![1, 0, 2], vec![2, 0, 1]]).unwrap();
        let c = LinearCode::from_generator(gen);
        assert_eq!(
            c.dual_min_distance_upto3(),
            DualDistanceBound::One { column: 1 }
        );
    }

    #[test]
    fn dual_code_of_repetition_is_sum_zero() {
        let dual = repetition3().dual_code();
        assert_eq!(dual.dimension(), 2);
        let dist = dual.weight_distribution(1).unwrap();
        assert_eq!(dist.counts, BTreeMap::from([(0, 1), (2, 6), (3, 2)]));
    }

    #[test]
    fn pless_moments_on_repetition_code() {
        let c = repetition3();
        let dist = c.weight_distribution(1).unwrap();
        let report = pless_check(3, 1, &dist);
        assert!(report.consistent);
        assert_eq!(report.a1_dual, BigInt::from(0));
        assert_eq!(report.a2_dual, BigInt::from(6));
        assert_eq!(report.a3_dual, BigInt::from(2));
    }

    #[test]
    fn pless_matches_direct_dual_enumeration_on_small_codes() {
        let gens = [
            vec![vec![1, 0, 1, 2, 0], vec![0, 1, 1, 1, 2]],
            vec![vec![1, 2, 0, 0, 1, 1], vec![0, 0, 1, 0, 2, 1], vec![0, 0, 0, 1, 1, 1]],
            vec![vec![1, 1, 1, 0, 0, 0, 2, 2]],
        ];
        for rows in gens {
            let c = LinearCode::from_generator(Gf3Matrix::from_rows(&rows).unwrap());
            let dist = c.weight_distribution(1).unwrap();
            let report = pless_check(c.length(), c.dimension(), &dist);
            assert!(report.consistent);
            let dual_dist = c.dual_code().weight_distribution(1).unwrap();
            let count = |w: u64| BigInt::from(dual_dist.counts.get(&w).copied().unwrap_or(0));
            assert_eq!(report.a1_dual, count(1));
            assert_eq!(report.a2_dual, count(2));
            assert_eq!(report.a3_dual, count(3));
        }
    }

    #[test]
    fn sphere_packing_examples() {
        assert_eq!(sphere_packing_max_d(32, 27), 4);
        assert_eq!(classify_vs_bound(32, 27, 3), BoundClass::AlmostOptimalVsBound);
        assert_eq!(sphere_packing_max_d(10, 10), 1);
        assert_eq!(classify_vs_bound(10, 10, 1), BoundClass::OptimalVsBound);
        // feasibility is monotone: the scan result is the unique threshold
        let max_d = sphere_packing_max_d(27, 5);
        let feasible = |d: usize| {
            let mut volume = BigInt::from(0);
            for i in 0..=(d - 1) / 2 {
                volume += num_integer::binomial(BigInt::from(27), BigInt::from(i))
                    * BigInt::from(2).pow(i as u32);
            }
            volume * BigInt::from(3).pow(5) <= BigInt::from(3).pow(27)
        };
        assert!(feasible(max_d));
        assert!(max_d == 27 - 5 + 1 || !feasible(max_d + 1));
    }

    #[test]
    fn matrix_file_round_trip() {
        let m = Gf3Matrix::from_rows(&[vec![1, 0, 2, 1], vec![0, 2, 2, 0]]).unwrap();
        let text = m.to_file_string();
        assert!(text.starts_with("2 4\n"));
        let back = Gf3Matrix::parse_file_string(&text).unwrap();
        assert_eq!(m, back);
        assert!(Gf3Matrix::parse_file_string("2 4\n1021\n").is_err());
        assert!(Gf3Matrix::parse_file_string("1 3\n143\n").is_err());
    }

    #[test]
    fn parallel_weight_distribution_matches_serial() {
        let rows: Vec<Vec<u8>> = (0..6)
            .map(|r| (0..40).map(|c| ((r * 7 + c * 3 + (c >> 2)) % 3) as u8).collect())
            .collect();
        let c = LinearCode::from_generator(Gf3Matrix::from_rows(&rows).unwrap());
        let serial = c.weight_distribution(1).unwrap();
        for jobs in [2, 3, 5, 8] {
            assert_eq!(c.weight_distribution(jobs).unwrap(), serial);
        }
    }

    proptest! {
        #[test]
        fn packed_ops_match_reference(rows in proptest::collection::vec(
            proptest::collection::vec(0u8..3, 1..50), 1..6))
        {
            let cols = rows[0].len();
            let rows: Vec<Vec<u8>> = rows.into_iter().map(|mut r| { r.resize(cols, 0); r }).collect();
            let m = Gf3Matrix::from_rows(&rows).unwrap();
            // weights
            for (i, row) in rows.iter().enumerate() {
                prop_assert_eq!(m.row_weight(i), reference::weight(row));
            }
            // rank
            let (rank, rref, pivots) = m.rank_and_rref();
            prop_assert_eq!(rank, reference::rank(&rows));
            prop_assert_eq!(pivots.len(), rank);
            // rref rows stay in the row space and are in echelon form
            for r in 0..rank {
                let lead = (0..cols).find(|&c| !rref.get(r, c).is_zero());
                prop_assert_eq!(lead, Some(pivots[r]));
            }
            // packed add against the reference
            if rows.len() >= 2 {
                let mut m2 = m.clone();
                m2.row_add_scaled(0, 1, Gf3::TWO);
                let expect = reference::add(&rows[0], &reference::scale(&rows[1], 2));
                let got: Vec<u8> = (0..cols).map(|c| m2.get(0, c).value()).collect();
                prop_assert_eq!(got, expect);
            }
        }

        #[test]
        fn so_methods_agree_on_random_small_codes(rows in proptest::collection::vec(
            proptest::collection::vec(0u8..3, 6), 1..4))
        {
            let c = LinearCode::from_generator(Gf3Matrix::from_rows(&rows).unwrap());
            let so = c.self_orthogonality(1);
            prop_assert_eq!(Some(so.gram_zero), so.weights_divisible);
        }

        #[test]
        fn dual_bound_agrees_with_direct_dual_enumeration(rows in proptest::collection::vec(
            proptest::collection::vec(0u8..3, 8), 2..5))
        {
            let c = LinearCode::from_generator(Gf3Matrix::from_rows(&rows).unwrap());
            prop_assume!(c.dimension() >= 1);
            let bound = c.dual_min_distance_upto3();
            let dual = c.dual_code();
            if c.dimension() == c.length() {
                prop_assert_eq!(bound, DualDistanceBound::DualTrivial);
            } else {
                let true_d = dual.weight_distribution(1).unwrap().min_nonzero_weight();
                match (bound.distance(), true_d) {
                    (Some(b), Some(d)) => prop_assert_eq!(b, d),
                    (None, Some(d)) => prop_assert!(d > 3),
                    (b, None) => prop_assert!(b.is_none()),
                }
            }
        }
    }
}
