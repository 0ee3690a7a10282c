//! Dense exact matrices over ℚ or a prime field GF(p).
//!
//! Rank over GF(p) is plain Gaussian elimination on residues. Rank over ℚ
//! clears denominators row by row and runs fraction-free elimination on
//! integers, first in `i128` with checked arithmetic and, should anything
//! overflow, again on arbitrary-precision integers. Pivots are always the
//! first nonzero entry in column order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub const Q: FieldSpec = FieldSpec::Rationals;
    pub const GF2: FieldSpec = FieldSpec::PrimeField(2);
    pub const GF3: FieldSpec = FieldSpec::PrimeField(3);

    /// GF(p); `p` must be a prime below 2³² so residues multiply in a `u64`.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => p,
        }
    }

    /// Short name used on the command line and in reports: `q`, `gf2`, ...
    pub fn short_name(self) -> String {
        match self {
            FieldSpec::Rationals => "q".to_string(),
            FieldSpec::PrimeField(p) => format!("gf{p}"),
        }
    }

    /// Parses a comma separated list such as `q,gf2,gf3`.
    pub fn parse_list(list: &str) -> Result<Vec<FieldSpec>> {
        list.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" || s == "qq" || s == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("gf")
            .ok_or_else(|| Error::UnknownField(s.clone()))?;
        let p: u64 = digits.parse().map_err(|_| Error::UnknownField(s.clone()))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.short_name())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A single matrix entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Modular(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular(x) => *x == 0,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Entries {
    Rational(Vec<BigRational>),
    Modular(Vec<u64>),
}

/// A dense matrix with exact entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Entries,
}

fn reduce_mod(value: i64, p: u64) -> u64 {
    value.rem_euclid(p as i64) as u64
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let entries = match field {
            FieldSpec::Rationals => Entries::Rational(vec![BigRational::zero(); rows * cols]),
            FieldSpec::PrimeField(_) => Entries::Modular(vec![0; rows * cols]),
        };
        ExactMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::from_fn(field, n, n, |r, c| i64::from(r == c))
    }

    /// Entries from a row-major slice of integers, reduced into the field.
    pub fn from_integers(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        values: &[i64],
    ) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        Ok(Self::from_fn(field, rows, cols, |r, c| {
            values[r * cols + c]
        }))
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                if v != 0 {
                    m.set_integer(r, c, v);
                }
            }
        }
        m
    }

    /// A matrix over ℚ from rational entries, row-major.
    pub fn from_rationals(rows: usize, cols: usize, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        Ok(ExactMatrix {
            field: FieldSpec::Rationals,
            rows,
            cols,
            entries: Entries::Rational(values),
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set_integer(&mut self, r: usize, c: usize, value: i64) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) outside {}x{}",
            self.rows,
            self.cols
        );
        let i = r * self.cols + c;
        match (&mut self.entries, self.field) {
            (Entries::Rational(e), _) => e[i] = BigRational::from_integer(value.into()),
            (Entries::Modular(e), FieldSpec::PrimeField(p)) => e[i] = reduce_mod(value, p),
            _ => unreachable!("storage matches the field"),
        }
    }

    pub fn add_integer(&mut self, r: usize, c: usize, value: i64) {
        assert!(r < self.rows && c < self.cols);
        let i = r * self.cols + c;
        match (&mut self.entries, self.field) {
            (Entries::Rational(e), _) => e[i] += BigRational::from_integer(value.into()),
            (Entries::Modular(e), FieldSpec::PrimeField(p)) => {
                e[i] = (e[i] + reduce_mod(value, p)) % p
            }
            _ => unreachable!("storage matches the field"),
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        let i = r * self.cols + c;
        match &self.entries {
            Entries::Rational(e) => Scalar::Rational(e[i].clone()),
            Entries::Modular(e) => Scalar::Modular(e[i]),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Rational(e) => e.iter().all(Zero::is_zero),
            Entries::Modular(e) => e.iter().all(|x| *x == 0),
        }
    }

    pub fn transpose(&self) -> Self {
        let (rows, cols) = (self.cols, self.rows);
        let entries = match &self.entries {
            Entries::Rational(e) => Entries::Rational(
                (0..rows * cols)
                    .map(|i| e[(i % cols) * self.cols + i / cols].clone())
                    .collect(),
            ),
            Entries::Modular(e) => Entries::Modular(
                (0..rows * cols)
                    .map(|i| e[(i % cols) * self.cols + i / cols])
                    .collect(),
            ),
        };
        ExactMatrix {
            field: self.field,
            rows,
            cols,
            entries,
        }
    }

    pub fn multiply(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "fields {} and {} differ",
                self.field, other.field
            )));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let entries = match (&self.entries, &other.entries, self.field) {
            (Entries::Rational(a), Entries::Rational(b), _) => {
                let mut out = vec![BigRational::zero(); n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = &a[i * k + l];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let y = &b[l * m + j];
                            if !y.is_zero() {
                                out[i * m + j] += x * y;
                            }
                        }
                    }
                }
                Entries::Rational(out)
            }
            (Entries::Modular(a), Entries::Modular(b), FieldSpec::PrimeField(p)) => {
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = a[i * k + l];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] = (out[i * m + j] + x * b[l * m + j]) % p;
                        }
                    }
                }
                Entries::Modular(out)
            }
            _ => unreachable!("storage matches the field"),
        };
        Ok(ExactMatrix {
            field: self.field,
            rows: n,
            cols: m,
            entries,
        })
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        assert_eq!(self.field, block.field);
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                let src = r * block.cols + c;
                let dst = (r0 + r) * self.cols + c0 + c;
                match (&mut self.entries, &block.entries) {
                    (Entries::Rational(d), Entries::Rational(s)) => d[dst] = s[src].clone(),
                    (Entries::Modular(d), Entries::Modular(s)) => d[dst] = s[src],
                    _ => unreachable!("fields match"),
                }
            }
        }
    }

    /// `self ⊗ I_g`: every entry becomes a `g × g` scalar block.
    pub fn kronecker_identity(&self, g: usize) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.field, self.rows * g, self.cols * g);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let src = r * self.cols + c;
                for t in 0..g {
                    let dst = (r * g + t) * out.cols + c * g + t;
                    match (&mut out.entries, &self.entries) {
                        (Entries::Rational(d), Entries::Rational(s)) => d[dst] = s[src].clone(),
                        (Entries::Modular(d), Entries::Modular(s)) => d[dst] = s[src],
                        _ => unreachable!("fields match"),
                    }
                }
            }
        }
        out
    }

    /// Every entry multiplied by an integer.
    pub fn scaled(&self, factor: i64) -> ExactMatrix {
        let entries = match (&self.entries, self.field) {
            (Entries::Rational(e), _) => {
                let f = BigRational::from_integer(factor.into());
                Entries::Rational(e.iter().map(|x| x * &f).collect())
            }
            (Entries::Modular(e), FieldSpec::PrimeField(p)) => {
                let f = reduce_mod(factor, p);
                Entries::Modular(e.iter().map(|x| x * f % p).collect())
            }
            _ => unreachable!("storage matches the field"),
        };
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Rank over the matrix's field.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match (&self.entries, self.field) {
            (Entries::Modular(e), FieldSpec::PrimeField(p)) => {
                modular_rank(e.clone(), self.rows, self.cols, p)
            }
            (Entries::Rational(e), _) => rational_rank(e, self.rows, self.cols),
            _ => unreachable!("storage matches the field"),
        }
    }

    /// `cols − rank`.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| match self.entry(r, c) {
                    Scalar::Rational(q) => q.to_string(),
                    Scalar::Modular(x) => x.to_string(),
                })
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn modular_rank(mut m: Vec<u64>, rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in c..cols {
                m.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = mod_inverse(m[rank * cols + c], p);
        for j in c..cols {
            m[rank * cols + j] = m[rank * cols + j] * inv % p;
        }
        for r in rank + 1..rows {
            let factor = m[r * cols + c];
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = factor * m[rank * cols + j] % p;
                m[r * cols + j] = (m[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn rational_rank(entries: &[BigRational], rows: usize, cols: usize) -> usize {
    // Scale each row by the lcm of its denominators.
    let integer_rows: Vec<Vec<BigInt>> = entries
        .chunks(cols)
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    let small: Option<Vec<Vec<i128>>> = integer_rows
        .iter()
        .map(|row| row.iter().map(|x| x.to_i128()).collect())
        .collect();
    if let Some(mut small) = small {
        if let Some(rank) = fraction_free_rank(&mut small, rows, cols) {
            return rank;
        }
    }
    let mut big = integer_rows;
    fraction_free_rank(&mut big, rows, cols).expect("arbitrary precision never overflows")
}

/// Integer row reduction: `row ← pivot·row − a·pivot_row`, then divide the
/// row by its content. Returns `None` on overflow.
fn fraction_free_rank<T>(m: &mut [Vec<T>], rows: usize, cols: usize) -> Option<usize>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pivot, rank);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let p = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let a = row[c].clone();
            if a.is_zero() {
                continue;
            }
            let mut content = T::zero();
            for j in c..cols {
                let lhs = p.checked_mul(&row[j])?;
                let rhs = a.checked_mul(&pivot_row[j])?;
                row[j] = lhs.checked_sub(&rhs)?;
                content = content.gcd(&row[j]);
            }
            if !content.is_zero() && !content.is_one() {
                for x in row[c..].iter_mut() {
                    *x = x.div_floor(&content);
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}
