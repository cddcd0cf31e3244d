//! Exact arithmetic in the field `Q(√2)` and dense symmetric matrices over it.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn int(a: i64) -> Self {
        QSqrt2::new(BigRational::from_integer(a.into()), BigRational::zero())
    }

    pub fn rational(num: i64, den: i64) -> Self {
        QSqrt2::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    /// `b√2` for integer `b`.
    pub fn sqrt2_times(b: i64) -> Self {
        QSqrt2::new(BigRational::zero(), BigRational::from_integer(b.into()))
    }

    pub fn zero() -> Self {
        QSqrt2::default()
    }

    pub fn one() -> Self {
        QSqrt2::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Field norm `a² − 2b²`; zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn conjugate(&self) -> Self {
        QSqrt2::new(self.a.clone(), -self.b.clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.norm();
        Some(QSqrt2::new(&self.a / &norm, -&self.b / &norm))
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }

    /// Sign of the real number `a + b√2`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        // opposite signs: compare a² with 2b²
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(2.into()) * &self.b * &self.b;
        match a2.cmp(&b2) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Parse `"p/q"` or `"p"` pairs as produced by serialisation.
    pub fn from_strs(a: &str, b: &str) -> Result<Self> {
        Ok(QSqrt2::new(parse_rational(a)?, parse_rational(b)?))
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::invalid(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√2", self.b),
            (false, false) => write!(f, "{} + {}√2", self.a, self.b),
        }
    }
}

impl Serialize for QSqrt2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.a.to_string(), self.b.to_string()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSqrt2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (a, b) = <(String, String)>::deserialize(d)?;
        QSqrt2::from_strs(&a, &b).map_err(serde::de::Error::custom)
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = BigRational::from_integer(2.into());
        QSqrt2::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: QSqrt2) -> QSqrt2 { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Dense square matrix over `Q(√2)`, row-major.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<QSqrt2>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![QSqrt2::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = QSqrt2::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QSqrt2>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must all have length n"));
        }
        Ok(ExactMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Like [`from_rows`](Self::from_rows) but rejects asymmetric input.
    pub fn symmetric_from_rows(rows: Vec<Vec<QSqrt2>>) -> Result<Self> {
        let m = ExactMatrix::from_rows(rows)?;
        if !m.is_symmetric() {
            return Err(Error::invalid("matrix is not symmetric"));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &QSqrt2 {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: QSqrt2) {
        self.entries[i * self.n + j] = v;
    }

    /// Set `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: QSqrt2) {
        self.entries[j * self.n + i] = v.clone();
        self.entries[i * self.n + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.n != other.n {
            return Err(Error::invalid("dimension mismatch"));
        }
        let n = self.n;
        let mut out = ExactMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &QSqrt2) -> ExactMatrix {
        ExactMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Relabel rows and columns: entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    pub fn to_float(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).to_f64())
    }
}

/// Rank of a rectangular system over `Q(√2)` by fraction-free pivoting on
/// exact zero tests.
pub fn exact_rank(mut rows: Vec<Vec<QSqrt2>>) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inverse().expect("nonzero pivot");
        let pivot_row: Vec<QSqrt2> = rows[rank].iter().map(|e| e * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..cols {
                if !pivot_row[k].is_zero() {
                    let t = &f * &pivot_row[k];
                    row[k] = &row[k] - &t;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
