//! Exact linear algebra over the three coefficient rings the engine needs:
//! the integers, prime fields F_p, and the cyclic rings Z/p^k.
//!
//! Everything is exact: integer work is done on arbitrary-precision values,
//! modular work on canonical residues in `[0, m)`. Matrices here are small
//! (dozens of rows at most), so the algorithms are the plain quadratic ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Largest absolute value accepted for a constructed entry, a prime, or a
/// modulus base. Keeps user input within `i64` headroom; internal values
/// (transforms, intermediate pivots) may grow arbitrarily large.
pub const ENTRY_BOUND: i64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("coefficient rings differ: {0} vs {1}")]
    CoefficientMismatch(Coefficients, Coefficients),
    #[error("dimension mismatch: {0}x{1} against {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus exponent must be at least 1")]
    ZeroExponent,
    #[error("entry {0} out of bounds (|entry| must be < 2^31)")]
    EntryOutOfBounds(i64),
    #[error("entry count {0} does not match {1}x{2}")]
    EntryCountMismatch(usize, usize, usize),
    #[error("smith normal form is not defined over a field; use rank")]
    SnfOverField,
    #[error("rank is only computed over a prime field")]
    RankOverNonField,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Coefficient ring of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    /// F_p, `p` prime.
    PrimeField(u64),
    /// Z/p^k, `p` prime, `k >= 1`.
    CyclicRing(u64, u32),
}

impl Coefficients {
    pub fn prime_field(p: u64) -> Result<Self, LinalgError> {
        if !is_prime(p) || p as i64 >= ENTRY_BOUND {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Coefficients::PrimeField(p))
    }

    pub fn cyclic_ring(p: u64, k: u32) -> Result<Self, LinalgError> {
        if !is_prime(p) || p as i64 >= ENTRY_BOUND {
            return Err(LinalgError::NotPrime(p));
        }
        if k == 0 {
            return Err(LinalgError::ZeroExponent);
        }
        Ok(Coefficients::CyclicRing(p, k))
    }

    /// `None` over the integers, otherwise the modulus as a big integer.
    pub fn modulus(&self) -> Option<BigInt> {
        match *self {
            Coefficients::Integers => None,
            Coefficients::PrimeField(p) => Some(BigInt::from(p)),
            Coefficients::CyclicRing(p, k) => Some(BigInt::from(p).pow(k)),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Coefficients::PrimeField(_))
    }

    /// Canonical residue of `x`: `x` itself over the integers, `x mod m` in
    /// `[0, m)` otherwise.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        match self.modulus() {
            None => x.clone(),
            Some(m) => x.mod_floor(&m),
        }
    }

    /// True when `x` is invertible in the ring.
    pub fn is_unit(&self, x: &BigInt) -> bool {
        match *self {
            Coefficients::Integers => x.abs().is_one(),
            Coefficients::PrimeField(p) => !x.mod_floor(&BigInt::from(p)).is_zero(),
            Coefficients::CyclicRing(p, _) => !x.mod_floor(&BigInt::from(p)).is_zero(),
        }
    }

    /// Inverse of a unit. Panics if `x` is not a unit.
    pub fn invert(&self, x: &BigInt) -> BigInt {
        debug_assert!(self.is_unit(x), "invert called on a non-unit");
        match self.modulus() {
            None => x.clone(), // +-1
            Some(m) => {
                let e = x.extended_gcd(&m);
                debug_assert!(e.gcd.is_one(), "unit has gcd 1 with the modulus");
                e.x.mod_floor(&m)
            }
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::PrimeField(p) => write!(f, "F_{p}"),
            Coefficients::CyclicRing(p, k) => write!(f, "Z/{p}^{k}"),
        }
    }
}

/// p-adic valuation of a canonical residue in Z/p^k. Zero gets `k`, the
/// valuation of the modulus, so that valuations are totally ordered.
fn residue_val(x: &BigInt, p: u64, k: u32) -> u32 {
    if x.is_zero() {
        return k;
    }
    let p = BigInt::from(p);
    let mut v = 0u32;
    let mut rest = x.clone();
    while (&rest % &p).is_zero() {
        rest /= &p;
        v += 1;
    }
    v
}

/// Dense row-major matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    coefficients: Coefficients,
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn new(
        coefficients: Coefficients,
        rows: usize,
        cols: usize,
        entries: &[i64],
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCountMismatch(entries.len(), rows, cols));
        }
        for &e in entries {
            if e.abs() >= ENTRY_BOUND {
                return Err(LinalgError::EntryOutOfBounds(e));
            }
        }
        Ok(Self::from_bigints(
            coefficients,
            rows,
            cols,
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        ))
    }

    /// Internal constructor: reduces every entry to canonical form.
    pub fn from_bigints(
        coefficients: Coefficients,
        rows: usize,
        cols: usize,
        entries: Vec<BigInt>,
    ) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count matches shape");
        let entries = entries.iter().map(|e| coefficients.reduce(e)).collect();
        ExactMatrix { coefficients, rows, cols, entries }
    }

    pub fn from_fn(
        coefficients: Coefficients,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigInt,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::from_bigints(coefficients, rows, cols, entries)
    }

    pub fn zero(coefficients: Coefficients, rows: usize, cols: usize) -> Self {
        Self::from_bigints(coefficients, rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(coefficients: Coefficients, n: usize) -> Self {
        Self::from_fn(coefficients, n, n, |i, j| {
            if i == j { BigInt::one() } else { BigInt::zero() }
        })
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols, "index in range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        debug_assert!(i < self.rows && j < self.cols, "index in range");
        self.entries[i * self.cols + j] = self.coefficients.reduce(&x);
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> ExactMatrix {
        Self::from_fn(self.coefficients, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.coefficients != rhs.coefficients {
            return Err(LinalgError::CoefficientMismatch(self.coefficients, rhs.coefficients));
        }
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        Ok(Self::from_fn(self.coefficients, self.rows, rhs.cols, |i, j| {
            let mut acc = BigInt::zero();
            for t in 0..self.cols {
                acc += self.at(i, t) * rhs.at(t, j);
            }
            acc
        }))
    }

    /// `[self | rhs]` side by side.
    pub fn hstack(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.coefficients != rhs.coefficients {
            return Err(LinalgError::CoefficientMismatch(self.coefficients, rhs.coefficients));
        }
        if self.rows != rhs.rows {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        Ok(Self::from_fn(self.coefficients, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { rhs.at(i, j - self.cols).clone() }
        }))
    }

    /// Determinant by cofactor expansion; fine for the small square matrices
    /// that show up in transform checks.
    pub fn det(&self) -> Result<BigInt, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        fn go(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
            if rows.is_empty() {
                return BigInt::one();
            }
            let mut acc = BigInt::zero();
            let rest: Vec<usize> = rows[1..].to_vec();
            for (t, &c) in cols.iter().enumerate() {
                let e = m.at(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let sub: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let term = e * go(m, &rest, &sub);
                if t % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.coefficients.reduce(&go(self, &idx, &idx)))
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Outcome of a Smith normal form computation: invertible `u` (rows x rows)
/// and `v` (cols x cols) with `u * a * v` equal to `diag(d)` padded with
/// zeros. `d` lists the nonzero invariant factors only, each dividing the
/// next; zero diagonal entries are represented by the padding. Over Z the
/// factors are positive; over Z/p^k they are normalized to pure powers p^e
/// with `e < k` (a factor p^k would be zero and is dropped like any zero).
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub d: Vec<BigInt>,
    pub u: ExactMatrix,
    pub v: ExactMatrix,
}

impl SnfResult {
    /// Re-multiplies the transforms against `a` and checks the shape of the
    /// result and the invertibility of `u` and `v`.
    pub fn verify(&self, a: &ExactMatrix) -> bool {
        let prod = match self.u.mul(a).and_then(|ua| ua.mul(&self.v)) {
            Ok(p) => p,
            Err(_) => return false,
        };
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let want = if i == j && i < self.d.len() { self.d[i].clone() } else { BigInt::zero() };
                if *prod.at(i, j) != a.coefficients().reduce(&want) {
                    return false;
                }
            }
        }
        for i in 1..self.d.len() {
            if !(&self.d[i] % &self.d[i - 1]).is_zero() {
                return false;
            }
        }
        let (du, dv) = match (self.u.det(), self.v.det()) {
            (Ok(du), Ok(dv)) => (du, dv),
            _ => return false,
        };
        a.coefficients().is_unit(&du) && a.coefficients().is_unit(&dv)
    }
}

/// Smith normal form over Z or Z/p^k.
pub fn snf(a: &ExactMatrix) -> Result<SnfResult, LinalgError> {
    let coeffs = a.coefficients();
    if coeffs.is_field() {
        return Err(LinalgError::SnfOverField);
    }
    let mut m = a.clone();
    let mut u = ExactMatrix::identity(coeffs, a.rows());
    let mut v = ExactMatrix::identity(coeffs, a.cols());
    match coeffs {
        Coefficients::Integers => snf_integers(&mut m, &mut u, &mut v),
        Coefficients::CyclicRing(p, k) => snf_cyclic(&mut m, &mut u, &mut v, p, k),
        Coefficients::PrimeField(_) => unreachable!(),
    }
    let mut d = Vec::new();
    for t in 0..m.rows().min(m.cols()) {
        if m.at(t, t).is_zero() {
            break;
        }
        d.push(m.at(t, t).clone());
    }
    let result = SnfResult { d, u, v };
    debug_assert!(result.verify(a), "snf transforms reproduce the input");
    Ok(result)
}

// Row/column operations, applied to the working matrix and mirrored on the
// transform so that u * a * v stays equal to the working matrix throughout.

fn row_swap(m: &mut ExactMatrix, u: &mut ExactMatrix, i: usize, j: usize) {
    for c in 0..m.cols() {
        let (a, b) = (m.at(i, c).clone(), m.at(j, c).clone());
        m.set(i, c, b);
        m.set(j, c, a);
    }
    for c in 0..u.cols() {
        let (a, b) = (u.at(i, c).clone(), u.at(j, c).clone());
        u.set(i, c, b);
        u.set(j, c, a);
    }
}

fn col_swap(m: &mut ExactMatrix, v: &mut ExactMatrix, i: usize, j: usize) {
    for r in 0..m.rows() {
        let (a, b) = (m.at(r, i).clone(), m.at(r, j).clone());
        m.set(r, i, b);
        m.set(r, j, a);
    }
    for r in 0..v.rows() {
        let (a, b) = (v.at(r, i).clone(), v.at(r, j).clone());
        v.set(r, i, b);
        v.set(r, j, a);
    }
}

/// row[i] += q * row[j]
fn row_add(m: &mut ExactMatrix, u: &mut ExactMatrix, i: usize, j: usize, q: &BigInt) {
    for c in 0..m.cols() {
        let x = m.at(i, c) + q * m.at(j, c);
        m.set(i, c, x);
    }
    for c in 0..u.cols() {
        let x = u.at(i, c) + q * u.at(j, c);
        u.set(i, c, x);
    }
}

/// col[i] += q * col[j]
fn col_add(m: &mut ExactMatrix, v: &mut ExactMatrix, i: usize, j: usize, q: &BigInt) {
    for r in 0..m.rows() {
        let x = m.at(r, i) + q * m.at(r, j);
        m.set(r, i, x);
    }
    for r in 0..v.rows() {
        let x = v.at(r, i) + q * v.at(r, j);
        v.set(r, i, x);
    }
}

/// row[i] *= unit
fn row_scale(m: &mut ExactMatrix, u: &mut ExactMatrix, i: usize, unit: &BigInt) {
    for c in 0..m.cols() {
        let x = m.at(i, c) * unit;
        m.set(i, c, x);
    }
    for c in 0..u.cols() {
        let x = u.at(i, c) * unit;
        u.set(i, c, x);
    }
}

/// col[j] *= unit
fn col_scale(m: &mut ExactMatrix, v: &mut ExactMatrix, j: usize, unit: &BigInt) {
    for r in 0..m.rows() {
        let x = m.at(r, j) * unit;
        m.set(r, j, x);
    }
    for r in 0..v.rows() {
        let x = v.at(r, j) * unit;
        v.set(r, j, x);
    }
}

fn snf_integers(m: &mut ExactMatrix, u: &mut ExactMatrix, v: &mut ExactMatrix) {
    let steps = m.rows().min(m.cols());
    'minor: for t in 0..steps {
        // Pivot: entry of least absolute value in the remaining minor.
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m.rows() {
                for j in t..m.cols() {
                    if m.at(i, j).is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| m.at(i, j).abs() < m.at(pi, pj).abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break 'minor; // minor is zero, done
            };
            if pi != t {
                row_swap(m, u, t, pi);
            }
            if pj != t {
                col_swap(m, v, t, pj);
            }
            // Reduce the pivot row and column by division with remainder.
            let mut clean = true;
            for i in t + 1..m.rows() {
                if !m.at(i, t).is_zero() {
                    let q = -(m.at(i, t).div_floor(m.at(t, t)));
                    row_add(m, u, i, t, &q);
                    clean &= m.at(i, t).is_zero();
                }
            }
            for j in t + 1..m.cols() {
                if !m.at(t, j).is_zero() {
                    let q = -(m.at(t, j).div_floor(m.at(t, t)));
                    col_add(m, v, j, t, &q);
                    clean &= m.at(t, j).is_zero();
                }
            }
            if !clean {
                continue; // remainders became new, smaller candidates
            }
            // Pivot must divide the whole remaining minor for the divisibility
            // chain; fold a bad row in and restart the pivot hunt.
            let mut bad_row = None;
            'scan: for i in t + 1..m.rows() {
                for j in t + 1..m.cols() {
                    if !(m.at(i, j) % m.at(t, t)).is_zero() {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => row_add(m, u, t, i, &BigInt::one()),
                None => break,
            }
        }
        if m.at(t, t).is_negative() {
            let minus_one = BigInt::from(-1);
            row_scale(m, u, t, &minus_one);
        }
    }
}

fn snf_cyclic(m: &mut ExactMatrix, u: &mut ExactMatrix, v: &mut ExactMatrix, p: u64, k: u32) {
    let coeffs = m.coefficients();
    let big_p = BigInt::from(p);
    let steps = m.rows().min(m.cols());
    for t in 0..steps {
        // Pivot: entry of minimal p-adic valuation; it divides every other
        // entry of the minor, so one pass clears its row and column.
        let mut pivot: Option<(usize, usize, u32)> = None;
        for i in t..m.rows() {
            for j in t..m.cols() {
                let val = residue_val(m.at(i, j), p, k);
                if val < k && pivot.is_none_or(|(_, _, pv)| val < pv) {
                    pivot = Some((i, j, val));
                }
            }
        }
        let Some((pi, pj, pval)) = pivot else {
            break; // minor vanishes
        };
        if pi != t {
            row_swap(m, u, t, pi);
        }
        if pj != t {
            col_swap(m, v, t, pj);
        }
        // entry = unit * p^val with val >= pval, so entry / pivot exists.
        let punit = m.at(t, t) >> 0; // clone
        let punit = &punit / big_p.pow(pval);
        let punit_inv = coeffs.invert(&coeffs.reduce(&punit));
        for i in t + 1..m.rows() {
            if !m.at(i, t).is_zero() {
                let val = residue_val(m.at(i, t), p, k);
                let eunit = m.at(i, t) / big_p.pow(val);
                let q = -coeffs.reduce(&(&eunit * &punit_inv * big_p.pow(val - pval)));
                row_add(m, u, i, t, &q);
                debug_assert!(m.at(i, t).is_zero(), "minimal valuation clears the column");
            }
        }
        for j in t + 1..m.cols() {
            if !m.at(t, j).is_zero() {
                let val = residue_val(m.at(t, j), p, k);
                let eunit = m.at(t, j) / big_p.pow(val);
                let q = -coeffs.reduce(&(&eunit * &punit_inv * big_p.pow(val - pval)));
                col_add(m, v, j, t, &q);
                debug_assert!(m.at(t, j).is_zero(), "minimal valuation clears the row");
            }
        }
        // Normalize unit * p^e to the pure power p^e.
        col_scale(m, v, t, &punit_inv);
        debug_assert_eq!(*m.at(t, t), coeffs.reduce(&big_p.pow(pval)), "pivot is a pure power");
    }
}

/// Reduced row echelon form over a prime field, with the rank and the pivot
/// column indices.
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

pub fn rref(a: &ExactMatrix) -> Result<Rref, LinalgError> {
    let coeffs = a.coefficients();
    if !coeffs.is_field() {
        return Err(LinalgError::RankOverNonField);
    }
    let mut m = a.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..m.cols() {
        let Some(pr) = (r..m.rows()).find(|&i| !m.at(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..m.cols() {
                let (a, b) = (m.at(r, j).clone(), m.at(pr, j).clone());
                m.set(r, j, b);
                m.set(pr, j, a);
            }
        }
        let inv = coeffs.invert(m.at(r, c));
        for j in 0..m.cols() {
            let x = m.at(r, j) * &inv;
            m.set(r, j, x);
        }
        for i in 0..m.rows() {
            if i != r && !m.at(i, c).is_zero() {
                let f = m.at(i, c).clone();
                for j in 0..m.cols() {
                    let x = m.at(i, j) - &f * m.at(r, j);
                    m.set(i, j, x);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.rows() {
            break;
        }
    }
    Ok(Rref { matrix: m, rank: r, pivot_cols })
}

/// Rank over a prime field.
pub fn rank(a: &ExactMatrix) -> Result<usize, LinalgError> {
    Ok(rref(a)?.rank)
}

/// Basis of the right null space over a prime field. Each basis vector has a
/// designated free coordinate set to one and all other free coordinates zero,
/// so coordinates of any kernel vector in this basis can be read off at
/// `free_cols`.
pub struct Nullspace {
    pub basis: Vec<Vec<BigInt>>,
    pub free_cols: Vec<usize>,
}

pub fn nullspace(a: &ExactMatrix) -> Result<Nullspace, LinalgError> {
    let r = rref(a)?;
    let coeffs = a.coefficients();
    let free_cols: Vec<usize> =
        (0..a.cols()).filter(|c| !r.pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut vec = vec![BigInt::zero(); a.cols()];
        vec[fc] = BigInt::one();
        for (row, &pc) in r.pivot_cols.iter().enumerate() {
            vec[pc] = coeffs.reduce(&-r.matrix.at(row, fc));
        }
        basis.push(vec);
    }
    Ok(Nullspace { basis, free_cols })
}

/// Does `a * x = b` have a solution? Returns one solution matrix when it
/// does. `b` may have several columns; they are solved together.
pub fn solve(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>, LinalgError> {
    if a.coefficients() != b.coefficients() {
        return Err(LinalgError::CoefficientMismatch(a.coefficients(), b.coefficients()));
    }
    if a.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch(a.rows(), a.cols(), b.rows(), b.cols()));
    }
    let coeffs = a.coefficients();
    if coeffs.is_field() {
        return solve_field(a, b);
    }
    let s = snf(a)?;
    // a x = b  <=>  diag(d) y = u b with x = v y.
    let c = s.u.mul(b)?;
    let mut y = ExactMatrix::zero(coeffs, a.cols(), b.cols());
    for col in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = c.at(i, col);
            if i >= s.d.len() {
                if !rhs.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let d = &s.d[i];
            match coeffs {
                Coefficients::Integers => {
                    if !(rhs % d).is_zero() {
                        return Ok(None);
                    }
                    y.set(i, col, rhs / d);
                }
                Coefficients::CyclicRing(p, k) => {
                    if rhs.is_zero() {
                        continue;
                    }
                    let dval = residue_val(d, p, k);
                    let rval = residue_val(rhs, p, k);
                    if rval < dval {
                        return Ok(None);
                    }
                    // d = p^dval (normalized); shift the valuation down.
                    let shifted = rhs / BigInt::from(p).pow(dval);
                    y.set(i, col, shifted);
                }
                Coefficients::PrimeField(_) => unreachable!(),
            }
        }
    }
    let x = s.v.mul(&y)?;
    debug_assert_eq!(a.mul(&x).unwrap(), *b, "solve returns an actual solution");
    Ok(Some(x))
}

fn solve_field(a: &ExactMatrix, b: &ExactMatrix) -> Result<Option<ExactMatrix>, LinalgError> {
    let aug = a.hstack(b)?;
    let r = rref(&aug)?;
    // A pivot in the b-block means an inconsistent row.
    if r.pivot_cols.iter().any(|&c| c >= a.cols()) {
        return Ok(None);
    }
    let mut x = ExactMatrix::zero(a.coefficients(), a.cols(), b.cols());
    for (row, &pc) in r.pivot_cols.iter().enumerate() {
        for col in 0..b.cols() {
            x.set(pc, col, r.matrix.at(row, a.cols() + col).clone());
        }
    }
    debug_assert_eq!(a.mul(&x).unwrap(), *b, "solve returns an actual solution");
    Ok(Some(x))
}

/// Is the column span of `a` the whole target? Empty targets (zero rows) are
/// covered trivially.
pub fn is_surjective(a: &ExactMatrix) -> Result<bool, LinalgError> {
    if a.rows() == 0 {
        return Ok(true);
    }
    match a.coefficients() {
        Coefficients::PrimeField(_) => Ok(rank(a)? == a.rows()),
        Coefficients::Integers | Coefficients::CyclicRing(..) => {
            let s = snf(a)?;
            let units = s.d.iter().filter(|d| a.coefficients().is_unit(d)).count();
            Ok(units == a.rows())
        }
    }
}
