//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`], so intermediate growth can never
//! overflow. Determinants use Bareiss fraction-free elimination; the Smith
//! normal form is computed by gcd-driven row and column operations that are
//! recorded in unimodular transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows<R, T>(rows: &[R]) -> Result<Self>
    where
        R: AsRef<[T]>,
        T: Clone + Into<BigInt>,
    {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out.entries[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o += xr * self.get(r, c);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(src, c) * factor;
            self.entries[dst * self.cols + c] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, src) * factor;
            self.entries[r * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.entries[r * self.cols + c]);
            self.entries[r * self.cols + c] = v;
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// The empty 0x0 matrix has determinant 1.
pub fn determinant(m: &IntegerMatrix) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = pivot;
    }
    Ok(sign * a.get(n - 1, n - 1))
}

/// Result of [`smith_normal_form`]: `left * m * right` is diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub left: IntegerMatrix,
    /// Nonnegative invariant factors, each dividing the next; zeros trail.
    pub diag: Vec<BigInt>,
    pub right: IntegerMatrix,
    /// Exact inverse of `right`, tracked alongside the column operations.
    pub right_inverse: IntegerMatrix,
}

impl SnfDecomposition {
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(rows, cols);
        for (i, v) in self.diag.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

struct SnfState {
    a: IntegerMatrix,
    left: IntegerMatrix,
    right: IntegerMatrix,
    right_inv: IntegerMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.left.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.right.swap_cols(i, j);
        self.right_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_row_multiple(dst, src, f);
        self.left.add_row_multiple(dst, src, f);
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.a.add_col_multiple(dst, src, f);
        self.right.add_col_multiple(dst, src, f);
        // (I + f e_src e_dst^T)^{-1} = I - f e_src e_dst^T, applied on the left.
        self.right_inv.add_row_multiple(src, dst, &-f);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.left.negate_row(r);
    }

    /// Smallest nonzero |entry| in the trailing submatrix starting at (t, t).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let v = self.a.get(r, c);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| v.abs() < self.a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    /// Clears row t and column t outside the pivot. Returns false if the
    /// pivot had to be replaced by a smaller remainder.
    fn clear_cross(&mut self, t: usize) -> bool {
        let pivot = self.a.get(t, t).clone();
        for r in t + 1..self.a.rows {
            if self.a.get(r, t).is_zero() {
                continue;
            }
            let q = self.a.get(r, t).div_floor(&pivot);
            self.add_row(r, t, &-q);
            if !self.a.get(r, t).is_zero() {
                self.swap_rows(t, r);
                return false;
            }
        }
        for c in t + 1..self.a.cols {
            if self.a.get(t, c).is_zero() {
                continue;
            }
            let q = self.a.get(t, c).div_floor(&pivot);
            self.add_col(c, t, &-q);
            if !self.a.get(t, c).is_zero() {
                self.swap_cols(t, c);
                return false;
            }
        }
        true
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SnfDecomposition> {
    m.require_square()?;
    let (rows, cols) = (m.rows, m.cols);
    let mut st = SnfState {
        a: m.clone(),
        left: IntegerMatrix::identity(rows),
        right: IntegerMatrix::identity(cols),
        right_inv: IntegerMatrix::identity(cols),
    };
    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        let Some((pr, pc)) = st.min_pivot(t) else {
            break;
        };
        st.swap_rows(t, pr);
        st.swap_cols(t, pc);
        if !st.clear_cross(t) {
            continue;
        }
        // Divisibility: fold any offending row into row t and redo this step.
        let pivot = st.a.get(t, t).clone();
        let offender =
            (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !st.a.get(r, c).is_multiple_of(&pivot)));
        if let Some(r) = offender {
            st.add_row(t, r, &BigInt::one());
            continue;
        }
        if pivot.is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..steps).map(|i| st.a.get(i, i).clone()).collect();
    Ok(SnfDecomposition {
        left: st.left,
        diag,
        right: st.right,
        right_inverse: st.right_inv,
    })
}

/// Solves `m x = b` exactly over the rationals.
pub fn solve_rational(m: &IntegerMatrix, b: &[BigInt]) -> Result<Vec<Rational>> {
    m.require_square()?;
    if b.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    match solve_overdetermined(m, b)? {
        Solution::Unique(x) => Ok(x),
        Solution::Inconsistent => Err(Error::Internal(
            "square nonsingular system reported inconsistent".into(),
        )),
        Solution::RankDeficient => Err(Error::Singular),
    }
}

pub(crate) enum Solution {
    Unique(Vec<Rational>),
    Inconsistent,
    RankDeficient,
}

/// Gaussian elimination for an `r x c` system with `r >= c`.
pub(crate) fn solve_overdetermined(m: &IntegerMatrix, b: &[BigInt]) -> Result<Solution> {
    let (rows, cols) = (m.rows, m.cols);
    if b.len() != rows {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {rows} rows",
            b.len()
        )));
    }
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            m.row(r)
                .iter()
                .chain(std::iter::once(&b[r]))
                .map(|v| Rational::from_integer(v.clone()))
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !aug[r][c].is_zero()) else {
            return Ok(Solution::RankDeficient);
        };
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][c].recip();
        for v in aug[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let pivot = aug[pivot_row].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == pivot_row || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot) {
                *v -= &f * p;
            }
        }
        pivot_row += 1;
    }
    if aug[cols..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(Solution::Inconsistent);
    }
    Ok(Solution::Unique(
        aug.into_iter()
            .take(cols)
            .map(|row| row[cols].clone())
            .collect(),
    ))
}

/// Rank of a set of integer vectors, reporting the first index that fails
/// to increase it.
pub(crate) fn first_dependent(vectors: &[Vec<BigInt>]) -> Option<usize> {
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w: Vec<Rational> = v.iter().cloned().map(Rational::from_integer).collect();
        for (lead, b) in &basis {
            if w[*lead].is_zero() {
                continue;
            }
            let f = w[*lead].clone();
            for (x, y) in w.iter_mut().zip(b) {
                *x -= &f * y;
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return Some(idx),
            Some(lead) => {
                let inv = w[lead].recip();
                for x in w.iter_mut() {
                    *x *= &inv;
                }
                basis.push((lead, w));
            }
        }
    }
    None
}

/// Precomputed `det(m) * m^{-1}` for repeated row-vector solves `x m^{-1}`.
///
/// Scaled coordinates `x * adj` are exact integers; they carry the sign of
/// the barycentric coordinates when multiplied by the sign of `det`. A
/// checked `i128` path is tried first and escalates to [`BigInt`] on
/// overflow.
#[derive(Clone, Debug)]
pub(crate) struct AdjugateSolver {
    n: usize,
    det: BigInt,
    adj: Vec<BigInt>,
    adj_small: Option<Vec<i128>>,
}

impl AdjugateSolver {
    pub(crate) fn new(m: &IntegerMatrix) -> Result<Self> {
        m.require_square()?;
        let n = m.rows;
        let det = determinant(m)?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let mut adj = vec![BigInt::zero(); n * n];
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let col = solve_rational(m, &e)?;
            for (i, v) in col.into_iter().enumerate() {
                let scaled = v * Rational::from_integer(det.clone());
                if !scaled.is_integer() {
                    return Err(Error::Internal("adjugate entry is not integral".into()));
                }
                adj[i * n + j] = scaled.to_integer();
            }
        }
        let adj_small = adj
            .iter()
            .map(|v| i128::try_from(v).ok())
            .collect::<Option<Vec<_>>>();
        Ok(AdjugateSolver {
            n,
            det,
            adj,
            adj_small,
        })
    }

    pub(crate) fn det(&self) -> &BigInt {
        &self.det
    }

    /// `x * adj` for an integer row vector given in `i64`.
    pub(crate) fn scaled_small(&self, x: &[i64]) -> ScaledCoords {
        if let Some(adj) = &self.adj_small {
            let mut out = vec![0i128; self.n];
            let mut ok = true;
            'outer: for (j, o) in out.iter_mut().enumerate() {
                let mut acc: i128 = 0;
                for (i, &xi) in x.iter().enumerate() {
                    let term = match (xi as i128).checked_mul(adj[i * self.n + j]) {
                        Some(t) => t,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    };
                    acc = match acc.checked_add(term) {
                        Some(a) => a,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    };
                }
                *o = acc;
            }
            if ok {
                return ScaledCoords::Small(out);
            }
        }
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        ScaledCoords::Big(self.scaled(&big))
    }

    pub(crate) fn scaled(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|j| {
                x.iter()
                    .enumerate()
                    .map(|(i, xi)| xi * &self.adj[i * self.n + j])
                    .sum()
            })
            .collect()
    }

    /// Exact `x m^{-1}`.
    pub(crate) fn solve_row(&self, x: &[BigInt]) -> Vec<Rational> {
        self.scaled(x)
            .into_iter()
            .map(|v| Rational::new(v, self.det.clone()))
            .collect()
    }
}

pub(crate) enum ScaledCoords {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl ScaledCoords {
    /// True iff every barycentric coordinate is >= 0 (or > 0 when strict),
    /// given the sign of the determinant.
    pub(crate) fn all_nonnegative(&self, det_positive: bool, strict: bool) -> bool {
        let ok = |s: std::cmp::Ordering| {
            let s = if det_positive { s } else { s.reverse() };
            if strict {
                s == std::cmp::Ordering::Greater
            } else {
                s != std::cmp::Ordering::Less
            }
        };
        match self {
            ScaledCoords::Small(v) => v.iter().all(|x| ok(x.cmp(&0))),
            ScaledCoords::Big(v) => v.iter().all(|x| ok(x.cmp(&BigInt::zero()))),
        }
    }
}
