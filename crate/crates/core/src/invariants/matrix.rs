use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// An `rows × cols` matrix with entries given row-major.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Panics if an entry does not fit in `i64`.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_i64().expect("entry fits in i64"))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Columns of `self` followed by the columns of `other`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack needs equal row counts".into()));
        }
        let cols = self.cols + other.cols;
        let mut out = IntMatrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] -= q · row[source]`
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let d = q * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] -= d;
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let d = q * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] -= d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | …`, all diagonal entries nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith normal form by elimination with the smallest-magnitude pivot.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_nonzero(&d, t..r, t..c) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                d.sub_row(i, t, &q);
                u.sub_row(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                d.sub_col(j, t, &q);
                v.sub_col(j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot appeared in row or column t
                let cand = smallest_in_cross(&d, t);
                if let Some((i, j)) = cand {
                    if i != t {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                    }
                    if j != t {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                    }
                }
                continue;
            }
            let bad = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(d.get(t, t)))
            });
            match bad {
                Some(i) => {
                    // fold row i into row t and eliminate again
                    let minus_one = -BigInt::one();
                    d.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

/// Diagonal of the Smith normal form without the transforms. Runs in `i64`
/// with checked arithmetic and redoes the work over `BigInt` on overflow.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let small: Option<Vec<i64>> = m.data.iter().map(|x| x.to_i64()).collect();
    small
        .and_then(|data| invariant_factors_i64(data, m.rows, m.cols))
        .map(|d| d.into_iter().map(BigInt::from).collect())
        .unwrap_or_else(|| smith_normal_form(m).diagonal())
}

fn invariant_factors_i64(mut d: Vec<i64>, r: usize, c: usize) -> Option<Vec<i64>> {
    let at = |i: usize, j: usize| i * c + j;
    let mut diag = vec![0i64; r.min(c)];
    for (t, slot) in diag.iter_mut().enumerate() {
        let mut pivot: Option<(usize, usize)> = None;
        'scan: for i in t..r {
            for j in t..c {
                let x = d[at(i, j)];
                if x != 0 && pivot.is_none_or(|(pi, pj)| x.unsigned_abs() < d[at(pi, pj)].unsigned_abs()) {
                    pivot = Some((i, j));
                    if x.unsigned_abs() == 1 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        for j in 0..c {
            d.swap(at(t, j), at(pi, j));
        }
        for i in 0..r {
            d.swap(at(i, t), at(i, pj));
        }
        loop {
            let p = d[at(t, t)];
            let mut clean = true;
            for i in t + 1..r {
                let x = d[at(i, t)];
                if x == 0 {
                    continue;
                }
                let q = x.div_euclid(p);
                for j in t..c {
                    d[at(i, j)] = d[at(i, j)].checked_sub(q.checked_mul(d[at(t, j)])?)?;
                }
                clean &= d[at(i, t)] == 0;
            }
            for j in t + 1..c {
                let x = d[at(t, j)];
                if x == 0 {
                    continue;
                }
                let q = x.div_euclid(p);
                for i in t..r {
                    d[at(i, j)] = d[at(i, j)].checked_sub(q.checked_mul(d[at(i, t)])?)?;
                }
                clean &= d[at(t, j)] == 0;
            }
            if !clean {
                let cells = (t..r).map(|i| (i, t)).chain((t + 1..c).map(|j| (t, j)));
                let (bi, bj) = cells
                    .filter(|&(i, j)| d[at(i, j)] != 0)
                    .min_by_key(|&(i, j)| d[at(i, j)].unsigned_abs())
                    .expect("pivot is nonzero");
                for j in 0..c {
                    d.swap(at(t, j), at(bi, j));
                }
                for i in 0..r {
                    d.swap(at(i, t), at(i, bj));
                }
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| d[at(i, j)] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..c {
                        d[at(t, j)] = d[at(t, j)].checked_add(d[at(i, j)])?;
                    }
                }
                None => break,
            }
        }
        *slot = d[at(t, t)].checked_abs()?;
    }
    Some(diag)
}

fn smallest_nonzero(
    d: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (from the diagonal on).
fn smallest_in_cross(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let cells = (t..d.rows).map(|i| (i, t)).chain((t + 1..d.cols).map(|j| (t, j)));
    for (i, j) in cells {
        let x = d.get(i, j);
        if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
            best = Some((i, j));
        }
    }
    best
}

/// Exact determinant (fraction-free Bareiss elimination).
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, x / &prev);
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1))
}

/// Basis of `{x ∈ Z^cols : M x = 0}` as the columns of the returned matrix.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let mut out = IntMatrix::zeros(m.cols, m.cols - rank);
    for (k, j) in (rank..m.cols).enumerate() {
        for i in 0..m.cols {
            out.set(i, k, snf.v.get(i, j).clone());
        }
    }
    out
}

/// An integral `x` with `M x = y`, if one exists.
pub fn solve(m: &IntMatrix, y: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let snf = smith_normal_form(m);
    solve_with(&snf, y)
}

pub(crate) fn solve_with(snf: &SmithDecomposition, y: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let z = snf.u.mul_vec(y)?;
    let diag = snf.diagonal();
    let cols = snf.v.rows;
    let mut w = vec![BigInt::zero(); cols];
    for (i, zi) in z.iter().enumerate() {
        let di = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            if !zi.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, rem) = zi.div_rem(&di);
            if !rem.is_zero() {
                return Ok(None);
            }
            w[i] = q;
        }
    }
    Ok(Some(snf.v.mul_vec(&w)?))
}
