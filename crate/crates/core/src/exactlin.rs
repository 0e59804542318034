//! Dense linear algebra over the rationals.
//!
//! Every basis, restriction block and differential in the crate is a
//! [`RatMatrix`]. Nothing here rounds: entries are arbitrary precision
//! fractions kept in lowest terms after every operation.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p/q"`, `"p"` or a decimal such as `"-2.5"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => int.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = whole.abs() * &scale + f;
        let numer = if negative { -mag } else { mag };
        return Ok(Rat::new(numer, scale));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Scale a nonzero vector to the primitive integer vector pointing the same way.
/// The zero vector is returned unchanged.
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &g))
        .collect()
}

/// Dense row-major matrix of rationals. Zero rows or zero columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rat).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rat).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        RatMatrix { rows, cols, data }
    }

    /// Build from row vectors; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        RatMatrix {
            rows: r,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<Rat>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column of wrong length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Matrix product. Zero entries of `self` are skipped, which makes
    /// products of sparse boundary matrices cheap.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> RatMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        RatMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Write `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub pivot_cols: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] *= &inv;
            }
        }
        let pivot_row: Vec<(usize, Rat)> = (c..a.cols)
            .filter(|&j| !a[(r, j)].is_zero())
            .map(|j| (j, a[(r, j)].clone()))
            .collect();
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for (j, v) in &pivot_row {
                a[(i, *j)] -= &f * v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        reduced: a,
        pivot_cols: pivots,
    }
}

/// Rank over the rationals.
///
/// Uses sparse incremental elimination: each row is reduced against the
/// pivot rows found so far, keyed by leading column.
pub fn rank(m: &RatMatrix) -> usize {
    // Eliminate along the shorter side; rank is transpose invariant.
    if m.rows > m.cols {
        return rank(&m.transpose());
    }
    let mut pivots: std::collections::BTreeMap<usize, Vec<(usize, Rat)>> = Default::default();
    for i in 0..m.rows {
        let mut row: Vec<(usize, Rat)> = m
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        while let Some((lead, lead_val)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => row = axpy_sparse(&row, &(-lead_val), p),
                None => {
                    let inv = lead_val.recip();
                    for e in row.iter_mut() {
                        e.1 *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `x + c * y` on sorted sparse vectors.
fn axpy_sparse(x: &[(usize, Rat)], c: &Rat, y: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let xi = x.get(i).map(|e| e.0);
        let yj = y.get(j).map(|e| e.0);
        match (xi, yj) {
            (Some(a), Some(b)) if a == b => {
                let v = &x[i].1 + c * &y[j].1;
                if !v.is_zero() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(x[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(x[i].clone());
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b, c * &y[j].1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Basis of the right null space, one vector per column.
pub fn kernel_basis(m: &RatMatrix) -> RatMatrix {
    let Rref {
        reduced,
        pivot_cols,
    } = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut k = RatMatrix::zeros(n, free.len());
    for (col, &f) in free.iter().enumerate() {
        k[(f, col)] = Rat::one();
        for (r, &p) in pivot_cols.iter().enumerate() {
            k[(p, col)] = -reduced[(r, f)].clone();
        }
    }
    k
}

/// Solve `basis * X = targets`. Free variables are set to zero when the
/// basis columns are dependent.
pub fn solve_in_span(basis: &RatMatrix, targets: &RatMatrix) -> Result<RatMatrix> {
    assert_eq!(basis.rows, targets.rows, "row mismatch in solve_in_span");
    let k = basis.cols;
    let aug = basis.hstack(targets);
    let Rref {
        reduced,
        pivot_cols,
    } = rref(&aug);
    if pivot_cols.iter().any(|&c| c >= k) {
        return Err(Error::NotInSpan);
    }
    let mut x = RatMatrix::zeros(k, targets.cols);
    for (r, &p) in pivot_cols.iter().enumerate() {
        for j in 0..targets.cols {
            x[(p, j)] = reduced[(r, k + j)].clone();
        }
    }
    Ok(x)
}

/// Canonical basis of the column space: the transpose of the nonzero rows of
/// `rref(mᵀ)`. Also returns, for each basis column, the row holding its
/// leading one (all other basis columns vanish there).
pub fn column_space(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let Rref {
        reduced,
        pivot_cols,
    } = rref(&m.transpose());
    let r = pivot_cols.len();
    let mut basis = RatMatrix::zeros(m.rows, r);
    for j in 0..r {
        for i in 0..m.rows {
            basis[(i, j)] = reduced[(j, i)].clone();
        }
    }
    (basis, pivot_cols)
}

/// Coordinates of `targets` in a basis produced by [`column_space`].
/// Reading the pivot rows gives the candidate solution; it is then checked.
pub fn coordinates_in(
    basis: &RatMatrix,
    pivot_rows: &[usize],
    targets: &RatMatrix,
) -> Result<RatMatrix> {
    let x = targets.select_rows(pivot_rows);
    if &basis.mul(&x) != targets {
        return Err(Error::NotInSpan);
    }
    Ok(x)
}

pub fn determinant(m: &RatMatrix) -> Rat {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det *= &piv;
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] / &piv;
            for j in c..n {
                let v = &f * &a[(c, j)];
                a[(i, j)] -= v;
            }
        }
    }
    det
}

/// Sign of the determinant of a square matrix.
pub fn sign_det(m: &RatMatrix) -> i8 {
    let d = determinant(m);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// All `p`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - p + i {
                cur[i] += 1;
                for k in i + 1..p {
                    cur[k] = cur[k - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The `p`-th compound matrix: the matrix of `∧^p a` with respect to the
/// lexicographically ordered wedge bases. Entry `(I, J)` is the minor of `a`
/// on rows `I` and columns `J`.
pub fn compound_matrix(a: &RatMatrix, p: usize) -> RatMatrix {
    let rs = subsets(a.rows, p);
    let cs = subsets(a.cols, p);
    let mut out = RatMatrix::zeros(rs.len(), cs.len());
    for (i, ri) in rs.iter().enumerate() {
        for (j, cj) in cs.iter().enumerate() {
            let minor = a.select_rows(ri).select_columns(cj);
            out[(i, j)] = if p == 0 {
                Rat::one()
            } else {
                determinant(&minor)
            };
        }
    }
    out
}
