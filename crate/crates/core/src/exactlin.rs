//! Exact linear algebra over the rationals.
//!
//! Everything downstream (Hom spaces, Ext groups, homotopy classes of chain
//! maps) reduces to kernels, ranks and solves of small dense matrices, so the
//! implementation favours clarity over asymptotics.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Serialize, Serializer};

/// An exact rational number.
///
/// Arithmetic is overflow-checked: an operation whose result does not fit
/// panics instead of silently wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Ratio::from_integer(n as i128))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Ratio::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Ratio::one())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_add(&rhs.0).expect("rational overflow in add"))
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_sub(&rhs.0).expect("rational overflow in sub"))
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0.checked_mul(&rhs.0).expect("rational overflow in mul"))
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0.checked_div(&rhs.0).expect("rational overflow in div"))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = *self - rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub type Vector = Vec<Rational>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: zero_vec(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from integer rows; handy for fixtures.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| Rational::from_int(x)));
        }
        Matrix::new(r, c, data)
    }

    pub fn from_rows(rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend_from_slice(row);
        }
        Matrix::new(rows.len(), cols, data)
    }

    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| *a * *b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect();
        Matrix::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect();
        Matrix::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, s: Rational) -> Matrix {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|a| *a * s).collect())
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(self.rows + other.rows, self.cols, data)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }

    /// Reduced row echelon form and the strictly increasing pivot columns.
    ///
    /// The pivot in each column is the first row (at or below the current
    /// position) holding a nonzero entry.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let x = self[(r, j)];
                self[(r, j)] = x * inv;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)];
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let x = self[(r, j)];
                    if !x.is_zero() {
                        let y = self[(i, j)];
                        self[(i, j)] = y - f * x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = zero_vec(self.cols);
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)];
            }
            basis.push(v);
        }
        Subspace { ambient_dim: self.cols, basis }
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let aug = self.hstack(&Matrix::from_columns(&[b.to_vec()], self.rows));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)];
        }
        Some(x)
    }

    /// Basis of the column space.
    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.rows, (0..self.cols).map(|j| self.column(j)))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// A linear subspace of `Q^ambient_dim` with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: (0..ambient_dim).map(|i| unit_vec(ambient_dim, i)).collect() }
    }

    /// Span of arbitrary vectors; keeps the independent ones in input order.
    pub fn span<I: IntoIterator<Item = Vector>>(ambient_dim: usize, vectors: I) -> Self {
        let mut s = Subspace::zero(ambient_dim);
        let mut echelon = Echelon::new(ambient_dim);
        for v in vectors {
            assert_eq!(v.len(), ambient_dim);
            if echelon.insert(&v) {
                s.basis.push(v);
            }
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vector> {
        self.basis
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.basis, self.ambient_dim)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in this basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if self.basis.is_empty() {
            return is_zero_vec(v).then(Vec::new);
        }
        self.basis_matrix().solve(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::span(self.ambient_dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Standard basis vectors completing this subspace to the whole space,
    /// chosen greedily in index order.
    pub fn complement_basis(&self) -> Vec<Vector> {
        let mut echelon = Echelon::new(self.ambient_dim);
        for v in &self.basis {
            echelon.insert(v);
        }
        let mut out = Vec::new();
        for i in 0..self.ambient_dim {
            let e = unit_vec(self.ambient_dim, i);
            if echelon.insert(&e) {
                out.push(e);
            }
        }
        out
    }
}

/// Incremental row-echelon basis used for independence tests.
struct Echelon {
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    fn new(_ambient: usize) -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Inserts `v` if it is independent of what is already stored.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let f = w[*p];
            if !f.is_zero() {
                for (x, y) in w.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= f * *y;
                    }
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let inv = w[p].recip();
                for x in w.iter_mut() {
                    *x = *x * inv;
                }
                // keep stored rows reduced at the new pivot
                for (_, row) in self.rows.iter_mut() {
                    let f = row[p];
                    if !f.is_zero() {
                        for (x, y) in row.iter_mut().zip(&w) {
                            if !y.is_zero() {
                                *x -= f * *y;
                            }
                        }
                    }
                }
                self.rows.push((p, w));
                true
            }
        }
    }
}

/// Precomputed coordinate extraction for a matrix of full column rank.
///
/// `apply(v)` returns the unique `x` with `A x = v`, or `None` when `v` is
/// outside the column space.
#[derive(Clone, Debug)]
pub struct LeftInverse {
    cols: usize,
    // row operations E with E*A = [I; 0]
    ops: Matrix,
}

impl LeftInverse {
    pub fn new(a: &Matrix) -> Option<Self> {
        let n = a.rows();
        let (r, pivots) = a.hstack(&Matrix::identity(n)).rref();
        let k = a.cols();
        // full column rank iff the first k pivots are exactly 0..k
        if k > 0 && (pivots.len() < k || pivots[k - 1] != k - 1) {
            return None;
        }
        Some(LeftInverse { cols: k, ops: r.block(0, k, n, n) })
    }

    pub fn from_basis(s: &Subspace) -> Self {
        Self::new(&s.basis_matrix()).expect("subspace basis is independent")
    }

    pub fn apply(&self, v: &[Rational]) -> Option<Vector> {
        let ev = self.ops.mul_vec(v);
        if !is_zero_vec(&ev[self.cols..]) {
            return None;
        }
        Some(ev[..self.cols].to_vec())
    }
}

/// The quotient `upper / lower` of two nested subspaces, with chosen
/// representatives and a coordinate map.
#[derive(Clone, Debug)]
pub struct Quotient {
    lower_dim: usize,
    reps: Vec<Vector>,
    solver: LeftInverse,
}

impl Quotient {
    /// `lower` must be contained in `upper`.
    pub fn new(upper: &Subspace, lower: &Subspace) -> Self {
        assert_eq!(upper.ambient_dim(), lower.ambient_dim());
        let n = upper.ambient_dim();
        let mut echelon = Echelon::new(n);
        let mut basis: Vec<Vector> = Vec::new();
        for v in lower.basis() {
            let fresh = echelon.insert(v);
            debug_assert!(fresh);
            basis.push(v.clone());
        }
        let lower_dim = basis.len();
        let mut reps = Vec::new();
        for v in upper.basis() {
            if echelon.insert(v) {
                basis.push(v.clone());
                reps.push(v.clone());
            }
        }
        assert_eq!(basis.len(), upper.dim(), "lower subspace is not contained in upper");
        let solver = LeftInverse::new(&Matrix::from_columns(&basis, n)).expect("independent");
        Quotient { lower_dim, reps, solver }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vector] {
        &self.reps
    }

    /// Coordinates of the class of `v`; `None` if `v` is not in `upper`.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        self.solver.apply(v).map(|x| x[self.lower_dim..].to_vec())
    }
}

/// Radical of the trace form of a finite-dimensional algebra.
///
/// `structure[i][j]` holds the coordinates of `b_i * b_j` in the basis
/// `b_0..b_{m-1}`. In characteristic zero the radical of the form
/// `(x, y) -> tr(L_{xy})` is the Jacobson radical; the returned subspace is
/// that radical in basis coordinates.
pub fn trace_form_radical(structure: &[Vec<Vector>]) -> Subspace {
    let m = structure.len();
    // tr(L_{b_k}) = sum_l coefficient of b_l in b_k * b_l
    let traces: Vec<Rational> = (0..m).map(|k| (0..m).map(|l| structure[k][l][l]).sum()).collect();
    let mut gram = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            gram[(i, j)] = structure[i][j].iter().zip(&traces).map(|(c, t)| *c * *t).sum();
        }
    }
    gram.kernel_basis()
}
