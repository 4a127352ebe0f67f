//! Dense exact matrices over ℚ(ζ_N) and Gaussian elimination.

use std::fmt;

use super::cyclo::{lcm, CycScalar};
use crate::error::{Error, Result};

pub type Vector = Vec<CycScalar>;

impl PartialEq for Matrix {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl Eq for Matrix {}

#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    order: u64,
    data: Vec<CycScalar>,
}

/// Result of `solve`: one solution plus a kernel basis, or the index of a violated equation.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solution { particular: Vector, kernel: Vec<Vector> },
    Inconsistent { equation: usize },
}

pub fn zero_vec(n: usize, order: u64) -> Vector {
    vec![CycScalar::zero(order); n]
}

pub fn vec_is_zero(v: &[CycScalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_order(v: &[CycScalar]) -> u64 {
    v.iter().fold(1, |acc, x| lcm(acc, x.order()))
}

/// v += c·w
pub fn axpy(v: &mut [CycScalar], c: &CycScalar, w: &[CycScalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in v.iter_mut().zip(w.iter()) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

pub fn vec_scale(v: &[CycScalar], c: &CycScalar) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn dot(a: &[CycScalar], b: &[CycScalar]) -> CycScalar {
    let n = lcm(vec_order(a), vec_order(b));
    let mut s = CycScalar::zero(n);
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            s = &s + &(x * y);
        }
    }
    s
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, order: u64) -> Self {
        Matrix { rows, cols, order, data: vec![CycScalar::zero(order); rows * cols] }
    }

    pub fn identity(n: usize, order: u64) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.data[i * n + i] = CycScalar::one(order);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_data(rows, cols, data)
    }

    fn from_data(rows: usize, cols: usize, data: Vec<CycScalar>) -> Self {
        let order = vec_order(&data);
        let data = if data.iter().all(|x| x.order() == order) {
            data
        } else {
            data.into_iter().map(|x| x.lift(order).unwrap()).collect()
        };
        Matrix { rows, cols, order, data }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_data(r, c, rows.into_iter().flatten().collect()))
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_ints(rows: &[&[i64]], order: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| CycScalar::from_int(rows[i][j], order))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycScalar) {
        if v.order() != self.order {
            let m = lcm(self.order, v.order());
            if m != self.order {
                *self = self.lift(m);
            }
            self.data[i * self.cols + j] = v.lift(m).unwrap();
        } else {
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.data
    }

    pub fn lift(&self, m: u64) -> Self {
        if m == self.order {
            return self.clone();
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            order: m,
            data: self.data.iter().map(|x| x.lift(m).expect("order divides lift target")).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        Self::from_data(self.rows, self.cols, self.data.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, o: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "add: shape mismatch");
        Self::from_data(
            self.rows,
            self.cols,
            self.data.iter().zip(o.data.iter()).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, o: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "sub: shape mismatch");
        Self::from_data(
            self.rows,
            self.cols,
            self.data.iter().zip(o.data.iter()).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn mul(&self, o: &Matrix) -> Self {
        assert_eq!(self.cols, o.rows, "mul: shape mismatch");
        let n = lcm(self.order, o.order);
        let mut out = vec![CycScalar::zero(n); self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out[idx] = &out[idx] + &(a * b);
                    }
                }
            }
        }
        Matrix { rows: self.rows, cols: o.cols, order: n, data: out }
    }

    pub fn mul_vec(&self, v: &[CycScalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "mul_vec: shape mismatch");
        let n = lcm(self.order, vec_order(v));
        let mut out = vec![CycScalar::zero(n); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn kron(&self, o: &Matrix) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self.get(i / o.rows, j / o.cols) * o.get(i % o.rows, j % o.cols)
        })
    }

    pub fn trace(&self) -> CycScalar {
        let mut s = CycScalar::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            s = &s + self.get(i, i);
        }
        s
    }

    /// Columns `cols` of rows `rows`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let m = if rows.is_empty() {
            Matrix::zeros(0, self.cols, self.order)
        } else {
            Matrix::from_rows(rows).unwrap()
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i));
        }
        e.rank()
    }

    pub fn kernel(&self) -> Vec<Vector> {
        let (r, piv) = self.rref();
        kernel_from_rref(&r.to_rows()[..piv.len()], &piv, self.cols, self.order)
    }

    pub fn solve(&self, b: &[CycScalar]) -> SolveOutcome {
        assert_eq!(b.len(), self.rows, "solve: rhs length");
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i);
                r.push(b[i].clone());
                r
            })
            .collect();
        let piv = rref_rows(&mut rows, self.cols + 1);
        if let Some(&last) = piv.last() {
            if last == self.cols {
                return SolveOutcome::Inconsistent { equation: piv.len() - 1 };
            }
        }
        let n = lcm(self.order, vec_order(b));
        let mut x = zero_vec(self.cols, n);
        for (i, &c) in piv.iter().enumerate() {
            x[c] = rows[i][self.cols].clone();
        }
        let coeff_rows: Vec<Vector> = rows[..piv.len()].iter().map(|r| r[..self.cols].to_vec()).collect();
        let kernel = kernel_from_rref(&coeff_rows, &piv, self.cols, n);
        SolveOutcome::Solution { particular: x, kernel }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut rows: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                for j in 0..n {
                    r.push(if i == j { CycScalar::one(self.order) } else { CycScalar::zero(self.order) });
                }
                r
            })
            .collect();
        let piv = rref_rows(&mut rows, 2 * n);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular(format!("{n}x{n} matrix is singular")));
        }
        Ok(Matrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()).unwrap())
    }

    pub fn det(&self) -> Result<CycScalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("det of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = CycScalar::one(self.order);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(CycScalar::zero(self.order));
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv()?;
            let pivot_row = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if !row[c].is_zero() {
                    let f = -(&row[c] * &inv);
                    axpy(row, &f, &pivot_row);
                }
            }
        }
        Ok(det)
    }

    /// Independent columns spanning the column space.
    pub fn column_space(&self) -> Vec<Vector> {
        let mut e = Echelon::new(self.rows);
        let mut out = Vec::new();
        for j in 0..self.cols {
            let c = self.column(j);
            if e.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    }
}

/// In-place RREF on row vectors with `ncols` columns; returns pivot columns.
pub fn rref_rows(rows: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        if !inv.is_one() {
            rows[r] = vec_scale(&rows[r], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref(rows: &[Vector], pivots: &[usize], ncols: usize, order: u64) -> Vec<Vector> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(ncols, order);
        v[f] = CycScalar::one(order);
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rows[i][f].clone();
        }
        out.push(v);
    }
    out
}

/// Incremental row echelon basis of a subspace of F^n.
///
/// Optionally tracks, for every stored row, its expression in terms of the
/// independent vectors inserted so far, which makes `coordinates` available.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Vec<(usize, Vector)>,
    track: bool,
    combos: Vec<Vector>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new(), track: false, combos: Vec::new() }
    }

    pub fn tracking(n: usize) -> Self {
        Echelon { n, rows: Vec::new(), track: true, combos: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against stored rows; returns the remainder and (if tracking) the combination used.
    fn reduce(&self, mut v: Vector) -> (Vector, Option<Vector>) {
        let order = vec_order(&v);
        let mut combo = if self.track { Some(zero_vec(self.rows.len(), order)) } else { None };
        for (k, (p, row)) in self.rows.iter().enumerate() {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                axpy(&mut v, &(-c.clone()), row);
                if let Some(cb) = combo.as_mut() {
                    axpy(cb, &c, &self.combos[k]);
                }
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        vec_is_zero(&self.reduce(v.to_vec()).0)
    }

    /// Insert v; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.n, "echelon insert: length");
        let (mut r, combo) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].inv().unwrap();
        r = vec_scale(&r, &inv);
        if self.track {
            // new row = (v - Σ c_k row_k)/pivot expressed in originals
            let k = self.rows.len();
            let order = lcm(vec_order(&r), inv.order());
            for cb in self.combos.iter_mut() {
                cb.push(CycScalar::zero(order));
            }
            let mut cb = combo.unwrap();
            for x in cb.iter_mut() {
                *x = -(&*x * &inv);
            }
            cb.push(inv.clone());
            debug_assert_eq!(cb.len(), k + 1);
            self.combos.push(cb);
        }
        self.rows.push((p, r));
        true
    }

    /// Coordinates of v in the inserted independent vectors (tracking mode only).
    pub fn coordinates(&self, v: &[CycScalar]) -> Option<Vector> {
        assert!(self.track, "coordinates requires a tracking echelon");
        let (r, combo) = self.reduce(v.to_vec());
        if vec_is_zero(&r) {
            let mut c = combo.unwrap();
            let order = vec_order(&c).max(1);
            c.resize(self.rows.len(), CycScalar::zero(order));
            Some(c)
        } else {
            None
        }
    }

    /// Basis of the solution space of the stored rows viewed as homogeneous equations.
    pub fn nullspace(&self) -> Vec<Vector> {
        let order = self.rows.iter().fold(1, |a, (_, r)| lcm(a, vec_order(r)));
        let mut rows: Vec<Vector> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        let piv = rref_rows(&mut rows, self.n);
        kernel_from_rref(&rows[..piv.len()], &piv, self.n, order)
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over Q(z_{})", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_literal()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str, n: u64) -> CycScalar {
        CycScalar::parse(s, n).unwrap()
    }

    #[test]
    fn identity_rank() {
        let m = Matrix::identity(4, 3);
        assert_eq!(m.rank(), 4);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn singular_gaussian_matrix() {
        let m = Matrix::from_rows(vec![vec![z("1", 4), z("z", 4)], vec![z("z", 4), z("-1", 4)]]).unwrap();
        assert!(m.det().unwrap().is_zero());
        assert_eq!(m.rank(), 1);
        assert!(m.inverse().is_err());
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&m.mul_vec(&k[0])));
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(vec![
            vec![z("1", 8), z("z", 8), z("0", 8)],
            vec![z("2", 8), z("1/3", 8), z("z^2", 8)],
            vec![z("0", 8), z("1-z^3", 8), z("5", 8)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let d = m.det().unwrap();
        let di = inv.det().unwrap();
        assert!((&d * &di).is_one());
    }

    #[test]
    fn solve_reports() {
        let m = Matrix::from_ints(&[&[1, 2], &[2, 4]], 1);
        let b = vec![CycScalar::from_int(1, 1), CycScalar::from_int(3, 1)];
        assert!(matches!(m.solve(&b), SolveOutcome::Inconsistent { .. }));
        let b = vec![CycScalar::from_int(1, 1), CycScalar::from_int(2, 1)];
        match m.solve(&b) {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(m.mul_vec(&particular), b);
                assert_eq!(kernel.len(), 1);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = Echelon::tracking(3);
        let a = vec![z("1", 3), z("z", 3), z("0", 3)];
        let b = vec![z("0", 3), z("1", 3), z("2", 3)];
        assert!(e.insert(a.clone()));
        assert!(e.insert(b.clone()));
        let mut v = vec_scale(&a, &z("2", 3));
        axpy(&mut v, &z("z", 3), &b);
        let c = e.coordinates(&v).unwrap();
        assert_eq!(c, vec![z("2", 3), z("z", 3)]);
        assert!(!e.insert(v));
        assert!(e.coordinates(&[z("1", 3), z("0", 3), z("0", 3)]).is_none());
    }
}
