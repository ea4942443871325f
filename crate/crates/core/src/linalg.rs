//! Dense matrices over F_p with deterministic Gaussian elimination.

use crate::fp;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds from row-major data, reducing entries modulo `p`.
    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        let data = data.into_iter().map(|v| v % p).collect();
        FpMatrix {
            p,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|v| v % p));
        }
        FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.p, other.p, "characteristic mismatch in product");
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (c, slot) in acc.iter_mut().enumerate() {
                    *slot += a * orow[c] as u64;
                }
                // keep the accumulator well clear of overflow
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (c, a) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = (a % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fp::add(a, b, self.p))
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fp::sub(a, b, self.p))
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let data = self.data.iter().map(|&a| fp::mul(a, c, self.p)).collect();
        FpMatrix { data, ..*self }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: u32, other: &FpMatrix) {
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = fp::add(*a, fp::mul(c, b, self.p), self.p);
        }
    }

    /// Reduced row echelon form; pivots are chosen as the first nonzero
    /// entry scanning columns left to right.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = fp::inv(m.get(r, c), p).expect("nonzero pivot");
            for k in c..m.cols {
                let v = fp::mul(m.get(r, k), inv, p);
                m.data[r * m.cols + k] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for k in c..m.cols {
                    let v = fp::sub(m.get(i, k), fp::mul(f, m.get(r, k), p), p);
                    m.data[i * m.cols + k] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full rref.
        let mut m = self.clone();
        let p = self.p;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = fp::inv(m.get(r, c), p).expect("nonzero pivot");
            for i in r + 1..m.rows {
                let f = fp::mul(m.get(i, c), inv, p);
                if f == 0 {
                    continue;
                }
                for k in c..m.cols {
                    let v = fp::sub(m.get(i, k), fp::mul(f, m.get(r, k), p), p);
                    m.data[i * m.cols + k] = v;
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1 % self.p;
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = red.matrix.get(r, n + c);
            }
        }
        Some(inv)
    }

    /// Basis of `{v : self * v = 0}`: one vector per free column of the
    /// reduced echelon form, in ascending column order.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let red = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &red.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1 % p;
            for (i, &pc) in red.pivots.iter().enumerate() {
                v[pc] = fp::neg(red.matrix.get(i, free), p);
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }
}

/// Row-reduced spanning set of vectors, supporting membership tests with
/// coordinates relative to the original spanning vectors.
#[derive(Clone, Debug)]
pub struct SpanEchelon {
    p: u32,
    len: usize,
    /// Reduced rows (one per independent generator).
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// `rows[i] = sum_j transform[i][j] * generators[j]`.
    transform: Vec<Vec<u32>>,
    generators: usize,
}

impl SpanEchelon {
    pub fn new(p: u32, len: usize, generators: &[Vec<u32>]) -> Self {
        let g = generators.len();
        let mut aug = FpMatrix::zeros(p, g, len + g);
        for (i, v) in generators.iter().enumerate() {
            assert_eq!(v.len(), len, "generator length mismatch");
            for (k, &x) in v.iter().enumerate() {
                aug.set(i, k, x);
            }
            aug.set(i, len + i, 1);
        }
        let red = aug.rref();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        let mut transform = Vec::new();
        for (i, &pc) in red.pivots.iter().enumerate() {
            if pc >= len {
                break;
            }
            rows.push(red.matrix.row(i)[..len].to_vec());
            transform.push(red.matrix.row(i)[len..].to_vec());
            pivots.push(pc);
        }
        SpanEchelon {
            p,
            len,
            rows,
            pivots,
            transform,
            generators: g,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduced_rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `v` minus its projection along the pivot coordinates. Zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c == 0 {
                continue;
            }
            for (a, &b) in r.iter_mut().zip(row) {
                *a = fp::sub(*a, fp::mul(c, b, p), p);
            }
        }
        r
    }

    /// Non-pivot coordinates of `reduce(v)`: a linear map whose kernel is
    /// exactly the span (the complement projector).
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        let mut is_pivot = vec![false; self.len];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        r.into_iter()
            .enumerate()
            .filter(|(i, _)| !is_pivot[*i])
            .map(|(_, x)| x)
            .collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` with respect to the original generators (when the
    /// generators are independent these are unique).
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        let p = self.p;
        let mut coords = vec![0u32; self.generators];
        for (t, &pc) in self.transform.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            for (a, &b) in coords.iter_mut().zip(t) {
                *a = fp::add(*a, fp::mul(c, b, p), p);
            }
        }
        Some(coords)
    }
}
