//! Dense exact linear algebra over `Q(ζ_N)`: row reduction, nullspaces, spans.

use thiserror::Error;

use crate::cyclotomic::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    entries: Vec<CycScalar>,
}

impl Matrix {
    pub fn zeros(conductor: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            conductor,
            entries: vec![CycScalar::zero(conductor); rows * cols],
        }
    }

    pub fn identity(conductor: u32, n: usize) -> Self {
        let mut m = Self::zeros(conductor, n, n);
        for i in 0..n {
            m.set(i, i, CycScalar::one(conductor));
        }
        m
    }

    pub fn from_rows(conductor: u32, cols: usize, rows: Vec<Vec<CycScalar>>) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, conductor, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vector(&self, v: &[CycScalar]) -> Result<Vec<CycScalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(CycScalar::zero(self.conductor), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Gauss–Jordan elimination; returns the reduced matrix and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut ech = Echelon::new(self.conductor, self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        let pivots = ech.pivots.clone();
        let mut out = Matrix::zeros(self.conductor, self.rows, self.cols);
        for (i, row) in ech.into_rref_rows().into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                out.set(i, c, v);
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : Mv = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<CycScalar>> {
        let mut ech = Echelon::new(self.conductor, self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.nullspace()
    }
}

/// Incrementally maintained reduced row echelon basis of a row space.
///
/// Rows are kept fully reduced against each other with pivot entry 1, so
/// membership tests are a single reduction pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    conductor: u32,
    cols: usize,
    rows: Vec<Vec<CycScalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(conductor: u32, cols: usize) -> Self {
        Echelon { conductor, cols, rows: vec![], pivots: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn reduce(&self, mut v: Vec<CycScalar>) -> Vec<CycScalar> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[c] = &v[c] - &(&f * x);
                }
            }
        }
        v
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<CycScalar>) -> bool {
        assert_eq!(v.len(), self.cols, "row length");
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        let v: Vec<CycScalar> = v.iter().map(|x| if x.is_zero() { x.clone() } else { x * &inv }).collect();
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (c, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    row[c] = &row[c] - &(&f * x);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        assert_eq!(v.len(), self.cols, "row length");
        self.reduce(v.to_vec()).iter().all(CycScalar::is_zero)
    }

    pub fn into_rref_rows(self) -> Vec<Vec<CycScalar>> {
        self.rows
    }

    pub fn nullspace(&self) -> Vec<Vec<CycScalar>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycScalar::zero(self.conductor); self.cols];
                v[f] = CycScalar::one(self.conductor);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -&row[f];
                }
                v
            })
            .collect()
    }
}

fn check_dims(vectors: &[Vec<CycScalar>], dim: usize) -> Result<(), LinalgError> {
    match vectors.iter().find(|v| v.len() != dim) {
        Some(v) => Err(LinalgError::DimensionMismatch { expected: dim, found: v.len() }),
        None => Ok(()),
    }
}

pub fn span_rank(conductor: u32, dim: usize, vectors: &[Vec<CycScalar>]) -> Result<usize, LinalgError> {
    check_dims(vectors, dim)?;
    let mut e = Echelon::new(conductor, dim);
    for v in vectors {
        e.insert(v.clone());
    }
    Ok(e.rank())
}

/// Is `target` in the span of `vectors`?
pub fn in_span(conductor: u32, target: &[CycScalar], vectors: &[Vec<CycScalar>]) -> Result<bool, LinalgError> {
    let dim = target.len();
    check_dims(vectors, dim)?;
    let mut e = Echelon::new(conductor, dim);
    for v in vectors {
        e.insert(v.clone());
    }
    Ok(e.contains(target))
}

pub fn span_equal(conductor: u32, a: &[Vec<CycScalar>], b: &[Vec<CycScalar>]) -> Result<bool, LinalgError> {
    let dim = match a.first().or(b.first()) {
        Some(v) => v.len(),
        None => return Ok(true),
    };
    let ra = span_rank(conductor, dim, a)?;
    let rb = span_rank(conductor, dim, b)?;
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    let rab = span_rank(conductor, dim, &both)?;
    Ok(ra == rab && rb == rab)
}
