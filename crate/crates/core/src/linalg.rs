//! Dense linear algebra over a [`Field`]: echelon forms, kernels, images and
//! quotient bases.
//!
//! Pivoting is deterministic (first nonzero entry at or below the current
//! row), so every basis produced here is reproducible.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

pub type Vector = Vec<Fe>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Fe::ZERO; n]
}

pub fn unit_vector(f: &Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = f.one();
    v
}

pub fn is_zero(v: &[Fe]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `y += a * x`.
pub fn axpy(f: &Field, a: Fe, x: &[Fe], y: &mut [Fe]) {
    if a.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = f.add(*yi, f.mul(a, xi));
        }
    }
}

pub fn scale(f: &Field, a: Fe, x: &[Fe]) -> Vector {
    x.iter().map(|&xi| f.mul(a, xi)).collect()
}

pub fn add(f: &Field, x: &[Fe], y: &[Fe]) -> Vector {
    x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
}

pub fn sub(f: &Field, x: &[Fe], y: &[Fe]) -> Vector {
    x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
}

pub fn dot(f: &Field, x: &[Fe], y: &[Fe]) -> Fe {
    x.iter()
        .zip(y)
        .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vector]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`Matrix::from_rows`] but keeps the column count when `rows` is empty.
    pub fn from_rows_with_cols(field: &Field, rows: &[Vector], cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                axpy(f, a, other.row(k), dst);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| dot(&self.field, self.row(r), v))
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            base = base.mul(&base).expect("square");
            e >>= 1;
        }
        acc
    }

    pub fn scaled(&self, a: Fe) -> Matrix {
        let mut m = self.clone();
        for x in &mut m.data {
            *x = self.field.mul(a, *x);
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |f, a, b| f.sub(a, b))
    }

    fn zip(&self, other: &Matrix, op: impl Fn(&Field, Fe, Fe) -> Fe) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = self.clone();
        for (x, &y) in m.data.iter_mut().zip(&other.data) {
            *x = op(&self.field, *x, y);
        }
        Ok(m)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut m = self.clone();
        m.rows += other.rows;
        m.data.extend_from_slice(&other.data);
        Ok(m)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(src) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if src != row {
                for c in 0..m.cols {
                    m.data.swap(src * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c);
                m.set(row, c, f.mul(inv, v));
            }
            let pivot_row = m.row(row).to_vec();
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if !factor.is_zero() {
                    let dst = &mut m.data[r * m.cols..(r + 1) * m.cols];
                    axpy(f, f.neg(factor), &pivot_row, dst);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Subspace {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = unit_vector(f, self.cols, free);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, &basis)
    }

    /// Column span.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(&self.field, self.rows, &self.column_vectors())
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[Fe]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, f.one());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, matrix.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// JSON array of rows of canonical field-element strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|r| {
                    Value::Array(
                        self.row(r)
                            .iter()
                            .map(|&x| Value::String(self.field.format(x)))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json(field: &Field, value: &Value) -> Result<Matrix> {
        let rows = value
            .as_array()
            .ok_or_else(|| Error::parse(0, "matrix must be an array of rows"))?;
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::parse(i, "matrix row must be an array"))?;
            let mut parsed = Vec::with_capacity(row.len());
            for entry in row {
                let s = entry
                    .as_str()
                    .ok_or_else(|| Error::parse(i, "matrix entries must be strings"))?;
                parsed.push(field.parse_elem(s)?);
            }
            out.push(parsed);
        }
        Matrix::from_rows(field, &out)
    }
}

/// A subspace of `F^ambient`, stored as the nonzero rows of a reduced row
/// echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        let basis: Vec<Vector> = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        let m = Matrix::from_rows_with_cols(field, vectors, ambient)
            .expect("spanning vectors must live in the ambient space");
        let Rref {
            matrix,
            pivots,
            rank,
        } = m.rref();
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..rank).map(|r| matrix.row(r).to_vec()).collect(),
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[Fe]) -> Vector {
        let f = &self.field;
        let mut r = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc];
            if !c.is_zero() {
                axpy(f, f.neg(c), b, &mut r);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        is_zero(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// Incremental echelon basis whose rows remember, as a coefficient vector,
/// which tagged inputs they were built from.
#[derive(Clone, Debug)]
pub struct TaggedEchelon {
    field: Field,
    tags: usize,
    rows: Vec<(Vector, Vector, usize)>,
}

impl TaggedEchelon {
    pub fn new(field: &Field, tags: usize) -> TaggedEchelon {
        TaggedEchelon {
            field: field.clone(),
            tags,
            rows: Vec::new(),
        }
    }

    fn reduce_tagged(&self, v: &[Fe], tag: &[Fe]) -> (Vector, Vector) {
        let f = &self.field;
        let (mut v, mut tag) = (v.to_vec(), tag.to_vec());
        for (row, row_tag, pc) in &self.rows {
            let c = v[*pc];
            if !c.is_zero() {
                let neg = f.neg(c);
                axpy(f, neg, row, &mut v);
                axpy(f, neg, row_tag, &mut tag);
            }
        }
        (v, tag)
    }

    /// Inserts `v` carrying `tag`; returns false if `v` was already in the span.
    pub fn insert(&mut self, v: &[Fe], tag: &[Fe]) -> bool {
        let (v, tag) = self.reduce_tagged(v, tag);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let f = &self.field;
        let inv = f.inv(v[pc]).expect("nonzero");
        self.rows.push((scale(f, inv, &v), scale(f, inv, &tag), pc));
        true
    }

    pub fn insert_untagged(&mut self, v: &[Fe]) -> bool {
        let zero = zero_vector(self.tags);
        self.insert(v, &zero)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// If `v` is in the span, the tag combination it reduces to.
    pub fn coordinates(&self, v: &[Fe]) -> Option<Vector> {
        let (rest, tag) = self.reduce_tagged(v, &zero_vector(self.tags));
        is_zero(&rest).then(|| tag.iter().map(|&t| self.field.neg(t)).collect())
    }
}

/// Representatives of a basis of `k / i`, chosen greedily from the echelon
/// basis of `k`.
pub fn quotient_basis(k: &Subspace, i: &Subspace) -> Result<Vec<Vector>> {
    if k.ambient != i.ambient {
        return Err(Error::Dimension("quotient of subspaces in different spaces".into()));
    }
    if !i.is_subspace_of(k) {
        return Err(Error::Internal(
            "image is not contained in the kernel (d o d != 0)".into(),
        ));
    }
    let mut ech = TaggedEchelon::new(&k.field, 0);
    for b in &i.basis {
        ech.insert_untagged(b);
    }
    let mut reps = Vec::new();
    for b in &k.basis {
        if ech.insert_untagged(b) {
            reps.push(b.clone());
        }
    }
    Ok(reps)
}

/// Coordinates of vectors in `span(reps) + image` with respect to `reps`,
/// ignoring the image part.
#[derive(Clone, Debug)]
pub struct QuotientCoordinates {
    ech: TaggedEchelon,
}

impl QuotientCoordinates {
    pub fn new(field: &Field, image: &Subspace, reps: &[Vector]) -> QuotientCoordinates {
        let mut ech = TaggedEchelon::new(field, reps.len());
        for b in image.basis() {
            ech.insert_untagged(b);
        }
        for (j, r) in reps.iter().enumerate() {
            let tag = unit_vector(field, reps.len(), j);
            let fresh = ech.insert(r, &tag);
            debug_assert!(fresh, "representatives must be independent modulo the image");
        }
        QuotientCoordinates { ech }
    }

    pub fn coordinates(&self, v: &[Fe]) -> Option<Vector> {
        self.ech.coordinates(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn mat(f: &Field, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect();
        Matrix::from_rows(f, &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(3);
        assert_eq!(Matrix::zeros(&f, 3, 4).rank(), 0);
        assert_eq!(Matrix::identity(&f, 5).rank(), 5);
        let m = mat(&f, &[&[1, 2], &[2, 1]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn kernel_and_image_examples() {
        let f = gf(5);
        assert_eq!(Matrix::identity(&f, 4).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(&f, 3, 3).kernel().dim(), 3);
        assert_eq!(Matrix::zeros(&f, 3, 3).image().dim(), 0);
        assert_eq!(Matrix::identity(&f, 3).image().dim(), 3);
    }

    #[test]
    fn quotient_examples() {
        let f = gf(7);
        let full = Subspace::full(&f, 2);
        assert!(quotient_basis(&full, &full).unwrap().is_empty());
        assert_eq!(quotient_basis(&full, &Subspace::zero(&f, 2)).unwrap().len(), 2);
        let line = Subspace::from_vectors(&f, 2, &[vec![f.one(), f.zero()]]);
        let other = Subspace::from_vectors(&f, 2, &[vec![f.zero(), f.one()]]);
        assert!(matches!(
            quotient_basis(&line, &other),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn solve_and_inverse() {
        let f = gf(5);
        let m = mat(&f, &[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&f, 2));
        let b = vec![f.from_int(1), f.from_int(1)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let singular = mat(&f, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[f.one(), f.zero()]).is_none());
    }

    #[test]
    fn rank_nullity_and_kernel_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)] {
            let f = Field::new(p, k, None).unwrap();
            for _ in 0..30 {
                let rows = 1 + (rand::Rng::gen_range(&mut rng, 0..7));
                let cols = 1 + (rand::Rng::gen_range(&mut rng, 0..7));
                let mut m = Matrix::zeros(&f, rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        // sparse-ish entries so that rank drops happen
                        if rand::Rng::gen_bool(&mut rng, 0.4) {
                            m.set(r, c, f.random(&mut rng));
                        }
                    }
                }
                let ker = m.kernel();
                assert_eq!(m.rank() + ker.dim(), cols);
                for v in ker.basis() {
                    assert!(is_zero(&m.mul_vec(v)));
                }
                assert_eq!(m.image().dim(), m.rank());
                assert_eq!(m.transpose().rank(), m.rank());
            }
        }
    }

    #[test]
    fn quotient_representatives_are_independent_modulo_image() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Field::new(3, 2, None).unwrap();
        for _ in 0..20 {
            let kvecs: Vec<Vector> = (0..4)
                .map(|_| (0..6).map(|_| f.random(&mut rng)).collect())
                .collect();
            let k = Subspace::from_vectors(&f, 6, &kvecs);
            let i = Subspace::from_vectors(&f, 6, &kvecs[..2]);
            let reps = quotient_basis(&k, &i).unwrap();
            assert_eq!(reps.len(), k.dim() - i.dim());
            let mut stacked = i.basis().to_vec();
            stacked.extend(reps.iter().cloned());
            assert_eq!(Subspace::from_vectors(&f, 6, &stacked).dim(), k.dim());
            for r in &reps {
                assert!(k.contains(r));
            }
            let qc = QuotientCoordinates::new(&f, &i, &reps);
            for (j, r) in reps.iter().enumerate() {
                let shifted = add(&f, r, &i.basis().first().cloned().unwrap_or(zero_vector(6)));
                assert_eq!(qc.coordinates(&shifted).unwrap(), unit_vector(&f, reps.len(), j));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = Field::new(3, 2, None).unwrap();
        let x = f.generator().unwrap();
        let m = Matrix::from_rows(&f, &[vec![x, f.one()], vec![f.zero(), f.add(x, x)]]).unwrap();
        let back = Matrix::from_json(&f, &m.to_json()).unwrap();
        assert_eq!(m, back);
    }
}
