//! Lie algebras given by structure constants, and [p]-operators on them.
//!
//! Basis indices are 0-based in this API; the JSON schema and the CLI use the
//! 1-based numbering `e_1, ..., e_n`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::{self, axpy, is_zero, unit_vector, zero_vector, Matrix, Subspace, Vector};

/// Coordinates of an algebra element in the ordered basis.
pub type Element = Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    field: Field,
    n: usize,
    /// Nonzero `[e_i, e_j]` for `i < j`.
    sc: BTreeMap<(usize, usize), Vector>,
}

impl LieAlgebra {
    /// Builds and validates an algebra. Pairs with `i > j` are stored as
    /// `[e_j, e_i] = -v`; pairs with `i == j` must carry the zero vector.
    pub fn new<I>(field: &Field, n: usize, brackets: I) -> Result<LieAlgebra>
    where
        I: IntoIterator<Item = ((usize, usize), Vector)>,
    {
        let mut sc: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange(format!(
                    "bracket [e{}, e{}] in a {n}-dimensional algebra",
                    i + 1,
                    j + 1
                )));
            }
            if v.len() != n {
                return Err(Error::Dimension(format!(
                    "bracket [e{}, e{}] has {} coordinates, expected {n}",
                    i + 1,
                    j + 1,
                    v.len()
                )));
            }
            if v.iter().any(|&x| !field.contains(x)) {
                return Err(Error::Dimension("bracket coordinates outside the field".into()));
            }
            if i == j {
                if !is_zero(&v) {
                    return Err(Error::InvalidParameters(format!(
                        "[e{}, e{}] must vanish",
                        i + 1,
                        i + 1
                    )));
                }
                continue;
            }
            let (key, v) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), linalg::scale(field, field.neg(field.one()), &v))
            };
            if sc.insert(key, v).is_some() {
                return Err(Error::InvalidParameters(format!(
                    "bracket [e{}, e{}] given twice",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
        }
        sc.retain(|_, v| !is_zero(v));
        let alg = LieAlgebra {
            field: field.clone(),
            n,
            sc,
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    pub fn abelian(field: &Field, n: usize) -> LieAlgebra {
        LieAlgebra {
            field: field.clone(),
            n,
            sc: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> Element {
        zero_vector(self.n)
    }

    pub fn basis(&self, i: usize) -> Element {
        unit_vector(&self.field, self.n, i)
    }

    /// Nonzero structure constants `[e_i, e_j]`, `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.sc.iter()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Element {
        let f = &self.field;
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.sc.get(&(i, j)).cloned().unwrap_or_else(|| self.zero()),
            std::cmp::Ordering::Greater => self
                .sc
                .get(&(j, i))
                .map(|v| linalg::scale(f, f.neg(f.one()), v))
                .unwrap_or_else(|| self.zero()),
            std::cmp::Ordering::Equal => self.zero(),
        }
    }

    pub fn bracket(&self, g: &[Fe], h: &[Fe]) -> Element {
        let f = &self.field;
        let mut out = self.zero();
        for (&(i, j), v) in &self.sc {
            let c = f.sub(f.mul(g[i], h[j]), f.mul(g[j], h[i]));
            axpy(f, c, v, &mut out);
        }
        out
    }

    /// Left-normed bracket `[[...[[g1, g2], g3], ...], gj]`.
    pub fn nfold_bracket(&self, gs: &[Element]) -> Result<Element> {
        if gs.len() < 2 {
            return Err(Error::InvalidParameters(
                "an iterated bracket needs at least two arguments".into(),
            ));
        }
        let mut acc = gs[0].clone();
        for g in &gs[1..] {
            acc = self.bracket(&acc, g);
        }
        Ok(acc)
    }

    /// Matrix of `h -> [g, h]`; column j holds `[g, e_j]`.
    pub fn ad_matrix(&self, g: &[Fe]) -> Matrix {
        let columns: Vec<Vector> = (0..self.n).map(|j| self.bracket(g, &self.basis(j))).collect();
        Matrix::from_columns(&self.field, self.n, &columns).expect("square")
    }

    fn check_jacobi(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let (ei, ej, ek) = (self.basis(i), self.basis(j), self.basis(k));
                    let mut sum = self.bracket(&self.bracket(&ei, &ej), &ek);
                    sum = linalg::add(&self.field, &sum, &self.bracket(&self.bracket(&ej, &ek), &ei));
                    sum = linalg::add(&self.field, &sum, &self.bracket(&self.bracket(&ek, &ei), &ej));
                    if !is_zero(&sum) {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Span of all brackets `[e_i, e_j]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        let vs: Vec<Vector> = self.sc.values().cloned().collect();
        Subspace::from_vectors(&self.field, self.n, &vs)
    }

    pub fn center(&self) -> Subspace {
        let mut stacked = Matrix::zeros(&self.field, 0, self.n);
        for j in 0..self.n {
            stacked = stacked.vstack(&self.ad_matrix(&self.basis(j))).expect("same width");
        }
        stacked.kernel()
    }

    /// `s_1(g,h), ..., s_{p-1}(g,h)`: `i s_i` is the coefficient of `t^{i-1}` in
    /// `ad(tg + h)^{p-1}(g)`.
    pub fn s_terms(&self, g: &[Fe], h: &[Fe]) -> Vec<Element> {
        let f = &self.field;
        let p = f.p() as usize;
        // coefficients of t^0, t^1, ...
        let mut poly: Vec<Element> = vec![g.to_vec()];
        for _ in 0..p - 1 {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                if is_zero(c) {
                    continue;
                }
                let hc = self.bracket(h, c);
                let gc = self.bracket(g, c);
                next[d] = linalg::add(f, &next[d], &hc);
                next[d + 1] = linalg::add(f, &next[d + 1], &gc);
            }
            poly = next;
        }
        (1..p)
            .map(|i| {
                let inv = f.inv_int(i as i64).expect("i < p");
                linalg::scale(f, inv, &poly[i - 1])
            })
            .collect()
    }

    fn s_sum(&self, g: &[Fe], h: &[Fe]) -> Element {
        let f = &self.field;
        if is_zero(g) || is_zero(h) {
            return self.zero();
        }
        self.s_terms(g, h)
            .iter()
            .fold(self.zero(), |acc, s| linalg::add(f, &acc, s))
    }

    /// Decides restrictability by solving `ad(x) = (ad e_i)^p` for every basis
    /// vector.
    pub fn jacobson_restrictable(&self) -> Restrictability {
        let f = &self.field;
        let n = self.n;
        let p = f.p() as u64;
        let ads: Vec<Matrix> = (0..n).map(|k| self.ad_matrix(&self.basis(k))).collect();
        let mut system = Matrix::zeros(f, n * n, n);
        for (k, ad) in ads.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    system.set(r * n + c, k, ad.get(r, c));
                }
            }
        }
        let mut witnesses = Vec::with_capacity(n);
        for (i, ad) in ads.iter().enumerate() {
            let target = ad.pow(p);
            let rhs: Vector = (0..n * n).map(|idx| target.get(idx / n, idx % n)).collect();
            match system.solve(&rhs) {
                Some(x) => witnesses.push(x),
                None => {
                    return Restrictability {
                        witnesses,
                        failing_index: Some(i),
                    }
                }
            }
        }
        Restrictability {
            witnesses,
            failing_index: None,
        }
    }
}

/// Outcome of the Jacobson test: one witness `x_i` with `ad x_i = (ad e_i)^p`
/// per basis vector, up to the first failure.
#[derive(Clone, Debug)]
pub struct Restrictability {
    pub witnesses: Vec<Element>,
    pub failing_index: Option<usize>,
}

impl Restrictability {
    pub fn is_restrictable(&self) -> bool {
        self.failing_index.is_none()
    }
}

/// A [p]-operator, recorded by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMap {
    algebra: LieAlgebra,
    values: Vec<Element>,
}

/// First violated restricted-algebra axiom found by [`PMap::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PMapViolation {
    /// `(a g)^[p] != a^p g^[p]`.
    Homogeneity { scalar: Fe, element: Element },
    /// `(g+h)^[p] != g^[p] + h^[p] + sum s_i(g,h)`, or the same with operands swapped.
    Additivity { g: Element, h: Element },
    /// Two peeling orders give different values.
    PeelingOrder { element: Element },
    /// `ad(g^[p]) != (ad g)^p`.
    AdPower { element: Element },
}

#[derive(Clone, Debug)]
pub struct PMapReport {
    pub checked: usize,
    pub violation: Option<PMapViolation>,
}

impl PMapReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl PMap {
    /// Validates `ad(e_i^[p]) = (ad e_i)^p` for every i.
    pub fn new(algebra: &LieAlgebra, values: Vec<Element>) -> Result<PMap> {
        let n = algebra.dim();
        if values.len() != n || values.iter().any(|v| v.len() != n) {
            return Err(Error::Dimension(format!(
                "a [p]-map on a {n}-dimensional algebra needs {n} values of length {n}"
            )));
        }
        let p = algebra.field().p() as u64;
        for (i, v) in values.iter().enumerate() {
            if algebra.ad_matrix(v) != algebra.ad_matrix(&algebra.basis(i)).pow(p) {
                return Err(Error::NotAPMap(i));
            }
        }
        Ok(PMap {
            algebra: algebra.clone(),
            values,
        })
    }

    /// The zero map on basis vectors; valid whenever every `(ad e_i)^p` vanishes.
    pub fn zero(algebra: &LieAlgebra) -> Result<PMap> {
        let values = vec![algebra.zero(); algebra.dim()];
        PMap::new(algebra, values)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn basis_values(&self) -> &[Element] {
        &self.values
    }

    fn term_power(&self, i: usize, a: Fe) -> Element {
        let f = self.algebra.field();
        linalg::scale(f, f.frobenius(a), &self.values[i])
    }

    /// `g^[p]`, peeling coordinates from the left:
    /// `(a_1 e_1 + r)^[p] = a_1^p e_1^[p] + r^[p] + sum s_i(a_1 e_1, r)`.
    pub fn p_extend(&self, g: &[Fe]) -> Element {
        let alg = &self.algebra;
        let f = alg.field();
        let mut suffix = alg.zero();
        let mut acc = alg.zero();
        for i in (0..alg.dim()).rev() {
            if g[i].is_zero() {
                continue;
            }
            let mut term = alg.zero();
            term[i] = g[i];
            acc = linalg::add(f, &acc, &self.term_power(i, g[i]));
            acc = linalg::add(f, &acc, &alg.s_sum(&term, &suffix));
            suffix[i] = g[i];
        }
        acc
    }

    /// `g^[p]` peeling from the right with the accumulated prefix as first operand.
    pub fn p_extend_reversed(&self, g: &[Fe]) -> Element {
        let alg = &self.algebra;
        let f = alg.field();
        let mut prefix = alg.zero();
        let mut acc = alg.zero();
        for i in 0..alg.dim() {
            if g[i].is_zero() {
                continue;
            }
            let mut term = alg.zero();
            term[i] = g[i];
            acc = linalg::add(f, &acc, &self.term_power(i, g[i]));
            acc = linalg::add(f, &acc, &alg.s_sum(&prefix, &term));
            prefix[i] = g[i];
        }
        acc
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        let f = self.algebra.field();
        (0..self.algebra.dim()).map(|_| f.random(rng)).collect()
    }

    /// Checks the restricted axioms on every basis vector and on `trials`
    /// random elements.
    pub fn verify<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> PMapReport {
        let alg = &self.algebra;
        let f = alg.field();
        let p = f.p() as u64;
        let mut samples: Vec<Element> = (0..alg.dim()).map(|i| alg.basis(i)).collect();
        samples.extend((0..trials).map(|_| self.random_element(rng)));
        let mut checked = 0;
        for g in &samples {
            checked += 1;
            let gp = self.p_extend(g);
            let a = f.random(rng);
            let ag = linalg::scale(f, a, g);
            if self.p_extend(&ag) != linalg::scale(f, f.frobenius(a), &gp) {
                return PMapReport {
                    checked,
                    violation: Some(PMapViolation::Homogeneity {
                        scalar: a,
                        element: g.clone(),
                    }),
                };
            }
            if self.p_extend_reversed(g) != gp {
                return PMapReport {
                    checked,
                    violation: Some(PMapViolation::PeelingOrder { element: g.clone() }),
                };
            }
            if alg.ad_matrix(&gp) != alg.ad_matrix(g).pow(p) {
                return PMapReport {
                    checked,
                    violation: Some(PMapViolation::AdPower { element: g.clone() }),
                };
            }
            let h = self.random_element(rng);
            let sum = linalg::add(f, g, &h);
            let lhs = self.p_extend(&sum);
            let hp = self.p_extend(&h);
            let base = linalg::add(f, &gp, &hp);
            let forward = linalg::add(f, &base, &alg.s_sum(g, &h));
            let backward = linalg::add(f, &base, &alg.s_sum(&h, g));
            if lhs != forward || lhs != backward {
                return PMapReport {
                    checked,
                    violation: Some(PMapViolation::Additivity { g: g.clone(), h }),
                };
            }
        }
        PMapReport {
            checked,
            violation: None,
        }
    }
}

/// Whether the linear map with columns `psi` (images of the source basis)
/// preserves brackets and [p]-maps. Checking on the basis suffices.
pub fn is_restricted_homomorphism(psi: &Matrix, source: &PMap, target: &PMap) -> bool {
    let (src, dst) = (source.algebra(), target.algebra());
    let n = src.dim();
    if psi.rows() != dst.dim() || psi.cols() != n {
        return false;
    }
    let images: Vec<Element> = (0..n).map(|j| psi.column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = psi.mul_vec(&src.bracket_basis(i, j));
            if lhs != dst.bracket(&images[i], &images[j]) {
                return false;
            }
        }
    }
    (0..n).all(|i| psi.mul_vec(&source.basis_values()[i]) == target.p_extend(&images[i]))
}

/// Whether `psi` is an isomorphism of restricted Lie algebras.
pub fn is_restricted_morphism(psi: &Matrix, source: &PMap, target: &PMap) -> bool {
    source.algebra().dim() == target.algebra().dim()
        && psi.inverse().is_some()
        && is_restricted_homomorphism(psi, source, target)
}

/// Sparse vector as `(1-based index, coefficient string)` pairs.
pub type SparseEntries = Vec<(usize, String)>;

/// Serialized form of an algebra (and optionally its [p]-map), 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: String,
    pub dim: usize,
    pub brackets: Vec<(usize, usize, SparseEntries)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Vec<(usize, SparseEntries)>>,
}

fn sparse_coords(f: &Field, v: &[Fe]) -> Vec<(usize, String)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, &x)| (k + 1, f.format(x)))
        .collect()
}

fn dense_coords(f: &Field, n: usize, entries: &[(usize, String)]) -> Result<Vector> {
    let mut v = zero_vector(n);
    for (k, s) in entries {
        if *k == 0 || *k > n {
            return Err(Error::IndexOutOfRange(format!("basis index {k} (1-based) in dimension {n}")));
        }
        v[k - 1] = f.add(v[k - 1], f.parse_elem(s)?);
    }
    Ok(v)
}

impl AlgebraJson {
    pub fn from_algebra(alg: &LieAlgebra, pmap: Option<&PMap>) -> AlgebraJson {
        let f = alg.field();
        AlgebraJson {
            field: f.spec_string(),
            dim: alg.dim(),
            brackets: alg
                .structure_constants()
                .map(|(&(i, j), v)| (i + 1, j + 1, sparse_coords(f, v)))
                .collect(),
            pmap: pmap.map(|pm| {
                pm.basis_values()
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i + 1, sparse_coords(f, v)))
                    .collect()
            }),
        }
    }

    /// Rebuilds and revalidates the algebra and [p]-map. Basis values missing
    /// from `pmap` are zero.
    pub fn to_algebra(&self) -> Result<(LieAlgebra, Option<PMap>)> {
        let f = Field::parse_spec(&self.field)?;
        let n = self.dim;
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (i, j, coords) in &self.brackets {
            if *i == 0 || *j == 0 {
                return Err(Error::IndexOutOfRange("bracket indices are 1-based".into()));
            }
            brackets.push(((i - 1, j - 1), dense_coords(&f, n, coords)?));
        }
        let alg = LieAlgebra::new(&f, n, brackets)?;
        let pmap = match &self.pmap {
            None => None,
            Some(entries) => {
                let mut values = vec![alg.zero(); n];
                for (i, coords) in entries {
                    if *i == 0 || *i > n {
                        return Err(Error::IndexOutOfRange(format!("pmap index {i}")));
                    }
                    values[i - 1] = dense_coords(&f, n, coords)?;
                }
                Some(PMap::new(&alg, values)?)
            }
        };
        Ok((alg, pmap))
    }
}
