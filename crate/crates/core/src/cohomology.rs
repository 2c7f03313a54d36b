//! Chevalley–Eilenberg complex with trivial coefficients in degrees 0..3.
//!
//! Cochains are stored in the lexicographic dual bases `{e^k}`,
//! `{e^{i,j} : i < j}` and `{e^{u,v,w} : u < v < w}`.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::heisenberg::{make_heisenberg, make_twisted, Layout};
use crate::liealg::LieAlgebra;
use crate::linalg::{self, quotient_basis, Matrix, QuotientCoordinates, Subspace, Vector};

/// Number of cochain coordinates in degree `q` on an `n`-dimensional algebra.
pub fn cochain_dim(n: usize, q: usize) -> usize {
    match q {
        0 => 1,
        1 => n,
        2 => n * n.saturating_sub(1) / 2,
        3 => n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
        _ => panic!("cochains of degree {q} are not supported"),
    }
}

/// Lexicographic position of `e^{i,j}`, `i < j`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `i < j` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// All triples `u < v < w` in lexicographic order.
pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                out.push((u, v, w));
            }
        }
    }
    out
}

/// An alternating cochain of degree 1, 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    /// Dimension of the underlying algebra.
    pub n: usize,
    pub coords: Vector,
}

impl Cochain {
    pub fn zero(degree: usize, n: usize) -> Cochain {
        Cochain {
            degree,
            n,
            coords: linalg::zero_vector(cochain_dim(n, degree)),
        }
    }

    pub fn from_coords(degree: usize, n: usize, coords: Vector) -> Result<Cochain> {
        if coords.len() != cochain_dim(n, degree) {
            return Err(Error::Dimension(format!(
                "a degree-{degree} cochain on dimension {n} needs {} coordinates, got {}",
                cochain_dim(n, degree),
                coords.len()
            )));
        }
        Ok(Cochain { degree, n, coords })
    }

    /// `e^k`.
    pub fn dual(f: &Field, n: usize, k: usize) -> Cochain {
        Cochain {
            degree: 1,
            n,
            coords: linalg::unit_vector(f, n, k),
        }
    }

    /// `e^{i,j}`; for `i > j` this is `-e^{j,i}`, and zero for `i == j`.
    pub fn pair(f: &Field, n: usize, i: usize, j: usize) -> Cochain {
        let mut c = Cochain::zero(2, n);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => c.coords[pair_index(n, i, j)] = f.one(),
            std::cmp::Ordering::Greater => c.coords[pair_index(n, j, i)] = f.neg(f.one()),
            std::cmp::Ordering::Equal => {}
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero(&self.coords)
    }

    pub fn add(&self, f: &Field, other: &Cochain) -> Cochain {
        Cochain {
            degree: self.degree,
            n: self.n,
            coords: linalg::add(f, &self.coords, &other.coords),
        }
    }

    pub fn scaled(&self, f: &Field, a: Fe) -> Cochain {
        Cochain {
            degree: self.degree,
            n: self.n,
            coords: linalg::scale(f, a, &self.coords),
        }
    }

    /// `ψ(g)` for a 1-cochain.
    pub fn eval1(&self, f: &Field, g: &[Fe]) -> Fe {
        debug_assert_eq!(self.degree, 1);
        linalg::dot(f, &self.coords, g)
    }

    /// `φ(g ∧ h)` for a 2-cochain.
    pub fn eval2(&self, f: &Field, g: &[Fe], h: &[Fe]) -> Fe {
        debug_assert_eq!(self.degree, 2);
        eval_pair_coords(f, self.n, &self.coords, g, h)
    }

    /// Human-readable form with 1-based indices, e.g. `e^{1,2} + 4e^{3,4}`.
    pub fn format(&self, f: &Field) -> String {
        let labels: Vec<String> = match self.degree {
            1 => (1..=self.n).map(|k| format!("e^{k}")).collect(),
            2 => pairs(self.n)
                .into_iter()
                .map(|(i, j)| format!("e^{{{},{}}}", i + 1, j + 1))
                .collect(),
            _ => triples(self.n)
                .into_iter()
                .map(|(u, v, w)| format!("e^{{{},{},{}}}", u + 1, v + 1, w + 1))
                .collect(),
        };
        format_combination(f, &self.coords, &labels)
    }
}

/// Formats `Σ c_i label_i`, skipping zero coefficients; `0` if all vanish.
pub fn format_combination(f: &Field, coords: &[Fe], labels: &[String]) -> String {
    let terms: Vec<String> = coords
        .iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(&c, label)| {
            if c == f.one() {
                label.clone()
            } else {
                let s = f.format(c);
                if s.contains('+') || s.contains('x') {
                    format!("({s}){label}")
                } else {
                    format!("{s}{label}")
                }
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// `φ(g ∧ h)` from lexicographic pair coordinates.
pub(crate) fn eval_pair_coords(f: &Field, n: usize, coords: &[Fe], g: &[Fe], h: &[Fe]) -> Fe {
    let mut acc = f.zero();
    for i in 0..n {
        if g[i].is_zero() && h[i].is_zero() {
            continue;
        }
        for j in i + 1..n {
            let c = coords[pair_index(n, i, j)];
            if c.is_zero() {
                continue;
            }
            let minor = f.sub(f.mul(g[i], h[j]), f.mul(g[j], h[i]));
            acc = f.add(acc, f.mul(c, minor));
        }
    }
    acc
}

/// Adds `scale · (x ∧ e_w)` to a 2-cochain-coordinate functional, i.e. the
/// row that evaluates `φ(x ∧ e_w)` as a linear form in `φ`'s coordinates.
fn accumulate_wedge(f: &Field, n: usize, row: &mut [Fe], scale: Fe, x: &[Fe], w: usize) {
    for (k, &xk) in x.iter().enumerate() {
        if xk.is_zero() || k == w {
            continue;
        }
        let c = f.mul(scale, xk);
        if k < w {
            let idx = pair_index(n, k, w);
            row[idx] = f.add(row[idx], c);
        } else {
            let idx = pair_index(n, w, k);
            row[idx] = f.sub(row[idx], c);
        }
    }
}

/// Matrix of `d¹: C¹ → C²`, `d¹(ψ)(g ∧ h) = ψ([g, h])`.
pub fn d1_matrix(l: &LieAlgebra) -> Matrix {
    let f = l.field();
    let n = l.dim();
    let mut m = Matrix::zeros(f, cochain_dim(n, 2), n);
    for (r, (i, j)) in pairs(n).into_iter().enumerate() {
        for (k, &c) in l.bracket_basis(i, j).iter().enumerate() {
            m.set(r, k, c);
        }
    }
    m
}

/// Matrix of `d²: C² → C³`,
/// `d²(φ)(u ∧ v ∧ w) = φ([u,v] ∧ w) − φ([u,w] ∧ v) + φ([v,w] ∧ u)`.
pub fn d2_matrix(l: &LieAlgebra) -> Matrix {
    let f = l.field();
    let n = l.dim();
    let one = f.one();
    let minus = f.neg(one);
    let mut m = Matrix::zeros(f, cochain_dim(n, 3), cochain_dim(n, 2));
    for (r, (u, v, w)) in triples(n).into_iter().enumerate() {
        let mut row = linalg::zero_vector(cochain_dim(n, 2));
        accumulate_wedge(f, n, &mut row, one, &l.bracket_basis(u, v), w);
        accumulate_wedge(f, n, &mut row, minus, &l.bracket_basis(u, w), v);
        accumulate_wedge(f, n, &mut row, one, &l.bracket_basis(v, w), u);
        for (c, x) in row.into_iter().enumerate() {
            m.set(r, c, x);
        }
    }
    m
}

/// `H^q = ker d^q / im d^{q-1}` with deterministic representatives.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub q: usize,
    pub dim: usize,
    /// Coordinates of the chosen class representatives.
    pub representatives: Vec<Vector>,
    pub kernel: Subspace,
    pub image: Subspace,
}

impl CohomologyResult {
    /// Representatives as ordinary cochains on an `n`-dimensional algebra.
    pub fn cochains(&self, n: usize) -> Vec<Cochain> {
        self.representatives
            .iter()
            .map(|coords| Cochain {
                degree: self.q,
                n,
                coords: coords.clone(),
            })
            .collect()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn image_dim(&self) -> usize {
        self.image.dim()
    }

    /// Builds the result from the two subspaces, choosing representatives by
    /// echelon completion of `image` inside `kernel`.
    pub fn from_subspaces(q: usize, kernel: Subspace, image: Subspace) -> Result<Self> {
        let representatives = quotient_basis(&kernel, &image)?;
        Ok(CohomologyResult {
            q,
            dim: representatives.len(),
            representatives,
            kernel,
            image,
        })
    }

    /// True when `classes` are cocycles forming a basis of the quotient.
    pub fn is_basis(&self, classes: &[Vector]) -> bool {
        if classes.len() != self.dim || !classes.iter().all(|c| self.kernel.contains(c)) {
            return false;
        }
        let mut spanning = self.image.basis().to_vec();
        spanning.extend(classes.iter().cloned());
        Subspace::from_vectors(self.kernel.field(), self.kernel.ambient_dim(), &spanning).dim()
            == self.image.dim() + classes.len()
    }
}

/// Ordinary cohomology `H^q(L)` for `q ∈ {0, 1, 2}`.
pub fn ce_cohomology(l: &LieAlgebra, q: usize) -> Result<CohomologyResult> {
    let f = l.field();
    let n = l.dim();
    match q {
        0 => CohomologyResult::from_subspaces(0, Subspace::full(f, 1), Subspace::zero(f, 1)),
        1 => CohomologyResult::from_subspaces(1, d1_matrix(l).kernel(), Subspace::zero(f, n)),
        2 => CohomologyResult::from_subspaces(2, d2_matrix(l).kernel(), d1_matrix(l).image()),
        _ => Err(Error::InvalidParameters(format!(
            "cohomology is computed in degrees 0, 1, 2 only (got {q})"
        ))),
    }
}

/// The explicit basis of `H²(h_m^λ)`: for each pair `i < j` with
/// `λ_i = ±λ_j` the classes `e^{i,j} − λ_iλ_j^{-1} e^{m+i,m+j}` and
/// `e^{i,m+j} − λ_iλ_j^{-1} e^{m+i,j}`, then `e^{i,m+i}` for `i ≤ m−1`.
/// Pairs with `λ_i ≠ ±λ_j` contribute nothing.
pub fn paper_basis_h2(f: &Field, m: usize, lambda: &[Fe]) -> Vec<Cochain> {
    let lay = Layout { m };
    let n = lay.dim();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if lambda[i] != lambda[j] && lambda[i] != f.neg(lambda[j]) {
                continue;
            }
            let ratio = f.neg(f.div(lambda[i], lambda[j]).expect("nonzero lambda"));
            let first = Cochain::pair(f, n, lay.x(i), lay.x(j))
                .add(f, &Cochain::pair(f, n, lay.y(i), lay.y(j)).scaled(f, ratio));
            let second = Cochain::pair(f, n, lay.x(i), lay.y(j))
                .add(f, &Cochain::pair(f, n, lay.y(i), lay.x(j)).scaled(f, ratio));
            out.push(first);
            out.push(second);
        }
    }
    for i in 0..m.saturating_sub(1) {
        out.push(Cochain::pair(f, n, lay.x(i), lay.y(i)));
    }
    out
}

/// Matrix of the action of a derivation `d` (given as an n×n matrix acting on
/// the algebra) on `C^q`: `(d·φ)(g_1 ∧ … ∧ g_q) = −Σ φ(g_1 ∧ … ∧ d g_i ∧ … ∧ g_q)`.
pub fn cochain_action(d: &Matrix, q: usize) -> Matrix {
    let f = d.field();
    let n = d.rows();
    match q {
        0 => Matrix::zeros(f, 1, 1),
        1 => d.transpose().scaled(f.neg(f.one())),
        2 => {
            let ps = pairs(n);
            let mut m = Matrix::zeros(f, ps.len(), ps.len());
            let cols = d.column_vectors();
            for (c, &(a, b)) in ps.iter().enumerate() {
                let phi = Cochain::pair(f, n, a, b);
                for (r, &(u, v)) in ps.iter().enumerate() {
                    let eu = linalg::unit_vector(f, n, u);
                    let ev = linalg::unit_vector(f, n, v);
                    let val = f.add(phi.eval2(f, &cols[u], &ev), phi.eval2(f, &eu, &cols[v]));
                    m.set(r, c, f.neg(val));
                }
            }
            m
        }
        _ => panic!("cochain action in degree {q} is not supported"),
    }
}

/// Matrix of the action of `e_{2m+2}` on `H^q(h_m)`, `q ∈ {0, 1, 2}`, in the
/// basis of representatives returned by `ce_cohomology(h_m, q)`.
///
/// Sign convention: `(x·φ)(g_1 ∧ … ∧ g_q) = −Σ φ(… ∧ [x, g_i] ∧ …)`.
pub fn quotient_action(f: &Field, m: usize, lambda: &[Fe]) -> Result<[Matrix; 3]> {
    let twisted = make_twisted(f, m, lambda)?;
    let heis = make_heisenberg(f, m)?;
    let lay = Layout { m };
    let hn = heis.dim();
    let ad = twisted.ad_matrix(&twisted.basis(lay.t()));
    let mut d = Matrix::zeros(f, hn, hn);
    for r in 0..hn {
        for c in 0..hn {
            d.set(r, c, ad.get(r, c));
        }
    }
    let mut out = Vec::with_capacity(3);
    for q in 0..3 {
        out.push(descend_action(&ce_cohomology(&heis, q)?, &cochain_action(&d, q))?);
    }
    Ok(out.try_into().expect("three degrees"))
}

/// Descends a cochain-level map preserving cocycles and coboundaries to the
/// matrix on the chosen representatives.
fn descend_action(h: &CohomologyResult, action: &Matrix) -> Result<Matrix> {
    let f = h.kernel.field();
    for b in h.image.basis() {
        if !h.image.contains(&action.mul_vec(b)) {
            return Err(Error::Internal(
                "action does not preserve coboundaries".into(),
            ));
        }
    }
    let reps = &h.representatives;
    let coords = QuotientCoordinates::new(f, &h.image, reps);
    let mut columns = Vec::with_capacity(reps.len());
    for r in reps {
        let image = action.mul_vec(r);
        let c = coords.coordinates(&image).ok_or_else(|| {
            Error::Internal("action does not preserve cocycles".into())
        })?;
        columns.push(c);
    }
    Matrix::from_columns(f, reps.len(), &columns)
}

/// Dimensions entering the rank-one Hochschild–Serre decomposition
/// `H^k(h_m^λ) = H^k(h_m)^{inv} ⊕ H^{k-1}(h_m)_{coinv}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsReport {
    pub k: usize,
    pub dim_twisted: usize,
    pub dim_heisenberg: usize,
    pub invariants: usize,
    pub coinvariants: usize,
}

impl HsReport {
    pub fn holds(&self) -> bool {
        self.dim_twisted == self.invariants + self.coinvariants
    }
}

pub fn hs_dimension_check(f: &Field, m: usize, lambda: &[Fe], k: usize) -> Result<HsReport> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidParameters(format!(
            "decomposition check is implemented for k = 1, 2 (got {k})"
        )));
    }
    let twisted = make_twisted(f, m, lambda)?;
    let actions = quotient_action(f, m, lambda)?;
    let top = &actions[k];
    let below = &actions[k - 1];
    Ok(HsReport {
        k,
        dim_twisted: ce_cohomology(&twisted, k)?.dim,
        dim_heisenberg: top.rows(),
        invariants: top.rows() - top.rank(),
        coinvariants: below.rows() - below.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::coincidence_card;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn ints(f: &Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn indexing() {
        let n = 5;
        for (idx, (i, j)) in pairs(n).into_iter().enumerate() {
            assert_eq!(pair_index(n, i, j), idx);
        }
        assert_eq!(triples(5).len(), 10);
        assert_eq!(cochain_dim(4, 2), 6);
        assert_eq!(cochain_dim(4, 3), 4);
    }

    #[test]
    fn d1_examples() {
        let f = gf(3);
        let h1 = make_heisenberg(&f, 1).unwrap();
        let d1 = d1_matrix(&h1);
        assert_eq!(d1.column(2), Cochain::pair(&f, 3, 0, 1).coords);

        let f5 = gf(5);
        let lam = f5.from_int(2);
        let alg = make_twisted(&f5, 1, &[lam]).unwrap();
        let d1 = d1_matrix(&alg);
        let expected = Cochain::pair(&f5, 4, 1, 3).scaled(&f5, f5.neg(lam));
        assert_eq!(d1.column(0), expected.coords);
        assert!(linalg::is_zero(&d1.column(3)));
        assert_eq!(d1.kernel().dim(), 1);

        let ab = LieAlgebra::abelian(&f, 4);
        assert!(d1_matrix(&ab).is_zero());
        assert!(d2_matrix(&ab).is_zero());
    }

    #[test]
    fn complex_property() {
        let f = gf(5);
        let alg = make_twisted(&f, 2, &ints(&f, &[1, 3])).unwrap();
        assert!(d2_matrix(&alg).mul(&d1_matrix(&alg)).unwrap().is_zero());
    }

    #[test]
    fn cohomology_examples() {
        let f = gf(3);
        let alg = make_twisted(&f, 1, &ints(&f, &[1])).unwrap();
        let h1 = ce_cohomology(&alg, 1).unwrap();
        assert_eq!(h1.dim, 1);
        assert_eq!(h1.representatives[0], Cochain::dual(&f, 4, 3).coords);
        assert_eq!(ce_cohomology(&alg, 2).unwrap().dim, 0);

        let f5 = gf(5);
        let lambda = ints(&f5, &[1, 1]);
        let alg = make_twisted(&f5, 2, &lambda).unwrap();
        let h2 = ce_cohomology(&alg, 2).unwrap();
        assert_eq!(h2.dim, 3);
        assert_eq!(h2.dim, h2.kernel_dim() - h2.image_dim());
        let classes: Vec<Vector> = paper_basis_h2(&f5, 2, &lambda)
            .into_iter()
            .map(|c| c.coords)
            .collect();
        assert!(h2.is_basis(&classes));
        assert!(paper_basis_h2(&f5, 1, &ints(&f5, &[2])).is_empty());
    }

    #[test]
    fn heisenberg_dims() {
        let f = gf(5);
        for m in 1..=3 {
            let h = make_heisenberg(&f, m).unwrap();
            assert_eq!(ce_cohomology(&h, 1).unwrap().dim, 2 * m);
            let d2 = ce_cohomology(&h, 2).unwrap().dim;
            if m >= 2 {
                assert_eq!(d2, 2 * m * (2 * m - 1) / 2 - 1);
            } else {
                assert_eq!(d2, 2);
            }
        }
    }

    #[test]
    fn twisted_h2_formula_gf25() {
        let f = Field::new(5, 2, None).unwrap();
        let lambda = ints(&f, &[1, 1, 4]);
        let alg = make_twisted(&f, 3, &lambda).unwrap();
        let h2 = ce_cohomology(&alg, 2).unwrap();
        assert_eq!(h2.dim, 8);
        assert_eq!(h2.dim, 2 * coincidence_card(&f, &lambda) + 2);
    }

    #[test]
    fn action_examples() {
        let f = gf(5);
        let lam = f.from_int(2);
        let [a0, a1, _] = quotient_action(&f, 1, &[lam]).unwrap();
        assert!(a0.is_zero());
        assert_eq!(a0.rows(), 1);
        // H^1(h_1) has representatives e^1, e^2 (echelon order).
        let h = ce_cohomology(&make_heisenberg(&f, 1).unwrap(), 1).unwrap();
        assert_eq!(h.representatives[0], Cochain::dual(&f, 3, 0).coords);
        assert_eq!(h.representatives[1], Cochain::dual(&f, 3, 1).coords);
        let ml = f.neg(lam);
        let expected = Matrix::from_rows(&f, &[vec![f.zero(), ml], vec![ml, f.zero()]]).unwrap();
        assert_eq!(a1, expected);
    }

    #[test]
    fn hs_examples() {
        let f = gf(5);
        let r = hs_dimension_check(&f, 2, &ints(&f, &[1, 1]), 1).unwrap();
        assert_eq!((r.dim_twisted, r.invariants, r.coinvariants), (1, 0, 1));
        let r = hs_dimension_check(&f, 2, &ints(&f, &[1, 1]), 2).unwrap();
        assert_eq!((r.dim_twisted, r.invariants, r.coinvariants), (3, 3, 0));
        let r = hs_dimension_check(&f, 1, &ints(&f, &[3]), 2).unwrap();
        assert_eq!((r.dim_twisted, r.invariants, r.coinvariants), (0, 0, 0));
        assert!(r.holds());
    }

    #[test]
    fn format_cochain() {
        let f = gf(5);
        let c = Cochain::pair(&f, 4, 0, 1).add(&f, &Cochain::pair(&f, 4, 3, 2));
        assert_eq!(c.format(&f), "e^{1,2} + 4e^{3,4}");
        assert_eq!(Cochain::zero(2, 4).format(&f), "0");
    }
}
