//! Restricted cochain complex with trivial coefficients in degrees ≤ 3.
//!
//! `C²_*` is coordinatized by `(c_{ij}, b_i)`: `c` are the coordinates of φ
//! and `b_i = ω(e_i)`. `C³_*` is coordinatized by `(ζ, η)` with `η` stored on
//! basis pairs, row-major.

use rand::Rng;

use crate::cohomology::{
    cochain_dim, d1_matrix, d2_matrix, eval_pair_coords, paper_basis_h2, ce_cohomology, Cochain,
    CohomologyResult,
};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::heisenberg::Layout;
use crate::liealg::{Element, LieAlgebra, PMap};
use crate::linalg::{self, Matrix, Subspace, Vector};

/// Largest prime for which compatible maps are evaluated by word enumeration.
pub const MAX_WORD_PRIME: u32 = 13;

/// A restricted 2-cochain `(φ, ω)` with ω given by its basis values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedCochain2 {
    pub phi: Cochain,
    pub omega: Vector,
}

impl RestrictedCochain2 {
    pub fn zero(n: usize) -> Self {
        RestrictedCochain2 {
            phi: Cochain::zero(2, n),
            omega: linalg::zero_vector(n),
        }
    }

    /// `(φ, φ̃)`: the compatible map vanishing on the basis.
    pub fn tilde(phi: Cochain) -> Self {
        let n = phi.n;
        RestrictedCochain2 {
            phi,
            omega: linalg::zero_vector(n),
        }
    }

    /// `(0, ē^i)`.
    pub fn frobenius_dual(f: &Field, n: usize, i: usize) -> Self {
        RestrictedCochain2 {
            phi: Cochain::zero(2, n),
            omega: linalg::unit_vector(f, n, i),
        }
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn coords(&self) -> Vector {
        let mut v = self.phi.coords.clone();
        v.extend_from_slice(&self.omega);
        v
    }

    pub fn from_coords(n: usize, coords: &[Fe]) -> Result<Self> {
        let c2 = cochain_dim(n, 2);
        if coords.len() != c2 + n {
            return Err(Error::Dimension(format!(
                "C2_* on dimension {n} has {} coordinates, got {}",
                c2 + n,
                coords.len()
            )));
        }
        Ok(RestrictedCochain2 {
            phi: Cochain::from_coords(2, n, coords[..c2].to_vec())?,
            omega: coords[c2..].to_vec(),
        })
    }

    /// `(φ-part, ω-part)` with ω written in the basis `ē^i`.
    pub fn format(&self, f: &Field) -> String {
        let labels: Vec<String> = (1..=self.n()).map(|i| format!("ebar^{i}")).collect();
        format!(
            "({}, {})",
            self.phi.format(f),
            crate::cohomology::format_combination(f, &self.omega, &labels)
        )
    }
}

/// A restricted 3-cochain `(ζ, η)` with η stored on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedCochain3 {
    pub zeta: Cochain,
    pub eta: Matrix,
}

impl RestrictedCochain3 {
    pub fn from_coords(f: &Field, n: usize, coords: &[Fe]) -> Result<Self> {
        let c3 = cochain_dim(n, 3);
        if coords.len() != c3 + n * n {
            return Err(Error::Dimension(format!(
                "C3_* on dimension {n} has {} coordinates, got {}",
                c3 + n * n,
                coords.len()
            )));
        }
        let rows: Vec<Vector> = coords[c3..].chunks(n).map(|r| r.to_vec()).collect();
        Ok(RestrictedCochain3 {
            zeta: Cochain::from_coords(3, n, coords[..c3].to_vec())?,
            eta: Matrix::from_rows_with_cols(f, &rows, n)?,
        })
    }
}

fn check_prime(f: &Field) -> Result<()> {
    if f.p() > MAX_WORD_PRIME {
        return Err(Error::PrimeTooLarge(f.p()));
    }
    Ok(())
}

/// `Σ (1/#(g)) φ([g_1, …, g_{p-1}] ∧ g_p)` over words of length p in `{g, h}`
/// with `g_1 = g`, `g_2 = h`.
fn word_sum(l: &LieAlgebra, phi: &[Fe], g: &[Fe], h: &[Fe]) -> Fe {
    let f = l.field();
    let p = f.p() as usize;
    let n = l.dim();
    let inverses: Vec<Fe> = (0..p)
        .map(|k| if k == 0 { f.zero() } else { f.inv_int(k as i64).unwrap() })
        .collect();
    let mut acc = f.zero();
    // (bracket of the first `len` letters, number of g's so far, len)
    let mut stack: Vec<(Element, usize, usize)> = vec![(l.bracket(g, h), 1, 2)];
    while let Some((x, count, len)) = stack.pop() {
        if linalg::is_zero(&x) {
            continue;
        }
        if len == p - 1 {
            let with_g = f.mul(inverses[count + 1], eval_pair_coords(f, n, phi, &x, g));
            let with_h = f.mul(inverses[count], eval_pair_coords(f, n, phi, &x, h));
            acc = f.add(acc, f.add(with_g, with_h));
            continue;
        }
        stack.push((l.bracket(&x, g), count + 1, len + 1));
        stack.push((l.bracket(&x, h), count, len + 1));
    }
    acc
}

/// Evaluates the φ-compatible map with basis values `omega` at `g`, peeling
/// one coordinate at a time in the basis order `order`.
///
/// When φ is a 2-cocycle the result does not depend on `order`. For other φ
/// the word-sum rule is not consistent and different orders can disagree.
pub fn compatible_eval_ordered(
    l: &LieAlgebra,
    phi: &Cochain,
    omega: &[Fe],
    g: &[Fe],
    order: &[usize],
) -> Result<Fe> {
    let f = l.field();
    check_prime(f)?;
    let n = l.dim();
    if phi.n != n || omega.len() != n || g.len() != n || order.len() != n {
        return Err(Error::Dimension(
            "cochain, basis values and element must match the algebra".into(),
        ));
    }
    let mut acc = f.zero();
    let mut rest = g.to_vec();
    for &i in order {
        let a = rest[i];
        if a.is_zero() {
            continue;
        }
        let mut head = linalg::zero_vector(n);
        head[i] = a;
        rest[i] = f.zero();
        acc = f.add(acc, f.mul(f.frobenius(a), omega[i]));
        if !linalg::is_zero(&rest) {
            acc = f.add(acc, word_sum(l, &phi.coords, &head, &rest));
        }
    }
    Ok(acc)
}

/// Evaluates the φ-compatible map with basis values `omega` at `g`, peeling
/// coordinates from `e_1` upward.
pub fn compatible_eval(l: &LieAlgebra, phi: &Cochain, omega: &[Fe], g: &[Fe]) -> Result<Fe> {
    let order: Vec<usize> = (0..l.dim()).collect();
    compatible_eval_ordered(l, phi, omega, g, &order)
}

/// Closed form of `ẽ^{s,t}(g)` on `h_m^{λ,μ}` for `s < t < 2m` (0-based):
/// `−½ a_{2m+2}^{p−2} Σ_{i,j} λ_i^{p−2} (a_i a_j e^{s,t}(e_{m+i}, e_j) + a_{m+i} a_j e^{s,t}(e_i, e_j))`,
/// with `i` over `1..m` and `j` over `1..2m`. This is the value obtained by
/// splitting off the `e_{2m+2}` term first; it agrees with `compatible_eval`
/// whenever `e^{s,t}` is a 2-cocycle.
pub fn tilde_closed_form(
    f: &Field,
    m: usize,
    lambda: &[Fe],
    s: usize,
    t: usize,
    g: &[Fe],
) -> Result<Fe> {
    if !(s < t && t < 2 * m) {
        return Err(Error::IndexOutOfRange(format!(
            "need 1 <= s < t <= 2m, got s = {}, t = {}",
            s + 1,
            t + 1
        )));
    }
    let lay = Layout { m };
    if lambda.len() != m || g.len() != lay.dim() {
        return Err(Error::Dimension("lambda or element has the wrong length".into()));
    }
    let p = f.p() as u64;
    // e^{s,t}(e_u, e_v) for u, v < 2m
    let e = |u: usize, v: usize| -> Fe {
        if u == s && v == t {
            f.one()
        } else if u == t && v == s {
            f.neg(f.one())
        } else {
            f.zero()
        }
    };
    let mut sum = f.zero();
    for i in 0..m {
        let li = f.pow(lambda[i], p - 2);
        for j in 0..2 * m {
            let term = f.add(
                f.mul(f.mul(g[lay.x(i)], g[j]), e(lay.y(i), j)),
                f.mul(f.mul(g[lay.y(i)], g[j]), e(lay.x(i), j)),
            );
            sum = f.add(sum, f.mul(li, term));
        }
    }
    let half = f.inv_int(2)?;
    Ok(f.neg(f.mul(half, f.mul(f.pow(g[lay.t()], p - 2), sum))))
}

/// `ind¹(ψ)(e_i) = ψ(e_i^[p])` for every basis vector.
pub fn ind1(psi: &Cochain, pmap: &PMap) -> Vector {
    let f = pmap.algebra().field();
    pmap.basis_values().iter().map(|v| psi.eval1(f, v)).collect()
}

/// `ind²(φ)(g, h) = φ(g ∧ h^[p]) − φ([g, h, …, h] ∧ h)` with `p − 1` copies of
/// `h` inside the bracket, evaluated at arbitrary elements.
pub fn ind2_eval(phi: &Cochain, pmap: &PMap, g: &[Fe], h: &[Fe]) -> Fe {
    let l = pmap.algebra();
    let f = l.field();
    let p = f.p() as usize;
    let mut x = g.to_vec();
    for _ in 0..p - 1 {
        x = l.bracket(&x, h);
    }
    f.sub(phi.eval2(f, g, &pmap.p_extend(h)), phi.eval2(f, &x, h))
}

/// `ind²(φ)` on basis pairs: entry `(i, j)` is `ind²(φ)(e_i, e_j)`.
pub fn ind2(phi: &Cochain, pmap: &PMap) -> Matrix {
    let l = pmap.algebra();
    let n = l.dim();
    let mut out = Matrix::zeros(l.field(), n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, ind2_eval(phi, pmap, &l.basis(i), &l.basis(j)));
        }
    }
    out
}

/// `Δ_φ(g)·h = φ(g ∧ [h, g, …, g]) − φ(g^[p] ∧ h)` with `p − 1` copies of `g`.
pub fn delta_eval(phi: &Cochain, pmap: &PMap, g: &[Fe], h: &[Fe]) -> Fe {
    let f = pmap.algebra().field();
    f.neg(ind2_eval(phi, pmap, h, g))
}

/// `Δ_φ` on the basis: entry `(i, j)` is `Δ_φ(e_i)·e_j`.
pub fn delta_map(phi: &Cochain, pmap: &PMap) -> Matrix {
    let f = pmap.algebra().field();
    ind2(phi, pmap).transpose().scaled(f.neg(f.one()))
}

/// Matrix of `d¹_*: C¹ → C²_*`, `ψ ↦ (d¹ψ, ind¹ψ)`.
pub fn d1star_matrix(pmap: &PMap) -> Matrix {
    let l = pmap.algebra();
    let f = l.field();
    let n = l.dim();
    let mut lower = Matrix::zeros(f, n, n);
    for (i, v) in pmap.basis_values().iter().enumerate() {
        for (k, &c) in v.iter().enumerate() {
            lower.set(i, k, c);
        }
    }
    d1_matrix(l).vstack(&lower).expect("same column count")
}

/// Matrix of `d²_*: C²_* → C³_*`, `(φ, ω) ↦ (d²φ, ind²φ)`; the ω-columns vanish.
pub fn d2star_matrix(pmap: &PMap) -> Matrix {
    let l = pmap.algebra();
    let f = l.field();
    let n = l.dim();
    let c2 = cochain_dim(n, 2);
    let c3 = cochain_dim(n, 3);
    let d2 = d2_matrix(l);
    let mut m = Matrix::zeros(f, c3 + n * n, c2 + n);
    for c in 0..c2 {
        for r in 0..c3 {
            m.set(r, c, d2.get(r, c));
        }
        let mut phi = Cochain::zero(2, n);
        phi.coords[c] = f.one();
        let grid = ind2(&phi, pmap);
        for i in 0..n {
            for j in 0..n {
                m.set(c3 + i * n + j, c, grid.get(i, j));
            }
        }
    }
    m
}

/// Restricted cohomology with the Hochschild cross-check in degree 1.
#[derive(Clone, Debug)]
pub struct RestrictedCohomology {
    pub result: CohomologyResult,
    /// `dim (g / ([g,g] + ⟨g^[p]⟩))^*`, computed independently (degree 1 only).
    pub hochschild_dim: Option<usize>,
}

impl RestrictedCohomology {
    pub fn dim(&self) -> usize {
        self.result.dim
    }

    /// Degree-2 representatives as restricted cochains.
    pub fn classes(&self) -> Vec<RestrictedCochain2> {
        let n = self.result.kernel.ambient_dim();
        match self.result.q {
            2 => {
                // ambient = C(n,2) + n; recover n
                let dim = (1..).find(|&d| cochain_dim(d, 2) + d == n).unwrap();
                self.result
                    .representatives
                    .iter()
                    .map(|v| RestrictedCochain2::from_coords(dim, v).unwrap())
                    .collect()
            }
            _ => Vec::new(),
        }
    }
}

/// `dim (g / ([g,g] + span{e_i^[p]}))`.
pub fn hochschild_h1_dim(pmap: &PMap) -> usize {
    let l = pmap.algebra();
    let mut span: Vec<Vector> = l.derived_subalgebra().basis().to_vec();
    span.extend(pmap.basis_values().iter().cloned());
    l.dim() - Subspace::from_vectors(l.field(), l.dim(), &span).dim()
}

/// `H¹_* = ker d¹_*` and `H²_* = ker d²_* / im d¹_*`.
pub fn restricted_cohomology(pmap: &PMap, q: usize) -> Result<RestrictedCohomology> {
    let l = pmap.algebra();
    let f = l.field();
    let n = l.dim();
    match q {
        1 => {
            let result =
                CohomologyResult::from_subspaces(1, d1star_matrix(pmap).kernel(), Subspace::zero(f, n))?;
            let hochschild = hochschild_h1_dim(pmap);
            if hochschild != result.dim {
                return Err(Error::Internal(format!(
                    "dim H^1_* = {} but the Hochschild formula gives {hochschild}",
                    result.dim
                )));
            }
            Ok(RestrictedCohomology {
                result,
                hochschild_dim: Some(hochschild),
            })
        }
        2 => {
            let result = CohomologyResult::from_subspaces(
                2,
                d2star_matrix(pmap).kernel(),
                d1star_matrix(pmap).image(),
            )?;
            Ok(RestrictedCohomology {
                result,
                hochschild_dim: None,
            })
        }
        _ => Err(Error::InvalidParameters(format!(
            "restricted cohomology is computed in degrees 1, 2 only (got {q})"
        ))),
    }
}

/// The explicit basis of `H²_*(h_m^{λ,μ})`: `(φ, φ̃)` for each class of
/// `paper_basis_h2`, then `(0, ē^i)` for `i ≤ 2m+1`.
pub fn paper_basis_h2_star(f: &Field, m: usize, lambda: &[Fe]) -> Vec<RestrictedCochain2> {
    let n = Layout { m }.dim();
    let mut out: Vec<RestrictedCochain2> = paper_basis_h2(f, m, lambda)
        .into_iter()
        .map(RestrictedCochain2::tilde)
        .collect();
    out.extend((0..=2 * m).map(|i| RestrictedCochain2::frobenius_dual(f, n, i)));
    out
}

/// Dimensions around the six-term sequence
/// `0 → H¹_* → H¹ → Hom_Fr(g, F) → H²_* → H² → Hom_Fr(g, H¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixTermReport {
    pub dim_h1: usize,
    pub dim_h1_star: usize,
    pub dim_h2: usize,
    pub dim_h2_star: usize,
    /// `dim Hom_Fr(g, F) = dim g`.
    pub frobenius_dim: usize,
    /// Rank of `Δ` on `H²`.
    pub rank_delta: usize,
    /// Rank of the classes `(0, ē^i)` in `H²_*`.
    pub frobenius_image_rank: usize,
    pub swap_trials: usize,
    /// First swap-check failure, if any.
    pub swap_failure: Option<String>,
}

impl SixTermReport {
    /// `dim H²_* = dim Hom_Fr − (dim H¹ − dim H¹_*) + dim ker Δ`.
    pub fn dimension_identity(&self) -> bool {
        self.dim_h2_star + self.dim_h1 + self.rank_delta
            == self.frobenius_dim + self.dim_h1_star + self.dim_h2
    }

    pub fn holds(&self) -> bool {
        self.dimension_identity()
            && self.frobenius_image_rank + self.dim_h1 == self.frobenius_dim + self.dim_h1_star
            && self.swap_failure.is_none()
    }
}

/// Checks the six-term dimension identity, exactness at `Hom_Fr(g, F)` and
/// the swap property `compatible(d¹ψ, ind¹ψ) = ψ ∘ [p]`, `ind²(d¹ψ) = 0`
/// on `trials` random ψ.
pub fn six_term_check<R: Rng + ?Sized>(
    pmap: &PMap,
    trials: usize,
    rng: &mut R,
) -> Result<SixTermReport> {
    let l = pmap.algebra();
    let f = l.field();
    let n = l.dim();
    let h1 = ce_cohomology(l, 1)?;
    let h2 = ce_cohomology(l, 2)?;
    let h1s = restricted_cohomology(pmap, 1)?;
    let h2s = restricted_cohomology(pmap, 2)?;

    let grids: Vec<Vector> = h2
        .cochains(n)
        .iter()
        .map(|phi| delta_map(phi, pmap).row_vectors().concat())
        .collect();
    let rank_delta = Subspace::from_vectors(f, n * n, &grids).dim();

    let mut spanning = h2s.result.image.basis().to_vec();
    let base = h2s.result.image.dim();
    for i in 0..n {
        spanning.push(RestrictedCochain2::frobenius_dual(f, n, i).coords());
    }
    let frobenius_image_rank =
        Subspace::from_vectors(f, h2s.result.image.ambient_dim(), &spanning).dim() - base;

    let d1 = d1_matrix(l);
    let mut swap_failure = None;
    for trial in 0..trials {
        let psi = Cochain::from_coords(1, n, (0..n).map(|_| f.random(rng)).collect())?;
        let phi = Cochain::from_coords(2, n, d1.mul_vec(&psi.coords))?;
        let omega = ind1(&psi, pmap);
        let g: Vector = (0..n).map(|_| f.random(rng)).collect();
        let h: Vector = (0..n).map(|_| f.random(rng)).collect();
        let lhs = compatible_eval(l, &phi, &omega, &g)?;
        let rhs = psi.eval1(f, &pmap.p_extend(&g));
        if lhs != rhs {
            swap_failure = Some(format!("trial {trial}: compatible map differs from psi o [p]"));
            break;
        }
        if !ind2(&phi, pmap).is_zero() || !ind2_eval(&phi, pmap, &g, &h).is_zero() {
            swap_failure = Some(format!("trial {trial}: ind2 of a coboundary is nonzero"));
            break;
        }
    }

    Ok(SixTermReport {
        dim_h1: h1.dim,
        dim_h1_star: h1s.dim(),
        dim_h2: h2.dim,
        dim_h2_star: h2s.dim(),
        frobenius_dim: n,
        rank_delta,
        frobenius_image_rank,
        swap_trials: trials,
        swap_failure,
    })
}
