//! Heisenberg algebras `h_m`, twisted Heisenberg algebras `h_m^λ`, and their
//! restricted structures `h_m^{λ,μ}`.
//!
//! 0-based layout for `h_m^λ` (dimension 2m+2): `e_1..e_m` are `0..m`,
//! `e_{m+1}..e_{2m}` are `m..2m`, the central `e_{2m+1}` is `2m` and the
//! twisting generator `e_{2m+2}` is `2m+1`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::liealg::{is_restricted_morphism, Element, LieAlgebra, PMap};
use crate::linalg::{self, Matrix, Vector};

/// Index helpers for the standard basis of `h_m^λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub m: usize,
}

impl Layout {
    /// `e_i`, `1 <= i <= m`, given 0-based `i`.
    pub fn x(self, i: usize) -> usize {
        i
    }
    /// `e_{m+i}`.
    pub fn y(self, i: usize) -> usize {
        self.m + i
    }
    /// `e_{2m+1}`.
    pub fn z(self) -> usize {
        2 * self.m
    }
    /// `e_{2m+2}`.
    pub fn t(self) -> usize {
        2 * self.m + 1
    }
    pub fn dim(self) -> usize {
        2 * self.m + 2
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be at least 1".into()));
    }
    Ok(())
}

/// `h_m`: `[e_i, e_{m+i}] = e_{2m+1}`.
pub fn make_heisenberg(field: &Field, m: usize) -> Result<LieAlgebra> {
    check_m(m)?;
    let n = 2 * m + 1;
    let brackets = (0..m).map(|i| ((i, m + i), linalg::unit_vector(field, n, 2 * m)));
    LieAlgebra::new(field, n, brackets)
}

fn check_lambda(field: &Field, m: usize, lambda: &[Fe]) -> Result<()> {
    check_m(m)?;
    if lambda.len() != m {
        return Err(Error::InvalidParameters(format!(
            "lambda must have {m} entries, got {}",
            lambda.len()
        )));
    }
    if let Some(i) = lambda.iter().position(|l| l.is_zero() || !field.contains(*l)) {
        return Err(Error::InvalidParameters(format!(
            "lambda_{} must be a nonzero field element",
            i + 1
        )));
    }
    Ok(())
}

/// `h_m^λ`: `h_m` plus `[e_{2m+2}, e_i] = λ_i e_{m+i}`, `[e_{2m+2}, e_{m+i}] = λ_i e_i`.
pub fn make_twisted(field: &Field, m: usize, lambda: &[Fe]) -> Result<LieAlgebra> {
    check_lambda(field, m, lambda)?;
    let lay = Layout { m };
    let n = lay.dim();
    let mut brackets = Vec::with_capacity(3 * m);
    for (i, &l) in lambda.iter().enumerate() {
        brackets.push(((lay.x(i), lay.y(i)), linalg::unit_vector(field, n, lay.z())));
        let mut v = linalg::zero_vector(n);
        v[lay.y(i)] = l;
        brackets.push(((lay.t(), lay.x(i)), v));
        let mut v = linalg::zero_vector(n);
        v[lay.x(i)] = l;
        brackets.push(((lay.t(), lay.y(i)), v));
    }
    LieAlgebra::new(field, n, brackets)
}

/// The common value `|λ| = λ_i^{p-1}`, if all coincide.
pub fn lambda_norm(field: &Field, lambda: &[Fe]) -> Option<Fe> {
    let e = field.p() as u64 - 1;
    let first = field.pow(*lambda.first()?, e);
    lambda
        .iter()
        .all(|&l| field.pow(l, e) == first)
        .then_some(first)
}

/// `p > 2` and `λ_1^{p-1} = ... = λ_m^{p-1}`.
pub fn restrictable_predicate(field: &Field, lambda: &[Fe]) -> bool {
    field.p() > 2 && lambda_norm(field, lambda).is_some()
}

/// Number of pairs `i < j` with `λ_i = λ_j` or `λ_i = -λ_j`.
pub fn coincidence_card(field: &Field, lambda: &[Fe]) -> usize {
    let mut count = 0;
    for i in 0..lambda.len() {
        for j in i + 1..lambda.len() {
            if lambda[i] == lambda[j] || lambda[i] == field.neg(lambda[j]) {
                count += 1;
            }
        }
    }
    count
}

/// `h_m^{λ,μ}` together with its parameters.
#[derive(Clone, Debug)]
pub struct RestrictedTwisted {
    pub m: usize,
    pub lambda: Vec<Fe>,
    /// `μ_1, ..., μ_{2m+2}`.
    pub mu: Vec<Fe>,
    /// `|λ|`.
    pub norm: Fe,
    pub algebra: LieAlgebra,
    pub pmap: PMap,
}

/// `e_i^[p] = μ_i e_{2m+1}` for `i <= 2m+1`, `e_{2m+2}^[p] = |λ| e_{2m+2} + μ_{2m+2} e_{2m+1}`.
pub fn make_restricted_twisted(
    field: &Field,
    m: usize,
    lambda: &[Fe],
    mu: &[Fe],
) -> Result<RestrictedTwisted> {
    check_lambda(field, m, lambda)?;
    let lay = Layout { m };
    let n = lay.dim();
    if mu.len() != n {
        return Err(Error::InvalidParameters(format!(
            "mu must have {n} entries, got {}",
            mu.len()
        )));
    }
    if field.p() == 2 {
        return Err(Error::NotRestrictable(
            "h_m^lambda is restrictable only when p > 2".into(),
        ));
    }
    let norm = lambda_norm(field, lambda).ok_or_else(|| {
        Error::NotRestrictable(
            "h_m^lambda is restrictable only when lambda_1^(p-1) = ... = lambda_m^(p-1)".into(),
        )
    })?;
    let algebra = make_twisted(field, m, lambda)?;
    let mut values: Vec<Element> = (0..n)
        .map(|i| {
            let mut v = linalg::zero_vector(n);
            v[lay.z()] = mu[i];
            v
        })
        .collect();
    values[lay.t()][lay.t()] = norm;
    let pmap = PMap::new(&algebra, values)?;
    Ok(RestrictedTwisted {
        m,
        lambda: lambda.to_vec(),
        mu: mu.to_vec(),
        norm,
        algebra,
        pmap,
    })
}

impl RestrictedTwisted {
    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn layout(&self) -> Layout {
        Layout { m: self.m }
    }

    /// `½ a_t^{p-2} Σ λ_i^{p-2} (x_i² - y_i²)` for the coordinates `coords`
    /// (indexed like the basis) and twisting coordinate `a_t`.
    fn quadratic_term(&self, a_t: Fe, xs: impl Fn(usize) -> Fe, ys: impl Fn(usize) -> Fe) -> Fe {
        let f = self.field();
        let p = f.p() as u64;
        let mut sum = f.zero();
        for (i, &l) in self.lambda.iter().enumerate() {
            let diff = f.sub(f.mul(xs(i), xs(i)), f.mul(ys(i), ys(i)));
            sum = f.add(sum, f.mul(f.pow(l, p - 2), diff));
        }
        let half = f.inv_int(2).expect("p > 2");
        f.mul(half, f.mul(f.pow(a_t, p - 2), sum))
    }

    /// Closed-form `g^[p]` for `g = Σ a_i e_i`.
    pub fn closed_form_p(&self, g: &[Fe]) -> Element {
        let f = self.field();
        let lay = self.layout();
        let p = f.p() as u64;
        let a_t = g[lay.t()];
        let mut out = self.algebra.zero();
        let coeff = f.mul(f.pow(a_t, p - 1), self.norm);
        for i in 0..2 * self.m {
            out[i] = f.mul(coeff, g[i]);
        }
        out[lay.t()] = f.mul(f.pow(a_t, p), self.norm);
        let mut central = f.zero();
        for (i, &mu) in self.mu.iter().enumerate() {
            central = f.add(central, f.mul(f.frobenius(g[i]), mu));
        }
        let quad = self.quadratic_term(a_t, |i| g[lay.x(i)], |i| g[lay.y(i)]);
        out[lay.z()] = f.add(central, quad);
        out
    }
}

/// An isomorphism candidate `h_m^{λ,μ} -> h_m^{λ,μ'}`:
/// `Ψ(e_r) = Σ_s a_{rs} e_s + k_r e_{2m+1}` for `r ≠ 2m+1` (rows and columns of
/// `A` run over `e_1..e_{2m}, e_{2m+2}`), and `Ψ(e_{2m+1}) = k_{2m+1} e_{2m+1}`.
#[derive(Clone, Debug)]
pub struct IsoCandidate {
    pub a: Matrix,
    /// `k_1, ..., k_{2m+2}` indexed like the basis.
    pub k: Vec<Fe>,
}

impl IsoCandidate {
    pub fn new(a: Matrix, k: Vec<Fe>) -> Result<IsoCandidate> {
        let r = a.rows();
        if a.cols() != r || r.is_multiple_of(2) || k.len() != r + 1 {
            return Err(Error::Dimension(format!(
                "A must be (2m+1)x(2m+1) and k of length 2m+2; got {}x{} and {}",
                a.rows(),
                a.cols(),
                k.len()
            )));
        }
        if a.inverse().is_none() {
            return Err(Error::InvalidParameters("A must be invertible".into()));
        }
        if k[r - 1].is_zero() {
            return Err(Error::InvalidParameters("k_{2m+1} must be nonzero".into()));
        }
        Ok(IsoCandidate { a, k })
    }

    pub fn identity(field: &Field, m: usize) -> IsoCandidate {
        let lay = Layout { m };
        let mut k = linalg::zero_vector(lay.dim());
        k[lay.z()] = field.one();
        IsoCandidate {
            a: Matrix::identity(field, 2 * m + 1),
            k,
        }
    }

    /// The map Ψ as an n×n matrix whose columns are the images of the basis.
    pub fn psi(&self, m: usize) -> Matrix {
        let lay = Layout { m };
        let f = self.a.field();
        let n = lay.dim();
        let mut psi = Matrix::zeros(f, n, n);
        for r in 0..2 * m + 1 {
            let src = reduced_to_basis(lay, r);
            for s in 0..2 * m + 1 {
                psi.set(reduced_to_basis(lay, s), src, self.a.get(r, s));
            }
            psi.set(lay.z(), src, self.k[src]);
        }
        psi.set(lay.z(), lay.z(), self.k[lay.z()]);
        psi
    }
}

/// Reduced index (`e_1..e_{2m}, e_{2m+2}`) to basis index.
fn reduced_to_basis(lay: Layout, r: usize) -> usize {
    if r < 2 * lay.m {
        r
    } else {
        lay.t()
    }
}

/// Outcome of one numbered condition of the isomorphism criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub number: u8,
    pub holds: bool,
    /// For (5)–(6): a failing tuple `(a_1, ..., a_{2m+2})`; for (2)–(3): the index `i`.
    pub witness: Option<Vec<Fe>>,
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub conditions: Vec<ConditionOutcome>,
    pub tuples_checked: usize,
    pub exhaustive: bool,
    /// Basis-level restricted-morphism check of Ψ; the authoritative verdict.
    pub morphism: bool,
}

impl IsoReport {
    pub fn conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn first_failure(&self) -> Option<&ConditionOutcome> {
        self.conditions.iter().find(|c| !c.holds)
    }
}

/// Tuple budget for conditions (5)–(6).
#[derive(Clone, Copy, Debug)]
pub struct TupleSampling {
    /// Enumerate all tuples when `|F|^{2m+2}` is at most this.
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for TupleSampling {
    fn default() -> Self {
        TupleSampling {
            exhaustive_limit: 100_000,
            samples: 1000,
            seed: 0x5eed,
        }
    }
}

/// `E_{rc}` in the reduced (2m+1)-dimensional indexing.
fn unit_matrix(f: &Field, size: usize, r: usize, c: usize) -> Matrix {
    let mut e = Matrix::zeros(f, size, size);
    e.set(r, c, f.one());
    e
}

/// Enumerates every tuple of F^len (as handle vectors) in lexicographic order.
pub(crate) fn all_tuples(f: &Field, len: usize) -> impl Iterator<Item = Vector> + '_ {
    let q = f.order() as u64;
    let total = q.pow(len as u32);
    let elements: Vec<Fe> = f.elements().collect();
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(elements[(code % q) as usize]);
            code /= q;
        }
        v
    })
}

/// Checks conditions (1)–(6) for `cand` between `source = h_m^{λ,μ}` and
/// `target = h_m^{λ,μ'}`, and cross-checks with the basis-level morphism test.
pub fn iso_conditions_check(
    source: &RestrictedTwisted,
    target: &RestrictedTwisted,
    cand: &IsoCandidate,
    sampling: TupleSampling,
) -> Result<IsoReport> {
    let f = source.field().clone();
    let m = source.m;
    if target.m != m || target.lambda != source.lambda || *target.field() != f {
        return Err(Error::InvalidParameters(
            "both structures must share the field, m and lambda".into(),
        ));
    }
    let lay = Layout { m };
    let size = 2 * m + 1;
    if cand.a.rows() != size || cand.k.len() != lay.dim() {
        return Err(Error::Dimension(format!(
            "candidate does not match m = {m}"
        )));
    }
    let a = &cand.a;
    let k = &cand.k;
    let lambda = &source.lambda;
    let tr = size - 1;
    let big_m: Vec<Matrix> = (0..m)
        .map(|i| {
            unit_matrix(&f, size, tr, m + i)
                .sub(&unit_matrix(&f, size, m + i, tr))
                .unwrap()
        })
        .collect();
    let big_n: Vec<Matrix> = (0..m)
        .map(|i| unit_matrix(&f, size, tr, i).sub(&unit_matrix(&f, size, i, tr)).unwrap())
        .collect();
    let mut j_form = Matrix::zeros(&f, size, size);
    for i in 0..m {
        j_form.set(i, m + i, f.one());
        j_form.set(m + i, i, f.neg(f.one()));
    }
    let conj = |x: &Matrix| a.mul(x).unwrap().mul(&a.transpose()).unwrap();
    let mut conditions = Vec::with_capacity(6);

    // (1)
    let mut rhs = j_form.scaled(k[lay.z()]);
    for i in 0..m {
        rhs = rhs
            .add(&big_m[i].scaled(f.mul(k[lay.x(i)], lambda[i])))
            .unwrap()
            .add(&big_n[i].scaled(f.mul(k[lay.y(i)], lambda[i])))
            .unwrap();
    }
    conditions.push(ConditionOutcome {
        number: 1,
        holds: conj(&j_form) == rhs,
        witness: None,
    });

    // (2) and (3): compare coefficients of e_i and e_{m+i}.
    let bracket_rhs = |col: usize| {
        let mut acc = Matrix::zeros(&f, size, size);
        for j in 0..m {
            acc = acc
                .add(&big_m[j].scaled(f.mul(lambda[j], a.get(j, col))))
                .unwrap()
                .add(&big_n[j].scaled(f.mul(lambda[j], a.get(m + j, col))))
                .unwrap();
        }
        acc
    };
    for (number, forms, offset) in [(2u8, &big_m, 0usize), (3u8, &big_n, m)] {
        let failing = (0..m).find(|&i| conj(&forms[i].scaled(lambda[i])) != bracket_rhs(offset + i));
        conditions.push(ConditionOutcome {
            number,
            holds: failing.is_none(),
            witness: failing.map(|i| vec![f.from_int(i as i64 + 1)]),
        });
    }

    // (4)
    conditions.push(ConditionOutcome {
        number: 4,
        holds: bracket_rhs(tr).is_zero(),
        witness: None,
    });

    // (5) and (6) over tuples (a_1, ..., a_{2m+2}).
    let n = lay.dim();
    let q = f.order() as u64;
    let exhaustive = (q as f64).powi(n as i32) <= sampling.exhaustive_limit as f64;
    let tuples: Box<dyn Iterator<Item = Vector>> = if exhaustive {
        Box::new(all_tuples(&f, n))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        let fc = f.clone();
        Box::new((0..sampling.samples).map(move |_| (0..n).map(|_| fc.random(&mut rng)).collect()))
    };
    let p = f.p() as u64;
    let mut fail5 = None;
    let mut fail6 = None;
    let mut tuples_checked = 0;
    for g in tuples {
        tuples_checked += 1;
        let reduced: Vector = (0..size).map(|r| g[reduced_to_basis(lay, r)]).collect();
        let frak: Vector = (0..size)
            .map(|s| linalg::dot(&f, &reduced, &a.column(s)))
            .collect();
        let a_t = g[lay.t()];
        let frak_t = frak[tr];
        if fail5.is_none() {
            let lhs = f.pow(a_t, p - 1);
            let rhs = f.pow(frak_t, p - 1);
            if (0..size).any(|j| f.mul(lhs, frak[j]) != f.mul(rhs, frak[j])) {
                fail5 = Some(g.clone());
            }
        }
        if fail6.is_none() {
            let mut lhs = f.zero();
            let mut xk = f.zero();
            for i in 0..2 * m {
                xk = f.add(xk, f.mul(g[i], k[i]));
            }
            lhs = f.add(lhs, f.mul(f.mul(f.pow(a_t, p - 1), source.norm), xk));
            lhs = f.add(lhs, f.mul(f.mul(f.pow(a_t, p), source.norm), k[lay.t()]));
            let src_central = source.closed_form_p(&g)[lay.z()];
            lhs = f.add(lhs, f.mul(k[lay.z()], src_central));

            let mut rhs = f.zero();
            for i in 0..2 * m {
                rhs = f.add(rhs, f.mul(f.frobenius(frak[i]), target.mu[i]));
            }
            rhs = f.add(rhs, f.mul(f.frobenius(frak_t), target.mu[lay.t()]));
            let all_k = linalg::dot(&f, &g, k);
            rhs = f.add(rhs, f.mul(f.frobenius(all_k), target.mu[lay.z()]));
            rhs = f.add(
                rhs,
                target.quadratic_term(frak_t, |i| frak[lay.x(i)], |i| frak[lay.y(i)]),
            );
            if lhs != rhs {
                fail6 = Some(g.clone());
            }
        }
        if fail5.is_some() && fail6.is_some() {
            break;
        }
    }
    conditions.push(ConditionOutcome {
        number: 5,
        holds: fail5.is_none(),
        witness: fail5,
    });
    conditions.push(ConditionOutcome {
        number: 6,
        holds: fail6.is_none(),
        witness: fail6,
    });

    let morphism = is_restricted_morphism(&cand.psi(m), &source.pmap, &target.pmap);
    Ok(IsoReport {
        conditions,
        tuples_checked,
        exhaustive,
        morphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    fn ints(f: &Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn heisenberg_examples() {
        let f = gf(3);
        let h1 = make_heisenberg(&f, 1).unwrap();
        assert_eq!(h1.dim(), 3);
        assert_eq!(h1.structure_constants().count(), 1);
        let h2 = make_heisenberg(&f, 2).unwrap();
        let keys: Vec<(usize, usize)> = h2.structure_constants().map(|(&k, _)| k).collect();
        assert_eq!(keys, vec![(0, 2), (1, 3)]);
        for (_, v) in h2.structure_constants() {
            assert_eq!(*v, h2.basis(4));
        }
        let c = h2.center();
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&h2.basis(4)));
        assert!(make_heisenberg(&f, 0).is_err());
    }

    #[test]
    fn twisted_examples() {
        let f = gf(3);
        let alg = make_twisted(&f, 1, &ints(&f, &[1])).unwrap();
        assert_eq!(alg.dim(), 4);
        let f5 = gf(5);
        let alg = make_twisted(&f5, 2, &ints(&f5, &[1, 3])).unwrap();
        let derived = alg.derived_subalgebra();
        assert_eq!(derived.dim(), 5);
        for i in 0..5 {
            assert!(derived.contains(&alg.basis(i)));
        }
        assert!(make_twisted(&f5, 2, &ints(&f5, &[1, 0])).is_err());
        assert!(make_twisted(&f5, 2, &ints(&f5, &[1])).is_err());
    }

    #[test]
    fn restricted_examples() {
        let f = gf(7);
        let lambda = ints(&f, &[1, 3, 5]);
        let mu = ints(&f, &[1, 2, 3, 4, 5, 6, 0, 2]);
        let r = make_restricted_twisted(&f, 3, &lambda, &mu).unwrap();
        assert_eq!(r.norm, f.one());

        let f9 = Field::new(3, 2, None).unwrap();
        let x = f9.generator().unwrap();
        let err = make_restricted_twisted(&f9, 2, &[f9.one(), x], &[Fe::ZERO; 6]);
        assert!(matches!(err, Err(Error::NotRestrictable(_))));

        let f2 = gf(2);
        let err = make_restricted_twisted(&f2, 1, &[f2.one()], &[Fe::ZERO; 4]);
        assert!(matches!(err, Err(Error::NotRestrictable(_))));
    }

    #[test]
    fn closed_form_examples() {
        let f = gf(3);
        let r = make_restricted_twisted(&f, 1, &ints(&f, &[1]), &ints(&f, &[0, 0, 0, 0])).unwrap();
        let lay = r.layout();
        let et = r.algebra.basis(lay.t());
        assert_eq!(r.closed_form_p(&et), linalg::scale(&f, r.norm, &et));
        assert_eq!(r.closed_form_p(&ints(&f, &[1, 0, 0, 1])), ints(&f, &[1, 0, 2, 1]));

        let f5 = gf(5);
        let mu = ints(&f5, &[1, 2, 3, 4, 0, 1]);
        let r = make_restricted_twisted(&f5, 2, &ints(&f5, &[1, 2]), &mu).unwrap();
        let g = ints(&f5, &[2, 1, 0, 3, 4, 0]);
        // Σ a_i^5 μ_i = 2+2+0+12+0 = 16 = 1 mod 5.
        assert_eq!(r.closed_form_p(&g), ints(&f5, &[0, 0, 0, 0, 1, 0]));
    }

    #[test]
    fn coincidence_examples() {
        let f5 = gf(5);
        assert_eq!(coincidence_card(&f5, &ints(&f5, &[1, 1])), 1);
        assert_eq!(coincidence_card(&f5, &ints(&f5, &[1, 1, 4])), 3);
        assert_eq!(coincidence_card(&f5, &ints(&f5, &[1, 2])), 0);
    }

    #[test]
    fn identity_candidate_passes() {
        let f = gf(3);
        let mu = ints(&f, &[1, 2, 0, 1]);
        let r = make_restricted_twisted(&f, 1, &ints(&f, &[1]), &mu).unwrap();
        let report =
            iso_conditions_check(&r, &r, &IsoCandidate::identity(&f, 1), TupleSampling::default())
                .unwrap();
        assert!(report.conditions_hold(), "{report:?}");
        assert!(report.exhaustive);
        assert_eq!(report.tuples_checked, 81);
        assert!(report.morphism);
    }

    #[test]
    fn condition_six_detects_central_mu() {
        let f = gf(3);
        let lambda = ints(&f, &[1]);
        let src = make_restricted_twisted(&f, 1, &lambda, &ints(&f, &[0, 0, 0, 0])).unwrap();
        let dst = make_restricted_twisted(&f, 1, &lambda, &ints(&f, &[0, 0, 1, 0])).unwrap();
        let report =
            iso_conditions_check(&src, &dst, &IsoCandidate::identity(&f, 1), TupleSampling::default())
                .unwrap();
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.number, 6);
        assert!(!report.morphism);
        assert!(report.conditions[..5].iter().all(|c| c.holds));
        // at g = e3 the two central coefficients differ
        let e3 = ints(&f, &[0, 0, 1, 0]);
        assert_ne!(src.closed_form_p(&e3)[2], dst.closed_form_p(&e3)[2]);
    }

    #[test]
    fn candidate_validation() {
        let f = gf(5);
        let k = ints(&f, &[0, 0, 0, 0]);
        assert!(IsoCandidate::new(Matrix::identity(&f, 3), k).is_err());
        let k = ints(&f, &[0, 0, 1, 0]);
        assert!(IsoCandidate::new(Matrix::zeros(&f, 3, 3), k.clone()).is_err());
        assert!(IsoCandidate::new(Matrix::identity(&f, 3), k).is_ok());
    }
}
