//! Restricted one-dimensional central extensions `G = g ⊕ F c`:
//! `[g, h]_G = [g, h] + φ(g ∧ h) c`, `g^[p]_G = g^[p] + ω(g) c`, `c^[p]_G = 0`.
//! The central generator `c` is appended as the last basis vector.

use rand::Rng;

use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::heisenberg::{Layout, RestrictedTwisted};
use crate::liealg::{is_restricted_homomorphism, is_restricted_morphism, Element, LieAlgebra, PMap};
use crate::linalg::{self, Matrix};
use crate::restricted::{compatible_eval, d1star_matrix, d2star_matrix, RestrictedCochain2};

#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub base: PMap,
    pub cocycle: RestrictedCochain2,
    /// The extension; its algebra is `pmap.algebra()`.
    pub pmap: PMap,
}

impl CentralExtension {
    pub fn algebra(&self) -> &LieAlgebra {
        self.pmap.algebra()
    }

    /// Index of the central generator `c`.
    pub fn central_index(&self) -> usize {
        self.base.algebra().dim()
    }

    /// `g^[p]_G` through the axiomatic extension of the basis values.
    pub fn p_power(&self, g: &[Fe]) -> Element {
        self.pmap.p_extend(g)
    }

    /// `g^[p] + ω(g) c` for `g` in the base, with ω evaluated as a compatible map.
    pub fn p_power_generic(&self, g: &[Fe]) -> Result<Element> {
        let l = self.base.algebra();
        let mut out = self.base.p_extend(g);
        out.push(compatible_eval(l, &self.cocycle.phi, &self.cocycle.omega, g)?);
        Ok(out)
    }

    /// The projection `G → g` as an n × (n+1) matrix.
    pub fn projection(&self) -> Matrix {
        let f = self.base.algebra().field();
        let n = self.central_index();
        let mut m = Matrix::zeros(f, n, n + 1);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }
}

/// Whether `(φ, ω)` lies in `ker d²_*`.
pub fn is_restricted_cocycle(base: &PMap, cocycle: &RestrictedCochain2) -> bool {
    linalg::is_zero(&d2star_matrix(base).mul_vec(&cocycle.coords()))
}

/// Builds the extension from structure data: `bracket(i, j)` gives the
/// `c`-coefficient of `[e_i, e_j]_G`, `p_term(i)` that of `e_i^[p]_G`.
fn assemble(
    base: &PMap,
    cocycle: RestrictedCochain2,
    bracket: impl Fn(usize, usize) -> Fe,
    p_term: impl Fn(usize) -> Fe,
) -> Result<CentralExtension> {
    let l = base.algebra();
    let f = l.field();
    let n = l.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = l.bracket_basis(i, j);
            v.push(bracket(i, j));
            if !linalg::is_zero(&v) {
                brackets.push(((i, j), v));
            }
        }
    }
    let algebra = LieAlgebra::new(f, n + 1, brackets)?;
    let mut values: Vec<Element> = base
        .basis_values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut w = v.clone();
            w.push(p_term(i));
            w
        })
        .collect();
    values.push(linalg::zero_vector(n + 1));
    let pmap = PMap::new(&algebra, values)?;
    Ok(CentralExtension {
        base: base.clone(),
        cocycle,
        pmap,
    })
}

/// The extension defined by a restricted 2-cocycle.
pub fn central_extend(base: &PMap, cocycle: &RestrictedCochain2) -> Result<CentralExtension> {
    let l = base.algebra();
    let f = l.field().clone();
    if cocycle.n() != l.dim() || cocycle.phi.n != l.dim() {
        return Err(Error::Dimension("cocycle does not match the base algebra".into()));
    }
    if !is_restricted_cocycle(base, cocycle) {
        return Err(Error::NotACocycle(format!(
            "{} is not in the kernel of d2_*",
            cocycle.format(&f)
        )));
    }
    let phi = cocycle.phi.clone();
    let omega = cocycle.omega.clone();
    assemble(
        base,
        cocycle.clone(),
        |i, j| phi.eval2(&f, &l.basis(i), &l.basis(j)),
        |i| omega[i],
    )
}

/// The explicit extension families of `h_m^{λ,μ}`; indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `H_{ij}`, `i < j < m`, `λ_i = ±λ_j`.
    Hij { i: usize, j: usize },
    /// `H_{i,m+j}`, `i < j < m`, `λ_i = ±λ_j`.
    HiMj { i: usize, j: usize },
    /// `H_{i,m+i}`, `i < m − 1`.
    HiMi { i: usize },
    /// `H_i`, `i ≤ 2m`.
    Hi { i: usize },
}

impl Family {
    pub fn validate(&self, f: &Field, m: usize, lambda: &[Fe]) -> Result<()> {
        let coincident = |i: usize, j: usize| lambda[i] == lambda[j] || lambda[i] == f.neg(lambda[j]);
        match *self {
            Family::Hij { i, j } | Family::HiMj { i, j } => {
                if !(i < j && j < m) {
                    return Err(Error::IndexOutOfRange(format!(
                        "need 1 <= i < j <= m = {m}, got i = {}, j = {}",
                        i + 1,
                        j + 1
                    )));
                }
                if !coincident(i, j) {
                    return Err(Error::InvalidParameters(format!(
                        "family requires lambda_{} = +-lambda_{}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            Family::HiMi { i } => {
                if i + 1 >= m {
                    return Err(Error::IndexOutOfRange(format!(
                        "need 1 <= i <= m - 1 = {}, got i = {}",
                        m.saturating_sub(1),
                        i + 1
                    )));
                }
            }
            Family::Hi { i } => {
                if i > 2 * m {
                    return Err(Error::IndexOutOfRange(format!(
                        "need 1 <= i <= 2m + 1 = {}, got i = {}",
                        2 * m + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The defining restricted cocycle.
    pub fn cocycle(&self, f: &Field, m: usize, lambda: &[Fe]) -> RestrictedCochain2 {
        let lay = Layout { m };
        let n = lay.dim();
        let ratio = |i: usize, j: usize| f.neg(f.div(lambda[i], lambda[j]).expect("nonzero lambda"));
        match *self {
            Family::Hij { i, j } => RestrictedCochain2::tilde(
                Cochain::pair(f, n, lay.x(i), lay.x(j))
                    .add(f, &Cochain::pair(f, n, lay.y(i), lay.y(j)).scaled(f, ratio(i, j))),
            ),
            Family::HiMj { i, j } => RestrictedCochain2::tilde(
                Cochain::pair(f, n, lay.x(i), lay.y(j))
                    .add(f, &Cochain::pair(f, n, lay.y(i), lay.x(j)).scaled(f, ratio(i, j))),
            ),
            Family::HiMi { i } => RestrictedCochain2::tilde(Cochain::pair(f, n, lay.x(i), lay.y(i))),
            Family::Hi { i } => RestrictedCochain2::frobenius_dual(f, n, i),
        }
    }

    /// `c`-coefficient added to `[g, h]` by the explicit bracket formula.
    pub fn bracket_term(&self, f: &Field, m: usize, lambda: &[Fe], a: &[Fe], b: &[Fe]) -> Fe {
        let lay = Layout { m };
        let minor = |u: usize, v: usize| f.sub(f.mul(a[u], b[v]), f.mul(a[v], b[u]));
        match *self {
            Family::Hij { i, j } => {
                let r = f.div(lambda[i], lambda[j]).expect("nonzero lambda");
                f.sub(minor(lay.x(i), lay.x(j)), f.mul(r, minor(lay.y(i), lay.y(j))))
            }
            Family::HiMj { i, j } => {
                let r = f.div(lambda[i], lambda[j]).expect("nonzero lambda");
                f.sub(minor(lay.x(i), lay.y(j)), f.mul(r, minor(lay.y(i), lay.x(j))))
            }
            Family::HiMi { i } => minor(lay.x(i), lay.y(i)),
            Family::Hi { .. } => f.zero(),
        }
    }

    /// `c`-coefficient added to `g^[p]` by the explicit [p]-formula.
    pub fn p_term(&self, f: &Field, m: usize, lambda: &[Fe], norm: Fe, a: &[Fe]) -> Fe {
        let lay = Layout { m };
        let p = f.p() as u64;
        let half = f.inv_int(2).expect("p > 2");
        let prefactor = f.neg(f.mul(half, f.pow(a[lay.t()], p - 2)));
        let pw = |x: Fe, e: u64| f.pow(x, e);
        let prod = |u: usize, v: usize| f.mul(a[u], a[v]);
        match *self {
            Family::Hij { i, j } | Family::HiMj { i, j } => {
                // H_{i,m+j} swaps the roles of a_j and a_{m+j}.
                let (aj, amj) = match self {
                    Family::Hij { .. } => (lay.x(j), lay.y(j)),
                    _ => (lay.y(j), lay.x(j)),
                };
                let (ai, ami) = (lay.x(i), lay.y(i));
                let inv_lj = f.inv(lambda[j]).expect("nonzero lambda");
                let terms = [
                    f.mul(pw(lambda[i], p - 2), prod(ami, aj)),
                    f.neg(f.mul(pw(lambda[j], p - 2), prod(amj, ai))),
                    f.neg(f.mul(f.mul(norm, inv_lj), prod(ai, amj))),
                    f.mul(f.mul(lambda[i], pw(lambda[j], p - 3)), prod(aj, ami)),
                ];
                let sum = terms.iter().fold(f.zero(), |acc, &t| f.add(acc, t));
                f.mul(prefactor, sum)
            }
            Family::HiMi { i } => {
                let diff = f.sub(prod(lay.y(i), lay.y(i)), prod(lay.x(i), lay.x(i)));
                f.mul(prefactor, f.mul(pw(lambda[i], p - 2), diff))
            }
            Family::Hi { i } => f.frobenius(a[i]),
        }
    }
}

/// A family extension built directly from its explicit bracket and [p]-formulas.
pub fn family_extension(base: &RestrictedTwisted, family: Family) -> Result<CentralExtension> {
    let f = base.field().clone();
    family.validate(&f, base.m, &base.lambda)?;
    let l = &base.algebra;
    let (m, lambda, norm) = (base.m, &base.lambda, base.norm);
    assemble(
        &base.pmap,
        family.cocycle(&f, m, lambda),
        |i, j| family.bracket_term(&f, m, lambda, &l.basis(i), &l.basis(j)),
        |i| family.p_term(&f, m, lambda, norm, &l.basis(i)),
    )
}

/// `g^[p]` in a family extension from the closed forms, for `g` in the base.
pub fn family_p_power(base: &RestrictedTwisted, family: Family, g: &[Fe]) -> Element {
    let mut out = base.closed_form_p(g);
    out.push(family.p_term(base.field(), base.m, &base.lambda, base.norm, g));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    /// Jacobi identity (enforced when the algebra is built).
    pub jacobi: bool,
    pub central: bool,
    pub c_p_zero: bool,
    pub pmap_verified: bool,
    pub projection_restricted: bool,
    /// `p_extend` agrees with `g^[p] + ω(g) c` on every sampled base element.
    pub p_formula: bool,
    pub samples: usize,
    /// Identical structure constants and basis [p]-values as `central_extend`
    /// applied to the defining cocycle.
    pub matches_generic: bool,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.jacobi, "jacobi"),
            (self.central, "centrality of c"),
            (self.c_p_zero, "c^[p] = 0"),
            (self.pmap_verified, "restricted axioms"),
            (self.projection_restricted, "projection is a restricted morphism"),
            (self.p_formula, "[p] agrees with the compatible map"),
            (self.matches_generic, "agreement with the generic construction"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, name)| name)
    }
}

/// Same structure constants and basis [p]-values.
pub fn same_structure(a: &CentralExtension, b: &CentralExtension) -> bool {
    a.algebra() == b.algebra() && a.pmap.basis_values() == b.pmap.basis_values()
}

pub fn verify_extension<R: Rng + ?Sized>(
    ext: &CentralExtension,
    samples: usize,
    rng: &mut R,
) -> Result<ExtensionReport> {
    let g = ext.algebra();
    let f = g.field();
    let c = ext.central_index();
    let jacobi = LieAlgebra::new(
        f,
        g.dim(),
        g.structure_constants().map(|(&k, v)| (k, v.clone())),
    )
    .is_ok();
    let central = ext.algebra().center().contains(&g.basis(c));
    let c_p_zero = linalg::is_zero(&ext.pmap.basis_values()[c]);
    let pmap_verified = ext.pmap.verify(samples.min(50), rng).passed();
    let projection_restricted = is_restricted_homomorphism(&ext.projection(), &ext.pmap, &ext.base);
    let mut p_formula = true;
    for _ in 0..samples {
        let x: Element = (0..c).map(|_| f.random(rng)).collect();
        let mut lifted = x.clone();
        lifted.push(f.zero());
        if ext.p_power(&lifted) != ext.p_power_generic(&x)? {
            p_formula = false;
            break;
        }
    }
    let matches_generic = match central_extend(&ext.base, &ext.cocycle) {
        Ok(generic) => same_structure(&generic, ext),
        Err(_) => false,
    };
    Ok(ExtensionReport {
        jacobi,
        central,
        c_p_zero,
        pmap_verified,
        projection_restricted,
        p_formula,
        samples,
        matches_generic,
    })
}

/// For `(φ₂, ω₂) = (φ₁, ω₁) + d¹_*(ψ)`, whether `g ↦ g + ψ(g) c` is a restricted
/// isomorphism between the two extensions.
pub fn cohomologous_isomorphic(
    base: &PMap,
    cocycle: &RestrictedCochain2,
    psi: &Cochain,
) -> Result<bool> {
    let l = base.algebra();
    let f = l.field();
    let n = l.dim();
    let shift = d1star_matrix(base).mul_vec(&psi.coords);
    let shifted = RestrictedCochain2::from_coords(n, &linalg::add(f, &cocycle.coords(), &shift))?;
    let first = central_extend(base, cocycle)?;
    let second = central_extend(base, &shifted)?;
    let mut map = Matrix::identity(f, n + 1);
    for i in 0..n {
        map.set(n, i, psi.coords[i]);
    }
    Ok(is_restricted_morphism(&map, &first.pmap, &second.pmap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::make_restricted_twisted;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(f: &Field, xs: &[i64]) -> Vec<Fe> {
        xs.iter().map(|&x| f.from_int(x)).collect()
    }

    fn base(p: u32, m: usize, lambda: &[i64]) -> RestrictedTwisted {
        let f = Field::prime(p).unwrap();
        make_restricted_twisted(&f, m, &ints(&f, lambda), &linalg::zero_vector(2 * m + 2)).unwrap()
    }

    #[test]
    fn trivial_extension() {
        let b = base(3, 1, &[1]);
        let ext = central_extend(&b.pmap, &RestrictedCochain2::zero(4)).unwrap();
        assert_eq!(ext.algebra().dim(), 5);
        assert_eq!(ext.algebra().structure_constants().count(), b.algebra.structure_constants().count());
        for (&k, v) in ext.algebra().structure_constants() {
            assert!(v[4].is_zero());
            assert_eq!(v[..4], b.algebra.bracket_basis(k.0, k.1)[..]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(verify_extension(&ext, 50, &mut rng).unwrap().passed());
    }

    #[test]
    fn hi_family() {
        let b = base(3, 1, &[1]);
        let f = b.field().clone();
        let ext = family_extension(&b, Family::Hi { i: 0 }).unwrap();
        for (&(i, j), v) in ext.algebra().structure_constants() {
            assert_eq!(v[..4], b.algebra.bracket_basis(i, j)[..]);
            assert!(v[4].is_zero());
        }
        let g = ints(&f, &[2, 1, 0, 1]);
        let expected = family_p_power(&b, Family::Hi { i: 0 }, &g);
        assert_eq!(expected[4], f.pow(f.from_int(2), 3));
        let mut lifted = g.clone();
        lifted.push(f.zero());
        assert_eq!(ext.p_power(&lifted), expected);
    }

    #[test]
    fn himi_bracket() {
        let b = base(5, 2, &[1, 1]);
        let f = b.field().clone();
        let ext = family_extension(&b, Family::HiMi { i: 0 }).unwrap();
        let bracket = ext.algebra().bracket_basis(0, 2);
        assert_eq!(bracket, ints(&f, &[0, 0, 0, 0, 1, 0, 1]));
        assert!(family_extension(&b, Family::HiMi { i: 1 }).is_err());
    }

    #[test]
    fn himi_p_term_gf3() {
        let b = base(3, 2, &[1, 1]);
        let f = b.field().clone();
        let fam = Family::HiMi { i: 0 };
        let ext = family_extension(&b, fam).unwrap();
        let generic = central_extend(&b.pmap, &fam.cocycle(&f, 2, &b.lambda)).unwrap();
        assert!(same_structure(&ext, &generic));
        let g = ints(&f, &[1, 0, 0, 0, 0, 1]);
        let closed = family_p_power(&b, fam, &g);
        // −½ · λ^{p−2} · (0 − 1) = ½ = 2 in GF(3)
        assert_eq!(closed[6], f.from_int(2));
        assert_eq!(closed, generic.p_power_generic(&g).unwrap());
        let mut lifted = g.clone();
        lifted.push(f.zero());
        assert_eq!(generic.p_power(&lifted), closed);
    }

    #[test]
    fn families_match_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, lambda) in [(5u32, vec![1i64, 4]), (7, vec![2, 2]), (3, vec![1, 2])] {
            let b = base(p, 2, &lambda);
            let f = b.field().clone();
            for fam in [
                Family::Hij { i: 0, j: 1 },
                Family::HiMj { i: 0, j: 1 },
                Family::HiMi { i: 0 },
                Family::Hi { i: 3 },
            ] {
                let ext = family_extension(&b, fam).unwrap();
                let rep = verify_extension(&ext, 30, &mut rng).unwrap();
                assert!(rep.passed(), "{fam:?} p={p}: {:?}", rep.first_failure());
                for _ in 0..30 {
                    let g: Vec<Fe> = (0..6).map(|_| f.random(&mut rng)).collect();
                    assert_eq!(ext.p_power_generic(&g).unwrap(), family_p_power(&b, fam, &g));
                }
            }
        }
    }

    #[test]
    fn coincidence_required() {
        let b = base(5, 2, &[1, 2]);
        assert!(family_extension(&b, Family::Hij { i: 0, j: 1 }).is_err());
        assert!(family_extension(&b, Family::Hi { i: 5 }).is_err());
    }

    #[test]
    fn rejects_non_cocycle() {
        let b = base(5, 2, &[1, 1]);
        let f = b.field().clone();
        let mut bad = Family::HiMi { i: 0 }.cocycle(&f, 2, &b.lambda);
        bad.phi = bad.phi.add(&f, &Cochain::pair(&f, 6, 0, 1));
        assert!(matches!(central_extend(&b.pmap, &bad), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn cohomologous_extensions() {
        let b = base(5, 2, &[1, 1]);
        let f = b.field().clone();
        let cocycle = Family::Hij { i: 0, j: 1 }.cocycle(&f, 2, &b.lambda);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let psi = Cochain::from_coords(1, 6, (0..6).map(|_| f.random(&mut rng)).collect()).unwrap();
            assert!(cohomologous_isomorphic(&b.pmap, &cocycle, &psi).unwrap());
        }
    }
}
