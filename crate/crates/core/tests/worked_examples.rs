//! Small worked examples, each checked against a hand computation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twheis::cohomology::{ce_cohomology, cochain_dim, d1_matrix, hs_dimension_check, Cochain};
use twheis::extensions::{central_extend, family_extension, family_p_power, Family};
use twheis::heisenberg::{make_heisenberg, make_restricted_twisted, make_twisted, RestrictedTwisted};
use twheis::linalg;
use twheis::restricted::{
    compatible_eval, d1star_matrix, d2star_matrix, ind1, ind2_eval, restricted_cohomology, six_term_check,
    tilde_closed_form,
};
use twheis::{is_restricted_morphism, Error, Fe, Field, Matrix, PMap, RestrictedCochain2};

fn ints(f: &Field, xs: &[i64]) -> Vec<Fe> {
    xs.iter().map(|&x| f.from_int(x)).collect()
}

fn h1_restricted(p: u32, mu: &[i64]) -> RestrictedTwisted {
    let f = Field::prime(p).unwrap();
    make_restricted_twisted(&f, 1, &ints(&f, &[1]), &ints(&f, mu)).unwrap()
}

#[test]
fn s_terms_on_h1() {
    let r = h1_restricted(3, &[0, 0, 0, 0]);
    let f = r.field();
    let s = r.algebra.s_terms(&r.algebra.basis(0), &r.algebra.basis(3));
    assert_eq!(s[0], ints(f, &[1, 0, 0, 0]));
    assert_eq!(s[1], ints(f, &[0, 0, 2, 0]));
}

#[test]
fn p_power_of_e1_plus_e4() {
    let r = h1_restricted(3, &[0, 0, 0, 0]);
    let f = r.field();
    let g = ints(f, &[1, 0, 0, 1]);
    let expected = ints(f, &[1, 0, 2, 1]);
    assert_eq!(r.pmap.p_extend(&g), expected);
    assert_eq!(r.closed_form_p(&g), expected);
}

#[test]
fn p_power_on_heisenberg_part() {
    let f = Field::prime(5).unwrap();
    let mu = ints(&f, &[1, 2, 3, 4, 1, 2]);
    let r = make_restricted_twisted(&f, 2, &ints(&f, &[1, 2]), &mu).unwrap();
    let g = ints(&f, &[2, 1, 0, 3, 4, 0]);
    let central = (0..6).fold(f.zero(), |acc, i| f.add(acc, f.mul(f.frobenius(g[i]), mu[i])));
    let mut expected = linalg::zero_vector(6);
    expected[4] = central;
    assert_eq!(r.pmap.p_extend(&g), expected);
}

#[test]
fn invalid_pmap_rejected() {
    let f = Field::prime(3).unwrap();
    let l = make_twisted(&f, 1, &ints(&f, &[1])).unwrap();
    let err = PMap::new(&l, vec![l.zero(); 4]).unwrap_err();
    assert_eq!(err, Error::NotAPMap(3));
}

#[test]
fn restrictability_over_gf9() {
    let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
    let x = f.generator().unwrap();
    let lambda = vec![f.one(), x];
    assert!(!make_twisted(&f, 2, &lambda).unwrap().jacobson_restrictable().is_restrictable());
    assert!(matches!(
        make_restricted_twisted(&f, 2, &lambda, &linalg::zero_vector(6)),
        Err(Error::NotRestrictable(_))
    ));
}

#[test]
fn morphism_examples_on_h1() {
    let f = Field::prime(5).unwrap();
    let h = make_heisenberg(&f, 1).unwrap();
    let pm = PMap::zero(&h).unwrap();
    let swap = Matrix::from_rows(&f, &[ints(&f, &[0, 1, 0]), ints(&f, &[1, 0, 0]), ints(&f, &[0, 0, 1])]).unwrap();
    assert!(!is_restricted_morphism(&swap, &pm, &pm));
    // e1 -> k e1, e3 -> k e3
    let k = 3;
    let scale = Matrix::from_rows(&f, &[ints(&f, &[k, 0, 0]), ints(&f, &[0, 1, 0]), ints(&f, &[0, 0, k])]).unwrap();
    assert!(is_restricted_morphism(&scale, &pm, &pm));
}

#[test]
fn derived_subalgebra_is_heisenberg_part() {
    let f = Field::prime(7).unwrap();
    let l = make_twisted(&f, 2, &ints(&f, &[1, 3])).unwrap();
    let derived = l.derived_subalgebra();
    assert_eq!(derived.dim(), 5);
    assert!(!derived.contains(&l.basis(5)));
    assert_eq!(make_heisenberg(&f, 2).unwrap().center().dim(), 1);
}

#[test]
fn d1_on_twisted_h1() {
    let f = Field::prime(5).unwrap();
    let l = make_twisted(&f, 1, &ints(&f, &[2])).unwrap();
    let d1 = d1_matrix(&l);
    // d¹(e¹) = −λ e^{2,4}
    let image = d1.mul_vec(&Cochain::dual(&f, 4, 0).coords);
    assert_eq!(image, Cochain::pair(&f, 4, 1, 3).scaled(&f, f.from_int(-2)).coords);
    assert!(linalg::is_zero(&d1.mul_vec(&Cochain::dual(&f, 4, 3).coords)));
    assert_eq!(d1.rank(), 3);
}

#[test]
fn hochschild_serre_examples() {
    let f = Field::prime(5).unwrap();
    let r = hs_dimension_check(&f, 2, &ints(&f, &[1, 1]), 2).unwrap();
    assert_eq!((r.dim_twisted, r.invariants, r.coinvariants), (3, 3, 0));
    let r = hs_dimension_check(&f, 1, &ints(&f, &[2]), 2).unwrap();
    assert_eq!((r.dim_twisted, r.invariants, r.coinvariants), (0, 0, 0));
    let r = hs_dimension_check(&f, 3, &ints(&f, &[1, 2, 4]), 1).unwrap();
    assert_eq!((r.dim_twisted, r.invariants, r.coinvariants), (1, 0, 1));
}

#[test]
fn compatible_and_tilde_on_h1() {
    let r = h1_restricted(3, &[0, 0, 0, 0]);
    let f = r.field();
    let g = ints(f, &[1, 0, 0, 1]);
    let phi = Cochain::pair(f, 4, 0, 1);
    assert_eq!(compatible_eval(&r.algebra, &phi, &linalg::zero_vector(4), &g).unwrap(), f.from_int(2));
    assert_eq!(tilde_closed_form(f, 1, &r.lambda, 0, 1, &g).unwrap(), f.from_int(2));
    assert!(tilde_closed_form(f, 1, &r.lambda, 0, 1, &ints(f, &[0, 0, 0, 1])).unwrap().is_zero());
    assert!(tilde_closed_form(f, 1, &r.lambda, 0, 1, &ints(f, &[1, 2, 1, 0])).unwrap().is_zero());
}

#[test]
fn induced_maps_on_h1() {
    let r = h1_restricted(3, &[0, 0, 0, 0]);
    let f = r.field();
    assert!(linalg::is_zero(&ind1(&Cochain::dual(f, 4, 2), &r.pmap)));
    assert_eq!(ind1(&Cochain::dual(f, 4, 3), &r.pmap)[3], f.one());
    let shifted = h1_restricted(3, &[1, 0, 0, 0]);
    assert_eq!(ind1(&Cochain::dual(f, 4, 2), &shifted.pmap)[0], f.one());

    let (e1, e4) = (r.algebra.basis(0), r.algebra.basis(3));
    assert!(ind2_eval(&Cochain::pair(f, 4, 0, 1), &r.pmap, &e1, &e4).is_zero());
}

#[test]
fn restricted_complex_on_h1() {
    let r = h1_restricted(3, &[0, 0, 0, 0]);
    let f = r.field();
    let d1s = d1star_matrix(&r.pmap);
    let d2s = d2star_matrix(&r.pmap);
    assert_eq!(d2s.cols(), cochain_dim(5, 2));
    assert!(d2s.mul(&d1s).unwrap().is_zero());
    for i in 0..4 {
        let c = RestrictedCochain2::frobenius_dual(f, 4, i);
        assert!(linalg::is_zero(&d2s.mul_vec(&c.coords())));
    }
    let h2s = restricted_cohomology(&r.pmap, 2).unwrap();
    assert_eq!(h2s.dim(), 3);
    let classes: Vec<_> = (0..3).map(|i| RestrictedCochain2::frobenius_dual(f, 4, i).coords()).collect();
    assert!(h2s.result.is_basis(&classes));
}

#[test]
fn six_term_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, m, lambda, h2, h2s) in [
        (3u32, 1usize, vec![1i64], 0usize, 3usize),
        (5, 2, vec![1, 1], 3, 8),
        (5, 3, vec![1, 1, 4], 8, 15),
    ] {
        let f = Field::prime(p).unwrap();
        let r = make_restricted_twisted(&f, m, &ints(&f, &lambda), &linalg::zero_vector(2 * m + 2)).unwrap();
        let report = six_term_check(&r.pmap, 10, &mut rng).unwrap();
        assert!(report.holds());
        assert_eq!((report.dim_h2, report.dim_h2_star), (h2, h2s));
        assert_eq!(report.dim_h2_star, 2 * m + 1 + report.dim_h2);
        assert_eq!(ce_cohomology(&r.algebra, 2).unwrap().dim, h2);
    }
}

#[test]
fn family_examples() {
    let f = Field::prime(5).unwrap();
    let r = make_restricted_twisted(&f, 2, &ints(&f, &[1, 1]), &linalg::zero_vector(6)).unwrap();
    let ext = family_extension(&r, Family::HiMi { i: 0 }).unwrap();
    assert_eq!(ext.algebra().bracket_basis(0, 2), ints(&f, &[0, 0, 0, 0, 1, 0, 1]));

    let f3 = Field::prime(3).unwrap();
    let r3 = make_restricted_twisted(&f3, 2, &ints(&f3, &[1, 1]), &linalg::zero_vector(6)).unwrap();
    let g = ints(&f3, &[1, 0, 0, 0, 0, 1]);
    let ext = family_extension(&r3, Family::HiMi { i: 0 }).unwrap();
    assert_eq!(family_p_power(&r3, Family::HiMi { i: 0 }, &g), ext.p_power_generic(&g).unwrap());

    // H_i: bracket unchanged, [p] gains a_i^p c
    let hi = family_extension(&r3, Family::Hi { i: 1 }).unwrap();
    let g = ints(&f3, &[2, 2, 1, 0, 1, 1, 0]);
    let mut expected = r3.pmap.p_extend(&g[..6]);
    expected.push(f3.frobenius(g[1]));
    assert_eq!(hi.p_power(&g), expected);
}

#[test]
fn corrupted_cocycle_rejected() {
    let f = Field::prime(5).unwrap();
    let r = make_restricted_twisted(&f, 2, &ints(&f, &[1, 1]), &linalg::zero_vector(6)).unwrap();
    let good = Family::HiMi { i: 0 }.cocycle(&f, 2, &r.lambda);
    let bad = RestrictedCochain2 {
        phi: good.phi.add(&f, &Cochain::pair(&f, 6, 0, 1)),
        omega: good.omega.clone(),
    };
    assert!(matches!(central_extend(&r.pmap, &bad), Err(Error::NotACocycle(_))));
}
