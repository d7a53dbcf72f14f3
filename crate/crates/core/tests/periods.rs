mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use skewcodes_core::{Automorphism, Elem, Field, Matrix, SkewPoly};

/// All monic `f` of degree `deg` with `f(0) != 0`.
fn monic_with_unit_constant(fld: &Field, th: &Automorphism, deg: usize) -> Vec<SkewPoly> {
    let q = fld.order() as usize;
    (0..q.pow(deg as u32))
        .filter_map(|idx| {
            let mut c: Vec<Elem> = (0..deg).map(|j| fld.elem(((idx / q.pow(j as u32)) % q) as u32).unwrap()).collect();
            if c[0].is_zero() {
                return None;
            }
            c.push(Elem::ONE);
            Some(SkewPoly::from_coeffs(th, c))
        })
        .collect()
}

#[test]
fn commutative_periods_agree_up_to_degree_five() {
    let (f4f, _) = f4();
    for (fld, th) in [prime(2), prime(3), (f4f.clone(), Automorphism::identity(&f4f))] {
        let q = fld.order() as u64;
        for deg in 1..=5 {
            for f in monic_with_unit_constant(&fld, &th, deg) {
                let pd = f.period().unwrap();
                assert_eq!(pd.m, f.period_commutative(1 << 24).unwrap(), "{f}");
                assert_eq!(pd.m, Matrix::companion(&f).unwrap().order(1 << 24).unwrap(), "{f}");
                assert!(deg as u64 <= pd.m && pd.m <= q.pow(deg as u32) + deg as u64 - 2, "{f}: m={}", pd.m);
            }
        }
    }
}

#[test]
fn period_is_n_plus_first_return_of_last_row() {
    for (fld, th) in [prime(2), prime(3)] {
        for deg in 1..=4 {
            for f in monic_with_unit_constant(&fld, &th, deg) {
                let a = rows(&Matrix::companion(&f).unwrap());
                let mut e1 = vec![Elem::ZERO; deg];
                e1[0] = Elem::ONE;
                let mut v = a[deg - 1].clone();
                let mut k = 0;
                while v != e1 {
                    v = vecmat(&fld, &v, &a);
                    k += 1;
                }
                let pd = f.period().unwrap();
                assert_eq!(pd.m, (deg + k) as u64, "{f}");
                assert_eq!(pd.q_f.degree(), Some(k));
            }
        }
    }
}

#[test]
fn period_factors_through_determinant_order() {
    for (fld, th) in [prime(3), prime(5)] {
        for deg in 1..=3 {
            for f in monic_with_unit_constant(&fld, &th, deg) {
                let a = Matrix::companion(&f).unwrap();
                let p0 = fld.mult_order(a.det().unwrap()).unwrap();
                let m_prime = a.pow(p0).unwrap().order(1 << 20).unwrap();
                assert_eq!(f.period().unwrap().m, p0 * m_prime, "{f}");
            }
        }
    }
}

#[test]
fn star_period_in_odd_characteristic() {
    let fld = Field::parse_spec("p=3,s=2").unwrap();
    let th = Automorphism::frobenius(&fld);
    let mut r = rng(31);
    for _ in 0..150 {
        let f = rand_monic(&th, 1 + (r.gen_range(0..3)), &mut r);
        assert_eq!(f.period_star().unwrap(), f.period().unwrap().m, "{f}");
    }
}

#[test]
fn cofactor_reconstructs_x_power_minus_one() {
    let (_, th) = f4();
    let mut r = rng(32);
    for _ in 0..100 {
        let f = rand_monic(&th, 1 + r.gen_range(0..4), &mut r);
        let pd = f.period().unwrap();
        assert_eq!(&f * &pd.q_f, SkewPoly::x_pow_minus_one(&th, pd.m as usize));
    }
}

proptest! {
    #[test]
    fn skew_period_is_minimal(c in proptest::collection::vec(0u32..4, 3), c0 in 1u32..4) {
        let (fld, th) = f4();
        let mut coeffs: Vec<Elem> = std::iter::once(c0).chain(c).map(|x| fld.elem(x).unwrap()).collect();
        coeffs.push(Elem::ONE);
        let f = SkewPoly::from_coeffs(&th, coeffs);
        let m = f.period().unwrap().m as usize;
        for j in 1..m {
            prop_assert!(!SkewPoly::x_pow_minus_one(&th, j).rem_right(&f).unwrap().is_zero());
        }
    }
}
