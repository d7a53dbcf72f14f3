mod common;

use common::*;
use proptest::prelude::*;
use skewcodes_core::matrix;
use skewcodes_core::{Automorphism, Elem, Matrix, SemiLinearMap};

#[test]
fn companion_of_cubic_has_negated_last_row() {
    let (fld, th) = f4();
    let c = Matrix::companion(&poly(&th, "x^3+x^2+a*x+a^2")).unwrap();
    assert_eq!(c, mat(&fld, "0,1,0; 0,0,1; a^2,a,1"));
}

#[test]
fn determinant_and_inverse_match_oracle() {
    let (fld, _) = f4();
    let mut r = rng(1);
    for n in 1..=4 {
        for _ in 0..30 {
            let m = rand_matrix(&fld, n, n, &mut r);
            assert_eq!(m.det().unwrap(), det(&fld, &rows(&m)));
            if let Ok(inv) = m.inverse() {
                assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&fld, n));
            } else {
                assert!(det(&fld, &rows(&m)).is_zero());
            }
        }
    }
}

#[test]
fn left_kernel_matches_enumeration() {
    let (fld, _) = prime(3);
    let mut r = rng(2);
    for _ in 0..40 {
        let m = rand_matrix(&fld, 3, 2, &mut r);
        let k = m.left_kernel();
        let got = if k.rows() == 0 { span_set(&fld, &[], 3) } else { span_of(&fld, &k) };
        assert_eq!(got, brute_left_kernel(&fld, &rows(&m), 3));
    }
}

#[test]
fn intersection_and_sum_of_subspaces() {
    let (fld, _) = prime(2);
    let a = mat(&fld, "1,0,0,0; 0,1,0,0");
    let b = mat(&fld, "0,1,0,0; 0,0,1,0");
    assert_eq!(span_of(&fld, &matrix::intersect(&a, &b).unwrap()), span_set(&fld, &rows(&mat(&fld, "0,1,0,0")), 4));
    assert_eq!(matrix::sum(&a, &b).unwrap().rank(), 3);
}

#[test]
fn semilinear_map_is_additive_and_twisted_homogeneous() {
    let (fld, th) = f4();
    let mut r = rng(3);
    let m = rand_invertible(&fld, 3, &mut r);
    let t = SemiLinearMap::new(&th, m.clone()).unwrap();
    for _ in 0..50 {
        let u = rand_vec(&fld, 3, &mut r);
        let v = rand_vec(&fld, 3, &mut r);
        let c = rand_elem(&fld, &mut r);
        assert_eq!(t.apply(&vadd(&fld, &u, &v)).unwrap(), vadd(&fld, &t.apply(&u).unwrap(), &t.apply(&v).unwrap()));
        assert_eq!(t.apply(&vscale(&fld, c, &u)).unwrap(), vscale(&fld, th.apply(c), &t.apply(&u).unwrap()));
        assert_eq!(t.apply(&u).unwrap(), semilinear(&th, &rows(&m), &u));
    }
}

#[test]
fn cyclic_subspace_is_smallest_invariant_span() {
    let (fld, th) = f4();
    let f = poly(&th, "x^3+x^2+a*x+a^2");
    let t = SemiLinearMap::from_polynomial(&f).unwrap();
    let tm = rows(t.matrix());
    for v in all_vectors(&fld, 3) {
        let cyc = span_of(&fld, &t.cyclic_subspace(&v).unwrap());
        assert!(is_invariant_set(&th, &tm, &cyc));
        assert!(cyc.contains(&as_key(&v)));
        for s in all_subspaces(&fld, 3) {
            if s.contains(&as_key(&v)) && is_invariant_set(&th, &tm, &s) {
                assert!(cyc.is_subset(&s));
            }
        }
    }
}

#[test]
fn decomposition_of_companion_of_product_certifies() {
    let (_, id) = prime(2);
    let t = SemiLinearMap::from_polynomial(&poly(&id, "x^4+x^3+x+1")).unwrap();
    let d = t.decompose(1 << 20).unwrap();
    d.certify(&t).unwrap();
    assert_eq!(d.sizes().iter().sum::<usize>(), 4);
}

#[test]
fn rational_canonical_form_recovers_invariant_factors() {
    let (f2, id) = prime(2);
    let d = Matrix::block_diag(&f2, &[mat(&f2, "1"), mat(&f2, "1")]).unwrap();
    let rcf = d.rational_canonical_form().unwrap();
    assert_eq!(rcf.invariant_factors, vec![poly(&id, "x+1"), poly(&id, "x+1")]);
    assert_eq!(d.minimal_polynomial().unwrap(), poly(&id, "x+1"));
    assert_eq!(d.characteristic_polynomial().unwrap(), poly(&id, "x^2+1"));
}

fn arb_matrix(n: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..4, n * n)
}

fn build(c: &[u32], n: usize) -> Matrix {
    let (fld, _) = f4();
    let rs: Vec<Vec<Elem>> = c.chunks(n).map(|row| row.iter().map(|&x| fld.elem(x).unwrap()).collect()).collect();
    Matrix::from_rows(&fld, &rs).unwrap()
}

proptest! {
    #[test]
    fn rank_plus_kernel_is_rows(c in arb_matrix(3)) {
        let m = build(&c, 3);
        prop_assert_eq!(m.rank() + m.left_kernel().rows(), 3);
    }

    #[test]
    fn det_is_multiplicative(a in arb_matrix(3), b in arb_matrix(3)) {
        let (fld, _) = f4();
        let (a, b) = (build(&a, 3), build(&b, 3));
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), fld.mul(a.det().unwrap(), b.det().unwrap()));
    }

    #[test]
    fn cyclic_subspaces_are_invariant(c in arb_matrix(3), v in proptest::collection::vec(0u32..4, 3)) {
        let (fld, th) = f4();
        let t = SemiLinearMap::new(&th, build(&c, 3)).unwrap();
        let v: Vec<Elem> = v.iter().map(|&x| fld.elem(x).unwrap()).collect();
        let cyc = t.cyclic_subspace(&v).unwrap();
        prop_assert!(cyc.rows() == 0 || t.is_invariant(&cyc).unwrap());
    }

    #[test]
    fn decomposition_reassembles(c in arb_matrix(3), frob in any::<bool>()) {
        let (fld, f) = f4();
        let th = if frob { f } else { Automorphism::identity(&fld) };
        let m = build(&c, 3);
        prop_assume!(m.det().unwrap() != Elem::ZERO);
        let t = SemiLinearMap::new(&th, m).unwrap();
        let d = t.decompose(1 << 20).unwrap();
        prop_assert!(d.certify(&t).is_ok());
        let sizes = d.sizes();
        prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn twist_composes(c in arb_matrix(2)) {
        let (_, th) = f4();
        let m = build(&c, 2);
        prop_assert_eq!(m.twist(&th, 1).unwrap().twist(&th, 1).unwrap(), m);
    }
}
