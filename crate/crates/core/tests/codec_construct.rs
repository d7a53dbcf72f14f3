mod common;

use common::*;
use proptest::prelude::*;
use skewcodes_core::codec::{self, EncodeMethod, MeggittMode, SyndromeTable};
use skewcodes_core::codes::{ModuleThetaCode, ProductTCode};
use skewcodes_core::construct;
use skewcodes_core::{Elem, Error, SemiLinearMap, SkewPoly};

/// A skew-cyclic `[6,3]` code over `F_4` correcting one error.
fn skew_cyclic_6_3() -> ProductTCode {
    let (_, th) = f4();
    let f = SkewPoly::x_pow_minus_one(&th, 6);
    f.right_divisors(3, false, 1 << 20)
        .unwrap()
        .into_iter()
        .map(|(g, _)| ModuleThetaCode::new(&f, &g).unwrap())
        .find(|m| m.min_distance(1 << 20).unwrap() >= 3)
        .map(ProductTCode::single)
        .expect("some divisor gives d >= 3")
}

#[test]
fn encoders_agree_on_skew_code() {
    let code = skew_cyclic_6_3();
    let fld = code.field().clone();
    for msg in all_vectors(&fld, 3) {
        let a = codec::encode(&msg, &code, EncodeMethod::Polynomial).unwrap();
        assert_eq!(a, codec::encode(&msg, &code, EncodeMethod::Matrix).unwrap());
        assert_eq!(codec::decode_plain(&a, &code).unwrap(), msg);
        assert!(codec::syndrome(&a, &code).unwrap().iter().all(|s| s.is_zero()));
    }
}

#[test]
fn per_component_meggitt_corrects_single_errors_on_skew_code() {
    let code = skew_cyclic_6_3();
    let fld = code.field().clone();
    let table = SyndromeTable::build(&code, 1 << 20).unwrap();
    assert!(table.parameters()[0].1 >= 1);
    let mut r = rng(21);
    for _ in 0..20 {
        let cw = codec::encode(&rand_vec(&fld, 3, &mut r), &code, EncodeMethod::Polynomial).unwrap();
        for pos in 0..6 {
            for u in fld.units() {
                let mut rcv = cw.clone();
                rcv[pos] = fld.add(rcv[pos], u);
                let (out, e) = codec::meggitt_decode(&rcv, &code, &table, MeggittMode::PerComponent).unwrap();
                assert_eq!(out, cw);
                assert_eq!(e.iter().filter(|x| !x.is_zero()).count(), 1);
                // The literal shift is checked against the syndrome, so it
                // either corrects or reports failure.
                match codec::meggitt_decode(&rcv, &code, &table, MeggittMode::Literal) {
                    Ok((out, _)) => assert_eq!(out, cw),
                    Err(err) => assert!(matches!(err, Error::Uncorrectable(_))),
                }
            }
        }
    }
}

#[test]
fn uncorrectable_pattern_is_reported() {
    let (_, id) = prime(2);
    let code = ProductTCode::single(ModuleThetaCode::new(&poly(&id, "x^7+1"), &poly(&id, "x^4+x^3+x^2+1")).unwrap());
    let table = SyndromeTable::build(&code, 1 << 20).unwrap();
    assert_eq!(table.parameters(), vec![(Some(4), 1)]);
    let (f2, _) = prime(2);
    let rcv: Vec<Elem> = [1, 1, 0, 0, 0, 0, 0].iter().map(|&x| f2.elem(x).unwrap()).collect();
    assert!(matches!(
        codec::meggitt_decode(&rcv, &code, &table, MeggittMode::PerComponent),
        Err(Error::Uncorrectable(_))
    ));
}

#[test]
fn syndrome_table_respects_budget() {
    let code = skew_cyclic_6_3();
    assert!(matches!(SyndromeTable::build(&code, 2), Err(Error::Budget { .. })));
}

#[test]
fn twisted_powers_follow_the_recursion() {
    let (fld, th) = f4();
    let mut r = rng(22);
    let a = rand_invertible(&fld, 3, &mut r);
    let p = construct::twisted_powers(&a, &th, 4).unwrap();
    assert_eq!(p[0], a);
    for k in 1..4 {
        assert_eq!(p[k], a.twist(&th, k as i64).unwrap().mul(&p[k - 1]).unwrap());
    }
}

#[test]
fn projective_points_are_normalised_and_distinct() {
    let (fld, _) = prime(3);
    let pts = construct::projective_points(&fld, 2, 1 << 20).unwrap();
    assert_eq!(pts.len(), 1 + 3 + 9);
    for p in &pts {
        let lead = p.iter().find(|x| !x.is_zero()).unwrap();
        assert_eq!(*lead, Elem::ONE);
    }
    assert!(construct::projective_points(&fld, 2, 5).is_err());
}

#[test]
fn seed_codes_over_fixed_subfield() {
    let (_, th) = f4();
    let t = SemiLinearMap::from_polynomial(&poly(&th, "x^3+a^2")).unwrap();
    let zs = construct::zero_locus_scan(t.matrix(), &th, 1, 1 << 20).unwrap();
    for z in &zs {
        for v in rows(&z.fixed_kernel) {
            let c = construct::code_from_point(&t, &v, 1).unwrap();
            assert_eq!(c.dim(), 1);
            assert!(t.is_invariant(c.generator()).unwrap());
        }
    }
}

#[test]
fn shortened_generator_is_twisted() {
    let (_, th) = f4();
    let g = poly(&th, "x^2+a*x+1");
    assert_eq!(construct::shorten_generator(&g), poly(&th, "x^2+a^2*x+1"));
    assert_eq!(construct::generated_code(&g, 5).unwrap().dim(), 3);
}

#[test]
fn distance_table_csv_and_budget() {
    let (_, id) = prime(2);
    let t = construct::distance_table(&id, 4, 1 << 20).unwrap();
    let csv = t.to_csv();
    assert!(csv.starts_with("n,k,D\n"));
    assert!(csv.contains("4,1,4\n"));
    let partial = construct::distance_table(&id, 4, 3).unwrap();
    assert!(partial.to_csv().contains('?'));
}

#[test]
fn commutative_factorisation_reconstructs() {
    let (_, id) = prime(2);
    let p = poly(&id, "x^4+x^3+x+1");
    let fs = construct::factor_commutative(&p, 1 << 20).unwrap();
    let mut prod = SkewPoly::one(&id);
    for (q, e) in &fs {
        for _ in 0..*e {
            prod = &prod * q;
        }
    }
    assert_eq!(prod, p);
    assert_eq!(fs.len(), 2);
}

#[test]
fn feasible_dimensions_of_companion() {
    let (_, id) = prime(2);
    let t = SemiLinearMap::from_polynomial(&poly(&id, "x^4+x^3+x+1")).unwrap();
    let dims = construct::feasible_dimensions(&t, 1 << 20).unwrap();
    let (f2, _) = prime(2);
    let brute: std::collections::BTreeSet<usize> = all_subspaces(&f2, 4)
        .iter()
        .filter(|s| is_invariant_set(&id, &rows(t.matrix()), s))
        .map(|s| s.len().trailing_zeros() as usize)
        .collect();
    assert_eq!(dims, brute);
}

proptest! {
    #[test]
    fn encode_round_trip_hamming(bits in proptest::collection::vec(0u32..2, 4)) {
        let (f2, id) = prime(2);
        let code = ProductTCode::single(ModuleThetaCode::new(&poly(&id, "x^7+1"), &poly(&id, "x^3+x+1")).unwrap());
        let msg: Vec<Elem> = bits.iter().map(|&b| f2.elem(b).unwrap()).collect();
        let cw = codec::encode(&msg, &code, EncodeMethod::Matrix).unwrap();
        prop_assert_eq!(codec::decode_plain(&cw, &code).unwrap(), msg);
    }

    #[test]
    fn fh_is_homogeneous(seed in 0u64..1000, lam in 1u32..4) {
        let (fld, th) = f4();
        let mut r = rng(seed);
        let a = rand_invertible(&fld, 3, &mut r);
        let p = construct::twisted_powers(&a, &th, 2).unwrap();
        let pt = rand_vec(&fld, 3, &mut r);
        let l = fld.elem(lam).unwrap();
        let scaled = vscale(&fld, l, &pt);
        let lhs = construct::fh_eval(&p, &scaled).unwrap();
        let rhs = fld.mul(fld.pow(l, 3).unwrap(), construct::fh_eval(&p, &pt).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
