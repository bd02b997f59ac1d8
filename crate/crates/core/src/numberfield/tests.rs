use super::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn order(label: &str) -> Arc<NumberFieldOrder> {
    NumberFieldOrder::builtin(label).unwrap()
}

#[test]
fn splitting_of_three_in_qsqrt13() {
    let k = order("Qsqrt13");
    let ps = k.split_prime(3).unwrap();
    assert_eq!(ps.len(), 2);
    let images: Vec<u64> = ps.iter().map(|p| p.theta.0[0]).collect();
    assert_eq!(images, vec![0, 1]);
    assert!(ps.iter().all(|p| p.fdeg == 1 && p.e == 1));
    assert_eq!(ps[0].key(), "3.1");
    // v1 = (u - 1) is the prime with u -> 1.
    let u_minus_1 = NfElem::from_ints(&k, &[-1, 1]);
    assert!(ps[1].field.is_zero(&reduce_element(&u_minus_1, &ps[1])));
    assert!(!ps[0].field.is_zero(&reduce_element(&u_minus_1, &ps[0])));
}

#[test]
fn ramification_and_inertia() {
    let z = order("Zzeta13");
    let at13 = z.split_prime(13).unwrap();
    assert_eq!(at13.len(), 1);
    assert_eq!((at13[0].e, at13[0].fdeg), (12, 1));
    let cubic = order("K13cubic");
    let at5 = cubic.split_prime(5).unwrap();
    assert_eq!(at5.len(), 3);
    assert!(at5.iter().all(|p| p.fdeg == 1));
    let k = order("Qsqrt13");
    for q in [2u64, 5, 11, 19, 41] {
        let ps = k.split_prime(q).unwrap();
        assert!(ps.len() == 1 && ps[0].fdeg == 2 && ps[0].unique, "q = {q}");
    }
    for q in [3u64, 17, 23, 29, 53] {
        assert_eq!(k.split_prime(q).unwrap().len(), 2, "q = {q}");
    }
}

#[test]
fn degree_sum_matches_for_many_primes() {
    for label in NumberFieldOrder::builtin_labels() {
        let o = order(label);
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
            let ps = o.split_prime(q).unwrap();
            let total: usize = ps.iter().map(|p| p.e * p.fdeg).sum();
            assert_eq!(total, o.degree(), "{label} at {q}");
            for p in ps.iter() {
                assert!(p.field.is_zero(&reduce_element(&NfElem::from_ints(&o, &[0]), p)));
                let f_at_theta = o.poly().coeffs().iter().rev().fold(p.field.zero(), |acc, c| {
                    p.field.add(&p.field.mul(&acc, &p.theta), &reduce_int(&p.field, c))
                });
                assert!(p.field.is_zero(&f_at_theta));
            }
        }
    }
}

#[test]
fn keys_resolve() {
    let k = order("Qsqrt13");
    assert_eq!(k.prime("3.2").unwrap().theta.0[0], 1);
    assert!(matches!(k.prime("3.3"), Err(Error::BadPrimeKey(_))));
    assert!(matches!(k.prime("4.1"), Err(Error::BadPrimeKey(_))));
    assert!(matches!(k.prime("x"), Err(Error::BadPrimeKey(_))));
    assert!(matches!(NumberFieldOrder::builtin("nope"), Err(Error::UnknownOrder(_))));
}

#[test]
fn excluded_primes_refuse() {
    let o = NumberFieldOrder::new("t", crate::IntPoly::from_ints(&[-3, -1, 1]), vec![7]).unwrap();
    assert!(matches!(o.split_prime(7), Err(Error::UnsupportedPrime { .. })));
    // Z[sqrt(-3)] = Z[x]/(x^2 + 3) is not maximal at 2.
    let nm = NumberFieldOrder::new("nm", crate::IntPoly::from_ints(&[3, 0, 1]), vec![]).unwrap();
    assert!(matches!(nm.split_prime(2), Err(Error::UnsupportedPrime { .. })));
    assert!(!dedekind_maximal_at(&crate::IntPoly::from_ints(&[3, 0, 1]), 2).unwrap());
    // Z[x]/(x^3 + x^2 - 2x - 1) is maximal at 7 even though 7^2 | disc.
    assert!(dedekind_maximal_at(&crate::IntPoly::from_ints(&[-1, -2, 1, 1]), 7).unwrap());
}

#[test]
fn norms() {
    let s2 = order("Zsqrt2");
    assert_eq!(element_norm(&NfElem::from_ints(&s2, &[3, 1])), BigInt::from(7));
    assert_eq!(element_norm(&NfElem::from_ints(&s2, &[1])), BigInt::from(1));
    let z = order("Zzeta13");
    assert_eq!(element_norm(&NfElem::from_ints(&z, &[1, -1])), BigInt::from(13));
    for u in cyclotomic_unit_generators() {
        let n = element_norm(&u);
        assert!(n == BigInt::from(1) || n == BigInt::from(-1));
    }
    assert_eq!(element_norm(&cyclotomic_unit_generators()[0]), BigInt::from(1));
}

#[test]
fn norm_matches_multiplication_determinant() {
    let k = order("K13cubic");
    let x = NfElem::from_ints(&k, &[2, -5, 7]);
    let det = crate::exactarith::matrix::determinant(x.multiplication_matrix());
    assert_eq!(element_norm(&x), det);
}

#[test]
fn units_reduce_to_nonzero() {
    let z = order("Zzeta13");
    for q in [2u64, 3, 11, 13, 23, 29] {
        for p in z.split_prime(q).unwrap().iter() {
            for u in cyclotomic_unit_generators() {
                assert!(!p.field.is_zero(&reduce_element(&u, p)));
            }
        }
    }
}

#[test]
fn valuations() {
    let k = order("Qsqrt13");
    let two = k.prime("2.1").unwrap();
    assert_eq!(valuation_at(&NfElem::from_ints(&k, &[1]), &two).unwrap(), 0);
    assert_eq!(valuation_at(&NfElem::from_ints(&k, &[2]), &two).unwrap(), 1);
    assert_eq!(valuation_at(&NfElem::from_ints(&k, &[8, 4]), &two).unwrap(), 2);
    let three = k.prime("3.1").unwrap();
    assert!(matches!(valuation_at(&NfElem::from_ints(&k, &[3]), &three), Err(Error::UnsupportedValuation { .. })));
    assert!(matches!(valuation_at(&NfElem::from_ints(&k, &[0]), &two), Err(Error::ZeroElement)));
    // w = 2u - 1 generates the ramified prime above 13.
    let w = k.prime("13.1").unwrap();
    assert_eq!(valuation_at(&NfElem::from_ints(&k, &[-1, 2]), &w).unwrap(), 1);
    assert_eq!(valuation_at(&NfElem::from_ints(&k, &[13]), &w).unwrap(), 2);
}

#[test]
fn rational_inverse() {
    let k = order("Qsqrt13");
    let x = NfElem::from_ints(&k, &[2, 3]).to_rational();
    let inv = x.inverse().unwrap();
    assert_eq!(x * inv, NfElem::constant(&k, BigRational::from_integer(BigInt::from(1))));
}

#[test]
fn cubic_automorphisms_permute_primes_above_five() {
    let k = order("K13cubic");
    let autos = automorphisms(&k).unwrap();
    assert_eq!(autos.len(), 3);
    let theta = NfElem::theta(&k);
    assert!(autos.contains(&theta));
    let nontrivial: Vec<_> = autos.iter().filter(|a| **a != theta).collect();
    let perm = prime_permutation(&k, nontrivial[0], 5).unwrap();
    assert_eq!(perm.len(), 3);
    let mut images: Vec<&String> = perm.values().collect();
    images.sort();
    images.dedup();
    assert_eq!(images.len(), 3);
    assert!(perm.iter().all(|(a, b)| a != b), "a 3-cycle fixes no prime");
    let q13 = automorphisms(&order("Qsqrt13")).unwrap();
    assert_eq!(q13.len(), 2);
}

fn small_elem(o: &Arc<NumberFieldOrder>) -> impl Strategy<Value = OrderElement> {
    let o = o.clone();
    proptest::collection::vec(-20i64..20, o.degree()).prop_map(move |c| NfElem::from_ints(&o, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_a_ring_map(x in small_elem(&order("Zzeta13")), y in small_elem(&order("Zzeta13"))) {
        let z = order("Zzeta13");
        for q in [3u64, 23, 53] {
            for p in z.split_prime(q).unwrap().iter() {
                let f = &p.field;
                let rx = reduce_element(&x, p);
                let ry = reduce_element(&y, p);
                prop_assert_eq!(reduce_element(&(x.clone() + y.clone()), p), f.add(&rx, &ry));
                prop_assert_eq!(reduce_element(&(x.clone() * y.clone()), p), f.mul(&rx, &ry));
            }
        }
    }

    #[test]
    fn norm_is_multiplicative(x in small_elem(&order("K13cubic")), y in small_elem(&order("K13cubic"))) {
        prop_assert_eq!(element_norm(&(x.clone() * y.clone())), element_norm(&x) * element_norm(&y));
    }

    #[test]
    fn valuation_shifts_by_one_under_q(x in small_elem(&order("Qsqrt13"))) {
        prop_assume!(!x.is_zero());
        let k = order("Qsqrt13");
        for key in ["2.1", "5.1", "11.1"] {
            let p = k.prime(key).unwrap();
            let q = NfElem::from_ints(&k, &[p.q as i64]);
            prop_assert_eq!(valuation_at(&(q * x.clone()), &p).unwrap(), 1 + valuation_at(&x, &p).unwrap());
        }
    }
}
