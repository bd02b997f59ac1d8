use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::curves::EllipticCurveNF;
use crate::numberfield::NumberFieldOrder;
use crate::Error;

fn packet_json(h: &str, eigen: &str, extra: &str) -> String {
    format!(
        r#"{{"label": "t", "base_field": "Qsqrt13", "coeff_poly": {h}, "eigenvalues": {eigen}, "provenance": "test"{extra}}}"#
    )
}

fn one(text: &str) -> crate::Result<NewformPacket> {
    parse_packets(text).map(|mut v| v.remove(0))
}

fn frey_packet() -> NewformPacket {
    let order = NumberFieldOrder::builtin("Qsqrt13").unwrap();
    let e = EllipticCurveNF::from_ints(&order, [&[0, 0], &[0, -1], &[0, 0], &[-25, 9], &[49, -17]]).unwrap();
    packet_from_elliptic_curve(&e, "E_1_-1", 60).unwrap()
}

#[test]
fn curve_packet_loads_with_traces() {
    let p = frey_packet();
    assert!(p.warnings.is_empty());
    assert!(p.file.level.primes.contains(&"2.1".to_string()));
    let rp = &p.primes_above_in_qf(7).unwrap()[0];
    for (key, v) in &p.file.eigenvalues {
        let a = i64::try_from(&v[0]).unwrap();
        assert_eq!(p.reduce_eigenvalue(key, rp).unwrap(), rp.field.from_i64(a));
    }
}

#[test]
fn weil_violation_is_rejected() {
    let text = packet_json("[0, 1]", r#"{"3.1": [6]}"#, "");
    assert!(matches!(one(&text), Err(Error::WeilBound { .. })));
}

#[test]
fn empty_table_loads_with_a_warning() {
    let p = one(&packet_json("[0, 1]", "{}", "")).unwrap();
    assert_eq!(p.warnings.len(), 1);
}

#[test]
fn reducible_coefficient_polynomial_is_rejected() {
    assert!(one(&packet_json("[0, 0, 0, 1]", "{}", "")).is_err());
}

#[test]
fn unknown_prime_key_is_rejected() {
    assert!(matches!(one(&packet_json("[0, 1]", r#"{"5.2": [1]}"#, "")), Err(Error::BadPrimeKey(_))));
}

#[test]
fn schema_errors_carry_positions() {
    let text = "{\n  \"label\": \"t\",\n  \"base_field\": \"Q\",\n  \"coeff_poly\": [0, 1],\n  \"bogus\": 1\n}";
    let err = one(text).unwrap_err();
    assert!(matches!(&err, Error::Schema(m) if m.contains("line 5")), "{err}");
}

#[test]
fn splitting_in_the_coefficient_field() {
    let p = one(&packet_json("[-7, -1, 1]", "{}", "")).unwrap();
    let rps = p.primes_above_in_qf(7).unwrap();
    assert_eq!(rps.len(), 2);
    assert!(rps.iter().all(|r| r.degree == 1 && r.e == Some(1)));
    assert_eq!(rps.iter().map(|r| r.root.coeffs()[0]).collect::<Vec<_>>(), vec![0, 1]);

    let p = one(&packet_json("[-2, 0, 1]", "{}", "")).unwrap();
    let rps = p.primes_above_in_qf(7).unwrap();
    assert_eq!(rps.iter().map(|r| r.root.coeffs()[0]).collect::<Vec<_>>(), vec![3, 4]);
}

#[test]
fn sqrt2_eigenvalue_reduces_like_the_rm_map() {
    let p = one(&packet_json("[-2, 0, 1]", r#"{"3.1": [0, 1], "3.2": [0]}"#, "")).unwrap();
    let rp = p.primes_above_in_qf(7).unwrap().into_iter().find(|r| r.root.coeffs()[0] == 4).unwrap();
    assert_eq!(p.reduce_eigenvalue("3.1", &rp).unwrap().coeffs()[0], 4);
    assert_eq!(p.reduce_eigenvalue("3.2", &rp).unwrap().coeffs()[0], 0);
    assert!(matches!(p.reduce_eigenvalue("17.1", &rp), Err(Error::MissingEigenvalue(_))));
}

#[test]
fn index_prime_needs_an_explicit_map() {
    // Z[x]/(x^2 - 5) has index 2 in the maximal order.
    let p = one(&packet_json("[-5, 0, 1]", "{}", "")).unwrap();
    assert!(matches!(p.primes_above_in_qf(2), Err(Error::UnsupportedResidualPrime { p: 2 })));
    let with_map = one(&packet_json("[-5, 0, 1]", "{}", r#", "residue_maps": {"2:1": [1]}"#)).unwrap();
    let rps = with_map.primes_above_in_qf(2).unwrap();
    assert_eq!((rps.len(), rps[0].key()), (1, "2:1".to_string()));
    assert!(one(&packet_json("[-5, 0, 1]", "{}", r#", "residue_maps": {"3:1": [1]}"#)).is_err());
}

#[test]
fn serialization_round_trips() {
    let p = frey_packet();
    let again = one(&p.to_json()).unwrap();
    assert_eq!(again.file, p.file);
    let text = packet_json("[-2, 0, 1]", r#"{"3.1": [0, 1]}"#, r#", "residue_maps": {"7:2": [4]}, "status": "partial""#);
    let p = one(&text).unwrap();
    assert_eq!(one(&p.to_json()).unwrap().file, p.file);
}

fn cubic_rational_packet(a: [i64; 5]) -> NewformPacket {
    let cubic = NumberFieldOrder::builtin("K13cubic").unwrap();
    let e = EllipticCurveNF::from_ints(&cubic, a.each_ref().map(std::slice::from_ref)).unwrap();
    packet_from_elliptic_curve(&e, "bc", 200).unwrap()
}

#[test]
fn base_change_is_galois_stable() {
    let packet = cubic_rational_packet([1, 0, 1, -5, -8]);
    let cubic = packet.base.clone();
    let qs: Vec<u64> = (2..200).filter(|&q| crate::exactarith::intutil::is_prime(q)).collect();
    let maps = galois_prime_maps(&cubic, &qs).unwrap();
    assert_eq!(maps.len(), 3);
    let p0 = &packet.primes_above_in_qf(7).unwrap()[0];
    for m in &maps {
        assert!(conjugate_congruence_check(&packet, m, p0).unwrap().is_empty());
    }

    let mut broken = packet.file.clone();
    let key = "5.1".to_string();
    let old = i64::try_from(&broken.eigenvalues[&key][0]).unwrap();
    broken.eigenvalues.insert(key.clone(), vec![BigInt::from(if old > 0 { old - 1 } else { old + 1 })]);
    let broken = NewformPacket::from_file(broken).unwrap();
    let failures = conjugate_congruence_check(&broken, &maps[1], p0).unwrap();
    assert!(failures.contains(&key), "{failures:?}");

    let partial: BTreeMap<String, String> = maps[1].iter().take(2).map(|(a, b)| (a.clone(), b.clone())).collect();
    assert!(matches!(conjugate_congruence_check(&packet, &partial, p0), Err(Error::MissingPermutedKey(_))));
}

#[test]
fn contradiction_check_against_target() {
    let packet = one(&packet_json("[0, 1]", r#"{"3.1": [2], "3.2": [2]}"#, "")).unwrap();
    let rp = &packet.primes_above_in_qf(7).unwrap()[0];
    let keys = vec!["3.1".to_string(), "3.2".to_string()];
    assert!(!trace_contradiction_check(&packet, rp, &keys, &rp.reduce_int(2)).unwrap());
    assert!(trace_contradiction_check(&packet, rp, &keys, &rp.reduce_int(-3)).unwrap());
    assert!(trace_contradiction_check(&packet, rp, &["4.1".to_string()], &rp.reduce_int(0)).is_err());
}

proptest! {
    #[test]
    fn reduction_is_a_ring_map(a in proptest::array::uniform2(-3i64..=3), b in proptest::array::uniform2(-3i64..=3)) {
        // |x + y sqrt 2| <= 3 + 3 sqrt 2 < 2 sqrt 17 keeps both values inside the Weil bound.
        let s = [a[0] + b[0], a[1] + b[1]];
        let m = [a[0] * b[0] + 2 * a[1] * b[1], a[0] * b[1] + a[1] * b[0]];
        let order = NumberFieldOrder::builtin("Zsqrt2").unwrap();
        let elem = |v: [i64; 2]| crate::OrderElement::from_ints(&order, &v);
        prop_assert_eq!(elem(a) + elem(b), elem(s));
        prop_assert_eq!(elem(a) * elem(b), elem(m));
        let text = packet_json("[-2, 0, 1]", &format!(r#"{{"17.1": {a:?}, "17.2": {b:?}}}"#), "");
        let packet = one(&text).unwrap();
        for rp in packet.primes_above_in_qf(7).unwrap() {
            let f = &rp.field;
            let (ra, rb) = (packet.reduce_eigenvalue("17.1", &rp).unwrap(), packet.reduce_eigenvalue("17.2", &rp).unwrap());
            let direct = |v: [i64; 2]| f.add(&f.from_i64(v[0]), &f.mul(&f.from_i64(v[1]), &rp.root));
            prop_assert_eq!(f.add(&ra, &rb), direct(s));
            prop_assert_eq!(f.mul(&ra, &rb), direct(m));
        }
    }
}
