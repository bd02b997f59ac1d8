//! The numbered verification checks run by `check-invariants` and `full-report`.

use std::collections::BTreeSet;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modmethod_core::curves::{
    check_congruence, frobenius_projective_order, g2_rm_split, load_curve, weighted_pp_equal, CurveModel,
    EllipticCurveNF, HyperellipticCurveNF, IgusaClebsch, RepeatedRootConvention,
};
use modmethod_core::elimination::{eliminate, load_family, FreyFamily, RefinedRequest, SurvivingSet};
use modmethod_core::newformdata::{load_packets, packet_from_elliptic_curve, parse_packets, trace_contradiction_report};
use modmethod_core::numberfield::{reduce_element, valuation_at, NumberFieldOrder};
use modmethod_core::unitsieve::{
    class_index, generator_independence_rank, load_constraints, local_survivors, local_survivors_exhaustive,
    sieve_case, tables_above, ConstraintMode, DescentCase, LocalCharacterTable, SieveConstraint, CLASS_COUNT, RANK,
};
use modmethod_core::{Error, FieldElement, OrderElement, Result};

use crate::report::{RunReport, Verdict};

type Outcome = (Verdict, String);

pub struct Fixtures {
    pub dir: PathBuf,
}

impl Fixtures {
    pub fn path(&self, rel: &str) -> PathBuf {
        self.dir.join(rel)
    }

    fn elliptic(&self, report: &mut RunReport, rel: &str) -> Result<EllipticCurveNF> {
        let path = self.path(rel);
        report.hash_input(&path);
        match load_curve(&path)?.1 {
            CurveModel::Elliptic(e) => Ok(e),
            CurveModel::Hyperelliptic(_) => Err(Error::Schema(format!("{rel}: expected an elliptic curve"))),
        }
    }

    fn genus2(&self, report: &mut RunReport, rel: &str) -> Result<HyperellipticCurveNF> {
        let path = self.path(rel);
        report.hash_input(&path);
        match load_curve(&path)?.1 {
            CurveModel::Hyperelliptic(c) => Ok(c),
            CurveModel::Elliptic(_) => Err(Error::Schema(format!("{rel}: expected a genus-2 curve"))),
        }
    }
}

pub const E_CURVE: &str = "curves/E_1_-1.curve";
pub const C_CURVE: &str = "curves/C_eq51.curve";
pub const LEGENDRE: &str = "families/legendre_qsqrt13.json";

fn verdict(ok: bool, detail: String) -> Outcome {
    (if ok { Verdict::Pass } else { Verdict::Fail }, detail)
}

fn run(f: impl FnOnce() -> Result<Outcome>) -> Outcome {
    match f() {
        Ok(o) => o,
        Err(e @ Error::ExternalData(_)) => (Verdict::SkippedExternal, e.to_string()),
        Err(e) => (Verdict::Error, e.to_string()),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// RM splits of the Euler factors of `C` at the two primes above 3.
pub fn euler_at_three(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let c = fx.genus2(report, C_CURVE)?;
        let order = c.order().clone();
        let u = OrderElement::theta(&order);
        let mut found = Vec::new();
        for p in order.split_prime(3)?.iter() {
            let is_v2 = p.field.is_zero(&reduce_element(&u, p));
            let split = g2_rm_split(&c.euler_factor(p)?)?;
            let mut pair = split.describe().to_vec();
            pair.sort();
            found.push((if is_v2 { "v2 = (u)" } else { "v1 = (u - 1)" }, pair));
        }
        found.sort();
        let expected = vec![
            ("v1 = (u - 1)", vec!["2 + sqrt2".to_string(), "2 - sqrt2".to_string()]),
            ("v2 = (u)", vec!["-sqrt2".to_string(), "sqrt2".to_string()]),
        ];
        Ok(verdict(found == expected, format!("{found:?}")))
    })
}

/// `(v(c4), v(c6), v(disc))` of `E_{1,-1}` at the inert prime 2.
pub fn valuations_at_two(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let e = fx.elliptic(report, E_CURVE)?;
        let two = e.order().prime("2.1")?;
        let (c4, c6, disc) = e.ec_invariants();
        let v = [valuation_at(&c4, &two)?, valuation_at(&c6, &two)?, valuation_at(&disc, &two)?];
        Ok(verdict(v == [5, 5, 4], format!("(v(c4), v(c6), v(disc)) = {v:?}")))
    })
}

/// Invariants of `C` against the printed `I'` with `alpha = -60u - 48`.
pub fn igusa_clebsch(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let c = fx.genus2(report, C_CURVE)?;
        let order = c.order().clone();
        let fe = |a: BigRational, b: BigRational| FieldElement::new(&order, vec![a, b]);
        let printed = IgusaClebsch {
            i2: fe(rat(-38832, 81), rat(18112, 81)),
            i4: fe(rat(270660, 6561), rat(-112736, 6561)),
            i6: fe(rat(-5484934104, 531441), rat(2386589920, 531441)),
            i10: fe(rat(-1222121472, 3486784401), rat(532320256, 3486784401)),
        };
        let ic = c.igusa_clebsch()?;
        let alpha = fe(rat(-48, 1), rat(-60, 1));
        let pow = |e: u32| (0..e).fold(fe(rat(1, 1), rat(0, 1)), |acc, _| acc * alpha.clone());
        let exact = ic.i2 == pow(2) * printed.i2.clone()
            && ic.i4 == pow(4) * printed.i4.clone()
            && ic.i6 == pow(6) * printed.i6.clone()
            && ic.i10 == pow(10) * printed.i10.clone();
        let projective = weighted_pp_equal(&ic, &printed)?;
        Ok(verdict(exact && projective, format!("I_2i = alpha^2i I'_2i: {exact}; weighted-projective match: {projective}")))
    })
}

/// Projective orders of Frobenius mod 3 from the RM-split traces above 17 and 53.
pub fn frobenius_orders(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let c = fx.genus2(report, C_CURVE)?;
        let lambda = NumberFieldOrder::builtin("Zsqrt2")?.prime("3.1")?;
        let mut orders = BTreeSet::new();
        for q in [17, 53] {
            for p in c.order().split_prime(q)?.iter() {
                let e = c.euler_factor(p)?;
                for alpha in g2_rm_split(&e)?.elements() {
                    let a = reduce_element(alpha, &lambda);
                    let o = frobenius_projective_order(&lambda.field, &a, e.n, RepeatedRootConvention::default())?;
                    orders.insert(o.order);
                }
            }
        }
        let ok = [2, 4, 5].iter().all(|k| orders.contains(k));
        Ok(verdict(ok, format!("orders found: {orders:?}")))
    })
}

pub fn congruence_200(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let e = fx.elliptic(report, E_CURVE)?;
        let c = fx.genus2(report, C_CURVE)?;
        let r = check_congruence(&e, &c, 200, &[2, 7, 13])?;
        let failures: Vec<&str> = r.failures().iter().map(|f| f.key.as_str()).collect();
        Ok(verdict(failures.is_empty(), format!("{} good primes of norm <= 200, failures {failures:?}", r.checks.len())))
    })
}

/// Class count and the rank of the unit character matrix above {2, 11, 23, 29}.
pub fn unit_classes() -> Outcome {
    run(|| {
        let tables: Vec<LocalCharacterTable> =
            [2, 11, 23, 29].iter().map(|&q| tables_above(q)).collect::<Result<Vec<_>>>()?.concat();
        let rank = generator_independence_rank(&tables);
        let ok = CLASS_COUNT == 16807 && rank == RANK;
        Ok(verdict(ok, format!("{CLASS_COUNT} classes; rank {rank} over {} primes above {{2, 11, 23, 29}}", tables.len())))
    })
}

const SIEVE_PRIMES: [u64; 6] = [2, 11, 19, 23, 29, 41];

/// Planted solutions, monotonicity, and agreement of the two local routes.
pub fn sieve_soundness(seed: u64) -> Outcome {
    run(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut notes = Vec::new();
        // a + zeta b = eps (1 - zeta)^delta beta^7, scaled by m^7.
        let planted: [(i64, i64, DescentCase, [u8; RANK]); 4] = [
            (1, 0, DescentCase::Coprime13, [0; RANK]),
            (0, 1, DescentCase::Coprime13, [0; RANK]),
            (1, 1, DescentCase::Coprime13, [1, 0, 0, 0, 0]),
            (1, -1, DescentCase::Divisible13, [0; RANK]),
        ];
        let mut planted_ok = true;
        for (a0, b0, case, e) in planted {
            let m: i64 = loop {
                let m = rng.gen_range(1..200i64);
                if SIEVE_PRIMES.iter().all(|&q| m % q as i64 != 0) {
                    break m;
                }
            };
            let constraints = SIEVE_PRIMES
                .iter()
                .map(|&q| {
                    let r = |x: i64| (0..7).fold(x.rem_euclid(q as i64), |acc, _| acc * m % q as i64) as u64;
                    let mut pairs = vec![(r(a0), r(b0))];
                    pairs.push((rng.gen_range(0..q), rng.gen_range(1..q)));
                    SieveConstraint::new(q, ConstraintMode::Explicit(pairs))
                })
                .collect::<Result<Vec<_>>>()?;
            planted_ok &= sieve_case(case, &constraints)?.survivors.contains(class_index(&e));
        }
        notes.push(format!("planted classes survive: {planted_ok}"));

        let mut monotone = true;
        let mut agree = true;
        for &q in &SIEVE_PRIMES {
            let tables = tables_above(q)?;
            let all = SieveConstraint::new(q, ConstraintMode::Unconstrained)?.admissible_pairs()?;
            let some: Vec<(u64, u64)> = (0..4)
                .map(|_| (rng.gen_range(0..q), rng.gen_range(1..q)))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            for case in [DescentCase::Coprime13, DescentCase::Divisible13] {
                let full = local_survivors(case, &all, &tables);
                let part = local_survivors(case, &some, &tables);
                monotone &= part.is_subset(&full);
                agree &= full == local_survivors_exhaustive(case, &all, &tables);
                agree &= part == local_survivors_exhaustive(case, &some, &tables);
            }
        }
        let fewer = vec![SieveConstraint::new(2, ConstraintMode::ParityOdd)?];
        let mut more = fewer.clone();
        more.push(SieveConstraint::new(11, ConstraintMode::Explicit(vec![(1, 3), (2, 5)]))?);
        monotone &= sieve_case(DescentCase::Coprime13, &more)?
            .survivors
            .is_subset(&sieve_case(DescentCase::Coprime13, &fewer)?.survivors);
        notes.push(format!("monotone: {monotone}"));
        notes.push(format!("linear algebra = exhaustive on {SIEVE_PRIMES:?}: {agree}"));
        Ok(verdict(planted_ok && monotone && agree, notes.join("; ")))
    })
}

fn eisenstein_like_json(p: i64) -> String {
    let centered = |v: i64| {
        let r = v.rem_euclid(p);
        if 2 * r > p {
            r - p
        } else {
            r
        }
    };
    format!(
        r#"{{"label": "eis_{p}", "base_field": "Qsqrt13", "coeff_poly": [0, 1], "eigenvalues": {{"5.1": [{}], "11.1": [{}]}}, "provenance": "a_q = N + 1 mod {p}"}}"#,
        centered(26),
        centered(122)
    )
}

/// Self-packets survive; Eisenstein-like packets are only removed by an explicit skip.
pub fn elimination_soundness(fx: &Fixtures, report: &mut RunReport, seed: u64) -> Outcome {
    run(|| {
        let path = fx.path(LEGENDRE);
        report.hash_input(&path);
        let family = load_family(&path)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut self_ok = true;
        let mut tried = 0;
        while tried < 6 {
            let (a, b): (i64, i64) = (rng.gen_range(-30..30), rng.gen_range(-30..30));
            let bad = a * b * (a + b);
            if bad == 0 || gcd(a, b) != 1 || bad % 5 == 0 || bad % 11 == 0 {
                continue;
            }
            tried += 1;
            let e = family.specialize(&BigInt::from(a), &BigInt::from(b))?;
            let packet = packet_from_elliptic_curve(&e, &format!("self_{a}_{b}"), 121)?;
            for q_list in [&[5u64][..], &[11], &[5, 11]] {
                let p = [3u64, 7, 13, 29][rng.gen_range(0..4)];
                let r = eliminate(&[packet.clone()], &family, q_list, Some(&RefinedRequest { p, ..Default::default() }))?;
                self_ok &= r.packets[0].surviving == SurvivingSet::All && !r.refined[0].eliminated();
            }
        }
        let mut eis_ok = true;
        for p in [3i64, 7, 13] {
            let packet = parse_packets(&eisenstein_like_json(p))?;
            let plain = RefinedRequest { p: p as u64, ..Default::default() };
            eis_ok &= !eliminate(&packet, &family, &[5, 11], Some(&plain))?.refined[0].eliminated();
            let skip = RefinedRequest { p: p as u64, skip: vec![format!("{p}:1")], skip_ramified: false };
            eis_ok &= eliminate(&packet, &family, &[5, 11], Some(&skip))?.refined[0].eliminated();
        }
        Ok(verdict(self_ok && eis_ok, format!("self-packets survive: {self_ok}; Eisenstein-like need the skip: {eis_ok}")))
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn a5_over_q(fx: &Fixtures, report: &mut RunReport, rel: &str) -> Result<i64> {
    let e = fx.elliptic(report, rel)?;
    e.trace(&e.order().prime("5.1")?)
}

/// The f11 packet reduces to 6 at primes above 5, against a_5(26a1) = -3.
pub fn f11_contradiction(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let a5 = a5_over_q(fx, report, "curves/26a1.curve")?;
        let path = fx.path("packets/f11.json");
        report.hash_input(&path);
        let packet = load_packets(&path)?.remove(0);
        let p0 = packet.primes_above_in_qf(7)?.remove(0);
        let keys: Vec<String> = packet.base.split_prime(5)?.iter().map(|p| p.key()).collect();
        let target = p0.reduce_int(a5);
        let r = trace_contradiction_report(&packet, &p0, &keys, &target)?;
        Ok(verdict(
            a5 == -3 && r.contradiction,
            format!("a_5(26a1) = {a5}; observed {:?} at {}, contradiction: {}", r.observed, r.residue_prime, r.contradiction),
        ))
    })
}

/// Each S_d form's eigenvalues above 5 must differ from a_5(78a1) = 2 mod p0.
pub fn prop32_contradiction(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let a5 = a5_over_q(fx, report, "curves/78a1.curve")?;
        if a5 != 2 {
            return Ok((Verdict::Fail, format!("a_5(78a1) = {a5}, expected 2")));
        }
        let path = fx.path("packets/prop32_sd.json");
        if !path.exists() {
            let msg = format!("a_5(78a1) = 2 verified; S_d eigenvalues not supplied ({})", path.display());
            return Ok((Verdict::SkippedExternal, msg));
        }
        report.hash_input(&path);
        let mut all = true;
        let mut details = Vec::new();
        for packet in load_packets(&path)? {
            let keys: Vec<String> = packet.base.split_prime(5)?.iter().map(|p| p.key()).collect();
            for p0 in packet.primes_above_in_qf(7)? {
                let r = trace_contradiction_report(&packet, &p0, &keys, &p0.reduce_int(2))?;
                all &= r.contradiction;
                details.push(format!("{} at {}: {}", packet.label(), r.residue_prime, r.contradiction));
            }
        }
        Ok(verdict(all, details.join("; ")))
    })
}

/// The two descent sieves with the printed constraint sets; both must end empty.
pub fn paper_sieves(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let runs = [
            ("constraints/odd_2_11_19_23.json", DescentCase::Coprime13),
            ("constraints/odd_2_11_19_23.json", DescentCase::Divisible13),
            ("constraints/even_2_to_41.json", DescentCase::Coprime13),
        ];
        let mut details = Vec::new();
        let mut empty = true;
        for (rel, case) in runs {
            let path = fx.path(rel);
            report.hash_input(&path);
            let constraints = load_constraints(&path)?;
            let n = sieve_case(case, &constraints)?.survivors.count();
            empty &= n == 0;
            details.push(format!("{rel} {case:?}: {n} survivors"));
        }
        Ok(verdict(empty, details.join("; ")))
    })
}

/// The S_d forms against the Frey curve over the cubic field with q = 5.
pub fn paper_elimination(fx: &Fixtures, report: &mut RunReport) -> Outcome {
    run(|| {
        let fam_path = fx.path("families/frey_F_k13cubic.json");
        report.hash_input(&fam_path);
        let family: FreyFamily = load_family(&fam_path)?;
        if family.is_external() {
            return Ok((Verdict::SkippedExternal, format!("{} has no coefficient polynomials", family.label())));
        }
        let path = fx.path("packets/sd_forms.json");
        if !path.exists() {
            return Ok((Verdict::SkippedExternal, format!("S_d packets not supplied ({})", path.display())));
        }
        report.hash_input(&path);
        let packets = load_packets(&path)?;
        let r = eliminate(&packets, &family, &[5], Some(&RefinedRequest { p: 7, ..Default::default() }))?;
        let left: Vec<&str> = r.refined.iter().filter(|x| !x.eliminated()).map(|x| x.packet.as_str()).collect();
        Ok(verdict(left.is_empty(), format!("{} packets, not eliminated: {left:?}", packets.len())))
    })
}

/// Run one check and record it.
fn record(report: &mut RunReport, id: &str, f: impl FnOnce(&mut RunReport) -> Outcome) {
    let start = std::time::Instant::now();
    let (verdict, detail) = f(report);
    report.push(crate::report::CheckResult { id: id.into(), verdict, detail }, start.elapsed().as_millis());
}

/// Checks on the shipped curve fixtures.
pub fn invariants(fx: &Fixtures, report: &mut RunReport) {
    record(report, "1-euler-factors-at-3", |r| euler_at_three(fx, r));
    record(report, "2-valuations-at-2", |r| valuations_at_two(fx, r));
    record(report, "3-igusa-clebsch", |r| igusa_clebsch(fx, r));
    record(report, "4-frobenius-orders", |r| frobenius_orders(fx, r));
}

pub fn full(fx: &Fixtures, report: &mut RunReport, seed: u64) {
    invariants(fx, report);
    record(report, "5-congruence-norm-200", |r| congruence_200(fx, r));
    record(report, "6-unit-classes", |_| unit_classes());
    record(report, "7-sieve-soundness", |_| sieve_soundness(seed));
    record(report, "8-elimination-soundness", |r| elimination_soundness(fx, r, seed));
    record(report, "9a-f11-contradiction", |r| f11_contradiction(fx, r));
    record(report, "9b-prop32-contradiction", |r| prop32_contradiction(fx, r));
    record(report, "10a-descent-sieves", |r| paper_sieves(fx, r));
    record(report, "10b-sd-elimination", |r| paper_elimination(fx, r));
}
