//! Genus-2 curves `y^2 = c6 x^6 + ... + c0`: point counts, Euler factors and
//! their splitting under real multiplication by `Z[sqrt 2]`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::count::count_sextic_model;
use super::igusa::{igusa_clebsch_sextic, IgusaClebsch};
use crate::error::{Error, Result};
use crate::exactarith::{FfPoly, FfPolyRing, FiniteField, Poly};
use crate::numberfield::{reduce_element, reduce_into, NumberFieldOrder, OrderElement, PrimeIdealData};
use crate::FieldElement;

#[derive(Clone, Debug)]
pub struct HyperellipticCurveNF {
    order: Arc<NumberFieldOrder>,
    /// `c0..c6`.
    c: [OrderElement; 7],
}

/// `1 - a1 T + a2 T^2 - N a1 T^3 + N^2 T^4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFactorG2 {
    pub n: u64,
    pub a1: i64,
    pub a2: i64,
}

impl EulerFactorG2 {
    /// `|a1| <= 4 sqrt N` and `|a1^2 - 2 a2| <= 4N`.
    pub fn satisfies_weil(&self) -> bool {
        let n = self.n as i128;
        let a1 = self.a1 as i128;
        let s2 = a1 * a1 - 2 * self.a2 as i128;
        a1 * a1 <= 16 * n && s2.abs() <= 4 * n
    }
}

impl HyperellipticCurveNF {
    pub fn new(order: &Arc<NumberFieldOrder>, c: [OrderElement; 7]) -> Result<Self> {
        let c = c.map(|x| x.in_order(order));
        let curve = HyperellipticCurveNF { order: order.clone(), c };
        if curve.sextic_discriminant().is_zero() {
            return Err(Error::SingularSextic);
        }
        Ok(curve)
    }

    pub fn from_ints(order: &Arc<NumberFieldOrder>, c: [&[i64]; 7]) -> Result<Self> {
        Self::new(order, c.map(|x| OrderElement::from_ints(order, x)))
    }

    pub fn order(&self) -> &Arc<NumberFieldOrder> {
        &self.order
    }

    pub fn coefficients(&self) -> &[OrderElement; 7] {
        &self.c
    }

    /// Discriminant of `f` as a polynomial of its actual degree.
    pub fn sextic_discriminant(&self) -> FieldElement {
        let f = Poly::new(self.c.iter().map(|x| x.to_rational()).collect::<Vec<FieldElement>>());
        match f.degree() {
            Some(d) if d >= 1 => f.discriminant(),
            _ => FieldElement::zero(),
        }
    }

    fn reduced(&self, p: &PrimeIdealData, ext: usize) -> Result<(Arc<FiniteField>, FfPoly)> {
        let (field, theta) = p.extended_field(ext)?;
        let ring = FfPolyRing::new(&field);
        let f = ring.trim(self.c.iter().map(|x| reduce_into(x, &field, &theta)).collect());
        Ok((field, f))
    }

    /// True when the reduction at `p` is a squarefree sextic or quintic.
    pub fn has_good_model_at(&self, p: &PrimeIdealData) -> bool {
        if p.q == 2 {
            return false;
        }
        let ring = FfPolyRing::new(&p.field);
        let f = ring.trim(self.c.iter().map(|x| reduce_element(x, p)).collect());
        let deg_ok = matches!(ring.degree(&f), Some(5) | Some(6));
        deg_ok && ring.degree(&ring.gcd(&f, &ring.derivative(&f))) == Some(0)
    }

    /// `#C(F_{N^ext})` on the smooth projective model.
    pub fn count_points(&self, p: &PrimeIdealData, ext: usize) -> Result<u64> {
        if p.q == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let (field, f) = self.reduced(p, ext)?;
        count_sextic_model(&field, &f).map_err(|e| match e {
            Error::SingularReduction(_) => Error::SingularReduction(p.key()),
            other => other,
        })
    }

    pub fn euler_factor(&self, p: &PrimeIdealData) -> Result<EulerFactorG2> {
        let n = p.norm_u64() as i64;
        let c1 = self.count_points(p, 1)? as i64;
        let c2 = self.count_points(p, 2)? as i64;
        let a1 = n + 1 - c1;
        let s2 = n * n + 1 - c2;
        let twice_a2 = a1 * a1 - s2;
        if twice_a2 % 2 != 0 {
            return Err(Error::EulerParity(p.key()));
        }
        let e = EulerFactorG2 { n: n as u64, a1, a2: twice_a2 / 2 };
        if !e.satisfies_weil() {
            return Err(Error::WeilBound { key: p.key(), value: format!("({a1}, {})", e.a2), norm: n as u64 });
        }
        Ok(e)
    }

    /// Igusa-Clebsch invariants of the curve, computed on `4f` so that they agree with
    /// the usual normalization for `y^2 = f(x)`. Errors on a singular sextic.
    pub fn igusa_clebsch(&self) -> Result<IgusaClebsch<FieldElement>> {
        let coeffs: Vec<FieldElement> =
            self.c.iter().map(|x| x.map(|c| BigRational::from_integer(c * BigInt::from(4)))).collect();
        let ic = igusa_clebsch_sextic(&coeffs.try_into().unwrap());
        if ic.i10.is_zero() {
            return Err(Error::SingularSextic);
        }
        Ok(ic)
    }
}

/// The unordered pair `{alpha, alpha-bar}` in `Z[sqrt 2]`, stored with the `+sqrt 2`
/// root first.
#[derive(Clone, Debug)]
pub struct RmSplit {
    pub plus: OrderElement,
    pub minus: OrderElement,
}

impl PartialEq for RmSplit {
    fn eq(&self, other: &Self) -> bool {
        (self.plus == other.plus && self.minus == other.minus) || (self.plus == other.minus && self.minus == other.plus)
    }
}

impl RmSplit {
    pub fn elements(&self) -> [&OrderElement; 2] {
        [&self.plus, &self.minus]
    }

    /// `(a1, a2)` back from the pair.
    pub fn euler_coefficients(&self, n: u64) -> (i64, i64) {
        let s = self.plus.clone() + self.minus.clone();
        let p = self.plus.clone() * self.minus.clone();
        let int = |x: &OrderElement| -> i64 {
            let c = x.coords();
            debug_assert!(c[1].is_zero());
            i64::try_from(&c[0]).unwrap()
        };
        (int(&s), int(&p) + 2 * n as i64)
    }

    /// Display as `a + b*sqrt2`.
    pub fn describe(&self) -> [String; 2] {
        [describe_sqrt2(&self.plus), describe_sqrt2(&self.minus)]
    }
}

pub fn describe_sqrt2(x: &OrderElement) -> String {
    let c = x.coords();
    let (a, b) = (&c[0], &c[1]);
    let coeff = |m: &BigInt| if m.is_one() { "sqrt2".to_string() } else { format!("{m}*sqrt2") };
    match (a.is_zero(), b.is_zero()) {
        (_, true) => format!("{a}"),
        (true, false) if b.sign() == num_bigint::Sign::Minus => format!("-{}", coeff(&-b)),
        (true, false) => coeff(b),
        (false, false) if b.sign() == num_bigint::Sign::Minus => format!("{a} - {}", coeff(&-b)),
        _ => format!("{a} + {}", coeff(b)),
    }
}

/// Roots of `X^2 - a1 X + (a2 - 2N)` in `Z[sqrt 2]`.
pub fn g2_rm_split(e: &EulerFactorG2) -> Result<RmSplit> {
    let err = || Error::NotRmSplit { a1: e.a1, a2: e.a2, n: e.n };
    let a1 = e.a1 as i128;
    let d = a1 * a1 - 4 * (e.a2 as i128 - 2 * e.n as i128);
    if d < 0 || d % 2 != 0 || a1 % 2 != 0 {
        return Err(err());
    }
    let s = (d / 2).sqrt();
    if s * s != d / 2 {
        return Err(err());
    }
    // a1 even and d = 2 s^2 with 4 | d force s even.
    let (half_a, half_s) = (a1 / 2, s / 2);
    let bound = 4.0 * e.n as f64;
    let real = (half_a.abs() as f64 + half_s as f64 * std::f64::consts::SQRT_2).powi(2);
    if real > bound * (1.0 + 1e-12) {
        return Err(err());
    }
    let z = NumberFieldOrder::builtin("Zsqrt2")?;
    let mk = |a: i128, b: i128| OrderElement::from_ints(&z, &[a as i64, b as i64]);
    Ok(RmSplit { plus: mk(half_a, half_s), minus: mk(half_a, -half_s) })
}

/// Reduction `Z[sqrt 2] -> F_7` modulo `p7 = (3 + sqrt 2)`, i.e. `sqrt 2 -> 4`.
pub fn rm_reduce_mod_p7(x: &OrderElement) -> u64 {
    let p7 = p7_prime();
    reduce_element(x, &p7).0[0]
}

/// The prime of `Z[sqrt 2]` above 7 containing `3 + sqrt 2`.
pub fn p7_prime() -> PrimeIdealData {
    let z = NumberFieldOrder::builtin("Zsqrt2").expect("built-in order");
    let gen = OrderElement::from_ints(&z, &[3, 1]);
    z.split_prime(7)
        .expect("7 splits in Z[sqrt 2]")
        .iter()
        .find(|p| p.field.is_zero(&reduce_element(&gen, p)))
        .cloned()
        .expect("3 + sqrt 2 lies in a prime above 7")
}
