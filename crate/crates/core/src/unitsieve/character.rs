//! Seventh-power residue characters at primes of `Z[zeta_13]`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactarith::FfElem;
use crate::numberfield::{cyclotomic_unit_generators, reduce_element, NumberFieldOrder, OrderElement, PrimeIdealData};

/// The order of the characters.
pub const ELL: u64 = 7;

/// Number of cyclotomic unit generators `u_2..u_6`.
pub const RANK: usize = 5;

/// `chi_Q(x)` for a nonzero residue, or `Zero` when `Q` divides `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CharValue {
    Zero,
    Value(u8),
}

#[derive(Clone, Debug)]
pub struct LocalCharacterTable {
    pub prime: PrimeIdealData,
    /// `(N - 1) / 7`.
    pub exponent: BigUint,
    /// Primitive seventh root of unity `g^((N-1)/7)` for the least generator `g`.
    pub omega: FfElem,
    /// `omega^k` for `k = 0..7`.
    powers: Vec<FfElem>,
    /// `chi_Q(u_a)` for `a = 2..6`.
    pub units: [u8; RANK],
    /// `chi_Q(1 - zeta)`, `None` when `Q` lies above 13.
    pub one_minus_zeta: Option<u8>,
}

fn zeta13() -> std::sync::Arc<NumberFieldOrder> {
    NumberFieldOrder::builtin("Zzeta13").expect("built-in order")
}

/// `1 - zeta` in `Z[zeta_13]`.
pub fn one_minus_zeta() -> OrderElement {
    OrderElement::from_ints(&zeta13(), &[1, -1])
}

/// `a + zeta b` in `Z[zeta_13]`.
pub fn linear_element(a: i64, b: i64) -> OrderElement {
    OrderElement::from_ints(&zeta13(), &[a, b])
}

/// Character table at `Q`; requires `7 | N(Q) - 1`.
pub fn build_character(prime: &PrimeIdealData) -> Result<LocalCharacterTable> {
    let n = prime.norm();
    let (exponent, rem) = (&n - BigUint::one()).div_rem(&BigUint::from(ELL));
    if !rem.is_zero() {
        return Err(Error::NotDivisor { n: ELL, order: (&n - BigUint::one()).to_string() });
    }
    let f = &prime.field;
    let g = f.least_primitive_element();
    let omega = f.pow(&g, &exponent);
    let mut powers = vec![f.one()];
    for k in 1..ELL as usize {
        powers.push(f.mul(&powers[k - 1], &omega));
    }
    let mut table = LocalCharacterTable {
        prime: prime.clone(),
        exponent,
        omega,
        powers,
        units: [0; RANK],
        one_minus_zeta: None,
    };
    for (i, u) in cyclotomic_unit_generators().iter().enumerate() {
        match table.value(u) {
            CharValue::Value(k) => table.units[i] = k,
            CharValue::Zero => unreachable!("cyclotomic units are units"),
        }
    }
    table.one_minus_zeta = match table.value(&one_minus_zeta()) {
        CharValue::Value(k) => Some(k),
        CharValue::Zero => None,
    };
    Ok(table)
}

impl LocalCharacterTable {
    pub fn key(&self) -> String {
        self.prime.key()
    }

    /// Character of a residue.
    pub fn residue_value(&self, x: &FfElem) -> CharValue {
        let f = &self.prime.field;
        if f.is_zero(x) {
            return CharValue::Zero;
        }
        let y = f.pow(x, &self.exponent);
        let k = self.powers.iter().position(|w| *w == y).expect("x^((N-1)/7) is a seventh root of unity");
        CharValue::Value(k as u8)
    }

    /// `char_value`: the character of `x` after reduction at `Q`.
    pub fn value(&self, x: &OrderElement) -> CharValue {
        self.residue_value(&reduce_element(x, &self.prime))
    }

    /// Character of `a + zeta b` for residues `a, b` modulo `q`.
    pub fn pair_value(&self, a: u64, b: u64) -> CharValue {
        let f = &self.prime.field;
        let x = f.add(&f.from_u64(a), &f.mul(&f.from_u64(b), &self.prime.theta));
        self.residue_value(&x)
    }
}

/// Character tables at every prime of `Z[zeta_13]` above `q` with `7 | N - 1`;
/// primes where the character is trivial are left out.
pub fn tables_above(q: u64) -> Result<Vec<LocalCharacterTable>> {
    if q == 13 {
        return Err(Error::InvalidConstraint("13 is ramified in Z[zeta_13]".into()));
    }
    let primes = zeta13().split_prime(q)?;
    primes
        .iter()
        .filter(|p| (p.norm() - BigUint::one()) % BigUint::from(ELL) == BigUint::zero())
        .map(build_character)
        .collect()
}

/// Rank over `F_7` of the matrix `[chi_Q(u_a)]`.
pub fn generator_independence_rank(tables: &[LocalCharacterTable]) -> usize {
    let rows: Vec<Vec<u8>> = tables.iter().map(|t| t.units.to_vec()).collect();
    super::linalg::rank(rows, RANK)
}
