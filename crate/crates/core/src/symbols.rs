//! Jacobi and Kronecker symbols, the sign symbol at infinity, and the
//! splitting type of a rational prime in a quadratic field.

use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::discriminant::Discriminant;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolValue {
    MinusOne,
    Zero,
    One,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

impl SymbolValue {
    pub fn to_i8(self) -> i8 {
        match self {
            SymbolValue::MinusOne => -1,
            SymbolValue::Zero => 0,
            SymbolValue::One => 1,
        }
    }

    pub fn from_sign(negative: bool) -> Self {
        if negative {
            SymbolValue::MinusOne
        } else {
            SymbolValue::One
        }
    }

    pub fn is_unit(self) -> bool {
        self != SymbolValue::Zero
    }
}

impl Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        match (self, rhs) {
            (SymbolValue::Zero, _) | (_, SymbolValue::Zero) => SymbolValue::Zero,
            (a, b) => SymbolValue::from_sign(a != b),
        }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolValue::MinusOne => "-1",
            SymbolValue::Zero => "0",
            SymbolValue::One => "+1",
        })
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplittingType::Split => "split",
            SplittingType::Inert => "inert",
            SplittingType::Ramified => "ramified",
        })
    }
}

/// Jacobi symbol for odd `n > 0` and `0 <= a < n`, machine-word version.
pub(crate) fn jacobi_u64(mut a: u64, mut n: u64) -> SymbolValue {
    debug_assert!(n % 2 == 1 && a < n);
    let mut negate = false;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            negate = !negate;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            negate = !negate;
        }
        a %= n;
    }
    if n == 1 {
        SymbolValue::from_sign(negate)
    } else {
        SymbolValue::Zero
    }
}

fn jacobi_big(a: &BigInt, n: &BigInt) -> SymbolValue {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut negate = false;
    while !a.is_zero() {
        if let (Some(small_a), Some(small_n)) = (a.to_u64(), n.to_u64()) {
            let rest = jacobi_u64(small_a, small_n);
            return if negate {
                rest * SymbolValue::MinusOne
            } else {
                rest
            };
        }
        let tz = a.trailing_zeros().unwrap_or(0);
        a >>= tz;
        let n8 = (&n & BigInt::from(7)).to_u8().unwrap();
        if tz % 2 == 1 && matches!(n8, 3 | 5) {
            negate = !negate;
        }
        std::mem::swap(&mut a, &mut n);
        let a4 = (&a & BigInt::from(3)).to_u8().unwrap();
        let n4 = (&n & BigInt::from(3)).to_u8().unwrap();
        if a4 == 3 && n4 == 3 {
            negate = !negate;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        SymbolValue::from_sign(negate)
    } else {
        SymbolValue::Zero
    }
}

/// Jacobi symbol `(a/n)`, computed by binary reciprocity without factoring `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<SymbolValue> {
    if n.sign() != Sign::Plus || n.is_even() {
        return Err(Error::BadJacobiModulus(n.clone()));
    }
    Ok(jacobi_big(a, n))
}

/// Value of the Kronecker symbol `(d/2)`.
fn kronecker_at_two(d: &BigInt) -> SymbolValue {
    match d.mod_floor(&BigInt::from(8)).to_u8().unwrap() {
        1 | 7 => SymbolValue::One,
        3 | 5 => SymbolValue::MinusOne,
        _ => SymbolValue::Zero,
    }
}

/// Kronecker symbol `(d/n)`; negative `n` is treated as the ideal `(n)`, so
/// `(d/n) = (d/|n|)`.
pub fn kronecker(d: &Discriminant, n: &BigInt) -> Result<SymbolValue> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    Ok(kronecker_unchecked(d.value(), n))
}

pub(crate) fn kronecker_unchecked(d: &BigInt, n: &BigInt) -> SymbolValue {
    let n = n.abs();
    let tz = n.trailing_zeros().unwrap_or(0);
    let odd = &n >> tz;
    let two = if tz == 0 {
        SymbolValue::One
    } else {
        let k = kronecker_at_two(d);
        if tz.is_multiple_of(2) && k.is_unit() {
            SymbolValue::One
        } else {
            k
        }
    };
    two * jacobi_big(d, &odd)
}

/// Machine-word Kronecker symbol `(d/n)` for `n > 0`, used by sweeps.
pub(crate) fn kronecker_small(d: i64, n: u64) -> SymbolValue {
    debug_assert!(n > 0);
    let tz = n.trailing_zeros();
    let odd = n >> tz;
    let two = if tz == 0 {
        SymbolValue::One
    } else {
        let k = match d.rem_euclid(8) {
            1 | 7 => SymbolValue::One,
            3 | 5 => SymbolValue::MinusOne,
            _ => SymbolValue::Zero,
        };
        if tz.is_multiple_of(2) && k.is_unit() {
            SymbolValue::One
        } else {
            k
        }
    };
    let a = (d as i128).rem_euclid(odd as i128) as u64;
    two * jacobi_u64(a, odd)
}

/// The symbol at infinity: the sign of `n`.
pub fn kronecker_infinity(n: &BigInt) -> Result<SymbolValue> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    Ok(SymbolValue::from_sign(n.is_negative()))
}

pub fn splitting_type(d: &Discriminant, p: &BigInt) -> Result<SplittingType> {
    d.require_field()?;
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(match kronecker_unchecked(d.value(), p) {
        SymbolValue::One => SplittingType::Split,
        SymbolValue::Zero => SplittingType::Ramified,
        SymbolValue::MinusOne => SplittingType::Inert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn d(v: i64) -> Discriminant {
        Discriminant::try_from(v).unwrap()
    }

    fn is_qr_brute(a: i64, p: i64) -> bool {
        (0..p).any(|x| (x * x - a).rem_euclid(p) == 0)
    }

    #[test]
    fn jacobi_examples() {
        assert!(is_qr_brute(5, 11));
        assert_eq!(jacobi(&big(5), &big(11)).unwrap(), SymbolValue::One);
        for a in [-7, 0, 3, 100] {
            assert_eq!(jacobi(&big(a), &big(1)).unwrap(), SymbolValue::One);
        }
        assert_eq!(jacobi(&big(3), &big(9)).unwrap(), SymbolValue::Zero);
        assert!(jacobi(&big(3), &big(8)).is_err());
        assert!(jacobi(&big(3), &big(-3)).is_err());
        assert!(jacobi(&big(3), &big(0)).is_err());
    }

    #[test]
    fn jacobi_big_matches_small() {
        let n = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let a = BigInt::from(123_456_789u64) * BigInt::from(987_654_321u64) + 17;
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let expect = jacobi(&a, &p).unwrap() * jacobi(&a, &q).unwrap();
        assert_eq!(jacobi(&a, &n).unwrap(), expect);
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(&d(-4), &big(3)).unwrap(), SymbolValue::MinusOne);
        assert_eq!(kronecker(&d(8), &big(2)).unwrap(), SymbolValue::Zero);
        assert_eq!((840 % 11, 2 * 2), (4, 4));
        assert_eq!(kronecker(&d(840), &big(11)).unwrap(), SymbolValue::One);
        assert_eq!(kronecker(&d(840), &big(0)), Err(Error::Zero));
        assert_eq!(
            kronecker(&d(-4), &big(-3)).unwrap(),
            kronecker(&d(-4), &big(3)).unwrap()
        );
        assert_eq!(kronecker(&d(5), &big(4)).unwrap(), SymbolValue::One);
        assert_eq!(kronecker(&d(5), &big(2)).unwrap(), SymbolValue::MinusOne);
        assert_eq!(kronecker(&d(1), &big(6)).unwrap(), SymbolValue::One);
    }

    #[test]
    fn infinity_examples() {
        assert_eq!(kronecker_infinity(&big(5)).unwrap(), SymbolValue::One);
        assert_eq!(kronecker_infinity(&big(-5)).unwrap(), SymbolValue::MinusOne);
        assert_eq!(kronecker_infinity(&big(-1)).unwrap(), SymbolValue::MinusOne);
        assert!(kronecker_infinity(&big(0)).is_err());
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(
            splitting_type(&d(840), &big(2)).unwrap(),
            SplittingType::Ramified
        );
        assert_eq!(
            splitting_type(&d(840), &big(11)).unwrap(),
            SplittingType::Split
        );
        let squares_mod_13: Vec<i64> = {
            let mut s: Vec<i64> = (1..13).map(|x| x * x % 13).collect();
            s.sort();
            s.dedup();
            s
        };
        assert_eq!(squares_mod_13, vec![1, 3, 4, 9, 10, 12]);
        assert_eq!(840 % 13, 8);
        assert_eq!(
            splitting_type(&d(840), &big(13)).unwrap(),
            SplittingType::Inert
        );
        assert_eq!(splitting_type(&d(1), &big(3)), Err(Error::UnitDiscriminant));
        assert!(splitting_type(&d(5), &big(9)).is_err());
    }

    #[test]
    fn small_path_agrees() {
        for dv in [-84i64, -23, -4, 5, 8, 40, 840] {
            for n in 1..200u64 {
                assert_eq!(
                    kronecker_small(dv, n),
                    kronecker(&d(dv), &BigInt::from(n)).unwrap(),
                    "d={dv} n={n}"
                );
            }
        }
    }
}
