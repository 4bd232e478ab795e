//! Quadratic discriminants, the group law `*` and factorization into prime
//! discriminants.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// A fundamental quadratic discriminant, or the unit `1` standing for the
/// trivial extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant(BigInt);

/// One of `-4, 8, -8`, `p` with `p = 1 mod 4`, or `-q` with `q = 3 mod 4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeDiscriminant {
    value: BigInt,
    prime: BigInt,
}

/// Canonical factorization: negative factors first, each sign block sorted
/// by absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDiscriminantFactorization {
    pub factors: Vec<PrimeDiscriminant>,
    /// Number of negative factors.
    pub r: usize,
    /// Total number of factors.
    pub t: usize,
}

pub fn is_fundamental(n: &BigInt) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    if n.is_one() {
        return Ok(true);
    }
    let four = BigInt::from(4);
    Ok(match n.mod_floor(&four).to_u8().unwrap() {
        1 => arith::is_squarefree(n),
        0 => {
            let m = n / &four;
            let r = m.mod_floor(&four).to_u8().unwrap();
            (r == 2 || r == 3) && arith::is_squarefree(&m)
        }
        _ => false,
    })
}

/// Discriminant of `Q(sqrt(a))`; perfect squares give the unit discriminant.
pub fn disc_of_sqrt(a: &BigInt) -> Result<Discriminant> {
    if a.is_zero() {
        return Err(Error::Zero);
    }
    let kernel = arith::squarefree_kernel(a);
    if kernel.is_one() {
        return Ok(Discriminant::one());
    }
    if kernel.mod_floor(&BigInt::from(4)).is_one() {
        Ok(Discriminant(kernel))
    } else {
        Ok(Discriminant(kernel * 4))
    }
}

/// `d1 * d2`: the discriminant of `Q(sqrt(d1 d2))`.
///
/// Computed on prime-discriminant factorizations: odd prime discriminants
/// shared by both factors cancel, and the two 2-parts combine among
/// `{1, -4, 8, -8}`. This never factors the product itself.
pub fn disc_mul(d1: &Discriminant, d2: &Discriminant) -> Discriminant {
    if d1.0.gcd(&d2.0).is_one() {
        return Discriminant(&d1.0 * &d2.0);
    }
    let f1 = factor_prime_discriminants(d1).expect("valid discriminant");
    let f2 = factor_prime_discriminants(d2).expect("valid discriminant");
    let two = BigInt::from(2);
    let two_part = |f: &PrimeDiscriminantFactorization| {
        f.factors
            .iter()
            .find(|p| p.prime == two)
            .map_or_else(BigInt::one, |p| p.value.clone())
    };
    let odd = |f: &PrimeDiscriminantFactorization| -> Vec<BigInt> {
        f.factors
            .iter()
            .filter(|p| p.prime != two)
            .map(|p| p.value.clone())
            .collect()
    };
    let (o1, o2) = (odd(&f1), odd(&f2));
    let mut value: BigInt = o1
        .iter()
        .filter(|v| !o2.contains(v))
        .chain(o2.iter().filter(|v| !o1.contains(v)))
        .product();
    let twos = disc_of_sqrt(&(two_part(&f1) * two_part(&f2))).expect("nonzero");
    value *= twos.0;
    Discriminant(value)
}

pub fn factor_prime_discriminants(d: &Discriminant) -> Result<PrimeDiscriminantFactorization> {
    if !is_fundamental(&d.0)? {
        return Err(Error::NotFundamental(d.0.clone()));
    }
    let mut factors = Vec::new();
    let mut odd_part = BigInt::one();
    for (p, _) in arith::factor_biguint(d.0.magnitude()) {
        let p = BigInt::from(p);
        if p == BigInt::from(2) {
            continue;
        }
        let star = if p.mod_floor(&BigInt::from(4)).is_one() {
            p.clone()
        } else {
            -p.clone()
        };
        odd_part *= &star;
        factors.push(PrimeDiscriminant {
            value: star,
            prime: p,
        });
    }
    let two_part = &d.0 / &odd_part;
    if !two_part.is_one() {
        let ok = [-4, 8, -8].iter().any(|&v| two_part == BigInt::from(v));
        if !ok {
            return Err(Error::InternalCheck(format!(
                "2-part {two_part} of {d} is not a prime discriminant"
            )));
        }
        factors.push(PrimeDiscriminant {
            value: two_part,
            prime: BigInt::from(2),
        });
    }
    factors.sort_by(|x, y| {
        (x.value.sign() != Sign::Minus)
            .cmp(&(y.value.sign() != Sign::Minus))
            .then_with(|| x.value.abs().cmp(&y.value.abs()))
    });
    let r = factors.iter().filter(|f| f.value.is_negative()).count();
    let t = factors.len();
    Ok(PrimeDiscriminantFactorization { factors, r, t })
}

impl Discriminant {
    pub fn new(value: BigInt) -> Result<Self> {
        if is_fundamental(&value)? {
            Ok(Discriminant(value))
        } else {
            Err(Error::NotFundamental(value))
        }
    }

    pub fn one() -> Self {
        Discriminant(BigInt::one())
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `|d|` as a machine integer, for moduli of characters.
    pub fn abs_u64(&self) -> Result<u64> {
        self.0
            .magnitude()
            .to_u64()
            .ok_or_else(|| Error::TooLarge(self.0.to_string()))
    }

    /// Rejects the unit discriminant, for operations that need a field.
    pub fn require_field(&self) -> Result<()> {
        if self.is_one() {
            Err(Error::UnitDiscriminant)
        } else {
            Ok(())
        }
    }
}

impl TryFrom<i64> for Discriminant {
    type Error = Error;
    fn try_from(v: i64) -> Result<Self> {
        Discriminant::new(BigInt::from(v))
    }
}

impl TryFrom<BigInt> for Discriminant {
    type Error = Error;
    fn try_from(v: BigInt) -> Result<Self> {
        Discriminant::new(v)
    }
}

impl FromStr for Discriminant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = BigInt::from_str(s).map_err(|_| Error::Parse(s.to_string()))?;
        Discriminant::new(v)
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<PrimeDiscriminant> for Discriminant {
    fn from(p: PrimeDiscriminant) -> Self {
        Discriminant(p.value)
    }
}

impl PrimeDiscriminant {
    pub fn new(value: BigInt) -> Result<Self> {
        let d = Discriminant::new(value.clone())?;
        let f = factor_prime_discriminants(&d)?;
        if f.t != 1 {
            return Err(Error::NotFundamental(value));
        }
        Ok(f.factors.into_iter().next().unwrap())
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    /// The single rational prime dividing this discriminant.
    pub fn prime(&self) -> &BigInt {
        &self.prime
    }

    pub fn to_discriminant(&self) -> Discriminant {
        Discriminant(self.value.clone())
    }
}

impl fmt::Display for PrimeDiscriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl PrimeDiscriminantFactorization {
    pub fn values(&self) -> Vec<BigInt> {
        self.factors.iter().map(|f| f.value.clone()).collect()
    }

    pub fn product(&self) -> BigInt {
        self.factors.iter().map(|f| &f.value).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::try_from(v).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn fundamental_examples() {
        assert!(is_fundamental(&big(840)).unwrap());
        assert!(is_fundamental(&big(1)).unwrap());
        assert!(!is_fundamental(&big(20)).unwrap());
        assert_eq!(disc_of_sqrt(&big(5)).unwrap(), d(5));
        assert!(!is_fundamental(&big(7)).unwrap());
        assert!(!is_fundamental(&big(-4 * 9)).unwrap());
        assert!(is_fundamental(&big(-4)).unwrap());
        assert!(is_fundamental(&big(-8)).unwrap());
        assert!(!is_fundamental(&big(16)).unwrap());
        assert_eq!(is_fundamental(&big(0)), Err(Error::Zero));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(disc_of_sqrt(&big(210)).unwrap(), d(840));
        assert_eq!(disc_of_sqrt(&big(-1)).unwrap(), d(-4));
        assert_eq!(disc_of_sqrt(&big(4)).unwrap(), d(1));
        assert_eq!(disc_of_sqrt(&big(-12)).unwrap(), d(-3));
        assert_eq!(disc_of_sqrt(&big(0)), Err(Error::Zero));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(disc_mul(&d(-8), &d(-4)), d(8));
        assert_eq!(disc_mul(&d(5), &d(5)), d(1));
        assert_eq!(disc_mul(&d(5), &d(-3)), d(-15));
    }

    #[test]
    fn mul_matches_sqrt_of_product() {
        let ds: Vec<i64> = (-200..200)
            .filter(|&v| v != 0 && is_fundamental(&big(v)).unwrap())
            .collect();
        for &a in &ds {
            for &b in &ds {
                let expect = disc_of_sqrt(&big(a * b)).unwrap();
                assert_eq!(disc_mul(&d(a), &d(b)), expect, "{a} * {b}");
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f = factor_prime_discriminants(&d(840)).unwrap();
        assert_eq!(f.values(), vec![big(-3), big(-7), big(5), big(8)]);
        assert_eq!((f.r, f.t), (2, 4));

        let f = factor_prime_discriminants(&d(13)).unwrap();
        assert_eq!(f.values(), vec![big(13)]);
        assert_eq!((f.r, f.t), (0, 1));

        let f = factor_prime_discriminants(&d(-15)).unwrap();
        assert_eq!(f.values(), vec![big(-3), big(5)]);
        assert_eq!((f.r, f.t), (1, 2));
        assert_eq!(f.product(), big(-15));

        let f = factor_prime_discriminants(&d(1)).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!((f.r, f.t), (0, 0));
    }

    #[test]
    fn factor_rejects_nonfundamental() {
        let bogus = Discriminant(big(20));
        assert_eq!(
            factor_prime_discriminants(&bogus),
            Err(Error::NotFundamental(big(20)))
        );
    }

    #[test]
    fn prime_discriminant_validation() {
        assert!(PrimeDiscriminant::new(big(-8)).is_ok());
        assert!(PrimeDiscriminant::new(big(13)).is_ok());
        assert_eq!(PrimeDiscriminant::new(big(-7)).unwrap().prime(), &big(7));
        assert!(PrimeDiscriminant::new(big(-15)).is_err());
        assert!(PrimeDiscriminant::new(big(1)).is_err());
        assert!(PrimeDiscriminant::new(big(-5)).is_err());
    }

    #[test]
    fn new_rejects() {
        assert!(Discriminant::try_from(32).is_err());
        assert!(Discriminant::try_from(12).is_ok());
        assert!(Discriminant::try_from(0).is_err());
        assert!("-84".parse::<Discriminant>().is_ok());
    }
}
