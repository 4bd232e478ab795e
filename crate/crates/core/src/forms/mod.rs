//! Binary quadratic forms `a x^2 + b xy + c y^2`, their reduction,
//! composition, and the narrow class group they realize.
//!
//! Positive definite forms reduce to the unique representative with
//! `|b| <= a <= c`. Indefinite forms reduce into a cycle under the
//! neighbouring-form step [`rho`]; two indefinite forms are properly
//! equivalent iff their reductions lie on the same cycle.

mod class_group;
mod unit;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

pub use class_group::{narrow_class_group, NarrowClassGroup};
pub use unit::fundamental_unit_norm;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// A positive value of a form together with the arguments producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentedValue {
    pub value: BigInt,
    pub x: i64,
    pub y: i64,
}

impl BinaryQuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    /// The form `(a, b, (b^2 - disc) / 4a)`; `a` must divide accordingly.
    pub fn from_a_b(a: BigInt, b: BigInt, disc: &BigInt) -> Self {
        let c = (&b * &b - disc) / (BigInt::from(4) * &a);
        Self { a, b, c }
    }

    /// The principal form of discriminant `disc`, representing 1.
    pub fn principal(disc: &BigInt) -> Self {
        let b = if disc.is_odd() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        Self::from_a_b(BigInt::one(), b, disc)
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        &self.a * &x * &x + &self.b * &x * &y + &self.c * &y * &y
    }

    /// `(a, -b, c)`, the inverse class.
    pub fn opposite(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.c.clone())
    }

    /// Applies `(x, y) -> (p x + q y, r x + s y)`; determinant 1 keeps the
    /// proper class.
    pub fn transform(&self, p: i64, q: i64, r: i64, s: i64) -> Self {
        let (p, q, r, s) = (
            BigInt::from(p),
            BigInt::from(q),
            BigInt::from(r),
            BigInt::from(s),
        );
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let na = a * &p * &p + b * &p * &r + c * &r * &r;
        let nb =
            BigInt::from(2) * a * &p * &q + b * (&p * &s + &q * &r) + BigInt::from(2) * c * &r * &s;
        let nc = a * &q * &q + b * &q * &s + c * &s * &s;
        Self::new(na, nb, nc)
    }

    pub fn is_reduced(&self) -> bool {
        let disc = self.discriminant();
        if disc.is_negative() {
            let (a, b, c) = (&self.a, &self.b, &self.c);
            a.is_positive()
                && b.abs() <= *a
                && a <= c
                && (!(b.abs() == *a || a == c) || !b.is_negative())
        } else {
            let s = arith::isqrt(&disc);
            is_reduced_indefinite(self, &s)
        }
    }

    fn validate(&self) -> Result<BigInt> {
        let disc = self.discriminant();
        if arith::is_square(&disc) {
            return Err(Error::SquareDiscriminant(disc));
        }
        if !self.is_primitive() {
            return Err(Error::ImprimitiveForm {
                a: self.a.clone(),
                b: self.b.clone(),
                c: self.c.clone(),
            });
        }
        if disc.is_negative() && !self.a.is_positive() {
            return Err(Error::NegativeDefiniteForm {
                a: self.a.clone(),
                b: self.b.clone(),
                c: self.c.clone(),
            });
        }
        Ok(disc)
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// `0 < b < sqrt(D)` and `sqrt(D) - b < 2|a| < sqrt(D) + b`, with
/// `s = floor(sqrt(D))` and `D` not a square.
fn is_reduced_indefinite(f: &BinaryQuadraticForm, s: &BigInt) -> bool {
    let two_a = BigInt::from(2) * f.a.abs();
    f.b.is_positive() && f.b <= *s && two_a > s - &f.b && two_a <= s + &f.b
}

/// The representative of `b` mod `2|a|` used by [`rho`]: in `(-|a|, |a|]`
/// when `|a| > sqrt(D)`, otherwise in `(sqrt(D) - 2|a|, sqrt(D))`.
fn normalize_b(b: &BigInt, a: &BigInt, s: &BigInt) -> BigInt {
    let abs_a = a.abs();
    let two_a = BigInt::from(2) * &abs_a;
    if abs_a > *s {
        let r = b.mod_floor(&two_a);
        if r > abs_a {
            r - two_a
        } else {
            r
        }
    } else {
        s - (s - b).mod_floor(&two_a)
    }
}

/// The neighbouring form `(c, b', a')` with `b' = -b mod 2c` normalized.
/// Properly equivalent to `f`; maps reduced forms to reduced forms.
pub fn rho(f: &BinaryQuadraticForm, disc: &BigInt, s: &BigInt) -> BinaryQuadraticForm {
    let b = normalize_b(&-&f.b, &f.c, s);
    BinaryQuadraticForm::from_a_b(f.c.clone(), b, disc)
}

fn reduce_definite(f: &BinaryQuadraticForm, disc: &BigInt) -> BinaryQuadraticForm {
    let mut f = f.clone();
    loop {
        let two_a = BigInt::from(2) * &f.a;
        let mut b = f.b.mod_floor(&two_a);
        if b > f.a {
            b -= &two_a;
        }
        f = BinaryQuadraticForm::from_a_b(f.a, b, disc);
        if f.a > f.c {
            f = BinaryQuadraticForm::new(f.c, -f.b, f.a);
        } else {
            break;
        }
    }
    if f.a == f.c && f.b.is_negative() {
        f.b = -f.b;
    }
    f
}

fn reduce_indefinite(f: &BinaryQuadraticForm, disc: &BigInt) -> BinaryQuadraticForm {
    let s = arith::isqrt(disc);
    // a != 0 because D is not a square.
    let b = normalize_b(&f.b, &f.a, &s);
    let mut f = BinaryQuadraticForm::from_a_b(f.a.clone(), b, disc);
    while !is_reduced_indefinite(&f, &s) {
        f = rho(&f, disc, &s);
    }
    f
}

/// A reduced form properly equivalent to `f`: the unique one when `f` is
/// definite, a member of its reduction cycle when indefinite.
pub fn reduce(f: &BinaryQuadraticForm) -> Result<BinaryQuadraticForm> {
    let disc = f.validate()?;
    Ok(reduce_unchecked(f, &disc))
}

pub(crate) fn reduce_unchecked(f: &BinaryQuadraticForm, disc: &BigInt) -> BinaryQuadraticForm {
    if disc.sign() == Sign::Minus {
        reduce_definite(f, disc)
    } else {
        reduce_indefinite(f, disc)
    }
}

/// The full cycle of reduced forms through a reduced indefinite form.
pub fn reduction_cycle(f: &BinaryQuadraticForm) -> Result<Vec<BinaryQuadraticForm>> {
    let disc = f.validate()?;
    if disc.is_negative() {
        return Ok(vec![reduce_definite(f, &disc)]);
    }
    let start = reduce_indefinite(f, &disc);
    Ok(cycle_from_reduced(&start, &disc))
}

pub(crate) fn cycle_from_reduced(
    start: &BinaryQuadraticForm,
    disc: &BigInt,
) -> Vec<BinaryQuadraticForm> {
    let s = arith::isqrt(disc);
    let mut cycle = vec![start.clone()];
    let mut g = rho(start, disc, &s);
    while g != *start {
        cycle.push(g.clone());
        g = rho(&g, disc, &s);
    }
    cycle
}

fn same_discriminant(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm) -> Result<BigInt> {
    let df = f.validate()?;
    let dg = g.validate()?;
    if df != dg {
        return Err(Error::DiscriminantMismatch(df, dg));
    }
    Ok(df)
}

/// Proper equivalence of two primitive forms of the same discriminant.
pub fn equivalent(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm) -> Result<bool> {
    let disc = same_discriminant(f, g)?;
    let rf = reduce_unchecked(f, &disc);
    let rg = reduce_unchecked(g, &disc);
    if disc.is_negative() {
        return Ok(rf == rg);
    }
    Ok(cycle_from_reduced(&rf, &disc).contains(&rg))
}

/// Dirichlet composition of two primitive forms, reduced.
pub fn compose(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm) -> Result<BinaryQuadraticForm> {
    let disc = same_discriminant(f, g)?;
    Ok(compose_unchecked(f, g, &disc))
}

pub(crate) fn compose_unchecked(
    f: &BinaryQuadraticForm,
    g: &BinaryQuadraticForm,
    disc: &BigInt,
) -> BinaryQuadraticForm {
    let two = BigInt::from(2);
    let s = (&f.b + &g.b) / &two;
    let (_u, v, w, e) = arith::ext_gcd3(&f.a, &g.a, &s);
    let a3 = &f.a * &g.a / (&e * &e);
    let b3 = &g.b + &two * (&g.a / &e) * (&v * (&s - &g.b) - &w * &g.c);
    let b3 = b3.mod_floor(&(&two * &a3).abs());
    let composed = BinaryQuadraticForm::from_a_b(a3, b3, disc);
    reduce_unchecked(&composed, disc)
}

type TieKey = (i64, i64, bool, bool);

/// Smallest positive value of `f` coprime to `modulus`, searching boxes
/// `max(|x|, |y|) = B` for `B = 1, 2, ...` and stopping at the first box
/// holding a candidate. Ties go to the least `(|y|, |x|, x < 0, y < 0)`, so
/// `(1, 0)` wins whenever the leading coefficient qualifies.
pub fn represented_value_coprime_to(
    f: &BinaryQuadraticForm,
    modulus: &BigInt,
) -> Result<RepresentedValue> {
    f.validate()?;
    let modulus = modulus.abs();
    for bound in 1i64.. {
        let mut best: Option<(BigInt, TieKey, i64, i64)> = None;
        for x in -bound..=bound {
            for y in -bound..=bound {
                if x.abs().max(y.abs()) != bound {
                    continue;
                }
                let v = f.eval(x, y);
                if !v.is_positive() || !v.gcd(&modulus).is_one() {
                    continue;
                }
                let key = (y.abs(), x.abs(), x < 0, y < 0);
                let better = match &best {
                    None => true,
                    Some((bv, bk, _, _)) => (&v, key) < (bv, *bk),
                };
                if better {
                    best = Some((v, key, x, y));
                }
            }
        }
        if let Some((value, _, x, y)) = best {
            return Ok(RepresentedValue { value, x, y });
        }
    }
    unreachable!("primitive forms represent values coprime to any modulus")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c)
    }

    /// Every reduced form of a negative discriminant, by brute force.
    fn reduced_definite_brute(disc: i64) -> Vec<BinaryQuadraticForm> {
        let mut out = Vec::new();
        for a in 1..=disc.abs() {
            for b in -a..=a {
                let num = b * b - disc;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                let f = form(a, b, c);
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
        }
        out
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduced_definite_brute(-7), vec![form(1, 1, 2)]);
        assert_eq!(form(2, 5, 4).discriminant(), BigInt::from(-7));
        assert_eq!(reduce(&form(2, 5, 4)).unwrap(), form(1, 1, 2));
        assert_eq!(reduce(&form(1, 1, 6)).unwrap(), form(1, 1, 6));

        let r = reduce(&form(1, 6, -1)).unwrap();
        let principal_cycle = [form(1, 6, -1), form(-1, 6, 1)];
        assert!(principal_cycle.contains(&r), "{r}");
    }

    #[test]
    fn cycles_of_forty() {
        let c1 = reduction_cycle(&form(1, 6, -1)).unwrap();
        assert_eq!(c1, vec![form(1, 6, -1), form(-1, 6, 1)]);
        let c2 = reduction_cycle(&form(2, 4, -3)).unwrap();
        assert_eq!(c2.len(), 6);
        assert!(c2.iter().all(|f| f.is_reduced()));
    }

    #[test]
    fn reduce_errors() {
        assert!(matches!(
            reduce(&form(2, 2, 2)),
            Err(Error::ImprimitiveForm { .. })
        ));
        assert!(matches!(
            reduce(&form(1, 2, 0)),
            Err(Error::SquareDiscriminant(_))
        ));
        assert!(matches!(
            reduce(&form(-1, 1, -2)),
            Err(Error::NegativeDefiniteForm { .. })
        ));
    }

    #[test]
    fn zero_leading_coefficient_means_square_discriminant() {
        assert!(matches!(
            reduce(&form(0, 5, 2)),
            Err(Error::SquareDiscriminant(_))
        ));
    }

    #[test]
    fn equivalence_examples() {
        assert!(!equivalent(&form(2, 1, 3), &form(2, -1, 3)).unwrap());
        assert!(equivalent(&form(2, 1, 3), &form(2, 1, 3)).unwrap());
        // Q(sqrt 10) has a unit of norm -1, so (1,6,-1) and (-1,6,1) share
        // the principal cycle.
        assert!(equivalent(&form(1, 6, -1), &form(-1, 6, 1)).unwrap());
        assert!(!equivalent(&form(1, 6, -1), &form(2, 4, -3)).unwrap());
        // Q(sqrt 3): unit norm +1, so x^2 - 3y^2 and -x^2 + 3y^2 are not
        // properly equivalent.
        assert!(!equivalent(&form(1, 2, -2), &form(-1, 2, 2)).unwrap());
        assert!(matches!(
            equivalent(&form(1, 1, 6), &form(1, 1, 2)),
            Err(Error::DiscriminantMismatch(..))
        ));
    }

    #[test]
    fn compose_examples() {
        let principal = form(1, 1, 6);
        let g = form(2, 1, 3);
        assert_eq!(compose(&principal, &g).unwrap(), g);
        assert_eq!(compose(&g, &form(2, -1, 3)).unwrap(), principal);
        assert_eq!(compose(&g, &g).unwrap(), form(2, -1, 3));
        assert!(matches!(
            compose(&principal, &form(1, 1, 2)),
            Err(Error::DiscriminantMismatch(..))
        ));
    }

    #[test]
    fn compose_indefinite_identity() {
        let p = form(1, 6, -1);
        let g = form(2, 4, -3);
        assert!(equivalent(&compose(&p, &g).unwrap(), &g).unwrap());
        assert!(equivalent(&compose(&g, &g.opposite()).unwrap(), &p).unwrap());
    }

    #[test]
    fn represented_value_examples() {
        let v = represented_value_coprime_to(&form(1, 0, 1), &BigInt::from(4)).unwrap();
        assert_eq!((v.value, v.x, v.y), (BigInt::from(1), 1, 0));
        let f = form(2, 2, 11);
        assert_eq!(f.discriminant(), BigInt::from(-84));
        let v = represented_value_coprime_to(&f, &BigInt::from(84)).unwrap();
        assert_eq!((v.value.clone(), v.x, v.y), (BigInt::from(11), 0, 1));
        assert_eq!(f.eval(0, 1), BigInt::from(11));
        let v = represented_value_coprime_to(&form(2, 1, 3), &BigInt::from(23)).unwrap();
        assert_eq!((v.value, v.x, v.y), (BigInt::from(2), 1, 0));
    }

    #[test]
    fn represented_value_positive_for_indefinite() {
        let v = represented_value_coprime_to(&form(-1, 6, 1), &BigInt::from(40)).unwrap();
        assert!(v.value.is_positive());
        assert_eq!(form(-1, 6, 1).eval(v.x, v.y), v.value);
    }

    #[test]
    fn transform_preserves_discriminant() {
        let f = form(2, 1, 3);
        let g = f.transform(2, 1, 1, 1);
        assert_eq!(g.discriminant(), f.discriminant());
        assert!(equivalent(&f, &g).unwrap());
    }
}
