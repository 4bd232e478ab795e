use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::arith;
use crate::error::{Error, Result};

/// Norm (`-1` or `+1`) of the fundamental unit of `Q(sqrt(d0))`, read off
/// the parity of the period of the continued fraction of `sqrt(d0)`.
///
/// For `d0 = 1 mod 4` this period describes `Z[sqrt(d0)]`, whose
/// fundamental unit is `eps` or `eps^3`; both have the same norm.
pub fn fundamental_unit_norm(d0: &BigInt) -> Result<i8> {
    if *d0 <= BigInt::one() {
        return Err(Error::NotSquarefree(d0.clone()));
    }
    if arith::is_square(d0) {
        return Err(Error::PerfectSquare(d0.clone()));
    }
    if !arith::is_squarefree(d0) {
        return Err(Error::NotSquarefree(d0.clone()));
    }
    let a0 = arith::isqrt(d0);
    let two_a0 = &a0 * 2;
    let (mut m, mut d, mut a) = (BigInt::from(0), BigInt::one(), a0.clone());
    let mut period = 0u64;
    while a != two_a0 {
        m = &d * &a - &m;
        d = (d0 - &m * &m) / &d;
        a = (&a0 + &m).div_floor(&d);
        period += 1;
    }
    Ok(if period % 2 == 1 { -1 } else { 1 })
}
