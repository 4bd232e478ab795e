//! Small integer helpers shared by the other modules: trial-division
//! factoring, squarefree kernels, primitive roots.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Prime factorization of `n > 0` by trial division, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let tz = n.trailing_zeros();
    if tz > 0 {
        out.push((2, tz));
        n >>= tz;
    }
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factorization of a positive big integer. Values above `u64::MAX`
/// fall back to big-integer trial division, which is only practical when
/// the cofactor left after small primes is itself small or prime-free below
/// its square root.
pub fn factor_biguint(n: &BigUint) -> Vec<(BigUint, u32)> {
    if let Some(small) = n.to_u64() {
        return factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
            if let Some(small) = n.to_u64() {
                out.extend(
                    factor_u64(small)
                        .into_iter()
                        .map(|(q, e)| (BigUint::from(q), e)),
                );
                return out;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 2;
    }
    true
}

pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => {
            let f = factor_biguint(n.magnitude());
            f.len() == 1 && f[0].1 == 1
        }
    }
}

/// Squarefree kernel of `a != 0`, keeping the sign: `a = kernel * s^2`.
pub fn squarefree_kernel(a: &BigInt) -> BigInt {
    let mut kernel = BigInt::one();
    for (p, e) in factor_biguint(a.magnitude()) {
        if e % 2 == 1 {
            kernel *= BigInt::from(p);
        }
    }
    if a.sign() == Sign::Minus {
        -kernel
    } else {
        kernel
    }
}

pub fn is_squarefree(a: &BigInt) -> bool {
    factor_biguint(a.magnitude()).iter().all(|&(_, e)| e == 1)
}

pub fn is_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

pub fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest primitive root modulo an odd prime `p`.
pub fn primitive_root_prime(p: u64) -> u64 {
    debug_assert!(p > 2);
    let order_factors: Vec<u64> = factor_u64(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| {
            order_factors
                .iter()
                .all(|&q| pow_mod_u64(g, (p - 1) / q, p) != 1)
        })
        .expect("every prime has a primitive root")
}

/// Smallest positive generator of the cyclic group (Z/p^e)^x for odd `p`.
pub fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let g = primitive_root_prime(p);
    if e == 1 {
        return g;
    }
    // g generates mod p^e (e >= 2) unless g^(p-1) = 1 mod p^2, in which case g + p does.
    let p2 = p * p;
    if pow_mod_u64(g, p - 1, p2) != 1 {
        g
    } else {
        g + p
    }
}

/// Chinese remaindering: the residue mod `m` that is `target` mod `q` and
/// `1` mod `m / q`, for coprime `q | m`.
pub fn crt_lift(target: u64, q: u64, m: u64) -> u64 {
    let rest = m / q;
    if rest == 1 {
        return target % q;
    }
    // x = 1 + rest * k, with 1 + rest * k = target (mod q)
    let inv = mod_inverse(rest % q, q).expect("coprime components");
    let k = ((target as i128 - 1).rem_euclid(q as i128) as u128 * inv as u128 % q as u128) as u64;
    ((1 + rest as u128 * k as u128) % m as u128) as u64
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `(u, v, w, g)` with `u*a + v*b + w*c = g = gcd(a, b, c) >= 0`.
pub fn ext_gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let (g1, x1, y1) = ext_gcd(a, b);
    let (g, x2, w) = ext_gcd(&g1, c);
    (&x1 * &x2, &y1 * &x2, w, g)
}

/// `(g, x, y)` with `x*a + y*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.sign() == Sign::Minus {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert_eq!(factor_u64(840), vec![(2, 3), (3, 1), (5, 1), (7, 1)]);
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(97), vec![(97, 1)]);
    }

    #[test]
    fn factor_big_matches_small() {
        let n = BigUint::from(2u64).pow(70) * BigUint::from(3u32);
        assert_eq!(
            factor_biguint(&n),
            vec![(BigUint::from(2u32), 70), (BigUint::from(3u32), 1)]
        );
    }

    #[test]
    fn kernel_keeps_sign() {
        assert_eq!(squarefree_kernel(&BigInt::from(-12)), BigInt::from(-3));
        assert_eq!(squarefree_kernel(&BigInt::from(840 * 840)), BigInt::from(1));
    }

    #[test]
    fn primitive_roots_generate() {
        for &(p, e) in &[(3u64, 1u32), (3, 2), (5, 3), (7, 2), (29, 2), (487, 2)] {
            let m = p.pow(e);
            let g = primitive_root_prime_power(p, e);
            let phi = m / p * (p - 1);
            let mut x = 1u64;
            let mut order = 0;
            loop {
                x = x * g % m;
                order += 1;
                if x == 1 {
                    break;
                }
            }
            assert_eq!(order, phi, "p={p} e={e} g={g}");
        }
    }

    #[test]
    fn crt_lift_components() {
        let x = crt_lift(2, 9, 72);
        assert_eq!(x % 9, 2);
        assert_eq!(x % 8, 1);
    }

    #[test]
    fn ext_gcd3_identity() {
        let (a, b, c) = (BigInt::from(-12), BigInt::from(18), BigInt::from(10));
        let (u, v, w, g) = ext_gcd3(&a, &b, &c);
        assert_eq!(g, BigInt::from(2));
        assert_eq!(u * a + v * b + w * c, g);
    }
}
