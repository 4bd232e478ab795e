use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{compose_unchecked, cycle_from_reduced, reduce_unchecked, BinaryQuadraticForm};
use crate::arith;
use crate::discriminant::Discriminant;
use crate::error::{Error, Result};

/// `Cl+(d)` as proper equivalence classes of primitive forms, with a full
/// multiplication table. Class `0` is the principal class.
#[derive(Clone, Debug)]
pub struct NarrowClassGroup {
    discriminant: Discriminant,
    representatives: Vec<BinaryQuadraticForm>,
    table: Vec<Vec<usize>>,
    lookup: HashMap<BinaryQuadraticForm, usize>,
    invariants: Vec<u64>,
}

/// Ordering of class representatives: `|a|` first, positive `a` before
/// negative, then `b`.
fn rep_key(f: &BinaryQuadraticForm) -> (BigInt, bool, BigInt) {
    (f.a.abs(), f.a.is_negative(), f.b.clone())
}

fn reduced_definite_forms(disc: &BigInt) -> Vec<BinaryQuadraticForm> {
    let disc = disc.to_i128().expect("discriminant fits in i128");
    let bound = arith::isqrt(&BigInt::from(-disc / 3))
        .to_i128()
        .expect("bound fits in i128");
    let parity = disc.rem_euclid(2);
    let mut out = Vec::new();
    for a in 1..=bound {
        let mut b = -a + 1;
        if b.rem_euclid(2) != parity {
            b += 1;
        }
        while b <= a {
            let num = b * b - disc;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c > a || (c == a && b >= 0) {
                    let f = BinaryQuadraticForm::new(a, b, c);
                    if f.is_primitive() {
                        out.push(f);
                    }
                }
            }
            b += 2;
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in arith::factor_u64(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

fn reduced_indefinite_forms(disc: &BigInt) -> Vec<BinaryQuadraticForm> {
    let s = arith::isqrt(disc)
        .to_i64()
        .expect("sqrt of discriminant fits in i64");
    let disc_odd = disc.is_odd();
    let mut out = Vec::new();
    for b in 1..=s {
        if (b % 2 != 0) != disc_odd {
            continue;
        }
        let n = ((disc - BigInt::from(b * b)) / BigInt::from(4))
            .to_u64()
            .expect("(D - b^2)/4 fits in u64");
        for a in divisors(n) {
            let two_a = 2 * a as i64;
            if two_a <= s - b || two_a > s + b {
                continue;
            }
            let c = (n / a) as i64;
            for (sa, sc) in [(a as i64, -c), (-(a as i64), c)] {
                let f = BinaryQuadraticForm::new(sa, b, sc);
                if f.is_primitive() {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Factors of a finite abelian group, `d_1 | d_2 | ...`, from element
/// orders alone.
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let h = orders.len() as u64;
    // Per prime: multiplicities of cyclic factors of each p-power, largest first.
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for (p, e) in arith::factor_u64(h) {
        let count_dividing =
            |k: u64| orders.iter().filter(|&&o| k.is_multiple_of(o)).count() as u64;
        // ranks[i] = number of cyclic factors of order >= p^(i+1)
        let mut ranks = Vec::new();
        let mut prev = 1u64;
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            let n = count_dividing(pk);
            let mut r = 0;
            let mut q = n / prev;
            while q > 1 {
                q /= p;
                r += 1;
            }
            if r == 0 {
                break;
            }
            ranks.push(r);
            prev = n;
        }
        let mut powers = Vec::new();
        for (i, &r) in ranks.iter().enumerate() {
            let next = ranks.get(i + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                powers.push(p.pow(i as u32 + 1));
            }
        }
        powers.sort_unstable_by(|x, y| y.cmp(x));
        per_prime.push(powers);
    }
    let k = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..k)
        .map(|i| per_prime.iter().filter_map(|ps| ps.get(i)).product())
        .collect();
    factors.reverse();
    factors
}

pub fn narrow_class_group(d: &Discriminant) -> Result<NarrowClassGroup> {
    d.require_field()?;
    let disc = d.value().clone();
    let mut lookup = HashMap::new();
    let mut representatives: Vec<BinaryQuadraticForm>;
    if disc.is_negative() {
        representatives = reduced_definite_forms(&disc);
        representatives.sort_by_key(rep_key);
    } else {
        let all = reduced_indefinite_forms(&disc);
        let mut cycles: Vec<Vec<BinaryQuadraticForm>> = Vec::new();
        let mut seen: HashMap<BinaryQuadraticForm, ()> = HashMap::new();
        for f in &all {
            if seen.contains_key(f) {
                continue;
            }
            let cycle = cycle_from_reduced(f, &disc);
            for g in &cycle {
                seen.insert(g.clone(), ());
            }
            cycles.push(cycle);
        }
        if seen.len() != all.len() {
            return Err(Error::InternalCheck(format!(
                "reduction cycles of {d} left the set of reduced forms"
            )));
        }
        cycles.sort_by_key(|c| c.iter().map(rep_key).min().unwrap());
        representatives = Vec::with_capacity(cycles.len());
        for (i, cycle) in cycles.iter().enumerate() {
            for g in cycle {
                lookup.insert(g.clone(), i);
            }
            representatives.push(cycle.iter().min_by_key(|f| rep_key(f)).unwrap().clone());
        }
    }
    if disc.is_negative() {
        for (i, f) in representatives.iter().enumerate() {
            lookup.insert(f.clone(), i);
        }
    }
    let principal = BinaryQuadraticForm::principal(&disc);
    if lookup.get(&reduce_unchecked(&principal, &disc)) != Some(&0) {
        return Err(Error::InternalCheck(format!(
            "principal form of {d} is not the first class"
        )));
    }

    let h = representatives.len();
    let mut table = vec![vec![0usize; h]; h];
    for i in 0..h {
        for j in 0..h {
            let prod = compose_unchecked(&representatives[i], &representatives[j], &disc);
            table[i][j] = *lookup.get(&prod).ok_or_else(|| {
                Error::InternalCheck(format!("composition {prod} is not a reduced form of {d}"))
            })?;
        }
    }
    let mut group = NarrowClassGroup {
        discriminant: d.clone(),
        representatives,
        table,
        lookup,
        invariants: Vec::new(),
    };
    let orders: Vec<u64> = (0..h).map(|i| group.element_order(i)).collect();
    group.invariants = invariant_factors(&orders);
    Ok(group)
}

impl NarrowClassGroup {
    pub fn discriminant(&self) -> &Discriminant {
        &self.discriminant
    }

    /// The narrow class number `h+`.
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn representatives(&self) -> &[BinaryQuadraticForm] {
        &self.representatives
    }

    pub fn representative(&self, class: usize) -> &BinaryQuadraticForm {
        &self.representatives[class]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.class_of(&self.representatives[x].opposite())
            .expect("opposite of a class representative is a valid form")
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Elementary divisors `d_1 | d_2 | ... | d_k` with product `h+`; empty
    /// for the trivial group.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn has_element_of_order_4(&self) -> bool {
        self.invariants.iter().any(|d| d % 4 == 0)
    }

    /// Number of cyclic factors of order divisible by 4.
    pub fn four_rank(&self) -> usize {
        self.invariants.iter().filter(|d| *d % 4 == 0).count()
    }

    /// Class number in the usual sense: `h+` for imaginary fields, and for
    /// real fields `h+` or `h+ / 2` as the fundamental unit has norm `-1`
    /// or `+1`.
    pub fn ordinary_class_number(&self) -> Result<usize> {
        if self.discriminant.is_negative() {
            return Ok(self.order());
        }
        let kernel = arith::squarefree_kernel(self.discriminant.value());
        Ok(match super::fundamental_unit_norm(&kernel)? {
            -1 => self.order(),
            _ => self.order() / 2,
        })
    }

    /// Classes that are squares, ascending.
    pub fn squares(&self) -> Vec<usize> {
        let mut sq: Vec<usize> = (0..self.order()).map(|x| self.mul(x, x)).collect();
        sq.sort_unstable();
        sq.dedup();
        sq
    }

    /// The class of an arbitrary primitive form of this discriminant.
    pub fn class_of(&self, f: &BinaryQuadraticForm) -> Result<usize> {
        let disc = f.validate()?;
        if &disc != self.discriminant.value() {
            return Err(Error::DiscriminantMismatch(
                self.discriminant.value().clone(),
                disc,
            ));
        }
        let r = reduce_unchecked(f, &disc);
        self.lookup.get(&r).copied().ok_or_else(|| {
            Error::InternalCheck(format!("reduced form {r} missing from the class list"))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::try_from(v).unwrap()
    }

    fn form(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c)
    }

    #[test]
    fn minus_23() {
        let g = narrow_class_group(&d(-23)).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.invariants(), &[3]);
        assert_eq!(
            g.representatives(),
            &[form(1, 1, 6), form(2, -1, 3), form(2, 1, 3)]
        );
    }

    #[test]
    fn minus_4_trivial() {
        let g = narrow_class_group(&d(-4)).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.representatives(), &[form(1, 0, 1)]);
        assert!(g.invariants().is_empty());
    }

    #[test]
    fn forty() {
        let g = narrow_class_group(&d(40)).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.invariants(), &[2]);
        assert_eq!(g.representative(0), &form(1, 6, -1));
        assert_eq!(g.class_of(&form(-1, 6, 1)).unwrap(), 0);
        assert_eq!(g.class_of(&form(2, 4, -3)).unwrap(), 1);
    }

    #[test]
    fn twelve_narrow_differs_from_wide() {
        // Q(sqrt 3): h = 1 but the unit has norm +1, so h+ = 2.
        let g = narrow_class_group(&d(12)).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.class_of(&form(-1, 2, 2)).unwrap(), 1);
    }

    #[test]
    fn minus_84_is_klein() {
        let g = narrow_class_group(&d(-84)).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.invariants(), &[2, 2]);
    }

    #[test]
    fn larger_structures() {
        // Cl(-56) = Z/4, Cl(-260) = Z/2 x Z/4, Cl(-420) = (Z/2)^3.
        assert_eq!(narrow_class_group(&d(-56)).unwrap().invariants(), &[4]);
        assert_eq!(narrow_class_group(&d(-260)).unwrap().invariants(), &[2, 4]);
        assert_eq!(
            narrow_class_group(&d(-420)).unwrap().invariants(),
            &[2, 2, 2]
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            narrow_class_group(&d(1)).unwrap_err(),
            Error::UnitDiscriminant
        );
        let g = narrow_class_group(&d(-23)).unwrap();
        assert!(matches!(
            g.class_of(&form(1, 1, 2)),
            Err(Error::DiscriminantMismatch(..))
        ));
    }

    #[test]
    fn invariant_factor_recovery() {
        // orders of Z/2 x Z/4
        let orders = [1, 2, 4, 4, 2, 2, 4, 4];
        assert_eq!(invariant_factors(&orders), vec![2, 4]);
        // Z/6 = Z/2 x Z/3
        assert_eq!(invariant_factors(&[1, 6, 3, 2, 3, 6]), vec![6]);
        assert_eq!(invariant_factors(&[1]), Vec::<u64>::new());
    }
}
