//! Genus fields, genus characters, the principal genus theorem, the odd
//! class number classification and the coprime splitting criterion for
//! cyclic quartic extensions unramified at finite primes.

use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};

use crate::arith;
use crate::discriminant::{factor_prime_discriminants, Discriminant, PrimeDiscriminant};
use crate::error::{Error, Result};
use crate::forms::{narrow_class_group, represented_value_coprime_to, NarrowClassGroup};
use crate::symbols::{kronecker_unchecked, SymbolValue};

/// Genus fields as lists of radicands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusFieldDescription {
    /// `Q(sqrt(D_1), ..., sqrt(D_t))`, the strict genus field, in canonical
    /// factorization order.
    pub strict_generators: Vec<PrimeDiscriminant>,
    /// Squarefree radicands of the ordinary genus field, ascending.
    pub ordinary_radicands: Vec<BigInt>,
    pub r: usize,
    pub t: usize,
}

impl GenusFieldDescription {
    /// Squarefree radicands of the strict genus field, in generator order.
    pub fn strict_radicands(&self) -> Vec<BigInt> {
        self.strict_generators
            .iter()
            .map(|g| arith::squarefree_kernel(g.value()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenusCharacterVector(pub Vec<SymbolValue>);

impl GenusCharacterVector {
    pub fn product(&self) -> SymbolValue {
        self.0.iter().fold(SymbolValue::One, |acc, &v| acc * v)
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&v| v == SymbolValue::One)
    }

    pub fn to_i8(&self) -> Vec<i8> {
        self.0.iter().map(|v| v.to_i8()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticSplittingFactorization {
    pub d1: Discriminant,
    pub d2: Discriminant,
}

/// Outcome of checking the exact sequence
/// `1 -> Cl+^2 -> Cl+ -> mu_2^t -> mu_2 -> 1` for one discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalGenusReport {
    pub discriminant: Discriminant,
    pub class_number: usize,
    pub t: usize,
    /// Genus character vector of every class, by class index.
    pub vectors: Vec<GenusCharacterVector>,
    pub kernel: Vec<usize>,
    pub squares: Vec<usize>,
    pub image: Vec<GenusCharacterVector>,
    /// `X(xy) = X(x) X(y)` on all pairs.
    pub homomorphism: bool,
    /// `ker X = Cl+^2`.
    pub kernel_is_squares: bool,
    /// `|im X| = 2^(t-1)`.
    pub image_size: bool,
    /// `im X` is exactly the vectors with coordinate product `+1`.
    pub image_is_product_kernel: bool,
}

impl PrincipalGenusReport {
    pub fn passed(&self) -> bool {
        self.homomorphism
            && self.kernel_is_squares
            && self.image_size
            && self.image_is_product_kernel
    }
}

pub fn genus_field(d: &Discriminant) -> Result<GenusFieldDescription> {
    d.require_field()?;
    let f = factor_prime_discriminants(d)?;
    let kernels: Vec<BigInt> = f
        .factors
        .iter()
        .map(|g| arith::squarefree_kernel(g.value()))
        .collect();
    let mut ordinary: Vec<BigInt> = if d.is_negative() {
        kernels
    } else {
        // Negatives come first; pair the first with each other negative.
        let mut out: Vec<BigInt> = (1..f.r)
            .map(|j| arith::squarefree_kernel(&(f.factors[0].value() * f.factors[j].value())))
            .collect();
        out.extend(kernels[f.r..].iter().cloned());
        out
    };
    ordinary.sort();
    Ok(GenusFieldDescription {
        strict_generators: f.factors,
        ordinary_radicands: ordinary,
        r: f.r,
        t: f.t,
    })
}

/// Generators `D_1, ..., D_t` of the strict genus field.
pub fn genus_field_strict(d: &Discriminant) -> Result<Vec<PrimeDiscriminant>> {
    Ok(genus_field(d)?.strict_generators)
}

/// Squarefree radicands of the ordinary genus field, ascending.
pub fn genus_field_ordinary(d: &Discriminant) -> Result<Vec<BigInt>> {
    Ok(genus_field(d)?.ordinary_radicands)
}

pub fn number_of_genera(d: &Discriminant) -> Result<u64> {
    d.require_field()?;
    let t = factor_prime_discriminants(d)?.t;
    Ok(1u64 << (t - 1))
}

/// `chi_j(c) = (D_j / N a)` for the `j`-th prime discriminant (1-based),
/// with `N a` a positive value of the class representative coprime to the
/// discriminant.
pub fn genus_character(group: &NarrowClassGroup, j: usize, class: usize) -> Result<SymbolValue> {
    let f = factor_prime_discriminants(group.discriminant())?;
    if j == 0 || j > f.t {
        return Err(Error::IndexOutOfRange { index: j, len: f.t });
    }
    let norm = class_norm(group, class)?;
    checked_character(&f.factors[j - 1], &norm)
}

pub fn genus_character_vector(
    group: &NarrowClassGroup,
    class: usize,
) -> Result<GenusCharacterVector> {
    let f = factor_prime_discriminants(group.discriminant())?;
    let norm = class_norm(group, class)?;
    let values = f
        .factors
        .iter()
        .map(|dj| checked_character(dj, &norm))
        .collect::<Result<Vec<_>>>()?;
    let v = GenusCharacterVector(values);
    if v.product() != SymbolValue::One {
        return Err(Error::InternalCheck(format!(
            "genus characters of class {class} of {} multiply to -1",
            group.discriminant()
        )));
    }
    Ok(v)
}

fn class_norm(group: &NarrowClassGroup, class: usize) -> Result<BigInt> {
    if class >= group.order() {
        return Err(Error::IndexOutOfRange {
            index: class,
            len: group.order(),
        });
    }
    let rep = group.representative(class);
    Ok(represented_value_coprime_to(rep, group.discriminant().value())?.value)
}

fn checked_character(dj: &PrimeDiscriminant, norm: &BigInt) -> Result<SymbolValue> {
    match kronecker_unchecked(dj.value(), norm) {
        SymbolValue::Zero => Err(Error::InternalCheck(format!(
            "({dj}/{norm}) vanished for a norm coprime to the discriminant"
        ))),
        v => Ok(v),
    }
}

/// All vectors in `{+-1}^t` whose coordinates multiply to `+1`.
fn product_kernel(t: usize) -> BTreeSet<GenusCharacterVector> {
    (0u64..1 << t)
        .filter(|mask| mask.count_ones() % 2 == 0)
        .map(|mask| {
            GenusCharacterVector(
                (0..t)
                    .map(|i| SymbolValue::from_sign(mask >> i & 1 == 1))
                    .collect(),
            )
        })
        .collect()
}

pub fn verify_principal_genus(d: &Discriminant) -> Result<PrincipalGenusReport> {
    let group = narrow_class_group(d)?;
    verify_principal_genus_for(&group)
}

pub fn verify_principal_genus_for(group: &NarrowClassGroup) -> Result<PrincipalGenusReport> {
    let d = group.discriminant().clone();
    let t = factor_prime_discriminants(&d)?.t;
    let h = group.order();
    let vectors = (0..h)
        .map(|c| genus_character_vector(group, c))
        .collect::<Result<Vec<_>>>()?;

    let homomorphism = (0..h).all(|x| {
        (0..h).all(|y| {
            let lhs = &vectors[group.mul(x, y)];
            lhs.0
                .iter()
                .zip(vectors[x].0.iter().zip(&vectors[y].0))
                .all(|(&z, (&a, &b))| z == a * b)
        })
    });
    let kernel: Vec<usize> = (0..h).filter(|&c| vectors[c].is_trivial()).collect();
    let squares = group.squares();
    let image: BTreeSet<GenusCharacterVector> = vectors.iter().cloned().collect();
    let image_size = image.len() as u64 == 1u64 << (t - 1);
    let image_is_product_kernel = image == product_kernel(t);
    Ok(PrincipalGenusReport {
        discriminant: d,
        class_number: h,
        t,
        kernel_is_squares: kernel == squares,
        vectors,
        kernel,
        squares,
        image: image.into_iter().collect(),
        homomorphism,
        image_size,
        image_is_product_kernel,
    })
}

/// Whether `Q(sqrt(m))` has odd class number in the usual sense, by the
/// classification: `m = -1, -2, -q` (`q = 3 mod 4` prime), `m = p` prime, or
/// `m = pq` with `q = 3 mod 4` and `p = 2` or `p = 3 mod 4`.
pub fn odd_class_number(m: &BigInt) -> Result<bool> {
    if m.sign() == Sign::NoSign {
        return Err(Error::Zero);
    }
    if m.is_one() {
        return Err(Error::UnitDiscriminant);
    }
    if !arith::is_squarefree(m) {
        return Err(Error::NotSquarefree(m.clone()));
    }
    let primes: Vec<BigInt> = arith::factor_biguint(m.magnitude())
        .into_iter()
        .map(|(p, _)| BigInt::from(p))
        .collect();
    let is_three = |p: &BigInt| p % 4u32 == BigInt::from(3);
    let two = BigInt::from(2);
    Ok(if m.is_negative() {
        match primes.as_slice() {
            [] => true,
            [p] => *p == two || is_three(p),
            _ => false,
        }
    } else {
        match primes.as_slice() {
            [_] => true,
            [p, q] => (*p == two || is_three(p)) && is_three(q),
            _ => false,
        }
    })
}

fn sub_product(factors: &[PrimeDiscriminant], mask: u64) -> BigInt {
    factors
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, f)| f.value().clone())
        .product()
}

fn splits_completely(primes_of: &[&PrimeDiscriminant], other: &BigInt) -> bool {
    primes_of
        .iter()
        .all(|f| kronecker_unchecked(other, f.prime()) == SymbolValue::One)
}

/// Every unordered coprime factorization `d = d1 d2`, both nontrivial, such
/// that each prime dividing `d1` splits in `Q(sqrt(d2))` and vice versa.
/// Pairs are reported once, with `|d1| < |d2|`.
pub fn quartic_splitting_factorizations(
    d: &Discriminant,
) -> Result<Vec<QuarticSplittingFactorization>> {
    if d.is_one() {
        return Ok(Vec::new());
    }
    let f = factor_prime_discriminants(d)?;
    let full = (1u64 << f.t) - 1;
    let mut out = Vec::new();
    for mask in 1..full {
        let d1 = sub_product(&f.factors, mask);
        let d2 = sub_product(&f.factors, full ^ mask);
        if d1.abs() > d2.abs() {
            continue;
        }
        let in1: Vec<&PrimeDiscriminant> = f
            .factors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .collect();
        let in2: Vec<&PrimeDiscriminant> = f
            .factors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 0)
            .map(|(_, p)| p)
            .collect();
        if splits_completely(&in1, &d2) && splits_completely(&in2, &d1) {
            out.push(QuarticSplittingFactorization {
                d1: Discriminant::new(d1)?,
                d2: Discriminant::new(d2)?,
            });
        }
    }
    out.sort_by(|x, y| (x.d1.value().abs(), x.d1.value()).cmp(&(y.d1.value().abs(), y.d1.value())));
    Ok(out)
}

/// Number of splitting factorizations counting the trivial `{1, d}`.
pub fn quartic_splitting_count(d: &Discriminant) -> Result<usize> {
    Ok(quartic_splitting_factorizations(d)?.len() + 1)
}
