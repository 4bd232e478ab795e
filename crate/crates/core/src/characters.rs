//! Quadratic Dirichlet characters.
//!
//! A character modulo `m` is stored as its signs on a canonical generating
//! set of `(Z/m)^x`. Only generators of even order carry a sign, since a
//! quadratic character is trivial on everything of odd order:
//!
//! * `2^2 | m` exactly: `-1`;
//! * `2^e | m`, `e >= 3`: `-1` and `5`;
//! * each odd prime power `p^e || m`: the least primitive root mod `p^e`.
//!
//! Generators are lifted to residues mod `m` that are `1` at every other
//! prime-power component, and ordered with the 2-part first, then odd
//! primes ascending.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith;
use crate::discriminant::Discriminant;
use crate::error::{Error, Result};
use crate::symbols::{jacobi_u64, kronecker_small, SymbolValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conductor(pub u64);

impl fmt::Display for Conductor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `-1` in the 2-part, order 2.
    MinusOne,
    /// `5` in the 2-part, order `2^(e-2)`.
    Five,
    /// A primitive root for an odd prime power.
    PrimitiveRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub prime: u64,
    pub exponent: u32,
    /// Residue mod the full modulus; `1` at every other component.
    pub residue: u64,
}

impl Generator {
    /// Sign of the unique quadratic character of this component that is
    /// `-1` on the generator, evaluated at a unit residue `r`.
    fn local_sign(&self, r: u64) -> SymbolValue {
        let negative = match self.kind {
            GeneratorKind::MinusOne => r % 4 == 3,
            GeneratorKind::Five => matches!(r % 8, 3 | 5),
            GeneratorKind::PrimitiveRoot => {
                jacobi_u64(r % self.prime, self.prime) == SymbolValue::MinusOne
            }
        };
        SymbolValue::from_sign(negative)
    }
}

/// Canonical generators of even order for `(Z/m)^x`.
pub fn unit_generators(m: u64) -> Vec<Generator> {
    assert!(m > 0, "modulus must be positive");
    let mut out = Vec::new();
    for (p, e) in arith::factor_u64(m) {
        let q = p.pow(e);
        if p == 2 {
            if e >= 2 {
                out.push(Generator {
                    kind: GeneratorKind::MinusOne,
                    prime: 2,
                    exponent: e,
                    residue: arith::crt_lift(q - 1, q, m),
                });
            }
            if e >= 3 {
                out.push(Generator {
                    kind: GeneratorKind::Five,
                    prime: 2,
                    exponent: e,
                    residue: arith::crt_lift(5, q, m),
                });
            }
        } else {
            let g = arith::primitive_root_prime_power(p, e);
            out.push(Generator {
                kind: GeneratorKind::PrimitiveRoot,
                prime: p,
                exponent: e,
                residue: arith::crt_lift(g, q, m),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticDirichletCharacter {
    modulus: u64,
    generators: Vec<Generator>,
    /// `true` where the character is `-1` on the matching generator.
    negative: Vec<bool>,
}

impl QuadraticDirichletCharacter {
    /// Builds the character mod `modulus` with the given `+1`/`-1` values on
    /// the canonical generators, in order.
    pub fn new(modulus: u64, values: &[i64]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Zero);
        }
        let generators = unit_generators(modulus);
        if generators.len() != values.len() {
            return Err(Error::GeneratorCount {
                modulus,
                expected: generators.len(),
                got: values.len(),
            });
        }
        let negative = values
            .iter()
            .map(|&v| match v {
                1 => Ok(false),
                -1 => Ok(true),
                other => Err(Error::BadCharacterValue(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            modulus,
            generators,
            negative,
        })
    }

    pub fn principal(modulus: u64) -> Self {
        let generators = unit_generators(modulus);
        let negative = vec![false; generators.len()];
        Self {
            modulus,
            generators,
            negative,
        }
    }

    /// Every quadratic character mod `m`, principal first, then by the
    /// binary mask of negative generator values.
    pub fn all_mod(m: u64) -> Vec<Self> {
        let generators = unit_generators(m);
        let k = generators.len();
        (0u64..1 << k)
            .map(|mask| Self {
                modulus: m,
                generators: generators.clone(),
                negative: (0..k).map(|i| mask >> i & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Values on the canonical generators, as `+1`/`-1`.
    pub fn generator_values(&self) -> Vec<i8> {
        self.negative
            .iter()
            .map(|&n| if n { -1 } else { 1 })
            .collect()
    }

    pub fn is_principal(&self) -> bool {
        self.negative.iter().all(|&n| !n)
    }

    /// Value at a residue `0 <= r < modulus`.
    pub fn value_at_residue(&self, r: u64) -> SymbolValue {
        if arith::gcd_u64(r, self.modulus) != 1 {
            return SymbolValue::Zero;
        }
        self.generators
            .iter()
            .zip(&self.negative)
            .filter(|(_, &neg)| neg)
            .fold(SymbolValue::One, |acc, (g, _)| acc * g.local_sign(r))
    }

    pub fn value_i64(&self, n: i64) -> SymbolValue {
        let r = (n as i128).rem_euclid(self.modulus as i128) as u64;
        self.value_at_residue(r)
    }

    /// Value at `n`; negative `n` evaluates through its residue class.
    pub fn value(&self, n: &BigInt) -> SymbolValue {
        let r = n
            .mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue below a u64 modulus");
        self.value_at_residue(r)
    }

    pub fn conductor(&self) -> Conductor {
        let mut n = 1u64;
        let mut two_minus_one = false;
        let mut two_five = false;
        for (g, &neg) in self.generators.iter().zip(&self.negative) {
            if !neg {
                continue;
            }
            match g.kind {
                GeneratorKind::PrimitiveRoot => n *= g.prime,
                GeneratorKind::MinusOne => two_minus_one = true,
                GeneratorKind::Five => two_five = true,
            }
        }
        if two_five {
            n *= 8;
        } else if two_minus_one {
            n *= 4;
        }
        Conductor(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor().0 == self.modulus
    }

    /// The primitive character mod the conductor that induces this one.
    pub fn primitive_part(&self) -> Self {
        let f = self.conductor().0;
        let generators = unit_generators(f);
        let negative = generators
            .iter()
            .map(|g| self.value_at_residue(self.lift_from(g.residue, f)) == SymbolValue::MinusOne)
            .collect();
        Self {
            modulus: f,
            generators,
            negative,
        }
    }

    /// A unit mod `self.modulus` congruent to the unit `r` mod `f | modulus`.
    fn lift_from(&self, r: u64, f: u64) -> u64 {
        let mut x = r % f.max(1);
        if f == 1 {
            x = 1;
        }
        while arith::gcd_u64(x, self.modulus) != 1 {
            x += f;
        }
        x % self.modulus.max(1)
    }
}

impl fmt::Display for QuadraticDirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mod {} [", self.modulus)?;
        for (i, v) in self.generator_values().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v:+}")?;
        }
        f.write_str("]")
    }
}

pub fn char_value(chi: &QuadraticDirichletCharacter, n: &BigInt) -> SymbolValue {
    chi.value(n)
}

/// Agreement on all integers coprime to both moduli, checked over one
/// period of the least common multiple.
pub fn chars_equivalent(a: &QuadraticDirichletCharacter, b: &QuadraticDirichletCharacter) -> bool {
    let l = a.modulus.lcm(&b.modulus);
    (1..=l)
        .filter(|&n| arith::gcd_u64(n, a.modulus) == 1 && arith::gcd_u64(n, b.modulus) == 1)
        .all(|n| a.value_at_residue(n % a.modulus) == b.value_at_residue(n % b.modulus))
}

pub fn conductor(chi: &QuadraticDirichletCharacter) -> Conductor {
    chi.conductor()
}

pub fn is_primitive(chi: &QuadraticDirichletCharacter) -> bool {
    chi.is_primitive()
}

/// The character mod `|d|` that agrees with `(d/n)` on positive `n`.
pub fn kronecker_to_dirichlet(d: &Discriminant) -> Result<QuadraticDirichletCharacter> {
    let m = d.abs_u64()?;
    let dv = d
        .value()
        .to_i64()
        .ok_or_else(|| Error::TooLarge(d.to_string()))?;
    let generators = unit_generators(m);
    let mut negative = Vec::with_capacity(generators.len());
    for g in &generators {
        match kronecker_small(dv, g.residue) {
            SymbolValue::One => negative.push(false),
            SymbolValue::MinusOne => negative.push(true),
            SymbolValue::Zero => {
                return Err(Error::InternalCheck(format!(
                    "({d}/{}) vanished on a unit generator",
                    g.residue
                )))
            }
        }
    }
    Ok(QuadraticDirichletCharacter {
        modulus: m,
        generators,
        negative,
    })
}

/// The fundamental discriminant whose Kronecker character is the given
/// primitive character.
pub fn dirichlet_to_kronecker(chi: &QuadraticDirichletCharacter) -> Result<Discriminant> {
    let conductor = chi.conductor().0;
    if conductor != chi.modulus {
        return Err(Error::NotPrimitive {
            modulus: chi.modulus,
            conductor,
        });
    }
    let mut d: i64 = 1;
    let mut two = (false, false);
    for (g, &neg) in chi.generators.iter().zip(&chi.negative) {
        match g.kind {
            GeneratorKind::PrimitiveRoot => {
                let p = g.prime as i64;
                d *= if p % 4 == 1 { p } else { -p };
            }
            GeneratorKind::MinusOne => two.0 = neg,
            GeneratorKind::Five => two.1 = neg,
        }
    }
    d *= match two {
        (false, false) => 1,
        (true, false) => -4,
        (false, true) => 8,
        (true, true) => -8,
    };
    let disc = Discriminant::try_from(d)
        .map_err(|_| Error::InternalCheck(format!("assembled {d} is not fundamental")))?;
    for n in 1..=chi.modulus {
        let got = kronecker_small(d, n);
        if got != chi.value_at_residue(n % chi.modulus) {
            return Err(Error::InternalCheck(format!(
                "({d}/{n}) = {got} disagrees with {chi}"
            )));
        }
    }
    Ok(disc)
}

/// Conductor of the quadratic field of discriminant `d`, which is `|d|`.
pub fn field_conductor(d: &Discriminant) -> Result<Conductor> {
    d.require_field()?;
    Ok(Conductor(d.abs_u64()?))
}

/// Whether the field of discriminant `d` lies in the `n`-th cyclotomic field.
pub fn is_field_modular(d: &Discriminant, n: u64) -> bool {
    n > 0 && (BigInt::from(n) % d.value()) == BigInt::from(0)
}
