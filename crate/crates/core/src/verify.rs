//! Range sweeps that check the theorems of the other modules on every
//! discriminant (or squarefree radicand) up to a bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith;
use crate::characters::{
    chars_equivalent, dirichlet_to_kronecker, kronecker_to_dirichlet, QuadraticDirichletCharacter,
};
use crate::discriminant::{is_fundamental, Discriminant};
use crate::error::{Error, Result};
use crate::forms::narrow_class_group;
use crate::genus::{
    number_of_genera, odd_class_number, quartic_splitting_count, verify_principal_genus_for,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    /// Principal genus theorem and the exact sequence.
    Pgt,
    /// Both round trips between Kronecker and primitive characters.
    DirichletLemma,
    /// Odd class number classification against computed class numbers.
    Theorem1,
    /// Coprime splitting factorizations against 4-torsion of `Cl+`.
    Redei,
}

impl SweepKind {
    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Pgt => "pgt",
            SweepKind::DirichletLemma => "dirichlet-lemma",
            SweepKind::Theorem1 => "theorem1",
            SweepKind::Redei => "redei",
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pgt" => Ok(SweepKind::Pgt),
            "dirichlet-lemma" => Ok(SweepKind::DirichletLemma),
            "theorem1" => Ok(SweepKind::Theorem1),
            "redei" => Ok(SweepKind::Redei),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub bound: u64,
    pub checked: usize,
    /// One line per failing item, in ascending order of the item.
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Fundamental discriminants `d != 1` with `|d| <= bound`, by `|d|` and then
/// negative before positive.
pub fn fundamental_discriminants_up_to(bound: u64) -> Vec<Discriminant> {
    let mut out = Vec::new();
    for n in 3..=bound as i64 {
        for v in [-n, n] {
            let big = BigInt::from(v);
            if is_fundamental(&big).unwrap_or(false) {
                out.push(Discriminant::new(big).expect("checked fundamental"));
            }
        }
    }
    out
}

/// Squarefree `m` with `1 < |m| <= bound`, by `|m|`, negative first;
/// includes `m = -1`.
pub fn squarefree_radicands_up_to(bound: u64) -> Vec<i64> {
    let mut out = Vec::new();
    if bound >= 1 {
        out.push(-1);
    }
    for n in 2..=bound as i64 {
        if arith::is_squarefree(&BigInt::from(n)) {
            out.push(-n);
            out.push(n);
        }
    }
    out
}

/// Every primitive quadratic character of conductor at most `bound`.
pub fn primitive_characters_up_to(bound: u64) -> Vec<QuadraticDirichletCharacter> {
    (1..=bound)
        .flat_map(|m| {
            QuadraticDirichletCharacter::all_mod(m)
                .into_iter()
                .filter(|c| c.is_primitive())
        })
        .collect()
}

fn check_pgt(d: &Discriminant) -> Result<Option<String>> {
    let group = narrow_class_group(d)?;
    let report = verify_principal_genus_for(&group)?;
    let genera = number_of_genera(d)?;
    if report.passed() && report.image.len() as u64 == genera {
        return Ok(None);
    }
    Ok(Some(format!(
        "d={d}: h+={} t={} homomorphism={} kernel_is_squares={} image_size={} image_is_product_kernel={} genera={genera}",
        report.class_number,
        report.t,
        report.homomorphism,
        report.kernel_is_squares,
        report.image_size,
        report.image_is_product_kernel,
    )))
}

fn check_round_trip_discriminant(d: &Discriminant) -> Result<Option<String>> {
    let chi = kronecker_to_dirichlet(d)?;
    let back = dirichlet_to_kronecker(&chi)?;
    if &back != d {
        return Ok(Some(format!("d={d}: round trip gave {back}")));
    }
    if chi.conductor().0 != d.abs_u64()? {
        return Ok(Some(format!("d={d}: conductor {} != |d|", chi.conductor())));
    }
    Ok(None)
}

fn check_round_trip_character(chi: &QuadraticDirichletCharacter) -> Result<Option<String>> {
    let d = dirichlet_to_kronecker(chi)?;
    let back = kronecker_to_dirichlet(&d)?;
    if !chars_equivalent(chi, &back) {
        return Ok(Some(format!("chi={chi}: went to {d}, came back as {back}")));
    }
    Ok(None)
}

fn check_theorem1(m: i64) -> Result<Option<String>> {
    let m_big = BigInt::from(m);
    let predicted = odd_class_number(&m_big)?;
    let d = crate::discriminant::disc_of_sqrt(&m_big)?;
    let group = narrow_class_group(&d)?;
    let h = group.ordinary_class_number()?;
    if predicted == (h % 2 == 1) {
        Ok(None)
    } else {
        Ok(Some(format!(
            "m={m}: classifier says odd={predicted}, computed h={h} (h+={})",
            group.order()
        )))
    }
}

fn check_redei(d: &Discriminant) -> Result<Option<String>> {
    let group = narrow_class_group(d)?;
    let count = quartic_splitting_count(d)?;
    let nonempty = count > 1;
    let four = group.has_element_of_order_4();
    let expected = 1usize << group.four_rank();
    if nonempty == four && count == expected {
        Ok(None)
    } else {
        Ok(Some(format!(
            "d={d}: splittings (with trivial)={count}, Cl+ invariants={:?}",
            group.invariants()
        )))
    }
}

fn collect<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<Vec<String>> {
    let results: Vec<Result<Option<String>>> = items.par_iter().map(&check).collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(failures)
}

/// Runs a sweep on the current rayon pool. Output does not depend on the
/// number of threads.
pub fn run_sweep(kind: SweepKind, bound: u64) -> Result<SweepReport> {
    if bound == 0 {
        return Err(Error::Zero);
    }
    let (checked, failures) = match kind {
        SweepKind::Pgt => {
            let ds = fundamental_discriminants_up_to(bound);
            (ds.len(), collect(&ds, check_pgt)?)
        }
        SweepKind::DirichletLemma => {
            let ds = fundamental_discriminants_up_to(bound);
            let chars = primitive_characters_up_to(bound);
            let mut failures = collect(&ds, check_round_trip_discriminant)?;
            failures.extend(collect(&chars, check_round_trip_character)?);
            (ds.len() + chars.len(), failures)
        }
        SweepKind::Theorem1 => {
            let ms = squarefree_radicands_up_to(bound);
            (ms.len(), collect(&ms, |&m| check_theorem1(m))?)
        }
        SweepKind::Redei => {
            let ds = fundamental_discriminants_up_to(bound);
            (ds.len(), collect(&ds, check_redei)?)
        }
    };
    Ok(SweepReport {
        kind,
        bound,
        checked,
        failures,
    })
}
