//! Command-line front end.
//!
//! Every subcommand prints a human-readable report, or with `--json` a
//! single JSON object per line with the keys `command`, `inputs`, `result`
//! and `status`. Exit codes: 0 success, 1 a verification sweep found a
//! counterexample (or an internal check fired), 2 invalid input.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::characters::{
    chars_equivalent, dirichlet_to_kronecker, field_conductor, is_field_modular,
    kronecker_to_dirichlet, unit_generators, QuadraticDirichletCharacter,
};
use crate::discriminant::{
    disc_mul, disc_of_sqrt, factor_prime_discriminants, is_fundamental, Discriminant,
};
use crate::error::Error;
use crate::forms::{
    compose, equivalent, fundamental_unit_norm, narrow_class_group, reduce, reduction_cycle,
    represented_value_coprime_to, BinaryQuadraticForm,
};
use crate::genus::{
    genus_character_vector, genus_field, number_of_genera, odd_class_number,
    quartic_splitting_count, quartic_splitting_factorizations, verify_principal_genus_for,
};
use crate::symbols::{kronecker, kronecker_infinity, splitting_type};
use crate::verify::{run_sweep, SweepKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

const DEFAULT_MAX_FACTOR_BITS: u64 = 30;
const DEFAULT_MAX_BOUND: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "genus",
    version,
    about = "Genus theory of quadratic fields: discriminants, Kronecker symbols, characters, class groups"
)]
struct Cli {
    /// Emit one JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Reject integer inputs longer than this many bits (trial division guard).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_FACTOR_BITS)]
    max_factor_bits: u64,

    /// Worker threads for verification sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct IntArg {
    #[arg(allow_negative_numbers = true)]
    n: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is n = 1 or a fundamental discriminant?
    IsFundamental(IntArg),
    /// Discriminant of Q(sqrt(a)).
    DiscOfSqrt(IntArg),
    /// Group law d1 * d2 on discriminants.
    DiscMul {
        #[arg(allow_negative_numbers = true)]
        d1: String,
        #[arg(allow_negative_numbers = true)]
        d2: String,
    },
    /// Factor a discriminant into prime discriminants.
    Factor(IntArg),
    /// Kronecker symbol (d/n); d = inf gives the sign symbol at infinity.
    Kronecker {
        #[arg(allow_negative_numbers = true)]
        d: String,
        #[arg(allow_negative_numbers = true)]
        n: String,
    },
    /// Splitting of the prime p in the field of discriminant d.
    Splitting {
        #[arg(allow_negative_numbers = true)]
        d: String,
        #[arg(allow_negative_numbers = true)]
        p: String,
    },
    /// All quadratic characters mod m with their values on 1..m.
    CharTable { m: u64 },
    /// Conductor of the character mod m with the given generator values.
    Conductor {
        m: u64,
        /// Comma-separated +1/-1 values on the canonical generators.
        #[arg(allow_hyphen_values = true, default_value = "")]
        values: String,
    },
    /// Whether two characters agree on integers coprime to both moduli.
    CharEquiv {
        m1: u64,
        #[arg(allow_hyphen_values = true)]
        values1: String,
        m2: u64,
        #[arg(allow_hyphen_values = true)]
        values2: String,
    },
    /// Discriminant of a primitive character, given by modulus and generator values.
    ToKronecker {
        m: u64,
        #[arg(allow_hyphen_values = true, default_value = "")]
        values: String,
    },
    /// Character mod |d| attached to the Kronecker symbol (d/.).
    ToDirichlet(IntArg),
    /// Conductor of the field of discriminant d; with N, whether it lies in Q(zeta_N).
    FieldConductor {
        #[arg(allow_negative_numbers = true)]
        d: String,
        n: Option<u64>,
    },
    /// Reduce a form given as a,b,c.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Proper equivalence of two forms a,b,c.
    Equivalent {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Composition of two forms a,b,c.
    Compose {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Smallest positive value of a form coprime to M.
    Represent {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_negative_numbers = true)]
        modulus: String,
    },
    /// Norm of the fundamental unit of Q(sqrt(d0)).
    UnitNorm { d0: String },
    /// Narrow class group Cl+(d).
    ClassGroup(IntArg),
    /// Strict and ordinary genus fields.
    GenusField(IntArg),
    /// Genus characters on every class of Cl+(d), with the principal genus check.
    GenusChars(IntArg),
    /// Does Q(sqrt(m)) have odd class number?
    OddClass(IntArg),
    /// Coprime factorizations d = d1 d2 with mutual complete splitting.
    QuarticSplittings(IntArg),
    /// Sweep a theorem over a range.
    Verify {
        /// pgt, dirichlet-lemma, theorem1 or redei.
        kind: String,
        #[arg(long)]
        bound: u64,
        /// Largest bound accepted without complaint.
        #[arg(long, default_value_t = DEFAULT_MAX_BOUND)]
        max_bound: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::IsFundamental(_) => "is-fundamental",
            Command::DiscOfSqrt(_) => "disc-of-sqrt",
            Command::DiscMul { .. } => "disc-mul",
            Command::Factor(_) => "factor",
            Command::Kronecker { .. } => "kronecker",
            Command::Splitting { .. } => "splitting",
            Command::CharTable { .. } => "char-table",
            Command::Conductor { .. } => "conductor",
            Command::CharEquiv { .. } => "char-equiv",
            Command::ToKronecker { .. } => "to-kronecker",
            Command::ToDirichlet(_) => "to-dirichlet",
            Command::FieldConductor { .. } => "field-conductor",
            Command::Reduce { .. } => "reduce",
            Command::Equivalent { .. } => "equivalent",
            Command::Compose { .. } => "compose",
            Command::Represent { .. } => "represent",
            Command::UnitNorm { .. } => "unit-norm",
            Command::ClassGroup(_) => "class-group",
            Command::GenusField(_) => "genus-field",
            Command::GenusChars(_) => "genus-chars",
            Command::OddClass(_) => "odd-class",
            Command::QuarticSplittings(_) => "quartic-splittings",
            Command::Verify { .. } => "verify",
        }
    }
}

/// What a subcommand hands back for printing.
struct Outcome {
    inputs: Value,
    result: Value,
    text: String,
    /// Set when a verification found a counterexample.
    check_failed: bool,
    /// Diagnostic line for stderr, kept out of the deterministic report.
    note: Option<String>,
}

impl Outcome {
    fn ok(inputs: Value, result: Value, text: String) -> Self {
        Self {
            inputs,
            result,
            text,
            check_failed: false,
            note: None,
        }
    }
}

fn big_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

fn bigs_json(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(big_json).collect())
}

fn form_json(f: &BinaryQuadraticForm) -> Value {
    json!([big_json(&f.a), big_json(&f.b), big_json(&f.c)])
}

struct Limits {
    max_bits: u64,
}

impl Limits {
    fn int(&self, s: &str) -> Result<BigInt, Error> {
        let v = BigInt::from_str(s.trim()).map_err(|_| Error::Parse(s.to_string()))?;
        if v.bits() > self.max_bits {
            return Err(Error::TooLarge(format!(
                "{v} ({} bits, limit {}; raise --max-factor-bits)",
                v.bits(),
                self.max_bits
            )));
        }
        Ok(v)
    }

    fn disc(&self, s: &str) -> Result<Discriminant, Error> {
        Discriminant::new(self.int(s)?)
    }

    fn field_disc(&self, s: &str) -> Result<Discriminant, Error> {
        let d = self.disc(s)?;
        d.require_field()?;
        Ok(d)
    }

    fn form(&self, s: &str) -> Result<BinaryQuadraticForm, Error> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(BinaryQuadraticForm::new(
            self.int(parts[0])?,
            self.int(parts[1])?,
            self.int(parts[2])?,
        ))
    }
}

fn parse_values(s: &str) -> Result<Vec<i64>, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|v| {
            let v = v.trim();
            v.trim_start_matches('+')
                .parse::<i64>()
                .map_err(|_| Error::Parse(v.to_string()))
        })
        .collect()
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn signed(v: i8) -> String {
    format!("{v:+}")
}

fn radicand_field(rs: &[BigInt]) -> String {
    if rs.is_empty() {
        return "Q".to_string();
    }
    let parts: Vec<String> = rs.iter().map(|r| format!("sqrt({r})")).collect();
    format!("Q({})", parts.join(", "))
}

fn character_json(chi: &QuadraticDirichletCharacter) -> Value {
    json!({
        "modulus": chi.modulus(),
        "generator_values": chi.generator_values(),
    })
}

/// Parses and runs `argv` (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let name = cli.command.name();
    let limits = Limits {
        max_bits: cli.max_factor_bits,
    };
    let outcome = match cli.jobs {
        0 => dispatch(&cli.command, &limits),
        jobs => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &limits)),
            Err(e) => Err(Error::InternalCheck(format!("thread pool: {e}"))),
        },
    };
    match outcome {
        Ok(o) => {
            if let Some(note) = &o.note {
                let _ = writeln!(err, "{note}");
            }
            let status = if o.check_failed {
                "internal-check-failed"
            } else {
                "ok"
            };
            if cli.json {
                let record = json!({
                    "command": name,
                    "inputs": o.inputs,
                    "result": o.result,
                    "status": status,
                });
                let _ = writeln!(out, "{record}");
            } else {
                let _ = write!(out, "{}", o.text);
            }
            if o.check_failed {
                EXIT_CHECK_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let (status, code) = if e.is_internal() {
                ("internal-check-failed", EXIT_CHECK_FAILED)
            } else {
                ("invalid-input", EXIT_INVALID)
            };
            if cli.json {
                let record = json!({
                    "command": name,
                    "inputs": Value::Null,
                    "result": {"error": e.to_string()},
                    "status": status,
                });
                let _ = writeln!(out, "{record}");
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            code
        }
    }
}

fn dispatch(cmd: &Command, lim: &Limits) -> Result<Outcome, Error> {
    match cmd {
        Command::IsFundamental(IntArg { n }) => {
            let v = lim.int(n)?;
            let ans = is_fundamental(&v)?;
            Ok(Outcome::ok(
                json!({"n": big_json(&v)}),
                json!(ans),
                format!(
                    "{v}: {}\n",
                    if ans {
                        "fundamental"
                    } else {
                        "not fundamental"
                    }
                ),
            ))
        }
        Command::DiscOfSqrt(IntArg { n }) => {
            let a = lim.int(n)?;
            let d = disc_of_sqrt(&a)?;
            Ok(Outcome::ok(
                json!({"a": big_json(&a)}),
                big_json(d.value()),
                format!("disc Q(sqrt({a})) = {d}\n"),
            ))
        }
        Command::DiscMul { d1, d2 } => {
            let (x, y) = (lim.disc(d1)?, lim.disc(d2)?);
            let z = disc_mul(&x, &y);
            Ok(Outcome::ok(
                json!({"d1": big_json(x.value()), "d2": big_json(y.value())}),
                big_json(z.value()),
                format!("{x} * {y} = {z}\n"),
            ))
        }
        Command::Factor(IntArg { n }) => {
            let v = lim.int(n)?;
            let d = Discriminant::new(v)?;
            let f = factor_prime_discriminants(&d)?;
            let text = if f.factors.is_empty() {
                format!("{d} = 1 (empty product)\nr={} t={}\n", f.r, f.t)
            } else {
                format!("{d} = {}\nr={} t={}\n", join(&f.values(), " · "), f.r, f.t)
            };
            Ok(Outcome::ok(
                json!({"d": big_json(d.value())}),
                json!({"factors": bigs_json(&f.values()), "r": f.r, "t": f.t}),
                text,
            ))
        }
        Command::Kronecker { d, n } => {
            let nv = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(n.clone()))?;
            if matches!(d.trim(), "inf" | "infinity") {
                let v = kronecker_infinity(&nv)?;
                return Ok(Outcome::ok(
                    json!({"d": "inf", "n": big_json(&nv)}),
                    json!(v.to_i8()),
                    format!("(inf/{nv}) = {v}\n"),
                ));
            }
            let dv = lim.disc(d)?;
            let v = kronecker(&dv, &nv)?;
            Ok(Outcome::ok(
                json!({"d": big_json(dv.value()), "n": big_json(&nv)}),
                json!(v.to_i8()),
                format!("({dv}/{nv}) = {v}\n"),
            ))
        }
        Command::Splitting { d, p } => {
            let dv = lim.disc(d)?;
            let pv = lim.int(p)?;
            let s = splitting_type(&dv, &pv)?;
            Ok(Outcome::ok(
                json!({"d": big_json(dv.value()), "p": big_json(&pv)}),
                json!(s.to_string()),
                format!("{pv} is {s} in the field of discriminant {dv}\n"),
            ))
        }
        Command::CharTable { m } => char_table(*m, lim),
        Command::Conductor { m, values } => {
            let chi = QuadraticDirichletCharacter::new(*m, &parse_values(values)?)?;
            let f = chi.conductor();
            let primitive = chi.is_primitive();
            Ok(Outcome::ok(
                character_json(&chi),
                json!({"conductor": f.0, "primitive": primitive}),
                format!(
                    "{chi}: conductor {f}, {}\n",
                    if primitive {
                        "primitive"
                    } else {
                        "imprimitive"
                    }
                ),
            ))
        }
        Command::CharEquiv {
            m1,
            values1,
            m2,
            values2,
        } => {
            let a = QuadraticDirichletCharacter::new(*m1, &parse_values(values1)?)?;
            let b = QuadraticDirichletCharacter::new(*m2, &parse_values(values2)?)?;
            let eq = chars_equivalent(&a, &b);
            Ok(Outcome::ok(
                json!({"chi1": character_json(&a), "chi2": character_json(&b)}),
                json!(eq),
                format!("{a} {} {b}\n", if eq { "~" } else { "!~" }),
            ))
        }
        Command::ToKronecker { m, values } => {
            let chi = QuadraticDirichletCharacter::new(*m, &parse_values(values)?)?;
            let d = dirichlet_to_kronecker(&chi)?;
            Ok(Outcome::ok(
                character_json(&chi),
                big_json(d.value()),
                format!("{chi} = ({d}/.)\n"),
            ))
        }
        Command::ToDirichlet(IntArg { n }) => {
            let d = lim.disc(n)?;
            let chi = kronecker_to_dirichlet(&d)?;
            let gens: Vec<u64> = chi.generators().iter().map(|g| g.residue).collect();
            Ok(Outcome::ok(
                json!({"d": big_json(d.value())}),
                json!({
                    "modulus": chi.modulus(),
                    "generators": gens,
                    "generator_values": chi.generator_values(),
                    "conductor": chi.conductor().0,
                    "primitive": chi.is_primitive(),
                }),
                format!(
                    "({d}/.) = character {chi}\ngenerators: {}\nconductor {}\n",
                    join(&gens, ", "),
                    chi.conductor()
                ),
            ))
        }
        Command::FieldConductor { d, n } => {
            let dv = lim.disc(d)?;
            let f = field_conductor(&dv)?;
            let modular = n.map(|n| is_field_modular(&dv, n));
            let mut text = format!("conductor of Q(sqrt({dv})) is {f}\n");
            if let (Some(n), Some(m)) = (n, modular) {
                text.push_str(&format!(
                    "{} Q(zeta_{n})\n",
                    if m {
                        "contained in"
                    } else {
                        "not contained in"
                    }
                ));
            }
            Ok(Outcome::ok(
                json!({"d": big_json(dv.value()), "n": n}),
                json!({"conductor": f.0, "modular": modular}),
                text,
            ))
        }
        Command::Reduce { form } => {
            let f = lim.form(form)?;
            let r = reduce(&f)?;
            let cycle = reduction_cycle(&r)?;
            let mut text = format!("{f} ~ {r}\n");
            if cycle.len() > 1 {
                text.push_str(&format!("cycle: {}\n", join(&cycle, " ")));
            }
            Ok(Outcome::ok(
                json!({"form": form_json(&f)}),
                json!({
                    "reduced": form_json(&r),
                    "cycle": cycle.iter().map(form_json).collect::<Vec<_>>(),
                }),
                text,
            ))
        }
        Command::Equivalent { f, g } => {
            let (f, g) = (lim.form(f)?, lim.form(g)?);
            let eq = equivalent(&f, &g)?;
            Ok(Outcome::ok(
                json!({"f": form_json(&f), "g": form_json(&g)}),
                json!(eq),
                format!("{f} {} {g}\n", if eq { "~" } else { "!~" }),
            ))
        }
        Command::Compose { f, g } => {
            let (f, g) = (lim.form(f)?, lim.form(g)?);
            let h = compose(&f, &g)?;
            Ok(Outcome::ok(
                json!({"f": form_json(&f), "g": form_json(&g)}),
                form_json(&h),
                format!("{f} * {g} ~ {h}\n"),
            ))
        }
        Command::Represent { form, modulus } => {
            let f = lim.form(form)?;
            let m = lim.int(modulus)?.abs();
            if m.is_zero() {
                return Err(Error::Zero);
            }
            let v = represented_value_coprime_to(&f, &m)?;
            Ok(Outcome::ok(
                json!({"form": form_json(&f), "modulus": big_json(&m)}),
                json!({"value": big_json(&v.value), "x": v.x, "y": v.y}),
                format!("{f} represents {} at ({}, {})\n", v.value, v.x, v.y),
            ))
        }
        Command::UnitNorm { d0 } => {
            let v = lim.int(d0)?;
            let norm = fundamental_unit_norm(&v)?;
            Ok(Outcome::ok(
                json!({"d0": big_json(&v)}),
                json!(norm),
                format!("norm of the fundamental unit of Q(sqrt({v})) is {norm:+}\n"),
            ))
        }
        Command::ClassGroup(IntArg { n }) => class_group(&lim.field_disc(n)?),
        Command::GenusField(IntArg { n }) => {
            let d = lim.field_disc(n)?;
            let g = genus_field(&d)?;
            let gens: Vec<BigInt> = g
                .strict_generators
                .iter()
                .map(|p| p.value().clone())
                .collect();
            let text = format!(
                "strict genus field: {}\n  prime discriminants: {}\n  r={} t={}\nordinary genus field: {}\n  radicands: {}\n",
                radicand_field(&g.strict_radicands()),
                join(&gens, ", "),
                g.r,
                g.t,
                radicand_field(&g.ordinary_radicands),
                join(&g.ordinary_radicands, ", "),
            );
            Ok(Outcome::ok(
                json!({"d": big_json(d.value())}),
                json!({
                    "strict_generators": bigs_json(&gens),
                    "strict_radicands": bigs_json(&g.strict_radicands()),
                    "ordinary_radicands": bigs_json(&g.ordinary_radicands),
                    "r": g.r,
                    "t": g.t,
                }),
                text,
            ))
        }
        Command::GenusChars(IntArg { n }) => genus_chars(&lim.field_disc(n)?),
        Command::OddClass(IntArg { n }) => {
            let m = lim.int(n)?;
            let odd = odd_class_number(&m)?;
            Ok(Outcome::ok(
                json!({"m": big_json(&m)}),
                json!(odd),
                format!(
                    "Q(sqrt({m})) has {} class number\n",
                    if odd { "odd" } else { "even" }
                ),
            ))
        }
        Command::QuarticSplittings(IntArg { n }) => {
            let d = lim.field_disc(n)?;
            let pairs = quartic_splitting_factorizations(&d)?;
            let count = quartic_splitting_count(&d)?;
            let mut text = String::new();
            if pairs.is_empty() {
                text.push_str(&format!("{d}: no nontrivial splitting factorization\n"));
            }
            for p in &pairs {
                text.push_str(&format!("{d} = {} · {}\n", p.d1, p.d2));
            }
            text.push_str(&format!("count including trivial: {count}\n"));
            Ok(Outcome::ok(
                json!({"d": big_json(d.value())}),
                json!({
                    "pairs": pairs
                        .iter()
                        .map(|p| json!([big_json(p.d1.value()), big_json(p.d2.value())]))
                        .collect::<Vec<_>>(),
                    "count_with_trivial": count,
                }),
                text,
            ))
        }
        Command::Verify {
            kind,
            bound,
            max_bound,
        } => {
            let kind = SweepKind::from_str(kind)?;
            if *bound == 0 {
                return Err(Error::Zero);
            }
            if bound > max_bound {
                return Err(Error::TooLarge(format!(
                    "bound {bound} (limit {max_bound}; raise --max-bound)"
                )));
            }
            let start = Instant::now();
            let report = run_sweep(kind, *bound)?;
            let elapsed = start.elapsed().as_secs_f64();
            let mut text = String::new();
            for f in &report.failures {
                text.push_str(&format!("FAIL {f}\n"));
            }
            let noun = match kind {
                SweepKind::Theorem1 => "radicands",
                SweepKind::DirichletLemma => "discriminants and characters",
                _ => "discriminants",
            };
            text.push_str(&format!(
                "verify {kind}: checked {} {noun}, {} failures\n",
                report.checked,
                report.failures.len()
            ));
            Ok(Outcome {
                inputs: json!({"kind": kind.name(), "bound": bound}),
                result: json!({
                    "checked": report.checked,
                    "failures": report.failures,
                }),
                text,
                check_failed: !report.passed(),
                note: Some(format!("elapsed: {elapsed:.3}s")),
            })
        }
    }
}

fn char_table(m: u64, lim: &Limits) -> Result<Outcome, Error> {
    if m == 0 {
        return Err(Error::Zero);
    }
    if m.ilog2() as u64 + 1 > lim.max_bits {
        return Err(Error::TooLarge(m.to_string()));
    }
    let gens: Vec<u64> = unit_generators(m).iter().map(|g| g.residue).collect();
    let mut text = format!(
        "quadratic characters mod {m}; generators: {}\n",
        if gens.is_empty() {
            "none".to_string()
        } else {
            join(&gens, ", ")
        }
    );
    text.push_str(&format!(
        "n: {}\n",
        (1..=m)
            .map(|n| format!("{n:>2}"))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    let mut rows = Vec::new();
    for chi in QuadraticDirichletCharacter::all_mod(m) {
        let values: Vec<i8> = (1..=m)
            .map(|n| chi.value_at_residue(n % m).to_i8())
            .collect();
        let f = chi.conductor();
        let d = dirichlet_to_kronecker(&chi.primitive_part())?;
        let label = if chi.is_principal() {
            "principal".to_string()
        } else {
            format!("chi_{d}")
        };
        text.push_str(&format!(
            "{label} [{}]: {}  conductor {f}{}\n",
            join(
                &chi.generator_values()
                    .iter()
                    .map(|&v| signed(v))
                    .collect::<Vec<_>>(),
                ","
            ),
            values
                .iter()
                .map(|&v| format!("{v:>2}"))
                .collect::<Vec<_>>()
                .join(" "),
            if chi.is_primitive() { " primitive" } else { "" }
        ));
        rows.push(json!({
            "label": label,
            "generator_values": chi.generator_values(),
            "values": values,
            "conductor": f.0,
            "primitive": chi.is_primitive(),
            "kronecker": big_json(d.value()),
        }));
    }
    Ok(Outcome::ok(
        json!({"m": m}),
        json!({"modulus": m, "generators": gens, "characters": rows}),
        text,
    ))
}

fn class_group(d: &Discriminant) -> Result<Outcome, Error> {
    let g = narrow_class_group(d)?;
    let h = g.order();
    let mut text = format!("Cl+({d}): order {h}, invariants {:?}\n", g.invariants());
    if !d.is_negative() {
        text.push_str(&format!(
            "class number in the usual sense: {}\n",
            g.ordinary_class_number()?
        ));
    }
    for (i, f) in g.representatives().iter().enumerate() {
        text.push_str(&format!(
            "  [{i}] {f}  order {}  inverse [{}]\n",
            g.element_order(i),
            g.inverse(i)
        ));
    }
    text.push_str("table:\n");
    for row in g.table() {
        text.push_str(&format!("  {}\n", join(row, " ")));
    }
    let ordinary = if d.is_negative() {
        h
    } else {
        g.ordinary_class_number()?
    };
    Ok(Outcome::ok(
        json!({"d": big_json(d.value())}),
        json!({
            "order": h,
            "ordinary_class_number": ordinary,
            "invariants": g.invariants(),
            "representatives": g.representatives().iter().map(form_json).collect::<Vec<_>>(),
            "orders": (0..h).map(|i| g.element_order(i)).collect::<Vec<_>>(),
            "table": g.table(),
        }),
        text,
    ))
}

fn genus_chars(d: &Discriminant) -> Result<Outcome, Error> {
    let g = narrow_class_group(d)?;
    let f = factor_prime_discriminants(d)?;
    let report = verify_principal_genus_for(&g)?;
    let genera = number_of_genera(d)?;
    let mut text = format!(
        "genus characters of Cl+({d}); D_j = {}\n",
        join(&f.values(), ", ")
    );
    let mut rows = Vec::new();
    for (i, rep) in g.representatives().iter().enumerate() {
        let v = genus_character_vector(&g, i)?;
        let norm = represented_value_coprime_to(rep, d.value())?;
        text.push_str(&format!(
            "  [{i}] {rep}  N={}  X = ({})\n",
            norm.value,
            join(
                &v.to_i8().iter().map(|&x| signed(x)).collect::<Vec<_>>(),
                ", "
            )
        ));
        rows.push(json!({
            "class": i,
            "form": form_json(rep),
            "norm": big_json(&norm.value),
            "values": v.to_i8(),
        }));
    }
    text.push_str(&format!(
        "h+={} t={} genera={genera} |image|={} kernel={:?} squares={:?}\n",
        report.class_number,
        report.t,
        report.image.len(),
        report.kernel,
        report.squares
    ));
    text.push_str(&format!(
        "principal genus theorem: {}\n",
        if report.passed() { "holds" } else { "FAILS" }
    ));
    Ok(Outcome {
        inputs: json!({"d": big_json(d.value())}),
        result: json!({
            "prime_discriminants": bigs_json(&f.values()),
            "classes": rows,
            "number_of_genera": genera,
            "image_size": report.image.len(),
            "kernel": report.kernel,
            "squares": report.squares,
            "homomorphism": report.homomorphism,
            "kernel_is_squares": report.kernel_is_squares,
            "image_is_product_kernel": report.image_is_product_kernel,
        }),
        text,
        check_failed: !report.passed(),
        note: None,
    })
}
