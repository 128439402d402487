//! Command-line front end: braid normal forms and equality, matrix/braid
//! conversion, derived-subgroup rewriting, torsion classification, and
//! automorphism analysis, plus a self-contained `verify` suite.
//!
//! Exit codes: 0 success, 1 domain error (input outside an operation's
//! domain, or `verify` failure), 2 parse/usage error.

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use artin::amalg;
use artin::autf2::{self, CommutatorVerdict, EndoF2};
use artin::braid3::{self, BraidWord, ConjCase};
use artin::intmat::{self, Mat2};
use artin::words::{FreeWord, Letter};

/// Longest accepted input word (letters, after expansion and reduction).
const MAX_WORD_LEN: usize = 150;
/// Largest accepted matrix entry magnitude.
const MAX_ENTRY: i128 = 1_000_000_000_000_000;
/// Largest accepted index for the derived-subgroup generator family.
const MAX_F_INDEX: i64 = 100_000;
/// Generator words longer than this are omitted from witnesses (their
/// length grows like a Fibonacci sequence in the index).
const MAX_WITNESS_INDEX: i64 = 16;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "artin",
    version,
    about = "Exact computations in the braid group on three strands, the modular group, \
             and the automorphism group of a rank-two free group"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for randomized verification suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size bound for verification sweeps (default 20)
    #[arg(long, global = true)]
    max_size: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a braid word (letters a, b, A, B; macros s, c; exponents like a^-3)
    #[command(name = "braid-nf")]
    BraidNf { word: String },
    /// Decide whether two braid words are the same element
    #[command(name = "braid-eq")]
    BraidEq { left: String, right: String },
    /// Conjugacy-minimal shape of a braid word
    #[command(name = "braid-conj")]
    BraidConj { word: String },
    /// Braid word mapping to a given determinant-one matrix
    #[command(name = "mat2braid")]
    Mat2Braid { matrix: String },
    /// Matrix image of a braid word
    #[command(name = "braid2mat")]
    Braid2Mat { word: String },
    /// n-th free generator of the derived subgroup, as a matrix
    #[command(name = "f")]
    F { n: i64 },
    /// Decide membership in the derived subgroup
    #[command(name = "derived")]
    Derived { matrix: String },
    /// Rewrite a derived-subgroup matrix as a word in the f generators
    #[command(name = "rewrite-f")]
    RewriteF { matrix: String },
    /// Torsion class of a determinant-one matrix
    #[command(name = "torsion-sl")]
    TorsionSl { matrix: String },
    /// Torsion class of a determinant ±1 matrix
    #[command(name = "torsion-gl")]
    TorsionGl { matrix: String },
    /// Test whether an endomorphism (u->WORD ; v->WORD) is an automorphism
    #[command(name = "aut-check")]
    AutCheck { endo: String },
    /// Decompose an automorphism into inner, braid, and swap parts
    #[command(name = "aut-decompose")]
    AutDecompose { endo: String },
    /// Order of an automorphism (1, 2, 3, 4, or infinite)
    #[command(name = "aut-order")]
    AutOrder { endo: String },
    /// Torsion class of a finite-order automorphism
    #[command(name = "aut-torsion")]
    AutTorsion { endo: String },
    /// Run the built-in identity suites and print a pass/fail table
    #[command(name = "verify")]
    Verify {
        #[arg(long = "self-test-mutate", hide = true)]
        self_test_mutate: bool,
    },
}

enum CliError {
    Parse(String),
    Domain(String),
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn domain_err(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn braid_input(text: &str) -> Result<BraidWord, CliError> {
    let w = braid3::parse_braid(text).map_err(parse_err)?;
    if w.word().len() > MAX_WORD_LEN {
        return Err(CliError::Parse(format!(
            "braid word has {} letters after expansion; limit is {MAX_WORD_LEN}",
            w.word().len()
        )));
    }
    Ok(w)
}

fn matrix_input(text: &str) -> Result<Mat2, CliError> {
    let m = intmat::parse_mat(text).map_err(parse_err)?;
    for entry in [m.e, m.f, m.g, m.h] {
        if entry.abs() > MAX_ENTRY {
            return Err(CliError::Parse(format!(
                "matrix entry {entry} exceeds the limit {MAX_ENTRY}"
            )));
        }
    }
    Ok(m)
}

fn endo_input(text: &str) -> Result<EndoF2, CliError> {
    let x = autf2::parse_endo(text).map_err(parse_err)?;
    if x.x1.len() > MAX_WORD_LEN || x.x2.len() > MAX_WORD_LEN {
        return Err(CliError::Parse(format!(
            "image words are limited to {MAX_WORD_LEN} letters each"
        )));
    }
    Ok(x)
}

/// One command's result: text lines plus the JSON value/witness pair.
struct Output {
    kind: &'static str,
    text: Vec<String>,
    value: serde_json::Value,
    witness: serde_json::Value,
}

fn nf_letters(nf: &braid3::BraidNormalForm) -> String {
    if nf.w.is_empty() {
        "1".to_string()
    } else {
        nf.w.iter().map(|l| l.to_string()).collect()
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let out = match &cli.command {
        Command::BraidNf { word } => {
            let nf = braid3::normal_form(&braid_input(word)?);
            Output {
                kind: "braid-nf",
                text: vec![
                    format!("normal form: {nf}"),
                    format!(
                        "parts: nu1={} w={} nu2={} n={}",
                        nf.nu1,
                        nf_letters(&nf),
                        nf.nu2,
                        nf.n
                    ),
                ],
                value: json!(nf.to_string()),
                witness: json!({
                    "nu1": nf.nu1, "w": nf_letters(&nf), "nu2": nf.nu2, "n": nf.n,
                }),
            }
        }
        Command::BraidEq { left, right } => {
            let l = braid_input(left)?;
            let r = braid_input(right)?;
            let equal = braid3::braid_equal(&l, &r);
            let nf_l = braid3::normal_form(&l);
            let nf_r = braid3::normal_form(&r);
            Output {
                kind: "braid-eq",
                text: vec![
                    format!("equal: {}", if equal { "yes" } else { "no" }),
                    format!("left: {nf_l}"),
                    format!("right: {nf_r}"),
                ],
                value: json!(equal),
                witness: json!({
                    "left": nf_l.to_string(), "right": nf_r.to_string(),
                }),
            }
        }
        Command::BraidConj { word } => {
            let case = braid3::conj_min_form(&braid_input(word)?);
            let size = case.normal_size();
            let rep = case.representative();
            let (name, n) = match &case {
                ConjCase::Central(n) => ("central", *n),
                ConjCase::CyclicW { n, .. } => ("cyclic", *n),
                ConjCase::OddCenter(n) => ("odd-center", *n),
                ConjCase::ShortTorsion { n, .. } => ("short-torsion", *n),
            };
            Output {
                kind: "braid-conj",
                text: vec![format!("{case}"), format!("representative: {rep}")],
                value: json!(case.to_string()),
                witness: json!({
                    "case": name, "representative": rep.to_string(),
                    "n": n, "outer": size.outer, "length": size.len,
                }),
            }
        }
        Command::Mat2Braid { matrix } => {
            let m = matrix_input(matrix)?;
            let nf = braid3::matrix_to_braid(&m).map_err(domain_err)?;
            let image = braid3::sigma(&nf.to_braid_word());
            Output {
                kind: "mat2braid",
                text: vec![format!("braid: {nf}"), format!("sigma: {image}")],
                value: json!(nf.to_string()),
                witness: json!({ "sigma": image.to_string() }),
            }
        }
        Command::Braid2Mat { word } => {
            let w = braid_input(word)?;
            let m = braid3::sigma(&w);
            Output {
                kind: "braid2mat",
                text: vec![
                    format!("matrix: {m}"),
                    format!("exponent: {}", braid3::exponent_sum(&w)),
                ],
                value: json!(m.to_string()),
                witness: json!({ "exponent": braid3::exponent_sum(&w) }),
            }
        }
        Command::F { n } => {
            if n.abs() > MAX_F_INDEX {
                return Err(CliError::Parse(format!(
                    "index {n} exceeds the limit {MAX_F_INDEX}"
                )));
            }
            let m = intmat::f(*n);
            let word = if n.abs() <= MAX_WITNESS_INDEX {
                Some(intmat::rewrite_in_f(&m).expect("generators lie in the subgroup"))
            } else {
                None
            };
            let mut text = vec![format!("matrix: {m}")];
            if let Some(w) = &word {
                text.push(format!("word: {w}"));
            }
            Output {
                kind: "f",
                text,
                value: json!(m.to_string()),
                witness: match word {
                    Some(w) => json!({ "word": w.to_string() }),
                    None => serde_json::Value::Null,
                },
            }
        }
        Command::Derived { matrix } => {
            let m = matrix_input(matrix)?;
            let member = intmat::derived_membership(&m).map_err(domain_err)?;
            let word = if member {
                Some(intmat::rewrite_in_f(&m).map_err(domain_err)?)
            } else {
                None
            };
            let mut text = vec![format!("derived: {}", if member { "yes" } else { "no" })];
            if let Some(w) = &word {
                text.push(format!("word: {w}"));
            }
            Output {
                kind: "derived",
                text,
                value: json!(member),
                witness: match word {
                    Some(w) => json!({ "word": w.to_string() }),
                    None => serde_json::Value::Null,
                },
            }
        }
        Command::RewriteF { matrix } => {
            let m = matrix_input(matrix)?;
            let word = intmat::rewrite_in_f(&m).map_err(domain_err)?;
            let product = word.to_matrix();
            Output {
                kind: "rewrite-f",
                text: vec![format!("word: {word}"), format!("matrix: {product}")],
                value: json!(word.to_string()),
                witness: json!({ "matrix": product.to_string() }),
            }
        }
        Command::TorsionSl { matrix } => {
            let m = matrix_input(matrix)?;
            let class = intmat::torsion_class_sl(&m).map_err(domain_err)?;
            let order = intmat::order(&m);
            Output {
                kind: "torsion-sl",
                text: vec![
                    format!("class: {class}"),
                    format!(
                        "order: {}",
                        order.map_or("infinite".to_string(), |k| k.to_string())
                    ),
                ],
                value: json!(class.to_string()),
                witness: json!({ "order": order }),
            }
        }
        Command::TorsionGl { matrix } => {
            let m = matrix_input(matrix)?;
            let class = intmat::torsion_class_gl(&m).map_err(domain_err)?;
            let order = intmat::order(&m);
            Output {
                kind: "torsion-gl",
                text: vec![
                    format!("class: {class}"),
                    format!(
                        "order: {}",
                        order.map_or("infinite".to_string(), |k| k.to_string())
                    ),
                ],
                value: json!(class.to_string()),
                witness: json!({ "order": order }),
            }
        }
        Command::AutCheck { endo } => {
            let x = endo_input(endo)?;
            let check = autf2::is_automorphism(&x);
            let (verdict, conjugator) = match autf2::commutator_condition(&x) {
                CommutatorVerdict::C1 => ("C1", None),
                CommutatorVerdict::Cw(w) => ("Cw", Some(w)),
                CommutatorVerdict::C1Inv => ("C1-inverse", None),
                CommutatorVerdict::CwInv(w) => ("Cw-inverse", Some(w)),
                CommutatorVerdict::Fail => ("fail", None),
            };
            let mut text = vec![format!(
                "automorphism: {}, direct: {}",
                if check.automorphism { "yes" } else { "no" },
                if check.direct { "yes" } else { "no" },
            )];
            if let Some(w) = &conjugator {
                text.push(format!("verdict: {verdict} by {w}"));
            } else {
                text.push(format!("verdict: {verdict}"));
            }
            Output {
                kind: "aut-check",
                text,
                value: json!(check.automorphism),
                witness: json!({
                    "direct": check.direct,
                    "verdict": verdict,
                    "conjugator": conjugator.map(|w| w.to_string()),
                }),
            }
        }
        Command::AutDecompose { endo } => {
            let x = endo_input(endo)?;
            let dec = autf2::nielsen_decompose(&x).map_err(domain_err)?;
            let recomposed = dec.as_endo();
            Output {
                kind: "aut-decompose",
                text: vec![
                    format!("inner: {}", dec.inner),
                    format!("braid: {}", dec.braid),
                    format!("dihedral: {}", if dec.dihedral == 0 { "1" } else { "delta" }),
                    format!("endo: {recomposed}"),
                ],
                value: json!(recomposed.to_string()),
                witness: json!({
                    "inner": dec.inner.to_string(),
                    "braid": dec.braid.to_string(),
                    "dihedral": dec.dihedral,
                }),
            }
        }
        Command::AutOrder { endo } => {
            let x = endo_input(endo)?;
            let order = autf2::order_aut(&x).map_err(domain_err)?;
            let shown = order.map_or("infinite".to_string(), |k| k.to_string());
            Output {
                kind: "aut-order",
                text: vec![format!("order: {shown}")],
                value: json!(shown),
                witness: json!({ "matrix": autf2::rho(&x).to_string() }),
            }
        }
        Command::AutTorsion { endo } => {
            let x = endo_input(endo)?;
            let class = autf2::torsion_class_aut(&x).map_err(domain_err)?;
            let order = autf2::order_aut(&x).map_err(domain_err)?;
            Output {
                kind: "aut-torsion",
                text: vec![
                    format!("class: {class}"),
                    format!("order: {}", order.expect("torsion classes have finite order")),
                ],
                value: json!(class.to_string()),
                witness: json!({ "order": order }),
            }
        }
        Command::Verify { self_test_mutate } => {
            return Ok(verify(cli, *self_test_mutate));
        }
    };

    match cli.format {
        Format::Text => {
            for line in &out.text {
                println!("{line}");
            }
        }
        Format::Json => {
            let doc = json!({ "kind": out.kind, "value": out.value, "witness": out.witness });
            println!("{doc}");
        }
    }
    Ok(0)
}

const VERIFY_ALPHABET: [Letter; 4] = [
    Letter::new(1, 1),
    Letter::new(1, -1),
    Letter::new(2, 1),
    Letter::new(2, -1),
];

fn random_reduced(rng: &mut ChaCha8Rng, max_len: usize) -> FreeWord {
    let target = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(target);
    while letters.len() < target {
        let pick = VERIFY_ALPHABET[rng.gen_range(0..4)];
        if letters.last().is_some_and(|l| l.inverse() == pick) {
            continue;
        }
        letters.push(pick);
    }
    FreeWord::reduce(letters)
}

fn presentation_relations_hold(half_twist: &Mat2) -> bool {
    let bw = |t: &str| braid3::parse_braid(t).expect("fixed word");
    braid3::sigma(&bw("aba")) == *half_twist
        && braid3::sigma(&bw("bab")) == *half_twist
        && braid3::sigma(&bw("c")) == half_twist.pow(2)
        && half_twist.pow(4).is_identity()
        && !half_twist.pow(2).is_identity()
}

fn generator_recursion_holds(half_twist: &Mat2, bound: i64) -> bool {
    let lhs = Mat2::A.pow(-6).mul(&half_twist.pow(2));
    for n in -bound..=bound {
        if intmat::f(n + 1).mul(&intmat::f(n - 1)) != intmat::f(n) {
            return false;
        }
        let x = intmat::f(n - 1).inv();
        let y = intmat::f(n - 2);
        if lhs != x.inv().mul(&y.inv()).mul(&x).mul(&y) {
            return false;
        }
    }
    true
}

fn composition_formulas_hold(seed: u64, samples: u32) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let h = EndoF2::new(random_reduced(&mut rng, 6), random_reduced(&mut rng, 6));
        let x = random_reduced(&mut rng, 6);
        let y = random_reduced(&mut rng, 6);
        let b1 = BraidWord::from_word(random_reduced(&mut rng, 8));
        let b2 = BraidWord::from_word(random_reduced(&mut rng, 8));
        let sig = autf2::psi(&b1);
        let tau = autf2::psi(&b2);
        let tau_inv = autf2::psi(&b2.inv());

        let slide_ok = autf2::compose(&h, &EndoF2::inner(&x))
            == autf2::compose(&EndoF2::inner(&autf2::apply(&h, &x)), &h);

        let phi_x_sig = autf2::compose(&EndoF2::inner(&x), &sig);
        let phi_y_tau = autf2::compose(&EndoF2::inner(&y), &tau);
        let product_ok = autf2::compose(&phi_x_sig, &phi_y_tau)
            == autf2::compose(
                &EndoF2::inner(&x.mul(&autf2::apply(&sig, &y))),
                &autf2::compose(&sig, &tau),
            );

        let phi_y_tau_inv =
            autf2::compose(&EndoF2::inner(&autf2::apply(&tau_inv, &y.inv())), &tau_inv);
        let transported = y.inv().mul(&x).mul(&autf2::apply(&sig, &y));
        let conjugate_ok =
            autf2::compose(&phi_y_tau_inv, &autf2::compose(&phi_x_sig, &phi_y_tau))
                == autf2::compose(
                    &EndoF2::inner(&autf2::apply(&tau_inv, &transported)),
                    &autf2::compose(&tau_inv, &autf2::compose(&sig, &tau)),
                );

        if !(slide_ok && product_ok && conjugate_ok) {
            return false;
        }
    }
    true
}

fn amalgam_instances_hold() -> bool {
    let toy = amalg::toy_z4();
    toy.validate().is_ok()
        && toy.mu_is_normal_embedding() == Ok(true)
        && toy.quotient_order() == Ok(8)
        && amalg::toy_kernel_equals_mu_image()
        && amalg::toy_s3().mu_is_normal_embedding() == Ok(true)
        && amalg::toy_s3_broken().validate().is_err()
}

fn verify(cli: &Cli, mutate: bool) -> i32 {
    // The half-twist image constant, locally mutable so the suite can
    // demonstrate that it actually fails on a perturbed build.
    let half_twist = if mutate {
        Mat2::new(0, -1, 1, 1)
    } else {
        Mat2::S
    };
    let bound = cli.max_size.unwrap_or(20) as i64;
    let samples = 10 * cli.max_size.unwrap_or(20) as u32;

    let checks: Vec<(&str, bool)> = vec![
        ("presentation relations", presentation_relations_hold(&half_twist)),
        ("generator recursion", generator_recursion_holds(&half_twist, bound)),
        ("composition formulas", composition_formulas_hold(cli.seed, samples)),
        ("amalgam instances", amalgam_instances_hold()),
        ("order-6 obstruction", autf2::order6_obstruction_check()),
    ];
    let all_ok = checks.iter().all(|(_, ok)| *ok);

    match cli.format {
        Format::Text => {
            for (name, ok) in &checks {
                println!("{name:<24} {}", if *ok { "PASS" } else { "FAIL" });
            }
            println!("verify: {}", if all_ok { "pass" } else { "fail" });
        }
        Format::Json => {
            let witness: serde_json::Map<String, serde_json::Value> = checks
                .iter()
                .map(|(name, ok)| {
                    (name.to_string(), json!(if *ok { "pass" } else { "fail" }))
                })
                .collect();
            let doc = json!({
                "kind": "verify",
                "value": if all_ok { "pass" } else { "fail" },
                "witness": witness,
            });
            println!("{doc}");
        }
    }
    i32::from(!all_ok)
}

fn main() {
    // Die quietly on a closed pipe (`artin ... | head`) instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}
