//! Command-line front end: key generation, encryption, decryption, attack
//! experiments and timing grids.

use sidon_core::SeedableRng;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand_core::RngCore;
use sidon_core::attacks::{self, AttackReport};
use sidon_core::crypto::{self, Ciphertext, MessageSpace, PrivateKey, PublicKey};
use sidon_core::{Error, SplitMix64};

pub mod bench;

/// Failure of a command, carrying its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Crypto(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Crypto(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Decryption(_) | Error::Factorization(_) | Error::Internal(_) => {
                CliError::Crypto(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "sidon",
    version,
    about = "Sidon-space cryptosystem and attack laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a message number.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext and print the message number.
    Decrypt(DecryptArgs),
    /// Run an attack experiment and print a JSON report.
    Attack(AttackArgs),
    /// Time key generation or the bilinear attack over a parameter grid (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "priv")]
    pub priv_path: PathBuf,
    #[arg(long = "pub")]
    pub pub_path: PathBuf,
    /// Also draw the polynomial P_R of the randomized scheme.
    #[arg(long)]
    pub randomized: bool,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    #[arg(long = "pub")]
    pub pub_path: PathBuf,
    /// Decimal message number in [0, |Q_k|).
    #[arg(long)]
    pub message: String,
    /// Output ciphertext file.
    #[arg(long)]
    pub ct: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    #[arg(long = "priv")]
    pub priv_path: PathBuf,
    #[arg(long)]
    pub ct: PathBuf,
    /// Also write the message to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AttackKind {
    Kernel,
    Ks,
    Minor,
    Kronecker,
    Structured,
    Bilinear,
    BasisExt,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long, value_enum)]
    pub kind: AttackKind,
    #[arg(long = "pub")]
    pub pub_path: Option<PathBuf>,
    #[arg(long = "priv")]
    pub priv_path: Option<PathBuf>,
    #[arg(long)]
    pub ct: Option<PathBuf>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Structured attack: file for the emitted degree-4 system
    /// (the quadratic form goes to the same path with `.quadratic` appended).
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchTarget {
    Keygen,
    Bilinear,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub target: BenchTarget,
    /// Restrict the grid to this q.
    #[arg(long)]
    pub q: Option<u64>,
    /// Restrict the grid to this k.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command, writing human-readable output to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Keygen(a) => cmd_keygen(&a, stdout),
        Command::Encrypt(a) => cmd_encrypt(&a, stdout),
        Command::Decrypt(a) => cmd_decrypt(&a, stdout),
        Command::Attack(a) => cmd_attack(&a, stdout),
        Command::Bench(a) => cmd_bench(&a, stdout),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))
}

pub fn load_public(path: &Path) -> CliResult<PublicKey> {
    Ok(PublicKey::from_json(&read(path)?)?)
}

pub fn load_private(path: &Path) -> CliResult<PrivateKey> {
    Ok(PrivateKey::from_json(&read(path)?)?)
}

pub fn load_ciphertext(path: &Path) -> CliResult<Ciphertext> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Usage(format!("malformed ciphertext: {e}")))
}

fn cmd_keygen(a: &KeygenArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let mut rng = SplitMix64::seed_from_u64(a.seed);
    let (private, public) = if a.randomized {
        crypto::keygen_with_randomizer(a.q, a.k, &mut rng)?
    } else {
        crypto::keygen(a.q, a.k, &mut rng)?
    };
    let (pj, uj) = (private.to_json(), public.to_json());
    write(&a.priv_path, &pj)?;
    write(&a.pub_path, &uj)?;
    emit(
        stdout,
        &format!(
            "|Q_k| = {}\nprivate key: {} bytes\npublic key: {} bytes\n",
            crypto::msg_space_size(a.q, a.k),
            pj.len(),
            uj.len()
        ),
    )
}

fn parse_message(s: &str) -> CliResult<BigUint> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("message must be a decimal integer, got {s:?}")))
}

fn cmd_encrypt(a: &EncryptArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let public = load_public(&a.pub_path)?;
    let space = MessageSpace::new(public.q(), public.k())?;
    let class = space.encode(&parse_message(&a.message)?)?;
    let ct = crypto::encrypt(&public, &class)?;
    write(&a.ct, &serde_json::to_string(&ct).expect("serializable"))?;
    emit(stdout, &format!("wrote {}\n", a.ct.display()))
}

fn cmd_decrypt(a: &DecryptArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let private = load_private(&a.priv_path)?;
    let ct = load_ciphertext(&a.ct)?;
    let class = crypto::decrypt(&private, &ct)?;
    let m = MessageSpace::new(private.q(), private.k())?.decode(&class)?;
    if let Some(out) = &a.out {
        write(out, &format!("{m}\n"))?;
    }
    emit(stdout, &format!("{m}\n"))
}

fn need<'a>(path: &'a Option<PathBuf>, flag: &str, kind: AttackKind) -> CliResult<&'a Path> {
    path.as_deref()
        .ok_or_else(|| CliError::Usage(format!("attack {kind:?} requires --{flag}").to_lowercase()))
}

fn cmd_attack(a: &AttackArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let report = run_attack(a)?;
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    match &a.out {
        Some(path) => write(path, &text),
        None => emit(stdout, &text),
    }
}

/// Runs one attack experiment and assembles its report.
pub fn run_attack(a: &AttackArgs) -> CliResult<AttackReport> {
    let mut report = AttackReport::default();
    let mut rng = SplitMix64::seed_from_u64(a.seed);
    match a.kind {
        AttackKind::Kernel => {
            let private = load_private(need(&a.priv_path, "priv", a.kind)?)?;
            let trials = a.trials.unwrap_or(100_000);
            let exp = attacks::kernel_attack_experiment(&private, trials, &mut rng)?;
            let probes = trials.min(10_000);
            let probe = attacks::base_field_kernel_probe(&private, probes, &mut rng)?;
            report.bound("theoretical_rate", exp.theoretical_rate);
            report.bound("sigma", exp.sigma);
            report.detail("hits", exp.hits);
            report.detail("trials", exp.trials);
            report.detail("empirical_rate", exp.empirical_rate);
            report.detail("base_field_probes", probes);
            report.check("rate_within_5_sigma", exp.within(5.0));
            report.check("base_field_probe", probe);
        }
        AttackKind::Ks => {
            let public = load_public(need(&a.pub_path, "pub", a.kind)?)?;
            let private = load_private(need(&a.priv_path, "priv", a.kind)?)?;
            let mut all = true;
            for r in 0..public.k() {
                all &= attacks::build_ks_system(&public, r)?.verify(&private);
            }
            let sys = attacks::build_ks_system(&public, 0)?;
            let exp = attacks::ks_guess_experiment(
                &sys,
                &private,
                a.trials.unwrap_or(100_000),
                &mut rng,
            )?;
            report.bound("equations", sys.equations.len());
            report.bound("guess_rate", exp.theoretical_rate);
            report.detail("guess_hits", exp.hits);
            report.detail("guess_trials", exp.trials);
            report.check("ground_truth_residuals_zero", all);
            report.check("guess_rate_within_5_sigma", exp.within(5.0));
        }
        AttackKind::Minor => {
            let public = load_public(need(&a.pub_path, "pub", a.kind)?)?;
            let private = load_private(need(&a.priv_path, "priv", a.kind)?)?;
            let m = attacks::minor_kernel_report(&private, &public, a.seed)?;
            report.rank = Some(m.omega_rank);
            report.kernel_dim = Some(m.omega_kernel_dim);
            for (name, value) in &m.bounds {
                report.bound(name, *value);
            }
            report.bound("columns", m.columns);
            for (name, ok) in &m.checks {
                report.check(name, *ok);
            }
            report.detail("omega_rows", m.omega_rows);
            report.detail("gamma_rows", m.gamma_rows);
            report.detail("gamma_rank", m.gamma_rank);
            report.detail("gamma_kernel_dim", m.gamma_kernel_dim);
            report.detail("witness_span_dim", m.witness_span_dim);
        }
        AttackKind::Kronecker => {
            let public = load_public(need(&a.pub_path, "pub", a.kind)?)?;
            let private = load_private(need(&a.priv_path, "priv", a.kind)?)?;
            let oq = attacks::build_omega_q(
                &public,
                private.ctx().big(),
                &attacks::tower_basis(&private),
            )?;
            let rank = oq.system.rank(&public.fq());
            let k = public.k();
            report.rank = Some(rank);
            report.kernel_dim = Some(oq.columns() - rank);
            report.bound("columns", oq.columns());
            report.bound("columns_formula", 8 * k.pow(4) + 4 * k.pow(3));
            report.bound("rank_product", oq.omega_lin_rank * oq.c_rank);
            report.detail("omega_lin_rank", oq.omega_lin_rank);
            report.detail("c_rank", oq.c_rank);
            report.check("rank_law", rank == oq.omega_lin_rank * oq.c_rank);
            report.check("c_full_rank", oq.c_rank == public.n());
        }
        AttackKind::Structured => {
            let public = load_public(need(&a.pub_path, "pub", a.kind)?)?;
            let private = load_private(need(&a.priv_path, "priv", a.kind)?)?;
            let sys = attacks::structured_attack_emit(&public, private.ctx())?;
            if let Some(path) = &a.emit {
                write(path, &sys.quartic.to_text())?;
                let mut quad = path.clone().into_os_string();
                quad.push(".quadratic");
                write(Path::new(&quad), &sys.quadratic.to_text())?;
            }
            let k = public.k();
            let mut perturbed = attacks::structured_ground_truth(&private);
            let b11 = sys
                .quartic
                .variable_index("b_1_1")
                .expect("declared variable");
            perturbed[b11] = (perturbed[b11] + 1) % public.q();
            let perturbation_detected = sys.quartic.residuals(&perturbed)?.iter().any(|&r| r != 0);
            report.bound("equations", sys.quartic.num_equations());
            report.bound("variables", sys.quartic.num_variables());
            report.bound("quadratic_variables", sys.quadratic.num_variables());
            report.check(
                "equation_count",
                sys.quartic.num_equations() == k * k * (k + 1),
            );
            report.check(
                "variable_count",
                sys.quartic.num_variables() == 5 * k * k + 2 * k,
            );
            report.check(
                "quadratic_variable_count",
                sys.quadratic.num_variables() == k.pow(4) + 8 * k * k + 2 * k,
            );
            report.check("degree_at_most_4", sys.quartic.max_degree() <= 4);
            report.check(
                "ground_truth_residuals_zero",
                attacks::structured_attack_verify(&private, &sys)?,
            );
            report.check("perturbation_detected", perturbation_detected);
        }
        AttackKind::Bilinear => {
            let public = load_public(need(&a.pub_path, "pub", a.kind)?)?;
            let ct = load_ciphertext(need(&a.ct, "ct", a.kind)?)?;
            let space = MessageSpace::new(public.q(), public.k())?;
            let start = Instant::now();
            let found = attacks::bilinear_bruteforce(&public, &ct)?;
            let elapsed = start.elapsed().as_secs_f64();
            let messages: Vec<String> = found
                .iter()
                .map(|c| space.decode(c).map(|m| m.to_string()))
                .collect::<Result<_, _>>()?;
            report.detail("messages", messages);
            report.detail("seconds", elapsed);
            report.check("unique_solution", found.len() == 1);
            if let Some(path) = &a.priv_path {
                let private = load_private(path)?;
                let agrees = match crypto::decrypt(&private, &ct) {
                    Ok(class) => found.len() == 1 && found.contains(&class),
                    Err(_) => found.is_empty(),
                };
                report.check("matches_decrypt", agrees);
            }
        }
        AttackKind::BasisExt => {
            let private = load_private(need(&a.priv_path, "priv", a.kind)?)?;
            let pairs = a.trials.unwrap_or(5);
            let mut all = true;
            for _ in 0..pairs {
                all &= attacks::basis_extension_kernel_equality(
                    &private,
                    rng.next_u64(),
                    rng.next_u64(),
                )?;
            }
            report.detail("pairs", pairs);
            report.check("kernels_equal", all);
        }
    }
    Ok(report)
}

fn cmd_bench(a: &BenchArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let rows = match a.target {
        BenchTarget::Keygen => {
            let qs = a.q.map_or_else(|| bench::KEYGEN_QS.to_vec(), |q| vec![q]);
            let ks = a.k.map_or_else(|| bench::KEYGEN_KS.to_vec(), |k| vec![k]);
            bench::keygen_grid(&qs, &ks, a.trials, a.seed)?
        }
        BenchTarget::Bilinear => {
            let ks = a.k.map_or_else(|| bench::BILINEAR_KS.to_vec(), |k| vec![k]);
            bench::bilinear_grid(a.q.unwrap_or(3), &ks, a.trials, a.seed)?
        }
    };
    let csv = bench::to_csv(&rows);
    match &a.out {
        Some(path) => write(path, &csv),
        None => emit(stdout, &csv),
    }
}
