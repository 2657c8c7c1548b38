//! Batch driver: configuration, dispatch and canonical output.

pub mod config;
pub mod table;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ainf_core::algebra::{OneForm, Poly};
use ainf_core::determinacy::{odd_invariant_monomials, reduce_to_w};
use ainf_core::floer::{builtin, compare_with_transfer, validate_floer};
use ainf_core::koszul::{matrix_factorization_check, sign_normalize_gamma, verify_contraction, Conventions};
use ainf_core::scalars::{Monomial, Rat};
use ainf_core::structures::{check_index_degrees, check_relations, check_weights, semidirect, verify_ainfty, AInftyStructure};
use ainf_core::toric::{golden_diff, toric_check};
use ainf_core::transfer::{transfer, TransferResult};

pub use config::{ConfigError, JobConfig};
pub use table::ConstantTable;

/// Environment variable naming a directory for memoized transfer tables.
pub const CACHE_ENV: &str = "AINF_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "ainf", version, about = "Exact A-infinity transfer, verification and companion computations")]
pub struct Cli {
    /// TOML job configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Use the built-in default job (the same as an empty config).
    #[arg(long, global = true)]
    pub paper_defaults: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Override the maximal arity of the transfer.
    #[arg(long, global = true)]
    pub d_max: Option<usize>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the structure constants and emit them as JSON.
    Transfer,
    /// Check matrix factorization, low-order products, gradings and the A-infinity relations.
    Verify {
        #[arg(long, default_value_t = 6)]
        arity: usize,
        /// Also check the relations of the semidirect product with the group up to this arity.
        #[arg(long)]
        semidirect: Option<usize>,
    },
    /// Print the HKR image of every transferred product.
    Hkr,
    /// Reduce perturbations of W back to W by coordinate changes.
    Determinacy {
        /// Perturbation file with lines "e1 e2 ... en coeff"; without it, the built-in and random cases run.
        file: Option<PathBuf>,
        /// Number of seeded random perturbations.
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
    /// Recompute the toric charts, transitions and hypersurface equations.
    Toric {
        /// Diff against the vendored data.
        #[arg(long)]
        golden: bool,
    },
    /// Validate the Floer tables and compare them with the transfer.
    FloerCheck,
    /// Check the contraction data exhaustively and emit the conventions file.
    VerifyContraction {
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Print the effective configuration as TOML.
    Config,
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(String);

/// Text of a finished command and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(output: String) -> Outcome {
        Outcome { output, passed: true }
    }
}

/// γ as used for the transfer, with the normalization flag.
pub struct Prepared {
    pub gamma: OneForm,
    pub flipped: bool,
    pub w: Poly,
}

pub fn prepare(cfg: &JobConfig) -> anyhow::Result<Prepared> {
    let raw = cfg.raw_gamma();
    let w = cfg.superpotential();
    if cfg.normalize_gamma {
        let (gamma, flipped) = sign_normalize_gamma(&raw, &w).context("normalizing the one-form against w")?;
        Ok(Prepared { gamma, flipped, w })
    } else {
        Ok(Prepared { gamma: raw, flipped: false, w })
    }
}

fn cache_path(prep: &Prepared, conv: &Conventions, d_max: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let key = format!("{}\n{}\n{d_max}\n", conv.to_text(), serde_json::to_string(&table::gamma_terms(&prep.gamma)).expect("terms serialize"));
    Some(Path::new(&dir).join(format!("transfer-{}.json", table::sha256_hex(&key))))
}

/// Transfer through `d_max`, reusing a cached table when one matches.
pub fn transferred(cfg: &JobConfig, prep: &Prepared, d_max: usize) -> anyhow::Result<TransferResult> {
    let conv = Conventions::standard();
    let path = cache_path(prep, &conv, d_max);
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading cache {}", p.display()))?;
        if let Ok(t) = serde_json::from_str::<ConstantTable>(&text) {
            if t.metadata.gamma == table::gamma_terms(&prep.gamma) && t.metadata.d_max == d_max {
                return Ok(t.to_transfer());
            }
        }
    }
    let r = transfer(&prep.gamma, d_max).context("transfer")?;
    if let Some(p) = path {
        let t = ConstantTable::build(&r, &prep.gamma, &conv, cfg.normalize_gamma, prep.flipped);
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        std::fs::write(&p, t.to_json()).with_context(|| format!("writing cache {}", p.display()))?;
    }
    Ok(r)
}

pub fn cmd_transfer(cfg: &JobConfig) -> anyhow::Result<Outcome> {
    let prep = prepare(cfg)?;
    let r = transferred(cfg, &prep, cfg.d_max)?;
    let t = ConstantTable::build(&r, &prep.gamma, &Conventions::standard(), cfg.normalize_gamma, prep.flipped);
    Ok(Outcome::pass(t.to_json()))
}

pub fn cmd_hkr(cfg: &JobConfig) -> anyhow::Result<Outcome> {
    let prep = prepare(cfg)?;
    let r = transferred(cfg, &prep, cfg.d_max)?;
    let conv = Conventions::standard();
    let t = ConstantTable::build(&r, &prep.gamma, &conv, cfg.normalize_gamma, prep.flipped);
    let mut out = format!("# HKR images, sign (hkr_sign)^d with hkr_sign = {:+}\n", conv.hkr_sign);
    for h in &t.hkr {
        writeln!(out, "mu^{}_{}: {}", h.d, h.k, h.hkr)?;
    }
    Ok(Outcome::pass(out))
}

fn check_line(out: &mut String, ok: bool, name: &str, detail: impl std::fmt::Display) {
    let _ = writeln!(out, "{} {name}: {detail}", if ok { "ok  " } else { "FAIL" });
}

pub fn cmd_verify(cfg: &JobConfig, arity: usize, semidirect_arity: Option<usize>) -> anyhow::Result<Outcome> {
    if arity < 2 {
        return Err(UsageError(format!("--arity {arity} is below 2")).into());
    }
    let prep = prepare(cfg)?;
    let mut out = String::new();
    let mut passed = true;

    match matrix_factorization_check(&prep.gamma) {
        Ok(w_eff) => {
            let ok = !cfg.normalize_gamma || w_eff == prep.w;
            passed &= ok;
            check_line(&mut out, ok, "matrix factorization", format!("delta^2 = ({})·id", w_eff.fmt_with(cfg.n)));
        }
        Err(e) => {
            passed = false;
            check_line(&mut out, false, "matrix factorization", e);
        }
    }

    let r = transferred(cfg, &prep, cfg.d_max.max(arity - 1))?;
    let mu = AInftyStructure::from_transfer(&r);
    let wedge = AInftyStructure::wedge(cfg.n);
    let mu1_zero = r.tables.iter().all(|((d, _), t)| *d != 1 || t.is_empty());
    let mu2_wedge = mu.table(2, 0) == wedge.table(2, 0);
    let mu2_hbar_zero = r.tables.iter().all(|((d, k), t)| *d != 2 || *k == 0 || t.is_empty());
    let low = mu1_zero && mu2_wedge && mu2_hbar_zero;
    passed &= low;
    check_line(&mut out, low, "low order", format!("mu^1 = 0: {mu1_zero}, mu^2_0 = wedge: {mu2_wedge}, mu^2_(k>0) = 0: {mu2_hbar_zero}"));

    let weights = check_weights(&mu);
    passed &= weights.passed();
    check_line(&mut out, weights.passed(), "weights", format!("{} constants, {} violations", weights.checked, weights.violations.len()));
    let index = check_index_degrees(&mu);
    passed &= index.passed();
    check_line(&mut out, index.passed(), "index law", format!("{} constants, {} violations", index.checked, index.violations.len()));
    for v in weights.violations.iter().chain(&index.violations).take(10) {
        writeln!(out, "  {v}")?;
    }

    let mc = verify_ainfty(&mu, arity);
    passed &= mc.passed();
    check_line(&mut out, mc.passed(), "Maurer-Cartan", format!("{} residual terms", mc.residual_terms));
    for line in mc.to_string().lines() {
        writeln!(out, "  {line}")?;
    }

    if let Some(d) = semidirect_arity {
        let truncated = mu.truncate(d);
        match semidirect(&truncated, &cfg.group_spec(), d) {
            Ok(s) => {
                let fail = check_relations(&s, d);
                passed &= fail.is_none();
                let detail = match &fail {
                    None => format!("{} basis elements, relations hold through arity {d}", s.elements.len() << cfg.n),
                    Some(t) => format!("first failing tuple {t:?}"),
                };
                check_line(&mut out, fail.is_none(), "semidirect product", detail);
            }
            Err(e) => {
                passed = false;
                check_line(&mut out, false, "semidirect product", e);
            }
        }
    }
    Ok(Outcome { output: out, passed })
}

/// Parse lines "e1 … en coeff"; blank lines and '#' comments are skipped.
pub fn parse_perturbation(text: &str, n: usize) -> Result<Poly, UsageError> {
    let mut p = Poly::zero();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != n + 1 {
            return Err(UsageError(format!("line {}: expected {n} exponents and a coefficient", i + 1)));
        }
        let exps: Vec<u8> = fields[..n].iter().map(|f| f.parse()).collect::<Result<_, _>>().map_err(|_| UsageError(format!("line {}: bad exponent", i + 1)))?;
        let c: Rat = fields[n].parse().map_err(|_| UsageError(format!("line {}: bad coefficient {:?}", i + 1, fields[n])))?;
        p.add_term(Monomial::from_exps(&exps), c);
    }
    Ok(p)
}

/// Random integer combination of odd invariant monomials of degree ≥ 7 below N.
pub fn random_perturbation(rng: &mut impl Rng, n: usize, order: u32) -> Poly {
    let mut p = Poly::zero();
    for m in odd_invariant_monomials(n, 7, order) {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
            p.add_term(m, Rat::from_int(c));
        }
    }
    if p.is_zero() {
        if let Some(m) = odd_invariant_monomials(n, 7, order).first() {
            p.add_term(*m, Rat::ONE);
        }
    }
    p
}

pub fn cmd_determinacy(cfg: &JobConfig, file: Option<&Path>, random: usize) -> anyhow::Result<Outcome> {
    let w = cfg.superpotential();
    let n = cfg.n;
    let mut cases: Vec<(String, Poly)> = Vec::new();
    match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            cases.push((path.display().to_string(), parse_perturbation(&text, n)?));
        }
        None => {
            let cube = Poly::monomial(Monomial::from_exps(&vec![3; n]), Rat::ONE);
            cases.push(("(v1...vn)^3".into(), cube));
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for i in 0..random {
                cases.push((format!("random #{}", i + 1), random_perturbation(&mut rng, n, cfg.truncation)));
            }
        }
    }
    let mut out = String::new();
    let mut passed = true;
    for (name, pert) in cases {
        writeln!(out, "== perturbation {name}: {}", pert.fmt_with(n))?;
        match reduce_to_w(&w.add(&pert), &w, n, cfg.truncation) {
            Ok(red) => {
                passed &= red.passed();
                writeln!(out, "{red}")?;
            }
            Err(e) => {
                passed = false;
                writeln!(out, "FAIL {e}")?;
            }
        }
    }
    Ok(Outcome { output: out, passed })
}

fn require_three(cfg: &JobConfig, what: &str) -> anyhow::Result<()> {
    if cfg.n != 3 {
        bail!(UsageError(format!("{what} needs n = 3, got {}", cfg.n)));
    }
    Ok(())
}

pub fn cmd_toric(cfg: &JobConfig, golden: bool) -> anyhow::Result<Outcome> {
    require_three(cfg, "toric")?;
    let rep = toric_check(&cfg.superpotential());
    let mut out = rep.to_string();
    let mut passed = rep.passed();
    if golden {
        let diff = golden_diff(&rep);
        if diff.is_empty() {
            out.push_str("golden: no differences\n");
        } else {
            passed = false;
            for d in diff {
                writeln!(out, "{d}")?;
            }
        }
    }
    Ok(Outcome { output: out, passed })
}

pub fn cmd_floer_check(cfg: &JobConfig) -> anyhow::Result<Outcome> {
    require_three(cfg, "floer-check")?;
    let (tables, dict) = builtin();
    let rep = validate_floer(&tables, &dict).context("validating Floer tables")?;
    let mut out = format!("Floer tables:\n{rep}");
    let prep = prepare(cfg)?;
    let r = transferred(cfg, &prep, 5)?;
    let cmp = compare_with_transfer(&tables, &dict, &AInftyStructure::from_transfer(&r), &Conventions::standard()).context("comparing with the transfer")?;
    write!(out, "against the transfer:\n{cmp}")?;
    Ok(Outcome { output: out, passed: rep.passed() && cmp.passed() })
}

pub fn cmd_verify_contraction(cfg: &JobConfig, max_degree: u32) -> anyhow::Result<Outcome> {
    let rep = verify_contraction(cfg.n, max_degree);
    let mut out = String::new();
    for line in rep.to_string().lines() {
        writeln!(out, "# {line}")?;
    }
    if let Some(e) = rep.epsilon {
        let conv = Conventions { homotopy_sign: e, ..Conventions::standard() };
        out.push_str(&conv.to_text());
    }
    Ok(Outcome { output: out, passed: rep.passed() })
}

fn load_config(cli: &Cli) -> anyhow::Result<JobConfig> {
    if cli.paper_defaults && cli.config.is_some() {
        bail!(UsageError("--paper-defaults and --config are mutually exclusive".into()));
    }
    let mut cfg = match &cli.config {
        Some(p) => JobConfig::load(p)?,
        None => JobConfig::standard(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(d) = cli.d_max {
        cfg.d_max = d;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Transfer => cmd_transfer(&cfg),
        Command::Verify { arity, semidirect } => cmd_verify(&cfg, *arity, *semidirect),
        Command::Hkr => cmd_hkr(&cfg),
        Command::Determinacy { file, random } => cmd_determinacy(&cfg, file.as_deref(), *random),
        Command::Toric { golden } => cmd_toric(&cfg, *golden),
        Command::FloerCheck => cmd_floer_check(&cfg),
        Command::VerifyContraction { max_degree } => cmd_verify_contraction(&cfg, *max_degree),
        Command::Config => Ok(Outcome::pass(cfg.to_toml())),
    }
}

fn is_usage(e: &anyhow::Error) -> bool {
    e.chain().any(|c| c.is::<UsageError>() || c.is::<ConfigError>())
}

/// Run with the given arguments; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(anyhow::Error::new(e).context("building the thread pool")),
        },
        None => dispatch(&cli),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return if is_usage(&e) { 2 } else { 1 };
        }
    };
    let written = match &cli.out {
        Some(p) => std::fs::write(p, &outcome.output).with_context(|| format!("writing {}", p.display())),
        None => stdout.write_all(outcome.output.as_bytes()).context("writing output"),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e:#}");
        return 2;
    }
    if outcome.passed {
        0
    } else {
        let first = outcome.output.lines().find(|l| l.starts_with("FAIL") || l.contains("MISMATCH") || l.starts_with("- ") || l.starts_with("+ "));
        let _ = writeln!(stderr, "verification failed{}", first.map(|l| format!(": {l}")).unwrap_or_default());
        1
    }
}
