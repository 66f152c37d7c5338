//! Command-line front end for `sympdec-core`.
//!
//! Every decomposition command reads one matrix (text or JSON, detected from
//! the content), writes each factor as `<stem>.<factor>.<ext>` into the output
//! directory and prints a report with the reconstruction and structural
//! residuals to stdout.
//!
//! Exit codes: 0 success, 1 validation failure (the input or a computed
//! factor violates an invariant), 2 parse or usage error.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sympdec_core::decompositions::{
    bloch_messiah, iwasawa, pre_iwasawa, symplectic_eigenvalues, takagi, williamson,
};
use sympdec_core::io::{self, Matrix, FULL_PRECISION};
use sympdec_core::kernels::polar;
use sympdec_core::random::{random_symplectic, DEFAULT_MAX_SQUEEZE};
use sympdec_core::symplectic::{check_block_conditions, is_symplectic, BlockPartition};
use sympdec_core::{ComplexMatrix, Error, RealMatrix, SymplecticMatrix, Tolerance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Structured => "json",
        }
    }

    pub fn serialize(self, m: &Matrix) -> String {
        match self {
            Format::Text => io::serialize_text(m, FULL_PRECISION),
            Format::Structured => {
                let mut s = io::serialize_structured(m);
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Takagi,
    BlochMessiah,
    PreIwasawa,
    Iwasawa,
    Williamson,
    Polar,
    Sympeig,
    Check,
    Random,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Takagi => "takagi",
            Command::BlochMessiah => "bloch-messiah",
            Command::PreIwasawa => "pre-iwasawa",
            Command::Iwasawa => "iwasawa",
            Command::Williamson => "williamson",
            Command::Polar => "polar",
            Command::Sympeig => "sympeig",
            Command::Check => "check",
            Command::Random => "random",
        }
    }
}

/// Fully resolved invocation.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: Command,
    /// Input path; `-` or `None` reads stdin.
    pub input: Option<String>,
    pub output_dir: PathBuf,
    pub format: Format,
    pub tol: Tolerance,
    pub seed: u64,
    pub modes: usize,
    pub max_squeeze: f64,
}

#[derive(Debug, Parser)]
#[command(name = "sympdec", version, about = "Symplectic and Takagi matrix decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Output file format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Relative tolerance.
    #[arg(long, default_value_t = 1e-8, value_parser = positive, global = true)]
    pub rtol: f64,
    /// Absolute tolerance.
    #[arg(long, default_value_t = 1e-10, value_parser = positive, global = true)]
    pub atol: f64,
    /// Skip input and output checks. Residuals are still reported.
    #[arg(long, global = true)]
    pub no_validate: bool,
    /// Directory for factor files.
    #[arg(long, default_value = ".", global = true)]
    pub output_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Matrix file, or `-` for stdin.
    #[arg(default_value = "-")]
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// M = W diag(λ) Wᵀ for complex symmetric M.
    Takagi(InputArg),
    /// S = O (Γ ⊕ Γ⁻¹) Q with O, Q orthogonal-symplectic.
    BlochMessiah(InputArg),
    /// S = E D F with E lower block-triangular and F orthogonal-symplectic.
    PreIwasawa(InputArg),
    /// S = E D F with E unit lower triangular in the xpxp ordering.
    Iwasawa(InputArg),
    /// Σ = S (T) Sᵀ with T = Δ ⊕ Δ.
    Williamson(InputArg),
    /// A = P W with P positive semidefinite and W unitary.
    Polar(InputArg),
    /// Symplectic eigenvalues of a positive definite matrix.
    Sympeig(InputArg),
    /// Report whether a matrix is symplectic.
    Check(InputArg),
    /// Print a random symplectic matrix.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        modes: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_SQUEEZE)]
        max_squeeze: f64,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

impl From<Cli> for CliConfig {
    fn from(cli: Cli) -> Self {
        let c = cli.common;
        let mut tol = Tolerance::new(c.rtol, c.atol);
        tol.validate = !c.no_validate;
        let mut config = CliConfig {
            command: Command::Random,
            input: None,
            output_dir: c.output_dir,
            format: c.format,
            tol,
            seed: 0,
            modes: 1,
            max_squeeze: DEFAULT_MAX_SQUEEZE,
        };
        let (command, input) = match cli.command {
            CliCommand::Takagi(i) => (Command::Takagi, i.input),
            CliCommand::BlochMessiah(i) => (Command::BlochMessiah, i.input),
            CliCommand::PreIwasawa(i) => (Command::PreIwasawa, i.input),
            CliCommand::Iwasawa(i) => (Command::Iwasawa, i.input),
            CliCommand::Williamson(i) => (Command::Williamson, i.input),
            CliCommand::Polar(i) => (Command::Polar, i.input),
            CliCommand::Sympeig(i) => (Command::Sympeig, i.input),
            CliCommand::Check(i) => (Command::Check, i.input),
            CliCommand::Random {
                seed,
                modes,
                max_squeeze,
            } => {
                config.seed = seed;
                config.modes = modes;
                config.max_squeeze = max_squeeze;
                return config;
            }
        };
        config.command = command;
        config.input = Some(input);
        config
    }
}

/// A failed run: the exit code and a message for stderr.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: if e.is_parse_error() {
                EXIT_USAGE
            } else {
                EXIT_VALIDATION
            },
            message: e.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

/// Runs one command. The report goes to `out`; factor files go to
/// `config.output_dir`.
pub fn run(config: &CliConfig, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    let mut session = Session {
        config,
        report: String::new(),
        stem: String::new(),
    };
    let result = session.dispatch(stdin);
    out.write_all(session.report.as_bytes())
        .map_err(|e| CliError::validation(format!("cannot write report: {e}")))?;
    result
}

/// Parses argv and runs, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = CliConfig::from(cli);
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    match run(&config, &mut stdin.lock(), &mut stdout.lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("sympdec {}: {}", config.command.name(), e.message);
            e.code
        }
    }
}

struct Session<'a> {
    config: &'a CliConfig,
    report: String,
    stem: String,
}

macro_rules! line {
    ($s:expr, $($arg:tt)*) => {
        let _ = writeln!($s.report, $($arg)*);
    };
}

impl Session<'_> {
    fn dispatch(&mut self, stdin: &mut dyn Read) -> Result<(), CliError> {
        let cfg = self.config;
        if cfg.command == Command::Random {
            return self.random();
        }
        let input = self.read_input(stdin)?;
        let tol = cfg.tol;
        line!(self, "command: {}", cfg.command.name());
        let (r, c) = input.shape();
        let source = self.source_name().to_owned();
        line!(self, "input: {source} ({r}x{c} {})", input.dtype());
        line!(
            self,
            "tolerance: rtol={:e} atol={:e} validate={}",
            tol.rtol,
            tol.atol,
            tol.validate
        );
        match cfg.command {
            Command::Takagi => self.takagi(&input),
            Command::BlochMessiah => self.bloch_messiah(&input),
            Command::PreIwasawa => self.pre_iwasawa(&input),
            Command::Iwasawa => self.iwasawa(&input),
            Command::Williamson => self.williamson(&input),
            Command::Polar => self.polar(&input),
            Command::Sympeig => self.sympeig(&input),
            Command::Check => self.check(&input),
            Command::Random => unreachable!(),
        }
    }

    fn source_name(&self) -> &str {
        match self.config.input.as_deref() {
            None | Some("-") => "<stdin>",
            Some(p) => p,
        }
    }

    fn read_input(&mut self, stdin: &mut dyn Read) -> Result<Matrix, CliError> {
        let text = match self.config.input.as_deref() {
            None | Some("-") => {
                self.stem = "stdin".into();
                let mut s = String::new();
                stdin
                    .read_to_string(&mut s)
                    .map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
                s
            }
            Some(path) => {
                let p = Path::new(path);
                self.stem = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "matrix".into());
                std::fs::read_to_string(p)
                    .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?
            }
        };
        let parsed = if text.trim_start().starts_with('{') {
            io::parse_structured(&text)
        } else {
            io::parse_text(&text)
        };
        parsed.map_err(|e| CliError::usage(format!("{}: {e}", self.source_name())))
    }

    fn require_real(&self, m: &Matrix) -> Result<RealMatrix, CliError> {
        match m {
            Matrix::Real(a) => Ok(a.clone()),
            Matrix::Complex(_) => Err(CliError::usage(format!(
                "{} requires a real matrix",
                self.config.command.name()
            ))),
        }
    }

    fn write_factor(&mut self, factor: &str, m: Matrix) -> Result<(), CliError> {
        let cfg = self.config;
        let path = cfg
            .output_dir
            .join(format!("{}.{factor}.{}", self.stem, cfg.format.extension()));
        std::fs::create_dir_all(&cfg.output_dir)
            .and_then(|_| std::fs::write(&path, cfg.format.serialize(&m)))
            .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))?;
        line!(self, "wrote {factor}: {}", path.display());
        Ok(())
    }

    fn residual(&mut self, name: &str, value: f64) {
        line!(self, "{name}: {value:.3e}");
    }

    fn values(&mut self, name: &str, v: &[f64]) {
        let joined: Vec<String> = v.iter().map(|x| io::format_real(*x, FULL_PRECISION)).collect();
        line!(self, "{name}: {}", joined.join(" "));
    }

    fn symplectic_input(&self, m: &Matrix) -> Result<SymplecticMatrix, CliError> {
        let a = self.require_real(m)?;
        Ok(SymplecticMatrix::with_policy(a, self.config.tol)?)
    }

    fn takagi(&mut self, input: &Matrix) -> Result<(), CliError> {
        let m = input.to_complex();
        let res = takagi(&m, self.config.tol)?;
        let n = m.nrows();
        self.residual("norm ‖M‖_F", m.norm());
        self.residual("reconstruction residual ‖WΛWᵀ - M‖_F", (res.reconstruct() - &m).norm());
        self.residual(
            "unitarity residual ‖W†W - 1‖_F",
            (res.w.adjoint() * &res.w - ComplexMatrix::identity(n, n)).norm(),
        );
        self.residual(
            "effective bound",
            self.config.tol.bound(m.norm().max(1.0)),
        );
        self.values("lambda", &res.lambda);
        self.write_factor("W", Matrix::Complex(res.w.clone()))?;
        self.write_factor("Lambda", Matrix::Real(res.lambda_matrix()))
    }

    fn bloch_messiah(&mut self, input: &Matrix) -> Result<(), CliError> {
        let s = self.symplectic_input(input)?;
        let res = bloch_messiah(&s, self.config.tol)?;
        let norm = s.matrix().norm();
        let gmax = res.gamma_max();
        self.residual("norm ‖S‖_F", norm);
        self.residual("gamma_max", gmax);
        self.residual("input symplectic residual", s.residual());
        self.residual(
            "reconstruction residual ‖ODQ - S‖_F",
            (res.reconstruct() - s.matrix()).norm(),
        );
        self.residual("orthogonality residual (O)", res.o.orthogonality_residual());
        self.residual("orthogonality residual (Q)", res.q.orthogonality_residual());
        self.residual("symplectic residual (O)", res.o.to_symplectic().residual());
        self.residual("symplectic residual (Q)", res.q.to_symplectic().residual());
        self.residual("effective bound", self.config.tol.bound(norm * gmax.max(1.0)));
        self.values("gamma", &res.gamma);
        self.write_factor("O", Matrix::Real(res.o.matrix().clone()))?;
        self.write_factor("D", Matrix::Real(res.d()))?;
        self.write_factor("Q", Matrix::Real(res.q.matrix().clone()))
    }

    fn pre_iwasawa(&mut self, input: &Matrix) -> Result<(), CliError> {
        let s = self.symplectic_input(input)?;
        let res = pre_iwasawa(&s, self.config.tol)?;
        let norm = s.matrix().norm();
        let d = res.d();
        self.residual("norm ‖S‖_F", norm);
        self.residual("input symplectic residual", s.residual());
        self.residual(
            "reconstruction residual ‖EDF - S‖_F",
            (res.reconstruct() - s.matrix()).norm(),
        );
        self.report_factor_residuals(&res.e, &d, res.f.matrix());
        self.residual("orthogonality residual (F)", res.f.orthogonality_residual());
        // Bottom blocks of E·D·F reproduce the bottom blocks of S.
        let rebuilt = BlockPartition::split(&res.reconstruct());
        let orig = s.blocks();
        self.residual("bottom-left block residual", (rebuilt.c - orig.c).norm());
        self.residual("bottom-right block residual", (rebuilt.d - orig.d).norm());
        self.residual("effective bound", self.config.tol.bound(norm));
        self.write_factor("E", Matrix::Real(res.e.clone()))?;
        self.write_factor("D", Matrix::Real(d))?;
        self.write_factor("F", Matrix::Real(res.f.matrix().clone()))
    }

    fn iwasawa(&mut self, input: &Matrix) -> Result<(), CliError> {
        let s = self.symplectic_input(input)?;
        let res = iwasawa(&s, self.config.tol)?;
        let norm = s.matrix().norm();
        let d = res.d_matrix();
        self.residual("norm ‖S‖_F", norm);
        self.residual("input symplectic residual", s.residual());
        self.residual(
            "reconstruction residual ‖EDF - S‖_F",
            (res.reconstruct() - s.matrix()).norm(),
        );
        self.report_factor_residuals(&res.n, &d, res.k.matrix());
        self.residual("orthogonality residual (F)", res.k.orthogonality_residual());
        self.residual("effective bound", self.config.tol.bound(norm));
        self.values("d", &res.d);
        self.write_factor("E", Matrix::Real(res.n.clone()))?;
        self.write_factor("D", Matrix::Real(d))?;
        self.write_factor("F", Matrix::Real(res.k.matrix().clone()))
    }

    fn report_factor_residuals(&mut self, e: &RealMatrix, d: &RealMatrix, f: &RealMatrix) {
        use sympdec_core::symplectic::symplectic_residual;
        self.residual("symplectic residual (E)", symplectic_residual(e));
        self.residual("symplectic residual (D)", symplectic_residual(d));
        self.residual("symplectic residual (F)", symplectic_residual(f));
    }

    fn williamson(&mut self, input: &Matrix) -> Result<(), CliError> {
        let sigma = self.require_real(input)?;
        let res = williamson(&sigma, self.config.tol)?;
        let norm = sigma.norm();
        self.residual("norm ‖Σ‖_F", norm);
        self.residual(
            "reconstruction residual ‖STSᵀ - Σ‖_F",
            (res.reconstruct() - &sigma).norm(),
        );
        self.residual("symplectic residual (S)", res.s.residual());
        self.residual("effective bound", self.config.tol.bound(norm));
        self.values("delta", &res.delta);
        self.write_factor("S", Matrix::Real(res.s.matrix().clone()))?;
        self.write_factor("T", Matrix::Real(res.t()))
    }

    fn polar(&mut self, input: &Matrix) -> Result<(), CliError> {
        match input {
            Matrix::Real(a) => {
                let res = polar(a, self.config.tol)?;
                let n = a.nrows();
                self.residual("norm ‖A‖_F", a.norm());
                self.residual("reconstruction residual ‖PW - A‖_F", (&res.p * &res.w - a).norm());
                self.residual(
                    "unitarity residual ‖WᵀW - 1‖_F",
                    (res.w.transpose() * &res.w - RealMatrix::identity(n, n)).norm(),
                );
                self.residual(
                    "hermiticity residual ‖P - Pᵀ‖_F",
                    (&res.p - res.p.transpose()).norm(),
                );
                self.write_factor("P", Matrix::Real(res.p))?;
                self.write_factor("W", Matrix::Real(res.w))
            }
            Matrix::Complex(a) => {
                let res = polar(a, self.config.tol)?;
                let n = a.nrows();
                self.residual("norm ‖A‖_F", a.norm());
                self.residual("reconstruction residual ‖PW - A‖_F", (&res.p * &res.w - a).norm());
                self.residual(
                    "unitarity residual ‖W†W - 1‖_F",
                    (res.w.adjoint() * &res.w - ComplexMatrix::identity(n, n)).norm(),
                );
                self.residual(
                    "hermiticity residual ‖P - P†‖_F",
                    (&res.p - res.p.adjoint()).norm(),
                );
                self.write_factor("P", Matrix::Complex(res.p))?;
                self.write_factor("W", Matrix::Complex(res.w))
            }
        }
    }

    fn sympeig(&mut self, input: &Matrix) -> Result<(), CliError> {
        let sigma = self.require_real(input)?;
        let deltas = symplectic_eigenvalues(&sigma, self.config.tol)?;
        self.values("symplectic eigenvalues", &deltas);
        Ok(())
    }

    fn check(&mut self, input: &Matrix) -> Result<(), CliError> {
        let m = self.require_real(input)?;
        let check = is_symplectic(&m, self.config.tol);
        line!(
            self,
            "symplectic: {}, residual {:.3e} (bound {:.3e})",
            check.is_symplectic,
            check.residual,
            check.bound
        );
        if let Ok(conds) = check_block_conditions(&m) {
            for (name, value) in conds.named() {
                self.residual(&format!("block condition {name}"), value);
            }
            self.residual("determinant", m.clone().determinant());
        }
        if check.is_symplectic {
            Ok(())
        } else {
            Err(CliError::validation(format!(
                "not symplectic: residual {:.3e} exceeds {:.3e}",
                check.residual, check.bound
            )))
        }
    }

    fn random(&mut self) -> Result<(), CliError> {
        let cfg = self.config;
        if !(cfg.max_squeeze.is_finite() && cfg.max_squeeze >= 0.0) {
            return Err(CliError::usage("--max-squeeze must be a nonnegative number"));
        }
        let s = random_symplectic(cfg.modes, cfg.max_squeeze, cfg.seed)
            .map_err(|e| CliError::usage(e.to_string()))?;
        self.report = cfg.format.serialize(&Matrix::Real(s.into_matrix()));
        Ok(())
    }
}
