use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use koszul_transfer::bielement::BiElement;
use koszul_transfer::report::Report;
use koszul_transfer::resolution::{build_la, comparison_map};
use koszul_transfer::serialize::{comparison_document, resolution_document};
use koszul_transfer::suites::{run_suite, Suite, SuiteConfig};
use koszul_transfer::{Error, Field, Fp, Rational};
use serde_json::{json, Value};

const EXIT_CONFIG: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_PARSE: u8 = 4;

/// Minimal free resolutions of powers of the maximal ideal with their DG
/// algebra structure, built and verified in exact arithmetic.
#[derive(Parser)]
#[command(name = "koszul-transfer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Power of the maximal ideal.
    #[arg(long)]
    a: usize,
    /// 0 for the rationals, or a prime.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build L_a and print it as JSON.
    Build(Common),
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        /// all, rows, sdr, dg, resolution, comparison or htt.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Source level of the comparison map f_{b,a}.
        #[arg(long)]
        b: Option<usize>,
        /// Also check f_{c,a} = f_{b,a} f_{c,b}.
        #[arg(long)]
        c: Option<usize>,
        /// Largest internal degree for strand and row checks.
        #[arg(long)]
        max_internal_degree: Option<u32>,
    },
    /// Multiply two elements of L_a.
    Multiply {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Comparison map f_{b,a}: L_b -> L_a (and f_{c,a} = f_{b,a} f_{c,b} with --c).
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Support(_) | Error::Inhomogeneous(_) | Error::VariableMismatch(..) => EXIT_PARSE,
            Error::InadmissibleCharacteristic { .. } | Error::InvalidConfig(_) => EXIT_CONFIG,
            _ => EXIT_VERIFY,
        };
        Failure { code, message: e.to_string() }
    }
}

/// JSON document and whether every check in it passed.
type Outcome = (Value, bool);

fn summarize(report: &Report) {
    for c in &report.checks {
        eprintln!("{}: {}", c.name, c.passed);
        for f in &c.failures {
            eprintln!("    {}", f);
        }
    }
}

fn run<F: Field>(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Build(common) => {
            let res = build_la::<F>(common.n, common.a)?;
            let mut comparisons = Vec::new();
            for lower in 1..common.a {
                let target = build_la::<F>(common.n, lower)?;
                comparisons.push(comparison_map(&res, &target)?);
            }
            eprintln!("built L_{} over {} variables: ranks {:?}", common.a, common.n, res.ranks());
            Ok((json!({ "command": "build", "resolution": resolution_document(&res, &comparisons) }), true))
        }
        Command::Verify { common, suite, b, c, max_internal_degree } => {
            let suite: Suite = suite.parse()?;
            let config = SuiteConfig { n: common.n, a: common.a, b: *b, c: *c, max_internal_degree: *max_internal_degree, seed: common.seed };
            let report = run_suite::<F>(suite, &config)?;
            summarize(&report);
            let passed = report.passed();
            let doc = json!({
                "command": "verify",
                "suite": suite,
                "config": config,
                "characteristic": F::characteristic(),
                "passed": passed,
                "checks": report.checks,
            });
            Ok((doc, passed))
        }
        Command::Multiply { common, alpha, beta } => {
            let parse = |text: &str| BiElement::<F>::parse(text, common.n);
            let (alpha, beta) = (parse(alpha)?, parse(beta)?);
            let res = build_la::<F>(common.n, common.a)?;
            let x = res.element_from_bi(&alpha)?;
            let y = res.element_from_bi(&beta)?;
            let product = res.multiply(&x, &y);
            let doc = json!({
                "command": "multiply",
                "n": common.n,
                "a": common.a,
                "characteristic": F::characteristic(),
                "alpha": res.display(&x),
                "beta": res.display(&y),
                "degree": product.degree,
                "product": res.display(&product),
                "representative": res.element_to_bi(&product).to_string(),
            });
            eprintln!("{}", res.display(&product));
            Ok((doc, true))
        }
        Command::Compare { common, b, c } => {
            let b = b.unwrap_or(common.a + 1);
            if b < common.a || c.is_some_and(|c| c < b) {
                return Err(Error::InvalidConfig("comparison levels need c >= b >= a".into()).into());
            }
            koszul_transfer::bicomplex::check_admissible::<F>(common.n, c.unwrap_or(b).max(common.a))?;
            let la = build_la::<F>(common.n, common.a)?;
            let lb = build_la::<F>(common.n, b)?;
            let f_ba = comparison_map(&lb, &la)?;
            let mut report = f_ba.verify(&lb, &la).prefixed(&format!("f_{{{},{}}}/", b, common.a));
            let mut maps = vec![comparison_document(&f_ba)];
            if let Some(c) = *c {
                let lc = build_la::<F>(common.n, c)?;
                let f_cb = comparison_map(&lc, &lb)?;
                let f_ca = comparison_map(&lc, &la)?;
                report.extend(f_cb.verify(&lc, &lb).prefixed(&format!("f_{{{},{}}}/", c, b)));
                report.extend(f_ca.verify(&lc, &la).prefixed(&format!("f_{{{},{}}}/", c, common.a)));
                report.push(f_ca.verify_composition(&f_ba, &f_cb));
                maps.push(comparison_document(&f_cb));
                maps.push(comparison_document(&f_ca));
            }
            summarize(&report);
            let passed = report.passed();
            let doc = json!({
                "command": "compare",
                "n": common.n,
                "characteristic": F::characteristic(),
                "maps": maps,
                "passed": passed,
                "checks": report.checks,
            });
            Ok((doc, passed))
        }
    }
}

macro_rules! dispatch {
    ($p:expr, $cmd:expr, [$($prime:literal),*]) => {
        match $p {
            0 => Some(run::<Rational>($cmd)),
            $($prime => Some(run::<Fp<$prime>>($cmd)),)*
            _ => None,
        }
    };
}

const SUPPORTED_PRIMES: &str = "3, 5, 7, 11, 13";

fn common(command: &Command) -> &Common {
    match command {
        Command::Build(c) => c,
        Command::Verify { common, .. } | Command::Multiply { common, .. } | Command::Compare { common, .. } => common,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = common(&cli.command);
    let outcome = dispatch!(
        common.characteristic,
        &cli.command,
        [3, 5, 7, 11, 13]
    );
    let result = match outcome {
        Some(r) => r,
        None => Err(Failure {
            code: EXIT_CONFIG,
            message: format!("characteristic {} is not 0 or a supported prime ({})", common.characteristic, SUPPORTED_PRIMES),
        }),
    };
    match result {
        Ok((doc, passed)) => {
            let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n";
            let written = match &common.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{}", text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {}", e);
                return ExitCode::from(EXIT_CONFIG);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
