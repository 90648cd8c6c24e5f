use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kml_core::{hilbert_class, k0_class, smith_normal_form, Ring};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use kml::formats::{self, matrix_json, module_json, AffineDoc, AffineInput, CubeDoc, GradedDoc, InputError, MatrixDoc};
use kml::report::{Check, Report, Verdict};
use kml::suites::{self, Options};

#[derive(Parser)]
#[command(name = "kml")]
#[command(about = "Exact verification of K-theoretic identities for graded and nilpotent module categories")]
#[command(version)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Args)]
struct Common {
    /// Write the JSON report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Truncation degree or verification window (suite-specific default)
    #[arg(long, global = true)]
    truncation: Option<usize>,

    /// Coefficient ring: Z, Q or Fp:<p>
    #[arg(long, global = true, value_parser = parse_base)]
    base: Option<Ring>,

    /// Number of random instances (suite-specific default)
    #[arg(long, global = true)]
    count: Option<usize>,

    /// Exit 0 even when some checks end without a verdict
    #[arg(long, global = true, default_value_t = false)]
    allow_non_verdict: bool,

    /// Record wall-clock time per check (makes reports non-reproducible)
    #[arg(long, global = true, default_value_t = false)]
    timings: bool,

    /// Suppress the per-check summary lines
    #[arg(long, short, global = true, default_value_t = false)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Commands {
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Compute an invariant of an object given as a JSON document
    Compute {
        #[command(subcommand)]
        what: Computation,
    },
    #[command(hide = true)]
    Homology {
        #[arg(long)]
        cube: PathBuf,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Free rank n+1 of the (1-s)^{n+1} cokernel and its class basis
    Pn {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Constructive splitting of multiplication by (1-t)^{n+1} on x[t]
    Split {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// class(T_0(x[t])) = (1-s) class(x) for Nil objects
    OneMinusS {
        /// Graded-module document; random Nil objects when absent
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Adams operations on Koszul classes and their composition law
    Adams {
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Abstract Artin-Rees index of a subobject
    ArtinRees {
        /// Affine-object document with `sub`
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Agreement of the two stability criteria for f-filtrations
    Stability {
        /// Affine-object document with `filtration`
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Finite filtrations with quotients killed by a nilpotent family
    Devissage {
        /// Affine-object document
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Koszul sphericity, K_0 additivity and twists, and b after a
    Grf1,
    /// Total complexes and directional homology of random cubes
    Cube,
    /// Smith decompositions of random integer matrices
    Smith,
    /// Every suite at its default parameters
    All,
}

#[derive(Subcommand)]
enum Computation {
    /// Homology of the total complex of a cube
    Homology {
        #[arg(long)]
        cube: PathBuf,
    },
    /// Koszul homology T_i(x)_d of a graded module
    Koszul {
        #[arg(long)]
        input: PathBuf,
    },
    /// Class of a graded module in the truncated K_0
    K0Class {
        #[arg(long)]
        input: PathBuf,
    },
    /// Smith normal form of a matrix literal
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
}

fn parse_base(s: &str) -> Result<Ring, String> {
    formats::parse_ring(s, None)
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::new(path.display().to_string(), e.to_string()))?;
    formats::parse(&text).map_err(|e| InputError::new(format!("{}: {}", path.display(), e.path), e.message))
}

fn load_affine(path: &Option<PathBuf>, base: Option<Ring>) -> Result<Option<AffineInput>, InputError> {
    path.as_ref()
        .map(|p| load::<AffineDoc>(p)?.build(base).map_err(|e| in_file(p, e)))
        .transpose()
}

fn in_file(path: &Path, e: InputError) -> InputError {
    InputError::new(format!("{}: {}", path.display(), e.path), e.message)
}

fn options(common: &Common) -> Options {
    Options {
        seed: common.seed,
        base: common.base.unwrap_or(Ring::Integers),
        truncation: common.truncation,
        count: common.count,
        timings: common.timings,
    }
}

fn verify(common: &Common, suite: &Suite) -> Result<Report, InputError> {
    let opts = options(common);
    let (name, checks) = match suite {
        Suite::Pn { n } => ("pn", suites::pn(&opts, *n)?),
        Suite::Split { dim, n } => ("split", suites::split(&opts, *dim, *n)?),
        Suite::OneMinusS { input } => {
            let x = input
                .as_ref()
                .map(|p| load::<GradedDoc>(p)?.build(common.base).map_err(|e| in_file(p, e)))
                .transpose()?;
            ("one-minus-s", suites::one_minus_s(&opts, x.as_ref())?)
        }
        Suite::Adams { p, k } => ("adams", suites::adams(&opts, *p, *k)?),
        Suite::ArtinRees { input } => {
            let inp = load_affine(input, common.base)?;
            ("artin-rees", suites::artin_rees(&opts, inp.as_ref())?)
        }
        Suite::Stability { input } => {
            let inp = load_affine(input, common.base)?;
            ("stability", suites::stability(&opts, inp.as_ref())?)
        }
        Suite::Devissage { input } => {
            let inp = load_affine(input, common.base)?;
            ("devissage", suites::devissage(&opts, inp.as_ref())?)
        }
        Suite::Grf1 => ("grf1", suites::grf1(&opts)?),
        Suite::Cube => ("cube", suites::cube(&opts)?),
        Suite::Smith => ("smith", suites::smith(&opts)?),
        Suite::All => ("all", suites::all(&opts)?),
    };
    Ok(Report::new(name, Some(common.seed), checks))
}

fn homology(common: &Common, path: &Path) -> Result<Report, InputError> {
    let cube = load::<CubeDoc>(path)?.build(common.base).map_err(|e| in_file(path, e))?;
    let report = cube.validate();
    if !report.is_valid() {
        let mut problems: Vec<String> = report
            .non_commuting
            .iter()
            .map(|sq| {
                format!(
                    "square at {} in directions {} and {} does not commute",
                    cube.subset_label(sq.subset),
                    cube.directions()[sq.first],
                    cube.directions()[sq.second]
                )
            })
            .collect();
        problems.extend(report.ill_defined.iter().map(|&(t, dir)| {
            format!(
                "boundary at {} in direction {} does not respect relations",
                cube.subset_label(t),
                cube.directions()[dir]
            )
        }));
        return Err(InputError::new(format!("{}: boundaries", path.display()), problems.join("; ")));
    }
    let tot = cube.total_complex().map_err(|e| InputError::new(path.display().to_string(), e.to_string()))?;
    let groups: Vec<Value> = (0..=tot.top_degree())
        .map(|k| {
            let mut v = module_json(&tot.homology(k));
            v["degree"] = json!(k);
            v
        })
        .collect();
    let witness = json!({ "homology": groups, "euler_characteristic": tot.euler_characteristic() });
    let params = json!({ "directions": cube.directions(), "base": cube.ring().to_string() });
    let check = Check::new("homology", params, None, Verdict::Pass, witness);
    Ok(Report::new("compute homology", None, vec![check]))
}

fn compute(common: &Common, what: &Computation) -> Result<Report, InputError> {
    let graded = |path: &Path| -> Result<kml_core::GradedModule, InputError> {
        let x = load::<GradedDoc>(path)?.build(common.base).map_err(|e| in_file(path, e))?;
        match common.truncation {
            Some(t) => x.truncate(t).map_err(|e| InputError::new("--truncation", e.to_string())),
            None => Ok(x),
        }
    };
    let internal = |e: kml_core::error::Error| InputError::new("", e.to_string());
    let check = match what {
        Computation::Homology { cube } => return homology(common, cube),
        Computation::Koszul { input } => {
            let x = graded(input)?;
            let kh = x.koszul_homology().map_err(internal)?;
            let groups: Vec<Vec<Value>> = kh.groups.iter().map(|row| row.iter().map(module_json).collect()).collect();
            let witness = json!({
                "groups": groups,
                "t_regular": kh.is_regular(),
                "first_irregularity": kh.first_irregularity(),
            });
            Check::new("koszul", json!({ "vars": x.vars(), "truncation": x.truncation() }), Some(kh.window), Verdict::Pass, witness)
        }
        Computation::K0Class { input } => {
            let x = graded(input)?;
            let class = k0_class(&x).map_err(internal)?;
            let oracle = hilbert_class(&x).map_err(internal)?;
            let witness = json!({
                "class": class.to_string(),
                "coefficients": class.coeffs(),
                "hilbert_class": oracle.to_string(),
            });
            let params = json!({ "vars": x.vars(), "truncation": x.truncation() });
            Check::judged("k0-class", params, Some(class.window()), class == oracle, witness)
        }
        Computation::Snf { matrix } => {
            let doc = load::<MatrixDoc>(matrix)?;
            let a = doc
                .build(common.base.unwrap_or(Ring::Integers), "")
                .map_err(|e| in_file(matrix, e))?;
            let s = smith_normal_form(&a).map_err(|e| in_file(matrix, internal(e)))?;
            let witness = json!({
                "diagonal": s.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "u": matrix_json(&s.u),
                "d": matrix_json(&s.d),
                "v": matrix_json(&s.v),
            });
            Check::new("snf", json!({ "rows": a.rows(), "cols": a.cols() }), None, Verdict::Pass, witness)
        }
    };
    let name = match what {
        Computation::Homology { .. } => "compute homology",
        Computation::Koszul { .. } => "compute koszul",
        Computation::K0Class { .. } => "compute k0-class",
        Computation::Snf { .. } => "compute snf",
    };
    Ok(Report::new(name, None, vec![check]))
}

/// One line per check, with the most telling part of its witness.
fn headline(c: &Check) -> String {
    let verdict = match c.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::NonVerdict => "non-verdict",
    };
    let w = &c.witness;
    let detail = if let Some(f) = w.get("factorization") {
        format!("{}; cofactor(1,...,1) = {}", f.as_str().unwrap_or_default(), w["cofactor_at_one"].as_str().unwrap_or_default())
    } else if let Some(r) = w.get("cokernel_rank") {
        format!("cokernel rank {r}")
    } else if let Some(e) = w.get("error").or_else(|| w.get("reason")) {
        e.as_str().unwrap_or_default().to_string()
    } else if let Some(n0) = w.get("n0") {
        format!("n0 = {n0}")
    } else {
        String::new()
    };
    if detail.is_empty() {
        format!("{verdict:<11} {}", c.id)
    } else {
        format!("{verdict:<11} {}  {detail}", c.id)
    }
}

fn emit(common: &Common, report: &Report) -> std::io::Result<()> {
    let text = report.to_json();
    let lines = !common.quiet;
    match &common.out {
        Some(path) => {
            fs::write(path, &text)?;
            if lines {
                let mut out = std::io::stdout().lock();
                for c in &report.checks {
                    writeln!(out, "{}", headline(c))?;
                }
                let s = &report.summary;
                writeln!(out, "{} pass, {} fail, {} non-verdict", s.pass, s.fail, s.non_verdict)?;
            }
        }
        None => {
            if lines {
                let mut err = std::io::stderr().lock();
                for c in &report.checks {
                    writeln!(err, "{}", headline(c))?;
                }
            }
            std::io::stdout().lock().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Commands::Verify { suite } => verify(&cli.common, suite),
        Commands::Compute { what } => compute(&cli.common, what),
        Commands::Homology { cube } => homology(&cli.common, cube),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli.common, &report) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code(cli.common.allow_non_verdict))
}
