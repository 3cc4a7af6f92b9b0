use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use superlie::builders::{builtin, matrix_realization};
use superlie::covering::{
    build_projection, lift_universal, tower_support, verify_covering, CoveringCertificate, CoveringKind, Normalization,
};
use superlie::functors::{apply_functor, FunctorOutput, FunctorSpec};
use superlie::io::{self, AlgebraDocument, Bundle, Format, Input};
use superlie::{verify_axioms, AxiomReport, Error, GradedLieSuperalgebra};

#[derive(Parser)]
#[command(name = "superlie", version, about = "Graded Lie superalgebras over the rationals")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Takiff,
    Gr,
    Pi,
    Iota,
    #[value(name = "F")]
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Unit,
    InverseFactorial,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom; exit 0 iff all hold.
    Verify {
        /// File, `-` for standard input, or a builtin spec such as gl:1,1.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Apply a functor and print the resulting algebra.
    Functor {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        op: Op,
        /// Number of differentials (takiff, gr, pi, iota).
        #[arg(long)]
        k: Option<usize>,
        /// Top degree (F).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Build the tower output and its projection, and certify the covering.
    Cover {
        #[arg(default_value = "-")]
        input: String,
        /// Semicovering by F'_N with support {0..N}.
        #[arg(long, conflicts_with = "infinite_truncate", required_unless_present = "infinite_truncate")]
        n: Option<usize>,
        /// The infinite covering, truncated at degree T.
        #[arg(long)]
        infinite_truncate: Option<usize>,
        #[arg(long, value_enum, default_value_t = NormArg::InverseFactorial)]
        normalization: NormArg,
        /// Also write the covering as a bundle to this path.
        #[arg(long)]
        emit_bundle: Option<PathBuf>,
    },
    /// Lift a morphism through a covering.
    Lift {
        /// Bundle with one morphism into the base of the covering.
        #[arg(long)]
        psi: PathBuf,
        /// Bundle with one covering, as written by `cover --emit-bundle`.
        #[arg(long)]
        cover: PathBuf,
    },
    /// Print a built-in algebra: gl:M,N | glz:d0,d1,... | glzeven:d0,... | osp:P,2Q | abelian:E,O.
    Builtin { spec: String },
    /// Realize F'_D(gl(M|N)) by block matrices and check the realization.
    Matrix {
        spec: String,
        #[arg(long)]
        n: usize,
    },
}

/// An error with its exit code: 1 for failed verification, 2 for bad input.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::AxiomViolation(_) | Error::Consistency(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult<T> = Result<T, Failure>;

/// What a command prints and whether it passed.
struct Outcome {
    stdout: String,
    passed: bool,
}

fn read_source(input: &str) -> CliResult<String> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(Error::from)?;
        return Ok(s);
    }
    std::fs::read_to_string(input).map_err(|e| usage(format!("{input}: {e}")))
}

fn looks_like_builtin(input: &str) -> bool {
    input != "-" && !Path::new(input).exists() && input.contains(':')
}

/// Loads the base algebra without rejecting axiom failures.
fn load_algebra_unchecked(input: &str) -> CliResult<GradedLieSuperalgebra> {
    if looks_like_builtin(input) {
        return Ok(builtin(input)?);
    }
    let doc = io::parse_algebra_any(&read_source(input)?)?;
    Ok(io::load_unchecked(&doc)?)
}

fn load_algebra(input: &str) -> CliResult<GradedLieSuperalgebra> {
    let a = load_algebra_unchecked(input)?;
    let report = verify_axioms(&a);
    if !report.passed() {
        return Err(Failure {
            code: 1,
            message: format!("input algebra fails the axioms:\n{}", report.describe(&a, 10)),
        });
    }
    Ok(a)
}

fn write_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct NamedViolation {
    kind: &'static str,
    elements: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<String>,
}

fn named_violations(a: &GradedLieSuperalgebra, r: &AxiomReport) -> Vec<NamedViolation> {
    let name = |i: usize| a.basis_element(i).name.clone();
    let mut out = Vec::new();
    for v in &r.skew {
        out.push(NamedViolation {
            kind: "skew",
            elements: vec![name(v.first), name(v.second)],
            residual: Some(a.format_element(&v.residual)),
        });
    }
    for v in &r.jacobi {
        let (x, y, z) = v.triple;
        out.push(NamedViolation {
            kind: "jacobi",
            elements: vec![name(x), name(y), name(z)],
            residual: Some(a.format_element(&v.residual)),
        });
    }
    for v in &r.grading {
        out.push(NamedViolation {
            kind: "grading",
            elements: vec![name(v.pair.0), name(v.pair.1), name(v.target)],
            residual: None,
        });
    }
    for v in &r.parity {
        let elements = match v {
            superlie::axioms::ParityViolation::Bracket { pair, target } => {
                vec![name(pair.0), name(pair.1), name(*target)]
            }
            superlie::axioms::ParityViolation::Chi { element, .. } => vec![name(*element)],
        };
        out.push(NamedViolation { kind: "parity", elements, residual: None });
    }
    out
}

fn axiom_report(a: &GradedLieSuperalgebra, r: &AxiomReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = format!("algebra {} (dim {})\n", a.name(), a.dim());
            s.push_str(&r.describe(a, 20));
            let _ = writeln!(s, "result: {}", if r.passed() { "pass" } else { "FAIL" });
            s
        }
        Format::Json => write_json(&json!({
            "algebra": a.name(),
            "dim": a.dim(),
            "passed": r.passed(),
            "counts": {
                "skew": r.skew.len(),
                "jacobi": r.jacobi.len(),
                "grading": r.grading.len(),
                "parity": r.parity.len(),
            },
            "violations": named_violations(a, r),
        })),
    }
}

fn certificate_report(cert: &CoveringCertificate, normalization: NormArg, format: Format) -> String {
    let src = cert.projection.source();
    let tgt = cert.projection.target();
    let support: Vec<String> = cert.support_c.iter().map(ToString::to_string).collect();
    let norm = match normalization {
        NormArg::Unit => "unit",
        NormArg::InverseFactorial => "inverse-factorial",
    };
    match format {
        Format::Text => {
            let mut s = format!("covering of {} by {}\n", tgt.name(), src.name());
            let _ = writeln!(s, "kind: {}", cert.kind);
            let _ = writeln!(s, "normalization: {norm}");
            let _ = writeln!(s, "support: {{{}}}", support.join(", "));
            for c in &cert.checks {
                let _ = writeln!(s, "[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
            }
            let _ = writeln!(s, "result: {}", if cert.passed() { "pass" } else { "FAIL" });
            s
        }
        Format::Json => write_json(&json!({
            "source": src.name(),
            "target": tgt.name(),
            "kind": cert.kind.to_string(),
            "normalization": norm,
            "support": cert.support_c.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
            "checks": cert.checks,
            "passed": cert.passed(),
        })),
    }
}

fn functor_document(out: &FunctorOutput, format: Format) -> String {
    let doc = AlgebraDocument::from_functor_output(out);
    match format {
        Format::Text => {
            let chain: Vec<String> = out.chain.iter().map(ToString::to_string).collect();
            format!(
                "# {} over {} ({} differentials; chain {})\n{}",
                out.tag,
                out.base.name(),
                out.k,
                chain.join(" "),
                io::serialize_algebra(&doc)
            )
        }
        Format::Json => io::write_algebra(&doc, format),
    }
}

fn cmd_verify(input: &str, format: Format) -> CliResult<Outcome> {
    if !looks_like_builtin(input) {
        let src = read_source(input)?;
        if let Input::Bundle(b) = io::parse_input(&src)? {
            return verify_bundle(&b, format);
        }
        let a = io::load_unchecked(&io::parse_algebra_any(&src)?)?;
        let r = verify_axioms(&a);
        return Ok(Outcome { stdout: axiom_report(&a, &r, format), passed: r.passed() });
    }
    let a = builtin(input)?;
    let r = verify_axioms(&a);
    Ok(Outcome { stdout: axiom_report(&a, &r, format), passed: r.passed() })
}

fn verify_bundle(b: &Bundle, format: Format) -> CliResult<Outcome> {
    let mut stdout = String::new();
    let mut passed = true;
    for la in &b.algebras {
        let a = io::load_unchecked(&la.algebra)?;
        let r = verify_axioms(&a);
        passed &= r.passed();
        stdout.push_str(&axiom_report(&a, &r, format));
    }
    if passed {
        let resolved = b.resolve()?;
        for cert in resolved.coverings.values() {
            passed &= cert.passed();
            stdout.push_str(&certificate_report(cert, NormArg::InverseFactorial, format));
        }
    }
    Ok(Outcome { stdout, passed })
}

fn cmd_functor(input: &str, op: Op, k: Option<usize>, n: Option<usize>, format: Format) -> CliResult<Outcome> {
    let g = load_algebra(input)?;
    let need_k = || k.ok_or_else(|| usage(format!("--op {op:?} needs --k").to_lowercase()));
    if n.is_some() && !matches!(op, Op::F) {
        return Err(usage("--n applies only to --op F"));
    }
    let spec = match op {
        Op::Takiff => FunctorSpec::Takiff { k: need_k()? },
        Op::Gr => match k {
            None => FunctorSpec::Gr,
            Some(k) => FunctorSpec::GrTakiff { k },
        },
        Op::Pi => FunctorSpec::PiGrTakiff { k: need_k()? },
        Op::Iota => FunctorSpec::IotaPiGrTakiff { k: need_k()? },
        Op::F => {
            if k.is_some() {
                return Err(usage("--op F takes --n, not --k"));
            }
            FunctorSpec::Fn { n: n.ok_or_else(|| usage("--op F needs --n"))? }
        }
    };
    let out = apply_functor(&g, spec)?;
    let r = verify_axioms(&out.algebra);
    if !r.passed() {
        return Err(Failure {
            code: 1,
            message: format!("functor output fails the axioms:\n{}", r.describe(&out.algebra, 10)),
        });
    }
    Ok(Outcome { stdout: functor_document(&out, format), passed: true })
}

fn cmd_cover(
    input: &str,
    n: Option<usize>,
    truncate: Option<usize>,
    normalization: NormArg,
    emit: Option<&Path>,
    format: Format,
) -> CliResult<Outcome> {
    let g = load_algebra(input)?;
    let (top, kind) = match (n, truncate) {
        (Some(n), None) => (n, CoveringKind::Semicovering),
        (None, Some(t)) => (t, CoveringKind::Full { truncation: Some(t) }),
        _ => return Err(usage("give exactly one of --n and --infinite-truncate")),
    };
    let out = superlie::functors::f_prime_n(&g, top)?;
    let norm = match normalization {
        NormArg::Unit => Normalization::Unit,
        NormArg::InverseFactorial => Normalization::InverseFactorial,
    };
    let projection = build_projection(&out, norm)?;
    let cert = verify_covering(projection, tower_support(&g, top), kind);
    if let Some(path) = emit {
        let mut b = Bundle::default();
        b.add_covering("cover", &cert, "projection", "covering", "base")?;
        std::fs::write(path, io::write_bundle(&b, format)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(Outcome { stdout: certificate_report(&cert, normalization, format), passed: cert.passed() })
}

fn cmd_lift(psi: &Path, cover: &Path, format: Format) -> CliResult<Outcome> {
    let read = |p: &Path| -> CliResult<Bundle> {
        let s = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        Ok(io::parse_bundle_any(&s)?)
    };
    let psi_b = read(psi)?.resolve()?;
    let cover_b = read(cover)?.resolve()?;
    let f = psi_b.single_morphism()?;
    let cert = cover_b.single_covering()?;
    if !cert.passed() {
        return Err(Failure { code: 1, message: "the covering in the bundle does not pass verification".into() });
    }
    let lift = lift_universal(f, cert).map_err(|e| match e {
        Error::Domain(m) => Failure { code: 1, message: format!("cannot lift: {m}") },
        other => other.into(),
    })?;
    let mut b = Bundle::default();
    b.add_morphism("lift", &lift, "source", "covering")?;
    Ok(Outcome { stdout: io::write_bundle(&b, format), passed: true })
}

fn cmd_builtin(spec: &str, format: Format) -> CliResult<Outcome> {
    let a = builtin(spec)?;
    Ok(Outcome { stdout: io::write_algebra(&AlgebraDocument::from_algebra(&a), format), passed: true })
}

fn cmd_matrix(spec: &str, d: usize, format: Format) -> CliResult<Outcome> {
    let parsed: Option<Vec<usize>> =
        spec.strip_prefix("gl:").and_then(|r| r.split(',').map(|t| t.trim().parse().ok()).collect());
    let (m, n) = match parsed.as_deref() {
        Some(&[m, n]) => (m, n),
        _ => return Err(usage(format!("matrix needs gl:M,N, got `{spec}`"))),
    };
    let r = matrix_realization(m, n, d)?;
    let size = r.generators.first().map_or(0, |g| g.matrix.size());
    let blocks: Vec<String> =
        r.block_sizes.iter().map(|(s, p)| format!("{s}{}", if p.is_odd() { "-" } else { "+" })).collect();
    let stdout = match format {
        Format::Text => {
            let mut s = format!("realization of {} by {size}x{size} matrices\n", r.tower.algebra.name());
            let _ = writeln!(s, "blocks: {}", blocks.join(" "));
            for g in &r.generators {
                let _ = writeln!(s, "{} (degree {}):", g.name, g.degree);
                for row in g.matrix.entries.entries().chunks(size.max(1)) {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    let _ = writeln!(s, "  {}", cells.join(" "));
                }
            }
            let mark = |b: bool| if b { "pass" } else { "FAIL" };
            let _ =
                writeln!(s, "homomorphism: {} ({} pairs)", mark(r.homomorphism.passed()), r.homomorphism.pairs_checked);
            let _ = writeln!(s, "injective: {}", mark(r.injective));
            let _ = writeln!(s, "loop triangle: {}", mark(r.triangle_closes));
            let _ = writeln!(s, "result: {}", mark(r.passed()));
            s
        }
        Format::Json => {
            let gens: Vec<_> = r
                .generators
                .iter()
                .map(|g| {
                    let rows: Vec<Vec<String>> = g
                        .matrix
                        .entries
                        .entries()
                        .chunks(size.max(1))
                        .map(|row| row.iter().map(ToString::to_string).collect())
                        .collect();
                    json!({ "name": g.name, "degree": g.degree, "rows": rows })
                })
                .collect();
            write_json(&json!({
                "tower": r.tower.algebra.name(),
                "size": size,
                "blocks": blocks,
                "generators": gens,
                "homomorphism": r.homomorphism.passed(),
                "pairs_checked": r.homomorphism.pairs_checked,
                "injective": r.injective,
                "triangle_closes": r.triangle_closes,
                "passed": r.passed(),
            }))
        }
    };
    Ok(Outcome { stdout, passed: r.passed() })
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    match cli.command {
        Command::Verify { input } => cmd_verify(&input, format),
        Command::Functor { input, op, k, n } => cmd_functor(&input, op, k, n, format),
        Command::Cover { input, n, infinite_truncate, normalization, emit_bundle } => {
            cmd_cover(&input, n, infinite_truncate, normalization, emit_bundle.as_deref(), format)
        }
        Command::Lift { psi, cover } => cmd_lift(&psi, &cover, format),
        Command::Builtin { spec } => cmd_builtin(&spec, format),
        Command::Matrix { spec, n } => cmd_matrix(&spec, n, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("superlie: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
