//! Command-line front end. [`run`] parses arguments, dispatches and returns a
//! deterministic [`CommandReport`]; the binary prints it and exits with its
//! status.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::artheory::{
    almost_split_ending_at, almost_split_starting_at, ar_pairing, confirm_counterexample, in_cl, in_cr,
    knit_ar_quiver, tau, tau_minus, verify_almost_split, AlmostSplitCertificate, KnitCaps, VerificationReport,
};
use crate::error::Error;
use crate::exactlin::{ExactMatrix, FieldSpec};
use crate::pathcat::PathLin;
use crate::quiver::{classify_duality, parse_quiver, DualityClass, Quiver};
use crate::rep::random::random_indecomposable;
use crate::rep::{
    decompose, ext1, hom, parse_representation, write_representation, Representation,
};

#[derive(Parser, Debug)]
#[command(name = "ar-duality", about = "Auslander-Reiten translates and almost split sequences for quiver representations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Ground field: a prime `p`, `F_p`, or `QQ`. Overrides the quiver file.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report as JSON to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and summarize a quiver file.
    Validate { quiver: PathBuf },
    /// Decide whether the quiver has Auslander-Reiten duality.
    Classify { quiver: PathBuf },
    /// List the paths from `a` to `b`.
    Paths { quiver: PathBuf, a: String, b: String },
    /// Dimension of Hom(a, b).
    Hom { quiver: PathBuf, a: PathBuf, b: PathBuf },
    /// Dimension of Ext¹(a, b).
    Ext { quiver: PathBuf, a: PathBuf, b: PathBuf },
    /// Split into indecomposable summands.
    Decompose { quiver: PathBuf, rep: PathBuf },
    /// Auslander-Reiten translate τ = D Tr.
    Tau { quiver: PathBuf, rep: PathBuf },
    /// Inverse translate τ⁻ = Tr D.
    TauMinus { quiver: PathBuf, rep: PathBuf },
    /// Membership in C_r and C_l with certificates.
    Membership { quiver: PathBuf, rep: PathBuf },
    /// Almost split sequence ending at the representation, verified.
    AssEnd { quiver: PathBuf, rep: PathBuf },
    /// Almost split sequence starting at the representation, verified.
    AssStart { quiver: PathBuf, rep: PathBuf },
    /// The pairing between stable Hom(L, τM) and Ext¹(M, L).
    Pair { quiver: PathBuf, m: PathBuf, l: PathBuf },
    /// Knit the Auslander-Reiten quiver of a finite quiver.
    ArQuiver {
        quiver: PathBuf,
        #[arg(long, default_value_t = 200)]
        max_modules: usize,
        #[arg(long, default_value_t = 64)]
        max_dim: usize,
        /// Write the DOT graph to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub field: String,
    pub result: Value,
    pub log: Vec<String>,
    pub exit_status: i32,
    /// Human-readable rendering, printed to stdout.
    #[serde(skip)]
    pub text: String,
}

impl CommandReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::DuplicateName(_)
        | Error::UnknownVertex(_)
        | Error::UnknownArrow(_)
        | Error::CyclicCore(_)
        | Error::Disconnected
        | Error::QuiverMismatch
        | Error::FieldMismatch
        | Error::Shape(_)
        | Error::InvalidCoordinates(_) => EXIT_INPUT,
        Error::NotInCr(_)
        | Error::NotInCl(_)
        | Error::IsProjective
        | Error::IsInjective
        | Error::NotIndecomposable(_)
        | Error::NotFiniteDimensional(_)
        | Error::FieldTooSmall { .. }
        | Error::EndpointMismatch(_) => EXIT_PRECONDITION,
        Error::Linalg(_) | Error::Undecided(_) | Error::NonExact(_) | Error::Internal(_) => EXIT_INTERNAL,
    }
}

fn error_payload(e: &Error) -> Value {
    let mut v = json!({ "error": e.to_string() });
    match e {
        Error::NotInCr(c) | Error::NotInCl(c) => {
            v["certificate"] = serde_json::to_value(c.as_ref()).expect("certificate serializes");
        }
        Error::Parse { line, column, .. } => {
            v["line"] = json!(line);
            v["column"] = json!(column);
        }
        _ => {}
    }
    v
}

struct Failure {
    code: i32,
    message: String,
    payload: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
            payload: error_payload(&e),
        }
    }
}

fn io_failure(path: &PathBuf, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
        payload: json!({ "error": format!("{}: {e}", path.display()) }),
    }
}

type Outcome = std::result::Result<(Value, String), Failure>;

struct Ctx {
    field: Option<FieldSpec>,
    seed: u64,
    log: Vec<String>,
    used_field: Option<FieldSpec>,
    files: Vec<(PathBuf, String)>,
}

impl Ctx {
    fn read(&self, path: &PathBuf) -> std::result::Result<String, Failure> {
        fs::read_to_string(path).map_err(|e| io_failure(path, e))
    }

    fn quiver(&mut self, path: &PathBuf) -> std::result::Result<Arc<Quiver>, Failure> {
        let mut q = parse_quiver(&self.read(path)?)?;
        if let Some(f) = self.field {
            q = q.with_field(f);
        }
        self.used_field = Some(q.field());
        Ok(Arc::new(q))
    }

    fn rep(&self, q: &Arc<Quiver>, path: &PathBuf) -> std::result::Result<Representation, Failure> {
        Ok(parse_representation(q, &self.read(path)?)?)
    }
}

fn rep_json(m: &Representation) -> Value {
    json!({
        "summary": m.summary(),
        "finite_dimensional": m.is_finite_dimensional(),
        "representation": write_representation(m),
    })
}

fn matrix_json(m: &ExactMatrix) -> Value {
    let f = m.field();
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| f.format(m.get(i, j))).collect())
        .collect();
    json!(rows)
}

/// Probe set for verification: every knitted indecomposable over a finite
/// representation-finite quiver; otherwise simples, indecomposable
/// projectives and seeded random indecomposables in the window.
pub fn probe_set(q: &Arc<Quiver>, depth: u32, seed: u64) -> crate::Result<(Vec<Representation>, bool)> {
    if q.is_finite() {
        let caps = KnitCaps {
            max_modules: 60,
            max_dim: 32,
        };
        let ar = knit_ar_quiver(q, caps, seed)?;
        if !ar.truncated {
            return Ok((ar.modules(), true));
        }
    }
    let mut probes = Vec::new();
    for v in q.window_vertices(depth) {
        probes.push(Representation::simple(q.clone(), v)?);
        probes.push(Representation::projective(q.clone(), &[v], depth)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = vec![2; q.window_size(depth)];
    for _ in 0..10 {
        if let Some(m) = random_indecomposable(q, &max, depth, &mut rng)? {
            probes.push(m);
        }
    }
    Ok((probes, false))
}

fn almost_split_report(
    ctx: &mut Ctx,
    q: &Arc<Quiver>,
    cert: &AlmostSplitCertificate,
) -> Outcome {
    let depth = cert.delta.depth();
    let (probes, complete) = probe_set(q, depth, ctx.seed)?;
    let report: VerificationReport = verify_almost_split(&cert.delta, &probes, ctx.seed)?;
    ctx.log.extend(cert.checks.iter().cloned());
    ctx.log.push(format!(
        "verification against {} probes ({}): {} morphisms checked, {}",
        report.probes,
        if complete { "complete" } else { "probabilistic" },
        report.morphisms_checked,
        if report.passed() { "passed" } else { "FAILED" }
    ));
    let f = cert.ext.m.field();
    let middle = decompose(&cert.delta.e, ctx.seed)?.grouped()?;
    let middle_json: Vec<Value> = middle
        .iter()
        .map(|(m, k)| json!({ "multiplicity": k, "module": rep_json(m) }))
        .collect();
    let text = format!(
        "0 -> {} -> {} -> {} -> 0\nmiddle term: {}\nverification: {}",
        cert.delta.x.summary(),
        cert.delta.e.summary(),
        cert.delta.y.summary(),
        middle
            .iter()
            .map(|(m, k)| if *k == 1 { format!("{}", m.summary()) } else { format!("{}^{k}", m.summary()) })
            .collect::<Vec<_>>()
            .join(" + "),
        if report.passed() { "passed" } else { "failed" }
    );
    let failure = report.failure.as_ref().map(|fl| {
        json!({
            "condition": fl.condition,
            "probe": fl.probe,
            "witness": fl.witness.as_ref().map(|w| w.maps().iter().map(matrix_json).collect::<Vec<_>>()),
        })
    });
    let value = json!({
        "start": rep_json(&cert.delta.x),
        "middle": middle_json,
        "end": rep_json(&cert.delta.y),
        "class": cert.coords.iter().map(|c| f.format(c)).collect::<Vec<_>>(),
        "gamma": cert.gamma.as_ref().map(|g| g.iter().map(|c| f.format(c)).collect::<Vec<_>>()),
        "radical_dim": cert.radical_basis.len(),
        "verification": {
            "passed": report.passed(),
            "complete": complete,
            "probes": report.probes,
            "morphisms_checked": report.morphisms_checked,
            "failure": failure,
        },
    });
    if !report.passed() {
        return Err(Failure {
            code: EXIT_INTERNAL,
            message: format!("{text}\nalmost split verification failed"),
            payload: value,
        });
    }
    Ok((value, text))
}

fn dispatch(ctx: &mut Ctx, cmd: &Command) -> Outcome {
    match cmd {
        Command::Validate { quiver } => {
            let q = ctx.quiver(quiver)?;
            let text = format!(
                "valid quiver: {} core vertices, {} arrows, {} rays, field {}",
                q.num_core(),
                q.core_arrows().len(),
                q.rays().len(),
                q.field()
            );
            Ok((
                json!({
                    "vertices": q.core_vertices(),
                    "arrows": q.core_arrows().len(),
                    "rays": q.rays().iter().map(|r| json!({"name": r.name, "direction": format!("{:?}", r.direction)})).collect::<Vec<_>>(),
                    "finite": q.is_finite(),
                    "text": q.to_text(),
                }),
                text,
            ))
        }
        Command::Classify { quiver } => {
            let q = ctx.quiver(quiver)?;
            let class = classify_duality(&q)?;
            match &class {
                DualityClass::HasARDuality => Ok((json!({ "class": "HasARDuality" }), "HasARDuality".into())),
                DualityClass::LacksARDuality(w) => {
                    let cert = confirm_counterexample(&q, &w.counterexample, ctx.seed)?;
                    ctx.log.push(format!(
                        "counterexample {}: {cert}",
                        if cert.verdict { "not confirmed" } else { "confirmed" }
                    ));
                    Ok((
                        json!({
                            "class": "LacksARDuality",
                            "reason": w.reason,
                            "profile": w.profile,
                            "counterexample": w.counterexample,
                            "confirmation": cert,
                        }),
                        format!("LacksARDuality: {}", w.reason),
                    ))
                }
            }
        }
        Command::Paths { quiver, a, b } => {
            let q = ctx.quiver(quiver)?;
            let (va, vb) = (q.vertex(a)?, q.vertex(b)?);
            let paths: Vec<String> = q
                .paths_between(va, vb)?
                .into_iter()
                .map(|p| PathLin::from_path(q.field(), p).format(&q))
                .collect();
            let text = format!("{} path(s) {a} -> {b}\n{}", paths.len(), paths.join("\n"));
            Ok((json!({ "paths": paths }), text.trim_end().into()))
        }
        Command::Hom { quiver, a, b } => {
            let q = ctx.quiver(quiver)?;
            let (ma, mb) = (ctx.rep(&q, a)?, ctx.rep(&q, b)?);
            let h = hom(&ma, &mb)?;
            let basis: Vec<Value> = h
                .basis
                .iter()
                .map(|f| json!(f.maps().iter().map(matrix_json).collect::<Vec<_>>()))
                .collect();
            Ok((json!({ "dim": h.dim(), "basis": basis }), format!("dim Hom = {}", h.dim())))
        }
        Command::Ext { quiver, a, b } => {
            let q = ctx.quiver(quiver)?;
            let (ma, mb) = (ctx.rep(&q, a)?, ctx.rep(&q, b)?);
            let e = ext1(&ma, &mb)?;
            Ok((
                json!({ "dim": e.dim(), "representatives": matrix_json(e.representatives()) }),
                format!("dim Ext¹ = {}", e.dim()),
            ))
        }
        Command::Decompose { quiver, rep } => {
            let q = ctx.quiver(quiver)?;
            let m = ctx.rep(&q, rep)?;
            let grouped = decompose(&m, ctx.seed)?.grouped()?;
            let text = grouped
                .iter()
                .map(|(s, k)| format!("{k} x {}", s.summary()))
                .collect::<Vec<_>>()
                .join("\n");
            let parts: Vec<Value> = grouped
                .iter()
                .map(|(s, k)| json!({ "multiplicity": k, "module": rep_json(s) }))
                .collect();
            Ok((json!({ "summands": parts }), text))
        }
        Command::Tau { quiver, rep } => {
            let q = ctx.quiver(quiver)?;
            let t = tau(&ctx.rep(&q, rep)?)?;
            Ok((rep_json(&t), format!("τ = {}", t.summary())))
        }
        Command::TauMinus { quiver, rep } => {
            let q = ctx.quiver(quiver)?;
            let t = tau_minus(&ctx.rep(&q, rep)?, ctx.seed)?;
            Ok((rep_json(&t), format!("τ⁻ = {}", t.summary())))
        }
        Command::Membership { quiver, rep } => {
            let q = ctx.quiver(quiver)?;
            let m = ctx.rep(&q, rep)?;
            let cr = in_cr(&m)?;
            let cl = in_cl(&m, ctx.seed)?;
            ctx.log.push(cl.criterion.clone());
            Ok((json!({ "C_r": cr, "C_l": cl }), format!("{cr}\n{cl}")))
        }
        Command::AssEnd { quiver, rep } => {
            let q = ctx.quiver(quiver)?;
            let cert = almost_split_ending_at(&ctx.rep(&q, rep)?, ctx.seed)?;
            almost_split_report(ctx, &q, &cert)
        }
        Command::AssStart { quiver, rep } => {
            let q = ctx.quiver(quiver)?;
            let cert = almost_split_starting_at(&ctx.rep(&q, rep)?, ctx.seed)?;
            almost_split_report(ctx, &q, &cert)
        }
        Command::Pair { quiver, m, l } => {
            let q = ctx.quiver(quiver)?;
            let (mm, ml) = (ctx.rep(&q, m)?, ctx.rep(&q, l)?);
            let p = ar_pairing(&mm, &ml, ctx.seed)?;
            let nondeg = p.is_nondegenerate();
            Ok((
                json!({
                    "stable_hom_dim": p.stable.dim(),
                    "ext_dim": p.ext.dim(),
                    "matrix": matrix_json(&p.matrix),
                    "nondegenerate": nondeg,
                }),
                format!(
                    "pairing {}x{}, {}\n{}",
                    p.matrix.rows(),
                    p.matrix.cols(),
                    if nondeg { "nondegenerate" } else { "degenerate" },
                    p.matrix
                ),
            ))
        }
        Command::ArQuiver {
            quiver,
            max_modules,
            max_dim,
            dot,
        } => {
            let q = ctx.quiver(quiver)?;
            let caps = KnitCaps {
                max_modules: *max_modules,
                max_dim: *max_dim,
            };
            let ar = knit_ar_quiver(&q, caps, ctx.seed)?;
            if ar.truncated {
                ctx.log.push("truncated at caps; the graph is partial".into());
            }
            let dot_text = ar.to_dot();
            if let Some(path) = dot {
                ctx.files.push((path.clone(), dot_text.clone()));
            }
            let text = format!(
                "{} indecomposables, {} irreducible arrows, {} meshes{}",
                ar.vertices.len(),
                ar.arrows.len(),
                ar.meshes.len(),
                if ar.truncated { " (truncated)" } else { "" }
            );
            Ok((serde_json::to_value(&ar).expect("AR quiver serializes"), text))
        }
    }
}

/// Runs one command. `argv[0]` is the program name. Output files are only
/// written once the command has succeeded or produced a precondition
/// certificate.
pub fn run<I, T>(argv: I) -> CommandReport
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return CommandReport {
                command: echo,
                seed: 0,
                field: String::new(),
                result: Value::Null,
                log: Vec::new(),
                exit_status: code,
                text: e.to_string(),
            };
        }
    };
    let mut report = CommandReport {
        command: echo,
        seed: cli.global.seed,
        field: String::new(),
        result: Value::Null,
        log: Vec::new(),
        exit_status: EXIT_OK,
        text: String::new(),
    };
    let field = match cli.global.field.as_deref().map(str::parse::<FieldSpec>) {
        None => None,
        Some(Ok(f)) => Some(f),
        Some(Err(e)) => {
            report.exit_status = EXIT_INPUT;
            report.text = format!("error: --field: {e}");
            report.result = json!({ "error": report.text });
            return report;
        }
    };
    let mut ctx = Ctx {
        field,
        seed: cli.global.seed,
        log: Vec::new(),
        used_field: None,
        files: Vec::new(),
    };
    match dispatch(&mut ctx, &cli.command) {
        Ok((value, text)) => {
            report.result = value;
            report.text = text;
        }
        Err(f) => {
            report.exit_status = f.code;
            report.result = f.payload;
            report.text = format!("error: {}", f.message);
            ctx.files.clear();
        }
    }
    report.field = ctx
        .used_field
        .or(ctx.field)
        .unwrap_or_default()
        .to_string();
    report.log = ctx.log;
    if report.exit_status != EXIT_INPUT {
        if let Some(path) = &cli.global.json {
            ctx.files.push((path.clone(), report.to_json() + "\n"));
        }
        for (path, contents) in &ctx.files {
            if let Err(e) = fs::write(path, contents) {
                report.exit_status = EXIT_INPUT;
                report.text = format!("error: {}: {e}", path.display());
                break;
            }
        }
    }
    report
}
