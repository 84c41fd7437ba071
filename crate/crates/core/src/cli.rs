//! Batch front end: one JSON report on standard output, predicate-style exit codes.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 internal
//! consistency failure.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::arrangement::{
    build_cell_complex, decomposition_prediction, even_multiplicity_blowups, quotient_invariants,
    sign_regions, special_class, split_curve_bus_certificate, ArrangementError, Certification,
    CertifyError, LineArrangement,
};
use crate::ledger::{
    bus_normal_form, is_bus_trivial, repair_path, run_path_with, sw_vanishes, LedgerError,
    PathFile, RunOptions,
};
use crate::plumbing::{
    boundary_is_s3, determinant, intersection_matrix, is_negative_definite, reduce, BoundaryClass,
};
use crate::resolution::RealPlumbingGraph;
use crate::sf::{is_sf, quotient_space_homotopy, SfError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "realquot",
    version,
    about = "Conjugation quotients of real surfaces: singularities, plumbing, ledgers, double planes"
)]
struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a real singularity is smoothly folding.
    Sfcheck { file: PathBuf },
    #[command(subcommand)]
    Plumb(PlumbCommand),
    #[command(subcommand)]
    Deform(DeformCommand),
    #[command(subcommand)]
    Arrange(ArrangeCommand),
    /// Quotient ledger of a standard double plane of degree 2k.
    Doubleplane(DoubleplaneArgs),
    /// Seiberg-Witten vanishing from the two geometric genera.
    Swvanish {
        #[arg(long = "pg-res")]
        pg_res: u64,
        #[arg(long = "pg-prime")]
        pg_prime: u64,
    },
    /// BUS-triviality certificate for a split branch curve B ∪ C.
    Certify(CertifyArgs),
}

#[derive(Subcommand, Debug)]
enum PlumbCommand {
    Matrix { file: PathBuf },
    Definite { file: PathBuf },
    Reduce { file: PathBuf },
    Boundary { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum DeformCommand {
    Run {
        file: PathBuf,
        /// Keep counting nodes after a dot-like node instead of stopping.
        #[arg(long)]
        allow_untracked: bool,
    },
    Repair {
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ArrangeCommand {
    Analyze {
        file: PathBuf,
        #[arg(long)]
        perturbed: bool,
        #[arg(long, conflicts_with = "nonorientable")]
        orientable: bool,
        #[arg(long)]
        nonorientable: bool,
    },
}

#[derive(Args, Debug)]
struct DoubleplaneArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
    k: u32,
    #[arg(long, conflicts_with = "almost_pencil")]
    pencil: bool,
    #[arg(long)]
    almost_pencil: bool,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long = "deg-b")]
    deg_b: u32,
    #[arg(long = "deg-c")]
    deg_c: u32,
    #[arg(long)]
    rb0: bool,
    #[arg(long)]
    rc0: bool,
    #[arg(long)]
    rb1: bool,
    #[arg(long)]
    rc1: bool,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    digest: String,
    body: Map<String, Value>,
    warnings: Vec<String>,
}

impl Report {
    fn new(command: &'static str, digest: String) -> Report {
        Report {
            command,
            digest,
            body: Map::new(),
            warnings: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: impl serde::Serialize) {
        let v = serde_json::to_value(value)
            .unwrap_or_else(|e| json!({ "serialization_error": e.to_string() }));
        self.body.insert(key.to_string(), v);
    }

    fn render(mut self, pretty: bool) -> String {
        self.body.insert("command".into(), json!(self.command));
        self.body.insert("input_digest".into(), json!(self.digest));
        self.body.insert("warnings".into(), json!(self.warnings));
        let v = Value::Object(self.body);
        let mut s = if pretty {
            serde_json::to_string_pretty(&v)
        } else {
            serde_json::to_string(&v)
        }
        .expect("a JSON value always serializes");
        s.push('\n');
        s
    }
}

/// Input error with an optional file location.
struct InputError {
    message: String,
    location: Value,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read(path: &Path) -> Result<(Vec<u8>, String), InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError {
        message: format!("cannot read {}: {e}", path.display()),
        location: json!({ "file": path.display().to_string() }),
    })?;
    let d = digest(&bytes);
    Ok((bytes, d))
}

fn parse<T: DeserializeOwned>(path: &Path, bytes: &[u8]) -> Result<T, InputError> {
    serde_json::from_slice(bytes).map_err(|e| InputError {
        message: format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()),
        location: json!({ "file": path.display().to_string(), "line": e.line(), "column": e.column() }),
    })
}

fn load<T: DeserializeOwned>(
    command: &'static str,
    path: &Path,
) -> Result<(T, Report), (InputError, Report)> {
    match read(path) {
        Ok((bytes, d)) => {
            let report = Report::new(command, d);
            match parse(path, &bytes) {
                Ok(v) => Ok((v, report)),
                Err(e) => Err((e, report)),
            }
        }
        Err(e) => Err((e, Report::new(command, digest(b"")))),
    }
}

fn input_failure(mut report: Report, e: InputError) -> (i32, Report) {
    report.set(
        "error",
        json!({ "kind": "input", "message": e.message, "location": e.location }),
    );
    (EXIT_INPUT, report)
}

fn failure(mut report: Report, code: i32, kind: &str, message: String) -> (i32, Report) {
    report.set("error", json!({ "kind": kind, "message": message }));
    (code, report)
}

/// Parse `args` (program name first) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (code, report) = dispatch(cli.command);
    let stderr = match report.body.get("error") {
        Some(Value::Object(e)) => format!(
            "error: {}\n",
            e.get("message").and_then(Value::as_str).unwrap_or("")
        ),
        _ => String::new(),
    };
    Outcome {
        code,
        stdout: report.render(cli.pretty),
        stderr,
    }
}

fn dispatch(command: Command) -> (i32, Report) {
    match command {
        Command::Sfcheck { file } => sfcheck(&file),
        Command::Plumb(p) => plumb(p),
        Command::Deform(DeformCommand::Run {
            file,
            allow_untracked,
        }) => deform_run(&file, allow_untracked),
        Command::Deform(DeformCommand::Repair { file }) => deform_repair(&file),
        Command::Arrange(ArrangeCommand::Analyze {
            file,
            perturbed,
            orientable,
            nonorientable,
        }) => {
            let orientation = if orientable {
                Some(true)
            } else if nonorientable {
                Some(false)
            } else {
                None
            };
            analyze(&file, perturbed, orientation)
        }
        Command::Doubleplane(a) => doubleplane(a),
        Command::Swvanish { pg_res, pg_prime } => {
            let mut r = Report::new(
                "swvanish",
                digest(format!("swvanish pg_res={pg_res} pg_prime={pg_prime}").as_bytes()),
            );
            let v = sw_vanishes(pg_res, pg_prime);
            r.set("pg_res", pg_res);
            r.set("pg_prime", pg_prime);
            r.set("sw_vanishes", v);
            (if v { EXIT_OK } else { EXIT_NEGATIVE }, r)
        }
        Command::Certify(a) => certify(a),
    }
}

fn sfcheck(file: &Path) -> (i32, Report) {
    let (g, mut r) = match load::<RealPlumbingGraph>("sfcheck", file) {
        Ok(x) => x,
        Err((e, r)) => return input_failure(r, e),
    };
    let verdict = match is_sf(&g) {
        Ok(v) => v,
        Err(SfError::Internal(m)) => return failure(r, EXIT_INTERNAL, "internal", m),
        Err(e) => {
            if let SfError::InvalidGraph(v) = &e {
                r.set("violations", v);
            }
            return failure(r, EXIT_INPUT, "input", e.to_string());
        }
    };
    let oracle = match quotient_space_homotopy(&g) {
        Ok(h) => h,
        Err(e) => return failure(r, EXIT_INTERNAL, "internal", e.to_string()),
    };
    r.set("verdict", verdict.verdict);
    r.set("reasons", &verdict.reasons);
    r.set("quotient_homotopy", &oracle);
    if oracle.contractible != verdict.is_sf() {
        return failure(
            r,
            EXIT_INTERNAL,
            "internal",
            "criterion and homotopy oracle disagree".into(),
        );
    }
    (
        if verdict.is_sf() {
            EXIT_OK
        } else {
            EXIT_NEGATIVE
        },
        r,
    )
}

fn plumb(p: PlumbCommand) -> (i32, Report) {
    let (name, file): (&'static str, &Path) = match &p {
        PlumbCommand::Matrix { file } => ("plumb matrix", file),
        PlumbCommand::Definite { file } => ("plumb definite", file),
        PlumbCommand::Reduce { file } => ("plumb reduce", file),
        PlumbCommand::Boundary { file } => ("plumb boundary", file),
    };
    let (g, mut r) = match load::<RealPlumbingGraph>(name, file) {
        Ok(x) => x,
        Err((e, r)) => return input_failure(r, e),
    };
    match p {
        PlumbCommand::Matrix { .. } => match intersection_matrix(&g) {
            Ok(m) => {
                r.set("matrix", &m);
                (EXIT_OK, r)
            }
            Err(e) => failure(r, EXIT_INPUT, "input", e.to_string()),
        },
        PlumbCommand::Definite { .. } => {
            let m = match intersection_matrix(&g) {
                Ok(m) => m,
                Err(e) => return failure(r, EXIT_INPUT, "input", e.to_string()),
            };
            let result =
                is_negative_definite(&m.entries).and_then(|d| Ok((d, determinant(&m.entries)?)));
            match result {
                Ok((definite, det)) => {
                    r.set("negative_definite", definite);
                    r.set("determinant", det.to_string());
                    (if definite { EXIT_OK } else { EXIT_NEGATIVE }, r)
                }
                Err(e) => failure(r, EXIT_INTERNAL, "internal", e.to_string()),
            }
        }
        PlumbCommand::Reduce { .. } => match reduce(&g) {
            Ok(reduced) => {
                r.set("reduced", &reduced);
                r.set("components", reduced.components.len());
                (EXIT_OK, r)
            }
            Err(e) => failure(r, EXIT_INPUT, "input", e.to_string()),
        },
        PlumbCommand::Boundary { .. } => {
            let class = boundary_is_s3(&g);
            let code = match &class {
                BoundaryClass::Sphere3 => EXIT_OK,
                BoundaryClass::NotSphere3(_) => EXIT_NEGATIVE,
                BoundaryClass::Indeterminate(why) => {
                    r.warnings
                        .push(format!("outside the recognition domain: {why}"));
                    EXIT_NEGATIVE
                }
            };
            r.set("boundary", &class);
            (code, r)
        }
    }
}

fn deform_run(file: &Path, allow_untracked: bool) -> (i32, Report) {
    let (path, mut r) = match load::<PathFile>("deform run", file) {
        Ok(x) => x,
        Err((e, r)) => return input_failure(r, e),
    };
    let options = RunOptions {
        continue_untracked: allow_untracked,
    };
    let run = match run_path_with(&path.initial, &path.events, options) {
        Ok(run) => run,
        Err(e) => {
            r.set("failed_event", e.index);
            return match e.error {
                LedgerError::TrackingLost => {
                    failure(r, EXIT_NEGATIVE, "tracking_lost", e.to_string())
                }
                _ => failure(r, EXIT_INPUT, "input", e.to_string()),
            };
        }
    };
    r.set("run", &run);
    match bus_normal_form(&run.final_ledger) {
        Ok(nf) => {
            let trivial = is_bus_trivial(&run.final_ledger).unwrap_or(false);
            r.set("normal_form", &nf);
            r.set("bus_trivial", trivial);
            (if trivial { EXIT_OK } else { EXIT_NEGATIVE }, r)
        }
        Err(_) => {
            r.set("normal_form", Value::Null);
            r.set("bus_trivial", Value::Null);
            r.warnings
                .push("BUS class untracked after a dot-like node".into());
            (EXIT_NEGATIVE, r)
        }
    }
}

fn deform_repair(file: &Path) -> (i32, Report) {
    let (path, mut r) = match load::<PathFile>("deform repair", file) {
        Ok(x) => x,
        Err((e, r)) => return input_failure(r, e),
    };
    match repair_path(&path.events) {
        Ok(events) => {
            r.set("repaired", true);
            r.set("events", &events);
            (EXIT_OK, r)
        }
        Err(c) => {
            r.set("repaired", false);
            r.set("cannot_repair", &c);
            (EXIT_NEGATIVE, r)
        }
    }
}

fn arrangement_failure(r: Report, e: ArrangementError) -> (i32, Report) {
    match e {
        ArrangementError::Internal(_) => failure(r, EXIT_INTERNAL, "internal", e.to_string()),
        ArrangementError::ModelInconsistency(_) => {
            failure(r, EXIT_INTERNAL, "model_inconsistency", e.to_string())
        }
        _ => failure(r, EXIT_INPUT, "input", e.to_string()),
    }
}

fn analyze(file: &Path, perturbed: bool, orientation: Option<bool>) -> (i32, Report) {
    let (a, mut r) = match load::<LineArrangement>("arrange analyze", file) {
        Ok(x) => x,
        Err((e, r)) => return input_failure(r, e),
    };
    let computed = (|| {
        let cells = build_cell_complex(&a)?;
        let signs = sign_regions(&a)?;
        let mut inv = quotient_invariants(&a, perturbed)?;
        if let Some(orientable) = orientation {
            inv.decomposition = decomposition_prediction(&inv, orientable)?;
        }
        Ok((
            cells,
            signs,
            inv,
            special_class(&a)?,
            even_multiplicity_blowups(&a)?,
        ))
    })();
    let (cells, signs, inv, special, blowups) = match computed {
        Ok(x) => x,
        Err(e) => return arrangement_failure(r, e),
    };
    if orientation.is_none() {
        r.warnings.push(
            "orientability of the branch surface not given; no decomposition predicted".into(),
        );
    } else if inv.pencil {
        r.warnings
            .push("pencil: no decomposition prediction, see special_class".into());
    }
    if inv.arnold.empty_region {
        r.warnings.push("the chosen region has no faces".into());
    }
    r.set("cells", json!({ "v": cells.v, "e": cells.e, "f": cells.f, "euler": cells.euler(), "points": cells.points }));
    r.set("signs", &signs);
    r.set("invariants", &inv);
    r.set("special_class", &special);
    r.set("even_multiplicity_blowups", &blowups);
    if !signs.alternating {
        return failure(
            r,
            EXIT_INTERNAL,
            "internal",
            "face signs do not alternate".into(),
        );
    }
    (EXIT_OK, r)
}

fn doubleplane(a: DoubleplaneArgs) -> (i32, Report) {
    let kind = if a.pencil {
        "pencil"
    } else if a.almost_pencil {
        "almost_pencil"
    } else {
        "generic"
    };
    let mut r = Report::new(
        "doubleplane",
        digest(format!("doubleplane k={} kind={kind}", a.k).as_bytes()),
    );
    let arrangement = match kind {
        "pencil" => LineArrangement::pencil(a.k),
        "almost_pencil" => LineArrangement::almost_pencil(a.k),
        _ => LineArrangement::generic(a.k),
    };
    let computed = (|| {
        let inv = quotient_invariants(&arrangement, false)?;
        let special = special_class(&arrangement)?;
        let ledger = match special.ledger() {
            Some(l) => l.clone(),
            None => crate::arrangement::generic_ledger(a.k)?,
        };
        Ok((inv, special, ledger))
    })();
    let (inv, special, ledger) = match computed {
        Ok(x) => x,
        Err(e) => return arrangement_failure(r, e),
    };
    r.set("k", a.k);
    r.set("arrangement", kind);
    r.set("special_class", &special);
    r.set("chi_xbar", inv.chi_xbar());
    r.set("b2_plus", inv.b2_plus);
    r.set("ledger", &ledger);
    if ledger.euler_characteristic() != Some(inv.chi_xbar()) {
        return failure(
            r,
            EXIT_INTERNAL,
            "internal",
            "ledger disagrees with the Euler characteristic".into(),
        );
    }
    let trivial = is_bus_trivial(&ledger).unwrap_or(false);
    r.set("bus_trivial", trivial);
    (if trivial { EXIT_OK } else { EXIT_NEGATIVE }, r)
}

fn certify(a: CertifyArgs) -> (i32, Report) {
    let canonical = format!(
        "certify deg_b={} deg_c={} rb0={} rc0={} rb1={} rc1={}",
        a.deg_b, a.deg_c, a.rb0, a.rc0, a.rb1, a.rc1
    );
    let mut r = Report::new("certify", digest(canonical.as_bytes()));
    match split_curve_bus_certificate(a.deg_b, a.deg_c, a.rb0, a.rc0, a.rb1, a.rc1) {
        Ok(c) => {
            let code = if c.is_certified() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            };
            r.set("certification", &c);
            if let Certification::Certified(cert) = &c {
                if !cert.sw_vanishing {
                    r.warnings
                        .push("Seiberg-Witten vanishing needs k > 3".into());
                }
            }
            (code, r)
        }
        Err(e @ CertifyError::InconsistentDegrees(_)) => {
            failure(r, EXIT_INPUT, "input", e.to_string())
        }
        Err(e) => failure(r, EXIT_INTERNAL, "internal", e.to_string()),
    }
}
