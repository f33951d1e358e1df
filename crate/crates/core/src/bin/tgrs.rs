use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::io::{BufRead, Write};
use std::process::ExitCode;
use tgrs_core::codes::DEFAULT_DISTANCE_CAP;
use tgrs_core::report::{
    all_checks, certify_and_verify, run_sweep, verify_record, AlphaSelect, CertifyOptions, Check,
    EtaSelect, Family, InstanceSpec, ReportRecord, SweepConfig, VSelect, DEFAULT_ORACLE_LIMIT,
    REPORT_SCHEMA_VERSION,
};
use tgrs_core::{
    exhaustive_grs_oracle, oracle_candidate_count, tgrs_parity_check, Error, FieldCtx, Result,
    Verdict,
};

#[derive(Parser)]
#[command(name = "tgrs", version, about = "construct and certify twisted GRS codes over GF(p^m)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print generator (and for tgrs the parity-check) matrix of an instance
    Construct(InstanceArgs),
    /// Print a generator matrix of the dual code
    Dual(InstanceArgs),
    /// Print the Schur square of the dual and its dimension
    Schur(InstanceArgs),
    /// Exhaustive minimum distance with a work cap
    Mindist {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
        cap: u64,
    },
    /// Run the certifier cascade and emit a verdict record
    Certify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: u128,
        /// Comma-separated subset of: conditions,weight-one,square-dim,non-mds,oracle
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
    },
    /// Exhaustively search all GRS codes of the same (n, k) for an equal code
    Oracle {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: u128,
    },
    /// Certify every instance in a parameter grid, streaming JSON-lines records
    Sweep(SweepArgs),
    /// Re-verify certificates embedded in report records (file or stdin)
    VerifyCertificate {
        #[arg(long)]
        r#in: Option<std::path::PathBuf>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// grs, tgrs, or etgrs
    family: Family,
    /// "p", "p^m", or "p^m:coeffs" (modulus coefficients, high degree first)
    #[arg(long)]
    field: String,
    /// Evaluation points as canonical integer encodings, e.g. 0,1,2,3
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<u64>,
    /// Column multipliers; defaults to all ones
    #[arg(long, value_delimiter = ',')]
    v: Vec<u64>,
    /// Number of evaluation points when --alpha is omitted (first n elements)
    #[arg(long)]
    n: Option<usize>,
    #[arg(short, long)]
    k: usize,
    #[arg(short, long)]
    t: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    eta: Option<u64>,
    /// Treat a tgrs instance as its extended code
    #[arg(long)]
    extended: bool,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

impl InstanceArgs {
    fn spec(&self) -> Result<InstanceSpec> {
        let ctx = FieldCtx::parse(&self.field)?;
        let alpha: Vec<u64> = if self.alpha.is_empty() {
            let n = self.n.ok_or_else(|| {
                Error::InvalidParameter("give either --alpha or --n".into())
            })?;
            tgrs_core::EvaluationSet::first_n(ctx.clone(), n)?.encodings()
        } else {
            self.alpha.clone()
        };
        let v = if self.v.is_empty() { vec![1; alpha.len()] } else { self.v.clone() };
        let family = match (self.family, self.extended) {
            (Family::Tgrs, true) => Family::Etgrs,
            (f, _) => f,
        };
        if family == Family::Grs {
            if self.t.is_some() || self.h.is_some() || self.eta.is_some() {
                return Err(Error::InvalidParameter(
                    "--t/--h/--eta do not apply to grs".into(),
                ));
            }
            return Ok(InstanceSpec {
                field: self.field.clone(),
                family,
                alpha,
                v,
                k: self.k,
                t: None,
                h: None,
                eta: None,
            });
        }
        let spec = InstanceSpec {
            field: self.field.clone(),
            family,
            alpha,
            v,
            k: self.k,
            t: Some(self.t.ok_or_else(|| Error::InvalidParameter("--t required".into()))?),
            h: Some(self.h.ok_or_else(|| Error::InvalidParameter("--h required".into()))?),
            eta: Some(self.eta.ok_or_else(|| Error::InvalidParameter("--eta required".into()))?),
        };
        // surface parameter problems before any matrix work
        spec.twist_params(&ctx)?.validate(&ctx, family == Family::Etgrs)?;
        Ok(spec)
    }

    fn emit(&self, value: &serde_json::Value) -> Result<()> {
        let line = serde_json::to_string(value).map_err(|e| Error::Parse(e.to_string()))?;
        match &self.out {
            Some(path) => std::fs::write(path, format!("{line}\n"))
                .map_err(|e| Error::Parse(e.to_string())),
            None => {
                println!("{line}");
                Ok(())
            }
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    /// JSON file holding a full sweep config; flags below override nothing when given
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    #[arg(long)]
    field: Option<String>,
    /// Comma-separated families, e.g. tgrs,etgrs
    #[arg(long, value_delimiter = ',')]
    families: Vec<Family>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
    cap: u64,
    #[arg(long, default_value_t = 0)]
    oracle_limit: u128,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

impl SweepArgs {
    fn config(&self) -> Result<SweepConfig> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(e.to_string()))?;
            return serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()));
        }
        let field = self
            .field
            .clone()
            .ok_or_else(|| Error::InvalidParameter("give --config or --field".into()))?;
        let ctx = FieldCtx::parse(&field)?;
        let q = ctx.q();
        Ok(SweepConfig {
            field,
            families: if self.families.is_empty() {
                vec![Family::Tgrs, Family::Etgrs]
            } else {
                self.families.clone()
            },
            n_range: (self.n_min.unwrap_or(3), self.n_max.unwrap_or(q)),
            k_range: None,
            t_range: None,
            h_range: None,
            eta: EtaSelect::One,
            alpha: AlphaSelect::FirstN,
            v: VSelect::Ones,
            distance_cap: self.cap,
            oracle_limit: self.oracle_limit,
            checks: all_checks(),
            seed: self.seed,
        })
    }
}

fn matrix_rows(m: &tgrs_core::MatrixGF) -> Vec<Vec<u64>> {
    m.row_encodings()
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(args) => {
            let spec = args.spec()?;
            let ctx = spec.ctx()?;
            let es = spec.evaluation_set(&ctx)?;
            let v = spec.multipliers(&ctx)?;
            // the natural evaluation-form generator, not the RREF canonical one
            let gen = match spec.family {
                Family::Grs => {
                    tgrs_core::grs_generator_matrix(&es, spec.k, &v)?
                }
                Family::Tgrs => {
                    tgrs_core::tgrs_generator_matrix(&spec.twist_params(&ctx)?, &es, &v)?
                }
                Family::Etgrs => {
                    tgrs_core::etgrs_generator_matrix(&spec.twist_params(&ctx)?, &es, &v)?
                }
            };
            let mut out = json!({
                "schema": REPORT_SCHEMA_VERSION,
                "family": spec.family,
                "field": spec.field,
                "n": gen.cols(),
                "k": gen.rows(),
                "generator": matrix_rows(&gen),
            });
            if spec.family == Family::Tgrs {
                let ctx = spec.ctx()?;
                let h = tgrs_parity_check(
                    &spec.twist_params(&ctx)?,
                    &spec.evaluation_set(&ctx)?,
                    &spec.multipliers(&ctx)?,
                )?;
                out["parity_check"] = json!(matrix_rows(&h));
            }
            args.emit(&out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual(args) => {
            let spec = args.spec()?;
            let dual = spec.build()?.dual();
            args.emit(&json!({
                "schema": REPORT_SCHEMA_VERSION,
                "n": dual.n(),
                "k": dual.k(),
                "generator": matrix_rows(dual.generator()),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Schur(args) => {
            let spec = args.spec()?;
            let sq = spec.build()?.dual().schur_square();
            args.emit(&json!({
                "schema": REPORT_SCHEMA_VERSION,
                "n": sq.n(),
                "dim": sq.k(),
                "generator": matrix_rows(sq.generator()),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mindist { inst, cap } => {
            let spec = inst.spec()?;
            let code = spec.build()?;
            let witness = code.min_distance_exhaustive(cap);
            inst.emit(&json!({
                "schema": REPORT_SCHEMA_VERSION,
                "n": code.n(),
                "k": code.k(),
                "min_distance": witness.as_ref().map(|w| w.weight),
                "witness": witness.as_ref().map(|w| w.codeword.encodings()),
                "capped": witness.is_none(),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { inst, cap, oracle_limit, checks } => {
            let spec = inst.spec()?;
            let opts = CertifyOptions {
                checks: if checks.is_empty() { all_checks() } else { checks },
                distance_cap: cap,
                oracle_limit,
            };
            let record = certify_and_verify(&spec, &opts)?;
            let mut value = serde_json::to_value(&record).map_err(|e| Error::Parse(e.to_string()))?;
            value["schema"] = json!(REPORT_SCHEMA_VERSION);
            inst.emit(&value)?;
            if let Some(err) = &record.error {
                eprintln!("error: {err}");
                return Ok(ExitCode::FAILURE);
            }
            Ok(if record.violation.is_some() { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Oracle { inst, oracle_limit } => {
            let spec = inst.spec()?;
            let code = spec.build()?;
            let ctx = spec.ctx()?;
            let count = oracle_candidate_count(ctx.q(), code.n(), code.k());
            let is_grs = exhaustive_grs_oracle(&code, oracle_limit);
            inst.emit(&json!({
                "schema": REPORT_SCHEMA_VERSION,
                "n": code.n(),
                "k": code.k(),
                "candidates": count.to_string(),
                "is_grs": is_grs,
                "capped": is_grs.is_none(),
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            let cfg = args.config()?;
            let report = run_sweep(&cfg)?;
            match &args.out {
                Some(path) => {
                    let f = std::fs::File::create(path).map_err(|e| Error::Parse(e.to_string()))?;
                    report.write(std::io::BufWriter::new(f))
                }
                None => report.write(std::io::stdout().lock()),
            }
            .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(if report.summary.violations > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::VerifyCertificate { r#in } => {
            let text = match r#in {
                Some(path) => {
                    std::fs::read_to_string(path).map_err(|e| Error::Parse(e.to_string()))?
                }
                None => {
                    let mut buf = String::new();
                    for line in std::io::stdin().lock().lines() {
                        buf.push_str(&line.map_err(|e| Error::Parse(e.to_string()))?);
                        buf.push('\n');
                    }
                    buf
                }
            };
            let mut checked = 0usize;
            let mut failed = 0usize;
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let Ok(record) = serde_json::from_str::<ReportRecord>(line) else {
                    continue; // header / summary / non-record lines
                };
                if !matches!(record.verdict, Verdict::CertifiedNonGrs { .. }) {
                    continue;
                }
                checked += 1;
                let ok = verify_record(&record)?;
                if !ok {
                    failed += 1;
                }
                writeln!(
                    w,
                    "{}",
                    json!({ "n": record.n, "k": record.params.k, "verified": ok })
                )
                .map_err(|e| Error::Parse(e.to_string()))?;
            }
            writeln!(w, "{}", json!({ "checked": checked, "failed": failed }))
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(if failed > 0 { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
