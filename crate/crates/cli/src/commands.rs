use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weyl_core::automorphism::{
    compose_normal_forms, decompose_automorphism, verify_automorphism, Composed, FunctionalAut, Mode, NormalFormAut,
    WeylMap,
};
use weyl_core::classification::{classify_ad_behavior, faithfulness_witness, iso_search_bounded, iso_verify, AdTag, IsoSearchResult};
use weyl_core::json::{
    element_value, from_str, growth_value, iso_result_value, to_pretty, verification_report_value, witness_value,
    AutomorphismJson, ElementJson, FunctionalJson,
};
use weyl_core::rational::format_vector;
use weyl_core::{Element, Matrix, Signature, WeylError};

use crate::config::{load_signature, read_file, SessionConfig};
use crate::error::{CliError, CliResult};
use crate::eval::evaluate;
use crate::printer::print_element;
use crate::selftest::{desk_signature, run_suite, suite_names};

#[derive(Debug, Parser)]
#[command(name = "weyl", version, about = "Exact computation in algebras of Weyl type W(l1, l2, Gamma)")]
pub struct Cli {
    /// Signature file: {"ell1": .., "ell2": .., "gamma_generators": [[..], ..]}
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Structure used by `aut` checks.
    #[arg(long, global = true, value_name = "lie|assoc")]
    pub mode: Option<Mode>,
    #[arg(long, global = true, env = "WEYL_SEED")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval { expr: String },
    /// Print [E1, E2].
    Bracket { lhs: String, rhs: String },
    /// Automorphism operations.
    #[command(subcommand)]
    Aut(AutCommand),
    /// Search for an isomorphism between two algebras.
    Iso {
        #[arg(long, value_name = "FILE")]
        src: PathBuf,
        #[arg(long, value_name = "FILE")]
        dst: PathBuf,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Classify the adjoint action of an element.
    Classify { expr: String },
    /// Find a lattice point on which an element of F[D] acts nontrivially.
    Witness { expr: String },
    /// Run the property suites.
    Selftest {
        #[arg(long)]
        suite: Option<String>,
    },
    /// Export an element.
    Export {
        #[arg(long, value_enum, default_value = "json")]
        format: ExportFormat,
        expr: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum AutCommand {
    /// Apply an automorphism (normal form or generator images) to an expression.
    Apply {
        #[arg(long, value_name = "FILE")]
        aut: PathBuf,
        expr: String,
    },
    /// Normal form of a o b.
    Compose {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
    },
    /// Factor an automorphism given by generator images.
    Decompose {
        #[arg(long, value_name = "FILE")]
        aut: PathBuf,
    },
    /// Randomized homomorphism check.
    Verify {
        #[arg(long, value_name = "FILE")]
        aut: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Json,
    Text,
}

enum AutFile {
    Normal(NormalFormAut, Mode),
    Functional(FunctionalAut),
}

impl AutFile {
    fn mode(&self) -> Mode {
        match self {
            AutFile::Normal(_, m) => *m,
            AutFile::Functional(f) => f.mode(),
        }
    }

    fn map(&self) -> &dyn WeylMap {
        match self {
            AutFile::Normal(nf, _) => nf,
            AutFile::Functional(f) => f,
        }
    }

    fn functional(&self) -> CliResult<FunctionalAut> {
        match self {
            AutFile::Normal(nf, m) => Ok(FunctionalAut::from_map(nf, *m)?),
            AutFile::Functional(f) => Ok(f.clone()),
        }
    }
}

fn read_aut(path: &Path, sig: Option<&Arc<Signature>>) -> CliResult<AutFile> {
    let text = read_file(path)?;
    let bad = |e: WeylError| CliError::Usage(format!("{}: {e}", path.display()));
    let value: Value = from_str(&text).map_err(bad)?;
    if value.get("tau").is_some() {
        let j: AutomorphismJson = serde_json::from_value(value).map_err(|e| bad(e.into()))?;
        let (nf, mode) = j.to_normal_form(sig).map_err(bad)?;
        Ok(AutFile::Normal(nf, mode))
    } else if value.get("images").is_some() {
        let j: FunctionalJson = serde_json::from_value(value).map_err(|e| bad(e.into()))?;
        let f = j.to_map().map_err(bad)?;
        if let Some(s) = sig {
            if !Signature::same(s, f.source()) {
                return Err(bad(WeylError::SignatureMismatch));
            }
        }
        Ok(AutFile::Functional(f))
    } else {
        Err(bad(WeylError::Json("expected a normal form (\"tau\") or generator images (\"images\")".into())))
    }
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| format_vector(r)).collect();
    format!("[{}]", rows.join(", "))
}

fn normal_form_text(nf: &NormalFormAut, mode: Mode) -> String {
    format!(
        "tau.G = {}\ntau.f = {}\nu = {}\nv = {}\neps = {}\nmode = {}",
        matrix_text(nf.tau.g().entries()),
        format_vector(nf.tau.f().values()),
        print_element(nf.u.u()),
        format_vector(nf.v.v()),
        u8::from(nf.eps),
        mode
    )
}

struct Session<'a> {
    cfg: SessionConfig,
    json: bool,
    out: &'a mut dyn Write,
}

impl Session<'_> {
    fn emit(&mut self, text: &str, value: impl FnOnce() -> Value) -> CliResult<()> {
        let s = if self.json { to_pretty(&value()) } else { text.to_string() };
        writeln!(self.out, "{s}").map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    }

    fn element(&mut self, e: &Element) -> CliResult<()> {
        self.emit(&print_element(e), || element_value(e))
    }

    fn normal_form(&mut self, nf: &NormalFormAut, mode: Mode) -> CliResult<()> {
        self.emit(&normal_form_text(nf, mode), || {
            serde_json::to_value(AutomorphismJson::from_normal_form(nf, mode)).expect("serializable")
        })
    }

    fn parse(&self, expr: &str) -> CliResult<Element> {
        evaluate(expr, self.cfg.require_signature()?)
    }

    fn run(&mut self, cmd: Command) -> CliResult<()> {
        match cmd {
            Command::Eval { expr } => {
                let e = self.parse(&expr)?;
                self.element(&e)
            }
            Command::Bracket { lhs, rhs } => {
                let e = self.parse(&lhs)?.bracket(&self.parse(&rhs)?)?;
                self.element(&e)
            }
            Command::Export { format, expr } => {
                let e = self.parse(&expr)?;
                match format {
                    ExportFormat::Json => {
                        let s = to_pretty(&ElementJson::from_element(&e));
                        self.emit(&s, || element_value(&e))
                    }
                    ExportFormat::Text => self.element(&e),
                }
            }
            Command::Aut(a) => self.aut(a),
            Command::Iso { src, dst, bound } => self.iso(&src, &dst, bound.unwrap_or(self.cfg.bound)),
            Command::Classify { expr } => {
                let e = self.parse(&expr)?;
                let b = classify_ad_behavior(&e)?;
                let tag = match b.tag {
                    AdTag::InA => "in_A",
                    AdTag::InDPlusA => "in_D_plus_A",
                    AdTag::Wild => "wild",
                };
                let mut text = tag.to_string();
                if let Some(p) = &b.probe {
                    text.push_str(&format!("\nprobe: {}", print_element(p)));
                    for r in &b.growth {
                        let level = r.level.map_or("-inf".to_string(), |l| l.to_string());
                        let gamma = r
                            .gamma_max
                            .as_ref()
                            .map_or("-".to_string(), |g| format_vector(&e.signature().lattice().point(g)));
                        text.push_str(&format!("\nstep {}: level {level}, top degree {gamma}", r.step));
                    }
                }
                self.emit(&text, || {
                    json!({
                        "tag": b.tag,
                        "probe": b.probe.as_ref().map(element_value),
                        "growth": growth_value(&b.growth),
                    })
                })
            }
            Command::Witness { expr } => {
                let sig = self.cfg.require_signature()?.clone();
                let e = self.parse(&expr)?;
                let w = faithfulness_witness(&sig, &e)?;
                let text = format!(
                    "alpha = {} (n = {:?})\nimage = {}",
                    format_vector(&w.alpha),
                    w.n,
                    print_element(&w.image)
                );
                self.emit(&text, || witness_value(&w))
            }
            Command::Selftest { suite } => self.selftest(suite.as_deref()),
        }
    }

    fn aut(&mut self, cmd: AutCommand) -> CliResult<()> {
        let sig = self.cfg.signature.clone();
        match cmd {
            AutCommand::Apply { aut, expr } => {
                let sig = self.cfg.require_signature()?.clone();
                let phi = read_aut(&aut, Some(&sig))?;
                let e = phi.map().apply(&evaluate(&expr, &sig)?)?;
                self.element(&e)
            }
            AutCommand::Compose { a, b } => {
                let fa = read_aut(&a, sig.as_ref())?;
                let fb = read_aut(&b, sig.as_ref())?;
                let mode = self.cfg.mode.unwrap_or_else(|| fa.mode());
                let composed = match (&fa, &fb) {
                    (AutFile::Normal(x, _), AutFile::Normal(y, _)) if !x.eps && !y.eps => compose_normal_forms(x, y)?,
                    _ => {
                        let f = FunctionalAut::from_map(&Composed(fa.map(), fb.map()), Mode::Lie)?;
                        decompose_automorphism(&f.with_mode(mode))?
                    }
                };
                self.normal_form(&composed, mode)
            }
            AutCommand::Decompose { aut } => {
                let phi = read_aut(&aut, sig.as_ref())?;
                let mode = self.cfg.mode.unwrap_or_else(|| phi.mode());
                let nf = decompose_automorphism(&phi.functional()?.with_mode(mode))?;
                self.normal_form(&nf, mode)
            }
            AutCommand::Verify { aut, trials } => {
                let phi = read_aut(&aut, sig.as_ref())?;
                let mode = self.cfg.mode.unwrap_or_else(|| phi.mode());
                let trials = trials.unwrap_or(self.cfg.trials);
                let r = verify_automorphism(phi.map(), mode, trials, self.cfg.seed)?;
                let head = format!(
                    "{} mode, {} generator pairs and {} random pairs, seed {}",
                    r.mode, r.checked, r.trials, r.seed
                );
                let text = match &r.counterexample {
                    None => format!("PASS {head}"),
                    Some(cx) => format!(
                        "FAIL {head}\na = {}\nb = {}\nphi(a op b) = {}\nphi(a) op phi(b) = {}",
                        print_element(&cx.a),
                        print_element(&cx.b),
                        print_element(&cx.lhs),
                        print_element(&cx.rhs)
                    ),
                };
                self.emit(&text, || verification_report_value(&r))?;
                if r.passed {
                    Ok(())
                } else {
                    Err(CliError::Verification(String::new()))
                }
            }
        }
    }

    fn iso(&mut self, src: &Path, dst: &Path, bound: i64) -> CliResult<()> {
        if bound < 1 {
            return Err(CliError::Usage(format!("--bound must be at least 1, got {bound}")));
        }
        let (a, _) = load_signature(src)?;
        let (b, _) = load_signature(dst)?;
        let r = iso_search_bounded(&a, &b, bound)?;
        if let IsoSearchResult::Found { candidate, .. } = &r {
            iso_verify(&a, &b, candidate, self.cfg.trials, self.cfg.seed)?;
        }
        let text = match &r {
            IsoSearchResult::Found { candidate, tried } => format!(
                "found: G = {}, f = {} (candidate {tried})",
                matrix_text(candidate.g.entries()),
                format_vector(candidate.f.values())
            ),
            IsoSearchResult::Impossible(why) => format!("impossible: {why}"),
            IsoSearchResult::Unknown { tried } => {
                format!("unknown: no block-form candidate with entries in [-{bound}, {bound}] ({tried} tried)")
            }
        };
        self.emit(&text, || iso_result_value(&r))
    }

    fn selftest(&mut self, suite: Option<&str>) -> CliResult<()> {
        let names = match suite {
            None => suite_names(),
            Some(n) if suite_names().contains(&n) => vec![suite_names().into_iter().find(|s| *s == n).expect("present")],
            Some(n) => {
                return Err(CliError::Usage(format!(
                    "unknown suite {n:?}; available: {}",
                    suite_names().join(", ")
                )))
            }
        };
        let sig = self.cfg.signature.clone().unwrap_or_else(desk_signature);
        let mut failed = 0;
        let mut rows = Vec::new();
        for name in names {
            let o = run_suite(name, &sig, self.cfg.seed).expect("known suite");
            failed += usize::from(!o.passed());
            if !self.json {
                writeln!(self.out, "{}", o.line()).map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            }
            rows.push(o);
        }
        if self.json {
            let v = json!({
                "seed": self.cfg.seed,
                "suites": rows.iter().map(|o| json!({
                    "name": o.name,
                    "passed": o.passed(),
                    "summary": o.summary,
                    "failure": o.failure,
                })).collect::<Vec<_>>(),
            });
            self.emit("", || v)?;
        }
        if failed > 0 {
            return Err(CliError::Verification(format!("{failed} suite(s) failed")));
        }
        Ok(())
    }
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let result = SessionConfig::load(cli.config.as_deref(), cli.mode, cli.seed).and_then(|cfg| {
        let mut s = Session {
            cfg,
            json: cli.json,
            out,
        };
        s.run(cli.command)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string();
            if !msg.is_empty() {
                let _ = writeln!(err, "error: {msg}");
            }
            e.exit_code()
        }
    }
}

