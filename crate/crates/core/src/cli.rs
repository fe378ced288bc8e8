//! Command-line front end. Every subcommand prints one JSON document on
//! standard output; elements are `0x`-hex bit patterns and arrays are sorted.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::affine;
use crate::dobbertin::CoprimeParams;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::linearized::{ExtContext, QClassification};
use crate::oracle::{Family as OracleFamily, Oracle};
use crate::psolver::{self, DistributionReport};
use crate::verify::{self, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "gf2k", version, about = "Zero counts and roots of trinomials over GF(2^k)")]
pub struct Cli {
    /// Worker threads for exhaustive sweeps (0 = all cores).
    #[arg(long, global = true, env = "GF2K_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Compact JSON when true, indented JSON when false.
    #[arg(long, global = true, env = "GF2K_JSON", default_value_t = true, action = clap::ArgAction::Set)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct FieldArgs {
    /// Extension degree.
    #[arg(long, env = "GF2K_K")]
    pub k: u32,
    /// Irreducible modulus as hex; defaults to the smallest one of degree k.
    #[arg(long, env = "GF2K_POLY", value_parser = parse_u64_hex)]
    pub poly: Option<u64>,
}

impl FieldArgs {
    fn build(&self) -> Result<FieldCtx> {
        FieldCtx::new(self.k, self.poly)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    P,
    F,
    Q,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe the field: modulus, generator, table use.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Classify and solve x^(2^l+1) + x + a.
    SolveP {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, env = "GF2K_L")]
        l: u32,
        #[arg(long, env = "GF2K_A", value_parser = parse_fe)]
        a: Fe,
    },
    /// Solve a^(2^l) x^(2^(2l)) + x^(2^l) + a x + c.
    SolveF {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, env = "GF2K_L")]
        l: u32,
        #[arg(long, env = "GF2K_A", value_parser = parse_fe)]
        a: Fe,
        #[arg(long, env = "GF2K_C", value_parser = parse_fe, default_value = "0x1")]
        c: Fe,
    },
    /// Kernel of the linearized polynomial over GF(2^(2k)); r is given in GF(2^(2k)).
    SolveQ {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, env = "GF2K_L")]
        l: u32,
        #[arg(long, env = "GF2K_A", value_parser = parse_fe)]
        a: Fe,
        #[arg(long, env = "GF2K_R", value_parser = parse_fe, default_value = "0x1")]
        r: Fe,
    },
    /// Zero-count census over all nonzero a.
    Census {
        #[arg(long, env = "GF2K_FAMILY", value_enum)]
        family: Family,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, env = "GF2K_L")]
        l: u32,
        /// Count by exhaustive evaluation instead of the criteria (p and f only).
        #[arg(long)]
        oracle: bool,
    },
    /// Evaluate R, q and H for gcd(l, k) = 1.
    Dobbertin {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, env = "GF2K_L")]
        l: u32,
        #[arg(long, env = "GF2K_X", value_parser = parse_fe)]
        x: Option<Fe>,
        /// Constant term of q; defaults to the parity making q a permutation.
        #[arg(long, env = "GF2K_EPS", value_parser = clap::value_parser!(u8).range(0..=1))]
        eps: Option<u8>,
    },
    /// Run the property suites; exits 1 if any blocking suite fails.
    Verify {
        #[arg(long, env = "GF2K_MIN_K", default_value_t = 2)]
        min_k: u32,
        #[arg(long, env = "GF2K_MAX_K", default_value_t = 10)]
        max_k: u32,
        /// Largest k for the GF(2^(2k)) kernel sweep.
        #[arg(long, env = "GF2K_Q_MAX_K", default_value_t = 6)]
        q_max_k: u32,
        /// Stop starting new k values after this many seconds.
        #[arg(long, env = "GF2K_BUDGET_SECS")]
        budget_secs: Option<u64>,
    },
}

fn parse_fe(s: &str) -> std::result::Result<Fe, String> {
    Fe::parse_hex(s).map_err(|e| e.to_string())
}

fn parse_u64_hex(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim();
    let digits = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u64::from_str_radix(digits, 16).map_err(|e| format!("bad hex {s:?}: {e}"))
}

#[derive(Serialize)]
struct FieldInfo {
    k: u32,
    modulus: String,
    generator: Fe,
    order: u64,
    tables: bool,
}

#[derive(Serialize)]
struct SolvePOut {
    class: &'static str,
    roots: Vec<Fe>,
    #[serde(rename = "Z", skip_serializing_if = "Option::is_none")]
    z: Option<Fe>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    c: Option<Fe>,
}

#[derive(Serialize)]
struct SolveQOut {
    #[serde(flatten)]
    classification: QClassification,
    kernel: Vec<Fe>,
}

#[derive(Serialize)]
struct QCensus {
    counts: BTreeMap<u64, u64>,
    mismatches: u64,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct DobbertinOut {
    l: u32,
    l_prime: u32,
    eps: u8,
    q_bijective: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Fe>,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    r: Option<Fe>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Fe>,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none")]
    h: Option<Fe>,
}

/// Serialized output of a command and whether it succeeded.
pub struct Output {
    pub body: String,
    pub success: bool,
}

fn render<T: Serialize>(v: &T, compact: bool) -> String {
    if compact {
        serde_json::to_string(v)
    } else {
        serde_json::to_string_pretty(v)
    }
    .expect("serializable")
}

fn recheck(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Parse(format!("internal check failed: {what}")))
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Output> {
    let compact = cli.json;
    let ok = |body: String| Output { body, success: true };
    match &cli.command {
        Command::FieldInfo { field } => {
            let f = field.build()?;
            Ok(ok(render(
                &FieldInfo {
                    k: f.k(),
                    modulus: format!("{:#x}", f.modulus()),
                    generator: f.generator(),
                    order: f.order(),
                    tables: f.has_tables(),
                },
                compact,
            )))
        }
        Command::SolveP { field, l, a } => {
            let f = field.build()?;
            let a = f.element(a.bits() as u64)?;
            let cls = psolver::classify(&f, *l, a)?;
            let roots = psolver::solve_classified(&f, *l, a, &cls)?;
            recheck(
                roots.iter().all(|x| psolver::eval(&f, *l, a, x).is_zero()),
                "root does not vanish",
            )?;
            let special = a.is_zero();
            Ok(ok(render(
                &SolvePOut {
                    class: cls.class.name(),
                    roots: roots.into_vec(),
                    z: (!special).then_some(cls.z_val),
                    c: (!special).then_some(cls.c_val),
                },
                compact,
            )))
        }
        Command::SolveF { field, l, a, c } => {
            let f = field.build()?;
            let a = f.element(a.bits() as u64)?;
            let c = f.element(c.bits() as u64)?;
            let sol = affine::solve_f(&f, *l, a, c)?;
            recheck(
                sol.roots.iter().all(|x| affine::eval(&f, *l, a, c, x).is_zero()),
                "root does not vanish",
            )?;
            Ok(ok(render(&sol, compact)))
        }
        Command::SolveQ { field, l, a, r } => {
            let ext = ExtContext::new(field.build()?)?;
            let a = ext.base().element(a.bits() as u64)?;
            let r = ext.ext().element(r.bits() as u64)?;
            let classification = ext.classify_q(a, r, *l)?;
            let kernel = ext.q_kernel(a, r, *l)?;
            recheck(
                kernel.iter().all(|x| ext.q_eval(a, r, *l, x).is_zero()),
                "kernel element does not vanish",
            )?;
            let success = classification.kernel_size == kernel.len() as u64;
            Ok(Output {
                body: render(
                    &SolveQOut {
                        classification,
                        kernel: kernel.into_vec(),
                    },
                    compact,
                ),
                success,
            })
        }
        Command::Census {
            family,
            field,
            l,
            oracle,
        } => {
            let f = field.build()?;
            let report: DistributionReport = match (family, oracle) {
                (Family::P, false) => psolver::distribution(&f, *l)?,
                (Family::F, false) => affine::f_census(&f, *l)?,
                (Family::P, true) => Oracle::default().census(OracleFamily::P, &f, *l, None)?,
                (Family::F, true) => Oracle::default().census(OracleFamily::F, &f, *l, None)?,
                (Family::Q, _) => {
                    let ext = ExtContext::new(f)?;
                    let mut counts = BTreeMap::new();
                    let mut mismatches = 0;
                    for r in ext.unit_circle() {
                        for a in ext.base().nonzero_elements() {
                            let size = ext.q_kernel(a, r, *l)?.len() as u64;
                            if ext.classify_q(a, r, *l)?.kernel_size != size {
                                mismatches += 1;
                            }
                            *counts.entry(size).or_insert(0) += 1;
                        }
                    }
                    let out = QCensus {
                        counts,
                        mismatches,
                        matches: mismatches == 0,
                    };
                    return Ok(Output {
                        body: render(&out, compact),
                        success: out.matches,
                    });
                }
            };
            Ok(Output {
                success: report.matches,
                body: render(&report, compact),
            })
        }
        Command::Dobbertin { field, l, x, eps } => {
            let f = field.build()?;
            let p = CoprimeParams::new(f.k(), *l)?;
            let eps = eps.map(|e| e == 1).unwrap_or(p.bijective_eps());
            let mut image: Vec<Fe> = f
                .nonzero_elements()
                .map(|y| p.q_eval(&f, y, eps))
                .collect::<Result<_>>()?;
            image.sort_unstable();
            image.dedup();
            let q_bijective = image.len() as u64 == f.group_order() && image[0] != Fe::ZERO;
            let x = x.map(|x| f.element(x.bits() as u64)).transpose()?;
            let out = DobbertinOut {
                l: p.l,
                l_prime: p.l_prime,
                eps: eps as u8,
                q_bijective,
                x,
                r: x.map(|x| p.r_eval(&f, x)),
                q: x.filter(|x| !x.is_zero()).map(|x| p.q_eval(&f, x, eps)).transpose()?,
                h: x.map(|x| p.h_eval(&f, p.l_prime, x)).transpose()?,
            };
            Ok(ok(render(&out, compact)))
        }
        Command::Verify {
            min_k,
            max_k,
            q_max_k,
            budget_secs,
        } => {
            let cfg = VerifyConfig {
                k_range: *min_k..=*max_k,
                q_max_k: *q_max_k,
                budget: budget_secs.map(Duration::from_secs),
                ..VerifyConfig::default()
            };
            let start = Instant::now();
            let report = verify::run_all(&cfg);
            #[derive(Serialize)]
            struct Timed<'a> {
                #[serde(flatten)]
                report: &'a verify::VerifyReport,
                elapsed_ms: u64,
            }
            Ok(Output {
                success: report.passed,
                body: render(
                    &Timed {
                        report: &report,
                        elapsed_ms: start.elapsed().as_millis() as u64,
                    },
                    compact,
                ),
            })
        }
    }
}

/// Parses `args`, runs the command and prints the result; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match execute(&cli) {
        Ok(out) => {
            println!("{}", out.body);
            if out.success {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
