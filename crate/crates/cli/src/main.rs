//! `dfusion`: graded characters, fusion products and instance checks from the
//! command line.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fusion_core::charring::{affine_demazure_character, fusion_character, weyl_character, DeltaCap, GradedCharacter};
use fusion_core::currentmod::{irreducible_evaluation_module, CurrentModule};
use fusion_core::fusion::{default_points, demazure_module_explicit, fusion_product, random_points};
use fusion_core::rational::Rational;
use fusion_core::report::{verify, Claim, Report, VerifyOptions};
use fusion_core::rootdata::{Coweight, DynkinType, RootSystem, Weight};
use fusion_core::Error;

#[derive(Parser, Debug)]
#[command(name = "dfusion", version, about = "Fusion products and affine Demazure characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// write the result here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a graded character.
    #[command(group(ArgGroup::new("kind").required(true).args(["demazure", "weyl", "chain"])))]
    Char {
        /// Dynkin type such as A1 or D4
        #[arg(value_name = "TYPE")]
        dynkin: String,
        /// affine Demazure character of D(LEVEL, WEIGHT)
        #[arg(long, num_args = 2, value_names = ["LEVEL", "WEIGHT"], allow_hyphen_values = true)]
        demazure: Option<Vec<String>>,
        /// character of the irreducible module V(WEIGHT)
        #[arg(long, value_name = "WEIGHT", allow_hyphen_values = true)]
        weyl: Option<String>,
        /// generalized Demazure module: levels l1,l2,... (needs --coweights)
        #[arg(long, value_name = "LEVELS", requires = "coweights")]
        chain: Option<String>,
        /// dominant coweights lambda1,lambda2,... such as wv1,wv1+wv2
        #[arg(long, value_name = "COWEIGHTS")]
        coweights: Option<String>,
        /// last level l of the chain
        #[arg(long, default_value_t = 0)]
        level: i64,
        /// last weight mu at level l
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        mu: String,
        /// cap on the delta spread (doubles automatically when absent)
        #[arg(long)]
        dmax: Option<i64>,
    },
    /// Fuse cyclic modules V(weight) or D(level,weight).
    Fusion {
        #[arg(value_name = "TYPE")]
        dynkin: String,
        /// factors such as V(w1) or D(2,2w1)
        #[arg(required = true, value_name = "FACTOR")]
        factors: Vec<String>,
        /// evaluation points such as 0,1/2,-1 (default 0,1,2,...)
        #[arg(long, allow_hyphen_values = true, conflicts_with = "seed")]
        points: Option<String>,
        /// draw random distinct points from this seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run an instance matrix for a claim and report.
    Verify {
        #[arg(value_name = "TYPE")]
        dynkin: String,
        /// cor-fusion-demazure, qsystem, param-independence, associativity or remark-2.4
        claim: String,
        #[arg(long, default_value_t = 3)]
        lmax: i64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// bound on the total <2rho, .> of the coweights in an instance
        #[arg(long, default_value_t = 6)]
        cap: i64,
        #[arg(long)]
        dmax: Option<i64>,
    },
}

/// Outcome of a command: the rendered text and whether it counts as a pass.
struct Outcome {
    text: String,
    pass: bool,
}

fn root_system(s: &str) -> Result<Arc<RootSystem>, Error> {
    Ok(Arc::new(RootSystem::new(s.parse::<DynkinType>()?)))
}

fn delta_cap(d: Option<i64>) -> DeltaCap {
    d.map_or(DeltaCap::Auto, DeltaCap::Fixed)
}

fn parse_int(s: &str, what: &str) -> Result<i64, Error> {
    s.trim().parse().map_err(|_| Error::Parse(format!("{what} `{s}` is not an integer")))
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn json_text(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn render_character(rs: &RootSystem, ch: &GradedCharacter, format: Format) -> String {
    match format {
        Format::Json => json_text(ch),
        Format::Tsv => ch.to_tsv(),
        Format::Pretty => format!("{}\ndim {}\n", ch.pretty(rs), ch.dim()),
    }
}

fn cmd_char(
    rs: &RootSystem,
    demazure: Option<Vec<String>>,
    weyl: Option<String>,
    chain: Option<String>,
    coweights: Option<String>,
    level: i64,
    mu: &str,
    dmax: Option<i64>,
    format: Format,
) -> Result<Outcome, Error> {
    let n = rs.rank();
    let cap = delta_cap(dmax);
    let ch = if let Some(d) = demazure {
        let level = parse_int(&d[0], "level")?;
        affine_demazure_character(rs, level, &Weight::parse(&d[1], n)?, cap)?
    } else if let Some(w) = weyl {
        weyl_character(rs, &Weight::parse(&w, n)?)?
    } else {
        let levels = split_list(chain.as_deref().unwrap_or("")).map(|l| parse_int(l, "level")).collect::<Result<Vec<_>, _>>()?;
        let lambdas = split_list(coweights.as_deref().unwrap_or(""))
            .map(|c| Coweight::parse(c, n))
            .collect::<Result<Vec<_>, _>>()?;
        fusion_character(rs, &levels, &lambdas, level, &Weight::parse(mu, n)?, cap)?
    };
    Ok(Outcome { text: render_character(rs, &ch, format), pass: true })
}

/// `V(weight)` or `D(level,weight)` with `weight = level * iota(coweight)`.
fn parse_factor(rs: &Arc<RootSystem>, s: &str) -> Result<Arc<CurrentModule>, Error> {
    let n = rs.rank();
    let t = s.trim();
    let body = |prefix: &str| t.strip_prefix(prefix).and_then(|b| b.strip_suffix(')'));
    if let Some(w) = body("V(") {
        return irreducible_evaluation_module(rs, &Weight::parse(w, n)?);
    }
    if let Some(inner) = body("D(") {
        let (l, w) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("`{s}`: expected D(level,weight)")))?;
        let level = parse_int(l, "level")?;
        let mu = Weight::parse(w, n)?;
        let lambda = if level == 0 {
            if !mu.is_zero() {
                return Err(Error::Domain(format!("`{s}`: level 0 needs weight 0")));
            }
            Coweight::zero(n)
        } else {
            let c = rs
                .weight_to_coweight(&mu)
                .filter(|c| c.0.iter().all(|x| x % level == 0))
                .ok_or_else(|| Error::Domain(format!("`{s}`: weight is not level times a coweight")))?;
            Coweight(c.0.iter().map(|x| x / level).collect())
        };
        return demazure_module_explicit(rs, level, &lambda);
    }
    Err(Error::Parse(format!("`{s}`: expected V(weight) or D(level,weight)")))
}

fn cmd_fusion(rs: &Arc<RootSystem>, factors: &[String], points: Option<String>, seed: Option<u64>, format: Format) -> Result<Outcome, Error> {
    let ms = factors.iter().map(|f| parse_factor(rs, f)).collect::<Result<Vec<_>, _>>()?;
    let cs: Vec<Rational> = match (points, seed) {
        (Some(p), _) => split_list(&p)
            .map(|x| x.parse::<Rational>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_, _>>()?,
        (None, Some(seed)) => {
            use rand::SeedableRng;
            random_points(ms.len(), &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
        }
        (None, None) => default_points(ms.len()),
    };
    let f = fusion_product(&ms, &cs)?;
    let text = match format {
        Format::Json => json_text(&json!({
            "type": rs.dynkin.to_string(),
            "factors": factors,
            "points": cs,
            "dim": f.character.dim(),
            "filtration": f.filtration,
            "character": f.character,
        })),
        Format::Tsv => {
            let stages: Vec<String> = f.filtration.stages.iter().map(|d| d.to_string()).collect();
            format!("# stages\t{}\n{}", stages.join("\t"), f.character.to_tsv())
        }
        Format::Pretty => format!(
            "{}\ndim {}\nstages {:?}\n",
            f.character.pretty(rs),
            f.character.dim(),
            f.filtration.stages
        ),
    };
    Ok(Outcome { text, pass: true })
}

fn render_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => json_text(r),
        Format::Tsv => {
            let mut out = String::from("input\tequal\tqshift\terror\n");
            for x in &r.instances {
                out += &format!("{}\t{}\t{}\t{}\n", x.input, x.equal, x.qshift, x.error.as_deref().unwrap_or(""));
            }
            out + &format!("# pass\t{}\n", r.pass)
        }
        Format::Pretty => {
            let ok = r.instances.iter().filter(|x| x.equal).count();
            let mut out = format!("{} on {}: {}/{} instances agree\n", r.claim, r.dynkin, ok, r.instances.len());
            for x in r.instances.iter().filter(|x| !x.equal) {
                out += &format!("  FAIL {} {}\n", x.input, x.error.as_deref().unwrap_or(""));
            }
            out + if r.pass { "pass\n" } else { "fail\n" }
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let format = cli.format;
    match cli.command {
        Command::Char { dynkin, demazure, weyl, chain, coweights, level, mu, dmax } => {
            let rs = root_system(&dynkin)?;
            cmd_char(&rs, demazure, weyl, chain, coweights, level, &mu, dmax, format)
        }
        Command::Fusion { dynkin, factors, points, seed } => cmd_fusion(&root_system(&dynkin)?, &factors, points, seed, format),
        Command::Verify { dynkin, claim, lmax, trials, seed, cap, dmax } => {
            let claim: Claim = claim.parse()?;
            let rs = root_system(&dynkin)?;
            let opts = VerifyOptions { lmax, cap, trials, seed, dmax: delta_cap(dmax), ..VerifyOptions::default() };
            let r = verify(&rs, claim, &opts)?;
            Ok(Outcome { text: render_report(&r, format), pass: r.pass })
        }
    }
}

fn error_kind(e: &Error) -> (&'static str, u8) {
    match e {
        Error::InvalidDatum(_) => ("invalid-datum", 2),
        Error::Parse(_) => ("parse", 2),
        Error::Domain(_) => ("domain", 2),
        Error::Unsupported(_) => ("unsupported", 2),
        Error::LengthAdditivity(..) => ("length-additivity", 2),
        Error::Truncation { .. } => ("truncation", 1),
        Error::NotCyclic { .. } => ("not-cyclic", 1),
        Error::NonClosure { .. } => ("non-closure", 3),
        Error::Internal(_) => ("internal", 3),
    }
}

fn error_json(kind: &str, e: &dyn std::fmt::Display, extra: Value) -> String {
    let mut body = json!({ "kind": kind, "message": e.to_string() });
    if let (Value::Object(b), Value::Object(x)) = (&mut body, extra) {
        b.extend(x);
    }
    json_text(&json!({ "error": body }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // help and version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            print!("{}", error_json("usage", &e.to_string().trim_end(), json!({})));
            return ExitCode::from(2);
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok(out) => {
            if let Some(path) = output {
                if let Err(e) = std::fs::write(&path, &out.text) {
                    print!("{}", error_json("io", &e, json!({ "path": path })));
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            let (kind, code) = error_kind(&e);
            let extra = match &e {
                Error::NotCyclic { achieved, expected } => json!({ "achieved": achieved, "expected": expected }),
                Error::NonClosure { dim } => json!({ "achieved": dim }),
                Error::Truncation { degree, cap } => json!({ "degree": degree, "cap": cap }),
                _ => json!({}),
            };
            print!("{}", error_json(kind, &e, extra));
            ExitCode::from(code)
        }
    }
}
