//! Argument parsing and the chained-subcommand driver.
//!
//! A command line is a sequence of stages, each consuming the state left by
//! the previous one: `splitrec build --poly "x^2+x+1" solve verify --range 5:1000`.
//! A pipeline that does not start with `family` or `build` reads an artifact
//! from `--in FILE` or standard input.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use splitrec_core::galois::{self, DEFAULT_NORMAL_BOUND};
use splitrec_core::verify::Bundle;
use splitrec_core::{
    families, idempotent, modular, primes, rat, GaloisGroup, IdempotentTarget, Irreducibility, NumberField, PolyQ,
};

use crate::artifact::{self, Provenance, State};
use crate::error::{CliError, CliResult};
use crate::parallel::{self, Tuning};
use crate::poly_parse::parse_poly;
use crate::report;

pub const STAGES: [&str; 7] = ["family", "build", "galois", "solve", "eval", "verify", "table"];

const STAGE_HELP: &str = "Stages (chain any number, each reads the previous state):
  family   {--quadratic -D N | --quadratic-coeffs C1 C2 | --cubic-shanks -t T |
            --quartic-cyclic -a A -b B -d D -r R | --cyclotomic -q Q}
  build    --poly STR [--automorphisms FILE] [--assume-irreducible]
  galois
  solve    [--class REP | --subset \"i,j,k\"]
  eval     --prime P | --range A:B
  verify   --range A:B [--jobs N]
  table    --range A:B

Exit status: 0 success, 1 verification FAIL, 2 usage or input error.";

#[derive(Parser, Debug)]
#[command(name = "splitrec", version, about = "Recurrences whose values mod p detect Frobenius classes", after_help = STAGE_HELP)]
pub struct Globals {
    /// Read the starting artifact from FILE instead of standard input.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write output to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// First p-adic lift exponent tried by automorphism discovery.
    #[arg(long, env = "SPLITREC_LIFT_START", value_name = "K")]
    pub lift_start: Option<u32>,
    /// Sieve segment length, also the unit of parallel work.
    #[arg(long, env = "SPLITREC_SEGMENT_SIZE", value_name = "N", default_value_t = primes::DEFAULT_SEGMENT)]
    pub segment_size: usize,
    /// Worker threads for verification (0: one per core).
    #[arg(long, env = "SPLITREC_JOBS", value_name = "N", default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Parser, Debug)]
#[command(name = "splitrec", allow_negative_numbers = true)]
struct StageCli {
    #[command(subcommand)]
    stage: Stage,
}

#[derive(Subcommand, Debug)]
pub enum Stage {
    /// Closed-form family member, cross-checked against the generic solver.
    Family(FamilyArgs),
    /// Field from a defining polynomial.
    Build(BuildArgs),
    /// Discover the automorphism group.
    Galois,
    /// Solve for class (or subset) indicator recurrences.
    Solve(SolveArgs),
    /// Evaluate a_p mod p.
    Eval(EvalArgs),
    /// Compare predictions with the Frobenius oracle.
    Verify(VerifyArgs),
    /// Human-readable p | a_p mod p table.
    Table(RangeArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct FamilyArgs {
    /// Q(sqrt D), with -D.
    #[arg(long, group = "kind")]
    quadratic: bool,
    /// x^2 - C1 x + C2.
    #[arg(long, group = "kind", num_args = 2, value_names = ["C1", "C2"])]
    quadratic_coeffs: Option<Vec<String>>,
    /// Shanks' cubic, with -t.
    #[arg(long, group = "kind")]
    cubic_shanks: bool,
    /// Cyclic quartic, with -a -b -d -r.
    #[arg(long, group = "kind")]
    quartic_cyclic: bool,
    /// Q(zeta_q), with -q.
    #[arg(long, group = "kind")]
    cyclotomic: bool,
    #[arg(short = 'D')]
    big_d: Option<i64>,
    #[arg(short = 't')]
    t: Option<String>,
    #[arg(short = 'a')]
    a: Option<i64>,
    #[arg(short = 'b')]
    b: Option<i64>,
    #[arg(short = 'd')]
    d: Option<i64>,
    #[arg(short = 'r')]
    r: Option<i64>,
    #[arg(short = 'q')]
    q: Option<u64>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    poly: String,
    /// JSON list of automorphism images (coordinates on 1, x, ..., x^(d-1)).
    #[arg(long, value_name = "FILE")]
    automorphisms: Option<PathBuf>,
    /// Skip the irreducibility certificate (needed when every prime gives a reducible pattern).
    #[arg(long)]
    assume_irreducible: bool,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Element index whose conjugacy class is the target.
    #[arg(long, conflicts_with = "subset")]
    class: Option<usize>,
    /// Comma-separated element indices forming a union of classes.
    #[arg(long)]
    subset: Option<String>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, conflicts_with = "range", required_unless_present = "range")]
    prime: Option<u64>,
    #[arg(long, value_name = "A:B")]
    range: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_name = "A:B")]
    range: String,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RangeArgs {
    #[arg(long, value_name = "A:B")]
    range: String,
}

pub fn parse_range(s: &str) -> CliResult<(u64, u64)> {
    let bad = || CliError::Usage(format!("range must look like A:B with 2 <= A <= B, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a < 2 || b < a {
        return Err(bad());
    }
    Ok((a, b))
}

/// Splits argv (without the program name) at stage names. `--in` and `--out`
/// may appear anywhere and are moved to the global arguments.
pub fn split_stages(args: &[String]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut globals = Vec::new();
    let mut stages: Vec<Vec<String>> = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--in" || a == "--out" {
            globals.push(a.clone());
            globals.extend(it.next().cloned());
        } else if a.starts_with("--in=") || a.starts_with("--out=") {
            globals.push(a.clone());
        } else if STAGES.contains(&a.as_str()) {
            stages.push(vec![a.clone()]);
        } else if let Some(last) = stages.last_mut() {
            last.push(a.clone());
        } else {
            globals.push(a.clone());
        }
    }
    (globals, stages)
}

fn quote(arg: &str) -> String {
    if !arg.is_empty() && arg.chars().all(|c| c.is_ascii_alphanumeric() || "-_:.,/=^+".contains(c)) {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', "'\\''"))
    }
}

struct Run<'a> {
    tuning: Tuning,
    state: Option<State>,
    outputs: Vec<String>,
    failed: bool,
    /// Stages of this invocation that changed the artifact.
    changed: Vec<String>,
    err: &'a mut dyn Write,
}

impl Run<'_> {
    fn note(&mut self, msg: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", msg.as_ref());
    }

    fn state(&mut self) -> CliResult<&mut State> {
        self.state.as_mut().ok_or_else(|| CliError::Usage("no input artifact".into()))
    }

    fn ensure_group(&mut self) -> CliResult<()> {
        let lift_start = self.tuning.lift_start;
        let state = self.state()?;
        if state.group().is_some() {
            return Ok(());
        }
        let group = galois::discover_automorphisms(&state.field, lift_start)?;
        state.group = Some(group);
        let lines: Vec<String> = state
            .group()
            .expect("just set")
            .elements()
            .iter()
            .enumerate()
            .map(|(i, s)| format!("tau_{i}: theta -> {}", s.image()))
            .collect();
        for l in lines {
            self.note(l);
        }
        Ok(())
    }

    fn ensure_bundle(&mut self) -> CliResult<&Bundle> {
        if self.state()?.bundle.is_none() {
            self.note("note: no recurrences yet, solving for every conjugacy class");
            self.solve(None)?;
            self.changed.push("solve".into());
        }
        Ok(self.state.as_ref().and_then(|s| s.bundle.as_ref()).expect("bundle present"))
    }

    fn solve(&mut self, target: Option<IdempotentTarget>) -> CliResult<()> {
        self.ensure_group()?;
        let state = self.state()?;
        let group = state.group().expect("group present").clone();
        let alpha = match &state.bundle {
            Some(b) => b.alpha().clone(),
            None => galois::find_normal_element(&group, DEFAULT_NORMAL_BOUND)?,
        };
        let targets: Vec<IdempotentTarget> = match target {
            Some(t) => vec![t.canonical(&group)?],
            None => group.classes().iter().map(|c| IdempotentTarget::Class(c.representative)).collect(),
        };
        let recs = idempotent::solve_many(&group, &alpha, &targets)?;
        let bundle = Bundle::new(group, alpha, targets.into_iter().zip(recs).collect())?;
        let lines: Vec<String> = bundle.recurrences().iter().map(describe_recurrence).collect();
        state.bundle = Some(bundle);
        for l in lines {
            self.note(l);
        }
        Ok(())
    }
}

/// Both sign conventions, as printed to stderr.
fn describe_recurrence(t: &splitrec_core::TargetRecurrence) -> String {
    let f = t.recurrence.char_poly();
    let d = t.recurrence.order();
    let c: Vec<String> = (1..=d).map(|i| rat::to_string(&f.coeff(d - i))).collect();
    let s: Vec<String> = (1..=d)
        .map(|i| {
            let v = f.coeff(d - i);
            rat::to_string(&if i % 2 == 1 { -v } else { v })
        })
        .collect();
    let init: Vec<String> = t.recurrence.initial().iter().map(rat::to_string).collect();
    format!(
        "{}: a_m + c_1 a_(m-1) + ... + c_d a_(m-d) = 0 with c = ({}), i.e. f(x) = x^d - s_1 x^(d-1) + s_2 x^(d-2) - ... with s = ({}); initial ({})",
        crate::report::header(t),
        c.join(", "),
        s.join(", "),
        init.join(", ")
    )
}

fn rational_arg(s: &str, name: &str) -> CliResult<splitrec_core::Rat> {
    rat::parse(s).map_err(|_| CliError::Usage(format!("{name} must be an integer or n/d, got {s:?}")))
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{kind} needs {flag}")))
}

fn family(args: &FamilyArgs) -> CliResult<families::Family> {
    if args.quadratic {
        return Ok(families::quadratic_sqrt(need(args.big_d, "-D N", "quadratic")?)?);
    }
    if let Some(c) = &args.quadratic_coeffs {
        return Ok(families::quadratic(&rational_arg(&c[0], "C1")?, &rational_arg(&c[1], "C2")?)?);
    }
    if args.cubic_shanks {
        let t = args.t.as_deref().ok_or_else(|| CliError::Usage("--cubic-shanks needs -t T".into()))?;
        return Ok(families::cubic_shanks(&rational_arg(t, "T")?)?);
    }
    if args.quartic_cyclic {
        let k = "quartic-cyclic";
        return Ok(families::quartic_cyclic(
            need(args.a, "-a A", k)?,
            need(args.b, "-b B", k)?,
            need(args.d, "-d D", k)?,
            need(args.r, "-r R", k)?,
        )?);
    }
    if args.cyclotomic {
        return Ok(families::cyclotomic(need(args.q, "-q Q", "cyclotomic")?)?);
    }
    Err(CliError::Usage(
        "family needs one of --quadratic, --quadratic-coeffs, --cubic-shanks, --quartic-cyclic, --cyclotomic".into(),
    ))
}

/// Makes the polynomial monic and integral by rescaling its root.
fn normalize(poly: PolyQ) -> CliResult<(PolyQ, Option<BigInt>)> {
    if poly.degree().unwrap_or(0) == 0 {
        return Err(CliError::Usage("the polynomial must have degree at least 1".into()));
    }
    let monic = poly.monic();
    if monic.is_integral() {
        return Ok((monic, None));
    }
    let n = modular::bigint_from_biguint(monic.denominator_lcm());
    Ok((monic.scale_roots(&n), Some(n)))
}

fn build(args: &BuildArgs, run: &mut Run<'_>, command: &str) -> CliResult<State> {
    let (poly, scale) = normalize(parse_poly(&args.poly)?)?;
    if let Some(n) = scale {
        run.note(format!("note: generator rescaled by {n}; the field is defined by {poly}"));
    }
    let irr = if args.assume_irreducible { Irreducibility::Assume } else { Irreducibility::Certify };
    let field = NumberField::new(poly, irr).map_err(|e| match e {
        splitrec_core::Error::IrreducibilityUnproven => CliError::Usage(
            "irreducibility could not be certified from factorization patterns; pass --assume-irreducible if you know it holds"
                .into(),
        ),
        other => other.into(),
    })?;
    let mut state = State::new(field.clone(), Provenance::new(command));
    if let Some(path) = &args.automorphisms {
        let images = artifact::parse_automorphism_file(&std::fs::read_to_string(path)?)?
            .into_iter()
            .map(|c| field.element(c))
            .collect::<splitrec_core::Result<Vec<_>>>()?;
        state.group = Some(GaloisGroup::from_automorphisms(&field, images)?);
    }
    Ok(state)
}

fn parse_subset(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("--subset expects indices like \"0,1,2\", got {s:?}"))))
        .collect()
}

fn check_prime(p: u64) -> CliResult<u64> {
    if modular::is_prime_u64(p) {
        Ok(p)
    } else {
        Err(CliError::Usage(format!("{p} is not prime")))
    }
}

fn run_stage(stage: &Stage, run: &mut Run<'_>, command: &str) -> CliResult<()> {
    match stage {
        Stage::Family(args) => {
            let fam = family(args)?;
            run.note(format!("family: {}", fam.description));
            for t in fam.bundle.recurrences() {
                let line = describe_recurrence(t);
                run.note(line);
            }
            let field = fam.bundle.group().field().clone();
            let mut state = State::new(field, Provenance::new(command));
            state.bundle = Some(fam.bundle);
            run.state = Some(state);
            run.changed.clear();
            run.changed.push(command.to_string());
        }
        Stage::Build(args) => {
            run.state = Some(build(args, run, command)?);
            run.changed.clear();
            run.changed.push(command.to_string());
        }
        Stage::Galois => {
            if run.state()?.group().is_none() {
                run.ensure_group()?;
                run.changed.push(command.to_string());
            }
        }
        Stage::Solve(args) => {
            let target = match (args.class, &args.subset) {
                (Some(c), _) => Some(IdempotentTarget::Class(c)),
                (None, Some(s)) => Some(IdempotentTarget::Subset(parse_subset(s)?)),
                (None, None) => None,
            };
            run.solve(target)?;
            run.changed.push(command.to_string());
        }
        Stage::Eval(args) => {
            let bundle = run.ensure_bundle()?;
            let out = match (args.prime, &args.range) {
                (Some(p), _) => report::eval_prime_json(bundle, check_prime(p)?),
                (None, Some(r)) => {
                    let (lo, hi) = parse_range(r)?;
                    let ps: Vec<u64> = primes::prime_iter(lo, hi)?.collect();
                    report::eval_range_json(bundle, lo, hi, &ps)
                }
                (None, None) => return Err(CliError::Usage("eval needs --prime P or --range A:B".into())),
            };
            run.outputs.push(out);
        }
        Stage::Verify(args) => {
            let (lo, hi) = parse_range(&args.range)?;
            let mut tuning = run.tuning.clone();
            if let Some(j) = args.jobs {
                tuning.jobs = j;
            }
            let bundle = run.ensure_bundle()?.clone();
            let r = parallel::verify_parallel(&bundle, lo, hi, &tuning)?;
            run.note(report::report_summary(&r));
            run.failed |= !r.passed();
            run.outputs.push(report::report_json(&bundle, &r));
        }
        Stage::Table(args) => {
            let (lo, hi) = parse_range(&args.range)?;
            let bundle = run.ensure_bundle()?;
            let ps: Vec<u64> = primes::prime_iter(lo, hi)?.collect();
            let text = report::table_text(bundle, &ps);
            run.outputs.push(text);
        }
    }
    Ok(())
}

fn produces_artifact(stage: &Stage) -> bool {
    matches!(stage, Stage::Family(_) | Stage::Build(_) | Stage::Galois | Stage::Solve(_))
}

/// Runs a full command line (without the program name); returns the exit status.
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (global_args, stage_args) = split_stages(args);
    let globals = match Globals::try_parse_from(std::iter::once("splitrec".to_string()).chain(global_args)) {
        Ok(g) => g,
        Err(e) => return clap_exit(e, stdout, stderr),
    };
    if stage_args.is_empty() {
        let _ = writeln!(stderr, "error: no stage given\n\n{STAGE_HELP}");
        return 2;
    }
    let mut stages = Vec::with_capacity(stage_args.len());
    for seg in &stage_args {
        match StageCli::try_parse_from(std::iter::once("splitrec".to_string()).chain(seg.iter().cloned())) {
            Ok(s) => stages.push((s.stage, seg.iter().map(|a| quote(a)).collect::<Vec<_>>().join(" "))),
            Err(e) => return clap_exit(e, stdout, stderr),
        }
    }
    match drive(&globals, &stages, stdin, stderr) {
        Ok((text, failed)) => {
            let written = match &globals.out {
                Some(path) => std::fs::write(path, text.as_bytes()).map_err(CliError::from),
                None => stdout.write_all(text.as_bytes()).map_err(CliError::from),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            i32::from(failed)
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn clap_exit(e: clap::Error, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = write!(stdout, "{e}");
            0
        }
        _ => {
            let _ = write!(stderr, "{e}");
            2
        }
    }
}

fn drive(
    globals: &Globals,
    stages: &[(Stage, String)],
    stdin: &mut dyn Read,
    stderr: &mut dyn Write,
) -> CliResult<(String, bool)> {
    let tuning = Tuning { lift_start: globals.lift_start, segment_size: globals.segment_size, jobs: globals.jobs };
    let mut run = Run { tuning, state: None, outputs: Vec::new(), failed: false, changed: Vec::new(), err: stderr };
    if !matches!(stages[0].0, Stage::Family(_) | Stage::Build(_)) {
        let text = match &globals.input {
            Some(path) => std::fs::read_to_string(path)?,
            None => {
                let mut s = String::new();
                stdin.read_to_string(&mut s)?;
                s
            }
        };
        run.state = Some(State::from_json(&text)?);
    }
    for (stage, command) in stages {
        run_stage(stage, &mut run, command)?;
    }
    if !run.changed.is_empty() {
        let state = run.state.as_mut().expect("a stage produced state");
        let fresh = format!("splitrec {}", run.changed.join(" "));
        state.provenance.command = if run.changed[0].starts_with("family") || run.changed[0].starts_with("build") {
            fresh
        } else {
            format!("{} | {fresh}", state.provenance.command)
        };
    }
    let mut text = run.outputs.concat();
    if produces_artifact(&stages[stages.len() - 1].0) {
        text.push_str(&run.state.as_ref().expect("artifact stage leaves state").to_json()?);
    }
    Ok((text, run.failed))
}
