//! The `codeloop` command line.
//!
//! Exit codes: 0 on success, 2 on parse or configuration errors, 3 when a
//! verification finds violations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::codes::{
    build_code, parse_rows, verify_build, verify_generator, BinaryCode, BuildOptions,
    BuildReport, CodeBuild, SimplexCode,
};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::loops::{p_from_loop, CodeLoop, LoopReport};
use crate::polarization::{
    comb_degree_formula, comb_degree_oracle, derived_form_eval, derived_form_table,
    multiexp_p_weight, CombDegree,
};
use crate::poly_map::{
    from_complemented_anf, random_gf2_poly, to_complemented_anf, ReducedPoly, SubsetFamily,
    ValueTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Name of the built-in worked example preset.
pub const PRESET_NAME: &str = "paper-example";
const PRESET_POLY: &str = "x2 + x1*x3 + x1*x2*x3";
const PRESET_ORDER: &str = "1,2;2,3;1,2,3";
const DEGREE_EXAMPLE: &str = "x1^3*x2^7 + x1*x2*x3^5";

#[derive(Parser, Debug)]
#[command(
    name = "codeloop",
    version,
    about = "Combinatorial degree, codes of prescribed level, and code loops"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce a polynomial and report its combinatorial degree.
    Degree(DegreeArgs),
    /// Evaluate a derived form at a tuple of vectors.
    Polarize(PolarizeArgs),
    /// Recover the reduced polynomial of a value table.
    Interpolate(InterpolateArgs),
    /// Convert between a GF(2) polynomial and its complemented normal form.
    Anf(AnfArgs),
    /// Build the code of level cdeg P − 1 from a GF(2) map.
    BuildCode(BuildCodeArgs),
    /// Report the level of a code given by a generator matrix.
    Level(LevelArgs),
    /// Build and verify the code loop of a map or a doubly even code.
    BuildLoop(BuildLoopArgs),
    /// Check a generator matrix against a GF(2) map.
    Verify(VerifyArgs),
    /// Walk through the worked examples end to end.
    DemoPaperExample(DemoArgs),
}

/// A map given either inline or as a value table file.
#[derive(Args, Debug, Clone)]
pub struct MapInput {
    /// Polynomial such as "x1^3*x2^7 + x1*x2*x3^5".
    pub expr: Option<String>,
    /// JSON value table {"field":"p^e","n":n,"table":[...]}.
    #[arg(long, conflicts_with = "expr")]
    pub table: Option<PathBuf>,
    /// Number of variables (defaults to the largest index used).
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DegreeArgs {
    #[arg(long, default_value = "2")]
    pub field: String,
    #[command(flatten)]
    pub input: MapInput,
    /// Also compute the degree by exhaustive polarization.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct PolarizeArgs {
    #[arg(long, default_value = "2")]
    pub field: String,
    #[command(flatten)]
    pub input: MapInput,
    /// One argument vector as comma-separated encodings; repeat for each slot.
    #[arg(long = "at")]
    pub at: Vec<String>,
    /// Order of the form; with no --at, dumps the whole form.
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct InterpolateArgs {
    /// JSON value table.
    pub table: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct AnfArgs {
    #[command(flatten)]
    pub input: MapInput,
    /// Go the other way: a family such as "1,2;2,3;1,2,3".
    #[arg(long, conflicts_with_all = ["expr", "table"])]
    pub from_family: Option<String>,
    #[arg(long)]
    pub json: bool,
}

/// Options shared by the code-building subcommands.
#[derive(Args, Debug, Clone)]
pub struct CodeSource {
    #[command(flatten)]
    pub input: MapInput,
    /// Built-in example: P = x2 + x1*x3 + x1*x2*x3 with its simplex generator.
    #[arg(long, value_parser = [PRESET_NAME])]
    pub preset: Option<String>,
    /// Order of the subset family, e.g. "1,2;2,3;1,2,3".
    #[arg(long = "order-J")]
    pub order_j: Option<String>,
    /// File with the rows of the simplex generator (a transposed Hamming
    /// parity-check matrix).
    #[arg(long)]
    pub hamming_matrix: Option<PathBuf>,
    /// Simplex dimension m ≥ cdeg P; the code then has level m − 1.
    #[arg(long)]
    pub block_dim: Option<usize>,
    /// Draw P at random instead of reading it.
    #[arg(long)]
    pub random: bool,
    /// Degree of the random P.
    #[arg(long, requires = "random")]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BuildCodeArgs {
    #[command(flatten)]
    pub source: CodeSource,
    /// Verify this generator matrix instead of the constructed one.
    #[arg(long)]
    pub check: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct LevelArgs {
    /// Generator matrix file, one row per line.
    pub code: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BuildLoopArgs {
    #[command(flatten)]
    pub source: CodeSource,
    /// Use this doubly even code instead of building one from P.
    #[arg(long, conflicts_with_all = ["expr", "table", "preset", "random"])]
    pub code: Option<PathBuf>,
    /// Write the loop (η and Cayley table) as JSON to this file.
    #[arg(long)]
    pub export_cayley: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: MapInput,
    /// Generator matrix to check, row i the image of e_i.
    #[arg(long)]
    pub code: PathBuf,
    /// Required level r (defaults to cdeg P − 1).
    #[arg(long)]
    pub r: Option<u32>,
    /// Required ambient length.
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    #[arg(long)]
    pub json: bool,
}

/// Outcome of a subcommand before it becomes an exit code.
enum Outcome {
    Ok,
    Violations,
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Violations) => EXIT_VERIFY,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_VERIFY,
        _ => EXIT_CONFIG,
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Degree(a) => cmd_degree(a, out),
        Command::Polarize(a) => cmd_polarize(a, out),
        Command::Interpolate(a) => cmd_interpolate(a, out),
        Command::Anf(a) => cmd_anf(a, out),
        Command::BuildCode(a) => cmd_build_code(a, out),
        Command::Level(a) => cmd_level(a, out),
        Command::BuildLoop(a) => cmd_build_loop(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::DemoPaperExample(a) => cmd_demo(a, out),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Invalid(format!("I/O error: {e}"))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    writeln!(out, "{text}").map_err(io)
}

fn parse_field(spec: &str) -> Result<FieldCtx> {
    spec.parse()
}

/// Reads a map as a polynomial; tables are interpolated.
fn read_poly(field: &FieldCtx, input: &MapInput) -> Result<ReducedPoly> {
    match (&input.expr, &input.table) {
        (Some(expr), None) => ReducedPoly::parse(field, input.vars, expr),
        (None, Some(path)) => {
            let table = ValueTable::from_json_str(&read_file(path)?)?;
            if !table.field().same_field(field) {
                return Err(Error::FieldMismatch(format!(
                    "table is over GF({}) but --field is {field}",
                    table.field()
                )));
            }
            ReducedPoly::interpolate(&table)
        }
        (None, None) => Err(Error::Invalid("give a polynomial or --table FILE".into())),
        (Some(_), Some(_)) => Err(Error::Invalid("give either a polynomial or --table, not both".into())),
    }
}

fn cmd_degree(a: &DegreeArgs, out: &mut dyn Write) -> Result<Outcome> {
    let field = parse_field(&a.field)?;
    let poly = read_poly(&field, &a.input)?;
    let p = field.characteristic() as u64;
    let deg = comb_degree_formula(&poly);
    let mut monomials = Vec::new();
    for (exps, coeff) in poly.terms() {
        monomials.push((exps.to_string(), coeff, multiexp_p_weight(exps, p)?));
    }
    let oracle = if a.oracle {
        Some(comb_degree_oracle(&poly.to_table()?)?)
    } else {
        None
    };
    let mismatch = oracle.is_some_and(|o| o != deg);
    if a.json {
        let mut v = json!({
            "field": field.to_string(),
            "n": poly.arity(),
            "poly": poly.to_string(),
            "monomials": monomials.iter().map(|(m, c, w)| json!({
                "monomial": m, "coeff": c, "p_weight": w
            })).collect::<Vec<_>>(),
            "cdeg": deg,
        });
        if let Some(o) = oracle {
            v["oracle_cdeg"] = json!(o);
        }
        emit_json(out, &v)?;
    } else {
        writeln!(out, "poly: {poly}").map_err(io)?;
        for (m, c, w) in &monomials {
            writeln!(out, "  {c}*{m}: p-weight {w}").map_err(io)?;
        }
        if let Some(o) = oracle {
            writeln!(out, "oracle: {o}").map_err(io)?;
        }
        writeln!(out, "cdeg: {deg}").map_err(io)?;
    }
    Ok(if mismatch { Outcome::Violations } else { Outcome::Ok })
}

fn parse_vector(field: &FieldCtx, n: usize, text: &str) -> Result<Vec<crate::FieldElement>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if parts.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: parts.len(),
        });
    }
    parts
        .iter()
        .map(|p| {
            let v: u32 = p
                .parse()
                .map_err(|_| Error::Invalid(format!("{p:?} is not an element encoding")))?;
            field.element(v)
        })
        .collect()
}

fn cmd_polarize(a: &PolarizeArgs, out: &mut dyn Write) -> Result<Outcome> {
    let field = parse_field(&a.field)?;
    let poly = read_poly(&field, &a.input)?;
    let table = poly.to_table()?;
    if a.at.is_empty() {
        let s = a
            .s
            .ok_or_else(|| Error::Invalid("give --at vectors or --s to dump the form".into()))?;
        let values = derived_form_table(&table, s)?;
        if a.json {
            emit_json(out, &json!(values))?;
        } else {
            let line: Vec<String> = values.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" ")).map_err(io)?;
        }
        return Ok(Outcome::Ok);
    }
    if let Some(s) = a.s {
        if s != a.at.len() {
            return Err(Error::Arity {
                expected: s,
                got: a.at.len(),
            });
        }
    }
    let tuple = a
        .at
        .iter()
        .map(|t| parse_vector(&field, poly.arity(), t))
        .collect::<Result<Vec<_>>>()?;
    let value = derived_form_eval(&table, &tuple)?;
    if a.json {
        emit_json(out, &json!({"s": tuple.len(), "value": value.encoding()}))?;
    } else {
        writeln!(out, "{}", value.encoding()).map_err(io)?;
    }
    Ok(Outcome::Ok)
}

fn cmd_interpolate(a: &InterpolateArgs, out: &mut dyn Write) -> Result<Outcome> {
    let table = ValueTable::from_json_str(&read_file(&a.table)?)?;
    let poly = ReducedPoly::interpolate(&table)?;
    if a.json {
        emit_json(
            out,
            &json!({"field": table.field().to_string(), "n": poly.arity(), "poly": poly.to_string()}),
        )?;
    } else {
        writeln!(out, "{poly}").map_err(io)?;
    }
    Ok(Outcome::Ok)
}

fn cmd_anf(a: &AnfArgs, out: &mut dyn Write) -> Result<Outcome> {
    if let Some(text) = &a.from_family {
        let mut family: SubsetFamily = text.parse()?;
        if let Some(n) = a.input.vars {
            family = family.with_universe(n)?;
        }
        let poly = from_complemented_anf(&family);
        if a.json {
            emit_json(out, &json!({"n": poly.arity(), "poly": poly.to_string()}))?;
        } else {
            writeln!(out, "{poly}").map_err(io)?;
        }
        return Ok(Outcome::Ok);
    }
    let poly = read_poly(&FieldCtx::gf2(), &a.input)?;
    let family = to_complemented_anf(&poly)?;
    if a.json {
        emit_json(out, &json!({"n": poly.arity(), "family": family.sets()}))?;
    } else {
        writeln!(out, "{family}").map_err(io)?;
    }
    Ok(Outcome::Ok)
}

/// Resolves P and the build options from the shared flags.
fn resolve_source(src: &CodeSource) -> Result<(ReducedPoly, BuildOptions)> {
    let preset = src.preset.is_some();
    let chosen = [src.input.expr.is_some() || src.input.table.is_some(), preset, src.random];
    if chosen.iter().filter(|&&c| c).count() != 1 {
        return Err(Error::Invalid(
            "give exactly one of a polynomial, --table, --preset or --random".into(),
        ));
    }
    let f2 = FieldCtx::gf2();
    let poly = if preset {
        ReducedPoly::parse(&f2, Some(3), PRESET_POLY)?
    } else if src.random {
        let n = src
            .input
            .vars
            .ok_or_else(|| Error::Invalid("--random needs --vars".into()))?;
        let degree = src
            .degree
            .ok_or_else(|| Error::Invalid("--random needs --degree".into()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(src.seed);
        random_gf2_poly(&mut rng, n, degree)?
    } else {
        read_poly(&f2, &src.input)?
    };
    let mut opts = BuildOptions {
        block_dim: src.block_dim,
        ..BuildOptions::default()
    };
    if preset {
        opts.simplex = Some(SimplexCode::worked_example());
        opts.order = Some(PRESET_ORDER.parse()?);
    }
    if let Some(path) = &src.hamming_matrix {
        opts.simplex = Some(SimplexCode::from_rows(parse_rows(&read_file(path)?)?)?);
    }
    if let Some(order) = &src.order_j {
        opts.order = Some(order.parse()?);
    }
    Ok((poly, opts))
}

fn report_json(report: &BuildReport) -> serde_json::Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn write_report(out: &mut dyn Write, report: &BuildReport) -> Result<()> {
    writeln!(out, "level: {}", report.level).map_err(io)?;
    writeln!(out, "length: {}", report.length).map_err(io)?;
    writeln!(out, "dim: {}", report.dim).map_err(io)?;
    if report.ok() {
        writeln!(out, "verification: ok").map_err(io)?;
    } else {
        writeln!(out, "violations: {}", report.violations.len()).map_err(io)?;
        for v in &report.violations {
            writeln!(out, "  {v}").map_err(io)?;
        }
    }
    Ok(())
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::Violations
    }
}

fn build_json(build: &CodeBuild, rows: &BinaryCode, report: &BuildReport) -> serde_json::Value {
    let block = build.block_length();
    json!({
        "poly": build.poly().to_string(),
        "n": build.num_vars(),
        "r": build.level_target(),
        "family": build.family().sets(),
        "rows": rows.rows().iter().map(|c| c.to_blocks(block)).collect::<Vec<_>>(),
        "report": report_json(report),
    })
}

fn cmd_build_code(a: &BuildCodeArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (poly, opts) = resolve_source(&a.source)?;
    let build = build_code(&poly, &opts)?;
    let (rows, report) = match &a.check {
        Some(path) => {
            let rows = parse_rows(&read_file(path)?)?;
            let report = verify_generator(
                &poly,
                &rows,
                build.level_target(),
                Some(build.expected_length()),
            )?;
            let len = rows.first().map_or(0, |r| r.len());
            let code = BinaryCode::new(len, rows.clone()).unwrap_or_else(|_| BinaryCode::zero(len));
            let shown = if code.dimension() == rows.len() { code } else { build.code().clone() };
            (shown, report)
        }
        None => (build.code().clone(), verify_build(&build)?),
    };
    if a.json {
        emit_json(out, &build_json(&build, &rows, &report))?;
    } else {
        writeln!(out, "P: {}", build.poly()).map_err(io)?;
        writeln!(out, "J: {}", build.family()).map_err(io)?;
        writeln!(out, "r: {}", build.level_target()).map_err(io)?;
        writeln!(out, "generator:").map_err(io)?;
        write!(out, "{}", rows.to_matrix_string(build.block_length())).map_err(io)?;
        write_report(out, &report)?;
    }
    Ok(outcome(report.ok()))
}

fn cmd_level(a: &LevelArgs, out: &mut dyn Write) -> Result<Outcome> {
    let code = BinaryCode::parse(&read_file(&a.code)?, None)?;
    let level = code.level()?;
    if a.json {
        emit_json(
            out,
            &json!({"level": level, "length": code.length(), "dim": code.dimension()}),
        )?;
    } else {
        writeln!(out, "{level}").map_err(io)?;
    }
    Ok(Outcome::Ok)
}

fn loop_json(l: &CodeLoop, report: &LoopReport, p: Option<&ValueTable>, roundtrip: Option<bool>) -> serde_json::Value {
    let mut v = json!({
        "order": l.order(),
        "code_dim": l.code().dimension(),
        "report": serde_json::to_value(report).expect("reports serialize"),
    });
    if let Some(table) = p {
        v["squaring_map"] = table.to_json();
    }
    if let Some(ok) = roundtrip {
        v["roundtrip"] = json!(ok);
    }
    v
}

fn cmd_build_loop(a: &BuildLoopArgs, out: &mut dyn Write) -> Result<Outcome> {
    let (code, poly) = match &a.code {
        Some(path) => (BinaryCode::parse(&read_file(path)?, None)?, None),
        None => {
            let (poly, opts) = resolve_source(&a.source)?;
            if poly.is_zero() {
                (BinaryCode::zero(0), Some(poly))
            } else {
                let build = build_code(&poly, &opts)?;
                let report = verify_build(&build)?;
                if !report.ok() {
                    return Err(Error::Internal(format!(
                        "constructed code fails verification: {}",
                        report.violations[0]
                    )));
                }
                (build.code().clone(), Some(poly))
            }
        }
    };
    let l = CodeLoop::from_code(&code)?;
    let mut report = l.verify_identities()?;
    let p = match p_from_loop(&l) {
        Ok(t) => Some(t),
        Err(e) => {
            report.violations.push(format!("squaring map: {e}"));
            None
        }
    };
    let roundtrip = match (&poly, &p) {
        (Some(poly), Some(t)) if !poly.is_zero() => {
            let same = poly.to_table()? == *t;
            if !same {
                report.violations.push("squaring map differs from P".into());
            }
            Some(same)
        }
        (Some(_), Some(t)) => Some(t.is_zero_map()),
        _ => None,
    };
    if let Some(path) = &a.export_cayley {
        let text = serde_json::to_string(&l.export()).expect("loop export serializes");
        fs::write(path, text + "\n")
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    if a.json {
        emit_json(out, &loop_json(&l, &report, p.as_ref(), roundtrip))?;
    } else {
        writeln!(out, "order: {}", l.order()).map_err(io)?;
        let squares: Vec<String> = report.squares.iter().map(|s| format!("({},{})", s.x, s.a)).collect();
        writeln!(out, "squares: {}", squares.join(" ")).map_err(io)?;
        writeln!(out, "latin square: {}", report.latin_square).map_err(io)?;
        writeln!(out, "moufang: {}", report.moufang).map_err(io)?;
        writeln!(out, "elementary abelian: {}", report.elementary_abelian).map_err(io)?;
        if let Some(t) = &p {
            let vals: Vec<String> = t.values().iter().map(u32::to_string).collect();
            writeln!(out, "squaring map: {}", vals.join("")).map_err(io)?;
        }
        if let Some(ok) = roundtrip {
            writeln!(out, "recovers P: {ok}").map_err(io)?;
        }
        if report.ok() {
            writeln!(out, "verification: ok").map_err(io)?;
        } else {
            for v in &report.violations {
                writeln!(out, "violation: {v}").map_err(io)?;
            }
        }
    }
    Ok(outcome(report.ok()))
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome> {
    let poly = read_poly(&FieldCtx::gf2(), &a.input)?;
    let r = match a.r {
        Some(r) => r,
        None => match comb_degree_formula(&poly) {
            CombDegree::Finite(d) if d >= 1 => d as u32 - 1,
            other => {
                return Err(Error::Degree(format!("{other}; pass --r explicitly")));
            }
        },
    };
    let rows = parse_rows(&read_file(&a.code)?)?;
    let report = verify_generator(&poly, &rows, r, a.length)?;
    if a.json {
        emit_json(out, &report_json(&report))?;
    } else {
        write_report(out, &report)?;
    }
    Ok(outcome(report.ok()))
}

fn cmd_demo(a: &DemoArgs, out: &mut dyn Write) -> Result<Outcome> {
    let f9 = FieldCtx::new(3, 2)?;
    let f = ReducedPoly::parse(&f9, None, DEGREE_EXAMPLE)?;
    let degrees: Vec<(String, CombDegree)> = DEGREE_EXAMPLE
        .split('+')
        .map(|m| {
            let term = ReducedPoly::parse(&f9, Some(3), m.trim())?;
            Ok((m.trim().to_string(), comb_degree_formula(&term)))
        })
        .collect::<Result<_>>()?;
    let total = comb_degree_formula(&f);

    let f2 = FieldCtx::gf2();
    let p = ReducedPoly::parse(&f2, Some(3), PRESET_POLY)?;
    let opts = BuildOptions {
        simplex: Some(SimplexCode::worked_example()),
        order: Some(PRESET_ORDER.parse()?),
        block_dim: None,
    };
    let build = build_code(&p, &opts)?;
    let report = verify_build(&build)?;
    let points: Vec<(u64, String, u64, u32)> = [0b100u64, 0b111]
        .iter()
        .map(|&x| {
            let c = build.embed(x);
            (x, c.to_blocks(7), c.weight(), p.eval_bits(x))
        })
        .collect();
    let l = CodeLoop::from_code(build.code())?;
    let loop_report = l.verify_identities()?;
    let recovered = p_from_loop(&l)? == p.to_table()?;
    let ok = report.ok() && loop_report.ok() && recovered && total == CombDegree::Finite(5);

    if a.json {
        emit_json(
            out,
            &json!({
                "degree_example": {
                    "field": "3^2",
                    "monomials": degrees.iter().map(|(m, d)| json!({"monomial": m, "cdeg": d})).collect::<Vec<_>>(),
                    "cdeg": total,
                },
                "code_example": build_json(&build, build.code(), &report),
                "points": points.iter().map(|(x, c, w, px)| json!({
                    "x": x, "codeword": c, "weight": w, "P": px
                })).collect::<Vec<_>>(),
                "loop": {
                    "order": l.order(),
                    "moufang": loop_report.moufang,
                    "squares": loop_report.squares.len(),
                    "recovers_P": recovered,
                    "violations": loop_report.violations,
                },
            }),
        )?;
    } else {
        writeln!(out, "combinatorial degree over GF(9):").map_err(io)?;
        for (m, d) in &degrees {
            writeln!(out, "  cdeg({m}) = {d}").map_err(io)?;
        }
        writeln!(out, "  cdeg({DEGREE_EXAMPLE}) = {total}").map_err(io)?;
        writeln!(out, "code of level 2 from P = {p}:").map_err(io)?;
        writeln!(out, "  J = {}", build.family()).map_err(io)?;
        for (i, row) in build.code().rows().iter().enumerate() {
            writeln!(out, "  pi(e{}) = ({})", i + 1, row.to_blocks(7)).map_err(io)?;
        }
        for (x, c, w, px) in &points {
            writeln!(
                out,
                "  x = {x:03b}: pi(x) = ({c}), w = {w}, w/4 mod 2 = {}, P(x) = {px}",
                (w / 4) % 2
            )
            .map_err(io)?;
        }
        writeln!(out, "  length {}, level {}", report.length, report.level).map_err(io)?;
        writeln!(out, "code loop:").map_err(io)?;
        writeln!(
            out,
            "  order {}, Moufang {}, |L^2| = {}, squaring map recovers P: {recovered}",
            l.order(),
            loop_report.moufang,
            loop_report.squares.len()
        )
        .map_err(io)?;
        writeln!(out, "{}", if ok { "all checks passed" } else { "CHECKS FAILED" }).map_err(io)?;
    }
    Ok(outcome(ok))
}
