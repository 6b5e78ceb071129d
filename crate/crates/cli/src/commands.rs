use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use orbigw::algebra::Rational;
use orbigw::correlator::{
    dilaton_reduce, divisor_reduce, p1_reconstruct, p1_theory, seed_from_ring, string_reduce, wdvv_residual,
    wdvv_sweep, CorrelatorKey, CorrelatorTable, Evaluator, FormalSum, Theory, P1_MAX_POINTS,
};
use orbigw::orbifold::{census, wps_census, Sector, Weights};
use orbigw::quantum_ring::{structure_constants, verify_structure_seeded, RingPresentation, VERIFY_SEED};
use orbigw::twisted_curves::{euler_char, solve_map_picard, virtual_dim, Football, MapSpec, PicClass, PicardGroup, SheafClass};
use orbigw::Error;
use serde_json::{json, Value};

use crate::args::{Cli, Command, CorrelatorCommand, Format, MapsCommand, RingArgs, RingCommand, RrCommand, Rule, TableArg, WeightsArg};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

#[derive(Debug)]
pub struct CliError {
    message: String,
    check_failure: bool,
}

impl CliError {
    pub fn is_check_failure(&self) -> bool {
        self.check_failure
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let check_failure = matches!(e, Error::NotConfluent(_) | Error::DegeneratePairing | Error::MissingEntries(_));
        CliError { message: e.to_string(), check_failure }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { message: message.into(), check_failure: false }
}

type CliResult<T> = Result<T, CliError>;

pub fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn rat(s: &str) -> CliResult<Rational> {
    s.trim().parse().map_err(|e: Error| usage(e.to_string()))
}

fn weights(w: &WeightsArg) -> CliResult<Weights> {
    let (a, b) = w.weights;
    Ok(match w.bezout {
        Some((m, n)) => Weights::with_bezout(a, b, m, n)?,
        None => Weights::new(a, b)?,
    })
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Census(args) => {
            if let Some(ws) = &args.wps {
                return census_wps(ws, format);
            }
            let (a, b) = args.weights.expect("clap requires --weights or --wps");
            census_ab(&Weights::new(a, b)?, args.denominator, format)
        }
        Command::Ring(cmd) => ring(cmd, format),
        Command::Rr(cmd) => rr(cmd, format),
        Command::Maps(MapsCommand::Solve { weights: w, degree, third_order }) => {
            let w = weights(w)?;
            let sols = solve_map_picard(&w, *degree, *third_order)?;
            let text = match format {
                Format::Json => pretty(&json!({ "solutions": sols })),
                Format::Table => {
                    let mut s = format!("{} solution(s)\n", sols.len());
                    for p in &sols {
                        writeln!(s, "z0={} zinf={} torsion={:?}", p.z0, p.zinf, p.torsion).unwrap();
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
        Command::Correlator(cmd) => correlator(cmd, format),
    }
}

fn census_ab(w: &Weights, denominator: Option<u64>, format: Format) -> CliResult<Output> {
    let components = census(w);
    let text = match format {
        Format::Json => pretty(&json!(components)),
        Format::Table => {
            let mut s = format!("{:<14} {:>3} {:>3} {:>8}\n", "sector", "dim", "r", "age");
            for c in &components {
                let age = match denominator {
                    Some(den) => c.age.to_string_over(den),
                    None => c.age.to_pq_string(),
                };
                writeln!(s, "{:<14} {:>3} {:>3} {:>8}", c.sector.to_string(), c.dimension, c.band_order, age).unwrap();
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn census_wps(ws: &[u64], format: Format) -> CliResult<Output> {
    let sectors = wps_census(ws)?;
    let text = match format {
        Format::Json => pretty(&json!(sectors)),
        Format::Table => {
            let mut s = format!("{:>8} {:>3} {:>3} {:>8}  fixed\n", "twist", "dim", "r", "age");
            for c in &sectors {
                writeln!(s, "{:>8} {:>3} {:>3} {:>8}  {:?}", c.twist.to_pq_string(), c.dimension, c.band_order, c.age.to_pq_string(), c.fixed).unwrap();
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn ring(cmd: &RingCommand, format: Format) -> CliResult<Output> {
    match cmd {
        RingCommand::Present(args) => {
            let w = weights(&args.weights)?;
            let pr = RingPresentation::quantum(&w);
            let text = match format {
                Format::Json => pretty(&json!({
                    "weights": [w.a(), w.b()],
                    "bezout": [w.m(), w.n()],
                    "relations": pr.relations,
                    "grading": pr.grading,
                    "zeta_shift": pr.zeta_shift,
                })),
                Format::Table => {
                    let mut s = String::new();
                    for r in &pr.relations {
                        writeln!(s, "{r} = 0").unwrap();
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
        RingCommand::Constants(args) => {
            let sc = ring_table(args)?;
            let sparse = sc.sparse();
            let basis: Vec<String> = sc.basis.iter().map(|m| m.to_string()).collect();
            let text = match format {
                Format::Json => pretty(&json!({
                    "basis": basis,
                    "truncation": sc.truncation,
                    "constants": sparse,
                })),
                Format::Table => {
                    let mut s = String::new();
                    for (i, j) in (0..sc.rank()).flat_map(|i| (i..sc.rank()).map(move |j| (i, j))) {
                        writeln!(s, "{} * {} = {}", basis[i], basis[j], sc.product(i, j)).unwrap();
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
        RingCommand::Verify { ring, seed } => {
            let sc = ring_table(ring)?;
            let report = verify_structure_seeded(&sc, seed.unwrap_or(VERIFY_SEED))?;
            let text = match format {
                Format::Json => pretty(&json!(report)),
                Format::Table => {
                    let mut s = String::new();
                    for c in &report.checks {
                        writeln!(s, "{:<20} {}", c.name, if c.passed { "PASS" } else { "FAIL" }).unwrap();
                        for f in &c.failures {
                            writeln!(s, "    {f}").unwrap();
                        }
                    }
                    s
                }
            };
            Ok(Output { text, passed: report.all_passed() })
        }
    }
}

fn ring_table(args: &RingArgs) -> CliResult<orbigw::quantum_ring::StructureConstants> {
    let w = weights(&args.weights)?;
    Ok(structure_constants(&w, args.truncate)?)
}

fn single_value(name: &str, v: &Rational, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({ name: v })),
        Format::Table => format!("{name} = {v}\n"),
    }
}

fn rr(cmd: &RrCommand, format: Format) -> CliResult<Output> {
    match cmd {
        RrCommand::Chi { genus, orders, rank, degree, ages } => {
            let curve = Football::new(*genus, orders.clone())?;
            let ages = match ages {
                Some(list) => list.iter().map(|s| rat(s)).collect::<CliResult<Vec<_>>>()?,
                None => vec![Rational::zero(); orders.len()],
            };
            let sheaf = SheafClass { rank: *rank, degree: rat(degree)?, ages };
            Ok(Output::ok(single_value("chi", &euler_char(&sheaf, &curve)?, format)))
        }
        RrCommand::H0 { weights: (a, b), z0, zinf, orders, torsion } => {
            let group = PicardGroup { a: *a, b: *b, extra_orders: orders.clone() };
            let class = PicClass::with_torsion(*z0, *zinf, torsion.clone());
            let canonical = group.canonical(&class)?;
            let degree = group.degree(&class)?;
            let h0 = group.h0(&class)?;
            let text = match format {
                Format::Json => pretty(&json!({ "class": class, "canonical": canonical, "degree": degree, "h0": h0 })),
                Format::Table => format!("degree = {degree}\nh0 = {h0}\n"),
            };
            Ok(Output::ok(text))
        }
        RrCommand::Vdim { weights: w, beta, sectors } => {
            let w = weights(w)?;
            let sectors = sectors.iter().map(|s| s.parse()).collect::<Result<Vec<Sector>, Error>>()?;
            let spec = MapSpec::new(w, *beta, sectors)?;
            Ok(Output::ok(single_value("vdim", &virtual_dim(&spec)?, format)))
        }
    }
}

fn theory(args: &RingArgs) -> CliResult<Theory> {
    Ok(Theory::new(ring_table(args)?)?)
}

fn load_table(theory: &Theory, arg: &TableArg) -> CliResult<CorrelatorTable> {
    match &arg.table {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            Ok(CorrelatorTable::from_json_lines(&text, theory)?)
        }
        None => Ok(seed_from_ring(theory)?),
    }
}

fn sum_json(sum: &FormalSum) -> Value {
    json!(sum
        .terms
        .iter()
        .map(|(c, k)| json!({ "coeff": c, "key": k.to_string() }))
        .collect::<Vec<_>>())
}

fn sum_output(sum: &FormalSum, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({ "terms": sum_json(sum) })),
        Format::Table => format!("{sum}\n"),
    }
}

fn correlator(cmd: &CorrelatorCommand, format: Format) -> CliResult<Output> {
    match cmd {
        CorrelatorCommand::Seed(args) => Ok(Output::ok(seed_from_ring(&theory(args)?)?.to_json_lines())),
        CorrelatorCommand::Reduce { ring, table, insertions, beta, rule } => {
            let theory = theory(ring)?;
            let ins = insertions.iter().map(|s| theory.parse_insertion(s)).collect::<Result<Vec<_>, _>>()?;
            let key = CorrelatorKey::new(*beta, ins)?;
            let text = match rule {
                Rule::Eval => {
                    let mut ev = Evaluator::new(&theory, load_table(&theory, table)?);
                    single_value("value", &ev.evaluate(&key)?, format)
                }
                Rule::String => sum_output(&string_reduce(&key)?, format),
                Rule::Dilaton => {
                    let (factor, reduced) = dilaton_reduce(&key)?;
                    sum_output(&FormalSum::single(Rational::from_integer(factor), reduced), format)
                }
                Rule::Divisor => sum_output(&divisor_reduce(&theory, &key, theory.point())?, format),
            };
            Ok(Output::ok(text))
        }
        CorrelatorCommand::Wdvv { ring, table, four, extras, beta, sweep, max_points } => {
            let theory = theory(ring)?;
            let table = load_table(&theory, table)?;
            if *sweep {
                let cases = wdvv_sweep(&theory, &table, *beta, *max_points)?;
                return Ok(sweep_output(&cases, format));
            }
            let four = four.as_ref().expect("clap requires --four without --sweep");
            if four.len() != 4 {
                return Err(usage(format!("--four needs exactly 4 classes, got {}", four.len())));
            }
            let classes = four.iter().map(|s| theory.parse_class(s)).collect::<Result<Vec<_>, _>>()?;
            let extras = extras.iter().map(|s| theory.parse_insertion(s)).collect::<Result<Vec<_>, _>>()?;
            let residual = wdvv_residual(&theory, &table, [classes[0], classes[1], classes[2], classes[3]], &extras, *beta)?;
            Ok(Output { passed: residual.is_zero(), text: single_value("residual", &residual, format) })
        }
        CorrelatorCommand::P1 { max_beta, check } => {
            let table = p1_reconstruct(*max_beta)?;
            if !*check {
                return Ok(Output::ok(table.to_json_lines()));
            }
            let theory = p1_theory(*max_beta)?;
            let cases = wdvv_sweep(&theory, &table, *max_beta, P1_MAX_POINTS)?;
            Ok(sweep_output(&cases, format))
        }
    }
}

fn sweep_output(cases: &[orbigw::correlator::WdvvCase], format: Format) -> Output {
    let nonzero: Vec<_> = cases.iter().filter(|c| !c.residual.is_zero()).collect();
    let text = match format {
        Format::Json => pretty(&json!({ "cases": cases.len(), "nonzero": nonzero })),
        Format::Table => {
            let mut s = format!("{} cases, {} nonzero\n", cases.len(), nonzero.len());
            for c in &nonzero {
                writeln!(s, "{:?} + {:?} beta={}: {}", c.four, c.extras, c.beta, c.residual).unwrap();
            }
            s
        }
    };
    Output { text, passed: nonzero.is_empty() }
}
