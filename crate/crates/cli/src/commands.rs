use std::collections::{BTreeMap, HashMap};
use std::io::{self, Write};

use serde_json::Value;
use thiserror::Error;

use comet_core::charformula::{coeff_recursion, compare_table, CoeffMemo, CountReport};
use comet_core::crystal::{
    self, apply_e, apply_f, confluence_counterexample, count_steep, entries, enumerate_steep, format_word, normalize,
    parse_op_word, SteepSequence,
};
use comet_core::freealg::{
    modular_dimensions, run_fact_grid, specialization_points, Algebra, Fact, FreeAlgError, QuiverParams,
};
use comet_core::qarith::{check_identity, evaluate, AtPoint, Identity};
use comet_core::quiver::{DegreeVector, Gen};

use crate::report::{emit, records_table, sink, Record, Table};
use crate::{Cli, Command, Format, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<crystal::CrystalError> for CliError {
    fn from(e: crystal::CrystalError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FreeAlgError> for CliError {
    fn from(e: FreeAlgError) -> Self {
        match e {
            FreeAlgError::InvalidParams(_) | FreeAlgError::OutOfRange(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn params(cli: &Cli) -> Result<QuiverParams> {
    let max_loop = cli.max_loop.unwrap_or(cli.max_i.max(1));
    Ok(QuiverParams::new(cli.omega, cli.r, cli.max_i, cli.max_j, max_loop)?)
}

/// `n:m1,...,mr`, or `n,m1,...,mr`.
fn parse_degree(s: &str, r: usize) -> Result<DegreeVector> {
    let bad = || CliError::Usage(format!("bad degree `{s}`"));
    let d: DegreeVector = if s.contains(':') {
        s.parse().map_err(|_| bad())?
    } else {
        let parts = s.split(',').map(|x| x.trim().parse::<u32>()).collect::<std::result::Result<Vec<_>, _>>();
        let parts = parts.map_err(|_| bad())?;
        DegreeVector::new(parts[0], parts[1..].to_vec())
    };
    if d.r() != r {
        return Err(CliError::Usage(format!("degree `{s}` has {} color components, expected {r}", d.r())));
    }
    Ok(d)
}

fn upto(p: &QuiverParams, s: Option<&str>) -> Result<DegreeVector> {
    let Some(s) = s else { return Ok(p.top()) };
    let d = parse_degree(s, p.r)?;
    if !p.in_box(&d) {
        return Err(CliError::Usage(format!("degree {d} is outside the truncation {}", p.top())));
    }
    Ok(d)
}

fn degree_params(d: &DegreeVector) -> Vec<i64> {
    std::iter::once(d.n).chain(d.m.iter().copied()).map(i64::from).collect()
}

fn degree_columns(r: usize) -> Vec<String> {
    std::iter::once("n".to_string()).chain((1..=r).map(|k| format!("m{k}"))).collect()
}

fn degree_cells(d: &DegreeVector) -> Vec<Value> {
    std::iter::once(d.n).chain(d.m.iter().copied()).map(Value::from).collect()
}

fn count_cell(x: &impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map_or(Value::String(s), Value::from)
}

pub fn run(cli: &Cli) -> Result<bool> {
    let p = params(cli)?;
    let r = p.r;
    let mut out = sink(cli.out.as_deref())?;
    let w: &mut dyn Write = &mut *out;
    match &cli.command {
        Command::Normalize { word } => {
            let s = normalize(&parse_op_word(word, r)?, r)?;
            line(cli.format, w, &[("word", word.clone()), ("steep", s.to_string())], &s.to_string())?;
            Ok(true)
        }
        Command::Apply { op, steep } => {
            let (kind, iota) = parse_op(op, r)?;
            let b = SteepSequence::parse(steep, r)?;
            let res = if kind == 'f' { Some(apply_f(iota, &b)?) } else { apply_e(iota, &b)? };
            let text = res.map_or_else(|| "none".to_string(), |s| s.to_string());
            line(cli.format, w, &[("op", op.clone()), ("steep", steep.clone()), ("result", text.clone())], &text)?;
            Ok(true)
        }
        Command::Enum { degree } => {
            let d = parse_degree(degree, r)?;
            let mut t = Table::new(vec!["degree".into(), "steep".into()]);
            for s in enumerate_steep(&d)? {
                t.rows.push(vec![d.to_string().into(), s.to_string().into()]);
            }
            emit(&t, None, cli.format, w)?;
            Ok(true)
        }
        Command::Dims { upto: u } => {
            let top = upto(&p, u.as_deref())?;
            let dims = quotient_dims(&p, &top)?;
            let modular = modular_dimensions(&p, std::slice::from_ref(&top), &specialization_points(cli.seed))?;
            let mut t = Table::new(degree_columns(r).into_iter().chain(["dim".to_string()]).collect());
            for (d, dim) in &dims {
                t.rows.push(degree_cells(d).into_iter().chain([Value::from(*dim)]).collect());
            }
            emit(&t, None, cli.format, w)?;
            if !modular.agree || modular.dims != dims {
                let witness = Record {
                    fact: "modular_dims".into(),
                    params: vec![cli.seed as i64],
                    pass: false,
                    witness: Some(format!("{:?}", modular.dims)),
                };
                println!("{}", serde_json::to_string(&witness).expect("records serialize"));
                return Ok(false);
            }
            Ok(true)
        }
        Command::Compare { upto: u } => {
            let top = upto(&p, u.as_deref())?;
            let rows = compare_table(&top, Some(&quotient_dims(&p, &top)?))?;
            emit(&compare_rows(r, &rows), None, cli.format, w)?;
            Ok(rows.iter().all(|x| x.pass))
        }
        Command::Verify { suite } => {
            let mut records = Vec::new();
            if matches!(suite, Suite::Identities | Suite::All) {
                records.extend(identity_records(cli.grid)?);
            }
            if matches!(suite, Suite::Algebra | Suite::All) {
                records.extend(algebra_records(&p)?);
            }
            if matches!(suite, Suite::Crystal | Suite::All) {
                records.extend(crystal_records(&p)?);
            }
            if *suite == Suite::All {
                let top = p.top();
                for row in compare_table(&top, Some(&quotient_dims(&p, &top)?))? {
                    records.push(Record {
                        fact: "compare".into(),
                        params: degree_params(&row.degree),
                        pass: row.pass,
                        witness: (!row.pass).then(|| row.csv()),
                    });
                }
            }
            emit(&records_table(&records), Some(&records), cli.format, w)?;
            let failed: Vec<&Record> = records.iter().filter(|x| !x.pass).collect();
            if !failed.is_empty() && (cli.format == Format::Csv || cli.out.is_some()) {
                let mut so = io::stdout().lock();
                for f in &failed {
                    serde_json::to_writer(&mut so, f).map_err(io::Error::from)?;
                    writeln!(so)?;
                }
            }
            Ok(failed.is_empty())
        }
    }
}

fn line(format: Format, w: &mut dyn Write, fields: &[(&str, String)], text: &str) -> Result<()> {
    match format {
        Format::Csv => writeln!(w, "{text}")?,
        Format::Json => {
            let obj: serde_json::Map<String, Value> =
                fields.iter().map(|(k, v)| (k.to_string(), Value::from(v.clone()))).collect();
            writeln!(w, "{}", Value::Object(obj))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `f:ENTRY` or `e:ENTRY`; the colon is optional.
fn parse_op(op: &str, r: usize) -> Result<(char, Gen)> {
    let op = op.trim();
    let bad = || CliError::Usage(format!("bad operator `{op}`, expected f:ENTRY or e:ENTRY"));
    let kind = op.chars().next().filter(|c| *c == 'f' || *c == 'e').ok_or_else(bad)?;
    let rest = op[1..].trim_start_matches([':', '_']).trim();
    match parse_op_word(rest, r)?.as_slice() {
        [g] => Ok((kind, *g)),
        _ => Err(bad()),
    }
}

fn quotient_dims(p: &QuiverParams, top: &DegreeVector) -> Result<BTreeMap<DegreeVector, usize>> {
    Ok(Algebra::on(p, std::slice::from_ref(top))?.quotient().dimensions())
}

fn compare_rows(r: usize, rows: &[CountReport]) -> Table {
    let cols = degree_columns(r).into_iter().chain(["series", "recursion", "steep", "dim", "pass"].map(String::from));
    let mut t = Table::new(cols.collect());
    for x in rows {
        let mut row = degree_cells(&x.degree);
        row.extend([count_cell(&x.series), count_cell(&x.recursion), count_cell(&x.steep)]);
        row.push(x.quotient.map_or(Value::Null, Value::from));
        row.push(Value::from(if x.pass { "pass" } else { "fail" }));
        t.rows.push(row);
    }
    t
}

fn identity_records(grid: i64) -> Result<Vec<Record>> {
    if grid < 0 {
        return Err(CliError::Usage(format!("grid size must be nonnegative, got {grid}")));
    }
    let point = AtPoint::new("3".parse().expect("literal")).expect("3 is a valid point");
    let mut out = Vec::new();
    for id in Identity::ALL {
        for params in id.grid(grid) {
            let (pass, witness) = match (check_identity(id.name(), &params), evaluate(&point, id, &params)) {
                (Ok(s), Ok(n)) if s.holds && n.holds => (true, None),
                (Ok(s), Ok(n)) => {
                    (false, Some(format!("lhs = {}, rhs = {}; at v = 3: {} vs {}", s.lhs, s.rhs, n.lhs, n.rhs)))
                }
                (Err(e), _) | (_, Err(e)) => (false, Some(e.to_string())),
            };
            out.push(Record { fact: id.name().into(), params, pass, witness });
        }
    }
    Ok(out)
}

fn algebra_records(p: &QuiverParams) -> Result<Vec<Record>> {
    let alg = Algebra::new(p)?;
    let mut out = Vec::new();
    for f in Fact::ALL {
        for rep in run_fact_grid(&alg, f)? {
            out.push(Record { fact: f.name().into(), params: rep.params, pass: rep.pass, witness: rep.witness });
        }
    }
    Ok(out)
}

fn crystal_records(p: &QuiverParams) -> Result<Vec<Record>> {
    let top = p.top();
    let r = p.r;
    let mut memo = CoeffMemo::new();
    let mut out = Vec::new();
    let mut push = |fact: &str, d: &DegreeVector, witness: Option<String>| {
        out.push(Record { fact: fact.into(), params: degree_params(d), pass: witness.is_none(), witness });
    };
    for d in top.box_below() {
        let pair = confluence_counterexample(&d)?;
        push("confluence", &d, pair.map(|(a, b)| format!("{} vs {}", format_word(&a, r), format_word(&b, r))));

        let steep = count_steep(&d)?;
        let rec = coeff_recursion(&d, &mut memo);
        push("steep_count", &d, (rec != steep.into()).then(|| format!("{steep} steep sequences, recursion {rec}")));

        let mut inverse = None;
        let mut fast = None;
        for iota in entries(r, p.max_loop) {
            let mut pre: HashMap<SteepSequence, SteepSequence> = HashMap::new();
            for b in enumerate_steep(&d)? {
                let f = apply_f(iota, &b)?;
                if apply_e(iota, &f)?.as_ref() != Some(&b) {
                    inverse.get_or_insert(format!("e~_{iota} f~_{iota} ({b}) != {b}"));
                }
                if let Some(old) = pre.insert(f.clone(), b.clone()) {
                    inverse.get_or_insert(format!("f~_{iota} sends {old} and {b} to {f}"));
                }
            }
            let up = d.add(&iota.degree(r));
            if iota.is_real() && up.le(&top) {
                for b in enumerate_steep(&up)? {
                    if apply_e(iota, &b)? != pre.get(&b).cloned() {
                        fast.get_or_insert(format!("e~_{iota} ({b})"));
                    }
                }
            }
        }
        push("inverse_laws", &d, inverse);
        push("fast_e_real", &d, fast);
    }
    Ok(out)
}
