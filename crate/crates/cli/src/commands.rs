use std::path::Path;

use hyperspline::convergence::{exact_end, Sampled};
use hyperspline::{
    alpha_limit_study, fit_hermite_s2, fit_s1, fit_s2, fit_t1, fit_t2, monotone_slopes, run_convergence_study, shape_search,
    ConvergenceReport, DataSet, EndCondition, EndKind, ExpPiece, Family, Interpolant, LimitPair, Partition, ShapeSearch,
    StudyConfig, TensionParam, TestFunction,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, FitRequest, RawRequest};
use crate::output::{self, companion, csv_table, emit, sample_rows, Table, COLUMNS};
use crate::{Cli, ConvergeArgs, Failure, FitArgs, FitFamily, Format, LimitArgs, ShapeArgs, StudyArgs, StudyFamily};

fn load(json_path: Option<&Path>, csv_path: Option<&Path>) -> Result<RawRequest, Failure> {
    match (json_path, csv_path) {
        (Some(p), _) => input::read_json(p),
        (None, Some(p)) => input::read_csv(p),
        (None, None) => Err(Failure::Invalid("no input given".into())),
    }
}

/// Writes a sample table (at `--out`) and a JSON document (inside the JSON
/// output, or next to the CSV with `suffix`).
fn publish<T: Serialize>(cli: &Cli, columns: &[&str], rows: &[Vec<f64>], key: &str, doc: &T, suffix: &str) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match cli.format {
        Format::Csv => {
            emit(out, &csv_table(columns, rows))?;
            if let Some(p) = out {
                output::write(&companion(p, suffix), &output::json(doc))?;
            }
            Ok(())
        }
        Format::Json => {
            let mut v = serde_json::to_value(doc).expect("serializable output");
            if let Value::Object(m) = &mut v {
                m.insert(key.to_string(), serde_json::to_value(Table { columns, rows }).expect("table"));
            }
            emit(out, &output::json(&v))
        }
    }
}

fn piece_record(j: usize, p: &Partition, piece: Value) -> Value {
    let mut rec = json!({ "interval": j, "xl": p.nodes()[j], "xr": p.nodes()[j + 1] });
    if let (Value::Object(m), Value::Object(extra)) = (&mut rec, piece) {
        m.extend(extra);
    }
    rec
}

fn exp_records(p: &Partition, pieces: &[ExpPiece]) -> Vec<Value> {
    pieces.iter().enumerate().map(|(j, piece)| piece_record(j, p, serde_json::to_value(piece).expect("piece"))).collect()
}

fn end_json(end: Option<EndCondition>) -> Value {
    match end {
        None => Value::Null,
        Some(e) => {
            let (l, r) = e.payload();
            match e.kind() {
                EndKind::TypeII => json!({ "type": "II" }),
                k => json!({ "type": k.to_string(), "left": l, "right": r }),
            }
        }
    }
}

pub fn fit(cli: &Cli, args: &FitArgs) -> Result<(), Failure> {
    let raw = load(args.input.as_deref(), args.input_csv.as_deref())?;
    let req = FitRequest::build(raw, args)?;
    for w in &req.warnings {
        eprintln!("warning: {w}");
    }
    let (p, d, al) = (&req.partition, &req.data, req.alpha);
    let (spline, records, derivs): (Box<dyn Interpolant>, Vec<Value>, usize) = match (req.order, req.family) {
        (1, family) => {
            let s = if family == FitFamily::S { fit_s1(p, d, al)? } else { fit_t1(p, d, al)? };
            let basis = if family == FitFamily::S { "cosh_sinh" } else { "tanh" };
            let recs = (0..p.intervals())
                .map(|j| piece_record(j, p, json!({ "basis": basis, "yl": d.values[j], "yr": d.values[j + 1] })))
                .collect();
            (Box::new(s), recs, 0)
        }
        (_, FitFamily::S) => match &req.slopes {
            Some(m) => {
                let s = fit_hermite_s2(p, d, m, al)?;
                let recs = exp_records(p, s.pieces());
                (Box::new(s), recs, 1)
            }
            None => {
                let s = fit_s2(p, d, al, req.end.expect("validated end"))?;
                let recs = exp_records(p, s.pieces());
                (Box::new(s), recs, 2)
            }
        },
        (_, FitFamily::T) => {
            let t = fit_t2(p, d, al, req.end.expect("validated end"))?;
            let recs = t
                .tanh_pieces()
                .iter()
                .zip(t.scaled_pieces())
                .enumerate()
                .map(|(j, (q, s))| {
                    piece_record(j, p, json!({ "basis": "tanh", "p0": q.p0, "p1": q.p1, "q0": q.q0, "q1": q.q1, "scaled": s }))
                })
                .collect();
            (Box::new(t), recs, 2)
        }
    };
    let rows = sample_rows(spline.as_ref(), &p.sample_grid(req.samples), derivs)?;
    let doc = json!({
        "order": req.order,
        "family": req.family,
        "hermite": req.slopes.is_some(),
        "alpha": al.value(),
        "end": end_json(req.end),
        "pieces": records,
    });
    publish(cli, &COLUMNS[..derivs + 2], &rows, "samples", &doc, ".coeffs.json")
}

fn family_of(s: &StudyArgs) -> Result<Family, Failure> {
    let order = || match s.order {
        Some(o @ (1 | 2)) => Ok(o),
        Some(o) => Err(Failure::Invalid(format!("order must be 1 or 2, got {o}"))),
        None => Err(Failure::Invalid("order is required for families s and t".into())),
    };
    Ok(match s.family {
        StudyFamily::S => if order()? == 1 { Family::S1 } else { Family::S2 },
        StudyFamily::T => if order()? == 1 { Family::T1 } else { Family::T2 },
        StudyFamily::Linear => Family::Linear,
        StudyFamily::Cubic => Family::Cubic,
        StudyFamily::Hermite => Family::Hermite,
        StudyFamily::CubicHermite => Family::CubicHermite,
    })
}

fn interval(given: &Option<Vec<f64>>, default: (f64, f64)) -> Result<(f64, f64), Failure> {
    match given.as_deref() {
        None => Ok(default),
        Some(&[a, b]) if a.is_finite() && b.is_finite() && a < b => Ok((a, b)),
        Some(v) => Err(Failure::Invalid(format!("interval {v:?} must be two finite values a < b"))),
    }
}

fn function(name: &str) -> Result<TestFunction, Failure> {
    TestFunction::from_name(name).ok_or_else(|| Failure::Invalid(format!("unknown function {name:?} (sin, exp, runge)")))
}

#[derive(Serialize)]
struct StudyDoc<'a> {
    function: Option<&'a str>,
    seed: Option<u64>,
    interval: (f64, f64),
    family: Family,
    end: String,
    #[serde(flatten)]
    report: &'a ConvergenceReport,
}

fn level_rows(report: &ConvergenceReport) -> Vec<Vec<f64>> {
    report.levels.iter().map(|l| vec![l.step, l.error]).collect()
}

pub fn converge(cli: &Cli, args: &ConvergeArgs) -> Result<(), Failure> {
    let f = function(&args.function)?;
    let family = family_of(&args.study)?;
    let config = StudyConfig {
        function: f,
        interval: interval(&args.interval, f.interval())?,
        alpha: args.alpha,
        family,
        end: args.study.end,
        deriv: args.deriv,
        samples: args.study.samples,
    };
    let report = run_convergence_study(&config, &args.levels)?;
    let doc = StudyDoc {
        function: Some(f.name()),
        seed: None,
        interval: config.interval,
        family,
        end: args.study.end.to_string(),
        report: &report,
    };
    publish(cli, &["h", "error"], &level_rows(&report), "table", &doc, ".report.json")
}

pub fn limit(cli: &Cli, args: &LimitArgs) -> Result<(), Failure> {
    let family = family_of(&args.study)?;
    if !family.needs_tension() {
        return Err(Failure::Invalid(format!("family {family:?} has no tension")));
    }
    if args.alphas.is_empty() {
        return Err(Failure::Invalid("--alphas needs at least one value".into()));
    }
    let f = args.function.as_deref().map(function).transpose()?;
    let (a, b) = interval(&args.interval, f.map_or((0.0, 3.0), |f| f.interval()))?;
    let p = Partition::uniform(a, b, args.n)?;
    let kind = args.study.end;
    let (data, end, slopes) = match f {
        Some(f) => {
            let data = DataSet::sample(&p, |x| f.eval(x, 0));
            let slopes: Vec<f64> = p.nodes().iter().map(|&x| f.eval(x, 1)).collect();
            (data, exact_end(f, kind, a, b), slopes)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut draw = |n: usize| -> Vec<f64> { (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect() };
            let data = DataSet::new(draw(p.nodes().len()));
            let slopes = draw(p.nodes().len());
            let ends = draw(2);
            (data, EndCondition::new(kind, ends[0], ends[1])?, slopes)
        }
    };
    let sampled = Sampled { partition: &p, data: &data, end, slopes: Some(&slopes) };
    let report = alpha_limit_study(LimitPair::natural(family), &sampled, &args.alphas, args.study.samples)?;
    let doc = StudyDoc {
        function: f.map(|f| f.name()),
        seed: if f.is_none() { Some(cli.seed) } else { None },
        interval: (a, b),
        family,
        end: kind.to_string(),
        report: &report,
    };
    publish(cli, &["alpha", "error"], &level_rows(&report), "table", &doc, ".report.json")
}

#[derive(Serialize)]
struct ShapeDoc<'a> {
    alpha0: f64,
    slopes: &'a [f64],
    #[serde(flatten)]
    search: &'a ShapeSearch,
}

/// Sample points per interval in the table written by `shape`.
const SHAPE_TABLE_SAMPLES: usize = 100;

pub fn shape(cli: &Cli, args: &ShapeArgs) -> Result<(), Failure> {
    let raw = load(args.input.as_deref(), args.input_csv.as_deref())?;
    let (p, d) = input::points(&raw)?;
    let slopes = match raw.slopes {
        Some(s) => s,
        None => monotone_slopes(&p, &d.values),
    };
    let alpha0 = TensionParam::new(args.alpha0)?;
    let search = shape_search(&p, &d, &slopes, alpha0, args.property.into(), args.resolution)?;
    let last = args.alpha0 * 0.5f64.powi(search.halvings as i32);
    let fit = fit_hermite_s2(&p, &d, &slopes, TensionParam::new(search.alpha.unwrap_or(last))?)?;
    let rows = sample_rows(&fit, &p.sample_grid(SHAPE_TABLE_SAMPLES), 1)?;
    let doc = ShapeDoc { alpha0: args.alpha0, slopes: &slopes, search: &search };
    publish(cli, &COLUMNS[..3], &rows, "samples", &doc, ".report.json")?;
    if search.alpha.is_none() {
        let at = search.report.witness.map_or(String::new(), |w| format!(" (violated at x = {})", output::num(w)));
        return Err(Failure::Search(format!(
            "{:?} not reached within {} halvings{at}",
            search.report.property, search.halvings
        )));
    }
    Ok(())
}
