use std::io::Write;

use serde::Serialize;
use spectravoid::curves::MatrixCurve;
use spectravoid::gapstats::{sample_gaps, verify_codimension, Verdict};
use spectravoid::structures::{codimension_table, compatible_collisions, TableRow};
use spectravoid::tracking::{detect_events, track, EventOptions, EventTarget, GapEvent};
use spectravoid::{CollisionClass, StructureClass, StructureKind};

use crate::config::{CodimArgs, CurveChoice, Format, GapsArgs, TableArgs, TrackArgs};
use crate::error::{CliError, CliResult};
use crate::output::{create, events_path, fmt_f64, with_sink, write_json};

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Done,
    Verdict(Verdict),
}

#[derive(Debug, Serialize)]
struct EventRecord {
    t_star: f64,
    /// Two branch indices, or one for a branch meeting a fixed point.
    pair: Vec<usize>,
    min_gap: f64,
    location: f64,
    classification: spectravoid::tracking::Classification,
    collision_class: CollisionClass,
}

impl From<&GapEvent<f64>> for EventRecord {
    fn from(e: &GapEvent<f64>) -> Self {
        let pair = match e.target {
            EventTarget::Pair(j, k) => vec![j, k],
            EventTarget::Point(j) => vec![j],
        };
        Self {
            t_star: e.t_star,
            pair,
            min_gap: e.min_gap,
            location: e.location,
            classification: e.classification,
            collision_class: e.collision_class,
        }
    }
}

#[derive(Debug, Serialize)]
struct EventReport {
    structure: StructureClass,
    curve: &'static str,
    seed: u64,
    t_min: f64,
    t_max: f64,
    spectral_scale: f64,
    /// Thresholds are relative to `spectral_scale`.
    tol_cross: f64,
    tol_avoid: f64,
    ambiguous_intervals: Vec<(f64, f64)>,
    events: Vec<EventRecord>,
}

fn build_curve(args: &TrackArgs, class: StructureClass) -> CliResult<MatrixCurve<f64>> {
    let group = class.kind().is_group();
    let choice = args.curve.unwrap_or(if group { CurveChoice::Polar } else { CurveChoice::Pencil });
    let (lo, hi, seed) = (args.t_min, args.t_max, args.seed);
    let curve = match choice {
        CurveChoice::Pencil if !group => MatrixCurve::random_pencil(class, lo, hi, seed)?,
        CurveChoice::Polar if group => MatrixCurve::random_polar(class, lo, hi, seed)?,
        CurveChoice::Cayley | CurveChoice::Exp if class.kind() == StructureKind::Unitary => {
            if choice == CurveChoice::Cayley {
                MatrixCurve::random_cayley(class, lo, hi, seed)?
            } else {
                eprintln!("note: exponential paths collide wherever eigenvalues of H(t) differ by a multiple of 2 pi");
                MatrixCurve::random_exp(class, lo, hi, seed, 1.0)?
            }
        }
        other => {
            return Err(CliError::Invalid(format!("curve {other:?} is not available for {class}").to_lowercase()));
        }
    };
    Ok(curve)
}

pub fn cmd_track(args: &TrackArgs) -> CliResult<Outcome> {
    let class = args.structure.class()?;
    let curve = build_curve(args, class)?;
    let path = track(&curve, args.grid)?;
    let events = detect_events(&path, &curve)?;

    let out = &args.out;
    let mut w = create(out)?;
    let written = match args.format {
        Format::Csv => (|| {
            writeln!(w, "t,branch,value")?;
            for (t, row) in path.t_grid.iter().zip(&path.branches) {
                for (j, v) in row.iter().enumerate() {
                    writeln!(w, "{},{j},{}", fmt_f64(*t), fmt_f64(*v))?;
                }
            }
            w.flush()
        })(),
        Format::Json => write_json(&mut w, &path).and_then(|_| w.flush()),
    };
    written.map_err(|e| CliError::io(out, e))?;

    let opts = EventOptions::default();
    let report = EventReport {
        structure: class,
        curve: curve.kind().name(),
        seed: args.seed,
        t_min: args.t_min,
        t_max: args.t_max,
        spectral_scale: path.spectral_scale(),
        tol_cross: opts.tol_cross,
        tol_avoid: opts.tol_avoid,
        ambiguous_intervals: path.ambiguous.clone(),
        events: events.iter().map(EventRecord::from).collect(),
    };
    let ev_path = events_path(out);
    with_sink(Some(&ev_path), |w| write_json(w, &report))?;
    Ok(Outcome::Done)
}

pub fn cmd_gaps(args: &GapsArgs) -> CliResult<Outcome> {
    let class = args.structure.class()?;
    let columns = compatible_collisions(&class);
    if columns.is_empty() {
        return Err(CliError::Invalid(format!("no collision can occur in {class}")));
    }
    let samples = sample_gaps::<f64>(&class, args.samples, args.seed)?;
    let rows: Vec<Vec<f64>> = samples
        .iter()
        .map(|s| columns.iter().map(|&c| s.get(c).expect("compatible collisions are defined")).collect())
        .collect();
    with_sink(args.out.as_deref(), |w| match args.format {
        Format::Csv => {
            let names: Vec<&str> = columns.iter().map(|c| c.name()).collect();
            writeln!(w, "sample,{}", names.join(","))?;
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
                writeln!(w, "{i},{}", cells.join(","))?;
            }
            Ok(())
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Gaps<'a> {
                structure: StructureClass,
                seed: u64,
                columns: &'a [CollisionClass],
                rows: &'a [Vec<f64>],
            }
            write_json(w, &Gaps { structure: class, seed: args.seed, columns: &columns, rows: &rows })
        }
    })?;
    Ok(Outcome::Done)
}

#[derive(Debug, Serialize)]
struct CodimReport {
    structure: StructureClass,
    collision: CollisionClass,
    n: usize,
    samples: usize,
    seed: u64,
    tail_fraction: f64,
    exponent: f64,
    stderr: f64,
    expected: u32,
    verdict: Verdict,
}

pub fn cmd_codim(args: &CodimArgs) -> CliResult<Outcome> {
    let class = args.structure.class()?;
    let collision = CollisionClass::from(args.collision);
    let est = verify_codimension::<f64>(&class, collision, args.samples, args.seed, args.tail_fraction)?;
    let report = CodimReport {
        structure: class,
        collision,
        n: class.n(),
        samples: est.sample_count,
        seed: args.seed,
        tail_fraction: est.tail_fraction,
        exponent: est.exponent,
        stderr: est.stderr,
        expected: est.expected,
        verdict: est.verdict,
    };
    with_sink(None, |w| write_json(w, &report))?;
    if let Some(p) = &args.out {
        with_sink(Some(p), |w| write_json(w, &report))?;
    }
    Ok(Outcome::Verdict(est.verdict))
}

pub fn cmd_table(args: &TableArgs) -> CliResult<Outcome> {
    let rows = codimension_table();
    with_sink(None, |w| match args.format {
        Some(Format::Json) => write_json(w, &rows),
        Some(Format::Csv) => {
            writeln!(w, "structure,n,m,bandwidth,ambient_formula,ambient_dimension,codimension,note")?;
            for r in &rows {
                writeln!(
                    w,
                    "\"{}\",{},{},{},{},{},{},\"{}\"",
                    r.structure,
                    r.class.n(),
                    r.class.m(),
                    r.class.bandwidth().map_or(String::new(), |k| k.to_string()),
                    r.ambient_formula,
                    r.ambient_dimension,
                    r.codimension,
                    r.note.as_deref().unwrap_or("")
                )?;
            }
            Ok(())
        }
        None => write_text_table(w, &rows),
    })?;
    Ok(Outcome::Done)
}

fn write_text_table(w: &mut dyn Write, rows: &[TableRow]) -> std::io::Result<()> {
    let width = rows.iter().map(|r| r.structure.len()).max().unwrap_or(0);
    writeln!(w, "{:width$}  {:>7}  {:<16} {:>7}  {:>5}", "structure", "size", "ambient", "", "codim")?;
    let mut notes = Vec::new();
    for r in rows {
        let size = if r.class.kind().is_rectangular() {
            format!("{}x{}", r.class.m(), r.class.n())
        } else {
            format!("n={}", r.class.n())
        };
        let mark = match &r.note {
            Some(note) => {
                notes.push(format!("[{}] {}: {note}", notes.len() + 1, r.structure));
                format!(" [{}]", notes.len())
            }
            None => String::new(),
        };
        writeln!(
            w,
            "{:width$}  {:>7}  {:<16} {:>7}  {:>5}{mark}",
            r.structure, size, r.ambient_formula, r.ambient_dimension, r.codimension
        )?;
    }
    for n in notes {
        writeln!(w, "{n}")?;
    }
    Ok(())
}
