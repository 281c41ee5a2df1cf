use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, Context};
use log::info;
use serde::Serialize;

use qupit::cost::{growth_table, mode_table, ModeRow};
use qupit::linalg::{frac_power, make_not, random_unitary_seeded};
use qupit::netlist::{deserialize, expand_mcx, serialize};
use qupit::synth::{block_exponents, synthesize};
use qupit::verify::{demo_cascade, exponent_check, oracle, verify_circuit, verify_mode};
use qupit::{GateClass, GateMode, ModeName, RationalExponent, VerificationReport, VERIFY_TOL};

use crate::args::{
    CheckModesArgs, Cli, Command, DemoArgs, Format, ModeArgs, OracleArgs, RootArgs, SynthArgs,
    TableArgs, VerifyArgs,
};
use crate::qsource::QSource;
use crate::Status;

pub const TOL_ENV: &str = "QUPIT_TOL";

pub fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Synth(a) => synth(a),
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a),
        Command::CheckModes(a) => check_modes(a),
        Command::Oracle(a) => oracle_cmd(a),
        Command::Root(a) => root(a),
        Command::DemoCascade(a) => demo(a),
    }
}

fn tolerance(flag: Option<f64>) -> anyhow::Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .with_context(|| format!("{TOL_ENV}=`{v}` is not a number"))?,
            Err(_) => VERIFY_TOL,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(anyhow!("tolerance must be positive, got {tol}"));
    }
    Ok(tol)
}

fn emit(out: Option<&Path>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let written = stdout.write_all(body.as_bytes()).and_then(|()| {
                if body.ends_with('\n') {
                    Ok(())
                } else {
                    stdout.write_all(b"\n")
                }
            });
            match written {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

/// Status lines go to stdout when the payload is written to a file, else to
/// stderr so stdout stays machine-readable.
fn status_line(out: Option<&Path>, line: &str) {
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn to_csv<T: Serialize>(rows: &[T]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn resolve_mode(a: &ModeArgs) -> anyhow::Result<ModeName> {
    qupit::linalg::validate_p(a.p)?;
    Ok(ModeName::resolve(&a.mode, a.controls, a.toffoli_class)?)
}

fn synth(a: SynthArgs) -> anyhow::Result<Status> {
    let mode = resolve_mode(&a.mode)?;
    let source: QSource = a.q.source.parse()?;
    let q = source.load(a.mode.p, a.q.seed)?;
    let s = synthesize(a.mode.p, &q, mode, a.mode.toffoli_class)?;
    let circuit = if a.expand {
        expand_mcx(&s.circuit)?
    } else {
        s.circuit.clone()
    };
    emit(a.out.as_deref(), &serialize(&circuit))?;
    let out = a.out.as_deref();
    status_line(out, &format!("mode: {mode}"));
    status_line(out, &format!("abstract gates: {}", s.circuit.len()));
    status_line(
        out,
        &format!("primitive gates: {}", expand_mcx(&s.circuit)?.len()),
    );
    if let Some(note) = &s.note {
        status_line(out, &format!("reduction: {}", note.message));
    }
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct VerifyOutput {
    verification: VerificationReport,
    exponent_check: ExponentOutcome,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum ExponentOutcome {
    Ok(qupit::verify::ExponentCheck),
    Error(String),
}

fn verify(a: VerifyArgs) -> anyhow::Result<Status> {
    let text = fs::read_to_string(&a.circuit)
        .with_context(|| format!("reading {}", a.circuit.display()))?;
    let c = deserialize(&text).with_context(|| format!("parsing {}", a.circuit.display()))?;
    let n = c.num_lines - 1;
    let name = a
        .mode
        .clone()
        .or_else(|| c.mode_tag.clone())
        .ok_or_else(|| anyhow!("circuit has no mode tag; pass --mode"))?;
    let mode = ModeName::resolve(&name, n, a.toffoli_class)?;
    let tol = tolerance(a.tol)?;
    let mask = GateMode::new(mode).mask;
    let report = verify_circuit(&c, &mask, tol)?;

    let toffoli = a.toffoli_class || mode.is_toffoli2() || integral_target_gates(&c);
    let exponent_check =
        match block_exponents(mode, c.p, toffoli).and_then(|b| exponent_check(&b, c.p)) {
            Ok(chk) => ExponentOutcome::Ok(chk),
            Err(e) => ExponentOutcome::Error(e.to_string()),
        };
    let exact_ok = matches!(&exponent_check, ExponentOutcome::Ok(chk) if chk.observed == mask);
    let pass = report.pass && exact_ok;

    let out = a.out.as_deref();
    let line = format!(
        "{} {mode} p={} max deviation {:.3e} (tol {:.1e}){}",
        if pass { "PASS" } else { "FAIL" },
        c.p,
        report.max_abs_deviation,
        tol,
        if exact_ok {
            ""
        } else {
            ", exponent table does not reproduce the mask"
        },
    );
    emit(
        out,
        &to_json(&VerifyOutput {
            verification: report,
            exponent_check,
        })?,
    )?;
    status_line(out, &line);
    Ok(if pass { Status::Pass } else { Status::Fail })
}

/// Toffoli-class circuits carry only whole powers of `Q` on the target.
fn integral_target_gates(c: &qupit::Circuit) -> bool {
    let mut target = c
        .gates
        .iter()
        .filter(|g| g.target == c.target_line)
        .peekable();
    target.peek().is_some() && target.all(|g| g.effective_unitary().exponent.is_integer())
}

fn table(a: TableArgs) -> anyhow::Result<Status> {
    let ps = &a.p.0;
    let body = if a.growth {
        let rows = growth_table(ps, &[2, 3])?;
        match a.format {
            Format::Csv => to_csv(&rows)?,
            Format::Json => to_json(&rows)?,
        }
    } else {
        let class = if a.toffoli_class {
            GateClass::Toffoli
        } else {
            GateClass::Deutsch
        };
        let modes: Vec<ModeName> = match &a.mode {
            Some(m) => vec![m.parse()?],
            None => ModeName::ALL.to_vec(),
        };
        let reports = mode_table(ps, &modes, class)?;
        match a.format {
            Format::Csv => to_csv(&reports.iter().map(ModeRow::from).collect::<Vec<_>>())?,
            Format::Json => to_json(&reports)?,
        }
    };
    emit(a.out.as_deref(), &body)?;
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct CheckRow {
    mode: String,
    p: u32,
    class: GateClass,
    q: String,
    gates: usize,
    max_abs_deviation: String,
    pass: bool,
}

#[derive(Serialize)]
struct CheckSummary {
    seed: u64,
    tolerance: f64,
    total: usize,
    passed: usize,
    rows: Vec<CheckRow>,
}

fn check_modes(a: CheckModesArgs) -> anyhow::Result<Status> {
    let tol = tolerance(a.tol)?;
    let started = Instant::now();
    let mut modes = ModeName::ALL.to_vec();
    modes.sort_by_key(|m| m.as_str());
    let mut rows = Vec::new();
    for &mode in &modes {
        for &p in &a.p.0 {
            qupit::linalg::validate_p(p)?;
            let mut jobs = Vec::new();
            if !mode.is_toffoli2() {
                for i in 0..a.unitaries {
                    let seed = a
                        .seed
                        .wrapping_mul(1_000_003)
                        .wrapping_add(1000 * p as u64 + i as u64);
                    jobs.push((
                        GateClass::Deutsch,
                        format!("random#{i}"),
                        random_unitary_seeded(p as usize, seed),
                    ));
                }
            }
            jobs.push((GateClass::Toffoli, "N".to_string(), make_not(p)?));
            for (class, label, q) in jobs {
                let r = verify_mode(p, &q, mode, class == GateClass::Toffoli, true, tol)?;
                info!("{mode} p={p} {class} {label}: {:.3e}", r.max_abs_deviation);
                rows.push(CheckRow {
                    mode: mode.as_str().to_string(),
                    p,
                    class,
                    q: label,
                    gates: r.gate_count,
                    max_abs_deviation: format!("{:.3e}", r.max_abs_deviation),
                    pass: r.pass,
                });
            }
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    let summary = CheckSummary {
        seed: a.seed,
        tolerance: tol,
        total: rows.len(),
        passed,
        rows,
    };
    let out = a.out.as_deref();
    emit(out, &to_json(&summary)?)?;
    for r in summary.rows.iter().filter(|r| !r.pass) {
        eprintln!(
            "FAIL {} p={} {} {}: {}",
            r.mode, r.p, r.class, r.q, r.max_abs_deviation
        );
    }
    status_line(out, &format!("{passed}/{} mode runs passed", summary.total));
    eprintln!("runtime: {:.2}s", started.elapsed().as_secs_f64());
    Ok(if passed == summary.total {
        Status::Pass
    } else {
        Status::Fail
    })
}

fn oracle_cmd(a: OracleArgs) -> anyhow::Result<Status> {
    let mode = resolve_mode(&a.mode)?;
    let source: QSource = a.q.source.parse()?;
    let q = source.load(a.mode.p, a.q.seed)?;
    let m = oracle(a.mode.p, mode.n_controls(), &q, &GateMode::new(mode).mask);
    emit(a.out.as_deref(), &m.to_json())?;
    Ok(Status::Pass)
}

fn root(a: RootArgs) -> anyhow::Result<Status> {
    qupit::linalg::validate_p(a.p)?;
    let e: RationalExponent = a.exp.parse()?;
    let source: QSource = a.q.source.parse()?;
    let q = source.load(a.p, a.q.seed)?;
    let r = frac_power(&q, e)?;
    emit(a.out.as_deref(), &r.to_json())?;
    status_line(
        a.out.as_deref(),
        &format!("unitarity residual: {:.3e}", r.unitarity_residual()),
    );
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct DemoRow {
    alpha: usize,
    beta: usize,
    chi: usize,
    pattern: String,
    k_mcx: Option<u32>,
    k_cascade: Option<u32>,
    differs: bool,
}

fn demo(a: DemoArgs) -> anyhow::Result<Status> {
    let d = demo_cascade(a.p)?;
    let body = match a.format {
        Format::Json => to_json(&d)?,
        Format::Csv => to_csv(
            &d.rows
                .iter()
                .map(|r| DemoRow {
                    alpha: r.controls[0],
                    beta: r.controls[1],
                    chi: r.controls[2],
                    pattern: r.pattern.clone(),
                    k_mcx: r.k_mcx,
                    k_cascade: r.k_cascade,
                    differs: r.k_mcx != r.k_cascade,
                })
                .collect::<Vec<_>>(),
        )?,
    };
    emit(a.out.as_deref(), &body)?;
    status_line(
        a.out.as_deref(),
        &format!(
            "{} of {} control tuples differ",
            d.disagreements().count(),
            d.rows.len()
        ),
    );
    Ok(Status::Pass)
}
