//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qupit::cost::{count, formula, growth_table};
use qupit::linalg::{make_not, make_pbar, make_x, random_unitary_seeded, SpectralForm};
use qupit::netlist::expand_mcx;
use qupit::synth::{
    block_exponents, build_from_assignment, synth_deutsch2_degenerate, synth_toffoli2, synthesize,
    DegenerateVariant,
};
use qupit::verify::{demo_cascade, exponent_check, verify_circuit, verify_mode};
use qupit::{ComplexMatrix, GateClass, GateMode, ModeName, RationalExponent, VERIFY_TOL};

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.notes.push(format!("{:.2}s", took.as_secs_f64()));
        self.check(took <= limit, || format!("took {took:?}, limit {limit:?}"));
    }
}

/// Modes exercised by the functional equivalence sweep.
const SWEEP: [ModeName; 17] = [
    ModeName::Toffoli2Conj,
    ModeName::Toffoli2Disj,
    ModeName::Deutsch2Conj,
    ModeName::Deutsch2Disj,
    ModeName::Deutsch2MixedWb,
    ModeName::Deutsch2MixedBw,
    ModeName::Deutsch2Xdisj,
    ModeName::Conj3,
    ModeName::Disj3,
    ModeName::Case1,
    ModeName::Case2,
    ModeName::Case3,
    ModeName::Case4,
    ModeName::Case5,
    ModeName::Case6,
    ModeName::Case7,
    ModeName::Case8,
];

const SEEDS: [u64; 3] = [11, 23, 47];

fn gate_counts() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for p in [3u32, 5, 7] {
        let pp = p as usize;
        let not = make_not(p).unwrap();
        let q = random_unitary_seeded(pp, 1);
        for mode in [ModeName::Toffoli2Conj, ModeName::Toffoli2Disj] {
            let n = synth_toffoli2(p, mode).unwrap().len();
            out.check(n == 2 * pp, || format!("{mode} p={p}: {n} != {}", 2 * pp));
        }
        for mode in SWEEP
            .iter()
            .copied()
            .filter(|m| m.n_controls() == 2 && !m.is_toffoli2())
        {
            let n = synthesize(p, &q, mode, false).unwrap().circuit.len();
            out.check(n == 2 * pp + 1, || {
                format!("{mode} p={p}: {n} != {}", 2 * pp + 1)
            });
        }
        let expected = [
            (ModeName::Conj3, false, 2 * pp * pp + 4 * pp + 1),
            (ModeName::Conj3, true, 2 * pp * pp + 4 * pp - 1),
            (ModeName::Disj3, false, 2 * pp * pp + 8 * pp - 1),
            (ModeName::Disj3, true, 2 * pp * pp + 8 * pp - 4),
        ];
        for (mode, toffoli, want) in expected {
            let qm = if toffoli { &not } else { &q };
            let got = count(&synthesize(p, qm, mode, toffoli).unwrap().circuit, true).unwrap();
            let class = if toffoli {
                GateClass::Toffoli
            } else {
                GateClass::Deutsch
            };
            out.check(formula(mode, p, class) == Some(want as u64), || {
                format!("{mode} {class} p={p}: formula disagrees with {want}")
            });
            out.check(got == want, || {
                format!("{mode} {class} p={p}: counted {got}, expected {want}")
            });
        }
    }
    out.within(start, Duration::from_secs(10));
    out
}

fn functional_equivalence() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut runs = 0;
    for p in [3u32, 5] {
        let not = make_not(p).unwrap();
        let randoms: Vec<ComplexMatrix> = SEEDS
            .iter()
            .map(|&s| random_unitary_seeded(p as usize, s))
            .collect();
        for mode in SWEEP {
            let mut jobs: Vec<(&ComplexMatrix, bool)> = vec![(&not, true)];
            if !mode.is_toffoli2() {
                jobs.extend(randoms.iter().map(|q| (q, false)));
            }
            for (q, toffoli) in jobs {
                let r = verify_mode(p, q, mode, toffoli, true, VERIFY_TOL).unwrap();
                runs += 1;
                worst = worst.max(r.max_abs_deviation);
                out.check(r.pass, || {
                    format!(
                        "{mode} p={p} toffoli={toffoli}: deviation {:.3e}",
                        r.max_abs_deviation
                    )
                });
            }
        }
    }
    out.notes
        .push(format!("{runs} runs, worst deviation {worst:.2e}"));
    out.within(start, Duration::from_secs(120));
    out
}

fn exact_exponents() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for p in [3u32, 5, 7, 11, 13] {
        for mode in ModeName::ALL {
            let classes: &[bool] = if mode.is_toffoli2() {
                &[true]
            } else if mode.n_controls() == 3 {
                &[false, true]
            } else {
                &[false]
            };
            for &toffoli in classes {
                let a = block_exponents(mode, p, toffoli).unwrap();
                match exponent_check(&a, p) {
                    Ok(chk) => out.check(chk.observed == GateMode::new(mode).mask, || {
                        format!("{mode} toffoli={toffoli} p={p}: observed {}", chk.observed)
                    }),
                    Err(e) => out.check(false, || format!("{mode} toffoli={toffoli} p={p}: {e}")),
                }
            }
        }
    }
    out.within(start, Duration::from_secs(1));
    out
}

fn degenerate_reduction() -> Outcome {
    let mut out = Outcome::new();
    for p in [3u32, 5] {
        let q = random_unitary_seeded(p as usize, 5);
        for (variant, mode) in [
            (DegenerateVariant::A, ModeName::Deutsch2DisjmixedA),
            (DegenerateVariant::B, ModeName::Deutsch2DisjmixedB),
        ] {
            let (c, _) = synth_deutsch2_degenerate(p, &q, variant).unwrap();
            out.check(c.len() == 1, || format!("{mode} p={p}: {} gates", c.len()));
            let r = verify_circuit(&c, &GateMode::new(mode).mask, VERIFY_TOL).unwrap();
            out.check(r.pass, || {
                format!("{mode} p={p}: deviation {:.3e}", r.max_abs_deviation)
            });
        }
    }
    out
}

fn roots() -> Outcome {
    let mut out = Outcome::new();
    let mut worst = 0.0f64;
    for i in 0..100u64 {
        let dim = [3usize, 5, 7][i as usize % 3];
        let p = dim as i64;
        let q = random_unitary_seeded(dim, 1000 + i);
        let form = SpectralForm::new(&q).unwrap();
        let exps = [(1, p), (1, p * p), (p - 1, p * p), (2 * p - 3, p * p)];
        for (n, d) in exps {
            let e = RationalExponent::new(n, d).unwrap();
            let root = form.power(e);
            let u = root.unitarity_residual();
            worst = worst.max(u);
            out.check(u <= 1e-9, || format!("seed {i} e={e}: unitarity {u:.3e}"));
            // (Q^(n/d))^d = Q^n
            let lhs = root.pow(d as u32);
            let rhs = q.pow(n as u32);
            let diff = lhs.max_abs_diff(&rhs).unwrap();
            worst = worst.max(diff);
            out.check(diff <= 1e-9, || {
                format!("seed {i} e={e}: reconstruction {diff:.3e}")
            });
            // Q^e * Q^(1-e) = Q
            let rest = form.power(RationalExponent::ONE - e);
            let sum = root.mat_mul(&rest).unwrap().max_abs_diff(&q).unwrap();
            worst = worst.max(sum);
            out.check(sum <= 1e-9, || {
                format!("seed {i} e={e}: additivity {sum:.3e}")
            });
        }
    }
    out.notes.push(format!("worst residual {worst:.2e}"));
    out
}

fn matrix_identities() -> Outcome {
    let mut out = Outcome::new();
    for p in [3u32, 5, 7, 11] {
        let x = make_x(p).unwrap();
        let not = make_not(p).unwrap();
        let id = ComplexMatrix::identity(p as usize);
        let pbar_x = make_pbar(p).unwrap().mat_mul(&x).unwrap();
        out.check(pbar_x == not, || format!("p={p}: Pbar X != NOT"));
        out.check(not.mat_mul(&not).unwrap() == id, || {
            format!("p={p}: NOT^2 != I")
        });
        out.check(x.pow(p) == id, || format!("p={p}: X^p != I"));
    }
    out
}

fn cascade() -> Outcome {
    let mut out = Outcome::new();
    let d = demo_cascade(5).unwrap();
    for r in &d.rows {
        let [a, b, c] = r.controls;
        if a < 4 && b == 4 && c == 0 {
            out.check(r.k_cascade == Some(1) && r.k_mcx == Some(0), || {
                format!(
                    "{:?}: cascade {:?}, mcx {:?}",
                    r.controls, r.k_cascade, r.k_mcx
                )
            });
        }
        if a < 4 && b < 4 && c == 4 {
            out.check(r.k_cascade == Some(4) && r.k_mcx == Some(4), || {
                format!(
                    "{:?}: cascade {:?}, mcx {:?}",
                    r.controls, r.k_cascade, r.k_mcx
                )
            });
        }
        if a == 4 && b == 4 && c < 4 {
            out.check(r.k_mcx == Some(1), || {
                format!("{:?}: mcx {:?}", r.controls, r.k_mcx)
            });
        }
    }
    out.notes
        .push(format!("{} tuples differ", d.disagreements().count()));
    out
}

fn growth() -> Outcome {
    let mut out = Outcome::new();
    for row in growth_table(&[3, 5, 7], &[2, 3]).unwrap() {
        let p = row.p as f64;
        let ratio = row.ratio.unwrap();
        out.notes.push(format!("p={} {ratio:.2}", row.p));
        out.check((p - 1.0..=p + 2.0).contains(&ratio), || {
            format!(
                "p={}: ratio {ratio:.3} outside [{}, {}]",
                row.p,
                p - 1.0,
                p + 2.0
            )
        });
    }
    out
}

fn mutation() -> Outcome {
    let mut out = Outcome::new();
    let mut mutants = 0;
    let mut weakest = f64::INFINITY;
    for p in [3u32, 5] {
        let bump = RationalExponent::new(1, (p * p) as i64).unwrap();
        let not = make_not(p).unwrap();
        let random = random_unitary_seeded(p as usize, SEEDS[0]);
        for mode in SWEEP {
            let jobs: &[(bool, &ComplexMatrix)] = if mode.is_toffoli2() {
                &[(true, &not)]
            } else {
                &[(false, &random), (true, &not)]
            };
            for &(toffoli, q) in jobs {
                let base = block_exponents(mode, p, toffoli).unwrap();
                let mask = GateMode::new(mode).mask;
                for &(label, e) in &base.blocks {
                    let mutated = base.with(label, e + bump);
                    let c = build_from_assignment(p, q, mode, &mutated).unwrap();
                    let r = verify_circuit(&expand_mcx(&c).unwrap(), &mask, VERIFY_TOL).unwrap();
                    mutants += 1;
                    weakest = weakest.min(r.max_abs_deviation);
                    out.check(!r.pass && r.max_abs_deviation > 1e-3, || {
                        format!(
                            "{mode} toffoli={toffoli} p={p} {label}+1/p^2: deviation {:.3e}",
                            r.max_abs_deviation
                        )
                    });
                }
            }
        }
    }
    out.notes.push(format!(
        "{mutants} mutants, smallest deviation {weakest:.2e}"
    ));
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("gate counts", gate_counts),
        ("functional equivalence", functional_equivalence),
        ("exact exponent rows", exact_exponents),
        ("degenerate reduction", degenerate_reduction),
        ("rational roots", roots),
        ("matrix identities", matrix_identities),
        ("cascade demo", cascade),
        ("complexity growth", growth),
        ("mutation sensitivity", mutation),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let status = if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let notes = if o.notes.is_empty() {
            String::new()
        } else {
            format!(" ({})", o.notes.join(", "))
        };
        println!("criterion {}: {status} {name}{notes}", i + 1);
        for f in &o.failures {
            println!("    {f}");
        }
        if !o.failures.is_empty() {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
