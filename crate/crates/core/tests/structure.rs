use qupit::cost::count;
use qupit::linalg::{
    is_self_inverse, kron, make_not, make_x, make_z, random_unitary_seeded, SpectralForm,
};
use qupit::netlist::{expand_mcx, Circuit, Gate};
use qupit::synth::{block_exponents, synthesize, tables, TABLE4_PATTERNS};
use qupit::verify::{embed_gate, exponent_check, oracle, simulate, verify_mode};
use qupit::{c64, ActivationMask, ComplexMatrix, GateBase, GateMode, ModeName, VERIFY_TOL};

#[test]
fn xzn_squares_to_a_global_phase() {
    // Derived: (X Z^k N)^2 = xi^(-2k) I, so it is self-inverse only up to phase.
    for p in [3u32, 5, 7] {
        let x = make_x(p).unwrap();
        let z = make_z(p).unwrap();
        let n = make_not(p).unwrap();
        for k in 1..p {
            let q = x.mat_mul(&z.pow(k)).unwrap().mat_mul(&n).unwrap();
            let sq = q.mat_mul(&q).unwrap();
            let xi = c64::from_polar(1.0, 2.0 * std::f64::consts::PI / p as f64);
            let phase = xi.powi(-2 * k as i32);
            let scalar = ComplexMatrix::identity(p as usize).scale(phase);
            assert!(sq.approx_eq(&scalar, 1e-12), "p={p} k={k}");
            println!(
                "p={p} k={k}: self-inverse residual {:.3e}, self-inverse: {}",
                q.self_inverse_residual(),
                is_self_inverse(&q, 1e-9)
            );
        }
    }
}

#[test]
fn case2_toffoli_target_gates() {
    for p in [3u32, 5, 7] {
        let c = synthesize(p, &make_not(p).unwrap(), ModeName::Case2, true)
            .unwrap()
            .circuit;
        let on_target = expand_mcx(&c)
            .unwrap()
            .gates
            .iter()
            .filter(|g| g.target == c.target_line)
            .count();
        assert_eq!(on_target, 3 * (p as usize - 1));
    }
}

#[test]
fn case7_is_union_of_cases_one_to_three() {
    // Exact rational check: Case 7's realized rows equal the union of the
    // rows of Cases 1-3, not Cases 4-6.
    for p in [3u32, 5, 7, 11, 13] {
        let observed = |m| {
            exponent_check(&block_exponents(m, p, false).unwrap(), p)
                .unwrap()
                .observed
        };
        let case7: Vec<u8> = observed(ModeName::Case7).patterns().collect();
        let mut low: Vec<u8> = [ModeName::Case1, ModeName::Case2, ModeName::Case3]
            .into_iter()
            .flat_map(|m| observed(m).patterns().collect::<Vec<_>>())
            .collect();
        low.sort_unstable();
        assert_eq!(case7, low);
        let row_numbers = ActivationMask::new(3, case7).rows();
        assert_eq!(row_numbers, vec![4, 5, 6]);
    }
}

#[test]
fn case7_rows_sum_exactly() {
    let chk = exponent_check(&block_exponents(ModeName::Case7, 5, false).unwrap(), 5).unwrap();
    for r in &chk.rows {
        let want = if [4, 5, 6].contains(&r.row) { 1 } else { 0 };
        assert_eq!(
            r.sum,
            qupit::RationalExponent::integer(want),
            "row {}",
            r.row
        );
    }
}

#[test]
fn toffoli_tables_satisfy_parity_for_odd_p() {
    for p in (3u32..=21).step_by(2) {
        for m in ModeName::ALL.into_iter().filter(|m| m.n_controls() == 3) {
            let chk = exponent_check(&block_exponents(m, p, true).unwrap(), p).unwrap();
            assert_eq!(chk.observed, GateMode::new(m).mask, "{m} p={p}");
        }
    }
}

#[test]
fn deutsch_tables_match_masks() {
    for p in [3u32, 5, 7, 9, 11, 13] {
        for m in ModeName::ALL.into_iter().filter(|m| !m.is_toffoli2()) {
            let chk = exponent_check(&block_exponents(m, p, false).unwrap(), p).unwrap();
            assert_eq!(chk.observed, GateMode::new(m).mask, "{m} p={p}");
            for r in &chk.rows {
                assert!(r.sum.is_zero() || r.sum.is_one());
            }
        }
    }
}

#[test]
fn table_rows_are_grouped_by_weight() {
    let weights: Vec<u32> = TABLE4_PATTERNS.iter().map(|p| p.count_ones()).collect();
    assert_eq!(weights, vec![0, 1, 1, 1, 2, 2, 2, 3]);
}

#[test]
fn conjunctive_first_blocks_multiply_to_q() {
    let q = random_unitary_seeded(7, 31);
    let form = SpectralForm::new(&q).unwrap();
    let [g1, g2, g3] = tables::two_control(ModeName::Deutsch2Conj, 7).unwrap();
    let prod = form.power(g1).mat_mul(&form.power(g2)).unwrap();
    assert!(prod.approx_eq(&q, 1e-9));
    let inv = form.power(g1).mat_mul(&form.power(g3)).unwrap();
    assert!(inv.approx_eq(&ComplexMatrix::identity(7), 1e-9));
}

#[test]
fn verify_all_modes_p3_with_not() {
    let not = make_not(3).unwrap();
    for m in ModeName::ALL {
        let r = verify_mode(3, &not, m, true, true, VERIFY_TOL).unwrap();
        assert!(r.pass, "{m}: {:.3e}", r.max_abs_deviation);
        if let Some(rows) = &r.row_residuals {
            assert!(rows.iter().all(|x| x.restored));
        }
    }
}

#[test]
fn basis_ordering_matches_kronecker() {
    // A gate controlled by line 0 on target line 1, p = 3: the alpha = 2 block
    // is |2><2| (x) U, others identity.
    let p = 3;
    let u = random_unitary_seeded(3, 2);
    let mut c = Circuit::new(p, 2, 1).with_q(u.clone());
    c.push(Gate::ms(
        0,
        1,
        qupit::GateUnitary::q(qupit::RationalExponent::ONE),
    ));
    let m = simulate(&c).unwrap();
    let proj = |k: usize| {
        ComplexMatrix::from_fn(3, |r, c| {
            if r == k && c == k {
                c64::new(1.0, 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        })
    };
    let i3 = ComplexMatrix::identity(3);
    let want = (0..3)
        .map(|k| kron(&proj(k), if k == 2 { &u } else { &i3 }))
        .reduce(|a, b| ComplexMatrix::from_fn(9, |r, c| a[(r, c)] + b[(r, c)]))
        .unwrap();
    assert!(m.approx_eq(&want, 1e-14));
    assert!(m.approx_eq(&oracle(3, 1, &u, &ActivationMask::new(1, [1])), 1e-14));
}

#[test]
fn mcx_lowering_counts_and_semantics() {
    for p in [3u32, 5] {
        let mut two = Circuit::new(p, 3, 2);
        two.push(Gate::mcx(vec![0, 1], 2));
        let lowered = expand_mcx(&two).unwrap();
        assert_eq!(lowered.len(), 2 * p as usize + 1);
        assert!(lowered.gates.iter().all(|g| !g.is_mcx()));
        assert!(lowered
            .gates
            .iter()
            .any(|g| g.effective_unitary().base == GateBase::Explicit));
        assert!(simulate(&lowered)
            .unwrap()
            .approx_eq(&simulate(&two).unwrap(), 1e-8));

        let mut three = Circuit::new(p, 4, 3);
        three.push(Gate::mcx(vec![0, 1, 2], 3));
        let lowered = expand_mcx(&three).unwrap();
        let pp = p as usize;
        assert_eq!(lowered.len(), 2 * pp * pp + 4 * pp + 1);
        assert!(simulate(&lowered)
            .unwrap()
            .approx_eq(&embed_gate(&three.gates[0], p, 4, None).unwrap(), 1e-8));
    }
}

#[test]
fn expanded_counts_follow_formulas_where_defined() {
    for p in [3u32, 5, 7] {
        let q = random_unitary_seeded(p as usize, 3);
        for m in ModeName::ALL.into_iter().filter(|m| !m.is_toffoli2()) {
            let s = synthesize(p, &q, m, false).unwrap();
            if let Some(f) = qupit::cost::formula(m, p, qupit::GateClass::Deutsch) {
                assert_eq!(count(&s.circuit, true).unwrap() as u64, f, "{m} p={p}");
            }
        }
    }
}
