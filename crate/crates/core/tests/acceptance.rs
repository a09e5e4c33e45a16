//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p qfft-core --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qfft_core::*;

const SEED: u64 = 0x5eed_0001;

fn pass(criterion: u32, detail: &str) {
    println!("ACCEPTANCE {criterion} PASS - {detail}");
}

/// Write words into named registers of a fresh all-zero state, run, and
/// return the final state.
fn run_with_words(circuit: &Circuit, words: &[(&str, i64)]) -> BasisState {
    let mut state = BasisState::zeros(circuit.num_qubits);
    for (name, value) in words {
        let reg = circuit.register(name).expect("register exists");
        state.set_word(&reg.qubits, *value);
    }
    run_basis(circuit, &state).expect("state matches circuit")
}

fn word_of(circuit: &Circuit, state: &BasisState, name: &str) -> i64 {
    state.word(&circuit.register(name).expect("register exists").qubits)
}

fn assert_ancillas_clear(circuit: &Circuit, state: &BasisState) {
    for reg in circuit.registers.iter().filter(|r| r.name.starts_with("ancilla")) {
        for &q in &reg.qubits {
            assert!(!state.bit(q), "ancilla qubit {q} not restored");
        }
    }
}

fn wrap(value: i64, w: u32) -> i64 {
    FixedPointFormat::new(w, 0).unwrap().wrap(value)
}

#[test]
fn criterion_01_adder_gate_count() {
    for w in 4..=16u32 {
        let stats = build_adder(w).unwrap().stats();
        assert_eq!(stats.expanded_count, 13 * w as usize - 14, "adder width {w}");
    }
    pass(1, "adder expanded count equals 13w-14 for w in 4..=16");
}

#[test]
fn criterion_02_subtractor_and_shift_counts() {
    for w in 4..=16u32 {
        for variant in [SubtractorVariant::AMinusB, SubtractorVariant::BMinusA] {
            let stats = build_subtractor(w, variant).unwrap().stats();
            assert!(
                stats.expanded_count <= 16 * w as usize - 14,
                "subtractor width {w} {variant:?}"
            );
        }
        for dir in [ShiftDirection::Left, ShiftDirection::Right] {
            let stats = build_shift(w, 1, dir).unwrap().stats();
            assert_eq!(stats.expanded_count, 3 * w as usize - 5, "unit shift width {w}");
        }
        let stats = build_shift(w, 3, ShiftDirection::Left).unwrap().stats();
        assert_eq!(stats.expanded_count, 3 * (3 * w as usize - 5));
    }
    pass(2, "subtractors <= 16w-14, unit shifts exactly 3w-5 for w in 4..=16");
}

#[test]
fn criterion_03_butterfly_counts() {
    for w in 6..=16u32 {
        let stats = build_sum_diff(w).unwrap().stats();
        assert!(stats.expanded_count <= 32 * w as usize - 33, "sum/diff width {w}");
        for a in [4u32, 8, 12] {
            let bound = butterfly_gate_bound(w, a);
            // Twiddles of a 16-point transform cover the identity and both
            // shear branches.
            for k in 0..8u64 {
                let count = build_butterfly(w, a, k, 16).unwrap().stats().expanded_count;
                assert!(count <= bound, "butterfly w={w} A={a} k={k}: {count} > {bound}");
            }
        }
    }
    pass(3, "sum/diff <= 32w-33 and butterflies within 32w-33 + A(45w-42) for w in 6..=16, A in {4,8,12}");
}

#[test]
fn criterion_04_total_count_bound() {
    for n in [2usize, 4, 8] {
        for m in [2u32, 4] {
            for a in [4u32, 8, 12] {
                let (circuit, layout) = build_qfft(n, m, a).unwrap();
                let bound = qfft_gate_bound(n, layout.word_bits, a);
                let count = circuit.stats().expanded_count;
                assert!(count <= bound, "N={n} m={m} A={a}: {count} > {bound}");
                let butterflies = n / 2 * n.trailing_zeros() as usize;
                assert_eq!(butterfly_schedule(n).len(), butterflies);
                assert_eq!(circuit.metadata["butterflies"], butterflies);
            }
        }
    }
    pass(4, "transform totals within the (N/2) log2 N butterfly budget for N in {2,4,8}");
}

#[test]
fn criterion_05_arithmetic_truth_tables() {
    exhaustive_w4();
    shift_add_exhaustive_w6();
    random_wide_words();
    pass(5, "adder/subtractor/negate/shift/shift-add truth tables: exhaustive w=4 and w=6, 1000 random cases at w in {8,12}");
}

fn exhaustive_w4() {
    let w = 4u32;
    let adder = build_adder(w).unwrap();
    let sub_ab = build_subtractor(w, SubtractorVariant::AMinusB).unwrap();
    let sub_ba = build_subtractor(w, SubtractorVariant::BMinusA).unwrap();
    let negate = build_negate(w).unwrap();
    for a in -8i64..8 {
        for b in -8i64..8 {
            let out = run_with_words(&adder, &[("a", a), ("b", b)]);
            assert_eq!(word_of(&adder, &out, "a"), a);
            assert_eq!(word_of(&adder, &out, "b"), wrap(a + b, w));

            let out = run_with_words(&sub_ab, &[("a", a), ("b", b)]);
            assert_eq!(word_of(&sub_ab, &out, "a"), a);
            assert_eq!(word_of(&sub_ab, &out, "b"), wrap(a - b, w));

            let out = run_with_words(&sub_ba, &[("a", a), ("b", b)]);
            assert_eq!(word_of(&sub_ba, &out, "b"), wrap(b - a, w));
        }
        let out = run_with_words(&negate, &[("b", a)]);
        assert_eq!(word_of(&negate, &out, "b"), wrap(-a, w));
        assert_ancillas_clear(&negate, &out);
    }
    // Adder followed by the matching subtractor is the identity.
    for a in -8i64..8 {
        for b in -8i64..8 {
            let mid = run_with_words(&adder, &[("a", a), ("b", b)]);
            let out = run_basis(&sub_ab, &mid).unwrap();
            assert_eq!(word_of(&adder, &out, "a"), a);
            assert_eq!(word_of(&adder, &out, "b"), wrap(a - wrap(a + b, w), w));
        }
    }
    // Shifts over their preconditioned domains.
    for p in 1..=2u32 {
        let left = build_shift(w, p, ShiftDirection::Left).unwrap();
        let right = build_shift(w, p, ShiftDirection::Right).unwrap();
        let headroom = 8i64 >> p;
        for v in -headroom..headroom {
            let out = run_with_words(&left, &[("reg", v)]);
            assert_eq!(word_of(&left, &out, "reg"), v << p, "left p={p} v={v}");
        }
        for v in (-8i64..8).filter(|v| v.rem_euclid(1 << p) == 0) {
            let out = run_with_words(&right, &[("reg", v)]);
            assert_eq!(word_of(&right, &out, "reg"), v >> p, "right p={p} v={v}");
        }
        // Right is the exact inverse of left on every word.
        for v in -8i64..8 {
            let mid = run_with_words(&left, &[("reg", v)]);
            let out = run_basis(&right, &mid).unwrap();
            assert_eq!(word_of(&left, &out, "reg"), v);
        }
    }
}

fn shift_add_exhaustive_w6() {
    let w = 6u32;
    for p in 0..=3u32 {
        for sign in [AccumulateSign::Add, AccumulateSign::Sub] {
            let circuit = build_shift_add(w, p, sign).unwrap();
            for a in -32i64..32 {
                for b in -32i64..32 {
                    let out = run_with_words(&circuit, &[("a", a), ("b", b)]);
                    let term = a >> p;
                    let expect = match sign {
                        AccumulateSign::Add => wrap(b + term, w),
                        AccumulateSign::Sub => wrap(b - term, w),
                    };
                    assert_eq!(word_of(&circuit, &out, "a"), a, "a preserved p={p}");
                    assert_eq!(word_of(&circuit, &out, "b"), expect, "p={p} a={a} b={b}");
                    assert_ancillas_clear(&circuit, &out);
                }
            }
        }
    }
}

fn random_wide_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for w in [8u32, 12] {
        let half = 1i64 << (w - 1);
        let adder = build_adder(w).unwrap();
        let sub_ab = build_subtractor(w, SubtractorVariant::AMinusB).unwrap();
        let negate = build_negate(w).unwrap();
        let shift_add = build_shift_add(w, 3, AccumulateSign::Add).unwrap();
        for _ in 0..1000 {
            let a = rng.random_range(-half..half);
            let b = rng.random_range(-half..half);

            let out = run_with_words(&adder, &[("a", a), ("b", b)]);
            assert_eq!(word_of(&adder, &out, "a"), a);
            assert_eq!(word_of(&adder, &out, "b"), wrap(a + b, w));

            let out = run_with_words(&sub_ab, &[("a", a), ("b", b)]);
            assert_eq!(word_of(&sub_ab, &out, "b"), wrap(a - b, w));

            let out = run_with_words(&negate, &[("b", b)]);
            assert_eq!(word_of(&negate, &out, "b"), wrap(-b, w));
            assert_ancillas_clear(&negate, &out);

            let out = run_with_words(&shift_add, &[("a", a), ("b", b)]);
            assert_eq!(word_of(&shift_add, &out, "a"), a);
            assert_eq!(word_of(&shift_add, &out, "b"), wrap(b + (a >> 3), w));
            assert_ancillas_clear(&shift_add, &out);
        }
    }
}

#[test]
fn criterion_06_three_qubit_templates() {
    use qfft_core::simulator::{kind_permutation_matrix, matrix_distance, small_unitary};
    let toffoli = expand_three_qubit_template(GateKind::Toffoli).unwrap();
    let peres = expand_three_qubit_template(GateKind::Peres).unwrap();
    let peres_dg = expand_three_qubit_template(GateKind::PeresDg).unwrap();
    assert_eq!(toffoli.len(), 5);
    assert_eq!(peres.len(), 4);
    assert_eq!(peres_dg.len(), 4);
    for (kind, network) in [
        (GateKind::Toffoli, &toffoli),
        (GateKind::Peres, &peres),
        (GateKind::PeresDg, &peres_dg),
    ] {
        let composed = small_unitary(network, 3).unwrap();
        let reference = kind_permutation_matrix(kind);
        let distance = matrix_distance(&composed, &reference);
        assert!(distance < 1e-12, "{kind:?} template off by {distance}");
    }
    let mut round_trip = peres.clone();
    round_trip.extend(peres_dg.clone());
    let composed = small_unitary(&round_trip, 3).unwrap();
    let eye: Vec<Vec<Complex64>> = (0..8)
        .map(|i| (0..8).map(|j| if i == j { Complex64::ONE } else { Complex64::ZERO }).collect())
        .collect();
    assert!(matrix_distance(&composed, &eye) < 1e-12);
    pass(6, "Toffoli template 5 gates, Peres 4, composed unitaries within 1e-12 of the permutations");
}

#[test]
fn criterion_07_oracle_bit_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut total = 0usize;
    for n in [2usize, 4, 8] {
        for m in [2u32, 4] {
            for a in [6u32, 10] {
                let (circuit, layout) = build_qfft(n, m, a).unwrap();
                for _ in 0..50 {
                    let data: Vec<u64> =
                        (0..n).map(|_| rng.random_range(0..1u64 << m)).collect();
                    let state = encode(&data, &layout).unwrap();
                    let out = run_basis(&circuit, &state).unwrap();
                    let words = decode_words(&out, &layout, 0);
                    let reference = oracle_qfft(&data, n, m, a).unwrap();
                    assert!(!reference.overflow, "overflow at N={n} m={m} A={a} {data:?}");
                    for (slot, (&(re, im), value)) in
                        words.iter().zip(&reference.values).enumerate()
                    {
                        assert_eq!(
                            (re, im),
                            (value.re, value.im),
                            "N={n} m={m} A={a} slot {slot} input {data:?}"
                        );
                    }
                    total += 1;
                }
            }
        }
    }
    pass(7, &format!("{total} random transforms word-identical to the oracle, zero overflow flags"));
}

#[test]
fn criterion_08_exact_small_case() {
    let (circuit, layout) = build_qfft(4, 3, 8).unwrap();
    let state = encode(&[1, 2, 3, 4], &layout).unwrap();
    let out = run_basis(&circuit, &state).unwrap();
    let decoded = decode_spectrum(&out, &layout);
    let expect = [
        Complex64::new(10.0, 0.0),
        Complex64::new(-2.0, 2.0),
        Complex64::new(-2.0, 0.0),
        Complex64::new(-2.0, -2.0),
    ];
    for (got, want) in decoded.iter().zip(expect) {
        assert_eq!(*got, want, "exact four-point spectrum");
    }
    let metrics = error_metrics(&decoded, &expect).unwrap();
    assert_eq!(metrics.l_inf, 0.0);
    pass(8, "four-point transform of (1,2,3,4) decodes to (10, -2+2i, -2, -2-2i) with zero error");
}

#[test]
fn criterion_09_reversibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for n in [2usize, 4, 8] {
        let (forward, _) = build_qfft(n, 2, 6).unwrap();
        let (inverse, _) = build_iqfft(n, 2, 6).unwrap();
        for _ in 0..20 {
            let bits: Vec<bool> = (0..forward.num_qubits).map(|_| rng.random()).collect();
            let state = BasisState::new(bits);
            let out = run_basis(&inverse, &run_basis(&forward, &state).unwrap()).unwrap();
            assert_eq!(out, state, "round trip N={n}");
        }
    }
    pass(9, "forward then inverse transform is the identity on 20 random basis states for N in {2,4,8}");
}

#[test]
fn criterion_10_accuracy_scaling() {
    let accuracies = [4u32, 6, 8, 10, 12];
    let worst = accuracy_sweep(8, 4, &accuracies, SEED ^ 10, 5).unwrap();
    for (pair, a) in worst.windows(2).zip(&accuracies[1..]) {
        assert!(
            pair[1] <= pair[0],
            "l_inf grew from {} to {} at A={a}: {worst:?}",
            pair[0],
            pair[1]
        );
    }
    // Relative error at the finest accuracy.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let data: Vec<u64> = (0..8).map(|_| rng.random_range(0..16)).collect();
    let (circuit, layout) = build_qfft(8, 4, 12).unwrap();
    let out = run_basis(&circuit, &encode(&data, &layout).unwrap()).unwrap();
    let decoded = decode_spectrum(&out, &layout);
    let reference: Vec<Complex64> =
        float_dft(&data.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect::<Vec<_>>());
    let relative = error_metrics(&decoded, &reference).unwrap().relative_l_inf;
    assert!(relative < 1e-2, "relative l_inf {relative} at A=12");
    pass(10, &format!("l_inf non-increasing over A={accuracies:?} ({worst:?}), relative {relative:.2e} < 1e-2 at A=12"));
}

#[test]
fn criterion_11_superposition_linearity() {
    let (circuit, layout) = build_qfft(4, 3, 6).unwrap();
    let data_x = [1u64, 2, 3, 4];
    let data_y = [7u64, 0, 5, 1];
    let state_x = encode(&data_x, &layout).unwrap();
    let state_y = encode(&data_y, &layout).unwrap();
    let superposed = SparseState::new(vec![
        (state_x.clone(), Complex64::new(0.6, 0.0)),
        (state_y.clone(), Complex64::new(0.8, 0.0)),
    ])
    .unwrap();
    let out = run(&circuit, &superposed).unwrap();
    assert_eq!(out.terms().len(), 2);
    let fft_x = run_basis(&circuit, &state_x).unwrap();
    let fft_y = run_basis(&circuit, &state_y).unwrap();
    for (basis, amplitude) in out.terms() {
        if *basis == fft_x {
            assert_eq!(*amplitude, Complex64::new(0.6, 0.0));
        } else if *basis == fft_y {
            assert_eq!(*amplitude, Complex64::new(0.8, 0.0));
        } else {
            panic!("unexpected basis term in superposed output");
        }
    }
    pass(11, "two-term superposition maps to the two individual spectra with amplitudes (0.6, 0.8) unchanged");
}

#[test]
fn criterion_12_filter_partition() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 12);
    let (m, a) = (3u32, 8u32);
    for n in [4usize, 8] {
        for cutoff in [1usize, n / 2] {
            let (circuit, layout) = build_filter(n, m, a, cutoff).unwrap();
            let data: Vec<u64> = (0..n).map(|_| rng.random_range(0..1u64 << m)).collect();
            let state = encode_into(&data, &layout, circuit.num_qubits).unwrap();
            let out = run_basis(&circuit, &state).unwrap();
            let low = decode_input(&out, &layout, 0);
            let high = decode_input(&out, &layout, 1);
            let tolerance =
                2f64.powi(4 - a as i32) * n as f64 * data.iter().copied().max().unwrap() as f64;
            for j in 0..n {
                let sum = low[j] + high[j];
                let original = Complex64::new(data[j] as f64, 0.0);
                assert!(
                    (sum - original).norm() <= tolerance,
                    "N={n} cutoff={cutoff} j={j}: low+high {sum} vs {original}, tol {tolerance}"
                );
            }
            // The circuit agrees with the oracle's filter mirror word for word.
            let mirror = oracle_filter(&data, n, m, a, cutoff).unwrap();
            let fmt = layout.format();
            for j in 0..n {
                assert_eq!(low[j], mirror.low[j].to_complex(&fmt), "low mirror j={j}");
                assert_eq!(high[j], mirror.high[j].to_complex(&fmt), "high mirror j={j}");
            }
        }
    }
    pass(12, "low-pass + high-pass outputs reconstruct the input within 2^(4-A) * N * max|x| for N in {4,8}");
}
