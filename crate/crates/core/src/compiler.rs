//! Composition of arithmetic builders into twiddle rotations, butterflies,
//! the full transform network, and the frequency filter.

use serde_json::json;

use crate::arith::{
    emit_adder, emit_const_mac, emit_negate, emit_parked_right_shift_unit, emit_shift_unit,
    emit_subtractor, AccumulateSign, BuildError, Digit, ShiftDirection, SubtractorVariant,
};
use crate::circuit::{Circuit, Register};
use crate::gate::Gate;
use crate::layout::{LayoutError, RegisterLayout, SlotRegisters};
use crate::rotation::{plan_rotation, PlanError, RotationBranch, RotationPlan};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompileError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("cutoff {cutoff} out of range, need 1 <= cutoff <= {limit}")]
    CutoffOutOfRange { cutoff: usize, limit: usize },
}

/// One butterfly of the iterative radix-2 decimation-in-time network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ButterflyStep {
    pub stage: u32,
    pub slot_a: usize,
    pub slot_b: usize,
    /// Twiddle index `k` of `W_N^k` applied to slot `b`.
    pub twiddle: u64,
}

/// The stage/slot/twiddle schedule shared by the compiler and the oracle.
///
/// Inputs are loaded at bit-reversed slots, so stage `t` pairs slots within
/// blocks of `2^t` and the outputs appear in natural order. The schedule
/// holds `(N/2) log2 N` butterflies.
pub fn butterfly_schedule(transform_size: usize) -> Vec<ButterflyStep> {
    let stages = transform_size.trailing_zeros();
    let mut steps = Vec::with_capacity(transform_size / 2 * stages as usize);
    for stage in 1..=stages {
        let block = 1usize << stage;
        let half = block / 2;
        for start in (0..transform_size).step_by(block) {
            for j in 0..half {
                steps.push(ButterflyStep {
                    stage,
                    slot_a: start + j,
                    slot_b: start + j + half,
                    twiddle: (j * (transform_size / block)) as u64,
                });
            }
        }
    }
    steps
}

/// Paper-level bound on one complex butterfly with twiddle accuracy `A`.
pub fn butterfly_gate_bound(word_bits: u32, accuracy: u32) -> usize {
    let w = word_bits as usize;
    let a = accuracy as usize;
    (32 * w - 33) + a * (45 * w - 42)
}

/// Paper-level bound on the whole transform: the butterfly bound times
/// `(N/2) log2 N`.
pub fn qfft_gate_bound(transform_size: usize, word_bits: u32, accuracy: u32) -> usize {
    let stages = transform_size.trailing_zeros() as usize;
    butterfly_gate_bound(word_bits, accuracy) * (transform_size / 2) * stages
}

fn flipped(digits: &[Digit]) -> Vec<Digit> {
    digits
        .iter()
        .map(|d| {
            let sign = match d.sign {
                AccumulateSign::Add => AccumulateSign::Sub,
                AccumulateSign::Sub => AccumulateSign::Add,
            };
            Digit::new(d.shift, sign)
        })
        .collect()
}

/// `target += coefficient * source` as a digit chain with per-digit floor
/// truncation.
fn emit_chain(c: &mut Circuit, source: &[usize], target: &[usize], digits: &[Digit], pool: &[usize]) {
    emit_const_mac(c, source, target, digits, pool);
}

/// Apply the planned twiddle rotation to one complex slot.
///
/// The three shears act right to left on the column `(re, im)`. The `Up`
/// branch is three accumulations; the `Down` branch folds its two sign
/// changes into the second and third shear: `im <- -(im - s re)` and
/// `re <- -(re + |u| im) = -re + u im`.
pub(crate) fn emit_rotation(c: &mut Circuit, plan: &RotationPlan, slot: &SlotRegisters, pool: &[usize]) {
    let re = &slot.real;
    let im = &slot.imag;
    let w = re.len();
    let chain_anc = &pool[..w - 2];
    match plan.branch {
        RotationBranch::Identity => {}
        RotationBranch::Up => {
            emit_chain(c, im, re, &plan.outer.digits(), pool);
            emit_chain(c, re, im, &plan.inner.digits(), pool);
            emit_chain(c, im, re, &plan.outer.digits(), pool);
        }
        RotationBranch::Down => {
            emit_chain(c, im, re, &plan.outer.digits(), pool);
            emit_chain(c, re, im, &plan.inner.digits_abs(), pool);
            emit_negate(c, im, chain_anc);
            emit_chain(c, im, re, &plan.outer.digits_abs(), pool);
            emit_negate(c, re, chain_anc);
        }
    }
}

/// Exact inverse of [`emit_rotation`] at the value level.
fn emit_inverse_rotation(c: &mut Circuit, plan: &RotationPlan, slot: &SlotRegisters, pool: &[usize]) {
    let re = &slot.real;
    let im = &slot.imag;
    let w = re.len();
    let chain_anc = &pool[..w - 2];
    match plan.branch {
        RotationBranch::Identity => {}
        RotationBranch::Up => {
            emit_chain(c, im, re, &flipped(&plan.outer.digits()), pool);
            emit_chain(c, re, im, &flipped(&plan.inner.digits()), pool);
            emit_chain(c, im, re, &flipped(&plan.outer.digits()), pool);
        }
        RotationBranch::Down => {
            emit_negate(c, re, chain_anc);
            emit_chain(c, im, re, &flipped(&plan.outer.digits_abs()), pool);
            emit_negate(c, im, chain_anc);
            emit_chain(c, re, im, &flipped(&plan.inner.digits_abs()), pool);
            emit_chain(c, im, re, &flipped(&plan.outer.digits()), pool);
        }
    }
}

/// One component of the sum/difference butterfly: `(a, b) -> (a+b, a-b)`
/// via the unit-triangular factorization of `[[1, 1], [1, -1]]`: an adder
/// (`a += b`), a doubling left shift (`b <- 2b`) and a subtractor
/// (`b <- a - b`). Expanded count `32w - 33`.
pub(crate) fn emit_sum_diff(c: &mut Circuit, a: &[usize], b: &[usize]) {
    emit_adder(c, b, a);
    emit_shift_unit(c, b, ShiftDirection::Left);
    emit_subtractor(c, a, b, SubtractorVariant::AMinusB);
}

/// Inverse of one sum/difference component on arbitrary words.
///
/// The doubling is undone by a parked right shift so odd words (which
/// arise when a filter has discarded part of a spectrum) still halve with
/// floor semantics; the dropped bit lands in `park`.
fn emit_inverse_sum_diff_parked(c: &mut Circuit, a: &[usize], b: &[usize], park: usize) {
    emit_subtractor(c, a, b, SubtractorVariant::AMinusB);
    emit_parked_right_shift_unit(c, b, park);
    emit_subtractor(c, b, a, SubtractorVariant::BMinusA);
}

/// Full complex butterfly: rotation of slot `b` by the twiddle, then the
/// sum/difference on both components.
pub(crate) fn emit_butterfly(
    c: &mut Circuit,
    plan: &RotationPlan,
    a: &SlotRegisters,
    b: &SlotRegisters,
    pool: &[usize],
) {
    emit_rotation(c, plan, b, pool);
    emit_sum_diff(c, &a.real, &b.real);
    emit_sum_diff(c, &a.imag, &b.imag);
}

fn pool_size(width: u32, accuracy: u32) -> usize {
    (accuracy as usize).max(width as usize - 2)
}

/// Standalone rotation circuit over registers `real`, `imag` and an
/// ancilla pool, for one twiddle plan.
pub fn build_rotation(width: u32, plan: &RotationPlan) -> Result<Circuit, CompileError> {
    if width < 4 {
        return Err(BuildError::WidthTooSmall(width).into());
    }
    let w = width as usize;
    let pool = pool_size(width, plan.accuracy);
    let mut c = Circuit::new(2 * w + pool);
    c.add_register(Register::new("real", (0..w).collect())).unwrap();
    c.add_register(Register::new("imag", (w..2 * w).collect())).unwrap();
    c.add_register(Register::new("ancilla", (2 * w..2 * w + pool).collect())).unwrap();
    let slot = SlotRegisters { real: (0..w).collect(), imag: (w..2 * w).collect() };
    let pool: Vec<usize> = (2 * w..2 * w + pool).collect();
    emit_rotation(&mut c, plan, &slot, &pool);
    Ok(c)
}

/// Standalone `(a, b) -> (a+b, a-b)` on one component pair.
pub fn build_sum_diff(width: u32) -> Result<Circuit, CompileError> {
    if width < 2 {
        return Err(BuildError::WidthTooSmall(width).into());
    }
    let w = width as usize;
    let mut c = Circuit::new(2 * w);
    c.add_register(Register::new("a", (0..w).collect())).unwrap();
    c.add_register(Register::new("b", (w..2 * w).collect())).unwrap();
    let (a, b): (Vec<usize>, Vec<usize>) = ((0..w).collect(), (w..2 * w).collect());
    emit_sum_diff(&mut c, &a, &b);
    Ok(c)
}

fn two_slot_circuit(w: usize, pool: usize) -> (Circuit, SlotRegisters, SlotRegisters, Vec<usize>) {
    let mut c = Circuit::new(4 * w + pool);
    let a = SlotRegisters { real: (0..w).collect(), imag: (w..2 * w).collect() };
    let b = SlotRegisters { real: (2 * w..3 * w).collect(), imag: (3 * w..4 * w).collect() };
    c.add_register(Register::new("a_real", a.real.clone())).unwrap();
    c.add_register(Register::new("a_imag", a.imag.clone())).unwrap();
    c.add_register(Register::new("b_real", b.real.clone())).unwrap();
    c.add_register(Register::new("b_imag", b.imag.clone())).unwrap();
    let pool: Vec<usize> = (4 * w..4 * w + pool).collect();
    if !pool.is_empty() {
        c.add_register(Register::new("ancilla", pool.clone())).unwrap();
    }
    (c, a, b, pool)
}

/// Standalone sum/difference butterfly on two complex slots (both
/// components, no twiddle).
pub fn build_butterfly_sum_diff(width: u32) -> Result<Circuit, CompileError> {
    if width < 2 {
        return Err(BuildError::WidthTooSmall(width).into());
    }
    let w = width as usize;
    let (mut c, a, b, _) = two_slot_circuit(w, 0);
    emit_sum_diff(&mut c, &a.real, &b.real);
    emit_sum_diff(&mut c, &a.imag, &b.imag);
    Ok(c)
}

/// Standalone full butterfly with twiddle `W_N^k` at the given accuracy.
pub fn build_butterfly(
    width: u32,
    accuracy: u32,
    k: u64,
    transform_size: u64,
) -> Result<Circuit, CompileError> {
    if width < 4 {
        return Err(BuildError::WidthTooSmall(width).into());
    }
    let plan = plan_rotation(k, transform_size, accuracy)?;
    let w = width as usize;
    let (mut c, a, b, pool) = two_slot_circuit(w, pool_size(width, accuracy));
    emit_butterfly(&mut c, &plan, &a, &b, &pool);
    Ok(c)
}

fn base_metadata(layout: &RegisterLayout) -> serde_json::Map<String, serde_json::Value> {
    let stages = layout.stages() as usize;
    let mut metadata = serde_json::Map::new();
    metadata.insert("N".into(), json!(layout.transform_size));
    metadata.insert("m".into(), json!(layout.input_bits));
    metadata.insert("A".into(), json!(layout.accuracy));
    metadata.insert("w".into(), json!(layout.word_bits));
    metadata.insert("butterflies".into(), json!(layout.transform_size / 2 * stages));
    metadata.insert("layout".into(), layout.to_metadata());
    metadata
}

/// Compile the full transform network for `N = transform_size` points of
/// `input_bits`-bit data with `accuracy` rotation bits.
///
/// The input permutation is a relabeling at load time, not SWAP gates;
/// the circuit maps bit-reversed loaded inputs to the spectrum in natural
/// slot order.
pub fn build_qfft(
    transform_size: usize,
    input_bits: u32,
    accuracy: u32,
) -> Result<(Circuit, RegisterLayout), CompileError> {
    let layout = RegisterLayout::new(transform_size, input_bits, accuracy)?;
    let mut c = Circuit::new(layout.num_qubits);
    layout.attach_registers(&mut c);
    for step in butterfly_schedule(transform_size) {
        let plan = plan_rotation(step.twiddle, transform_size as u64, accuracy)?;
        let (a, b) = (layout.slot(0, step.slot_a).clone(), layout.slot(0, step.slot_b).clone());
        emit_butterfly(&mut c, &plan, &a, &b, &layout.ancilla);
    }
    c.metadata = base_metadata(&layout);
    Ok((c, layout))
}

/// The inverse transform: the exact gate-level inversion of
/// [`build_qfft`], so running the forward circuit and then this one is
/// the identity on every basis state.
pub fn build_iqfft(
    transform_size: usize,
    input_bits: u32,
    accuracy: u32,
) -> Result<(Circuit, RegisterLayout), CompileError> {
    let (forward, layout) = build_qfft(transform_size, input_bits, accuracy)?;
    let mut inverse = forward.inverted();
    inverse.metadata.insert("inverse".into(), json!(true));
    Ok((inverse, layout))
}

/// Inverse transform over one bank using parked right shifts, exact on
/// arbitrary (not just forward-image) bank contents. Used by the filter,
/// where masking makes odd words reach the halving step; each halving
/// parks its dropped bit in a dedicated qubit from `parks`.
fn emit_parked_inverse_qfft(
    c: &mut Circuit,
    layout: &RegisterLayout,
    bank: usize,
    parks: &mut impl Iterator<Item = usize>,
) -> Result<(), CompileError> {
    for step in butterfly_schedule(layout.transform_size).into_iter().rev() {
        let plan = plan_rotation(step.twiddle, layout.transform_size as u64, layout.accuracy)?;
        let a = layout.slot(bank, step.slot_a).clone();
        let b = layout.slot(bank, step.slot_b).clone();
        let park_im = parks.next().expect("park pool sized to the halving count");
        emit_inverse_sum_diff_parked(c, &a.imag, &b.imag, park_im);
        let park_re = parks.next().expect("park pool sized to the halving count");
        emit_inverse_sum_diff_parked(c, &a.real, &b.real, park_re);
        emit_inverse_rotation(c, &plan, &b, &layout.ancilla);
    }
    Ok(())
}

/// High/low-pass filter circuit: forward transform on the data bank, SWAP
/// of spectrum slots `cutoff..N` into the zeroed auxiliary bank, then the
/// inverse transform on both banks independently.
///
/// The returned layout has two banks: after the run, bank 0 decodes to the
/// low-pass sequence and bank 1 to the high-pass sequence. `cutoff = N`
/// degenerates to a pass-through. The dropped bits of the two inverse
/// passes stay parked in the `ancilla_park` register; they are zero
/// whenever a bank carries an unmasked spectrum.
pub fn build_filter(
    transform_size: usize,
    input_bits: u32,
    accuracy: u32,
    cutoff: usize,
) -> Result<(Circuit, RegisterLayout), CompileError> {
    let layout = RegisterLayout::with_banks(transform_size, input_bits, accuracy, 2)?;
    if cutoff < 1 || cutoff > transform_size {
        return Err(CompileError::CutoffOutOfRange { cutoff, limit: transform_size });
    }
    let stages = layout.stages() as usize;
    // One park per halving: two components per butterfly, two banks.
    let park_count = 2 * transform_size * stages;
    let park_base = layout.num_qubits;
    let mut c = Circuit::new(layout.num_qubits + park_count);
    layout.attach_registers(&mut c);
    c.add_register(Register::new(
        "ancilla_park",
        (park_base..park_base + park_count).collect(),
    ))
    .unwrap();

    for step in butterfly_schedule(transform_size) {
        let plan = plan_rotation(step.twiddle, transform_size as u64, accuracy)?;
        let (a, b) = (layout.slot(0, step.slot_a).clone(), layout.slot(0, step.slot_b).clone());
        emit_butterfly(&mut c, &plan, &a, &b, &layout.ancilla);
    }
    for k in cutoff..transform_size {
        let data = layout.slot(0, k).clone();
        let aux = layout.slot(1, k).clone();
        for (&d, &x) in data.real.iter().zip(&aux.real) {
            c.push(Gate::swap(d, x));
        }
        for (&d, &x) in data.imag.iter().zip(&aux.imag) {
            c.push(Gate::swap(d, x));
        }
    }
    let mut parks = (park_base..park_base + park_count).collect::<Vec<_>>().into_iter();
    emit_parked_inverse_qfft(&mut c, &layout, 0, &mut parks)?;
    emit_parked_inverse_qfft(&mut c, &layout, 1, &mut parks)?;

    c.metadata = base_metadata(&layout);
    c.metadata.insert("cutoff".into(), json!(cutoff));
    Ok((c, layout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_counts_and_pairing() {
        let steps = butterfly_schedule(8);
        assert_eq!(steps.len(), 12);
        // Final stage pairs (j, j + N/2) with twiddle j.
        let last: Vec<_> = steps.iter().filter(|s| s.stage == 3).collect();
        assert_eq!(last.len(), 4);
        for (j, step) in last.iter().enumerate() {
            assert_eq!((step.slot_a, step.slot_b), (j, j + 4));
            assert_eq!(step.twiddle, j as u64);
        }
        assert_eq!(butterfly_schedule(2).len(), 1);
    }

    #[test]
    fn sum_diff_count_is_exact() {
        for w in [4u32, 5, 8, 16] {
            let stats = build_sum_diff(w).unwrap().stats();
            assert_eq!(stats.expanded_count, 32 * w as usize - 33);
        }
    }

    #[test]
    fn identity_rotation_is_empty() {
        let plan = plan_rotation(0, 8, 6).unwrap();
        let c = build_rotation(12, &plan).unwrap();
        assert!(c.gates.is_empty());
    }

    #[test]
    fn butterfly_respects_paper_bound() {
        for (w, a) in [(10u32, 4u32), (12, 8), (16, 12)] {
            for k in 0..8 {
                let c = build_butterfly(w, a, k, 16).unwrap();
                assert!(
                    c.stats().expanded_count <= butterfly_gate_bound(w, a),
                    "w={w} a={a} k={k}"
                );
            }
        }
    }

    #[test]
    fn qfft_metadata_and_bound() {
        let (c, layout) = build_qfft(8, 2, 4).unwrap();
        assert_eq!(c.metadata["butterflies"], 12);
        assert_eq!(c.metadata["w"], 10);
        let bound = qfft_gate_bound(8, layout.word_bits, 4);
        assert!(c.stats().expanded_count <= bound);
    }

    #[test]
    fn iqfft_has_same_gate_multiset() {
        let (f, _) = build_qfft(4, 2, 4).unwrap();
        let (i, _) = build_iqfft(4, 2, 4).unwrap();
        assert_eq!(f.gates.len(), i.gates.len());
        assert_eq!(f.stats().expanded_count, i.stats().expanded_count);
    }

    #[test]
    fn filter_rejects_bad_cutoff() {
        assert!(matches!(
            build_filter(4, 2, 4, 0),
            Err(CompileError::CutoffOutOfRange { .. })
        ));
        assert!(matches!(
            build_filter(4, 2, 4, 5),
            Err(CompileError::CutoffOutOfRange { .. })
        ));
        assert!(build_filter(4, 2, 4, 4).is_ok());
    }
}
