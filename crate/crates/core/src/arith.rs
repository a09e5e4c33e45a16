//! Builders for garbage-free reversible arithmetic: sign extension, the
//! in-place adder, subtractor variants, negation, arithmetic shifts and
//! shift-and-add accumulation.
//!
//! Every builder is a pure function from parameters to an independent
//! circuit value; none keeps shared state. All registers other than the
//! designated target return to their input values, and every ancilla
//! returns to zero.

use crate::circuit::{Circuit, Register};
use crate::gate::Gate;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("word width {0} must be at least 2")]
    WidthTooSmall(u32),
    #[error("shift amount {p} must be smaller than the word width {width}")]
    ShiftTooLarge { p: u32, width: u32 },
    #[error("extension width must be at least 1")]
    EmptyExtension,
    #[error("ancilla pool of {have} qubits is too small, need {need}")]
    PoolTooSmall { have: usize, need: usize },
}

/// Which operand order a subtractor realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubtractorVariant {
    /// `|a>|b> -> |a>|a - b>`
    AMinusB,
    /// `|a>|b> -> |a>|b - a>`
    BMinusA,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Left,
    Right,
}

/// Whether an accumulation step adds or subtracts the shifted operand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccumulateSign {
    Add,
    Sub,
}

/// One term of a constant multiply-accumulate: `b += sign * (a >> shift)`.
/// Negative `shift` selects a left shift (`a << -shift`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Digit {
    pub shift: i32,
    pub sign: AccumulateSign,
}

impl Digit {
    pub fn new(shift: i32, sign: AccumulateSign) -> Digit {
        Digit { shift, sign }
    }
}

// ---------------------------------------------------------------------------
// Gate-level emitters over explicit qubit index slices.
// ---------------------------------------------------------------------------

/// Copy the sign qubit of `src` onto each zeroed `ext` qubit, widening the
/// word from `w` to `w + ext.len()` bits.
pub(crate) fn emit_sign_extend(c: &mut Circuit, src: &[usize], ext: &[usize]) {
    let sign = *src.last().expect("source register is non-empty");
    for &e in ext {
        c.push(Gate::cnot(sign, e));
    }
}

/// In-place ripple adder `|a>|b> -> |a>|a + b mod 2^w>` with no ancilla.
///
/// Six layers: two CNOT fans, a Toffoli carry ladder, a Peres layer that
/// produces sums while uncomputing carries, and two closing CNOT fans.
/// Expanded gate count is exactly `13w - 14`.
pub(crate) fn emit_adder(c: &mut Circuit, a: &[usize], b: &[usize]) {
    let w = a.len();
    debug_assert_eq!(w, b.len());
    debug_assert!(w >= 2);
    for i in 1..w {
        c.push(Gate::cnot(a[i], b[i]));
    }
    for i in (1..w - 1).rev() {
        c.push(Gate::cnot(a[i], a[i + 1]));
    }
    for i in 0..w - 1 {
        c.push(Gate::toffoli(a[i], b[i], a[i + 1]));
    }
    c.push(Gate::cnot(a[w - 1], b[w - 1]));
    for i in (0..w - 1).rev() {
        c.push(Gate::peres(a[i], b[i], a[i + 1]));
    }
    for i in 1..w - 1 {
        c.push(Gate::cnot(a[i], a[i + 1]));
    }
    for i in 1..w {
        c.push(Gate::cnot(a[i], b[i]));
    }
}

fn emit_complement(c: &mut Circuit, reg: &[usize]) {
    for &q in reg {
        c.push(Gate::x(q));
    }
}

/// Subtractor built from the adder and NOT gates via the two's-complement
/// identity `not(not(a) + b) = a - b`.
pub(crate) fn emit_subtractor(c: &mut Circuit, a: &[usize], b: &[usize], variant: SubtractorVariant) {
    match variant {
        SubtractorVariant::AMinusB => {
            emit_complement(c, a);
            emit_adder(c, a, b);
            emit_complement(c, b);
            emit_complement(c, a);
        }
        SubtractorVariant::BMinusA => {
            emit_complement(c, b);
            emit_adder(c, a, b);
            emit_complement(c, b);
        }
    }
}

/// Add one to the word: a reversible carry chain over `w - 2` clean
/// ancillas, each restored to zero.
///
/// The descending pass pairs each carry uncompute with the bit flip it
/// enables; the pair is exactly one Peres gate.
pub(crate) fn emit_increment(c: &mut Circuit, b: &[usize], chain: &[usize]) {
    let w = b.len();
    debug_assert!(w >= 2);
    if w == 2 {
        c.push(Gate::cnot(b[0], b[1]));
        c.push(Gate::x(b[0]));
        return;
    }
    let t = &chain[..w - 2];
    c.push(Gate::toffoli(b[0], b[1], t[0]));
    for j in 2..w - 1 {
        c.push(Gate::toffoli(t[j - 2], b[j], t[j - 1]));
    }
    c.push(Gate::cnot(t[w - 3], b[w - 1]));
    for j in (2..w - 1).rev() {
        c.push(Gate::peres(t[j - 2], b[j], t[j - 1]));
    }
    c.push(Gate::peres(b[0], b[1], t[0]));
    c.push(Gate::x(b[0]));
}

/// Sign change `|b> -> |-b mod 2^w>`: complement all bits, then add one.
pub(crate) fn emit_negate(c: &mut Circuit, b: &[usize], chain: &[usize]) {
    emit_complement(c, b);
    emit_increment(c, b, chain);
}

/// One unit of arithmetic shift inside the register: `w - 2` SWAP gates
/// plus one CNOT (`3w - 5` expanded).
///
/// LEFT doubles the word when the top two bits agree going in. RIGHT is
/// the exact inverse, halving words whose low bit is zero; a nonzero low
/// bit is absorbed into the sign-fill position instead of being dropped.
pub(crate) fn emit_shift_unit(c: &mut Circuit, reg: &[usize], dir: ShiftDirection) {
    let w = reg.len();
    debug_assert!(w >= 2);
    match dir {
        ShiftDirection::Left => {
            for j in (0..w.saturating_sub(2)).rev() {
                c.push(Gate::swap(reg[j + 1], reg[j]));
            }
            c.push(Gate::cnot(reg[w - 1], reg[0]));
        }
        ShiftDirection::Right => {
            c.push(Gate::cnot(reg[w - 1], reg[0]));
            for j in 0..w.saturating_sub(2) {
                c.push(Gate::swap(reg[j + 1], reg[j]));
            }
        }
    }
}

/// Arithmetic right shift by one that parks the dropped low bit in a
/// zeroed ancilla: exact `floor(a / 2)` on every input, `w` SWAPs plus
/// one CNOT.
pub(crate) fn emit_parked_right_shift_unit(c: &mut Circuit, reg: &[usize], anc: usize) {
    let w = reg.len();
    c.push(Gate::cnot(reg[w - 1], anc));
    c.push(Gate::swap(anc, reg[0]));
    for j in 0..w - 1 {
        c.push(Gate::swap(reg[j], reg[j + 1]));
    }
}

/// Tracks how many pool qubits currently hold a copy of a source sign bit
/// during a run of shift-add steps, so consecutive steps share copies.
struct SignCopies {
    count: usize,
}

impl SignCopies {
    fn new() -> SignCopies {
        SignCopies { count: 0 }
    }

    fn ensure(&mut self, c: &mut Circuit, a: &[usize], pool: &[usize], need: usize) {
        let sign = *a.last().unwrap();
        for t in self.count..need {
            c.push(Gate::cnot(sign, pool[t]));
        }
        self.count = self.count.max(need);
    }

    fn release(&mut self, c: &mut Circuit, a: &[usize], pool: &[usize]) {
        let sign = *a.last().unwrap();
        for t in 0..self.count {
            c.push(Gate::cnot(sign, pool[t]));
        }
        self.count = 0;
    }
}

/// Accumulate `b += sign * floor(a * 2^-shift)` for each digit of a
/// constant, with `a` restored exactly and every pool qubit back at zero.
///
/// A right shift never moves `a`: the adder is wired against the high
/// `w - p` qubits of `a`, topped up with `p` sign copies held in the pool
/// for the duration of the run. A left shift borrows `p` zeroed pool
/// qubits as low-order wires. Subtractions are realized by complementing
/// `b` around a run of same-sign additions.
pub(crate) fn emit_const_mac(c: &mut Circuit, a: &[usize], b: &[usize], digits: &[Digit], pool: &[usize]) {
    let w = a.len();
    let mut copies = SignCopies::new();
    let mut complemented = false;
    for digit in digits {
        let subtract = digit.sign == AccumulateSign::Sub;
        if subtract != complemented {
            emit_complement(c, b);
            complemented = subtract;
        }
        if digit.shift >= 0 {
            // Shifts at or beyond the width degenerate to the sign word:
            // every wire of the shifted operand is a sign copy.
            let p = (digit.shift as usize).min(w);
            copies.ensure(c, a, pool, p);
            let virt: Vec<usize> = a[p..].iter().chain(pool[..p].iter()).copied().collect();
            emit_adder(c, &virt, b);
        } else {
            let s = (-digit.shift) as usize;
            debug_assert!(s < w);
            // Zero wires come after any live sign copies in the pool.
            let zeros = &pool[copies.count..copies.count + s];
            let virt: Vec<usize> = zeros.iter().chain(a[..w - s].iter()).copied().collect();
            emit_adder(c, &virt, b);
        }
    }
    if complemented {
        emit_complement(c, b);
    }
    copies.release(c, a, pool);
}

// ---------------------------------------------------------------------------
// Standalone circuit builders with canonical register layouts.
// ---------------------------------------------------------------------------

fn check_width(w: u32) -> Result<usize, BuildError> {
    if w < 2 {
        return Err(BuildError::WidthTooSmall(w));
    }
    Ok(w as usize)
}

fn two_register_circuit(w: usize, extra: usize) -> Circuit {
    let mut c = Circuit::new(2 * w + extra);
    c.add_register(Register::new("a", (0..w).collect())).unwrap();
    c.add_register(Register::new("b", (w..2 * w).collect())).unwrap();
    if extra > 0 {
        c.add_register(Register::new("ancilla", (2 * w..2 * w + extra).collect())).unwrap();
    }
    c
}

fn range(start: usize, len: usize) -> Vec<usize> {
    (start..start + len).collect()
}

/// Circuit widening register `src` (width `w`) into `extra` zeroed qubits
/// by copying the sign: `extra` CNOT gates.
pub fn build_sign_extend(width: u32, extra: u32) -> Result<Circuit, BuildError> {
    let w = check_width(width)?;
    if extra == 0 {
        return Err(BuildError::EmptyExtension);
    }
    let e = extra as usize;
    let mut c = Circuit::new(w + e);
    c.add_register(Register::new("src", range(0, w))).unwrap();
    c.add_register(Register::new("ext", range(w, e))).unwrap();
    emit_sign_extend(&mut c, &range(0, w), &range(w, e));
    Ok(c)
}

/// `|a>|b> -> |a>|a + b mod 2^w>`, no ancilla, expanded count `13w - 14`.
pub fn build_adder(width: u32) -> Result<Circuit, BuildError> {
    let w = check_width(width)?;
    let mut c = two_register_circuit(w, 0);
    emit_adder(&mut c, &range(0, w), &range(w, w));
    Ok(c)
}

/// Subtractor on the adder layout; at most `16w - 14` expanded gates.
pub fn build_subtractor(width: u32, variant: SubtractorVariant) -> Result<Circuit, BuildError> {
    let w = check_width(width)?;
    let mut c = two_register_circuit(w, 0);
    emit_subtractor(&mut c, &range(0, w), &range(w, w), variant);
    Ok(c)
}

/// `|b> -> |-b mod 2^w>` over register `b` plus `w - 2` chain ancillas,
/// all returned to zero.
pub fn build_negate(width: u32) -> Result<Circuit, BuildError> {
    let w = check_width(width)?;
    let chain = w.saturating_sub(2);
    let mut c = Circuit::new(w + chain);
    c.add_register(Register::new("b", range(0, w))).unwrap();
    if chain > 0 {
        c.add_register(Register::new("ancilla", range(w, chain))).unwrap();
    }
    emit_negate(&mut c, &range(0, w), &range(w, chain));
    Ok(c)
}

/// Arithmetic shift by `p` unit shifts over register `reg`, each costing
/// `3w - 5` expanded gates.
///
/// LEFT multiplies by `2^p` when the top `p` magnitude bits are sign
/// fill. RIGHT divides by `2^p` when the low `p` bits are zero; low bits
/// that are set are folded into the sign-fill region rather than dropped,
/// keeping the circuit reversible.
pub fn build_shift(width: u32, p: u32, dir: ShiftDirection) -> Result<Circuit, BuildError> {
    let w = check_width(width)?;
    if p >= width {
        return Err(BuildError::ShiftTooLarge { p, width });
    }
    let mut c = Circuit::new(w);
    c.add_register(Register::new("reg", range(0, w))).unwrap();
    for _ in 0..p {
        emit_shift_unit(&mut c, &range(0, w), dir);
    }
    Ok(c)
}

/// `|a>|b> -> |a>|b  sign  floor(a * 2^-p)>` with `p` pool ancillas that
/// hold sign copies during the addition and end at zero.
pub fn build_shift_add(width: u32, p: u32, sign: AccumulateSign) -> Result<Circuit, BuildError> {
    let w = check_width(width)?;
    if p >= width {
        return Err(BuildError::ShiftTooLarge { p, width });
    }
    let pool = p as usize;
    let mut c = two_register_circuit(w, pool);
    emit_const_mac(
        &mut c,
        &range(0, w),
        &range(w, w),
        &[Digit::new(p as i32, sign)],
        &range(2 * w, pool),
    );
    Ok(c)
}

/// Sequential shift-adds: `b += sum_t sign_t * floor(a * 2^-p_t)` with `a`
/// restored. Negative digit positions select left shifts.
pub fn build_const_mac(width: u32, digits: &[Digit]) -> Result<Circuit, BuildError> {
    let w = check_width(width)?;
    let mut right_max = 0usize;
    let mut left_max = 0usize;
    for d in digits {
        if d.shift.unsigned_abs() >= width {
            return Err(BuildError::ShiftTooLarge { p: d.shift.unsigned_abs(), width });
        }
        if d.shift >= 0 {
            right_max = right_max.max(d.shift as usize);
        } else {
            left_max = left_max.max((-d.shift) as usize);
        }
    }
    let pool = right_max + left_max;
    let mut c = two_register_circuit(w, pool);
    emit_const_mac(&mut c, &range(0, w), &range(w, w), digits, &range(2 * w, pool));
    Ok(c)
}
