//! Independent fixed-point reference implementation.
//!
//! The oracle mirrors every arithmetic decision of the compiled circuits
//! word for word: the same stage/slot/twiddle schedule, the same digit
//! lists, the same per-digit floor truncation and the same sign-change
//! placement. When no overflow is flagged its output equals the circuit
//! simulation on every register. A direct `O(N^2)` floating-point
//! transform provides the fully independent accuracy reference.

use num_complex::Complex64;

use crate::arith::{AccumulateSign, Digit};
use crate::compiler::butterfly_schedule;
use crate::fixed::FixedPointFormat;
use crate::layout::{bit_reverse, RegisterLayout};
use crate::rotation::{plan_rotation, PlanError, RotationBranch, RotationPlan};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Layout(#[from] crate::layout::LayoutError),
    #[error("data value {0} does not fit the input width")]
    ValueOutOfRange(u64),
    #[error("expected {expected} data points, got {got}")]
    WrongDataLength { expected: usize, got: usize },
    #[error("cutoff {cutoff} out of range, need 1 <= cutoff <= {limit}")]
    CutoffOutOfRange { cutoff: usize, limit: usize },
    #[error("empty input")]
    Empty,
}

/// A complex value held as two signed fixed-point words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FixedComplex {
    pub re: i64,
    pub im: i64,
}

impl FixedComplex {
    pub fn to_complex(self, format: &FixedPointFormat) -> Complex64 {
        Complex64::new(format.value_of(self.re), format.value_of(self.im))
    }
}

/// Word-level arithmetic with a sticky overflow flag.
///
/// Results wrap modulo `2^w` exactly like the circuits, so the mirror
/// stays faithful even past an overflow, but any excursion outside the
/// representable range raises the flag.
#[derive(Debug, Clone)]
struct WordArithmetic {
    format: FixedPointFormat,
    overflow: bool,
}

impl WordArithmetic {
    fn new(format: FixedPointFormat) -> WordArithmetic {
        WordArithmetic { format, overflow: false }
    }

    fn clamp(&mut self, value: i64) -> i64 {
        if !self.format.in_range(value) {
            self.overflow = true;
        }
        self.format.wrap(value)
    }

    fn add(&mut self, x: i64, y: i64) -> i64 {
        self.clamp(x + y)
    }

    fn sub(&mut self, x: i64, y: i64) -> i64 {
        self.clamp(x - y)
    }

    fn double(&mut self, x: i64) -> i64 {
        self.clamp(x * 2)
    }

    /// Exact floor halving, the parked right shift.
    fn halve(&mut self, x: i64) -> i64 {
        x >> 1
    }

    fn negate(&mut self, x: i64) -> i64 {
        self.clamp(-x)
    }

    /// `target += sum_t sign_t * floor(source * 2^-p_t)`, digit by digit.
    fn accumulate(&mut self, target: i64, source: i64, digits: &[Digit]) -> i64 {
        let mut acc = target;
        for digit in digits {
            let term = if digit.shift >= 0 {
                source >> digit.shift.min(63)
            } else {
                self.format.wrap(source << -digit.shift)
            };
            acc = match digit.sign {
                AccumulateSign::Add => self.add(acc, term),
                AccumulateSign::Sub => self.sub(acc, term),
            };
        }
        acc
    }
}

/// The digit-chain accumulation a single shear performs:
/// `target += sum_t sign_t * floor(source * 2^-p_t)` with per-digit floor,
/// the exact arithmetic of the shift-add circuits. Returns the updated
/// target and an overflow flag.
pub fn oracle_shear(
    target: i64,
    source: i64,
    digits: &[Digit],
    format: &FixedPointFormat,
) -> (i64, bool) {
    let mut arith = WordArithmetic::new(*format);
    let value = arith.accumulate(target, source, digits);
    (value, arith.overflow)
}

fn rotate(arith: &mut WordArithmetic, value: &mut FixedComplex, plan: &RotationPlan) {
    match plan.branch {
        RotationBranch::Identity => {}
        RotationBranch::Up => {
            value.re = arith.accumulate(value.re, value.im, &plan.outer.digits());
            value.im = arith.accumulate(value.im, value.re, &plan.inner.digits());
            value.re = arith.accumulate(value.re, value.im, &plan.outer.digits());
        }
        RotationBranch::Down => {
            value.re = arith.accumulate(value.re, value.im, &plan.outer.digits());
            value.im = arith.accumulate(value.im, value.re, &plan.inner.digits_abs());
            value.im = arith.negate(value.im);
            value.re = arith.accumulate(value.re, value.im, &plan.outer.digits_abs());
            value.re = arith.negate(value.re);
        }
    }
}

fn rotate_inverse(arith: &mut WordArithmetic, value: &mut FixedComplex, plan: &RotationPlan) {
    let flip = |digits: Vec<Digit>| -> Vec<Digit> {
        digits
            .into_iter()
            .map(|d| {
                let sign = match d.sign {
                    AccumulateSign::Add => AccumulateSign::Sub,
                    AccumulateSign::Sub => AccumulateSign::Add,
                };
                Digit::new(d.shift, sign)
            })
            .collect()
    };
    match plan.branch {
        RotationBranch::Identity => {}
        RotationBranch::Up => {
            value.re = arith.accumulate(value.re, value.im, &flip(plan.outer.digits()));
            value.im = arith.accumulate(value.im, value.re, &flip(plan.inner.digits()));
            value.re = arith.accumulate(value.re, value.im, &flip(plan.outer.digits()));
        }
        RotationBranch::Down => {
            value.re = arith.negate(value.re);
            value.re = arith.accumulate(value.re, value.im, &flip(plan.outer.digits_abs()));
            value.im = arith.negate(value.im);
            value.im = arith.accumulate(value.im, value.re, &flip(plan.inner.digits_abs()));
            value.re = arith.accumulate(value.re, value.im, &flip(plan.outer.digits()));
        }
    }
}

fn sum_diff(arith: &mut WordArithmetic, a: i64, b: i64) -> (i64, i64) {
    let a = arith.add(a, b);
    let b = arith.double(b);
    (a, arith.sub(a, b))
}

fn inverse_sum_diff(arith: &mut WordArithmetic, a: i64, b: i64) -> (i64, i64) {
    let b = arith.sub(a, b);
    let b = arith.halve(b);
    (arith.sub(a, b), b)
}

/// Result of a fixed-point oracle transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRun {
    /// Output words in natural slot order (scaled by `2^A`).
    pub values: Vec<FixedComplex>,
    /// True if any intermediate left the representable range. With the
    /// layout width policy this never happens.
    pub overflow: bool,
}

fn load(data: &[u64], layout: &RegisterLayout) -> Result<Vec<FixedComplex>, OracleError> {
    let n = layout.transform_size;
    if data.len() != n {
        return Err(OracleError::WrongDataLength { expected: n, got: data.len() });
    }
    let mut values = vec![FixedComplex::default(); n];
    for (j, &x) in data.iter().enumerate() {
        if x >= 1 << layout.input_bits {
            return Err(OracleError::ValueOutOfRange(x));
        }
        values[bit_reverse(j, layout.stages())] = FixedComplex { re: (x as i64) << layout.accuracy, im: 0 };
    }
    Ok(values)
}

fn forward_pass(
    values: &mut [FixedComplex],
    arith: &mut WordArithmetic,
    layout: &RegisterLayout,
) -> Result<(), OracleError> {
    let n = layout.transform_size;
    for step in butterfly_schedule(n) {
        let plan = plan_rotation(step.twiddle, n as u64, layout.accuracy)?;
        let mut b = values[step.slot_b];
        rotate(arith, &mut b, &plan);
        let a = values[step.slot_a];
        let (ar, br) = sum_diff(arith, a.re, b.re);
        let (ai, bi) = sum_diff(arith, a.im, b.im);
        values[step.slot_a] = FixedComplex { re: ar, im: ai };
        values[step.slot_b] = FixedComplex { re: br, im: bi };
    }
    Ok(())
}

fn inverse_pass(
    values: &mut [FixedComplex],
    arith: &mut WordArithmetic,
    layout: &RegisterLayout,
) -> Result<(), OracleError> {
    let n = layout.transform_size;
    for step in butterfly_schedule(n).into_iter().rev() {
        let plan = plan_rotation(step.twiddle, n as u64, layout.accuracy)?;
        let a = values[step.slot_a];
        let b = values[step.slot_b];
        let (ai, bi) = inverse_sum_diff(arith, a.im, b.im);
        let (ar, br) = inverse_sum_diff(arith, a.re, b.re);
        let mut b = FixedComplex { re: br, im: bi };
        rotate_inverse(arith, &mut b, &plan);
        values[step.slot_a] = FixedComplex { re: ar, im: ai };
        values[step.slot_b] = b;
    }
    Ok(())
}

/// Fixed-point transform on the compiler's exact schedule. The output
/// matches the circuit simulation word for word when `overflow` is false.
pub fn oracle_qfft(
    data: &[u64],
    transform_size: usize,
    input_bits: u32,
    accuracy: u32,
) -> Result<OracleRun, OracleError> {
    let layout = RegisterLayout::new(transform_size, input_bits, accuracy)?;
    let mut values = load(data, &layout)?;
    let mut arith = WordArithmetic::new(layout.format());
    forward_pass(&mut values, &mut arith, &layout)?;
    Ok(OracleRun { values, overflow: arith.overflow })
}

/// Filter mirror: forward transform, masking swap at `cutoff`, then the
/// inverse transform of both banks. Outputs are in input ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRun {
    pub low: Vec<FixedComplex>,
    pub high: Vec<FixedComplex>,
    pub overflow: bool,
}

pub fn oracle_filter(
    data: &[u64],
    transform_size: usize,
    input_bits: u32,
    accuracy: u32,
    cutoff: usize,
) -> Result<FilterRun, OracleError> {
    if cutoff < 1 || cutoff > transform_size {
        return Err(OracleError::CutoffOutOfRange { cutoff, limit: transform_size });
    }
    let layout = RegisterLayout::new(transform_size, input_bits, accuracy)?;
    let mut low = load(data, &layout)?;
    let mut high = vec![FixedComplex::default(); transform_size];
    let mut arith = WordArithmetic::new(layout.format());
    forward_pass(&mut low, &mut arith, &layout)?;
    for k in cutoff..transform_size {
        std::mem::swap(&mut low[k], &mut high[k]);
    }
    inverse_pass(&mut low, &mut arith, &layout)?;
    inverse_pass(&mut high, &mut arith, &layout)?;
    let unreverse = |values: Vec<FixedComplex>| -> Vec<FixedComplex> {
        (0..transform_size)
            .map(|j| values[bit_reverse(j, layout.stages())])
            .collect()
    };
    Ok(FilterRun { low: unreverse(low), high: unreverse(high), overflow: arith.overflow })
}

/// Direct `O(N^2)` discrete Fourier transform in double precision,
/// independent of the fast schedule: `X_k = sum_j W_N^(jk) x_j` with
/// `W_N = exp(-2 pi i / N)`.
pub fn float_dft(data: &[Complex64]) -> Vec<Complex64> {
    let n = data.len();
    (0..n)
        .map(|k| {
            data.iter()
                .enumerate()
                .map(|(j, x)| {
                    let angle = -std::f64::consts::TAU * (j * k % n) as f64 / n as f64;
                    Complex64::from_polar(1.0, angle) * x
                })
                .sum()
        })
        .collect()
}

/// Inverse of [`float_dft`]: `x_j = (1/N) sum_k W_N^(-jk) X_k`.
pub fn float_idft(spectrum: &[Complex64]) -> Vec<Complex64> {
    let n = spectrum.len();
    (0..n)
        .map(|j| {
            let sum: Complex64 = spectrum
                .iter()
                .enumerate()
                .map(|(k, x)| {
                    let angle = std::f64::consts::TAU * (j * k % n) as f64 / n as f64;
                    Complex64::from_polar(1.0, angle) * x
                })
                .sum();
            sum / n as f64
        })
        .collect()
}

/// Standard error norms of `actual - reference`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorMetrics {
    pub l_inf: f64,
    pub l2: f64,
    /// `l_inf` divided by the largest reference magnitude.
    pub relative_l_inf: f64,
}

pub fn error_metrics(actual: &[Complex64], reference: &[Complex64]) -> Result<ErrorMetrics, OracleError> {
    if actual.is_empty() || actual.len() != reference.len() {
        return Err(OracleError::Empty);
    }
    let mut l_inf = 0.0f64;
    let mut l2 = 0.0f64;
    let mut scale = 0.0f64;
    for (a, r) in actual.iter().zip(reference) {
        let d = (a - r).norm();
        l_inf = l_inf.max(d);
        l2 += d * d;
        scale = scale.max(r.norm());
    }
    let relative_l_inf = if scale > 0.0 {
        l_inf / scale
    } else if l_inf == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(ErrorMetrics { l_inf, l2: l2.sqrt(), relative_l_inf })
}
