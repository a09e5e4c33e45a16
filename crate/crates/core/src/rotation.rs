//! Shear (lifting) plans for twiddle-factor rotations.
//!
//! Multiplying a complex slot by `W_N^k = exp(-2 pi i k / N)` is a plane
//! rotation of `(re, im)` by `theta = -2 pi k / N`. The rotation matrix
//! factors into three unit-triangular shears, each an in-place
//! accumulation of a shifted copy, so the whole rotation reduces to
//! shift-and-add chains that are exactly invertible under truncation.

use std::f64::consts::TAU;

use crate::arith::{AccumulateSign, Digit};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanError {
    #[error("twiddle index {k} out of range, need 0 <= k < {limit}")]
    IndexOutOfRange { k: u64, limit: u64 },
    #[error("transform size {0} must be a power of two >= 2")]
    BadTransformSize(u64),
    #[error("accuracy must be at least 1")]
    BadAccuracy,
}

/// Which shear factorization a plan uses.
///
/// For `theta` in `[-pi/2, 0]` the factor `(cos t - 1)/sin t` has
/// magnitude at most one, so the plain triple applies (`Up`). Beyond
/// `-pi/2` the variant with `(cos t + 1)/sin t` takes over (`Down`),
/// at the price of two sign changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationBranch {
    /// `k = 0`, the unit twiddle: no gates at all.
    Identity,
    Up,
    Down,
}

/// A shear coefficient quantized to `accuracy` fractional bits.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficient {
    /// Signed numerator over `2^accuracy`; magnitude at most `2^accuracy`.
    pub quantized: i64,
    pub accuracy: u32,
    /// The exact value the quantization approximates.
    pub exact: f64,
}

impl Coefficient {
    fn quantize(exact: f64, accuracy: u32) -> Coefficient {
        let scale = (1u64 << accuracy) as f64;
        // Round to nearest, ties toward zero.
        let magnitude = (exact.abs() * scale - 0.5).ceil().max(0.0) as i64;
        let quantized = if exact < 0.0 { -magnitude } else { magnitude };
        debug_assert!(magnitude <= 1 << accuracy, "coefficient {exact} not in [-1, 1]");
        Coefficient { quantized, accuracy, exact }
    }

    pub fn value(&self) -> f64 {
        self.quantized as f64 / (1u64 << self.accuracy) as f64
    }

    /// Signed-binary digits of the coefficient, one shift-add per nonzero
    /// digit of its non-adjacent form.
    ///
    /// The NAF recoding keeps the digit count at or below
    /// `ceil((A + 1) / 2)`, which is what holds a worst-case rotation
    /// inside its gate budget. Digits are grouped additive-first, each
    /// group by increasing shift, so a chain complements its target at
    /// most once.
    pub fn digits(&self) -> Vec<Digit> {
        self.naf_digits(self.quantized < 0)
    }

    /// Digits of the absolute value of the coefficient.
    pub fn digits_abs(&self) -> Vec<Digit> {
        self.naf_digits(false)
    }

    fn naf_digits(&self, negated: bool) -> Vec<Digit> {
        let mut adds = Vec::new();
        let mut subs = Vec::new();
        let mut q = self.quantized.unsigned_abs() as i64;
        let mut bit = 0u32;
        while q > 0 {
            if q & 1 == 1 {
                let digit = 2 - (q & 3); // +1 or -1, never adjacent nonzeros
                q -= digit;
                let position = self.accuracy as i32 - bit as i32;
                debug_assert!(position >= 0, "NAF digit beyond the word");
                if (digit > 0) != negated {
                    adds.push(Digit::new(position, AccumulateSign::Add));
                } else {
                    subs.push(Digit::new(position, AccumulateSign::Sub));
                }
            }
            q >>= 1;
            bit += 1;
        }
        adds.sort_by_key(|d| d.shift);
        subs.sort_by_key(|d| d.shift);
        adds.extend(subs);
        adds
    }
}

/// Quantized shear plan for one twiddle factor `W_N^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationPlan {
    pub k: u64,
    pub transform_size: u64,
    pub accuracy: u32,
    pub branch: RotationBranch,
    /// Coefficient of the first and third shear.
    pub outer: Coefficient,
    /// Coefficient of the middle shear, `sin theta`.
    pub inner: Coefficient,
}

/// Plan the shear decomposition of `W_N^k` with `accuracy` fractional
/// bits. Requires `0 <= k < N / 2`; the plan is deterministic.
pub fn plan_rotation(k: u64, transform_size: u64, accuracy: u32) -> Result<RotationPlan, PlanError> {
    if transform_size < 2 || !transform_size.is_power_of_two() {
        return Err(PlanError::BadTransformSize(transform_size));
    }
    if accuracy == 0 {
        return Err(PlanError::BadAccuracy);
    }
    let limit = transform_size / 2;
    if k >= limit {
        return Err(PlanError::IndexOutOfRange { k, limit });
    }
    if k == 0 {
        let zero = Coefficient { quantized: 0, accuracy, exact: 0.0 };
        return Ok(RotationPlan {
            k,
            transform_size,
            accuracy,
            branch: RotationBranch::Identity,
            outer: zero.clone(),
            inner: zero,
        });
    }
    let theta = -TAU * k as f64 / transform_size as f64;
    let (sin, cos) = theta.sin_cos();
    // theta in [-pi/2, 0) iff 4k <= N.
    let up = 4 * k <= transform_size;
    let outer_exact = if up { (cos - 1.0) / sin } else { (cos + 1.0) / sin };
    Ok(RotationPlan {
        k,
        transform_size,
        accuracy,
        branch: if up { RotationBranch::Up } else { RotationBranch::Down },
        outer: Coefficient::quantize(outer_exact, accuracy),
        inner: Coefficient::quantize(sin, accuracy),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_twiddle_is_identity() {
        let plan = plan_rotation(0, 8, 6).unwrap();
        assert_eq!(plan.branch, RotationBranch::Identity);
        assert!(plan.outer.digits().is_empty());
    }

    #[test]
    fn quarter_turn_is_exact_at_any_accuracy() {
        // N = 4, k = 1: theta = -pi/2, t = (0 - 1)/(-1) = 1, s = -1.
        for accuracy in [1, 4, 10, 20] {
            let plan = plan_rotation(1, 4, accuracy).unwrap();
            assert_eq!(plan.branch, RotationBranch::Up);
            assert_eq!(plan.outer.quantized, 1 << accuracy);
            assert_eq!(plan.inner.quantized, -(1i64 << accuracy));
            assert_eq!(plan.outer.digits(), vec![Digit::new(0, AccumulateSign::Add)]);
        }
    }

    #[test]
    fn down_branch_coefficients() {
        // N = 8, k = 3: theta = -3 pi / 4.
        let plan = plan_rotation(3, 8, 20).unwrap();
        assert_eq!(plan.branch, RotationBranch::Down);
        assert!((plan.outer.value() - (-0.414214)).abs() < 1e-5);
        assert!((plan.inner.value() - (-0.707107)).abs() < 1e-5);
        // Both coefficients are within a quantum of the exact value.
        assert!((plan.outer.value() - plan.outer.exact).abs() <= 2f64.powi(-20));
        assert!((plan.inner.value() - plan.inner.exact).abs() <= 2f64.powi(-20));
    }

    #[test]
    fn branch_boundary_is_up() {
        // k = N/4 sits on theta = -pi/2 where |t| = 1 is still allowed.
        let plan = plan_rotation(2, 8, 8).unwrap();
        assert_eq!(plan.branch, RotationBranch::Up);
        assert_eq!(plan.outer.quantized, 1 << 8);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(plan_rotation(4, 8, 6), Err(PlanError::IndexOutOfRange { .. })));
        assert!(matches!(plan_rotation(0, 6, 6), Err(PlanError::BadTransformSize(6))));
        assert!(matches!(plan_rotation(0, 8, 0), Err(PlanError::BadAccuracy)));
    }

    #[test]
    fn digits_reassemble_coefficients() {
        for k in 1..16 {
            let plan = plan_rotation(k, 32, 12).unwrap();
            for coeff in [&plan.outer, &plan.inner] {
                for digits in [coeff.digits(), coeff.digits_abs()] {
                    // Non-adjacent form keeps the digit count below the
                    // rotation budget's allowance.
                    assert!(digits.len() <= (12 + 2) / 2);
                    // Within each sign group positions strictly increase.
                    for pair in digits.windows(2) {
                        if pair[0].sign == pair[1].sign {
                            assert!(pair[0].shift < pair[1].shift);
                        }
                    }
                }
                let assemble = |digits: &[Digit]| -> f64 {
                    digits
                        .iter()
                        .map(|d| {
                            let sign = if d.sign == AccumulateSign::Add { 1.0 } else { -1.0 };
                            sign * 2f64.powi(-d.shift)
                        })
                        .sum()
                };
                assert!((assemble(&coeff.digits()) - coeff.value()).abs() < 1e-12);
                assert!((assemble(&coeff.digits_abs()) - coeff.value().abs()).abs() < 1e-12);
            }
        }
    }
}
