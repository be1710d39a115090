//! Deterministic pseudo-random inputs for the unit tests.

use num_complex::Complex64;

use crate::context::TruncationContext;
use crate::element::RingElement;
use crate::matrix::RingMatrix;

/// SplitMix64 step mapped to a uniform value in [-1, 1].
pub(crate) fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

pub(crate) fn random_complex(state: &mut u64, scale: f64) -> Complex64 {
    Complex64::new(splitmix(state) * scale, splitmix(state) * scale)
}

/// Random sparse element: each admitted index carries a coefficient with
/// probability around 0.4, entries bounded by `scale`.
pub(crate) fn random_element(ctx: TruncationContext, state: &mut u64, scale: f64) -> RingElement {
    RingElement::from_terms(
        ctx,
        ctx.enumerate().into_iter().filter_map(|idx| {
            if splitmix(state) > 0.2 {
                Some((idx, random_complex(state, scale)))
            } else {
                None
            }
        }),
    )
}

pub(crate) fn random_matrix(
    ctx: TruncationContext,
    rows: usize,
    cols: usize,
    state: &mut u64,
    scale: f64,
) -> RingMatrix {
    RingMatrix::from_fn(ctx, rows, cols, |_, _| random_element(ctx, state, scale))
}
