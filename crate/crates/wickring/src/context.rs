//! The finite truncation in which all arithmetic takes place.

use crate::index::MultiIndex;

/// Truncation parameters (m, d): an index is admitted when its support lies
/// in {1, ..., m} and its total degree is at most d.
///
/// The admitted set is finite, of cardinality C(m + d, d), and products
/// silently drop monomials beyond the degree cap. In the degenerate context
/// m = 0, d = 0 only the constant monomial survives and the ring collapses
/// to the complex numbers; the interpolation solver uses that context to run
/// its classical counterpart.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TruncationContext {
    num_vars: u32,
    degree_cap: u32,
}

impl TruncationContext {
    pub fn new(num_vars: u32, degree_cap: u32) -> Self {
        TruncationContext {
            num_vars,
            degree_cap,
        }
    }

    /// The context (0, 0) whose ring is a copy of the complex numbers.
    pub fn degenerate() -> Self {
        TruncationContext {
            num_vars: 0,
            degree_cap: 0,
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn admits(&self, index: &MultiIndex) -> bool {
        index.max_var() <= self.num_vars && index.degree() <= self.degree_cap
    }

    /// Number of admitted indices: C(m + d, d).
    pub fn dimension(&self) -> usize {
        let m = u128::from(self.num_vars);
        let d = u128::from(self.degree_cap);
        let mut acc: u128 = 1;
        for i in 1..=d {
            acc = acc * (m + i) / i;
        }
        usize::try_from(acc).expect("truncation dimension overflows usize")
    }

    /// All admitted indices in graded lexicographic order.
    pub fn enumerate(&self) -> Vec<MultiIndex> {
        let mut out = Vec::with_capacity(self.dimension());
        let mut stack: Vec<(u32, u32)> = Vec::new();
        collect(1, self.num_vars, self.degree_cap, &mut stack, &mut out);
        out.sort_unstable();
        out
    }
}

fn collect(
    var: u32,
    m: u32,
    remaining: u32,
    stack: &mut Vec<(u32, u32)>,
    out: &mut Vec<MultiIndex>,
) {
    if var > m {
        out.push(MultiIndex::from_pairs(stack.iter().copied()));
        return;
    }
    for exp in 0..=remaining {
        if exp > 0 {
            stack.push((var, exp));
        }
        collect(var + 1, m, remaining - exp, stack, out);
        if exp > 0 {
            stack.pop();
        }
    }
}
