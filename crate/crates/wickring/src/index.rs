//! Sparse multi-indices for monomials in the variables z1, z2, z3, ...

use std::cmp::Ordering;
use std::fmt;

/// Exponent multi-index of a monomial z^alpha.
///
/// Stored as (variable, exponent) pairs with variable indices starting at 1,
/// kept strictly increasing, and with no zero exponents, so two indices are
/// equal exactly when their entry lists are. The empty index is the exponent
/// of the constant monomial. Total degree is always finite.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiIndex {
    entries: Vec<(u32, u32)>,
}

impl MultiIndex {
    /// The empty index (constant monomial).
    pub fn empty() -> Self {
        MultiIndex {
            entries: Vec::new(),
        }
    }

    /// The index of the bare variable z_var. Variables are numbered from 1.
    pub fn variable(var: u32) -> Self {
        assert!(var >= 1, "variable indices start at 1");
        MultiIndex {
            entries: vec![(var, 1)],
        }
    }

    /// Builds an index from arbitrary (variable, exponent) pairs: repeated
    /// variables are merged, zero exponents dropped, entries sorted.
    ///
    /// Panics if any pair names variable 0.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut merged: Vec<(u32, u32)> = Vec::new();
        for (var, exp) in pairs {
            assert!(var >= 1, "variable indices start at 1");
            if exp == 0 {
                continue;
            }
            match merged.iter_mut().find(|(v, _)| *v == var) {
                Some((_, e)) => *e += exp,
                None => merged.push((var, exp)),
            }
        }
        merged.sort_unstable_by_key(|&(v, _)| v);
        MultiIndex { entries: merged }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total degree |alpha|, the sum of all exponents.
    pub fn degree(&self) -> u32 {
        self.entries.iter().map(|&(_, e)| e).sum()
    }

    /// Largest variable in the support, 0 for the empty index.
    pub fn max_var(&self) -> u32 {
        self.entries.last().map_or(0, |&(v, _)| v)
    }

    /// alpha! = product of the factorials of the exponents, as a float.
    pub fn factorial(&self) -> f64 {
        let mut acc = 1.0;
        for &(_, e) in &self.entries {
            for i in 2..=e {
                acc *= f64::from(i);
            }
        }
        acc
    }

    /// The graded weight (2N)^{q alpha} = prod_j (2j)^{q alpha_j}.
    ///
    /// The empty product is 1. For large degree times q the product may
    /// overflow; the non-finite value is returned as is.
    pub fn weight(&self, q: f64) -> f64 {
        let mut acc = 1.0;
        for &(var, exp) in &self.entries {
            acc *= (2.0 * f64::from(var)).powf(q * f64::from(exp));
        }
        acc
    }

    /// Index addition: the exponent of the product of the two monomials.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (va, ea) = self.entries[i];
            let (vb, eb) = other.entries[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        out.extend_from_slice(&other.entries[j..]);
        MultiIndex { entries: out }
    }
}

/// Graded lexicographic order: lower total degree first; within a degree,
/// the index with the higher exponent at the earliest differing variable
/// comes first. This is the storage and summation order everywhere, so
/// floating-point results are reproducible.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.entries.iter();
            let mut b = other.entries.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    // the other index still has positive exponents at
                    // variables where this one has zero
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(_), None) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                            Ordering::Equal => continue,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.entries {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{v}")?;
            } else {
                write!(f, "z{v}^{e}")?;
            }
        }
        Ok(())
    }
}
