//! Points of the `Z^n` grading lattice and the componentwise partial order.

use std::fmt;

/// A degree in `Z^n`, labelling graded components, matrix rows
/// (cogenerators) and matrix columns (generators).
///
/// Coordinates may be negative: Matlis duals carry negated labels.
///
/// The derived `Ord` is the lexicographic order on coordinates. It is a
/// total order used only to sort labels deterministically; the order that
/// drives the algorithms is the componentwise [`Degree::leq`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Vec<i64>);

impl Degree {
    pub fn new(coords: Vec<i64>) -> Self {
        Degree(coords)
    }

    pub fn from_slice(coords: &[i64]) -> Self {
        Degree(coords.to_vec())
    }

    /// The all-zero degree of `Z^n`.
    pub fn zero(n: usize) -> Self {
        Degree(vec![0; n])
    }

    /// The unit degree `e_axis` (0-based axis).
    pub fn unit(n: usize, axis: usize) -> Self {
        assert!(axis < n, "axis {axis} out of range for Z^{n}");
        let mut c = vec![0; n];
        c[axis] = 1;
        Degree(c)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise order: true iff `self_i <= other_i` for all i.
    pub fn leq(&self, other: &Degree) -> bool {
        assert_eq!(self.len(), other.len(), "degree dimension mismatch");
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinatewise negation.
    pub fn negate(&self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }

    /// Coordinatewise sum.
    pub fn add(&self, other: &Degree) -> Degree {
        assert_eq!(self.len(), other.len(), "degree dimension mismatch");
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinatewise difference. The result may leave the positive
    /// orthant; callers that need a monomial exponent check nonnegativity.
    pub fn sub(&self, other: &Degree) -> Degree {
        assert_eq!(self.len(), other.len(), "degree dimension mismatch");
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// True iff every coordinate is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Degree) -> Degree {
        assert_eq!(self.len(), other.len(), "degree dimension mismatch");
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Degree) -> Degree {
        assert_eq!(self.len(), other.len(), "degree dimension mismatch");
        Degree(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All degrees of the interval `[lo, hi]` in ascending lexicographic order.
/// Empty when some coordinate of `lo` exceeds the one of `hi`.
pub fn box_degrees(lo: &Degree, hi: &Degree) -> Vec<Degree> {
    assert_eq!(lo.len(), hi.len(), "degree dimension mismatch");
    let n = lo.len();
    if lo.coords().iter().zip(hi.coords()).any(|(a, b)| a > b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.coords().to_vec();
    loop {
        out.push(Degree::new(cur.clone()));
        // odometer increment, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < hi.coords()[k] {
                cur[k] += 1;
                cur[k + 1..n].copy_from_slice(&lo.coords()[k + 1..n]);
                break;
            }
        }
    }
}
