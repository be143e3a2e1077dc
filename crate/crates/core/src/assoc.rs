//! Construction of the associated free-cofree presentation of a module
//! from its components and structure maps.
//!
//! Rows and columns are indexed by (degree, basis index) over the support,
//! in (degree lex, basis index) order, so row and column labels coincide
//! and the matrix is square. The entry at row (g, mu), column (h, nu) with
//! h <= g is the mu-th coordinate of `X^{g-h} * e_{(h, nu)}` in the input
//! basis of the degree-g component; the scalar action is evaluated by
//! composing the one-step structure maps axis by axis in ascending order,
//! which is path-independent because validated modules commute.

use crate::degree::Degree;
use crate::matrix::DenseMatrix;
use crate::module::{GradedModuleData, ModuleDefect};
use crate::monmat::MonomialMatrix;
use std::collections::BTreeMap;

/// Compose structure maps along the axis-ascending path from `h` up to
/// `g`, memoized per intermediate degree. Off-support intermediates make
/// the composite zero.
fn transporter(
    m: &GradedModuleData,
    h: &Degree,
    g: &Degree,
    memo: &mut BTreeMap<Degree, DenseMatrix>,
) -> DenseMatrix {
    if let Some(t) = memo.get(g) {
        return t.clone();
    }
    let f = m.field();
    let n = m.nvars();
    let t = if g == h {
        DenseMatrix::identity(f, m.hilbert(h))
    } else {
        // peel one step along the largest axis where g exceeds h; the
        // recursion therefore applies axis 1 first and axis n last
        let axis = (0..n)
            .rev()
            .find(|&a| g.coords()[a] > h.coords()[a])
            .expect("transporter requires h <= g");
        let prev = g.sub(&Degree::unit(n, axis));
        let below = transporter(m, h, &prev, memo);
        match m.map(&prev, axis) {
            Some(step) if m.hilbert(&prev) > 0 => step.matmul(&below),
            _ => DenseMatrix::zeros(f, m.hilbert(g), m.hilbert(h)),
        }
    };
    memo.insert(g.clone(), t.clone());
    t
}

/// The monomial matrix of the associated free-cofree presentation of a
/// validated module. Square, with one row and one column per basis vector
/// of each component; the block at equal degrees is the identity.
pub fn assoc_presentation(m: &GradedModuleData) -> Result<MonomialMatrix, ModuleDefect> {
    m.validate()?;
    let f = m.field();
    let n = m.nvars();

    let mut index: Vec<(Degree, usize)> = Vec::new();
    for (g, &dim) in m.components() {
        for mu in 0..dim {
            index.push((g.clone(), mu));
        }
    }
    let labels: Vec<Degree> = index.iter().map(|(g, _)| g.clone()).collect();
    let size = index.len();

    let mut entries = DenseMatrix::zeros(f, size, size);
    let mut col = 0;
    for (h, &dim_h) in m.components() {
        let mut memo = BTreeMap::new();
        for (row, (g, mu)) in index.iter().enumerate() {
            if !h.leq(g) {
                continue;
            }
            let t = transporter(m, h, g, &mut memo);
            for nu in 0..dim_h {
                entries.set(row, col + nu, t.get(*mu, nu).clone());
            }
        }
        col += dim_h;
    }
    Ok(MonomialMatrix::new(n, labels.clone(), labels, entries))
}
