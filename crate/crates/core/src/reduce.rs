//! The reduction engine: a single sweep removing dependent generator
//! columns, and the two-sided reduction that also removes dependent
//! cogenerator rows via the Matlis dual, with an audit trail of witnesses.
//!
//! A column is removable when it equals a combination of the other columns
//! of dominated degree, each shifted up to the column's degree; the shift
//! annihilates every row that does not dominate that degree, so the test
//! is one exact linear solve per column. Any sweep order yields a
//! generator-minimal result with the same multiset of surviving degrees;
//! the order only decides which representative survives among columns of
//! equal degree.

use crate::degree::Degree;
use crate::field::Scalar;
use crate::monmat::MonomialMatrix;
use std::fmt;

/// Order in which columns are examined for removal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SweepOrder {
    /// Descending (degree lex, index): duplicates of a degree are examined
    /// later-index first.
    #[default]
    HighDegreeFirst,
    /// The reverse sweep, exposed for order-invariance checks.
    LowDegreeFirst,
}

/// One term of a dependence witness: `coeff * X^shift * (column index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTerm {
    pub index: usize,
    pub shift: Degree,
    pub coeff: Scalar,
}

/// One removed column: its index and degree in the matrix the pass started
/// from, and the witness terms of the dependence, referencing other
/// columns of that same matrix. Zero coefficients are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removal {
    pub index: usize,
    pub degree: Degree,
    pub witness: Vec<WitnessTerm>,
}

/// Audit trail of a reduction.
///
/// `removed_columns` refers to the input matrix. `removed_rows` records
/// the dual pass: indices are row indices of the input (rows survive the
/// generator pass unchanged) and degrees are the row degrees, while the
/// witnesses live in the Matlis dual, where those rows are columns; each
/// shift is `(partner row degree) - (removed row degree)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub initial_shape: (usize, usize),
    pub final_shape: (usize, usize),
    pub removed_columns: Vec<Removal>,
    pub removed_rows: Vec<Removal>,
}

impl ReductionReport {
    pub fn is_empty(&self) -> bool {
        self.removed_columns.is_empty() && self.removed_rows.is_empty()
    }

    /// Re-verify every witness against `input`: replay both passes and
    /// check that each expanded combination reproduces the removed column
    /// exactly, under the action that annihilates non-dominating rows.
    pub fn verify(&self, input: &MonomialMatrix) -> bool {
        let Some(alive) = replay_pass(input, &self.removed_columns) else {
            return false;
        };
        let keep: Vec<usize> = (0..input.ncols()).filter(|&j| alive[j]).collect();
        let a1 = input.select_columns(&keep);
        let dual = a1.matlis_dual();
        // dual column degrees are the negated row degrees; the stored
        // shifts already live on the dual side
        let dual_removals: Vec<Removal> = self
            .removed_rows
            .iter()
            .map(|r| Removal {
                index: r.index,
                degree: r.degree.negate(),
                witness: r.witness.clone(),
            })
            .collect();
        let Some(dual_alive) = replay_pass(&dual, &dual_removals) else {
            return false;
        };
        let survivors = dual_alive.iter().filter(|&&a| a).count();
        self.final_shape == (survivors, a1.ncols())
    }
}

/// Check the removals of one generator pass in order, returning the final
/// alive mask, or `None` if some witness fails to reproduce its column.
fn replay_pass(matrix: &MonomialMatrix, removals: &[Removal]) -> Option<Vec<bool>> {
    let f = matrix.field();
    let mut alive = vec![true; matrix.ncols()];
    for removal in removals {
        let j0 = removal.index;
        if j0 >= matrix.ncols() || !alive[j0] || matrix.col_degrees()[j0] != removal.degree {
            return None;
        }
        let b0 = &removal.degree;
        let mut expansion = vec![f.zero(); matrix.nrows()];
        for term in &removal.witness {
            let j = term.index;
            if j >= matrix.ncols() || !alive[j] || j == j0 {
                return None;
            }
            let bj = &matrix.col_degrees()[j];
            if !bj.leq(b0) || bj.add(&term.shift) != *b0 {
                return None;
            }
            for i in 0..matrix.nrows() {
                // the shift by X^{b0 - b_j} kills rows not dominating b0
                if !b0.leq(&matrix.row_degrees()[i]) {
                    continue;
                }
                let prod = f.mul(&term.coeff, matrix.entries().get(i, j));
                expansion[i] = f.add(&expansion[i], &prod);
            }
        }
        for i in 0..matrix.nrows() {
            if expansion[i] != *matrix.entries().get(i, j0) {
                return None;
            }
        }
        alive[j0] = false;
    }
    Some(alive)
}

fn sweep_indices(matrix: &MonomialMatrix, order: SweepOrder) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..matrix.ncols()).collect();
    idx.sort_by_key(|&j| matrix.col_degrees()[j].clone());
    if order == SweepOrder::HighDegreeFirst {
        idx.reverse();
    }
    idx
}

/// Remove dependent generator columns in the given sweep order. The result
/// is generator-minimal and has the same image as the input in every
/// degree; the report lists each removal with its witness.
pub fn reduce_generators_with(
    matrix: &MonomialMatrix,
    order: SweepOrder,
) -> (MonomialMatrix, ReductionReport) {
    debug_assert_eq!(matrix.validate(), Ok(()));
    let mut alive = vec![true; matrix.ncols()];
    let mut removed = Vec::new();
    for j0 in sweep_indices(matrix, order) {
        if let Some(coeffs) = matrix.column_dependence(j0, Some(&alive)) {
            let b0 = matrix.col_degrees()[j0].clone();
            let witness = coeffs
                .into_iter()
                .map(|(j, coeff)| WitnessTerm {
                    index: j,
                    shift: b0.sub(&matrix.col_degrees()[j]),
                    coeff,
                })
                .collect();
            alive[j0] = false;
            removed.push(Removal {
                index: j0,
                degree: b0,
                witness,
            });
        }
    }
    let keep: Vec<usize> = (0..matrix.ncols()).filter(|&j| alive[j]).collect();
    let result = matrix.select_columns(&keep);
    let report = ReductionReport {
        initial_shape: (matrix.nrows(), matrix.ncols()),
        final_shape: (result.nrows(), result.ncols()),
        removed_columns: removed,
        removed_rows: Vec::new(),
    };
    (result, report)
}

/// Generator pass in the default sweep order.
pub fn reduce_generators(matrix: &MonomialMatrix) -> (MonomialMatrix, ReductionReport) {
    reduce_generators_with(matrix, SweepOrder::default())
}

/// Full reduction: remove dependent generator columns, then dependent
/// cogenerator rows by running the generator pass on the Matlis dual and
/// dualizing back. The result is minimal on both sides.
pub fn reduce(matrix: &MonomialMatrix) -> (MonomialMatrix, ReductionReport) {
    let (a1, mut report) = reduce_generators(matrix);
    let dual = a1.matlis_dual();
    let (dual_reduced, dual_report) = reduce_generators(&dual);
    let result = dual_reduced.matlis_dual();
    report.removed_rows = dual_report
        .removed_columns
        .into_iter()
        .map(|r| Removal {
            index: r.index,
            degree: r.degree.negate(), // report the row by its own degree
            witness: r.witness,
        })
        .collect();
    report.final_shape = (result.nrows(), result.ncols());
    (result, report)
}

fn coords(d: &Degree) -> String {
    d.coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for ReductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "reduction {}x{} -> {}x{}",
            self.initial_shape.0, self.initial_shape.1, self.final_shape.0, self.final_shape.1
        )?;
        for (kind, removals) in [("col", &self.removed_columns), ("row", &self.removed_rows)] {
            for r in removals {
                write!(
                    f,
                    "removed {kind} {} deg {} via:",
                    r.index,
                    coords(&r.degree)
                )?;
                if r.witness.is_empty() {
                    write!(f, " 0")?;
                } else {
                    for (t, term) in r.witness.iter().enumerate() {
                        if t > 0 {
                            write!(f, " +")?;
                        }
                        write!(
                            f,
                            " {} * X^({}) * {kind} {}",
                            term.coeff,
                            coords(&term.shift),
                            term.index
                        )?;
                    }
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc::assoc_presentation;
    use crate::degree::box_degrees;
    use crate::field::FieldSpec;
    use crate::matrix::DenseMatrix;
    use crate::module::fixtures::{two_parameter_example, univariate_example};
    use crate::monmat::fixtures::*;

    fn d(c: &[i64]) -> Degree {
        Degree::from_slice(c)
    }

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn generator_pass_on_the_two_parameter_presentation() {
        let a = two_parameter_presentation();
        let (reduced, report) = reduce_generators(&a);
        assert_eq!(reduced, two_parameter_generator_minimal());
        assert_eq!(report.initial_shape, (6, 6));
        assert_eq!(report.final_shape, (6, 2));
        assert_eq!(report.removed_columns.len(), 4);
        assert!(report.removed_rows.is_empty());
        assert!(reduced.is_generator_minimal());
        assert!(report.verify(&a));
    }

    #[test]
    fn full_reduction_reaches_the_minimal_matrix() {
        let a = two_parameter_presentation();
        let (reduced, report) = reduce(&a);
        assert_eq!(
            reduced.canonicalize(),
            two_parameter_minimal().canonicalize()
        );
        assert!(reduced.is_minimal());
        assert_eq!(report.final_shape, (2, 2));
        assert!(report.verify(&a));
    }

    #[test]
    fn canonicalized_pipeline_matches_too() {
        // same result when starting from the canonicalized presentation
        let a = two_parameter_presentation().canonicalize();
        let (reduced, report) = reduce(&a);
        assert_eq!(
            reduced.canonicalize(),
            two_parameter_minimal().canonicalize()
        );
        assert!(report.verify(&a));
    }

    #[test]
    fn univariate_generator_pass_drops_the_degree_one_column() {
        let a = assoc_presentation(&univariate_example()).unwrap();
        let (reduced, report) = reduce_generators(&a);
        assert_eq!(reduced.nrows(), 3);
        assert_eq!(reduced.ncols(), 2);
        assert_eq!(reduced.col_degrees(), &[d(&[0]), d(&[0])]);
        assert_eq!(report.removed_columns.len(), 1);
        let removal = &report.removed_columns[0];
        assert_eq!(removal.index, 2);
        assert_eq!(removal.degree, d(&[1]));
        // lambda_1 + lambda_2 = 1 over F_2; the solver picks (1, 0)
        assert_eq!(
            removal.witness,
            vec![WitnessTerm {
                index: 0,
                shift: d(&[1]),
                coeff: f2().one(),
            }]
        );
        assert!(report.verify(&a));
    }

    #[test]
    fn univariate_full_reduction() {
        let a = assoc_presentation(&univariate_example()).unwrap();
        let (reduced, report) = reduce(&a);
        let want = MonomialMatrix::new(
            1,
            vec![d(&[0]), d(&[1])],
            vec![d(&[0]), d(&[0])],
            DenseMatrix::from_i64(f2(), 2, 2, &[1, 0, 1, 1]),
        );
        assert_eq!(reduced.canonicalize(), want.canonicalize());
        assert!(reduced.is_minimal());
        // the dual pass removed the second degree-0 row
        assert_eq!(report.removed_rows.len(), 1);
        assert_eq!(report.removed_rows[0].index, 1);
        assert_eq!(report.removed_rows[0].degree, d(&[0]));
        assert!(report.verify(&a));
    }

    #[test]
    fn minimal_input_is_a_fixpoint() {
        let m = two_parameter_minimal();
        let (reduced, report) = reduce(&m);
        assert_eq!(reduced, m);
        assert!(report.is_empty());
        let (gen_only, gen_report) = reduce_generators(&m);
        assert_eq!(gen_only, m);
        assert!(gen_report.is_empty());
    }

    #[test]
    fn empty_matrix_reduces_to_itself() {
        let e = MonomialMatrix::empty(f2(), 2);
        let (reduced, report) = reduce(&e);
        assert_eq!(reduced, e);
        assert!(report.is_empty());
        assert!(report.verify(&e));
    }

    #[test]
    fn reduction_is_idempotent() {
        let a = two_parameter_presentation();
        let (once, _) = reduce(&a);
        let (twice, report) = reduce(&once);
        assert_eq!(once.canonicalize(), twice.canonicalize());
        assert!(report.is_empty());
    }

    #[test]
    fn image_dims_are_preserved() {
        let a = two_parameter_presentation();
        let (reduced, _) = reduce(&a);
        let (lo, hi) = a.natural_box().unwrap();
        for g in box_degrees(&lo, &hi) {
            assert_eq!(a.image_dim(&g), reduced.image_dim(&g), "at {g}");
        }
    }

    #[test]
    fn both_sweep_orders_agree_on_degrees() {
        let a = two_parameter_presentation();
        let (hi, _) = reduce_generators_with(&a, SweepOrder::HighDegreeFirst);
        let (lo, _) = reduce_generators_with(&a, SweepOrder::LowDegreeFirst);
        let degs = |m: &MonomialMatrix| {
            let mut v = m.col_degrees().to_vec();
            v.sort();
            v
        };
        assert_eq!(degs(&hi), degs(&lo));
    }

    #[test]
    fn surviving_degrees_match_the_module_oracles() {
        let m = two_parameter_example();
        let a = assoc_presentation(&m).unwrap();
        let (reduced, _) = reduce(&a);
        let mut cols: Vec<Degree> = reduced.col_degrees().to_vec();
        cols.sort();
        let want_cols: Vec<Degree> = m
            .betti0()
            .iter()
            .flat_map(|(g, &c)| std::iter::repeat(g.clone()).take(c))
            .collect();
        assert_eq!(cols, want_cols);
        let mut rows: Vec<Degree> = reduced.row_degrees().to_vec();
        rows.sort();
        let want_rows: Vec<Degree> = m
            .socle()
            .iter()
            .flat_map(|(g, &c)| std::iter::repeat(g.clone()).take(c))
            .collect();
        assert_eq!(rows, want_rows);
    }

    #[test]
    fn tampered_witnesses_fail_verification() {
        let a = two_parameter_presentation();
        let (_, mut report) = reduce(&a);
        report.removed_columns[0].witness.clear();
        assert!(!report.verify(&a));
    }

    #[test]
    fn report_renders_in_the_audit_format() {
        let a = assoc_presentation(&univariate_example()).unwrap();
        let (_, report) = reduce(&a);
        let text = report.to_string();
        assert!(text.starts_with("reduction 3x3 -> 2x2\n"), "got: {text}");
        assert!(
            text.contains("removed col 2 deg 1 via: 1 * X^(1) * col 0"),
            "got: {text}"
        );
        assert!(text.contains("removed row 1 deg 0 via:"), "got: {text}");
    }
}
