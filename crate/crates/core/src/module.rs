//! Finitely supported `Z^n`-graded modules given by component dimensions
//! and one-step structure maps, with the oracles (Hilbert function,
//! minimal generator and cogenerator counts) used to certify reductions.

use crate::degree::Degree;
use crate::field::FieldSpec;
use crate::matrix::DenseMatrix;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleDefect {
    #[error("component at {degree} has dimension 0; omit it instead")]
    ZeroComponent { degree: Degree },
    #[error("degree {degree} has {got} coordinates, expected {expected}")]
    WrongArity {
        degree: Degree,
        got: usize,
        expected: usize,
    },
    #[error("map at {degree} axis {axis} touches a zero component")]
    MapOffSupport { degree: Degree, axis: usize },
    #[error(
        "map at {degree} axis {axis} is {got_rows}x{got_cols}, expected {want_rows}x{want_cols}"
    )]
    MapShape {
        degree: Degree,
        axis: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("map at {degree} axis {axis} is over {got}, expected {want}")]
    MapField {
        degree: Degree,
        axis: usize,
        got: FieldSpec,
        want: FieldSpec,
    },
    #[error("missing map at {degree} axis {axis} between nonzero components")]
    MissingMap { degree: Degree, axis: usize },
    #[error("structure maps do not commute on the square at {degree}, axes {i} and {j}")]
    NonCommuting { degree: Degree, i: usize, j: usize },
}

/// A finitely generated, finitely supported `Z^n`-graded module: positive
/// component dimensions per degree and the `X_axis` structure maps between
/// adjacent nonzero components. Maps into or out of zero components are
/// implicitly zero and never stored.
///
/// Axes are 1-based in diagnostics and file formats, 0-based in code.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedModuleData {
    field: FieldSpec,
    n: usize,
    components: BTreeMap<Degree, usize>,
    maps: BTreeMap<(Degree, usize), DenseMatrix>,
}

impl GradedModuleData {
    /// Assemble a module; missing maps between nonzero components are
    /// filled in as zero matrices. Shapes and commutativity are checked
    /// by [`GradedModuleData::validate`], not here.
    pub fn from_parts(
        field: FieldSpec,
        n: usize,
        components: BTreeMap<Degree, usize>,
        mut maps: BTreeMap<(Degree, usize), DenseMatrix>,
    ) -> Self {
        for (g, &dim_g) in &components {
            if dim_g == 0 {
                continue;
            }
            for axis in 0..n {
                let target = g.add(&Degree::unit(n, axis));
                let dim_t = components.get(&target).copied().unwrap_or(0);
                if dim_t > 0 {
                    maps.entry((g.clone(), axis))
                        .or_insert_with(|| DenseMatrix::zeros(field, dim_t, dim_g));
                }
            }
        }
        GradedModuleData {
            field,
            n,
            components,
            maps,
        }
    }

    /// The zero module over the given field.
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Self::from_parts(field, n, BTreeMap::new(), BTreeMap::new())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &BTreeMap<Degree, usize> {
        &self.components
    }

    pub fn maps(&self) -> &BTreeMap<(Degree, usize), DenseMatrix> {
        &self.maps
    }

    /// The structure map `X_axis: M_g -> M_{g+e_axis}` (0-based axis), if
    /// both components are nonzero.
    pub fn map(&self, g: &Degree, axis: usize) -> Option<&DenseMatrix> {
        self.maps.get(&(g.clone(), axis))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// `dim_k M_g`; zero off the support.
    pub fn hilbert(&self, g: &Degree) -> usize {
        self.components.get(g).copied().unwrap_or(0)
    }

    /// Total dimension over all degrees.
    pub fn total_dim(&self) -> usize {
        self.components.values().sum()
    }

    /// Check the shape and commutativity invariants. Diagnostics name the
    /// first violated square in lexicographic scan order.
    pub fn validate(&self) -> Result<(), ModuleDefect> {
        for (g, &dim_g) in &self.components {
            if g.len() != self.n {
                return Err(ModuleDefect::WrongArity {
                    degree: g.clone(),
                    got: g.len(),
                    expected: self.n,
                });
            }
            if dim_g == 0 {
                return Err(ModuleDefect::ZeroComponent { degree: g.clone() });
            }
        }
        for ((g, axis), m) in &self.maps {
            let dim_g = self.hilbert(g);
            let target = g.add(&Degree::unit(self.n, *axis));
            let dim_t = self.hilbert(&target);
            if dim_g == 0 || dim_t == 0 {
                return Err(ModuleDefect::MapOffSupport {
                    degree: g.clone(),
                    axis: axis + 1,
                });
            }
            if m.rows() != dim_t || m.cols() != dim_g {
                return Err(ModuleDefect::MapShape {
                    degree: g.clone(),
                    axis: axis + 1,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows: dim_t,
                    want_cols: dim_g,
                });
            }
            if m.field() != self.field {
                return Err(ModuleDefect::MapField {
                    degree: g.clone(),
                    axis: axis + 1,
                    got: m.field(),
                    want: self.field,
                });
            }
        }
        for (g, &dim_g) in &self.components {
            debug_assert!(dim_g > 0);
            for axis in 0..self.n {
                let target = g.add(&Degree::unit(self.n, axis));
                if self.hilbert(&target) > 0 && self.map(g, axis).is_none() {
                    return Err(ModuleDefect::MissingMap {
                        degree: g.clone(),
                        axis: axis + 1,
                    });
                }
            }
        }
        // commutativity of each complete square: X_j X_i = X_i X_j out of g
        for g in self.components.keys() {
            for i in 0..self.n {
                for j in i + 1..self.n {
                    let gi = g.add(&Degree::unit(self.n, i));
                    let gj = g.add(&Degree::unit(self.n, j));
                    let gij = gi.add(&Degree::unit(self.n, j));
                    if self.hilbert(&gi) == 0 || self.hilbert(&gj) == 0 || self.hilbert(&gij) == 0 {
                        // a zero corner forces both composites to zero
                        continue;
                    }
                    let via_i = self.map(&gi, j).unwrap().matmul(self.map(g, i).unwrap());
                    let via_j = self.map(&gj, i).unwrap().matmul(self.map(g, j).unwrap());
                    if via_i != via_j {
                        return Err(ModuleDefect::NonCommuting {
                            degree: g.clone(),
                            i: i + 1,
                            j: j + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Graded dimensions of `M / m M`: the minimal number of generators in
    /// each degree. Zero entries are omitted.
    pub fn betti0(&self) -> BTreeMap<Degree, usize> {
        let mut out = BTreeMap::new();
        for (g, &dim_g) in &self.components {
            let mut incoming = Vec::new();
            for axis in 0..self.n {
                let source = g.sub(&Degree::unit(self.n, axis));
                if let Some(m) = self.map(&source, axis) {
                    incoming.push(m.clone());
                }
            }
            let image_rank = if incoming.is_empty() {
                0
            } else {
                let refs: Vec<&DenseMatrix> = incoming.iter().collect();
                DenseMatrix::hstack(self.field, dim_g, &refs).rank()
            };
            let count = dim_g - image_rank;
            if count > 0 {
                out.insert(g.clone(), count);
            }
        }
        out
    }

    /// Graded dimensions of the socle `{m : X_i m = 0 for all i}`: the
    /// minimal number of cogenerators in each degree. Zero entries omitted.
    pub fn socle(&self) -> BTreeMap<Degree, usize> {
        let mut out = BTreeMap::new();
        for (g, &dim_g) in &self.components {
            let mut outgoing = Vec::new();
            for axis in 0..self.n {
                if let Some(m) = self.map(g, axis) {
                    outgoing.push(m.clone());
                }
            }
            let joint_rank = if outgoing.is_empty() {
                0
            } else {
                let refs: Vec<&DenseMatrix> = outgoing.iter().collect();
                DenseMatrix::vstack(self.field, dim_g, &refs).rank()
            };
            let count = dim_g - joint_rank;
            if count > 0 {
                out.insert(g.clone(), count);
            }
        }
        out
    }

    /// Componentwise min and max of the support. `None` for the zero module.
    pub fn hull(&self) -> Option<(Degree, Degree)> {
        let mut it = self.components.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for g in it {
            lo = lo.meet(g);
            hi = hi.join(g);
        }
        Some((lo, hi))
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::{two_parameter_example, univariate_example};
    use super::*;

    fn d(c: &[i64]) -> Degree {
        Degree::from_slice(c)
    }

    #[test]
    fn example_module_validates() {
        let m = two_parameter_example();
        assert_eq!(m.validate(), Ok(()));
    }

    #[test]
    fn zero_module_validates() {
        let m = GradedModuleData::zero(FieldSpec::Rationals, 2);
        assert_eq!(m.validate(), Ok(()));
        assert!(m.is_zero());
        assert!(m.betti0().is_empty());
        assert!(m.socle().is_empty());
        assert_eq!(m.hull(), None);
    }

    #[test]
    fn broken_square_is_reported() {
        let f = FieldSpec::prime(2).unwrap();
        let mut m = two_parameter_example();
        // kill X2: (1,0)->(1,1); then X1 X2 != X2 X1 out of (1,0)
        m.maps.insert((d(&[1, 0]), 1), DenseMatrix::zeros(f, 2, 1));
        assert_eq!(
            m.validate(),
            Err(ModuleDefect::NonCommuting {
                degree: d(&[1, 0]),
                i: 1,
                j: 2,
            })
        );
    }

    #[test]
    fn wrong_shape_is_reported() {
        let f = FieldSpec::prime(2).unwrap();
        let mut m = two_parameter_example();
        m.maps.insert((d(&[1, 0]), 1), DenseMatrix::zeros(f, 1, 1));
        assert!(matches!(m.validate(), Err(ModuleDefect::MapShape { .. })));
    }

    #[test]
    fn hilbert_function_of_the_example() {
        let m = two_parameter_example();
        assert_eq!(m.hilbert(&d(&[1, 1])), 2);
        assert_eq!(m.hilbert(&d(&[2, 1])), 1);
        assert_eq!(m.hilbert(&d(&[0, 0])), 0);
        assert_eq!(m.hilbert(&d(&[5, 7])), 0);
        assert_eq!(m.total_dim(), 6);
    }

    #[test]
    fn betti0_of_the_example() {
        let m = two_parameter_example();
        let mut want = BTreeMap::new();
        want.insert(d(&[1, 0]), 1);
        want.insert(d(&[0, 1]), 1);
        assert_eq!(m.betti0(), want);
    }

    #[test]
    fn socle_of_the_example() {
        let m = two_parameter_example();
        let mut want = BTreeMap::new();
        want.insert(d(&[1, 1]), 1);
        want.insert(d(&[2, 1]), 1);
        assert_eq!(m.socle(), want);
    }

    #[test]
    fn single_component_module() {
        let f = FieldSpec::Rationals;
        let mut components = BTreeMap::new();
        components.insert(d(&[3, 5]), 1);
        let m = GradedModuleData::from_parts(f, 2, components, BTreeMap::new());
        assert_eq!(m.validate(), Ok(()));
        assert_eq!(m.betti0().get(&d(&[3, 5])), Some(&1));
        assert_eq!(m.socle().get(&d(&[3, 5])), Some(&1));
        assert_eq!(m.hull(), Some((d(&[3, 5]), d(&[3, 5]))));
    }

    #[test]
    fn univariate_oracles() {
        let m = univariate_example();
        assert_eq!(m.validate(), Ok(()));
        let mut gens = BTreeMap::new();
        gens.insert(d(&[0]), 2);
        assert_eq!(m.betti0(), gens);
        let mut cogens = BTreeMap::new();
        cogens.insert(d(&[0]), 1);
        cogens.insert(d(&[1]), 1);
        assert_eq!(m.socle(), cogens);
    }

    #[test]
    fn hull_of_the_example() {
        let m = two_parameter_example();
        assert_eq!(m.hull(), Some((d(&[0, 0]), d(&[2, 1]))));
    }

    #[test]
    fn generator_count_bounded_by_total_dimension() {
        let m = two_parameter_example();
        let gens: usize = m.betti0().values().sum();
        assert!(gens <= m.total_dim());
        // equality only when all maps vanish
        let f = FieldSpec::prime(2).unwrap();
        let mut components = BTreeMap::new();
        components.insert(d(&[0, 0]), 2);
        components.insert(d(&[1, 0]), 1);
        let mut maps = BTreeMap::new();
        maps.insert((d(&[0, 0]), 0), DenseMatrix::zeros(f, 1, 2));
        let all_zero = GradedModuleData::from_parts(f, 2, components, maps);
        assert_eq!(
            all_zero.betti0().values().sum::<usize>(),
            all_zero.total_dim()
        );
    }

    /// Matlis dual of the raw data: components mirrored at -g, structure
    /// maps transposed. Used to check that the generator and cogenerator
    /// oracles exchange under dualization.
    fn dual_module(m: &GradedModuleData) -> GradedModuleData {
        let n = m.nvars();
        let mut components = BTreeMap::new();
        for (g, &dim) in m.components() {
            components.insert(g.negate(), dim);
        }
        let mut maps = BTreeMap::new();
        for ((g, axis), mat) in m.maps() {
            // X_axis on the dual at -(g+e) is the transpose of X_axis at g
            let source = g.add(&Degree::unit(n, *axis)).negate();
            maps.insert((source, *axis), mat.transpose());
        }
        GradedModuleData::from_parts(m.field(), n, components, maps)
    }

    #[test]
    fn betti_and_socle_swap_under_dualization() {
        for m in [two_parameter_example(), univariate_example()] {
            let dual = dual_module(&m);
            assert_eq!(dual.validate(), Ok(()));
            let negate_keys = |t: &BTreeMap<Degree, usize>| -> BTreeMap<Degree, usize> {
                t.iter().map(|(g, &c)| (g.negate(), c)).collect()
            };
            assert_eq!(dual.betti0(), negate_keys(&m.socle()));
            assert_eq!(dual.socle(), negate_keys(&m.betti0()));
        }
    }
}
