//! Randomized test corpus: validated graded modules drawn as box
//! truncations of quotients of free modules.
//!
//! A module is built from random generator degrees and random homogeneous
//! relation vectors. Inside the box, the degree-g component of the free
//! module has one coordinate per generator born at or below g, and the
//! relations reaching g are row reduced; the surviving non-pivot
//! coordinates form the component basis, and the structure maps are the
//! induced coordinate inclusions reduced modulo the relations. The
//! construction commutes by design, so every sample validates, which the
//! harness asserts.

use crate::degree::{box_degrees, Degree};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::DenseMatrix;
use crate::module::GradedModuleData;
use rand::Rng;
use std::collections::BTreeMap;

/// Shape of one random module draw.
#[derive(Clone, Debug)]
pub struct ModuleParams {
    pub field: FieldSpec,
    pub n: usize,
    /// Generators and relations live in the box `[0, box_hi]^n`.
    pub box_hi: i64,
    pub max_generators: usize,
    pub max_relations: usize,
}

pub fn random_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        FieldSpec::Rationals => {
            let num = rng.gen_range(-3i64..=3);
            let den = rng.gen_range(1i64..=3);
            let f = field.from_i64(num);
            field.div(&f, &field.from_i64(den))
        }
    }
}

fn random_degree_in<R: Rng>(rng: &mut R, lo: &Degree, hi: &Degree) -> Degree {
    let coords = lo
        .coords()
        .iter()
        .zip(hi.coords())
        .map(|(&a, &b)| rng.gen_range(a..=b))
        .collect();
    Degree::new(coords)
}

/// Reduce `v` against reduced echelon rows (leading one per pivot column).
fn reduce_mod(field: FieldSpec, v: &mut [Scalar], rows: &DenseMatrix, pivots: &[usize]) {
    for (r, &p) in pivots.iter().enumerate() {
        if v[p].is_zero() {
            continue;
        }
        let factor = v[p].clone();
        for (j, coord) in v.iter_mut().enumerate() {
            let delta = field.mul(&factor, rows.get(r, j));
            *coord = field.sub(coord, &delta);
        }
    }
}

/// Draw one validated module with support inside `[0, box_hi]^n` and
/// component dimensions at most `max_generators`.
pub fn random_module<R: Rng>(rng: &mut R, params: &ModuleParams) -> GradedModuleData {
    let f = params.field;
    let n = params.n;
    let lo = Degree::zero(n);
    let hi = Degree::new(vec![params.box_hi; n]);

    let num_gens = rng.gen_range(1..=params.max_generators);
    let gens: Vec<Degree> = (0..num_gens)
        .map(|_| random_degree_in(rng, &lo, &hi))
        .collect();

    let num_rels = rng.gen_range(0..=params.max_relations);
    let mut rels: Vec<(Degree, Vec<Scalar>)> = Vec::new();
    for _ in 0..num_rels {
        let anchor = rng.gen_range(0..num_gens);
        let u = random_degree_in(rng, &gens[anchor], &hi);
        let mut v = vec![f.zero(); num_gens];
        for (l, g) in gens.iter().enumerate() {
            if g.leq(&u) {
                v[l] = random_scalar(rng, f);
            }
        }
        if v.iter().all(Scalar::is_zero) {
            v[anchor] = f.one();
        }
        rels.push((u, v));
    }

    // per degree: ambient coordinates, surviving basis coordinates, and
    // the reduced relation rows used to project onto that basis
    struct Fiber {
        basis: Vec<usize>,
        rows: DenseMatrix,
        pivots: Vec<usize>,
    }
    let mut fibers: BTreeMap<Degree, Fiber> = BTreeMap::new();
    for g in box_degrees(&lo, &hi) {
        let ambient: Vec<usize> = (0..num_gens).filter(|&l| gens[l].leq(&g)).collect();
        if ambient.is_empty() {
            continue;
        }
        let reaching: Vec<&Vec<Scalar>> = rels
            .iter()
            .filter(|(u, _)| u.leq(&g))
            .map(|(_, v)| v)
            .collect();
        let rel_matrix = DenseMatrix::new(
            f,
            reaching.len(),
            num_gens,
            reaching.iter().flat_map(|v| v.iter().cloned()).collect(),
        );
        let (rows, pivots) = rel_matrix.rref();
        let basis: Vec<usize> = ambient
            .iter()
            .copied()
            .filter(|l| !pivots.contains(l))
            .collect();
        if basis.is_empty() {
            continue;
        }
        fibers.insert(
            g,
            Fiber {
                basis,
                rows,
                pivots,
            },
        );
    }

    let mut components = BTreeMap::new();
    for (g, fiber) in &fibers {
        components.insert(g.clone(), fiber.basis.len());
    }
    let mut maps = BTreeMap::new();
    for (g, fiber) in &fibers {
        for axis in 0..n {
            let target_deg = g.add(&Degree::unit(n, axis));
            let Some(target) = fibers.get(&target_deg) else {
                continue;
            };
            let mut mat = DenseMatrix::zeros(f, target.basis.len(), fiber.basis.len());
            for (bj, &l) in fiber.basis.iter().enumerate() {
                let mut v = vec![f.zero(); num_gens];
                v[l] = f.one();
                reduce_mod(f, &mut v, &target.rows, &target.pivots);
                for (bi, &l2) in target.basis.iter().enumerate() {
                    mat.set(bi, bj, v[l2].clone());
                }
            }
            maps.insert((g.clone(), axis), mat);
        }
    }
    GradedModuleData::from_parts(f, n, components, maps)
}

/// The standard corpus mix: all fields crossed with n in 1..=3. Rational
/// draws are kept smaller than prime-field draws.
pub fn corpus_params() -> Vec<ModuleParams> {
    let f2 = FieldSpec::prime(2).unwrap();
    let f5 = FieldSpec::prime(5).unwrap();
    let q = FieldSpec::Rationals;
    let mut out = Vec::new();
    for field in [f2, f5, q] {
        for n in 1..=3usize {
            let (box_hi, max_generators, max_relations) = match (field, n) {
                (FieldSpec::Rationals, 3) => (2, 2, 3),
                (FieldSpec::Rationals, _) => (3, 3, 3),
                (_, 3) => (2, 3, 4),
                (_, 1) => (4, 4, 4),
                _ => (4, 3, 4),
            };
            out.push(ModuleParams {
                field,
                n,
                box_hi,
                max_generators,
                max_relations,
            });
        }
    }
    out
}
