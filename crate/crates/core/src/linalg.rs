//! Real-linear solver for Hermitian forms preserved by a set of matrices.
//!
//! The unknown `h` ranges over the n²-real-dimensional space of n×n Hermitian
//! matrices. For each generator `g` the map `h ↦ g* h g − h` is real-linear;
//! stacking the coordinate matrices of these maps gives a tall real system
//! whose small singular directions are the (near-)invariant forms.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Complex, ONE, ZERO};

/// Orthonormal basis of n×n Hermitian matrices for `⟨A, B⟩ = Re tr(A* B)`.
pub(crate) fn hermitian_basis(n: usize) -> Vec<DMatrix<Complex>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut e = DMatrix::from_element(n, n, ZERO);
        e[(i, i)] = ONE;
        basis.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = DMatrix::from_element(n, n, ZERO);
            e[(i, j)] = Complex::new(s, 0.0);
            e[(j, i)] = Complex::new(s, 0.0);
            basis.push(e);
            let mut e = DMatrix::from_element(n, n, ZERO);
            e[(i, j)] = Complex::new(0.0, s);
            e[(j, i)] = Complex::new(0.0, -s);
            basis.push(e);
        }
    }
    basis
}

fn inner(a: &DMatrix<Complex>, b: &DMatrix<Complex>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

fn frobenius(a: &DMatrix<Complex>) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `max_g ‖g* h g − h‖_F / ‖h‖_F`.
pub(crate) fn invariance_residual(gens: &[DMatrix<Complex>], h: &DMatrix<Complex>) -> f64 {
    let nh = frobenius(h);
    gens.iter()
        .map(|g| frobenius(&(g.adjoint() * h * g - h)) / nh)
        .fold(0.0, f64::max)
}

pub(crate) struct HermitianSolve {
    /// Ascending.
    pub singular_values: Vec<f64>,
    /// Unit-norm Hermitian matrices matching `singular_values`.
    pub directions: Vec<DMatrix<Complex>>,
}

impl HermitianSolve {
    pub(crate) fn floor(&self) -> f64 {
        self.singular_values[0]
    }

    pub(crate) fn null_directions(&self, tol: f64) -> &[DMatrix<Complex>] {
        let k = self.singular_values.iter().take_while(|&&s| s <= tol).count();
        &self.directions[..k]
    }
}

pub(crate) fn solve_invariant_hermitian(gens: &[DMatrix<Complex>]) -> HermitianSolve {
    let n = gens[0].nrows();
    let basis = hermitian_basis(n);
    let dim = basis.len();
    let mut a = DMatrix::<f64>::zeros(dim * gens.len(), dim);
    for (k, g) in gens.iter().enumerate() {
        for (col, e) in basis.iter().enumerate() {
            let image = g.adjoint() * e * g - e;
            for (row, f) in basis.iter().enumerate() {
                a[(k * dim + row, col)] = inner(f, &image);
            }
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let directions = order
        .iter()
        .map(|&i| {
            let mut h = DMatrix::from_element(n, n, ZERO);
            for (j, e) in basis.iter().enumerate() {
                h += e * Complex::from(v_t[(i, j)]);
            }
            h
        })
        .collect();
    HermitianSolve {
        singular_values: order.iter().map(|&i| svd.singular_values[i]).collect(),
        directions,
    }
}

/// Scans null directions, then seeded random combinations of them, for the
/// first candidate `accept` takes. `accept` may rescale (e.g. flip the sign).
pub(crate) fn scan_null_space<F>(
    null: &[DMatrix<Complex>],
    tries: usize,
    seed: u64,
    mut accept: F,
) -> Option<DMatrix<Complex>>
where
    F: FnMut(&DMatrix<Complex>) -> Option<DMatrix<Complex>>,
{
    for h in null {
        if let Some(found) = accept(h) {
            return Some(found);
        }
    }
    if null.len() < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let mut h = &null[0] * Complex::from(0.0);
        for d in null {
            h += d * Complex::from(rng.gen_range(-1.0..1.0));
        }
        if frobenius(&h) < 1e-6 {
            continue;
        }
        let h = &h / Complex::from(frobenius(&h));
        if let Some(found) = accept(&h) {
            return Some(found);
        }
    }
    None
}
