//! Where the Veronese curve sits relative to the ball of a form, sampled on a
//! square chart grid plus the point at infinity. Purely a report.

use rayon::prelude::*;

use super::{HermitianForm3, Signature};
use crate::veronese::psi_vector;
use crate::{CVector2, CVector3, Complex, ONE, ZERO};

/// Relative threshold below which a sample counts as zero.
const ZERO_TOL: f64 = 1e-12;

/// `resolution + 1` points per axis spanning `[−radius, radius]`, both ends included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CensusGrid {
    pub resolution: usize,
    pub radius: f64,
}

impl Default for CensusGrid {
    fn default() -> Self {
        Self {
            resolution: 400,
            radius: 4.0,
        }
    }
}

impl CensusGrid {
    pub fn coordinate(&self, i: usize) -> f64 {
        let n = self.resolution as f64;
        self.radius * (2.0 * i as f64 - n) / n
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub signature: Signature,
    pub grid: CensusGrid,
    /// `F` at the chart grid and at ∞ (`F(∞) = h₃₃`).
    pub min: f64,
    pub max: f64,
    /// Chart point of the first minimum in row-major order; `None` for ∞.
    pub argmin: Option<Complex>,
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
    /// Samples of `F = 0`: grid points that vanish to tolerance, then linear
    /// interpolants of sign changes along rows and columns. `None` is ∞.
    pub zero_set: Vec<Option<Complex>>,
}

impl Census {
    pub fn samples(&self) -> usize {
        self.negative + self.zero + self.positive
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Neg,
    Zero,
    Pos,
}

fn classify(h: &HermitianForm3, v: &CVector3) -> (f64, Sign) {
    let f = h.evaluate(v);
    let tol = ZERO_TOL * h.norm() * v.norm_squared();
    let s = if f.abs() <= tol {
        Sign::Zero
    } else if f < 0.0 {
        Sign::Neg
    } else {
        Sign::Pos
    };
    (f, s)
}

/// Evaluates `⟨psi(1,z), psi(1,z)⟩` over the grid and at ∞.
///
/// Rows are evaluated in parallel and merged in order, so the record is
/// bit-identical across runs and thread counts.
pub fn veronese_ball_census(h: &HermitianForm3, grid: CensusGrid) -> Census {
    let n = grid.resolution + 1;
    let rows: Vec<Vec<(f64, Sign)>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let y = grid.coordinate(j);
            (0..n)
                .map(|i| {
                    let z = Complex::new(grid.coordinate(i), y);
                    classify(h, &psi_vector(&CVector2::new(ONE, z)))
                })
                .collect()
        })
        .collect();

    let at_infinity = classify(h, &psi_vector(&CVector2::new(ZERO, ONE)));
    let point = |i: usize, j: usize| Complex::new(grid.coordinate(i), grid.coordinate(j));

    let mut census = Census {
        signature: h.signature(),
        grid,
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
        argmin: None,
        negative: 0,
        zero: 0,
        positive: 0,
        zero_set: Vec::new(),
    };
    let tally = |f: f64, s: Sign, at: Option<Complex>, c: &mut Census| {
        if f < c.min {
            c.min = f;
            c.argmin = at;
        }
        c.max = c.max.max(f);
        match s {
            Sign::Neg => c.negative += 1,
            Sign::Zero => {
                c.zero += 1;
                c.zero_set.push(at);
            }
            Sign::Pos => c.positive += 1,
        }
    };
    for (j, row) in rows.iter().enumerate() {
        for (i, &(f, s)) in row.iter().enumerate() {
            tally(f, s, Some(point(i, j)), &mut census);
        }
    }
    tally(at_infinity.0, at_infinity.1, None, &mut census);

    let crossing = |a: (f64, Sign), b: (f64, Sign), pa: Complex, pb: Complex| {
        let opposite = matches!((a.1, b.1), (Sign::Neg, Sign::Pos) | (Sign::Pos, Sign::Neg));
        opposite.then(|| pa + (pb - pa) * (a.0 / (a.0 - b.0)))
    };
    for j in 0..n {
        for i in 0..n {
            if i + 1 < n {
                if let Some(z) = crossing(rows[j][i], rows[j][i + 1], point(i, j), point(i + 1, j)) {
                    census.zero_set.push(Some(z));
                }
            }
            if j + 1 < n {
                if let Some(z) = crossing(rows[j][i], rows[j + 1][i], point(i, j), point(i, j + 1)) {
                    census.zero_set.push(Some(z));
                }
            }
        }
    }
    census
}
