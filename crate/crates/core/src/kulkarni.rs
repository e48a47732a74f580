//! The Kulkarni limit set of a lifted group as the union of tangent lines over
//! the lifted limit set, and numerical cross-checks against orbit behaviour.

use std::f64::consts::PI;

use kiddo::{KdTree, SquaredEuclidean};

use crate::dedup::PointSet;
use crate::moebius::{
    classify, fixed_points, limit_set_p1, ElementType, FixedPoints, GroupSpec, MoebiusMap, DEFAULT_CAP,
};
use crate::projective::{
    kernel_locus, pseudo_projective_limit, Locus, ProjLine, ProjMap3, ProjPoint1, ProjPoint2, PseudoProjMap,
};
use crate::tol;
use crate::veronese::{iota, psi, tangent_line};
use crate::words::for_each_orbit_point;
use crate::{Complex, Error, Result};

/// Tangent lines at `psi(z)` for sampled limit points `z`.
#[derive(Clone, Debug)]
pub struct TangentLineFamily {
    pub lines: Vec<ProjLine>,
    pub sources: Vec<ProjPoint1>,
    pub budget: usize,
    index: SourceIndex,
}

impl PartialEq for TangentLineFamily {
    fn eq(&self, other: &Self) -> bool {
        self.lines == other.lines && self.sources == other.sources && self.budget == other.budget
    }
}

/// Sphere coordinates of the sources in a k-d tree. Points are turned by a
/// fixed generic rotation first: sources on ℝ̂ all share one coordinate, which
/// the tree's axis splits handle badly.
#[derive(Clone, Debug)]
struct SourceIndex {
    tree: KdTree<f64, 3>,
}

const TURN: [[f64; 3]; 3] = [
    [0.8243771119105119, -0.4503592688069459, 0.34289780745545123],
    [0.5234250524444992, 0.8371194473599787, -0.1589252822089562],
    [-0.21547294918749277, 0.31049566800745587, 0.9258314362328853],
];

fn turned(p: &ProjPoint1) -> [f64; 3] {
    let x = p.sphere();
    TURN.map(|r| r[0] * x[0] + r[1] * x[1] + r[2] * x[2])
}

impl SourceIndex {
    fn new(sources: &[ProjPoint1]) -> Self {
        let mut tree = KdTree::with_capacity(sources.len());
        for (i, s) in sources.iter().enumerate() {
            tree.add(&turned(s), i as u64);
        }
        Self { tree }
    }
}

/// The two parameters `k` with `p ∈ T_{psi(k)}`: roots of `p₀v² − p₁uv + p₂u²`.
fn tangent_roots(p: &ProjPoint2) -> [ProjPoint1; 2] {
    let v = p.vector();
    let (a, b, c) = (v[0], -v[1], v[2]);
    // a v² + b u v + c u² = 0 over [u, v]. q = −(b ± √Δ)/2 with the sign
    // that avoids cancellation; the roots are v/u = q/a and v/u = c/q.
    let disc = (b * b - 4.0 * a * c).sqrt();
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -(b + disc) / 2.0
    } else {
        -(b - disc) / 2.0
    };
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    if q.norm() == 0.0 {
        // b = Δ = 0 forces a·c = 0: both roots at u = 0 or at v = 0.
        let k = if a.norm() == 0.0 {
            ProjPoint1::new(zero, one)
        } else {
            ProjPoint1::new(one, zero)
        };
        let k = k.expect("nonzero");
        return [k, k];
    }
    let r1 = ProjPoint1::new(a, q).expect("q ≠ 0"); // v/u = q/a
    let r2 = ProjPoint1::new(q, c).expect("q ≠ 0"); // v/u = c/q
    [r1, r2]
}

impl TangentLineFamily {
    pub fn from_sources(sources: Vec<ProjPoint1>, budget: usize) -> Self {
        let lines = sources.iter().map(tangent_line).collect();
        let index = SourceIndex::new(&sources);
        Self {
            lines,
            sources,
            budget,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// `min over lines of |c·p| / (‖c‖‖p‖)`.
    ///
    /// `|c(s)·p|` factors as `μ·d(s,k₁)·d(s,k₂)` over the roots `k₁, k₂` of
    /// [`tangent_roots`], and `‖c(s)‖` varies by at most `2/√3` on unit
    /// representatives. So a source can only beat the nearest sources to the
    /// roots if its distance product is below `2/√3` times theirs, which pins
    /// it close to one root.
    pub fn min_incidence(&self, p: &ProjPoint2) -> Result<f64> {
        if self.lines.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let roots = tangent_roots(p);
        let inc = |i: usize| self.lines[i].incidence(p);
        let product = |i: usize| self.sources[i].distance(&roots[0]) * self.sources[i].distance(&roots[1]);
        let mut best = f64::INFINITY;
        let mut bound = f64::INFINITY;
        for k in &roots {
            for n in self.index.tree.nearest_n::<SquaredEuclidean>(&turned(k), 2) {
                best = best.min(inc(n.item as usize));
                bound = bound.min(product(n.item as usize));
            }
        }
        let bound = bound * 2.0 / 3f64.sqrt();
        // d₁d₂ < B with d₁ ≤ d₂ and d₁ + d₂ ≥ e forces d₁ below the smaller
        // root of d(e − d) = B when that exists, and below √B always.
        let e = roots[0].distance(&roots[1]);
        let radius = if e * e > 4.0 * bound {
            2.0 * bound / (e + (e * e - 4.0 * bound).sqrt())
        } else {
            bound.sqrt()
        };
        // Sine distance is half the Euclidean distance on the sphere.
        let r2 = (2.0 * radius * (1.0 + 1e-9)).powi(2);
        for k in &roots {
            for n in self.index.tree.within_unsorted::<SquaredEuclidean>(&turned(k), r2) {
                best = best.min(inc(n.item as usize));
            }
        }
        Ok(best)
    }

    /// Largest chordal gap between circularly consecutive sources on ℝ̂, or
    /// `None` if some source is not real.
    pub fn max_source_gap(&self) -> Option<f64> {
        let mut angles = Vec::with_capacity(self.sources.len());
        for s in &self.sources {
            let v = s.vector();
            // Rotate the representative to real entries.
            let phase = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
            let (u, w) = (v[0] / phase, v[1] / phase);
            if u.im.abs() > 1e-8 || w.im.abs() > 1e-8 {
                return None;
            }
            // [u, w] ∝ [sin a, cos a]; a is defined mod π.
            angles.push(u.re.atan2(w.re).rem_euclid(PI));
        }
        if angles.len() < 2 {
            return Some(1.0);
        }
        angles.sort_by(f64::total_cmp);
        let mut gap = PI - angles[angles.len() - 1] + angles[0];
        for w in angles.windows(2) {
            gap = gap.max(w[1] - w[0]);
        }
        // Chordal distance between [sin a, cos a] and [sin b, cos b] is |sin(a − b)|.
        Some(if gap >= PI / 2.0 { 1.0 } else { gap.sin() })
    }

    /// Fraction of lines with real coefficient ratios.
    pub fn real_lines(&self, tol: f64) -> usize {
        self.lines.iter().filter(|l| l.is_real(tol)).count()
    }
}

/// Tangent lines over the sampled limit set at the given word budget.
pub fn kulkarni_limit_lines(g: &GroupSpec, budget: usize) -> Result<TangentLineFamily> {
    let sources = limit_set_p1(g, budget, DEFAULT_CAP)?;
    Ok(TangentLineFamily::from_sources(sources, budget))
}

/// Whether `p` stays more than `eps` (normalized incidence) away from every line.
pub fn omega_membership(p: &ProjPoint2, fam: &TangentLineFamily, eps: f64) -> Result<bool> {
    Ok(fam.min_incidence(p)? > eps)
}

#[derive(Clone, Debug)]
pub struct PseudoLimitReport {
    pub limit: PseudoProjMap,
    pub attracting: ProjPoint1,
    pub repelling: ProjPoint1,
    /// Chordal distance from the image point of the limit to `psi(attracting)`.
    pub image_residual: f64,
    /// Distance from the kernel line to the tangent line at `psi(repelling)`.
    pub kernel_residual: f64,
}

impl PseudoLimitReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.image_residual < tol && self.kernel_residual < tol
    }
}

/// Limit of `iota(g)ⁿ` for n ≤ `n_max`, compared with the attracting point and
/// the tangent line at the repelling point.
pub fn pseudo_limit_tangent_check(g: &MoebiusMap, n_max: u32) -> Result<PseudoLimitReport> {
    if classify(g) != ElementType::Loxodromic {
        return Err(Error::NotLoxodromic);
    }
    let FixedPoints::Loxodromic { attracting, repelling } = fixed_points(g)? else {
        return Err(Error::NotLoxodromic);
    };
    let lift = iota(g);
    let mut seq = Vec::with_capacity(n_max as usize);
    let mut acc = ProjMap3::identity();
    for _ in 0..n_max {
        acc = crate::words::GroupElement::compose(&acc, &lift);
        seq.push(acc);
    }
    let limit = pseudo_projective_limit(&seq, tol::DEFAULT)?;
    let image_residual = match limit.image_locus() {
        Locus::Point(p) => p.distance(&psi(&attracting).point),
        _ => 1.0,
    };
    let kernel_residual = match kernel_locus(&limit) {
        Locus::Line(l) => l.distance(&tangent_line(&repelling)),
        _ => 1.0,
    };
    Ok(PseudoLimitReport {
        limit,
        attracting,
        repelling,
        image_residual,
        kernel_residual,
    })
}

/// Orbit points of `seed` under lifted words of length `budget − 1` and
/// `budget`, deduplicated; these approximate cluster points of the orbit.
pub fn orbit_accumulation_p2(g: &GroupSpec, seed: &ProjPoint2, budget: usize) -> Result<Vec<ProjPoint2>> {
    let fam = kulkarni_limit_lines(g, budget)?;
    orbit_accumulation_with(g, seed, budget, &fam)
}

/// [`orbit_accumulation_p2`] against an already computed family.
pub fn orbit_accumulation_with(
    g: &GroupSpec,
    seed: &ProjPoint2,
    budget: usize,
    fam: &TangentLineFamily,
) -> Result<Vec<ProjPoint2>> {
    let inc = fam.min_incidence(seed)?;
    if inc <= tol::MEMBERSHIP {
        return Err(Error::SeedOnLimitLine(inc));
    }
    let lifts: Vec<ProjMap3> = g.generators.iter().map(iota).collect();
    let mut set = PointSet::new(tol::DEDUP);
    for_each_orbit_point(
        &lifts,
        &g.alphabet(),
        seed,
        budget,
        |m, p| m.apply(p),
        |len, p| {
            if len + 1 >= budget {
                set.insert(*p);
            }
        },
    );
    Ok(set.into_vec())
}
