//! Homogeneous coordinates on P¹ and P², projective and pseudo-projective maps.
//!
//! Every representative is kept normalized: the entry of largest modulus is
//! scaled to exactly 1 (lowest index wins ties). Two normalized representatives
//! of the same point differ only by rounding, which turns convergence in
//! QP(3,ℂ) into a plain entrywise Cauchy test.

use std::fmt;

use nalgebra::DMatrix;

use crate::{tol, CMatrix3, CVector2, CVector3, Complex, Error, Result, ONE, ZERO};

/// Scales `v` so that its largest-modulus entry becomes 1.
pub fn normalize(v: &[Complex]) -> Result<Vec<Complex>> {
    let mut out = v.to_vec();
    normalize_in_place(&mut out)?;
    Ok(out)
}

pub(crate) fn normalize_in_place(v: &mut [Complex]) -> Result<()> {
    let pivot = pivot_index(v).ok_or(Error::ZeroRepresentative)?;
    let s = ONE / v[pivot];
    for x in v.iter_mut() {
        *x *= s;
    }
    v[pivot] = ONE;
    Ok(())
}

fn pivot_index(v: &[Complex]) -> Option<usize> {
    let max = v.iter().map(|x| x.norm()).fold(0.0_f64, f64::max);
    if !(max > 0.0) || !max.is_finite() {
        return None;
    }
    v.iter().position(|x| x.norm() >= max * (1.0 - tol::TIE))
}

fn norm_sq(v: &[Complex]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

/// Fubini–Study sine distance between the points represented by `a` and `b`.
///
/// Uses the Lagrange identity `‖a‖²‖b‖² − |⟨a,b⟩|² = Σ_{i<j} |a_i b_j − a_j b_i|²`
/// so that nearby points do not lose all precision to cancellation.
pub fn sine_distance(a: &[Complex], b: &[Complex]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut wedge = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            wedge += (a[i] * b[j] - a[j] * b[i]).norm_sqr();
        }
    }
    let denom = norm_sq(a) * norm_sq(b);
    if denom == 0.0 {
        return 1.0;
    }
    (wedge / denom).sqrt().min(1.0)
}

/// Conjugation-free cross product: `cross(a, b) · a = cross(a, b) · b = 0`
/// for the bilinear pairing.
pub fn cross(a: &CVector3, b: &CVector3) -> CVector3 {
    CVector3::new(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
}

/// Bilinear pairing `Σ a_i b_i`.
pub fn pairing(a: &CVector3, b: &CVector3) -> Complex {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Point of P¹_ℂ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint1 {
    v: CVector2,
}

impl ProjPoint1 {
    pub fn new(z: Complex, w: Complex) -> Result<Self> {
        let mut v = [z, w];
        normalize_in_place(&mut v)?;
        Ok(Self {
            v: CVector2::new(v[0], v[1]),
        })
    }

    /// The point `[z, 1]` of the affine chart.
    pub fn finite(z: Complex) -> Self {
        Self::new(z, ONE).expect("w = 1 is nonzero")
    }

    /// The point `[1, 0]`.
    pub fn infinity() -> Self {
        Self {
            v: CVector2::new(ONE, ZERO),
        }
    }

    pub fn from_vector(v: &CVector2) -> Result<Self> {
        Self::new(v[0], v[1])
    }

    pub fn vector(&self) -> &CVector2 {
        &self.v
    }

    /// Value `z / w` in the standard chart, `None` at infinity.
    pub fn chart(&self) -> Option<Complex> {
        if self.v[1].norm() <= tol::DEFAULT * self.v[0].norm() {
            None
        } else {
            Some(self.v[0] / self.v[1])
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        sine_distance(self.v.as_slice(), other.v.as_slice())
    }

    pub fn same_point(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) < tol
    }

    /// Coordinates on the unit sphere; the sine distance is half the
    /// Euclidean distance between these.
    pub fn sphere(&self) -> [f64; 3] {
        let (z, w) = (self.v[0], self.v[1]);
        let n = z.norm_sqr() + w.norm_sqr();
        let zw = z * w.conj();
        [2.0 * zw.re / n, 2.0 * zw.im / n, (z.norm_sqr() - w.norm_sqr()) / n]
    }
}

impl fmt::Display for ProjPoint1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_c(self.v[0]), fmt_c(self.v[1]))
    }
}

/// Point of P²_ℂ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint2 {
    v: CVector3,
}

impl ProjPoint2 {
    pub fn new(x: Complex, y: Complex, z: Complex) -> Result<Self> {
        Self::from_vector(&CVector3::new(x, y, z))
    }

    pub fn real(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(Complex::from(x), Complex::from(y), Complex::from(z))
    }

    pub fn from_vector(v: &CVector3) -> Result<Self> {
        let mut v = *v;
        normalize_in_place(v.as_mut_slice())?;
        Ok(Self { v })
    }

    /// Standard basis point `e_{i+1}`.
    pub fn basis(i: usize) -> Self {
        let mut v = CVector3::zeros();
        v[i] = ONE;
        Self { v }
    }

    pub fn vector(&self) -> &CVector3 {
        &self.v
    }

    pub fn distance(&self, other: &Self) -> f64 {
        chordal_distance(self, other)
    }

    pub fn same_point(&self, other: &Self, tol: f64) -> bool {
        same_point(self, other, tol)
    }
}

impl fmt::Display for ProjPoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", fmt_c(self.v[0]), fmt_c(self.v[1]), fmt_c(self.v[2]))
    }
}

pub fn chordal_distance(p: &ProjPoint2, q: &ProjPoint2) -> f64 {
    sine_distance(p.v.as_slice(), q.v.as_slice())
}

pub fn same_point(p: &ProjPoint2, q: &ProjPoint2, tol: f64) -> bool {
    chordal_distance(p, q) < tol
}

/// Line `{p : c · p = 0}` of P²_ℂ, stored by its normalized coefficient triple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjLine {
    c: CVector3,
}

impl ProjLine {
    pub fn new(a: Complex, b: Complex, c: Complex) -> Result<Self> {
        Self::from_coefficients(&CVector3::new(a, b, c))
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(Complex::from(a), Complex::from(b), Complex::from(c))
    }

    pub fn from_coefficients(c: &CVector3) -> Result<Self> {
        let mut c = *c;
        normalize_in_place(c.as_mut_slice())?;
        Ok(Self { c })
    }

    pub fn coefficients(&self) -> &CVector3 {
        &self.c
    }

    /// Scale-free incidence `|c·p| / (‖c‖‖p‖)`.
    pub fn incidence(&self, p: &ProjPoint2) -> f64 {
        pairing(&self.c, &p.v).norm() / (self.c.norm() * p.v.norm())
    }

    pub fn contains(&self, p: &ProjPoint2, tol: f64) -> bool {
        self.incidence(p) < tol
    }

    pub fn distance(&self, other: &Self) -> f64 {
        sine_distance(self.c.as_slice(), other.c.as_slice())
    }

    pub fn same_line(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) < tol
    }

    /// True when the normalized coefficients are real up to `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.c.iter().all(|x| x.im.abs() <= tol)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", fmt_c(self.c[0]), fmt_c(self.c[1]), fmt_c(self.c[2]))
    }
}

/// The unique line through two distinct points.
pub fn line_through(p: &ProjPoint2, q: &ProjPoint2) -> Result<ProjLine> {
    if chordal_distance(p, q) < tol::DEFAULT {
        return Err(Error::LineUndetermined);
    }
    ProjLine::from_coefficients(&cross(&p.v, &q.v)).map_err(|_| Error::LineUndetermined)
}

/// Singular values of a complex 3×3 matrix, descending.
pub fn singular_values(m: &CMatrix3) -> [f64; 3] {
    let s = m.singular_values();
    let mut out = [s[0], s[1], s[2]];
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Rank with threshold `tol × σ_max`.
pub fn numerical_rank(m: &CMatrix3, tol: f64) -> usize {
    let s = singular_values(m);
    if s[0] == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > tol * s[0]).count()
}

/// Eigenvalues of a complex 3×3 matrix by complex Schur decomposition,
/// sorted by descending modulus.
pub fn eigenvalues(m: &CMatrix3) -> [Complex; 3] {
    let (_, t) = m.schur().unpack();
    let mut ev = [t[(0, 0)], t[(1, 1)], t[(2, 2)]];
    ev.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    ev
}

pub(crate) fn sup_norm(m: &CMatrix3) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Normalizes a matrix entrywise, scanning in row-major order.
pub fn normalize_matrix(m: &CMatrix3) -> Result<CMatrix3> {
    let mut flat: Vec<Complex> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| m[(i, j)])
        .collect();
    normalize_in_place(&mut flat)?;
    Ok(CMatrix3::from_row_slice(&flat))
}

/// Element of PSL(3,ℂ) given by an invertible lift.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjMap3 {
    m: CMatrix3,
}

impl ProjMap3 {
    /// Accepts any lift with a nonzero determinant. Badly conditioned lifts
    /// (high powers of loxodromics) are still invertible; rank tolerances only
    /// matter for their limits.
    pub fn new(m: CMatrix3) -> Result<Self> {
        let n = normalize_matrix(&m).map_err(|_| Error::NonInvertible(0))?;
        let det = n.determinant();
        if det == ZERO || !det.is_finite() || n.try_inverse().is_none() {
            return Err(Error::NonInvertible(0));
        }
        Ok(Self { m })
    }

    /// Wraps a lift known to be invertible (e.g. the image of a det-1 matrix).
    pub(crate) fn from_lift(m: CMatrix3) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self {
            m: CMatrix3::identity(),
        }
    }

    pub fn matrix(&self) -> &CMatrix3 {
        &self.m
    }

    pub fn normalized(&self) -> CMatrix3 {
        normalize_matrix(&self.m).expect("invertible matrix is nonzero")
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { m: self.m * other.m }
    }

    pub fn inverse(&self) -> Self {
        Self {
            m: self.m.try_inverse().expect("invertible lift"),
        }
    }

    pub fn apply(&self, p: &ProjPoint2) -> ProjPoint2 {
        ProjPoint2::from_vector(&(self.m * p.v)).expect("invertible map sends nonzero to nonzero")
    }

    /// Image of a line: coefficients transform by the inverse transpose.
    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let inv_t = self.m.try_inverse().expect("invertible lift").transpose();
        ProjLine::from_coefficients(&(inv_t * l.c)).expect("invertible map")
    }

    /// Sup-norm distance between normalized lifts.
    pub fn distance(&self, other: &Self) -> f64 {
        sup_norm(&(self.normalized() - other.normalized()))
    }

    /// True when the normalized lift is within `tol` of the identity.
    pub fn is_scalar(&self, tol: f64) -> bool {
        sup_norm(&(self.normalized() - CMatrix3::identity())) < tol
    }

    pub fn power(&self, n: u32) -> Self {
        let mut acc = CMatrix3::identity();
        for _ in 0..n {
            acc = normalize_matrix(&(acc * self.m)).expect("invertible");
        }
        Self { m: acc }
    }
}

impl crate::words::GroupElement for ProjMap3 {
    fn compose(&self, rhs: &Self) -> Self {
        Self {
            m: normalize_matrix(&(self.m * rhs.m)).expect("invertible"),
        }
    }
    fn inverse(&self) -> Self {
        ProjMap3::inverse(self)
    }
}

/// Projective class of a nonzero, possibly singular 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PseudoProjMap {
    m: CMatrix3,
    kernel_dim: usize,
}

/// Projectivized linear subspace of P²_ℂ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Locus {
    Empty,
    Point(ProjPoint2),
    Line(ProjLine),
    Plane,
}

impl PseudoProjMap {
    pub fn new(m: &CMatrix3, tol: f64) -> Result<Self> {
        let m = normalize_matrix(m)?;
        let kernel_dim = 3 - numerical_rank(&m, tol);
        Ok(Self { m, kernel_dim })
    }

    pub fn matrix(&self) -> &CMatrix3 {
        &self.m
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    /// Value at `p`, or `None` when `p` lies in the kernel.
    pub fn apply(&self, p: &ProjPoint2) -> Option<ProjPoint2> {
        let w = self.m * p.v;
        if w.norm() <= tol::DEFAULT * sup_norm(&self.m) * p.v.norm() {
            None
        } else {
            ProjPoint2::from_vector(&w).ok()
        }
    }

    /// Projectivized column space.
    pub fn image_locus(&self) -> Locus {
        match self.kernel_dim {
            0 => Locus::Plane,
            1 => {
                let (a, b) = best_pair(&columns(&self.m));
                Locus::Line(ProjLine::from_coefficients(&cross(&a, &b)).expect("rank 2"))
            }
            _ => Locus::Point(ProjPoint2::from_vector(&largest(&columns(&self.m))).expect("rank ≥ 1")),
        }
    }
}

fn columns(m: &CMatrix3) -> [CVector3; 3] {
    [m.column(0).into(), m.column(1).into(), m.column(2).into()]
}

fn rows(m: &CMatrix3) -> [CVector3; 3] {
    [m.row(0).transpose(), m.row(1).transpose(), m.row(2).transpose()]
}

fn largest(vs: &[CVector3; 3]) -> CVector3 {
    *vs.iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("three vectors")
}

fn best_pair(vs: &[CVector3; 3]) -> (CVector3, CVector3) {
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let (i, j) = pairs
        .into_iter()
        .max_by(|&(a, b), &(c, d)| cross(&vs[a], &vs[b]).norm().total_cmp(&cross(&vs[c], &vs[d]).norm()))
        .expect("three pairs");
    (vs[i], vs[j])
}

/// Projectivized kernel of a pseudo-projective map.
///
/// `M p = 0` means every row pairs to zero with `p`, so a rank-1 kernel line
/// has the dominant row as coefficients and a rank-2 kernel point is the cross
/// product of two independent rows.
pub fn kernel_locus(m: &PseudoProjMap) -> Locus {
    let r = rows(&m.m);
    match m.kernel_dim {
        0 => Locus::Empty,
        1 => {
            let (a, b) = best_pair(&r);
            Locus::Point(ProjPoint2::from_vector(&cross(&a, &b)).expect("rank 2"))
        }
        2 => Locus::Line(ProjLine::from_coefficients(&largest(&r)).expect("rank 1")),
        _ => unreachable!("normalized matrices are nonzero"),
    }
}

/// Entrywise limit of a sequence of projective maps in QP(3,ℂ).
///
/// Each term is normalized; the last [`tol::CAUCHY_WINDOW`] normalized terms
/// must agree to within `10 × tol`. The last term is returned as the limit and
/// its kernel dimension is read off with rank threshold `tol`.
pub fn pseudo_projective_limit(seq: &[ProjMap3], tol: f64) -> Result<PseudoProjMap> {
    if seq.len() < 2 {
        return Err(Error::SequenceTooShort {
            needed: 2,
            got: seq.len(),
        });
    }
    let start = seq.len().saturating_sub(tol::CAUCHY_WINDOW);
    let tail: Vec<CMatrix3> = seq[start..].iter().map(|g| g.normalized()).collect();
    let mut spread = 0.0_f64;
    for i in 0..tail.len() {
        for j in i + 1..tail.len() {
            spread = spread.max(sup_norm(&(tail[i] - tail[j])));
        }
    }
    if spread >= 10.0 * tol {
        return Err(Error::NoPseudoLimit { spread });
    }
    PseudoProjMap::new(tail.last().expect("nonempty tail"), tol)
}

fn det3(a: &CVector3, b: &CVector3, c: &CVector3) -> Complex {
    pairing(a, &cross(b, c))
}

/// Whether four points are in general position: every three of them span P².
pub fn in_general_position(pts: &[ProjPoint2; 4], tol: f64) -> bool {
    const TRIPLES: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    TRIPLES.iter().all(|&(i, j, k)| {
        let (a, b, c) = (&pts[i].v, &pts[j].v, &pts[k].v);
        det3(a, b, c).norm() > tol * a.norm() * b.norm() * c.norm()
    })
}

/// Least-squares solution `g` of `g p_i ∥ p_i` for all given points.
///
/// Each point contributes the three linear equations `(g p) × p = 0`; the
/// solution is the right singular vector of the smallest singular value of the
/// stacked system, reshaped row-major and normalized.
pub fn map_fixing_points(points: &[ProjPoint2]) -> Result<CMatrix3> {
    let mut a = DMatrix::<Complex>::zeros(3 * points.len().max(3), 9);
    for (k, p) in points.iter().enumerate() {
        let v = p.v;
        // (g v)_i = Σ_j g_ij v_j; cross component r: (gv)_s v_t − (gv)_t v_s.
        for (r, (s, t)) in [(1usize, 2usize), (2, 0), (0, 1)].into_iter().enumerate() {
            for j in 0..3 {
                a[(3 * k + r, 3 * s + j)] += v[j] * v[t];
                a[(3 * k + r, 3 * t + j)] -= v[j] * v[s];
            }
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nine singular values");
    let row: Vec<Complex> = (0..9).map(|j| v_t[(idx, j)].conj()).collect();
    normalize_matrix(&CMatrix3::from_row_slice(&row))
}

pub(crate) fn fmt_c(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}
