//! Discrete groups with a machine-checkable discreteness certificate.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify, CircleSpec, ElementType, MoebiusMap};
use crate::projective::ProjPoint1;
use crate::words::{Alphabet, Word};
use crate::{CMatrix2, Complex, Error, Result, I, ONE, ZERO};

/// Boundary samples per circle in the ping-pong check.
const BOUNDARY_SAMPLES: usize = 64;
const BOUNDARY_TOL: f64 = 1e-9;
const RELATOR_TOL: f64 = 1e-8;

/// A generator maps the exterior of `source` onto the interior of `target`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPair {
    pub source: CircleSpec,
    pub target: CircleSpec,
}

impl DiskPair {
    pub fn new(source: (Complex, f64), target: (Complex, f64)) -> Result<Self> {
        Ok(Self {
            source: CircleSpec::disk(source.0, source.1)?,
            target: CircleSpec::disk(target.0, target.1)?,
        })
    }

    fn round(&self) -> Result<[(Complex, f64); 2]> {
        let get = |c: &CircleSpec| {
            c.center_radius()
                .ok_or_else(|| Error::InvalidParameter("ping-pong disks must be round".into()))
        };
        Ok([get(&self.source)?, get(&self.target)?])
    }

    /// `z ↦ c_t − r_s r_t / (z − c_s)`: the map with boundary correspondences
    /// `c_s + r_s ↦ c_t − r_t`, `c_s + i r_s ↦ c_t + i r_t`, `c_s − r_s ↦ c_t + r_t`.
    /// It sends ∞ to `c_t`, so the source exterior lands inside the target.
    pub fn generator(&self) -> Result<MoebiusMap> {
        let [(cs, rs), (ct, rt)] = self.round()?;
        MoebiusMap::from_matrix(CMatrix2::new(ct, -ct * cs - rs * rt, ONE, -cs))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    None,
    PingPong(Vec<DiskPair>),
    /// A word that must evaluate to the identity.
    Relator(Word),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    pub generators: Vec<MoebiusMap>,
    pub labels: Vec<String>,
    pub word_budget: usize,
    pub certificate: Certificate,
}

impl GroupSpec {
    /// Validates labels, rejects identity generators and checks the certificate.
    pub fn new(
        generators: Vec<MoebiusMap>,
        labels: Vec<String>,
        word_budget: usize,
        certificate: Certificate,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if labels.len() != generators.len() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} generators",
                labels.len(),
                generators.len()
            )));
        }
        Alphabet::new(&labels)?;
        if let Some(i) = generators.iter().position(|g| classify(g) == ElementType::Identity) {
            return Err(Error::InvalidParameter(format!(
                "generator {} is the identity",
                labels[i]
            )));
        }
        let spec = Self {
            generators,
            labels,
            word_budget,
            certificate,
        };
        spec.verify_certificate()?;
        Ok(spec)
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(&self.labels).expect("labels validated on construction")
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn disks(&self) -> Option<&[DiskPair]> {
        match &self.certificate {
            Certificate::PingPong(d) => Some(d),
            _ => None,
        }
    }

    pub fn verify_certificate(&self) -> Result<()> {
        match &self.certificate {
            Certificate::None => Ok(()),
            Certificate::PingPong(pairs) => verify_ping_pong(&self.generators, pairs),
            Certificate::Relator(w) => {
                if w.0.iter().any(|l| l.generator >= self.generators.len()) {
                    return Err(Error::InvalidParameter("relator uses an unknown generator".into()));
                }
                let r = w.evaluate(&self.generators, MoebiusMap::identity());
                let d = r.distance(&MoebiusMap::identity());
                if d < RELATOR_TOL {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "relator evaluates to {r}, distance {d:e} from the identity"
                    )))
                }
            }
        }
    }
}

fn check_disjoint(pairs: &[DiskPair]) -> Result<()> {
    let mut disks = Vec::with_capacity(2 * pairs.len());
    for p in pairs {
        disks.extend(p.round()?);
    }
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let ((ci, ri), (cj, rj)) = (disks[i], disks[j]);
            let gap = (ci - cj).norm() - ri - rj;
            if !(gap > BOUNDARY_TOL) {
                return Err(Error::PingPongViolated(format!(
                    "disks {i} and {j} overlap (gap {gap:.3e})"
                )));
            }
        }
    }
    Ok(())
}

/// Relative offset of a point from a circle, zero exactly on it.
fn circle_offset(c: &CircleSpec, p: &ProjPoint1) -> f64 {
    let scale = c.matrix().iter().map(|x| x.norm()).fold(0.0, f64::max);
    c.value(p) / (scale * p.vector().norm_squared())
}

fn verify_ping_pong(gens: &[MoebiusMap], pairs: &[DiskPair]) -> Result<()> {
    if pairs.len() != gens.len() {
        return Err(Error::PingPongViolated(format!(
            "{} disk pairs for {} generators",
            pairs.len(),
            gens.len()
        )));
    }
    check_disjoint(pairs)?;
    for (k, (g, pair)) in gens.iter().zip(pairs).enumerate() {
        let [(cs, rs), _] = pair.round()?;
        for s in 0..BOUNDARY_SAMPLES {
            let theta = 2.0 * PI * s as f64 / BOUNDARY_SAMPLES as f64;
            let p = ProjPoint1::finite(cs + Complex::from_polar(rs, theta));
            let off = circle_offset(&pair.target, &g.apply(&p));
            if off.abs() > BOUNDARY_TOL {
                return Err(Error::PingPongViolated(format!(
                    "generator {k} moves a source boundary point off the target circle ({off:.3e})"
                )));
            }
        }
        // ∞ lies outside every round disk; its image decides which side is hit.
        if pair.target.value(&g.apply(&ProjPoint1::infinity())) >= 0.0 {
            return Err(Error::PingPongViolated(format!(
                "generator {k} sends the source exterior outside the target disk"
            )));
        }
    }
    Ok(())
}

fn default_labels(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

/// Free Schottky group pairing each source disk with its target disk.
/// Generators are labelled `a`, `b`, … with a default word budget of 8.
pub fn schottky_group(pairs: &[DiskPair]) -> Result<GroupSpec> {
    if pairs.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    check_disjoint(pairs)?;
    let gens = pairs.iter().map(DiskPair::generator).collect::<Result<Vec<_>>>()?;
    GroupSpec::new(
        gens,
        default_labels(pairs.len()),
        8,
        Certificate::PingPong(pairs.to_vec()),
    )
}

/// The Fuchsian rank-2 example: `a` pairs the disks at −3 and 3, `b` those at
/// −1 and 1, all of radius 0.6.
pub fn four_disk_schottky() -> GroupSpec {
    let r = 0.6;
    let pairs =
        [(-3.0, 3.0), (-1.0, 1.0)].map(|(s, t)| DiskPair::new((s.into(), r), (t.into(), r)).expect("positive radius"));
    schottky_group(&pairs).expect("disjoint disks")
}

/// Side pairings of the regular octagon with interior angles π/4 centred at the
/// origin of the disk model, moved to the upper half-plane. Labels `a1 b1 a2 b2`; relator `[a1,b1][a2,b2]`.
pub fn genus2_octagon_group() -> GroupSpec {
    // Distance between centres of the octagon and its mirror across a side:
    // cosh d = cot(π/8) for the {8,8} tiling.
    let ch = 1.0 / (PI / 8.0).tan();
    let sh = (ch * ch - 1.0).sqrt();
    let boost = CMatrix2::new(ch.into(), sh.into(), sh.into(), ch.into());
    let rot = |t: f64| {
        CMatrix2::new(
            Complex::from_polar(1.0, t / 2.0),
            ZERO,
            ZERO,
            Complex::from_polar(1.0, -t / 2.0),
        )
    };
    let theta = |k: usize| k as f64 * PI / 4.0;
    // Maps side j onto side i: rotate side j to the negative real axis,
    // push across it, rotate to side i.
    let pair = |j: usize, i: usize| rot(theta(i)) * boost * rot(PI - theta(j));
    let cayley = CMatrix2::new(I, I, -ONE, ONE);
    let cayley_inv = cayley.try_inverse().expect("invertible");
    let to_half_plane = |m: CMatrix2| {
        let mut h = cayley * m * cayley_inv;
        // Exactly real up to rounding; drop the rounding.
        for x in h.iter_mut() {
            *x = x.re.into();
        }
        MoebiusMap::from_matrix(h).expect("unimodular")
    };
    let gens = vec![
        to_half_plane(pair(2, 0)),
        to_half_plane(pair(1, 3)),
        to_half_plane(pair(6, 4)),
        to_half_plane(pair(5, 7)),
    ];
    let labels: Vec<String> = ["a1", "b1", "a2", "b2"].map(String::from).to_vec();
    let alphabet = Alphabet::new(&labels).expect("valid labels");
    let relator = alphabet.parse_word("a1 b1 A1 B1 a2 b2 A2 B2").expect("known letters");
    GroupSpec::new(gens, labels, 6, Certificate::Relator(relator)).expect("octagon relator holds")
}

/// Seed of the deformation direction used when none is given.
pub const DEFAULT_DEFORMATION_SEED: u64 = 1;

/// Per-disk centre displacements, ordered source₀, target₀, source₁, ….
#[derive(Clone, Debug, PartialEq)]
pub struct Deformation {
    pub displacements: Vec<Complex>,
}

impl Deformation {
    pub fn new(displacements: Vec<Complex>) -> Self {
        Self { displacements }
    }

    /// Lifts every target disk by `i·amount`, leaving the sources fixed.
    pub fn lift_targets(pairs: usize, amount: f64) -> Self {
        Self::new(
            (0..2 * pairs)
                .map(|k| if k % 2 == 1 { I * amount } else { ZERO })
                .collect(),
        )
    }

    /// Seeded imaginary displacements with modulus in [0.5, 1.5].
    pub fn from_seed(pairs: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new(
            (0..2 * pairs)
                .map(|_| {
                    let m: f64 = rng.gen_range(0.5..1.5);
                    I * if rng.gen_bool(0.5) { m } else { -m }
                })
                .collect(),
        )
    }
}

/// Moves the disks of a Fuchsian Schottky group off the real axis by
/// `t · displacement` and rebuilds the generators.
pub fn quasifuchsian_family(base: &GroupSpec, t: f64, dir: &Deformation) -> Result<GroupSpec> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
    }
    let pairs = base
        .disks()
        .ok_or_else(|| Error::InvalidParameter("deformation needs a ping-pong certificate".into()))?;
    if dir.displacements.len() != 2 * pairs.len() {
        return Err(Error::InvalidParameter(format!(
            "{} displacements for {} disks",
            dir.displacements.len(),
            2 * pairs.len()
        )));
    }
    let mut disks = Vec::with_capacity(2 * pairs.len());
    for p in pairs {
        disks.extend(p.round()?);
    }
    if disks.iter().any(|(c, _)| c.im.abs() > 1e-12) {
        return Err(Error::InvalidParameter(
            "base disks must be centred on the real axis".into(),
        ));
    }
    if t == 0.0 {
        return Ok(base.clone());
    }
    let moved: Vec<DiskPair> = disks
        .chunks(2)
        .zip(dir.displacements.chunks(2))
        .map(|(d, delta)| DiskPair::new((d[0].0 + delta[0] * t, d[0].1), (d[1].0 + delta[1] * t, d[1].1)))
        .collect::<Result<_>>()?;
    check_disjoint(&moved).map_err(|_| Error::LeavesSchottkyLocus { t })?;
    let gens = moved.iter().map(DiskPair::generator).collect::<Result<Vec<_>>>()?;
    GroupSpec::new(
        gens,
        base.labels.clone(),
        base.word_budget,
        Certificate::PingPong(moved),
    )
}
