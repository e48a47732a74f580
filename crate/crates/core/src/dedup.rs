//! Near-duplicate rejection for point samples.
//!
//! Points are bucketed by a 3-real-coordinate key whose differences are
//! bounded by a fixed multiple of the chordal distance; only the 27
//! neighbouring buckets are searched on insertion. Insertion order is kept.

use std::collections::HashMap;

use crate::projective::{ProjPoint1, ProjPoint2};

pub(crate) trait Keyed {
    /// Key coordinates; two points at chordal distance `d` have keys within
    /// `KEY_SCALE × d` of each other in every coordinate.
    fn key(&self) -> [f64; 3];
    fn chordal(&self, other: &Self) -> f64;
    const KEY_SCALE: f64;
}

impl Keyed for ProjPoint1 {
    fn key(&self) -> [f64; 3] {
        self.sphere()
    }
    fn chordal(&self, other: &Self) -> f64 {
        self.distance(other)
    }
    const KEY_SCALE: f64 = 2.0;
}

impl Keyed for ProjPoint2 {
    fn key(&self) -> [f64; 3] {
        let v = self.vector();
        let n = v.norm_squared();
        [v[0].norm_sqr() / n, v[1].norm_sqr() / n, v[2].norm_sqr() / n]
    }
    fn chordal(&self, other: &Self) -> f64 {
        self.distance(other)
    }
    const KEY_SCALE: f64 = 4.0;
}

pub(crate) struct PointSet<T> {
    tol: f64,
    cell: f64,
    buckets: HashMap<[i64; 3], Vec<usize>>,
    items: Vec<T>,
}

impl<T: Keyed> PointSet<T> {
    pub(crate) fn new(tol: f64) -> Self {
        Self {
            tol,
            cell: T::KEY_SCALE * tol,
            buckets: HashMap::new(),
            items: Vec::new(),
        }
    }

    fn cell_of(&self, key: [f64; 3]) -> [i64; 3] {
        key.map(|x| (x / self.cell).floor() as i64)
    }

    /// Index of a stored point within `tol` of `p`, if any.
    pub(crate) fn find(&self, p: &T) -> Option<usize> {
        let [a, b, c] = self.cell_of(p.key());
        for da in -1..=1 {
            for db in -1..=1 {
                for dc in -1..=1 {
                    if let Some(ids) = self.buckets.get(&[a + da, b + db, c + dc]) {
                        if let Some(&i) = ids.iter().find(|&&i| self.items[i].chordal(p) < self.tol) {
                            return Some(i);
                        }
                    }
                }
            }
        }
        None
    }

    /// Inserts `p` unless a stored point is within `tol`; returns whether it was new.
    pub(crate) fn insert(&mut self, p: T) -> bool {
        if self.find(&p).is_some() {
            return false;
        }
        let cell = self.cell_of(p.key());
        self.buckets.entry(cell).or_default().push(self.items.len());
        self.items.push(p);
        true
    }

    pub(crate) fn len(&self) -> usize {
        self.items.len()
    }

    pub(crate) fn into_vec(self) -> Vec<T> {
        self.items
    }
}
