//! Reduced words over a set of generators and their inverses.
//!
//! Generator labels are lowercase; the inverse of generator `a1` is labelled
//! `A1`. The alphabet is ordered by label bytes, so uppercase inverses sort
//! before the generators. Words are enumerated breadth-first, each length in
//! lexicographic order of the alphabet, without adjacent cancelling letters.

use std::fmt;

use rayon::prelude::*;

use crate::{Error, Result};

/// Something that composes and inverts.
pub trait GroupElement: Clone + Send + Sync {
    fn compose(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Self;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    /// Letters in enumeration order.
    letters: Vec<Letter>,
    gen_labels: Vec<String>,
}

pub fn inverse_label(label: &str) -> String {
    label.to_uppercase()
}

impl Alphabet {
    pub fn new(gen_labels: &[String]) -> Result<Self> {
        for (i, l) in gen_labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|ch| ch.is_uppercase() || ch.is_whitespace()) {
                return Err(Error::InvalidParameter(format!(
                    "generator label {l:?} must be nonempty lowercase without spaces"
                )));
            }
            if gen_labels[..i].contains(l) {
                return Err(Error::InvalidParameter(format!("duplicate label {l:?}")));
            }
        }
        let mut letters: Vec<Letter> = (0..gen_labels.len())
            .flat_map(|g| [false, true].map(|inverse| Letter { generator: g, inverse }))
            .collect();
        letters.sort_by_key(|l| label_of(gen_labels, *l));
        Ok(Self {
            letters,
            gen_labels: gen_labels.to_vec(),
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn label(&self, l: Letter) -> String {
        label_of(&self.gen_labels, l)
    }

    /// Parses a whitespace-separated list of labels.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.split_whitespace()
            .map(|tok| {
                self.letters
                    .iter()
                    .copied()
                    .find(|&l| self.label(l) == tok)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown letter {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> impl fmt::Display + 'a {
        WordDisplay {
            alphabet: self,
            word: w,
        }
    }
}

fn label_of(gen_labels: &[String], l: Letter) -> String {
    let base = &gen_labels[l.generator];
    if l.inverse {
        inverse_label(base)
    } else {
        base.clone()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inv())
    }

    /// Product `g_{w_1} g_{w_2} ⋯ g_{w_n}`.
    pub fn evaluate<M: GroupElement>(&self, gens: &[M], identity: M) -> M {
        self.0.iter().fold(identity, |acc, l| {
            let g = &gens[l.generator];
            if l.inverse {
                acc.compose(&g.inverse())
            } else {
                acc.compose(g)
            }
        })
    }
}

struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.0.iter().map(|&l| self.alphabet.label(l)).collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

fn letter_elements<M: GroupElement>(gens: &[M], alphabet: &Alphabet) -> Vec<M> {
    alphabet
        .letters()
        .iter()
        .map(|l| {
            let g = &gens[l.generator];
            if l.inverse {
                g.inverse()
            } else {
                g.clone()
            }
        })
        .collect()
}

fn inverse_slots(alphabet: &Alphabet) -> Vec<usize> {
    let ls = alphabet.letters();
    ls.iter()
        .map(|l| ls.iter().position(|m| *m == l.inv()).expect("closed alphabet"))
        .collect()
}

/// Visits every nonempty reduced word of length ≤ `max_len` with its value.
///
/// Order: by length, then lexicographically in alphabet order. Each level is
/// extended in parallel and collected in order, so the visiting sequence does
/// not depend on the thread count.
pub fn for_each_word<M, F>(gens: &[M], alphabet: &Alphabet, max_len: usize, mut visit: F)
where
    M: GroupElement,
    F: FnMut(&[usize], &M),
{
    let elems = letter_elements(gens, alphabet);
    let inv = inverse_slots(alphabet);
    // Words store alphabet slots; the last slot decides which extensions are reduced.
    let mut level: Vec<(Vec<usize>, M)> = (0..elems.len()).map(|s| (vec![s], elems[s].clone())).collect();
    for len in 1..=max_len {
        for (w, m) in &level {
            visit(w, m);
        }
        if len == max_len {
            break;
        }
        level = level
            .par_iter()
            .flat_map_iter(|(w, m)| {
                let last = *w.last().expect("nonempty word");
                let (elems, inv) = (&elems, &inv);
                (0..elems.len()).filter(move |&s| s != inv[last]).map(move |s| {
                    let mut w2 = w.clone();
                    w2.push(s);
                    (w2, m.compose(&elems[s]))
                })
            })
            .collect();
    }
}

/// Converts alphabet slots (as passed to [`for_each_word`] visitors) to a word.
pub fn word_from_slots(alphabet: &Alphabet, slots: &[usize]) -> Word {
    Word(slots.iter().map(|&s| alphabet.letters()[s]).collect())
}

/// Visits `w · base` for every nonempty reduced word `w` of length ≤ `max_len`,
/// with the word length. Words grow on the left so only points are stored.
pub fn for_each_orbit_point<M, P, A, F>(gens: &[M], alphabet: &Alphabet, base: &P, max_len: usize, act: A, mut visit: F)
where
    M: GroupElement,
    P: Clone + Send + Sync,
    A: Fn(&M, &P) -> P + Sync,
    F: FnMut(usize, &P),
{
    let elems = letter_elements(gens, alphabet);
    let inv = inverse_slots(alphabet);
    // (first slot, point)
    let mut level: Vec<(usize, P)> = (0..elems.len()).map(|s| (s, act(&elems[s], base))).collect();
    for len in 1..=max_len {
        for (_, p) in &level {
            visit(len, p);
        }
        if len == max_len {
            break;
        }
        level = level
            .par_iter()
            .flat_map_iter(|(first, p)| {
                let (elems, act, inv, first) = (&elems, &act, &inv, *first);
                (0..elems.len())
                    .filter(move |&s| inv[s] != first)
                    .map(move |s| (s, act(&elems[s], p)))
            })
            .collect();
    }
}
