//! Group presentations, their square-complex realizations, and the explicit
//! acyclic families.

mod build;
mod cosets;
mod families;

pub use build::{presentation_complex, CellRecipe, ComplexSpec, PresentationComplex};
pub use cosets::{coset_enumeration, CosetTable, COSET_LIMIT};
pub use families::{
    acycone_presentation, acycone_spec, acyctwo, acyctwo_octagon, acyctwo_presentation,
    acyctwo_side_words, fewquot_presentation, fewquot_side_words, fewquot_spec, link_graph_yn, y_n,
    y_n_presentation, y_n_spec, Acyctwo,
};

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// A word in signed letters: `g + 1` for generator `g`, `-(g + 1)` for its inverse.
pub type Word = Vec<i32>;

pub fn letter(g: usize, positive: bool) -> i32 {
    if positive {
        g as i32 + 1
    } else {
        -(g as i32 + 1)
    }
}

pub fn generator_of(x: i32) -> usize {
    x.unsigned_abs() as usize - 1
}

pub fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

/// `w^e` for a single generator, e.g. `power(0, -2) = a⁻²`.
pub fn power(g: usize, e: i32) -> Word {
    vec![letter(g, e > 0); e.unsigned_abs() as usize]
}

pub fn concat(parts: &[&[i32]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut v = free_reduce(w);
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.pop();
        v.remove(0);
    }
    v
}

pub fn is_reduced(w: &[i32]) -> bool {
    w.windows(2).all(|p| p[0] != -p[1])
}

pub fn is_cyclically_reduced(w: &[i32]) -> bool {
    is_reduced(w) && (w.len() < 2 || w[0] != -w[w.len() - 1])
}

/// Generators and relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub n_generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(n_generators: usize, relators: Vec<Word>) -> Result<Presentation> {
        for (j, r) in relators.iter().enumerate() {
            if let Some(&x) = r
                .iter()
                .find(|&&x| x == 0 || generator_of(x) >= n_generators)
            {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} uses letter {x}",
                    j + 1
                )));
            }
        }
        Ok(Presentation {
            n_generators,
            relators,
        })
    }

    /// Relator-by-generator exponent sums: the boundary map `C_2 → C_1`
    /// of the presentation complex, one column per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.relators.len()]; self.n_generators];
        for (j, r) in self.relators.iter().enumerate() {
            for &x in r {
                m[generator_of(x)][j] += x.signum() as i64;
            }
        }
        m
    }

    /// Image of every relator under a generator permutation.
    pub fn permute(&self, gen_perm: &[usize]) -> Vec<Word> {
        self.relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| letter(gen_perm[generator_of(x)], x > 0))
                    .collect()
            })
            .collect()
    }

    /// Finds the relator permutation induced by a generator permutation,
    /// requiring exact equality of words.
    pub fn induced_relator_perm(&self, gen_perm: &[usize]) -> Result<Vec<usize>> {
        let images = self.permute(gen_perm);
        images
            .iter()
            .enumerate()
            .map(|(j, w)| {
                self.relators.iter().position(|r| r == w).ok_or_else(|| {
                    Error::InvalidPresentation(format!(
                        "image of relator {} is not a relator",
                        j + 1
                    ))
                })
            })
            .collect()
    }

    /// Presentation of the orbit space under a generator permutation that
    /// permutes the relators: one generator per orbit and one relator per
    /// relator orbit (the image of its least member).
    pub fn orbit_quotient(&self, gen_perm: &[usize]) -> Result<Presentation> {
        let rel_perm = self.induced_relator_perm(gen_perm)?;
        let class = orbit_classes(gen_perm);
        let n = class.iter().copied().max().map_or(0, |m| m + 1);
        let reps = orbit_classes(&rel_perm);
        let mut seen = BTreeSet::new();
        let mut relators = Vec::new();
        for (j, &c) in reps.iter().enumerate() {
            if seen.insert(c) {
                relators.push(
                    self.relators[j]
                        .iter()
                        .map(|&x| letter(class[generator_of(x)], x > 0))
                        .collect(),
                );
            }
        }
        Presentation::new(n, relators)
    }

    /// Adds the relators `g^N` for every generator.
    pub fn with_powers(&self, n: usize) -> Presentation {
        let mut relators = self.relators.clone();
        relators.extend((0..self.n_generators).map(|g| vec![letter(g, true); n]));
        Presentation {
            n_generators: self.n_generators,
            relators,
        }
    }
}

/// Orbit index of each point under a permutation, numbered by least member.
fn orbit_classes(perm: &[usize]) -> Vec<usize> {
    let mut class = vec![usize::MAX; perm.len()];
    let mut next = 0;
    for s in 0..perm.len() {
        if class[s] != usize::MAX {
            continue;
        }
        let mut x = s;
        while class[x] == usize::MAX {
            class[x] = next;
            x = perm[x];
        }
        next += 1;
    }
    class
}

/// Corner words of relators split into side words. Letters with
/// `is_a[g]` are a-letters, the rest b-letters. Each corner `x y` joining
/// the end of one side to the start of the next is normalised to the form
/// `a^ε b^δ` (a corner `b^δ a^ε` is replaced by its inverse `a^-ε b^-δ`).
/// Returns `(a, ε, b, δ)` per corner.
pub fn meeting_points(
    relators: &[Vec<Word>],
    is_a: &[bool],
) -> Result<Vec<(usize, i8, usize, i8)>> {
    let mut out = Vec::new();
    for (j, sides) in relators.iter().enumerate() {
        if sides.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPresentation(format!(
                "relator {} has an empty side",
                j + 1
            )));
        }
        for side in sides {
            let kinds: BTreeSet<bool> = side.iter().map(|&x| is_a[generator_of(x)]).collect();
            if kinds.len() != 1 {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} has a side mixing a- and b-letters",
                    j + 1
                )));
            }
        }
        let k = sides.len();
        for s in 0..k {
            let x = *sides[s].last().unwrap();
            let y = sides[(s + 1) % k][0];
            let sign = |z: i32| if z > 0 { 1i8 } else { -1 };
            let (xa, ya) = (is_a[generator_of(x)], is_a[generator_of(y)]);
            let point = match (xa, ya) {
                (true, false) => (generator_of(x), sign(x), generator_of(y), sign(y)),
                (false, true) => (generator_of(y), -sign(y), generator_of(x), -sign(x)),
                _ => {
                    return Err(Error::InvalidPresentation(format!(
                        "relator {} has a corner between two letters of one kind",
                        j + 1
                    )))
                }
            };
            out.push(point);
        }
    }
    Ok(out)
}

/// Whether every corner of every relator gives a different meeting point.
pub fn meeting_points_distinct(relators: &[Vec<Word>], is_a: &[bool]) -> Result<bool> {
    let pts = meeting_points(relators, is_a)?;
    let set: BTreeSet<_> = pts.iter().collect();
    Ok(set.len() == pts.len())
}

/// Splits a word into maximal runs of a single generator.
pub fn letter_runs(w: &[i32]) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for &x in w {
        match out.last_mut() {
            Some(run) if generator_of(run[0]) == generator_of(x) => run.push(x),
            _ => out.push(vec![x]),
        }
    }
    out
}
