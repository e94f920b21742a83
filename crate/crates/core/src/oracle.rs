//! Equality of braid words through the Artin action on a free group.
//!
//! The braid group acts faithfully on the free group `F_n = ⟨x_1, …, x_n⟩`
//! by the right action
//!
//! ```text
//! σ_i:  x_i ↦ x_i x_{i+1} x_i⁻¹,  x_{i+1} ↦ x_i,  x_k ↦ x_k otherwise
//! ```
//!
//! and a word acts letter by letter from left to right, so
//! `action_of(u·v) = action_of(u).then(&action_of(v))`. Two words are equal
//! as braids exactly when they induce the same images of the basis.
//!
//! [`Oracle`] caches the automorphism of every generator it has seen so that
//! words over the mixed alphabet are evaluated generator by generator instead
//! of being expanded to Artin letters each time.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::expand::{expand_full, generator_to_artin};
use crate::words::{Generator, Word};

/// A freely reduced word in the free basis; letter `±k` is `x_k^{±1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn basis(k: usize) -> Self {
        FreeWord(vec![k as i32])
    }

    pub fn from_letters(letters: &[i32]) -> Self {
        let mut w = FreeWord::default();
        for &x in letters {
            w.push(x);
        }
        w
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, x: i32) {
        if self.0.last() == Some(&-x) {
            self.0.pop();
        } else {
            self.0.push(x);
        }
    }

    fn extend_signed(&mut self, w: &FreeWord, inverse: bool) {
        if inverse {
            for &x in w.0.iter().rev() {
                self.push(-x);
            }
        } else {
            for &x in &w.0 {
                self.push(x);
            }
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Replace every `x_k` by `images[k-1]` and reduce.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord(Vec::with_capacity(self.0.len()));
        for &x in &self.0 {
            out.extend_signed(&images[x.unsigned_abs() as usize - 1], x < 0);
        }
        out
    }

    /// If the word is a conjugate `u x_k^{±1} u⁻¹`, return `±k`.
    pub fn conjugated_basis(&self) -> Option<i32> {
        let w = &self.0;
        if w.len().is_multiple_of(2) {
            return None;
        }
        let mid = w.len() / 2;
        (0..mid)
            .all(|t| w[t] == -w[w.len() - 1 - t])
            .then_some(w[mid])
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (t, &x) in self.0.iter().enumerate() {
            if t > 0 {
                f.write_str(" ")?;
            }
            if x < 0 {
                write!(f, "x{}^-1", -x)?;
            } else {
                write!(f, "x{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}

/// Apply the Artin letter `σ_i^{±1}` (right action) to a free word.
fn apply_artin(w: &FreeWord, i: usize, inverse: bool) -> FreeWord {
    let a = i as i32;
    let b = a + 1;
    let mut out = FreeWord(Vec::with_capacity(w.len() + 2));
    for &x in &w.0 {
        let k = x.abs();
        let image: &[i32] = match (k == a, k == b, inverse) {
            (true, _, false) => &[a, b, -a],
            (_, true, false) => &[a],
            (true, _, true) => &[b],
            (_, true, true) => &[-b, a, b],
            _ => {
                out.push(x);
                continue;
            }
        };
        if x > 0 {
            for &y in image {
                out.push(y);
            }
        } else {
            for &y in image.iter().rev() {
                out.push(-y);
            }
        }
    }
    out
}

fn artin_images(w: &Word, n: usize) -> Result<Vec<FreeWord>> {
    for l in w.letters() {
        match l.gen {
            Generator::Band(i, j) if j == i + 1 && (j as usize) <= n => {}
            g => {
                return Err(Error::InvalidGenerator(format!(
                    "{g} is not an Artin generator on {n} strands"
                )))
            }
        }
    }
    Ok((1..=n)
        .map(|k| {
            w.letters()
                .iter()
                .fold(FreeWord::basis(k), |acc, l| match l.gen {
                    Generator::Band(i, _) => apply_artin(&acc, i as usize, l.inverse),
                    _ => unreachable!(),
                })
        })
        .collect())
}

/// An automorphism of `F_n` given by basis images, with its inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeAutomorphism {
    n: usize,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn identity(n: usize) -> Self {
        let basis: Vec<FreeWord> = (1..=n).map(FreeWord::basis).collect();
        FreeAutomorphism {
            n,
            images: basis.clone(),
            inverse_images: basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[FreeWord] {
        &self.inverse_images
    }

    pub fn inverse(&self) -> FreeAutomorphism {
        FreeAutomorphism {
            n: self.n,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &FreeAutomorphism) -> FreeAutomorphism {
        assert_eq!(self.n, other.n, "rank mismatch");
        FreeAutomorphism {
            n: self.n,
            images: self
                .images
                .iter()
                .map(|w| w.substitute(&other.images))
                .collect(),
            inverse_images: other
                .inverse_images
                .iter()
                .map(|w| w.substitute(&self.inverse_images))
                .collect(),
        }
    }

    /// Image of an arbitrary free word.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, w)| w.0 == [k as i32 + 1])
    }

    /// Whether the stored inverse really inverts the images.
    pub fn inverse_is_witnessed(&self) -> bool {
        let basis = |ws: &[FreeWord]| ws.iter().enumerate().all(|(k, w)| w.0 == [k as i32 + 1]);
        let there: Vec<FreeWord> = self
            .images
            .iter()
            .map(|w| w.substitute(&self.inverse_images))
            .collect();
        let back: Vec<FreeWord> = self
            .inverse_images
            .iter()
            .map(|w| w.substitute(&self.images))
            .collect();
        basis(&there) && basis(&back)
    }

    /// The permutation read off the conjugacy classes of the basis images.
    pub fn induced_permutation(&self) -> Option<Permutation> {
        let mut map = Vec::with_capacity(self.n);
        for w in &self.images {
            let k = w.conjugated_basis()?;
            if k < 0 {
                return None;
            }
            map.push(k as usize);
        }
        Permutation::from_images(map)
    }
}

/// The Artin action of `w` on `F_n`, after expanding to Artin generators.
pub fn action_of(w: &Word, n: usize) -> Result<FreeAutomorphism> {
    let e = expand_full(w);
    Ok(FreeAutomorphism {
        n,
        images: artin_images(&e, n)?,
        inverse_images: artin_images(&e.inverse(), n)?,
    })
}

/// Whether two words are the same braid on `n` strands.
pub fn equal(w1: &Word, w2: &Word, n: usize) -> Result<bool> {
    Oracle::new(n).equal(w1, w2)
}

/// Memoizing evaluator for words over the mixed alphabet.
pub struct Oracle {
    n: usize,
    cache: RwLock<HashMap<Generator, Arc<FreeAutomorphism>>>,
}

impl Oracle {
    pub fn new(n: usize) -> Self {
        Oracle {
            n,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// Automorphism of a single generator (computed once).
    pub fn generator(&self, g: Generator) -> Result<Arc<FreeAutomorphism>> {
        if let Some(a) = self.cache.read().expect("oracle cache poisoned").get(&g) {
            return Ok(a.clone());
        }
        if g.max_label() > self.n {
            return Err(Error::InvalidGenerator(format!(
                "{g} does not fit on {} strands",
                self.n
            )));
        }
        let e = generator_to_artin(g);
        let a = Arc::new(FreeAutomorphism {
            n: self.n,
            images: artin_images(&e, self.n)?,
            inverse_images: artin_images(&e.inverse(), self.n)?,
        });
        Ok(self
            .cache
            .write()
            .expect("oracle cache poisoned")
            .entry(g)
            .or_insert(a)
            .clone())
    }

    fn letter_actions(&self, w: &Word) -> Result<Vec<(Arc<FreeAutomorphism>, bool)>> {
        w.letters()
            .iter()
            .map(|l| Ok((self.generator(l.gen)?, l.inverse)))
            .collect()
    }

    fn image_of(actions: &[(Arc<FreeAutomorphism>, bool)], k: usize) -> FreeWord {
        actions.iter().fold(FreeWord::basis(k), |acc, (a, inv)| {
            acc.substitute(if *inv { &a.inverse_images } else { &a.images })
        })
    }

    /// Images of the basis under `w`.
    pub fn images(&self, w: &Word) -> Result<Vec<FreeWord>> {
        let actions = self.letter_actions(w)?;
        Ok((1..=self.n).map(|k| Self::image_of(&actions, k)).collect())
    }

    pub fn automorphism(&self, w: &Word) -> Result<FreeAutomorphism> {
        Ok(FreeAutomorphism {
            n: self.n,
            images: self.images(w)?,
            inverse_images: self.images(&w.inverse())?,
        })
    }

    /// Whether `w` is the identity braid.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        let actions = self.letter_actions(w)?;
        Ok((1..=self.n).all(|k| Self::image_of(&actions, k).0 == [k as i32]))
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        let a1 = self.letter_actions(w1)?;
        let a2 = self.letter_actions(w2)?;
        Ok((1..=self.n).all(|k| Self::image_of(&a1, k) == Self::image_of(&a2, k)))
    }
}

/// A permutation of `{1, …, n}`; `image(k)` is where puncture `k` ends up.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (1..=n).collect(),
        }
    }

    /// Build from the image list `[π(1), …, π(n)]`; `None` unless bijective.
    pub fn from_images(map: Vec<usize>) -> Option<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
                return None;
            }
        }
        Some(Permutation { map })
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn image(&self, k: usize) -> usize {
        self.map[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, &x)| x == k + 1)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.map)
    }
}

/// Image of `w` in the symmetric group, `σ_i ↦ (i i+1)`, composed left to right.
pub fn permutation_of(w: &Word, n: usize) -> Result<Permutation> {
    let e = expand_full(w);
    // occupant[p] is the puncture currently at position p
    let mut occupant: Vec<usize> = (0..=n).collect();
    for l in e.letters() {
        let Generator::Band(i, _) = l.gen else {
            unreachable!("expansion yields Artin letters")
        };
        let i = i as usize;
        if i + 1 > n {
            return Err(Error::InvalidGenerator(format!(
                "{} does not fit on {n} strands",
                l.gen
            )));
        }
        occupant.swap(i, i + 1);
    }
    let mut map = vec![0; n];
    for (pos, &p) in occupant.iter().enumerate().skip(1) {
        map[p - 1] = pos;
    }
    Ok(Permutation { map })
}

/// Whether `w` lies in the pure braid group.
pub fn is_pure(w: &Word, n: usize) -> Result<bool> {
    Ok(permutation_of(w, n)?.is_identity())
}
