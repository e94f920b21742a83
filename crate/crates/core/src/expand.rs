//! Rewriting every generator as a word in the Artin generators `σ_k`.
//!
//! Pipeline: twist → swings → rotations → band generators → Artin generators.
//! Band generators are cabled as descending conjugates
//! `R_{ij} = (σ_{j-1} … σ_{i+1}) σ_i (σ_{i+1}⁻¹ … σ_{j-1}⁻¹)`.
//! The mirror image `σ_k ↦ σ_k⁻¹` satisfies the same relations, so the
//! orientation is fixed by this formula rather than derived.

use crate::convex::{self, PunctureSet};
use crate::error::{Error, Result};
use crate::words::{Generator, Letter, Word};

/// Band generator `R_{ij}` as an Artin word on `n` strands.
pub fn band_to_artin(i: usize, j: usize, n: usize) -> Result<Word> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::InvalidGenerator(format!(
            "band generator ({i},{j}) out of range for {n} punctures"
        )));
    }
    Ok(band_word(i, j))
}

fn band_word(i: usize, j: usize) -> Word {
    let conj = Word::product(
        &(i + 1..j)
            .rev()
            .map(|k| Word::gen(Generator::artin(k)))
            .collect::<Vec<_>>(),
    );
    &conj * &Word::gen(Generator::artin(i)) * conj.inverse()
}

/// `R_B = R_{b1 b2} R_{b1 b3} … R_{b1 bk}` for the canonical order `(b1, …, bk)`.
pub fn rotation_to_bands(b: PunctureSet) -> Result<Word> {
    if b.len() < 2 {
        return Err(Error::InvalidGenerator(format!(
            "rotation needs at least two punctures, got {b}"
        )));
    }
    let order = convex::canonical_admissible_order(b)?;
    let head = order[0];
    let mut w = Word::empty();
    for &x in &order[1..] {
        w.push(Letter::pos(Generator::band(head, x)?));
    }
    Ok(w)
}

/// `S_B = R_B^{|B|}`; singleton swings are trivial and expand to the empty word.
pub fn swing_to_rotations(b: PunctureSet) -> Result<Word> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    if b.len() == 1 {
        return Ok(Word::empty());
    }
    Ok(Word::gen(Generator::rotation(b)?).pow(b.len() as i64))
}

/// `T_{B,C} = S_B⁻¹ S_C⁻¹ S_{BC}`, dropping trivial singleton swings.
pub fn twist_to_swings(b: PunctureSet, c: PunctureSet) -> Result<Word> {
    let Generator::Twist(first, second) = Generator::twist(b, c)? else {
        unreachable!("twist constructor returns a twist")
    };
    let mut w = Word::empty();
    for x in [first, second] {
        if x.len() > 1 {
            w.push(Letter::neg(Generator::Swing(x)));
        }
    }
    w.push(Letter::pos(Generator::Swing(first.union(second))));
    Ok(w)
}

/// One level of expansion towards band generators.
fn expand_generator(g: Generator) -> Result<Word> {
    match g {
        Generator::Band(i, j) => Ok(band_word(i as usize, j as usize)),
        Generator::Rotation(b) => {
            let bands = rotation_to_bands(b)?;
            expand_word(&bands)
        }
        Generator::Swing(b) => expand_word(&swing_to_rotations(b)?),
        Generator::Twist(b, c) => expand_word(&twist_to_swings(b, c)?),
    }
}

fn expand_word(w: &Word) -> Result<Word> {
    let mut out = Word::empty();
    for &l in w.letters() {
        let e = expand_generator(l.gen)?;
        out = if l.inverse {
            out * e.inverse()
        } else {
            out * e
        };
    }
    Ok(out)
}

/// Artin-generator expansion of a single generator.
pub fn generator_to_artin(g: Generator) -> Word {
    expand_generator(g).expect("generators are validated at construction")
}

/// Fully expanded, freely reduced Artin word for `w`.
pub fn expand_full(w: &Word) -> Word {
    expand_word(w).expect("generators are validated at construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::ConvexDisc;
    use crate::words::parse;

    fn set(n: usize, xs: &[usize]) -> PunctureSet {
        ConvexDisc::new(n).unwrap().set(xs).unwrap()
    }

    fn w(n: usize, text: &str) -> Word {
        parse(text, ConvexDisc::new(n).unwrap()).unwrap()
    }

    #[test]
    fn band_cabling() {
        assert_eq!(band_to_artin(1, 2, 3).unwrap(), w(3, "s1"));
        assert_eq!(band_to_artin(1, 3, 3).unwrap(), w(3, "s2 s1 s2^-1"));
        assert_eq!(band_to_artin(2, 4, 5).unwrap(), w(5, "s3 s2 s3^-1"));
        assert_eq!(
            band_to_artin(1, 4, 4).unwrap(),
            w(4, "s3 s2 s1 s2^-1 s3^-1")
        );
        assert!(band_to_artin(2, 2, 3).is_err());
        assert!(band_to_artin(1, 4, 3).is_err());
    }

    #[test]
    fn rotations_factor_through_the_minimum() {
        assert_eq!(rotation_to_bands(set(4, &[2, 3])).unwrap(), w(4, "s2"));
        assert_eq!(
            rotation_to_bands(set(4, &[1, 2, 4])).unwrap(),
            w(4, "R{1,2} R{1,4}")
        );
        assert_eq!(
            rotation_to_bands(set(8, &[7, 8, 1])).unwrap(),
            w(8, "R{1,7} R{1,8}")
        );
        assert!(rotation_to_bands(set(4, &[2])).is_err());
    }

    #[test]
    fn swings_are_powers() {
        assert!(swing_to_rotations(set(4, &[3])).unwrap().is_empty());
        assert_eq!(
            swing_to_rotations(set(4, &[1, 2])).unwrap(),
            w(4, "R{1,2} R{1,2}")
        );
        assert_eq!(
            swing_to_rotations(set(4, &[1, 2, 3])).unwrap(),
            w(4, "R{1,2,3}^3")
        );
    }

    #[test]
    fn twists_as_swings() {
        assert_eq!(
            twist_to_swings(set(5, &[2]), set(5, &[4])).unwrap(),
            w(5, "S{2,4}")
        );
        assert_eq!(
            twist_to_swings(set(8, &[4, 5, 6]), set(8, &[7, 8, 1, 2, 3])).unwrap(),
            w(8, "S{1,2,3,7,8}^-1 S{4,5,6}^-1 S{1,2,3,4,5,6,7,8}")
        );
        assert!(twist_to_swings(set(8, &[1, 2, 3, 5]), set(8, &[4, 7, 8])).is_err());
        assert!(twist_to_swings(set(8, &[1, 2]), set(8, &[2, 3])).is_err());
    }

    #[test]
    fn full_expansion_base_cases() {
        assert_eq!(expand_full(&w(2, "S{1,2}")), w(2, "s1 s1"));
        assert!(expand_full(&Word::empty()).is_empty());
        assert_eq!(expand_full(&w(3, "T{1}|{2}")), w(3, "s1 s1"));
        assert_eq!(expand_full(&w(3, "S{1,2}^-1")), w(3, "s1^-1 s1^-1"));
    }
}
