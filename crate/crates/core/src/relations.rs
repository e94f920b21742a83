//! Relation schemas: each displayed relation family as a function from a
//! binding of its set variables to a concrete equation `lhs = rhs`.
//!
//! Presentation builders and the rewriting checker instantiate relations
//! through the same schemas, so a derivation step can only cite an instance
//! that the corresponding presentation actually contains (or, for the
//! triangle schemas, a lemma that has its own bundled derivation).

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::convex::{self, ConvexDisc, PunctureSet};
use crate::error::{Error, Result};
use crate::words::{Generator, Word};

/// Named set variables substituted into a schema.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Binding {
    entries: Vec<(String, PunctureSet)>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn with(mut self, name: &str, set: PunctureSet) -> Self {
        self.entries.push((name.to_string(), set));
        self
    }

    pub fn get(&self, name: &str) -> Option<PunctureSet> {
        self.entries
            .iter()
            .find(|(k, _)| k == name)
            .map(|&(_, s)| s)
    }

    pub fn entries(&self) -> &[(String, PunctureSet)] {
        &self.entries
    }

    /// Build from `(name, labels)` pairs on a disc.
    pub fn from_labels(disc: ConvexDisc, entries: &[(String, Vec<usize>)]) -> Result<Self> {
        let mut b = Binding::new();
        for (name, labels) in entries {
            b = b.with(name, disc.set(labels)?);
        }
        Ok(b)
    }

    fn require(&self, tag: &str, name: &str) -> Result<PunctureSet> {
        let s = self.get(name).ok_or_else(|| Error::Schema {
            tag: tag.to_string(),
            msg: format!("binding lacks `{name}`"),
        })?;
        if s.is_empty() {
            return Err(Error::Schema {
                tag: tag.to_string(),
                msg: format!("`{name}` is empty"),
            });
        }
        Ok(s)
    }

    fn label(&self, tag: &str, name: &str) -> Result<usize> {
        let s = self.require(tag, name)?;
        if s.len() != 1 {
            return Err(Error::Schema {
                tag: tag.to_string(),
                msg: format!("`{name}` must be a single puncture, got {s}"),
            });
        }
        Ok(s.min().expect("nonempty"))
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (name, set)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if set.len() == 1 {
                write!(f, "{name}={}", PunctureSet::min(*set).expect("nonempty"))?;
            } else {
                write!(f, "{name}={set}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Binding({self})")
    }
}

impl Serialize for Binding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (name, set) in &self.entries {
            map.serialize_entry(name, &set.to_vec())?;
        }
        map.end()
    }
}

/// A binding as read from a document, before it is attached to a disc.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RawBinding(pub Vec<(String, Vec<usize>)>);

impl From<&Binding> for RawBinding {
    fn from(b: &Binding) -> Self {
        RawBinding(
            b.entries
                .iter()
                .map(|(k, s)| (k.clone(), s.to_vec()))
                .collect(),
        )
    }
}

impl Serialize for RawBinding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (name, labels) in &self.0 {
            map.serialize_entry(name, labels)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RawBinding {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;
        impl<'de> serde::de::Visitor<'de> for Visitor {
            type Value = RawBinding;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from variable names to label lists")
            }
            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<RawBinding, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, Vec<usize>>()? {
                    out.push((k, v));
                }
                Ok(RawBinding(out))
            }
        }
        deserializer.deserialize_map(Visitor)
    }
}

/// Which presentation a relation family belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresentationKind {
    Rotation,
    Bkl,
    Artin,
    ModifiedArtin,
    Twist,
    Swing,
    BoundarySwing,
}

impl PresentationKind {
    pub const ALL: [PresentationKind; 7] = [
        PresentationKind::Rotation,
        PresentationKind::Bkl,
        PresentationKind::Artin,
        PresentationKind::ModifiedArtin,
        PresentationKind::Twist,
        PresentationKind::Swing,
        PresentationKind::BoundarySwing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::Rotation => "rotation",
            PresentationKind::Bkl => "bkl",
            PresentationKind::Artin => "artin",
            PresentationKind::ModifiedArtin => "modified_artin",
            PresentationKind::Twist => "twist",
            PresentationKind::Swing => "swing",
            PresentationKind::BoundarySwing => "boundary_swing",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Unknown {
                what: "presentation",
                name: name.to_string(),
            })
    }

    /// Schemas available for citation under this presentation.
    pub fn schemas(self) -> &'static [Schema] {
        use Schema::*;
        match self {
            PresentationKind::Rotation => &[RotationCommute, RotationFactor],
            PresentationKind::Bkl => &[BandCommute, BandFactorFirst, BandFactorSecond],
            PresentationKind::Artin => &[Artin1, Artin2, Artin3, Artin4, Artin5],
            PresentationKind::ModifiedArtin => {
                &[ModCommute, ModCrossing, ModTripleFirst, ModTripleSecond]
            }
            PresentationKind::Twist => &[
                TwistCommute,
                TwistNested,
                TwistFactor,
                TwistTriangleFirst,
                TwistTriangleSecond,
            ],
            PresentationKind::Swing => &[Triviality, Compatible, Lantern],
            PresentationKind::BoundarySwing => &[Compatible, Lantern],
        }
    }

    pub fn schema(self, tag: &str) -> Result<Schema> {
        self.schemas()
            .iter()
            .copied()
            .find(|s| s.tag() == tag)
            .ok_or_else(|| Error::Unknown {
                what: "relation tag",
                name: format!("{}: {tag}", self.name()),
            })
    }
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One displayed family of relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Schema {
    /// `R_B R_C = R_C R_B`, `B`, `C` non-crossing.
    RotationCommute,
    /// `R_{iB} R_{iC} = R_{iBC}`, `({i}, B, C)` admissible.
    RotationFactor,
    /// `R_{ij} R_{kl} = R_{kl} R_{ij}`, `ij`, `kl` non-crossing.
    BandCommute,
    /// `R_{ij} R_{ik} = R_{ik} R_{jk}`, `(i, j, k)` admissible.
    BandFactorFirst,
    /// `R_{ik} R_{jk} = R_{jk} R_{ij}`, `(i, j, k)` admissible.
    BandFactorSecond,
    Artin1,
    Artin2,
    Artin3,
    Artin4,
    Artin5,
    /// `S_{ij} S_{rs} = S_{rs} S_{ij}`, `ij`, `rs` non-crossing.
    ModCommute,
    /// `S_{ij} X = X S_{ij}` with `X = S_{js} S_{rs} S_{js}⁻¹`, cyclic order `r, i, s, j`.
    ModCrossing,
    /// `S_{sj} S_{rs} S_{rj} = S_{rs} S_{rj} S_{sj}`, `(r, s, j)` admissible.
    ModTripleFirst,
    /// `S_{rs} S_{rj} S_{sj} = S_{rj} S_{sj} S_{rs}`, `(r, s, j)` admissible.
    ModTripleSecond,
    /// `T_{B,C} T_{D,E} = T_{D,E} T_{B,C}`, `BC`, `DE` non-crossing.
    TwistCommute,
    /// `T_{B,C} T_{D,E} = T_{D,E} T_{B,C}`, the pairs nested.
    TwistNested,
    /// `T_{B,C} T_{B,D} = T_{B,CD}`, `(B, C, D)` admissible.
    TwistFactor,
    /// `T_{C,B} T_{B,D} T_{D,C} = T_{B,D} T_{D,C} T_{C,B}`, `(B, C, D)` admissible.
    TwistTriangleFirst,
    /// `T_{B,D} T_{D,C} T_{C,B} = T_{D,C} T_{C,B} T_{B,D}`, `(B, C, D)` admissible.
    TwistTriangleSecond,
    /// `S_B = 1`, `|B| = 1`.
    Triviality,
    /// `S_B S_C = S_C S_B`, `B`, `C` compatible.
    Compatible,
    /// `S_{BCD} S_B S_C S_D = S_{CB} S_{BD} S_{DC}`, `(B, C, D)` admissible.
    Lantern,
}

fn g(gen: Result<Generator>) -> Result<Word> {
    gen.map(Word::gen)
}

fn prod(parts: &[Word]) -> Word {
    Word::product(parts)
}

fn swing2(disc: ConvexDisc, a: usize, b: usize) -> Result<Word> {
    g(Generator::swing(disc.set(&[a, b])?))
}

fn twist(b: PunctureSet, c: PunctureSet) -> Result<Word> {
    g(Generator::twist(b, c))
}

fn swing(b: PunctureSet) -> Result<Word> {
    g(Generator::swing(b))
}

fn rotation(b: PunctureSet) -> Result<Word> {
    g(Generator::rotation(b))
}

impl Schema {
    pub fn tag(self) -> &'static str {
        use Schema::*;
        match self {
            RotationCommute | BandCommute | TwistCommute => "non-crossing commute",
            RotationFactor | TwistFactor => "factorization",
            BandFactorFirst => "factorization (first)",
            BandFactorSecond => "factorization (second)",
            Artin1 => "case 1",
            Artin2 => "case 2",
            Artin3 => "case 3",
            Artin4 => "case 4",
            Artin5 => "case 5",
            ModCommute => "(1) non-crossing commute",
            ModCrossing => "(2) crossing commute",
            ModTripleFirst => "(3) first equality",
            ModTripleSecond => "(3) second equality",
            TwistNested => "nested commute",
            TwistTriangleFirst => "triangle (first)",
            TwistTriangleSecond => "triangle (second)",
            Triviality => "triviality",
            Compatible => "compatible commute",
            Lantern => "lantern",
        }
    }

    /// Variable names the schema reads from a binding, in order.
    pub fn variables(self) -> &'static [&'static str] {
        use Schema::*;
        match self {
            RotationCommute | BandCommute | Compatible => &["B", "C"],
            RotationFactor => &["i", "B", "C"],
            BandFactorFirst | BandFactorSecond => &["i", "j", "k"],
            Artin1 | Artin2 | Artin3 | Artin4 | Artin5 => &["r", "s", "i", "j"],
            ModCommute => &["i", "j", "r", "s"],
            ModCrossing => &["r", "i", "s", "j"],
            ModTripleFirst | ModTripleSecond => &["r", "s", "j"],
            TwistCommute | TwistNested => &["B", "C", "D", "E"],
            TwistFactor | TwistTriangleFirst | TwistTriangleSecond | Lantern => &["B", "C", "D"],
            Triviality => &["B"],
        }
    }

    fn fail<T>(self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Schema {
            tag: self.tag().to_string(),
            msg: msg.into(),
        })
    }

    fn sets(self, binding: &Binding) -> Result<Vec<PunctureSet>> {
        let sets: Vec<PunctureSet> = self
            .variables()
            .iter()
            .map(|v| binding.require(self.tag(), v))
            .collect::<Result<_>>()?;
        if sets.windows(2).any(|w| w[0].disc() != w[1].disc()) {
            return self.fail("sets live on different discs");
        }
        Ok(sets)
    }

    fn labels(self, binding: &Binding) -> Result<Vec<usize>> {
        self.sets(binding)?;
        self.variables()
            .iter()
            .map(|v| binding.label(self.tag(), v))
            .collect()
    }

    fn admissible(self, seq: &[PunctureSet]) -> Result<()> {
        if !convex::admissible(seq)? {
            return self.fail(format!("{seq:?} is not admissible"));
        }
        Ok(())
    }

    fn non_crossing_pair(self, b: PunctureSet, c: PunctureSet) -> Result<()> {
        if convex::crossing(b, c)? {
            return self.fail(format!("{b} and {c} cross"));
        }
        Ok(())
    }

    /// Instantiate the schema, checking its side condition.
    pub fn instantiate(self, binding: &Binding) -> Result<(Word, Word)> {
        use Schema::*;
        match self {
            RotationCommute | BandCommute => {
                let [b, c] = self.sets(binding)?[..] else {
                    unreachable!()
                };
                let need = |s: PunctureSet| match self {
                    BandCommute => s.len() == 2,
                    _ => s.len() >= 2,
                };
                if !need(b) || !need(c) {
                    return self.fail("sets have the wrong size");
                }
                self.non_crossing_pair(b, c)?;
                let (rb, rc) = (rotation(b)?, rotation(c)?);
                Ok((&rb * &rc, &rc * &rb))
            }
            RotationFactor => {
                let [i, b, c] = self.sets(binding)?[..] else {
                    unreachable!()
                };
                if i.len() != 1 {
                    return self.fail("`i` must be a single puncture");
                }
                self.admissible(&[i, b, c])?;
                Ok((
                    &rotation(i.union(b))? * &rotation(i.union(c))?,
                    rotation(i.union(b).union(c))?,
                ))
            }
            BandFactorFirst | BandFactorSecond => {
                let [i, j, k] = self.labels(binding)?[..] else {
                    unreachable!()
                };
                let sets = self.sets(binding)?;
                self.admissible(&sets)?;
                let r = |a, b| g(Generator::band(a, b));
                let (rij, rik, rjk) = (r(i, j)?, r(i, k)?, r(j, k)?);
                Ok(match self {
                    BandFactorFirst => (&rij * &rik, &rik * &rjk),
                    _ => (&rik * &rjk, &rjk * &rij),
                })
            }
            Artin1 | Artin2 | Artin3 | Artin4 | Artin5 => {
                let [r, s, i, j] = self.labels(binding)?[..] else {
                    unreachable!()
                };
                let ok = match self {
                    Artin1 => r < s && s < i && i < j,
                    Artin2 => i < r && r < s && s < j,
                    Artin3 => r < i && i == s && s < j,
                    Artin4 => r == i && i < s && s < j,
                    _ => r < i && i < s && s < j,
                };
                if !ok {
                    return self.fail(format!("(r,s,i,j)=({r},{s},{i},{j}) violates the case"));
                }
                let disc = binding.get("r").expect("checked").disc();
                let srs = swing2(disc, r, s)?;
                let sij = swing2(disc, i, j)?;
                let lhs = prod(&[srs.inverse(), sij.clone(), srs]);
                let conj = |c: Word| prod(&[c.clone(), sij.clone(), c.inverse()]);
                let rhs = match self {
                    Artin1 | Artin2 => sij.clone(),
                    Artin3 => conj(swing2(disc, r, j)?),
                    Artin4 => conj(&sij * &swing2(disc, s, j)?),
                    _ => {
                        let (srj, ssj) = (swing2(disc, r, j)?, swing2(disc, s, j)?);
                        conj(prod(&[
                            srj.clone(),
                            ssj.clone(),
                            srj.inverse(),
                            ssj.inverse(),
                        ]))
                    }
                };
                Ok((lhs, rhs))
            }
            ModCommute => {
                let [i, j, r, s] = self.labels(binding)?[..] else {
                    unreachable!()
                };
                let disc = binding.get("i").expect("checked").disc();
                self.non_crossing_pair(disc.set(&[i, j])?, disc.set(&[r, s])?)?;
                let (a, b) = (swing2(disc, i, j)?, swing2(disc, r, s)?);
                Ok((&a * &b, &b * &a))
            }
            ModCrossing => {
                let [r, i, s, j] = self.labels(binding)?[..] else {
                    unreachable!()
                };
                let sets = self.sets(binding)?;
                self.admissible(&sets)?;
                let disc = sets[0].disc();
                let sij = swing2(disc, i, j)?;
                let sjs = swing2(disc, j, s)?;
                let x = prod(&[sjs.clone(), swing2(disc, r, s)?, sjs.inverse()]);
                Ok((&sij * &x, &x * &sij))
            }
            ModTripleFirst | ModTripleSecond => {
                let [r, s, j] = self.labels(binding)?[..] else {
                    unreachable!()
                };
                let sets = self.sets(binding)?;
                self.admissible(&sets)?;
                let disc = sets[0].disc();
                let (srs, srj, ssj) = (
                    swing2(disc, r, s)?,
                    swing2(disc, r, j)?,
                    swing2(disc, s, j)?,
                );
                let x = prod(&[ssj.clone(), srs.clone(), srj.clone()]);
                let y = prod(&[srs.clone(), srj.clone(), ssj.clone()]);
                let z = prod(&[srj, ssj, srs]);
                Ok(match self {
                    ModTripleFirst => (x, y),
                    _ => (y, z),
                })
            }
            TwistCommute | TwistNested => {
                let [b, c, d, e] = self.sets(binding)?[..] else {
                    unreachable!()
                };
                self.non_crossing_pair(b, c)?;
                self.non_crossing_pair(d, e)?;
                let t1 = twist(b, c)?;
                let t2 = twist(d, e)?;
                if t1 == t2 {
                    return self.fail("the two twists coincide");
                }
                let ok = match self {
                    TwistCommute => {
                        let (bc, de) = (b.union(c), d.union(e));
                        bc.is_disjoint(de) && !convex::crossing(bc, de)?
                    }
                    _ => convex::nested((b, c), (d, e))?,
                };
                if !ok {
                    return self.fail("side condition fails");
                }
                Ok((&t1 * &t2, &t2 * &t1))
            }
            TwistFactor => {
                let [b, c, d] = self.sets(binding)?[..] else {
                    unreachable!()
                };
                self.admissible(&[b, c, d])?;
                Ok((&twist(b, c)? * &twist(b, d)?, twist(b, c.union(d))?))
            }
            TwistTriangleFirst | TwistTriangleSecond => {
                let [b, c, d] = self.sets(binding)?[..] else {
                    unreachable!()
                };
                self.admissible(&[b, c, d])?;
                let (tcb, tbd, tdc) = (twist(c, b)?, twist(b, d)?, twist(d, c)?);
                let x = prod(&[tcb.clone(), tbd.clone(), tdc.clone()]);
                let y = prod(&[tbd.clone(), tdc.clone(), tcb.clone()]);
                let z = prod(&[tdc, tcb, tbd]);
                Ok(match self {
                    TwistTriangleFirst => (x, y),
                    _ => (y, z),
                })
            }
            Triviality => {
                let [b] = self.sets(binding)?[..] else {
                    unreachable!()
                };
                if b.len() != 1 {
                    return self.fail(format!("{b} is not a single puncture"));
                }
                Ok((swing(b)?, Word::empty()))
            }
            Compatible => {
                let [b, c] = self.sets(binding)?[..] else {
                    unreachable!()
                };
                if b == c || !convex::compatible(b, c)? {
                    return self.fail(format!("{b} and {c} are not distinct compatible sets"));
                }
                let (sb, sc) = (swing(b)?, swing(c)?);
                Ok((&sb * &sc, &sc * &sb))
            }
            Lantern => {
                let [b, c, d] = self.sets(binding)?[..] else {
                    unreachable!()
                };
                self.admissible(&[b, c, d])?;
                let lhs = prod(&[swing(b.union(c).union(d))?, swing(b)?, swing(c)?, swing(d)?]);
                let rhs = prod(&[swing(c.union(b))?, swing(b.union(d))?, swing(d.union(c))?]);
                Ok((lhs, rhs))
            }
        }
    }
}
