//! The seven presentations as explicit finite data, plus oracle verification
//! and text/JSON export.

use std::fmt::Write as _;

use serde::Serialize;

use crate::convex::{self, disjoint_tuples, ConvexDisc, PunctureSet};
use crate::error::{Error, Result};
use crate::oracle::{self, Oracle};
use crate::relations::{Binding, PresentationKind, Schema};
use crate::words::{Generator, Word};

/// One relator together with the relation instance it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub word: Word,
    pub tag: String,
    pub binding: Binding,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub kind: PresentationKind,
    pub n: usize,
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
    /// Relators produced by more than one schema (twist presentation only).
    pub schema_overlap: usize,
}

impl Presentation {
    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn relator_words(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().map(|r| &r.word)
    }

    pub fn tags(&self) -> impl Iterator<Item = &str> {
        self.relators.iter().map(|r| r.tag.as_str())
    }

    /// Number of relators carrying `tag`.
    pub fn count(&self, tag: &str) -> usize {
        self.tags().filter(|t| *t == tag).count()
    }

    /// Plain-text export: header, `gens:` block, `rels:` block.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} n={}\ngens:\n", self.name(), self.n);
        for g in &self.generators {
            let _ = writeln!(out, "{}", Word::gen(*g));
        }
        out.push_str("rels:\n");
        for r in &self.relators {
            let _ = writeln!(out, "{}", r.word);
        }
        out
    }

    pub fn to_document(&self) -> PresentationDocument {
        PresentationDocument {
            name: self.name().to_string(),
            n: self.n,
            generators: self
                .generators
                .iter()
                .map(|g| Word::gen(*g).print())
                .collect(),
            relators: self.relator_words().map(Word::print).collect(),
            tags: self.tags().map(str::to_string).collect(),
        }
    }

    /// Structured export as pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }
}

/// Structured export document (stable key order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationDocument {
    pub name: String,
    pub n: usize,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub tags: Vec<String>,
}

struct Builder {
    kind: PresentationKind,
    relators: Vec<Relator>,
}

impl Builder {
    fn new(kind: PresentationKind) -> Self {
        Builder {
            kind,
            relators: Vec::new(),
        }
    }

    fn add(&mut self, schema: Schema, binding: Binding) {
        let (lhs, rhs) = schema
            .instantiate(&binding)
            .unwrap_or_else(|e| panic!("builder produced an invalid instance: {e}"));
        let word = &lhs * &rhs.inverse();
        debug_assert!(!word.is_empty(), "{} {binding}", schema.tag());
        self.relators.push(Relator {
            word,
            tag: schema.tag().to_string(),
            binding,
        });
    }

    fn finish(self, n: usize, generators: Vec<Generator>, overlap: usize) -> Presentation {
        Presentation {
            kind: self.kind,
            n,
            generators,
            relators: self.relators,
            schema_overlap: overlap,
        }
    }
}

fn disc_for(n: usize) -> Result<ConvexDisc> {
    if n < 2 {
        return Err(Error::PresentationSize(n));
    }
    ConvexDisc::new(n)
}

fn bind2(b: PunctureSet, c: PunctureSet) -> Binding {
    Binding::new().with("B", b).with("C", c)
}

fn bind3(b: PunctureSet, c: PunctureSet, d: PunctureSet) -> Binding {
    bind2(b, c).with("D", d)
}

fn labels(disc: ConvexDisc, names: &[&str], values: &[usize]) -> Binding {
    names
        .iter()
        .zip(values)
        .fold(Binding::new(), |b, (name, &v)| {
            b.with(name, disc.singleton(v).expect("label in range"))
        })
}

fn pairs(disc: ConvexDisc) -> Vec<PunctureSet> {
    disc.nonempty_subsets()
        .into_iter()
        .filter(|s| s.len() == 2)
        .collect()
}

/// Unordered pairs `(x, y)`, `x < y`, of disjoint non-crossing sets from `sets`.
fn non_crossing_pairs(sets: &[PunctureSet]) -> Vec<(PunctureSet, PunctureSet)> {
    let mut out = Vec::new();
    for (k, &x) in sets.iter().enumerate() {
        for &y in &sets[k + 1..] {
            if x.is_disjoint(y) && convex::non_crossing_family(&[x, y]).expect("disjoint") {
                out.push((x, y));
            }
        }
    }
    out
}

fn admissible_triples(disc: ConvexDisc) -> Vec<Vec<PunctureSet>> {
    disjoint_tuples(disc, 3)
        .into_iter()
        .filter(|t| convex::admissible_unchecked(t))
        .collect()
}

/// Keep the rotation of each admissible triple whose first set holds the least label.
fn cyclic_representative(t: &[PunctureSet]) -> bool {
    let least = t
        .iter()
        .map(|s| PunctureSet::min(*s).expect("nonempty"))
        .min();
    t[0].min() == least
}

/// Every 3-subset `a < b < c` as labels.
fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..=n).flat_map(move |a| (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| (a, b, c))))
}

/// Convex rotations `R_B`, `|B| ≥ 2`, with commutation and factorization relators.
pub fn rotation_presentation(n: usize) -> Result<Presentation> {
    let disc = disc_for(n)?;
    let sets: Vec<PunctureSet> = disc
        .nonempty_subsets()
        .into_iter()
        .filter(|s| s.len() >= 2)
        .collect();
    let generators = sets
        .iter()
        .map(|&b| Generator::rotation(b).expect("|B| >= 2"))
        .collect();
    let mut p = Builder::new(PresentationKind::Rotation);
    for (b, c) in non_crossing_pairs(&sets) {
        p.add(Schema::RotationCommute, bind2(b, c));
    }
    for t in admissible_triples(disc) {
        if t[0].len() == 1 {
            p.add(
                Schema::RotationFactor,
                Binding::new()
                    .with("i", t[0])
                    .with("B", t[1])
                    .with("C", t[2]),
            );
        }
    }
    Ok(p.finish(n, generators, 0))
}

/// Band generators with the commutation and triple-factorization relators.
pub fn bkl_presentation(n: usize) -> Result<Presentation> {
    let disc = disc_for(n)?;
    let sets = pairs(disc);
    let generators = sets
        .iter()
        .map(|&b| Generator::rotation(b).expect("pair"))
        .collect();
    let mut p = Builder::new(PresentationKind::Bkl);
    for (b, c) in non_crossing_pairs(&sets) {
        p.add(Schema::BandCommute, bind2(b, c));
    }
    for (a, b, c) in triples(n) {
        let binding = labels(disc, &["i", "j", "k"], &[a, b, c]);
        p.add(Schema::BandFactorFirst, binding.clone());
        p.add(Schema::BandFactorSecond, binding);
    }
    Ok(p.finish(n, generators, 0))
}

/// Which of the five classical cases `(r, s, i, j)` falls under, if any.
fn artin_case(r: usize, s: usize, i: usize, j: usize) -> Option<Schema> {
    if s < i {
        Some(Schema::Artin1)
    } else if i < r && s < j {
        Some(Schema::Artin2)
    } else if r < i && i == s && s < j {
        Some(Schema::Artin3)
    } else if r == i && s < j {
        Some(Schema::Artin4)
    } else if r < i && i < s && s < j {
        Some(Schema::Artin5)
    } else {
        None
    }
}

fn swing_pairs(disc: ConvexDisc) -> Vec<Generator> {
    pairs(disc)
        .into_iter()
        .map(|b| Generator::swing(b).expect("nonempty"))
        .collect()
}

/// The classical presentation of the pure braid group on `S_{ij}`.
pub fn artin_presentation(n: usize) -> Result<Presentation> {
    let disc = disc_for(n)?;
    let mut p = Builder::new(PresentationKind::Artin);
    let ps: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    for &(r, s) in &ps {
        for &(i, j) in &ps {
            if let Some(schema) = artin_case(r, s, i, j) {
                p.add(schema, labels(disc, &["r", "s", "i", "j"], &[r, s, i, j]));
            }
        }
    }
    Ok(p.finish(n, swing_pairs(disc), 0))
}

/// The convex variant on `S_{ij}` with relations of types (1), (2), (3).
pub fn modified_artin_presentation(n: usize) -> Result<Presentation> {
    let disc = disc_for(n)?;
    let mut p = Builder::new(PresentationKind::ModifiedArtin);
    for (x, y) in non_crossing_pairs(&pairs(disc)) {
        let (xs, ys) = (x.to_vec(), y.to_vec());
        p.add(
            Schema::ModCommute,
            labels(disc, &["i", "j", "r", "s"], &[xs[0], xs[1], ys[0], ys[1]]),
        );
    }
    for (a, b, c) in triples(n) {
        for d in c + 1..=n {
            p.add(
                Schema::ModCrossing,
                labels(disc, &["r", "i", "s", "j"], &[a, b, c, d]),
            );
        }
    }
    for (a, b, c) in triples(n) {
        let binding = labels(disc, &["r", "s", "j"], &[a, b, c]);
        p.add(Schema::ModTripleFirst, binding.clone());
        p.add(Schema::ModTripleSecond, binding);
    }
    Ok(p.finish(n, swing_pairs(disc), 0))
}

/// All convex twists `T_{B,C}` in canonical order.
pub fn twist_generators(disc: ConvexDisc) -> Vec<Generator> {
    disjoint_tuples(disc, 2)
        .into_iter()
        .filter(|t| t[0] < t[1] && !convex::crossing(t[0], t[1]).expect("disjoint"))
        .map(|t| Generator::twist(t[0], t[1]).expect("non-crossing"))
        .collect()
}

fn twist_parts(g: Generator) -> (PunctureSet, PunctureSet) {
    match g {
        Generator::Twist(b, c) => (b, c),
        _ => unreachable!("twist generator"),
    }
}

/// Convex twists with commutation, nested-commutation and factorization relators.
pub fn twist_presentation(n: usize) -> Result<Presentation> {
    let disc = disc_for(n)?;
    let generators = twist_generators(disc);
    let parts: Vec<_> = generators.iter().map(|&g| twist_parts(g)).collect();
    let mut p = Builder::new(PresentationKind::Twist);
    let mut nested = Vec::new();
    let mut overlap = 0;
    for (k, &(b, c)) in parts.iter().enumerate() {
        for &(d, e) in &parts[k + 1..] {
            let (bc, de) = (b.union(c), d.union(e));
            let commute = bc.is_disjoint(de) && !convex::crossing(bc, de).expect("disjoint");
            let nest = convex::nested_unchecked((b, c), (d, e));
            let binding = bind3(b, c, d).with("E", e);
            if commute {
                p.add(Schema::TwistCommute, binding.clone());
            }
            if nest {
                nested.push(binding);
            }
            if commute && nest {
                overlap += 1;
            }
        }
    }
    for binding in nested {
        p.add(Schema::TwistNested, binding);
    }
    for t in admissible_triples(disc) {
        p.add(Schema::TwistFactor, bind3(t[0], t[1], t[2]));
    }
    Ok(p.finish(n, generators, overlap))
}

fn swing_builder(kind: PresentationKind, n: usize) -> Result<Presentation> {
    let disc = disc_for(n)?;
    let sets = disc.nonempty_subsets();
    let generators = sets
        .iter()
        .map(|&b| Generator::swing(b).expect("nonempty"))
        .collect();
    let mut p = Builder::new(kind);
    if kind == PresentationKind::Swing {
        for &b in sets.iter().filter(|s| s.len() == 1) {
            p.add(Schema::Triviality, Binding::new().with("B", b));
        }
    }
    for (k, &b) in sets.iter().enumerate() {
        for &c in &sets[k + 1..] {
            if convex::compatible_unchecked(b, c) {
                p.add(Schema::Compatible, bind2(b, c));
            }
        }
    }
    for t in admissible_triples(disc) {
        if cyclic_representative(&t) {
            p.add(Schema::Lantern, bind3(t[0], t[1], t[2]));
        }
    }
    Ok(p.finish(n, generators, 0))
}

/// Convex swings with triviality, compatible-commutation and lantern relators.
pub fn swing_presentation(n: usize) -> Result<Presentation> {
    swing_builder(PresentationKind::Swing, n)
}

/// The swing presentation without the triviality relators.
pub fn boundary_swing_presentation(n: usize) -> Result<Presentation> {
    swing_builder(PresentationKind::BoundarySwing, n)
}

pub fn build(kind: PresentationKind, n: usize) -> Result<Presentation> {
    match kind {
        PresentationKind::Rotation => rotation_presentation(n),
        PresentationKind::Bkl => bkl_presentation(n),
        PresentationKind::Artin => artin_presentation(n),
        PresentationKind::ModifiedArtin => modified_artin_presentation(n),
        PresentationKind::Twist => twist_presentation(n),
        PresentationKind::Swing => swing_presentation(n),
        PresentationKind::BoundarySwing => boundary_swing_presentation(n),
    }
}

/// Outcome for a single relator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub index: usize,
    pub tag: String,
    pub relator: String,
    pub pure: bool,
    pub trivial: bool,
    pub error: Option<String>,
}

impl RelatorCheck {
    pub fn passed(&self) -> bool {
        self.pure && self.trivial && self.error.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub n: usize,
    pub generators: usize,
    pub relators: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_pure: usize,
    pub schema_overlap: usize,
    /// Set when relators are only checked with the punctures filled in.
    pub quotient_only: bool,
    pub checks: Vec<RelatorCheck>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} n={}: {} generators, {} relators, {} passed, {} failed",
            self.name, self.n, self.generators, self.relators, self.passed, self.failed
        );
        if self.schema_overlap > 0 || self.name == PresentationKind::Twist.name() {
            let _ = write!(s, ", schema overlap {}", self.schema_overlap);
        }
        if self.quotient_only {
            s.push_str(
                " (checked in the quotient filling the punctures; necessary condition only)",
            );
        }
        s
    }
}

fn check_relator(oracle: &Oracle, index: usize, r: &Relator) -> RelatorCheck {
    let n = oracle.strands();
    let mut check = RelatorCheck {
        index,
        tag: r.tag.clone(),
        relator: r.word.print(),
        pure: false,
        trivial: false,
        error: None,
    };
    let outcome = oracle::is_pure(&r.word, n).and_then(|pure| {
        check.pure = pure;
        oracle.is_trivial(&r.word)
    });
    match outcome {
        Ok(t) => check.trivial = t,
        Err(e) => check.error = Some(e.to_string()),
    }
    check
}

fn check_all(oracle: &Oracle, relators: &[Relator], jobs: usize) -> Vec<RelatorCheck> {
    #[cfg(feature = "parallel")]
    if jobs != 1 {
        use rayon::prelude::*;
        let run = || {
            relators
                .par_iter()
                .enumerate()
                .map(|(k, r)| check_relator(oracle, k, r))
                .collect()
        };
        return match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        };
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    relators
        .iter()
        .enumerate()
        .map(|(k, r)| check_relator(oracle, k, r))
        .collect()
}

/// Check every relator for purity and triviality with the oracle.
///
/// `jobs` is the worker count; `0` uses all cores and `1` runs sequentially.
/// Without the `parallel` feature the check is always sequential.
pub fn verify_presentation(p: &Presentation, jobs: usize) -> VerificationReport {
    let oracle = Oracle::new(p.n);
    for &g in &p.generators {
        // unknown or oversized generators surface as per-relator errors
        let _ = oracle.generator(g);
    }
    let checks = check_all(&oracle, &p.relators, jobs);
    let failed = checks.iter().filter(|c| !c.passed()).count();
    VerificationReport {
        name: p.name().to_string(),
        n: p.n,
        generators: p.generators.len(),
        relators: p.relators.len(),
        passed: checks.len() - failed,
        failed,
        not_pure: checks.iter().filter(|c| !c.pure).count(),
        schema_overlap: p.schema_overlap,
        quotient_only: p.kind == PresentationKind::BoundarySwing,
        checks,
    }
}
