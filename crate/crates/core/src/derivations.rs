//! Rewriting proofs over free words.
//!
//! A [`RewriteScript`] starts from a word and applies relation instances one
//! step at a time until it reaches a goal word. Every instance is checked by
//! the oracle when it is built, so each step preserves the braid.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::convex::{self, ConvexDisc, PunctureSet};
use crate::error::{Error, Result};
use crate::expand::twist_to_swings;
use crate::oracle::Oracle;
use crate::presentations::twist_presentation;
use crate::relations::{Binding, PresentationKind, RawBinding, Schema};
use crate::words::{parse, reduce, Generator, Letter, Word};

thread_local! {
    static ORACLES: RefCell<HashMap<usize, Rc<Oracle>>> = RefCell::new(HashMap::new());
}

fn oracle_for(n: usize) -> Rc<Oracle> {
    ORACLES.with(|m| {
        m.borrow_mut()
            .entry(n)
            .or_insert_with(|| Rc::new(Oracle::new(n)))
            .clone()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Replace `lhs` by `rhs`.
    Forward,
    /// Replace `rhs` by `lhs`.
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Substitute,
    /// Multiply on the left by the relator `pattern · replacement⁻¹`.
    LeftMultiply,
    /// Multiply on the right by the relator `pattern · replacement⁻¹`.
    RightMultiply,
}

/// Reading a relator `lhs · rhs⁻¹` from another starting point.
///
/// The relator is optionally inverted, rotated left by `rotate` letters and
/// cut after `split` letters into `P · Q⁻¹`; the rearranged equation is `P = Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rearrangement {
    pub invert: bool,
    pub rotate: usize,
    pub split: usize,
}

fn rearrange(lhs: &Word, rhs: &Word, r: Rearrangement) -> Result<(Word, Word)> {
    let mut rel = lhs * &rhs.inverse();
    if r.invert {
        rel = rel.inverse();
    }
    let letters = rel.letters();
    let len = letters.len();
    if (r.rotate > 0 && r.rotate >= len) || r.split > len {
        return Err(Error::Schema {
            tag: "rearrangement".to_string(),
            msg: format!(
                "rotate {} / split {} out of range for a relator of length {len}",
                r.rotate, r.split
            ),
        });
    }
    let rotated: Vec<Letter> = letters[r.rotate..]
        .iter()
        .chain(&letters[..r.rotate])
        .copied()
        .collect();
    let p = reduce(rotated[..r.split].iter().copied());
    let q = reduce(rotated[r.split..].iter().copied()).inverse();
    Ok((p, q))
}

/// A concrete equation taken from a presentation, possibly rearranged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub source: PresentationKind,
    pub tag: String,
    pub binding: Binding,
    pub rearrange: Option<Rearrangement>,
    pub lhs: Word,
    pub rhs: Word,
}

fn binding_size(binding: &Binding) -> usize {
    binding
        .entries()
        .first()
        .map(|(_, s)| s.disc().size())
        .unwrap_or(0)
}

impl RelationInstance {
    /// Instantiate `tag` of `source` at `binding`; fails unless the oracle confirms it.
    pub fn new(source: PresentationKind, tag: &str, binding: Binding) -> Result<Self> {
        Self::build(source, tag, binding, None)
    }

    pub fn rearranged(
        source: PresentationKind,
        tag: &str,
        binding: Binding,
        r: Rearrangement,
    ) -> Result<Self> {
        Self::build(source, tag, binding, Some(r))
    }

    fn build(
        source: PresentationKind,
        tag: &str,
        binding: Binding,
        r: Option<Rearrangement>,
    ) -> Result<Self> {
        let schema = source.schema(tag)?;
        let (lhs, rhs) = schema.instantiate(&binding)?;
        let (lhs, rhs) = match r {
            Some(r) => rearrange(&lhs, &rhs, r)?,
            None => (lhs, rhs),
        };
        let n = binding_size(&binding);
        if !oracle_for(n).equal(&lhs, &rhs)? {
            return Err(Error::Schema {
                tag: tag.to_string(),
                msg: format!("{lhs} = {rhs} fails in the braid group"),
            });
        }
        Ok(RelationInstance {
            source,
            tag: tag.to_string(),
            binding,
            rearrange: r,
            lhs,
            rhs,
        })
    }

    /// Find the reading of the instance whose left side is `lhs` (and right side `rhs`, if given).
    pub fn solve(
        source: PresentationKind,
        tag: &str,
        binding: Binding,
        lhs: &Word,
        rhs: Option<&Word>,
    ) -> Result<Self> {
        let schema = source.schema(tag)?;
        let (l, r) = schema.instantiate(&binding)?;
        if l == *lhs && rhs.is_none_or(|t| r == *t) {
            return Self::new(source, tag, binding);
        }
        let len = (&l * &r.inverse()).len();
        for invert in [false, true] {
            for rotate in 0..len.max(1) {
                for split in 0..=len {
                    let re = Rearrangement {
                        invert,
                        rotate,
                        split,
                    };
                    let (p, q) = rearrange(&l, &r, re)?;
                    if p == *lhs && rhs.is_none_or(|t| q == *t) {
                        return Self::rearranged(source, tag, binding, re);
                    }
                }
            }
        }
        Err(Error::Schema {
            tag: tag.to_string(),
            msg: format!(
                "no reading of {binding} has the form {lhs} = {}",
                rhs.map_or("…".to_string(), Word::print)
            ),
        })
    }

    pub fn relator(&self) -> Word {
        &self.lhs * &self.rhs.inverse()
    }

    fn sides(&self, direction: Direction) -> (&Word, &Word) {
        match direction {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub instance: RelationInstance,
    pub position: usize,
    pub direction: Direction,
    pub mode: Mode,
}

impl Step {
    pub fn substitute(instance: RelationInstance, position: usize, direction: Direction) -> Self {
        Step {
            instance,
            position,
            direction,
            mode: Mode::Substitute,
        }
    }
}

/// Apply one rewriting step and freely reduce.
///
/// Substitution replaces the pattern found at `position`. The multiplication
/// modes need `position` to be `0` (left) or the word length (right).
pub fn apply_step(w: &Word, step: &Step) -> Result<Word> {
    let (pattern, replacement) = step.instance.sides(step.direction);
    let letters = w.letters();
    let pos = step.position;
    match step.mode {
        Mode::Substitute => {
            let end = pos + pattern.len();
            if pos > letters.len() || end > letters.len() {
                if pos > letters.len() {
                    return Err(Error::InvalidPosition {
                        position: pos,
                        len: letters.len(),
                    });
                }
                return Err(Error::PatternMismatch {
                    position: pos,
                    expected: pattern.print(),
                    found: w.slice(pos, letters.len() - pos).print(),
                });
            }
            if &letters[pos..end] != pattern.letters() {
                return Err(Error::PatternMismatch {
                    position: pos,
                    expected: pattern.print(),
                    found: w.slice(pos, pattern.len()).print(),
                });
            }
            Ok(reduce(
                letters[..pos]
                    .iter()
                    .chain(replacement.letters())
                    .chain(&letters[end..])
                    .copied(),
            ))
        }
        Mode::LeftMultiply | Mode::RightMultiply => {
            let at = if step.mode == Mode::LeftMultiply {
                0
            } else {
                letters.len()
            };
            if pos != at {
                return Err(Error::InvalidPosition {
                    position: pos,
                    len: letters.len(),
                });
            }
            let rel = pattern * &replacement.inverse();
            Ok(if step.mode == Mode::LeftMultiply {
                rel * w
            } else {
                w * &rel
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteScript {
    pub name: String,
    pub n: usize,
    pub binding: Binding,
    pub start: Word,
    pub steps: Vec<Step>,
    pub goal: Word,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckLevel {
    /// Only `start ≡ goal` is confirmed by the oracle.
    Endpoints,
    /// Every intermediate word is compared with its predecessor.
    EveryStep,
}

impl CheckLevel {
    /// `EveryStep` in debug builds, `Endpoints` otherwise.
    pub fn for_build() -> Self {
        if cfg!(debug_assertions) {
            CheckLevel::EveryStep
        } else {
            CheckLevel::Endpoints
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScriptReport {
    pub name: String,
    pub binding: String,
    pub steps: usize,
    pub applied: usize,
    pub failure: Option<String>,
    pub final_word: String,
    pub reached_goal: bool,
    pub oracle_equal: bool,
    pub every_step_checked: bool,
    pub passed: bool,
}

impl ScriptReport {
    pub fn summary(&self) -> String {
        let status = if self.passed { "ok" } else { "FAILED" };
        let mut s = format!(
            "{status} {} [{}]: {}/{} steps",
            self.name, self.binding, self.applied, self.steps
        );
        if let Some(f) = &self.failure {
            s.push_str(&format!(", {f}"));
        } else if !self.reached_goal {
            s.push_str(&format!(
                ", ended at `{}` instead of the goal",
                self.final_word
            ));
        }
        if !self.oracle_equal {
            s.push_str(", start and goal differ as braids");
        }
        s
    }
}

/// Replay a script; failures are reported, never raised.
pub fn check_script(s: &RewriteScript, level: CheckLevel) -> ScriptReport {
    let oracle = oracle_for(s.n);
    let mut w = s.start.clone();
    let mut applied = 0;
    let mut failure = None;
    for (k, step) in s.steps.iter().enumerate() {
        match apply_step(&w, step) {
            Ok(next) => {
                if level == CheckLevel::EveryStep {
                    match oracle.equal(&w, &next) {
                        Ok(true) => {}
                        Ok(false) => {
                            failure = Some(format!("step {k}: the braid changed"));
                            break;
                        }
                        Err(e) => {
                            failure = Some(format!("step {k}: {e}"));
                            break;
                        }
                    }
                }
                w = next;
                applied += 1;
            }
            Err(e) => {
                failure = Some(format!("step {k}: {e}"));
                break;
            }
        }
    }
    let reached_goal = failure.is_none() && w == s.goal;
    let oracle_equal = oracle.equal(&s.start, &s.goal).unwrap_or(false);
    ScriptReport {
        name: s.name.clone(),
        binding: s.binding.to_string(),
        steps: s.steps.len(),
        applied,
        failure,
        final_word: w.print(),
        reached_goal,
        oracle_equal,
        every_step_checked: level == CheckLevel::EveryStep,
        passed: reached_goal && oracle_equal,
    }
}

/// Serialized form of a script, words in the text grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptDocument {
    pub name: String,
    pub n: usize,
    #[serde(default)]
    pub binding: RawBinding,
    pub start: String,
    pub steps: Vec<StepDocument>,
    pub goal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    pub source: String,
    pub relation_tag: String,
    pub binding: RawBinding,
    pub position: usize,
    pub direction: Direction,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rearrange: Option<Rearrangement>,
}

impl RewriteScript {
    pub fn from_document(doc: &ScriptDocument) -> Result<Self> {
        let disc = ConvexDisc::new(doc.n)?;
        let mut steps = Vec::with_capacity(doc.steps.len());
        for (k, sd) in doc.steps.iter().enumerate() {
            let wrap = |e: Error| Error::Step {
                step: k,
                msg: e.to_string(),
            };
            let source = PresentationKind::from_name(&sd.source).map_err(wrap)?;
            let binding = Binding::from_labels(disc, &sd.binding.0).map_err(wrap)?;
            let instance = match sd.rearrange {
                Some(r) => RelationInstance::rearranged(source, &sd.relation_tag, binding, r),
                None => RelationInstance::new(source, &sd.relation_tag, binding),
            }
            .map_err(wrap)?;
            steps.push(Step {
                instance,
                position: sd.position,
                direction: sd.direction,
                mode: sd.mode,
            });
        }
        Ok(RewriteScript {
            name: doc.name.clone(),
            n: doc.n,
            binding: Binding::from_labels(disc, &doc.binding.0)?,
            start: parse(&doc.start, disc)?,
            steps,
            goal: parse(&doc.goal, disc)?,
        })
    }

    pub fn to_document(&self) -> ScriptDocument {
        ScriptDocument {
            name: self.name.clone(),
            n: self.n,
            binding: RawBinding::from(&self.binding),
            start: self.start.print(),
            steps: self
                .steps
                .iter()
                .map(|s| StepDocument {
                    source: s.instance.source.name().to_string(),
                    relation_tag: s.instance.tag.clone(),
                    binding: RawBinding::from(&s.instance.binding),
                    position: s.position,
                    direction: s.direction,
                    mode: s.mode,
                    rearrange: s.instance.rearrange,
                })
                .collect(),
            goal: self.goal.print(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ScriptDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }
}

/// Finds a relation instance letting two adjacent letters trade places.
type Commuter = fn(Generator, Generator) -> Option<(PresentationKind, &'static str, Binding)>;

fn swing_commuter(y: Generator, x: Generator) -> Option<(PresentationKind, &'static str, Binding)> {
    match (y, x) {
        (Generator::Swing(a), Generator::Swing(b))
            if a != b && convex::compatible_unchecked(a, b) =>
        {
            Some((
                PresentationKind::Swing,
                Schema::Compatible.tag(),
                Binding::new().with("B", a).with("C", b),
            ))
        }
        _ => None,
    }
}

fn find(w: &Word, pattern: &Word) -> Option<usize> {
    let (w, p) = (w.letters(), pattern.letters());
    (0..=w.len().checked_sub(p.len())?).find(|&k| &w[k..k + p.len()] == p)
}

/// Builds a script by applying steps to a running word.
struct Planner {
    word: Word,
    steps: Vec<Step>,
    commuter: Commuter,
}

impl Planner {
    fn new(start: &Word, commuter: Commuter) -> Self {
        Planner {
            word: start.clone(),
            steps: Vec::new(),
            commuter,
        }
    }

    fn push(&mut self, step: Step) -> Result<()> {
        self.word = apply_step(&self.word, &step)?;
        self.steps.push(step);
        Ok(())
    }

    /// Rewrite the first occurrence of the instance's pattern.
    fn rewrite(&mut self, instance: RelationInstance, direction: Direction) -> Result<()> {
        let (pattern, _) = instance.sides(direction);
        let position = find(&self.word, pattern).ok_or_else(|| Error::PatternMismatch {
            position: 0,
            expected: pattern.print(),
            found: self.word.print(),
        })?;
        self.push(Step::substitute(instance, position, direction))
    }

    fn stuck(&self, msg: String) -> Error {
        Error::Step {
            step: self.steps.len(),
            msg,
        }
    }

    fn commute(&self, y: Letter, x: Letter, lhs: Word, rhs: Word) -> Result<RelationInstance> {
        let (source, tag, binding) = (self.commuter)(y.gen, x.gen)
            .ok_or_else(|| self.stuck(format!("no relation lets {y} and {x} commute")))?;
        RelationInstance::solve(source, tag, binding, &lhs, Some(&rhs))
    }

    /// Swap the letters at `q` and `q + 1`.
    fn swap(&mut self, q: usize) -> Result<()> {
        let (y, x) = (self.word.letters()[q], self.word.letters()[q + 1]);
        let inst = self.commute(y, x, reduce([y, x]), reduce([x, y]))?;
        self.push(Step::substitute(inst, q, Direction::Forward))
    }

    /// Reach `goal` by commuting letters, fixing one goal letter at a time.
    fn reach(&mut self, goal: &Word) -> Result<()> {
        let g = goal.letters();
        let mut k = 0;
        while k < g.len() {
            let w = self.word.letters();
            if k < w.len() && w[k] == g[k] {
                k += 1;
                continue;
            }
            if let Some(p) = (k..w.len()).find(|&p| w[p] == g[k]) {
                let len = self.word.len();
                for q in (k..p).rev() {
                    self.swap(q)?;
                    if self.word.len() != len {
                        break;
                    }
                }
            } else if k < w.len() {
                // z = x z x⁻¹
                let (z, x) = (w[k], g[k]);
                let inst = self.commute(x, z, reduce([z]), reduce([x, z, x.inv()]))?;
                self.push(Step::substitute(inst, k, Direction::Forward))?;
            } else {
                return Err(self.stuck(format!("cannot reach {goal} from {}", self.word)));
            }
        }
        if self.word != *goal {
            return Err(self.stuck(format!("ended at {} instead of {goal}", self.word)));
        }
        Ok(())
    }

    /// Remove trivial swings `S_{i}^{±1}` with the triviality relation.
    fn drop_trivial_swings(&mut self) -> Result<()> {
        while let Some(k) = self
            .word
            .letters()
            .iter()
            .position(|l| matches!(l.gen, Generator::Swing(b) if b.len() == 1))
        {
            let l = self.word.letters()[k];
            let Generator::Swing(b) = l.gen else {
                unreachable!()
            };
            let inst = RelationInstance::solve(
                PresentationKind::Swing,
                Schema::Triviality.tag(),
                Binding::new().with("B", b),
                &reduce([l]),
                Some(&Word::empty()),
            )?;
            self.push(Step::substitute(inst, k, Direction::Forward))?;
        }
        Ok(())
    }

    fn finish(
        self,
        name: &str,
        n: usize,
        binding: Binding,
        start: Word,
        goal: Word,
    ) -> RewriteScript {
        RewriteScript {
            name: name.to_string(),
            n,
            binding,
            start,
            steps: self.steps,
            goal,
        }
    }
}

fn no_commuter(_: Generator, _: Generator) -> Option<(PresentationKind, &'static str, Binding)> {
    None
}

/// Names of the bundled derivations.
pub const BUNDLED: [&str; 7] = [
    "artin-3rd-from-(3)",
    "artin-4th-A4'-from-(3)",
    "artin-5th-from-(2)(3)",
    "triangles-lemma",
    "twist-rel-second-modified-artin",
    "swing-rel-nested-noncrossing",
    "lantern-implies-twist-factorization",
];

fn singles(disc: ConvexDisc, names: &[&str], labels: &[usize]) -> Result<Binding> {
    names
        .iter()
        .zip(labels)
        .try_fold(Binding::new(), |b, (name, &l)| {
            Ok(b.with(name, disc.singleton(l)?))
        })
}

fn sw(disc: ConvexDisc, a: usize, b: usize) -> Result<Word> {
    Ok(Word::gen(Generator::swing(disc.set(&[a, b])?)?))
}

fn words(parts: &[&Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, w| acc * *w)
}

const MA: PresentationKind = PresentationKind::ModifiedArtin;
const TW: PresentationKind = PresentationKind::Twist;

fn artin_endpoints(schema: Schema, binding: &Binding) -> Result<(Word, Word)> {
    schema.instantiate(binding)
}

/// Artin's third relation (`r < s < j`) from the type-(3) relations.
pub fn artin_third_script(disc: ConvexDisc, r: usize, s: usize, j: usize) -> Result<RewriteScript> {
    let (start, goal) = artin_endpoints(
        Schema::Artin3,
        &singles(disc, &["r", "s", "i", "j"], &[r, s, s, j])?,
    )?;
    let (a, b, c) = (sw(disc, r, s)?, sw(disc, r, j)?, sw(disc, s, j)?);
    let mut p = Planner::new(&start, no_commuter);
    let rsj = singles(disc, &["r", "s", "j"], &[r, s, j])?;
    p.rewrite(
        RelationInstance::solve(
            MA,
            Schema::ModTripleFirst.tag(),
            rsj.clone(),
            &words(&[&c, &a]),
            Some(&words(&[&a, &b, &c, &b.inverse()])),
        )?,
        Direction::Forward,
    )?;
    Ok(p.finish(BUNDLED[0], disc.size(), rsj, start, goal))
}

/// Artin's fourth relation (`r = i < s < j`) from the type-(3) relations.
pub fn artin_fourth_script(
    disc: ConvexDisc,
    r: usize,
    s: usize,
    j: usize,
) -> Result<RewriteScript> {
    let (start, goal) = artin_endpoints(
        Schema::Artin4,
        &singles(disc, &["r", "s", "i", "j"], &[r, s, r, j])?,
    )?;
    let (a, b, c) = (sw(disc, r, s)?, sw(disc, r, j)?, sw(disc, s, j)?);
    let rsj = singles(disc, &["r", "s", "j"], &[r, s, j])?;
    let mut p = Planner::new(&start, no_commuter);
    // the trailing S_rs, rewritten through the first equality
    let first = RelationInstance::solve(
        MA,
        Schema::ModTripleFirst.tag(),
        rsj.clone(),
        &a,
        Some(&words(&[&c, &a, &b, &c.inverse(), &b.inverse()])),
    )?;
    p.push(Step::substitute(first, 2, Direction::Forward))?;
    p.rewrite(
        RelationInstance::new(MA, Schema::ModTripleSecond.tag(), rsj.clone())?,
        Direction::Backward,
    )?;
    Ok(p.finish(BUNDLED[1], disc.size(), rsj, start, goal))
}

/// Artin's fifth relation (`r < i < s < j`) from types (2) and (3).
pub fn artin_fifth_script(
    disc: ConvexDisc,
    r: usize,
    i: usize,
    s: usize,
    j: usize,
) -> Result<RewriteScript> {
    let binding = singles(disc, &["r", "s", "i", "j"], &[r, s, i, j])?;
    let (start, goal) = artin_endpoints(Schema::Artin5, &binding)?;
    let (a, b, c, x) = (
        sw(disc, r, s)?,
        sw(disc, r, j)?,
        sw(disc, s, j)?,
        sw(disc, i, j)?,
    );
    let rsj = singles(disc, &["r", "s", "j"], &[r, s, j])?;
    let first = MA.schema("(3) first equality")?.tag();
    let mut p = Planner::new(&start, no_commuter);
    p.rewrite(
        RelationInstance::solve(
            MA,
            first,
            rsj.clone(),
            &a.inverse(),
            Some(&words(&[&b, &c, &b.inverse(), &a.inverse(), &c.inverse()])),
        )?,
        Direction::Forward,
    )?;
    let last = p.word.len() - 1;
    p.push(Step::substitute(
        RelationInstance::solve(
            MA,
            first,
            rsj,
            &a,
            Some(&words(&[&c, &a, &b, &c.inverse(), &b.inverse()])),
        )?,
        last,
        Direction::Forward,
    ))?;
    p.rewrite(
        RelationInstance::solve(
            MA,
            Schema::ModCrossing.tag(),
            singles(disc, &["r", "i", "s", "j"], &[r, i, s, j])?,
            &words(&[&a.inverse(), &c.inverse(), &x, &c, &a]),
            Some(&words(&[&c.inverse(), &x, &c])),
        )?,
        Direction::Forward,
    )?;
    let b = singles(disc, &["r", "i", "s", "j"], &[r, i, s, j])?;
    Ok(p.finish(BUNDLED[2], disc.size(), b, start, goal))
}

fn twist(b: PunctureSet, c: PunctureSet) -> Result<Word> {
    Ok(Word::gen(Generator::twist(b, c)?))
}

fn triple(b: PunctureSet, c: PunctureSet, d: PunctureSet) -> Binding {
    Binding::new().with("B", b).with("C", c).with("D", d)
}

fn quad(b: PunctureSet, c: PunctureSet, d: PunctureSet, e: PunctureSet) -> Binding {
    triple(b, c, d).with("E", e)
}

/// Both triangle equalities for an admissible `(B, C, D)`, through the middle form.
pub fn triangles_script(b: PunctureSet, c: PunctureSet, d: PunctureSet) -> Result<RewriteScript> {
    let start = words(&[&twist(c, b)?, &twist(b, d)?, &twist(d, c)?]);
    let goal = words(&[&twist(d, c)?, &twist(c, b)?, &twist(b, d)?]);
    let factor = Schema::TwistFactor.tag();
    let nested = Schema::TwistNested.tag();
    let mut p = Planner::new(&start, no_commuter);
    let dbc = RelationInstance::new(TW, factor, triple(d, b, c))?;
    p.rewrite(dbc.clone(), Direction::Forward)?;
    p.rewrite(
        RelationInstance::new(TW, nested, quad(c, b, d, b.union(c)))?,
        Direction::Forward,
    )?;
    p.rewrite(dbc, Direction::Backward)?;
    let cdb = RelationInstance::new(TW, factor, triple(c, d, b))?;
    p.rewrite(cdb.clone(), Direction::Forward)?;
    p.rewrite(
        RelationInstance::new(TW, nested, quad(b, d, c, d.union(b)))?,
        Direction::Forward,
    )?;
    p.rewrite(cdb, Direction::Backward)?;
    Ok(p.finish(BUNDLED[3], b.disc().size(), triple(b, c, d), start, goal))
}

/// Relation (2) for `T_{i,j} = S_{ij}`, cyclic order `r, i, s, j`, from the twist relations.
pub fn twist_rel_script(
    disc: ConvexDisc,
    r: usize,
    i: usize,
    s: usize,
    j: usize,
) -> Result<RewriteScript> {
    let [r, i, s, j] = [r, i, s, j].map(|l| disc.singleton(l));
    let (r, i, s, j) = (r?, i?, s?, j?);
    let (tij, tsj, trs, trj) = (twist(i, j)?, twist(s, j)?, twist(r, s)?, twist(r, j)?);
    let x = words(&[&tsj, &trs, &tsj.inverse()]);
    let start = &tij * &x;
    let goal = &x * &tij;
    let factor = Schema::TwistFactor.tag();
    let is = i.union(s);
    let mut p = Planner::new(&start, no_commuter);
    let jis = RelationInstance::new(TW, factor, triple(j, i, s))?;
    p.rewrite(jis.clone(), Direction::Forward)?;
    p.rewrite(
        RelationInstance::solve(
            TW,
            factor,
            triple(j, r, is),
            &twist(j, is)?,
            Some(&(trj.inverse() * twist(j, r.union(is))?)),
        )?,
        Direction::Forward,
    )?;
    p.rewrite(
        RelationInstance::new(TW, Schema::TwistNested.tag(), quad(j, r.union(is), r, s))?,
        Direction::Forward,
    )?;
    p.rewrite(
        RelationInstance::new(TW, factor, triple(j, r, is))?,
        Direction::Backward,
    )?;
    p.rewrite(jis, Direction::Backward)?;
    p.rewrite(
        RelationInstance::solve(
            TW,
            Schema::TwistTriangleFirst.tag(),
            triple(r, s, j),
            &words(&[&trj.inverse(), &trs, &trj]),
            Some(&x),
        )?,
        Direction::Forward,
    )?;
    let binding = Binding::new()
        .with("r", r)
        .with("i", i)
        .with("s", s)
        .with("j", j);
    Ok(p.finish(BUNDLED[4], disc.size(), binding, start, goal))
}

fn twist_swings(b: PunctureSet, c: PunctureSet) -> Result<Word> {
    twist_to_swings(b, c)
}

/// `T_{B,C}` and `T_{D,E}` commute as swing words when nested or non-crossing.
pub fn swing_rel_commute_script(
    b: PunctureSet,
    c: PunctureSet,
    d: PunctureSet,
    e: PunctureSet,
) -> Result<RewriteScript> {
    let (u, v) = (twist_swings(b, c)?, twist_swings(d, e)?);
    let start = &u * &v;
    let goal = &v * &u;
    let mut p = Planner::new(&start, swing_commuter);
    p.reach(&goal)?;
    Ok(p.finish(BUNDLED[5], b.disc().size(), quad(b, c, d, e), start, goal))
}

/// Twist factorization `T_{B,C} T_{B,D} = T_{B,CD}` from the lantern relation.
pub fn lantern_factorization_script(
    b: PunctureSet,
    c: PunctureSet,
    d: PunctureSet,
) -> Result<RewriteScript> {
    let start = twist_swings(b, c.union(d))?;
    let goal = &twist_swings(b, c)? * &twist_swings(b, d)?;
    let s = |x: PunctureSet| -> Result<Word> { Ok(Word::gen(Generator::swing(x)?)) };
    let bcd = b.union(c).union(d);
    let mut p = Planner::new(&start, swing_commuter);
    p.rewrite(
        RelationInstance::solve(
            PresentationKind::Swing,
            Schema::Lantern.tag(),
            triple(c, d, b),
            &s(bcd)?,
            Some(&words(&[
                &s(d.union(c))?,
                &s(c.union(b))?,
                &s(b.union(d))?,
                &s(b)?.inverse(),
                &s(d)?.inverse(),
                &s(c)?.inverse(),
            ])),
        )?,
        Direction::Forward,
    )?;
    p.drop_trivial_swings()?;
    p.reach(&goal)?;
    Ok(p.finish(BUNDLED[6], b.disc().size(), triple(b, c, d), start, goal))
}

fn increasing(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in from..=n {
            cur.push(x);
            go(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 1, &mut Vec::new(), &mut out);
    out
}

fn admissible_triples(disc: ConvexDisc) -> Vec<Vec<PunctureSet>> {
    convex::disjoint_tuples(disc, 3)
        .into_iter()
        .filter(|t| convex::admissible_unchecked(t))
        .collect()
}

/// Every instance of a bundled derivation on a disc with `n` punctures.
pub fn bundled_scripts(name: &str, n: usize) -> Result<Vec<RewriteScript>> {
    let disc = ConvexDisc::new(n)?;
    let idx = BUNDLED
        .iter()
        .position(|b| *b == name)
        .ok_or_else(|| Error::Unknown {
            what: "bundled script",
            name: name.to_string(),
        })?;
    match idx {
        0 | 1 => increasing(n, 3)
            .into_iter()
            .map(|t| {
                if idx == 0 {
                    artin_third_script(disc, t[0], t[1], t[2])
                } else {
                    artin_fourth_script(disc, t[0], t[1], t[2])
                }
            })
            .collect(),
        2 => increasing(n, 4)
            .into_iter()
            .map(|t| artin_fifth_script(disc, t[0], t[1], t[2], t[3]))
            .collect(),
        3 => admissible_triples(disc)
            .into_iter()
            .map(|t| triangles_script(t[0], t[1], t[2]))
            .collect(),
        4 => increasing(n, 4)
            .into_iter()
            .flat_map(|t| {
                (0..4).map(move |k| [t[k], t[(k + 1) % 4], t[(k + 2) % 4], t[(k + 3) % 4]])
            })
            .map(|q| twist_rel_script(disc, q[0], q[1], q[2], q[3]))
            .collect(),
        5 => {
            if n < 2 {
                return Ok(Vec::new());
            }
            let p = twist_presentation(n)?;
            p.relators
                .iter()
                .filter(|r| {
                    r.tag == Schema::TwistCommute.tag() || r.tag == Schema::TwistNested.tag()
                })
                .map(|r| {
                    let get = |k: &str| r.binding.get(k).expect("twist relator binding");
                    swing_rel_commute_script(get("B"), get("C"), get("D"), get("E"))
                })
                .collect()
        }
        _ => admissible_triples(disc)
            .into_iter()
            .map(|t| lantern_factorization_script(t[0], t[1], t[2]))
            .collect(),
    }
}

/// A word `U` with `S_{ij} U = U S_{ij} = S_A` on the disc with `n` punctures.
pub fn central_witness(i: usize, j: usize, n: usize) -> Result<Word> {
    let disc = ConvexDisc::new(n)?;
    let ij = disc.set(&[i, j])?;
    if i == j {
        return Err(Error::InvalidGenerator(format!(
            "central witness needs two distinct punctures, got {i} twice"
        )));
    }
    let full = disc.full();
    if ij == full {
        return Ok(Word::empty());
    }
    // labels strictly between a and b, clockwise
    let arc = |a: usize, b: usize| -> Result<PunctureSet> {
        let mut v = Vec::new();
        let mut x = disc.successor(a);
        while x != b {
            v.push(x);
            x = disc.successor(x);
        }
        disc.set(&v)
    };
    let s = |x: PunctureSet| -> Result<Word> { Ok(Word::gen(Generator::swing(x)?)) };
    if disc.successor(i) == j || disc.successor(j) == i {
        let rest = full.difference(ij);
        return Ok(&s(rest)? * &twist(ij, rest)?);
    }
    let (b, c) = (arc(i, j)?, arc(j, i)?);
    Ok(words(&[
        &s(b)?,
        &s(c)?,
        &twist(ij, c)?,
        &twist(b, ij.union(c))?,
    ]))
}

/// `S_B` as a product of convex twists, splitting off the first member each time.
pub fn swing_as_twists(b: PunctureSet) -> Result<Word> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    let order = convex::canonical_admissible_order(b)?;
    if order.len() == 1 {
        return Ok(Word::empty());
    }
    let head = b.disc().singleton(order[0])?;
    let rest = b.difference(head);
    Ok(&swing_as_twists(rest)? * &twist(head, rest)?)
}
