mod common;

use common::{disc, set};
use convex_braids::derivations::*;
use convex_braids::expand::twist_to_swings;
use convex_braids::oracle::Oracle;
use convex_braids::presentations::swing_presentation;
use convex_braids::relations::{Binding, PresentationKind};
use convex_braids::words::{reduce, Generator, Letter, Word};
use convex_braids::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn swing(b: &[usize], n: usize) -> Word {
    Word::gen(Generator::swing(set(n, b)).unwrap())
}

#[test]
fn bundled_scripts_replay_at_five() {
    for name in BUNDLED {
        let scripts = bundled_scripts(name, 5).unwrap();
        assert!(!scripts.is_empty(), "{name}");
        for s in &scripts {
            let r = check_script(s, CheckLevel::EveryStep);
            assert!(r.passed, "{}", r.summary());
            assert!(r.every_step_checked && r.reached_goal && r.oracle_equal);
        }
    }
}

#[test]
fn unknown_bundled_name() {
    assert!(matches!(
        bundled_scripts("no-such-script", 5),
        Err(Error::Unknown { .. })
    ));
}

/// Random words with relator instances spliced in, then rewritten by random steps.
#[test]
fn random_steps_preserve_the_oracle_class() {
    let n = 5;
    let p = swing_presentation(n).unwrap();
    let oracle = Oracle::new(n);
    let gens = p.generators.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut substitutions = 0;
    for round in 0..200 {
        let rel = &p.relators[rng.gen_range(0..p.relators.len())];
        let inst =
            RelationInstance::new(PresentationKind::Swing, &rel.tag, rel.binding.clone()).unwrap();
        let random_word = |rng: &mut ChaCha8Rng| {
            reduce((0..rng.gen_range(0..6)).map(|_| Letter {
                gen: gens[rng.gen_range(0..gens.len())],
                inverse: rng.gen(),
            }))
        };
        let direction = if rng.gen() {
            Direction::Forward
        } else {
            Direction::Backward
        };
        let pattern = match direction {
            Direction::Forward => inst.lhs.clone(),
            Direction::Backward => inst.rhs.clone(),
        };
        let (pre, post) = (random_word(&mut rng), random_word(&mut rng));
        let start = reduce(
            pre.letters()
                .iter()
                .chain(pattern.letters())
                .chain(post.letters())
                .copied(),
        );
        let spliced =
            start.letters().get(pre.len()..pre.len() + pattern.len()) == Some(pattern.letters());
        let step = if spliced && !pattern.is_empty() {
            substitutions += 1;
            Step::substitute(inst.clone(), pre.len(), direction)
        } else if round % 2 == 0 {
            Step {
                instance: inst.clone(),
                position: 0,
                direction,
                mode: Mode::LeftMultiply,
            }
        } else {
            Step {
                instance: inst.clone(),
                position: start.len(),
                direction,
                mode: Mode::RightMultiply,
            }
        };
        let after = apply_step(&start, &step).unwrap();
        assert!(
            oracle.equal(&start, &after).unwrap(),
            "round {round}: {start} -> {after}"
        );

        let script = RewriteScript {
            name: format!("fuzz-{round}"),
            n,
            binding: Binding::new(),
            start: start.clone(),
            steps: vec![step],
            goal: after,
        };
        assert!(check_script(&script, CheckLevel::EveryStep).passed);
        let back = RewriteScript::from_json(&script.to_json()).unwrap();
        assert_eq!(back, script);
    }
    assert!(
        substitutions > 50,
        "only {substitutions} substitutions exercised"
    );
}

#[test]
fn misplaced_steps_are_rejected() {
    let n = 4;
    let b = Binding::new()
        .with("B", set(n, &[1, 2]))
        .with("C", set(n, &[3, 4]));
    let inst = RelationInstance::new(PresentationKind::Swing, "compatible commute", b).unwrap();
    let w = swing(&[1, 2], n);
    let step = Step::substitute(inst.clone(), 0, Direction::Forward);
    assert!(matches!(
        apply_step(&w, &step),
        Err(Error::PatternMismatch { .. })
    ));
    let step = Step::substitute(inst.clone(), 7, Direction::Forward);
    assert!(matches!(
        apply_step(&w, &step),
        Err(Error::InvalidPosition { .. })
    ));
    let step = Step {
        instance: inst,
        position: 0,
        direction: Direction::Forward,
        mode: Mode::RightMultiply,
    };
    assert!(matches!(
        apply_step(&w, &step),
        Err(Error::InvalidPosition { .. })
    ));
}

#[test]
fn instances_must_hold_in_the_braid_group() {
    // B and C cross, so the compatible-commute side condition fails
    let b = Binding::new()
        .with("B", set(4, &[1, 3]))
        .with("C", set(4, &[2, 4]));
    assert!(RelationInstance::new(PresentationKind::Swing, "compatible commute", b).is_err());
    let b = Binding::new().with("B", set(4, &[1]));
    assert!(RelationInstance::new(PresentationKind::Swing, "no such tag", b).is_err());
}

#[test]
fn central_witnesses_verify() {
    for n in 2..=7 {
        let oracle = Oracle::new(n);
        let full = Word::gen(Generator::swing(disc(n).full()).unwrap());
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    assert!(central_witness(i, j, n).is_err());
                    continue;
                }
                let u = central_witness(i, j, n).unwrap();
                let sij = swing(&[i, j], n);
                assert!(
                    oracle.equal(&(&sij * &u), &full).unwrap(),
                    "n={n} ({i},{j})"
                );
                assert!(
                    oracle.equal(&(&u * &sij), &full).unwrap(),
                    "n={n} ({i},{j})"
                );
            }
        }
        for g in &swing_presentation(n).unwrap().generators {
            let g = Word::gen(*g);
            assert!(oracle.equal(&(&full * &g), &(&g * &full)).unwrap());
        }
    }
    assert!(central_witness(1, 2, 2).unwrap().is_empty());
}

#[test]
fn swings_as_twists_round_trip() {
    for n in 1..=7 {
        let oracle = Oracle::new(n);
        for b in disc(n).nonempty_subsets() {
            if b.len() > 6 {
                continue;
            }
            let t = swing_as_twists(b).unwrap();
            let s = Word::gen(Generator::swing(b).unwrap());
            assert!(oracle.equal(&t, &s).unwrap(), "{b}");
            let expanded = Word::product(
                &t.letters()
                    .iter()
                    .map(|l| match l.gen {
                        Generator::Twist(x, y) => twist_to_swings(x, y).unwrap().pow(l.sign()),
                        other => panic!("unexpected generator {other}"),
                    })
                    .collect::<Vec<_>>(),
            );
            // the product telescopes
            if b.len() == 1 {
                assert!(expanded.is_empty());
            } else {
                assert_eq!(expanded, s, "{b}");
            }
        }
    }
    let t = |x: &[usize], y: &[usize]| Word::gen(Generator::twist(set(3, x), set(3, y)).unwrap());
    assert_eq!(
        swing_as_twists(set(3, &[1, 2, 3])).unwrap(),
        &t(&[2], &[3]) * &t(&[1], &[2, 3])
    );
    assert_eq!(swing_as_twists(set(3, &[1, 2])).unwrap(), t(&[1], &[2]));
    assert!(swing_as_twists(set(3, &[2])).unwrap().is_empty());
}

#[test]
fn scripts_are_deterministic_and_round_trip() {
    for name in BUNDLED {
        let a = bundled_scripts(name, 4).unwrap();
        let b = bundled_scripts(name, 4).unwrap();
        assert_eq!(a, b);
        for s in &a {
            let doc = s.to_json();
            assert_eq!(RewriteScript::from_json(&doc).unwrap(), *s);
            assert_eq!(
                check_script(s, CheckLevel::EveryStep),
                check_script(
                    &RewriteScript::from_json(&doc).unwrap(),
                    CheckLevel::EveryStep
                )
            );
        }
    }
}

#[test]
fn broken_script_reports_the_failing_step() {
    let mut s = bundled_scripts("artin-3rd-from-(3)", 4).unwrap().remove(0);
    s.steps[0].position += 1;
    let r = check_script(&s, CheckLevel::Endpoints);
    assert!(!r.passed);
    assert_eq!(r.applied, 0);
    assert!(r.failure.is_some());
}
