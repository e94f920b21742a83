//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use convex_braids::abelian::abelianize;
use convex_braids::convex::{
    admissible, canonical_admissible_order, compatible, crossing, nested, non_crossing_family,
    ConvexDisc, PunctureSet,
};
use convex_braids::derivations::{
    bundled_scripts, central_witness, check_script, swing_as_twists, CheckLevel, BUNDLED,
};
use convex_braids::expand::{expand_full, twist_to_swings};
use convex_braids::oracle::{is_pure, permutation_of, Oracle};
use convex_braids::presentations::{build, twist_generators, verify_presentation};
use convex_braids::relations::PresentationKind;
use convex_braids::words::{parse, Generator, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(n: usize, xs: &[usize]) -> PunctureSet {
    ConvexDisc::new(n).unwrap().set(xs).unwrap()
}

fn gen(g: Generator) -> Word {
    Word::gen(g)
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |j| j.get())
}

const SIX: [PresentationKind; 6] = [
    PresentationKind::Rotation,
    PresentationKind::Bkl,
    PresentationKind::Artin,
    PresentationKind::ModifiedArtin,
    PresentationKind::Twist,
    PresentationKind::Swing,
];

fn relator_soundness() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for n in 3..=7 {
        for kind in SIX {
            let p = build(kind, n).map_err(|e| e.to_string())?;
            let r = verify_presentation(&p, jobs());
            total += r.relators;
            check(r.all_passed(), || {
                format!("{} n={n}: {} failures", r.name, r.failed)
            })?;
        }
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(120), || {
        format!("took {took:.1?}")
    })?;
    Ok(format!("{total} relators, 0 failures, {took:.1?}"))
}

fn abelianization() -> Outcome {
    for n in 3..=6 {
        let pairs = n * (n - 1) / 2;
        for kind in PresentationKind::ALL {
            let want = match kind {
                PresentationKind::Rotation | PresentationKind::Bkl => 1,
                PresentationKind::BoundarySwing => pairs + n,
                _ => pairs,
            };
            let inv = abelianize(&build(kind, n).map_err(|e| e.to_string())?);
            check(inv.free_rank == want && inv.is_free(), || {
                format!("{} n={n}: got {inv}, want Z^{want}", kind.name())
            })?;
        }
    }
    Ok("all seven presentations, n=3..6".into())
}

fn derivation_replay() -> Outcome {
    let mut count = 0;
    for n in [4, 5] {
        for name in BUNDLED {
            let scripts = bundled_scripts(name, n).map_err(|e| e.to_string())?;
            check(!scripts.is_empty(), || format!("{name} n={n}: no bindings"))?;
            for s in &scripts {
                let r = check_script(s, CheckLevel::EveryStep);
                check(r.passed && r.every_step_checked, || r.summary())?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} scripts, every step checked"))
}

fn centrality() -> Outcome {
    for n in 3..=7 {
        let oracle = Oracle::new(n);
        let disc = ConvexDisc::new(n).unwrap();
        let full = gen(Generator::swing(disc.full()).unwrap());
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                let u = central_witness(i, j, n).map_err(|e| e.to_string())?;
                let sij = gen(Generator::swing(set(n, &[i, j])).unwrap());
                let ok = oracle.equal(&(&sij * &u), &full).unwrap()
                    && oracle.equal(&(&u * &sij), &full).unwrap();
                check(ok, || format!("n={n} ({i},{j}): {u}"))?;
            }
        }
        let subsets = disc.nonempty_subsets();
        check(subsets.len() == (1 << n) - 1, || "swing count".into())?;
        for b in subsets {
            let g = gen(Generator::swing(b).unwrap());
            check(oracle.equal(&(&full * &g), &(&g * &full)).unwrap(), || {
                format!("n={n}: S_A does not commute with S{b}")
            })?;
        }
    }
    Ok("n=3..7".into())
}

fn twists_and_braids() -> Outcome {
    let n = 6;
    let t = gen(Generator::twist(set(n, &[1, 2, 3]), set(n, &[5, 6])).unwrap());
    let bands = [(1, 2), (1, 3), (2, 3)].map(|(i, j)| gen(Generator::band(i, j).unwrap()));
    let oracle = Oracle::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..100 {
        let u = Word::product(
            &(0..rng.gen_range(1..=16))
                .map(|_| bands[rng.gen_range(0..3)].pow(if rng.gen() { 1 } else { -1 }))
                .collect::<Vec<_>>(),
        );
        let ok = oracle
            .equal(&expand_full(&(&t * &u)), &expand_full(&(&u * &t)))
            .unwrap();
        check(ok, || format!("word {k}: {u}"))?;
    }
    Ok("100 random words".into())
}

fn conversions() -> Outcome {
    let n = 6;
    let disc = ConvexDisc::new(n).unwrap();
    let oracle = Oracle::new(n);
    let mut count = 0;
    for b in disc.nonempty_subsets().into_iter().filter(|b| b.len() <= 5) {
        let s = gen(Generator::swing(b).unwrap());
        let t = swing_as_twists(b).map_err(|e| e.to_string())?;
        check(oracle.equal(&t, &s).unwrap(), || format!("S{b} vs {t}"))?;
        let back = Word::product(
            &t.letters()
                .iter()
                .map(|l| match l.gen {
                    Generator::Twist(x, y) => twist_to_swings(x, y).unwrap().pow(l.sign()),
                    other => gen(other).pow(l.sign()),
                })
                .collect::<Vec<_>>(),
        );
        let want = if b.len() == 1 {
            Word::empty()
        } else {
            s.clone()
        };
        check(back == want, || format!("S{b}: round trip gave {back}"))?;
        count += 1;
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let t = gen(Generator::twist(set(n, &[i]), set(n, &[j])).unwrap());
            let s = gen(Generator::swing(set(n, &[i, j])).unwrap());
            check(oracle.equal(&t, &s).unwrap(), || {
                format!("T({i},{j}) vs S({i},{j})")
            })?;
        }
    }
    Ok(format!("{count} swings, {} pairs", n * (n - 1) / 2))
}

fn purity_and_permutations() -> Outcome {
    let mut count = 0;
    for n in 1..=7 {
        let disc = ConvexDisc::new(n).unwrap();
        for b in disc.nonempty_subsets() {
            check(
                is_pure(&gen(Generator::swing(b).unwrap()), n).unwrap(),
                || format!("S{b} not pure"),
            )?;
            count += 1;
            if b.len() >= 2 {
                let order = canonical_admissible_order(b).unwrap();
                let p = permutation_of(&gen(Generator::rotation(b).unwrap()), n).unwrap();
                for k in 1..=n {
                    let want = order
                        .iter()
                        .position(|&x| x == k)
                        .map_or(k, |t| order[(t + 1) % order.len()]);
                    check(p.image(k) == want, || {
                        format!("R{b} sends {k} to {}", p.image(k))
                    })?;
                }
                count += 1;
            }
        }
        for t in twist_generators(disc) {
            check(is_pure(&gen(t), n).unwrap(), || format!("{t} not pure"))?;
            count += 1;
        }
    }
    Ok(format!("{count} generators, n<=7"))
}

fn combinatorial_fixtures() -> Outcome {
    let s = |xs: &[usize]| set(8, xs);
    let e = |r: convex_braids::Result<bool>| r.map_err(|e| e.to_string());
    check(e(crossing(s(&[1, 2, 3, 5]), s(&[4, 7, 8])))?, || {
        "crossing example".into()
    })?;
    check(!e(crossing(s(&[1, 2, 3, 4, 8]), s(&[5, 6, 7])))?, || {
        "non-crossing example".into()
    })?;
    check(
        e(non_crossing_family(&[
            s(&[1, 2, 3]),
            s(&[4, 7, 8]),
            s(&[5, 6]),
        ]))?,
        || "non-crossing family".into(),
    )?;
    check(
        !e(non_crossing_family(&[s(&[1, 2, 3, 5]), s(&[4, 7, 8])]))?,
        || "crossing family".into(),
    )?;
    let (b, c, d) = (s(&[2, 3, 4]), s(&[5, 6]), s(&[7, 8, 1]));
    check(e(admissible(&[b, c, d]))?, || "(B,C,D) admissible".into())?;
    check(e(admissible(&[c, d, b]))?, || "(C,D,B) admissible".into())?;
    check(!e(admissible(&[c, b, d]))?, || {
        "(C,B,D) not admissible".into()
    })?;
    let three = [s(&[1, 2, 3]), s(&[4, 7, 8]), s(&[5, 6])];
    for p in [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ] {
        let seq = p.map(|k| three[k]);
        check(!e(admissible(&seq))?, || {
            format!("{seq:?} should not be admissible")
        })?;
    }
    check(
        e(nested(
            (s(&[7, 8, 1, 2, 3]), s(&[4, 5, 6])),
            (s(&[7, 1]), s(&[2, 3])),
        ))?,
        || "nested example".into(),
    )?;
    let f = |xs: &[usize]| set(4, xs);
    check(
        e(nested((f(&[1, 2]), f(&[3, 4])), (f(&[1]), f(&[2]))))?,
        || "D∪E = B".into(),
    )?;
    check(!e(nested((f(&[1]), f(&[2])), (f(&[3]), f(&[4]))))?, || {
        "disjoint pairs".into()
    })?;
    check(!e(compatible(s(&[1, 2, 3, 5]), s(&[4, 7, 8])))?, || {
        "compatible crossing".into()
    })?;
    check(e(compatible(s(&[1, 2, 3, 4, 8]), s(&[5, 6, 7])))?, || {
        "compatible disjoint".into()
    })?;
    check(e(compatible(s(&[1, 2]), s(&[1, 2, 3])))?, || {
        "compatible nested".into()
    })?;
    Ok("crossing, admissible and nested examples".into())
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_convex-braids");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let code =
        |args: &[&str]| -> Result<i32, String> { Ok(run(args)?.status.code().unwrap_or(-1)) };
    let cases: [(&[&str], i32); 9] = [
        (&["verify", "--kind", "swing", "--n", "4"], 0),
        (&["verify", "--kind", "swing", "--n", "1"], 2),
        (&["equal", "--n", "3", "s1 s2 s1", "s2 s1 s2"], 0),
        (&["equal", "--n", "3", "s1", "s2"], 1),
        (&["equal", "--n", "3", "s1 (", "s2"], 2),
        (&["expand", "--n", "3", "S{1,2,3}"], 0),
        (&["abelianize", "--kind", "twist", "--n", "4"], 0),
        (&["witness", "--n", "4", "1", "3"], 0),
        (&["derive", "--script", "artin-3rd-from-(3)", "--n", "4"], 0),
    ];
    for (args, want) in cases {
        let got = code(args)?;
        check(got == want, || format!("{args:?}: exit {got}, want {want}"))?;
    }

    let disc = ConvexDisc::new(5).unwrap();
    for kind in PresentationKind::ALL {
        let flag = kind.name().replace('_', "-");
        let out = run(&["present", "--kind", &flag, "--n", "5"])?;
        let text = String::from_utf8_lossy(&out.stdout);
        let rels: Result<Vec<Word>, _> = text
            .lines()
            .skip_while(|l| *l != "rels:")
            .skip(1)
            .map(|l| parse(l, disc))
            .collect();
        let rels = rels.map_err(|e| e.to_string())?;
        let p = build(kind, 5).unwrap();
        check(rels.iter().eq(p.relator_words()), || {
            format!("{flag}: export differs")
        })?;
    }

    let dir = std::env::temp_dir().join(format!("convex-braids-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut svgs = Vec::new();
    for k in 0..2 {
        let path = dir.join(format!("d{k}.svg"));
        let p = path.to_str().unwrap();
        check(
            code(&[
                "diagram",
                "--n",
                "8",
                "--sets",
                "{1,2,3,5} {4,7,8}",
                "--out",
                p,
            ])? == 0,
            || "diagram exit".into(),
        )?;
        svgs.push(fs::read(&path).map_err(|e| e.to_string())?);
    }
    let _ = fs::remove_dir_all(&dir);
    check(svgs[0] == svgs[1], || "SVG differs between runs".into())?;
    Ok("exit codes, export round trip, deterministic SVG".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("relator soundness", relator_soundness),
        ("abelianization", abelianization),
        ("derivation replay", derivation_replay),
        ("centrality", centrality),
        ("twists and braids", twists_and_braids),
        ("conversion consistency", conversions),
        ("purity and permutations", purity_and_permutations),
        ("combinatorial fixtures", combinatorial_fixtures),
        ("cli contract", cli_contract),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
