//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbonlab::generate::stabilized;
use ribbonlab_core::generate::{random_applicable_move, random_connected, random_stable_walk};
use ribbonlab_core::moves::apply_script;
use ribbonlab_core::quandle::{alexander_polynomial, check_quandle_axioms, count_colorings};
use ribbonlab_core::search::{
    certify, macro_clone_handle, search_equiv, unknotting_drill, Refutation, SearchConfig,
};
use ribbonlab_core::{FiniteQuandle, LaurentPoly, Move, RibbonData, SearchOutcome, Sign};

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Colorings by direct enumeration of all `m^|B|` assignments.
fn brute_force_colorings(data: &RibbonData, q: &FiniteQuandle) -> u64 {
    let m = q.size() as u32;
    let n = data.base_count;
    let inverse = |x: u32, y: u32| (1..=m).find(|&z| q.star(z, y) == x).expect("bijective");
    let mut colors = vec![1u32; n];
    let mut count = 0;
    loop {
        let ok = data.handles.iter().all(|h| {
            let mut x = colors[h.start - 1];
            for l in &h.word {
                let y = colors[l.base - 1];
                x = match l.sign {
                    Sign::Neg => q.star(x, y),
                    Sign::Pos => inverse(x, y),
                };
            }
            x == colors[h.end - 1]
        });
        count += u64::from(ok);
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            colors[i] += 1;
            if colors[i] <= m {
                break;
            }
            colors[i] = 1;
            i += 1;
        }
    }
}

fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms).unwrap()
}

fn criterion_1() -> Check {
    let mut checked = 0;
    for m in 2..=12 {
        let q = FiniteQuandle::dihedral(m).map_err(|e| e.to_string())?;
        let v = check_quandle_axioms(&q);
        ensure(v.is_empty(), || {
            format!("dihedral:{m}: {} violations", v.len())
        })?;
        checked += 1;
    }
    for m in 1..=12 {
        let q = FiniteQuandle::trivial(m).map_err(|e| e.to_string())?;
        let v = check_quandle_axioms(&q);
        ensure(v.is_empty(), || {
            format!("trivial:{m}: {} violations", v.len())
        })?;
        checked += 1;
    }
    Ok(format!("{checked} quandles, 0 violations"))
}

fn criterion_2() -> Check {
    let r3 = FiniteQuandle::dihedral(3).unwrap();
    let r5 = FiniteQuandle::dihedral(5).unwrap();
    let t = RibbonData::spun_trefoil();
    let u = RibbonData::unknot();
    let expected = [(&t, &r3, 9), (&t, &r5, 5), (&u, &r3, 3), (&u, &r5, 5)];
    for (d, q, want) in expected {
        let oracle = brute_force_colorings(d, q);
        ensure(oracle == want, || {
            format!("oracle gives {oracle} for {}, expected {want}", q.id())
        })?;
        let got = count_colorings(d, q).map_err(|e| e.to_string())?;
        ensure(got == want, || {
            format!("{} colorings: got {got}, expected {want}", q.id())
        })?;
    }
    let at = alexander_polynomial(&t).map_err(|e| e.to_string())?;
    ensure(at == poly(&[(2, 1), (1, -1), (0, 1)]), || {
        format!("trefoil polynomial {at}")
    })?;
    let au = alexander_polynomial(&u).map_err(|e| e.to_string())?;
    ensure(au == LaurentPoly::one(), || {
        format!("unknot polynomial {au}")
    })?;
    Ok(format!(
        "trefoil 9/5, unknot 3/5, alexander `{at}` and `{au}`"
    ))
}

fn criterion_3() -> Check {
    let quandles = [
        FiniteQuandle::dihedral(3).unwrap(),
        FiniteQuandle::dihedral(5).unwrap(),
        FiniteQuandle::dihedral(7).unwrap(),
        FiniteQuandle::trivial(2).unwrap(),
    ];
    let counts = |d: &RibbonData| -> Result<Vec<u64>, String> {
        quandles
            .iter()
            .map(|q| count_colorings(d, q).map_err(|e| e.to_string()))
            .collect()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut moves = 0;
    let mut kinds = std::collections::HashSet::new();
    while moves < 1200 {
        let bases = rng.gen_range(1..=5);
        let handles = rng.gen_range(bases - 1..=bases + 1);
        let mut d = random_connected(&mut rng, bases, handles, 8);
        let c0 = counts(&d)?;
        let a0 = alexander_polynomial(&d).map_err(|e| e.to_string())?;
        for _ in 0..6 {
            let mv = random_applicable_move(&mut rng, &d);
            let e = mv.apply(&d).map_err(|err| format!("{mv}: {err}"))?;
            if e.base_count > 5 || e.handles.iter().any(|h| h.word.len() > 8) {
                continue;
            }
            let dg = e.handles.len() as i64
                - e.base_count as i64
                - (d.handles.len() as i64 - d.base_count as i64);
            let want = match mv {
                Move::TrivialHandle { .. } => 1,
                Move::RemoveTrivialHandle { .. } => -1,
                _ => 0,
            };
            ensure(dg == want, || format!("{mv} changed |H|-|B| by {dg}"))?;
            ensure(counts(&e)? == c0, || {
                format!("{mv} changed coloring counts")
            })?;
            let a = alexander_polynomial(&e).map_err(|err| err.to_string())?;
            ensure(a == a0, || format!("{mv} changed the Alexander polynomial"))?;
            kinds.insert(std::mem::discriminant(&mv));
            moves += 1;
            d = e;
        }
    }
    ensure(kinds.len() == 9, || {
        format!("only {} move types exercised", kinds.len())
    })?;
    Ok(format!("{moves} moves, all 9 move types, invariants exact"))
}

fn criterion_4() -> Check {
    let quandles: Vec<FiniteQuandle> = (3..=7)
        .map(|m| FiniteQuandle::dihedral(m).unwrap())
        .chain((1..=3).map(|m| FiniteQuandle::trivial(m).unwrap()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut instances = 0;
    for _ in 0..150 {
        let bases = rng.gen_range(1..=7);
        let handles = rng.gen_range(bases - 1..=bases + 2);
        let d = random_connected(&mut rng, bases, handles, 5);
        for q in &quandles {
            if (q.size() as f64).powi(bases as i32) > 1e6 {
                continue;
            }
            let fast = count_colorings(&d, q).map_err(|e| e.to_string())?;
            let slow = brute_force_colorings(&d, q);
            ensure(fast == slow, || {
                format!("{}: {fast} != {slow} on {d:?}", q.id())
            })?;
            instances += 1;
        }
    }
    Ok(format!("{instances} instances match full enumeration"))
}

fn run_search(
    a: &RibbonData,
    b: &RibbonData,
    depth: usize,
    weak: usize,
) -> Result<SearchOutcome, String> {
    let config = SearchConfig {
        depth,
        weak_budget: weak,
        state_cap: 500_000,
    };
    search_equiv(a, b, config).map_err(|e| e.to_string())
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut max_depth = 0;
    for (label, weak_of) in [("stable", 0usize), ("weak", 3)] {
        for i in 0..100 {
            let bases = rng.gen_range(1..=3);
            let d = random_connected(&mut rng, bases, bases, 2);
            let len = rng.gen_range(1..=6);
            let w = if weak_of == 0 { 0 } else { i % weak_of };
            let (e, script) = random_stable_walk(&mut rng, &d, len, w);
            ensure(apply_script(&d, &script).ok() == Some(e.clone()), || {
                "walk does not replay".into()
            })?;
            let w = script.weak_moves();
            let out = run_search(&d, &e, 8, w)?;
            let SearchOutcome::Equivalent(cert) = &out else {
                return Err(format!("{label} pair {i}: {out:?}"));
            };
            max_depth = max_depth.max(cert.depth);
            ensure(certify(&d, &e, &out), || {
                format!("{label} pair {i}: certificate rejected")
            })?;
        }
    }
    Ok(format!(
        "200 pairs equivalent and certified, deepest meeting {max_depth}"
    ))
}

fn criterion_6() -> Check {
    let mut drills = 0;
    for k in 2..=4 {
        for seed in 0..5 {
            let (d, _) = stabilized(k - 1, seed);
            ensure(d.base_count == k, || "unexpected base count".into())?;
            let out = unknotting_drill(&d, k - 1).map_err(|e| e.to_string())?;
            ensure(certify(&d, &RibbonData::unknot(), &out), || {
                format!("drill k={k} seed={seed}: {out:?}")
            })?;
            drills += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sources = vec![RibbonData::spun_trefoil(), stabilized(2, 1).0];
    for _ in 0..6 {
        let bases = rng.gen_range(1..=3);
        sources.push(random_connected(&mut rng, bases, bases, 2));
    }
    let mut worst = (0, 0);
    for d in &sources {
        let mut cloned = d.clone();
        for template in &d.handles {
            cloned = macro_clone_handle(&cloned, template)
                .map_err(|e| e.to_string())?
                .0;
        }
        let bound = 2 * d.base_count + d.handles.len();
        let budget = d.handles.len();
        ensure(budget <= bound, || "budget above bound".into())?;
        let out = run_search(d, &cloned, 2 * d.handles.len() + 2, budget)?;
        let SearchOutcome::Equivalent(cert) = &out else {
            return Err(format!("clone pair of {d:?}: {out:?}"));
        };
        ensure(certify(d, &cloned, &out), || {
            "clone certificate rejected".into()
        })?;
        let used = cert.weak_used_a.max(cert.weak_used_b);
        ensure(used <= bound, || format!("used {used} > {bound}"))?;
        worst = worst.max((used, bound));
    }
    Ok(format!(
        "{drills} drills with budget k-1, {} clone pairs (max weak used {} within bound {})",
        sources.len(),
        worst.0,
        worst.1
    ))
}

fn criterion_7() -> Check {
    let out = run_search(&RibbonData::spun_trefoil(), &RibbonData::unknot(), 8, 2)?;
    match out {
        SearchOutcome::Refuted(Refutation::Coloring {
            quandle,
            count_a: 9,
            count_b: 3,
        }) if quandle == "dihedral:3" => Ok("refuted by dihedral:3 (9 vs 3)".into()),
        other => Err(format!("{other:?}")),
    }
}

fn cli(args: &[&str]) -> Result<(Option<i32>, Vec<u8>), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_ribbonlab"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((o.status.code(), o.stdout))
}

fn criterion_8() -> Check {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let specs = [
        ("unknot", "u.rib"),
        ("spun-trefoil", "t.rib"),
        ("stabilized:3:7", "s.rib"),
        ("torus:2", "g.rib"),
        ("random:3:4:3:11", "r.rib"),
    ];
    let mut runs: Vec<Vec<String>> = Vec::new();
    for (spec, file) in specs {
        runs.push(vec!["gen".into(), spec.into()]);
        let (code, out) = cli(&["gen", spec])?;
        ensure(code == Some(0), || format!("gen {spec} failed"))?;
        fs::write(Path::new(&path(file)), out).map_err(|e| e.to_string())?;
    }
    fs::write(path("x.moves"), "stab 1\nslide 4 start 1 fwd\n").map_err(|e| e.to_string())?;
    let (u, t, s, g, r) = (
        path("u.rib"),
        path("t.rib"),
        path("s.rib"),
        path("g.rib"),
        path("r.rib"),
    );
    let owned = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    runs.extend([
        owned(&["validate", &s]),
        owned(&["canon", &r]),
        owned(&["genus", &g]),
        owned(&["quandle", &t]),
        owned(&["quandle", &t, "--group"]),
        owned(&["color", &t, "--quandle", "dihedral:3"]),
        owned(&["color", &t, "--quandle", "dihedral:5", "--list"]),
        owned(&["alex", &t]),
        owned(&["apply", &s, "--script", &path("x.moves")]),
        owned(&["search", &t, &u, "--depth", "8", "--weak", "2"]),
        owned(&[
            "search",
            &s,
            &u,
            "--depth",
            "8",
            "--weak",
            "0",
            "--threads",
            "4",
        ]),
        owned(&[
            "search",
            &s,
            &u,
            "--depth",
            "8",
            "--weak",
            "1",
            "--threads",
            "4",
        ]),
        owned(&[
            "search",
            &r,
            &s,
            "--depth",
            "3",
            "--weak",
            "1",
            "--threads",
            "4",
        ]),
    ]);
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = cli(&args)?;
        let second = cli(&args)?;
        ensure(first == second, || {
            format!("`{}` differs between runs", args.join(" "))
        })?;
        if args[0] == "search" {
            let mut single: Vec<&str> = args.clone();
            if let Some(i) = single.iter().position(|a| *a == "--threads") {
                single.drain(i..i + 2);
            }
            ensure(cli(&single)? == first, || {
                format!("`{}` depends on thread count", args.join(" "))
            })?;
        }
    }
    Ok(format!(
        "{} invocations byte-identical, threads 1 vs 4 identical",
        runs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 quandle axioms", Duration::from_secs(1), criterion_1),
        ("2 known values", Duration::from_secs(1), criterion_2),
        ("3 move invariance", Duration::from_secs(120), criterion_3),
        (
            "4 brute-force oracle",
            Duration::from_secs(120),
            criterion_4,
        ),
        ("5 search roundtrip", Duration::from_secs(300), criterion_5),
        (
            "6 weak-budget demonstrations",
            Duration::from_secs(300),
            criterion_6,
        ),
        ("7 refutation", Duration::from_secs(1), criterion_7),
        ("8 determinism", Duration::from_secs(300), criterion_8),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("[PASS] {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
