//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed or ran over its time budget.

use std::process::Command;
use std::time::{Duration, Instant};

use pooldesign_core::combinat::binomial;
use pooldesign_core::construct::{
    builtin_c4, builtin_eq8, concatenate, concatenated_length, concatenated_reed_solomon,
    dedupe_rows, external_length, identity_code, reed_solomon, trivial_code,
};
use pooldesign_core::decode::{
    acceptable_witness, decode_disjunct, decode_inhibitor, decode_inhibitor_with, decode_superset,
    InhibitorSearch,
};
use pooldesign_core::models::{
    enumerate_complexes, enumerate_defective_sets, enumerate_pi, result_disjunct, result_inhibitor,
    result_superset,
};
use pooldesign_core::simulate::random_inhibitor_instance;
use pooldesign_core::verify::{
    is_inhibitory_code, is_mds, is_separating, is_superimposed, is_superimposed_sl,
    mds_separation_applies, min_distance, oracle_disjunct_design, oracle_inhibitory_design,
    oracle_superset_design, spot_check_sl,
};
use pooldesign_core::{BinaryCode, BitVector, Complex, Mode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn code14() -> BinaryCode {
    let inner = trivial_code(4, 2, 2).unwrap();
    dedupe_rows(&concatenate(&builtin_c4(), &inner).unwrap())
}

fn eq8_superimposed() -> Outcome {
    let x = builtin_eq8();
    let report = ok(is_superimposed(&x, 2))?;
    ensure(
        report.holds && report.mode == Mode::Exhaustive,
        report.verdict(),
    )?;
    ensure(x.num_rows() == 9 && x.num_cols() == 12, "eq8 is not 9x12")?;
    ensure(x.num_rows() < x.num_cols(), "N >= t")?;
    // 79 sets of size <= 2 times 12 columns; each (S, u) pair counted once.
    let expected = 12 * binomial(11, 2);
    ensure(
        report.pairs_checked == expected,
        format!("checked {} pairs", report.pairs_checked),
    )?;
    Ok(format!("N=9 < t=12, {} pairs", report.pairs_checked))
}

fn eq8_inhibitory() -> Outcome {
    let x = builtin_eq8();
    let code = ok(is_inhibitory_code(&x, 1, 1))?;
    ensure(code.holds, code.verdict())?;
    let design = ok(oracle_inhibitory_design(&x, 1, 1))?;
    ensure(
        design.holds && design.pairs_checked == 144,
        format!("{} over {}", design.verdict(), design.pairs_checked),
    )?;
    let mut n = 0;
    for inst in ok(enumerate_pi(12, 1, 1))? {
        let r = ok(result_inhibitor(&x, &inst))?;
        let d = ok(decode_inhibitor(&x, &r, 1, 1))?;
        ensure(
            d.members() == inst.defectives(),
            format!("{inst} decoded as {d}"),
        )?;
        n += 1;
    }
    ensure(n == 144, format!("{n} instances"))?;
    Ok("144 instances decoded".into())
}

fn c4_separating() -> Outcome {
    let report = ok(is_separating(&builtin_c4(), 2, 2))?;
    ensure(report.holds, report.verdict())?;
    let expected = binomial(8, 2) * binomial(6, 2);
    ensure(
        report.pairs_checked == expected,
        format!("checked {}", report.pairs_checked),
    )?;
    Ok(format!("{expected} pairs"))
}

fn concatenated_c4() -> Outcome {
    let full = ok(concatenate(&builtin_c4(), &trivial_code(4, 2, 2).unwrap()))?;
    ensure(
        full.num_rows() == 18 && full.num_cols() == 8,
        "concatenation is not 18x8",
    )?;
    let x = dedupe_rows(&full);
    ensure(
        x.num_rows() == 14,
        format!("dedupe gives {} rows", x.num_rows()),
    )?;
    let report = ok(is_superimposed_sl(&x, 2, 2))?;
    ensure(report.holds, report.verdict())?;
    Ok("18x8 -> 14x8, (2,2) holds".into())
}

fn rs_concatenation_table() -> Outcome {
    let t5 = trivial_code(5, 2, 2).unwrap();
    let inner8 = code14();
    let a = ok(concatenated_reed_solomon(2, 2, 1, 5, &t5))?;
    let b = ok(concatenated_reed_solomon(2, 2, 1, 8, &inner8))?;
    let c = ok(concatenated_reed_solomon(2, 2, 2, 8, &inner8))?;
    for (x, t, n) in [(&a, 25, 50), (&b, 64, 70), (&c, 512, 126)] {
        ensure(
            x.num_cols() == t && x.num_rows() == n,
            format!("got {}x{}, want {n}x{t}", x.num_rows(), x.num_cols()),
        )?;
    }
    for x in [&a, &b] {
        let report = ok(is_superimposed_sl(x, 2, 2))?;
        ensure(
            report.holds,
            format!("t={}: {}", x.num_cols(), report.verdict()),
        )?;
    }
    let spot = ok(spot_check_sl(&c, 2, 2, 1_000_000, 0))?;
    ensure(
        spot.holds && spot.pairs_checked == 1_000_000,
        spot.verdict(),
    )?;
    // Length formula for the entries whose base codes are not given.
    for (n1, q, lambda, t, n) in [
        (22usize, 11u64, 1usize, 121u64, 110usize),
        (22, 11, 2, 1331, 198),
        (28, 16, 2, 1 << 12, 252),
        (28, 16, 3, 1 << 16, 364),
        (28, 16, 4, 1 << 20, 476),
    ] {
        ensure(
            q.pow(lambda as u32 + 1) == t,
            format!("size for q={q}, lambda={lambda}"),
        )?;
        ensure(
            concatenated_length(n1, 2, 2, lambda) == n,
            format!("length for N1={n1}, lambda={lambda}"),
        )?;
        ensure(
            q as usize >= 4 * lambda,
            format!("q={q} too small for lambda={lambda}"),
        )?;
    }
    Ok("25x50, 64x70 exhaustive; 512x126 spot 10^6; 5 length-formula rows".into())
}

fn trivial_lengths() -> Outcome {
    let lens = [(4, 6), (5, 10)].map(|(t, n)| (trivial_code(t, 2, 2).unwrap(), t, n));
    for (x, t, n) in &lens {
        ensure(
            x.num_rows() == *n,
            format!("t={t}: length {}", x.num_rows()),
        )?;
        ensure(
            ok(is_superimposed_sl(x, 2, 2))?.holds,
            format!("t={t} fails (2,2)"),
        )?;
    }
    let mut cases = 0;
    for s in 1..=5 {
        for l in 1..=5 {
            let x = ok(trivial_code(s + l, s, l))?;
            ensure(
                x.num_rows() as u64 == binomial((s + l) as u64, l as u64),
                format!("s={s}, l={l}: length {}", x.num_rows()),
            )?;
            let report = ok(is_superimposed_sl(&x, s, l))?;
            ensure(report.holds, format!("s={s}, l={l}: {}", report.verdict()))?;
            cases += 1;
        }
    }
    Ok(format!("t=4 -> 6, t=5 -> 10, {cases} cases t=s+l"))
}

fn reed_solomon_mds() -> Outcome {
    for q in [4u32, 5, 7, 8] {
        let lambda = 1;
        let (code, params) = ok(reed_solomon(q, lambda))?;
        let d = ok(min_distance(&code))?;
        ensure(d == q as usize + 1 - lambda, format!("q={q}: distance {d}"))?;
        ensure(params.d == d, format!("q={q}: params say {}", params.d))?;
        let mds = ok(is_mds(&code, lambda + 1))?;
        ensure(mds.holds, format!("q={q}: {}", mds.verdict()))?;
        let n = external_length(2, 2, lambda);
        ensure(
            mds_separation_applies(q as u64, (lambda + 1) as u32, n as u64, 2, 2),
            format!("q={q}: separation condition not met"),
        )?;
        let sep = ok(is_separating(&ok(code.take_rows(n))?, 2, 2))?;
        ensure(sep.holds, format!("q={q}: {}", sep.verdict()))?;
    }
    Ok("q in {4,5,7,8}: d=q, MDS, first 5 rows separating".into())
}

fn decoding_round_trips() -> Outcome {
    let eq8 = builtin_eq8();
    let mut disjunct = 0;
    for p in ok(enumerate_defective_sets(12, 2))? {
        let d = ok(decode_disjunct(&eq8, &ok(result_disjunct(&eq8, &p))?, 2))?;
        ensure(d == p, format!("{p} decoded as {d}"))?;
        disjunct += 1;
    }
    ensure(disjunct == 79, format!("{disjunct} defective sets"))?;

    let x = code14();
    let mut superset = 0;
    for c in ok(enumerate_complexes(8, 2, 2))? {
        let d = ok(decode_superset(&x, &ok(result_superset(&x, &c))?, 2, 2))?;
        ensure(d == c, format!("{c} decoded as {d}"))?;
        superset += 1;
    }

    let id = identity_code(6).unwrap();
    let mut inhibitor = 0;
    for inst in ok(enumerate_pi(6, 2, 1))? {
        let d = ok(decode_inhibitor(
            &id,
            &ok(result_inhibitor(&id, &inst))?,
            2,
            1,
        ))?;
        ensure(
            d.members() == inst.defectives(),
            format!("{inst} decoded as {d}"),
        )?;
        inhibitor += 1;
    }
    Ok(format!(
        "{disjunct} disjunct, {superset} superset, {inhibitor} inhibitor, 0 failures"
    ))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> BinaryCode {
    BinaryCode::from_fn(rows, cols, |_, _| rng.random_bool(density))
}

/// Distinct random columns of weight `w`.
fn constant_weight_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, w: usize) -> BinaryCode {
    let mut columns: Vec<BitVector> = Vec::with_capacity(cols);
    while columns.len() < cols {
        let support = rand::seq::index::sample(rng, rows, w).into_vec();
        let column = BitVector::from_indices(rows, support).unwrap();
        if !columns.contains(&column) {
            columns.push(column);
        }
    }
    BinaryCode::from_columns(columns).unwrap()
}

fn property_based() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nonvacuous = [0u32; 3];
    let matrices = 240;
    for m in 0..matrices {
        // Even draws: i.i.d. entries. Odd draws: constant column weight, which
        // passes the checkers often enough to make the implications bite.
        let x = if m % 2 == 0 {
            random_matrix(&mut rng, 8, 10, 0.2 + 0.6 * (m % 7) as f64 / 6.0)
        } else {
            constant_weight_matrix(&mut rng, 8, 10, 3 + m % 3)
        };
        for s in 1..=2 {
            if ok(is_superimposed(&x, s))?.holds {
                nonvacuous[0] += 1;
                ensure(
                    ok(oracle_disjunct_design(&x, s))?.holds,
                    format!("disjunct s={s} on\n{}", x.to_text()),
                )?;
            }
            for l in 1..=2 {
                if ok(is_superimposed_sl(&x, s, l))?.holds {
                    nonvacuous[1] += 1;
                    let design = ok(oracle_superset_design(&x, s, l))?;
                    ensure(
                        design.holds,
                        format!("superset s={s}, l={l} on\n{}", x.to_text()),
                    )?;
                }
            }
            for iota in 1..=2 {
                if ok(is_inhibitory_code(&x, s, iota))?.holds {
                    nonvacuous[2] += 1;
                    let design = ok(oracle_inhibitory_design(&x, s, iota))?;
                    ensure(
                        design.holds,
                        format!("inhibitor s={s}, iota={iota} on\n{}", x.to_text()),
                    )?;
                }
            }
        }
        // Every one of the 256 result vectors, s = 1 and 2.
        for bits in 0u32..256 {
            let r = BitVector::from_fn(8, |n| bits >> n & 1 == 1);
            for s in 1..=2 {
                let d = ok(decode_disjunct(&x, &r, s))?;
                let c = ok(decode_superset(&x, &r, s, 1))?;
                ensure(
                    c == Complex::singletons(&d),
                    format!("l=1 mismatch for r={r}"),
                )?;
            }
        }
    }
    ensure(
        nonvacuous[..2].iter().all(|&n| n > 0),
        format!("vacuous implication: {nonvacuous:?}"),
    )?;

    // Pruned and exhaustive acceptability on valid instances.
    let mut instances = 0;
    let mut codes = 0;
    let mut attempts = 0;
    while instances < 1200 {
        attempts += 1;
        ensure(attempts < 200_000, "could not find enough inhibitory codes")?;
        let (s, iota) = [(1, 1), (1, 2), (2, 1)][codes % 3];
        let t = rng.random_range(s + iota + 1..=7);
        let x = random_matrix(&mut rng, 8, t, 0.35);
        if !ok(is_inhibitory_code(&x, s, iota))?.holds {
            continue;
        }
        codes += 1;
        let design = ok(oracle_inhibitory_design(&x, s, iota))?;
        ensure(
            design.holds,
            format!("inhibitor s={s}, iota={iota} on\n{}", x.to_text()),
        )?;
        for _ in 0..24 {
            let inst = random_inhibitor_instance(&mut rng, t, s, iota);
            let r = ok(result_inhibitor(&x, &inst))?;
            for u in 0..t {
                let pruned =
                    ok(acceptable_witness(&x, &r, u, iota, InhibitorSearch::Pruned))?.is_some();
                let full = ok(acceptable_witness(
                    &x,
                    &r,
                    u,
                    iota,
                    InhibitorSearch::Exhaustive,
                ))?
                .is_some();
                ensure(
                    pruned == full,
                    format!("{inst}, u={}: pruned {pruned}, exhaustive {full}", u + 1),
                )?;
            }
            let d = ok(decode_inhibitor_with(
                &x,
                &r,
                s,
                iota,
                InhibitorSearch::Exhaustive,
            ))?;
            ensure(
                d.members() == inst.defectives(),
                format!("{inst} decoded as {d}"),
            )?;
            instances += 1;
        }
    }
    Ok(format!(
        "{matrices} matrices, non-vacuous implications {nonvacuous:?}, {instances} inhibitor instances on {codes} inhibitory codes"
    ))
}

fn cli_runs(args: &[&str], threads: &str) -> Result<(Option<i32>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pooldesign"))
        .arg("--threads")
        .arg(threads)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code(), out.stdout))
}

fn cli_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("pooldesign-acceptance-{}", std::process::id()));
    ok(std::fs::create_dir_all(&dir))?;
    let noisy = dir.join("noisy");
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    ok(std::fs::write(
        &noisy,
        random_matrix(&mut rng, 10, 14, 0.4).to_text(),
    ))?;
    let noisy = noisy.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "simulate", "disjunct", "--s", "2", "--code", "eq8", "--trials", "5000", "--seed", "7",
        ],
        vec![
            "simulate", "superset", "--s", "2", "--l", "2", "--code", noisy, "--trials", "5000",
            "--seed", "7",
        ],
        vec![
            "simulate",
            "inhibitor",
            "--s",
            "1",
            "--i",
            "1",
            "--code",
            noisy,
            "--trials",
            "5000",
            "--seed",
            "7",
        ],
        vec![
            "verify", "spot", "--s", "2", "--l", "2", "--code", noisy, "--trials", "200000",
            "--seed", "3", "--detail",
        ],
        vec![
            "verify", "sl", "--s", "2", "--l", "2", "--code", noisy, "--detail",
        ],
        vec![
            "verify",
            "superimposed",
            "--s",
            "3",
            "--code",
            "eq8",
            "--detail",
        ],
        vec![
            "verify",
            "design-inhibitor",
            "--s",
            "1",
            "--i",
            "1",
            "--code",
            "eq8",
            "--detail",
        ],
        vec!["construct", "rs", "--q", "8", "--lambda", "2"],
    ];
    for args in &commands {
        let base = cli_runs(args, "1")?;
        for threads in ["4", "8"] {
            let other = cli_runs(args, threads)?;
            ensure(
                other == base,
                format!("{args:?} differs with --threads {threads}"),
            )?;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "{} commands, byte-identical for 1/4/8 threads",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "eq8 superimposed 2-code",
            eq8_superimposed,
            Duration::from_secs(1),
        ),
        (
            "eq8 inhibitory (1,1) and decoding",
            eq8_inhibitory,
            Duration::from_secs(1),
        ),
        ("c4 separating (2,2)", c4_separating, Duration::from_secs(1)),
        (
            "c4 x trivial(4,2,2) gives 14x8",
            concatenated_c4,
            Duration::from_secs(1),
        ),
        (
            "Reed-Solomon concatenation table",
            rs_concatenation_table,
            Duration::from_secs(660),
        ),
        (
            "trivial code lengths",
            trivial_lengths,
            Duration::from_secs(1),
        ),
        (
            "Reed-Solomon distance and separation",
            reed_solomon_mds,
            Duration::from_secs(60),
        ),
        (
            "exhaustive decoding round trips",
            decoding_round_trips,
            Duration::from_secs(60),
        ),
        (
            "random-matrix properties",
            property_based,
            Duration::from_secs(300),
        ),
        (
            "CLI determinism across threads",
            cli_determinism,
            Duration::from_secs(300),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, note) = match outcome {
            Ok(note) if elapsed <= *budget => ("PASS", note),
            Ok(note) => ("FAIL", format!("{note}; over budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} {name} [{:.3}s] {note}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
