//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use lamplighter::an_ring::{big_seq, Fault};
use lamplighter::cayley::{self, Exec, Format};
use lamplighter::group::Word;
use lamplighter::lamp2::{self, Configuration};
use lamplighter::trees::{phi, phi_inv, TreeAddress};
use lamplighter::{AnContext, Basis, Error, GammaGroup, HeightVector, Letter, PresentationId, RingSpec};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type BoardKey = (Vec<((i64, i64), BigInt)>, (i64, i64));
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring_z() -> RingSpec {
    RingSpec::Integers
}

fn zm(m: u64) -> RingSpec {
    RingSpec::modulo(m)
}

/// The configurations of the isomorphism check: (n, R, radius, coefficient bound).
fn iso_configs() -> Vec<(usize, RingSpec, u32, u64)> {
    vec![
        (1, zm(2), 4, 0),
        (1, zm(3), 3, 0),
        (2, zm(2), 3, 0),
        (2, zm(3), 2, 0),
        (3, zm(5), 2, 0),
        (1, ring_z(), 3, 2),
        (2, ring_z(), 2, 2),
    ]
}

fn rank_one_golden() -> Outcome {
    let gr = GammaGroup::new(1, zm(2)).map_err(|e| e.to_string())?;
    let spellings = [
        "t^-4 a t^4 a t a t^2 a t^2",
        "a t^-1 a t^4 a t^-7 a t^3 a t^2 a t^4",
    ];
    let ctx = *gr.ctx();
    let one = BigInt::from(1);
    let expected_f = ctx
        .from_terms([-4, 0, 1, 3].map(|j| (Basis::Power(j), one.clone())))
        .map_err(|e| e.to_string())?;
    let words: Vec<Word> = spellings.iter().map(|s| s.parse().unwrap()).collect();
    let mut best = Duration::MAX;
    for _ in 0..20 {
        let start = Instant::now();
        let values: Vec<_> = words.iter().map(|w| gr.eval_word(w).unwrap()).collect();
        best = best.min(start.elapsed());
        for (s, g) in spellings.iter().zip(&values) {
            ensure(g.f == expected_f && g.h.0 == vec![5], || format!("`{s}` gave {g}"))?;
        }
    }
    ensure(best < Duration::from_millis(1), || format!("took {best:?}"))?;
    Ok(format!("both spellings give (x^-4+1+x+x^3, 5) in {best:?}"))
}

fn rank_two_golden() -> Outcome {
    let gr = GammaGroup::new(2, ring_z()).unwrap();
    let f_hat = gr
        .ctx()
        .from_sequences(
            &big_seq(&[3, 1, 0, 2]),
            &[big_seq(&[11, 3, 1]), big_seq(&[-6, -4, -1, -1])],
        )
        .map_err(|e| e.to_string())?;
    let h = HeightVector(vec![1, 2]);
    let g = gr.element(f_hat.mul_shift(&h).unwrap(), h).unwrap();
    let v = phi(&gr, &g).map_err(|e| e.to_string())?;
    let expected = vec![
        TreeAddress::new(big_seq(&[5, 3, 4, 2]), -3),
        TreeAddress::new(big_seq(&[18, 5, 1]), 1),
        TreeAddress::new(big_seq(&[2, 3, 0, 1]), 2),
    ];
    ensure(v.coords == expected, || format!("phi(g) = {v}"))?;
    Ok(format!("phi(g) = {v}"))
}

fn isomorphism() -> Outcome {
    let mut lines = Vec::new();
    for (n, ring, radius, bound) in iso_configs() {
        let gr = GammaGroup::new(n, ring).unwrap();
        let start = Instant::now();
        let r = cayley::verify_iso(&gr, radius, bound, Exec::Parallel).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure(r.passed(), || r.to_text())?;
        ensure(took < Duration::from_secs(60), || {
            format!("Γ_{n}({ring}) radius {radius} took {took:?}")
        })?;
        lines.push(format!(
            "Γ_{n}({ring}) r{radius}: {} vertices {:.1}s",
            r.counts["vertices"],
            took.as_secs_f64()
        ));
    }
    Ok(lines.join("; "))
}

fn root_degrees() -> Outcome {
    let mut lines = Vec::new();
    for (n, ring, _, bound) in iso_configs() {
        let Some(size) = ring.cardinality() else { continue };
        let gr = GammaGroup::new(n, ring).unwrap();
        let ball = cayley::cayley_ball(&gr, 1, bound, Exec::Serial).unwrap();
        let degree = ball.degrees()[0] as u64;
        let expected = (n as u64 + 1) * n as u64 * size;
        ensure(degree == expected, || {
            format!("Γ_{n}({ring}): root degree {degree}, expected {expected}")
        })?;
        lines.push(format!("Γ_{n}({ring}) {degree}"));
    }
    Ok(lines.join(", "))
}

fn relator_suites() -> Outcome {
    use PresentationId::*;
    let cases: Vec<(usize, RingSpec, PresentationId)> = vec![
        (1, ring_z(), Gamma1Commutators),
        (1, ring_z(), Gamma1LambdaMu),
        (1, ring_z(), Gamma1Lambda),
        (1, zm(2), Gamma1Two),
        (1, zm(3), Gamma1Mod),
        (1, zm(4), Gamma1Mod),
        (2, ring_z(), Gamma2Ats),
        (2, ring_z(), Gamma2MuNuCD),
        (2, ring_z(), Gamma2Indexed),
        (2, ring_z(), CayleyComplex),
    ];
    let mut total = 0;
    for (n, ring, pres) in &cases {
        let gr = GammaGroup::new(*n, *ring).unwrap();
        let r = cayley::verify_relators(&gr, *pres, 4).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_text())?;
        total += r.counts["relators"];
    }
    let faulty = GammaGroup::from_context(
        AnContext::new(2, ring_z()).unwrap().with_fault(Fault::PowerTimesLinear),
    );
    let mut caught = 0;
    for pres in [Gamma2Ats, Gamma2MuNuCD, Gamma2Indexed, CayleyComplex] {
        caught += cayley::verify_relators(&faulty, pres, 4).unwrap().violations.len();
    }
    ensure(caught >= 1, || "the corrupted rule went unnoticed".into())?;
    Ok(format!(
        "{total} relators trivial across {} families; corrupted rule breaks {caught}",
        cases.len()
    ))
}

/// Word evaluation on the board: `a` adds at the lamplighter, `t` and `s` move it.
fn board_eval(word: &Word) -> Configuration {
    let mut b = Configuration::empty(ring_z());
    for syl in &word.0 {
        match syl.letter {
            Letter::A => b.add(b.pos, &BigInt::from(syl.exp)),
            Letter::T => b.pos.0 += syl.exp,
            Letter::S => b.pos.1 += syl.exp,
            _ => unreachable!(),
        }
    }
    b.canonical_on_l(0, 0)
}

fn random_ats_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = [Letter::A, Letter::S, Letter::T];
    Word::from_pairs(
        (0..len)
            .map(|_| (letters[rng.gen_range(0..3)], if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect(),
    )
}

fn normal_forms() -> Outcome {
    let gr = GammaGroup::new(2, ring_z()).unwrap();
    let relators = gr.relators(PresentationId::Gamma2Ats, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut words = Vec::new();
    while words.len() < 2000 {
        let w = random_ats_word(&mut rng, 12);
        if w.0.len() <= 4 {
            // a second spelling of the same element, still of length <= 12
            let r = &relators[rng.gen_range(0..relators.len())];
            let cut = rng.gen_range(0..=w.0.len());
            let mut v = w.0[..cut].to_vec();
            v.extend(r.0.iter().copied());
            v.extend(w.0[cut..].iter().copied());
            words.push(Word(v));
        }
        words.push(w);
    }
    words.truncate(2000);
    let mut by_nf: HashMap<String, usize> = HashMap::new();
    let mut by_board: HashMap<BoardKey, usize> = HashMap::new();
    let mut mismatches = 0;
    for (i, w) in words.iter().enumerate() {
        let g = gr.eval_word(w).unwrap();
        let nf = gr.normal_form(&g).unwrap();
        if gr.eval_word(&nf).unwrap() != g {
            return Err(format!("eval(nf({w})) != eval({w})"));
        }
        let board = board_eval(w);
        let key = (board.entries.clone().into_iter().collect(), board.pos);
        let a = *by_nf.entry(nf.to_string()).or_insert(i);
        let b = *by_board.entry(key).or_insert(i);
        if a != b {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} discrepancies"))?;
    Ok(format!(
        "{} words, {} distinct elements, zero discrepancies",
        words.len(),
        by_nf.len()
    ))
}

fn oracle_triangle() -> Outcome {
    let mut lines = Vec::new();
    for ring in [ring_z(), zm(2), zm(5)] {
        let gr = GammaGroup::new(2, ring).unwrap();
        let r = lamp2::verify_propagation(&gr, 500, 6, 7).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_text())?;
        lines.push(format!("{ring}: {}", r.counts["samples"]));
    }
    Ok(lines.join(", "))
}

fn phi_round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0;
    for (n, ring, _, _) in iso_configs() {
        let gr = GammaGroup::new(n, ring).unwrap();
        for _ in 0..1000 {
            let g = gr.random_element(&mut rng, 8, 9, 5, 6);
            let back = phi_inv(&gr, &phi(&gr, &g).unwrap()).map_err(|e| e.to_string())?;
            ensure(back == g, || format!("Γ_{n}({ring}): {g} came back as {back}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} round trips exact"))
}

fn two_cells() -> Outcome {
    let gr = GammaGroup::new(2, ring_z()).unwrap();
    let r = cayley::two_cell_report(&gr, 2, 2, Exec::Parallel).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.to_text())?;
    Ok(format!(
        "{} 3-cycles ({} type 1, {} type 2), {} relator triangles realized",
        r.counts["3-cycles"], r.counts["type 1"], r.counts["type 2"], r.counts["relator triangles in ball"]
    ))
}

fn hypotheses() -> Outcome {
    for (n, m) in [(3, 2), (4, 6)] {
        match GammaGroup::new(n, zm(m)) {
            Err(Error::NotInvertible { value, .. }) if value == BigInt::from(2) => {}
            other => return Err(format!("Γ_{n}(Z/{m}) gave {other:?}")),
        }
    }
    let err = GammaGroup::new(4, zm(6)).unwrap_err().to_string();
    ensure(err.contains('2'), || err.clone())?;
    GammaGroup::new(3, zm(3)).map_err(|e| format!("Γ_3(Z/3): {e}"))?;
    Ok(format!("Γ_3(Z/2), Γ_4(Z/6) rejected (\"{err}\"); Γ_3(Z/3) accepted"))
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = lamplighter::cli::run_with(
        std::iter::once("lamplighter").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn determinism() -> Outcome {
    let mut checked = 0;
    for (n, ring, radius, bound) in [(2, zm(3), 2, 0), (1, ring_z(), 3, 2), (3, zm(5), 1, 0)] {
        let gr = GammaGroup::new(n, ring).unwrap();
        let mut outputs: Vec<Vec<String>> = Vec::new();
        for exec in [Exec::Serial, Exec::Parallel, Exec::Parallel] {
            let cb = cayley::cayley_ball(&gr, radius, bound, exec).unwrap().to_graph();
            let hb = cayley::hn_ball(n, ring, radius, bound, exec).unwrap().to_graph();
            let mut run = Vec::new();
            for fmt in [Format::Dot, Format::GraphMl, Format::Csv, Format::Json] {
                run.push(cb.export(fmt));
                run.push(hb.export(fmt));
            }
            run.push(
                cayley::verify_iso(&gr, radius, bound, exec)
                    .unwrap()
                    .to_text(),
            );
            outputs.push(run);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
            format!("Γ_{n}({ring}) output differs between runs")
        })?;
        checked += outputs[0].len();
    }
    let commands: [&[&str]; 4] = [
        &["--ring", "Z/3", "--format", "graphml", "export", "--serial"],
        &["--ring", "Z/3", "--format", "json", "verify", "iso"],
        &["--ring", "Z", "--format", "json", "verify", "two-cells", "--serial"],
        &["--ring", "Z/5", "--format", "json", "verify", "propagation", "--samples", "50"],
    ];
    for args in commands {
        let first = cli(args);
        let parallel: Vec<&str> = args.iter().copied().filter(|a| *a != "--serial").collect();
        for again in [cli(args), cli(&parallel)] {
            ensure(first == again, || format!("`{}` differs between runs", args.join(" ")))?;
        }
        ensure(first.0 == 0, || format!("`{}` exited {}", args.join(" "), first.0))?;
        checked += 1;
    }
    Ok(format!("{checked} outputs byte-identical across runs and serial/parallel"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("golden evaluation in Γ_1(Z/2)", rank_one_golden),
        ("golden vertex in H_2(Z)", rank_two_golden),
        ("Cayley graph isomorphism", isomorphism),
        ("root degrees", root_degrees),
        ("relator suites and mutation", relator_suites),
        ("normal-form uniqueness", normal_forms),
        ("oracle triangle", oracle_triangle),
        ("phi bijection", phi_round_trips),
        ("two-cell classification", two_cells),
        ("unit hypothesis", hypotheses),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{took:.2}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{took:.2}s]: {}", i + 1, detail.trim_end());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
