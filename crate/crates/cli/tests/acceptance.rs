// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::json;

use lasker_core::decompose::{decompose_finite, decompose_integers};
use lasker_core::ideal::{disjoint_from, enumerate_ideals, zero_ideal};
use lasker_core::lab::{generate_corpus, run_suite, Corpus, CorpusSpec, LabConfig, Status, Suite, SuiteReport};
use lasker_core::predicates::{is_primary, is_s_primary, recheck};
use lasker_core::ring::{construct_ring, RingSpec};
use lasker_core::{Ideal, MultiplicativeSet, Ring};

type Verdict = Result<String, String>;

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Prime-power factors `p^e` of `n` by trial division.
fn prime_powers(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn radical(n: u64) -> u64 {
    prime_powers(n)
        .into_iter()
        .map(|q| (2..=q).find(|d| q % d == 0).unwrap())
        .product()
}

/// `d` with `I = dZ/nZ`, read off the member residues.
fn zmod_generator(ring: &Ring, n: u64, i: &Ideal) -> u64 {
    i.members()
        .unwrap()
        .iter()
        .map(|x| ring.finite().unwrap().label(x).as_u64().unwrap())
        .fold(n, gcd)
}

fn lasker(args: &[&str]) -> (String, bool, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lasker")).args(args).output().expect("spawn lasker");
    (String::from_utf8_lossy(&out.stdout).into_owned(), out.status.success(), start.elapsed())
}

fn c1() -> Verdict {
    let ring = r#"{"kind":"integers"}"#;
    let ideal = r#"{"n":6}"#;
    let (plain, ok1, t1) = lasker(&["check", "irreducible", "--ring", ring, "--ideal", ideal]);
    let (rel, ok2, t2) = lasker(&[
        "check",
        "s-irreducible",
        "--ring",
        ring,
        "--mset",
        r#"{"complement_of_prime":3}"#,
        "--ideal",
        ideal,
    ]);
    let line = format!("{} in {}, {} in {}", plain.trim(), secs(t1), rel.trim(), secs(t2));
    let good = ok1 && ok2 && plain.contains(": NO") && rel.contains(": YES") && t1.max(t2) < Duration::from_secs(1);
    if good {
        Ok(line)
    } else {
        Err(line)
    }
}

fn c2() -> Verdict {
    let mut t6 = Duration::ZERO;
    for n in 2..=6usize {
        let start = Instant::now();
        let ring = construct_ring(&RingSpec::product(vec![RingSpec::zmod(2); n])).map_err(|e| e.to_string())?;
        let mut e1 = vec![0; n];
        e1[0] = 1;
        let e1 = json!(e1);
        let s = MultiplicativeSet::closure_of_payloads(&ring, &[e1.clone()]).map_err(|e| e.to_string())?;
        if s.len() != Some(2) {
            return Err(format!("n = {n}: S has {:?} elements", s.len()));
        }
        let zero = zero_ideal(&ring);
        let cert = is_s_primary(&zero, &s).map_err(|e| e.to_string())?;
        let witness = cert.witness.as_ref().map(|w| ring.payload(w).unwrap());
        if witness != Some(e1.clone()) {
            return Err(format!("n = {n}: witness {witness:?}"));
        }
        let d = decompose_finite(&zero, &s).map_err(|e| e.to_string())?.ok_or(format!("n = {n}: none"))?;
        if d.components.len() != 1 {
            return Err(format!("n = {n}: {} components", d.components.len()));
        }
        t6 = start.elapsed();
    }
    if t6 < Duration::from_secs(10) {
        Ok(format!("n = 2..6, witness e1, one component; n = 6 in {}", secs(t6)))
    } else {
        Err(format!("n = 6 took {}", secs(t6)))
    }
}

fn c3() -> Verdict {
    let mut ideals = 0;
    for n in 2..=60u64 {
        let ring = construct_ring(&RingSpec::zmod(n)).map_err(|e| e.to_string())?;
        let one = MultiplicativeSet::trivial(&ring);
        for i in enumerate_ideals(&ring).map_err(|e| e.to_string())? {
            if !i.is_proper() {
                continue;
            }
            ideals += 1;
            let d = zmod_generator(&ring, n, &i);
            let oracle = prime_powers(d).len() == 1;
            let sp = is_s_primary(&i, &one).map_err(|e| e.to_string())?.verdict;
            let p = is_primary(&i).map_err(|e| e.to_string())?;
            if sp != p || p != oracle {
                return Err(format!("Z/{n}, ({d}): S-primary {sp}, primary {p}, oracle {oracle}"));
            }
            let dec = decompose_finite(&i, &one).map_err(|e| e.to_string())?.ok_or(format!("Z/{n}, ({d}): none"))?;
            let mut got: Vec<u64> = dec.components.iter().map(|c| zmod_generator(&ring, n, &c.q)).collect();
            got.sort();
            let mut want = prime_powers(d);
            want.sort();
            if got != want {
                return Err(format!("Z/{n}, ({d}): components {got:?}, expected {want:?}"));
            }
        }
    }
    Ok(format!("{ideals} proper ideals of Z/n, n <= 60, agree with the factorization"))
}

fn suite_line(r: &SuiteReport, min: u64, limit: Duration) -> Verdict {
    let t = Duration::from_millis(r.wall_time_ms);
    let line = format!("{}: {:?}, {} instances in {}", r.suite.name(), r.status, r.instances, secs(t));
    if r.status == Status::Pass && r.instances >= min && t < limit {
        Ok(line)
    } else {
        Err(line)
    }
}

/// Independent S-primary check of `gZ` with witness `w`, over residues.
fn residue_recheck(g: u64, w: u64) -> bool {
    let rad = radical(g);
    (0..g).all(|a| (0..g).all(|b| (a * b) % g != 0 || (w * a) % g == 0 || (w * b) % rad == 0))
}

fn c7() -> Verdict {
    let shapes: Vec<(String, MultiplicativeSet)> = [2, 3, 5, 7]
        .iter()
        .map(|&p| (format!("Z minus {p}Z"), MultiplicativeSet::complement_of_prime(p).unwrap()))
        .chain(
            [vec![], vec![2], vec![3], vec![2, 3], vec![2, 5]]
                .into_iter()
                .map(|ps| (format!("powers of {ps:?}"), MultiplicativeSet::prime_set(&ps, false).unwrap())),
        )
        .collect();
    let mut count = 0;
    for n in 2..=200u64 {
        let i = Ideal::integers(n);
        for (name, s) in &shapes {
            if !disjoint_from(&i, s).map_err(|e| e.to_string())? {
                continue;
            }
            let d = decompose_integers(&i, s).map_err(|e| format!("{n}Z, {name}: {e}"))?;
            let mut lcm = 1u64;
            for c in &d.components {
                let g = u64::try_from(c.q.generator().unwrap().clone()).unwrap();
                let w = c.s.as_integer().unwrap();
                let w = u64::try_from(w.clone()).map_err(|_| format!("{n}Z: witness {w}"))?;
                let cert = is_s_primary(&c.q, s).map_err(|e| e.to_string())?;
                if !residue_recheck(g, w % g.max(1)) || recheck::s_primary(&c.q, s, &cert).is_err() {
                    return Err(format!("{n}Z, {name}: component {g}Z with s = {w} fails the re-check"));
                }
                lcm = lcm / gcd(lcm, g) * g;
            }
            if lcm != n {
                return Err(format!("{n}Z, {name}: lcm {lcm}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} (n, S) pairs, n <= 200, {} shapes", shapes.len()))
}

fn main() -> ExitCode {
    let mut failed = false;
    let mut report = |n: u32, v: Verdict| {
        match &v {
            Ok(m) => println!("criterion {n}: PASS ({m})"),
            Err(m) => println!("criterion {n}: FAIL ({m})"),
        }
        failed |= v.is_err();
    };
    report(1, c1());
    report(2, c2());
    report(3, c3());

    let corpus: Corpus = generate_corpus(&CorpusSpec::default()).expect("default corpus");
    let config = LabConfig::default();
    let run = |s| run_suite(s, &corpus, &config);

    report(4, suite_line(&run(Suite::ColonSplit), 1, Duration::from_secs(120)));
    report(5, suite_line(&run(Suite::Intersection), 500, Duration::MAX));
    report(6, suite_line(&run(Suite::MainTheorem), 1000, Duration::from_secs(600)));
    report(7, c7());
    let lines: Vec<Verdict> = [Suite::QuotientTransfer, Suite::NilPrimary, Suite::Localization, Suite::Spectrum]
        .into_iter()
        .map(|s| suite_line(&run(s), 1, Duration::MAX))
        .collect();
    let joined = |v: &[Verdict]| v.iter().map(|l| l.clone().unwrap_or_else(|e| e)).collect::<Vec<_>>().join("; ");
    report(8, if lines.iter().all(Result::is_ok) { Ok(joined(&lines)) } else { Err(joined(&lines)) });

    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
