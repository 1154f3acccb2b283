//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ocycle::cli::document::{parse_list, CycleDocument};
use ocycle::connect::{
    applicable_walker, replay_certificate, step_cap, walk, walk_multiset, WalkerKind,
};
use ocycle::count::multinomial;
use ocycle::euler::{decode_cycle, generate};
use ocycle::graph::TransitionGraph;
use ocycle::instance::{unrank_vertex, Symbol};
use ocycle::verify::{
    hamilton_oracle, verify_cycle_string, verify_object_list, OracleOutcome, DEFAULT_ORACLE_BUDGET,
};
use ocycle::{feasibility, Error, InstanceParams, Status, DEFAULT_EDGE_LIMIT};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const BATTERY: &[&[u64]] = &[
    &[1, 1, 2],
    &[1, 1, 2, 3, 4],
    &[1, 1, 2, 2, 3],
    &[1, 1, 1, 2, 2, 2],
    &[1, 2, 2, 3, 3, 3, 4],
    &[1, 1, 2, 2, 3, 3, 4],
];

fn kperm(n: u64, k: u64, s: u64) -> InstanceParams {
    InstanceParams::kperm(n, k, s).unwrap()
}

fn falling(n: u64, k: u64) -> u64 {
    (n - k + 1..=n).product()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed <= Duration::from_secs(limit_secs), || {
        format!("took {elapsed:.2?}, limit {limit_secs}s")
    })
}

/// Generates, verifies, and checks object count and string length.
fn gen_and_verify(p: &InstanceParams, expected: u64) -> Result<Vec<Symbol>, String> {
    let c = generate(p, DEFAULT_EDGE_LIMIT).map_err(|e| format!("{p}: {e}"))?;
    let report = verify_cycle_string(&c.symbols, p);
    ensure(report.valid, || format!("{p}: verify failed\n{report}"))?;
    ensure(report.object_count == expected, || {
        format!("{p}: {} objects, expected {expected}", report.object_count)
    })?;
    let len = p.stride() as u64 * expected;
    ensure(c.symbols.len() as u64 == len, || {
        format!("{p}: string length {}, expected {len}", c.symbols.len())
    })?;
    Ok(c.symbols)
}

fn main_sweep() -> Vec<InstanceParams> {
    let mut out = Vec::new();
    for n in 1..=7 {
        for k in 1..n {
            for s in 1..k {
                out.push(kperm(n, k, s));
            }
        }
    }
    out
}

fn full_perm_sweep() -> Vec<InstanceParams> {
    let mut out = Vec::new();
    for n in 1..=7u64 {
        for s in 1..n {
            let g = num_gcd(s, n);
            if 2 * s < n || (g == 1 && s + 2 <= n) {
                out.push(kperm(n, n, s));
            }
        }
    }
    out
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn multiset_sweep() -> Vec<InstanceParams> {
    let mut out = Vec::new();
    for m in BATTERY {
        let k = m.len() as u64;
        for s in 1..k {
            if 2 * s < k {
                out.push(InstanceParams::multiset(m, s).unwrap());
            }
        }
    }
    out
}

/// k! / (c1! c2! ...), computed directly.
fn multiset_count(m: &[Symbol]) -> u64 {
    let fact = |x: u64| (1..=x).product::<u64>();
    m.chunk_by(|a, b| a == b)
        .fold(fact(m.len() as u64), |acc, g| acc / fact(g.len() as u64))
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/perm5_3ocycle.txt"
    );
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let words = parse_list(&text).map_err(|e| e.to_string())?;
    let p = kperm(5, 5, 3);
    ensure(words.len() == 120, || {
        format!("fixture has {} entries", words.len())
    })?;
    let report = verify_object_list(&words, &p);
    ensure(report.valid, || format!("fixture rejected\n{report}"))?;
    let (last, first) = (&words[119], &words[0]);
    ensure(
        last.0 == [4, 5, 1, 2, 3] && last.suffix(3) == first.prefix(3),
        || format!("wrap pair {last} -> {first}"),
    )?;
    let mut swaps = 0;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let mut w = words.clone();
            w.swap(i, j);
            ensure(!verify_object_list(&w, &p).valid, || {
                format!("swap of entries {i} and {j} still verifies")
            })?;
            swaps += 1;
        }
    }
    within(t.elapsed(), 1)?;
    Ok(format!(
        "120 objects valid incl. wrap; {swaps} transpositions all rejected"
    ))
}

fn criterion_2() -> Check {
    let t = Instant::now();
    let sweep = main_sweep();
    for p in &sweep {
        ensure(feasibility(p).status == Status::Guaranteed, || {
            format!("{p} not guaranteed")
        })?;
        gen_and_verify(p, falling(p.n() as u64, p.k() as u64))?;
    }
    within(t.elapsed(), 60)?;
    Ok(format!("{} instances", sweep.len()))
}

fn criterion_3() -> Check {
    let t = Instant::now();
    let sweep = full_perm_sweep();
    for p in &sweep {
        gen_and_verify(p, falling(p.n() as u64, p.n() as u64))?;
    }
    within(t.elapsed(), 60)?;
    Ok(format!("{} instances", sweep.len()))
}

fn criterion_4() -> Check {
    let t = Instant::now();
    let sweep = multiset_sweep();
    for p in &sweep {
        gen_and_verify(p, multiset_count(p.multiset_symbols().unwrap()))?;
    }
    within(t.elapsed(), 30)?;
    Ok(format!("{} instances", sweep.len()))
}

fn criterion_5() -> Check {
    let mut checked = 0;
    for p in main_sweep()
        .iter()
        .chain(&full_perm_sweep())
        .chain(&multiset_sweep())
    {
        if p.object_count().unwrap() > 100_000 {
            continue;
        }
        let g = TransitionGraph::new(p).map_err(|e| e.to_string())?;
        let b = g.check_balance().map_err(|e| e.to_string())?;
        ensure(b.balanced && b.unbalanced.is_empty(), || {
            format!("{p}: unbalanced")
        })?;
        ensure(b.in_sum == b.out_sum && b.out_sum == g.edge_count(), || {
            format!("{p}: degree sums disagree")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} graphs balanced at every vertex"))
}

fn criterion_6() -> Check {
    let t = Instant::now();
    let mut universe = main_sweep();
    for n in 2..=7 {
        for s in 1..n {
            universe.push(kperm(n, n, s));
        }
    }
    for m in BATTERY {
        for s in 1..m.len() as u64 {
            universe.push(InstanceParams::multiset(m, s).unwrap());
        }
    }
    let (mut instances, mut walks) = (0, 0u64);
    for p in universe {
        if feasibility(&p).status != Status::Guaranteed {
            continue;
        }
        let count = p.vertex_count().unwrap();
        if count > 10_000 {
            continue;
        }
        let kind = applicable_walker(&p).ok_or_else(|| format!("{p}: no walker"))?;
        let cap = step_cap(&p);
        for r in 0..count {
            let v = unrank_vertex(r, &p).unwrap();
            let cert = walk(&v, &p).map_err(|e| format!("{p} from {v}: {e}"))?;
            ensure(cert.len() <= cap, || {
                format!("{p} from {v}: {} steps > {cap}", cert.len())
            })?;
            replay_certificate(&cert, &p).map_err(|e| format!("{p} from {v}: replay {e}"))?;
            if kind == WalkerKind::Multiset {
                let (_, trace) = walk_multiset(&v, &p).map_err(|e| format!("{p} from {v}: {e}"))?;
                ensure(
                    trace.is_strictly_increasing() && trace.0.len() <= p.s(),
                    || format!("{p} from {v}: progress trace {:?}", trace.0),
                )?;
            }
            walks += 1;
        }
        instances += 1;
    }
    within(t.elapsed(), 120)?;
    Ok(format!(
        "{walks} walks over {instances} instances, all replayed"
    ))
}

/// Every multiset (up to relabelling) of size <= 8 with at most 60 permutations.
fn small_multisets() -> Vec<Vec<u64>> {
    fn partitions(rest: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 2..=8 {
        let mut parts = Vec::new();
        partitions(size, size, &mut Vec::new(), &mut parts);
        for counts in parts {
            if multinomial(&counts).unwrap() > 60 {
                continue;
            }
            let m: Vec<u64> = counts
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(i as u64 + 1, c as usize))
                .collect();
            out.push(m);
        }
    }
    out
}

fn criterion_7() -> Check {
    let mut instances = Vec::new();
    for n in 2..=8u64 {
        for k in 2..=n {
            if falling(n, k) > 60 {
                continue;
            }
            for s in 1..k {
                instances.push(kperm(n, k, s));
            }
        }
    }
    for m in small_multisets() {
        for s in 1..m.len() as u64 {
            if let Ok(p) = InstanceParams::multiset(&m, s) {
                instances.push(p);
            }
        }
    }
    let (mut witnesses, mut refuted) = (0, 0);
    for p in &instances {
        let feasible = feasibility(p).status != Status::Infeasible;
        let tour = match generate(p, DEFAULT_EDGE_LIMIT) {
            Ok(c) => {
                let words = decode_cycle(&c).map_err(|e| e.to_string())?;
                ensure(verify_object_list(&words, p).valid, || {
                    format!("{p}: bad tour")
                })?;
                true
            }
            Err(Error::TourIncomplete { .. }) => false,
            Err(e) => return Err(format!("{p}: {e}")),
        };
        let found = match hamilton_oracle(p, DEFAULT_ORACLE_BUDGET).map_err(|e| e.to_string())? {
            OracleOutcome::Witness(h) => {
                ensure(verify_object_list(&h.cycle, p).valid, || {
                    format!("{p}: bad witness")
                })?;
                true
            }
            OracleOutcome::NoCycle { .. } => false,
            OracleOutcome::Exhausted { nodes } => {
                return Err(format!("{p}: oracle budget spent after {nodes} nodes"))
            }
        };
        ensure(found == (feasible && tour), || {
            format!("{p}: oracle {found}, feasible {feasible}, tour {tour}")
        })?;
        if found {
            witnesses += 1;
        } else {
            refuted += 1;
        }
    }
    let p = kperm(4, 4, 3);
    ensure(
        matches!(
            hamilton_oracle(&p, DEFAULT_ORACLE_BUDGET),
            Ok(OracleOutcome::NoCycle { .. })
        ),
        || format!("{p}: oracle did not return NoCycle"),
    )?;
    Ok(format!(
        "{} instances: {witnesses} witnesses, {refuted} proven cycle-free",
        instances.len()
    ))
}

fn write_sweep(dir: &Path) -> Result<(), String> {
    for p in main_sweep() {
        let c = generate(&p, DEFAULT_EDGE_LIMIT).map_err(|e| format!("{p}: {e}"))?;
        let name = format!("n{}_k{}_s{}.txt", p.n(), p.k(), p.s());
        fs::write(dir.join(name), CycleDocument::from_cycle(&c).emit())
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    write_sweep(a.path())?;
    write_sweep(b.path())?;
    let mut files = 0;
    for entry in fs::read_dir(a.path()).map_err(|e| e.to_string())? {
        let name = entry.map_err(|e| e.to_string())?.file_name();
        let x = fs::read(a.path().join(&name)).map_err(|e| e.to_string())?;
        let y = fs::read(b.path().join(&name)).map_err(|e| e.to_string())?;
        ensure(x == y, || format!("{name:?} differs between runs"))?;
        files += 1;
    }
    ensure(files == main_sweep().len(), || {
        format!("only {files} files written")
    })?;
    Ok(format!("{files} documents byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("reference 3-ocycle of [5]", criterion_1),
        ("k-permutation sweep, n <= 7", criterion_2),
        ("full-permutation sweep, n <= 7", criterion_3),
        ("multiset battery sweep", criterion_4),
        ("balance of every swept graph", criterion_5),
        ("walker completeness and replay", criterion_6),
        ("oracle agreement, <= 60 objects", criterion_7),
        ("determinism of generated documents", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = f();
        let elapsed = t.elapsed();
        match result {
            Ok(detail) => println!(
                "PASS criterion {} ({name}): {detail} [{elapsed:.2?}]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
