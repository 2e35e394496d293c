//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p eaqec --test acceptance -- --nocapture` or just
//! `cargo test`; the binary exits nonzero on any failure except the one
//! table cell listed in `KNOWN_TABLE_MISMATCHES`.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eaqec::bounds::{lp_bound, plotkin_bound, CodeParams, DEFAULT_NODE_LIMIT};
use eaqec::channel::{hashing_bound, rate_threshold, weight_enum_error_bound};
use eaqec::constructions::{
    accumulator_code, demote_logical_to_ebit, encoder_images, extend_add_ebit, nonexistence_search,
    repetition_code, repetition_encoder_circuit, Family,
};
use eaqec::simulate::simulate_map_block_error;
use eaqec::table::{compute_table, LowerBoundDb, TABLE_NODE_LIMIT};
use eaqec::{macwilliams_transform, EaqecCode, GroupKind, PauliOp, SymplecticMatrix, WeightEnumerator};

/// Cells where the computed table legitimately differs from the published
/// one: at [[15,13;2]] the published upper bound is 3, but both the LP and
/// the Hamming bound give 2.
const KNOWN_TABLE_MISMATCHES: &[(usize, usize)] = &[(15, 13)];

/// (n, stabilizer enumerator A, logical enumerator B) for the odd family.
const ODD: &[(usize, &[u64], &[u64])] = &[
    (3, &[1, 0, 9, 6], &[1, 0, 0, 3]),
    (5, &[1, 0, 30, 60, 105, 60], &[1, 0, 0, 0, 0, 3]),
    (7, &[1, 0, 63, 210, 735, 1260, 1281, 546], &[1, 0, 0, 0, 0, 0, 0, 3]),
    (
        9,
        &[1, 0, 108, 504, 2646, 7560, 15372, 19656, 14769, 4920],
        &[1, 0, 0, 0, 0, 0, 0, 0, 0, 3],
    ),
    (
        11,
        &[1, 0, 165, 990, 6930, 27720, 84546, 180180, 270765, 270600, 162393, 44286],
        &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3],
    ),
];

const EVEN: &[(usize, &[u64], &[u64])] = &[
    (4, &[1, 1, 15, 27, 20], &[1, 0, 0, 1, 2]),
    (6, &[1, 1, 40, 130, 305, 365, 182], &[1, 0, 0, 0, 0, 1, 2]),
    (8, &[1, 1, 77, 357, 1435, 3395, 5103, 4375, 1640], &[1, 0, 0, 0, 0, 0, 0, 1, 2]),
    (
        10,
        &[1, 1, 126, 756, 4326, 15246, 38304, 65604, 73809, 49209, 14762],
        &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2],
    ),
    (
        12,
        &[1, 1, 187, 1375, 10230, 47850, 168630, 432894, 811965, 1082565, 974303, 531443, 132860],
        &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2],
    ),
];

/// Published table: per n, the k = 1..n-1 cells as (lower, upper).
const TABLE: &[(usize, &str)] = &[
    (3, "3 2"),
    (4, "3 2-3 1"),
    (5, "5 3-4 2-3 2"),
    (6, "5 4 3-4 2 1"),
    (7, "7 5 4 3 2 2"),
    (8, "7 6 5 4 3 2 1"),
    (9, "9 6-7 5-6 4-5 3-4 3 2 2"),
    (10, "9 7-8 6-7 5-6 4-5 4 3 2 1"),
    (11, "11 8 6-8 5-7 4-6 4-5 3-4 3 2 2"),
    (12, "11 8-9 7-8 6-7 5-7 5-6 4-5 3-4 3 2 1"),
    (13, "13 9-10 9 6-8 6-7 5-7 4-6 4-5 4 3 2 2"),
    (14, "13 10-11 9-10 7-9 6-8 5-7 5-7 4-6 4-5 3-4 3 2 1"),
    (15, "15 11-12 9-11 8-10 7-9 6-8 6-7 6-7 5-6 4 3-4 2-3 2-3 2"),
];

fn coeffs(e: &WeightEnumerator) -> Vec<BigInt> {
    e.coeffs().to_vec()
}

fn big(xs: &[u64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Result<String, String> {
    let mut pairs = 0;
    for &(n, a, b) in ODD.iter().chain(EVEN) {
        // B is the logical group of order 2^2; A the stabilizer of order 2^(2(n-1)).
        let be = WeightEnumerator::from_u64(n, b, 2).map_err(|e| e.to_string())?;
        let ae = WeightEnumerator::from_u64(n, a, 2 * (n as u32 - 1)).map_err(|e| e.to_string())?;
        let got_a = macwilliams_transform(&be).map_err(|e| e.to_string())?;
        let got_b = macwilliams_transform(&ae).map_err(|e| e.to_string())?;
        ensure(coeffs(&got_a) == big(a), || format!("n={n}: B -> {got_a}, expected A"))?;
        ensure(coeffs(&got_b) == big(b), || format!("n={n}: A -> {got_b}, expected B"))?;
        pairs += 2;
    }
    Ok(format!("{pairs} enumerators reproduced in both directions"))
}

fn criterion_2() -> Result<String, String> {
    let mut checked = 0;
    for &(n, a, b) in ODD.iter().chain(EVEN).filter(|(n, ..)| *n <= 9) {
        let code = repetition_code(n).map_err(|e| e.to_string())?;
        let ga = code.enumerator(GroupKind::Stabilizer).map_err(|e| e.to_string())?;
        let gb = code.enumerator(GroupKind::Logical).map_err(|e| e.to_string())?;
        ensure(coeffs(&ga) == big(a), || format!("repetition({n}) stabilizer {ga}"))?;
        ensure(coeffs(&gb) == big(b), || format!("repetition({n}) logical {gb}"))?;
        let d = code.distance().map_err(|e| e.to_string())?;
        let want = if n % 2 == 1 { n } else { n - 1 };
        ensure(d == want, || format!("repetition({n}) distance {d}, expected {want}"))?;

        let acc = accumulator_code(n).map_err(|e| e.to_string())?;
        let aa = acc.enumerator(GroupKind::Stabilizer).map_err(|e| e.to_string())?;
        let ab = acc.enumerator(GroupKind::Logical).map_err(|e| e.to_string())?;
        ensure(coeffs(&aa) == big(b), || format!("accumulator({n}) stabilizer {aa}"))?;
        ensure(coeffs(&ab) == big(a), || format!("accumulator({n}) logical {ab}"))?;
        let d = acc.distance().map_err(|e| e.to_string())?;
        let want = if n % 2 == 1 { 2 } else { 1 };
        ensure(d == want, || format!("accumulator({n}) distance {d}, expected {want}"))?;
        checked += 2;
    }
    Ok(format!("{checked} codes with n <= 9"))
}

fn criterion_3() -> Result<String, String> {
    let cases = [
        ((8, 3, 5), 5),
        ((15, 7, 8), 7),
        ((7, 1, 4), 6),
        ((8, 3, 3), 4),
        ((8, 3, 4), 5),
        ((9, 1, 3), 8),
        ((9, 1, 4), 8),
        ((9, 1, 5), 8),
    ];
    let mut parts = Vec::new();
    for ((n, k, c), want) in cases {
        let p = CodeParams::new(n, k, c).map_err(|e| e.to_string())?;
        let lp = lp_bound(p, DEFAULT_NODE_LIMIT).map_err(|e| e.to_string())?;
        ensure(lp.value == want && !lp.undecided, || {
            format!("{p}: got {} (undecided={}), expected {want}", lp.value, lp.undecided)
        })?;
        parts.push(format!("{p}<={want}"));
    }
    Ok(parts.join(" "))
}

fn parse_cell(s: &str) -> (usize, usize) {
    match s.split_once('-') {
        Some((a, b)) => (a.parse().unwrap(), b.parse().unwrap()),
        None => {
            let v = s.parse().unwrap();
            (v, v)
        }
    }
}

fn criterion_4() -> Result<String, String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/lower_bounds.csv");
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let db = LowerBoundDb::parse(&text).map_err(|e| e.to_string())?;
    let rows = compute_table(15, &db, TABLE_NODE_LIMIT);
    let mut published = BTreeMap::new();
    for &(n, cells) in TABLE {
        for (i, cell) in cells.split_whitespace().enumerate() {
            published.insert((n, i + 1), parse_cell(cell));
        }
    }
    ensure(rows.len() == published.len(), || format!("{} rows, expected {}", rows.len(), published.len()))?;
    let mut mismatches = Vec::new();
    let mut transcribed = 0;
    for r in &rows {
        let lower = r.lower.as_ref().map_or(0, |l| l.value);
        if r.lower.as_ref().is_some_and(|l| l.provenance == eaqec::bounds::LowerProvenance::Transcribed) {
            transcribed += 1;
        }
        let want = published[&(r.n, r.k)];
        if (lower, r.upper) != want {
            mismatches.push(format!(
                "[[{},{};{}]] computed {}-{} ({}) published {}-{}",
                r.n, r.k, r.c, lower, r.upper, r.upper_provenance, want.0, want.1
            ));
        }
    }
    let summary = format!("{} cells, {} lower bounds transcribed", rows.len(), transcribed);
    if mismatches.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; mismatches: {}", mismatches.join("; ")))
    }
}

fn criterion_5() -> Result<String, String> {
    let mut total = 0;
    for n in [4, 6] {
        for family in [Family::Repetition, Family::Accumulator] {
            let r = nonexistence_search(n, family).map_err(|e| e.to_string())?;
            ensure(!r.exists, || format!("survivor found: {r}"))?;
            total += r.candidates_checked;
        }
    }
    Ok(format!("no survivors among {total} candidates"))
}

fn criterion_6() -> Result<String, String> {
    for &(n, cells) in TABLE {
        let p1 = plotkin_bound(n, 1).map_err(|e| e.to_string())?;
        ensure(p1 == n, || format!("plotkin({n},1) = {p1}"))?;
        let k2 = parse_cell(cells.split_whitespace().nth(1).unwrap()).1;
        let p2 = plotkin_bound(n, 2).map_err(|e| e.to_string())?;
        ensure(p2 == k2, || format!("plotkin({n},2) = {p2}, table upper {k2}"))?;
    }
    Ok("3 <= n <= 15".into())
}

fn criterion_7() -> Result<String, String> {
    let circ = repetition_encoder_circuit(5).map_err(|e| e.to_string())?;
    let (logical, stab) = encoder_images(&circ);
    let rows = |xs: &[&str]| {
        SymplecticMatrix::new(5, xs.iter().map(|s| s.parse::<PauliOp>().unwrap()).collect()).unwrap()
    };
    let want_l = rows(&["XXXXX", "ZZZZZ"]);
    let want_s = rows(&["XXIII", "IZZZZ", "IXXXX", "ZZIII", "IIXXI", "IIIZZ", "IIIXX", "IIZZI"]);
    ensure(logical.same_span(&want_l), || format!("logical images {logical}"))?;
    ensure(stab.same_span(&want_s), || format!("ebit-slot images {stab}"))?;
    let code = repetition_code(5).map_err(|e| e.to_string())?;
    ensure(stab.same_span(code.stabilizer()), || "images differ from the sliding generators".into())?;
    Ok("both tables match up to row operations".into())
}

fn maximal_codes() -> Vec<(String, EaqecCode)> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.push((format!("repetition({n})"), repetition_code(n).unwrap()));
        out.push((format!("accumulator({n})"), accumulator_code(n).unwrap()));
    }
    for n in 3..=5 {
        out.push((format!("ebit(repetition({n}))"), extend_add_ebit(&repetition_code(n).unwrap()).unwrap()));
        out.push((format!("ebit(accumulator({n}))"), extend_add_ebit(&accumulator_code(n).unwrap()).unwrap()));
    }
    for n in 4..=6 {
        out.push((
            format!("demote(accumulator({n}))"),
            demote_logical_to_ebit(&accumulator_code(n).unwrap(), 0).unwrap(),
        ));
    }
    out
}

fn criterion_8() -> Result<String, String> {
    let codes = maximal_codes();
    let mut worst = f64::NEG_INFINITY;
    for (i, (label, code)) in codes.iter().enumerate() {
        ensure(code.is_maximal(), || format!("{label} is not maximal"))?;
        let b = code.enumerator(GroupKind::Logical).map_err(|e| e.to_string())?;
        for (j, p) in [0.01, 0.05, 0.1].into_iter().enumerate() {
            let bound = weight_enum_error_bound(&b, p).map_err(|e| e.to_string())?;
            let r = simulate_map_block_error(code, p, 100_000, 1000 + (3 * i + j) as u64)
                .map_err(|e| e.to_string())?;
            let slack = bound + 3.0 * r.ci_halfwidth - r.rate;
            ensure(slack >= 0.0, || {
                format!("{label} p={p}: rate {} > bound {bound} + 3 x {}", r.rate, r.ci_halfwidth)
            })?;
            worst = worst.max(r.rate - bound);
        }
    }
    for i in 1..=100 {
        let p = 0.75 * i as f64 / 101.0;
        let h = hashing_bound(p).map_err(|e| e.to_string())?;
        let t = rate_threshold(p).map_err(|e| e.to_string())?;
        ensure(h > t, || format!("p={p}: hashing {h} <= threshold {t}"))?;
    }
    Ok(format!("{} codes x 3 p x 1e5 trials; hashing > threshold on 100 points", codes.len()))
}

fn criterion_9() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut groups = 0;
    while groups < 200 {
        let n = rng.random_range(1..=4usize);
        let g = rng.random_range(0..=2 * n);
        let mut rows = Vec::new();
        for _ in 0..g {
            let xs: Vec<bool> = (0..n).map(|_| rng.random()).collect();
            let zs: Vec<bool> = (0..n).map(|_| rng.random()).collect();
            rows.push(PauliOp::from_bits(&xs, &zs).unwrap());
        }
        let gens = SymplecticMatrix::new(n, rows).unwrap();
        if !gens.is_independent() {
            continue;
        }
        groups += 1;
        let elements: Vec<PauliOp> = gens.enumerate_group(1 << 20).unwrap().collect();
        let order = elements.len() as i64;
        for index in 0..1u32 << (2 * n) {
            let xs: Vec<bool> = (0..n).map(|q| index >> q & 1 == 1).collect();
            let zs: Vec<bool> = (0..n).map(|q| index >> (n + q) & 1 == 1).collect();
            let e = PauliOp::from_bits(&xs, &zs).unwrap();
            let sum: i64 = elements
                .iter()
                .map(|m| if e.symplectic_product(m).unwrap() == 0 { 1 } else { -1 })
                .sum();
            let commutes = gens.rows().iter().all(|m| e.commutes_with(m).unwrap());
            let want = if commutes { order } else { 0 };
            ensure(sum == want, || format!("n={n} group {gens} E={e}: sum {sum}, expected {want}"))?;
        }
    }
    Ok(format!("{groups} random groups, every E"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<String, String>, Duration); 9] = [
        ("MacWilliams golden set", criterion_1, Duration::from_secs(1)),
        ("construction enumerators and distances", criterion_2, Duration::from_secs(30)),
        ("LP bound reproduction", criterion_3, Duration::from_secs(600)),
        ("distance table", criterion_4, Duration::from_secs(3600)),
        ("nonexistence for n = 4, 6", criterion_5, Duration::from_secs(300)),
        ("Plotkin closure", criterion_6, Duration::from_secs(1)),
        ("encoder circuit images", criterion_7, Duration::from_secs(1)),
        ("error-bound consistency", criterion_8, Duration::from_secs(300)),
        ("character-sum property", criterion_9, Duration::from_secs(10)),
    ];
    let mut unexpected = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let over = elapsed > *budget;
        match &result {
            Ok(detail) if !over => println!("criterion {}: PASS {name} ({detail}) [{elapsed:.1?}]", i + 1),
            Ok(detail) => println!(
                "criterion {}: FAIL {name} ({detail}) [{elapsed:.1?} exceeds {budget:?}]",
                i + 1
            ),
            Err(msg) => println!("criterion {}: FAIL {name}: {msg} [{elapsed:.1?}]", i + 1),
        }
        let known = i == 3
            && !over
            && result.as_ref().err().is_some_and(|msg| {
                let listed = msg.matches("computed").count();
                listed == KNOWN_TABLE_MISMATCHES.len()
                    && KNOWN_TABLE_MISMATCHES
                        .iter()
                        .all(|(n, k)| msg.contains(&format!("[[{n},{k};{}]]", n - k)))
            });
        if known {
            println!("  known mismatch only; not counted as a regression");
        } else if result.is_err() || over {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criterion failure(s)");
        ExitCode::FAILURE
    }
}
