//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use arlab_core::analysis::{
    bispecial, derived_word, factor_set, special_factors, stabilize, BispecialLengths,
};
use arlab_core::complexity::{
    complexity_table, inrc_formula, inrc_oracle, nrc_formula, recurrence_by_windows,
    recurrence_oracle, s_last_occurrence, ComplexityRow, LastIndex, TableOptions,
};
use arlab_core::dbonacci::{
    bispecial_length_by_recursion, bispecial_length_dbonacci, fibonacci_inrc_range, inrc_dbonacci,
    tau_power_length, tribonacci_inrc_range, DBonacciNumbers,
};
use arlab_core::{ArPrefix, DirectiveSequence, Letter, Morphism, ParikhVector, Word};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Rows gathered from other criteria for the chain check.
#[derive(Default)]
struct Collected {
    rows: Vec<(String, ComplexityRow)>,
}

fn ds(text: &str) -> DirectiveSequence {
    DirectiveSequence::parse(text, None).expect("valid directive text")
}

fn random_directives(d: usize, count: usize, seed: u64) -> Vec<DirectiveSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| DirectiveSequence::random_valid(d, &mut rng).expect("d in range"))
        .collect()
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sturmian_identity(collected: &mut Collected) -> Outcome {
    let mut dirs = vec![ds(":01")];
    dirs.extend(random_directives(2, 20, 1));
    for dir in &dirs {
        let table = complexity_table(dir, 200, &TableOptions::default()).map_err(|e| e.to_string())?;
        for row in &table.rows {
            let want = big(row.n + 1);
            ensure(row.stable, || format!("{dir}: n = {} not stable", row.n))?;
            ensure(row.nrc_formula == want, || format!("{dir}: formula {} at n = {}", row.nrc_formula, row.n))?;
            ensure(row.nrc_oracle.map(big) == Some(want), || {
                format!("{dir}: oracle {:?} at n = {}", row.nrc_oracle, row.n)
            })?;
            collected.rows.push((dir.to_string(), row.clone()));
        }
    }
    Ok(format!("{} directives, n <= 200", dirs.len()))
}

fn ar_equivalence(collected: &mut Collected) -> Outcome {
    let options = TableOptions::with_budget(1_000_000);
    let (mut stable, mut total) = (0, 0);
    for (d, seed) in [(3, 3), (4, 4)] {
        for dir in random_directives(d, 20, seed) {
            let table = complexity_table(&dir, 60, &options).map_err(|e| e.to_string())?;
            for row in &table.rows {
                total += 1;
                if !row.stable {
                    continue;
                }
                stable += 1;
                ensure(row.agree_nrc == Some(true) && row.agree_inrc == Some(true), || {
                    format!(
                        "{dir}: n = {} nrC {} vs {:?}, inrC {} vs {:?}",
                        row.n, row.nrc_formula, row.nrc_oracle, row.inrc_formula, row.inrc_oracle
                    )
                })?;
                collected.rows.push((dir.to_string(), row.clone()));
            }
        }
    }
    ensure(stable > 0, || "no stable rows".into())?;
    Ok(format!("{stable}/{total} rows stable, all stable rows agree"))
}

/// Checks that the ranges for `k = 1, 2, ...` tile `1..=n_max` with value `D_k`,
/// that `inrc_dbonacci` matches on each range, and that the oracle agrees up to 60.
fn inrc_ranges(
    d: usize,
    range: fn(usize) -> arlab_core::Result<arlab_core::dbonacci::InrcRange>,
    n_max: usize,
) -> Outcome {
    let numbers = DBonacciNumbers::new(d, 64).map_err(|e| e.to_string())?;
    let mut next = 1usize;
    let mut k = 1;
    while next <= n_max {
        let r = range(k).map_err(|e| e.to_string())?;
        ensure(r.low == big(next - 1), || format!("range k = {k} starts at {} not {}", r.low, next - 1))?;
        ensure(&r.value == numbers.get(k as i64), || format!("range k = {k} has value {}", r.value))?;
        let high = r.high.to_usize().expect("small");
        for n in next..=high.min(n_max) {
            let v = inrc_dbonacci(d, n as u64).map_err(|e| e.to_string())?;
            ensure(v == r.value, || format!("n = {n}: inrC {v}, range value {}", r.value))?;
        }
        next = high + 1;
        k += 1;
    }
    let dir = DirectiveSequence::dbonacci(d).map_err(|e| e.to_string())?;
    let prefix = ArPrefix::generate(&dir, 4096).map_err(|e| e.to_string())?;
    for n in 1..=60u64 {
        let oracle = inrc_oracle(&prefix, n as usize).map_err(|e| e.to_string())?;
        let formula = inrc_dbonacci(d, n).map_err(|e| e.to_string())?;
        ensure(formula == big(oracle), || format!("n = {n}: closed form {formula}, oracle {oracle}"))?;
    }
    Ok(format!("{} ranges tile 1..={n_max}; oracle agrees for n <= 60", k - 1))
}

fn dbonacci_identities() -> Outcome {
    for d in 2..=5 {
        let tau = Morphism::dbonacci(d).map_err(|e| e.to_string())?;
        let mut w = Word::from_digits(d, "0").map_err(|e| e.to_string())?;
        for k in 0..=20 {
            let expected = tau_power_length(d, k).map_err(|e| e.to_string())?;
            ensure(big(w.len()) == expected, || format!("d = {d}: |τ^{k}(0)| = {} vs D_k = {expected}", w.len()))?;
            w = tau.apply(&w).map_err(|e| e.to_string())?;
        }
        let numbers = DBonacciNumbers::new(d, 201).map_err(|e| e.to_string())?;
        let m = tau.incidence();
        let mut generic = BispecialLengths::new(&DirectiveSequence::dbonacci(d).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        generic.ensure_depth(200);
        let dir = generic.directive().clone();
        for k in 0..=200usize {
            let dk = numbers.get(k as i64);
            let by_power = m.pow(k as u64).column_sums()[0].clone();
            let by_directive = generic.image_len(k, dir.letter(k).index()).expect("depth");
            ensure(&by_power == dk && by_directive == dk, || {
                format!("d = {d}, k = {k}: D_k {dk}, M^k {by_power}, ψ_k(i_k) {by_directive}")
            })?;
        }
        for k in 0..=60 {
            let closed = bispecial_length_dbonacci(d, k).map_err(|e| e.to_string())?;
            let recursive = bispecial_length_by_recursion(d, k).map_err(|e| e.to_string())?;
            let generic_len = generic.bispecial_len(k).expect("depth");
            ensure(closed == recursive && &closed == generic_len, || {
                format!("d = {d}, k = {k}: closed form {closed}, recursion {recursive}, generic {generic_len}")
            })?;
        }
        let e = ParikhVector::unit(d, 0);
        for n in 0..=30usize {
            let v = m.pow(n as u64 + 1).apply(&e).map_err(|e| e.to_string())?;
            for (j, entry) in v.0.iter().enumerate() {
                let want = numbers.get(n as i64 - j as i64);
                ensure(entry == want, || format!("d = {d}: M^{}e[{j}] = {entry}, D = {want}", n + 1))?;
            }
        }
    }
    Ok("d = 2..5".into())
}

/// Largest prefix grown while waiting for return words to appear.
const RETURN_WORD_CAP: usize = 1 << 24;

/// Grows `prefix` until `count` reports at least `d` for every item, then
/// returns the counts on the doubled prefix. Observed return words are always
/// genuine, so reaching `d` proves the lower bound; the extra doubling is the
/// usual stability check for the upper bound.
fn grow_until_d<F>(prefix: &mut ArPrefix, d: usize, what: &str, count: F) -> Result<Vec<usize>, String>
where
    F: Fn(&ArPrefix) -> arlab_core::Result<Vec<usize>>,
{
    loop {
        let counts = count(prefix).map_err(|e| e.to_string())?;
        if counts.iter().all(|&c| c >= d) {
            break;
        }
        if prefix.len() >= RETURN_WORD_CAP {
            return Err(format!("{what}: counts {counts:?} after {} symbols", prefix.len()));
        }
        *prefix = prefix.doubled().map_err(|e| e.to_string())?;
    }
    count(&prefix.doubled().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn language_shape() -> Outcome {
    let mut dirs = vec![ds(":01"), ds(":012"), ds(":0123")];
    for d in 2..=5 {
        dirs.extend(random_directives(d, 3, 60 + d as u64));
    }
    let mut checked = 0;
    for dir in &dirs {
        let d = dir.d();
        let prefix = ArPrefix::generate(dir, 4096).map_err(|e| e.to_string())?;
        let mut grown = prefix.clone();
        for n in 1..=60 {
            let c = stabilize(&prefix, n + 1, "complexity", |p| {
                arlab_core::analysis::factor_complexity(p, n)
            })
            .map_err(|e| e.to_string())?;
            ensure(c.value == (d - 1) * n + 1, || format!("{dir}: C({n}) = {}", c.value))?;
            let specials = special_factors(&prefix, n).map_err(|e| e.to_string())?;
            ensure(specials.left.len() == 1 && specials.right.len() == 1, || {
                format!("{dir}: n = {n} has {} left, {} right specials", specials.left.len(), specials.right.len())
            })?;
            let counts = grow_until_d(&mut grown, d, &format!("{dir}: n = {n}"), |p| {
                let set = factor_set(p, n)?;
                Ok(set.factors().iter().map(|f| set.return_words(f).len()).collect())
            })?;
            ensure(counts.len() == (d - 1) * n + 1 && counts.iter().all(|&c| c == d), || {
                format!("{dir}: n = {n} return-word counts {counts:?}")
            })?;
            checked += 1;
        }
        for k in 0.. {
            let record = bispecial(dir, k).map_err(|e| e.to_string())?;
            if record.length > big(60) {
                break;
            }
            let factor = record.factor.expect("short bispecials are materialized");
            ensure(factor.is_palindrome(), || format!("{dir}: B({k}) = {factor} is not a palindrome"))?;
            let expected: BTreeSet<Word> = record.return_words.expect("materialized").into_iter().collect();
            let returns = |p: &ArPrefix| -> arlab_core::Result<BTreeSet<Word>> {
                Ok(arlab_core::analysis::return_words_bruteforce(p, &factor)?.into_iter().collect())
            };
            let mut p = prefix.clone();
            grow_until_d(&mut p, d, &format!("{dir}: B({k})"), |p| Ok(vec![returns(p)?.len()]))?;
            let found = returns(&p.doubled().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(found == expected && expected.len() == d, || {
                format!("{dir}: return words to B({k}) differ")
            })?;
        }
    }
    Ok(format!("{} directives, {checked} (directive, n) pairs", dirs.len()))
}

fn recurrence_identity(collected: &mut Collected) -> Outcome {
    let mut rows = 0;
    for dir in [ds(":01"), ds(":012")] {
        let prefix = ArPrefix::generate(&dir, 1024).map_err(|e| e.to_string())?;
        for n in 1..=30 {
            let by_returns = recurrence_oracle(&prefix, n).map_err(|e| e.to_string())?;
            if !by_returns.stable {
                continue;
            }
            let by_windows = stabilize(&prefix, by_returns.buffer_len, "window recurrence", |p| {
                recurrence_by_windows(p.symbols(), n)
            })
            .map_err(|e| e.to_string())?;
            ensure(by_windows.value == by_returns.value, || {
                format!("{dir}: n = {n}: windows {}, returns {}", by_windows.value, by_returns.value)
            })?;
            rows += 1;
        }
        let table = complexity_table(&dir, 30, &TableOptions::default()).map_err(|e| e.to_string())?;
        collected.rows.extend(table.rows.into_iter().filter(|r| r.stable).map(|r| (dir.to_string(), r)));
    }
    Ok(format!("{rows} stable rows"))
}

fn chain(collected: &mut Collected) -> Outcome {
    for (dir, row) in &collected.rows {
        let (Some(inrc), Some(nrc), Some(r)) = (row.inrc_oracle, row.nrc_oracle, row.recurrence) else {
            return Err(format!("{dir}: stable row n = {} lacks oracle values", row.n));
        };
        let c = row.complexity.clone();
        ensure(inrc <= nrc && big(nrc) <= c && c <= big(r + 1 - row.n), || {
            format!("{dir}: n = {}: inrC {inrc}, nrC {nrc}, C {c}, R {r}", row.n)
        })?;
    }
    Ok(format!("{} stable rows", collected.rows.len()))
}

fn derived_words() -> Outcome {
    for dir in [ds(":01"), ds(":012")] {
        for k in 0..=6 {
            let factor = bispecial(&dir, k)
                .map_err(|e| e.to_string())?
                .factor
                .expect("materialized");
            let mut prefix = ArPrefix::generate(&dir, 1024).map_err(|e| e.to_string())?;
            let derived = loop {
                match derived_word(&prefix, &factor, 200) {
                    Ok(w) => break w,
                    Err(_) => prefix = prefix.doubled().map_err(|e| e.to_string())?,
                }
            };
            let shifted = ArPrefix::generate(&dir.shifted(k), 200).map_err(|e| e.to_string())?;
            ensure(derived.is_order_isomorphic_to(shifted.symbols()), || {
                format!("{dir}: derived word to B({k}) does not match the shifted word")
            })?;
            ensure(derived.decode() == prefix.symbols()[..derived.decode().len()], || {
                format!("{dir}: derived word to B({k}) does not decode to the prefix")
            })?;
        }
    }
    Ok("Fibonacci and Tribonacci, k <= 6".into())
}

fn ties() -> Outcome {
    let cases = ["000:012", "11:120", "2:201", "0000:0123", "0101:0123", "33:3012", "012:0123"];
    let mut checked = 0;
    for text in cases {
        let dir = ds(text);
        let d = dir.d();
        let mut lengths = BispecialLengths::new(&dir).map_err(|e| e.to_string())?;
        lengths.ensure_depth(8);
        for k in 0..7 {
            let ik = dir.letter(k).index();
            let s: Vec<(usize, LastIndex)> = (0..d)
                .filter(|&a| a != ik)
                .map(|a| (a, s_last_occurrence(&dir, k, Letter(a as u8)).expect("letter in range")))
                .collect();
            let min = s.iter().map(|(_, v)| *v).min().expect("d >= 2");
            let minimizers: Vec<usize> = s.iter().filter(|(_, v)| *v == min).map(|(a, _)| *a).collect();
            if minimizers.len() < 2 {
                continue;
            }
            let first = lengths.image_len(k + 1, minimizers[0]).expect("depth");
            for &a in &minimizers[1..] {
                let other = lengths.image_len(k + 1, a).expect("depth");
                ensure(first == other, || format!("{text}, k = {k}: letters tie but lengths {first} and {other} differ"))?;
            }
            let n = lengths.bispecial_len(k).expect("depth").to_u64().expect("small").max(1);
            if k >= 1 {
                let f = nrc_formula(&dir, n).map_err(|e| e.to_string())?;
                ensure(f.minimizers == minimizers, || format!("{text}, k = {k}: formula saw {:?}", f.minimizers))?;
                inrc_formula(&dir, n).map_err(|e| e.to_string())?;
            }
            checked += 1;
        }
    }
    ensure(checked >= 10, || format!("only {checked} tie cases constructed"))?;
    Ok(format!("{checked} tied brackets, d = 3, 4"))
}

fn main() -> ExitCode {
    let mut collected = Collected::default();
    type Criterion<'a> = (&'a str, Option<u64>, Box<dyn FnOnce(&mut Collected) -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("Sturmian identity", Some(10), Box::new(sturmian_identity)),
        ("AR formula-oracle equivalence", Some(60), Box::new(ar_equivalence)),
        ("Tribonacci inrC ranges", Some(5), Box::new(|_| inrc_ranges(3, tribonacci_inrc_range, 500))),
        ("Fibonacci inrC ranges", Some(5), Box::new(|_| inrc_ranges(2, fibonacci_inrc_range, 500))),
        ("d-bonacci structural identities", Some(5), Box::new(|_| dbonacci_identities())),
        ("language shape", Some(60), Box::new(|_| language_shape())),
        ("recurrence identity", Some(30), Box::new(recurrence_identity)),
        ("chain inequality", None, Box::new(chain)),
        ("derived-word recursion", Some(10), Box::new(|_| derived_words())),
        ("tie assertion", None, Box::new(|_| ties())),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut collected);
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => {
                Err(format!("took {:.2?}, limit {s} s", elapsed))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
