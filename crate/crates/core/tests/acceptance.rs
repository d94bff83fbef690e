//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use delcode::analysis::{redundancy, redundancy_bound, size_lower_bound, size_lower_bound_direct, size_lower_bound_log2};
use delcode::guard::binomial;
use delcode::model::{apply_stable_deletions, apply_unstable_deletions, delete_positions};
use delcode::multfree::{ExplicitSetCode, SetCode};
use delcode::perm_code::{greedy_sd_code, sd_decode, verify_sd_property, DeletionKind, PermCodeBook, ScanOrder};
use delcode::simulate::simulate;
use delcode::vt::{best_class, class_sizes, decode_asymmetric, enumerate_class, BitWord, VtParams};
use delcode::modular::Modulus;
use delcode::{
    induced_permutation, induced_set, psi, ranks_within, DeletionPattern, Mode, MultFreeCode, MultFreeCodeSpec,
    Permutation, SymbolSet, Word,
};
use itertools::Itertools;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Check {
    let elapsed = started.elapsed();
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn patterns(n: usize, t: usize) -> impl Iterator<Item = DeletionPattern> {
    (0..=t.min(n)).flat_map(move |k| (1..=n).combinations(k).map(move |p| DeletionPattern::new(n, p).unwrap()))
}

fn perm(images: &[u32]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

fn set(q: u32, members: &[u32]) -> SymbolSet {
    SymbolSet::from_symbols(q, members.iter().copied()).unwrap()
}

fn worked_example_spec() -> MultFreeCodeSpec {
    MultFreeCodeSpec {
        q: 8,
        n: 5,
        t: 2,
        mode: Mode::Stable,
        set_code: SetCode::Explicit(
            ExplicitSetCode::new(8, 5, 2, vec![set(8, &[0, 1, 2, 3, 4]), set(8, &[3, 4, 5, 6, 7])]).unwrap(),
        ),
        perm_code: PermCodeBook::new(
            5,
            2,
            DeletionKind::Stable,
            vec![perm(&[1, 2, 3, 4, 5]), perm(&[4, 5, 2, 3, 1])],
            ScanOrder::Lex,
        )
        .unwrap(),
    }
}

/// AC1: the four listed codewords and the decode of (6,4,3) with its intermediates.
fn worked_example() -> Check {
    let started = Instant::now();
    let code = MultFreeCode::new(worked_example_spec()).map_err(|e| e.to_string())?;
    let words: Vec<Vec<u32>> = code.iter().map(Word::into_symbols).collect();
    let expected = vec![vec![0, 1, 2, 3, 4], vec![3, 4, 1, 2, 0], vec![3, 4, 5, 6, 7], vec![6, 7, 4, 5, 3]];
    ensure(words == expected, || format!("codewords {words:?}"))?;

    let y = Word::new(vec![6, 4, 3], 8).unwrap();
    ensure(induced_set(&y).unwrap() == set(8, &[3, 4, 6]), || "A(y) mismatch".into())?;
    let trace = code.decode_trace(&y).map_err(|e| e.to_string())?;
    ensure(trace.set == set(8, &[3, 4, 5, 6, 7]), || format!("A(x) = {}", trace.set))?;
    ensure(trace.tau == vec![4, 2, 1], || format!("tau = {:?}", trace.tau))?;
    ensure(trace.permutation == perm(&[4, 5, 2, 3, 1]), || format!("sigma = {}", trace.permutation))?;
    ensure(trace.word.symbols() == [6, 7, 4, 5, 3], || format!("x = {}", trace.word))?;
    within(Duration::from_secs(1), started)
}

/// AC2: Φ∘Ψ = id and Ψ∘Φ = id over M_6^3 and all (set, perm) pairs with q = 6, n = 3.
fn bijection() -> Check {
    let started = Instant::now();
    let mut words = 0;
    for symbols in (0..6u32).permutations(3) {
        let x = Word::multiplicity_free(symbols, 6).unwrap();
        let back = psi(&induced_set(&x).unwrap(), &induced_permutation(&x).unwrap()).unwrap();
        ensure(back == x, || format!("Ψ∘Φ({x}) = {back}"))?;
        words += 1;
    }
    ensure(words == 120, || format!("{words} words"))?;
    let mut pairs = 0;
    for members in (0..6u32).combinations(3) {
        let a = set(6, &members);
        for images in (1..=3u32).permutations(3) {
            let sigma = perm(&images);
            let x = psi(&a, &sigma).unwrap();
            let back = (induced_set(&x).unwrap(), induced_permutation(&x).unwrap());
            ensure(back == (a.clone(), sigma.clone()), || format!("Φ∘Ψ({a}, {sigma}) differs"))?;
            pairs += 1;
        }
    }
    ensure(pairs == 120, || format!("{pairs} pairs"))?;
    within(Duration::from_secs(1), started)
}

/// AC3: exhaustive asymmetric decoding of the q=10, n=5, t=2, p=11 best class,
/// checked against a brute-force class search.
fn vt_decoding() -> Check {
    let started = Instant::now();
    let p = Modulus::new(11).unwrap();
    let (a, _) = best_class(10, 5, 2, p).map_err(|e| e.to_string())?;
    let params = VtParams::new(10, 5, 2, p, a).unwrap();
    let class = enumerate_class(&params).map_err(|e| e.to_string())?;
    let mut cases = 0;
    for x in &class {
        let ones: Vec<usize> = x.ones().collect();
        for e in 0..=2 {
            for flipped in ones.iter().combinations(e) {
                let kept: Vec<usize> = ones.iter().copied().filter(|i| !flipped.contains(&i)).collect();
                let y = BitWord::from_positions(10, &kept);
                let decoded = decode_asymmetric(&y, &params).map_err(|err| format!("{y}: {err}"))?;
                let oracle: Vec<&BitWord> = class.iter().filter(|c| c.covers(&y)).collect();
                ensure(decoded == *x, || format!("{y} decoded to {decoded}, sent {x}"))?;
                ensure(oracle == vec![x], || format!("oracle for {y} found {} words", oracle.len()))?;
                cases += 1;
            }
        }
    }
    ensure(cases == class.len() * 16, || format!("{cases} cases"))?;
    within(Duration::from_secs(30), started)
}

/// AC4: pigeonhole and partition for weight-5 words of length 10.
fn pigeonhole() -> Check {
    let p = Modulus::new(11).unwrap();
    let (_, size) = best_class(10, 5, 2, p).map_err(|e| e.to_string())?;
    ensure(size >= 3, || format!("best class size {size}"))?;
    let total: u64 = class_sizes(10, 5, 2, p).map_err(|e| e.to_string())?.values().sum();
    ensure(total == 252 && binomial(10, 5) == Some(252), || format!("partition sums to {total}"))
}

/// AC5: greedy SD code (5,2) verifies and decodes every <=2 stable deletion;
/// t = 0 codes are all of S_n for n <= 6.
fn permutation_codes() -> Check {
    let started = Instant::now();
    let code = greedy_sd_code(5, 2).map_err(|e| e.to_string())?;
    ensure(verify_sd_property(&code), || "greedy (5,2) balls overlap".into())?;
    for sigma in &code.codewords {
        for pattern in patterns(5, 2) {
            let received = apply_stable_deletions(sigma, &pattern).unwrap();
            let decoded = sd_decode(&code, received.symbols()).map_err(|e| format!("{received}: {e}"))?;
            ensure(&decoded == sigma, || format!("{received} decoded to {decoded}, sent {sigma}"))?;
        }
    }
    let mut factorial = 1;
    for n in 1..=6usize {
        factorial *= n;
        let size = greedy_sd_code(n, 0).map_err(|e| e.to_string())?.len();
        ensure(size == factorial, || format!("greedy ({n},0) has {size} codewords"))?;
    }
    within(Duration::from_secs(60), started)
}

/// AC6: the τ construction and the induced permutation commute with deletions.
fn commutation() -> Check {
    for q in 1..=8u32 {
        for n in 1..=5usize.min(q as usize) {
            for symbols in (0..q).permutations(n) {
                let x = Word::multiplicity_free(symbols, q).unwrap();
                let a = induced_set(&x).unwrap();
                let sigma = induced_permutation(&x).unwrap();
                for pattern in patterns(n, 2) {
                    let y = delete_positions(&x, &pattern).unwrap();
                    let tau = ranks_within(&a, &y).map_err(|e| e.to_string())?;
                    let stable = apply_stable_deletions(&sigma, &pattern).unwrap();
                    ensure(tau == stable.symbols(), || format!("tau mismatch at x={x} I={pattern:?}"))?;
                    let unstable = apply_unstable_deletions(&sigma, &pattern).unwrap();
                    ensure(induced_permutation(&y).unwrap() == unstable, || {
                        format!("P(y) mismatch at x={x} I={pattern:?}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// AC7: constructed (12,5,2) code survives 1000 seeded channel trials, reproducibly.
fn monte_carlo() -> Check {
    let started = Instant::now();
    let spec = MultFreeCodeSpec::construct(12, 5, 2, Mode::Stable).map_err(|e| e.to_string())?;
    let code = MultFreeCode::new(spec).map_err(|e| e.to_string())?;
    let first = simulate(&code, 1000, 2, 20_240_601).map_err(|e| e.to_string())?;
    ensure(first.trials == 1000 && first.failures == 0, || {
        format!("{} failures in {} trials", first.failures, first.trials)
    })?;
    let second = simulate(&code, 1000, 2, 20_240_601).map_err(|e| e.to_string())?;
    ensure(first == second, || "rerun with the same seed changed the tally".into())?;
    within(Duration::from_secs(60), started)
}

/// AC8: bound arithmetic.
fn bounds() -> Check {
    let (value, _) = size_lower_bound(8, 5, 2);
    ensure((value - 0.0002625).abs() <= 1e-10, || format!("size_lower_bound(8,5,2) = {value}"))?;
    let r = redundancy(8, 5, 4.0);
    ensure(r == 13.0, || format!("redundancy(8,5,4) = {r}"))?;
    let rb = redundancy_bound(1024, 16, 1);
    ensure(rb == 21.0, || format!("redundancy_bound(1024,16,1) = {rb}"))?;
    for (q, n, t) in [(8, 5, 2), (100, 5, 1), (1024, 16, 1), (256, 8, 2), (50, 20, 3), (12, 5, 2)] {
        let direct = size_lower_bound_direct(q, n, t);
        let via_log = size_lower_bound_log2(q, n, t).exp2();
        let rel = ((direct - via_log) / direct).abs();
        ensure(rel < 1e-10, || format!("({q},{n},{t}): direct {direct} vs log-space {via_log}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 worked example", worked_example),
        ("AC2 bijection suite", bijection),
        ("AC3 VT asymmetric decoding", vt_decoding),
        ("AC4 pigeonhole bound", pigeonhole),
        ("AC5 permutation SD suite", permutation_codes),
        ("AC6 commutation laws", commutation),
        ("AC7 end-to-end Monte-Carlo", monte_carlo),
        ("AC8 bounds arithmetic", bounds),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        match check() {
            Ok(()) => println!("PASS {name} ({:.2?})", started.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
