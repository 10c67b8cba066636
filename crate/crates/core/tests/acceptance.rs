//! The acceptance suite: twelve criteria, one PASS/FAIL line each.
//! Runs without the libtest harness so the lines show up uncaptured.

mod common;

use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use common::{r, Sym};
use graev::checks::{all_abelian_words, all_reduced_words};
use graev::extend::{embedding_suite, extend_qpm, non_extendability_witness, EmbeddingInstance};
use graev::formats::{read_json, EmbeddingFile};
use graev::gen::{labels, Generator};
use graev::graev::{
    abelian_norm_matching, abelian_norm_oracle, enumerate_abelian_schemes, enumerate_schemes, gamma,
    hat_dist, hat_dist_abelian, lemma2_decompose, lemma4_factorize, norm_dp, norm_oracle, norm_oracle_with, pair_sum,
    OracleOptions, Pairing,
};
use graev::qpspace::{frink_metrize, Qpm};
use graev::quniform::{fine_quniformity, lemma3_check, subspace_check, FiniteGroup, FiniteTopology, GroupSubset};
use graev::words::{AbelianWord, Letter, Point, Word};
use graev::{Error, Rational};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn text(g: &Word, rho: &Qpm) -> String {
    g.display(rho.labels()).to_string()
}

fn instance_a() -> Qpm {
    common::qpm(&["a", "b"], common::instance_a_matrix())
}

/// Runs `check` over `items` on every core; stops at the first failure.
fn par_check<T: Sync>(items: &[T], check: impl Fn(&T) -> Result<(), String> + Sync) -> Result<(), String> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = items.len().div_ceil(threads).max(1);
    let stop = AtomicBool::new(false);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let (stop, check) = (&stop, &check);
                s.spawn(move || {
                    for item in part {
                        if stop.load(Ordering::Relaxed) {
                            return Ok(());
                        }
                        if let Err(e) = check(item) {
                            stop.store(true, Ordering::Relaxed);
                            return Err(e);
                        }
                    }
                    Ok(())
                })
            })
            .collect();
        handles.into_iter().try_for_each(|h| h.join().expect("worker panicked"))
    })
}

fn to_sym(l: Letter) -> Sym {
    match l {
        Letter::Pos(p) => (p.0, 1),
        Letter::Neg(p) => (p.0, -1),
        Letter::Neutral => common::E,
    }
}

fn coeff_vec(h: &AbelianWord, size: usize) -> Vec<i64> {
    (0..size).map(|p| h.coeff(Point(p))).collect()
}

fn c1_dp_vs_oracle() -> Outcome {
    let mut spaces = vec![instance_a(), Qpm::zero(labels(1)).unwrap()];
    let mut gen = Generator::new(0xA11CE);
    for n in [1, 2, 2, 3, 3] {
        spaces.push(gen.qpm(n));
    }
    let (mut exhaustive, mut widened) = (0, 0);
    for rho in &spaces {
        let words = all_reduced_words(rho.size(), 6);
        // 2m(2m-1)^{k-1} reduced words of length k.
        let m = 2 * rho.size();
        let expected: usize = (1..=6).map(|k| m * (m - 1).pow(k as u32 - 1)).sum();
        if words.len() != expected {
            return Err(format!("enumerated {} words over {} points, expected {expected}", words.len(), rho.size()));
        }
        par_check(&words, |g| {
            let dp = norm_dp(g, rho).map_err(|e| e.to_string())?;
            let oracle = norm_oracle(g, rho).map_err(|e| e.to_string())?;
            if dp != oracle.value {
                return Err(format!("{}: dp {dp} vs oracle {}", text(g, rho), oracle.value));
            }
            Ok(())
        })?;
        // Widening the padding window by one level never finds anything cheaper.
        let short: Vec<&Word> = words.iter().filter(|g| g.len() <= 4).collect();
        par_check(&short, |g| {
            let wide = norm_oracle_with(g, rho, OracleOptions { extra_levels: 1 }).map_err(|e| e.to_string())?;
            let dp = norm_dp(g, rho).map_err(|e| e.to_string())?;
            if wide.value != dp {
                return Err(format!("{}: widened oracle {} vs dp {dp}", text(g, rho), wide.value));
            }
            Ok(())
        })?;
        widened += short.len();
        exhaustive += words.len();
    }
    // The reference brute force agrees on short words of instance A.
    let a = instance_a();
    for g in all_reduced_words(2, 4) {
        let reference = common::norm(a.matrix(), &common::syms(&g), g.len());
        let dp = norm_dp(&g, &a).unwrap();
        if reference != dp {
            return Err(format!("{}: dp {dp} vs reference {reference}", text(&g, &a)));
        }
    }
    let mut gen = Generator::new(0xB0B);
    let cases: Vec<(Qpm, Word)> = (0..500)
        .map(|_| {
            let n = gen.between(1, 4);
            let rho = gen.qpm(n);
            let len = gen.between(1, 8);
            let g = gen.reduced_word(n, len);
            (rho, g)
        })
        .collect();
    par_check(&cases, |(rho, g)| {
        let dp = norm_dp(g, rho).map_err(|e| e.to_string())?;
        let oracle = norm_oracle(g, rho).map_err(|e| e.to_string())?;
        if dp != oracle.value {
            return Err(format!("{}: dp {dp} vs oracle {}", text(g, rho), oracle.value));
        }
        let replay = gamma(&oracle.witness_word, &oracle.witness_scheme, rho).map_err(|e| e.to_string())?;
        if replay != oracle.value || oracle.witness_word.reduce() != *g {
            return Err(format!("{}: witness does not realize {}", text(g, rho), oracle.value));
        }
        Ok(())
    })?;
    Ok(format!(
        "{exhaustive} exhaustive words over {} spaces ({widened} also with a widened window) and 500 random words agree",
        spaces.len()
    ))
}

fn c2_abelian() -> Outcome {
    let mut spaces = vec![instance_a(), Qpm::zero(labels(1)).unwrap()];
    let mut gen = Generator::new(0xABE1);
    for n in [2, 3, 3] {
        spaces.push(gen.qpm(n));
    }
    let mut exhaustive = 0;
    for rho in &spaces {
        let words = all_abelian_words(rho.size(), 6);
        par_check(&words, |h| {
            let fast = abelian_norm_matching(h, rho).map_err(|e| e.to_string())?;
            let oracle = abelian_norm_oracle(h, rho).map_err(|e| e.to_string())?;
            if fast != oracle.value {
                return Err(format!("{:?}: matching {fast} vs oracle {}", h.coeffs(), oracle.value));
            }
            if h.len() <= 4 {
                let reference = common::abelian_norm(rho.matrix(), &coeff_vec(h, rho.size()), 2);
                if reference != fast {
                    return Err(format!("{:?}: matching {fast} vs reference {reference}", h.coeffs()));
                }
            }
            Ok(())
        })?;
        exhaustive += words.len();
    }
    let mut gen = Generator::new(0xABE2);
    let cases: Vec<(Qpm, AbelianWord)> = (0..500)
        .map(|_| {
            let n = gen.between(1, 4);
            let rho = gen.qpm(n);
            let len = gen.between(1, 8);
            let h = gen.abelian_word(n, len);
            (rho, h)
        })
        .collect();
    par_check(&cases, |(rho, h)| {
        let fast = abelian_norm_matching(h, rho).map_err(|e| e.to_string())?;
        let oracle = abelian_norm_oracle(h, rho).map_err(|e| e.to_string())?;
        if fast != oracle.value {
            return Err(format!("{:?}: matching {fast} vs oracle {}", h.coeffs(), oracle.value));
        }
        Ok(())
    })?;
    Ok(format!("{exhaustive} exhaustive elements and 500 random elements agree"))
}

fn c3_restriction() -> Outcome {
    let mut gen = Generator::new(0x3E5);
    let mut pairs = 0;
    for _ in 0..200 {
        let n = gen.between(1, 4);
        let rho = gen.qpm(n);
        for x in 0..n {
            for y in 0..n {
                let gx = Word::letter(Letter::pos(x));
                let gy = Word::letter(Letter::pos(y));
                let free = hat_dist(&gx, &gy, &rho).unwrap();
                let abelian = hat_dist_abelian(&AbelianWord::generator(x), &AbelianWord::generator(y), &rho).unwrap();
                let reference = common::norm(rho.matrix(), &common::syms(&gx.invert().multiply(&gy)), 2);
                let oracle = norm_oracle(&gx.invert().multiply(&gy), &rho).unwrap().value;
                let want = rho.dist(x, y);
                if &free != want || &abelian != want || &reference != want || &oracle != want {
                    return Err(format!(
                        "({x},{y}): free {free}, abelian {abelian}, reference {reference}, oracle {oracle}, rho {want}"
                    ));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs over 200 spaces restrict exactly"))
}

fn c4_prenorm() -> Outcome {
    let mut gen = Generator::new(0x4A);
    let cases: Vec<(Qpm, Word, Word, Word)> = (0..1000)
        .map(|_| {
            let n = gen.between(1, 4);
            let rho = gen.qpm(n);
            let (l1, l2, l3) = (gen.between(0, 5), gen.between(0, 5), gen.between(0, 3));
            (rho, gen.reduced_word(n, l1), gen.reduced_word(n, l2), gen.reduced_word(n, l3))
        })
        .collect();
    par_check(&cases, |(rho, g, h, w)| {
        let n = |x: &Word| norm_dp(&x.reduce(), rho).map_err(|e| e.to_string());
        if !n(&Word::identity())?.is_zero() {
            return Err("N(e) is not 0".into());
        }
        let (ng, nh, ngh) = (n(g)?, n(h)?, n(&g.multiply(h))?);
        if ngh > &ng + &nh {
            return Err(format!("N({} · {}) = {ngh} > {ng} + {nh}", text(g, rho), text(h, rho)));
        }
        let conj = n(&w.multiply(g).multiply(&w.invert()))?;
        if conj != ng {
            return Err(format!("N of {} conjugated by {} is {conj}, not {ng}", text(g, rho), text(w, rho)));
        }
        Ok(())
    })?;
    Ok("1000 triples satisfy N(e) = 0, subadditivity and conjugation invariance".into())
}

fn c5_asymmetry() -> Outcome {
    let a = instance_a();
    let labels = a.labels().to_vec();
    let mut values = Vec::new();
    for (word, want) in [("a^-1 b", r(1, 4)), ("b^-1 a", r(1, 1))] {
        let g = Word::parse(word, &labels).unwrap();
        let dp = norm_dp(&g, &a).unwrap();
        let oracle = norm_oracle(&g, &a).unwrap().value;
        let reference = common::norm(a.matrix(), &common::syms(&g), 4);
        if dp != want || oracle != want || reference != want {
            return Err(format!("N({word}): dp {dp}, oracle {oracle}, reference {reference}, expected {want}"));
        }
        values.push(dp);
    }
    Ok(format!("N(a^-1 b) = {}, N(b^-1 a) = {}", values[0], values[1]))
}

fn c6_lemma2() -> Outcome {
    let mut gen = Generator::new(0x12);
    let (mut below, mut above, mut tries) = (0, 0, 0);
    while below < 200 || above < 50 {
        tries += 1;
        if tries > 20_000 {
            return Err(format!("only {below} elements with norm below 1 found"));
        }
        let n = gen.between(1, 4);
        let rho = gen.qpm(n);
        // Balanced elements Σ(z − y) reach norms below 1 often.
        let h = if gen.coin(0.7) {
            let k = gen.between(1, 3);
            (0..k).fold(AbelianWord::neutral(), |acc, _| {
                let (y, z) = (gen.below(n), gen.below(n));
                acc.add(&AbelianWord::generator(z)).sub(&AbelianWord::generator(y))
            })
        } else {
            let len = gen.between(1, 6);
            gen.abelian_word(n, len)
        };
        if h.is_neutral() {
            continue;
        }
        let norm = abelian_norm_matching(&h, &rho).unwrap();
        if norm >= Rational::one() && above >= 50 {
            continue;
        }
        if norm < Rational::one() && below >= 200 {
            continue;
        }
        let dec = lemma2_decompose(&h, &rho).map_err(|e| e.to_string())?;
        if pair_sum(&dec.pairs) != h {
            return Err(format!("{:?}: pairs do not sum to h", h.coeffs()));
        }
        let sum: Rational = dec
            .pairs
            .iter()
            .map(|&(u, v)| common::rho_star(rho.matrix(), to_sym(u), to_sym(v)))
            .sum();
        if sum != norm || dec.sum != norm {
            return Err(format!("{:?}: pair cost {sum} vs norm {norm}", h.coeffs()));
        }
        if h.len() <= 6 {
            let reference = common::abelian_norm(rho.matrix(), &coeff_vec(&h, n), 2);
            if reference != norm {
                return Err(format!("{:?}: norm {norm} vs reference {reference}", h.coeffs()));
            }
        }
        if norm < Rational::one() {
            let Some(form) = &dec.metric_form else {
                return Err(format!("{:?}: norm {norm} < 1 without a metric form", h.coeffs()));
            };
            let total = form.iter().fold(AbelianWord::neutral(), |acc, &(y, z)| {
                acc.add(&AbelianWord::generator(z.0)).sub(&AbelianWord::generator(y.0))
            });
            let cost: Rational = form.iter().map(|&(y, z)| rho.dist(y.0, z.0).clone()).sum();
            if total != h || cost != norm {
                return Err(format!("{:?}: metric form sums to cost {cost}", h.coeffs()));
            }
            below += 1;
        } else {
            above += 1;
        }
    }
    Ok(format!("{below} elements below 1 and {above} at or above 1 decompose exactly"))
}

fn c7_lemma4() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        let schemes: Vec<_> = enumerate_schemes(n).collect();
        for phi in &schemes {
            // Distinct generators under every sign pattern.
            for signs in 0u32..(1 << (2 * n)) {
                let letters: Vec<Letter> = (0..2 * n)
                    .map(|i| if signs >> i & 1 == 1 { Letter::neg(i) } else { Letter::pos(i) })
                    .collect();
                let g = Word::from_letters(letters);
                let f = lemma4_factorize(&g, phi).map_err(|e| e.to_string())?;
                // Rebuild the product independently of the library helper.
                let x = g.letters();
                let mut product = Word::identity();
                for (&i, h) in f.indices.iter().zip(&f.conjugators) {
                    let core = Word::from_letters(vec![x[i], x[phi.partner(i)]]);
                    product = product.multiply(&h.multiply(&core).multiply(&h.invert()));
                }
                let mut openers: Vec<usize> = phi.pairs().into_iter().map(|(a, _)| a).collect();
                openers.sort_unstable();
                if product.reduce() != g || f.indices != openers {
                    return Err(format!("scheme {phi} on sign pattern {signs:b}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (scheme, word) pairs with 2n <= 8 factor correctly"))
}

fn c8_frink() -> Outcome {
    let mut gen = Generator::new(0xF7);
    for case in 0..200 {
        let n = gen.between(1, 6);
        let depth = gen.between(1, 4);
        let chain = gen.chain(n, depth);
        let rho = frink_metrize(&chain);
        let m = rho.matrix();
        if (0..n).any(|x| !m[x][x].is_zero()) {
            return Err(format!("case {case}: nonzero diagonal"));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m[x][z] > &m[x][y] + &m[y][z] {
                        return Err(format!("case {case}: triangle fails at ({x},{y},{z})"));
                    }
                }
            }
        }
        let levels = chain.levels();
        for i in 1..levels.len() {
            let bound = r(1, 1 << i);
            for x in 0..n {
                for y in 0..n {
                    let inner = levels[i].contains(x, y);
                    let small = rho.dist(x, y) <= &bound;
                    let outer = levels[i - 1].contains(x, y);
                    if (inner && !small) || (small && !outer) {
                        return Err(format!("case {case}: level {i} fails at ({x},{y}) with rho {}", rho.dist(x, y)));
                    }
                }
            }
        }
    }
    Ok("200 chains satisfy V_i within {rho <= 2^-i} within V_(i-1)".into())
}

fn product_contained(group: &FiniteGroup, chain: &[GroupSubset], ks: &[usize], r: usize) -> bool {
    let mut acc = vec![group.identity()];
    for &k in ks {
        let mut next: Vec<usize> = acc
            .iter()
            .flat_map(|&a| chain[k].elements().into_iter().map(move |b| (a, b)))
            .map(|(a, b)| group.table()[a * group.order() + b])
            .collect();
        next.sort_unstable();
        next.dedup();
        acc = next;
    }
    acc.iter().all(|&g| chain[r].contains(g))
}

fn c9_lemma3() -> Outcome {
    let mut gen = Generator::new(0x93);
    let s4 = FiniteGroup::symmetric(4);
    let (mut cyclic, mut symmetric) = (0, 0);
    for case in 0..200 {
        let group = if case % 2 == 0 {
            cyclic += 1;
            FiniteGroup::cyclic(gen.between(1, 256))
        } else {
            symmetric += 1;
            s4.clone()
        };
        let depth = gen.between(1, 4);
        let chain = gen.group_chain(&group, depth);
        let (ks, r) = gen.index_budget(depth);
        let lib = lemma3_check(&group, &chain, &ks, r).map_err(|e| e.to_string())?;
        let direct = product_contained(&group, &chain, &ks, r);
        if !lib || !direct {
            return Err(format!("case {case}: order {}, ks {ks:?}, r {r}: check {lib}, direct {direct}", group.order()));
        }
    }
    Ok(format!("{cyclic} instances over Z_n and {symmetric} over S4 hold"))
}

type Failing = (String, FiniteTopology, Vec<usize>, FiniteTopology);

fn c10_extension() -> Outcome {
    let mut gen = Generator::new(0x10E);
    let mut embedded = 0;
    let mut trials = 0;
    let mut attempts = 0;
    while embedded < 20 {
        attempts += 1;
        if attempts > 1000 {
            return Err("could not generate 20 embedded instances".into());
        }
        let n = gen.between(1, 5);
        let y = gen.topology(n);
        let subset = gen.subset(n, 1);
        let x = y.subspace(&subset).unwrap();
        if !subspace_check(&x, &y, &subset).unwrap() {
            continue;
        }
        let seed = gen.seed();
        let report = embedding_suite(&y, &subset, &x, 100, seed).map_err(|e| e.to_string())?;
        if !report.embedded || !report.passed || report.trials.iter().any(|t| t.status != "pass") {
            return Err(format!("instance with seed {seed} failed"));
        }
        trials += report.trials.len();
        embedded += 1;
    }

    // Instances whose subspace carries a strictly finer topology.
    let mut failing: Vec<Failing> = Vec::new();
    for name in ["finer_topology_embedding.json", "discrete_embedding.json"] {
        let file: EmbeddingFile = read_json(&fixture(name)).unwrap();
        let y = file.space.to_topology().unwrap();
        let subset: Vec<usize> = file.subspace.iter().map(|l| y.labels().iter().position(|p| p == l).unwrap()).collect();
        let x = match &file.subspace_topology {
            Some(t) => t.to_topology().unwrap(),
            None => y.subspace(&subset).unwrap(),
        };
        if !subspace_check(&x, &y, &subset).unwrap() {
            failing.push((name.into(), y, subset, x));
        }
    }
    let mut gen = Generator::new(0x10F);
    while failing.len() < 10 {
        let n = gen.between(2, 5);
        let y = gen.topology(n);
        let subset = gen.subset(n, 2);
        let x = FiniteTopology::discrete(labels(subset.len())).unwrap();
        if !subspace_check(&x, &y, &subset).unwrap() {
            failing.push((format!("generated #{}", failing.len()), y, subset, x));
        }
    }
    for (name, y, subset, x) in &failing {
        let w = non_extendability_witness(y, subset, x)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{name}: no witness"))?;
        let e_x = fine_quniformity(x);
        let e_y = fine_quniformity(y);
        // d vanishes on E_X, so it is quasi-uniform there.
        let uniform = e_x.generator().pairs().all(|(a, b)| w.d.dist(a, b).is_zero());
        // Any E_Y-uniform extension vanishes on E_Y, but d(pair) = 1.
        let (a, b) = w.pair;
        let obstructed = e_y.generator().contains(subset[a], subset[b]) && w.d.dist(a, b).is_one();
        let inst = EmbeddingInstance::with_topology(y.clone(), subset.clone(), x.clone(), w.d.clone()).unwrap();
        let refused = matches!(extend_qpm(&inst), Err(Error::NotEmbedded { .. }));
        if !(uniform && obstructed && refused) {
            return Err(format!("{name}: uniform {uniform}, obstructed {obstructed}, refused {refused}"));
        }
    }
    Ok(format!(
        "{trials} extensions over {embedded} embedded instances restrict exactly; {} non-embedded instances have witnesses",
        failing.len()
    ))
}

fn c11_counts() -> Outcome {
    let free: Vec<usize> = (1..=5).map(|n| enumerate_schemes(n).count()).collect();
    let abelian: Vec<usize> = (1..=4).map(|n| enumerate_abelian_schemes(n).count()).collect();
    let want_free: Vec<usize> = (1..=5).map(common::catalan).collect();
    let want_abelian: Vec<usize> = (1..=4).map(common::double_factorial_odd).collect();
    let brute_free: Vec<usize> = (1..=5).map(|n| common::schemes(n).len()).collect();
    let brute_abelian: Vec<usize> = (1..=4).map(|n| common::matchings(n).len()).collect();
    if free != want_free || free != brute_free || free != [1, 2, 5, 14, 42] {
        return Err(format!("scheme counts {free:?}, expected {want_free:?}"));
    }
    if abelian != want_abelian || abelian != brute_abelian || abelian != [1, 3, 15, 105] {
        return Err(format!("Abelian scheme counts {abelian:?}, expected {want_abelian:?}"));
    }
    Ok(format!("{free:?} and {abelian:?}"))
}

fn c12_contraction() -> Outcome {
    let mut gen = Generator::new(0xC12);
    let cases: Vec<(Qpm, Word)> = (0..500)
        .map(|_| {
            let n = gen.between(1, 4);
            let rho = gen.qpm(n);
            let len = gen.between(0, 8);
            (rho, gen.word(n, len))
        })
        .collect();
    par_check(&cases, |(rho, g)| {
        let free = norm_dp(&g.reduce(), rho).map_err(|e| e.to_string())?;
        let abelian = abelian_norm_matching(&g.abelianize(), rho).map_err(|e| e.to_string())?;
        if abelian > free {
            return Err(format!("{}: N_A {abelian} > N {free}", text(g, rho)));
        }
        Ok(())
    })?;
    Ok("500 words satisfy N_A(ab g) <= N(g)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("dynamic program equals brute force", c1_dp_vs_oracle),
        ("matching equals brute force", c2_abelian),
        ("norms restrict to the base distance", c3_restriction),
        ("prenorm axioms and invariance", c4_prenorm),
        ("asymmetry on the two-point instance", c5_asymmetry),
        ("pair decomposition of Abelian elements", c6_lemma2),
        ("conjugate factorization along schemes", c7_lemma4),
        ("chain metrization sandwich", c8_frink),
        ("products along group chains", c9_lemma3),
        ("extension restricts exactly", c10_extension),
        ("scheme counts", c11_counts),
        ("abelianization is a contraction", c12_contraction),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail} ({secs:.1}s)", i + 1);
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
