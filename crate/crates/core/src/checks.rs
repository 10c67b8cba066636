//! Seeded property suites. Each suite returns a [`CheckReport`] with one
//! entry per property and the first counterexample found, dumped in the
//! same formats the command-line tool reads.

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extend::embedding_suite;
use crate::formats::{SpaceFile, TopologyFile};
use crate::gen::{labels, Generator};
use crate::graev::{
    abelian_norm_matching, abelian_norm_oracle, enumerate_abelian_schemes, enumerate_schemes, hat_dist,
    hat_dist_abelian, lemma2_decompose, lemma4_factorize, norm_dp, norm_oracle, norm_oracle_with, pair_sum,
    OracleOptions,
};
use crate::qpspace::{ball_relation, frink_metrize, Qpm};
use crate::quniform::{lemma3_check, FiniteGroup, FiniteTopology};
use crate::rational::{pow2_inv, Rational};
use crate::words::{AbelianWord, Letter, Word};

pub const SUITES: [&str; 11] = [
    "prenorm",
    "invariance",
    "restriction",
    "dp-vs-oracle",
    "matching-vs-oracle",
    "frink",
    "lemma2",
    "lemma3",
    "lemma4",
    "catalan",
    "embedding",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_x: usize,
    pub max_len: usize,
    pub max_n: usize,
}

impl Default for CheckConfig {
    fn default() -> CheckConfig {
        CheckConfig {
            seed: 0,
            trials: 100,
            max_x: 3,
            max_len: 6,
            max_n: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl PropertyResult {
    fn new(name: &str) -> PropertyResult {
        PropertyResult {
            name: name.to_string(),
            cases: 0,
            passed: true,
            counterexample: None,
            details: None,
        }
    }

    fn record(&mut self, ok: bool, dump: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(dump());
        }
    }

    /// Records an operation error as a failed case.
    fn record_result(&mut self, outcome: Result<bool>, dump: impl FnOnce() -> Value) {
        match outcome {
            Ok(ok) => self.record(ok, dump),
            Err(err) => self.record(false, || {
                let mut v = dump();
                v["error"] = json!(err.to_string());
                v
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

pub fn run_suite(name: &str, cfg: &CheckConfig) -> Result<CheckReport> {
    let properties = match name {
        "prenorm" => prenorm(cfg),
        "invariance" => invariance(cfg),
        "restriction" => restriction(cfg),
        "dp-vs-oracle" => dp_vs_oracle(cfg),
        "matching-vs-oracle" => matching_vs_oracle(cfg),
        "frink" => frink(cfg),
        "lemma2" => lemma2(cfg),
        "lemma3" => lemma3(cfg),
        "lemma4" => lemma4(cfg),
        "catalan" => catalan(cfg),
        "embedding" => embedding(cfg)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(CheckReport {
        suite: name.to_string(),
        seed: cfg.seed,
        passed: properties.iter().all(|p| p.passed),
        properties,
    })
}

fn space_json(rho: &Qpm) -> Value {
    serde_json::to_value(SpaceFile::from_qpm(rho)).expect("serializable")
}

fn word_text(g: &Word, rho: &Qpm) -> String {
    g.display(rho.labels()).to_string()
}

fn abelian_json(h: &AbelianWord, rho: &Qpm) -> Value {
    h.to_json(rho.labels())
}

/// Every reduced word of length `1..=max_len` over `points` generators.
pub fn all_reduced_words(points: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..points).flat_map(|p| [Letter::pos(p), Letter::neg(p)]).collect();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut out = Vec::new();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last().is_none_or(|last| !last.cancels_with(l)) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned().map(Word::from_letters));
        layer = next;
    }
    out
}

/// Every nonzero Abelian word with `Σ|mᵢ| ≤ max_len` over `points`
/// generators.
pub fn all_abelian_words(points: usize, max_len: usize) -> Vec<AbelianWord> {
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; points];
    fn go(i: usize, budget: i64, coeffs: &mut Vec<i64>, out: &mut Vec<AbelianWord>) {
        if i == coeffs.len() {
            if coeffs.iter().any(|&c| c != 0) {
                out.push(AbelianWord::from_coeffs(coeffs.iter().copied().enumerate()));
            }
            return;
        }
        for c in -budget..=budget {
            coeffs[i] = c;
            go(i + 1, budget - c.abs(), coeffs, out);
        }
        coeffs[i] = 0;
    }
    go(0, max_len as i64, &mut coeffs, &mut out);
    out
}

fn random_space(g: &mut Generator, cfg: &CheckConfig) -> Qpm {
    let n = g.between(1, cfg.max_x.max(1));
    g.qpm(n)
}

fn prenorm(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut gen = Generator::new(cfg.seed);
    let mut zero = PropertyResult::new("N(e) = 0");
    let mut sub = PropertyResult::new("N(gh) <= N(g) + N(h)");
    let mut sub_a = PropertyResult::new("N_A(g+h) <= N_A(g) + N_A(h)");
    for _ in 0..cfg.trials {
        let rho = random_space(&mut gen, cfg);
        let n = rho.size();
        let (lg, lh) = (gen.between(0, cfg.max_len), gen.between(0, cfg.max_len));
        let (g, h) = (gen.word(n, lg), gen.word(n, lh));
        zero.record_result(norm_dp(&Word::identity(), &rho).map(|v| v.is_zero()), || space_json(&rho));
        let outcome = (|| Ok(norm_dp(&g.multiply(&h), &rho)? <= norm_dp(&g, &rho)? + norm_dp(&h, &rho)?))();
        sub.record_result(outcome, || {
            json!({"space": space_json(&rho), "g": word_text(&g, &rho), "h": word_text(&h, &rho)})
        });
        let (ga, ha) = (g.abelianize(), h.abelianize());
        let outcome = (|| {
            Ok(abelian_norm_matching(&ga.add(&ha), &rho)?
                <= abelian_norm_matching(&ga, &rho)? + abelian_norm_matching(&ha, &rho)?)
        })();
        sub_a.record_result(outcome, || {
            json!({"space": space_json(&rho), "g": abelian_json(&ga, &rho), "h": abelian_json(&ha, &rho)})
        });
    }
    vec![zero, sub, sub_a]
}

fn invariance(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut gen = Generator::new(cfg.seed);
    let mut inv = PropertyResult::new("N(w g w^-1) = N(g)");
    let mut left = PropertyResult::new("hat_dist(c g, c h) = hat_dist(g, h)");
    for _ in 0..cfg.trials {
        let rho = random_space(&mut gen, cfg);
        let n = rho.size();
        let len = gen.between(0, cfg.max_len);
        let g = gen.reduced_word(n, len);
        let wlen = gen.between(0, cfg.max_len);
        let w = gen.word(n, wlen);
        let conj = g.conjugate_by(&w);
        inv.record_result((|| Ok(norm_dp(&conj, &rho)? == norm_dp(&g, &rho)?))(), || {
            json!({"space": space_json(&rho), "g": word_text(&g, &rho), "w": word_text(&w, &rho)})
        });
        let hlen = gen.between(0, cfg.max_len);
        let h = gen.reduced_word(n, hlen);
        let outcome = (|| Ok(hat_dist(&w.multiply(&g), &w.multiply(&h), &rho)? == hat_dist(&g, &h, &rho)?))();
        left.record_result(outcome, || {
            json!({"space": space_json(&rho), "g": word_text(&g, &rho), "h": word_text(&h, &rho), "c": word_text(&w, &rho)})
        });
    }
    vec![inv, left]
}

fn restriction(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut gen = Generator::new(cfg.seed);
    let mut free = PropertyResult::new("hat_dist(x, y) = rho(x, y)");
    let mut abelian = PropertyResult::new("hat_dist_abelian(x, y) = rho(x, y)");
    for _ in 0..cfg.trials {
        let rho = random_space(&mut gen, cfg);
        for x in 0..rho.size() {
            for y in 0..rho.size() {
                let (gx, gy) = (Word::letter(Letter::pos(x)), Word::letter(Letter::pos(y)));
                let outcome = (|| {
                    let oracle = norm_oracle(&gx.invert().multiply(&gy), &rho)?.value;
                    Ok(&oracle == rho.dist(x, y) && &hat_dist(&gx, &gy, &rho)? == rho.dist(x, y))
                })();
                let dump = || json!({"space": space_json(&rho), "x": rho.labels()[x], "y": rho.labels()[y]});
                free.record_result(outcome, dump);
                let (ax, ay) = (AbelianWord::generator(x), AbelianWord::generator(y));
                let outcome = (|| {
                    let oracle = abelian_norm_oracle(&ay.sub(&ax), &rho)?.value;
                    Ok(&oracle == rho.dist(x, y) && &hat_dist_abelian(&ax, &ay, &rho)? == rho.dist(x, y))
                })();
                abelian.record_result(outcome, dump);
            }
        }
    }
    vec![free, abelian]
}

fn dp_vs_oracle(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut gen = Generator::new(cfg.seed);
    let mut exhaustive = PropertyResult::new("norm_dp = norm_oracle (all reduced words)");
    let mut random = PropertyResult::new("norm_dp = norm_oracle (random words)");
    let mut widened = PropertyResult::new("oracle unchanged by one extra padding level");
    let compare = |g: &Word, rho: &Qpm, prop: &mut PropertyResult| {
        let outcome = (|| {
            let oracle = norm_oracle(g, rho)?;
            Ok(norm_dp(g, rho)? == oracle.value)
        })();
        prop.record_result(outcome, || json!({"space": space_json(rho), "word": word_text(g, rho)}));
    };
    for points in 1..=cfg.max_x {
        let rho = gen.qpm(points);
        for g in all_reduced_words(points, cfg.max_len) {
            compare(&g, &rho, &mut exhaustive);
            if g.len() <= 3 {
                let outcome = (|| {
                    let wide = norm_oracle_with(&g, &rho, OracleOptions { extra_levels: 1 })?;
                    Ok(wide.value == norm_oracle(&g, &rho)?.value)
                })();
                widened.record_result(outcome, || json!({"space": space_json(&rho), "word": word_text(&g, &rho)}));
            }
        }
    }
    for _ in 0..cfg.trials {
        let rho = random_space(&mut gen, cfg);
        let len = gen.between(1, cfg.max_len.max(1));
        let g = gen.reduced_word(rho.size(), len);
        compare(&g, &rho, &mut random);
    }
    vec![exhaustive, random, widened]
}

fn matching_vs_oracle(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut gen = Generator::new(cfg.seed);
    let mut exhaustive = PropertyResult::new("abelian_norm_matching = abelian_norm_oracle (all words)");
    let mut random = PropertyResult::new("abelian_norm_matching = abelian_norm_oracle (random words)");
    let mut contraction = PropertyResult::new("N_A(ab(g)) <= N(g)");
    let compare = |h: &AbelianWord, rho: &Qpm, prop: &mut PropertyResult| {
        let outcome = (|| Ok(abelian_norm_matching(h, rho)? == abelian_norm_oracle(h, rho)?.value))();
        prop.record_result(outcome, || json!({"space": space_json(rho), "word": abelian_json(h, rho)}));
    };
    for points in 1..=cfg.max_x {
        let rho = gen.qpm(points);
        for h in all_abelian_words(points, cfg.max_len) {
            compare(&h, &rho, &mut exhaustive);
        }
    }
    for _ in 0..cfg.trials {
        let rho = random_space(&mut gen, cfg);
        let len = gen.between(1, cfg.max_len.max(1));
        let h = gen.abelian_word(rho.size(), len);
        compare(&h, &rho, &mut random);
        let g = gen.reduced_word(rho.size(), len);
        let outcome = (|| Ok(abelian_norm_matching(&g.abelianize(), &rho)? <= norm_dp(&g, &rho)?))();
        contraction.record_result(outcome, || json!({"space": space_json(&rho), "word": word_text(&g, &rho)}));
    }
    vec![exhaustive, random, contraction]
}

fn frink(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut gen = Generator::new(cfg.seed);
    let mut sandwich = PropertyResult::new("V_i within {rho <= 2^-i} within V_(i-1)");
    let mut strict = PropertyResult::new("V_i within {rho < 2^-(i-1)}");
    for _ in 0..cfg.trials {
        let n = gen.between(1, cfg.max_x.max(1));
        let depth = gen.between(1, 4);
        let chain = gen.chain(n, depth);
        let rho = frink_metrize(&chain);
        let dump = || {
            let levels: Vec<Vec<(usize, usize)>> = chain.levels().iter().map(|v| v.pairs().collect()).collect();
            json!({"points": chain.labels(), "levels": levels, "rho": space_json(&rho)})
        };
        let levels = chain.levels();
        let outcome = (1..levels.len()).try_fold(true, |ok, i| -> Result<bool> {
            let ball = ball_relation(&rho, &pow2_inv(i as u32), false)?;
            Ok(ok && levels[i].is_subset(&ball) && ball.is_subset(&levels[i - 1]))
        });
        sandwich.record_result(outcome, dump);
        let outcome = (1..levels.len()).try_fold(true, |ok, i| -> Result<bool> {
            let ball = ball_relation(&rho, &pow2_inv(i as u32 - 1), true)?;
            Ok(ok && levels[i].is_subset(&ball))
        });
        strict.record_result(outcome, dump);
    }
    vec![sandwich, strict]
}

fn lemma2(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut gen = Generator::new(cfg.seed);
    let mut below = PropertyResult::new("N_A(h) < 1: metric form sums to the oracle norm");
    let mut above = PropertyResult::new("N_A(h) >= 1: pair form sums to the oracle norm");
    for _ in 0..cfg.trials {
        let rho = random_space(&mut gen, cfg);
        let len = gen.between(1, cfg.max_len.max(1));
        let h = gen.abelian_word(rho.size(), len);
        if h.is_neutral() {
            continue;
        }
        let outcome = (|| {
            let oracle = abelian_norm_oracle(&h, &rho)?.value;
            let dec = lemma2_decompose(&h, &rho)?;
            let k_ok = 2 * dec.pairs.len() == h.len() || 2 * dec.pairs.len() == h.len() + 1;
            let base = dec.sum == oracle && pair_sum(&dec.pairs) == h && k_ok;
            Ok((oracle < Rational::one(), base, dec, oracle))
        })();
        let dump = || json!({"space": space_json(&rho), "word": abelian_json(&h, &rho)});
        match outcome {
            Ok((true, base, dec, oracle)) => {
                let ok = dec.metric_form.as_ref().is_some_and(|form| {
                    let total: Rational = form.iter().map(|&(y, z)| rho.dist(y.0, z.0).clone()).sum();
                    let sum = form.iter().fold(AbelianWord::neutral(), |acc, &(y, z)| {
                        acc.sub(&AbelianWord::generator(y.0)).add(&AbelianWord::generator(z.0))
                    });
                    total == oracle && sum == h
                });
                below.record(base && ok, dump);
            }
            Ok((false, base, dec, _)) => above.record(base && dec.metric_form.is_none(), dump),
            Err(err) => above.record_result(Err(err), dump),
        }
    }
    vec![below, above]
}

fn lemma3(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut gen = Generator::new(cfg.seed);
    let mut cyclic = PropertyResult::new("product containment over Z_n");
    let mut sym = PropertyResult::new("product containment over S_4");
    let s4 = FiniteGroup::symmetric(4);
    for t in 0..cfg.trials {
        let (group, prop) = if t % 2 == 0 {
            (FiniteGroup::cyclic(gen.between(1, 256)), &mut cyclic)
        } else {
            (s4.clone(), &mut sym)
        };
        let depth = gen.between(1, 4);
        let chain = gen.group_chain(&group, depth);
        let (ks, r) = gen.index_budget(depth);
        prop.record_result(lemma3_check(&group, &chain, &ks, r), || {
            let subsets: Vec<Vec<usize>> = chain.iter().map(|v| v.elements()).collect();
            json!({"order": group.order(), "subsets": subsets, "ks": ks, "r": r})
        });
    }
    vec![cyclic, sym]
}

fn lemma4(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let mut prop = PropertyResult::new("factorization reduces to g");
    for n in 1..=cfg.max_n {
        let g = Word::from_letters((0..2 * n).map(Letter::pos).collect());
        let names = labels(2 * n);
        for phi in enumerate_schemes(n) {
            let outcome = lemma4_factorize(&g, &phi).map(|f| f.product(&g, &phi) == g);
            prop.record_result(outcome, || json!({"word": g.display(&names).to_string(), "scheme": phi.to_string()}));
        }
    }
    vec![prop]
}

fn catalan(cfg: &CheckConfig) -> Vec<PropertyResult> {
    let max_n = cfg.max_n.max(1);
    // C_{n+1} = Σ C_i C_{n-i}
    let mut cat = vec![1u64];
    for n in 0..max_n {
        cat.push((0..=n).map(|i| cat[i] * cat[n - i]).sum());
    }
    let mut schemes = PropertyResult::new("scheme counts are Catalan numbers");
    let counts: Vec<usize> = (1..=max_n).map(|n| enumerate_schemes(n).count()).collect();
    for (i, &c) in counts.iter().enumerate() {
        schemes.record(c as u64 == cat[i + 1], || json!({"n": i + 1, "count": c}));
    }
    schemes.details = Some(json!(counts));

    let mut abelian = PropertyResult::new("Abelian scheme counts are double factorials");
    let counts: Vec<usize> = (1..=max_n).map(|n| enumerate_abelian_schemes(n).count()).collect();
    let mut df = 1u64;
    for (i, &c) in counts.iter().enumerate() {
        df *= 2 * (i as u64 + 1) - 1;
        abelian.record(c as u64 == df, || json!({"n": i + 1, "count": c}));
    }
    abelian.details = Some(json!(counts));
    vec![schemes, abelian]
}

fn embedding(cfg: &CheckConfig) -> Result<Vec<PropertyResult>> {
    let mut gen = Generator::new(cfg.seed);
    let mut extends = PropertyResult::new("subspace topology: every trial extends exactly");
    let mut refused = PropertyResult::new("strictly finer topology: witness found and extension refused");
    let instances = 20;
    let per_instance = (cfg.trials / instances).max(1);
    for _ in 0..instances {
        let n = gen.between(1, cfg.max_x.max(1) + 2);
        let y = gen.topology(n);
        let subset = gen.subset(n, 1);
        let x = y.subspace(&subset)?;
        let seed = gen.seed();
        let report = embedding_suite(&y, &subset, &x, per_instance, seed)?;
        let dump = || {
            json!({"space": TopologyFile::from_topology(&y), "subspace": subset.iter().map(|&i| y.labels()[i].clone()).collect::<Vec<_>>(), "seed": seed})
        };
        extends.record(report.embedded && report.passed, dump);

        // Discrete X is strictly finer than a non-discrete trace.
        let discrete = FiniteTopology::discrete(x.labels().to_vec())?;
        if discrete != x {
            let report = embedding_suite(&y, &subset, &discrete, per_instance, seed)?;
            refused.record(!report.embedded && report.witness_pair.is_some() && report.passed, dump);
        }
    }
    Ok(vec![extends, refused])
}
