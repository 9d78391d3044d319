//! Desk-scale verification sweeps. Each suite collects failures with the
//! smallest offending case first and reports pass/fail as JSON.

use anyhow::Result;
use clap::ValueEnum;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{Map, Value};

use percword::embedding::is_m_seen;
use percword::exactprob::{exact_seen_probability, max_word_probability, MAX_WORD_BITS};
use percword::moments::{
    expected_embeddings, growth_constant, random_word_second_moment, renewal_table,
    second_moment_exact, second_moment_oracle, z_moment_brute_force,
};
use percword::montecarlo::{coupling_chain_demo, RngConfig};
use percword::rational::{int, powi, rat, Rational};
use percword::recursions::{
    delta_operator, pq_polynomials, sigma_generating_identity, u_table, verify_suffix_bounds_m2,
    vn_single_recursion, Grid, MAX_SUFFIX_WORD,
};
use percword::spacing::{alternating_seen_by_s_sequence, decide_by_spacings};
use percword::{BinaryWord, SequencePrefix};

use crate::Usage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Alternating words maximize the seeing probability (M = 2).
    #[value(name = "thm1a", alias = "alternating-max")]
    AlternatingMax,
    /// Two-block words: P <= u_pq <= v_(p+q).
    #[value(name = "thm1b", alias = "two-block")]
    TwoBlock,
    /// Spacing characterizations for constant and alternating words.
    #[value(name = "thm3", alias = "spacing")]
    Spacing,
    /// Second moment of the embedding count.
    #[value(name = "thm4", alias = "moments")]
    Moments,
    /// Sign certificates for the two-block difference operator.
    #[value(name = "lemma43", alias = "difference-operator")]
    DifferenceOperator,
    /// Monotonicity and log-concavity of the renewal table.
    Renewal,
    /// Coupling chains keep the output visible in the input.
    Coupling,
}

#[derive(Debug, Clone)]
pub struct Bounds {
    pub window: usize,
    pub n: usize,
    pub big_n: usize,
    pub p: f64,
    pub target: f64,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Map<String, Value>,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
    pub info: Vec<String>,
}

/// Failures beyond this many are counted but not listed.
const MAX_LISTED: usize = 5;

struct Tally {
    checks: u64,
    failures: Vec<String>,
    failed: u64,
    info: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new(), failed: 0, info: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(describe());
            }
        }
    }
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn run(suite: Suite, b: &Bounds) -> Result<Report> {
    let mut t = Tally::new();
    let name = suite.to_possible_value().expect("named suite").get_name().to_string();
    let params = match suite {
        Suite::AlternatingMax => {
            alternating_max(b, &mut t)?;
            params(&[("M", b.window.into()), ("n", b.n.into())])
        }
        Suite::TwoBlock => {
            two_block(b, &mut t)?;
            params(&[("M", b.window.into()), ("n", b.n.into())])
        }
        Suite::Spacing => {
            spacing(b, &mut t)?;
            params(&[("M", b.window.into()), ("n", b.n.into())])
        }
        Suite::Moments => {
            moments(b, &mut t)?;
            params(&[("M", b.window.into()), ("n", b.n.into())])
        }
        Suite::DifferenceOperator => {
            difference_operator(b, &mut t)?;
            params(&[("M", b.window.into()), ("n", b.n.into())])
        }
        Suite::Renewal => {
            renewal(b, &mut t)?;
            params(&[("M", b.window.into()), ("N", b.big_n.into()), ("tol", b.tol.into())])
        }
        Suite::Coupling => {
            coupling(b, &mut t)?;
            params(&[
                ("p", b.p.into()),
                ("target", b.target.into()),
                ("trials", b.trials.into()),
                ("seed", b.seed.into()),
            ])
        }
    };
    if t.failed > t.failures.len() as u64 {
        t.failures.push(format!("... {} failures in total", t.failed));
    }
    Ok(Report { suite: name, params, passed: t.failed == 0, checks: t.checks, failures: t.failures, info: t.info })
}

fn need_window(window: usize, min: usize) -> Result<(), Usage> {
    if window < min {
        return Err(Usage(format!("--M must be at least {min}")));
    }
    Ok(())
}

fn need_at_most(what: &str, value: usize, bound: usize) -> Result<(), Usage> {
    if value > bound {
        return Err(Usage(format!("{what} = {value} exceeds the sweep bound {bound}")));
    }
    Ok(())
}

fn alternating_max(b: &Bounds, t: &mut Tally) -> Result<()> {
    need_window(b.window, 2)?;
    need_at_most("--n", b.n, MAX_WORD_BITS)?;
    let v = vn_single_recursion(b.window, b.n)?;
    for n in 1..=b.n {
        let e = max_word_probability(n, b.window)?;
        t.check(e.max == v[n], || format!("n={n}: max {} != v_n {}", e.max, v[n]));
        t.check(e.maximizers.iter().all(BinaryWord::is_alternating), || {
            let list: Vec<String> = e.maximizers.iter().map(ToString::to_string).collect();
            format!("n={n}: maximizers {}", list.join(","))
        });
    }
    if b.window == 2 && b.n <= MAX_SUFFIX_WORD {
        for w in BinaryWord::all(b.n) {
            let report = verify_suffix_bounds_m2(&w)?;
            for row in &report.rows {
                t.check(row.passes(), || format!("{w}: suffix bound fails at m={}", row.m));
            }
        }
    } else {
        t.info.push(format!("M={}: maximality is checked exploratorily, not guaranteed", b.window));
    }
    Ok(())
}

fn two_block(b: &Bounds, t: &mut Tally) -> Result<()> {
    need_window(b.window, 2)?;
    need_at_most("--n", b.n, percword::recursions::MAX_GRID_BOUND - 1)?;
    let table = u_table(b.window, b.n + 1, b.n)?;
    let m_beta = table.ab.m_beta();
    let half = rat(1, 2);
    for size in 0..=b.n {
        for p in 0..=size {
            let q = size - p;
            let exact = exact_seen_probability(&BinaryWord::two_block(p, q), b.window, &half)?;
            let (u, v, d) = (table.u.at(p, q), &table.v[size], table.delta.at(p, q));
            t.check(&exact <= u, || format!("p={p} q={q}: P={exact} > u={u}"));
            t.check(u <= v, || format!("p={p} q={q}: u={u} > v={v}"));
            t.check(!d.is_negative(), || format!("p={p} q={q}: delta={d}"));
            let next = table.delta.at(p + 1, q);
            t.check(next >= &(&m_beta * d), || format!("p={p} q={q}: delta step fails"));
        }
    }
    Ok(())
}

fn spacing(b: &Bounds, t: &mut Tally) -> Result<()> {
    need_window(b.window, 1)?;
    need_at_most("--n * --M", b.n * b.window, 22)?;
    for n in 1..=b.n {
        let len = n * b.window;
        let words = [
            BinaryWord::constant(0, n)?,
            BinaryWord::constant(1, n)?,
            BinaryWord::alternating(0, n)?,
            BinaryWord::alternating(1, n)?,
        ];
        for i in 0..1u64 << len {
            let y = SequencePrefix::from_index(i, len);
            for w in &words {
                let truth = is_m_seen(w, &y, b.window)?;
                let by_spacing = decide_by_spacings(w, &y, b.window)?;
                t.check(by_spacing == Some(truth), || format!("{w} in {y}: spacing criterion disagrees"));
                if w.is_alternating() {
                    let by_s = alternating_seen_by_s_sequence(w, &y, b.window)?;
                    t.check(by_s == truth, || format!("{w} in {y}: S criterion disagrees"));
                }
            }
        }
    }
    Ok(())
}

fn moments(b: &Bounds, t: &mut Tally) -> Result<()> {
    need_window(b.window, 1)?;
    need_at_most("--n * --M", b.n * b.window, percword::exactprob::EXHAUSTIVE_BOUND)?;
    let table = renewal_table(b.window, b.n.max(1))?;
    for n in 0..=b.n {
        let mean = expected_embeddings(b.window, n);
        let mut total = Rational::zero();
        let mut values = Vec::new();
        for w in BinaryWord::all(n) {
            let exact = second_moment_exact(&w, b.window)?;
            let oracle = second_moment_oracle(&w, b.window)?;
            t.check(exact == oracle, || format!("{w}: DP {exact} != oracle {oracle}"));
            t.check(exact >= &mean * &mean, || format!("{w}: negative variance"));
            total += &exact;
            values.push(exact);
        }
        let best = values.iter().max().expect("at least one word");
        t.check(&values[0] == best, || format!("n={n}: constant word not maximal"));
        let avg = total / int(1i64 << n);
        let predicted = random_word_second_moment(&table, n)?;
        t.check(avg == predicted, || format!("n={n}: average {avg} != {predicted}"));
    }
    Ok(())
}

fn difference_operator(b: &Bounds, t: &mut Tally) -> Result<()> {
    need_window(b.window, 2)?;
    need_at_most("--n", b.n, percword::recursions::MAX_GRID_BOUND - 1)?;
    let pq = pq_polynomials(b.window)?;
    t.check(pq.q_nonnegative(), || "Q has a negative coefficient".into());
    let table = u_table(b.window, b.n + 1, b.n + 1)?;
    let ab = &table.ab;
    let alpha_pow = Grid::from_fn(b.n + 2, b.n + 2, |p, _| powi(&ab.alpha, p));
    for p in 0..=b.n {
        for q in 0..=b.n {
            let d = delta_operator(&alpha_pow, ab, p, q)?;
            t.check(d.is_zero(), || format!("delta(alpha^p) at ({p},{q}) = {d}"));
            let du = delta_operator(&table.u, ab, p, q)?;
            t.check(!(du > Rational::zero()), || format!("delta u at ({p},{q}) = {du}"));
            let dw = delta_operator(&table.w, ab, p, q)?;
            t.check(!dw.is_negative(), || format!("delta w at ({p},{q}) = {dw}"));
        }
    }
    for p in 0..=4 {
        let ok = sigma_generating_identity(b.window, p, 12)?;
        t.check(ok, || format!("generating identity fails for p={p}"));
    }
    Ok(())
}

fn renewal(b: &Bounds, t: &mut Tally) -> Result<()> {
    need_window(b.window, 2)?;
    if b.big_n == 0 {
        return Err(Usage("--N must be at least 1".into()).into());
    }
    let table = renewal_table(b.window, b.big_n)?;
    t.check(table.u_nonincreasing(), || "u_n increases somewhere".into());
    t.check(table.log_concave(), || "V_n is not log-concave".into());
    let brute_max = (0..=b.big_n.min(5))
        .take_while(|&n| 2.0 * n as f64 * (b.window as f64).log2() <= percword::moments::WALK_PAIR_BITS)
        .last()
        .unwrap_or(0);
    for n in 0..=brute_max {
        let z = z_moment_brute_force(b.window, n)?;
        t.check(z == table.v[n], || format!("n={n}: E 2^Z = {z} != V_n = {}", table.v[n]));
    }
    let g = growth_constant(b.window, b.tol)?;
    t.check(g.methods_agree, || format!("c_M methods disagree: {} vs {}", g.bisection, g.ratio_limit));
    t.info.push(format!("c_M = {:.12}", g.bisection));
    Ok(())
}

fn coupling(b: &Bounds, t: &mut Tally) -> Result<()> {
    let report = coupling_chain_demo(b.p, b.target, 64, b.trials, &RngConfig::new(b.seed))?;
    t.check(report.failures == 0, || format!("{} samples not 3^k-seen", report.failures));
    t.check(report.passes(), || {
        format!("empirical p' {} vs {} (sigma {})", report.empirical_p, b.target, report.sigma)
    });
    t.info.push(format!("k = {}, M = {}", report.stages.len(), report.window));
    Ok(())
}
