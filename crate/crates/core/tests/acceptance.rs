//! Acceptance checks, one line per criterion.
//!
//! Criteria 1-7 need the PROMISE NFR file (see `common::promise_path`) and are
//! reported as FAIL when it is missing. The process exits non-zero when any
//! criterion that could run failed; set `REQCLASS_ACCEPTANCE_STRICT=1` to also
//! fail on missing data.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reqclass::classifiers::{
    cluster_hybrid, cluster_kmeans, doc_distance, doc_terms, extract_biterms, predict_bnb, train_bnb, train_btm,
    BtmParams, BtmSampler, DocTermVector, LdaParams, LdaSampler, Linkage, Vectorizer,
};
use reqclass::corpus::{Corpus, NfrSubcategory};
use reqclass::eval::{confusion, hopkins_mean, kappa, metrics, EvalReport};
use reqclass::experiment::{nfr_subset, prepare_corpus, run_experiment, ExperimentConfig, ExperimentResult, Method};
use reqclass::preprocess::{
    apply_temporal_rules, normalize_surface, LexiconTagger, PipelineConfig, Preprocessor, TaggedRequirement,
};

enum Outcome {
    Pass(String),
    Fail(String),
    NoData(String),
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn pct(x: Option<f64>) -> f64 {
    x.map_or(f64::NAN, |v| v * 100.0)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn run(corpus: &Corpus, cfg: &ExperimentConfig) -> Result<ExperimentResult, String> {
    run_experiment(corpus, cfg).map_err(|e| e.to_string())
}

fn tree_cfg(processed: bool) -> ExperimentConfig {
    ExperimentConfig {
        processed,
        ..Default::default()
    }
}

fn sub_cfg(method: Method, processed: bool) -> ExperimentConfig {
    ExperimentConfig {
        processed,
        ..ExperimentConfig::nfr_sub(method)
    }
}

fn c1(data: &Result<Corpus, String>) -> Outcome {
    let Ok(corpus) = data else {
        return Outcome::NoData(data.clone().err().unwrap());
    };
    match timed(|| run(corpus, &tree_cfg(false))) {
        (Ok(r), t) => {
            let acc = r.report.accuracy * 100.0;
            let k = r.report.kappa.unwrap_or(f64::NAN);
            check(
                (acc - 89.92).abs() <= 5.0 && (k - 0.79).abs() <= 0.10 && t.as_secs_f64() < 30.0,
                format!(
                    "accuracy {acc:.2}% (target 89.92 +/- 5), kappa {k:.3} (0.79 +/- 0.10), {:.1}s",
                    t.as_secs_f64()
                ),
            )
        }
        (Err(e), _) => Outcome::Fail(e),
    }
}

fn c2(data: &Result<Corpus, String>) -> Outcome {
    let Ok(corpus) = data else {
        return Outcome::NoData(data.clone().err().unwrap());
    };
    let (raw, processed) = match (run(corpus, &tree_cfg(false)), run(corpus, &tree_cfg(true))) {
        (Ok(a), Ok(b)) => (a.report.accuracy * 100.0, b.report.accuracy * 100.0),
        (Err(e), _) | (_, Err(e)) => return Outcome::Fail(e),
    };
    check(
        processed - raw >= 2.0 && (processed - 94.40).abs() <= 5.0,
        format!("processed {processed:.2}% vs raw {raw:.2}% (gain >= 2.0 needed; target 94.40 +/- 5)"),
    )
}

fn c3(data: &Result<Corpus, String>) -> Outcome {
    let Ok(corpus) = data else {
        return Outcome::NoData(data.clone().err().unwrap());
    };
    match timed(|| run(corpus, &sub_cfg(Method::Bnb, true))) {
        (Ok(r), t) => {
            let (rec, prec, acc) = (
                pct(r.report.weighted_recall),
                pct(r.report.weighted_precision),
                r.report.accuracy * 100.0,
            );
            check(
                (rec - 91.0).abs() <= 7.0 && (prec - 90.0).abs() <= 7.0 && acc > 80.0 && t.as_secs_f64() < 60.0,
                format!(
                    "weighted R/P {rec:.1}/{prec:.1} (91/90 +/- 7), accuracy {acc:.1}% (> 80), {:.1}s",
                    t.as_secs_f64()
                ),
            )
        }
        (Err(e), _) => Outcome::Fail(e),
    }
}

fn sub_recalls(corpus: &Corpus, processed: bool) -> Result<Vec<(Method, EvalReport)>, String> {
    Method::SUBCLASSIFIERS
        .iter()
        .map(|&m| run(corpus, &sub_cfg(m, processed)).map(|r| (m, r.report)))
        .collect()
}

fn c4(data: &Result<Corpus, String>) -> Outcome {
    let Ok(corpus) = data else {
        return Outcome::NoData(data.clone().err().unwrap());
    };
    let reports = match sub_recalls(corpus, true) {
        Ok(r) => r,
        Err(e) => return Outcome::Fail(e),
    };
    let rec = |m: Method| pct(reports.iter().find(|(x, _)| *x == m).unwrap().1.weighted_recall);
    let clusters = [Method::Hierarchical, Method::KMeans, Method::Hybrid].map(rec);
    let (lo, hi) = clusters
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let ok = rec(Method::Bnb) > rec(Method::Lda) && rec(Method::Lda) > hi && lo > rec(Method::Btm);
    let detail = reports
        .iter()
        .map(|(m, r)| format!("{} {:.1}", m.name(), pct(r.weighted_recall)))
        .collect::<Vec<_>>()
        .join(", ");
    check(ok, format!("weighted recall: {detail}"))
}

fn c5(data: &Result<Corpus, String>) -> Outcome {
    let Ok(corpus) = data else {
        return Outcome::NoData(data.clone().err().unwrap());
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [Method::Bnb, Method::Lda] {
        let (p, u) = match (run(corpus, &sub_cfg(m, true)), run(corpus, &sub_cfg(m, false))) {
            (Ok(p), Ok(u)) => (p.report, u.report),
            (Err(e), _) | (_, Err(e)) => return Outcome::Fail(e),
        };
        let fr = pct(p.weighted_recall) / pct(u.weighted_recall);
        let fp = pct(p.weighted_precision) / pct(u.weighted_precision);
        ok &= fr >= 1.5 && fp >= 1.5;
        parts.push(format!(
            "{} R {:.1}/{:.1} (x{fr:.2}) P {:.1}/{:.1} (x{fp:.2})",
            m.name(),
            pct(p.weighted_recall),
            pct(u.weighted_recall),
            pct(p.weighted_precision),
            pct(u.weighted_precision)
        ));
    }
    check(ok, parts.join("; "))
}

fn nfr_vectors(corpus: &Corpus) -> Result<Vec<DocTermVector<f64>>, String> {
    let cfg = ExperimentConfig::nfr_sub(Method::KMeans);
    let (processed, _) = prepare_corpus(corpus, &cfg).map_err(|e| e.to_string())?;
    let nfr = nfr_subset(&processed, cfg.include_po);
    let docs: Vec<Vec<String>> = nfr.iter().map(|r| doc_terms(&r.text)).collect();
    let vz = Vectorizer::fit(&docs, cfg.cluster.weighting);
    Ok(vz.transform_all(&docs))
}

fn uniform_hopkins() -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let v: Vec<DocTermVector<f64>> = (0..400)
        .map(|_| DocTermVector::new((0..5).map(|_| rng.gen::<f64>()).collect()))
        .collect();
    hopkins_mean(&v, 0.1, 1, 20).unwrap()
}

fn c6(data: &Result<Corpus, String>) -> Outcome {
    let u = uniform_hopkins();
    let uniform_ok = (u - 0.5).abs() <= 0.1;
    let Ok(corpus) = data else {
        return Outcome::NoData(format!(
            "{}; uniform synthetic H = {u:.3} ({})",
            data.clone().err().unwrap(),
            if uniform_ok { "ok" } else { "out of range" }
        ));
    };
    let h = match nfr_vectors(corpus).and_then(|v| hopkins_mean(&v, 0.1, 42, 20).map_err(|e| e.to_string())) {
        Ok(h) => h,
        Err(e) => return Outcome::Fail(e),
    };
    check(
        h < 0.3 && uniform_ok,
        format!("corpus H = {h:.3} (< 0.3), uniform H = {u:.3} (0.5 +/- 0.1)"),
    )
}

fn c7(data: &Result<Corpus, String>) -> Outcome {
    let Ok(corpus) = data else {
        return Outcome::NoData(data.clone().err().unwrap());
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [Method::Hierarchical, Method::KMeans, Method::Hybrid] {
        match run(corpus, &sub_cfg(m, true)) {
            Ok(r) => match r.diagnostics {
                Some(d) => {
                    let s = d.silhouette.mean;
                    ok &= (0.02..=0.25).contains(&s);
                    parts.push(format!("{} {s:.3}", m.name()));
                }
                None => return Outcome::Fail(format!("{}: no diagnostics", m.name())),
            },
            Err(e) => return Outcome::Fail(e),
        }
    }
    check(ok, format!("mean silhouette {} (in [0.02, 0.25])", parts.join(", ")))
}

/// Per-class counting straight from the label lists, no confusion matrix.
struct Oracle {
    precision: Vec<Option<f64>>,
    recall: Vec<Option<f64>>,
    wp: Option<f64>,
    wr: Option<f64>,
    wf: Option<f64>,
    accuracy: f64,
    kappa: Option<f64>,
}

fn oracle(pred: &[String], truth: &[String], classes: &[String]) -> Oracle {
    let n = truth.len() as f64;
    let mut precision = Vec::new();
    let mut recall = Vec::new();
    let (mut wp, mut wpn, mut wr, mut wrn, mut wf, mut wfn) = (0.0, 0usize, 0.0, 0usize, 0.0, 0usize);
    let mut pe = 0.0;
    for c in classes {
        let tp = pred.iter().zip(truth).filter(|(p, t)| *p == c && *t == c).count();
        let npred = pred.iter().filter(|p| *p == c).count();
        let nact = truth.iter().filter(|t| *t == c).count();
        let p = (npred > 0).then(|| tp as f64 / npred as f64);
        let r = (nact > 0).then(|| tp as f64 / nact as f64);
        let f = match (p, r) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            (Some(_), Some(_)) => Some(0.0),
            _ => None,
        };
        if let Some(p) = p {
            if nact > 0 {
                wp += p * nact as f64;
                wpn += nact;
            }
        }
        if let Some(r) = r {
            wr += r * nact as f64;
            wrn += nact;
        }
        if let Some(f) = f {
            if nact > 0 {
                wf += f * nact as f64;
                wfn += nact;
            }
        }
        pe += npred as f64 * nact as f64 / (n * n);
        precision.push(p);
        recall.push(r);
    }
    let accuracy = pred.iter().zip(truth).filter(|(p, t)| p == t).count() as f64 / n;
    Oracle {
        precision,
        recall,
        wp: (wpn > 0).then(|| wp / wpn as f64),
        wr: (wrn > 0).then(|| wr / wrn as f64),
        wf: (wfn > 0).then(|| wf / wfn as f64),
        accuracy,
        kappa: (pe != 1.0).then(|| (accuracy - pe) / (1.0 - pe)),
    }
}

fn close(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => (x - y).abs() <= 1e-12,
        (None, None) => true,
        _ => false,
    }
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..500 {
        let k = rng.gen_range(2..=6);
        let classes: Vec<String> = (0..k).map(|i| format!("C{i}")).collect();
        let n = rng.gen_range(1..=80);
        let truth: Vec<String> = (0..n).map(|_| classes[rng.gen_range(0..k)].clone()).collect();
        let pred: Vec<String> = (0..n).map(|_| classes[rng.gen_range(0..k)].clone()).collect();
        let m = match confusion(&pred, &truth, &classes) {
            Ok(m) => m,
            Err(e) => return Outcome::Fail(format!("case {case}: {e}")),
        };
        let r = metrics(&m);
        let o = oracle(&pred, &truth, &classes);
        let per_class = classes.iter().enumerate().all(|(i, c)| {
            let cm = &r.per_class[c];
            close(cm.precision, o.precision[i]) && close(cm.recall, o.recall[i])
        });
        let ok = per_class
            && close(r.weighted_precision, o.wp)
            && close(r.weighted_recall, o.wr)
            && close(r.weighted_f1, o.wf)
            && (r.accuracy - o.accuracy).abs() <= 1e-12
            && close(kappa(&m), o.kappa)
            && close(r.kappa, o.kappa);
        if !ok {
            return Outcome::Fail(format!("case {case} disagrees with the oracle"));
        }
    }
    Outcome::Pass("500 random prediction sets match the counting oracle to 1e-12".into())
}

fn c9() -> Outcome {
    let docs = vec![vec!["a", "b"], vec!["a"], vec!["c"]];
    let labels = [NfrSubcategory::SE, NfrSubcategory::SE, NfrSubcategory::US];
    let model = match train_bnb::<f64, &str>(&docs, &labels, 1.0) {
        Ok(m) => m,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    // priors 2/3, 1/3; P(a|SE) = (2+1)/(3+3), P(a|US) = (0+1)/(1+3)
    let cases: [(&[&str], f64); 3] = [
        (&["a"], 4.0 / 5.0),
        (&["c"], (2.0 / 3.0 / 6.0) / (2.0 / 3.0 / 6.0 + 1.0 / 3.0 / 2.0)),
        (&["a", "c"], {
            let x = 2.0 / 3.0 * (1.0 / 2.0) * (1.0 / 6.0);
            let y = 1.0 / 3.0 * (1.0 / 4.0) * (1.0 / 2.0);
            x / (x + y)
        }),
    ];
    let se = model.classes.iter().position(|&c| c == NfrSubcategory::SE).unwrap();
    for (doc, want) in cases {
        let (_, post) = predict_bnb(&model, doc);
        if (post[se] - want).abs() > 1e-12 {
            return Outcome::Fail(format!("P(SE|{doc:?}) = {} expected {want}", post[se]));
        }
    }
    Outcome::Pass("P(X|a) = 4/5 and two further hand-computed posteriors to 1e-12".into())
}

/// Two topics over disjoint vocabularies, `n` docs each.
fn disjoint_docs(n: usize, seed: u64) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut docs = Vec::new();
    let mut truth = Vec::new();
    for d in 0..2 * n {
        let g = d % 2;
        docs.push((0..8).map(|_| g * 10 + rng.gen_range(0..10)).collect());
        truth.push(g);
    }
    (docs, truth)
}

fn purity(pred: &[usize], truth: &[usize], k: usize) -> f64 {
    let mut hit = 0;
    for t in 0..k {
        let mut counts = [0usize; 2];
        for (p, g) in pred.iter().zip(truth) {
            if *p == t {
                counts[*g] += 1;
            }
        }
        hit += counts.iter().max().unwrap();
    }
    hit as f64 / pred.len() as f64
}

fn c10() -> Outcome {
    let (docs, truth) = disjoint_docs(30, 10);
    let tokens: usize = docs.iter().map(Vec::len).sum();
    let lp = LdaParams {
        k: 2,
        iterations: 100,
        seed: 3,
        ..Default::default()
    };
    let mut lda = match LdaSampler::<f64>::new(docs.clone(), 20, &lp) {
        Ok(s) => s,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let biterms: Vec<(usize, usize)> = docs.iter().flat_map(|d| extract_biterms(d, None)).collect();
    let bp = BtmParams {
        k: 2,
        iterations: 100,
        seed: 3,
        ..Default::default()
    };
    let mut btm = match BtmSampler::<f64>::new(biterms.clone(), 20, &bp) {
        Ok(s) => s,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    for sweep in 0..100 {
        lda.sweep();
        btm.sweep();
        let doc_ok = lda
            .doc_topic
            .iter()
            .zip(&lda.docs)
            .all(|(row, d)| row.iter().map(|&c| c as usize).sum::<usize>() == d.len());
        let tot_ok = lda.topic_totals.iter().map(|&c| c as usize).sum::<usize>() == tokens;
        if lda.total_assignments() != tokens || !doc_ok || !tot_ok {
            return Outcome::Fail(format!("LDA counts drift at sweep {sweep}"));
        }
        if btm.total_assignments() != biterms.len() || btm.total_word_assignments() != 2 * biterms.len() {
            return Outcome::Fail(format!("BTM counts drift at sweep {sweep}"));
        }
    }
    let lda_topics: Vec<usize> = lda
        .doc_topic
        .iter()
        .map(|row| (0..row.len()).max_by_key(|&t| (row[t], std::cmp::Reverse(t))).unwrap())
        .collect();
    let lda_purity = purity(&lda_topics, &truth, 2);

    let words: Vec<Vec<String>> = docs
        .iter()
        .map(|d| d.iter().map(|w| format!("w{w:02}")).collect())
        .collect();
    let model = match train_btm::<f64, String>(
        &words,
        &BtmParams {
            k: 2,
            iterations: 200,
            seed: 3,
            ..Default::default()
        },
    ) {
        Ok(m) => m,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let btm_purity = purity(&model.dominant_topics(), &truth, 2);
    check(
        lda_purity >= 0.9 && btm_purity >= 0.9,
        format!("counts conserved over 100 sweeps; purity LDA {lda_purity:.3}, BTM {btm_purity:.3} (>= 0.9)"),
    )
}

fn blobs(seed: u64) -> Vec<DocTermVector<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..90)
        .map(|i| {
            let c = (i % 3) as f64 * 4.0;
            DocTermVector::new((0..4).map(|_| c + rng.gen::<f64>() * 3.0).collect())
        })
        .collect()
}

fn c11() -> Outcome {
    for seed in 0..20 {
        let v = blobs(seed);
        let m = match cluster_kmeans(&v, 4, seed, 100) {
            Ok(m) => m,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        if m.objective_trace.windows(2).any(|w| w[1] > w[0]) {
            return Outcome::Fail(format!("k-means objective rose (seed {seed}): {:?}", m.objective_trace));
        }
        let h = cluster_hybrid(&v, 3, Linkage::Average, 100).unwrap();
        if h.objective_trace.windows(2).any(|w| w[1] > w[0]) {
            return Outcome::Fail(format!("hybrid objective rose (seed {seed})"));
        }
    }
    let v = blobs(99);
    let a = cluster_hybrid(&v, 3, Linkage::Average, 100).unwrap();
    let b = cluster_hybrid(&v, 3, Linkage::Average, 100).unwrap();
    let identical = a.to_json().unwrap() == b.to_json().unwrap() && a == b;
    check(
        identical,
        "k-means objective monotone on 20 seeds; hybrid runs bit-identical".into(),
    )
}

fn c12(promise: &Result<Corpus, String>) -> Outcome {
    let tagger = LexiconTagger;
    let temporal = |s: &str| {
        let t = TaggedRequirement::from_text("x", &normalize_surface(s), &tagger).unwrap();
        apply_temporal_rules(&t, &tagger).rewritten_text()
    };
    let literal: [(&str, &str, bool); 4] = [
        ("respond in no more than 5 seconds", "fast", false),
        ("available 99.9% of the time", "alltimes", false),
        ("provide timely responses", "fast", false),
        ("available 24/7", "24 hours per day 365 days per year", true),
    ];
    for (input, want, surface_only) in literal {
        let got = if surface_only {
            normalize_surface(input)
        } else {
            temporal(input)
        };
        if !got
            .split(' ')
            .collect::<Vec<_>>()
            .windows(want.split(' ').count())
            .any(|w| w.join(" ") == want)
        {
            return Outcome::Fail(format!("{input:?} -> {got:?}, expected {want:?}"));
        }
    }
    let mut corpora = vec![("bundled sample", common::sample_corpus())];
    if let Ok(c) = promise {
        corpora.push(("PROMISE", c.clone()));
    }
    let mut seen = Vec::new();
    for (name, corpus) in &corpora {
        let pre = Preprocessor::fit(&PipelineConfig::default(), corpus).unwrap();
        for r in corpus.iter() {
            let once = pre.process(&r.id, &r.text).unwrap().text;
            let twice = pre.process(&r.id, &once).unwrap().text;
            if once != twice {
                return Outcome::Fail(format!("{name} {}: {once:?} -> {twice:?}", r.id));
            }
        }
        seen.push(format!("{name} ({} requirements)", corpus.len()));
    }
    let note = if promise.is_err() {
        "; PROMISE unavailable, sample corpus only"
    } else {
        ""
    };
    Outcome::Pass(format!(
        "literal temporal examples hold; idempotent over {}{note}",
        seen.join(", ")
    ))
}

fn c13() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let vec = |rng: &mut ChaCha8Rng, d: usize| {
        DocTermVector::new((0..d).map(|_| rng.gen_range(-5.0..5.0)).collect::<Vec<f64>>())
    };
    for i in 0..1000 {
        let d = rng.gen_range(1..12);
        let (x, y, z) = (vec(&mut rng, d), vec(&mut rng, d), vec(&mut rng, d));
        let dxy = doc_distance(&x, &y).unwrap();
        let dyx = doc_distance(&y, &x).unwrap();
        let dxz = doc_distance(&x, &z).unwrap();
        let dzy = doc_distance(&z, &y).unwrap();
        let ok = dxy >= 0.0
            && doc_distance(&x, &x).unwrap() == 0.0
            && dxy == dyx
            && dxy <= dxz + dzy + 1e-12 * (1.0 + dxz + dzy)
            && (dxy > 0.0 || x == y);
        if !ok {
            return Outcome::Fail(format!("axiom violated on pair/triple {i}"));
        }
    }
    Outcome::Pass("non-negativity, identity, symmetry and triangle inequality on 1000 random triples".into())
}

fn main() {
    let promise = common::promise_corpus();
    type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "FR/NFR tree on raw text", Box::new(|| c1(&promise))),
        (2, "FR/NFR tree gains from preprocessing", Box::new(|| c2(&promise))),
        (3, "BNB sub-classification 5x5 CV", Box::new(|| c3(&promise))),
        (4, "method ordering on processed text", Box::new(|| c4(&promise))),
        (5, "preprocessing effect on BNB and LDA", Box::new(|| c5(&promise))),
        (6, "Hopkins statistic", Box::new(|| c6(&promise))),
        (7, "silhouette of the three clusterings", Box::new(|| c7(&promise))),
        (8, "metrics against brute-force oracle", Box::new(c8)),
        (9, "BNB hand-computed posteriors", Box::new(c9)),
        (10, "Gibbs conservation and topic purity", Box::new(c10)),
        (11, "k-means monotone, hybrid deterministic", Box::new(c11)),
        (
            12,
            "preprocessing idempotence and temporal rules",
            Box::new(|| c12(&promise)),
        ),
        (13, "doc_distance metric axioms", Box::new(c13)),
    ];
    let strict = std::env::var("REQCLASS_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let (mut failed, mut missing) = (0, 0);
    for (n, name, f) in &criteria {
        match f() {
            Outcome::Pass(d) => println!("criterion {n:>2} PASS  {name}: {d}"),
            Outcome::Fail(d) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {d}");
            }
            Outcome::NoData(d) => {
                missing += 1;
                println!("criterion {n:>2} FAIL  {name}: not run, {d}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed, {missing} without data",
        criteria.len() - failed - missing
    );
    if failed > 0 || (strict && missing > 0) {
        std::process::exit(1);
    }
}
