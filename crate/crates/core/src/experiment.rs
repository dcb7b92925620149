//! Config-driven experiments tying preprocessing, features, models and
//! evaluation together.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::classifiers::{
    assign_cluster_labels, assign_topic_labels, cluster_hierarchical, cluster_hybrid, cluster_kmeans, doc_terms,
    predict_tree, train_bnb, train_btm, train_lda, train_tree, BtmParams, ClusterModel, LabelMap, LdaParams, Linkage,
    TreeParams, Vectorizer, Weighting,
};
use crate::corpus::{stratified_folds_by, Corpus, CorpusFormat, NfrSubcategory, ReqKind};
use crate::error::{Error, Result};
use crate::eval::{cross_validate, hopkins_mean, silhouette, ClusterDiagnostics, CvReport, EvalReport};
use crate::features::{extract_vector, FeatureParams, FeatureSpec, FeatureVector};
use crate::preprocess::{LexiconTagger, PipelineConfig, Preprocessor, ProcessedRequirement, TaggedRequirement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    FrNfr,
    NfrSub,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Tree,
    Bnb,
    Lda,
    Btm,
    Hierarchical,
    KMeans,
    Hybrid,
}

impl Method {
    /// The six sub-classification methods in comparison-table order.
    pub const SUBCLASSIFIERS: [Method; 6] = [
        Method::Lda,
        Method::Btm,
        Method::Hierarchical,
        Method::KMeans,
        Method::Hybrid,
        Method::Bnb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Tree => "tree",
            Method::Bnb => "bnb",
            Method::Lda => "lda",
            Method::Btm => "btm",
            Method::Hierarchical => "hierarchical",
            Method::KMeans => "kmeans",
            Method::Hybrid => "hybrid",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Method::Tree => "C4.5",
            Method::Bnb => "Naive Bayes",
            Method::Lda => "LDA",
            Method::Btm => "BTM",
            Method::Hierarchical => "Hierarchical",
            Method::KMeans => "K-means",
            Method::Hybrid => "Hybrid",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            Method::Tree,
            Method::Bnb,
            Method::Lda,
            Method::Btm,
            Method::Hierarchical,
            Method::KMeans,
            Method::Hybrid,
        ]
        .into_iter()
        .find(|m| m.name().eq_ignore_ascii_case(s))
        .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CorpusConfig {
    pub path: Option<PathBuf>,
    pub format: Option<CorpusFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FoldConfig {
    pub k: usize,
    pub runs: usize,
}

impl Default for FoldConfig {
    fn default() -> Self {
        FoldConfig { k: 10, runs: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecFitting {
    /// One feature spec fitted on the whole corpus.
    #[default]
    Global,
    /// A fresh spec per training split.
    PerFold,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FeatureConfig {
    #[serde(flatten)]
    pub params: FeatureParams,
    pub fitting: SpecFitting,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            params: FeatureParams::default(),
            fitting: SpecFitting::Global,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BnbConfig {
    pub smoothing: f64,
}

impl Default for BnbConfig {
    fn default() -> Self {
        BnbConfig { smoothing: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClusterConfig {
    pub k: usize,
    pub linkage: Linkage,
    pub max_iters: usize,
    pub weighting: Weighting,
    pub hopkins_fraction: f64,
    pub hopkins_seeds: usize,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        ClusterConfig {
            k: 10,
            linkage: Linkage::Average,
            max_iters: 300,
            weighting: Weighting::Counts,
            hopkins_fraction: 0.1,
            hopkins_seeds: 20,
        }
    }
}

/// One experiment. Every field has a default; see `report --show-defaults`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub task: Task,
    pub method: Method,
    /// Run the preprocessing pipeline before feature extraction.
    pub processed: bool,
    pub seed: u64,
    /// Keep the PO sub-category in sub-classification.
    pub include_po: bool,
    pub out: PathBuf,
    pub corpus: CorpusConfig,
    pub preprocess: PipelineConfig,
    pub folds: FoldConfig,
    pub features: FeatureConfig,
    pub tree: TreeParams,
    pub bnb: BnbConfig,
    pub lda: LdaParams,
    pub btm: BtmParams,
    pub cluster: ClusterConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            task: Task::FrNfr,
            method: Method::Tree,
            processed: true,
            seed: 42,
            include_po: false,
            out: PathBuf::from("out"),
            corpus: CorpusConfig::default(),
            preprocess: PipelineConfig::default(),
            folds: FoldConfig::default(),
            features: FeatureConfig::default(),
            tree: TreeParams::default(),
            bnb: BnbConfig::default(),
            lda: LdaParams::default(),
            btm: BtmParams::default(),
            cluster: ClusterConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(src: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(src).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        match (self.task, self.method) {
            (Task::FrNfr, Method::Tree) => {}
            (Task::FrNfr, m) => return bad(format!("method {} does not apply to the fr-nfr task", m.name())),
            (Task::NfrSub, Method::Tree) => return bad("the tree is only used for the fr-nfr task".into()),
            _ => {}
        }
        if self.folds.k < 2 || self.folds.runs == 0 {
            return bad("folds.k must be at least 2 and folds.runs positive".into());
        }
        if self.cluster.k == 0 || self.lda.k == 0 || self.btm.k == 0 {
            return bad("cluster and topic counts must be positive".into());
        }
        if self.tree.min_leaf == 0 {
            return bad("tree.min_leaf must be positive".into());
        }
        Ok(())
    }

    /// Sub-classification defaults: five runs of five folds.
    pub fn nfr_sub(method: Method) -> Self {
        ExperimentConfig {
            task: Task::NfrSub,
            method,
            folds: FoldConfig { k: 5, runs: 5 },
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicSummary {
    pub topic: usize,
    pub label: NfrSubcategory,
    pub top_words: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub task: Task,
    pub method: Method,
    pub processed: bool,
    pub report: EvalReport,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_run: Vec<EvalReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<ClusterDiagnostics<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub topics: Vec<TopicSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_map: Option<LabelMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feature_spec: Option<FeatureSpec>,
}

/// Texts after the configured preprocessing, or the raw texts.
pub fn prepare_corpus(corpus: &Corpus, cfg: &ExperimentConfig) -> Result<(Corpus, Option<Vec<ProcessedRequirement>>)> {
    if !cfg.processed {
        return Ok((corpus.clone(), None));
    }
    let pre = Preprocessor::fit(&cfg.preprocess, corpus)?;
    let (c, records) = pre.process_corpus(corpus)?;
    Ok((c, Some(records)))
}

pub fn run_experiment(corpus: &Corpus, cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    if corpus.is_empty() {
        return Err(Error::Empty("corpus has no requirements".into()));
    }
    let (texts, records) = prepare_corpus(corpus, cfg)?;
    match cfg.task {
        Task::FrNfr => run_fr_nfr(&texts, records.as_deref(), cfg),
        Task::NfrSub => run_nfr_sub(&texts, cfg),
    }
}

fn fr_nfr_classes() -> Vec<String> {
    vec!["NFR".into(), "FR".into()]
}

fn run_fr_nfr(
    corpus: &Corpus,
    records: Option<&[ProcessedRequirement]>,
    cfg: &ExperimentConfig,
) -> Result<ExperimentResult> {
    let tagged: Vec<TaggedRequirement> = match records {
        Some(r) => r.iter().map(|p| p.tagged.clone()).collect(),
        None => corpus
            .iter()
            .map(|r| TaggedRequirement::from_text(r.id.clone(), &r.text, &LexiconTagger))
            .collect::<Result<_>>()?,
    };
    let kinds: Vec<ReqKind> = corpus.iter().map(|r| ReqKind::from(r.label)).collect();
    let truth: Vec<String> = kinds.iter().map(ToString::to_string).collect();
    let fit = |idx: &[usize]| -> Result<FeatureSpec> {
        let docs: Vec<(&TaggedRequirement, ReqKind)> = idx.iter().map(|&i| (&tagged[i], kinds[i])).collect();
        FeatureSpec::fit(&docs, &cfg.features.params)
    };
    let all: Vec<usize> = (0..corpus.len()).collect();
    let global = match cfg.features.fitting {
        SpecFitting::Global => Some(fit(&all)?),
        SpecFitting::PerFold => None,
    };
    let plan = stratified_folds_by(corpus, cfg.folds.k, cfg.folds.runs, cfg.seed, |r| {
        ReqKind::from(r.label)
    })?;
    let cv = cross_validate(&truth, &fr_nfr_classes(), &plan, |train, test| {
        let local;
        let spec = match &global {
            Some(s) => s,
            None => {
                local = fit(train)?;
                &local
            }
        };
        let x: Vec<FeatureVector<f64>> = train.iter().map(|&i| extract_vector(&tagged[i], spec)).collect();
        let y: Vec<ReqKind> = train.iter().map(|&i| kinds[i]).collect();
        let tree = train_tree(&x, &y, cfg.tree)?;
        test.iter()
            .map(|&i| Ok(predict_tree(&tree, &extract_vector(&tagged[i], spec))?.0.to_string()))
            .collect()
    })?;
    Ok(ExperimentResult {
        task: Task::FrNfr,
        method: Method::Tree,
        processed: cfg.processed,
        report: cv.pooled,
        per_run: cv.per_run,
        diagnostics: None,
        topics: Vec::new(),
        label_map: None,
        feature_spec: global,
    })
}

/// NFR requirements used for sub-classification, with their labels.
pub fn nfr_subset(corpus: &Corpus, include_po: bool) -> Corpus {
    corpus.filter(|r| matches!(r.label.subcategory(), Some(s) if include_po || s != NfrSubcategory::PO))
}

fn sub_classes(labels: &[NfrSubcategory]) -> Vec<String> {
    NfrSubcategory::REPORT_ORDER
        .iter()
        .filter(|c| labels.contains(c))
        .map(|c| c.code().to_string())
        .collect()
}

fn codes(labels: &[NfrSubcategory]) -> Vec<String> {
    labels.iter().map(|l| l.code().to_string()).collect()
}

fn run_nfr_sub(corpus: &Corpus, cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let nfr = nfr_subset(corpus, cfg.include_po);
    if nfr.is_empty() {
        return Err(Error::Empty("no NFR requirements to sub-classify".into()));
    }
    let docs: Vec<Vec<String>> = nfr.iter().map(|r| doc_terms(&r.text)).collect();
    let labels: Vec<NfrSubcategory> = nfr.iter().filter_map(|r| r.label.subcategory()).collect();
    let classes = sub_classes(&labels);
    let truth = codes(&labels);
    let mut result = ExperimentResult {
        task: Task::NfrSub,
        method: cfg.method,
        processed: cfg.processed,
        report: EvalReport::from_predictions(&truth, &truth, &classes)?,
        per_run: Vec::new(),
        diagnostics: None,
        topics: Vec::new(),
        label_map: None,
        feature_spec: None,
    };
    match cfg.method {
        Method::Bnb => {
            let plan = stratified_folds_by(&nfr, cfg.folds.k, cfg.folds.runs, cfg.seed, |r| r.label)?;
            let cv: CvReport = cross_validate(&truth, &classes, &plan, |train, test| {
                let d: Vec<&Vec<String>> = train.iter().map(|&i| &docs[i]).collect();
                let d: Vec<Vec<String>> = d.into_iter().cloned().collect();
                let l: Vec<NfrSubcategory> = train.iter().map(|&i| labels[i]).collect();
                let m = train_bnb::<f64, String>(&d, &l, cfg.bnb.smoothing)?;
                Ok(test.iter().map(|&i| m.predict(&docs[i]).code().to_string()).collect())
            })?;
            result.report = cv.pooled;
            result.per_run = cv.per_run;
        }
        Method::Lda => {
            let params = LdaParams {
                seed: cfg.seed,
                ..cfg.lda
            };
            let m = train_lda::<f64, String>(&docs, &params)?;
            let dominant = m.dominant_topics();
            let map = assign_topic_labels(&dominant, &labels, params.k)?;
            result.topics = (0..params.k)
                .map(|t| TopicSummary {
                    topic: t,
                    label: map.get(t),
                    top_words: m.top_words(t, 10).into_iter().map(String::from).collect(),
                })
                .collect();
            result.report = EvalReport::from_predictions(&codes(&map.apply(&dominant)), &truth, &classes)?;
            result.label_map = Some(map);
        }
        Method::Btm => {
            let params = BtmParams {
                seed: cfg.seed,
                ..cfg.btm
            };
            let m = train_btm::<f64, String>(&docs, &params)?;
            let dominant = m.dominant_topics();
            let map = assign_topic_labels(&dominant, &labels, params.k)?;
            result.topics = (0..params.k)
                .map(|t| TopicSummary {
                    topic: t,
                    label: map.get(t),
                    top_words: m.top_words(t, 10).into_iter().map(String::from).collect(),
                })
                .collect();
            result.report = EvalReport::from_predictions(&codes(&map.apply(&dominant)), &truth, &classes)?;
            result.label_map = Some(map);
        }
        Method::Hierarchical | Method::KMeans | Method::Hybrid => {
            let vz = Vectorizer::fit(&docs, cfg.cluster.weighting);
            let vectors = vz.transform_all::<f64, String>(&docs);
            let k = cfg.cluster.k.min(vectors.len());
            let model: ClusterModel<f64> = match cfg.method {
                Method::Hierarchical => cluster_hierarchical(&vectors, k, cfg.cluster.linkage)?,
                Method::KMeans => cluster_kmeans(&vectors, k, cfg.seed, cfg.cluster.max_iters)?,
                _ => cluster_hybrid(&vectors, k, cfg.cluster.linkage, cfg.cluster.max_iters)?,
            };
            let map = assign_cluster_labels(&model.assignments, &labels, k)?;
            result.report = EvalReport::from_predictions(&codes(&map.apply(&model.assignments)), &truth, &classes)?;
            result.label_map = Some(map);
            let hopkins = if vectors.len() >= 10 {
                hopkins_mean(
                    &vectors,
                    cfg.cluster.hopkins_fraction,
                    cfg.seed,
                    cfg.cluster.hopkins_seeds,
                )
                .ok()
            } else {
                None
            };
            if let (Some(h), Ok(s)) = (hopkins, silhouette(&vectors, &model.assignments)) {
                result.diagnostics = Some(ClusterDiagnostics {
                    hopkins: h,
                    silhouette: s,
                });
            }
        }
        Method::Tree => unreachable!("rejected by validate"),
    }
    Ok(result)
}
