//! Requirements classification toolkit: corpus handling, rule-based
//! preprocessing, FR/NFR features, classifiers and evaluation.

pub mod classifiers;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod features;
pub mod preprocess;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type BnbModelF64 = classifiers::BnbModel<f64>;
pub type BtmModelF64 = classifiers::BtmModel<f64>;
pub type ClusterModelF64 = classifiers::ClusterModel<f64>;
pub type DecisionTreeF64 = classifiers::DecisionTree<f64>;
pub type DocTermVectorF64 = classifiers::DocTermVector<f64>;
pub type FeatureVectorF64 = features::FeatureVector<f64>;
pub type LdaModelF64 = classifiers::LdaModel<f64>;
