//! Evaluation of trained forests: accuracy with an exact interval, the test
//! against the no-information rate, both kappa variants, confusion matrices,
//! importance rankings, the four nested models and the yearly chord
//! diversity table.

mod binomial;
mod diversity;
mod metrics;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{impute_missing, DatasetError, DenseTable, FeatureTable, SplitIndices};
use crate::features::{nested_feature_names, FEATURE_NAMES};
use crate::forest::{Forest, ForestError, ForestParams};

pub use binomial::{clopper_pearson, lower_tail, pvalue_vs_nir, upper_tail};
pub use diversity::{yearly_diversity_report, DiversityReport, DiversityRow};
pub use metrics::{
    accuracy, confusion_matrix, confusion_matrix_with_labels, error_rate, kappa, kappa_from_rates, nir,
    ConfusionMatrix, KappaMode,
};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{predictions} predictions for {truths} truths")]
    LengthMismatch { predictions: usize, truths: usize },
    #[error("nothing to evaluate")]
    Empty,
    #[error("kappa is undefined when chance agreement is 1")]
    DegenerateKappa,
    #[error("feature table lacks the full 23-feature layout")]
    MissingFeatures,
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// Confidence level of the accuracy interval.
pub const CONFIDENCE: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureImportance {
    pub feature: String,
    pub importance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub model_id: usize,
    pub feature_names: Vec<String>,
    pub n_train: usize,
    pub n_test: usize,
    pub correct: usize,
    pub accuracy: f64,
    pub error_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub nir: f64,
    pub pvalue_vs_nir: f64,
    /// `None` when chance agreement is 1.
    pub kappa_marginal: Option<f64>,
    pub kappa_nir: Option<f64>,
    pub oob_accuracy: Option<f64>,
    pub confusion: ConfusionMatrix,
    /// Most important first.
    pub importance: Vec<FeatureImportance>,
}

fn optional_kappa(result: Result<f64, EvalError>) -> Result<Option<f64>, EvalError> {
    match result {
        Ok(k) => Ok(Some(k)),
        Err(EvalError::DegenerateKappa) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Builds the report for `predictions` against `truths`.
pub fn report_from_predictions(
    model_id: usize,
    forest: &Forest,
    predictions: &[String],
    truths: &[String],
) -> Result<EvalReport, EvalError> {
    let accuracy = accuracy(predictions, truths)?;
    let n = truths.len();
    let correct = predictions.iter().zip(truths).filter(|(p, t)| p == t).count();
    let (ci_low, ci_high) = clopper_pearson(correct as u64, n as u64, 1.0 - CONFIDENCE);
    let nir = nir(truths)?;
    Ok(EvalReport {
        model_id,
        feature_names: forest.feature_names.clone(),
        n_train: forest.n_train,
        n_test: n,
        correct,
        accuracy,
        error_rate: error_rate(predictions, truths)?,
        ci_low,
        ci_high,
        nir,
        pvalue_vs_nir: pvalue_vs_nir(correct as u64, n as u64, nir),
        kappa_marginal: optional_kappa(kappa(predictions, truths, KappaMode::Marginal))?,
        kappa_nir: optional_kappa(kappa(predictions, truths, KappaMode::Nir))?,
        oob_accuracy: forest.oob_accuracy,
        confusion: confusion_matrix_with_labels(predictions, truths, &forest.classes)?,
        importance: forest
            .importance_ranking()
            .into_iter()
            .map(|(feature, importance)| FeatureImportance { feature, importance })
            .collect(),
    })
}

/// Predicts every row of `test` (already imputed, same columns as the forest)
/// and reports.
pub fn evaluate(forest: &Forest, test: &DenseTable, model_id: usize) -> Result<EvalReport, EvalError> {
    let test = test.select(
        &forest
            .feature_names
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>(),
    );
    let predictions = forest.predict_all(&test.x)?;
    report_from_predictions(model_id, forest, &predictions, &test.genres)
}

/// Result of the four nested models.
#[derive(Debug, Clone)]
pub struct NestedExperiment {
    pub forests: Vec<Forest>,
    pub reports: Vec<EvalReport>,
    /// Training medians of all 23 columns.
    pub medians: Vec<f64>,
}

/// Trains and evaluates the nested models on one split: model 1 sees the
/// triad group, each following model adds the next group, model 4 sees all
/// 23 features. All four share the split, the imputation medians and the
/// forest seed.
pub fn run_nested_experiment(
    table: &FeatureTable,
    split: &SplitIndices,
    params: &ForestParams,
    seed: u64,
) -> Result<NestedExperiment, EvalError> {
    if table.feature_names.iter().map(String::as_str).ne(FEATURE_NAMES) {
        return Err(EvalError::MissingFeatures);
    }
    let train = table.subset(&split.train_ids)?;
    let test = table.subset(&split.test_ids)?;
    let (train, test, medians) = impute_missing(&train, &test)?;

    let results: Vec<(Forest, EvalReport)> = (1..=4)
        .into_par_iter()
        .map(|model_id| {
            let names = nested_feature_names(model_id);
            let mut forest = Forest::fit(&train.select(names), params, seed)?;
            forest.imputation_medians = medians[..names.len()].to_vec();
            let report = evaluate(&forest, &test, model_id)?;
            Ok((forest, report))
        })
        .collect::<Result<_, EvalError>>()?;
    let (forests, reports) = results.into_iter().unzip();
    Ok(NestedExperiment {
        forests,
        reports,
        medians,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{Tree, TreeNode, MODEL_FORMAT};

    #[test]
    fn report_fields_are_consistent() {
        let forest = Forest {
            format: MODEL_FORMAT.into(),
            feature_names: vec!["f".into()],
            classes: vec!["A".into(), "B".into()],
            n_trees: 1,
            mtry: 1,
            min_leaf_size: 1,
            bootstrap: false,
            seed: 0,
            n_train: 10,
            imputation_medians: vec![0.0],
            oob_accuracy: None,
            degenerate: None,
            trees: vec![Tree {
                nodes: vec![TreeNode::Leaf {
                    class_counts: vec![1, 0],
                }],
            }],
        };
        let truths: Vec<String> = ["A", "A", "B", "A"].iter().map(|s| s.to_string()).collect();
        let preds: Vec<String> = vec!["A".into(); 4];
        let r = report_from_predictions(1, &forest, &preds, &truths).unwrap();
        assert_eq!(r.accuracy, 0.75);
        assert_eq!(r.accuracy + r.error_rate, 1.0);
        assert!(r.ci_low <= r.accuracy && r.accuracy <= r.ci_high);
        assert_eq!(r.nir, 0.75);
        assert_eq!(r.kappa_nir, Some(0.0));
        assert_eq!(r.kappa_marginal, Some(0.0));
        assert_eq!(r.importance[0].importance, 0.0);
    }
}
