//! Bagged random forest of Gini classification trees.
//!
//! Each tree `k` is grown on a with-replacement bootstrap of the training
//! rows, drawing `mtry` candidate features at every node. Tree `k` reads its
//! randomness from two substreams of the forest seed (`2k` for the bootstrap,
//! `2k + 1` for feature draws), so the forest is the same no matter how many
//! threads build it. Predictions are a majority vote, ties going to the class
//! that sorts first.

mod split;
mod tree;

use std::collections::BTreeSet;
use std::io::{Read, Write};

use log::warn;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::DenseTable;
use crate::rng::stream_rng;

pub use split::{best_split, gini, midpoint, Split};
pub use tree::{Tree, TreeNode, TreeParams};

pub const MODEL_FORMAT: &str = "cifra-forest/1";

#[derive(Debug, Error)]
pub enum ForestError {
    #[error("node has no rows")]
    EmptyNode,
    #[error("training table is empty")]
    EmptyInput,
    #[error("expected {expected} features, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid forest parameters: {0}")]
    BadParams(String),
    #[error("unsupported model format `{0}`")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    /// Features per split; `None` means `floor(sqrt(p))`.
    pub mtry: Option<usize>,
    pub min_leaf_size: usize,
    /// Grow each tree on a bootstrap sample. Turning this off grows every tree
    /// on the full training set.
    pub bootstrap: bool,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 500,
            mtry: None,
            min_leaf_size: 1,
            bootstrap: true,
        }
    }
}

/// `floor(sqrt(p))`, at least 1.
pub fn default_mtry(p: usize) -> usize {
    ((p as f64).sqrt().floor() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    pub format: String,
    pub feature_names: Vec<String>,
    /// Class labels in sorted order; trees refer to them by index.
    pub classes: Vec<String>,
    pub n_trees: usize,
    pub mtry: usize,
    pub min_leaf_size: usize,
    pub bootstrap: bool,
    pub seed: u64,
    pub n_train: usize,
    pub imputation_medians: Vec<f64>,
    pub oob_accuracy: Option<f64>,
    /// Set when the training data had a single row or a single class.
    pub degenerate: Option<String>,
    pub trees: Vec<Tree>,
}

fn bootstrap_rows(seed: u64, tree: usize, n: usize) -> Vec<usize> {
    let mut rng = stream_rng(seed, 2 * tree as u64);
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

impl Forest {
    /// Trains a forest on a fully observed table.
    pub fn fit(table: &DenseTable, params: &ForestParams, seed: u64) -> Result<Forest, ForestError> {
        let n = table.x.len();
        if n == 0 {
            return Err(ForestError::EmptyInput);
        }
        let p = table.feature_names.len();
        if p == 0 {
            return Err(ForestError::BadParams("no features".into()));
        }
        if let Some(row) = table.x.iter().find(|r| r.len() != p) {
            return Err(ForestError::DimensionMismatch {
                expected: p,
                found: row.len(),
            });
        }
        if params.n_trees == 0 {
            return Err(ForestError::BadParams("at least one tree is required".into()));
        }
        if params.min_leaf_size == 0 {
            return Err(ForestError::BadParams("min_leaf_size must be at least 1".into()));
        }
        let mtry = params.mtry.unwrap_or_else(|| default_mtry(p));
        if mtry == 0 || mtry > p {
            return Err(ForestError::BadParams(format!("mtry {mtry} outside 1..={p}")));
        }

        let classes: Vec<String> = table
            .genres
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let y: Vec<usize> = table
            .genres
            .iter()
            .map(|g| classes.binary_search(g).expect("class collected above"))
            .collect();

        let degenerate = if n == 1 {
            Some("single training row".to_string())
        } else if classes.len() == 1 {
            Some(format!("single class `{}`", classes[0]))
        } else {
            None
        };
        if let Some(why) = &degenerate {
            warn!("degenerate forest input: {why}; predictions are trivially constant");
        }

        let tree_params = TreeParams {
            mtry,
            min_leaf_size: params.min_leaf_size,
        };
        let trees: Vec<Tree> = (0..params.n_trees)
            .into_par_iter()
            .map(|k| {
                let rows = if params.bootstrap {
                    bootstrap_rows(seed, k, n)
                } else {
                    (0..n).collect()
                };
                let mut rng = stream_rng(seed, 2 * k as u64 + 1);
                Tree::grow(&table.x, &y, classes.len(), rows, tree_params, &mut rng)
            })
            .collect();

        let mut forest = Forest {
            format: MODEL_FORMAT.to_string(),
            feature_names: table.feature_names.clone(),
            classes,
            n_trees: params.n_trees,
            mtry,
            min_leaf_size: params.min_leaf_size,
            bootstrap: params.bootstrap,
            seed,
            n_train: n,
            imputation_medians: Vec::new(),
            oob_accuracy: None,
            degenerate,
            trees,
        };
        if params.bootstrap {
            forest.oob_accuracy = forest.out_of_bag_accuracy(&table.x, &y);
        }
        Ok(forest)
    }

    /// Whether out-of-bag membership can be recovered for this forest.
    pub fn oob_available(&self) -> bool {
        self.bootstrap
    }

    /// Training rows left out of tree `k`'s bootstrap sample.
    pub fn oob_rows(&self, k: usize) -> Option<Vec<usize>> {
        if !self.bootstrap || k >= self.trees.len() {
            return None;
        }
        let mut in_bag = vec![false; self.n_train];
        for r in bootstrap_rows(self.seed, k, self.n_train) {
            in_bag[r] = true;
        }
        Some((0..self.n_train).filter(|&r| !in_bag[r]).collect())
    }

    fn out_of_bag_accuracy(&self, x: &[Vec<f64>], y: &[usize]) -> Option<f64> {
        let mut votes = vec![vec![0usize; self.classes.len()]; x.len()];
        for (k, tree) in self.trees.iter().enumerate() {
            for r in self.oob_rows(k)? {
                votes[r][tree.predict(&x[r])] += 1;
            }
        }
        let (mut correct, mut voted) = (0usize, 0usize);
        for (v, &truth) in votes.iter().zip(y) {
            if v.iter().any(|&c| c > 0) {
                voted += 1;
                correct += usize::from(argmax(v) == truth);
            }
        }
        (voted > 0).then(|| correct as f64 / voted as f64)
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Votes per class for one fully observed row.
    pub fn votes(&self, x: &[f64]) -> Result<Vec<usize>, ForestError> {
        if x.len() != self.n_features() {
            return Err(ForestError::DimensionMismatch {
                expected: self.n_features(),
                found: x.len(),
            });
        }
        let mut votes = vec![0usize; self.classes.len()];
        for tree in &self.trees {
            votes[tree.predict(x)] += 1;
        }
        Ok(votes)
    }

    /// Majority-vote class for one fully observed row.
    pub fn predict(&self, x: &[f64]) -> Result<&str, ForestError> {
        let votes = self.votes(x)?;
        Ok(&self.classes[argmax(&votes)])
    }

    /// Predicts a row that may have missing values, filling them with the
    /// stored training medians.
    pub fn predict_partial(&self, x: &[Option<f64>]) -> Result<&str, ForestError> {
        if self.imputation_medians.len() != self.n_features() {
            return Err(ForestError::BadParams(
                "model carries no imputation medians".into(),
            ));
        }
        if x.len() != self.n_features() {
            return Err(ForestError::DimensionMismatch {
                expected: self.n_features(),
                found: x.len(),
            });
        }
        let filled: Vec<f64> = x
            .iter()
            .zip(&self.imputation_medians)
            .map(|(v, m)| v.unwrap_or(*m))
            .collect();
        self.predict(&filled)
    }

    pub fn predict_all(&self, rows: &[Vec<f64>]) -> Result<Vec<String>, ForestError> {
        rows.par_iter()
            .map(|r| self.predict(r).map(str::to_string))
            .collect()
    }

    /// Mean decrease in Gini impurity per feature, in feature order: each
    /// split adds `(node_size / n) * decrease` to its feature, and the sums are
    /// averaged over trees.
    pub fn importance(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.n_features()];
        for tree in &self.trees {
            tree.accumulate_importance(&mut acc);
        }
        let b = self.trees.len() as f64;
        acc.iter_mut().for_each(|v| *v /= b);
        acc
    }

    /// Features with their importance, most important first.
    pub fn importance_ranking(&self) -> Vec<(String, f64)> {
        let mut ranked: Vec<(String, f64)> = self
            .feature_names
            .iter()
            .cloned()
            .zip(self.importance())
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
        ranked
    }

    pub fn to_writer<W: Write>(&self, writer: W) -> Result<(), ForestError> {
        serde_json::to_writer(writer, self)?;
        Ok(())
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Forest, ForestError> {
        let forest: Forest = serde_json::from_reader(reader)?;
        if forest.format != MODEL_FORMAT {
            return Err(ForestError::Format(forest.format));
        }
        Ok(forest)
    }
}

fn argmax(votes: &[usize]) -> usize {
    let mut best = 0;
    for (i, &v) in votes.iter().enumerate() {
        if v > votes[best] {
            best = i;
        }
    }
    best
}
