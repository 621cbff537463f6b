//! Agreement metrics and the confusion matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::EvalError;

fn check_lengths<A, B>(predictions: &[A], truths: &[B]) -> Result<(), EvalError> {
    if predictions.len() != truths.len() {
        return Err(EvalError::LengthMismatch {
            predictions: predictions.len(),
            truths: truths.len(),
        });
    }
    if truths.is_empty() {
        return Err(EvalError::Empty);
    }
    Ok(())
}

fn correct_count<S: AsRef<str>, T: AsRef<str>>(predictions: &[S], truths: &[T]) -> usize {
    predictions
        .iter()
        .zip(truths)
        .filter(|(p, t)| p.as_ref() == t.as_ref())
        .count()
}

/// Share of positions where the prediction equals the truth.
pub fn accuracy<S: AsRef<str>, T: AsRef<str>>(predictions: &[S], truths: &[T]) -> Result<f64, EvalError> {
    check_lengths(predictions, truths)?;
    Ok(correct_count(predictions, truths) as f64 / truths.len() as f64)
}

/// Share of positions where the prediction differs from the truth.
pub fn error_rate<S: AsRef<str>, T: AsRef<str>>(predictions: &[S], truths: &[T]) -> Result<f64, EvalError> {
    check_lengths(predictions, truths)?;
    let wrong = truths.len() - correct_count(predictions, truths);
    Ok(wrong as f64 / truths.len() as f64)
}

/// No-information rate: the share of the most frequent true class.
pub fn nir<T: AsRef<str>>(truths: &[T]) -> Result<f64, EvalError> {
    if truths.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for t in truths {
        *counts.entry(t.as_ref()).or_default() += 1;
    }
    let max = counts.values().copied().max().unwrap_or(0);
    Ok(max as f64 / truths.len() as f64)
}

/// Where the chance agreement of kappa comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KappaMode {
    /// Cohen's chance agreement from the row and column marginals.
    Marginal,
    /// The no-information rate of the truths.
    Nir,
}

/// `(p0 - pe) / (1 - pe)`.
pub fn kappa_from_rates(p0: f64, pe: f64) -> Result<f64, EvalError> {
    if (1.0 - pe).abs() < 1e-15 {
        return Err(EvalError::DegenerateKappa);
    }
    Ok((p0 - pe) / (1.0 - pe))
}

pub fn kappa<S: AsRef<str>, T: AsRef<str>>(
    predictions: &[S],
    truths: &[T],
    mode: KappaMode,
) -> Result<f64, EvalError> {
    let p0 = accuracy(predictions, truths)?;
    let pe = match mode {
        KappaMode::Nir => nir(truths)?,
        KappaMode::Marginal => {
            let cm = confusion_matrix(predictions, truths)?;
            let n = truths.len() as f64;
            (0..cm.labels.len())
                .map(|g| {
                    let row: usize = cm.counts[g].iter().sum();
                    let col: usize = cm.counts.iter().map(|r| r[g]).sum();
                    (row as f64 / n) * (col as f64 / n)
                })
                .sum()
        }
    };
    kappa_from_rates(p0, pe)
}

/// Rows are true classes, columns predicted classes, both in `labels` order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub labels: Vec<String>,
    pub counts: Vec<Vec<usize>>,
    /// Counts divided by their row sum; rows without support are all zero.
    pub normalized: Vec<Vec<f64>>,
    /// Labels that never occur among the truths.
    pub zero_support: Vec<String>,
}

/// Confusion matrix over the sorted union of observed labels.
pub fn confusion_matrix<S: AsRef<str>, T: AsRef<str>>(
    predictions: &[S],
    truths: &[T],
) -> Result<ConfusionMatrix, EvalError> {
    confusion_matrix_with_labels(predictions, truths, &[] as &[&str])
}

/// Like [`confusion_matrix`], also including `extra_labels` even when they
/// never occur.
pub fn confusion_matrix_with_labels<S: AsRef<str>, T: AsRef<str>, L: AsRef<str>>(
    predictions: &[S],
    truths: &[T],
    extra_labels: &[L],
) -> Result<ConfusionMatrix, EvalError> {
    check_lengths(predictions, truths)?;
    let labels: Vec<String> = predictions
        .iter()
        .map(AsRef::as_ref)
        .chain(truths.iter().map(AsRef::as_ref))
        .chain(extra_labels.iter().map(AsRef::as_ref))
        .collect::<BTreeSet<&str>>()
        .into_iter()
        .map(str::to_string)
        .collect();
    let index = |s: &str| {
        labels
            .binary_search_by(|l| l.as_str().cmp(s))
            .expect("label collected")
    };
    let k = labels.len();
    let mut counts = vec![vec![0usize; k]; k];
    for (p, t) in predictions.iter().zip(truths) {
        counts[index(t.as_ref())][index(p.as_ref())] += 1;
    }
    let mut zero_support = Vec::new();
    let normalized = counts
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let total: usize = row.iter().sum();
            if total == 0 {
                zero_support.push(labels[i].clone());
                vec![0.0; k]
            } else {
                row.iter().map(|&c| c as f64 / total as f64).collect()
            }
        })
        .collect();
    Ok(ConfusionMatrix {
        labels,
        counts,
        normalized,
        zero_support,
    })
}

impl ConfusionMatrix {
    /// Per-class recall: the diagonal of the normalized matrix.
    pub fn recall(&self) -> Vec<f64> {
        (0..self.labels.len()).map(|i| self.normalized[i][i]).collect()
    }

    /// Row-normalized matrix rounded to two decimals, one row per true class.
    pub fn write_display_csv<W: Write>(&self, writer: W) -> csv::Result<()> {
        self.write_rows(writer, |i, j| format!("{:.2}", self.normalized[i][j]))
    }

    pub fn write_counts_csv<W: Write>(&self, writer: W) -> csv::Result<()> {
        self.write_rows(writer, |i, j| self.counts[i][j].to_string())
    }

    fn write_rows<W: Write>(&self, writer: W, cell: impl Fn(usize, usize) -> String) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["truth".to_string()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header)?;
        for (i, label) in self.labels.iter().enumerate() {
            let mut rec = vec![label.clone()];
            rec.extend((0..self.labels.len()).map(|j| cell(i, j)));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}
