//! Stratified k-fold cross validation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit_or_default;
use crate::config::PipelineConfig;
use crate::dataset::{validate_schema, AttributeSchema, RawDataset};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scoring::AttributeScore;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct FoldResult<T> {
    pub fold: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub correct: usize,
    pub accuracy: T,
    pub rule_count: usize,
    pub anchor: String,
    pub anchor_ties: Vec<String>,
    /// Training-fold attribute scores, ascending by Gini.
    pub attribute_scores: Vec<AttributeScore<T>>,
    pub rules: Vec<String>,
    pub default_class: String,
    pub test_indices: Vec<usize>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct EvaluationReport<T> {
    pub k: usize,
    pub seed: u64,
    pub n: usize,
    pub class_attribute: String,
    pub schema: Vec<AttributeSchema>,
    /// Share of the most frequent class over the whole dataset.
    pub majority_baseline: T,
    pub per_fold: Vec<FoldResult<T>>,
    /// Pooled over folds: total correct over total tested.
    pub overall_accuracy: T,
    pub config: PipelineConfig<T>,
}

/// Seed of the GA stream for one fold, derived from the run seed.
pub fn fold_seed(seed: u64, fold: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ (fold as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Assigns every row to one of `k` test folds. Rows of each class (in
/// class order) are shuffled with `seed`, then dealt round-robin with a
/// single running counter, so fold sizes differ by at most one and each
/// class is spread within one instance of its ideal share.
pub fn stratified_folds(
    labels: &[usize],
    class_names: &[String],
    k: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::Config(format!("k must be at least 2, got {k}")));
    }
    let mut by_class = vec![Vec::new(); class_names.len()];
    for (row, &c) in labels.iter().enumerate() {
        by_class[c].push(row);
    }
    for (c, rows) in by_class.iter().enumerate() {
        if rows.len() < k {
            return Err(Error::Stratification {
                class: class_names[c].clone(),
                count: rows.len(),
                k,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for rows in &mut by_class {
        rows.shuffle(&mut rng);
        for &r in rows.iter() {
            folds[next % k].push(r);
            next += 1;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

/// Runs the full pipeline on each training fold and scores the held-out
/// fold with training-fold cut points. Folds run in parallel; each uses its
/// own GA seed from [`fold_seed`], so results do not depend on scheduling.
pub fn cross_validate<T: Scalar>(
    raw: &RawDataset<T>,
    k: usize,
    cfg: &PipelineConfig<T>,
) -> Result<EvaluationReport<T>> {
    cfg.validate()?;
    validate_schema(raw.schema())?;
    let class_attr = raw.class_attribute();
    let labels: Vec<usize> = raw
        .class_labels()
        .map(|l| class_attr.value_index(l).expect("class value is declared"))
        .collect();
    let seed = cfg.ga.rng_seed;
    let folds = stratified_folds(&labels, &class_attr.values, k, seed)?;

    let per_fold = folds
        .par_iter()
        .enumerate()
        .map(|(fold, test_idx)| {
            let train_idx: Vec<usize> = (0..raw.n())
                .filter(|i| test_idx.binary_search(i).is_err())
                .collect();
            let mut fold_cfg = cfg.clone();
            fold_cfg.ga.rng_seed = fold_seed(seed, fold);
            let training = fit_or_default(&raw.subset(&train_idx), &fold_cfg)?;
            let model = &training.model;
            let test = model.encode(&raw.subset(test_idx))?;
            let (correct, test_size) = model.score(&test)?;
            let mut warnings = training.warnings.clone();
            if !test.unseen().is_empty() {
                warnings.push(format!(
                    "{} test values unseen in training",
                    test.unseen().len()
                ));
            }
            Ok(FoldResult {
                fold,
                train_size: train_idx.len(),
                test_size,
                correct,
                accuracy: T::from_count(correct) / T::from_count(test_size),
                rule_count: model.rules().len(),
                anchor: training.anchor.attribute.clone(),
                anchor_ties: training.anchor.tied_with.clone(),
                attribute_scores: training.anchor.scores.clone(),
                rules: model.render_rules(),
                default_class: model.class_label(model.default_class()).to_string(),
                test_indices: test_idx.clone(),
                warnings,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let correct: usize = per_fold.iter().map(|f| f.correct).sum();
    let tested: usize = per_fold.iter().map(|f| f.test_size).sum();
    let mut class_counts = vec![0usize; class_attr.values.len()];
    for &c in &labels {
        class_counts[c] += 1;
    }
    let majority = class_counts.iter().copied().max().unwrap_or(0);
    Ok(EvaluationReport {
        k,
        seed,
        n: raw.n(),
        class_attribute: class_attr.name.clone(),
        schema: raw.schema().to_vec(),
        majority_baseline: T::from_count(majority) / T::from_count(raw.n()),
        per_fold,
        overall_accuracy: T::from_count(correct) / T::from_count(tested),
        config: cfg.clone(),
    })
}
