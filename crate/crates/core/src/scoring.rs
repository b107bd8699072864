//! Gini index scoring of attributes and anchor selection.

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Gini impurity `1 - sum(p_i^2)` of one partition given its class counts.
pub fn partition_gini<T: Scalar>(class_counts: &[usize]) -> Result<T> {
    let total: usize = class_counts.iter().sum();
    if total == 0 {
        return Err(Error::EmptyPartition);
    }
    let total = T::from_count(total);
    let sum_sq = class_counts.iter().fold(T::zero(), |acc, &c| {
        let p = T::from_count(c) / total;
        acc + p * p
    });
    Ok(T::one() - sum_sq)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ValueScore<T> {
    pub value: String,
    pub size: usize,
    pub gini: T,
}

/// Size-weighted Gini index of an attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct AttributeScore<T> {
    pub attribute: String,
    pub gini: T,
    pub per_value: Vec<ValueScore<T>>,
}

/// Partitions rows by the attribute's value and returns
/// `sum_v (n_v / n) * gini(v)`. Empty partitions are omitted.
pub fn attribute_gini<T: Scalar>(ds: &Dataset<T>, attribute: &str) -> Result<AttributeScore<T>> {
    let col = ds
        .attribute_index(attribute)
        .ok_or_else(|| Error::UnknownAttribute(attribute.to_string()))?;
    if col == ds.class_index() {
        return Err(Error::ClassAttribute(attribute.to_string()));
    }
    let attr = &ds.schema()[col];
    let classes = ds.class_count();
    // last slot collects rows whose value was never seen in training
    let mut counts = vec![vec![0usize; classes]; attr.values.len() + 1];
    let mut unlabeled = 0usize;
    for row in ds.rows() {
        let slot = row[col].unwrap_or(attr.values.len());
        match row[ds.class_index()] {
            Some(c) => counts[slot][c] += 1,
            None => unlabeled += 1,
        }
    }
    let n = T::from_count(ds.n() - unlabeled);
    let mut gini = T::zero();
    let mut per_value = Vec::new();
    for (slot, cc) in counts.iter().enumerate() {
        let size: usize = cc.iter().sum();
        if size == 0 {
            continue;
        }
        let g = partition_gini::<T>(cc)?;
        gini = gini + T::from_count(size) / n * g;
        per_value.push(ValueScore {
            value: attr
                .values
                .get(slot)
                .cloned()
                .unwrap_or_else(|| "<unseen>".into()),
            size,
            gini: g,
        });
    }
    Ok(AttributeScore {
        attribute: attribute.to_string(),
        gini,
        per_value,
    })
}

/// Outcome of anchor selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct AnchorSelection<T> {
    pub attribute: String,
    pub index: usize,
    /// Every non-class attribute, sorted ascending by Gini (stable).
    pub scores: Vec<AttributeScore<T>>,
    /// Later-declared attributes that tied with the winner.
    pub tied_with: Vec<String>,
}

/// Picks the non-class attribute with minimum weighted Gini. Ties go to the
/// attribute declared first and are reported in `tied_with`.
pub fn select_anchor<T: Scalar>(ds: &Dataset<T>) -> Result<AnchorSelection<T>> {
    let scores: Vec<AttributeScore<T>> = ds
        .feature_indices()
        .map(|i| attribute_gini(ds, &ds.schema()[i].name))
        .collect::<Result<_>>()?;
    let best = scores
        .iter()
        .enumerate()
        .fold(None::<usize>, |best, (i, s)| match best {
            Some(b) if scores[b].gini <= s.gini => Some(b),
            _ => Some(i),
        })
        .ok_or(Error::NoAttributes)?;
    let winner = &scores[best];
    let tied_with = scores
        .iter()
        .skip(best + 1)
        .filter(|s| s.gini == winner.gini)
        .map(|s| s.attribute.clone())
        .collect();
    let attribute = winner.attribute.clone();
    let index = ds
        .attribute_index(&attribute)
        .expect("scored attribute exists");
    let mut sorted = scores;
    sorted.sort_by(|a, b| scalar::cmp(a.gini, b.gini));
    Ok(AnchorSelection {
        attribute,
        index,
        scores: sorted,
        tied_with,
    })
}
