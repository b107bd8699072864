//! Class association rules: representation, matching, support/confidence,
//! and anchored level-wise generation of the initial rule set.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeSchema, Dataset};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::stats::z_statistic;

/// One `attribute = value` condition, by schema and value index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Item {
    pub attribute: usize,
    pub value: usize,
}

impl Item {
    pub fn new(attribute: usize, value: usize) -> Self {
        Item { attribute, value }
    }
}

/// Identity of a rule, independent of its measured statistics. Ordering on
/// keys is the canonical rule order used for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RuleKey {
    pub antecedent: Vec<Item>,
    pub consequent: usize,
}

/// `antecedent => consequent`. The antecedent is kept sorted by attribute
/// and never holds two items on the same attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ClassAssociationRule<T> {
    antecedent: Vec<Item>,
    consequent: usize,
    pub support: T,
    pub confidence: T,
    /// Z statistic of `support` against minsup.
    pub fitness: T,
}

impl<T: Scalar> ClassAssociationRule<T> {
    pub fn new(mut antecedent: Vec<Item>, consequent: usize) -> Result<Self> {
        if antecedent.is_empty() {
            return Err(Error::InvalidRule("empty antecedent".into()));
        }
        antecedent.sort();
        if antecedent
            .windows(2)
            .any(|w| w[0].attribute == w[1].attribute)
        {
            return Err(Error::InvalidRule("two items share an attribute".into()));
        }
        Ok(ClassAssociationRule {
            antecedent,
            consequent,
            support: T::zero(),
            confidence: T::zero(),
            fitness: T::zero(),
        })
    }

    pub fn antecedent(&self) -> &[Item] {
        &self.antecedent
    }

    pub fn consequent(&self) -> usize {
        self.consequent
    }

    pub fn len(&self) -> usize {
        self.antecedent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn key(&self) -> RuleKey {
        RuleKey {
            antecedent: self.antecedent.clone(),
            consequent: self.consequent,
        }
    }

    pub fn item_for(&self, attribute: usize) -> Option<Item> {
        self.antecedent
            .iter()
            .copied()
            .find(|i| i.attribute == attribute)
    }

    pub fn contains_attribute(&self, attribute: usize) -> bool {
        self.item_for(attribute).is_some()
    }

    /// Checks items and consequent against a discretized schema.
    pub fn validate(&self, schema: &[AttributeSchema], class_index: usize) -> Result<()> {
        for item in &self.antecedent {
            let attr = schema.get(item.attribute).ok_or_else(|| {
                Error::InvalidRule(format!("attribute index {} out of range", item.attribute))
            })?;
            if item.attribute == class_index {
                return Err(Error::InvalidRule(format!(
                    "antecedent uses class attribute '{}'",
                    attr.name
                )));
            }
            if item.value >= attr.values.len() {
                return Err(Error::InvalidRule(format!(
                    "value index {} out of range for '{}'",
                    item.value, attr.name
                )));
            }
        }
        if self.consequent >= schema[class_index].values.len() {
            return Err(Error::InvalidRule(format!(
                "unknown class index {}",
                self.consequent
            )));
        }
        Ok(())
    }

    /// True iff every antecedent item equals the row's value.
    pub fn matches(&self, row: &[Option<usize>]) -> bool {
        self.antecedent
            .iter()
            .all(|item| row[item.attribute] == Some(item.value))
    }

    /// `(rows matching the antecedent, of those rows carrying the consequent)`.
    pub fn counts(&self, ds: &Dataset<T>) -> (usize, usize) {
        let class = ds.class_index();
        ds.rows()
            .iter()
            .filter(|r| self.matches(r))
            .fold((0, 0), |(m, c), r| {
                (m + 1, c + usize::from(r[class] == Some(self.consequent)))
            })
    }

    /// `(support, confidence)`; confidence is 0 when nothing matches.
    pub fn measure(&self, ds: &Dataset<T>) -> (T, T) {
        let (matched, correct) = self.counts(ds);
        ratios(matched, correct, ds.n())
    }

    /// Recomputes support, confidence and Z fitness on `ds`.
    pub fn score(&mut self, ds: &Dataset<T>, minsup: T) -> Result<()> {
        let (support, confidence) = self.measure(ds);
        self.support = support;
        self.confidence = confidence;
        self.fitness = z_statistic(support, minsup, ds.n())?;
        Ok(())
    }

    /// `attr='value' attr='value' ==> class=label`
    pub fn render(&self, schema: &[AttributeSchema], class_index: usize) -> String {
        let mut out = String::new();
        for item in &self.antecedent {
            let attr = &schema[item.attribute];
            let _ = write!(out, "{}='{}' ", attr.name, attr.values[item.value]);
        }
        let class = &schema[class_index];
        let _ = write!(out, "==> {}={}", class.name, class.values[self.consequent]);
        out
    }

    pub fn to_record(&self, schema: &[AttributeSchema], class_index: usize) -> RuleRecord<T> {
        RuleRecord {
            text: self.render(schema, class_index),
            antecedent: self
                .antecedent
                .iter()
                .map(|i| NamedItem {
                    attribute: schema[i.attribute].name.clone(),
                    value: schema[i.attribute].values[i.value].clone(),
                })
                .collect(),
            consequent: schema[class_index].values[self.consequent].clone(),
            support: self.support,
            confidence: self.confidence,
            z: self.fitness,
        }
    }

    pub fn from_record(
        record: &RuleRecord<T>,
        schema: &[AttributeSchema],
        class_index: usize,
    ) -> Result<Self> {
        let lookup = |attribute: &str, value: &str| -> Result<Item> {
            let a = schema
                .iter()
                .position(|s| s.name == attribute)
                .ok_or_else(|| Error::UnknownAttribute(attribute.to_string()))?;
            let v = schema[a].value_index(value).ok_or_else(|| {
                Error::InvalidRule(format!("unknown value '{value}' for '{attribute}'"))
            })?;
            Ok(Item::new(a, v))
        };
        let antecedent = record
            .antecedent
            .iter()
            .map(|n| lookup(&n.attribute, &n.value))
            .collect::<Result<Vec<_>>>()?;
        let consequent = schema[class_index]
            .value_index(&record.consequent)
            .ok_or_else(|| Error::InvalidRule(format!("unknown class '{}'", record.consequent)))?;
        let mut rule = Self::new(antecedent, consequent)?;
        rule.validate(schema, class_index)?;
        rule.support = record.support;
        rule.confidence = record.confidence;
        rule.fitness = record.z;
        Ok(rule)
    }
}

fn ratios<T: Scalar>(matched: usize, correct: usize, n: usize) -> (T, T) {
    let support = T::from_count(correct) / T::from_count(n);
    let confidence = if matched == 0 {
        T::zero()
    } else {
        T::from_count(correct) / T::from_count(matched)
    };
    (support, confidence)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedItem {
    pub attribute: String,
    pub value: String,
}

/// Serialized form of a rule, addressed by names rather than indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RuleRecord<T> {
    pub text: String,
    pub antecedent: Vec<NamedItem>,
    pub consequent: String,
    pub support: T,
    pub confidence: T,
    pub z: T,
}

/// Enumerates every rule that holds exactly one item of `anchor`, has at
/// most `max_len` items, and reaches `minsup`. Antecedents are grown level
/// by level; one whose match count falls below `minsup * n` is not
/// extended, since adding items can only shrink the match set.
///
/// Output is sorted by rule key. Fitness is the Z statistic against
/// `minsup`, or zero when `minsup = 1` leaves it undefined.
pub fn generate_initial_rules<T: Scalar>(
    ds: &Dataset<T>,
    anchor: &str,
    max_len: usize,
    minsup: T,
) -> Result<Vec<ClassAssociationRule<T>>> {
    let anchor_idx = ds
        .attribute_index(anchor)
        .ok_or_else(|| Error::UnknownAttribute(anchor.to_string()))?;
    if anchor_idx == ds.class_index() {
        return Err(Error::ClassAttribute(anchor.to_string()));
    }
    if max_len == 0 {
        return Err(Error::Config("max_len must be at least 1".into()));
    }
    if !(minsup > T::zero() && minsup <= T::one()) {
        return Err(Error::Config(format!(
            "minsup must lie in (0, 1], got {minsup}"
        )));
    }

    let n = ds.n();
    let nf = T::from_count(n);
    let frequent = |count: usize| T::from_count(count) / nf >= minsup;
    let extensions: Vec<usize> = ds.feature_indices().filter(|&a| a != anchor_idx).collect();

    // (antecedent, matching row ids, position in `extensions` to extend from)
    let mut level: Vec<(Vec<Item>, Vec<usize>, usize)> = (0..ds.schema()[anchor_idx].values.len())
        .filter_map(|v| {
            let rows: Vec<usize> = (0..n)
                .filter(|&r| ds.rows()[r][anchor_idx] == Some(v))
                .collect();
            frequent(rows.len()).then(|| (vec![Item::new(anchor_idx, v)], rows, 0))
        })
        .collect();

    let mut rules = Vec::new();
    let class = ds.class_index();
    let classes = ds.class_count();
    for len in 1..=max_len {
        for (antecedent, rows, _) in &level {
            let mut per_class = vec![0usize; classes];
            for &r in rows {
                if let Some(c) = ds.rows()[r][class] {
                    per_class[c] += 1;
                }
            }
            for (c, &correct) in per_class.iter().enumerate() {
                let (support, confidence) = ratios::<T>(rows.len(), correct, n);
                if support >= minsup {
                    let mut rule = ClassAssociationRule::new(antecedent.clone(), c)?;
                    rule.support = support;
                    rule.confidence = confidence;
                    rule.fitness = if minsup < T::one() {
                        z_statistic(support, minsup, n)?
                    } else {
                        T::zero()
                    };
                    rules.push(rule);
                }
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (antecedent, rows, from) in &level {
            for (pos, &attr) in extensions.iter().enumerate().skip(*from) {
                for v in 0..ds.schema()[attr].values.len() {
                    let sub: Vec<usize> = rows
                        .iter()
                        .copied()
                        .filter(|&r| ds.rows()[r][attr] == Some(v))
                        .collect();
                    if frequent(sub.len()) {
                        let mut ante = antecedent.clone();
                        ante.push(Item::new(attr, v));
                        ante.sort();
                        next.push((ante, sub, pos + 1));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    rules.sort_by_key(|r| r.key());
    Ok(rules)
}
