//! Ordered first-match classifier over evolved rules.

mod cv;

pub use cv::{cross_validate, fold_seed, stratified_folds, EvaluationReport, FoldResult};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::config::PipelineConfig;
use crate::dataset::{
    self, validate_schema, AttributeSchema, Dataset, Discretization, RawDataset, RawValue,
};
use crate::error::{Error, Result};
use crate::evolution::{evolve, Evolution, RulePool};
use crate::rules::{generate_initial_rules, ClassAssociationRule, RuleRecord};
use crate::scalar::{self, Scalar};
use crate::scoring::{select_anchor, AnchorSelection};

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Rules in decision order plus the fallback class.
///
/// Order: confidence descending, support descending, antecedent length
/// ascending, rendered text ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierModel<T> {
    rules: Vec<ClassAssociationRule<T>>,
    default_class: usize,
    schema: Vec<AttributeSchema>,
    discretization: Discretization<T>,
    anchor: String,
    config: Option<PipelineConfig<T>>,
    warnings: Vec<String>,
}

impl<T: Scalar> ClassifierModel<T> {
    /// Orders the pool's rules and takes the training majority as default.
    pub fn build(
        pool: &RulePool<T>,
        train: &Dataset<T>,
        anchor: &str,
        config: Option<PipelineConfig<T>>,
    ) -> Result<Self> {
        Self::from_rules(pool.rules(), train, anchor, config)
    }

    pub fn from_rules(
        rules: Vec<ClassAssociationRule<T>>,
        train: &Dataset<T>,
        anchor: &str,
        config: Option<PipelineConfig<T>>,
    ) -> Result<Self> {
        if train.n() == 0 {
            return Err(Error::EmptyData);
        }
        for r in &rules {
            r.validate(train.schema(), train.class_index())?;
        }
        let schema = train.schema().to_vec();
        let class_index = train.class_index();
        let rules = order_rules(rules, &schema, class_index);
        let mut warnings = Vec::new();
        if rules.is_empty() {
            warnings.push(
                "rule pool is empty; the model always predicts the default class".to_string(),
            );
        }
        Ok(ClassifierModel {
            rules,
            default_class: train.majority_class(),
            schema,
            discretization: train.discretization().clone(),
            anchor: anchor.to_string(),
            config,
            warnings,
        })
    }

    pub fn rules(&self) -> &[ClassAssociationRule<T>] {
        &self.rules
    }

    pub fn default_class(&self) -> usize {
        self.default_class
    }

    pub fn anchor(&self) -> &str {
        &self.anchor
    }

    pub fn schema(&self) -> &[AttributeSchema] {
        &self.schema
    }

    pub fn discretization(&self) -> &Discretization<T> {
        &self.discretization
    }

    pub fn config(&self) -> Option<&PipelineConfig<T>> {
        self.config.as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn class_index(&self) -> usize {
        self.discretization.class_index
    }

    pub fn class_label(&self, class: usize) -> &str {
        &self.schema[self.class_index()].values[class]
    }

    pub fn render_rules(&self) -> Vec<String> {
        self.rules
            .iter()
            .map(|r| r.render(&self.schema, self.class_index()))
            .collect()
    }

    /// Consequent of the first matching rule, else the default class.
    pub fn predict_coded(&self, row: &[Option<usize>]) -> usize {
        self.rules
            .iter()
            .find(|r| r.matches(row))
            .map_or(self.default_class, |r| r.consequent())
    }

    /// Predicts a raw (undiscretized) row laid out like the training table.
    pub fn predict(&self, row: &[RawValue<T>]) -> Result<usize> {
        let coded = self.discretization.encode_row(row)?;
        Ok(self.predict_coded(&coded))
    }

    /// `(correctly classified, total)` over a dataset coded with this
    /// model's discretization.
    pub fn score(&self, test: &Dataset<T>) -> Result<(usize, usize)> {
        if test.discretization() != &self.discretization {
            return Err(Error::SchemaMismatch(
                "test data was not coded with the model's discretization".into(),
            ));
        }
        if test.n() == 0 {
            return Err(Error::EmptyTestSet);
        }
        let correct = test
            .rows()
            .iter()
            .filter(|row| row[test.class_index()] == Some(self.predict_coded(row)))
            .count();
        Ok((correct, test.n()))
    }

    /// Correctly classified over total.
    pub fn accuracy(&self, test: &Dataset<T>) -> Result<T> {
        let (correct, total) = self.score(test)?;
        Ok(T::from_count(correct) / T::from_count(total))
    }

    /// Codes a raw table through the stored discretization.
    pub fn encode(&self, raw: &RawDataset<T>) -> Result<Dataset<T>> {
        self.discretization.apply(raw)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            anchor: self.anchor.clone(),
            class_attribute: self.discretization.class_name().to_string(),
            default_class: self.class_label(self.default_class).to_string(),
            rules: self
                .rules
                .iter()
                .map(|r| r.to_record(&self.schema, self.class_index()))
                .collect(),
            discretization: self.discretization.clone(),
            config: self.config.clone(),
        };
        serde_json::to_string_pretty(&file).map_err(|e| Error::Model(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile<T> =
            serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        if file.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Model(format!(
                "unsupported format version {} (expected {MODEL_FORMAT_VERSION})",
                file.format_version
            )));
        }
        let schema = file.discretization.schema();
        let class_index = validate_schema(&schema)?;
        if class_index != file.discretization.class_index {
            return Err(Error::Model(
                "class index disagrees with the column list".into(),
            ));
        }
        let rules = file
            .rules
            .iter()
            .map(|r| ClassAssociationRule::from_record(r, &schema, class_index))
            .collect::<Result<Vec<_>>>()?;
        let default_class = schema[class_index]
            .value_index(&file.default_class)
            .ok_or_else(|| {
                Error::Model(format!("unknown default class '{}'", file.default_class))
            })?;
        Ok(ClassifierModel {
            rules,
            default_class,
            schema,
            discretization: file.discretization,
            anchor: file.anchor,
            config: file.config,
            warnings: Vec::new(),
        })
    }
}

fn order_rules<T: Scalar>(
    rules: Vec<ClassAssociationRule<T>>,
    schema: &[AttributeSchema],
    class_index: usize,
) -> Vec<ClassAssociationRule<T>> {
    let mut keyed: Vec<(String, ClassAssociationRule<T>)> = rules
        .into_iter()
        .map(|r| (r.render(schema, class_index), r))
        .collect();
    keyed.sort_by(|(ta, a), (tb, b)| rule_order(a, ta, b, tb));
    keyed.dedup_by(|(ta, _), (tb, _)| ta == tb);
    keyed.into_iter().map(|(_, r)| r).collect()
}

fn rule_order<T: Scalar>(
    a: &ClassAssociationRule<T>,
    text_a: &str,
    b: &ClassAssociationRule<T>,
    text_b: &str,
) -> Ordering {
    scalar::cmp(b.confidence, a.confidence)
        .then_with(|| scalar::cmp(b.support, a.support))
        .then_with(|| a.len().cmp(&b.len()))
        .then_with(|| text_a.cmp(text_b))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct ModelFile<T> {
    format_version: u32,
    anchor: String,
    class_attribute: String,
    default_class: String,
    rules: Vec<RuleRecord<T>>,
    discretization: Discretization<T>,
    #[serde(default)]
    config: Option<PipelineConfig<T>>,
}

/// Everything one training run produced.
#[derive(Debug, Clone)]
pub struct Training<T> {
    pub model: ClassifierModel<T>,
    pub train: Dataset<T>,
    pub anchor: AnchorSelection<T>,
    pub initial_rules: usize,
    /// `None` when no frequent anchored rule existed and the model fell
    /// back to the default class.
    pub evolution: Option<Evolution<T>>,
    pub warnings: Vec<String>,
}

/// Discretize, select the anchor, generate anchored rules, evolve them and
/// build the classifier. Fails with [`Error::NoFrequentRules`] when nothing
/// reaches minsup.
pub fn fit<T: Scalar>(raw: &RawDataset<T>, cfg: &PipelineConfig<T>) -> Result<Training<T>> {
    fit_inner(raw, cfg, false)
}

/// Like [`fit`], but an empty initial rule set yields a default-only model
/// with a warning instead of an error.
pub fn fit_or_default<T: Scalar>(
    raw: &RawDataset<T>,
    cfg: &PipelineConfig<T>,
) -> Result<Training<T>> {
    fit_inner(raw, cfg, true)
}

fn fit_inner<T: Scalar>(
    raw: &RawDataset<T>,
    cfg: &PipelineConfig<T>,
    allow_empty: bool,
) -> Result<Training<T>> {
    cfg.validate()?;
    validate_schema(raw.schema())?;
    let train = dataset::discretize(raw, cfg.bins)?;
    let anchor = select_anchor(&train)?;
    let mut warnings = Vec::new();
    if !anchor.tied_with.is_empty() {
        warnings.push(format!(
            "anchor '{}' tied on Gini with {}; first declared wins",
            anchor.attribute,
            anchor.tied_with.join(", ")
        ));
    }
    let initial = generate_initial_rules(&train, &anchor.attribute, cfg.max_len, cfg.minsup())?;
    let evolution = if initial.is_empty() {
        if !allow_empty {
            return Err(Error::NoFrequentRules);
        }
        warnings.push("no frequent anchored rules; default-only classifier".to_string());
        None
    } else {
        Some(evolve(
            &initial,
            &train,
            &anchor.attribute,
            &cfg.ga,
            &cfg.ztest,
        )?)
    };
    let empty = RulePool::new(cfg.ga.pool_size);
    let pool = evolution.as_ref().map_or(&empty, |e| &e.pool);
    let model = ClassifierModel::build(pool, &train, &anchor.attribute, Some(cfg.clone()))?;
    warnings.extend(model.warnings().iter().cloned());
    Ok(Training {
        model,
        train,
        anchor,
        initial_rules: initial.len(),
        evolution,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::discretize;
    use crate::rules::Item;

    const LIVER: &str = include_str!("../../fixtures/liver.csv");

    fn liver_raw() -> RawDataset<f64> {
        RawDataset::from_reader(LIVER.as_bytes(), "selector").unwrap()
    }

    fn rule(
        ante: &[(usize, usize)],
        class: usize,
        conf: f64,
        sup: f64,
    ) -> ClassAssociationRule<f64> {
        let mut r =
            ClassAssociationRule::new(ante.iter().map(|&(a, v)| Item::new(a, v)).collect(), class)
                .unwrap();
        r.confidence = conf;
        r.support = sup;
        r
    }

    #[test]
    fn confidence_orders_first() {
        let ds = discretize(&liver_raw(), 3).unwrap();
        let m = ClassifierModel::from_rules(
            vec![rule(&[(2, 0)], 1, 0.8, 0.3), rule(&[(2, 1)], 0, 1.0, 0.1)],
            &ds,
            "sgpt",
            None,
        )
        .unwrap();
        assert_eq!(m.rules()[0].confidence, 1.0);
    }

    #[test]
    fn support_breaks_confidence_ties() {
        let ds = discretize(&liver_raw(), 3).unwrap();
        let m = ClassifierModel::from_rules(
            vec![rule(&[(2, 0)], 1, 0.9, 0.2), rule(&[(2, 1)], 0, 0.9, 0.4)],
            &ds,
            "sgpt",
            None,
        )
        .unwrap();
        assert_eq!(m.rules()[0].support, 0.4);
    }

    #[test]
    fn empty_pool_gives_majority_default() {
        let text = "a,c\nx,C1\nx,C1\nx,C1\nx,C1\nx,C1\nx,C1\nx,C1\ny,C2\ny,C2\ny,C2\n";
        let ds = discretize(
            &RawDataset::<f64>::from_reader(text.as_bytes(), "c").unwrap(),
            3,
        )
        .unwrap();
        let m = ClassifierModel::build(&RulePool::new(10), &ds, "a", None).unwrap();
        assert!(m.rules().is_empty());
        assert_eq!(m.class_label(m.default_class()), "C1");
        assert_eq!(m.warnings().len(), 1);
        assert_eq!(m.predict_coded(&ds.rows()[9]), 0);
    }

    #[test]
    fn first_match_wins() {
        let ds = discretize(&liver_raw(), 3).unwrap();
        let sgpt = ds.attribute_index("sgpt").unwrap();
        let drinks = ds.attribute_index("drinks").unwrap();
        // row 7 (sgpt 20, drinks 0.5) matches both; higher confidence ranks first
        let m = ClassifierModel::from_rules(
            vec![
                rule(&[(sgpt, 0)], 1, 0.5, 0.2),
                rule(&[(drinks, 2)], 0, 1.0, 0.4),
            ],
            &ds,
            "sgpt",
            None,
        )
        .unwrap();
        assert_eq!(m.predict_coded(&ds.rows()[6]), 0);
        // row 5 (sgpt 12, drinks 0) matches only the sgpt rule
        assert_eq!(m.predict_coded(&ds.rows()[4]), 1);
    }

    #[test]
    fn raw_row_prediction_uses_stored_cuts() {
        let raw = liver_raw();
        let ds = discretize(&raw, 3).unwrap();
        let sgpt = ds.attribute_index("sgpt").unwrap();
        let m =
            ClassifierModel::from_rules(vec![rule(&[(sgpt, 2)], 0, 1.0, 0.1)], &ds, "sgpt", None)
                .unwrap();
        assert_eq!(m.class_label(m.predict(&raw.rows()[0]).unwrap()), "1");
        let mut far = raw.rows()[0].clone();
        far[sgpt] = RawValue::Number(1e9);
        assert_eq!(m.predict(&far).unwrap(), 0);
        assert!(m.predict(&raw.rows()[0][..3]).is_err());
    }

    #[test]
    fn accuracy_counts_and_errors() {
        let raw = liver_raw();
        let ds = discretize(&raw, 3).unwrap();
        let m = ClassifierModel::build(&RulePool::new(1), &ds, "sgpt", None).unwrap();
        assert_eq!(m.accuracy(&ds).unwrap(), 0.5);
        let other = discretize(&raw, 2).unwrap();
        assert!(matches!(m.accuracy(&other), Err(Error::SchemaMismatch(_))));
    }

    #[test]
    fn default_only_is_perfect_on_pure_majority() {
        let text = "a,c\nx,p\nx,p\ny,q\n";
        let ds = discretize(
            &RawDataset::<f64>::from_reader(text.as_bytes(), "c").unwrap(),
            3,
        )
        .unwrap();
        let m = ClassifierModel::build(&RulePool::new(1), &ds, "a", None).unwrap();
        let test = m
            .encode(&RawDataset::from_reader("a,c\ny,p\nx,p\n".as_bytes(), "c").unwrap())
            .unwrap();
        assert_eq!(m.accuracy(&test).unwrap(), 1.0);
    }

    #[test]
    fn model_json_round_trip() {
        let raw = liver_raw();
        let t = fit(
            &raw,
            &PipelineConfig {
                ga: crate::config::GaConfig {
                    generations: 3,
                    ..Default::default()
                },
                ..Default::default()
            },
        )
        .unwrap();
        let json = t.model.to_json().unwrap();
        let back = ClassifierModel::<f64>::from_json(&json).unwrap();
        assert_eq!(back.rules(), t.model.rules());
        assert_eq!(back.default_class(), t.model.default_class());
        for row in raw.rows() {
            assert_eq!(back.predict(row).unwrap(), t.model.predict(row).unwrap());
        }
        assert!(ClassifierModel::<f64>::from_json("{}").is_err());
        let bumped = json.replace("\"format_version\": 1", "\"format_version\": 99");
        assert!(matches!(
            ClassifierModel::<f64>::from_json(&bumped),
            Err(Error::Model(_))
        ));
    }

    #[test]
    fn fit_reports_no_frequent_rules() {
        let raw = liver_raw();
        let cfg = PipelineConfig {
            ztest: crate::stats::ZTestConfig {
                minsup: 0.99,
                ..Default::default()
            },
            ..Default::default()
        };
        assert!(matches!(fit(&raw, &cfg), Err(Error::NoFrequentRules)));
        let t = fit_or_default(&raw, &cfg).unwrap();
        assert!(t.model.rules().is_empty());
        assert!(t.evolution.is_none());
    }
}
