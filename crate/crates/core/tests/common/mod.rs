#![allow(dead_code)]

use std::path::PathBuf;

use acga::dataset::{Coding, RawValue};
use acga::{ClassifierModel, RawDataset};

pub const FIXTURES: &[(&str, &str)] = &[
    ("liver.csv", "selector"),
    ("weather.csv", "play"),
    ("lens.csv", "contact_lenses"),
    ("balloons.csv", "inflated"),
];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str, class: &str) -> RawDataset {
    RawDataset::load_csv(fixture_path(name), class).expect("fixture loads")
}

/// Reference predictor: walks the model's rules in order and tests every
/// item against the raw row directly, through interval bounds for numeric
/// columns and label equality for categorical ones.
pub fn linear_scan_predict(
    model: &ClassifierModel,
    raw: &RawDataset,
    row: &[RawValue<f64>],
) -> String {
    let class_index = model.class_index();
    for rule in model.rules() {
        let record = rule.to_record(model.schema(), class_index);
        let all = record.antecedent.iter().all(|item| {
            let col = raw
                .schema()
                .iter()
                .position(|a| a.name == item.attribute)
                .unwrap();
            let coding = model.discretization().column(&item.attribute).unwrap();
            match (&coding.coding, &row[col]) {
                (Coding::Categories { .. }, RawValue::Label(s)) => *s == item.value,
                (Coding::Intervals { intervals, .. }, RawValue::Number(x)) => {
                    let iv = intervals.iter().find(|iv| iv.label == item.value).unwrap();
                    iv.lower.is_none_or(|l| *x > l) && iv.upper.is_none_or(|u| *x <= u)
                }
                _ => false,
            }
        });
        if all {
            return record.consequent;
        }
    }
    model.class_label(model.default_class()).to_string()
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}
