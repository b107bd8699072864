//! Tabular data: CSV loading, schema validation and equal-width
//! discretization of numeric columns into interval items.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Categorical,
    Numeric,
}

/// One column of a table.
///
/// For categorical columns `values` lists the category labels in order of
/// first appearance. Numeric columns carry no values until they are
/// discretized, after which the discretized schema lists interval labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeSchema {
    pub name: String,
    pub kind: AttributeKind,
    #[serde(default)]
    pub values: Vec<String>,
    #[serde(default)]
    pub is_class: bool,
}

impl AttributeSchema {
    pub fn value_index(&self, label: &str) -> Option<usize> {
        self.values.iter().position(|v| v == label)
    }
}

/// Checks the invariants of a complete schema and returns the class column
/// index: unique names, exactly one class attribute, which is categorical
/// with at least two values.
pub fn validate_schema(schema: &[AttributeSchema]) -> Result<usize> {
    let mut seen = HashSet::new();
    for attr in schema {
        if !seen.insert(attr.name.as_str()) {
            return Err(Error::Schema(format!(
                "duplicate attribute name '{}'",
                attr.name
            )));
        }
    }
    let classes: Vec<usize> = schema
        .iter()
        .enumerate()
        .filter(|(_, a)| a.is_class)
        .map(|(i, _)| i)
        .collect();
    let class_index = match classes.as_slice() {
        [i] => *i,
        [] => return Err(Error::Schema("no class attribute".into())),
        _ => return Err(Error::Schema("more than one class attribute".into())),
    };
    let class = &schema[class_index];
    if class.kind != AttributeKind::Categorical {
        return Err(Error::Schema(format!(
            "class attribute '{}' must be categorical",
            class.name
        )));
    }
    if class.values.len() < 2 {
        return Err(Error::Schema(format!(
            "class attribute '{}' needs at least two values, found {}",
            class.name,
            class.values.len()
        )));
    }
    Ok(class_index)
}

/// A cell of an undiscretized table.
#[derive(Debug, Clone, PartialEq)]
pub enum RawValue<T> {
    Number(T),
    Label(String),
}

impl<T: Scalar> fmt::Display for RawValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawValue::Number(x) => write!(f, "{x}"),
            RawValue::Label(s) => f.write_str(s),
        }
    }
}

/// A table as read from disk, before discretization.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataset<T> {
    schema: Vec<AttributeSchema>,
    rows: Vec<Vec<RawValue<T>>>,
    class_index: usize,
}

impl<T: Scalar> RawDataset<T> {
    /// Reads a CSV file with a header row. A column is numeric iff every
    /// cell parses as a finite real; the class column is always categorical.
    pub fn load_csv(path: impl AsRef<Path>, class_column: &str) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_reader(file, class_column)
    }

    pub fn from_reader(reader: impl Read, class_column: &str) -> Result<Self> {
        let (header, records) = read_records(reader)?;
        let class_index = header
            .iter()
            .position(|h| h == class_column)
            .ok_or_else(|| Error::UnknownAttribute(class_column.to_string()))?;

        let mut schema = Vec::with_capacity(header.len());
        for (col, name) in header.iter().enumerate() {
            let is_class = col == class_index;
            let numeric = !is_class && records.iter().all(|(_, r)| parse_finite(&r[col]).is_some());
            let kind = if numeric {
                AttributeKind::Numeric
            } else {
                AttributeKind::Categorical
            };
            let values = if numeric {
                Vec::new()
            } else {
                distinct_in_order(records.iter().map(|(_, r)| r[col].as_str()))
            };
            schema.push(AttributeSchema {
                name: name.clone(),
                kind,
                values,
                is_class,
            });
        }

        let rows = records
            .iter()
            .map(|(_, r)| {
                r.iter()
                    .zip(&schema)
                    .map(|(cell, attr)| match attr.kind {
                        AttributeKind::Numeric => {
                            RawValue::Number(T::lit(parse_finite(cell).expect("checked numeric")))
                        }
                        AttributeKind::Categorical => RawValue::Label(cell.clone()),
                    })
                    .collect()
            })
            .collect();

        Ok(RawDataset {
            schema,
            rows,
            class_index,
        })
    }

    pub fn schema(&self) -> &[AttributeSchema] {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<RawValue<T>>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn class_index(&self) -> usize {
        self.class_index
    }

    pub fn class_attribute(&self) -> &AttributeSchema {
        &self.schema[self.class_index]
    }

    /// Class label of every row.
    pub fn class_labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.rows.iter().map(move |r| match &r[self.class_index] {
            RawValue::Label(s) => s.as_str(),
            RawValue::Number(_) => unreachable!("class column is categorical"),
        })
    }

    /// Rows at `indices`, in that order. Non-class categorical value lists
    /// are narrowed to the values present in the subset; the class value
    /// list is kept whole.
    pub fn subset(&self, indices: &[usize]) -> RawDataset<T> {
        let rows: Vec<Vec<RawValue<T>>> = indices.iter().map(|&i| self.rows[i].clone()).collect();
        let schema = self
            .schema
            .iter()
            .enumerate()
            .map(|(col, attr)| {
                let mut attr = attr.clone();
                if attr.kind == AttributeKind::Categorical && !attr.is_class {
                    let present: HashSet<&str> = rows
                        .iter()
                        .filter_map(|r| match &r[col] {
                            RawValue::Label(s) => Some(s.as_str()),
                            RawValue::Number(_) => None,
                        })
                        .collect();
                    attr.values.retain(|v| present.contains(v.as_str()));
                }
                attr
            })
            .collect();
        RawDataset {
            schema,
            rows,
            class_index: self.class_index,
        }
    }
}

type Records = Vec<(u64, Vec<String>)>;

fn read_records(reader: impl Read) -> Result<(Vec<String>, Records)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::Csv(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(Error::Csv("missing header row".into()));
    }
    let mut names = HashSet::new();
    for h in &header {
        if h.is_empty() {
            return Err(Error::Schema("empty column name in header".into()));
        }
        if !names.insert(h.as_str()) {
            return Err(Error::Schema(format!("duplicate attribute name '{h}'")));
        }
    }

    let mut records = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec.get(0) == Some("") {
            // blank line
            continue;
        }
        if rec.len() != header.len() {
            return Err(Error::Arity {
                line,
                expected: header.len(),
                found: rec.len(),
            });
        }
        for (cell, name) in rec.iter().zip(&header) {
            if cell.is_empty() {
                return Err(Error::MissingValue {
                    line,
                    column: name.clone(),
                });
            }
        }
        records.push((line, rec.iter().map(str::to_string).collect()));
    }
    if records.is_empty() {
        return Err(Error::EmptyData);
    }
    Ok((header, records))
}

fn parse_finite(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn distinct_in_order<'a>(cells: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = HashSet::new();
    cells
        .filter(|c| seen.insert(*c))
        .map(str::to_string)
        .collect()
}

/// Half-open interval `(lower, upper]`; `None` stands for an infinite bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Interval<T> {
    pub lower: Option<T>,
    pub upper: Option<T>,
    pub label: String,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lower: Option<T>, upper: Option<T>) -> Self {
        let label = format!(
            "({}-{}]",
            lower.map_or_else(|| "-inf".to_string(), format_bound),
            upper.map_or_else(|| "+inf".to_string(), format_bound)
        );
        Interval {
            lower,
            upper,
            label,
        }
    }

    pub fn contains(&self, x: T) -> bool {
        self.lower.is_none_or(|l| x > l) && self.upper.is_none_or(|u| x <= u)
    }
}

/// Renders a cut point with six decimals, trailing zeros removed.
fn format_bound<T: Scalar>(x: T) -> String {
    let s = format!("{:.6}", x.as_f64());
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// How one raw column maps onto discrete item values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", tag = "coding", rename_all = "lowercase")]
pub enum Coding<T> {
    Categories {
        values: Vec<String>,
    },
    Intervals {
        cuts: Vec<T>,
        intervals: Vec<Interval<T>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ColumnCoding<T> {
    pub name: String,
    pub kind: AttributeKind,
    pub is_class: bool,
    #[serde(flatten)]
    pub coding: Coding<T>,
}

impl<T: Scalar> ColumnCoding<T> {
    pub fn labels(&self) -> Vec<String> {
        match &self.coding {
            Coding::Categories { values } => values.clone(),
            Coding::Intervals { intervals, .. } => {
                intervals.iter().map(|i| i.label.clone()).collect()
            }
        }
    }

    /// Index of the discrete value a raw cell maps to; `None` for a
    /// category never seen when the coding was built.
    pub fn encode(&self, value: &RawValue<T>) -> Result<Option<usize>> {
        match (&self.coding, value) {
            (Coding::Categories { values }, RawValue::Label(s)) => {
                Ok(values.iter().position(|v| v == s))
            }
            (Coding::Intervals { cuts, .. }, RawValue::Number(x)) => {
                Ok(Some(cuts.partition_point(|c| *c < *x)))
            }
            _ => Err(Error::SchemaMismatch(format!(
                "column '{}' has kind {:?} but got value '{}'",
                self.name, self.kind, value
            ))),
        }
    }
}

/// Retained cut points and category lists for every column, so that unseen
/// data can be coded exactly as the training data was.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Discretization<T> {
    pub columns: Vec<ColumnCoding<T>>,
    pub class_index: usize,
}

impl<T: Scalar> Discretization<T> {
    pub fn column(&self, name: &str) -> Option<&ColumnCoding<T>> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn class_name(&self) -> &str {
        &self.columns[self.class_index].name
    }

    /// The discretized schema: every column categorical over its labels.
    pub fn schema(&self) -> Vec<AttributeSchema> {
        self.columns
            .iter()
            .map(|c| AttributeSchema {
                name: c.name.clone(),
                kind: AttributeKind::Categorical,
                values: c.labels(),
                is_class: c.is_class,
            })
            .collect()
    }

    fn check_compatible(&self, schema: &[AttributeSchema]) -> Result<()> {
        if schema.len() != self.columns.len() {
            return Err(Error::SchemaMismatch(format!(
                "expected {} columns, found {}",
                self.columns.len(),
                schema.len()
            )));
        }
        for (col, attr) in self.columns.iter().zip(schema) {
            if col.name != attr.name || col.kind != attr.kind || col.is_class != attr.is_class {
                return Err(Error::SchemaMismatch(format!(
                    "column '{}' ({:?}) does not match '{}' ({:?})",
                    attr.name, attr.kind, col.name, col.kind
                )));
            }
        }
        Ok(())
    }

    /// Codes a raw table with this mapping; see [`apply_discretization`].
    pub fn apply(&self, ds: &RawDataset<T>) -> Result<Dataset<T>> {
        self.check_compatible(&ds.schema)?;
        encode(ds, self.clone())
    }

    pub fn encode_row(&self, row: &[RawValue<T>]) -> Result<Vec<Option<usize>>> {
        if row.len() != self.columns.len() {
            return Err(Error::SchemaMismatch(format!(
                "row has {} values, schema has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.columns
            .iter()
            .zip(row)
            .map(|(c, v)| c.encode(v))
            .collect()
    }

    /// Builds a raw row from named text fields. Every non-class column must
    /// be present; a missing class column is filled with an empty label.
    pub fn parse_fields(&self, fields: &HashMap<&str, &str>) -> Result<Vec<RawValue<T>>> {
        self.columns
            .iter()
            .map(|c| {
                let cell = match fields.get(c.name.as_str()) {
                    Some(cell) => cell.trim(),
                    None if c.is_class => return Ok(RawValue::Label(String::new())),
                    None => {
                        return Err(Error::SchemaMismatch(format!(
                            "missing column '{}'",
                            c.name
                        )))
                    }
                };
                match c.kind {
                    AttributeKind::Categorical => Ok(RawValue::Label(cell.to_string())),
                    AttributeKind::Numeric => parse_finite(cell)
                        .map(|x| RawValue::Number(T::lit(x)))
                        .ok_or_else(|| Error::NotNumeric {
                            line: 0,
                            column: c.name.clone(),
                            value: cell.to_string(),
                        }),
                }
            })
            .collect()
    }
}

/// A categorical value absent from the coding it was mapped through.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnseenValue {
    pub row: usize,
    pub attribute: String,
    pub value: String,
}

/// Discretized table. Every column is categorical; rows hold value indices
/// into the column's label list (`None` only for unseen categories in data
/// coded against a reference).
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    schema: Vec<AttributeSchema>,
    rows: Vec<Vec<Option<usize>>>,
    class_index: usize,
    discretization: Discretization<T>,
    unseen: Vec<UnseenValue>,
}

impl<T: Scalar> Dataset<T> {
    pub fn schema(&self) -> &[AttributeSchema] {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn class_index(&self) -> usize {
        self.class_index
    }

    pub fn class_attribute(&self) -> &AttributeSchema {
        &self.schema[self.class_index]
    }

    pub fn class_count(&self) -> usize {
        self.class_attribute().values.len()
    }

    pub fn class_of(&self, row: usize) -> Option<usize> {
        self.rows[row][self.class_index]
    }

    pub fn discretization(&self) -> &Discretization<T> {
        &self.discretization
    }

    pub fn unseen(&self) -> &[UnseenValue] {
        &self.unseen
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.schema.iter().position(|a| a.name == name)
    }

    /// Indices of the non-class attributes in schema order.
    pub fn feature_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.schema.len()).filter(move |&i| i != self.class_index)
    }

    /// Number of rows per class value, in class declaration order.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_count()];
        for row in &self.rows {
            if let Some(c) = row[self.class_index] {
                counts[c] += 1;
            }
        }
        counts
    }

    /// Majority class; the first declared class wins ties.
    pub fn majority_class(&self) -> usize {
        let counts = self.class_counts();
        let mut best = 0;
        for (c, &n) in counts.iter().enumerate() {
            if n > counts[best] {
                best = c;
            }
        }
        best
    }
}

/// Replaces every numeric non-class column with `bins` equal-width
/// intervals over the observed range. The outer intervals are unbounded.
pub fn discretize<T: Scalar>(ds: &RawDataset<T>, bins: usize) -> Result<Dataset<T>> {
    if bins < 2 {
        return Err(Error::Config(format!(
            "bins must be at least 2, got {bins}"
        )));
    }
    if ds.n() == 0 {
        return Err(Error::EmptyData);
    }
    let columns = ds
        .schema
        .iter()
        .enumerate()
        .map(|(col, attr)| {
            let coding = match attr.kind {
                AttributeKind::Categorical => Coding::Categories {
                    values: attr.values.clone(),
                },
                AttributeKind::Numeric => {
                    let values = ds.rows.iter().map(|r| match r[col] {
                        RawValue::Number(x) => x,
                        RawValue::Label(_) => unreachable!("numeric column holds numbers"),
                    });
                    equal_width(values, bins)
                }
            };
            ColumnCoding {
                name: attr.name.clone(),
                kind: attr.kind,
                is_class: attr.is_class,
                coding,
            }
        })
        .collect();
    let discretization = Discretization {
        columns,
        class_index: ds.class_index,
    };
    encode(ds, discretization)
}

fn equal_width<T: Scalar>(values: impl Iterator<Item = T>, bins: usize) -> Coding<T> {
    let (min, max) = values.fold((T::infinity(), T::neg_infinity()), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    let mut cuts = Vec::new();
    if max > min {
        let width = (max - min) / T::from_count(bins);
        for i in 1..bins {
            cuts.push(min + width * T::from_count(i));
        }
        cuts.dedup();
    }
    let mut intervals = Vec::with_capacity(cuts.len() + 1);
    let mut lower = None;
    for &cut in &cuts {
        intervals.push(Interval::new(lower, Some(cut)));
        lower = Some(cut);
    }
    intervals.push(Interval::new(lower, None));
    Coding::Intervals { cuts, intervals }
}

/// Codes `ds` through the cut points and category lists stored in
/// `reference`. Categories the reference never saw are kept as `None` and
/// listed in [`Dataset::unseen`].
pub fn apply_discretization<T: Scalar>(
    ds: &RawDataset<T>,
    reference: &Dataset<T>,
) -> Result<Dataset<T>> {
    reference.discretization.apply(ds)
}

fn encode<T: Scalar>(ds: &RawDataset<T>, discretization: Discretization<T>) -> Result<Dataset<T>> {
    let mut unseen = Vec::new();
    let mut rows = Vec::with_capacity(ds.n());
    for (r, raw) in ds.rows.iter().enumerate() {
        let coded = discretization.encode_row(raw)?;
        for (col, v) in coded.iter().enumerate() {
            if v.is_none() {
                unseen.push(UnseenValue {
                    row: r,
                    attribute: discretization.columns[col].name.clone(),
                    value: raw[col].to_string(),
                });
            }
        }
        rows.push(coded);
    }
    Ok(Dataset {
        schema: discretization.schema(),
        rows,
        class_index: discretization.class_index,
        discretization,
        unseen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIVER: &str = include_str!("../fixtures/liver.csv");

    fn raw(text: &str, class: &str) -> Result<RawDataset<f64>> {
        RawDataset::from_reader(text.as_bytes(), class)
    }

    #[test]
    fn loads_liver() {
        let ds = raw(LIVER, "selector").unwrap();
        assert_eq!(ds.n(), 10);
        assert_eq!(ds.schema().len(), 7);
        let class = ds.class_attribute();
        assert_eq!(class.name, "selector");
        assert_eq!(class.values, vec!["1", "2"]);
        assert!(ds.schema()[..6]
            .iter()
            .all(|a| a.kind == AttributeKind::Numeric));
    }

    #[test]
    fn loads_single_row() {
        let ds = raw("a,c\nx,1\n", "c").unwrap();
        assert_eq!(ds.n(), 1);
        assert_eq!(ds.schema()[0].kind, AttributeKind::Categorical);
    }

    #[test]
    fn arity_mismatch_names_line() {
        let err = raw("a,b,c,d\n1,2,3\n", "d").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Arity {
                    line: 2,
                    expected: 4,
                    found: 3
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn load_errors() {
        assert!(matches!(
            raw("a,c\nx,1\n", "z"),
            Err(Error::UnknownAttribute(_))
        ));
        assert!(matches!(raw("a,c\n", "c"), Err(Error::EmptyData)));
        assert!(matches!(
            raw("a,c\n,1\n", "c"),
            Err(Error::MissingValue { .. })
        ));
        let missing = RawDataset::<f64>::load_csv("/nonexistent/file.csv", "c");
        assert!(matches!(missing, Err(Error::Io { .. })));
    }

    #[test]
    fn class_column_is_categorical_even_if_numeric() {
        let ds = raw("a,c\n1.5,1\n2.5,2\n", "c").unwrap();
        assert_eq!(ds.schema()[0].kind, AttributeKind::Numeric);
        assert_eq!(ds.schema()[1].kind, AttributeKind::Categorical);
    }

    #[test]
    fn two_bins_split_at_midpoint() {
        let ds = discretize(&raw("x,c\n0,a\n10,b\n", "c").unwrap(), 2).unwrap();
        assert_eq!(ds.schema()[0].values, vec!["(-inf-5]", "(5-+inf]"]);
    }

    #[test]
    fn constant_column_collapses() {
        let ds = discretize(&raw("x,c\n7,a\n7,b\n7,a\n", "c").unwrap(), 3).unwrap();
        assert_eq!(ds.schema()[0].values, vec!["(-inf-+inf]"]);
        assert!(ds.rows().iter().all(|r| r[0] == Some(0)));
    }

    #[test]
    fn liver_sgpt_three_bins() {
        let ds = discretize(&raw(LIVER, "selector").unwrap(), 3).unwrap();
        let sgpt = ds.attribute_index("sgpt").unwrap();
        assert_eq!(
            ds.schema()[sgpt].values,
            vec![
                "(-inf-27.666667]",
                "(27.666667-43.333333]",
                "(43.333333-+inf]"
            ]
        );
        assert_eq!(ds.rows()[0][sgpt], Some(2));
        assert_eq!(ds.schema()[sgpt].values[2], "(43.333333-+inf]");
    }

    #[test]
    fn rejects_too_few_bins() {
        let r = raw(LIVER, "selector").unwrap();
        assert!(matches!(discretize(&r, 1), Err(Error::Config(_))));
    }

    #[test]
    fn test_values_use_training_cuts() {
        let train = discretize(&raw(LIVER, "selector").unwrap(), 3).unwrap();
        let test = raw(
            "mcv,alkphos,sgpt,sgot,gammagt,drinks,selector\n85,92,200,27,31,0,1\n85,92,12,27,31,0,1\n",
            "selector",
        )
        .unwrap();
        let coded = apply_discretization(&test, &train).unwrap();
        let sgpt = coded.attribute_index("sgpt").unwrap();
        assert_eq!(
            coded.schema()[sgpt].values[coded.rows()[0][sgpt].unwrap()],
            "(43.333333-+inf]"
        );
        assert_eq!(coded.rows()[1][sgpt], Some(0));
    }

    #[test]
    fn unseen_category_is_flagged_not_dropped() {
        let train = discretize(&raw("colour,c\nred,a\nblue,b\n", "c").unwrap(), 3).unwrap();
        let test = raw("colour,c\npurple,a\nred,b\n", "c").unwrap();
        let coded = apply_discretization(&test, &train).unwrap();
        assert_eq!(coded.n(), 2);
        assert_eq!(coded.rows()[0][0], None);
        assert_eq!(
            coded.unseen(),
            &[UnseenValue {
                row: 0,
                attribute: "colour".into(),
                value: "purple".into()
            }]
        );
    }

    #[test]
    fn schema_mismatch_rejected() {
        let train = discretize(&raw("x,c\n1,a\n2,b\n", "c").unwrap(), 2).unwrap();
        let test = raw("y,c\n1,a\n", "c").unwrap();
        assert!(matches!(
            apply_discretization(&test, &train),
            Err(Error::SchemaMismatch(_))
        ));
        let kinds = raw("x,c\nlow,a\n", "c").unwrap();
        assert!(matches!(
            apply_discretization(&kinds, &train),
            Err(Error::SchemaMismatch(_))
        ));
    }

    #[test]
    fn schema_validation() {
        let attr = |name: &str, is_class: bool, values: &[&str]| AttributeSchema {
            name: name.into(),
            kind: AttributeKind::Categorical,
            values: values.iter().map(|s| s.to_string()).collect(),
            is_class,
        };
        assert_eq!(
            validate_schema(&[attr("a", false, &["x"]), attr("c", true, &["p", "q"])]).unwrap(),
            1
        );
        assert!(validate_schema(&[attr("a", false, &[]), attr("a", true, &["p", "q"])]).is_err());
        assert!(validate_schema(&[attr("a", false, &[])]).is_err());
        assert!(validate_schema(&[attr("c", true, &["p"])]).is_err());
        assert!(
            validate_schema(&[attr("c", true, &["p", "q"]), attr("d", true, &["p", "q"])]).is_err()
        );
    }

    #[test]
    fn labels_trim_and_sign() {
        assert_eq!(format_bound(19.1_f64), "19.1");
        assert_eq!(format_bound(5.0_f64), "5");
        assert_eq!(format_bound(-0.0000001_f64), "0");
        assert_eq!(Interval::<f64>::new(None, None).label, "(-inf-+inf]");
    }

    #[test]
    fn f32_discretization() {
        let ds = RawDataset::<f32>::from_reader("x,c\n0,a\n10,b\n".as_bytes(), "c").unwrap();
        let d = discretize(&ds, 2).unwrap();
        assert_eq!(d.schema()[0].values, vec!["(-inf-5]", "(5-+inf]"]);
    }
}
