use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ReportDocument, SCHEMA_VERSION};
use crate::null_models::SmallWorldVerdict;

/// Row order of the comparison table.
pub const PROPERTY_ORDER: [&str; 6] = [
    "n",
    "m",
    "density",
    "diameter",
    "average_path_length",
    "average_clustering_coefficient",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PropertyValue {
    Integer(u64),
    Real(f64),
}

impl PropertyValue {
    pub fn as_f64(self) -> f64 {
        match self {
            PropertyValue::Integer(i) => i as f64,
            PropertyValue::Real(x) => x,
        }
    }

    fn display(self) -> String {
        match self {
            PropertyValue::Integer(i) => i.to_string(),
            PropertyValue::Real(x) => format!("{x:.3}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub property: String,
    pub left: PropertyValue,
    pub right: PropertyValue,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Verdicts {
    pub left: Option<SmallWorldVerdict>,
    pub right: Option<SmallWorldVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub schema_version: u32,
    pub left_name: String,
    pub right_name: String,
    pub rows: Vec<ComparisonRow>,
    pub verdicts: Verdicts,
    pub narrative_flags: Vec<String>,
}

fn rows_of(left: &ReportDocument, right: &ReportDocument) -> Vec<ComparisonRow> {
    let values = |d: &ReportDocument| {
        let m = &d.metrics;
        [
            PropertyValue::Integer(m.n as u64),
            PropertyValue::Integer(m.m as u64),
            PropertyValue::Real(m.density),
            PropertyValue::Integer(u64::from(m.path_stats.diameter)),
            PropertyValue::Real(m.path_stats.average_path_length),
            PropertyValue::Real(m.average_clustering),
        ]
    };
    PROPERTY_ORDER
        .iter()
        .zip(values(left).into_iter().zip(values(right)))
        .map(|(p, (l, r))| ComparisonRow {
            property: p.to_string(),
            left: l,
            right: r,
        })
        .collect()
}

/// Aligns two reports property by property. Flags are plain comparisons of
/// the row values plus warnings when the reports were computed differently.
pub fn compare(left: &ReportDocument, right: &ReportDocument) -> ComparisonReport {
    let rows = rows_of(left, right);
    let value = |name: &str| {
        let row = rows.iter().find(|r| r.property == name).expect("fixed row set");
        (row.left.as_f64(), row.right.as_f64())
    };

    let mut flags = Vec::new();
    // (property, flag suffix, larger-is-flagged)
    for (property, suffix, larger) in [
        ("density", "denser", true),
        ("diameter", "smaller_diameter", false),
        ("average_path_length", "shorter_apl", false),
        ("average_clustering_coefficient", "more_clustered", true),
    ] {
        let (l, r) = value(property);
        if l == r {
            continue;
        }
        let left_wins = (l > r) == larger;
        flags.push(format!("{}.{suffix}", if left_wins { "left" } else { "right" }));
    }

    let (lo, ro) = (&left.metrics.options, &right.metrics.options);
    if lo.clustering_policy != ro.clustering_policy {
        flags.push("policy_mismatch".into());
    }
    if lo.scope != ro.scope {
        flags.push("scope_mismatch".into());
    }
    if lo.density_mode != ro.density_mode {
        flags.push("density_mode_mismatch".into());
    }

    ComparisonReport {
        schema_version: SCHEMA_VERSION,
        left_name: left.name.clone(),
        right_name: right.name.clone(),
        rows,
        verdicts: Verdicts {
            left: left.metrics.small_world,
            right: right.metrics.small_world,
        },
        narrative_flags: flags,
    }
}

impl ComparisonReport {
    /// Fixed-width table with reals rounded to 3 decimals, followed by the flags.
    pub fn render_table(&self) -> String {
        let prop_w = PROPERTY_ORDER.iter().map(|p| p.len()).max().unwrap_or(0);
        let cells: Vec<(String, String)> = self
            .rows
            .iter()
            .map(|r| (r.left.display(), r.right.display()))
            .collect();
        let left_w = cells
            .iter()
            .map(|c| c.0.chars().count())
            .chain([self.left_name.chars().count(), 8])
            .max()
            .unwrap_or(8);
        let right_w = cells
            .iter()
            .map(|c| c.1.chars().count())
            .chain([self.right_name.chars().count(), 8])
            .max()
            .unwrap_or(8);

        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<prop_w$}  {:>left_w$}  {:>right_w$}",
            "property", self.left_name, self.right_name
        );
        for (row, (l, r)) in self.rows.iter().zip(&cells) {
            let _ = writeln!(out, "{:<prop_w$}  {:>left_w$}  {:>right_w$}", row.property, l, r);
        }
        for (side, verdict) in [
            (&self.left_name, self.verdicts.left),
            (&self.right_name, self.verdicts.right),
        ] {
            if let Some(v) = verdict {
                let _ = writeln!(
                    out,
                    "small-world {side}: sigma={:.3} ({})",
                    v.sigma,
                    if v.is_small_world { "yes" } else { "no" }
                );
            }
        }
        let flags = if self.narrative_flags.is_empty() {
            "(none)".to_owned()
        } else {
            self.narrative_flags.join(", ")
        };
        let _ = writeln!(out, "flags: {flags}");
        out
    }
}
