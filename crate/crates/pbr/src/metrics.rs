//! The sprint test-quality metrics.
//!
//! Three aggregates, all computed with exact rational arithmetic:
//!
//! * per-item complexity `PCL = Σ(value·weight) / Σ(weight)` over the item's
//!   scored complexity factors — a weighted mean, so it is invariant under
//!   rescaling all weights by a common positive constant;
//! * per-item test assessment `TAR = Σ(value) / count` over the item's
//!   scored test-assessment factors;
//! * per-sprint rating `PBR = Σ(PCL·TAR) / Σ(PCL)` over the sprint's items,
//!   i.e. a complexity-weighted mean of the item test assessments.
//!
//! Only display values are rounded, and then always by truncation toward
//! zero at two decimals. Interpretation bands round half-up to the nearest
//! whole score.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal::Decimal2;
use crate::model::{FactorKind, PblItem, Sprint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("item {item_id:?} has no {} scores", kind.label())]
    EmptyScores { item_id: String, kind: FactorKind },
    #[error("sprint has no items")]
    EmptySprint,
    #[error("value {0} outside the score range [1,5]")]
    OutOfRange(String),
    #[error("series is empty")]
    EmptySeries,
    #[error("no teams to compare")]
    EmptyInput,
}

/// How to treat items that cannot be scored yet (typically: complexity
/// assigned at planning, test assessment still pending).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    /// Skip unscorable items, record a warning, compute over the rest.
    #[default]
    Lenient,
    /// Fail on the first unscorable item.
    Strict,
}

/// Score bands, mapping whole scores 1..=5 to labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterpretationBand {
    Worst = 1,
    Bad = 2,
    Moderate = 3,
    Good = 4,
    Excellent = 5,
}

impl InterpretationBand {
    pub fn from_score(score: u8) -> Option<Self> {
        match score {
            1 => Some(InterpretationBand::Worst),
            2 => Some(InterpretationBand::Bad),
            3 => Some(InterpretationBand::Moderate),
            4 => Some(InterpretationBand::Good),
            5 => Some(InterpretationBand::Excellent),
            _ => None,
        }
    }

    pub fn score(self) -> u8 {
        self as u8
    }

    pub fn label(self) -> &'static str {
        match self {
            InterpretationBand::Worst => "Worst",
            InterpretationBand::Bad => "Bad",
            InterpretationBand::Moderate => "Moderate",
            InterpretationBand::Good => "Good",
            InterpretationBand::Excellent => "Excellent",
        }
    }
}

impl fmt::Display for InterpretationBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Exact and display metrics for one backlog item.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemMetrics {
    pub item_id: String,
    pub pcl: BigRational,
    pub tar: BigRational,
    pub pcl_display: Decimal2,
    pub tar_display: Decimal2,
}

/// Why an item was left out of the sprint aggregate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricWarning {
    pub item_id: String,
    pub missing: FactorKind,
}

impl fmt::Display for MetricWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "item {} has no {} scores and was excluded from PBR",
            self.item_id,
            self.missing.label()
        )
    }
}

/// Exact and display metrics for one sprint.
#[derive(Debug, Clone, PartialEq)]
pub struct SprintMetrics {
    pub sprint_id: String,
    pub items: Vec<ItemMetrics>,
    pub pbr: BigRational,
    pub pbr_display: Decimal2,
    pub band: InterpretationBand,
    pub warnings: Vec<MetricWarning>,
}

/// Weighted mean of the item's scored complexity factors.
pub fn compute_pcl(item: &PblItem) -> Result<BigRational, MetricError> {
    if item.pcl_scores.is_empty() {
        return Err(MetricError::EmptyScores {
            item_id: item.id.clone(),
            kind: FactorKind::Pcl,
        });
    }
    let mut weighted_sum = BigRational::zero();
    let mut weight_sum = BigRational::zero();
    for score in &item.pcl_scores {
        let value = score.value.get().to_rational();
        let weight = score.weight.get().to_rational();
        weighted_sum += value * &weight;
        weight_sum += weight;
    }
    Ok(weighted_sum / weight_sum)
}

/// Plain mean of the item's scored test-assessment factors. The divisor is
/// the number of factors actually scored, so partially assessed items are
/// averaged over what exists.
pub fn compute_tar(item: &PblItem) -> Result<BigRational, MetricError> {
    if item.tar_scores.is_empty() {
        return Err(MetricError::EmptyScores {
            item_id: item.id.clone(),
            kind: FactorKind::Tar,
        });
    }
    let sum: BigRational = item
        .tar_scores
        .iter()
        .map(|s| s.value.get().to_rational())
        .sum();
    let count = BigRational::from_integer(BigInt::from(item.tar_scores.len()));
    Ok(sum / count)
}

/// Both per-item metrics plus their truncated display forms.
pub fn compute_item_metrics(item: &PblItem) -> Result<ItemMetrics, MetricError> {
    let pcl = compute_pcl(item)?;
    let tar = compute_tar(item)?;
    Ok(ItemMetrics {
        item_id: item.id.clone(),
        pcl_display: Decimal2::truncate(&pcl),
        tar_display: Decimal2::truncate(&tar),
        pcl,
        tar,
    })
}

/// The sprint rating: the complexity-weighted mean of item test
/// assessments, over every item that has both kinds of scores.
///
/// Under [`Strictness::Lenient`] items that are missing either kind are
/// skipped and reported as warnings; under [`Strictness::Strict`] the first
/// such item fails the computation. Both the numerator and the denominator
/// use full-precision values — display truncation never feeds back into the
/// aggregate.
pub fn compute_pbr(sprint: &Sprint, strictness: Strictness) -> Result<SprintMetrics, MetricError> {
    if sprint.items.is_empty() {
        return Err(MetricError::EmptySprint);
    }
    let mut items = Vec::new();
    let mut warnings = Vec::new();
    let mut first_missing: Option<MetricError> = None;
    for item in &sprint.items {
        match compute_item_metrics(item) {
            Ok(metrics) => items.push(metrics),
            Err(err @ MetricError::EmptyScores { .. }) => match strictness {
                Strictness::Strict => return Err(err),
                Strictness::Lenient => {
                    if let MetricError::EmptyScores { item_id, kind } = &err {
                        warnings.push(MetricWarning {
                            item_id: item_id.clone(),
                            missing: *kind,
                        });
                    }
                    first_missing.get_or_insert(err);
                }
            },
            Err(other) => return Err(other),
        }
    }
    if items.is_empty() {
        // Nothing scorable at all: surface the first offender.
        return Err(first_missing.unwrap_or(MetricError::EmptySprint));
    }
    let mut numerator = BigRational::zero();
    let mut denominator = BigRational::zero();
    for m in &items {
        numerator += &m.pcl * &m.tar;
        denominator += &m.pcl;
    }
    let pbr = numerator / denominator;
    let band = interpret(&pbr)?;
    Ok(SprintMetrics {
        sprint_id: sprint.id.clone(),
        items,
        pbr_display: Decimal2::truncate(&pbr),
        pbr,
        band,
        warnings,
    })
}

/// Maps a score in [1, 5] to its band: round half-up to the nearest whole
/// score, clamp into 1..=5, and look the band up.
pub fn interpret(value: &BigRational) -> Result<InterpretationBand, MetricError> {
    let one = BigRational::from_integer(BigInt::from(1));
    let five = BigRational::from_integer(BigInt::from(5));
    if value < &one || value > &five {
        return Err(MetricError::OutOfRange(format!(
            "{:.4}",
            rational_to_f64(value)
        )));
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let rounded = (value + half).floor().to_integer();
    let score = u8::try_from(rounded.clamp(BigInt::from(1), BigInt::from(5)))
        .expect("clamped score fits in u8");
    Ok(InterpretationBand::from_score(score).expect("clamped score has a band"))
}

/// Lossy conversion for presentation geometry (plots); never used in metric
/// arithmetic.
pub fn rational_to_f64(value: &BigRational) -> f64 {
    let precision = BigInt::from(1_000_000_000i64);
    let scaled = (value * BigRational::from_integer(precision.clone())).round();
    let int = scaled.to_integer();
    let as_i128 = i128::try_from(int).unwrap_or(i128::MAX);
    as_i128 as f64 / 1e9
}

// ---------------------------------------------------------------------------
// Trend series over consecutive sprints
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct TrendPoint {
    pub sprint_id: String,
    pub pbr: BigRational,
    pub pbr_display: Decimal2,
    pub band: InterpretationBand,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendSummary {
    pub min: BigRational,
    pub max: BigRational,
    pub mean: BigRational,
    /// Last minus first; negative when the trend worsened.
    pub delta: BigRational,
    pub min_display: Decimal2,
    pub max_display: Decimal2,
    pub mean_display: Decimal2,
    pub delta_display: Decimal2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendSeries {
    pub points: Vec<TrendPoint>,
    pub summary: TrendSummary,
}

/// Builds the sprint-over-sprint series plus min/max/mean/delta summary.
/// The input must already be in sprint start-date order; the series
/// preserves it.
pub fn trend(metrics: &[SprintMetrics]) -> Result<TrendSeries, MetricError> {
    if metrics.is_empty() {
        return Err(MetricError::EmptySeries);
    }
    let points: Vec<TrendPoint> = metrics
        .iter()
        .map(|m| TrendPoint {
            sprint_id: m.sprint_id.clone(),
            pbr: m.pbr.clone(),
            pbr_display: m.pbr_display,
            band: m.band,
        })
        .collect();
    let mut min = points[0].pbr.clone();
    let mut max = points[0].pbr.clone();
    let mut sum = BigRational::zero();
    for p in &points {
        if p.pbr < min {
            min = p.pbr.clone();
        }
        if p.pbr > max {
            max = p.pbr.clone();
        }
        sum += &p.pbr;
    }
    let mean = sum / BigRational::from_integer(BigInt::from(points.len()));
    let delta = &points[points.len() - 1].pbr - &points[0].pbr;
    let summary = TrendSummary {
        min_display: Decimal2::truncate(&min),
        max_display: Decimal2::truncate(&max),
        mean_display: Decimal2::truncate(&mean),
        delta_display: Decimal2::truncate(&delta),
        min,
        max,
        mean,
        delta,
    };
    Ok(TrendSeries { points, summary })
}

// ---------------------------------------------------------------------------
// Cross-team comparison
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct TeamComparisonRow {
    pub team_id: String,
    pub latest: BigRational,
    pub mean: BigRational,
    pub latest_display: Decimal2,
    pub mean_display: Decimal2,
    /// Band of the mean rating, matching the sort order of the table.
    pub band: InterpretationBand,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeamComparison {
    pub rows: Vec<TeamComparisonRow>,
}

/// One row per team, sorted by mean rating descending with ties broken by
/// team id ascending. Each team's series must be in sprint date order.
pub fn compare_teams(
    per_team: &BTreeMap<String, Vec<SprintMetrics>>,
) -> Result<TeamComparison, MetricError> {
    if per_team.is_empty() || per_team.values().any(Vec::is_empty) {
        return Err(MetricError::EmptyInput);
    }
    let mut rows = Vec::with_capacity(per_team.len());
    for (team_id, series) in per_team {
        let latest = series[series.len() - 1].pbr.clone();
        let sum: BigRational = series.iter().map(|m| m.pbr.clone()).sum();
        let mean = sum / BigRational::from_integer(BigInt::from(series.len()));
        rows.push(TeamComparisonRow {
            team_id: team_id.clone(),
            latest_display: Decimal2::truncate(&latest),
            mean_display: Decimal2::truncate(&mean),
            band: interpret(&mean)?,
            latest,
            mean,
        });
    }
    // BTreeMap iteration already gives ascending team ids, and the sort is
    // stable, so equal means keep that order.
    rows.sort_by(|a, b| b.mean.cmp(&a.mean));
    Ok(TeamComparison { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PblItem, Rating, Weight};

    fn dec(s: &str) -> Decimal2 {
        s.parse().unwrap()
    }

    fn item_with(pcl: &[(&str, &str, &str)], tar: &[(&str, &str)]) -> PblItem {
        let mut item = PblItem::new("X", "test item");
        for (factor, value, weight) in pcl {
            item.set_pcl_score(
                factor,
                Rating::new(dec(value)).unwrap(),
                Weight::new(dec(weight)).unwrap(),
            );
        }
        for (factor, value) in tar {
            item.set_tar_score(factor, Rating::new(dec(value)).unwrap());
        }
        item
    }

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pcl_weighted_mean_exact() {
        // values (5,5,5,4.5,5,5,5,5) weights (1,1,1,1,1,1,0.4,1) -> 36.5/7.4
        let item = item_with(
            &[
                ("CBLBP", "5", "1"),
                ("NTD", "5", "1"),
                ("TE", "5", "1"),
                ("PID", "4.5", "1"),
                ("PED", "5", "1"),
                ("TEC", "5", "1"),
                ("LGUI", "5", "0.4"),
                ("BA", "5", "1"),
            ],
            &[],
        );
        let pcl = compute_pcl(&item).unwrap();
        assert_eq!(pcl, rational(365, 74));
        assert_eq!(Decimal2::truncate(&pcl).fixed2(), "4.93");
    }

    #[test]
    fn pcl_of_constant_values_is_that_value() {
        let item = item_with(
            &[("CBLBP", "3.25", "0.2"), ("NTD", "3.25", "0.9"), ("TE", "3.25", "1")],
            &[],
        );
        assert_eq!(compute_pcl(&item).unwrap(), rational(13, 4));
    }

    #[test]
    fn pcl_brute_force_row() {
        // values (3,3,4,3,3,4,5,2) weights (0.7,0.7,1,0.5,0.5,1,1,0.4) -> 21/5.8
        let item = item_with(
            &[
                ("CBLBP", "3", "0.7"),
                ("NTD", "3", "0.7"),
                ("TE", "4", "1"),
                ("PID", "3", "0.5"),
                ("PED", "3", "0.5"),
                ("TEC", "4", "1"),
                ("LGUI", "5", "1"),
                ("BA", "2", "0.4"),
            ],
            &[],
        );
        let pcl = compute_pcl(&item).unwrap();
        assert_eq!(pcl, rational(105, 29));
        assert_eq!(Decimal2::truncate(&pcl).fixed2(), "3.62");
    }

    #[test]
    fn tar_mean_exact() {
        // (4,2,5,5,5,4.5) -> 25.5/6 = 4.25
        let item = item_with(
            &[],
            &[
                ("BC", "4"),
                ("SB", "2"),
                ("BFRI", "5"),
                ("NBMTC", "5"),
                ("RC", "5"),
                ("TC", "4.5"),
            ],
        );
        let tar = compute_tar(&item).unwrap();
        assert_eq!(tar, rational(17, 4));
        assert_eq!(Decimal2::truncate(&tar).fixed2(), "4.25");
    }

    #[test]
    fn tar_display_truncates_not_rounds() {
        // (4,2.5,4,3,5,3.75) -> 22.25/6 = 3.7083..., display 3.70
        let item = item_with(
            &[],
            &[
                ("BC", "4"),
                ("SB", "2.5"),
                ("BFRI", "4"),
                ("NBMTC", "3"),
                ("RC", "5"),
                ("TC", "3.75"),
            ],
        );
        let tar = compute_tar(&item).unwrap();
        assert_eq!(tar, rational(89, 24));
        assert_eq!(Decimal2::truncate(&tar).fixed2(), "3.70");
    }

    #[test]
    fn tar_of_all_fives_is_five() {
        let item = item_with(&[], &[("BC", "5"), ("SB", "5"), ("TC", "5")]);
        assert_eq!(compute_tar(&item).unwrap(), rational(5, 1));
    }

    #[test]
    fn tar_divides_by_scored_count_only() {
        let item = item_with(&[], &[("BC", "4"), ("SB", "3")]);
        assert_eq!(compute_tar(&item).unwrap(), rational(7, 2));
    }

    #[test]
    fn empty_scores_error_names_the_item() {
        let mut item = item_with(&[], &[("BC", "4")]);
        item.id = "PBL9".to_string();
        let err = compute_pcl(&item).unwrap_err();
        assert_eq!(
            err,
            MetricError::EmptyScores {
                item_id: "PBL9".to_string(),
                kind: FactorKind::Pcl,
            }
        );
    }

    fn scored_item(id: &str, pcl_value: &str, tar_value: &str) -> PblItem {
        let mut item = item_with(
            &[("CBLBP", pcl_value, "1"), ("NTD", pcl_value, "0.5")],
            &[("BC", tar_value), ("SB", tar_value)],
        );
        item.id = id.to_string();
        item
    }

    fn sprint_of(items: Vec<PblItem>) -> Sprint {
        let mut sprint = Sprint::new(
            "S1",
            "alpha",
            chrono::NaiveDate::from_ymd_opt(2026, 3, 2).unwrap(),
            15,
        )
        .unwrap();
        sprint.items = items;
        sprint
    }

    #[test]
    fn single_item_pbr_equals_its_tar() {
        let sprint = sprint_of(vec![scored_item("A", "4.5", "3.25")]);
        let metrics = compute_pbr(&sprint, Strictness::Strict).unwrap();
        assert_eq!(metrics.pbr, rational(13, 4));
        assert_eq!(metrics.items.len(), 1);
    }

    #[test]
    fn constant_tar_pbr_ignores_pcl() {
        let sprint = sprint_of(vec![
            scored_item("A", "5", "3.5"),
            scored_item("B", "1.25", "3.5"),
            scored_item("C", "2.75", "3.5"),
        ]);
        let metrics = compute_pbr(&sprint, Strictness::Strict).unwrap();
        assert_eq!(metrics.pbr, rational(7, 2));
    }

    #[test]
    fn lenient_mode_excludes_unrated_items_with_warning() {
        let mut unrated = PblItem::new("PBL9", "not tested yet");
        unrated.set_pcl_score(
            "CBLBP",
            Rating::new(dec("3")).unwrap(),
            Weight::new(dec("1")).unwrap(),
        );
        let sprint = sprint_of(vec![scored_item("A", "4", "3"), unrated.clone()]);
        let metrics = compute_pbr(&sprint, Strictness::Lenient).unwrap();
        assert_eq!(metrics.items.len(), 1);
        assert_eq!(metrics.warnings.len(), 1);
        assert_eq!(metrics.warnings[0].item_id, "PBL9");
        assert_eq!(metrics.warnings[0].missing, FactorKind::Tar);
        assert_eq!(metrics.pbr, rational(3, 1));

        let err = compute_pbr(&sprint, Strictness::Strict).unwrap_err();
        assert!(matches!(err, MetricError::EmptyScores { .. }));
    }

    #[test]
    fn all_items_unrated_is_an_error_even_lenient() {
        let sprint = sprint_of(vec![PblItem::new("PBL1", "empty")]);
        let err = compute_pbr(&sprint, Strictness::Lenient).unwrap_err();
        assert!(matches!(err, MetricError::EmptyScores { .. }));
    }

    #[test]
    fn empty_sprint_is_an_error() {
        let sprint = sprint_of(vec![]);
        assert_eq!(
            compute_pbr(&sprint, Strictness::Lenient).unwrap_err(),
            MetricError::EmptySprint
        );
    }

    #[test]
    fn interpret_reproduces_band_table() {
        for (score, band) in [
            (1, InterpretationBand::Worst),
            (2, InterpretationBand::Bad),
            (3, InterpretationBand::Moderate),
            (4, InterpretationBand::Good),
            (5, InterpretationBand::Excellent),
        ] {
            let v = BigRational::from_integer(BigInt::from(score));
            assert_eq!(interpret(&v).unwrap(), band);
        }
    }

    #[test]
    fn interpret_rounds_half_up() {
        assert_eq!(
            interpret(&rational(311, 100)).unwrap(),
            InterpretationBand::Moderate
        );
        assert_eq!(interpret(&rational(7, 2)).unwrap(), InterpretationBand::Good);
        assert_eq!(
            interpret(&rational(23, 5)).unwrap(), // 4.6
            InterpretationBand::Excellent
        );
        assert_eq!(
            interpret(&rational(249, 100)).unwrap(),
            InterpretationBand::Bad
        );
        assert_eq!(interpret(&rational(5, 2)).unwrap(), InterpretationBand::Moderate);
    }

    #[test]
    fn interpret_rejects_out_of_range() {
        assert!(interpret(&rational(1, 2)).is_err());
        assert!(interpret(&rational(51, 10)).is_err());
    }

    fn metrics_with_pbr(id: &str, pbr: BigRational) -> SprintMetrics {
        SprintMetrics {
            sprint_id: id.to_string(),
            items: vec![],
            pbr_display: Decimal2::truncate(&pbr),
            band: interpret(&pbr).unwrap(),
            pbr,
            warnings: vec![],
        }
    }

    #[test]
    fn trend_summary_arithmetic() {
        let series = trend(&[
            metrics_with_pbr("S1", rational(3, 1)),
            metrics_with_pbr("S2", rational(4, 1)),
            metrics_with_pbr("S3", rational(7, 2)),
        ])
        .unwrap();
        assert_eq!(series.summary.delta, rational(1, 2));
        assert_eq!(series.summary.mean, rational(7, 2));
        assert_eq!(series.summary.min, rational(3, 1));
        assert_eq!(series.summary.max, rational(4, 1));
        assert_eq!(series.points.len(), 3);
    }

    #[test]
    fn trend_single_sprint_has_zero_delta() {
        let series = trend(&[metrics_with_pbr("S1", rational(13, 4))]).unwrap();
        assert!(series.summary.delta.is_zero());
    }

    #[test]
    fn trend_rejects_empty() {
        assert_eq!(trend(&[]).unwrap_err(), MetricError::EmptySeries);
    }

    #[test]
    fn negative_delta_display_truncates_toward_zero() {
        let series = trend(&[
            metrics_with_pbr("S1", rational(4, 1)),
            metrics_with_pbr("S2", rational(10, 3)), // delta = -2/3 = -0.666...
        ])
        .unwrap();
        assert_eq!(series.summary.delta_display.fixed2(), "-0.66");
    }

    #[test]
    fn compare_sorts_by_mean_then_id() {
        let mut per_team = BTreeMap::new();
        per_team.insert("B".to_string(), vec![metrics_with_pbr("S1", rational(3, 1))]);
        per_team.insert("A".to_string(), vec![metrics_with_pbr("S2", rational(4, 1))]);
        let table = compare_teams(&per_team).unwrap();
        assert_eq!(table.rows[0].team_id, "A");
        assert_eq!(table.rows[1].team_id, "B");

        // Equal means: id ascending.
        let mut tie = BTreeMap::new();
        tie.insert("B".to_string(), vec![metrics_with_pbr("S1", rational(3, 1))]);
        tie.insert("A".to_string(), vec![metrics_with_pbr("S2", rational(3, 1))]);
        let table = compare_teams(&tie).unwrap();
        assert_eq!(table.rows[0].team_id, "A");

        // {A:[2,4], B:[3,3]}: equal means again, id tiebreak.
        let mut mixed = BTreeMap::new();
        mixed.insert(
            "A".to_string(),
            vec![
                metrics_with_pbr("S1", rational(2, 1)),
                metrics_with_pbr("S2", rational(4, 1)),
            ],
        );
        mixed.insert(
            "B".to_string(),
            vec![
                metrics_with_pbr("S3", rational(3, 1)),
                metrics_with_pbr("S4", rational(3, 1)),
            ],
        );
        let table = compare_teams(&mixed).unwrap();
        assert_eq!(table.rows[0].team_id, "A");
        assert_eq!(table.rows[0].mean, rational(3, 1));
        assert_eq!(table.rows[0].latest, rational(4, 1));
    }

    #[test]
    fn compare_rejects_empty_input() {
        assert_eq!(
            compare_teams(&BTreeMap::new()).unwrap_err(),
            MetricError::EmptyInput
        );
        let mut with_empty = BTreeMap::new();
        with_empty.insert("A".to_string(), vec![]);
        assert_eq!(
            compare_teams(&with_empty).unwrap_err(),
            MetricError::EmptyInput
        );
    }

    #[test]
    fn display_values_use_truncation() {
        // 3.4167 -> 3.41 and 3.7083 -> 3.70 (the two published checkpoints)
        assert_eq!(Decimal2::truncate(&rational(41, 12)).fixed2(), "3.41");
        assert_eq!(Decimal2::truncate(&rational(89, 24)).fixed2(), "3.70");
    }

    #[test]
    fn rational_to_f64_is_close() {
        let v = rational(9873657359, 2715418896);
        assert!((rational_to_f64(&v) - 3.636145).abs() < 1e-5);
    }
}
