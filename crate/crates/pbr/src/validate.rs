//! Structural validation of items and sprints against a factor catalog.
//!
//! Violations are data, not faults: validators return the complete list of
//! problems instead of stopping at the first, so a report or a CLI run can
//! show everything wrong with an entity at once.

use std::collections::BTreeSet;
use std::fmt;

use crate::decimal::Decimal2;
use crate::model::{
    is_valid_entity_id, FactorCatalog, FactorKind, PblItem, Rating, Sprint,
    Weight, SPRINT_MAX_DAYS, SPRINT_MIN_DAYS, TASK_ESTIMATE_HOURS,
};
use crate::workflow::{validate_history, TransitionPolicy};

/// One concrete problem found in an entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    RatingOutOfRange {
        item_id: String,
        factor_id: String,
        value: Decimal2,
    },
    WeightOutOfRange {
        item_id: String,
        factor_id: String,
        value: Decimal2,
    },
    UnknownFactor {
        item_id: String,
        kind: FactorKind,
        factor_id: String,
    },
    DuplicateFactorScore {
        item_id: String,
        kind: FactorKind,
        factor_id: String,
    },
    BadIdentifier {
        subject: String,
        id: String,
    },
    DuplicateItemId {
        item_id: String,
    },
    DuplicateTaskId {
        task_id: String,
    },
    DanglingPblItemRef {
        task_id: String,
        pbl_item_id: String,
    },
    BadEstimate {
        task_id: String,
        hours: u8,
    },
    SprintLengthOutOfRange {
        length_days: u32,
    },
    InvalidTaskHistory {
        task_id: String,
        reason: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RatingOutOfRange {
                item_id,
                factor_id,
                value,
            } => write!(
                f,
                "item {item_id}, factor {factor_id}: rating {value} out of range [1,5]"
            ),
            Violation::WeightOutOfRange {
                item_id,
                factor_id,
                value,
            } => write!(
                f,
                "item {item_id}, factor {factor_id}: weight {value} out of range (0,1]"
            ),
            Violation::UnknownFactor {
                item_id,
                kind,
                factor_id,
            } => write!(
                f,
                "item {item_id}: factor {factor_id} is not a {} factor in the catalog",
                kind.label()
            ),
            Violation::DuplicateFactorScore {
                item_id,
                kind,
                factor_id,
            } => write!(
                f,
                "item {item_id}: duplicate {} score for factor {factor_id}",
                kind.label()
            ),
            Violation::BadIdentifier { subject, id } => {
                write!(f, "{subject}: malformed identifier {id:?}")
            }
            Violation::DuplicateItemId { item_id } => {
                write!(f, "duplicate item id {item_id}")
            }
            Violation::DuplicateTaskId { task_id } => {
                write!(f, "duplicate task id {task_id}")
            }
            Violation::DanglingPblItemRef {
                task_id,
                pbl_item_id,
            } => write!(
                f,
                "task {task_id}: dangling pbl_item_id {pbl_item_id} (no such item in sprint)"
            ),
            Violation::BadEstimate { task_id, hours } => write!(
                f,
                "task {task_id}: estimate {hours}h is not a half day (3) or full day (6)"
            ),
            Violation::SprintLengthOutOfRange { length_days } => write!(
                f,
                "sprint length {length_days} days out of range [{SPRINT_MIN_DAYS},{SPRINT_MAX_DAYS}]"
            ),
            Violation::InvalidTaskHistory { task_id, reason } => {
                write!(f, "task {task_id}: invalid history: {reason}")
            }
        }
    }
}

/// Checks one backlog item: identifier shape, factor resolution, score
/// ranges, and per-factor uniqueness. An empty result means the item is ok.
pub fn validate_item(item: &PblItem, catalog: &FactorCatalog) -> Vec<Violation> {
    let mut violations = Vec::new();
    if !is_valid_entity_id(&item.id) {
        violations.push(Violation::BadIdentifier {
            subject: "item".to_string(),
            id: item.id.clone(),
        });
    }
    let mut seen_pcl = BTreeSet::new();
    for score in &item.pcl_scores {
        if !seen_pcl.insert(score.factor_id.as_str()) {
            violations.push(Violation::DuplicateFactorScore {
                item_id: item.id.clone(),
                kind: FactorKind::Pcl,
                factor_id: score.factor_id.clone(),
            });
        }
        if catalog.find(FactorKind::Pcl, &score.factor_id).is_none() {
            violations.push(Violation::UnknownFactor {
                item_id: item.id.clone(),
                kind: FactorKind::Pcl,
                factor_id: score.factor_id.clone(),
            });
        }
        if !Rating::in_range(score.value.get()) {
            violations.push(Violation::RatingOutOfRange {
                item_id: item.id.clone(),
                factor_id: score.factor_id.clone(),
                value: score.value.get(),
            });
        }
        if !Weight::in_range(score.weight.get()) {
            violations.push(Violation::WeightOutOfRange {
                item_id: item.id.clone(),
                factor_id: score.factor_id.clone(),
                value: score.weight.get(),
            });
        }
    }
    let mut seen_tar = BTreeSet::new();
    for score in &item.tar_scores {
        if !seen_tar.insert(score.factor_id.as_str()) {
            violations.push(Violation::DuplicateFactorScore {
                item_id: item.id.clone(),
                kind: FactorKind::Tar,
                factor_id: score.factor_id.clone(),
            });
        }
        if catalog.find(FactorKind::Tar, &score.factor_id).is_none() {
            violations.push(Violation::UnknownFactor {
                item_id: item.id.clone(),
                kind: FactorKind::Tar,
                factor_id: score.factor_id.clone(),
            });
        }
        if !Rating::in_range(score.value.get()) {
            violations.push(Violation::RatingOutOfRange {
                item_id: item.id.clone(),
                factor_id: score.factor_id.clone(),
                value: score.value.get(),
            });
        }
    }
    violations
}

/// Checks a whole sprint: every item, plus sprint-level and task-level
/// rules (length bounds, unique ids, resolvable task references, estimate
/// timeboxes, coherent task histories).
pub fn validate_sprint(sprint: &Sprint, catalog: &FactorCatalog) -> Vec<Violation> {
    let mut violations = Vec::new();
    for (subject, id) in [("sprint", &sprint.id), ("team", &sprint.team_id)] {
        if !is_valid_entity_id(id) {
            violations.push(Violation::BadIdentifier {
                subject: subject.to_string(),
                id: id.clone(),
            });
        }
    }
    if !(SPRINT_MIN_DAYS..=SPRINT_MAX_DAYS).contains(&sprint.length_days) {
        violations.push(Violation::SprintLengthOutOfRange {
            length_days: sprint.length_days,
        });
    }
    let mut item_ids = BTreeSet::new();
    for item in &sprint.items {
        if !item_ids.insert(item.id.as_str()) {
            violations.push(Violation::DuplicateItemId {
                item_id: item.id.clone(),
            });
        }
        violations.extend(validate_item(item, catalog));
    }
    let mut task_ids = BTreeSet::new();
    let policy = TransitionPolicy::default();
    for task in &sprint.tasks {
        if !is_valid_entity_id(&task.id) {
            violations.push(Violation::BadIdentifier {
                subject: "task".to_string(),
                id: task.id.clone(),
            });
        }
        if !task_ids.insert(task.id.as_str()) {
            violations.push(Violation::DuplicateTaskId {
                task_id: task.id.clone(),
            });
        }
        if !item_ids.contains(task.pbl_item_id.as_str()) {
            violations.push(Violation::DanglingPblItemRef {
                task_id: task.id.clone(),
                pbl_item_id: task.pbl_item_id.clone(),
            });
        }
        if !TASK_ESTIMATE_HOURS.contains(&task.estimate_hours) {
            violations.push(Violation::BadEstimate {
                task_id: task.id.clone(),
                hours: task.estimate_hours,
            });
        }
        if let Err(err) = validate_history(task, sprint.length_days, policy) {
            violations.push(Violation::InvalidTaskHistory {
                task_id: task.id.clone(),
                reason: err.to_string(),
            });
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_catalog;
    use crate::model::{PclScore, Task, TarScore};
    use chrono::NaiveDate;

    fn dec(s: &str) -> Decimal2 {
        s.parse().unwrap()
    }

    fn raw_pcl(factor: &str, value: &str, weight: &str) -> PclScore {
        PclScore {
            factor_id: factor.to_string(),
            value: Rating::unchecked(dec(value)),
            weight: Weight::unchecked(dec(weight)),
        }
    }

    fn base_sprint() -> Sprint {
        Sprint::new(
            "S1",
            "alpha",
            NaiveDate::from_ymd_opt(2026, 3, 2).unwrap(),
            15,
        )
        .unwrap()
    }

    #[test]
    fn valid_item_passes() {
        let catalog = default_catalog();
        let mut item = PblItem::new("PBL1", "ok item");
        item.pcl_scores.push(raw_pcl("CBLBP", "5", "1"));
        item.tar_scores.push(TarScore {
            factor_id: "BC".to_string(),
            value: Rating::unchecked(dec("4")),
        });
        assert!(validate_item(&item, &catalog).is_empty());
    }

    #[test]
    fn rating_out_of_range_is_a_violation_not_a_fault() {
        let catalog = default_catalog();
        let mut item = PblItem::new("PBL1", "bad rating");
        item.pcl_scores.push(raw_pcl("CBLBP", "5.5", "1"));
        let violations = validate_item(&item, &catalog);
        assert_eq!(violations.len(), 1);
        assert!(violations[0].to_string().contains("out of range [1,5]"));
    }

    #[test]
    fn zero_weight_is_a_violation() {
        let catalog = default_catalog();
        let mut item = PblItem::new("PBL1", "bad weight");
        item.pcl_scores.push(raw_pcl("CBLBP", "3", "0"));
        let violations = validate_item(&item, &catalog);
        assert_eq!(violations.len(), 1);
        assert!(violations[0].to_string().contains("out of range (0,1]"));
    }

    #[test]
    fn unknown_and_wrong_kind_factors_are_flagged() {
        let catalog = default_catalog();
        let mut item = PblItem::new("PBL1", "unknown factor");
        item.pcl_scores.push(raw_pcl("ZZZZ", "3", "1"));
        // BC is a TAR factor, not a PCL factor.
        item.pcl_scores.push(raw_pcl("BC", "3", "1"));
        let violations = validate_item(&item, &catalog);
        assert_eq!(violations.len(), 2);
        assert!(violations
            .iter()
            .all(|v| matches!(v, Violation::UnknownFactor { .. })));
    }

    #[test]
    fn duplicate_factor_scores_are_flagged() {
        let catalog = default_catalog();
        let mut item = PblItem::new("PBL1", "dup");
        item.pcl_scores.push(raw_pcl("CBLBP", "3", "1"));
        item.pcl_scores.push(raw_pcl("CBLBP", "4", "0.5"));
        let violations = validate_item(&item, &catalog);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::DuplicateFactorScore { .. })));
    }

    #[test]
    fn dangling_task_reference_is_flagged() {
        let catalog = default_catalog();
        let mut sprint = base_sprint();
        sprint.items.push(PblItem::new("PBL1", "item"));
        sprint
            .tasks
            .push(Task::new("T1", "NOPE", 3, true).unwrap());
        let violations = validate_sprint(&sprint, &catalog);
        assert_eq!(violations.len(), 1);
        assert!(violations[0].to_string().contains("dangling pbl_item_id"));
    }

    #[test]
    fn duplicate_item_ids_are_flagged() {
        let catalog = default_catalog();
        let mut sprint = base_sprint();
        sprint.items.push(PblItem::new("PBL1", "one"));
        sprint.items.push(PblItem::new("PBL1", "two"));
        let violations = validate_sprint(&sprint, &catalog);
        assert_eq!(violations.len(), 1);
        assert!(violations[0].to_string().contains("duplicate item id"));
    }

    #[test]
    fn sprint_length_bound_is_flagged() {
        let catalog = default_catalog();
        let mut sprint = base_sprint();
        sprint.length_days = 60;
        let violations = validate_sprint(&sprint, &catalog);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::SprintLengthOutOfRange { .. })));
    }

    #[test]
    fn status_history_mismatch_is_flagged() {
        let catalog = default_catalog();
        let mut sprint = base_sprint();
        sprint.items.push(PblItem::new("PBL1", "item"));
        let mut task = Task::new("T1", "PBL1", 6, true).unwrap();
        task.status = crate::workflow::TaskStatus::Done;
        sprint.tasks.push(task);
        let violations = validate_sprint(&sprint, &catalog);
        assert_eq!(violations.len(), 1);
        assert!(matches!(
            violations[0],
            Violation::InvalidTaskHistory { .. }
        ));
    }
}
