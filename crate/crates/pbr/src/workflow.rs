//! Task board state machine and burndown series.
//!
//! Tasks move across five statuses. The forward path is
//! `not done -> in progress -> in review -> quality assurance -> done`,
//! with a shortcut from review straight to done for tasks that cannot be
//! tested (a data adapter, say). One backward edge — quality assurance back
//! to in progress — models testing that finds bugs and sends the task back;
//! it can be disabled through [`TransitionPolicy`] and is excluded from
//! forward-path reachability.
//!
//! Every move is recorded as a [`TaskEvent`]. A task's `status` field is
//! always the left fold of its history, so replaying an event log
//! reproduces the board exactly.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::model::{Sprint, Task};

/// The five board statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskStatus {
    NotDone,
    InProgress,
    InReview,
    QualityAssurance,
    Done,
}

pub const ALL_STATUSES: [TaskStatus; 5] = [
    TaskStatus::NotDone,
    TaskStatus::InProgress,
    TaskStatus::InReview,
    TaskStatus::QualityAssurance,
    TaskStatus::Done,
];

impl TaskStatus {
    pub fn label(self) -> &'static str {
        match self {
            TaskStatus::NotDone => "not done",
            TaskStatus::InProgress => "in progress",
            TaskStatus::InReview => "in review",
            TaskStatus::QualityAssurance => "quality assurance",
            TaskStatus::Done => "done",
        }
    }

    /// Command-line token, e.g. `in-progress`.
    pub fn token(self) -> &'static str {
        match self {
            TaskStatus::NotDone => "not-done",
            TaskStatus::InProgress => "in-progress",
            TaskStatus::InReview => "in-review",
            TaskStatus::QualityAssurance => "quality-assurance",
            TaskStatus::Done => "done",
        }
    }
}

impl fmt::Display for TaskStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TaskStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace([' ', '_'], "-");
        ALL_STATUSES
            .into_iter()
            .find(|st| st.token() == norm)
            .ok_or_else(|| format!("unknown task status {s:?}"))
    }
}

/// One recorded move of one task on the board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskEvent {
    pub task_id: String,
    /// Day within the sprint, 0-based; must stay below the sprint length.
    pub day_index: u32,
    pub from: TaskStatus,
    pub to: TaskStatus,
    pub actor: String,
}

/// Condition attached to a transition edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitionCondition {
    Always,
    TestableOnly,
    NonTestableOnly,
}

/// One edge of the transition table. `forward` is false only for the reopen
/// edge, which is ignored by forward-path reachability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub from: TaskStatus,
    pub to: TaskStatus,
    pub condition: TransitionCondition,
    pub forward: bool,
}

/// Board configuration. `allow_reopen` controls the quality-assurance back
/// to in-progress edge; it is on by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitionPolicy {
    pub allow_reopen: bool,
}

impl Default for TransitionPolicy {
    fn default() -> Self {
        TransitionPolicy { allow_reopen: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkflowError {
    #[error("illegal transition from '{from}' to '{to}'")]
    IllegalTransition { from: TaskStatus, to: TaskStatus },
    #[error("event is from status '{found}' but task is at '{expected}'")]
    StaleFromStatus {
        expected: TaskStatus,
        found: TaskStatus,
    },
    #[error("event addresses task {event_task_id:?}, not task {task_id:?}")]
    TaskMismatch {
        task_id: String,
        event_task_id: String,
    },
    #[error("invalid history for task {task_id:?}: {reason}")]
    InvalidHistory { task_id: String, reason: String },
}

/// The full transition table under the given policy.
pub fn legal_transitions(policy: TransitionPolicy) -> Vec<Transition> {
    use TaskStatus::*;
    use TransitionCondition::*;
    let mut table = vec![
        Transition { from: NotDone, to: InProgress, condition: Always, forward: true },
        Transition { from: InProgress, to: InReview, condition: Always, forward: true },
        Transition { from: InReview, to: QualityAssurance, condition: TestableOnly, forward: true },
        Transition { from: InReview, to: Done, condition: NonTestableOnly, forward: true },
        Transition { from: QualityAssurance, to: Done, condition: Always, forward: true },
    ];
    if policy.allow_reopen {
        table.push(Transition {
            from: QualityAssurance,
            to: InProgress,
            condition: Always,
            forward: false,
        });
    }
    table
}

/// Is `from -> to` legal for a task of the given testability?
pub fn transition_allowed(
    from: TaskStatus,
    to: TaskStatus,
    testable: bool,
    policy: TransitionPolicy,
) -> bool {
    legal_transitions(policy).iter().any(|t| {
        t.from == from
            && t.to == to
            && match t.condition {
                TransitionCondition::Always => true,
                TransitionCondition::TestableOnly => testable,
                TransitionCondition::NonTestableOnly => !testable,
            }
    })
}

/// Statuses reachable in one legal step; used for error hints.
pub fn legal_next_statuses(
    from: TaskStatus,
    testable: bool,
    policy: TransitionPolicy,
) -> Vec<TaskStatus> {
    ALL_STATUSES
        .into_iter()
        .filter(|&to| transition_allowed(from, to, testable, policy))
        .collect()
}

/// Applies one event to a task, returning the updated task. Fails with
/// [`WorkflowError::StaleFromStatus`] when the event does not start at the
/// task's current status and [`WorkflowError::IllegalTransition`] when the
/// move is not in the transition table.
pub fn apply_event(
    task: &Task,
    event: TaskEvent,
    policy: TransitionPolicy,
) -> Result<Task, WorkflowError> {
    if event.task_id != task.id {
        return Err(WorkflowError::TaskMismatch {
            task_id: task.id.clone(),
            event_task_id: event.task_id,
        });
    }
    if event.from != task.status {
        return Err(WorkflowError::StaleFromStatus {
            expected: task.status,
            found: event.from,
        });
    }
    if !transition_allowed(event.from, event.to, task.testable, policy) {
        return Err(WorkflowError::IllegalTransition {
            from: event.from,
            to: event.to,
        });
    }
    let mut updated = task.clone();
    updated.status = event.to;
    updated.history.push(event);
    Ok(updated)
}

/// Folds an event history into the status it ends at. Histories start from
/// `NotDone`; the events' own `to` fields drive the fold.
pub fn replay_status(history: &[TaskEvent]) -> TaskStatus {
    history.last().map_or(TaskStatus::NotDone, |e| e.to)
}

/// Checks that a task's history is a coherent record: a connected chain of
/// legal moves with in-range, non-decreasing days, ending at the task's
/// recorded status.
pub fn validate_history(
    task: &Task,
    length_days: u32,
    policy: TransitionPolicy,
) -> Result<(), WorkflowError> {
    let invalid = |reason: String| WorkflowError::InvalidHistory {
        task_id: task.id.clone(),
        reason,
    };
    let mut current = TaskStatus::NotDone;
    let mut last_day = 0u32;
    for (i, event) in task.history.iter().enumerate() {
        if event.task_id != task.id {
            return Err(invalid(format!(
                "event {i} addresses task {:?}",
                event.task_id
            )));
        }
        if event.from != current {
            return Err(invalid(format!(
                "event {i} moves from '{}' but task was at '{current}'",
                event.from
            )));
        }
        if !transition_allowed(event.from, event.to, task.testable, policy) {
            return Err(invalid(format!(
                "event {i} is an illegal move '{}' -> '{}'",
                event.from, event.to
            )));
        }
        if event.day_index >= length_days {
            return Err(invalid(format!(
                "event {i} on day {} outside sprint of {length_days} days",
                event.day_index
            )));
        }
        if event.day_index < last_day {
            return Err(invalid(format!(
                "event {i} on day {} precedes an earlier event on day {last_day}",
                event.day_index
            )));
        }
        current = event.to;
        last_day = event.day_index;
    }
    if task.status != current {
        return Err(invalid(format!(
            "recorded status '{}' does not match history fold '{current}'",
            task.status
        )));
    }
    if task.added_day >= length_days {
        return Err(invalid(format!(
            "added on day {} outside sprint of {length_days} days",
            task.added_day
        )));
    }
    if let Some(first) = task.history.first() {
        if first.day_index < task.added_day {
            return Err(invalid(format!(
                "first event on day {} precedes the task entering scope on day {}",
                first.day_index, task.added_day
            )));
        }
    }
    Ok(())
}

/// Remaining estimated hours at the end of each sprint day.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurndownSeries {
    pub points: Vec<BurndownPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurndownPoint {
    pub day: u32,
    pub remaining_hours: u32,
}

impl BurndownSeries {
    /// Total scope at the start of the sprint, before any work: the sum of
    /// estimates over tasks that were in scope on day 0.
    pub fn initial_total(sprint: &Sprint) -> u32 {
        sprint
            .tasks
            .iter()
            .filter(|t| t.added_day == 0)
            .map(|t| u32::from(t.estimate_hours))
            .sum()
    }
}

/// Computes the burndown: one point per sprint day, where day `d` counts the
/// estimates of every task in scope by `d` and not yet done by the end of
/// `d`. Tasks added mid-sprint join the series on their `added_day`, which
/// re-baselines the remaining work from that day.
pub fn burndown(sprint: &Sprint) -> Result<BurndownSeries, WorkflowError> {
    let policy = TransitionPolicy::default();
    for task in &sprint.tasks {
        validate_history(task, sprint.length_days, policy)?;
    }
    let mut points = Vec::with_capacity(sprint.length_days as usize);
    for day in 0..sprint.length_days {
        let mut remaining = 0u32;
        for task in &sprint.tasks {
            if task.added_day > day {
                continue;
            }
            let status = task
                .history
                .iter()
                .take_while(|e| e.day_index <= day)
                .last()
                .map_or(TaskStatus::NotDone, |e| e.to);
            if status != TaskStatus::Done {
                remaining += u32::from(task.estimate_hours);
            }
        }
        points.push(BurndownPoint {
            day,
            remaining_hours: remaining,
        });
    }
    Ok(BurndownSeries { points })
}
