//! Domain types: factor catalogs, scores, backlog items, sprints, and teams.
//!
//! All values here are plain immutable data. Mutation happens by building new
//! values (or via the small upsert helpers on [`PblItem`]), which keeps them
//! safe to share across threads without locking. Range rules are enforced by
//! the checked constructors and re-checked structurally by
//! [`crate::validate`], so that entities loaded from disk can be inspected
//! before they are trusted.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decimal::Decimal2;
use crate::workflow::{TaskEvent, TaskStatus};

/// Shortest and longest sprint lengths accepted, in days.
pub const SPRINT_MIN_DAYS: u32 = 5;
pub const SPRINT_MAX_DAYS: u32 = 30;

/// Task estimates are timeboxed to a half day or a full day.
pub const TASK_ESTIMATE_HOURS: [u8; 2] = [3, 6];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("rating {0} out of range [1,5]")]
    RatingOutOfRange(Decimal2),
    #[error("weight {0} out of range (0,1]")]
    WeightOutOfRange(Decimal2),
    #[error("estimate of {0} hours is not a half day (3) or full day (6)")]
    BadEstimate(u8),
    #[error("sprint length {0} days out of range [{SPRINT_MIN_DAYS},{SPRINT_MAX_DAYS}]")]
    SprintLengthOutOfRange(u32),
    #[error("factor {0:?} already defined in catalog")]
    DuplicateFactor(String),
    #[error("factor id {0:?} must be 2-6 uppercase letters")]
    BadFactorId(String),
}

// ---------------------------------------------------------------------------
// Factors
// ---------------------------------------------------------------------------

/// The two families of assessment factors: complexity factors scored when a
/// sprint is planned, and test-assessment factors scored once testing is done.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Pcl,
    Tar,
}

impl FactorKind {
    pub fn label(self) -> &'static str {
        match self {
            FactorKind::Pcl => "PCL",
            FactorKind::Tar => "TAR",
        }
    }
}

/// One catalog entry: a short uppercase code plus a human description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDefinition {
    pub id: String,
    pub kind: FactorKind,
    pub name: String,
    pub description: String,
}

impl FactorDefinition {
    pub fn new(
        id: impl Into<String>,
        kind: FactorKind,
        name: impl Into<String>,
        description: impl Into<String>,
    ) -> Self {
        FactorDefinition {
            id: id.into(),
            kind,
            name: name.into(),
            description: description.into(),
        }
    }
}

/// Returns true when `id` is a well-formed factor code (2-6 uppercase letters).
pub fn is_valid_factor_id(id: &str) -> bool {
    (2..=6).contains(&id.len()) && id.bytes().all(|b| b.is_ascii_uppercase())
}

/// Returns true when `id` is acceptable as an entity identifier (teams,
/// sprints, items, tasks). Identifiers end up in file names, so the charset
/// is restricted accordingly.
pub fn is_valid_entity_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= 64
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
        && id.as_bytes()[0].is_ascii_alphanumeric()
}

/// The ordered factor catalog a team scores against. Extensible: teams may
/// append context-driven factors as long as ids stay unique per kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCatalog {
    pub pcl_factors: Vec<FactorDefinition>,
    pub tar_factors: Vec<FactorDefinition>,
}

impl FactorCatalog {
    /// Looks up a factor of the given kind by id.
    pub fn find(&self, kind: FactorKind, id: &str) -> Option<&FactorDefinition> {
        self.factors(kind).iter().find(|f| f.id == id)
    }

    pub fn factors(&self, kind: FactorKind) -> &[FactorDefinition] {
        match kind {
            FactorKind::Pcl => &self.pcl_factors,
            FactorKind::Tar => &self.tar_factors,
        }
    }

    /// Adds a factor, rejecting malformed ids and ids already present in the
    /// catalog. Ids are unique across both kinds so a score's factor
    /// reference is never ambiguous.
    pub fn add_factor(&mut self, def: FactorDefinition) -> Result<(), DomainError> {
        if !is_valid_factor_id(&def.id) {
            return Err(DomainError::BadFactorId(def.id));
        }
        if self.find(FactorKind::Pcl, &def.id).is_some()
            || self.find(FactorKind::Tar, &def.id).is_some()
        {
            return Err(DomainError::DuplicateFactor(def.id));
        }
        match def.kind {
            FactorKind::Pcl => self.pcl_factors.push(def),
            FactorKind::Tar => self.tar_factors.push(def),
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Scores
// ---------------------------------------------------------------------------

/// A factor score in [1, 5], resolution 0.01.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rating(Decimal2);

impl Rating {
    pub const MIN: Decimal2 = Decimal2::from_int(1);
    pub const MAX: Decimal2 = Decimal2::from_int(5);

    /// Checked constructor; use this everywhere ratings enter the system.
    pub fn new(value: Decimal2) -> Result<Self, DomainError> {
        if Self::in_range(value) {
            Ok(Rating(value))
        } else {
            Err(DomainError::RatingOutOfRange(value))
        }
    }

    /// Unchecked constructor for data that will be run through validation,
    /// e.g. files read back from disk.
    pub const fn unchecked(value: Decimal2) -> Self {
        Rating(value)
    }

    pub const fn get(self) -> Decimal2 {
        self.0
    }

    pub fn in_range(value: Decimal2) -> bool {
        Self::MIN <= value && value <= Self::MAX
    }
}

/// A relative-importance multiplier in (0, 1], resolution 0.01.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Decimal2);

impl Weight {
    pub const MAX: Decimal2 = Decimal2::ONE;

    pub fn new(value: Decimal2) -> Result<Self, DomainError> {
        if Self::in_range(value) {
            Ok(Weight(value))
        } else {
            Err(DomainError::WeightOutOfRange(value))
        }
    }

    pub const fn unchecked(value: Decimal2) -> Self {
        Weight(value)
    }

    pub const fn get(self) -> Decimal2 {
        self.0
    }

    pub fn in_range(value: Decimal2) -> bool {
        Decimal2::ZERO < value && value <= Self::MAX
    }
}

/// A complexity score for one factor of one backlog item: the factor value
/// and the weight balancing its relative importance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PclScore {
    pub factor_id: String,
    pub value: Rating,
    pub weight: Weight,
}

/// A test-assessment score for one factor of one backlog item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TarScore {
    pub factor_id: String,
    pub value: Rating,
}

// ---------------------------------------------------------------------------
// Backlog items, tasks, sprints, teams
// ---------------------------------------------------------------------------

/// One product backlog item: the granular testable entity that gets scored.
///
/// Complexity scores are assigned at planning; test-assessment scores only
/// once testing is done, so an item may legitimately carry a partial score
/// set mid-sprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PblItem {
    pub id: String,
    pub title: String,
    #[serde(default)]
    pub story: String,
    #[serde(default)]
    pub pcl_scores: Vec<PclScore>,
    #[serde(default)]
    pub tar_scores: Vec<TarScore>,
}

impl PblItem {
    pub fn new(id: impl Into<String>, title: impl Into<String>) -> Self {
        PblItem {
            id: id.into(),
            title: title.into(),
            story: String::new(),
            pcl_scores: Vec::new(),
            tar_scores: Vec::new(),
        }
    }

    pub fn with_story(mut self, story: impl Into<String>) -> Self {
        self.story = story.into();
        self
    }

    /// Upserts a complexity score, returning the previous one if the factor
    /// was already scored. Re-rating overwrites; callers that need an audit
    /// trail record the returned value.
    pub fn set_pcl_score(
        &mut self,
        factor_id: &str,
        value: Rating,
        weight: Weight,
    ) -> Option<PclScore> {
        let new = PclScore {
            factor_id: factor_id.to_string(),
            value,
            weight,
        };
        match self.pcl_scores.iter_mut().find(|s| s.factor_id == factor_id) {
            Some(slot) => Some(std::mem::replace(slot, new)),
            None => {
                self.pcl_scores.push(new);
                None
            }
        }
    }

    /// Upserts a test-assessment score; see [`PblItem::set_pcl_score`].
    pub fn set_tar_score(&mut self, factor_id: &str, value: Rating) -> Option<TarScore> {
        let new = TarScore {
            factor_id: factor_id.to_string(),
            value,
        };
        match self.tar_scores.iter_mut().find(|s| s.factor_id == factor_id) {
            Some(slot) => Some(std::mem::replace(slot, new)),
            None => {
                self.tar_scores.push(new);
                None
            }
        }
    }
}

/// A timeboxed unit of work (half day or full day) moving across the board.
///
/// `status` is always the fold of `history` over the initial `NotDone`
/// state; [`crate::workflow::apply_event`] maintains that equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub id: String,
    pub pbl_item_id: String,
    #[serde(default)]
    pub description: String,
    pub estimate_hours: u8,
    pub testable: bool,
    /// Sprint day the task entered scope; 0 unless added mid-sprint.
    #[serde(default)]
    pub added_day: u32,
    pub status: TaskStatus,
    #[serde(default)]
    pub history: Vec<TaskEvent>,
}

impl Task {
    pub fn new(
        id: impl Into<String>,
        pbl_item_id: impl Into<String>,
        estimate_hours: u8,
        testable: bool,
    ) -> Result<Self, DomainError> {
        if !TASK_ESTIMATE_HOURS.contains(&estimate_hours) {
            return Err(DomainError::BadEstimate(estimate_hours));
        }
        Ok(Task {
            id: id.into(),
            pbl_item_id: pbl_item_id.into(),
            description: String::new(),
            estimate_hours,
            testable,
            added_day: 0,
            status: TaskStatus::NotDone,
            history: Vec::new(),
        })
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }

    pub fn with_added_day(mut self, day: u32) -> Self {
        self.added_day = day;
        self
    }
}

/// A dated, team-owned collection of backlog items and tasks; the unit over
/// which the sprint rating is computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sprint {
    pub id: String,
    pub team_id: String,
    pub start_date: NaiveDate,
    pub length_days: u32,
    #[serde(default)]
    pub items: Vec<PblItem>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

impl Sprint {
    pub fn new(
        id: impl Into<String>,
        team_id: impl Into<String>,
        start_date: NaiveDate,
        length_days: u32,
    ) -> Result<Self, DomainError> {
        if !(SPRINT_MIN_DAYS..=SPRINT_MAX_DAYS).contains(&length_days) {
            return Err(DomainError::SprintLengthOutOfRange(length_days));
        }
        Ok(Sprint {
            id: id.into(),
            team_id: team_id.into(),
            start_date,
            length_days,
            items: Vec::new(),
            tasks: Vec::new(),
        })
    }

    pub fn item(&self, id: &str) -> Option<&PblItem> {
        self.items.iter().find(|i| i.id == id)
    }

    pub fn item_mut(&mut self, id: &str) -> Option<&mut PblItem> {
        self.items.iter_mut().find(|i| i.id == id)
    }

    pub fn task(&self, id: &str) -> Option<&Task> {
        self.tasks.iter().find(|t| t.id == id)
    }

    pub fn task_mut(&mut self, id: &str) -> Option<&mut Task> {
        self.tasks.iter_mut().find(|t| t.id == id)
    }

    /// Last calendar day covered by the sprint.
    pub fn end_date(&self) -> NaiveDate {
        self.start_date + chrono::Days::new(u64::from(self.length_days) - 1)
    }
}

/// A scrum team and the chronological list of sprints it has run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Team {
    pub id: String,
    pub name: String,
    #[serde(default)]
    pub sprint_ids: Vec<String>,
}

impl Team {
    pub fn new(id: impl Into<String>, name: impl Into<String>) -> Self {
        Team {
            id: id.into(),
            name: name.into(),
            sprint_ids: Vec::new(),
        }
    }
}
