//! File-based repository.
//!
//! A repository is a directory of canonical, diff-friendly files:
//!
//! ```text
//! root/
//!   VERSION                 repository layout version
//!   catalog.json            the factor catalog
//!   teams/<id>.json         one team per file
//!   sprints/<id>.json       items and task definitions (no task state)
//!   events/<sprint>.ndjson  append-only task event journal, one per line
//!   audit/<sprint>.ndjson   append-only rating audit trail
//! ```
//!
//! Task state lives only in the event journal: sprint files carry task
//! definitions, and loading a sprint replays its journal to rebuild every
//! task's status and history. Saving a sprint appends whatever history the
//! journal does not have yet; it never rewrites journal bytes, so a save
//! that would require editing history is rejected instead.
//!
//! Canonical form: UTF-8 JSON with sorted keys, two-space indent, decimals
//! as minimal-digit strings, LF endings, trailing newline. Loading and
//! re-saving any entity is byte-identical. Writers take an advisory
//! exclusive lock on `root/.lock` and replace files atomically via a
//! temporary file and rename; readers take no lock.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::default_catalog;
use crate::decimal::Decimal2;
use crate::metrics::{compute_pbr, MetricError, SprintMetrics, Strictness};
use crate::model::{FactorCatalog, FactorKind, Sprint, Task, Team};
use crate::validate::{validate_sprint, Violation};
use crate::workflow::{replay_status, TaskEvent, TaskStatus, TransitionPolicy};

/// Version stamped into every entity file and the repository VERSION file.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("repository already initialized at {0}")]
    AlreadyInitialized(PathBuf),
    #[error("directory {0} is not empty")]
    NotEmpty(PathBuf),
    #[error("no repository at {0} (missing VERSION)")]
    NotInitialized(PathBuf),
    #[error("{kind} {id:?} not found")]
    NotFound { kind: &'static str, id: String },
    #[error("{path}: schema version {found} is newer than supported version {supported}")]
    SchemaMismatch {
        path: PathBuf,
        found: u32,
        supported: u32,
    },
    #[error("validation failed:\n{}", format_violations(.0))]
    ValidationFailed(Vec<Violation>),
    #[error("sprint {sprint_id:?}, task {task_id:?}: {reason} (the event journal is append-only)")]
    HistoryConflict {
        sprint_id: String,
        task_id: String,
        reason: String,
    },
    #[error("event day {day} outside sprint of {length_days} days")]
    DayOutOfRange { day: u32, length_days: u32 },
    #[error("event day {day} precedes the task's latest event on day {latest}")]
    DayBeforeLatest { day: u32, latest: u32 },
    #[error(transparent)]
    Workflow(#[from] crate::workflow::WorkflowError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("repository is locked by another writer ({0})")]
    Locked(PathBuf),
    #[error("{path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("  - {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl StoreError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        StoreError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Renders any serializable value in the repository's canonical JSON form.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    // Routing through Value sorts object keys (its map is a BTreeMap).
    let value = serde_json::to_value(value).expect("entity serializes to JSON");
    let mut out = serde_json::to_string_pretty(&value).expect("JSON value renders");
    out.push('\n');
    out
}

fn compact_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("entity serializes to JSON");
    serde_json::to_string(&value).expect("JSON value renders")
}

// ---------------------------------------------------------------------------
// File documents
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CatalogDoc {
    schema_version: u32,
    #[serde(flatten)]
    catalog: FactorCatalog,
}

#[derive(Serialize, Deserialize)]
struct TeamDoc {
    schema_version: u32,
    #[serde(flatten)]
    team: Team,
}

/// The static part of a task; board state is derived from the journal.
#[derive(Serialize, Deserialize)]
struct TaskDef {
    id: String,
    pbl_item_id: String,
    #[serde(default)]
    description: String,
    estimate_hours: u8,
    testable: bool,
    #[serde(default)]
    added_day: u32,
}

impl TaskDef {
    fn from_task(task: &Task) -> Self {
        TaskDef {
            id: task.id.clone(),
            pbl_item_id: task.pbl_item_id.clone(),
            description: task.description.clone(),
            estimate_hours: task.estimate_hours,
            testable: task.testable,
            added_day: task.added_day,
        }
    }

    fn into_task(self) -> Task {
        Task {
            id: self.id,
            pbl_item_id: self.pbl_item_id,
            description: self.description,
            estimate_hours: self.estimate_hours,
            testable: self.testable,
            added_day: self.added_day,
            status: TaskStatus::NotDone,
            history: Vec::new(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SprintDoc {
    schema_version: u32,
    id: String,
    team_id: String,
    start_date: chrono::NaiveDate,
    length_days: u32,
    items: Vec<crate::model::PblItem>,
    tasks: Vec<TaskDef>,
}

#[derive(Serialize, Deserialize)]
struct EventRecord {
    schema_version: u32,
    #[serde(flatten)]
    event: TaskEvent,
}

/// One line of the rating audit trail: who re-rated what, and what the
/// score was before.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatingAudit {
    pub seq: u64,
    pub item_id: String,
    pub kind: FactorKind,
    pub factor_id: String,
    pub value: Decimal2,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<Decimal2>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prev_value: Option<Decimal2>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prev_weight: Option<Decimal2>,
}

#[derive(Serialize, Deserialize)]
struct AuditRecord {
    schema_version: u32,
    #[serde(flatten)]
    audit: RatingAudit,
}

// ---------------------------------------------------------------------------
// Locking
// ---------------------------------------------------------------------------

/// Advisory single-writer lock, released on drop (and by the OS if the
/// process dies).
struct WriteLock {
    _file: File,
}

impl WriteLock {
    fn acquire(root: &Path) -> Result<Self, StoreError> {
        let path = root.join(".lock");
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .map_err(|e| StoreError::io(&path, e))?;
        match file.try_lock() {
            Ok(()) => Ok(WriteLock { _file: file }),
            Err(std::fs::TryLockError::WouldBlock) => Err(StoreError::Locked(path)),
            Err(std::fs::TryLockError::Error(e)) => Err(StoreError::io(&path, e)),
        }
    }
}

// ---------------------------------------------------------------------------
// Repository
// ---------------------------------------------------------------------------

/// Handle to a repository directory. Cheap to clone; all state is on disk.
#[derive(Debug, Clone)]
pub struct Repository {
    root: PathBuf,
}

impl Repository {
    /// Creates the directory layout, the VERSION stamp, and the default
    /// catalog. The target must be an empty or absent directory.
    pub fn init(root: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let root: PathBuf = root.into();
        if root.join("VERSION").exists() {
            return Err(StoreError::AlreadyInitialized(root));
        }
        if root.exists() {
            let mut entries = fs::read_dir(&root).map_err(|e| StoreError::io(&root, e))?;
            if entries.next().is_some() {
                return Err(StoreError::NotEmpty(root));
            }
        }
        for dir in ["teams", "sprints", "events", "audit"] {
            let path = root.join(dir);
            fs::create_dir_all(&path).map_err(|e| StoreError::io(&path, e))?;
        }
        let repo = Repository { root };
        let _lock = WriteLock::acquire(&repo.root)?;
        repo.write_atomic(&repo.root.join("VERSION"), format!("{SCHEMA_VERSION}\n"))?;
        repo.write_catalog(&default_catalog())?;
        Ok(repo)
    }

    /// Opens an existing repository, rejecting layouts newer than this
    /// build understands.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let root: PathBuf = root.into();
        let version_path = root.join("VERSION");
        if !version_path.exists() {
            return Err(StoreError::NotInitialized(root));
        }
        let raw = fs::read_to_string(&version_path).map_err(|e| StoreError::io(&version_path, e))?;
        let version: u32 = raw.trim().parse().map_err(|_| StoreError::Corrupt {
            path: version_path.clone(),
            reason: format!("unreadable version {raw:?}"),
        })?;
        if version > SCHEMA_VERSION {
            return Err(StoreError::SchemaMismatch {
                path: version_path,
                found: version,
                supported: SCHEMA_VERSION,
            });
        }
        Ok(Repository { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn catalog_path(&self) -> PathBuf {
        self.root.join("catalog.json")
    }

    fn team_path(&self, id: &str) -> PathBuf {
        self.root.join("teams").join(format!("{id}.json"))
    }

    fn sprint_path(&self, id: &str) -> PathBuf {
        self.root.join("sprints").join(format!("{id}.json"))
    }

    fn events_path(&self, sprint_id: &str) -> PathBuf {
        self.root.join("events").join(format!("{sprint_id}.ndjson"))
    }

    fn audit_path(&self, sprint_id: &str) -> PathBuf {
        self.root.join("audit").join(format!("{sprint_id}.ndjson"))
    }

    // -- low-level reading and writing ------------------------------------

    fn write_atomic(&self, path: &Path, contents: String) -> Result<(), StoreError> {
        let tmp = path.with_extension("tmp");
        let mut file = File::create(&tmp).map_err(|e| StoreError::io(&tmp, e))?;
        file.write_all(contents.as_bytes())
            .map_err(|e| StoreError::io(&tmp, e))?;
        file.sync_all().map_err(|e| StoreError::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| StoreError::io(path, e))?;
        Ok(())
    }

    fn read_doc<T: DeserializeOwned>(&self, path: &Path) -> Result<T, StoreError> {
        let raw = fs::read_to_string(path).map_err(|e| StoreError::io(path, e))?;
        let value: serde_json::Value =
            serde_json::from_str(&raw).map_err(|e| StoreError::Corrupt {
                path: path.to_path_buf(),
                reason: e.to_string(),
            })?;
        let version = value
            .get("schema_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| StoreError::Corrupt {
                path: path.to_path_buf(),
                reason: "missing schema_version".to_string(),
            })?;
        if version > u64::from(SCHEMA_VERSION) {
            return Err(StoreError::SchemaMismatch {
                path: path.to_path_buf(),
                found: u32::try_from(version).unwrap_or(u32::MAX),
                supported: SCHEMA_VERSION,
            });
        }
        serde_json::from_value(value).map_err(|e| StoreError::Corrupt {
            path: path.to_path_buf(),
            reason: e.to_string(),
        })
    }

    fn append_lines(&self, path: &Path, lines: &[String]) -> Result<(), StoreError> {
        if lines.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(|e| StoreError::io(path, e))?;
        let mut buf = String::new();
        for line in lines {
            buf.push_str(line);
            buf.push('\n');
        }
        file.write_all(buf.as_bytes())
            .map_err(|e| StoreError::io(path, e))?;
        // Events must be durable before the caller gets its ack.
        file.sync_all().map_err(|e| StoreError::io(path, e))?;
        Ok(())
    }

    // -- catalog -----------------------------------------------------------

    pub fn load_catalog(&self) -> Result<FactorCatalog, StoreError> {
        let doc: CatalogDoc = self.read_doc(&self.catalog_path())?;
        Ok(doc.catalog)
    }

    pub fn save_catalog(&self, catalog: &FactorCatalog) -> Result<(), StoreError> {
        let _lock = WriteLock::acquire(&self.root)?;
        self.write_catalog(catalog)
    }

    fn write_catalog(&self, catalog: &FactorCatalog) -> Result<(), StoreError> {
        let doc = CatalogDoc {
            schema_version: SCHEMA_VERSION,
            catalog: catalog.clone(),
        };
        self.write_atomic(&self.catalog_path(), canonical_json(&doc))
    }

    // -- teams ---------------------------------------------------------------

    pub fn team_exists(&self, id: &str) -> bool {
        self.team_path(id).exists()
    }

    pub fn save_team(&self, team: &Team) -> Result<(), StoreError> {
        let _lock = WriteLock::acquire(&self.root)?;
        self.write_team(team)
    }

    fn write_team(&self, team: &Team) -> Result<(), StoreError> {
        if !crate::model::is_valid_entity_id(&team.id) {
            return Err(StoreError::ValidationFailed(vec![
                Violation::BadIdentifier {
                    subject: "team".to_string(),
                    id: team.id.clone(),
                },
            ]));
        }
        let doc = TeamDoc {
            schema_version: SCHEMA_VERSION,
            team: team.clone(),
        };
        self.write_atomic(&self.team_path(&team.id), canonical_json(&doc))
    }

    pub fn load_team(&self, id: &str) -> Result<Team, StoreError> {
        let path = self.team_path(id);
        if !path.exists() {
            return Err(StoreError::NotFound {
                kind: "team",
                id: id.to_string(),
            });
        }
        let doc: TeamDoc = self.read_doc(&path)?;
        Ok(doc.team)
    }

    // -- sprints ---------------------------------------------------------

    pub fn sprint_exists(&self, id: &str) -> bool {
        self.sprint_path(id).exists()
    }

    /// Validates and persists a sprint. Item data and task definitions go to
    /// the sprint file; any task history the journal does not yet contain is
    /// appended to it. Rewriting or truncating journaled history is refused
    /// with [`StoreError::HistoryConflict`].
    ///
    /// The owning team's sprint list is updated and kept in start-date
    /// order.
    pub fn save_sprint(&self, sprint: &Sprint) -> Result<(), StoreError> {
        let catalog = self.load_catalog()?;
        let violations = validate_sprint(sprint, &catalog);
        if !violations.is_empty() {
            return Err(StoreError::ValidationFailed(violations));
        }
        let mut team = self.load_team(&sprint.team_id)?;

        let _lock = WriteLock::acquire(&self.root)?;

        // Work out which history suffixes are new before touching anything.
        let journal = self.read_events(&sprint.id)?;
        let new_lines = journal_delta(sprint, &journal)?;

        let doc = SprintDoc {
            schema_version: SCHEMA_VERSION,
            id: sprint.id.clone(),
            team_id: sprint.team_id.clone(),
            start_date: sprint.start_date,
            length_days: sprint.length_days,
            items: sprint.items.clone(),
            tasks: sprint.tasks.iter().map(TaskDef::from_task).collect(),
        };
        self.write_atomic(&self.sprint_path(&sprint.id), canonical_json(&doc))?;
        self.append_lines(&self.events_path(&sprint.id), &new_lines)?;

        if !team.sprint_ids.iter().any(|s| s == &sprint.id) {
            team.sprint_ids.push(sprint.id.clone());
        }
        self.sort_sprint_ids(&mut team.sprint_ids, &sprint.id, sprint.start_date)?;
        self.write_team(&team)
    }

    /// Orders a team's sprint list by start date (id as tiebreak). The date
    /// of the sprint being saved is passed in because its file was just
    /// written by us.
    fn sort_sprint_ids(
        &self,
        ids: &mut [String],
        just_saved: &str,
        just_saved_date: chrono::NaiveDate,
    ) -> Result<(), StoreError> {
        let mut dated: Vec<(chrono::NaiveDate, String)> = Vec::with_capacity(ids.len());
        for id in ids.iter() {
            let date = if id == just_saved {
                just_saved_date
            } else {
                let doc: SprintDoc = self.read_doc(&self.sprint_path(id))?;
                doc.start_date
            };
            dated.push((date, id.clone()));
        }
        dated.sort();
        for (slot, (_, id)) in ids.iter_mut().zip(dated) {
            *slot = id;
        }
        Ok(())
    }

    /// Loads a sprint and replays its event journal to rebuild task state.
    pub fn load_sprint(&self, id: &str) -> Result<Sprint, StoreError> {
        let path = self.sprint_path(id);
        if !path.exists() {
            return Err(StoreError::NotFound {
                kind: "sprint",
                id: id.to_string(),
            });
        }
        let doc: SprintDoc = self.read_doc(&path)?;
        let mut sprint = Sprint {
            id: doc.id,
            team_id: doc.team_id,
            start_date: doc.start_date,
            length_days: doc.length_days,
            items: doc.items,
            tasks: doc.tasks.into_iter().map(TaskDef::into_task).collect(),
        };
        let events_path = self.events_path(id);
        for event in self.read_events(id)? {
            let task = sprint
                .task_mut(&event.task_id)
                .ok_or_else(|| StoreError::Corrupt {
                    path: events_path.clone(),
                    reason: format!("journal references unknown task {:?}", event.task_id),
                })?;
            task.history.push(event);
        }
        for task in &mut sprint.tasks {
            task.status = replay_status(&task.history);
        }
        Ok(sprint)
    }

    fn read_events(&self, sprint_id: &str) -> Result<Vec<TaskEvent>, StoreError> {
        let path = self.events_path(sprint_id);
        if !path.exists() {
            return Ok(Vec::new());
        }
        let file = File::open(&path).map_err(|e| StoreError::io(&path, e))?;
        let mut events = Vec::new();
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| StoreError::io(&path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            let record: EventRecord =
                serde_json::from_str(&line).map_err(|e| StoreError::Corrupt {
                    path: path.clone(),
                    reason: format!("line {}: {e}", lineno + 1),
                })?;
            if record.schema_version > SCHEMA_VERSION {
                return Err(StoreError::SchemaMismatch {
                    path,
                    found: record.schema_version,
                    supported: SCHEMA_VERSION,
                });
            }
            events.push(record.event);
        }
        Ok(events)
    }

    /// Validates one task move against stored state, then appends it to the
    /// journal and refreshes the sprint snapshot. The journal append is
    /// durable before the call returns.
    pub fn append_event(&self, sprint_id: &str, event: TaskEvent) -> Result<(), StoreError> {
        let sprint = self.load_sprint(sprint_id)?;
        let task = sprint.task(&event.task_id).ok_or_else(|| StoreError::NotFound {
            kind: "task",
            id: event.task_id.clone(),
        })?;
        if event.day_index >= sprint.length_days {
            return Err(StoreError::DayOutOfRange {
                day: event.day_index,
                length_days: sprint.length_days,
            });
        }
        let latest = task.history.last().map_or(task.added_day, |e| e.day_index);
        if event.day_index < latest {
            return Err(StoreError::DayBeforeLatest {
                day: event.day_index,
                latest,
            });
        }
        // Raises IllegalTransition / StaleFromStatus before anything is written.
        crate::workflow::apply_event(task, event.clone(), TransitionPolicy::default())?;
        let _lock = WriteLock::acquire(&self.root)?;
        let record = EventRecord {
            schema_version: SCHEMA_VERSION,
            event,
        };
        self.append_lines(&self.events_path(sprint_id), &[compact_json(&record)])
    }

    /// Appends one line to a sprint's rating audit trail.
    pub fn append_rating_audit(
        &self,
        sprint_id: &str,
        audit: RatingAudit,
    ) -> Result<(), StoreError> {
        let _lock = WriteLock::acquire(&self.root)?;
        let record = AuditRecord {
            schema_version: SCHEMA_VERSION,
            audit,
        };
        self.append_lines(&self.audit_path(sprint_id), &[compact_json(&record)])
    }

    /// Number of lines in a sprint's rating audit trail, for sequence
    /// numbering.
    pub fn rating_audit_len(&self, sprint_id: &str) -> Result<u64, StoreError> {
        let path = self.audit_path(sprint_id);
        if !path.exists() {
            return Ok(0);
        }
        let file = File::open(&path).map_err(|e| StoreError::io(&path, e))?;
        let mut count = 0;
        for line in BufReader::new(file).lines() {
            let line = line.map_err(|e| StoreError::io(&path, e))?;
            if !line.trim().is_empty() {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Loads every sprint of a team in start-date order and computes its
    /// metrics fresh — nothing is cached, so edits to stored scores are
    /// always reflected.
    pub fn load_history(&self, team_id: &str) -> Result<Vec<(Sprint, SprintMetrics)>, StoreError> {
        let team = self.load_team(team_id)?;
        let mut sprints = Vec::with_capacity(team.sprint_ids.len());
        for id in &team.sprint_ids {
            sprints.push(self.load_sprint(id)?);
        }
        sprints.sort_by(|a, b| (a.start_date, &a.id).cmp(&(b.start_date, &b.id)));
        let mut history = Vec::with_capacity(sprints.len());
        for sprint in sprints {
            let metrics = compute_pbr(&sprint, Strictness::Lenient)?;
            history.push((sprint, metrics));
        }
        Ok(history)
    }
}

/// Lines that must be appended so the journal matches the sprint's task
/// histories. Each task's journaled events must be a prefix of its
/// in-memory history, and no journaled task may disappear.
fn journal_delta(sprint: &Sprint, journal: &[TaskEvent]) -> Result<Vec<String>, StoreError> {
    let mut journaled: BTreeMap<&str, Vec<&TaskEvent>> = BTreeMap::new();
    for event in journal {
        journaled.entry(&event.task_id).or_default().push(event);
    }
    for (task_id, events) in &journaled {
        if sprint.task(task_id).is_none() && !events.is_empty() {
            return Err(StoreError::HistoryConflict {
                sprint_id: sprint.id.clone(),
                task_id: (*task_id).to_string(),
                reason: "task with journaled events is missing from the sprint".to_string(),
            });
        }
    }
    let mut lines = Vec::new();
    for task in &sprint.tasks {
        let existing = journaled.get(task.id.as_str()).map_or(&[][..], Vec::as_slice);
        if existing.len() > task.history.len() {
            return Err(StoreError::HistoryConflict {
                sprint_id: sprint.id.clone(),
                task_id: task.id.clone(),
                reason: format!(
                    "journal has {} events but the task history has {}",
                    existing.len(),
                    task.history.len()
                ),
            });
        }
        for (i, journaled_event) in existing.iter().enumerate() {
            if *journaled_event != &task.history[i] {
                return Err(StoreError::HistoryConflict {
                    sprint_id: sprint.id.clone(),
                    task_id: task.id.clone(),
                    reason: format!("event {i} differs from the journaled event"),
                });
            }
        }
        for event in &task.history[existing.len()..] {
            let record = EventRecord {
                schema_version: SCHEMA_VERSION,
                event: event.clone(),
            };
            lines.push(compact_json(&record));
        }
    }
    Ok(lines)
}
