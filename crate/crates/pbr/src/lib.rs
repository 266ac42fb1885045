//! Sprint test-quality analytics.
//!
//! This library models scrum backlogs, sprints, and board tasks, and
//! computes the Product Backlog Rating (PBR): a complexity-weighted
//! aggregate of per-item test-assessment ratings that tracks how well a
//! team's testing process is doing, sprint over sprint and across teams.
//!
//! The pieces:
//!
//! * [`model`] — backlog items, sprints, teams, factor scores;
//! * [`catalog`] — the built-in complexity and test-assessment factors;
//! * [`metrics`] — exact-arithmetic PCL / TAR / PBR, interpretation bands,
//!   trend series, and team comparison;
//! * [`workflow`] — the five-status task board and burndown series;
//! * [`validate`] — structural validation with full violation lists;
//! * [`store`] — a file-based repository with canonical JSON entities and
//!   append-only event logs;
//! * [`report`] — deterministic text and CSV reports;
//! * [`plot`] — dependency-free SVG trend and burndown charts;
//! * [`sample`] — a fully scored sample sprint to play with.
//!
//! Every capability has a runnable example:
//!
//! ```bash
//! cargo run -p pbr --example compute_metrics
//! cargo run -p pbr --example sprint_report
//! cargo run -p pbr --example trend_chart
//! cargo run -p pbr --example burndown_chart
//! cargo run -p pbr --example team_comparison
//! cargo run -p pbr --example repository_roundtrip
//! cargo run -p pbr --example custom_factors
//! ```
//!
//! A thin `pbr` binary wires the same library calls into repository-backed
//! commands; see the project README for the command grammar.

pub mod catalog;
pub mod cli;
pub mod decimal;
pub mod metrics;
pub mod model;
pub mod plot;
pub mod report;
pub mod sample;
pub mod store;
pub mod validate;
pub mod workflow;

pub use catalog::{default_catalog, optional_pcl_extensions};
pub use decimal::Decimal2;
pub use metrics::{
    compare_teams, compute_pbr, compute_pcl, compute_tar, interpret, trend, InterpretationBand,
    ItemMetrics, MetricError, SprintMetrics, Strictness,
};
pub use model::{
    FactorCatalog, FactorDefinition, FactorKind, PblItem, PclScore, Rating, Sprint, TarScore,
    Task, Team, Weight,
};
pub use validate::{validate_item, validate_sprint, Violation};
pub use workflow::{
    apply_event, burndown, legal_transitions, BurndownSeries, TaskEvent, TaskStatus,
    TransitionPolicy, WorkflowError,
};
