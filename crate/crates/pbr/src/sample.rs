//! A fully scored sample sprint.
//!
//! Five backlog items of an invoicing product, every complexity factor
//! scored with a weight and every test-assessment factor scored. Used by the
//! documentation, the runnable examples, and the golden-file tests; handy as
//! a starting point when exploring the API.

use chrono::NaiveDate;

use crate::model::{PblItem, Rating, Sprint, Team, Weight};

/// Factor order matching [`crate::catalog::default_catalog`]'s PCL list.
const PCL_FACTORS: [&str; 8] = ["CBLBP", "NTD", "TE", "PID", "PED", "TEC", "LGUI", "BA"];
/// Factor order matching the default catalog's TAR list.
const TAR_FACTORS: [&str; 6] = ["BC", "SB", "BFRI", "NBMTC", "RC", "TC"];

struct SampleItem {
    id: &'static str,
    title: &'static str,
    story: &'static str,
    pcl_values: [&'static str; 8],
    pcl_weights: [&'static str; 8],
    tar_values: [&'static str; 6],
}

const SAMPLE_ITEMS: [SampleItem; 5] = [
    SampleItem {
        id: "PBL1",
        title: "Bulk invoice import from spreadsheets",
        story: "Accountants upload a spreadsheet of invoice lines instead of \
                keying them in one by one; every row is validated before \
                anything is posted.",
        pcl_values: ["5", "5", "5", "4.5", "5", "5", "5", "5"],
        pcl_weights: ["1", "1", "1", "1", "1", "1", "0.4", "1"],
        tar_values: ["5", "5", "2", "3", "2", "3.5"],
    },
    SampleItem {
        id: "PBL2",
        title: "Configurable status colours in the ledger",
        story: "Each user picks their own colour per invoice status so the \
                ledger list reflects their workflow at a glance.",
        pcl_values: ["3", "4", "3", "3.5", "4", "3", "4", "2"],
        pcl_weights: ["0.7", "1", "0.6", "0.8", "0.7", "0.5", "0.7", "0.6"],
        tar_values: ["4", "2", "5", "5", "5", "4.5"],
    },
    SampleItem {
        id: "PBL3",
        title: "Per-user time zone for due dates",
        story: "Due dates and timestamps render in the user's configured \
                time zone and date format rather than the server's.",
        pcl_values: ["3", "3", "4", "3", "3", "4", "5", "2"],
        pcl_weights: ["0.7", "0.7", "1", "0.5", "0.5", "1", "1", "0.4"],
        tar_values: ["5", "3", "5", "5", "5", "4.5"],
    },
    SampleItem {
        id: "PBL4",
        title: "Tag invoices and filter search by tag",
        story: "Two free-form tag fields per invoice, and the search screen \
                gains matching filters.",
        pcl_values: ["2", "2.5", "2.5", "2", "3", "2.5", "2.5", "2"],
        pcl_weights: ["0.6", "0.7", "0.8", "0.6", "0.8", "0.8", "0.6", "0.5"],
        tar_values: ["4", "2.5", "4", "3", "5", "3.75"],
    },
    SampleItem {
        id: "PBL5",
        title: "Reassign an invoice to another ledger",
        story: "Moving an invoice between ledgers cascades into attached \
                documents, approval chains, and currency settings, keeping \
                what is still valid and discarding the rest.",
        pcl_values: ["5", "4", "5", "4", "3", "5", "3", "5"],
        pcl_weights: ["1", "1", "0.7", "0.8", "0.5", "1", "0.7", "1"],
        tar_values: ["2", "5", "3", "2", "1", "2.5"],
    },
];

/// A three-week sprint with all five sample items fully scored.
pub fn sample_sprint() -> Sprint {
    let mut sprint = Sprint::new(
        "S-2026-03",
        "aurora",
        NaiveDate::from_ymd_opt(2026, 3, 2).expect("valid date"),
        21,
    )
    .expect("length within bounds");
    for spec in &SAMPLE_ITEMS {
        let mut item = PblItem::new(spec.id, spec.title).with_story(spec.story);
        for ((factor, value), weight) in PCL_FACTORS
            .iter()
            .zip(spec.pcl_values)
            .zip(spec.pcl_weights)
        {
            item.set_pcl_score(
                factor,
                Rating::new(value.parse().expect("sample value parses")).expect("in range"),
                Weight::new(weight.parse().expect("sample weight parses")).expect("in range"),
            );
        }
        for (factor, value) in TAR_FACTORS.iter().zip(spec.tar_values) {
            item.set_tar_score(
                factor,
                Rating::new(value.parse().expect("sample value parses")).expect("in range"),
            );
        }
        sprint.items.push(item);
    }
    sprint
}

/// The team owning [`sample_sprint`].
pub fn sample_team() -> Team {
    let mut team = Team::new("aurora", "Team Aurora");
    team.sprint_ids.push("S-2026-03".to_string());
    team
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::default_catalog;
    use crate::validate::validate_sprint;

    #[test]
    fn sample_sprint_is_valid_and_fully_scored() {
        let sprint = sample_sprint();
        assert!(validate_sprint(&sprint, &default_catalog()).is_empty());
        assert_eq!(sprint.items.len(), 5);
        for item in &sprint.items {
            assert_eq!(item.pcl_scores.len(), 8, "{}", item.id);
            assert_eq!(item.tar_scores.len(), 6, "{}", item.id);
        }
    }
}
