//! Built-in factor catalogs.
//!
//! The default catalog ships eight complexity (PCL) factors and six
//! test-assessment (TAR) factors. Two further complexity factors that apply
//! only to some products — data migration and third-party integration — are
//! available through [`optional_pcl_extensions`] so teams that need them can
//! add them without touching the defaults. Teams may also register their own
//! context-driven factors via [`FactorCatalog::add_factor`].

use crate::model::{FactorCatalog, FactorDefinition, FactorKind};

/// The default catalog scored by most teams: 8 PCL factors, 6 TAR factors.
pub fn default_catalog() -> FactorCatalog {
    let pcl = |id: &str, name: &str, description: &str| {
        FactorDefinition::new(id, FactorKind::Pcl, name, description)
    };
    let tar = |id: &str, name: &str, description: &str| {
        FactorDefinition::new(id, FactorKind::Tar, name, description)
    };

    FactorCatalog {
        pcl_factors: vec![
            pcl(
                "CBLBP",
                "Complexity of Business Logic of the PBL",
                "How intricate the item's business rules are. Counting \
                 validations, branches, and conditional paths in the \
                 requirement gives a first approximation; deep or unusual \
                 rule sets mean more test cases to design and maintain.",
            ),
            pcl(
                "NTD",
                "Necessity of Test Data",
                "Volume and difficulty of the input data needed to exercise \
                 the item: how much must be prepared, whether it can be \
                 generated automatically, what setup it requires, and \
                 whether it can be reused.",
            ),
            pcl(
                "TE",
                "Test Estimation",
                "Estimated testing effort in man-days, produced with \
                 whichever estimation technique the assessor trusts. Larger \
                 estimates score higher.",
            ),
            pcl(
                "PID",
                "PBL Item Inter-dependency",
                "Coupling between tasks inside the item. Tasks that affect \
                 each other, or whose combination affects a third task, \
                 multiply the scenarios that must be re-checked.",
            ),
            pcl(
                "PED",
                "PBL Item External-dependency",
                "Coupling to other backlog items. Dependent items are hard \
                 to declare fully tested, propagate defects between each \
                 other, and force test cases to be rewritten together.",
            ),
            pcl(
                "TEC",
                "Test Execution Complexity",
                "Mechanical difficulty of running the tests themselves: \
                 concurrency scenarios, timing deadlines, long output \
                 generation, many granular steps, or slow post-test \
                 cleanup.",
            ),
            pcl(
                "LGUI",
                "Logic on Graphical User Interface",
                "Business rules surfaced in the user interface. Validation \
                 embedded in screens needs checking across browsers and \
                 platforms, which grows the matrix quickly.",
            ),
            pcl(
                "BA",
                "Bug Assumptions",
                "Expected defect load based on the feature's historical bug \
                 record. Incrementally developed features carry history that \
                 suggests where future bugs will appear.",
            ),
        ],
        tar_factors: vec![
            tar(
                "BC",
                "Bugs Count",
                "How many defects the prepared test cases caught. More bugs \
                 found through planned cases indicates more exhaustive \
                 coverage, so this rating rises with the count.",
            ),
            tar(
                "SB",
                "Severity of the Bugs",
                "Impact of the defects found, not just their number. A pile \
                 of trivial bugs says less about test quality than a few \
                 severe, blocking ones.",
            ),
            tar(
                "BFRI",
                "Bug Fixing Ripple Impact",
                "Share of testing that had to be redone because fixes broke \
                 neighbouring components. Heavy ripple and large re-test \
                 effort pull this rating down.",
            ),
            tar(
                "NBMTC",
                "Number of Bugs Missed by the Test Case",
                "Defects that surfaced outside the prepared test cases. Many \
                 or severe escapes signal gaps in understanding of the \
                 feature under test.",
            ),
            tar(
                "RC",
                "Requirement Changes",
                "Stability of the requirement during the sprint. Late or \
                 frequent changes degrade what testing could achieve for the \
                 item.",
            ),
            tar(
                "TC",
                "Test Confidence",
                "The assessor's own judgement of whether enough testing was \
                 done. Deliberately subjective; teams that prefer purely \
                 observable factors can leave it unscored.",
            ),
        ],
    }
}

/// Complexity factors that are meaningful only for some products, documented
/// here so teams can opt in without inventing their own codes.
///
/// * `DMC` — data migration work raises testing risk (cascading migration
///   steps, retired features, bad legacy records).
/// * `TPS` — third-party integrations are black boxes that demand extra
///   exploratory coverage and often new domain knowledge.
pub fn optional_pcl_extensions() -> Vec<FactorDefinition> {
    vec![
        FactorDefinition::new(
            "DMC",
            FactorKind::Pcl,
            "Data Migration Complexity",
            "Effort to verify data carried from an old model to a new one: \
             rules that drop or reshape records, multi-step cascades, \
             records too malformed to transform, and checks that need both \
             database-level and interface-level passes.",
        ),
        FactorDefinition::new(
            "TPS",
            FactorKind::Pcl,
            "Third-Party Support Integration",
            "Risk from external engines and interfaces the team only knows \
             by their inputs and outputs. Testing starts at the boundary \
             and often requires learning the third-party technology first.",
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_catalog_has_expected_ids_in_order() {
        let catalog = default_catalog();
        let pcl_ids: Vec<&str> = catalog.pcl_factors.iter().map(|f| f.id.as_str()).collect();
        assert_eq!(
            pcl_ids,
            ["CBLBP", "NTD", "TE", "PID", "PED", "TEC", "LGUI", "BA"]
        );
        let tar_ids: Vec<&str> = catalog.tar_factors.iter().map(|f| f.id.as_str()).collect();
        assert_eq!(tar_ids, ["BC", "SB", "BFRI", "NBMTC", "RC", "TC"]);
        assert_eq!(catalog.pcl_factors.len(), 8);
        assert_eq!(catalog.tar_factors.len(), 6);
    }

    #[test]
    fn default_catalog_entries_are_well_formed() {
        let catalog = default_catalog();
        for f in catalog.pcl_factors.iter().chain(&catalog.tar_factors) {
            assert!(crate::model::is_valid_factor_id(&f.id), "{}", f.id);
            assert!(!f.name.is_empty());
            assert!(!f.description.is_empty());
        }
    }

    #[test]
    fn optional_extensions_attach_cleanly() {
        let mut catalog = default_catalog();
        for def in optional_pcl_extensions() {
            catalog.add_factor(def).unwrap();
        }
        assert_eq!(catalog.pcl_factors.len(), 10);
        assert!(catalog.find(FactorKind::Pcl, "DMC").is_some());
        assert!(catalog.find(FactorKind::Pcl, "TPS").is_some());
    }
}
