use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::tree::SentenceTree;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TreeIssue {
    DuplicateId {
        token_id: u32,
    },
    DanglingHead {
        token_id: u32,
        head_id: u32,
    },
    /// Token ids on the cycle, smallest first.
    Cycle {
        members: Vec<u32>,
    },
}

impl fmt::Display for TreeIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeIssue::DuplicateId { token_id } => write!(f, "duplicate token id {token_id}"),
            TreeIssue::DanglingHead { head_id, token_id } => {
                write!(f, "dangling head {head_id} (token {token_id})")
            }
            TreeIssue::Cycle { members } => {
                let ids: Vec<String> = members.iter().map(u32::to_string).collect();
                write!(f, "cycle through tokens {}", ids.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub sentence_id: u64,
    pub issues: Vec<TreeIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks ids are unique, heads exist, and the head graph is a tree
/// rooted at 0.
pub fn validate_sentence(tree: &SentenceTree) -> ValidationReport {
    let mut issues = Vec::new();
    let mut heads: HashMap<u32, u32> = HashMap::new();
    for node in &tree.nodes {
        if heads.insert(node.token_id, node.head_id).is_some() {
            issues.push(TreeIssue::DuplicateId {
                token_id: node.token_id,
            });
        }
    }
    for node in &tree.nodes {
        if node.head_id != 0 && !heads.contains_key(&node.head_id) {
            issues.push(TreeIssue::DanglingHead {
                token_id: node.token_id,
                head_id: node.head_id,
            });
        }
    }

    // Walk up from every node; revisiting a node on the current walk means
    // a cycle. Nodes proven to reach the root are memoized.
    let mut reaches_root: BTreeSet<u32> = BTreeSet::new();
    let mut cycles: BTreeSet<Vec<u32>> = BTreeSet::new();
    for &start in heads.keys() {
        let mut path: Vec<u32> = Vec::new();
        let mut current = start;
        loop {
            if current == 0 || reaches_root.contains(&current) {
                reaches_root.extend(path.iter().copied());
                break;
            }
            if let Some(pos) = path.iter().position(|&id| id == current) {
                let mut members = path[pos..].to_vec();
                members.sort_unstable();
                cycles.insert(members);
                break;
            }
            path.push(current);
            match heads.get(&current) {
                Some(&head) => current = head,
                // dangling, already reported
                None => break,
            }
        }
    }
    issues.extend(
        cycles
            .into_iter()
            .map(|members| TreeIssue::Cycle { members }),
    );

    ValidationReport {
        sentence_id: tree.sentence_id,
        issues,
    }
}
