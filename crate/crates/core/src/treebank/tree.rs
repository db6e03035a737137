use std::collections::BTreeMap;

use super::postag::PosTag;

/// One annotated token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordNode {
    pub token_id: u32,
    pub form: String,
    pub raw_lemma: String,
    pub lemma: String,
    pub postag: PosTag,
    /// 0 attaches to the sentence root.
    pub head_id: u32,
    pub relation: String,
}

/// Author and title of a treebank document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DocumentMeta {
    pub author: String,
    pub title: String,
}

impl DocumentMeta {
    pub fn new(author: impl Into<String>, title: impl Into<String>) -> Self {
        DocumentMeta {
            author: author.into(),
            title: title.into(),
        }
    }
}

/// A dependency tree plus its document metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceTree {
    pub sentence_id: u64,
    pub subdoc: String,
    pub author: String,
    pub title: String,
    pub nodes: Vec<WordNode>,
    children: BTreeMap<u32, Vec<u32>>,
}

impl SentenceTree {
    pub fn new(
        sentence_id: u64,
        subdoc: impl Into<String>,
        meta: &DocumentMeta,
        nodes: Vec<WordNode>,
    ) -> Self {
        let mut children: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for node in &nodes {
            children
                .entry(node.head_id)
                .or_default()
                .push(node.token_id);
        }
        SentenceTree {
            sentence_id,
            subdoc: subdoc.into(),
            author: meta.author.clone(),
            title: meta.title.clone(),
            nodes,
            children,
        }
    }

    pub fn node(&self, token_id: u32) -> Option<&WordNode> {
        self.nodes.iter().find(|n| n.token_id == token_id)
    }

    /// Direct dependents of `token_id` in surface order (0 for the root).
    pub fn children(&self, token_id: u32) -> impl Iterator<Item = &WordNode> {
        self.children
            .get(&token_id)
            .into_iter()
            .flatten()
            .filter_map(move |&id| self.node(id))
    }

    pub fn children_index(&self) -> &BTreeMap<u32, Vec<u32>> {
        &self.children
    }

    pub fn meta(&self) -> DocumentMeta {
        DocumentMeta::new(&self.author, &self.title)
    }

    /// Position of a token in the sentence (document order), 0-based.
    pub fn surface_position(&self, token_id: u32) -> Option<usize> {
        self.nodes.iter().position(|n| n.token_id == token_id)
    }
}
