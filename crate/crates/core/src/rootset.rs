//! Sorted, duplicate-free root sets tagged with how they were obtained.

use serde::Serialize;

use crate::field::Fe;

/// How a [`RootSet`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    LinearAlgebra,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    roots: Vec<Fe>,
    provenance: Provenance,
}

impl RootSet {
    pub fn new(roots: impl IntoIterator<Item = Fe>, provenance: Provenance) -> Self {
        let mut roots: Vec<Fe> = roots.into_iter().collect();
        roots.sort_unstable();
        roots.dedup();
        RootSet { roots, provenance }
    }

    pub fn empty(provenance: Provenance) -> Self {
        RootSet {
            roots: Vec::new(),
            provenance,
        }
    }

    pub fn roots(&self) -> &[Fe] {
        &self.roots
    }

    pub fn into_vec(self) -> Vec<Fe> {
        self.roots
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, x: Fe) -> bool {
        self.roots.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Fe> + '_ {
        self.roots.iter().copied()
    }

    /// Set equality, ignoring provenance.
    pub fn same_roots(&self, other: &RootSet) -> bool {
        self.roots == other.roots
    }

    /// Roots as `0x`-hex strings in ascending order.
    pub fn to_hex(&self) -> Vec<String> {
        self.roots.iter().map(|r| r.to_string()).collect()
    }
}
