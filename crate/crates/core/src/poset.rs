//! Finite strict posets and linear orders over opaque string identifiers.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not irreflexive at `{0}`")]
    Reflexive(String),
    #[error("relation is not antisymmetric on `{0}`, `{1}`")]
    Symmetric(String, String),
    #[error("relation is not transitive on `{0}` -> `{1}` -> `{2}`")]
    Intransitive(String, String, String),
}

/// A finite set with a strict partial order `→`, stored as a dense
/// adjacency matrix. Element `i` is addressed by its index in
/// [`FinitePoset::elements`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    lt: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from the listed pairs and checks the strict order
    /// axioms. The pairs must already be transitively closed.
    pub fn new<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, PosetError> {
        let poset = Self::new_unchecked_pairs(elements, pairs)?;
        poset.check_axioms()?;
        Ok(poset)
    }

    /// Builds the transitive closure of the given pairs and checks the result
    /// is a strict order.
    pub fn from_cover<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, PosetError> {
        let mut poset = Self::new_unchecked_pairs(elements, pairs)?;
        let n = poset.len();
        for k in 0..n {
            for i in 0..n {
                if poset.lt[i * n + k] {
                    for j in 0..n {
                        if poset.lt[k * n + j] {
                            poset.lt[i * n + j] = true;
                        }
                    }
                }
            }
        }
        poset.check_axioms()?;
        Ok(poset)
    }

    fn new_unchecked_pairs<S: Into<String>>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, PosetError> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let index = build_index(&elements)?;
        let n = elements.len();
        let mut lt = vec![false; n * n];
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            let ia = *index.get(&a).ok_or(PosetError::UnknownElement(a))?;
            let ib = *index.get(&b).ok_or(PosetError::UnknownElement(b))?;
            lt[ia * n + ib] = true;
        }
        Ok(Self { elements, index, lt })
    }

    /// Wraps a row-major relation matrix known to be a strict order.
    pub(crate) fn from_matrix_unchecked(elements: Vec<String>, lt: Vec<bool>) -> Self {
        debug_assert_eq!(lt.len(), elements.len() * elements.len());
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let poset = Self { elements, index, lt };
        debug_assert!(poset.check_axioms().is_ok());
        poset
    }

    /// Builds a poset from a row-major relation matrix, checking the axioms.
    pub fn from_matrix(elements: Vec<String>, lt: Vec<bool>) -> Result<Self, PosetError> {
        assert_eq!(lt.len(), elements.len() * elements.len(), "matrix size mismatch");
        let index = build_index(&elements)?;
        let poset = Self { elements, index, lt };
        poset.check_axioms()?;
        Ok(poset)
    }

    fn check_axioms(&self) -> Result<(), PosetError> {
        let n = self.len();
        for i in 0..n {
            if self.lt(i, i) {
                return Err(PosetError::Reflexive(self.elements[i].clone()));
            }
            for j in 0..n {
                if !self.lt(i, j) {
                    continue;
                }
                if self.lt(j, i) {
                    return Err(PosetError::Symmetric(
                        self.elements[i].clone(),
                        self.elements[j].clone(),
                    ));
                }
                for k in 0..n {
                    if self.lt(j, k) && !self.lt(i, k) {
                        return Err(PosetError::Intransitive(
                            self.elements[i].clone(),
                            self.elements[j].clone(),
                            self.elements[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// `a → b` by element index.
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a * self.elements.len() + b]
    }

    /// `a → b` by element id; unknown ids are never related.
    pub fn lt_id(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.lt(a, b),
            _ => false,
        }
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    /// All related pairs `(a, b)` with `a → b`, in index order.
    pub fn relation_pairs(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) {
                    out.push((self.elements[a].clone(), self.elements[b].clone()));
                }
            }
        }
        out
    }
}

fn build_index(elements: &[String]) -> Result<HashMap<String, usize>, PosetError> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(PosetError::DuplicateElement(e.clone()));
        }
    }
    Ok(index)
}

/// A total order on a finite set of identifiers, stored as the sequence of
/// ids by ascending rank. Ranks are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearOrder {
    seq: Vec<String>,
    rank: HashMap<String, usize>,
}

impl LinearOrder {
    /// Builds an order from ids listed in ascending position.
    pub fn new<S: Into<String>>(seq: impl IntoIterator<Item = S>) -> Result<Self, PosetError> {
        let seq: Vec<String> = seq.into_iter().map(Into::into).collect();
        let mut rank = HashMap::with_capacity(seq.len());
        for (i, e) in seq.iter().enumerate() {
            if rank.insert(e.clone(), i + 1).is_some() {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        Ok(Self { seq, rank })
    }

    /// The order listing `elements[perm[0]], elements[perm[1]], ...`.
    pub fn from_indices(elements: &[String], perm: &[usize]) -> Self {
        let seq: Vec<String> = perm.iter().map(|&i| elements[i].clone()).collect();
        let rank = seq.iter().enumerate().map(|(i, e)| (e.clone(), i + 1)).collect();
        Self { seq, rank }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// 1-based rank of `id`.
    pub fn rank(&self, id: &str) -> Option<usize> {
        self.rank.get(id).copied()
    }

    /// Ids by ascending rank.
    pub fn as_slice(&self) -> &[String] {
        &self.seq
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.seq.iter().map(String::as_str)
    }

    /// Zero-based positions indexed by poset element index. Fails when the
    /// order does not range over exactly the poset's elements.
    pub fn positions_in(&self, poset: &FinitePoset) -> Result<Vec<usize>, PosetError> {
        if self.len() != poset.len() {
            let missing = poset
                .elements()
                .iter()
                .find(|e| self.rank(e).is_none())
                .or_else(|| self.seq.iter().find(|e| poset.index_of(e).is_none()))
                .cloned()
                .unwrap_or_default();
            return Err(PosetError::UnknownElement(missing));
        }
        poset
            .elements()
            .iter()
            .map(|e| {
                self.rank(e)
                    .map(|r| r - 1)
                    .ok_or_else(|| PosetError::UnknownElement(e.clone()))
            })
            .collect()
    }

    /// Element indices of `poset` in ascending order position.
    pub fn indices_in(&self, poset: &FinitePoset) -> Result<Vec<usize>, PosetError> {
        let pos = self.positions_in(poset)?;
        let mut seq = vec![0; pos.len()];
        for (ix, &p) in pos.iter().enumerate() {
            seq[p] = ix;
        }
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_strict_relations() {
        assert_eq!(
            FinitePoset::new(["a"], [("a", "a")]).unwrap_err(),
            PosetError::Reflexive("a".into())
        );
        assert!(matches!(
            FinitePoset::new(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(PosetError::Symmetric(..))
        ));
        assert!(matches!(
            FinitePoset::new(["a", "b", "c"], [("a", "b"), ("b", "c")]),
            Err(PosetError::Intransitive(..))
        ));
    }

    #[test]
    fn closure_from_cover() {
        let p = FinitePoset::from_cover(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        assert!(p.lt_id("a", "c"));
        assert!(!p.lt_id("c", "a"));
    }

    #[test]
    fn linear_order_ranks() {
        let o = LinearOrder::new(["x", "y", "z"]).unwrap();
        assert_eq!(o.rank("x"), Some(1));
        assert_eq!(o.rank("z"), Some(3));
        assert_eq!(o.rank("w"), None);
        assert!(LinearOrder::new(["x", "x"]).is_err());
    }

    #[test]
    fn positions_detect_mismatch() {
        let p = FinitePoset::new(["a", "b"], []).unwrap();
        let o = LinearOrder::new(["b", "a"]).unwrap();
        assert_eq!(o.positions_in(&p).unwrap(), vec![1, 0]);
        assert_eq!(o.indices_in(&p).unwrap(), vec![1, 0]);
        let bad = LinearOrder::new(["a", "c"]).unwrap();
        assert_eq!(
            bad.positions_in(&p).unwrap_err(),
            PosetError::UnknownElement("b".into())
        );
        let short = LinearOrder::new(["a"]).unwrap();
        assert!(short.positions_in(&p).is_err());
    }
}
