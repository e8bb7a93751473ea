//! Bipartitions of an ordered set of subsystems.

use serde::Serialize;

use crate::error::CriteriaError;

/// A split of subsystems `1..=order` into two nonempty sides. Sides are
/// stored ascending; the side containing subsystem 1 is the left one,
/// so each unordered split has exactly one representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    /// Builds the bipartition with the given left side; the right side
    /// is the complement in `1..=order`.
    pub fn new(left: &[usize], order: usize) -> Result<Self, CriteriaError> {
        if left.is_empty() {
            return Err(CriteriaError::InvalidPartition(
                "left side must be nonempty".into(),
            ));
        }
        let mut sorted = left.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != left.len() {
            return Err(CriteriaError::InvalidPartition(format!(
                "left side {left:?} has repeated subsystems"
            )));
        }
        if sorted[0] < 1 || *sorted.last().unwrap() > order {
            return Err(CriteriaError::InvalidPartition(format!(
                "left side {left:?} out of range for {order} subsystems"
            )));
        }
        if sorted.len() == order {
            return Err(CriteriaError::InvalidPartition(
                "left side must leave at least one subsystem on the right".into(),
            ));
        }
        let right: Vec<usize> = (1..=order).filter(|s| !sorted.contains(s)).collect();
        if sorted[0] > right[0] {
            return Err(CriteriaError::InvalidPartition(format!(
                "subsystem 1 must sit on the left side, got left {sorted:?}"
            )));
        }
        Ok(Bipartition {
            left: sorted,
            right,
        })
    }

    /// Left side, ascending; always contains subsystem 1.
    pub fn left(&self) -> &[usize] {
        &self.left
    }

    /// Right side, ascending.
    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Total number of subsystems.
    pub fn order(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Compact label such as `1,3|2` for reports.
    pub fn label(&self) -> String {
        let fmt = |side: &[usize]| {
            side.iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}|{}", fmt(&self.left), fmt(&self.right))
    }

    /// Left-side digits concatenated, e.g. `13`; a stable map key.
    pub fn left_key(&self) -> String {
        self.left.iter().map(|s| s.to_string()).collect()
    }
}

/// Every bipartition of `1..=order`, one representative per unordered
/// split: left sides of size 1..order-1 containing subsystem 1, in
/// ascending size then lexicographic order.
pub fn canonical_bipartitions(order: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in 1..order {
        let mut combo: Vec<usize> = Vec::new();
        combinations(1, order, k, &mut combo, &mut |left| {
            if left[0] == 1 {
                out.push(Bipartition::new(left, order).expect("generated sides are valid"));
            }
        });
    }
    out
}

fn combinations(
    start: usize,
    end: usize,
    k: usize,
    current: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if k == 0 {
        emit(current);
        return;
    }
    for s in start..=(end + 1 - k) {
        current.push(s);
        combinations(s + 1, end, k - 1, current, emit);
        current.pop();
    }
}
