use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Action, Permutation};

/// A partition of `0..n` into nonempty cells.
///
/// Stored as its restricted growth string: cells are numbered by their least
/// element, so equal partitions have equal representations and the derived
/// ordering is lexicographic on restricted growth strings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u32>,
}

impl SetPartition {
    /// Groups points with equal labels; any label values are accepted.
    pub fn from_labels<T: PartialEq + Copy>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let labels = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i as u32,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u32
                }
            })
            .collect();
        SetPartition { labels }
    }

    pub fn from_cells(n: usize, cells: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (c, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(Error::InvalidInput("empty cell".into()));
            }
            for &v in cell {
                if v >= n {
                    return Err(Error::InvalidInput(format!(
                        "point {v} out of range 0..{n}"
                    )));
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidInput(format!("point {v} in two cells")));
                }
                labels[v] = c;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidInput(format!("point {v} not covered")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// Wraps a restricted growth string without checking it.
    pub(crate) fn from_rgs(labels: Vec<u32>) -> Self {
        debug_assert!(is_rgs(&labels));
        SetPartition { labels }
    }

    pub fn degree(&self) -> usize {
        self.labels.len()
    }

    pub fn rgs(&self) -> &[u32] {
        &self.labels
    }

    /// Cell index of point `v` (cells numbered by least element).
    pub fn cell_of(&self, v: usize) -> usize {
        self.labels[v] as usize
    }

    pub fn cell_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Cells sorted by least element, each sorted ascending.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); self.cell_count()];
        for (v, &l) in self.labels.iter().enumerate() {
            cells[l as usize].push(v);
        }
        cells
    }

    /// True if `p` maps every cell onto itself.
    pub fn is_fixed_cellwise_by(&self, p: &Permutation) -> bool {
        (0..self.degree()).all(|v| self.labels[p.image(v)] == self.labels[v])
    }

    /// True if `p` maps the partition onto itself, possibly permuting cells.
    pub fn is_preserved_by(&self, p: &Permutation) -> bool {
        self.act_unchecked(p) == *self
    }
}

impl Action for SetPartition {
    fn degree(&self) -> usize {
        self.labels.len()
    }

    fn act_unchecked(&self, p: &Permutation) -> Self {
        let mut image = vec![0u32; self.degree()];
        for (v, &l) in self.labels.iter().enumerate() {
            image[p.image(v)] = l;
        }
        SetPartition::from_labels(&image)
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .cells()
            .iter()
            .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", cells.join("|"))
    }
}

fn is_rgs(labels: &[u32]) -> bool {
    let mut next = 0u32;
    labels.iter().all(|&l| {
        let ok = l <= next;
        if l == next {
            next += 1;
        }
        ok
    })
}

/// Walks all restricted growth strings of length `n` with at most
/// `max_cells` distinct values, in lexicographic order.
pub struct RgsWalker {
    labels: Vec<u32>,
    max_cells: u32,
    started: bool,
    done: bool,
}

impl RgsWalker {
    pub fn new(n: usize, max_cells: usize) -> Self {
        RgsWalker {
            labels: vec![0; n],
            max_cells: max_cells.min(u32::MAX as usize) as u32,
            started: false,
            done: n > 0 && max_cells == 0,
        }
    }

    /// Advances and returns the next string, or `None` when exhausted.
    pub fn next_rgs(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.labels);
        }
        let n = self.labels.len();
        let prefix_max: Vec<u32> = self
            .labels
            .iter()
            .scan(0u32, |m, &l| {
                let before = *m;
                *m = (*m).max(l);
                Some(before)
            })
            .collect();
        for i in (1..n).rev() {
            let cap = (prefix_max[i] + 1).min(self.max_cells - 1);
            if self.labels[i] < cap {
                self.labels[i] += 1;
                self.labels[i + 1..].fill(0);
                return Some(&self.labels);
            }
        }
        self.done = true;
        None
    }
}
