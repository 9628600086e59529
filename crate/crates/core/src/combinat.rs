//! Partitions, dominance order and standard Young tableaux.

use std::fmt;

use serde::Serialize;

/// A partition as a weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_value(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &l)| i * l).sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|j| self.0.iter().filter(|&&l| l > j).count()).collect())
    }

    /// Dominance `self ⊴ other`: every partial sum of `self` is at most that of `other`.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut a = 0;
        let mut b = 0;
        for i in 0..self.0.len().max(other.0.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Standard tableaux; each is a list of `(row, col)` cells for entries `1..=n`.
    pub fn standard_tableaux(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.size();
        let mut out = Vec::new();
        let mut filled = vec![0usize; self.0.len()];
        let mut current = Vec::with_capacity(n);
        fill(&self.0, &mut filled, &mut current, n, &mut out);
        out
    }

    /// Hook length of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size());
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                out.push((row - j - 1) + (conj.0[j] - i - 1) + 1);
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!("{}", self)
    }
}

fn fill(
    shape: &[usize],
    filled: &mut [usize],
    current: &mut Vec<(usize, usize)>,
    n: usize,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for r in 0..shape.len() {
        let c = filled[r];
        if c < shape[r] && (r == 0 || filled[r - 1] > c) {
            filled[r] += 1;
            current.push((r, c));
            fill(shape, filled, current, n, out);
            current.pop();
            filled[r] -= 1;
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order (`(n)` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four() {
        let p = partitions(4);
        assert_eq!(p.len(), 5);
        assert_eq!(p[0], Partition(vec![4]));
        assert_eq!(p[4], Partition(vec![1, 1, 1, 1]));
        let nvals: Vec<usize> = p.iter().map(|x| x.n_value()).collect();
        assert_eq!(nvals, vec![0, 1, 2, 3, 6]);
        assert!(Partition(vec![2, 2]).dominated_by(&Partition(vec![3, 1])));
        let mut hooks = Partition(vec![2, 1]).hook_lengths();
        hooks.sort_unstable();
        assert_eq!(hooks, vec![1, 1, 3]);
        assert!(!Partition(vec![3, 1]).dominated_by(&Partition(vec![2, 2])));
        assert_eq!(Partition(vec![2, 1, 1]).standard_tableaux().len(), 3);
        assert_eq!(Partition(vec![2, 2]).standard_tableaux().len(), 2);
        assert_eq!(Partition(vec![3, 1]).conjugate(), Partition(vec![2, 1, 1]));
    }
}
