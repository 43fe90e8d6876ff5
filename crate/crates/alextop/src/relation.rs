//! Binary relations on point indices, one bit row per point.

/// A relation on `{0, .., n-1}`; bit `y` of `rows[x]` means `(x, y)` related.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    rows: Vec<u64>,
}

impl Relation {
    pub fn from_fn(n: usize, mut related: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(n <= crate::carrier::MAX_POINTS);
        let rows = (0..n)
            .map(|x| (0..n).filter(|&y| related(x, y)).fold(0u64, |row, y| row | 1 << y))
            .collect();
        Relation { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.n && y < self.n && self.rows[x] >> y & 1 == 1
    }

    /// Related pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| (0..self.n).filter(move |&y| self.contains(x, y)).map(move |y| (x, y)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        // x R y forces row(y) ⊆ row(x): everything reachable from y is reachable from x.
        (0..self.n).all(|x| {
            (0..self.n).all(|y| !self.contains(x, y) || self.rows[y] & !self.rows[x] == 0)
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| !(self.contains(x, y) && self.contains(y, x))))
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_reflexive() && self.is_transitive() && self.is_antisymmetric()
    }

    /// Covering pairs of a partial order: related pairs `x < y` (distinct)
    /// with no third element strictly between. Meaningful only when
    /// `is_partial_order()` holds.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, y) in self.pairs() {
            if x == y {
                continue;
            }
            let between = (0..self.n)
                .any(|z| z != x && z != y && self.contains(x, z) && self.contains(z, y));
            if !between {
                out.push((x, y));
            }
        }
        out
    }

    /// Related pairs of distinct elements, lexicographically.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs().filter(|&(x, y)| x != y).collect()
    }
}
