//! The symbol matrix M_{I,I'} and its inner box, lattice paths and special columns.

use std::fmt;

use serde_json::{json, Value};

use super::{ColumnIndex, Symbol};
use crate::combin::{AllowedPair, PartitionData};

/// Position of the inner box inside the full shape.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct InnerBox {
    /// Size parameter k: the box is k × (2k+1).
    pub k: usize,
    /// Number of rows above the box.
    pub top_removed: usize,
}

impl InnerBox {
    /// 0-based rows of the box.
    pub fn rows(&self) -> std::ops::Range<usize> {
        self.top_removed..self.top_removed + self.k
    }

    /// 0-based column positions of the box in an n-shape.
    pub fn positions(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        n - self.k..=n + self.k
    }

    /// Original position of box column `c` (box indexing, box size k) in an n-shape.
    pub fn to_original(&self, n: usize, c: ColumnIndex) -> usize {
        let shift = n - self.k;
        match c {
            ColumnIndex::Pos(q) => ColumnIndex::Pos(q + shift).position(n),
            ColumnIndex::Zero => n,
            ColumnIndex::Neg(q) => ColumnIndex::Neg(q + shift).position(n),
        }
    }
}

/// The n × (2n+1) grid over {0, 1, +, *} attached to an allowed pair.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolShape {
    pair: AllowedPair,
    grid: Vec<Vec<Symbol>>,
    inner: InnerBox,
    plus: Vec<(usize, usize)>,
    stars: Vec<(usize, usize)>,
    windows: Vec<(usize, usize)>,
}

pub fn build_shape(pair: &AllowedPair) -> SymbolShape {
    let n = pair.n();
    let w = 2 * n + 1;
    let lam: PartitionData = pair.partitions();
    let lamp: PartitionData = pair.partitions_prime();
    let (s, sp) = (lam.s(), lamp.s());
    let mut grid = vec![vec![Symbol::Zero; w]; n];
    let mut windows = Vec::with_capacity(n);
    for p in 1..=n {
        let left = if p <= sp { n + lamp.lambda_at(p) } else { lamp.mu_at(p) };
        let right = if p > n - s { n + lam.lambda_at(n + 1 - p) } else { lam.mu_at(n + 1 - p) };
        assert!(left + right < w, "row {p} has no free entries");
        let (lo, hi) = (left, w - 1 - right);
        let row = &mut grid[p - 1];
        row[hi] = Symbol::One;
        for (pos, cell) in row.iter_mut().enumerate().take(hi).skip(lo) {
            *cell = if pos < n { Symbol::Star } else { Symbol::Plus };
        }
        windows.push((lo, hi));
    }
    let top_removed = if pair.j() > 0 { sp - 1 } else { sp };
    let inner = InnerBox { k: pair.k(), top_removed };
    let collect = |sym| {
        let mut v = Vec::new();
        for (r, row) in grid.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x == sym {
                    v.push((r, c));
                }
            }
        }
        v
    };
    let plus = collect(Symbol::Plus);
    let stars = collect(Symbol::Star);
    SymbolShape { pair: *pair, grid, inner, plus, stars, windows }
}

impl SymbolShape {
    pub fn pair(&self) -> &AllowedPair {
        &self.pair
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn width(&self) -> usize {
        2 * self.n() + 1
    }

    pub fn grid(&self) -> &[Vec<Symbol>] {
        &self.grid
    }

    pub fn symbol(&self, row: usize, pos: usize) -> Symbol {
        self.grid[row][pos]
    }

    pub fn inner_box(&self) -> InnerBox {
        self.inner
    }

    /// Plus positions `(row, position)`, 0-based, row-major.
    pub fn plus_positions(&self) -> &[(usize, usize)] {
        &self.plus
    }

    pub fn star_positions(&self) -> &[(usize, usize)] {
        &self.stars
    }

    pub fn plus_count(&self) -> usize {
        self.plus.len()
    }

    pub fn star_count(&self) -> usize {
        self.stars.len()
    }

    /// 0-based `(first nonzero, one)` positions of each row.
    pub fn window(&self, row: usize) -> (usize, usize) {
        self.windows[row]
    }

    pub fn one_position(&self, row: usize) -> usize {
        self.windows[row].1
    }

    pub fn plus_index(&self, row: usize, pos: usize) -> Option<usize> {
        self.plus.iter().position(|&x| x == (row, pos))
    }

    /// Rows of the form `"00++1"`.
    pub fn row_strings(&self) -> Vec<String> {
        self.grid.iter().map(|row| row.iter().map(|s| s.as_char()).collect()).collect()
    }

    /// The inner box as its own grid, rows top to bottom.
    pub fn inner_grid(&self) -> Vec<Vec<Symbol>> {
        let n = self.n();
        self.inner.rows().map(|r| self.grid[r][self.inner.positions(n)].to_vec()).collect()
    }

    fn nonzero_cells(&self, rows: impl Iterator<Item = usize>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in rows {
            let (lo, hi) = self.windows[r];
            out.extend((lo..=hi).map(|c| (r, c)));
        }
        out
    }

    /// Path from the bottom-left entry to the bottom-left corner of the inner box.
    /// For saturated pairs this is the whole concatenated path.
    pub fn path_sw(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        if self.pair.is_saturated() {
            return self.nonzero_cells((0..n).rev());
        }
        let bottom = self.inner.rows().end - 1;
        let corner = (bottom, n - self.inner.k);
        let mut out = self.nonzero_cells((bottom + 1..n).rev());
        let (lo, _) = self.windows[bottom];
        out.extend((lo..corner.1).map(|c| (bottom, c)));
        out.push(corner);
        out
    }

    /// Path from the top-right corner of the inner box to the top-right entry.
    /// Empty for saturated pairs, whose single path is [`SymbolShape::path_sw`].
    pub fn path_ne(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        if self.pair.is_saturated() {
            return Vec::new();
        }
        let top = self.inner.top_removed;
        let corner = (top, n + self.inner.k);
        let mut out = vec![corner];
        let (_, hi) = self.windows[top];
        out.extend((corner.1 + 1..=hi).map(|c| (top, c)));
        out.extend(self.nonzero_cells((0..top).rev()));
        out
    }

    /// Columns in which the lattice paths step upward, read off the paths.
    pub fn upward_steps(&self) -> Vec<ColumnIndex> {
        let n = self.n();
        let mut out = Vec::new();
        for path in [self.path_sw(), self.path_ne()] {
            for w in path.windows(2) {
                if w[1].1 == w[0].1 && w[1].0 + 1 == w[0].0 {
                    out.push(ColumnIndex::from_position(n, w[0].1));
                }
            }
        }
        out
    }

    /// Special columns from λ and λ': n+1-λ_h, then the barred n+1-λ'_h.
    pub fn special_columns(&self) -> Vec<ColumnIndex> {
        let n = self.n();
        let lam = self.pair.partitions();
        let lamp = self.pair.partitions_prime();
        let mut out: Vec<ColumnIndex> = lam.lambda.iter().map(|&l| ColumnIndex::Pos(n + 1 - l)).collect();
        let count = if self.pair.j() > 0 { lamp.s() - 1 } else { lamp.s() };
        out.extend(lamp.lambda[..count].iter().rev().map(|&l| ColumnIndex::Neg(n + 1 - l)));
        out
    }

    pub fn to_json(&self) -> Value {
        let n = self.n();
        let cell = |(r, c): (usize, usize)| json!([r + 1, ColumnIndex::from_position(n, c).label()]);
        let rows = self.inner.rows();
        json!({
            "pair": self.pair.to_json(),
            "j": self.pair.j(),
            "k": self.pair.k(),
            "rows": self.row_strings(),
            "columns": (0..self.width()).map(|c| ColumnIndex::from_position(n, c).label()).collect::<Vec<_>>(),
            "plus_count": self.plus_count(),
            "star_count": self.star_count(),
            "inner_box": {
                "k": self.inner.k,
                "rows": [rows.start + 1, rows.end],
                "columns": [ColumnIndex::from_position(n, n - self.inner.k).label(), ColumnIndex::from_position(n, n + self.inner.k).label()],
            },
            "path_sw": self.path_sw().into_iter().map(cell).collect::<Vec<_>>(),
            "path_ne": self.path_ne().into_iter().map(cell).collect::<Vec<_>>(),
            "special_columns": self.special_columns().iter().map(|c| c.label()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for SymbolShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolShape{} ", self.pair)?;
        f.debug_list().entries(self.row_strings()).finish()
    }
}

impl fmt::Display for SymbolShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.grid {
            let cells: Vec<String> = row.iter().map(|s| s.as_char().to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
