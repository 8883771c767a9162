use alloc::vec::Vec;

use super::NetError;

/// Largest supported order. Symbol pairs of a square fit a 256-bit occupancy set.
pub const MAX_ORDER: usize = 16;

/// An `n x n` array of symbols in `[0, n)`, stored row-major. Not necessarily Latin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    order: usize,
    cells: Vec<u8>,
}

impl Grid {
    pub fn new(order: usize, cells: Vec<u8>) -> Result<Self, NetError> {
        if order == 0 || order > MAX_ORDER {
            return Err(NetError::UnsupportedOrder(order));
        }
        if cells.len() != order * order {
            return Err(NetError::Shape {
                expected: order * order,
                found: cells.len(),
            });
        }
        if let Some(&bad) = cells.iter().find(|&&s| s as usize >= order) {
            return Err(NetError::SymbolOutOfRange { symbol: bad as usize, order });
        }
        Ok(Grid { order, cells })
    }

    /// Builds a grid from rows; every row must have as many entries as there are rows.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, NetError> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for row in rows {
            let row = row.as_ref();
            if row.len() != order {
                return Err(NetError::Shape {
                    expected: order,
                    found: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Grid::new(order, cells)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self, NetError> {
        let mut cells = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                let s = f(i, j);
                cells.push(u8::try_from(s).map_err(|_| NetError::SymbolOutOfRange { symbol: s, order })?);
            }
        }
        Grid::new(order, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col] as usize
    }

    pub fn set(&mut self, row: usize, col: usize, symbol: usize) {
        assert!(symbol < self.order);
        self.cells[row * self.order + col] = symbol as u8;
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.cells[row * self.order..(row + 1) * self.order]
    }

    pub fn transpose(&self) -> Grid {
        let n = self.order;
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(self.cells[j * n + i]);
            }
        }
        Grid { order: n, cells }
    }

    pub fn is_latin(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| is_permutation((0..n).map(|j| self.get(i, j)), n))
            && (0..n).all(|j| is_permutation((0..n).map(|i| self.get(i, j)), n))
    }
}

fn is_permutation(symbols: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = 0u32;
    for s in symbols {
        if s >= n || seen & (1 << s) != 0 {
            return false;
        }
        seen |= 1 << s;
    }
    seen.count_ones() as usize == n
}

/// True iff every row and column of `rows` is a permutation of `[0, n)`.
///
/// Rejects ragged or non-square input and symbols outside `[0, n)`.
pub fn is_latin<R: AsRef<[u8]>>(rows: &[R]) -> Result<bool, NetError> {
    Ok(Grid::from_rows(rows)?.is_latin())
}

/// A grid whose rows and columns are all permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatinSquare(Grid);

impl LatinSquare {
    pub fn new(grid: Grid) -> Result<Self, NetError> {
        if grid.is_latin() {
            Ok(LatinSquare(grid))
        } else {
            Err(NetError::NotLatin)
        }
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self, NetError> {
        LatinSquare::new(Grid::from_rows(rows)?)
    }

    /// The Cayley table of the cyclic group: cell `(i, j)` holds `(i + j) mod n`.
    pub fn cyclic(order: usize) -> Result<Self, NetError> {
        LatinSquare::new(Grid::from_fn(order, |i, j| (i + j) % order)?)
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.0.get(row, col)
    }

    pub fn grid(&self) -> &Grid {
        &self.0
    }

    pub fn into_grid(self) -> Grid {
        self.0
    }
}

/// True iff the `n^2` superimposed pairs `(a_ij, b_ij)` are pairwise distinct.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool, NetError> {
    grids_orthogonal(a.grid(), b.grid())
}

/// Orthogonality of two arbitrary grids of equal order.
pub fn grids_orthogonal(a: &Grid, b: &Grid) -> Result<bool, NetError> {
    let n = a.order();
    if b.order() != n {
        return Err(NetError::OrderMismatch { left: n, right: b.order() });
    }
    let mut seen = [0u64; MAX_ORDER * MAX_ORDER / 64];
    for (&sa, &sb) in a.cells().iter().zip(b.cells()) {
        let code = sa as usize * n + sb as usize;
        let (word, bit) = (code / 64, code % 64);
        if seen[word] & (1 << bit) != 0 {
            return Ok(false);
        }
        seen[word] |= 1 << bit;
    }
    Ok(true)
}

/// The composition square `A B^{-1}`: row `i` is row `i` of `a` composed with
/// the inverse of row `i` of `b`, so that `Z[i][b_ij] = a_ij`.
///
/// `Z` is Latin exactly when `a` and `b` are orthogonal.
pub fn compose_with_row_inverse(a: &LatinSquare, b: &LatinSquare) -> Result<Grid, NetError> {
    let n = a.order();
    if b.order() != n {
        return Err(NetError::OrderMismatch { left: n, right: b.order() });
    }
    let mut cells = alloc::vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            cells[i * n + b.get(i, j)] = a.get(i, j) as u8;
        }
    }
    Grid::new(n, cells)
}

/// An orthogonal pair of Latin squares of the same order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MolsPair {
    a: LatinSquare,
    b: LatinSquare,
}

impl MolsPair {
    pub fn new(a: LatinSquare, b: LatinSquare) -> Result<Self, NetError> {
        if !are_orthogonal(&a, &b)? {
            return Err(NetError::NotOrthogonal);
        }
        Ok(MolsPair { a, b })
    }

    pub fn from_grids(a: Grid, b: Grid) -> Result<Self, NetError> {
        MolsPair::new(LatinSquare::new(a)?, LatinSquare::new(b)?)
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn a(&self) -> &LatinSquare {
        &self.a
    }

    pub fn b(&self) -> &LatinSquare {
        &self.b
    }

    pub fn composition(&self) -> Grid {
        compose_with_row_inverse(&self.a, &self.b).expect("orders match by construction")
    }
}

/// All Latin squares of order `n` in lexicographic (row-major) order, by backtracking.
pub fn all_latin_squares(order: usize) -> Vec<LatinSquare> {
    fn fill(
        n: usize,
        pos: usize,
        cells: &mut Vec<u8>,
        rows: &mut [u32],
        cols: &mut [u32],
        out: &mut Vec<LatinSquare>,
    ) {
        if pos == n * n {
            out.push(LatinSquare(Grid { order: n, cells: cells.clone() }));
            return;
        }
        let (i, j) = (pos / n, pos % n);
        for s in 0..n {
            let bit = 1u32 << s;
            if rows[i] & bit == 0 && cols[j] & bit == 0 {
                rows[i] |= bit;
                cols[j] |= bit;
                cells[pos] = s as u8;
                fill(n, pos + 1, cells, rows, cols, out);
                rows[i] &= !bit;
                cols[j] &= !bit;
            }
        }
    }
    let mut out = Vec::new();
    if order == 0 || order > MAX_ORDER {
        return out;
    }
    let mut cells = alloc::vec![0u8; order * order];
    let mut rows = alloc::vec![0u32; order];
    let mut cols = alloc::vec![0u32; order];
    fill(order, 0, &mut cells, &mut rows, &mut cols, &mut out);
    out
}
