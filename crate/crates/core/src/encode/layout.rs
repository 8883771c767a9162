use crate::lit::Var;

/// One of the three `n x n x n` indicator blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    A,
    B,
    /// The composition square `A B^{-1}`.
    Z,
}

impl Block {
    fn base_multiple(self) -> usize {
        match self {
            Block::A => 0,
            Block::B => 1,
            Block::Z => 2,
        }
    }

    pub fn name(self) -> char {
        match self {
            Block::A => 'A',
            Block::B => 'B',
            Block::Z => 'Z',
        }
    }
}

/// Fixed variable numbering.
///
/// `A[i][j][k]` is `i*n^2 + j*n + k + 1`; the B and Z blocks follow at offsets
/// `n^3` and `2n^3`; sequential-counter auxiliaries start at `3n^3 + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarLayout {
    order: usize,
}

impl VarLayout {
    pub fn new(order: usize) -> Self {
        VarLayout { order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn block_size(&self) -> usize {
        self.order.pow(3)
    }

    /// Id of the first auxiliary variable.
    pub fn aux_base(&self) -> u32 {
        (3 * self.block_size() + 1) as u32
    }

    pub fn var(&self, block: Block, row: usize, col: usize, symbol: usize) -> Var {
        let n = self.order;
        debug_assert!(row < n && col < n && symbol < n);
        let offset = block.base_multiple() * n * n * n + row * n * n + col * n + symbol;
        Var::new(offset as u32 + 1)
    }

    pub fn a(&self, row: usize, col: usize, symbol: usize) -> Var {
        self.var(Block::A, row, col, symbol)
    }

    pub fn b(&self, row: usize, col: usize, symbol: usize) -> Var {
        self.var(Block::B, row, col, symbol)
    }

    pub fn z(&self, row: usize, col: usize, symbol: usize) -> Var {
        self.var(Block::Z, row, col, symbol)
    }

    /// Inverse of [`VarLayout::var`]; `None` for auxiliaries.
    pub fn decode(&self, var: Var) -> Option<(Block, usize, usize, usize)> {
        let n = self.order;
        let idx = var.index();
        if idx >= 3 * self.block_size() {
            return None;
        }
        let block = [Block::A, Block::B, Block::Z][idx / self.block_size()];
        let rem = idx % self.block_size();
        Some((block, rem / (n * n), rem / n % n, rem % n))
    }
}

/// Hands out consecutive auxiliary variable ids.
#[derive(Debug, Clone)]
pub struct AuxAllocator {
    next: u32,
}

impl AuxAllocator {
    pub fn new(first: u32) -> Self {
        AuxAllocator { next: first }
    }

    pub fn starting_after(layout: &VarLayout) -> Self {
        AuxAllocator::new(layout.aux_base())
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var::new(self.next);
        self.next += 1;
        v
    }

    /// Highest id handed out so far (or `first - 1` if none).
    pub fn last(&self) -> u32 {
        self.next - 1
    }
}
