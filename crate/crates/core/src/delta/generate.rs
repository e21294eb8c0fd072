//! In-place construction of balanced matrices.
//!
//! Each spec owns a rectangular block of one output buffer. A split writes
//! its first row, lets the two halves fill the blocks beneath it, and then
//! merges by permuting rows inside the lower block. Every cell write and
//! every row relocation is tallied in an [`OpCounter`].

use super::ending::{ending_kind, write_ending};
use super::merge::{shift_order, weight_order};
use super::{check_l_condition, split_unchecked, DeltaSpec, Strategy};
use crate::bitmatrix::BitMatrix;
use crate::error::Result;

/// Work done by one generation run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    /// Matrix cells written, including rewrites caused by row moves.
    pub element_writes: u64,
    /// Whole rows relocated by flips, rotations or sorting.
    pub row_moves: u64,
    /// Deepest split level reached; 0 for an ending state.
    pub recursion_depth: usize,
}

impl OpCounter {
    pub fn reset(&mut self) {
        *self = OpCounter::default();
    }

    pub fn absorb(&mut self, other: &OpCounter) {
        self.element_writes += other.element_writes;
        self.row_moves += other.row_moves;
        self.recursion_depth = self.recursion_depth.max(other.recursion_depth);
    }
}

#[derive(Clone, Copy, Debug)]
struct Block {
    row0: usize,
    col0: usize,
    spec: DeltaSpec,
    depth: usize,
}

struct Engine {
    buf: BitMatrix,
    strategy: Strategy,
    ops: OpCounter,
    scratch: Vec<u8>,
}

impl Engine {
    fn new(spec: DeltaSpec, strategy: Strategy) -> Self {
        Self {
            buf: BitMatrix::zeros(spec.rows, spec.width),
            strategy,
            ops: OpCounter::default(),
            scratch: Vec::new(),
        }
    }

    /// Fills `block` if it is a base case; otherwise writes its top row and
    /// returns the two child blocks.
    fn expand(&mut self, block: Block) -> Option<(Block, Block)> {
        self.ops.recursion_depth = self.ops.recursion_depth.max(block.depth);
        let spec = block.spec;
        if let Some(kind) = ending_kind(spec) {
            self.ops.element_writes += write_ending(&mut self.buf, block.row0, block.col0, spec, kind);
            return None;
        }
        let split = split_unchecked(spec);
        let top = &mut self.buf.row_mut(block.row0)[block.col0..block.col0 + spec.width];
        for (c, cell) in top.iter_mut().enumerate() {
            *cell = (c < split.left_width) as u8;
        }
        self.ops.element_writes += spec.width as u64;

        let (left, right) = split.children(spec);
        let child = |spec, col0| Block {
            row0: block.row0 + 1,
            col0,
            spec,
            depth: block.depth + 1,
        };
        Some((
            child(left, block.col0),
            child(right, block.col0 + split.left_width),
        ))
    }

    /// Merges the already-filled halves of a split block.
    fn merge(&mut self, block: Block) {
        let spec = block.spec;
        let split = split_unchecked(spec);
        let lower = spec.rows - 1;
        let row0 = block.row0 + 1;
        let right_col = block.col0 + split.left_width;
        let right_width = spec.width - split.left_width;
        match self.strategy {
            Strategy::Shift => {
                let order = shift_order(lower, split.left_heavy, split.right_heavy);
                self.permute(row0, right_col, right_width, &order);
            }
            Strategy::Flip => {
                let flip: Vec<usize> = (0..lower).rev().collect();
                self.permute(row0, right_col, right_width, &flip);
                let weights: Vec<usize> = (row0..row0 + lower)
                    .map(|r| {
                        self.buf.row(r)[block.col0..block.col0 + spec.width]
                            .iter()
                            .map(|&b| b as usize)
                            .sum()
                    })
                    .collect();
                let order = weight_order(&weights);
                self.permute(row0, block.col0, spec.width, &order);
            }
        }
    }

    /// Applies `order` (dest <- src) to the rows of a sub-block, counting
    /// only rows that actually change position.
    fn permute(&mut self, row0: usize, col0: usize, width: usize, order: &[usize]) {
        if width == 0 {
            return;
        }
        let moved = order.iter().enumerate().filter(|(d, s)| d != *s).count();
        if moved == 0 {
            return;
        }
        self.scratch.clear();
        for r in 0..order.len() {
            self.scratch
                .extend_from_slice(&self.buf.row(row0 + r)[col0..col0 + width]);
        }
        for (dest, &src) in order.iter().enumerate() {
            if dest != src {
                self.buf.row_mut(row0 + dest)[col0..col0 + width]
                    .copy_from_slice(&self.scratch[src * width..(src + 1) * width]);
            }
        }
        self.ops.row_moves += moved as u64;
        self.ops.element_writes += (moved * width) as u64;
    }

    fn build_recursive(&mut self, block: Block) {
        if let Some((left, right)) = self.expand(block) {
            self.build_recursive(left);
            self.build_recursive(right);
            self.merge(block);
        }
    }

    fn build_with_stack(&mut self, root: Block) {
        enum Task {
            Build(Block),
            Merge(Block),
        }
        let mut stack = vec![Task::Build(root)];
        while let Some(task) = stack.pop() {
            match task {
                Task::Build(block) => {
                    if let Some((left, right)) = self.expand(block) {
                        stack.push(Task::Merge(block));
                        stack.push(Task::Build(right));
                        stack.push(Task::Build(left));
                    }
                }
                Task::Merge(block) => self.merge(block),
            }
        }
    }
}

fn root(spec: DeltaSpec) -> Block {
    Block {
        row0: 0,
        col0: 0,
        spec,
        depth: 0,
    }
}

/// Generates the balanced matrix for `spec` by recursive splitting.
///
/// The result has every column of weight `spec.weight`, all columns
/// distinct, exactly `spec.heavy_rows()` rows of weight
/// `spec.base_row_weight() + 1` at the top and the rest at the base weight.
/// Output is deterministic per `(spec, strategy)`.
pub fn generate_delta(spec: DeltaSpec, strategy: Strategy) -> Result<BitMatrix> {
    generate_delta_counted(spec, strategy).map(|(m, _)| m)
}

/// [`generate_delta`] plus the work it performed.
pub fn generate_delta_counted(spec: DeltaSpec, strategy: Strategy) -> Result<(BitMatrix, OpCounter)> {
    check_l_condition(spec)?;
    let mut engine = Engine::new(spec, strategy);
    engine.build_recursive(root(spec));
    Ok((engine.buf, engine.ops))
}

/// Non-recursive generation: decomposes down to base cases with an explicit
/// work stack and merges with the flip merge, reusing one buffer throughout.
pub fn generate_delta_iterative(spec: DeltaSpec) -> Result<BitMatrix> {
    generate_delta_iterative_counted(spec).map(|(m, _)| m)
}

pub fn generate_delta_iterative_counted(spec: DeltaSpec) -> Result<(BitMatrix, OpCounter)> {
    check_l_condition(spec)?;
    let mut engine = Engine::new(spec, Strategy::Flip);
    engine.build_with_stack(root(spec));
    Ok((engine.buf, engine.ops))
}
