use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::PartitionG;
use crate::boxnorm::{box_norm_12, frame_transform, inverse_transform, BoxFrame, BoxMode, DEFAULT_RESTARTS, EXACT_CAP};
use crate::group::GroupTable;
use crate::math;
use crate::{Error, FunctionGG, Result};

pub const DEFAULT_CELL_CAP: usize = 4096;

/// The three decomposition frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum RegFrame {
    /// `Q₁`, controlled by `‖·‖_{⊗1,12}`
    One,
    /// `Q₂`, controlled by `‖·‖_{⊗1,2}`
    Two,
    /// `Q₃`, controlled by `‖·‖_{⊗12,2}`
    Three,
}

impl From<RegFrame> for u8 {
    fn from(f: RegFrame) -> u8 {
        f.index()
    }
}

impl TryFrom<u8> for RegFrame {
    type Error = Error;

    fn try_from(i: u8) -> Result<Self> {
        match i {
            1 => Ok(RegFrame::One),
            2 => Ok(RegFrame::Two),
            3 => Ok(RegFrame::Three),
            _ => Err(Error::InvalidArgument("decomposition frame must be 1, 2 or 3")),
        }
    }
}

impl RegFrame {
    pub const ALL: [RegFrame; 3] = [RegFrame::One, RegFrame::Two, RegFrame::Three];

    pub fn index(self) -> u8 {
        match self {
            RegFrame::One => 1,
            RegFrame::Two => 2,
            RegFrame::Three => 3,
        }
    }

    /// The box norm whose axes `(a, b)` carry the two partitions:
    /// frame 1 `(y, x⁻¹y)`, frame 2 `(x, y)`, frame 3 `(x⁻¹y, x)`.
    pub fn box_frame(self) -> BoxFrame {
        match self {
            RegFrame::One => BoxFrame::X1_12,
            RegFrame::Two => BoxFrame::X12,
            RegFrame::Three => BoxFrame::X12_2,
        }
    }
}

/// A coordinate on `G × G` that a summand factor reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    X,
    Y,
    XinvY,
}

impl Axis {
    #[inline]
    pub fn eval(self, g: &GroupTable, x: usize, y: usize) -> usize {
        match self {
            Axis::X => x,
            Axis::Y => y,
            Axis::XinvY => g.ldiv(x, y),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// The witness pairing fell to `η` or below.
    Converged,
    /// The residual vanished identically.
    ZeroResidual,
    /// Refining would exceed the cell cap.
    CellCap,
    IterationCap,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionOptions {
    pub eta: f64,
    pub cell_cap: usize,
    /// `None` selects `⌈1/η²⌉ + 1`.
    pub iteration_cap: Option<usize>,
    pub restarts: usize,
    /// Witnesses come from the exact box norm when `n` is at most this.
    pub exact_limit: usize,
    pub seed: u64,
}

impl DecompositionOptions {
    pub fn new(eta: f64, seed: u64) -> Self {
        DecompositionOptions {
            eta,
            cell_cap: DEFAULT_CELL_CAP,
            iteration_cap: None,
            restarts: DEFAULT_RESTARTS,
            exact_limit: EXACT_CAP,
            seed,
        }
    }

    pub fn effective_iteration_cap(&self) -> usize {
        self.iteration_cap.unwrap_or_else(|| {
            let cap = math::ceil(1.0 / (self.eta * self.eta)) + 1.0;
            if cap >= usize::MAX as f64 {
                usize::MAX
            } else {
                cap as usize
            }
        })
    }
}

/// `f = E f + f^⊥` with `E` the conditional expectation onto a product
/// partition in one of the frames.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionGG {
    pub frame: RegFrame,
    pub eta: f64,
    /// Partition on the first axis of the frame (`y`, `x`, `x⁻¹y`).
    pub first: PartitionG,
    /// Partition on the second axis of the frame (`x⁻¹y`, `y`, `x`).
    pub second: PartitionG,
    /// `cell_values[p·|second| + q]` is the average of `f` on cell `(p, q)`.
    pub cell_values: Vec<f64>,
    pub structured: FunctionGG,
    pub residual: FunctionGG,
    /// Box norm of the residual at the last witness search: exact when
    /// `residual_exact`, otherwise a heuristic lower bound.
    pub certified_residual: f64,
    pub residual_exact: bool,
    /// `‖E f‖₂²` before the first and after every accepted refinement.
    pub energy_log: Vec<f64>,
    /// Witness pairing that justified each accepted refinement.
    pub witness_log: Vec<f64>,
    pub stop: StopReason,
}

impl DecompositionGG {
    /// `|Qᵢ|`; every product cell is nonempty.
    pub fn cell_count(&self) -> usize {
        self.first.cells() * self.second.cells()
    }

    pub fn iterations(&self) -> usize {
        self.witness_log.len()
    }

    pub fn export(&self) -> DecompositionExport {
        DecompositionExport {
            frame: self.frame.index(),
            cells_1: self.first.labels().to_vec(),
            cells_2: self.second.labels().to_vec(),
            cell_values: self.cell_values.clone(),
            eta: self.eta,
            certified_residual: self.certified_residual,
            energy_log: self.energy_log.clone(),
        }
    }
}

/// Flat export of a decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionExport {
    pub frame: u8,
    pub cells_1: Vec<u32>,
    pub cells_2: Vec<u32>,
    pub cell_values: Vec<f64>,
    pub eta: f64,
    pub certified_residual: f64,
    pub energy_log: Vec<f64>,
}

/// Cell averages of `F(a,b)` over `first × second`, and the structured
/// function they define.
fn condition(big_f: &FunctionGG, first: &PartitionG, second: &PartitionG) -> (Vec<f64>, FunctionGG) {
    let n = big_f.n();
    let nb = second.cells();
    let mut sums = vec![0.0; first.cells() * nb];
    for a in 0..n {
        let base = first.cell(a) * nb;
        for (b, v) in big_f.row(a).iter().enumerate() {
            sums[base + second.cell(b)] += v;
        }
    }
    let (sa, sb) = (first.cell_sizes(), second.cell_sizes());
    for p in 0..first.cells() {
        for q in 0..nb {
            sums[p * nb + q] /= (sa[p] * sb[q]) as f64;
        }
    }
    let e = FunctionGG::from_fn(n, |a, b| sums[first.cell(a) * nb + second.cell(b)]);
    (sums, e)
}

/// Energy-increment weak regularity in one frame.
///
/// Each round searches for a sign rectangle `g(a)h(b)` correlating with the
/// residual. If its pairing exceeds `η`, both partitions are split by the
/// witness signs; the rectangle is then measurable for the new partition, so
/// the energy `‖E f‖₂²` grows by at least the pairing squared.
pub fn weak_regularity(
    g: &GroupTable,
    f: &FunctionGG,
    frame: RegFrame,
    opts: &DecompositionOptions,
) -> Result<DecompositionGG> {
    if !(opts.eta > 0.0 && opts.eta <= 1.0) {
        return Err(Error::InvalidArgument("eta must lie in (0, 1]"));
    }
    let n = g.order();
    let big_f = frame_transform(g, f, frame.box_frame())?;
    let mode = if n <= opts.exact_limit.min(EXACT_CAP) {
        BoxMode::Exact
    } else {
        BoxMode::Heuristic {
            restarts: opts.restarts,
        }
    };
    let iteration_cap = opts.effective_iteration_cap();
    let mut first = PartitionG::trivial(n);
    let mut second = PartitionG::trivial(n);
    let (mut values, mut structured) = condition(&big_f, &first, &second);
    let mut energy_log = vec![structured.inner(&structured)];
    let mut witness_log = Vec::new();
    let (stop, certified) = loop {
        let residual = big_f.sub(&structured);
        if residual.sup_norm() <= 1e-12 {
            break (StopReason::ZeroResidual, 0.0);
        }
        let round = witness_log.len() as u64;
        let w = box_norm_12(
            &residual,
            frame.box_frame(),
            mode,
            crate::rng::derive_seed(opts.seed, round),
        )?;
        if w.value <= opts.eta {
            break (StopReason::Converged, w.value);
        }
        if witness_log.len() >= iteration_cap {
            break (StopReason::IterationCap, w.value);
        }
        let next_first = first.refine_by_signs(&w.g_witness);
        let next_second = second.refine_by_signs(&w.h_witness);
        if next_first.cells() > opts.cell_cap || next_second.cells() > opts.cell_cap {
            break (StopReason::CellCap, w.value);
        }
        first = next_first;
        second = next_second;
        (values, structured) = condition(&big_f, &first, &second);
        energy_log.push(structured.inner(&structured));
        witness_log.push(w.value);
    };
    let structured_xy = inverse_transform(g, &structured, frame.box_frame())?
        .checked_range(f.range())
        .expect("cell averages stay in range");
    let residual = f.sub(&structured_xy);
    Ok(DecompositionGG {
        frame,
        eta: opts.eta,
        first,
        second,
        cell_values: values,
        structured: structured_xy,
        residual,
        certified_residual: certified,
        residual_exact: mode.is_exact() || stop == StopReason::ZeroResidual,
        energy_log,
        witness_log,
        stop,
    })
}

/// `E f = Σ_m h′_m(axis₁)·h″_m(axis₂)` with `[-1, 1]`-valued factors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summands {
    pub frame: RegFrame,
    pub axes: [Axis; 2],
    pub pairs: Vec<(Vec<f64>, Vec<f64>)>,
}

impl Summands {
    pub fn count(&self) -> usize {
        self.pairs.len()
    }

    pub fn reassemble(&self, g: &GroupTable) -> FunctionGG {
        let n = g.order();
        FunctionGG::from_fn(n, |x, y| {
            let (i, j) = (self.axes[0].eval(g, x, y), self.axes[1].eval(g, x, y));
            self.pairs.iter().map(|(p, q)| p[i] * q[j]).sum()
        })
    }
}

/// One summand per cell with a nonzero value `v`: `sign(v)·√|v|` times the
/// indicator of one factor cell, `√|v|` times the indicator of the other.
/// Factor order for each frame: `(y, x⁻¹y)`,
/// `(y, x)` and `(x, x⁻¹y)`.
pub fn summands(d: &DecompositionGG) -> Summands {
    let n = d.first.len();
    let nb = d.second.cells();
    let (axes, swap) = match d.frame {
        RegFrame::One => ([Axis::Y, Axis::XinvY], false),
        RegFrame::Two => ([Axis::Y, Axis::X], true),
        RegFrame::Three => ([Axis::X, Axis::XinvY], true),
    };
    let mut pairs = Vec::new();
    for p in 0..d.first.cells() {
        for q in 0..nb {
            let v = d.cell_values[p * nb + q];
            if v == 0.0 {
                continue;
            }
            let root = math::sqrt(v.abs());
            let on_first: Vec<f64> = (0..n).map(|a| if d.first.cell(a) == p { root } else { 0.0 }).collect();
            let on_second: Vec<f64> = (0..n).map(|b| if d.second.cell(b) == q { root } else { 0.0 }).collect();
            let (mut lead, rest) = if swap {
                (on_second, on_first)
            } else {
                (on_first, on_second)
            };
            if v < 0.0 {
                lead.iter_mut().for_each(|t| *t = -*t);
            }
            pairs.push((lead, rest));
        }
    }
    Summands {
        frame: d.frame,
        axes,
        pairs,
    }
}
