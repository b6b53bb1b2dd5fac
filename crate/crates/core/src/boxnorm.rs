//! Box (cut) norms on `G × G` in the three coordinate frames.
//!
//! `‖f‖_{⊗1,2} = sup ∬ f(x,y)·g(x)·h(y)` over `‖g‖∞, ‖h‖∞ ≤ 1`; the other two
//! norms pair `f` with `g(y)·h(x⁻¹y)` and `g(x⁻¹y)·h(x)`. After the change of
//! variables in [`frame_transform`] all three become the `(1,2)` norm of a
//! transformed function `F(a, b)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::group::GroupTable;
use crate::rng::{self, derive_seed};
use crate::{Error, FunctionGG, Result};

pub const EXACT_CAP: usize = 20;
pub const DEFAULT_RESTARTS: usize = 32;
const MAX_ASCENT_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoxFrame {
    /// `g(x)·h(y)`
    #[serde(rename = "1,2")]
    X12,
    /// `g(y)·h(x⁻¹y)`
    #[serde(rename = "1,12")]
    X1_12,
    /// `g(x⁻¹y)·h(x)`
    #[serde(rename = "12,2")]
    X12_2,
}

impl BoxFrame {
    pub const ALL: [BoxFrame; 3] = [BoxFrame::X12, BoxFrame::X1_12, BoxFrame::X12_2];

    pub fn tag(self) -> &'static str {
        match self {
            BoxFrame::X12 => "1,2",
            BoxFrame::X1_12 => "1,12",
            BoxFrame::X12_2 => "12,2",
        }
    }
}

impl fmt::Display for BoxFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tag())
    }
}

impl FromStr for BoxFrame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').replace(' ', "");
        BoxFrame::ALL
            .into_iter()
            .find(|f| f.tag() == t)
            .ok_or(Error::InvalidArgument("frame must be one of (1,2), (1,12), (12,2)"))
    }
}

/// `F` with `∬ F(a,b) g(a) h(b)` equal to the frame's pairing of `f`:
///
/// * `(1,2)`: `F(a,b) = f(a,b)`
/// * `(1,12)`: `F(a,b) = f(a·b⁻¹, a)` (`a = y`, `b = x⁻¹y`)
/// * `(12,2)`: `F(a,b) = f(b, b·a)` (`a = x⁻¹y`, `b = x`)
pub fn frame_transform(g: &GroupTable, f: &FunctionGG, frame: BoxFrame) -> Result<FunctionGG> {
    check(g, f)?;
    let n = g.order();
    let out = match frame {
        BoxFrame::X12 => f.clone(),
        BoxFrame::X1_12 => FunctionGG::from_fn(n, |a, b| f.get(g.mul(a, g.inv(b)), a)),
        BoxFrame::X12_2 => FunctionGG::from_fn(n, |a, b| f.get(b, g.mul(b, a))),
    };
    Ok(out.checked_range(f.range()).expect("substitution preserves values"))
}

/// Inverse of [`frame_transform`].
pub fn inverse_transform(g: &GroupTable, big_f: &FunctionGG, frame: BoxFrame) -> Result<FunctionGG> {
    check(g, big_f)?;
    let n = g.order();
    let out = match frame {
        BoxFrame::X12 => big_f.clone(),
        BoxFrame::X1_12 => FunctionGG::from_fn(n, |x, y| big_f.get(y, g.ldiv(x, y))),
        BoxFrame::X12_2 => FunctionGG::from_fn(n, |x, y| big_f.get(g.ldiv(x, y), x)),
    };
    Ok(out.checked_range(big_f.range()).expect("substitution preserves values"))
}

fn check(g: &GroupTable, f: &FunctionGG) -> Result<()> {
    if f.n() != g.order() {
        return Err(Error::DomainMismatch("function and group orders differ"));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum BoxMode {
    /// Enumerates all sign vectors on the first axis (`n ≤ 20`).
    Exact,
    /// Alternating sign ascent; a lower bound.
    Heuristic { restarts: usize },
}

impl BoxMode {
    pub fn heuristic() -> Self {
        BoxMode::Heuristic {
            restarts: DEFAULT_RESTARTS,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BoxMode::Exact)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxNormResult {
    pub value: f64,
    pub exact: bool,
    pub frame: BoxFrame,
    /// Signs on the first axis of the frame.
    pub g_witness: Vec<f64>,
    /// Signs on the second axis of the frame.
    pub h_witness: Vec<f64>,
    pub restarts: usize,
}

/// Box norm of `f` in `frame`.
pub fn box_norm(g: &GroupTable, f: &FunctionGG, frame: BoxFrame, mode: BoxMode, seed: u64) -> Result<BoxNormResult> {
    let big_f = frame_transform(g, f, frame)?;
    box_norm_12(&big_f, frame, mode, seed)
}

/// The `(1,2)` norm of an already transformed function; `frame` is only
/// recorded in the result.
pub fn box_norm_12(big_f: &FunctionGG, frame: BoxFrame, mode: BoxMode, seed: u64) -> Result<BoxNormResult> {
    let (gw, hw, restarts) = match mode {
        BoxMode::Exact => {
            let (gw, hw) = exact_witness(big_f)?;
            (gw, hw, 0)
        }
        BoxMode::Heuristic { restarts } => {
            let (gw, hw) = heuristic_witness(big_f, restarts, seed);
            (gw, hw, restarts)
        }
    };
    Ok(BoxNormResult {
        value: pairing(big_f, &gw, &hw),
        exact: mode.is_exact(),
        frame,
        g_witness: gw,
        h_witness: hw,
        restarts,
    })
}

/// `avg_{a,b} F(a,b)·g(a)·h(b)`
pub fn pairing(big_f: &FunctionGG, gw: &[f64], hw: &[f64]) -> f64 {
    let n = big_f.n();
    let mut total = 0.0;
    for (a, &ga) in gw.iter().enumerate() {
        total += ga * big_f.row(a).iter().zip(hw).map(|(v, h)| v * h).sum::<f64>();
    }
    total / (n * n) as f64
}

#[inline]
fn sign_of(v: f64) -> f64 {
    if v < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// `m_b = Σ_a g(a)·F(a,b)`
fn column_marginal(big_f: &FunctionGG, gw: &[f64]) -> Vec<f64> {
    let mut m = vec![0.0; big_f.n()];
    for (a, &ga) in gw.iter().enumerate() {
        for (mb, v) in m.iter_mut().zip(big_f.row(a)) {
            *mb += ga * v;
        }
    }
    m
}

/// `m_a = Σ_b F(a,b)·h(b)`
fn row_marginal(big_f: &FunctionGG, hw: &[f64]) -> Vec<f64> {
    (0..big_f.n())
        .map(|a| big_f.row(a).iter().zip(hw).map(|(v, h)| v * h).sum())
        .collect()
}

fn exact_witness(big_f: &FunctionGG) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = big_f.n();
    if n > EXACT_CAP {
        return Err(Error::ExactCapExceeded { n, cap: EXACT_CAP });
    }
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    // g and -g give the same value, so g(0) = +1 is fixed and the remaining
    // n - 1 signs run through a Gray code.
    let mut gw = vec![1.0; n];
    let mut m = column_marginal(big_f, &gw);
    let score = |m: &[f64]| m.iter().map(|v| v.abs()).sum::<f64>();
    let mut best = (score(&m), gw.clone());
    for step in 1u64..(1u64 << (n - 1)) {
        let a = 1 + step.trailing_zeros() as usize;
        gw[a] = -gw[a];
        for (mb, v) in m.iter_mut().zip(big_f.row(a)) {
            *mb += 2.0 * gw[a] * v;
        }
        let s = score(&m);
        if s > best.0 {
            best = (s, gw.clone());
        }
    }
    let gw = best.1;
    let hw = column_marginal(big_f, &gw).into_iter().map(sign_of).collect();
    Ok((gw, hw))
}

/// Alternates `h ← sign(marginal of g)`, `g ← sign(marginal of h)` until the
/// pairing stops increasing.
fn ascend(big_f: &FunctionGG, mut gw: Vec<f64>) -> (Vec<f64>, Vec<f64>, f64) {
    let mut hw: Vec<f64> = column_marginal(big_f, &gw).into_iter().map(sign_of).collect();
    let mut value = pairing(big_f, &gw, &hw);
    for _ in 0..MAX_ASCENT_STEPS {
        let g_next: Vec<f64> = row_marginal(big_f, &hw).into_iter().map(sign_of).collect();
        let h_next: Vec<f64> = column_marginal(big_f, &g_next).into_iter().map(sign_of).collect();
        let v = pairing(big_f, &g_next, &h_next);
        if v <= value {
            break;
        }
        (gw, hw, value) = (g_next, h_next, v);
    }
    (gw, hw, value)
}

fn heuristic_witness(big_f: &FunctionGG, restarts: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let n = big_f.n();
    // deterministic start: signs read off the row with the largest ℓ¹ mass
    let heavy = (0..n)
        .map(|a| (a, big_f.row(a).iter().map(|v| v.abs()).sum::<f64>()))
        .fold(
            (0, f64::NEG_INFINITY),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        )
        .0;
    let h0: Vec<f64> = if n == 0 {
        Vec::new()
    } else {
        big_f.row(heavy).iter().map(|&v| sign_of(v)).collect()
    };
    let g0: Vec<f64> = row_marginal(big_f, &h0).into_iter().map(sign_of).collect();
    let mut best = ascend(big_f, g0);
    for r in 0..restarts {
        let mut rand = rng::rng(derive_seed(seed, r as u64));
        let start = (0..n).map(|_| rng::sign(&mut rand)).collect();
        let cand = ascend(big_f, start);
        if cand.2 > best.2 {
            best = cand;
        }
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, BuildOptions, GroupSpec};

    fn group(s: &str) -> GroupTable {
        build_group(&GroupSpec::parse(s).unwrap(), &BuildOptions::default()).unwrap()
    }

    /// Brute force over all sign pairs.
    fn oracle(big_f: &FunctionGG) -> f64 {
        let n = big_f.n();
        let signs = |mask: u32| -> Vec<f64> { (0..n).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect() };
        let mut best = f64::NEG_INFINITY;
        for gm in 0..(1u32 << n) {
            for hm in 0..(1u32 << n) {
                best = best.max(pairing(big_f, &signs(gm), &signs(hm)));
            }
        }
        best
    }

    #[test]
    fn cyclic2_checkerboard() {
        let g = group("cyclic(2)");
        let f = FunctionGG::new(2, vec![1.0, -1.0, -1.0, 1.0]).unwrap();
        let r = box_norm(&g, &f, BoxFrame::X12, BoxMode::Exact, 0).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.g_witness, [1.0, -1.0]);
        assert_eq!(r.h_witness, [1.0, -1.0]);
    }

    #[test]
    fn constants_and_zero() {
        let g = group("cyclic(3)");
        for mode in [BoxMode::Exact, BoxMode::heuristic()] {
            let c = FunctionGG::constant(3, -0.4);
            assert!((box_norm(&g, &c, BoxFrame::X12, mode, 1).unwrap().value - 0.4).abs() < 1e-15);
            assert_eq!(
                box_norm(&g, &FunctionGG::zeros(3), BoxFrame::X1_12, mode, 1)
                    .unwrap()
                    .value,
                0.0
            );
        }
    }

    #[test]
    fn transform_matches_pairing_definition() {
        let g = group("cyclic(2)");
        let f = FunctionGG::from_fn(2, |x, y| (1 + 2 * x + y) as f64);
        let big = frame_transform(&g, &f, BoxFrame::X1_12).unwrap();
        // F(a,b) = f(a−b, a)
        assert_eq!(big.data(), &[1.0, 3.0, 4.0, 2.0]);

        let s3 = group("symmetric(3)");
        let f = FunctionGG::random_uniform(6, 4);
        let u: Vec<f64> = (0..6).map(|i| i as f64 - 2.5).collect();
        let v: Vec<f64> = (0..6).map(|i| (i * i) as f64 / 7.0).collect();
        for frame in BoxFrame::ALL {
            let mut direct = 0.0;
            for x in 0..6 {
                for y in 0..6 {
                    let w = s3.ldiv(x, y);
                    direct += f.get(x, y)
                        * match frame {
                            BoxFrame::X12 => u[x] * v[y],
                            BoxFrame::X1_12 => u[y] * v[w],
                            BoxFrame::X12_2 => u[w] * v[x],
                        };
                }
            }
            let big = frame_transform(&s3, &f, frame).unwrap();
            assert!((pairing(&big, &u, &v) - direct / 36.0).abs() < 1e-12, "{frame}");
            let back = inverse_transform(&s3, &big, frame).unwrap();
            assert_eq!(back, f);
        }
    }

    #[test]
    fn exact_matches_oracle_and_bounds_heuristic() {
        let g = group("dihedral(3)");
        for seed in 0..6 {
            let f = FunctionGG::random_uniform(6, seed);
            for frame in BoxFrame::ALL {
                let big = frame_transform(&g, &f, frame).unwrap();
                let exact = box_norm(&g, &f, frame, BoxMode::Exact, seed).unwrap();
                assert!((exact.value - oracle(&big)).abs() < 1e-12);
                let heur = box_norm(&g, &f, frame, BoxMode::heuristic(), seed).unwrap();
                assert!(heur.value <= exact.value + 1e-12);
                assert!(exact.value <= f.l1_norm() + 1e-12);
            }
        }
    }

    #[test]
    fn heuristic_is_exact_on_rank_one_signs() {
        let f = FunctionGG::from_fn(
            16,
            |a, b| if (a * 7 + 3) % 5 < 2 { 1.0 } else { -1.0 } * if b % 3 == 0 { -1.0 } else { 1.0 },
        );
        let r = box_norm_12(&f, BoxFrame::X12, BoxMode::Heuristic { restarts: 0 }, 0).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn exact_cap() {
        let f = FunctionGG::zeros(21);
        assert_eq!(
            box_norm_12(&f, BoxFrame::X12, BoxMode::Exact, 0),
            Err(Error::ExactCapExceeded { n: 21, cap: 20 })
        );
    }

    #[test]
    fn parse_frames() {
        assert_eq!("(1,12)".parse::<BoxFrame>().unwrap(), BoxFrame::X1_12);
        assert_eq!("12,2".parse::<BoxFrame>().unwrap(), BoxFrame::X12_2);
        assert!("2,1".parse::<BoxFrame>().is_err());
    }
}
