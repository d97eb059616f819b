//! Correlation kernels: finite-rank Christoffel–Darboux and summation-formula
//! kernels ([`finite`]) and their bulk/hard-edge limits ([`limit`]), together
//! with the 2×2 quaternion-block type shared by both layers.

pub mod finite;
pub mod limit;

use nalgebra::DMatrix;

/// One 2×2 quaternion block of a matrix-valued kernel evaluated at a pair of
/// levels: [[S, I−δε], [D, Sᵀ]].
///
/// `i_minus` already includes the −½sgn correction when `delta_flag == 1`
/// (orthogonal-class kernels); symplectic-class kernels set `delta_flag == 0`
/// and store the plain integrated entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelBlock {
    /// Scalar kernel value S(x, y).
    pub s: f64,
    /// Integrated entry −∫ₓʸ S(x,t) dt, minus ½sgn(x−y) when `delta_flag` is set.
    pub i_minus: f64,
    /// Derivative entry ∂S/∂x evaluated at (x, y).
    pub d: f64,
    /// Transposed entry S(y, x).
    pub st: f64,
    /// 1 when the ε-term has been subtracted from `i_minus`, else 0.
    pub delta_flag: u8,
}

/// Assembles the 2n×2n self-dual matrix [[S, I−δε], [D, Sᵀ]] from a block
/// evaluator over point indices. Row/column layout: indices 0..n address the
/// S rows and columns, n..2n the D/Sᵀ ones.
pub fn assemble_blocks(n: usize, block: impl Fn(usize, usize) -> KernelBlock) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let b = block(j, k);
            m[(j, k)] = b.s;
            m[(j, n + k)] = b.i_minus;
            m[(n + j, k)] = b.d;
            m[(n + j, n + k)] = b.st;
        }
    }
    m
}
