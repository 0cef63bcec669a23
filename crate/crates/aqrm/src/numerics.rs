//! Numerical kernels: normalized oscillator eigenfunctions, Gauss–Hermite
//! quadrature, matrix elements in the oscillator basis, and a dense symmetric
//! eigensolver.
//!
//! Conventions: oscillator functions ψ_n are L²-normalized with weight 1 (the
//! Gaussian lives inside ψ_n, not in the measure); quadrature follows the
//! standard Gauss–Hermite weight e^{−x²}. Matrix elements ⟨n|f|m⟩ therefore
//! use modified weights w·e^{x²}, handled in log space so no order Q up to
//! the ceiling can underflow them to NaN.

use std::f64::consts::{LN_2, PI, SQRT_2};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Largest supported oscillator index; accuracy is not guaranteed beyond it.
pub const HERMITE_N_MAX: usize = 1024;
/// Largest supported quadrature order.
pub const QUAD_ORDER_MAX: usize = 2048;
/// Largest supported dense eigenproblem dimension.
pub const EIGEN_DIM_MAX: usize = 8192;

/// L²-normalized n-th harmonic-oscillator eigenfunction ψ_n(ξ).
///
/// Uses the stable normalized three-term recurrence
/// ψ_{k+1} = ξ·√(2/(k+1))·ψ_k − √(k/(k+1))·ψ_{k−1}, seeded with
/// ψ_0 = π^{−1/4}·e^{−ξ²/2}. For |ξ| large enough that the seed would
/// underflow (ξ² ≳ 1400), the Gaussian is factored out and an explicit
/// power-of-two exponent is carried, so there is no overflow or spurious
/// zero for |ξ| ≤ 40, n ≤ [`HERMITE_N_MAX`].
pub fn hermite_function(n: usize, xi: f64) -> Result<f64> {
    if n > HERMITE_N_MAX {
        return Err(Error::InvalidInput(format!(
            "oscillator index {n} exceeds the supported ceiling {HERMITE_N_MAX}"
        )));
    }
    if !xi.is_finite() {
        return Err(Error::InvalidInput(format!("xi must be finite, got {xi}")));
    }
    if 0.5 * xi * xi < 700.0 {
        Ok(hermite_direct(n, xi))
    } else {
        Ok(hermite_scaled(n, xi))
    }
}

fn hermite_direct(n: usize, xi: f64) -> f64 {
    let p0 = PI.powf(-0.25) * (-0.5 * xi * xi).exp();
    if n == 0 {
        return p0;
    }
    let mut a = p0;
    let mut b = SQRT_2 * xi * p0;
    for k in 1..n {
        let kf = k as f64;
        let next = xi * (2.0 / (kf + 1.0)).sqrt() * b - (kf / (kf + 1.0)).sqrt() * a;
        a = b;
        b = next;
    }
    b
}

/// Far-tail evaluation: run the recurrence on the Hermite part
/// h_n = ψ_n·e^{ξ²/2} (which can exceed f64 range), rescaling by exact powers
/// of two, and fold the Gaussian back in through a single log–exp step.
fn hermite_scaled(n: usize, xi: f64) -> f64 {
    let mut exp2: i64 = 0;
    let mut a = PI.powf(-0.25);
    let mut b = SQRT_2 * xi * a;
    if n >= 2 {
        for k in 1..n {
            let kf = k as f64;
            let next = xi * (2.0 / (kf + 1.0)).sqrt() * b - (kf / (kf + 1.0)).sqrt() * a;
            a = b;
            b = next;
            if b.abs() > 1e250 {
                let down = 2f64.powi(-1000);
                a *= down;
                b *= down;
                exp2 += 1000;
            }
        }
    }
    let h = if n == 0 { a } else { b };
    if h == 0.0 {
        return 0.0;
    }
    // |result| = |h| · 2^exp2 · e^{−ξ²/2}; assemble in log space (≤ 0, so
    // exp never overflows; may underflow to 0 when the true value is
    // below f64 range).
    let l = h.abs().ln() + exp2 as f64 * LN_2 - 0.5 * xi * xi;
    h.signum() * l.exp()
}

/// Table ψ_n(x_j) for n < nmax over the given abscissas (row n, column j).
///
/// Same recurrence as [`hermite_function`] in its direct form; entries whose
/// true magnitude is below f64 range come out as an honest 0.
pub(crate) fn hermite_table(nmax: usize, xs: &[f64]) -> DMatrix<f64> {
    let mut t = DMatrix::zeros(nmax, xs.len());
    for (j, &x) in xs.iter().enumerate() {
        t[(0, j)] = PI.powf(-0.25) * (-0.5 * x * x).exp();
        if nmax > 1 {
            t[(1, j)] = SQRT_2 * x * t[(0, j)];
        }
        for n in 1..nmax.saturating_sub(1) {
            let nf = n as f64;
            t[(n + 1, j)] =
                x * (2.0 / (nf + 1.0)).sqrt() * t[(n, j)] - (nf / (nf + 1.0)).sqrt() * t[(n - 1, j)];
        }
    }
    t
}

/// Gauss–Hermite rule for the weight e^{−x²}: ascending symmetric nodes and
/// log-weights. Raw weights for moderate orders are available through
/// [`weights`](Self::weights); solvers consume [`modified_weights`](Self::modified_weights),
/// which absorb the e^{x²} factor without ever materializing an underflowing
/// raw weight.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub order: usize,
    pub nodes: Vec<f64>,
    pub log_weights: Vec<f64>,
}

impl QuadratureRule {
    /// Raw weights w_i (positive in exact arithmetic; for very large orders
    /// the extreme entries fall below f64 range and round to 0 here, which is
    /// why solvers use the log form).
    pub fn weights(&self) -> Vec<f64> {
        self.log_weights.iter().map(|lw| lw.exp()).collect()
    }

    /// Modified weights w̃_i = w_i·e^{x_i²} for integrands that already carry
    /// the Gaussian (products of ψ functions).
    pub fn modified_weights(&self) -> Vec<f64> {
        self.log_weights
            .iter()
            .zip(&self.nodes)
            .map(|(lw, x)| (lw + x * x).exp())
            .collect()
    }

    /// ∫ f(x)·e^{−x²} dx by this rule.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.log_weights)
            .map(|(&x, &lw)| lw.exp() * f(x))
            .sum()
    }
}

/// Gauss–Hermite nodes by Golub–Welsch (eigenvalues of the symmetric Jacobi
/// matrix: zero diagonal, off-diagonal √(k/2)), symmetrized in exact ± pairs;
/// log-weights from the reciprocal Christoffel function,
/// w·e^{x²} = 1/Σ_{k<Q} ψ_k(x)².
///
/// The Christoffel route works entirely in well-scaled ψ values, so weights
/// keep full relative accuracy at every supported order — unlike the
/// eigenvector-component formula, whose tiny edge entries carry only
/// absolute eps-level accuracy out of a dense eigensolver.
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if !(1..=QUAD_ORDER_MAX).contains(&order) {
        return Err(Error::InvalidInput(format!(
            "quadrature order must be in 1..={QUAD_ORDER_MAX}, got {order}"
        )));
    }
    let q = order;
    let jacobi = DMatrix::from_fn(q, q, |i, j| {
        if i.abs_diff(j) == 1 {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = sym_eigen(&jacobi)?;
    let mut nodes = eig.values.clone();
    for i in 0..q / 2 {
        let j = q - 1 - i;
        let s = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -s;
        nodes[j] = s;
    }
    if q % 2 == 1 {
        nodes[q / 2] = 0.0;
    }
    let mut log_weights = vec![0.0; q];
    for i in 0..q.div_ceil(2) {
        let lw = log_raw_weight(q, nodes[q - 1 - i]);
        log_weights[i] = lw;
        log_weights[q - 1 - i] = lw;
    }
    Ok(QuadratureRule { order: q, nodes, log_weights })
}

/// ln of the raw Gauss–Hermite weight at node x via the Christoffel
/// function: w = e^{−x²}/Σ_{k<q} ψ_k(x)², hence
/// ln w = −ln(Σ h_k(x)²·2^{2E}) with h_k = ψ_k·e^{x²/2} carried through the
/// three-term recurrence under exact power-of-two rescaling. Early terms
/// that the rescale flushes to zero are exponentially smaller than the
/// near-turning-point terms that dominate the sum.
fn log_raw_weight(q: usize, x: f64) -> f64 {
    let mut exp2: i64 = 0;
    let mut a = PI.powf(-0.25);
    let mut sum = a * a;
    let mut b = SQRT_2 * x * a;
    if q > 1 {
        sum += b * b;
        for k in 1..q - 1 {
            let kf = k as f64;
            let next = x * (2.0 / (kf + 1.0)).sqrt() * b - (kf / (kf + 1.0)).sqrt() * a;
            a = b;
            b = next;
            // rescale while b² is still far from overflow
            if b.abs() > 1e150 {
                let down = 2f64.powi(-500);
                a *= down;
                b *= down;
                sum *= down * down;
                exp2 += 500;
            }
            sum += b * b;
        }
    }
    -(sum.ln() + 2.0 * exp2 as f64 * LN_2)
}

/// Matrix element ⟨n|f(ξ)|m⟩ = Σ_i w̃_i·ψ_n(x_i)·f(x_i)·ψ_m(x_i).
///
/// Exact for f polynomial of degree ≤ 2Q−1−n−m; for the smooth non-polynomial
/// integrands used here it converges geometrically in Q. Symmetric in (n, m)
/// by construction. NaN/∞ produced by `f` propagate to the result.
pub fn basis_matrix_element(
    f: impl Fn(f64) -> f64,
    n: usize,
    m: usize,
    rule: &QuadratureRule,
) -> Result<f64> {
    let mut acc = 0.0;
    for (&x, &lw) in rule.nodes.iter().zip(&rule.log_weights) {
        let wt = (lw + x * x).exp();
        // ψn·ψm first: commutative, so the result is bit-identical in (n, m)
        let p = hermite_function(n, x)? * hermite_function(m, x)?;
        acc += wt * f(x) * p;
    }
    Ok(acc)
}

/// Result of [`sym_eigen`]: ascending eigenvalues with matching orthonormal
/// eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Dense symmetric eigendecomposition (tridiagonalization + implicit QL via
/// nalgebra), with validated symmetric input, ascending eigenvalue order, and
/// an explicit iteration-limit error instead of silent garbage.
pub fn sym_eigen(a: &DMatrix<f64>) -> Result<EigenDecomposition> {
    let n = a.nrows();
    if n == 0 || a.ncols() != n {
        return Err(Error::InvalidInput(format!(
            "eigensolver needs a non-empty square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if n > EIGEN_DIM_MAX {
        return Err(Error::InvalidInput(format!(
            "matrix dimension {n} exceeds the supported ceiling {EIGEN_DIM_MAX}"
        )));
    }
    let mut amax: f64 = 0.0;
    let mut asym: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            amax = amax.max(a[(i, j)].abs());
            asym = asym.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    if !amax.is_finite() {
        return Err(Error::InvalidInput("matrix contains non-finite entries".into()));
    }
    if asym > 1e-12 * (1.0 + amax) {
        return Err(Error::InvalidInput(format!(
            "matrix is not symmetric: max |A - A^T| = {asym:.3e} for max |A| = {amax:.3e}"
        )));
    }
    let eig = nalgebra::SymmetricEigen::try_new(a.clone(), f64::EPSILON, 50 * n)
        .ok_or_else(|| Error::Solver(format!("symmetric eigensolver hit the iteration limit at dimension {n}")))?;
    if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::Solver("eigensolver produced non-finite eigenvalues".into()));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values: Vec<f64> = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (k, &i) in idx.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    Ok(EigenDecomposition { values, vectors })
}
