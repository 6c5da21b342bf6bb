//! Fixed-size complex matrices and a cyclic Jacobi eigensolver.
//!
//! Everything in this crate lives in dimension 2 or 4, so the matrix
//! support is hand-rolled rather than pulled from a general linear
//! algebra crate: the code stays auditable and the eigensolver can be
//! tuned to exactly the tolerances the entropy routines need.

use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub type C64 = Complex64;

/// Complex column vector of dimension `N`.
pub type CVec<const N: usize> = [C64; N];

/// Dense complex `N`×`N` matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize> {
    entries: [[C64; N]; N],
}

/// Two-qubit (4×4) complex matrix.
pub type Mat4 = CMat<4>;
/// Single-qubit (2×2) complex matrix.
pub type Mat2 = CMat<2>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        Self {
            entries: [[ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = ONE;
        }
        m
    }

    pub fn from_rows(entries: [[C64; N]; N]) -> Self {
        Self { entries }
    }

    /// Matrix from real row entries (imaginary parts zero).
    pub fn from_real_rows(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for (dst, src) in m.entries.iter_mut().zip(rows.iter()) {
            for (d, &s) in dst.iter_mut().zip(src.iter()) {
                *d = cr(s);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i][j] = v;
    }

    pub fn scale(&self, a: C64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for v in row.iter_mut() {
                *v *= a;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] += other.entries[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] -= other.entries[i][j];
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.entries[i][j] += a * other.entries[k][j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn diagonal(&self) -> [C64; N] {
        let mut d = [ZERO; N];
        for (i, slot) in d.iter_mut().enumerate() {
            *slot = self.entries[i][i];
        }
        d
    }

    /// Matrix with the off-diagonal entries zeroed.
    pub fn diagonal_part(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            out.entries[i][i] = self.entries[i][i];
        }
        out
    }

    /// Largest entrywise modulus of the difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entrywise modulus of `M - M†`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    /// Sum of moduli of the off-diagonal entries.
    pub fn offdiag_abs_sum(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += self.entries[i][j].norm();
                }
            }
        }
        s
    }

    /// Quadratic form ⟨v|M|v⟩ (real part; exact for Hermitian `M`).
    pub fn expectation(&self, v: &CVec<N>) -> f64 {
        let mut acc = ZERO;
        for i in 0..N {
            for j in 0..N {
                acc += v[i].conj() * self.entries[i][j] * v[j];
            }
        }
        acc.re
    }

    /// Outer product |v⟩⟨v|.
    pub fn outer(v: &CVec<N>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    fn offdiag_norm(&self) -> f64 {
        let mut s = 0.0;
        for p in 0..N {
            for q in 0..N {
                if p != q {
                    s += self.entries[p][q].norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

/// Orthonormal qubit basis pair for Bloch angles (θ, φ):
/// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩ and its orthogonal complement.
pub fn bloch_basis_vectors(theta: f64, phi: f64) -> [CVec<2>; 2] {
    let (s, co) = (theta / 2.0).sin_cos();
    let phase = C64::from_polar(1.0, phi);
    [[cr(co), phase * s], [cr(s), -phase * co]]
}

/// Pauli matrices σ1, σ2, σ3.
pub fn pauli(index: usize) -> Mat2 {
    match index {
        1 => Mat2::from_rows([[ZERO, ONE], [ONE, ZERO]]),
        2 => Mat2::from_rows([[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]]),
        3 => Mat2::from_rows([[ONE, ZERO], [ZERO, cr(-1.0)]]),
        _ => panic!("pauli index must be 1, 2 or 3"),
    }
}

/// Kronecker product of two single-qubit matrices, qubit A first.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.set(2 * i + k, 2 * j + l, a.get(i, j) * b.get(k, l));
                }
            }
        }
    }
    m
}

/// Kronecker product of two single-qubit vectors, qubit A first.
pub fn kron_vec(a: &CVec<2>, b: &CVec<2>) -> CVec<4> {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// Partial trace over qubit B: the reduced operator on A.
pub fn partial_trace_b(m: &Mat4) -> Mat2 {
    let mut out = Mat2::zeros();
    for i in 0..2 {
        for k in 0..2 {
            let mut s = ZERO;
            for b in 0..2 {
                s += m.get(2 * i + b, 2 * k + b);
            }
            out.set(i, k, s);
        }
    }
    out
}

/// Partial trace over qubit A: the reduced operator on B.
pub fn partial_trace_a(m: &Mat4) -> Mat2 {
    let mut out = Mat2::zeros();
    for j in 0..2 {
        for l in 0..2 {
            let mut s = ZERO;
            for a in 0..2 {
                s += m.get(2 * a + j, 2 * a + l);
            }
            out.set(j, l, s);
        }
    }
    out
}

/// ⟨v|M|v⟩ restricted to qubit A: the 2×2 operator `R` on B with
/// `R[j][l] = Σ_{ik} v̄_i M[(i,j),(k,l)] v_k`. Equals Tr_A[(|v⟩⟨v|⊗I) M (|v⟩⟨v|⊗I)].
pub fn sandwich_a(m: &Mat4, v: &CVec<2>) -> Mat2 {
    let mut out = Mat2::zeros();
    for j in 0..2 {
        for l in 0..2 {
            let mut s = ZERO;
            for i in 0..2 {
                for k in 0..2 {
                    s += v[i].conj() * m.get(2 * i + j, 2 * k + l) * v[k];
                }
            }
            out.set(j, l, s);
        }
    }
    out
}

/// Convergence target for the Jacobi sweep: off-diagonal Frobenius norm.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-13;
/// Sweep budget; exceeded only for malformed (non-Hermitian) input.
pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order together with the matching
/// eigenvectors as columns. Fails with `None` if the off-diagonal norm
/// has not dropped below `JACOBI_OFFDIAG_TOL` after `JACOBI_MAX_SWEEPS`
/// sweeps, which for 2×2/4×4 Hermitian input never happens in practice.
pub fn jacobi_hermitian<const N: usize>(m: &CMat<N>) -> Option<([f64; N], CMat<N>)> {
    let mut a = *m;
    let mut v = CMat::<N>::identity();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if a.offdiag_norm() < JACOBI_OFFDIAG_TOL {
            converged = true;
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a.entries[p][q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // Unitary 2×2 rotation [[c, -s e^{iα}], [s e^{-iα}, c]]
                // zeroing a_pq, with tan 2θ = 2|a_pq| / (a_pp - a_qq).
                let alpha = apq.arg();
                let phase = C64::from_polar(1.0, alpha);
                let theta = 0.5 * (2.0 * r).atan2(a.entries[p][p].re - a.entries[q][q].re);
                let (s, co) = theta.sin_cos();

                // A <- U† A U, columns first.
                for k in 0..N {
                    let akp = a.entries[k][p];
                    let akq = a.entries[k][q];
                    a.entries[k][p] = akp * co + akq * s * phase.conj();
                    a.entries[k][q] = akq * co - akp * s * phase;
                }
                for k in 0..N {
                    let apk = a.entries[p][k];
                    let aqk = a.entries[q][k];
                    a.entries[p][k] = apk * co + aqk * s * phase;
                    a.entries[q][k] = aqk * co - apk * s * phase.conj();
                }
                a.entries[p][q] = ZERO;
                a.entries[q][p] = ZERO;

                // V <- V U.
                for k in 0..N {
                    let vkp = v.entries[k][p];
                    let vkq = v.entries[k][q];
                    v.entries[k][p] = vkp * co + vkq * s * phase.conj();
                    v.entries[k][q] = vkq * co - vkp * s * phase;
                }
            }
        }
    }
    if !converged && a.offdiag_norm() >= JACOBI_OFFDIAG_TOL {
        return None;
    }

    let mut order: [usize; N] = [0; N];
    for (i, slot) in order.iter_mut().enumerate() {
        *slot = i;
    }
    order.sort_by(|&i, &j| a.entries[i][i].re.total_cmp(&a.entries[j][j].re));

    let mut vals = [0.0f64; N];
    let mut vecs = CMat::<N>::zeros();
    for (dst, &src) in order.iter().enumerate() {
        vals[dst] = a.entries[src][src].re;
        for k in 0..N {
            vecs.entries[k][dst] = v.entries[k][src];
        }
    }
    Some((vals, vecs))
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues<const N: usize>(m: &CMat<N>) -> Option<[f64; N]> {
    jacobi_hermitian(m).map(|(vals, _)| vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn pauli_products_square_to_identity() {
        for k in 1..=3 {
            let p = pauli(k);
            assert!(p.matmul(&p).max_abs_diff(&Mat2::identity()) < 1e-15);
        }
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let m = kron(&Mat2::identity(), &Mat2::identity());
        assert!(m.max_abs_diff(&Mat4::identity()) < 1e-15);
    }

    #[test]
    fn partial_traces_of_kron_factorize() {
        let a = Mat2::from_real_rows([[0.7, 0.1], [0.1, 0.3]]);
        let b = Mat2::from_real_rows([[0.2, 0.0], [0.0, 0.8]]);
        let m = kron(&a, &b);
        assert!(partial_trace_b(&m).max_abs_diff(&a) < 1e-15);
        assert!(partial_trace_a(&m).max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn jacobi_diagonal_matrix_is_fixed_point() {
        let m = Mat4::from_real_rows([
            [0.4, 0.0, 0.0, 0.0],
            [0.0, 0.1, 0.0, 0.0],
            [0.0, 0.0, 0.3, 0.0],
            [0.0, 0.0, 0.0, 0.2],
        ]);
        let (vals, _) = jacobi_hermitian(&m).unwrap();
        assert_eq!(vals, [0.1, 0.2, 0.3, 0.4]);
    }

    #[test]
    fn jacobi_recovers_complex_hermitian_spectrum() {
        // σ2 has eigenvalues ±1 and genuinely complex entries.
        let (vals, vecs) = jacobi_hermitian(&pauli(2)).unwrap();
        assert_close(vals[0], -1.0, 1e-14);
        assert_close(vals[1], 1.0, 1e-14);
        // Eigenvector columns stay orthonormal.
        let gram = vecs.dagger().matmul(&vecs);
        assert!(gram.max_abs_diff(&Mat2::identity()) < 1e-13);
    }

    #[test]
    fn jacobi_reconstructs_input() {
        let m = Mat4::from_rows([
            [cr(0.5), c(0.1, 0.2), ZERO, c(0.0, -0.1)],
            [c(0.1, -0.2), cr(0.2), c(0.05, 0.0), ZERO],
            [ZERO, c(0.05, 0.0), cr(0.2), c(0.1, 0.1)],
            [c(0.0, 0.1), ZERO, c(0.1, -0.1), cr(0.1)],
        ]);
        assert!(m.hermiticity_residual() < 1e-15);
        let (vals, vecs) = jacobi_hermitian(&m).unwrap();
        let mut d = Mat4::zeros();
        for (i, &val) in vals.iter().enumerate() {
            d.set(i, i, cr(val));
        }
        let rebuilt = vecs.matmul(&d).matmul(&vecs.dagger());
        assert!(rebuilt.max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn expectation_matches_outer_product_trace() {
        let v = [c(0.6, 0.0), c(0.0, 0.8)];
        let m = pauli(2);
        let p = Mat2::outer(&v);
        let direct = m.expectation(&v);
        let via_trace = p.matmul(&m).trace().re;
        assert_close(direct, via_trace, 1e-14);
    }

    #[test]
    fn sandwich_a_matches_projector_route() {
        let rho = Mat4::from_real_rows([
            [0.4, 0.0, 0.0, 0.1],
            [0.0, 0.1, 0.05, 0.0],
            [0.0, 0.05, 0.2, 0.0],
            [0.1, 0.0, 0.0, 0.3],
        ]);
        let v = [c(0.8, 0.0), c(0.36, 0.48)];
        let proj = kron(&Mat2::outer(&v), &Mat2::identity());
        let expected = partial_trace_a(&proj.matmul(&rho).matmul(&proj));
        assert!(sandwich_a(&rho, &v).max_abs_diff(&expected) < 1e-14);
    }
}
