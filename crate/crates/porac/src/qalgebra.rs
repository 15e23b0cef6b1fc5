//! Complex-matrix algebra for qubit and two-qubit states, observables, POVM
//! elements and unsharp Kraus instruments.
//!
//! Everything here is small (d ∈ {2,4}) and dense; matrices are stored
//! row-major. Validity checks use an absolute entrywise tolerance of
//! [`VALIDITY_TOL`], algebraic identities are verified to [`ALGEBRA_TOL`].

use num_complex::Complex64;

use crate::{Error, Result};

/// Absolute tolerance for state/observable validity checks.
pub const VALIDITY_TOL: f64 = 1e-10;
/// Absolute tolerance for algebraic identities (completeness, round trips).
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Dense row-major complex matrix of dimension 2 or 4.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::DimMismatch(format!("dim must be 2 or 4, got {dim}")));
        }
        Ok(Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        Ok(m)
    }

    pub fn from_data(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimMismatch(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        let mut m = Self::zeros(dim)?;
        m.data = data;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { dim: self.dim, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { dim: self.dim, data }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self { dim: d, data: vec![Complex64::new(0.0, 0.0); d * d] };
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let d = self.dim;
        let mut out = self.clone();
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product of two 2×2 matrices, giving a 4×4 matrix.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.dim != 2 || other.dim != 2 {
            return Err(Error::DimMismatch("kron expects two 2x2 factors".into()));
        }
        let mut out = Self::zeros(4)?;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.set(2 * i + k, 2 * j + l, self.get(i, j) * other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Closed form for d=2,
    /// cyclic complex Jacobi sweeps for d=4 (no external solver needed at
    /// these sizes).
    pub fn eigenvalues_hermitian(&self) -> Vec<f64> {
        if self.dim == 2 {
            let a = self.get(0, 0).re;
            let c = self.get(1, 1).re;
            let b = self.get(0, 1).norm();
            let mean = 0.5 * (a + c);
            let r = (0.25 * (a - c) * (a - c) + b * b).sqrt();
            return vec![mean - r, mean + r];
        }
        let mut m = self.clone();
        let d = self.dim;
        for _sweep in 0..100 {
            let off: f64 = (0..d)
                .flat_map(|p| (p + 1..d).map(move |q| (p, q)))
                .map(|(p, q)| m.get(p, q).norm_sqr())
                .sum();
            if off < 1e-28 {
                break;
            }
            for p in 0..d {
                for q in (p + 1)..d {
                    let apq = m.get(p, q);
                    let mag = apq.norm();
                    if mag < 1e-300 {
                        continue;
                    }
                    // Complex Givens rotation annihilating the (p,q) entry.
                    let phase = apq / mag;
                    let app = m.get(p, p).re;
                    let aqq = m.get(q, q).re;
                    let tau = (aqq - app) / (2.0 * mag);
                    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = phase * Complex64::new(t * c, 0.0);
                    // Update rows/columns p and q of m = J† m J with
                    // J[p][p]=c, J[q][q]=c, J[p][q]=s, J[q][p]=-s̄.
                    for k in 0..d {
                        let mkp = m.get(k, p);
                        let mkq = m.get(k, q);
                        m.set(k, p, mkp * c - mkq * s.conj());
                        m.set(k, q, mkp * s + mkq * c);
                    }
                    for k in 0..d {
                        let mpk = m.get(p, k);
                        let mqk = m.get(q, k);
                        m.set(p, k, mpk * c - mqk * s);
                        m.set(q, k, mpk * s.conj() + mqk * c);
                    }
                }
            }
        }
        let mut eigs: Vec<f64> = (0..d).map(|i| m.get(i, i).re).collect();
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        eigs
    }
}

/// Bloch vector of a qubit state; norm ≤ 1, unit norm for pure states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(c * self.x, c * self.y, c * self.z)
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    pub fn normalized(&self) -> Self {
        self.scaled(1.0 / self.norm())
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-9
    }
}

pub fn pauli_x() -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    ComplexMatrix::from_data(2, vec![o, l, l, o]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    ComplexMatrix::from_data(2, vec![o, -i, i, o]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    ComplexMatrix::from_data(2, vec![l, o, o, -l]).unwrap()
}

/// Dichotomic observable: Hermitian involution (B² = I) with zero trace.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_hermitian(VALIDITY_TOL) {
            return Err(Error::InvalidObservable("not Hermitian".into()));
        }
        let id = ComplexMatrix::identity(matrix.dim())?;
        if matrix.mul(&matrix).max_abs_diff(&id) > VALIDITY_TOL {
            return Err(Error::InvalidObservable("B^2 != I".into()));
        }
        if matrix.trace().norm() > VALIDITY_TOL {
            return Err(Error::InvalidObservable("trace != 0".into()));
        }
        Ok(Self { matrix })
    }

    /// Observable b̂·σ for a unit Bloch direction b̂.
    pub fn from_direction(dir: &BlochVector) -> Result<Self> {
        if (dir.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidObservable(format!(
                "direction must be unit length, got norm {}",
                dir.norm()
            )));
        }
        let m = pauli_x()
            .scale_re(dir.x)
            .add(&pauli_y().scale_re(dir.y))
            .add(&pauli_z().scale_re(dir.z));
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// An observable together with an unsharpness parameter λ and the derived
/// Kraus coefficients α, β.
///
/// α = (√((1−λ)/2) + √((1+λ)/2))/2 and β = (√((1+λ)/2) − √((1−λ)/2))/2,
/// which satisfy α² + β² = 1/2 and 4αβ = λ.
#[derive(Clone, Debug)]
pub struct UnsharpSetting {
    pub observable: Observable,
    pub lambda: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl UnsharpSetting {
    pub fn new(observable: Observable, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange(format!("lambda must be in [0,1], got {lambda}")));
        }
        let lo = ((1.0 - lambda) / 2.0).sqrt();
        let hi = ((1.0 + lambda) / 2.0).sqrt();
        Ok(Self { observable, lambda, alpha: 0.5 * (lo + hi), beta: 0.5 * (hi - lo) })
    }

    pub fn dim(&self) -> usize {
        self.observable.dim()
    }
}

/// Density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_hermitian(VALIDITY_TOL) {
            return Err(Error::InvalidState("not Hermitian".into()));
        }
        if (matrix.trace().re - 1.0).abs() > VALIDITY_TOL || matrix.trace().im.abs() > VALIDITY_TOL
        {
            return Err(Error::InvalidState(format!("trace = {} != 1", matrix.trace())));
        }
        let min_eig = matrix.eigenvalues_hermitian()[0];
        if min_eig < -VALIDITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_eig}")));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn purity(&self) -> f64 {
        self.matrix.mul(&self.matrix).trace().re
    }
}

/// ρ = (I + a·σ)/2 for a Bloch vector a.
pub fn state_from_bloch(a: &BlochVector) -> Result<DensityMatrix> {
    if a.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidState(format!("Bloch norm {} > 1", a.norm())));
    }
    let m = ComplexMatrix::identity(2)?
        .add(&pauli_x().scale_re(a.x))
        .add(&pauli_y().scale_re(a.y))
        .add(&pauli_z().scale_re(a.z))
        .scale_re(0.5);
    DensityMatrix::new(m)
}

/// Inverse of [`state_from_bloch`]: a = (tr(ρσx), tr(ρσy), tr(ρσz)).
pub fn bloch_from_state(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimMismatch("bloch_from_state expects a qubit state".into()));
    }
    Ok(BlochVector::new(
        rho.matrix().mul(&pauli_x()).trace().re,
        rho.matrix().mul(&pauli_y()).trace().re,
        rho.matrix().mul(&pauli_z()).trace().re,
    ))
}

/// Kraus pair K± = αI ± βB of the unsharp instrument (the residual unitary
/// freedom is fixed to the identity).
pub fn kraus_pair(s: &UnsharpSetting) -> (ComplexMatrix, ComplexMatrix) {
    let id = ComplexMatrix::identity(s.dim()).unwrap();
    let a = id.scale_re(s.alpha);
    let b = s.observable.matrix().scale_re(s.beta);
    (a.add(&b), a.sub(&b))
}

/// POVM element M = (I + λ(−1)^outcome B)/2.
pub fn povm_element(s: &UnsharpSetting, outcome: u8) -> ComplexMatrix {
    let sign = if outcome == 0 { 1.0 } else { -1.0 };
    ComplexMatrix::identity(s.dim())
        .unwrap()
        .add(&s.observable.matrix().scale_re(sign * s.lambda))
        .scale_re(0.5)
}

/// The mutually anticommuting two-qubit set B₁=σx⊗σx, B₂=σx⊗σy, B₃=σx⊗σz,
/// B₄=σy⊗I.
pub fn two_qubit_anticommuting_set() -> [Observable; 4] {
    let id = ComplexMatrix::identity(2).unwrap();
    [
        Observable::new(pauli_x().kron(&pauli_x()).unwrap()).unwrap(),
        Observable::new(pauli_x().kron(&pauli_y()).unwrap()).unwrap(),
        Observable::new(pauli_x().kron(&pauli_z()).unwrap()).unwrap(),
        Observable::new(pauli_y().kron(&id).unwrap()).unwrap(),
    ]
}
