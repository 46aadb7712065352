//! Generalized Pauli operators and the translation unitaries `T_α`.
//!
//! The Hilbert space is `n` qudits of dimension `r`. Basis state `|k⟩` has
//! digits `(k_1, .., k_n)` with particle 1 the most significant base-`r`
//! digit. Every `T_α` sends `|k⟩` to a phase times `|k'⟩`, so it is stored
//! as a monomial operator with exact phases `η^e`, `η = e^{2πi/r}`.

use crate::error::{Error, Result};
use crate::geometry::PhasePoint;
use crate::gf::{Field, FieldBasis, FieldElement};
use crate::linalg::{root_of_unity, CMatrix, C64, ZERO};

/// `|k⟩ ↦ η^{phase[k]} |target[k]⟩`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylOperator {
    r: u32,
    target: Vec<u32>,
    phase: Vec<u32>,
}

impl WeylOperator {
    pub fn identity(r: u32, dim: usize) -> Self {
        WeylOperator { r, target: (0..dim as u32).collect(), phase: vec![0; dim] }
    }

    /// `⊗_i X^{a_i} Z^{b_i}` on `a.len()` qudits of dimension `r`.
    pub fn from_exponents(r: u32, a: &[u32], b: &[u32]) -> Self {
        let n = a.len();
        let dim = (r as usize).pow(n as u32);
        let mut target = Vec::with_capacity(dim);
        let mut phase = Vec::with_capacity(dim);
        for k in 0..dim {
            let digits = digits_of(k, r, n);
            let mut t = 0usize;
            let mut e = 0u32;
            for i in 0..n {
                t = t * r as usize + ((digits[i] + a[i]) % r) as usize;
                e = (e + b[i] * digits[i]) % r;
            }
            target.push(t as u32);
            phase.push(e);
        }
        WeylOperator { r, target, phase }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn target(&self) -> &[u32] {
        &self.target
    }

    pub fn phase_exponents(&self) -> &[u32] {
        &self.phase
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &WeylOperator) -> WeylOperator {
        let r = self.r;
        let (target, phase) = other
            .target
            .iter()
            .zip(&other.phase)
            .map(|(&t, &e)| (self.target[t as usize], (e + self.phase[t as usize]) % r))
            .unzip();
        WeylOperator { r, target, phase }
    }

    pub fn adjoint(&self) -> WeylOperator {
        let r = self.r;
        let mut target = vec![0u32; self.dim()];
        let mut phase = vec![0u32; self.dim()];
        for (k, (&t, &e)) in self.target.iter().zip(&self.phase).enumerate() {
            target[t as usize] = k as u32;
            phase[t as usize] = (r - e) % r;
        }
        WeylOperator { r, target, phase }
    }

    pub fn pow(&self, e: u32) -> WeylOperator {
        (0..e).fold(Self::identity(self.r, self.dim()), |acc, _| acc.compose(self))
    }

    /// If the operator is `η^e I`, returns `e`.
    pub fn scalar_exponent(&self) -> Option<u32> {
        let e = *self.phase.first()?;
        let diag = self.target.iter().enumerate().all(|(k, &t)| t as usize == k);
        (diag && self.phase.iter().all(|&x| x == e)).then_some(e)
    }

    pub fn trace(&self) -> C64 {
        self.target
            .iter()
            .zip(&self.phase)
            .enumerate()
            .filter(|(k, (t, _))| **t as usize == *k)
            .map(|(_, (_, &e))| root_of_unity(e as i64, self.r))
            .sum()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; v.len()];
        for (k, (&t, &e)) in self.target.iter().zip(&self.phase).enumerate() {
            out[t as usize] += root_of_unity(e as i64, self.r) * v[k];
        }
        out
    }

    /// `self · m` for a dense matrix.
    pub fn apply_left(&self, m: &CMatrix) -> CMatrix {
        let d = m.dim();
        let mut out = CMatrix::zeros(d);
        for (k, (&t, &e)) in self.target.iter().zip(&self.phase).enumerate() {
            let ph = root_of_unity(e as i64, self.r);
            for j in 0..d {
                out[(t as usize, j)] += ph * m[(k, j)];
            }
        }
        out
    }

    /// `self · m · self†`.
    pub fn conjugate(&self, m: &CMatrix) -> CMatrix {
        let d = m.dim();
        let ph: Vec<C64> = self.phase.iter().map(|&e| root_of_unity(e as i64, self.r)).collect();
        let mut out = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let (ti, tj) = (self.target[i] as usize, self.target[j] as usize);
                out[(ti, tj)] = ph[i] * m[(i, j)] * ph[j].conj();
            }
        }
        out
    }

    pub fn to_matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim());
        for (k, (&t, &e)) in self.target.iter().zip(&self.phase).enumerate() {
            m[(t as usize, k)] = root_of_unity(e as i64, self.r);
        }
        m
    }
}

/// Base-`r` digits of `k`, most significant first, `n` of them.
pub fn digits_of(k: usize, r: u32, n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n];
    let mut k = k;
    for i in (0..n).rev() {
        d[i] = (k % r as usize) as u32;
        k /= r as usize;
    }
    d
}

pub fn index_of_digits(d: &[u32], r: u32) -> usize {
    d.iter().fold(0usize, |acc, &x| acc * r as usize + x as usize)
}

/// The shift `X|k⟩ = |k+1⟩` and clock `Z|k⟩ = η^k|k⟩` on one qudit.
pub fn shift_clock(r: u32) -> (CMatrix, CMatrix) {
    (WeylOperator::from_exponents(r, &[1], &[0]).to_matrix(), WeylOperator::from_exponents(r, &[0], &[1]).to_matrix())
}

/// Field bases for the horizontal (`E`) and vertical (`F`) axes with the
/// multiplier `w` satisfying `f_i = w ẽ_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisPair {
    e: FieldBasis,
    f: FieldBasis,
    w: Option<FieldElement>,
}

/// Returns `w` with `F = w · dual(E)`.
pub fn validate_basis_pair(e: &FieldBasis, f: &FieldBasis) -> Result<FieldElement> {
    if e.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    let dual = e.dual();
    let (d0, f0) = (dual.elems()[0], f.elems()[0]);
    let w = f0 / d0;
    if dual.elems().iter().zip(f.elems()).all(|(&d, &fi)| w * d == fi) {
        Ok(w)
    } else {
        Err(Error::NoSuchW)
    }
}

impl BasisPair {
    pub fn new(e: FieldBasis, f: FieldBasis) -> Result<Self> {
        let w = validate_basis_pair(&e, &f)?;
        Ok(BasisPair { e, f, w: Some(w) })
    }

    /// `F = w · dual(E)`.
    pub fn from_w(e: FieldBasis, w: FieldElement) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let f = e.dual().scaled(w)?;
        Ok(BasisPair { e, f, w: Some(w) })
    }

    /// A pair that skips validation; translation operators still build but
    /// parallel translations need not commute.
    pub fn unchecked(e: FieldBasis, f: FieldBasis) -> Self {
        let w = validate_basis_pair(&e, &f).ok();
        BasisPair { e, f, w }
    }

    /// `E = (1, x, ..)` with `F` its dual (`w = 1`).
    pub fn standard(field: Field) -> Self {
        Self::from_w(FieldBasis::polynomial(field), field.one()).expect("polynomial basis")
    }

    pub fn field(&self) -> Field {
        self.e.field()
    }

    pub fn e(&self) -> &FieldBasis {
        &self.e
    }

    pub fn f(&self) -> &FieldBasis {
        &self.f
    }

    /// `None` for an unchecked pair that fails validation.
    pub fn w(&self) -> Option<FieldElement> {
        self.w
    }

    pub fn is_valid(&self) -> bool {
        self.w.is_some()
    }

    pub fn dim(&self) -> usize {
        self.field().order()
    }

    /// Exponents `(x_e, y_f)` for `T_α`.
    pub fn exponents(&self, alpha: PhasePoint) -> (Vec<u32>, Vec<u32>) {
        (self.e.expand(alpha.q), self.f.expand(alpha.p))
    }

    /// `x · p = Σ x_{ei} p_{fi}` in `F_r`, lifted to `0..r`.
    pub fn dot(&self, x: FieldElement, p: FieldElement) -> u32 {
        let r = self.field().r();
        self.e.expand(x).iter().zip(self.f.expand(p)).map(|(a, b)| a * b).sum::<u32>() % r
    }
}

pub fn translation_operator(alpha: PhasePoint, pair: &BasisPair) -> WeylOperator {
    let (a, b) = pair.exponents(alpha);
    WeylOperator::from_exponents(pair.field().r(), &a, &b)
}

/// Exponent `e` with `T_α T_β T_α† T_β† = η^e I`, namely `x·p − q·y` for
/// `α = (q,p)`, `β = (x,y)`.
pub fn commutation_exponent(alpha: PhasePoint, beta: PhasePoint, pair: &BasisPair) -> u32 {
    let r = pair.field().r();
    (pair.dot(beta.q, alpha.p) + r - pair.dot(alpha.q, beta.p)) % r
}

pub fn commutation_phase(alpha: PhasePoint, beta: PhasePoint, pair: &BasisPair) -> C64 {
    root_of_unity(commutation_exponent(alpha, beta, pair) as i64, pair.field().r())
}
