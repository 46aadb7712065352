//! Phase-point operators, Wigner functions and tomography.
//!
//! `A_α = Σ_{λ∋α} Q(λ) − I` and `W_α = Tr(ρ A_α) / N`. Line sums of `W`
//! are the probabilities `Tr(ρ Q(λ))`, which makes the inverse problem
//! linear: `W_α = (Σ_{λ∋α} P(λ) − 1) / N`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{all_lines, all_points, point_index, Line, PhasePoint};
use crate::gf::Field;
use crate::linalg::{is_positive_definite, round_sig, CMatrix, C64};
use crate::net::QuantumNet;

pub const STATE_HERMITIAN_TOL: f64 = 1e-10;
pub const STATE_TRACE_TOL: f64 = 1e-10;
pub const STATE_EIGEN_TOL: f64 = 1e-8;

/// A validated density matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let h = m.hermiticity_residual();
        if h > STATE_HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (residual {h:e})")));
        }
        let t = (m.trace() - 1.0).norm();
        if t > STATE_TRACE_TOL {
            return Err(Error::InvalidState(format!("trace differs from 1 by {t:e}")));
        }
        let shifted = &m + &CMatrix::identity(m.dim()).scale_re(STATE_EIGEN_TOL);
        if !is_positive_definite(&shifted) {
            return Err(Error::InvalidState(format!("eigenvalue below -{STATE_EIGEN_TOL:e}")));
        }
        Ok(DensityMatrix(m))
    }

    /// `|ψ⟩⟨ψ|` after normalizing `ψ`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let n = crate::linalg::norm(psi);
        if n == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / n).collect();
        Ok(DensityMatrix(CMatrix::projector(&v)))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(CMatrix::identity(dim).scale_re(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }
}

/// `{A_α}` indexed by [`point_index`].
#[derive(Clone, Debug)]
pub struct PhasePointOperators {
    field: Field,
    ops: Vec<CMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorReport {
    pub hermiticity: f64,
    pub trace: f64,
    pub orthogonality: f64,
    /// `max ‖Σ_{α∈λ} A_α − N Q(λ)‖`, only when checked against a net.
    pub line_sum: f64,
}

impl OperatorReport {
    pub fn max(&self) -> f64 {
        self.hermiticity.max(self.trace).max(self.orthogonality).max(self.line_sum)
    }
}

impl PhasePointOperators {
    /// Wrap an explicit family, ordered like [`all_points`].
    pub fn from_ops(field: Field, ops: Vec<CMatrix>) -> Result<Self> {
        let n = field.order();
        if ops.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: ops.len() });
        }
        if let Some(bad) = ops.iter().find(|a| a.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: bad.dim() });
        }
        Ok(PhasePointOperators { field, ops })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, alpha: PhasePoint) -> &CMatrix {
        &self.ops[point_index(alpha)]
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    /// `Q(λ) = (1/N) Σ_{α∈λ} A_α`.
    pub fn line_operator(&self, l: Line) -> CMatrix {
        let n = self.field.order();
        l.points()
            .into_iter()
            .fold(CMatrix::zeros(n), |acc, a| &acc + self.get(a))
            .scale_re(1.0 / n as f64)
    }

    /// Trace, Hermiticity and orthogonality residuals.
    pub fn check(&self) -> OperatorReport {
        let n = self.field.order();
        let mut rep = OperatorReport { hermiticity: 0.0, trace: 0.0, orthogonality: 0.0, line_sum: 0.0 };
        for (i, a) in self.ops.iter().enumerate() {
            rep.hermiticity = rep.hermiticity.max(a.hermiticity_residual());
            rep.trace = rep.trace.max((a.trace() - 1.0).norm());
            for (j, b) in self.ops.iter().enumerate() {
                let want = if i == j { n as f64 } else { 0.0 };
                rep.orthogonality = rep.orthogonality.max((a.trace_product(b) - want).norm());
            }
        }
        rep
    }

    /// [`Self::check`] plus the line-sum property against `net`.
    pub fn check_against(&self, net: &QuantumNet) -> OperatorReport {
        let mut rep = self.check();
        let n = self.field.order() as f64;
        for l in all_lines(self.field) {
            let sum = self.line_operator(l).scale_re(n);
            rep.line_sum = rep.line_sum.max(sum.max_abs_diff(&net.projector(l).scale_re(n)));
        }
        rep
    }

    /// Coefficients `b_α = Tr(M A_α)/N` of `M = Σ b_α A_α`.
    pub fn expand(&self, m: &CMatrix) -> Vec<C64> {
        let n = self.field.order() as f64;
        self.ops.iter().map(|a| m.trace_product(a) / n).collect()
    }

    pub fn resum(&self, coeffs: &[C64]) -> CMatrix {
        let n = self.field.order();
        self.ops.iter().zip(coeffs).fold(CMatrix::zeros(n), |acc, (a, &c)| &acc + &a.scale(c))
    }
}

pub fn phase_point_operators(net: &QuantumNet) -> PhasePointOperators {
    let field = net.field();
    let n = field.order();
    let mut ops = vec![CMatrix::identity(n).scale_re(-1.0); n * n];
    for (l, q) in all_lines(field).into_iter().zip(net.projectors()) {
        for a in l.points() {
            let i = point_index(a);
            ops[i] = &ops[i] + q;
        }
    }
    PhasePointOperators { field, ops }
}

/// A real function on phase space, indexed by [`point_index`].
#[derive(Clone, Debug, PartialEq)]
pub struct WignerMap {
    field: Field,
    values: Vec<f64>,
}

impl WignerMap {
    pub fn from_values(field: Field, values: Vec<f64>) -> Result<Self> {
        let n = field.order();
        if values.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: values.len() });
        }
        Ok(WignerMap { field, values })
    }

    /// From rows `grid[p][q]` (row index = `p.index()`).
    pub fn from_grid(field: Field, grid: &[Vec<f64>]) -> Result<Self> {
        let n = field.order();
        if grid.len() != n || grid.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: grid.len() });
        }
        let values = all_points(field).iter().map(|a| grid[a.p.index()][a.q.index()]).collect();
        Ok(WignerMap { field, values })
    }

    pub fn uniform(field: Field) -> Self {
        let n = field.order();
        WignerMap { field, values: vec![1.0 / (n * n) as f64; n * n] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, alpha: PhasePoint) -> f64 {
        self.values[point_index(alpha)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `grid[p][q]`, bottom row first.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let f = self.field;
        f.elements().map(|p| f.elements().map(|q| self.get(PhasePoint::new(q, p))).collect()).collect()
    }

    pub fn max_abs_diff(&self, other: &WignerMap) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Text table with the origin at the lower left.
    pub fn heatmap(&self) -> String {
        let f = self.field;
        let labels: Vec<String> = f.elements().map(|x| x.to_string()).collect();
        let lw = labels.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for p in f.elements().collect::<Vec<_>>().into_iter().rev() {
            let _ = write!(out, "{:>lw$} |", p.to_string());
            for q in f.elements() {
                let _ = write!(out, " {}", cell(self.get(PhasePoint::new(q, p))));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{:>lw$} +{}", "", "-".repeat(f.order() * 9));
        let _ = write!(out, "{:>lw$}  ", "");
        for l in &labels {
            let _ = write!(out, " {l:>8}");
        }
        out.push('\n');
        out
    }
}

fn cell(x: f64) -> String {
    let x = if x.abs() < 5e-13 { 0.0 } else { x };
    format!("{x:>8.4}")
}

/// JSON form: `{"field": {"r","n"}, "values": [[W(q,p) for q] for p]}`.
#[derive(Serialize, Deserialize)]
pub struct WignerJson {
    pub field: crate::io::FieldJson,
    pub values: Vec<Vec<f64>>,
}

impl From<&WignerMap> for WignerJson {
    fn from(w: &WignerMap) -> Self {
        WignerJson {
            field: w.field.into(),
            values: w.grid().into_iter().map(|r| r.into_iter().map(round_sig).collect()).collect(),
        }
    }
}

/// Largest imaginary part discarded by [`wigner_transform`].
pub fn wigner_imaginary_residual(rho: &DensityMatrix, ops: &PhasePointOperators) -> f64 {
    ops.ops.iter().map(|a| rho.matrix().trace_product(a).im.abs()).fold(0.0, f64::max)
}

pub fn wigner_transform(rho: &DensityMatrix, ops: &PhasePointOperators) -> Result<WignerMap> {
    let n = ops.field.order();
    if rho.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: rho.dim() });
    }
    let values = ops.ops.iter().map(|a| rho.matrix().trace_product(a).re / n as f64).collect();
    Ok(WignerMap { field: ops.field, values })
}

/// `Σ_α W_α A_α`. Not necessarily a valid state when `W` is arbitrary.
pub fn inverse_wigner(w: &WignerMap, ops: &PhasePointOperators) -> CMatrix {
    let coeffs: Vec<C64> = w.values.iter().map(|&x| C64::new(x, 0.0)).collect();
    ops.resum(&coeffs)
}

/// `Σ_{α∈λ} W_α`.
pub fn line_marginal(w: &WignerMap, l: Line) -> f64 {
    l.points().into_iter().map(|a| w.get(a)).sum()
}

/// `Tr(ρ Q(λ))` for every line, in [`all_lines`] order.
pub fn line_probabilities(rho: &DensityMatrix, net: &QuantumNet) -> Vec<f64> {
    net.projectors().iter().map(|q| rho.matrix().trace_product(q).re).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ProbabilityKind {
    #[default]
    Probabilities,
    /// Raw counts; always normalized per striation.
    Frequencies,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TomographyOptions {
    /// Allowed deviation of each striation sum from 1 for probability input.
    pub tolerance: f64,
    pub normalize: bool,
}

impl Default for TomographyOptions {
    fn default() -> Self {
        TomographyOptions { tolerance: 1e-6, normalize: true }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tomography {
    pub wigner: WignerMap,
    /// `max_S |Σ_{λ∈S} P(λ) − 1|` of the raw input.
    pub max_sum_deviation: f64,
}

/// `W_α = (Σ_{λ∋α} P(λ) − 1)/N`, with `probs` in [`all_lines`] order.
pub fn tomographic_reconstruct(
    field: Field,
    probs: &[f64],
    kind: ProbabilityKind,
    opts: TomographyOptions,
) -> Result<Tomography> {
    let n = field.order();
    if probs.len() != n * (n + 1) {
        return Err(Error::DimensionMismatch { expected: n * (n + 1), got: probs.len() });
    }
    let mut p = probs.to_vec();
    let mut max_dev: f64 = 0.0;
    for (s, block) in p.chunks_mut(n).enumerate() {
        let sum: f64 = block.iter().sum();
        let dev = (sum - 1.0).abs();
        match kind {
            ProbabilityKind::Probabilities if dev > opts.tolerance => {
                return Err(Error::InconsistentProbabilities { striation: s, sum, tolerance: opts.tolerance });
            }
            ProbabilityKind::Frequencies if sum <= 0.0 => {
                return Err(Error::InconsistentProbabilities { striation: s, sum, tolerance: opts.tolerance });
            }
            _ => {}
        }
        max_dev = max_dev.max(dev);
        if opts.normalize || kind == ProbabilityKind::Frequencies {
            block.iter_mut().for_each(|x| *x /= sum);
        }
    }
    let mut values = vec![-1.0 / n as f64; n * n];
    for (l, &pl) in all_lines(field).iter().zip(&p) {
        for a in l.points() {
            values[point_index(a)] += pl / n as f64;
        }
    }
    Ok(Tomography { wigner: WignerMap { field, values }, max_sum_deviation: if kind == ProbabilityKind::Frequencies { 0.0 } else { max_dev } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::line_in_striation;
    use crate::gf::{make_field, FieldBasis};
    use crate::net::{build_net, RayChoice};
    use crate::weylops::{translation_operator, BasisPair};
    use crate::linalg::{ONE, ZERO};

    fn reference_net() -> QuantumNet {
        let f = make_field(2, 2).unwrap();
        let e = FieldBasis::new(vec![f.element(2), f.one()]).unwrap();
        build_net(&BasisPair::new(e.clone(), e).unwrap(), RayChoice::zeros(f)).unwrap()
    }

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn state_validation() {
        assert!(DensityMatrix::new(CMatrix::identity(2)).is_err());
        let neg = CMatrix::diagonal(&[c(1.5), c(-0.5)]);
        assert!(DensityMatrix::new(neg).is_err());
        let nonherm = CMatrix::from_rows(vec![vec![c(0.5), ONE], vec![ZERO, c(0.5)]]).unwrap();
        assert!(DensityMatrix::new(nonherm).is_err());
        assert!(DensityMatrix::new(CMatrix::diagonal(&[ONE, ZERO])).is_ok());
    }

    #[test]
    fn operator_properties() {
        let net = reference_net();
        let ops = phase_point_operators(&net);
        assert!(ops.check_against(&net).max() < 1e-10);
    }

    #[test]
    fn mixed_state_is_uniform() {
        let net = reference_net();
        let w = wigner_transform(&DensityMatrix::maximally_mixed(4), &phase_point_operators(&net)).unwrap();
        assert!(w.max_abs_diff(&WignerMap::uniform(net.field())) < 1e-12);
        let back = inverse_wigner(&WignerMap::uniform(net.field()), &phase_point_operators(&net));
        assert!(back.max_abs_diff(DensityMatrix::maximally_mixed(4).matrix()) < 1e-12);
    }

    #[test]
    fn up_up_is_left_column() {
        let net = reference_net();
        let rho = DensityMatrix::pure(&[ONE, ZERO, ZERO, ZERO]).unwrap();
        let w = wigner_transform(&rho, &phase_point_operators(&net)).unwrap();
        for row in w.grid() {
            assert!((row[0] - 0.25).abs() < 1e-12);
            assert!(row[1..].iter().all(|x| x.abs() < 1e-12));
        }
        assert!((w.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singlet_marginals() {
        let net = reference_net();
        let s = 0.5f64.sqrt();
        let rho = DensityMatrix::pure(&[ZERO, c(s), c(-s), ZERO]).unwrap();
        let w = wigner_transform(&rho, &phase_point_operators(&net)).unwrap();
        let f = net.field();
        let got: Vec<f64> = f.elements().map(|t| line_marginal(&w, line_in_striation(f, 0, t))).collect();
        for (g, want) in got.iter().zip([0.0, 0.5, 0.5, 0.0]) {
            assert!((g - want).abs() < 1e-12);
        }
        let probs = line_probabilities(&rho, &net);
        for (l, p) in all_lines(f).iter().zip(&probs) {
            assert!((line_marginal(&w, *l) - p).abs() < 1e-12);
        }
    }

    #[test]
    fn tomography_inverts_marginals() {
        let net = reference_net();
        let s = 0.5f64.sqrt();
        let rho = DensityMatrix::pure(&[ZERO, c(s), c(-s), ZERO]).unwrap();
        let ops = phase_point_operators(&net);
        let w = wigner_transform(&rho, &ops).unwrap();
        let probs = line_probabilities(&rho, &net);
        let t = tomographic_reconstruct(net.field(), &probs, ProbabilityKind::Probabilities, Default::default()).unwrap();
        assert!(t.wigner.max_abs_diff(&w) < 1e-12);
        let n = 4usize;
        let uniform = vec![1.0 / n as f64; n * (n + 1)];
        let t = tomographic_reconstruct(net.field(), &uniform, ProbabilityKind::Probabilities, Default::default()).unwrap();
        assert!(t.wigner.max_abs_diff(&WignerMap::uniform(net.field())) < 1e-12);
    }

    #[test]
    fn inconsistent_probabilities_rejected() {
        let f = make_field(2, 1).unwrap();
        let bad = vec![0.5, 0.6, 0.5, 0.5, 0.5, 0.5];
        let err = tomographic_reconstruct(f, &bad, ProbabilityKind::Probabilities, Default::default()).unwrap_err();
        assert!(matches!(err, Error::InconsistentProbabilities { striation: 0, .. }));
        let counts = vec![10.0, 30.0, 20.0, 20.0, 5.0, 35.0];
        let t = tomographic_reconstruct(f, &counts, ProbabilityKind::Frequencies, Default::default()).unwrap();
        assert!((t.wigner.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn covariance_of_w() {
        let net = reference_net();
        let f = net.field();
        let ops = phase_point_operators(&net);
        let v = [c(0.3), C64::new(0.1, 0.5), c(-0.6), C64::new(0.2, -0.2)];
        let rho = DensityMatrix::pure(&v).unwrap();
        let w = wigner_transform(&rho, &ops).unwrap();
        for beta in all_points(f) {
            let t = translation_operator(beta, net.pair());
            let moved = DensityMatrix::new(t.conjugate(rho.matrix())).unwrap();
            let wm = wigner_transform(&moved, &ops).unwrap();
            for alpha in all_points(f) {
                assert!((wm.get(alpha) - w.get(alpha - beta)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn heatmap_layout() {
        let f = make_field(2, 2).unwrap();
        let mut values = vec![0.0; 16];
        values[point_index(PhasePoint::origin(f))] = 1.0;
        let h = WignerMap::from_values(f, values).unwrap().heatmap();
        let lines: Vec<&str> = h.lines().collect();
        assert!(lines[0].starts_with("wbar |"));
        assert!(lines[3].starts_with("   0 |   1.0000"));
    }
}
