//! Striation eigenbases and their mutual unbiasedness.
//!
//! For a striation with direction `d`, the operators `T_{s d}` commute and
//! are generated by `G_i = T_{b_i d}` for any `F_r`-basis `(b_i)` of `F_N`.
//! Scaling each `G_i` by `μ_i⁻¹`, where `μ_i^r` is the scalar `G_i^r`, gives
//! an operator of order `r`, and the joint eigenprojectors are products of
//! the character sums `(1/r) Σ_m (η^{-k} μ⁻¹ G)^m`. They are rank one, so
//! no eigensolver is involved.
//!
//! Labels: vector `s` of a non-vertical striation is `T_{(0,s)} v_0`, of the
//! vertical striation `T_{(s,0)} v_0`. The label-0 vector `v_0` is the one
//! whose joint eigenvalues are all `μ_i`, except for the `F_4` pair
//! `E = F = (ω, 1)`, where the label-0 vectors are pinned to the standard
//! published labeling. Outside `N = 4` this labeling is a convention.

use rayon::prelude::*;

use crate::geometry::{striation_direction, PhasePoint};
use crate::gf::{FieldBasis, FieldElement};
use crate::linalg::{fix_phase, inner, norm, normalize, root_of_unity, CMatrix, C64, ONE, ZERO};
use crate::weylops::{translation_operator, BasisPair};

pub const PHASE_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct StriationBasis {
    pub striation: usize,
    pub direction: PhasePoint,
    /// `vectors[i]` carries label `labels[i] = field.element(i)`.
    pub vectors: Vec<Vec<C64>>,
    pub labels: Vec<FieldElement>,
}

impl StriationBasis {
    pub fn vector(&self, label: FieldElement) -> &[C64] {
        &self.vectors[label.index()]
    }

    pub fn projector(&self, label: FieldElement) -> CMatrix {
        CMatrix::projector(self.vector(label))
    }

    /// Label of the basis vector most parallel to `v`.
    pub fn label_of(&self, v: &[C64]) -> FieldElement {
        let best = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, u)| (i, inner(u, v).norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
            .expect("nonempty basis");
        self.labels[best]
    }
}

#[derive(Clone, Debug)]
pub struct MubFamily {
    pub pair: BasisPair,
    pub bases: Vec<StriationBasis>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MubReport {
    /// `max | |⟨u|v⟩|² − 1/N |` over vectors from different bases.
    pub max_deviation: f64,
    /// `max |⟨u|v⟩ − δ_uv|` within each basis.
    pub max_orthonormality_residual: f64,
    pub pair_count: usize,
}

/// Generators `b_i · d` of the ray through `d`.
fn ray_generators(direction: PhasePoint, gens: &FieldBasis) -> Vec<PhasePoint> {
    gens.elems().iter().map(|&b| direction.scale(b)).collect()
}

/// Joint eigenprojector of `{T_{s d}}` with eigenvalue `η^{k_i} μ_i` on the
/// generator `T_{b_i d}`.
pub fn joint_eigenprojector(direction: PhasePoint, pair: &BasisPair, gens: &FieldBasis, k: &[u32]) -> CMatrix {
    let r = pair.field().r();
    let dim = pair.dim();
    let mut proj = CMatrix::identity(dim);
    for (g, &ki) in ray_generators(direction, gens).into_iter().zip(k) {
        let t = translation_operator(g, pair);
        let c = t.pow(r).scalar_exponent().expect("G^r is scalar for a validated pair");
        // μ = e^{2πi c / r²}
        let mu_inv = root_of_unity(-(c as i64), r * r);
        let mut factor = CMatrix::zeros(dim);
        let mut power = crate::weylops::WeylOperator::identity(r, dim);
        for m in 0..r {
            let coeff = root_of_unity(-((ki * m) as i64), r) * mu_inv.powu(m);
            let pm = power.to_matrix();
            factor = &factor + &pm.scale(coeff);
            power = power.compose(&t);
        }
        proj = &proj * &factor.scale_re(1.0 / r as f64);
    }
    proj
}

/// Unit vector spanning a rank-1 projector: its column of largest norm,
/// normalized and phase fixed.
pub fn vector_of_projector(p: &CMatrix) -> Vec<C64> {
    let best = (0..p.dim())
        .map(|j| (j, norm(&p.column(j))))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(j, _)| j)
        .expect("nonempty matrix");
    let mut v = p.column(best);
    normalize(&mut v);
    fix_phase(&mut v, PHASE_TOL);
    v
}

fn pinned_label_zero(pair: &BasisPair, striation: usize) -> Option<Vec<C64>> {
    let field = pair.field();
    if field.r() != 2 || field.n() != 2 {
        return None;
    }
    let w = field.element(2);
    let e = FieldBasis::new(vec![w, field.one()]).ok()?;
    if pair.e() != &e || pair.f() != &e {
        return None;
    }
    let i = C64::new(0.0, 1.0);
    let h = 0.5;
    let v: [C64; 4] = match striation {
        0 => [ONE, ZERO, ZERO, ZERO],
        1 => [ONE * h, ONE * h, ONE * h, ONE * h],
        2 => [ONE * h, -i * h, i * h, ONE * h],
        3 => [ONE * h, ONE * h, i * h, -i * h],
        _ => [ONE * h, -i * h, ONE * h, i * h],
    };
    Some(v.to_vec())
}

/// Whether the label-0 vectors follow the pinned published labeling.
pub fn uses_pinned_labels(pair: &BasisPair) -> bool {
    pinned_label_zero(pair, 0).is_some()
}

pub fn striation_eigenbasis(striation: usize, pair: &BasisPair) -> StriationBasis {
    striation_eigenbasis_with(striation, pair, &FieldBasis::polynomial(pair.field()))
}

/// As [`striation_eigenbasis`], generating the ray from a chosen `F_r`-basis.
pub fn striation_eigenbasis_with(striation: usize, pair: &BasisPair, gens: &FieldBasis) -> StriationBasis {
    let field = pair.field();
    let direction = striation_direction(field, striation);
    let n = field.n() as usize;
    let canonical = vector_of_projector(&joint_eigenprojector(direction, pair, gens, &vec![0; n]));
    let v0 = match pinned_label_zero(pair, striation) {
        Some(pinned) => {
            // Choose, among the true eigenvectors, the one the pin names.
            let label = field.elements().find(|&s| {
                let v = shifted(&canonical, striation, s, pair);
                inner(&v, &pinned).norm() > 1.0 - 1e-9
            });
            shifted(&canonical, striation, label.expect("pinned vector lies in the eigenbasis"), pair)
        }
        None => canonical,
    };
    let labels: Vec<FieldElement> = field.elements().collect();
    let vectors = labels.iter().map(|&s| shifted(&v0, striation, s, pair)).collect();
    StriationBasis { striation, direction, vectors, labels }
}

fn shifted(v0: &[C64], striation: usize, s: FieldElement, pair: &BasisPair) -> Vec<C64> {
    let z = pair.field().zero();
    let t = if striation == 0 { PhasePoint::new(s, z) } else { PhasePoint::new(z, s) };
    let mut v = translation_operator(t, pair).apply(v0);
    fix_phase(&mut v, PHASE_TOL);
    v
}

pub fn mub_family(pair: &BasisPair) -> MubFamily {
    let bases = (0..=pair.field().order()).into_par_iter().map(|s| striation_eigenbasis(s, pair)).collect();
    MubFamily { pair: pair.clone(), bases }
}

pub fn verify_mub(family: &MubFamily) -> MubReport {
    let mut max_deviation: f64 = 0.0;
    let mut max_orth: f64 = 0.0;
    let mut pair_count = 0;
    for (i, bi) in family.bases.iter().enumerate() {
        let n = bi.vectors.len() as f64;
        for (a, u) in bi.vectors.iter().enumerate() {
            for (b, v) in bi.vectors.iter().enumerate() {
                let want = if a == b { ONE } else { ZERO };
                max_orth = max_orth.max((inner(u, v) - want).norm());
            }
        }
        for bj in &family.bases[i + 1..] {
            for u in &bi.vectors {
                for v in &bj.vectors {
                    max_deviation = max_deviation.max((inner(u, v).norm_sqr() - 1.0 / n).abs());
                    pair_count += 1;
                }
            }
        }
    }
    MubReport { max_deviation, max_orthonormality_residual: max_orth, pair_count }
}
