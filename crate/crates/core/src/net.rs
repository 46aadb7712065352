//! Translationally covariant quantum nets.
//!
//! A net is fixed by one label per striation ([`RayChoice`]): the ray of
//! striation `S` carries the basis vector with label `choice[S]`, and the
//! line of `S` with offset `t` carries label `choice[S] + t`. With the labels
//! of [`crate::mub`] this is exactly the translated assignment
//! `Q(T_α λ) = T_α Q(λ) T_α†`.

use std::env;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{all_lines, line_index, offset_of_point, translate_line, Line, PhasePoint};
use crate::gf::{Field, FieldElement};
use crate::linalg::{CMatrix, C64};
use crate::mub::{mub_family, MubFamily};
use crate::weylops::{translation_operator, BasisPair};

/// Default bound on `N` for exhaustive enumerations.
pub const DEFAULT_ENUMERATION_CAP: usize = 5;

/// Enumeration cap, overridable through `WIGNERFF_CAP`.
pub fn enumeration_cap() -> usize {
    env::var("WIGNERFF_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_ENUMERATION_CAP)
}

pub fn check_cap(field: Field) -> Result<()> {
    let cap = enumeration_cap();
    if field.order() > cap {
        return Err(Error::CapExceeded { size: field.order(), cap });
    }
    Ok(())
}

/// One label per striation, in striation order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayChoice(Vec<FieldElement>);

impl RayChoice {
    pub fn new(labels: Vec<FieldElement>) -> Result<Self> {
        let field = labels.first().ok_or_else(|| Error::InvalidChoice("no labels".into()))?.field();
        if labels.len() != field.order() + 1 {
            return Err(Error::InvalidChoice(format!("{} labels for N = {}", labels.len(), field.order())));
        }
        if labels.iter().any(|l| l.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(RayChoice(labels))
    }

    pub fn zeros(field: Field) -> Self {
        RayChoice(vec![field.zero(); field.order() + 1])
    }

    pub fn from_indices(field: Field, idx: &[usize]) -> Result<Self> {
        if idx.iter().any(|&i| i >= field.order()) {
            return Err(Error::InvalidChoice(format!("label index out of range in {idx:?}")));
        }
        Self::new(idx.iter().map(|&i| field.element(i)).collect())
    }

    pub fn parse(field: Field, labels: &[&str]) -> Result<Self> {
        Self::new(labels.iter().map(|s| field.parse(s)).collect::<Result<_>>()?)
    }

    pub fn field(&self) -> Field {
        self.0[0].field()
    }

    pub fn labels(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn label(&self, striation: usize) -> FieldElement {
        self.0[striation]
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.index()).collect()
    }

    /// Labels of the net `λ ↦ Q(T_α λ)`.
    pub fn translated(&self, alpha: PhasePoint) -> RayChoice {
        RayChoice(self.0.iter().enumerate().map(|(s, &l)| l + offset_of_point(s, alpha)).collect())
    }

    /// The member of the translation class with vertical and horizontal
    /// labels zero, and the translation reaching it.
    pub fn representative(&self) -> (RayChoice, PhasePoint) {
        let alpha = PhasePoint::new(-self.0[0], -self.0[1]);
        (self.translated(alpha), alpha)
    }

    pub fn is_representative(&self) -> bool {
        self.0[0].is_zero() && self.0[1].is_zero()
    }

    /// Label carried by a line.
    pub fn line_label(&self, l: Line) -> FieldElement {
        self.0[l.striation_index()] + l.offset()
    }
}

impl fmt::Debug for RayChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for RayChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All `N^{N+1}` choices, in lexicographic label order.
pub fn enumerate_choices(field: Field) -> Result<impl Iterator<Item = RayChoice>> {
    check_cap(field)?;
    Ok(choice_iter(field, field.order() + 1, 0))
}

/// The `N^{N−1}` equivalence-class representatives (first two labels zero).
pub fn enumerate_representatives(field: Field) -> Result<impl Iterator<Item = RayChoice>> {
    check_cap(field)?;
    Ok(choice_iter(field, field.order() - 1, 2))
}

fn choice_iter(field: Field, free: usize, pinned: usize) -> impl Iterator<Item = RayChoice> {
    let n = field.order();
    let total = n.pow(free as u32);
    (0..total).map(move |mut k| {
        let mut labels = vec![field.zero(); pinned + free];
        for slot in labels[pinned..].iter_mut().rev() {
            *slot = field.element(k % n);
            k /= n;
        }
        RayChoice(labels)
    })
}

/// A quantum net with its projector table, indexed by [`line_index`].
#[derive(Clone)]
pub struct QuantumNet {
    family: Arc<MubFamily>,
    choice: RayChoice,
    projectors: Vec<CMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NetReport {
    pub hermiticity: f64,
    pub idempotency: f64,
    pub trace: f64,
    pub covariance: f64,
    pub parallel_overlap: f64,
    pub resolution: f64,
}

impl NetReport {
    pub fn max(&self) -> f64 {
        [self.hermiticity, self.idempotency, self.trace, self.covariance, self.parallel_overlap, self.resolution]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn build_net(pair: &BasisPair, choice: RayChoice) -> Result<QuantumNet> {
    if !pair.is_valid() {
        return Err(Error::NoSuchW);
    }
    build_net_in(&Arc::new(mub_family(pair)), choice)
}

/// Build on an existing basis family, sharing it between nets.
pub fn build_net_in(family: &Arc<MubFamily>, choice: RayChoice) -> Result<QuantumNet> {
    let field = family.pair.field();
    if choice.field() != field {
        return Err(Error::FieldMismatch);
    }
    let projectors = all_lines(field)
        .into_iter()
        .map(|l| family.bases[l.striation_index()].projector(choice.line_label(l)))
        .collect();
    Ok(QuantumNet { family: Arc::clone(family), choice, projectors })
}

impl QuantumNet {
    pub fn field(&self) -> Field {
        self.family.pair.field()
    }

    pub fn dim(&self) -> usize {
        self.field().order()
    }

    pub fn pair(&self) -> &BasisPair {
        &self.family.pair
    }

    pub fn family(&self) -> &Arc<MubFamily> {
        &self.family
    }

    pub fn choice(&self) -> &RayChoice {
        &self.choice
    }

    pub fn projector(&self, l: Line) -> &CMatrix {
        &self.projectors[line_index(l)]
    }

    /// Projectors in [`all_lines`] order.
    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    /// State vector assigned to a line.
    pub fn state(&self, l: Line) -> &[C64] {
        self.family.bases[l.striation_index()].vector(self.choice.line_label(l))
    }

    pub fn check(&self) -> NetReport {
        let field = self.field();
        let pair = self.pair();
        let dim = self.dim();
        let lines = all_lines(field);
        let mut rep = NetReport {
            hermiticity: 0.0,
            idempotency: 0.0,
            trace: 0.0,
            covariance: 0.0,
            parallel_overlap: 0.0,
            resolution: 0.0,
        };
        for (l, q) in lines.iter().zip(&self.projectors) {
            rep.hermiticity = rep.hermiticity.max(q.hermiticity_residual());
            rep.idempotency = rep.idempotency.max((&(q * q) - q).max_abs());
            rep.trace = rep.trace.max((q.trace() - 1.0).norm());
            for alpha in crate::geometry::all_points(field) {
                let t = translation_operator(alpha, pair);
                let lhs = self.projector(translate_line(*l, alpha));
                rep.covariance = rep.covariance.max(lhs.max_abs_diff(&t.conjugate(q)));
            }
        }
        for s in 0..=field.order() {
            let block = &self.projectors[s * dim..(s + 1) * dim];
            let mut sum = CMatrix::zeros(dim);
            for (i, a) in block.iter().enumerate() {
                sum = &sum + a;
                for b in &block[i + 1..] {
                    rep.parallel_overlap = rep.parallel_overlap.max(a.trace_product(b).norm());
                }
            }
            rep.resolution = rep.resolution.max(sum.max_abs_diff(&CMatrix::identity(dim)));
        }
        rep
    }
}

/// The net `λ ↦ Q(T_α λ)`.
pub fn translate_net(net: &QuantumNet, alpha: PhasePoint) -> QuantumNet {
    build_net_in(net.family(), net.choice().translated(alpha)).expect("translated choice is valid")
}

impl fmt::Debug for QuantumNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuantumNet({:?}, {:?}, choice {:?})", self.field(), self.pair(), self.choice)
    }
}
