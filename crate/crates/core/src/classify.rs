//! Equivalence and similarity of quantum nets.
//!
//! Two nets are equivalent when a unitary maps one onto the other; the
//! triple-product tensor `Γ_{αβγ} = Tr(A_α A_β A_γ)/N` is the invariant used
//! to decide it. Similarity additionally allows a unit-determinant linear map
//! `L` of phase space, acting by `Q'(λ) = U_L† Q(Lλ) U_L`, where
//! `U_L T_α U_L† ∝ T_{Lα}`.
//!
//! For odd `r`, `U_L` is read off the conjugation map
//! `T_α ↦ η^{(q'·p' − q·p)/2} T_{Lα}`. For `r = 2`, `L` is written as a word
//! in `L₁ = [[1,0],[1,1]]`, `L₂ = [[1,1],[0,1]]`, `L₃ = diag(z, z⁻¹)` and
//! their inverses, and the word is multiplied out from one unitary per
//! generator.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{all_points, point_index, sl2_group, striation_direction, striation_of_direction, LinearMap, PhasePoint};
use crate::gf::{Field, FieldBasis, FieldElement};
use crate::io::{element_strings, FieldJson};
use crate::linalg::{fix_matrix_phase, inner, is_rank_one, root_of_unity, CMatrix, C64, ONE};
use crate::mub::{mub_family, MubFamily};
use crate::net::{build_net, build_net_in, check_cap, enumerate_representatives, QuantumNet, RayChoice};
use crate::weylops::{digits_of, index_of_digits, translation_operator, BasisPair, WeylOperator};
use crate::wigner::{phase_point_operators, PhasePointOperators};

pub const GAMMA_TOL: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Γ

/// `Γ_{αβγ}` for all triples, indexed by [`point_index`] as `(i N² + j) N² + k`.
#[derive(Clone, Debug)]
pub struct GammaTensor {
    field: Field,
    values: Vec<C64>,
}

impl GammaTensor {
    pub fn from_ops(ops: &PhasePointOperators) -> Self {
        let field = ops.field();
        let n = field.order();
        let m = n * n;
        let a = ops.ops();
        let values: Vec<C64> = (0..m * m)
            .into_par_iter()
            .flat_map_iter(|ij| {
                let p = &a[ij / m] * &a[ij % m];
                a.iter().map(move |ak| p.trace_product(ak) / n as f64).collect::<Vec<_>>()
            })
            .collect();
        GammaTensor { field, values }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, a: PhasePoint, b: PhasePoint, c: PhasePoint) -> C64 {
        let m = self.field.order().pow(2);
        self.values[(point_index(a) * m + point_index(b)) * m + point_index(c)]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn max_abs_diff(&self, other: &GammaTensor) -> f64 {
        self.values.iter().zip(&other.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    /// `Γ_{00γ}` as rows `[p][q]`, bottom row first.
    pub fn slice_00(&self) -> Vec<Vec<C64>> {
        let f = self.field;
        let o = PhasePoint::origin(f);
        f.elements().map(|p| f.elements().map(|q| self.get(o, o, PhasePoint::new(q, p))).collect()).collect()
    }
}

pub fn gamma(net: &QuantumNet) -> GammaTensor {
    GammaTensor::from_ops(&phase_point_operators(net))
}

/// Only `Γ_{00γ}`, rows `[p][q]`.
pub fn gamma_00(net: &QuantumNet) -> Vec<Vec<C64>> {
    let ops = phase_point_operators(net);
    let f = net.field();
    let n = f.order() as f64;
    let a0 = ops.get(PhasePoint::origin(f));
    let a00 = a0 * a0;
    f.elements()
        .map(|p| f.elements().map(|q| a00.trace_product(ops.get(PhasePoint::new(q, p))) / n).collect())
        .collect()
}

/// First ray choice (in enumeration order) whose `Γ_{00γ}` equals `target`
/// (rows `[p][q]`, top row `p = last` first, as printed with the origin at
/// the lower left) within [`GAMMA_TOL`].
pub fn find_gamma_00(pair: &BasisPair, target: &[Vec<f64>]) -> Result<Option<RayChoice>> {
    let f = pair.field();
    let family = Arc::new(mub_family(pair));
    let want: Vec<&Vec<f64>> = target.iter().rev().collect();
    for c in crate::net::enumerate_choices(f)? {
        let g = gamma_00(&build_net_in(&family, c.clone())?);
        let hit = g.iter().zip(&want).all(|(row, t)| row.iter().zip(t.iter()).all(|(z, x)| (z - x).norm() < GAMMA_TOL));
        if hit {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Γ equality within [`GAMMA_TOL`].
pub fn are_equivalent(a: &QuantumNet, b: &QuantumNet) -> Result<bool> {
    if a.field() != b.field() || a.pair() != b.pair() {
        return Err(Error::FieldMismatch);
    }
    Ok(gamma(a).max_abs_diff(&gamma(b)) < GAMMA_TOL)
}

/// Translation `α` with `b = translate_net(a, α)`, if any (slow cross-check).
pub fn find_translation(a: &QuantumNet, b: &QuantumNet) -> Option<PhasePoint> {
    all_points(a.field()).into_iter().find(|&alpha| a.choice().translated(alpha) == *b.choice())
}

// ---------------------------------------------------------------------------
// U_L

/// Elements of the word returned by [`decompose_sl2`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    L1,
    L2,
    L3,
    L1Inv,
    L2Inv,
    L3Inv,
}

impl Generator {
    pub const ALL: [Generator; 6] =
        [Generator::L1, Generator::L2, Generator::L3, Generator::L1Inv, Generator::L2Inv, Generator::L3Inv];

    pub fn matrix(self, z: FieldElement) -> LinearMap {
        let f = z.field();
        let (o, n) = (f.one(), f.zero());
        let zi = z.inv().expect("z is nonzero");
        match self {
            Generator::L1 => LinearMap::new(o, n, o, o),
            Generator::L2 => LinearMap::new(o, o, n, o),
            Generator::L3 => LinearMap::new(z, n, n, zi),
            Generator::L1Inv => LinearMap::new(o, n, -o, o),
            Generator::L2Inv => LinearMap::new(o, -o, n, o),
            Generator::L3Inv => LinearMap::new(zi, n, n, z),
        }
    }

    pub fn inverse(self) -> Generator {
        match self {
            Generator::L1 => Generator::L1Inv,
            Generator::L2 => Generator::L2Inv,
            Generator::L3 => Generator::L3Inv,
            Generator::L1Inv => Generator::L1,
            Generator::L2Inv => Generator::L2,
            Generator::L3Inv => Generator::L3,
        }
    }
}

/// The primitive element used for `L₃`: `ω̄` for `F_4`, otherwise the
/// smallest primitive element.
pub fn default_z(field: Field) -> FieldElement {
    if field.r() == 2 && field.n() == 2 {
        field.element(3)
    } else {
        field.primitive_element()
    }
}

type WordTable = Arc<HashMap<LinearMap, Vec<Generator>>>;

fn word_table(z: FieldElement) -> WordTable {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, usize), WordTable>>> = OnceLock::new();
    let f = z.field();
    let key = (f.r(), f.n(), z.index());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("word cache poisoned").get(&key) {
        return Arc::clone(t);
    }
    // Breadth-first over the Cayley graph: shortest words, generators tried
    // in the fixed order of `Generator::ALL`.
    let id = LinearMap::identity(f);
    let mut words: HashMap<LinearMap, Vec<Generator>> = HashMap::from([(id, Vec::new())]);
    let mut queue = VecDeque::from([id]);
    let gens: Vec<(Generator, LinearMap)> = Generator::ALL.iter().map(|&g| (g, g.matrix(z))).collect();
    while let Some(x) = queue.pop_front() {
        let wx = words[&x].clone();
        for (g, m) in &gens {
            let y = x * *m;
            if !words.contains_key(&y) {
                let mut w = wx.clone();
                w.push(*g);
                words.insert(y, w);
                queue.push_back(y);
            }
        }
    }
    let t = Arc::new(words);
    cache.lock().expect("word cache poisoned").insert(key, Arc::clone(&t));
    t
}

/// A word `[g₁, .., g_k]` with `L = g₁ ⋯ g_k`, of minimal length.
pub fn decompose_sl2(l: &LinearMap, z: FieldElement) -> Result<Vec<Generator>> {
    if !l.det().is_one() {
        return Err(Error::NonUnitDeterminant(l.det().to_string()));
    }
    if !z.is_primitive() {
        return Err(Error::InvalidChoice(format!("{z} is not primitive")));
    }
    word_table(z).get(l).cloned().ok_or_else(|| Error::Numerical(format!("{l:?} not reached from the generators")))
}

/// Longest word in the table for `z`.
pub fn word_diameter(z: FieldElement) -> usize {
    word_table(z).values().map(Vec::len).max().unwrap_or(0)
}

pub fn multiply_word(word: &[Generator], z: FieldElement) -> LinearMap {
    word.iter().fold(LinearMap::identity(z.field()), |acc, g| acc * g.matrix(z))
}

fn check_unit_det(l: &LinearMap) -> Result<()> {
    if l.det().is_one() {
        Ok(())
    } else {
        Err(Error::NonUnitDeterminant(l.det().to_string()))
    }
}

/// Normalize an operator proportional to a unitary and fix its phase.
fn to_unitary(mut s: CMatrix) -> Result<CMatrix> {
    let n = s.dim() as f64;
    let scale = (s.hs_inner(&s).re / n).sqrt();
    if scale < 1e-12 {
        return Err(Error::Numerical("conjugation map has vanishing intertwiner".into()));
    }
    s = s.scale_re(1.0 / scale);
    fix_matrix_phase(&mut s, 1e-9);
    Ok(s)
}

/// `U` best satisfying `U T_α U† ∝ T'_α`, from `Σ_α c_α T'_α |0⟩⟨k| T_α†`
/// with explicit phases `c_α`, over all `α` (`targets[point_index(α)]`).
fn twirl(pair: &BasisPair, image: impl Fn(PhasePoint) -> (WeylOperator, C64)) -> Result<CMatrix> {
    let f = pair.field();
    let dim = pair.dim();
    let pts = all_points(f);
    let terms: Vec<(WeylOperator, C64, WeylOperator)> = pts
        .iter()
        .map(|&a| {
            let (t_img, c) = image(a);
            (t_img, c, translation_operator(a, pair))
        })
        .collect();
    for k in 0..dim {
        let mut s = CMatrix::zeros(dim);
        for (timg, c, t) in &terms {
            // timg |0⟩ ⟨k| t†
            let (r0, e0) = (timg.target()[0] as usize, timg.phase_exponents()[0]);
            let (rk, ek) = (t.target()[k] as usize, t.phase_exponents()[k]);
            s[(r0, rk)] += *c * root_of_unity(e0 as i64 - ek as i64, f.r());
        }
        if s.max_abs() > 1e-6 {
            return to_unitary(s);
        }
    }
    Err(Error::Numerical("no nonzero twirl column".into()))
}

fn unitary_odd(l: &LinearMap, pair: &BasisPair) -> Result<CMatrix> {
    let r = pair.field().r();
    let half = (r as u64 + 1) / 2;
    twirl(pair, |a| {
        let b = l.apply(a);
        let e = (pair.dot(b.q, b.p) as u64 + r as u64 - pair.dot(a.q, a.p) as u64) * half % r as u64;
        (translation_operator(b, pair), root_of_unity(e as i64, r))
    })
}

/// `i^{Σ C_ii k_i + 2 Σ_{i<j} C_ij k_i k_j}` on `n` qubits.
fn quadratic_phase(c: &[Vec<u32>], n: usize) -> CMatrix {
    let dim = 1usize << n;
    let diag: Vec<C64> = (0..dim)
        .map(|k| {
            let d = digits_of(k, 2, n);
            let mut e = 0u32;
            for i in 0..n {
                e += c[i][i] * d[i];
                for j in i + 1..n {
                    e += 2 * c[i][j] * d[i] * d[j];
                }
            }
            root_of_unity(e as i64, 4)
        })
        .collect();
    CMatrix::diagonal(&diag)
}

fn hadamard_n(n: usize) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = CMatrix::from_rows(vec![vec![C64::new(s, 0.0), C64::new(s, 0.0)], vec![C64::new(s, 0.0), C64::new(-s, 0.0)]])
        .expect("2x2");
    (1..n).fold(h.clone(), |acc, _| acc.kron(&h))
}

/// The generator unitaries for `r = 2`.
pub fn generator_unitary(g: Generator, pair: &BasisPair, z: FieldElement) -> Result<CMatrix> {
    let f = pair.field();
    if f.r() != 2 {
        return Err(Error::WrongField { expected: "characteristic 2", got: f.order() });
    }
    let n = f.n() as usize;
    let e = pair.e().elems();
    let w_inv = pair.w().ok_or(Error::NoSuchW)?.inv()?;
    // C_ij = tr(e_i e_j / w): F-coordinates of q are C times its E-coordinates.
    let c: Vec<Vec<u32>> =
        (0..n).map(|i| (0..n).map(|j| (e[i] * e[j] * w_inv).trace().index() as u32).collect()).collect();
    let u = match g {
        Generator::L1 | Generator::L1Inv => quadratic_phase(&c, n),
        Generator::L2 | Generator::L2Inv => {
            let b = crate::gf::mod_matrix_inverse(&c, 2).ok_or(Error::DependentBasis)?;
            let h = hadamard_n(n);
            &(&h * &quadratic_phase(&b, n).adjoint()) * &h
        }
        Generator::L3 | Generator::L3Inv => {
            let basis = pair.e();
            let dim = 1usize << n;
            let mut p = CMatrix::zeros(dim);
            for k in 0..dim {
                let x = basis.reconstruct(&digits_of(k, 2, n));
                p[(index_of_digits(&basis.expand(z * x), 2), k)] = ONE;
            }
            p
        }
    };
    Ok(match g {
        Generator::L1Inv | Generator::L2Inv | Generator::L3Inv => u.adjoint(),
        _ => u,
    })
}

fn unitary_even(l: &LinearMap, pair: &BasisPair) -> Result<CMatrix> {
    let z = default_z(pair.field());
    let word = decompose_sl2(l, z)?;
    let mut cache: HashMap<Generator, CMatrix> = HashMap::new();
    let mut u = CMatrix::identity(pair.dim());
    for g in word {
        if !cache.contains_key(&g) {
            cache.insert(g, generator_unitary(g, pair, z)?);
        }
        u = &u * &cache[&g];
    }
    fix_matrix_phase(&mut u, 1e-9);
    Ok(u)
}

/// A unitary with `U_L T_α U_L† ∝ T_{Lα}` for every `α`.
pub fn unitary_for_linear(l: &LinearMap, pair: &BasisPair) -> Result<CMatrix> {
    check_unit_det(l)?;
    if !pair.is_valid() {
        return Err(Error::NoSuchW);
    }
    if pair.field().r() == 2 {
        unitary_even(l, pair)
    } else {
        unitary_odd(l, pair)
    }
}

/// `max_α min_c ‖U T_α U† − c T_{Lα}‖` (entrywise max norm).
pub fn covariance_residual(u: &CMatrix, l: &LinearMap, pair: &BasisPair) -> f64 {
    all_points(pair.field())
        .into_iter()
        .map(|a| {
            let lhs = &(u * &translation_operator(a, pair).to_matrix()) * &u.adjoint();
            lhs.proportionality(&translation_operator(l.apply(a), pair).to_matrix()).1
        })
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Generic intertwiner (basis changes)

/// Monomial operator with complex phases.
#[derive(Clone)]
struct Monomial {
    target: Vec<usize>,
    phase: Vec<C64>,
}

impl Monomial {
    fn from_weyl(t: &WeylOperator, scale: C64) -> Self {
        let r = t.r();
        Monomial {
            target: t.target().iter().map(|&x| x as usize).collect(),
            phase: t.phase_exponents().iter().map(|&e| scale * root_of_unity(e as i64, r)).collect(),
        }
    }

    fn identity(dim: usize) -> Self {
        Monomial { target: (0..dim).collect(), phase: vec![ONE; dim] }
    }

    fn compose(&self, other: &Monomial) -> Monomial {
        let (target, phase) = other.target.iter().zip(&other.phase).map(|(&t, &p)| (self.target[t], self.phase[t] * p)).unzip();
        Monomial { target, phase }
    }
}

/// Order-`r` normalization `μ⁻¹ T` with `μ^r` the scalar `T^r`.
fn normalized(t: &WeylOperator) -> Monomial {
    let r = t.r();
    let c = t.pow(r).scalar_exponent().expect("T^r is scalar");
    Monomial::from_weyl(t, root_of_unity(-(c as i64), r * r))
}

/// Unitary `V` with `V T_α V† ∝ T'_α` for every `α`, where `T` and `T'` are
/// the translations of two pairs with the same commutation phases.
pub fn basis_change_unitary(from: &BasisPair, to: &BasisPair) -> Result<CMatrix> {
    let f = from.field();
    if to.field() != f {
        return Err(Error::FieldMismatch);
    }
    let pts = all_points(f);
    if pts.iter().any(|&a| pts.iter().any(|&b| {
        crate::weylops::commutation_exponent(a, b, from) != crate::weylops::commutation_exponent(a, b, to)
    })) {
        return Err(Error::NoSuchW);
    }
    let poly = FieldBasis::polynomial(f);
    let z = f.zero();
    let gens: Vec<PhasePoint> = poly
        .elems()
        .iter()
        .map(|&b| PhasePoint::new(b, z))
        .chain(poly.elems().iter().map(|&b| PhasePoint::new(z, b)))
        .collect();
    intertwine(from.dim(), f.r(), &gens.iter().map(|&g| (translation_operator(g, from), translation_operator(g, to))).collect::<Vec<_>>())
}

/// `Σ_m G'^m |0⟩⟨k| (G^m)†` over the group generated by order-`r`
/// normalized generators.
fn intertwine(dim: usize, r: u32, gens: &[(WeylOperator, WeylOperator)]) -> Result<CMatrix> {
    let src: Vec<Monomial> = gens.iter().map(|(a, _)| normalized(a)).collect();
    let dst: Vec<Monomial> = gens.iter().map(|(_, b)| normalized(b)).collect();
    let mut elems = vec![(Monomial::identity(dim), Monomial::identity(dim))];
    for (g, h) in src.iter().zip(&dst) {
        let mut next = Vec::with_capacity(elems.len() * r as usize);
        for (a, b) in &elems {
            let (mut a, mut b) = (a.clone(), b.clone());
            for _ in 0..r {
                next.push((a.clone(), b.clone()));
                a = a.compose(g);
                b = b.compose(h);
            }
        }
        elems = next;
    }
    for k in 0..dim {
        let mut s = CMatrix::zeros(dim);
        for (a, b) in &elems {
            s[(b.target[0], a.target[k])] += b.phase[0] * a.phase[k].conj();
        }
        if s.max_abs() > 1e-6 {
            return to_unitary(s);
        }
    }
    Err(Error::Numerical("no nonzero intertwiner column".into()))
}

/// `max_α min_c ‖V T_α V† − c T'_α‖`.
pub fn basis_change_residual(v: &CMatrix, from: &BasisPair, to: &BasisPair) -> f64 {
    all_points(from.field())
        .into_iter()
        .map(|a| {
            let lhs = &(v * &translation_operator(a, from).to_matrix()) * &v.adjoint();
            lhs.proportionality(&translation_operator(a, to).to_matrix()).1
        })
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Similarity action on ray choices

/// The action `Q ↦ U_L† Q(L·) U_L` on ray choices: the new label of
/// striation `S` is `table[S][choice[source[S]]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceAction {
    pub source: Vec<usize>,
    pub table: Vec<Vec<FieldElement>>,
}

impl ChoiceAction {
    pub fn apply(&self, c: &RayChoice) -> RayChoice {
        let labels = self.source.iter().zip(&self.table).map(|(&src, row)| row[c.label(src).index()]).collect();
        RayChoice::new(labels).expect("action preserves shape")
    }
}

pub fn similarity_action(l: &LinearMap, family: &MubFamily) -> Result<ChoiceAction> {
    let pair = &family.pair;
    let f = pair.field();
    let u = unitary_for_linear(l, pair)?;
    let ud = u.adjoint();
    let mut source = Vec::with_capacity(f.order() + 1);
    let mut table = Vec::with_capacity(f.order() + 1);
    for s in 0..=f.order() {
        let ls = striation_of_direction(l.apply(striation_direction(f, s)));
        let target = &family.bases[s];
        let row = family.bases[ls]
            .vectors
            .iter()
            .map(|v| {
                let img = ud.apply(v);
                let label = target.label_of(&img);
                let overlap = inner(target.vector(label), &img).norm();
                if overlap < 1.0 - 1e-6 {
                    return Err(Error::Numerical(format!("U_L maps a ray state outside basis {s} (overlap {overlap})")));
                }
                Ok(label)
            })
            .collect::<Result<Vec<_>>>()?;
        source.push(ls);
        table.push(row);
    }
    Ok(ChoiceAction { source, table })
}

/// Apply `L` to a net.
pub fn transform_net(net: &QuantumNet, l: &LinearMap) -> Result<QuantumNet> {
    let act = similarity_action(l, net.family())?;
    build_net_in(net.family(), act.apply(net.choice()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFixed {
    pub representative: String,
    pub size: usize,
    pub fixed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Burnside {
    pub group_order: usize,
    pub classes: Vec<ClassFixed>,
    pub orbit_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Smallest member in label order.
    pub representative: Vec<String>,
    pub size: usize,
    #[serde(skip)]
    pub members: Vec<RayChoice>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub field: FieldJson,
    pub w: String,
    pub orbit_count: usize,
    /// Sorted largest first.
    pub orbit_sizes: Vec<usize>,
    pub orbits: Vec<Orbit>,
    pub burnside: Burnside,
}

fn rep_index(c: &RayChoice) -> usize {
    let n = c.field().order();
    c.labels()[2..].iter().fold(0, |acc, l| acc * n + l.index())
}

/// Conjugacy classes of `SL(2, F_N)`: (representative, size), classes in
/// order of their smallest element.
pub fn conjugacy_classes(field: Field) -> Vec<(LinearMap, usize)> {
    let group = sl2_group(field);
    let inv: Vec<LinearMap> = group.iter().map(|g| g.inverse().expect("unit determinant")).collect();
    let mut seen: HashSet<LinearMap> = HashSet::new();
    let mut out = Vec::new();
    for g in &group {
        if seen.contains(g) {
            continue;
        }
        let class: HashSet<LinearMap> = group.iter().zip(&inv).map(|(h, hi)| *h * *g * *hi).collect();
        out.push((*g, class.len()));
        seen.extend(class);
    }
    out
}

/// Orbits of `SL(2, F_N)` on the `N^{N−1}` equivalence classes.
pub fn similarity_orbits(pair: &BasisPair) -> Result<OrbitReport> {
    let f = pair.field();
    check_cap(f)?;
    let family = Arc::new(mub_family(pair));
    let z = default_z(f);
    let reps: Vec<RayChoice> = enumerate_representatives(f)?.collect();
    let act_rep = |act: &ChoiceAction, c: &RayChoice| act.apply(c).representative().0;

    let gens: Vec<ChoiceAction> = [Generator::L1, Generator::L2, Generator::L3]
        .iter()
        .map(|g| similarity_action(&g.matrix(z), &family))
        .collect::<Result<_>>()?;
    let mut orbit_of = vec![usize::MAX; reps.len()];
    let mut orbits: Vec<Orbit> = Vec::new();
    for start in 0..reps.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![reps[start].clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let j = rep_index(&act_rep(g, &reps[i]));
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(reps[j].clone());
                    queue.push_back(j);
                }
            }
        }
        members.sort();
        orbits.push(Orbit { representative: element_strings(members[0].labels()), size: members.len(), members });
    }

    let classes = conjugacy_classes(f);
    let fixed: Vec<ClassFixed> = classes
        .par_iter()
        .map(|(g, size)| {
            let act = similarity_action(g, &family)?;
            let fixed = reps.iter().filter(|c| act_rep(&act, c) == **c).count();
            Ok(ClassFixed { representative: format!("{g:?}"), size: *size, fixed })
        })
        .collect::<Result<_>>()?;
    let group_order: usize = classes.iter().map(|c| c.1).sum();
    let total: usize = fixed.iter().map(|c| c.size * c.fixed).sum();
    if total % group_order != 0 {
        return Err(Error::Numerical(format!("Burnside sum {total} not divisible by {group_order}")));
    }
    let mut orbit_sizes: Vec<usize> = orbits.iter().map(|o| o.size).collect();
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(OrbitReport {
        field: f.into(),
        w: pair.w().map(|w| w.to_string()).unwrap_or_default(),
        orbit_count: orbits.len(),
        orbit_sizes,
        orbits,
        burnside: Burnside { group_order, classes: fixed, orbit_count: total / group_order },
    })
}

// ---------------------------------------------------------------------------
// N = 4 specifics

fn require_f4(field: Field) -> Result<()> {
    if field.r() == 2 && field.n() == 2 {
        Ok(())
    } else {
        Err(Error::WrongField { expected: "N = 4", got: field.order() })
    }
}

/// `D = ω(a+b+c) + ω̄ vᵀ M v` for `v = (a,b,c,d,e)`.
pub fn discriminant_d(choice: &RayChoice) -> Result<FieldElement> {
    let f = choice.field();
    require_f4(f)?;
    let (o, w, wb) = (f.one(), f.element(2), f.element(3));
    let z = f.zero();
    let m = [[z, o, o, o, o], [z, z, o, wb, w], [z, z, z, w, wb], [z, z, z, z, o], [z, z, z, z, z]];
    let v = choice.labels();
    let mut quad = z;
    for i in 0..5 {
        for j in 0..5 {
            quad = quad + v[i] * m[i][j] * v[j];
        }
    }
    Ok(w * (v[0] + v[1] + v[2]) + wb * quad)
}

/// Generators and translations acting on `(a,b,c,d,e)` for the `F_4` pair
/// `E = F = (ω, 1)` with `z = ω̄`. These agree exactly with
/// [`similarity_action`]; for `L₂` the last two labels pick up factors `ω̄`
/// and `ω` (`d' = ω̄e`, `e' = ωd + ω`), without which `D` is not preserved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexMove {
    L1,
    L2,
    L3,
    Translate(PhasePoint),
}

pub fn index_transform(g: IndexMove, choice: &RayChoice) -> Result<RayChoice> {
    let f = choice.field();
    require_f4(f)?;
    let (z, o, w, wb) = (f.zero(), f.one(), f.element(2), f.element(3));
    let [a, b, c, d, e]: [FieldElement; 5] = choice.labels().try_into().expect("five labels");
    let v = match g {
        IndexMove::L1 => [a, c + o, b + w, e + wb, d],
        IndexMove::L2 => [c + o, b, a + w, wb * e, w * d + w],
        IndexMove::L3 => [w * a, wb * b, wb * e + wb, wb * c + w, wb * d],
        IndexMove::Translate(alpha) => {
            let s = [o, z, o, w, wb];
            let t = [z, o, o, o, o];
            let l = choice.labels();
            std::array::from_fn(|i| l[i] + alpha.q * s[i] + alpha.p * t[i])
        }
    };
    RayChoice::new(v.to_vec())
}

/// The two nets whose `A_α = A²_{(x₁,y₁)} ⊗ Ā²_{(x₂,y₂)}` (and the
/// conjugate ordering), `α = (x₁ω + x₂, y₁ω + y₂)`, built on the `F_4` pair
/// `E = F = (ω, 1)` from the all-zero `N = 2` net.
pub fn tensor_product_nets_n4() -> Result<(QuantumNet, QuantumNet)> {
    let f2 = crate::gf::make_field(2, 1)?;
    let small = build_net(&BasisPair::standard(f2), RayChoice::zeros(f2))?;
    let a2 = phase_point_operators(&small);
    let pair = crate::presets::paper_n4_pair();
    let family = Arc::new(mub_family(&pair));
    let first = tensor_ops(&a2, false)?;
    let second = tensor_ops(&a2, true)?;
    Ok((net_from_ops(&family, &first)?, net_from_ops(&family, &second)?))
}

/// `A_α` for `α = (x₁ω + x₂, y₁ω + y₂)`; `swap` conjugates the first factor
/// instead of the second.
pub fn tensor_ops(a2: &PhasePointOperators, swap: bool) -> Result<PhasePointOperators> {
    let f4 = crate::gf::make_field(2, 2)?;
    let f2 = a2.field();
    let e = FieldBasis::new(vec![f4.element(2), f4.one()])?;
    let ops = all_points(f4)
        .into_iter()
        .map(|alpha| {
            let (x, y) = (e.expand(alpha.q), e.expand(alpha.p));
            let p1 = PhasePoint::new(f2.element(x[0] as usize), f2.element(y[0] as usize));
            let p2 = PhasePoint::new(f2.element(x[1] as usize), f2.element(y[1] as usize));
            let (m1, m2) = (a2.get(p1), a2.get(p2));
            if swap {
                m1.conj().kron(m2)
            } else {
                m1.kron(&m2.conj())
            }
        })
        .collect();
    PhasePointOperators::from_ops(f4, ops)
}

/// The net whose line operators `(1/N) Σ_{α∈λ} A_α` are the given family's,
/// or an error if they are not rank-1 states of the basis family.
pub fn net_from_ops(family: &Arc<MubFamily>, ops: &PhasePointOperators) -> Result<QuantumNet> {
    let f = ops.field();
    let labels = (0..=f.order())
        .map(|s| {
            let q = ops.line_operator(crate::geometry::line_in_striation(f, s, f.zero()));
            let basis = &family.bases[s];
            let v = crate::mub::vector_of_projector(&q);
            let label = basis.label_of(&v);
            if basis.projector(label).max_abs_diff(&q) > 1e-8 {
                return Err(Error::InvalidChoice(format!("ray operator of striation {s} is not a basis projector")));
            }
            Ok(label)
        })
        .collect::<Result<Vec<_>>>()?;
    let net = build_net_in(family, RayChoice::new(labels)?)?;
    let back = phase_point_operators(&net);
    let dev = back.ops().iter().zip(ops.ops()).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);
    if dev > 1e-8 {
        return Err(Error::InvalidChoice(format!("operators are not those of a covariant net (deviation {dev:e})")));
    }
    Ok(net)
}

/// Whether `A` on `C² ⊗ C²` is a product `B ⊗ C`: realignment rank one.
pub fn is_tensor_product(a: &CMatrix, tol: f64) -> bool {
    let d = 2usize;
    // R[(i1 j1), (i2 j2)] = A[(i1 i2), (j1 j2)]
    let rows: Vec<Vec<C64>> = (0..d * d)
        .map(|r| {
            let (i1, j1) = (r / d, r % d);
            (0..d * d).map(|c| a[(i1 * d + c / d, j1 * d + c % d)]).collect()
        })
        .collect();
    is_rank_one(&rows, tol)
}

// ---------------------------------------------------------------------------
// Odd primes

/// `A_0 = P` (parity `|k⟩ ↦ |−k⟩`), `A_α = T_α P T_α†`.
pub fn parity_ops(pair: &BasisPair) -> Result<PhasePointOperators> {
    let f = pair.field();
    if f.n() != 1 || f.r() == 2 {
        return Err(Error::WrongField { expected: "an odd prime N", got: f.order() });
    }
    let r = f.r() as usize;
    let mut parity = CMatrix::zeros(r);
    for k in 0..r {
        parity[((r - k) % r, k)] = ONE;
    }
    let ops = all_points(f).into_iter().map(|a| translation_operator(a, pair).conjugate(&parity)).collect();
    PhasePointOperators::from_ops(f, ops)
}

/// `E = (1)`, `F = (−2)`. On this pair the parity net has
/// `Γ = η^{−(α∧β + β∧γ + γ∧α)}/N`; on `E = F = (1)` the same net carries
/// the exponent `2(α∧β + β∧γ + γ∧α)` instead.
pub fn special_pair(field: Field) -> Result<BasisPair> {
    if field.n() != 1 || field.r() == 2 {
        return Err(Error::WrongField { expected: "an odd prime N", got: field.order() });
    }
    let e = FieldBasis::new(vec![field.one()])?;
    let f = FieldBasis::new(vec![-field.from_int(2)])?;
    BasisPair::new(e, f)
}

/// The net with `Γ_{αβγ} = η^{−(α∧β + β∧γ + γ∧α)}/N` for odd prime `N`,
/// on [`special_pair`].
pub fn special_net_odd_prime(field: Field) -> Result<QuantumNet> {
    let pair = special_pair(field)?;
    let ops = parity_ops(&pair)?;
    net_from_ops(&Arc::new(mub_family(&pair)), &ops)
}

/// `η^{−(α∧β + β∧γ + γ∧α)}/N`.
pub fn special_gamma(a: PhasePoint, b: PhasePoint, c: PhasePoint) -> C64 {
    let f = a.field();
    let e = a.wedge(b) + b.wedge(c) + c.wedge(a);
    root_of_unity(-(e.index() as i64), f.r()) / f.order() as f64
}

/// `max |Γ_{Lα,Lβ,Lγ} − Γ_{αβγ}|` over the given maps.
pub fn gamma_invariance(g: &GammaTensor, maps: &[LinearMap]) -> f64 {
    let pts = all_points(g.field);
    let m = pts.len();
    maps.par_iter()
        .map(|l| {
            let img: Vec<usize> = pts.iter().map(|&p| point_index(l.apply(p))).collect();
            let mut worst: f64 = 0.0;
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let a = g.values[(i * m + j) * m + k];
                        let b = g.values[(img[i] * m + img[j]) * m + img[k]];
                        worst = worst.max((a - b).norm());
                    }
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

/// [`gamma_invariance`] over all of `SL(2, F_N)`.
pub fn gamma_sl2_invariance(g: &GammaTensor) -> f64 {
    gamma_invariance(g, &sl2_group(g.field))
}

/// `max |Γ_{αβγ} − η^{−(α∧β + β∧γ + γ∧α)}/N|`.
pub fn special_gamma_deviation(g: &GammaTensor) -> f64 {
    let pts = all_points(g.field);
    let m = pts.len();
    let mut worst: f64 = 0.0;
    for (i, &a) in pts.iter().enumerate() {
        for (j, &b) in pts.iter().enumerate() {
            for (k, &c) in pts.iter().enumerate() {
                worst = worst.max((g.values[(i * m + j) * m + k] - special_gamma(a, b, c)).norm());
            }
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Field-basis census

/// The basis `E` used for per-`w` pairs: `(ω, 1)` for `F_4`, otherwise the
/// polynomial basis.
pub fn census_basis(field: Field) -> FieldBasis {
    if field.r() == 2 && field.n() == 2 {
        FieldBasis::new(vec![field.element(2), field.one()]).expect("(w,1)")
    } else {
        FieldBasis::polynomial(field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusColumn {
    pub w: String,
    pub equivalence_classes: usize,
    pub orbit_sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub field: FieldJson,
    pub total: usize,
    pub columns: Vec<CensusColumn>,
}

/// One column per `w ≠ 0` with `F = w · dual(E)`.
pub fn w_variant_census(field: Field) -> Result<Census> {
    check_cap(field)?;
    let e = census_basis(field);
    let columns = field
        .nonzero()
        .map(|w| {
            let rep = similarity_orbits(&BasisPair::from_w(e.clone(), w)?)?;
            Ok(CensusColumn {
                w: w.to_string(),
                equivalence_classes: rep.orbit_sizes.iter().sum(),
                orbit_sizes: rep.orbit_sizes,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Census { field: field.into(), total: columns.iter().map(|c| c.equivalence_classes).sum(), columns })
}

impl Census {
    /// Census text: one column per `w`, similarity-class sizes below.
    pub fn table(&self) -> String {
        let mut out = format!("N = {}\n", self.field.r.pow(self.field.n));
        for c in &self.columns {
            let sizes: Vec<String> = c.orbit_sizes.iter().map(usize::to_string).collect();
            out.push_str(&format!("  w = {:<5} classes {:>4}  orbits {}\n", c.w, c.equivalence_classes, sizes.join(" + ")));
        }
        out.push_str(&format!("  total {}\n", self.total));
        out
    }
}

impl OrbitReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "N = {}, w = {}: {} orbits, sizes {:?}\n",
            self.field.r.pow(self.field.n),
            self.w,
            self.orbit_count,
            self.orbit_sizes
        );
        for o in &self.orbits {
            out.push_str(&format!("  {:>5}  ({})\n", o.size, o.representative.join(",")));
        }
        out.push_str(&format!("  Burnside: {} orbits from |G| = {}\n", self.burnside.orbit_count, self.burnside.group_order));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::linalg::ZERO;

    #[test]
    fn word_products_match() {
        let f = make_field(2, 2).unwrap();
        let z = default_z(f);
        for l in sl2_group(f) {
            assert_eq!(multiply_word(&decompose_sl2(&l, z).unwrap(), z), l);
        }
        assert!(decompose_sl2(&LinearMap::identity(f), z).unwrap().is_empty());
        assert_eq!(decompose_sl2(&Generator::L1.matrix(z), z).unwrap(), vec![Generator::L1]);
    }

    #[test]
    fn n4_generator_unitaries() {
        let pair = crate::presets::paper_n4_pair();
        let z = default_z(pair.field());
        let i = C64::new(0.0, 1.0);
        let u1 = generator_unitary(Generator::L1, &pair, z).unwrap();
        let d = CMatrix::diagonal(&[ONE, i]);
        assert!(u1.max_abs_diff(&d.kron(&d)) < 1e-12);
        let u2 = generator_unitary(Generator::L2, &pair, z).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let one = CMatrix::from_rows(vec![vec![C64::new(s, 0.0), i * s], vec![i * s, C64::new(s, 0.0)]]).unwrap();
        assert!(u2.proportionality(&one.kron(&one)).1 < 1e-12);
        let u3 = generator_unitary(Generator::L3, &pair, z).unwrap();
        let want = CMatrix::from_rows(vec![
            vec![ONE, ZERO, ZERO, ZERO],
            vec![ZERO, ZERO, ONE, ZERO],
            vec![ZERO, ZERO, ZERO, ONE],
            vec![ZERO, ONE, ZERO, ZERO],
        ])
        .unwrap();
        assert_eq!(u3, want);
    }

    #[test]
    fn n2_swap_is_hadamard() {
        let f = make_field(2, 1).unwrap();
        let pair = BasisPair::standard(f);
        let swap = LinearMap::new(f.zero(), f.one(), f.one(), f.zero());
        let u = unitary_for_linear(&swap, &pair).unwrap();
        // Unique up to a translation factor.
        assert!(all_points(f).into_iter().any(|b| {
            let h = &hadamard_n(1) * &translation_operator(b, &pair).to_matrix();
            u.proportionality(&h).1 < 1e-12
        }));
    }

    #[test]
    fn covariance_all_of_sl2() {
        for (r, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)] {
            let f = make_field(r, n).unwrap();
            let pair = BasisPair::standard(f);
            for l in sl2_group(f).into_iter().step_by(7) {
                let u = unitary_for_linear(&l, &pair).unwrap();
                assert!(u.unitarity_residual() < 1e-10);
                assert!(covariance_residual(&u, &l, &pair) < 1e-9, "N={} L={l:?}", f.order());
            }
        }
    }

    #[test]
    fn non_unit_determinant_rejected() {
        let f = make_field(3, 1).unwrap();
        let l = LinearMap::new(f.from_int(2), f.zero(), f.zero(), f.one());
        assert!(matches!(unitary_for_linear(&l, &BasisPair::standard(f)), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn conjugacy_class_sizes_sum() {
        for (r, n, order) in [(2, 1, 6), (3, 1, 24), (2, 2, 60), (5, 1, 120)] {
            let f = make_field(r, n).unwrap();
            assert_eq!(conjugacy_classes(f).iter().map(|c| c.1).sum::<usize>(), order);
        }
    }

    #[test]
    fn d_examples() {
        let f = make_field(2, 2).unwrap();
        assert!(discriminant_d(&RayChoice::zeros(f)).unwrap().is_zero());
        let c = RayChoice::parse(f, &["0", "0", "wbar", "w", "1"]).unwrap();
        assert!(discriminant_d(&c).unwrap().is_zero());
        let zero_count = enumerate_representatives(f).unwrap().filter(|c| discriminant_d(c).unwrap().is_zero()).count();
        assert_eq!(zero_count, 20);
        assert!(discriminant_d(&RayChoice::zeros(make_field(3, 1).unwrap())).is_err());
    }

    #[test]
    fn index_moves_match_computed_action() {
        let pair = crate::presets::paper_n4_pair();
        let f = pair.field();
        let fam = Arc::new(mub_family(&pair));
        let z = default_z(f);
        for (g, mv) in [(Generator::L1, IndexMove::L1), (Generator::L2, IndexMove::L2), (Generator::L3, IndexMove::L3)] {
            let act = similarity_action(&g.matrix(z), &fam).unwrap();
            for c in crate::net::enumerate_choices(f).unwrap() {
                assert_eq!(act.apply(&c), index_transform(mv, &c).unwrap());
            }
        }
        for a in all_points(f) {
            let c = RayChoice::parse(f, &["1", "w", "0", "wbar", "w"]).unwrap();
            assert_eq!(index_transform(IndexMove::Translate(a), &c).unwrap(), c.translated(a));
        }
    }

    #[test]
    fn special_net_unique_for_n5() {
        let f = make_field(5, 1).unwrap();
        let pair = special_pair(f).unwrap();
        let fam = Arc::new(mub_family(&pair));
        let pts = all_points(f);
        let o = PhasePoint::origin(f);
        let hits: Vec<RayChoice> = enumerate_representatives(f)
            .unwrap()
            .filter(|c| {
                let g = gamma(&build_net_in(&fam, c.clone()).unwrap());
                pts.iter().all(|&a| pts.iter().all(|&b| (g.get(o, a, b) - special_gamma(o, a, b)).norm() < 1e-9))
            })
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(&hits[0], special_net_odd_prime(f).unwrap().choice());
        assert!(special_pair(make_field(2, 1).unwrap()).is_err());
    }

    #[test]
    fn realignment_detects_products() {
        let a = CMatrix::diagonal(&[ONE, C64::new(2.0, 0.0)]);
        let b = CMatrix::from_rows(vec![vec![ONE, C64::new(0.0, 1.0)], vec![C64::new(0.0, -1.0), ONE]]).unwrap();
        assert!(is_tensor_product(&a.kron(&b), 1e-10));
        let swap = CMatrix::from_fn(4, |i, j| if (i == 0 && j == 0) || (i == 3 && j == 3) || (i == 1 && j == 2) || (i == 2 && j == 1) { ONE } else { ZERO });
        assert!(!is_tensor_product(&swap, 1e-10));
    }
}
