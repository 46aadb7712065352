//! Exact arithmetic in finite fields `F_{r^n}`.
//!
//! A field is built once per `(r, n)` from the lexicographically smallest
//! monic irreducible polynomial of degree `n` over `F_r`, with full
//! addition/multiplication tables. Fields are interned, so a [`Field`] is a
//! `Copy` handle and a [`FieldElement`] is a handle plus a table index.
//!
//! Element enumeration order: the coefficient vector `(c0, c1, ..)` of
//! `c0 + c1 x + ..` read as the base-`r` integer `c0 + c1 r + ..`. For `F_4`
//! that gives `0, 1, ω, ω̄`. Every "smallest" tie-break in the crate uses it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Default bound on `N = r^n`.
pub const DEFAULT_FIELD_CAP: u64 = 64;

/// Hard bound imposed by the `u16` element indices.
const MAX_FIELD_SIZE: u64 = 1 << 16;

pub fn is_prime(r: u32) -> bool {
    if r < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= r as u64 {
        if r % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over `F_r`, coefficients low degree first.
mod poly {
    pub fn degree(p: &[u32]) -> Option<usize> {
        p.iter().rposition(|&c| c != 0)
    }

    /// Remainder of `a` modulo monic `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], r: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let dm = m.len() - 1;
        while let Some(da) = degree(&a) {
            if da < dm {
                break;
            }
            let lead = a[da];
            let shift = da - dm;
            for (i, &mc) in m.iter().enumerate() {
                let sub = (lead as u64 * mc as u64 % r as u64) as u32;
                a[i + shift] = (a[i + shift] + r - sub) % r;
            }
        }
        a.truncate(dm.max(1));
        a.resize(dm.max(1), 0);
        a
    }

    pub fn mul(a: &[u32], b: &[u32], r: u32) -> Vec<u32> {
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % r as u64) as u32;
            }
        }
        out
    }

    /// Monic polynomial of degree `d` whose lower coefficients are the base-`r`
    /// digits of `k`.
    pub fn monic_from_index(k: u64, d: usize, r: u32) -> Vec<u32> {
        let mut p = Vec::with_capacity(d + 1);
        let mut k = k;
        for _ in 0..d {
            p.push((k % r as u64) as u32);
            k /= r as u64;
        }
        p.push(1);
        p
    }

    /// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
    pub fn is_irreducible(p: &[u32], r: u32) -> bool {
        let deg = p.len() - 1;
        for d in 1..=deg / 2 {
            let count = (r as u64).pow(d as u32);
            for k in 0..count {
                let f = monic_from_index(k, d, r);
                if rem_monic(p, &f, r).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

pub use poly::is_irreducible as is_irreducible_poly;

/// Tables for one field. Never constructed directly; see [`make_field`].
pub struct FieldSpec {
    r: u32,
    n: u32,
    order: usize,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    trace: Vec<u16>,
}

impl FieldSpec {
    fn build(r: u32, n: u32) -> FieldSpec {
        let order = (r as usize).pow(n);
        let modulus = (0..(r as u64).pow(n))
            .map(|k| poly::monic_from_index(k, n as usize, r))
            .find(|p| poly::is_irreducible(p, r))
            .expect("an irreducible polynomial of every degree exists");

        let coeffs = |i: usize| -> Vec<u32> {
            let mut i = i;
            (0..n)
                .map(|_| {
                    let c = (i % r as usize) as u32;
                    i /= r as usize;
                    c
                })
                .collect()
        };
        let index = |c: &[u32]| -> u16 { c.iter().rev().fold(0usize, |acc, &d| acc * r as usize + d as usize) as u16 };

        let all: Vec<Vec<u32>> = (0..order).map(coeffs).collect();
        let mut add = vec![0u16; order * order];
        let mut mul = vec![0u16; order * order];
        for i in 0..order {
            for j in 0..order {
                let s: Vec<u32> = all[i].iter().zip(&all[j]).map(|(a, b)| (a + b) % r).collect();
                add[i * order + j] = index(&s);
                let p = poly::mul(&all[i], &all[j], r);
                mul[i * order + j] = index(&poly::rem_monic(&p, &modulus, r));
            }
        }
        let neg: Vec<u16> = all.iter().map(|c| index(&c.iter().map(|&a| (r - a) % r).collect::<Vec<_>>())).collect();
        let mut inv = vec![0u16; order];
        for i in 1..order {
            inv[i] = (1..order).find(|&j| mul[i * order + j] == 1).expect("field element has an inverse") as u16;
        }
        // tr x = x + x^r + ... + x^{r^{n-1}}
        let mut trace = vec![0u16; order];
        for (x, t) in trace.iter_mut().enumerate() {
            let mut acc = 0u16;
            let mut power = x as u16;
            for _ in 0..n {
                acc = add[acc as usize * order + power as usize];
                let mut next = 1u16;
                for _ in 0..r {
                    next = mul[next as usize * order + power as usize];
                }
                power = next;
            }
            *t = acc;
        }
        FieldSpec { r, n, order, modulus, add, mul, neg, inv, trace }
    }
}

/// Interned handle to a finite field. Two handles are equal iff they refer
/// to the same `(r, n)`.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldSpec);

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static FieldSpec>> {
    static REGISTRY: OnceLock<Mutex<HashMap<(u32, u32), &'static FieldSpec>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Construct `F_{r^n}` with the default size cap.
pub fn make_field(r: u32, n: u32) -> Result<Field> {
    make_field_with_cap(r, n, DEFAULT_FIELD_CAP)
}

pub fn make_field_with_cap(r: u32, n: u32, cap: u64) -> Result<Field> {
    if !is_prime(r) {
        return Err(Error::NonPrime(r));
    }
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    let size = (r as u64).checked_pow(n).unwrap_or(u64::MAX);
    let cap = cap.min(MAX_FIELD_SIZE);
    if size > cap {
        return Err(Error::FieldTooLarge { size, cap });
    }
    let mut reg = registry().lock().expect("field registry poisoned");
    let spec = *reg.entry((r, n)).or_insert_with(|| Box::leak(Box::new(FieldSpec::build(r, n))));
    Ok(Field(spec))
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.r, self.0.n).hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())?;
        if self.n() > 1 {
            write!(f, "[{}]", self.modulus_string())?;
        }
        Ok(())
    }
}

impl Field {
    /// Characteristic.
    pub fn r(self) -> u32 {
        self.0.r
    }

    /// Extension degree.
    pub fn n(self) -> u32 {
        self.0.n
    }

    /// Number of elements `N = r^n`.
    pub fn order(self) -> usize {
        self.0.order
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(self) -> &'static [u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(self) -> bool {
        self.0.n == 1
    }

    pub fn modulus_string(self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.0.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            terms.push(match (c, i) {
                (1, 0) => "1".to_string(),
                (1, _) => mono,
                (_, 0) => c.to_string(),
                _ => format!("{c}{mono}"),
            });
        }
        terms.join(" + ")
    }

    pub fn element(self, index: usize) -> FieldElement {
        assert!(index < self.order(), "element index {index} out of range for {self:?}");
        FieldElement { field: self, index: index as u16 }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    /// The class of `x` in `F_r[x]/(modulus)`; for prime fields this is the
    /// root of the degree-1 modulus, i.e. `0`.
    pub fn generator(self) -> FieldElement {
        if self.n() == 1 {
            self.zero()
        } else {
            self.element(self.r() as usize)
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(self, k: i64) -> FieldElement {
        self.element(k.rem_euclid(self.r() as i64) as usize)
    }

    pub fn from_coeffs(self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.n() as usize || coeffs.iter().any(|&c| c >= self.r()) {
            return Err(Error::Parse { what: "coefficient vector", input: format!("{coeffs:?}") });
        }
        let idx = coeffs.iter().rev().fold(0usize, |acc, &d| acc * self.r() as usize + d as usize);
        Ok(self.element(idx))
    }

    pub fn elements(self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn nonzero(self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.order()).map(move |i| self.element(i))
    }

    /// Smallest element (in enumeration order) of multiplicative order `N - 1`.
    pub fn primitive_element(self) -> FieldElement {
        self.nonzero()
            .find(|x| x.multiplicative_order() == self.order() - 1)
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn is_f4(self) -> bool {
        self.r() == 2 && self.n() == 2
    }

    /// Parse textual notation: the coefficient string `c0c1..` (comma
    /// separated when `r > 10`), a plain integer in prime fields, or for `F_4`
    /// the aliases `0`, `1`, `w`, `wbar` (also `ω`, `ω̄`).
    pub fn parse(self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let err = || Error::Parse { what: "field element", input: s.to_string() };
        if self.is_f4() {
            match s {
                "0" => return Ok(self.zero()),
                "1" => return Ok(self.one()),
                "w" | "ω" => return Ok(self.element(2)),
                "wbar" | "ω̄" | "w+1" | "1+w" => return Ok(self.element(3)),
                _ => {}
            }
        }
        if self.n() == 1 {
            let v: u32 = s.parse().map_err(|_| err())?;
            if v >= self.r() {
                return Err(err());
            }
            return Ok(self.element(v as usize));
        }
        let digits: Vec<u32> = if s.contains(',') {
            s.split(',').map(|d| d.trim().parse::<u32>().map_err(|_| err())).collect::<Result<_>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(err)).collect::<Result<_>>()?
        };
        self.from_coeffs(&digits).map_err(|_| err())
    }
}

/// An element of a [`Field`]. Arithmetic operators panic on operands from
/// different fields; the `checked_*` methods report it as an error instead.
#[derive(Clone, Copy)]
pub struct FieldElement {
    field: Field,
    index: u16,
}

impl FieldElement {
    pub fn field(self) -> Field {
        self.field
    }

    /// Position in the field's enumeration order.
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn coeffs(self) -> Vec<u32> {
        let r = self.field.r() as usize;
        let mut i = self.index as usize;
        (0..self.field.n())
            .map(|_| {
                let c = (i % r) as u32;
                i /= r;
                c
            })
            .collect()
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }

    pub fn is_one(self) -> bool {
        self.index == 1
    }

    /// Whether the element lies in the prime subfield `F_r`.
    pub fn is_prime_subfield(self) -> bool {
        (self.index as u32) < self.field.r()
    }

    /// Integer lift of a prime-subfield element to `0..r`.
    pub fn as_prime(self) -> Option<u32> {
        self.is_prime_subfield().then_some(self.index as u32)
    }

    fn same_field(self, other: FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(self, rhs: FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        let s = self.field.0;
        Ok(FieldElement { field: self.field, index: s.add[self.index() * s.order + rhs.index()] })
    }

    pub fn checked_mul(self, rhs: FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        let s = self.field.0;
        Ok(FieldElement { field: self.field, index: s.mul[self.index() * s.order + rhs.index()] })
    }

    pub fn checked_sub(self, rhs: FieldElement) -> Result<FieldElement> {
        self.checked_add(-rhs)
    }

    pub fn inv(self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::InverseOfZero);
        }
        Ok(FieldElement { field: self.field, index: self.field.0.inv[self.index()] })
    }

    pub fn checked_div(self, rhs: FieldElement) -> Result<FieldElement> {
        self.checked_mul(rhs.inv()?)
    }

    pub fn pow(self, mut e: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Field trace into the prime subfield.
    pub fn trace(self) -> FieldElement {
        FieldElement { field: self.field, index: self.field.0.trace[self.index()] }
    }

    /// Multiplicative order; 0 for the zero element.
    pub fn multiplicative_order(self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut k = 1;
        let mut acc = self;
        while !acc.is_one() {
            acc = acc * self;
            k += 1;
        }
        k
    }

    pub fn is_primitive(self) -> bool {
        self.multiplicative_order() == self.field.order() - 1
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.index == other.index
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.index.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumeration order. Elements of different fields are ordered by `(r, n)`.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.r(), self.field.n(), self.index).cmp(&(other.field.r(), other.field.n(), other.index))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.field;
        if field.is_f4() {
            return f.write_str(["0", "1", "w", "wbar"][self.index()]);
        }
        if field.n() == 1 {
            return write!(f, "{}", self.index);
        }
        let c = self.coeffs();
        if field.r() <= 10 {
            c.iter().try_for_each(|d| write!(f, "{d}"))
        } else {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(rhs).expect("division by zero or field mismatch")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        FieldElement { field: self.field, index: self.field.0.neg[self.index()] }
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(mut iter: I) -> FieldElement {
        let first = iter.next().expect("sum of an empty iterator has no field");
        iter.fold(first, |a, b| a + b)
    }
}

/// Addition and multiplication tables, one after the other, with rows and
/// columns in element order:
///
/// ```text
/// +    | 0    1    w    wbar
/// -----+--------------------
/// 0    | 0    1    w    wbar
/// ```
pub fn operation_tables(field: Field) -> String {
    let names: Vec<String> = field.elements().map(|x| x.to_string()).collect();
    let w = names.iter().map(String::len).max().unwrap_or(1).max(1) + 1;
    let mut out = String::new();
    for (sym, op) in [("+", (|a, b| a + b) as fn(FieldElement, FieldElement) -> FieldElement), ("x", |a, b| a * b)] {
        let row = |head: &str, cells: Vec<String>| {
            let body: String = cells.iter().map(|c| format!("{c:<w$}")).collect();
            format!("{head:<w$}| {}\n", body.trim_end())
        };
        out.push_str(&row(sym, names.clone()));
        out.push_str(&format!("{}+{}\n", "-".repeat(w), "-".repeat(w * names.len())));
        for a in field.elements() {
            out.push_str(&row(&a.to_string(), field.elements().map(|b| op(a, b).to_string()).collect()));
        }
        out.push('\n');
    }
    out
}

/// Inverse of a square matrix over `F_r`, or `None` if singular.
pub fn mod_matrix_inverse(m: &[Vec<u32>], r: u32) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let r64 = r as u64;
    let inv_mod = |a: u32| -> u32 {
        // r is prime: a^{r-2}
        let mut acc = 1u64;
        let mut base = a as u64 % r64;
        let mut e = r64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % r64;
            }
            base = base * base % r64;
            e >>= 1;
        }
        acc as u32
    };
    let mut aug: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v: Vec<u32> = row.iter().map(|&x| x % r).collect();
            v.extend((0..n).map(|j| (i == j) as u32));
            v
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| aug[i][col] != 0)?;
        aug.swap(col, pivot);
        let pinv = inv_mod(aug[col][col]) as u64;
        for x in aug[col].iter_mut() {
            *x = (*x as u64 * pinv % r64) as u32;
        }
        for i in 0..n {
            if i != col && aug[i][col] != 0 {
                let f = aug[i][col] as u64;
                let pivot_row = aug[col].clone();
                for (x, p) in aug[i].iter_mut().zip(pivot_row) {
                    *x = ((*x as u64 + r64 - f * p as u64 % r64) % r64) as u32;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// An ordered basis of `F_{r^n}` over `F_r`, with its dual cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldBasis {
    elems: Vec<FieldElement>,
    dual: Vec<FieldElement>,
}

impl FieldBasis {
    pub fn new(elems: Vec<FieldElement>) -> Result<Self> {
        let field = elems.first().ok_or(Error::BasisLength { expected: 1, got: 0 })?.field();
        let n = field.n() as usize;
        if elems.len() != n {
            return Err(Error::BasisLength { expected: n, got: elems.len() });
        }
        if elems.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        // tr(e_i β_k) for the polynomial basis β_k = x^k; the dual basis has
        // coefficient matrix C with M Cᵀ = I.
        let x = if n == 1 { field.one() } else { field.generator() };
        let beta: Vec<FieldElement> = (0..n).map(|k| x.pow(k as u64)).collect();
        let m: Vec<Vec<u32>> =
            elems.iter().map(|e| beta.iter().map(|b| (*e * *b).trace().index() as u32).collect()).collect();
        let minv = mod_matrix_inverse(&m, field.r()).ok_or(Error::DependentBasis)?;
        // Cᵀ = M⁻¹, so the dual element j has coefficients (M⁻¹)_{kj} on β_k.
        let dual = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&k| minv[k][j] != 0)
                    .map(|k| field.from_int(minv[k][j] as i64) * beta[k])
                    .fold(field.zero(), |a, b| a + b)
            })
            .collect();
        Ok(FieldBasis { elems, dual })
    }

    /// `(1, z, z², .., z^{n-1})`.
    pub fn powers_of(z: FieldElement) -> Result<Self> {
        let n = z.field().n() as usize;
        Self::new((0..n).map(|k| z.pow(k as u64)).collect())
    }

    /// The polynomial basis `(1, x, .., x^{n-1})`.
    pub fn polynomial(field: Field) -> Self {
        if field.n() == 1 {
            return Self::new(vec![field.one()]).expect("{1} is a basis of a prime field");
        }
        Self::powers_of(field.generator()).expect("powers of the generator form a basis")
    }

    pub fn field(&self) -> Field {
        self.elems[0].field()
    }

    pub fn elems(&self) -> &[FieldElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The unique basis `Ẽ` with `tr(e_i ẽ_j) = δ_ij`.
    pub fn dual(&self) -> FieldBasis {
        FieldBasis { elems: self.dual.clone(), dual: self.elems.clone() }
    }

    pub fn dual_elems(&self) -> &[FieldElement] {
        &self.dual
    }

    /// Every element multiplied by `w`.
    pub fn scaled(&self, w: FieldElement) -> Result<FieldBasis> {
        Self::new(self.elems.iter().map(|&e| e.checked_mul(w)).collect::<Result<_>>()?)
    }

    /// Coefficients `x_j = tr(x ẽ_j)` with `x = Σ x_j e_j`.
    pub fn expand(&self, x: FieldElement) -> Vec<u32> {
        self.dual.iter().map(|&d| (x * d).trace().index() as u32).collect()
    }

    pub fn reconstruct(&self, coeffs: &[u32]) -> FieldElement {
        let field = self.field();
        self.elems
            .iter()
            .zip(coeffs)
            .map(|(&e, &c)| field.from_int(c as i64) * e)
            .fold(field.zero(), |a, b| a + b)
    }
}

impl fmt::Display for FieldBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for FieldBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
