//! The `N×N` phase space over `F_N`: points, lines, striations, translations
//! and linear maps.
//!
//! Striation order is fixed crate-wide: vertical (`q = const`, ray direction
//! `(0,1)`), horizontal (`p = const`, direction `(1,0)`), then the slopes
//! `(1,m)` for `m ≠ 0` in field enumeration order. Striation `1 + m.index()`
//! has direction `(1,m)`.
//!
//! Within a striation, lines are indexed by an *offset* `t ∈ F_N`: the
//! vertical line `q = t`, or the line `p − m q = t` for direction `(1,m)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    pub q: FieldElement,
    pub p: FieldElement,
}

impl PhasePoint {
    pub fn new(q: FieldElement, p: FieldElement) -> Self {
        assert!(q.field() == p.field(), "phase point coordinates from different fields");
        PhasePoint { q, p }
    }

    pub fn origin(field: Field) -> Self {
        PhasePoint { q: field.zero(), p: field.zero() }
    }

    pub fn field(self) -> Field {
        self.q.field()
    }

    pub fn is_origin(self) -> bool {
        self.q.is_zero() && self.p.is_zero()
    }

    pub fn scale(self, s: FieldElement) -> Self {
        PhasePoint { q: s * self.q, p: s * self.p }
    }

    /// Symplectic form `q p' − p q'`.
    pub fn wedge(self, other: PhasePoint) -> FieldElement {
        self.q * other.p - self.p * other.q
    }
}

impl Add for PhasePoint {
    type Output = PhasePoint;
    fn add(self, o: Self) -> Self {
        PhasePoint { q: self.q + o.q, p: self.p + o.p }
    }
}

impl Sub for PhasePoint {
    type Output = PhasePoint;
    fn sub(self, o: Self) -> Self {
        PhasePoint { q: self.q - o.q, p: self.p - o.p }
    }
}

impl Neg for PhasePoint {
    type Output = PhasePoint;
    fn neg(self) -> Self {
        PhasePoint { q: -self.q, p: -self.p }
    }
}

impl fmt::Debug for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.p)
    }
}

impl fmt::Display for PhasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The line `a q + b p = c`, stored with the first nonzero of `(a, b)`
/// equal to 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Line {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
}

impl Line {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        if a.field() != b.field() || a.field() != c.field() {
            return Err(Error::FieldMismatch);
        }
        let lead = if !a.is_zero() {
            a
        } else if !b.is_zero() {
            b
        } else {
            return Err(Error::InvalidChoice("line with a = b = 0".into()));
        };
        let s = lead.inv()?;
        Ok(Line { a: a * s, b: b * s, c: c * s })
    }

    pub fn a(self) -> FieldElement {
        self.a
    }
    pub fn b(self) -> FieldElement {
        self.b
    }
    pub fn c(self) -> FieldElement {
        self.c
    }

    pub fn field(self) -> Field {
        self.a.field()
    }

    pub fn contains(self, pt: PhasePoint) -> bool {
        self.a * pt.q + self.b * pt.p == self.c
    }

    pub fn is_parallel(self, other: Line) -> bool {
        self.a == other.a && self.b == other.b
    }

    /// A nonzero vector along the line.
    pub fn direction(self) -> PhasePoint {
        PhasePoint { q: -self.b, p: self.a }
    }

    /// Index of the striation containing this line.
    pub fn striation_index(self) -> usize {
        striation_of_direction(self.direction())
    }

    /// Offset of this line within its striation.
    pub fn offset(self) -> FieldElement {
        offset_of_point(self.striation_index(), self.any_point())
    }

    /// Some point of the line (the one with the smallest free coordinate 0).
    pub fn any_point(self) -> PhasePoint {
        let f = self.field();
        if self.a.is_one() {
            PhasePoint { q: self.c, p: f.zero() }
        } else {
            PhasePoint { q: f.zero(), p: self.c }
        }
    }

    /// The `N` points, ordered by the free parameter in field order.
    pub fn points(self) -> Vec<PhasePoint> {
        let base = self.any_point();
        let d = self.direction();
        self.field().elements().map(|s| base + d.scale(s)).collect()
    }

    pub fn passes_through_origin(self) -> bool {
        self.c.is_zero()
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}q+{}p={}", self.a, self.b, self.c)
    }
}

/// Direction of the ray of striation `s`.
pub fn striation_direction(field: Field, s: usize) -> PhasePoint {
    assert!(s <= field.order(), "striation index {s} out of range");
    if s == 0 {
        PhasePoint { q: field.zero(), p: field.one() }
    } else {
        PhasePoint { q: field.one(), p: field.element(s - 1) }
    }
}

/// Striation index of the direction `d ≠ 0`.
pub fn striation_of_direction(d: PhasePoint) -> usize {
    assert!(!d.is_origin(), "zero direction");
    if d.q.is_zero() {
        0
    } else {
        1 + (d.p / d.q).index()
    }
}

/// Slope `m` of striation `s ≥ 1`.
pub fn striation_slope(field: Field, s: usize) -> Option<FieldElement> {
    (s >= 1).then(|| field.element(s - 1))
}

/// Offset of the line of striation `s` through `pt`.
pub fn offset_of_point(s: usize, pt: PhasePoint) -> FieldElement {
    if s == 0 {
        pt.q
    } else {
        let m = pt.field().element(s - 1);
        pt.p - m * pt.q
    }
}

/// The line of striation `s` with the given offset.
pub fn line_in_striation(field: Field, s: usize, t: FieldElement) -> Line {
    if s == 0 {
        Line::new(field.one(), field.zero(), t).expect("vertical line")
    } else {
        let m = field.element(s - 1);
        Line::new(-m, field.one(), t).expect("sloped line")
    }
}

/// A complete set of `N` parallel lines.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Striation {
    pub index: usize,
    pub direction: PhasePoint,
    /// Lines ordered by offset; `lines[0]` is the ray.
    pub lines: Vec<Line>,
}

impl Striation {
    pub fn new(field: Field, index: usize) -> Self {
        let lines = field.elements().map(|t| line_in_striation(field, index, t)).collect();
        Striation { index, direction: striation_direction(field, index), lines }
    }

    pub fn ray(&self) -> Line {
        self.lines[0]
    }

    pub fn is_vertical(&self) -> bool {
        self.index == 0
    }
}

pub fn striations(field: Field) -> Vec<Striation> {
    (0..=field.order()).map(|s| Striation::new(field, s)).collect()
}

/// All `N(N+1)` lines, striation-major, offset-minor.
pub fn all_lines(field: Field) -> Vec<Line> {
    striations(field).into_iter().flat_map(|s| s.lines).collect()
}

pub fn all_points(field: Field) -> Vec<PhasePoint> {
    let mut out = Vec::with_capacity(field.order() * field.order());
    for q in field.elements() {
        for p in field.elements() {
            out.push(PhasePoint { q, p });
        }
    }
    out
}

/// Dense index of a point: `q.index() * N + p.index()`, matching [`all_points`].
pub fn point_index(pt: PhasePoint) -> usize {
    pt.q.index() * pt.field().order() + pt.p.index()
}

/// Dense index of a line: `s * N + offset.index()`, matching [`all_lines`].
pub fn line_index(l: Line) -> usize {
    l.striation_index() * l.field().order() + l.offset().index()
}

pub fn translate_line(l: Line, alpha: PhasePoint) -> Line {
    Line { a: l.a, b: l.b, c: l.c + l.a * alpha.q + l.b * alpha.p }
}

/// Canonical line through a point set, if the set is exactly one line.
pub fn line_through_points(pts: &[PhasePoint]) -> Option<Line> {
    let field = pts.first()?.field();
    if pts.len() != field.order() {
        return None;
    }
    let (p0, p1) = (pts[0], *pts.get(1)?);
    if p0 == p1 {
        return None;
    }
    let d = p1 - p0;
    let l = Line::new(d.p, -d.q, d.p * p0.q - d.q * p0.p).ok()?;
    let mut want: Vec<PhasePoint> = l.points();
    let mut got = pts.to_vec();
    want.sort_by_key(|&x| point_index(x));
    got.sort_by_key(|&x| point_index(x));
    (got == want).then_some(l)
}

/// A 2×2 matrix acting on column vectors `(q, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearMap {
    pub m: [[FieldElement; 2]; 2],
}

impl LinearMap {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        LinearMap { m: [[a, b], [c, d]] }
    }

    pub fn identity(field: Field) -> Self {
        Self::new(field.one(), field.zero(), field.zero(), field.one())
    }

    pub fn field(&self) -> Field {
        self.m[0][0].field()
    }

    pub fn det(&self) -> FieldElement {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        let di = self.det().inv().map_err(|_| Error::SingularMap)?;
        let [[a, b], [c, d]] = self.m;
        Ok(Self::new(d * di, -b * di, -c * di, a * di))
    }

    pub fn apply(&self, pt: PhasePoint) -> PhasePoint {
        let [[a, b], [c, d]] = self.m;
        PhasePoint { q: a * pt.q + b * pt.p, p: c * pt.q + d * pt.p }
    }

    /// Image of a line: `(a, b) ↦ (a, b) L⁻¹` with `c` fixed.
    pub fn apply_line(&self, l: Line) -> Result<Line> {
        let inv = self.inverse()?;
        let [[i00, i01], [i10, i11]] = inv.m;
        Line::new(l.a * i00 + l.b * i10, l.a * i01 + l.b * i11, l.c)
    }

    /// Permutation of striation indices induced by the map.
    pub fn striation_permutation(&self) -> Result<Vec<usize>> {
        let f = self.field();
        if self.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok((0..=f.order()).map(|s| striation_of_direction(self.apply(striation_direction(f, s)))).collect())
    }

    /// Lexicographic key over the entry indices.
    pub fn key(&self) -> [usize; 4] {
        [self.m[0][0].index(), self.m[0][1].index(), self.m[1][0].index(), self.m[1][1].index()]
    }
}

impl Mul for LinearMap {
    type Output = LinearMap;
    fn mul(self, o: Self) -> Self {
        let a = self.m;
        let b = o.m;
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        LinearMap { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}

/// Either a point or a line, for [`apply_linear`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Figure {
    Point(PhasePoint),
    Line(Line),
}

pub fn apply_linear(l: &LinearMap, x: Figure) -> Result<Figure> {
    if l.det().is_zero() {
        return Err(Error::SingularMap);
    }
    Ok(match x {
        Figure::Point(p) => Figure::Point(l.apply(p)),
        Figure::Line(line) => Figure::Line(l.apply_line(line)?),
    })
}

/// All unit-determinant maps, in lexicographic order of entry indices.
pub fn sl2_group(field: Field) -> Vec<LinearMap> {
    let mut out = Vec::with_capacity(field.order().pow(3) - field.order());
    for a in field.elements() {
        for b in field.elements() {
            for c in field.elements() {
                for d in field.elements() {
                    if a * d - b * c == field.one() {
                        out.push(LinearMap::new(a, b, c, d));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use std::collections::HashSet;

    #[test]
    fn line_counts() {
        for (r, n, count) in [(2, 1, 6), (2, 2, 20), (3, 1, 12), (5, 1, 30)] {
            let f = make_field(r, n).unwrap();
            let lines = all_lines(f);
            assert_eq!(lines.len(), count);
            assert_eq!(lines.iter().collect::<HashSet<_>>().len(), count);
            for (i, l) in lines.iter().enumerate() {
                assert_eq!(line_index(*l), i);
                assert_eq!(l.points().len(), f.order());
                assert!(l.points().iter().all(|p| l.contains(*p)));
            }
        }
    }

    #[test]
    fn striation_order_and_partition() {
        let f = make_field(2, 2).unwrap();
        let ss = striations(f);
        assert_eq!(ss.len(), 5);
        let dirs: Vec<String> = ss.iter().map(|s| s.direction.to_string()).collect();
        assert_eq!(dirs, ["(0,1)", "(1,0)", "(1,1)", "(1,w)", "(1,wbar)"]);
        for s in &ss {
            let mut covered = HashSet::new();
            for l in &s.lines {
                for p in l.points() {
                    assert!(covered.insert(p));
                }
                assert_eq!(l.striation_index(), s.index);
            }
            assert_eq!(covered.len(), 16);
            assert!(s.ray().passes_through_origin());
        }
    }

    #[test]
    fn line_through_origin_of_w_striation() {
        let f = make_field(2, 2).unwrap();
        let w = f.parse("w").unwrap();
        let ray = Striation::new(f, 3).ray();
        let pts: HashSet<String> = ray.points().iter().map(|p| p.to_string()).collect();
        let want: HashSet<String> = ["(0,0)", "(1,w)", "(w,wbar)", "(wbar,1)"].iter().map(|s| s.to_string()).collect();
        assert_eq!(pts, want);
        assert_eq!(striation_of_direction(PhasePoint::new(f.one(), w)), 3);
    }

    #[test]
    fn vertical_ray_translated() {
        let f = make_field(2, 2).unwrap();
        let l = translate_line(Striation::new(f, 0).ray(), PhasePoint::new(f.one(), f.zero()));
        assert_eq!(l, Line::new(f.one(), f.zero(), f.one()).unwrap());
        assert_eq!(l.offset(), f.one());
    }

    #[test]
    fn mod4_points_are_not_an_f4_line() {
        let f = make_field(2, 2).unwrap();
        // Under integer arithmetic mod 4 the labels 0,1,2,3 are 0,1,w,wbar.
        let e = |i| f.element(i);
        let pts = [(0, 0), (1, 2), (2, 0), (3, 2)].map(|(q, p)| PhasePoint::new(e(q), e(p)));
        assert!(line_through_points(&pts).is_none());
        let good = Striation::new(f, 3).ray().points();
        assert!(line_through_points(&good).is_some());
    }

    #[test]
    fn affine_plane_axioms() {
        for (r, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = make_field(r, n).unwrap();
            let lines = all_lines(f);
            let pts = all_points(f);
            for (i, &x) in pts.iter().enumerate() {
                for &y in &pts[i + 1..] {
                    assert_eq!(lines.iter().filter(|l| l.contains(x) && l.contains(y)).count(), 1);
                }
            }
            for l in &lines {
                for &x in pts.iter().filter(|x| !l.contains(**x)) {
                    assert_eq!(lines.iter().filter(|m| m.is_parallel(*l) && m.contains(x)).count(), 1);
                }
                for m in lines.iter().filter(|m| !m.is_parallel(*l)) {
                    assert_eq!(pts.iter().filter(|x| l.contains(**x) && m.contains(**x)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn translations_compose() {
        let f = make_field(3, 1).unwrap();
        let pts = all_points(f);
        for l in all_lines(f) {
            for &a in &pts {
                for &b in &pts {
                    assert_eq!(translate_line(translate_line(l, a), b), translate_line(l, a + b));
                }
                let t = translate_line(l, a);
                assert!(t.is_parallel(l));
                assert!(l.points().iter().all(|&x| t.contains(x + a)));
            }
        }
    }

    #[test]
    fn swap_map_on_n2() {
        let f = make_field(2, 1).unwrap();
        let (z, o) = (f.zero(), f.one());
        let swap = LinearMap::new(z, o, o, z);
        assert_eq!(swap.striation_permutation().unwrap(), vec![1, 0, 2]);
        let id = LinearMap::identity(f);
        for l in all_lines(f) {
            assert_eq!(apply_linear(&id, Figure::Line(l)).unwrap(), Figure::Line(l));
        }
    }

    #[test]
    fn lines_map_to_lines() {
        let f = make_field(2, 2).unwrap();
        for g in sl2_group(f) {
            for l in all_lines(f) {
                let img = g.apply_line(l).unwrap();
                assert!(l.points().iter().all(|&x| img.contains(g.apply(x))));
            }
        }
    }

    #[test]
    fn l3_with_wbar_fixes_horizontal_ray() {
        let f = make_field(2, 2).unwrap();
        let wb = f.parse("wbar").unwrap();
        let l3 = LinearMap::new(wb, f.zero(), f.zero(), wb.inv().unwrap());
        let ray = Striation::new(f, 1).ray();
        assert_eq!(l3.apply_line(ray).unwrap(), ray);
        assert_eq!(l3.apply(PhasePoint::new(f.one(), f.zero())), PhasePoint::new(wb, f.zero()));
    }

    #[test]
    fn singular_map_rejected() {
        let f = make_field(3, 1).unwrap();
        let s = LinearMap::new(f.one(), f.one(), f.one(), f.one());
        assert_eq!(apply_linear(&s, Figure::Point(PhasePoint::origin(f))).unwrap_err(), Error::SingularMap);
    }

    #[test]
    fn sl2_orders_and_closure() {
        for (r, n, count) in [(2, 1, 6), (3, 1, 24), (2, 2, 60), (5, 1, 120)] {
            let f = make_field(r, n).unwrap();
            let g = sl2_group(f);
            assert_eq!(g.len(), count);
            if count <= 60 {
                let set: HashSet<_> = g.iter().copied().collect();
                for a in &g {
                    for b in &g {
                        assert!(set.contains(&(*a * *b)));
                        assert_eq!((*a * *b).det(), a.det() * b.det());
                    }
                }
            }
        }
    }

    #[test]
    fn generators_span_sl2_f4() {
        let f = make_field(2, 2).unwrap();
        let (z, o) = (f.zero(), f.one());
        let wb = f.parse("wbar").unwrap();
        let gens = [LinearMap::new(o, z, o, o), LinearMap::new(o, o, z, o), LinearMap::new(wb, z, z, wb.inv().unwrap())];
        let mut seen: HashSet<LinearMap> = HashSet::from([LinearMap::identity(f)]);
        let mut frontier = vec![LinearMap::identity(f)];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x * *g;
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(seen, sl2_group(f).into_iter().collect());
    }
}
