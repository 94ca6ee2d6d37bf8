//! Indecomposables of the root category as roots, the shift, extension
//! ladders, reflections and complete sections.
//!
//! Objects are identified with root indices of a [`RootDatum`] in its
//! reference coordinates. A [`Section`] records an orientation together with
//! the Weyl transform taking reference coordinates to the section's own
//! simple-root coordinates; an object lies in `B` when its section
//! coordinates are positive.

use std::collections::{HashSet, VecDeque};

use crate::error::{CategoryError, RootError};
use crate::root_data::RootDatum;

/// An indecomposable object, up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ind {
    pub index: usize,
    pub root: Vec<i64>,
    pub d: i64,
}

impl Ind {
    pub fn new(datum: &RootDatum, index: usize) -> Result<Self, RootError> {
        if index >= datum.num_roots() {
            return Err(RootError::IndexOutOfRange(index));
        }
        Ok(Ind { index, root: datum.root(index).to_vec(), d: datum.root_d(index) })
    }

    pub fn from_root(datum: &RootDatum, root: &[i64]) -> Result<Self, RootError> {
        let index = datum.index_of(root).ok_or_else(|| RootError::NotARoot(datum.type_name().to_string()))?;
        Self::new(datum, index)
    }

    /// `T X`: the negated root.
    pub fn shift(&self, datum: &RootDatum) -> Ind {
        Ind { index: datum.neg(self.index), root: self.root.iter().map(|c| -c).collect(), d: self.d }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionTag {
    B,
    TB,
}

/// `(H_X | H_Y)`; `(H_X | H_X) = 2 d(X)`.
pub fn euler_pair(datum: &RootDatum, x: &Ind, y: &Ind) -> i64 {
    datum.form(&x.root, &y.root)
}

/// `A_XY = (H_X | H_Y) / d(X)`.
pub fn a_coeff(datum: &RootDatum, x: &Ind, y: &Ind) -> Result<i64, RootError> {
    let e = euler_pair(datum, x, y);
    if e % x.d != 0 {
        return Err(RootError::NonIntegral(format!("({e})/{}", x.d)));
    }
    Ok(e / x.d)
}

/// Existence grid of `i·X + j·Y` for `0 ≤ i, j ≤ 3`, with the string bounds
/// `p` (largest `r` with `Y − rX` a root) and `q` (largest `s` with `Y + sX`
/// a root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub x: usize,
    pub y: usize,
    pub exists: [[bool; 4]; 4],
    pub p: i64,
    pub q: i64,
}

impl Ladder {
    /// Root index of `L_{X,Y,i,j}` if it exists.
    pub fn entry(&self, datum: &RootDatum, i: i64, j: i64) -> Option<usize> {
        if i < 0 || j < 0 || i > 3 || j > 3 || !self.exists[i as usize][j as usize] {
            return None;
        }
        datum.combo_index(self.x, i, self.y, j)
    }

    /// Existing `(i, j)` with `i, j ≥ 1`, ordered by `i + j`, then `i`.
    pub fn mixed_terms(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = (1..4)
            .flat_map(|i| (1..4).map(move |j| (i, j)))
            .filter(|&(i, j)| self.exists[i as usize][j as usize])
            .collect();
        out.sort_by_key(|&(i, j)| (i + j, i));
        out
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for j in (0..4).rev() {
            for i in 0..4 {
                s.push(if self.exists[i][j] { '#' } else { '.' });
            }
            s.push('\n');
        }
        s
    }
}

pub fn ladder(datum: &RootDatum, x: usize, y: usize) -> Result<Ladder, CategoryError> {
    if x == y || datum.neg(x) == y {
        return Err(CategoryError::Incomparable("ladder needs Y ≇ X, TX".into()));
    }
    let mut exists = [[false; 4]; 4];
    for (i, row) in exists.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i + j > 0 {
                *cell = datum.combo_index(x, i as i64, y, j as i64).is_some();
            }
        }
    }
    let mut p = 0;
    while datum.combo_index(x, -(p + 1), y, 1).is_some() {
        p += 1;
    }
    let mut q = 0;
    while datum.combo_index(x, q + 1, y, 1).is_some() {
        q += 1;
    }
    Ok(Ladder { x, y, exists, p, q })
}

/// Type of the rank-2 subsystem spanned by the two ends of a ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderTemplate {
    A1xA1,
    A2,
    B2,
    G2,
}

/// Classifies the subsystem `Φ ∩ (QX + QY)` by its size and checks that the
/// ladder grid is compatible with it (coefficients up to 1, 2, or 3).
pub fn ladder_template(datum: &RootDatum, l: &Ladder) -> Option<LadderTemplate> {
    let (x, y) = (datum.root(l.x), datum.root(l.y));
    let m = x.len();
    let in_span = |v: &[i64]| {
        // rank of [x, y, v] is 2 iff every 3x3 minor vanishes
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let r = [[x[a], x[b], x[c]], [y[a], y[b], y[c]], [v[a], v[b], v[c]]];
                    let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
                    if det != 0 {
                        return false;
                    }
                }
            }
        }
        true
    };
    let count = datum.roots().iter().filter(|v| in_span(v)).count();
    let (t, max_coeff) = match count {
        4 => (LadderTemplate::A1xA1, 0),
        6 => (LadderTemplate::A2, 1),
        8 => (LadderTemplate::B2, 2),
        12 => (LadderTemplate::G2, 3),
        _ => return None,
    };
    let terms = l.mixed_terms();
    let widest = terms.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
    (widest <= max_coeff).then_some(t)
}

/// `ω_X(Y)`: `TY` if `Y ∈ {X, TX}`, else the reflection `Y − A_XY·X`.
pub fn omega(datum: &RootDatum, x: usize, y: usize) -> usize {
    if y == x || y == datum.neg(x) {
        return datum.neg(y);
    }
    let a = datum.a_coeff(x, y);
    datum.combo_index(x, -a, y, 1).expect("reflection of a root is a root")
}

/// Orientation plus the Weyl transform from reference coordinates to
/// section coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Section {
    arrows: Vec<(usize, usize)>,
    transform: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

impl Section {
    /// The section given by the datum's own orientation.
    pub fn initial(datum: &RootDatum) -> Self {
        let m = datum.rank();
        let id: Vec<Vec<i64>> = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
        Section { arrows: datum.arrows().to_vec(), transform: id.clone(), inverse: id }
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// The datum re-oriented as this section (roots in section coordinates
    /// form the same set, since the transform lies in the Weyl group).
    pub fn datum(&self, datum: &RootDatum) -> RootDatum {
        datum.with_arrows(self.arrows.clone()).expect("section arrows orient the diagram")
    }

    pub fn coords(&self, x: &Ind) -> Vec<i64> {
        mat_vec(&self.transform, &x.root)
    }

    /// Reference root of the object with section coordinates `v`.
    pub fn from_coords(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.inverse, v)
    }

    pub fn tag(&self, x: &Ind) -> SectionTag {
        if self.coords(x).iter().all(|&c| c >= 0) {
            SectionTag::B
        } else {
            SectionTag::TB
        }
    }

    /// `l(M)`: height in section coordinates, negative on `TB`.
    pub fn length(&self, x: &Ind) -> i64 {
        self.coords(x).iter().sum()
    }

    /// The simple objects `S_1..S_m` of `B`.
    pub fn simples(&self, datum: &RootDatum) -> Vec<Ind> {
        let m = datum.rank();
        (0..m)
            .map(|i| {
                let mut e = vec![0; m];
                e[i] = 1;
                Ind::from_root(datum, &self.from_coords(&e)).expect("simple objects are roots")
            })
            .collect()
    }

    pub fn is_sink(&self, i: usize) -> bool {
        !self.arrows.iter().any(|&(t, _)| t == i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        !self.arrows.iter().any(|&(_, h)| h == i)
    }
}

/// BGP reflection at a sink or source: reverses the arrows at `i` and
/// composes the transform with `s_i`.
pub fn reflect_section(datum: &RootDatum, section: &Section, i: usize) -> Result<Section, CategoryError> {
    let m = datum.rank();
    if i >= m {
        return Err(CategoryError::NotInSection(format!("vertex {}", i + 1)));
    }
    if !section.is_sink(i) && !section.is_source(i) {
        return Err(CategoryError::NotSinkOrSource(i + 1));
    }
    let arrows = section
        .arrows
        .iter()
        .map(|&(t, h)| if t == i || h == i { (h, t) } else { (t, h) })
        .collect();
    // s_i in section coordinates: v ↦ v − ⟨v, α_i^∨⟩ α_i
    let mut s = vec![vec![0i64; m]; m];
    for (r, row) in s.iter_mut().enumerate() {
        row[r] = 1;
    }
    for j in 0..m {
        s[i][j] -= datum.cartan()[i][j];
    }
    Ok(Section {
        arrows,
        transform: mat_mul(&s, &section.transform),
        inverse: mat_mul(&section.inverse, &s),
    })
}

/// Relative position of two indecomposables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Greater,
    Less,
    Incomparable,
}

impl Position {
    pub fn flip(self) -> Position {
        match self {
            Position::Greater => Position::Less,
            Position::Less => Position::Greater,
            Position::Incomparable => Position::Incomparable,
        }
    }
}

/// Supplies `dim Hom(X, Y)` for positive roots of an oriented simply-laced
/// datum (coordinates are the datum's own).
pub trait HomOracle {
    fn hom_dim(&self, datum: &RootDatum, x: &[i64], y: &[i64]) -> Result<i64, CategoryError>;
}

/// First section reachable by sink/source reflections in which both `x`
/// and `y` lie in `B`.
pub fn common_section(datum: &RootDatum, start: &Section, x: &Ind, y: &Ind) -> Result<Section, CategoryError> {
    let both = |s: &Section| s.tag(x) == SectionTag::B && s.tag(y) == SectionTag::B;
    let mut seen: HashSet<Section> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(s) = queue.pop_front() {
        if both(&s) {
            return Ok(s);
        }
        for i in 0..datum.rank() {
            if let Ok(next) = reflect_section(datum, &s, i) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        if seen.len() > 100_000 {
            break;
        }
    }
    Err(CategoryError::Incomparable("no hereditary section contains both objects".into()))
}

/// `X > Y` iff `Ext¹(Y, X) ≠ 0` and `Ext¹(X, Y) = 0`, computed inside a
/// section containing both, with `dim Ext¹ = dim Hom − ⟨−,−⟩`.
pub fn relative_position(
    datum: &RootDatum,
    section: &Section,
    x: &Ind,
    y: &Ind,
    oracle: &dyn HomOracle,
) -> Result<Position, CategoryError> {
    if datum.neg(x.index) == y.index {
        return Err(CategoryError::Incomparable("X ≅ TY".into()));
    }
    let s = common_section(datum, section, x, y)?;
    let sd = s.datum(datum);
    let (xc, yc) = (s.coords(x), s.coords(y));
    let ext = |a: &[i64], b: &[i64]| -> Result<i64, CategoryError> {
        Ok(oracle.hom_dim(&sd, a, b)? - sd.euler_form(a, b))
    };
    let ext_xy = ext(&xc, &yc)?;
    let ext_yx = ext(&yc, &xc)?;
    Ok(match (ext_yx != 0, ext_xy != 0) {
        (true, false) => Position::Greater,
        (false, true) => Position::Less,
        _ => Position::Incomparable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::build(s, None).unwrap()
    }

    fn ind(d: &RootDatum, i: usize) -> Ind {
        Ind::new(d, i).unwrap()
    }

    #[test]
    fn euler_pair_examples() {
        let a2 = datum("A2");
        let (s1, s2) = (ind(&a2, 0), ind(&a2, 1));
        assert_eq!(euler_pair(&a2, &s1, &s2), -1);
        for k in 0..a2.num_roots() {
            let x = ind(&a2, k);
            assert_eq!(euler_pair(&a2, &x, &x), 2 * x.d);
            assert_eq!(euler_pair(&a2, &x, &x.shift(&a2)), -2 * x.d);
        }
        let g2 = datum("G2");
        let long = ind(&g2, 5);
        assert_eq!(long.d, 3);
        assert_eq!(euler_pair(&g2, &long, &long), 6);
    }

    #[test]
    fn a_coeff_examples() {
        let b2 = datum("B2");
        // α1 long, α2 short
        let (long, short) = (ind(&b2, 0), ind(&b2, 1));
        assert_eq!(a_coeff(&b2, &short, &long).unwrap(), -2);
        assert_eq!(a_coeff(&b2, &long, &short).unwrap(), -1);
        for k in 0..b2.num_roots() {
            let x = ind(&b2, k);
            assert_eq!(a_coeff(&b2, &x, &x).unwrap(), 2);
            assert_eq!(a_coeff(&b2, &x, &x.shift(&b2)).unwrap(), -2);
        }
    }

    #[test]
    fn ladder_examples() {
        let a2 = datum("A2");
        let l = ladder(&a2, 0, 1).unwrap();
        assert_eq!(l.mixed_terms(), vec![(1, 1)]);
        assert_eq!((l.p, l.q), (0, 1));

        let g2 = datum("G2");
        let l = ladder(&g2, 0, 1).unwrap();
        assert_eq!(l.mixed_terms(), vec![(1, 1), (2, 1), (3, 1), (3, 2)]);
        assert_eq!(l.q, 3);

        let a3 = datum("A3");
        let l = ladder(&a3, 0, 2).unwrap();
        assert!(l.mixed_terms().is_empty());
        assert_eq!((l.p, l.q), (0, 0));
        assert!(ladder(&a3, 0, 0).is_err());
        assert!(ladder(&a3, 0, a3.neg(0)).is_err());
    }

    #[test]
    fn ladder_invariants_all_types() {
        for name in ["A3", "B3", "C3", "D4", "F4", "G2", "E6"] {
            let d = datum(name);
            for x in 0..d.num_roots() {
                for y in 0..d.num_roots() {
                    if x == y || d.neg(x) == y {
                        continue;
                    }
                    let l = ladder(&d, x, y).unwrap();
                    assert_eq!(l.p - l.q, d.a_coeff(x, y), "{name}");
                    assert!(!l.exists[2][2] && !l.exists[3][3]);
                    assert!(l.exists[1][0] && l.exists[0][1]);
                    assert!(ladder_template(&d, &l).is_some(), "{name} {x} {y}\n{}", l.render());
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let a2 = datum("A2");
        assert_eq!(omega(&a2, 0, 0), a2.neg(0));
        assert_eq!(omega(&a2, 0, 1), 2);
        for name in ["A3", "B2", "G2", "F4"] {
            let d = datum(name);
            for x in 0..d.num_roots() {
                for y in 0..d.num_roots() {
                    let w = omega(&d, x, y);
                    if y != x && y != d.neg(x) {
                        assert_eq!(omega(&d, x, w), y);
                    }
                    for z in 0..d.num_roots() {
                        if x != y && x != d.neg(y) && x != z && x != d.neg(z) {
                            let wz = omega(&d, x, z);
                            assert_eq!(d.form(d.root(w), d.root(wz)), d.form(d.root(y), d.root(z)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reflect_section_examples() {
        let a2 = datum("A2");
        let s = Section::initial(&a2);
        assert_eq!(s.arrows(), &[(0, 1)]);
        let r = reflect_section(&a2, &s, 1).unwrap();
        assert_eq!(r.arrows(), &[(1, 0)]);
        assert_eq!(reflect_section(&a2, &r, 1).unwrap(), s);

        let a3 = datum("A3");
        let s = Section::initial(&a3);
        assert!(matches!(reflect_section(&a3, &s, 1), Err(CategoryError::NotSinkOrSource(2))));
        let r = reflect_section(&a3, &s, 2).unwrap();
        let old_simple = ind(&a3, 2);
        assert_eq!(r.tag(&old_simple), SectionTag::TB);
        assert_eq!(r.simples(&a3)[2], old_simple.shift(&a3));
        for k in 0..a3.num_roots() {
            let x = ind(&a3, k);
            assert_eq!(r.coords(&x), a3.reflect(2, &x.root));
            assert_eq!(r.length(&x), -r.length(&x.shift(&a3)));
        }
    }

    #[test]
    fn sink_sequence_is_a_coxeter_element() {
        // Reflecting at every vertex once (always at a sink) returns the
        // initial orientation and acts on roots by an element of order h.
        let a3 = datum("A3");
        let start = Section::initial(&a3);
        let mut s = start.clone();
        let mut steps = 0;
        loop {
            for i in (0..3).rev() {
                assert!(s.is_sink(i));
                s = reflect_section(&a3, &s, i).unwrap();
            }
            steps += 1;
            assert_eq!(s.arrows(), start.arrows());
            if s == start {
                break;
            }
        }
        assert_eq!(steps, 4);
    }
}
