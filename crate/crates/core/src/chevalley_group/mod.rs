//! Chevalley groups on the adjoint module: generators `E`, `h`, `n`, the
//! commutator formula, normal forms in `U`, the Bruhat decomposition,
//! enumeration of small finite groups and the relation checks.

mod bruhat;
mod commutator;
mod enumerate;
mod relations;
mod unipotent;

pub use bruhat::{bruhat, parabolic_membership, BruhatForm, Strategy};
pub use commutator::{commutator_expand, verify_commutator, CommutatorTerm};
pub use enumerate::{enumerate, structure_checks, CompactField, EnumeratedGroup, StructureReport, Subgroup, ENUMERATION_LIMIT};
pub use relations::{
    order_reconciliation, poincare_identity, steinberg_center_order, steinberg_check, OrderReport, PoincareReport,
    SteinbergReport,
};
pub use unipotent::{normalize_u, normalize_u_by};

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use rand::Rng;

use crate::error::{FieldError, GroupError};
use crate::field::{FieldDescriptor, Scalar};
use crate::lie_algebra::{build_lie, LieData, Scheme};
use crate::matrix::{IntMatrix, Matrix};
use crate::root_category::{omega, Section};
use crate::root_data::RootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomKind {
    E,
    H,
    N,
}

/// One generator `E_X(t)`, `h_X(t)` or `n_X(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordAtom {
    pub kind: AtomKind,
    pub root: usize,
    pub t: Scalar,
}

impl WordAtom {
    pub fn e(root: usize, t: Scalar) -> Self {
        WordAtom { kind: AtomKind::E, root, t }
    }

    pub fn h(root: usize, t: Scalar) -> Self {
        WordAtom { kind: AtomKind::H, root, t }
    }

    pub fn n(root: usize, t: Scalar) -> Self {
        WordAtom { kind: AtomKind::N, root, t }
    }

    pub fn inverse(&self) -> Result<WordAtom, GroupError> {
        let t = match self.kind {
            AtomKind::E | AtomKind::N => self.t.neg(),
            AtomKind::H => self.t.inv()?,
        };
        Ok(WordAtom { kind: self.kind, root: self.root, t })
    }

    pub fn render(&self, datum: &RootDatum) -> String {
        let k = match self.kind {
            AtomKind::E => "E",
            AtomKind::H => "h",
            AtomKind::N => "n",
        };
        format!("{k}:{}:{}", datum.root_label(self.root), self.t)
    }
}

/// Splits on commas outside brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses `E:α1:1,n:α2,h:-α1:2`. The parameter defaults to 1.
pub fn parse_word(datum: &RootDatum, field: &FieldDescriptor, s: &str) -> Result<Vec<WordAtom>, GroupError> {
    let mut out = Vec::new();
    for part in split_top(s.trim(), ',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let pieces: Vec<&str> = part.split(':').map(str::trim).collect();
        if pieces.len() < 2 || pieces.len() > 3 {
            return Err(GroupError::InvalidWord(format!("`{part}`: expected KIND:ROOT[:PARAM]")));
        }
        let kind = match pieces[0] {
            "E" | "e" | "x" => AtomKind::E,
            "h" | "H" => AtomKind::H,
            "n" | "N" => AtomKind::N,
            k => return Err(GroupError::InvalidWord(format!("unknown generator kind `{k}`"))),
        };
        let root = datum.parse_root(pieces[1])?;
        let t = match pieces.get(2) {
            Some(p) => field.parse_scalar(p)?,
            None => field.one(),
        };
        if kind != AtomKind::E && t.is_zero() {
            return Err(GroupError::InvalidWord(format!("`{part}`: parameter must be nonzero")));
        }
        out.push(WordAtom { kind, root, t });
    }
    Ok(out)
}

pub fn render_word(datum: &RootDatum, word: &[WordAtom]) -> String {
    word.iter().map(|a| a.render(datum)).collect::<Vec<_>>().join(",")
}

/// A group element with the word that produced it, when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub word: Option<Vec<WordAtom>>,
}

impl GroupElement {
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        GroupElement { matrix: self.matrix.mul(&other.matrix), word }
    }
}

/// The adjoint Chevalley group of a Lie datum over a field.
pub struct Chevalley {
    lie: LieData,
    field: FieldDescriptor,
    dp: Vec<OnceLock<Vec<IntMatrix>>>,
    n_int: Vec<OnceLock<Vec<(usize, i64)>>>,
    refl: Vec<Vec<usize>>,
    terms: OnceLock<Vec<Option<Vec<CommutatorTerm>>>>,
    kernel: OnceLock<Vec<Vec<Scalar>>>,
}

impl fmt::Debug for Chevalley {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chevalley({}, {}, {})", self.lie.datum().type_name(), self.lie.scheme(), self.field)
    }
}

impl Chevalley {
    pub fn new(lie: LieData, field: FieldDescriptor) -> Self {
        let datum = lie.datum();
        let nr = datum.num_roots();
        let refl = (0..datum.rank()).map(|i| (0..nr).map(|k| datum.reflect_index(i, k)).collect()).collect();
        Chevalley {
            dp: (0..nr).map(|_| OnceLock::new()).collect(),
            n_int: (0..nr).map(|_| OnceLock::new()).collect(),
            refl,
            terms: OnceLock::new(),
            kernel: OnceLock::new(),
            lie,
            field,
        }
    }

    /// Type name with optional orientation, preferred scheme, initial section.
    pub fn from_type(type_name: &str, orientation: Option<&str>, field: FieldDescriptor) -> Result<Self, GroupError> {
        let datum = RootDatum::build(type_name, orientation)?;
        let scheme = Scheme::preferred(&datum);
        Self::with_scheme(&datum, scheme, field)
    }

    pub fn with_scheme(datum: &RootDatum, scheme: Scheme, field: FieldDescriptor) -> Result<Self, GroupError> {
        let lie = build_lie(datum, &Section::initial(datum), scheme)?;
        Ok(Self::new(lie, field))
    }

    pub fn lie(&self) -> &LieData {
        &self.lie
    }

    pub fn datum(&self) -> &RootDatum {
        self.lie.datum()
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub(crate) fn reflection(&self, i: usize, k: usize) -> usize {
        self.refl[i][k]
    }

    pub fn divided_powers(&self, x: usize) -> Result<&[IntMatrix], GroupError> {
        if let Some(v) = self.dp[x].get() {
            return Ok(v);
        }
        let v = self.lie.divided_powers(x)?;
        Ok(self.dp[x].get_or_init(|| v))
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(&self.field, self.dim())
    }

    /// `Σ_i t^i D_i`.
    pub fn gen_e(&self, x: usize, t: &Scalar) -> Result<Matrix, GroupError> {
        let dp = self.divided_powers(x)?;
        let mut coeffs = Vec::with_capacity(dp.len());
        let mut power = self.field.one();
        for d in dp {
            coeffs.push((power.clone(), d));
            power = &power * t;
        }
        Ok(Matrix::linear_combination(&self.field, self.dim(), &coeffs))
    }

    /// `E_X(t) E_TX(t⁻¹) E_X(t)`.
    pub fn gen_n(&self, x: usize, t: &Scalar) -> Result<Matrix, GroupError> {
        let ti = t.inv()?;
        let e = self.gen_e(x, t)?;
        Ok(e.mul(&self.gen_e(self.datum().neg(x), &ti)?).mul(&e))
    }

    /// `n_X(t) n_X(-1)`.
    pub fn gen_h(&self, x: usize, t: &Scalar) -> Result<Matrix, GroupError> {
        let m1 = self.field.from_i64(-1);
        Ok(self.gen_n(x, t)?.mul(&self.gen_n(x, &m1)?))
    }

    pub fn atom_matrix(&self, a: &WordAtom) -> Result<Matrix, GroupError> {
        match a.kind {
            AtomKind::E => self.gen_e(a.root, &a.t),
            AtomKind::N => self.gen_n(a.root, &a.t),
            AtomKind::H => self.gen_h(a.root, &a.t),
        }
    }

    pub fn word_matrix(&self, word: &[WordAtom]) -> Result<Matrix, GroupError> {
        let mut m = self.identity();
        for a in word {
            m = m.mul(&self.atom_matrix(a)?);
        }
        Ok(m)
    }

    pub fn element(&self, word: Vec<WordAtom>) -> Result<GroupElement, GroupError> {
        Ok(GroupElement { matrix: self.word_matrix(&word)?, word: Some(word) })
    }

    /// Column data of `n_X(1)` on the root lines: entry `Y` holds
    /// `(ω_X(Y), η_XY)`.
    fn n_action(&self, x: usize) -> Result<&[(usize, i64)], GroupError> {
        if let Some(v) = self.n_int[x].get() {
            return Ok(v);
        }
        let datum = self.datum();
        let m = datum.rank();
        let plus = |r: usize| -> Result<IntMatrix, GroupError> {
            let dp = self.divided_powers(r)?;
            let mut s = IntMatrix::zero(self.dim());
            for d in dp {
                for i in 0..self.dim() {
                    for j in 0..self.dim() {
                        let v = d.get(i, j);
                        if v != 0 {
                            s.add_to(i, j, v);
                        }
                    }
                }
            }
            Ok(s)
        };
        let e = plus(x)?;
        let n = e.mul(&plus(datum.neg(x))?).mul(&e);
        let mut out = Vec::with_capacity(datum.num_roots());
        for y in 0..datum.num_roots() {
            let target = omega(datum, x, y);
            let col = m + y;
            let eta = n.get(m + target, col);
            let stray = (0..self.dim()).any(|i| i != m + target && n.get(i, col) != 0);
            if eta.abs() != 1 || stray {
                return Err(GroupError::Inconsistent(format!(
                    "n[{}] does not map the u[{}]-line to the u[{}]-line",
                    datum.root_label(x),
                    datum.root_label(y),
                    datum.root_label(target)
                )));
            }
            out.push((target, eta));
        }
        Ok(self.n_int[x].get_or_init(|| out))
    }

    /// `η_XY`: `n_X(1) u_Y = η_XY u_{ω_X(Y)}`, read off the matrix.
    pub fn eta(&self, x: usize, y: usize) -> Result<i64, GroupError> {
        Ok(self.n_action(x)?[y].1)
    }

    /// Sign of `n_X(1)⁻¹ u_Y` on the `u_{ω_X(Y)}`-line.
    pub fn eta_inverse(&self, x: usize, y: usize) -> Result<i64, GroupError> {
        let w = omega(self.datum(), x, y);
        self.eta(x, w)
    }

    pub(crate) fn terms_table(&self) -> &[Option<Vec<CommutatorTerm>>] {
        self.terms.get_or_init(|| {
            let datum = self.datum();
            let nr = datum.num_roots();
            (0..nr * nr)
                .map(|k| {
                    let (x, y) = (k / nr, k % nr);
                    if x == y || datum.neg(x) == y {
                        None
                    } else {
                        commutator_expand(&self.lie, x, y).ok()
                    }
                })
                .collect()
        })
    }

    pub(crate) fn terms(&self, x: usize, y: usize) -> Result<&[CommutatorTerm], GroupError> {
        let nr = self.datum().num_roots();
        self.terms_table()[x * nr + y]
            .as_deref()
            .ok_or_else(|| GroupError::Inconsistent(format!("no commutator expansion for ({x}, {y})")))
    }

    pub(crate) fn torus_kernel(&self) -> &[Vec<Scalar>] {
        self.kernel.get_or_init(|| torus_kernel(self.datum(), &self.field))
    }
}

/// Tuples `(t_i)` with `∏_i t_i^{a_ij} = 1` for all `j`. Every entry is a
/// root of unity of order dividing `det C`.
fn torus_kernel(datum: &RootDatum, field: &FieldDescriptor) -> Vec<Vec<Scalar>> {
    let m = datum.rank();
    let det: i64 = crate::root_data::elementary_divisors(datum.cartan()).iter().product();
    let candidates: Vec<Scalar> = if field.is_finite() {
        field.units().expect("finite").into_iter().filter(|x| x.pow(det).map(|y| y.is_one()).unwrap_or(false)).collect()
    } else if det % 2 == 0 {
        vec![field.one(), field.from_i64(-1)]
    } else {
        vec![field.one()]
    };
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        let t: Vec<Scalar> = idx.iter().map(|&k| candidates[k].clone()).collect();
        let ok = (0..m).all(|j| {
            let mut prod = field.one();
            for (i, ti) in t.iter().enumerate() {
                prod = &prod * &ti.pow(datum.cartan()[i][j]).expect("unit");
            }
            prod.is_one()
        });
        if ok {
            out.push(t);
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < candidates.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Total order used to pick canonical torus parameters.
pub(crate) fn scalar_key(s: &Scalar) -> (u64, BigRational) {
    match s.index() {
        Some(i) => (i, BigRational::from_integer(0.into())),
        None => (0, s.as_rational().cloned().unwrap_or_else(|| BigRational::from_integer(0.into()))),
    }
}

/// Uniform nonzero element for finite fields; a small nonzero fraction over `Q`.
pub fn random_unit(field: &FieldDescriptor, rng: &mut impl Rng) -> Scalar {
    match field.order() {
        Some(q) => field.element(rng.gen_range(1..q)).expect("index in range"),
        None => {
            let mut num = 0;
            while num == 0 {
                num = rng.gen_range(-6i64..=6);
            }
            field.from_ratio(num, rng.gen_range(1i64..=4)).expect("nonzero denominator")
        }
    }
}

/// Like [`random_unit`] but zero is allowed over finite fields.
pub fn random_scalar(field: &FieldDescriptor, rng: &mut impl Rng) -> Scalar {
    match field.order() {
        Some(q) => field.element(rng.gen_range(0..q)).expect("index in range"),
        None => random_unit(field, rng),
    }
}

pub(crate) fn pow_scalar(t: &Scalar, e: i64) -> Result<Scalar, GroupError> {
    t.pow(e).map_err(|e: FieldError| e.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(t: &str, f: &str) -> Chevalley {
        Chevalley::from_type(t, None, f.parse().unwrap()).unwrap()
    }

    #[test]
    fn e_zero_is_identity_and_det_one() {
        let g = group("B2", "F7");
        let k = g.field().clone();
        for x in 0..g.datum().num_roots() {
            assert!(g.gen_e(x, &k.zero()).unwrap().is_identity());
            assert!(g.gen_e(x, &k.from_i64(3)).unwrap().det().is_one());
        }
    }

    #[test]
    fn e_column_on_shift() {
        let g = group("A2", "Q");
        let k = g.field().clone();
        let m = g.datum().rank();
        let x = g.datum().sum_index(0, 1).unwrap();
        let tx = g.datum().neg(x);
        let t = k.from_i64(5);
        let e = g.gen_e(x, &t).unwrap();
        let col = m + tx;
        assert!(e.get(col, col).is_one());
        assert_eq!(e.get(m + x, col), &k.from_i64(25));
        // H'_X = H'_1 + H'_2 for the highest root of A2
        assert_eq!(e.get(0, col), &t);
        assert_eq!(e.get(1, col), &t);
        // column of H'_1: A_{1,X} t at u_X
        assert_eq!(e.get(m + x, 0), &k.from_i64(5 * g.datum().a_coeff(0, x)));
    }

    #[test]
    fn n_inverse_and_h_diagonal() {
        let g = group("G2", "F7");
        let k = g.field().clone();
        let m = g.datum().rank();
        let t = k.from_i64(3);
        for x in 0..g.datum().num_roots() {
            let n1 = g.gen_n(x, &k.one()).unwrap();
            let nm = g.gen_n(x, &k.from_i64(-1)).unwrap();
            assert!(n1.mul(&nm).is_identity());
            let h = g.gen_h(x, &t).unwrap();
            assert!(h.is_diagonal());
            for i in 0..m {
                assert!(h.get(i, i).is_one());
            }
            for y in 0..g.datum().num_roots() {
                let a = g.datum().a_coeff(x, y);
                assert_eq!(h.get(m + y, m + y), &t.pow(a).unwrap());
            }
        }
    }

    #[test]
    fn eta_constraint() {
        for t in ["A3", "B3", "C3", "G2", "D4"] {
            let g = group(t, "Q");
            let d = g.datum();
            for x in 0..d.num_roots() {
                for y in 0..d.num_roots() {
                    let w = omega(d, x, y);
                    let lhs = g.eta(x, y).unwrap() * g.eta(x, w).unwrap();
                    let a = d.a_coeff(x, y);
                    assert_eq!(lhs, if a % 2 == 0 { 1 } else { -1 }, "{t} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn one_parameter_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = group("B2", "Q");
        let k = g.field().clone();
        for x in 0..g.datum().num_roots() {
            let (a, b) = (random_unit(&k, &mut rng), random_unit(&k, &mut rng));
            let lhs = g.gen_e(x, &a).unwrap().mul(&g.gen_e(x, &b).unwrap());
            assert_eq!(lhs, g.gen_e(x, &(&a + &b)).unwrap());
            let lhs = g.gen_h(x, &a).unwrap().mul(&g.gen_h(x, &b).unwrap());
            assert_eq!(lhs, g.gen_h(x, &(&a * &b)).unwrap());
        }
    }

    #[test]
    fn conjugation_lemmas() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = group("G2", "F7");
        let d = g.datum().clone();
        let k = g.field().clone();
        for x in 0..d.num_roots() {
            let t = random_unit(&k, &mut rng);
            let n = g.gen_n(x, &t).unwrap();
            let ninv = n.inverse().unwrap();
            let h = g.gen_h(x, &t).unwrap();
            let hinv = h.inverse().unwrap();
            for y in 0..d.num_roots() {
                let s = random_unit(&k, &mut rng);
                let a = d.a_coeff(x, y);
                let w = omega(&d, x, y);
                // nEn
                let lhs = n.mul(&g.gen_e(y, &s).unwrap()).mul(&ninv);
                let coef = &(&k.from_i64(g.eta(x, y).unwrap()) * &t.pow(-a).unwrap()) * &s;
                assert_eq!(lhs, g.gen_e(w, &coef).unwrap());
                // hEh
                let lhs = h.mul(&g.gen_e(y, &s).unwrap()).mul(&hinv);
                assert_eq!(lhs, g.gen_e(y, &(&t.pow(a).unwrap() * &s)).unwrap());
                // nhn: n h_Y(s) n⁻¹ = h_{ω(Y)}(s)
                let lhs = n.mul(&g.gen_h(y, &s).unwrap()).mul(&ninv);
                assert_eq!(lhs, g.gen_h(w, &s).unwrap());
            }
        }
    }

    #[test]
    fn word_parsing() {
        let d = RootDatum::build("A2", None).unwrap();
        let k: FieldDescriptor = "F3".parse().unwrap();
        let w = parse_word(&d, &k, "E:α1:1, n:α2, E:-α1:2, h:[1,1]:2").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w[1].t, k.one());
        assert_eq!(w[2].root, d.neg(0));
        assert_eq!(render_word(&d, &w[..1]), "E:α1:1");
        assert!(parse_word(&d, &k, "h:α1:0").is_err());
        assert!(parse_word(&d, &k, "q:α1").is_err());
    }
}
