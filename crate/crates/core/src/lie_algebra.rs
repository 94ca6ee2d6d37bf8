//! The integral Lie algebra with basis `H'_{S_1..S_m}` followed by `u_M` for
//! every root in canonical order.
//!
//! Relations:
//! * `[H'_i, H'_j] = 0`
//! * `[H'_i, u_Y] = −A_{S_i,Y}·u_Y`
//! * `[u_X, u_TX] = H'_X`, where `H'_X` is the coroot of `X` written in the
//!   simple coroots
//! * `[u_X, u_Y] = γ_XY·u_{X+Y}` when `X + Y` is a root, else `0`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::LieError;
use crate::field::Scalar;
use crate::matrix::IntMatrix;
use crate::root_category::{Ind, Section};
use crate::root_data::RootDatum;

/// How the signs of the structure constants are fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// `γ_XY = (−1)^{⟨Y, X⟩}` for the section's Euler form; simply-laced only.
    EulerCocycle,
    /// Chevalley basis with `N = p + 1` on extraspecial pairs.
    Extraspecial,
}

impl Scheme {
    pub fn all() -> [Scheme; 2] {
        [Scheme::EulerCocycle, Scheme::Extraspecial]
    }

    pub fn applies_to(&self, datum: &RootDatum) -> bool {
        match self {
            Scheme::EulerCocycle => datum.is_simply_laced(),
            Scheme::Extraspecial => true,
        }
    }

    /// The default scheme for a datum.
    pub fn preferred(datum: &RootDatum) -> Scheme {
        if datum.is_simply_laced() {
            Scheme::EulerCocycle
        } else {
            Scheme::Extraspecial
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::EulerCocycle => write!(f, "cocycle"),
            Scheme::Extraspecial => write!(f, "extraspecial"),
        }
    }
}

impl FromStr for Scheme {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cocycle" | "euler_cocycle" => Ok(Scheme::EulerCocycle),
            "extraspecial" => Ok(Scheme::Extraspecial),
            other => Err(LieError::UnknownScheme(other.to_string())),
        }
    }
}

/// Structure constants and basis bookkeeping.
#[derive(Clone, Debug)]
pub struct LieData {
    datum: RootDatum,
    scheme: Scheme,
    /// `gamma[x * |Φ| + y]`, zero when `x + y` is not a root.
    gamma: Vec<i64>,
}

/// One entry of the constant table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constant {
    pub x: usize,
    pub y: usize,
    pub l: usize,
    pub gamma: i64,
}

pub fn build_lie(datum: &RootDatum, section: &Section, scheme: Scheme) -> Result<LieData, LieError> {
    if !scheme.applies_to(datum) {
        return Err(LieError::SchemeNotApplicable(format!("{scheme} for {}", datum.type_name())));
    }
    let nr = datum.num_roots();
    let mut gamma = vec![0i64; nr * nr];
    match scheme {
        Scheme::EulerCocycle => {
            let sd = section.datum(datum);
            let coords: Vec<Vec<i64>> = (0..nr)
                .map(|k| section.coords(&Ind::new(datum, k).expect("valid index")))
                .collect();
            for x in 0..nr {
                for y in 0..nr {
                    if datum.sum_index(x, y).is_some() {
                        let e = sd.euler_form(&coords[y], &coords[x]);
                        gamma[x * nr + y] = if e.rem_euclid(2) == 0 { 1 } else { -1 };
                    }
                }
            }
        }
        Scheme::Extraspecial => {
            let n = chevalley_constants(datum)?;
            let sign = |k: usize| if datum.is_positive(k) { 1 } else { -1 };
            for (&(x, y), &v) in &n {
                let z = datum.sum_index(x, y).expect("table only holds root sums");
                gamma[x * nr + y] = sign(x) * sign(y) * sign(z) * v;
            }
        }
    }
    Ok(LieData { datum: datum.clone(), scheme, gamma })
}

/// `N_{α,β}` with `[e_α, e_β] = N_{α,β} e_{α+β}` for a Chevalley basis with
/// `[e_α, e_{−α}] = h_α`, signs fixed by `N = +(p+1)` on extraspecial pairs.
fn chevalley_constants(datum: &RootDatum) -> Result<HashMap<(usize, usize), i64>, LieError> {
    let r = datum.num_positive();
    let len = |k: usize| datum.form(datum.root(k), datum.root(k));
    let p_of = |a: usize, b: usize| {
        let mut p = 0;
        while datum.combo_index(a, -(p + 1), b, 1).is_some() {
            p += 1;
        }
        p
    };
    let mut pos: HashMap<(usize, usize), i64> = HashMap::new();

    // N for an arbitrary pair, given all positive pairs with smaller sums.
    fn lookup(
        datum: &RootDatum,
        pos: &HashMap<(usize, usize), i64>,
        x: usize,
        y: usize,
    ) -> Result<Ratio<i64>, LieError> {
        let Some(z) = datum.sum_index(x, y) else { return Ok(Ratio::from_integer(0)) };
        let len = |k: usize| datum.form(datum.root(k), datum.root(k));
        let missing = || LieError::NotIntegral(format!("missing constant for ({x},{y})"));
        let (px, py) = (datum.is_positive(x), datum.is_positive(y));
        Ok(match (px, py) {
            (true, true) => Ratio::from_integer(*pos.get(&(x, y)).ok_or_else(missing)?),
            (false, false) => -Ratio::from_integer(*pos.get(&(datum.neg(x), datum.neg(y))).ok_or_else(missing)?),
            (false, true) => -lookup(datum, pos, y, x)?,
            (true, false) => {
                if datum.is_positive(z) {
                    let inner = lookup(datum, pos, datum.neg(y), z)?;
                    -inner * Ratio::new(len(z), len(x))
                } else {
                    let inner = lookup(datum, pos, datum.neg(z), x)?;
                    inner * Ratio::new(len(z), len(y))
                }
            }
        })
    }

    for xi in 0..r {
        let mut special: Vec<(usize, usize)> = (0..r)
            .filter_map(|a| {
                let b = datum.combo_index(xi, 1, a, -1)?;
                (datum.is_positive(b) && a < b).then_some((a, b))
            })
            .collect();
        if special.is_empty() {
            continue;
        }
        special.sort();
        let (alpha, beta) = special[0];
        let n_ab = p_of(alpha, beta) + 1;
        pos.insert((alpha, beta), n_ab);
        pos.insert((beta, alpha), -n_ab);
        let n_neg_ab = Ratio::from_integer(-n_ab);
        let (na, nb) = (datum.neg(alpha), datum.neg(beta));
        for &(a, b) in &special[1..] {
            let term = |u: usize, v: usize, w: usize, z: usize, mid: Option<usize>| -> Result<Ratio<i64>, LieError> {
                match mid {
                    None => Ok(Ratio::from_integer(0)),
                    Some(m) => Ok(lookup(datum, &pos, u, v)? * lookup(datum, &pos, w, z)? / len(m)),
                }
            };
            let t2 = term(nb, a, na, b, datum.sum_index(nb, a))?;
            let t3 = term(a, na, nb, b, datum.sum_index(a, na))?;
            let value = -Ratio::from_integer(len(xi)) / n_neg_ab * (t2 + t3);
            if !value.is_integer() {
                return Err(LieError::NotIntegral(format!("N for pair ({a},{b}) is {value}")));
            }
            let v = value.to_integer();
            pos.insert((a, b), v);
            pos.insert((b, a), -v);
        }
    }

    let nr = datum.num_roots();
    let mut all = HashMap::new();
    for x in 0..nr {
        for y in 0..nr {
            if datum.sum_index(x, y).is_some() {
                let v = lookup(datum, &pos, x, y)?;
                if !v.is_integer() {
                    return Err(LieError::NotIntegral(format!("N({x},{y}) = {v}")));
                }
                all.insert((x, y), v.to_integer());
            }
        }
    }
    Ok(all)
}

impl LieData {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// `m + |Φ|`.
    pub fn dim(&self) -> usize {
        self.datum.rank() + self.datum.num_roots()
    }

    /// Basis index of `u_k` for root index `k`.
    pub fn u_index(&self, k: usize) -> usize {
        self.rank() + k
    }

    pub fn basis_label(&self, i: usize) -> String {
        let m = self.rank();
        if i < m {
            format!("H'{}", i + 1)
        } else {
            format!("u[{}]", self.datum.root_label(i - m))
        }
    }

    /// `γ_XY` for root indices (zero when `X + Y` is not a root).
    pub fn gamma(&self, x: usize, y: usize) -> i64 {
        self.gamma[x * self.datum.num_roots() + y]
    }

    /// A copy with one constant overwritten; used for negative controls.
    pub fn with_constant(&self, x: usize, y: usize, value: i64) -> LieData {
        let mut out = self.clone();
        let nr = self.datum.num_roots();
        out.gamma[x * nr + y] = value;
        out
    }

    /// All nonzero constants `γ_XY` with `L = X + Y`, in index order.
    pub fn constants(&self) -> Vec<Constant> {
        let nr = self.datum.num_roots();
        let mut out = Vec::new();
        for x in 0..nr {
            for y in 0..nr {
                if let Some(l) = self.datum.sum_index(x, y) {
                    out.push(Constant { x, y, l, gamma: self.gamma(x, y) });
                }
            }
        }
        out
    }

    /// `[b_i, b_j]` as a sparse list of `(basis index, coefficient)`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let m = self.rank();
        match (i < m, j < m) {
            (true, true) => Vec::new(),
            (true, false) => {
                let k = j - m;
                let a = self.datum.coroot_pairing(i, self.datum.root(k));
                if a == 0 {
                    Vec::new()
                } else {
                    vec![(j, -a)]
                }
            }
            (false, true) => self.bracket_basis(j, i).into_iter().map(|(b, c)| (b, -c)).collect(),
            (false, false) => {
                let (x, y) = (i - m, j - m);
                if y == self.datum.neg(x) {
                    self.datum
                        .coroot_coeffs(x)
                        .into_iter()
                        .enumerate()
                        .filter(|&(_, c)| c != 0)
                        .collect()
                } else if let Some(z) = self.datum.sum_index(x, y) {
                    let g = self.gamma(x, y);
                    if g == 0 {
                        Vec::new()
                    } else {
                        vec![(m + z, g)]
                    }
                } else {
                    Vec::new()
                }
            }
        }
    }

    /// Bilinear extension to coefficient vectors over a common field.
    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let field = a.first().map(|s| s.field()).expect("nonempty vector");
        let mut out = vec![field.zero(); self.dim()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] = &out[k] + &(&ab * &field.from_i64(c));
                }
            }
        }
        out
    }

    /// Matrix of `ad b_i`; column `j` holds `[b_i, b_j]`.
    pub fn adjoint(&self, i: usize) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zero(n);
        for j in 0..n {
            for (k, c) in self.bracket_basis(i, j) {
                m.add_to(k, j, c);
            }
        }
        m
    }

    /// `(ad u_X)^i / i!` for `i = 0, 1, …` up to the last nonzero power.
    pub fn divided_powers(&self, x: usize) -> Result<Vec<IntMatrix>, LieError> {
        let ad = self.adjoint(self.u_index(x));
        let mut out = vec![IntMatrix::identity(self.dim())];
        for i in 1.. {
            let next = out[i - 1].mul(&ad);
            let next = next.div_exact(i as i64).ok_or_else(|| {
                LieError::NotIntegral(format!("(ad u[{}])^{i}/{i}!", self.datum.root_label(x)))
            })?;
            if next.is_zero() {
                break;
            }
            out.push(next);
        }
        Ok(out)
    }

    /// Violations of antisymmetry (reported as `(i, j, j)`) and of the
    /// Jacobi identity over all basis triples `i < j < k`.
    pub fn jacobi_check(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let table: Vec<Vec<(usize, i64)>> =
            (0..n * n).map(|ij| self.bracket_basis(ij / n, ij % n)).collect();
        let br = |i: usize, j: usize| &table[i * n + j];
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut a = br(i, j).clone();
                let mut b: Vec<(usize, i64)> = br(j, i).iter().map(|&(k, c)| (k, -c)).collect();
                a.sort();
                b.sort();
                if a != b {
                    out.push((i, j, j));
                }
            }
        }
        let mut acc = vec![0i64; n];
        let mut touched: Vec<usize> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for (u, v, w) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for &(t, c) in br(u, v) {
                            for &(s, e) in br(t, w) {
                                acc[s] += c * e;
                                touched.push(s);
                            }
                        }
                    }
                    if touched.iter().any(|&s| acc[s] != 0) {
                        out.push((i, j, k));
                    }
                    for s in touched.drain(..) {
                        acc[s] = 0;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn lie(t: &str, scheme: Scheme) -> LieData {
        let d = RootDatum::build(t, None).unwrap();
        build_lie(&d, &Section::initial(&d), scheme).unwrap()
    }

    #[test]
    fn jacobi_small_types() {
        for t in ["A1", "A2", "A3", "D4"] {
            for s in Scheme::all() {
                assert!(lie(t, s).jacobi_check().is_empty(), "{t} {s}");
            }
        }
        for t in ["B2", "B3", "C3", "G2"] {
            assert!(lie(t, Scheme::Extraspecial).jacobi_check().is_empty(), "{t}");
        }
    }

    #[test]
    fn corrupted_table_fails_jacobi() {
        let l = lie("A3", Scheme::EulerCocycle);
        let bad = l.with_constant(0, 1, -l.gamma(0, 1));
        assert!(!bad.jacobi_check().is_empty());
        let g = lie("G2", Scheme::Extraspecial);
        let bad = g.with_constant(0, 1, 2 * g.gamma(0, 1));
        assert!(!bad.jacobi_check().is_empty());
    }

    #[test]
    fn cocycle_rejected_for_folded_types() {
        let d = RootDatum::build("B2", None).unwrap();
        assert!(matches!(
            build_lie(&d, &Section::initial(&d), Scheme::EulerCocycle),
            Err(LieError::SchemeNotApplicable(_))
        ));
    }

    #[test]
    fn magnitudes_are_string_lengths() {
        for (t, s) in [("A3", Scheme::EulerCocycle), ("B3", Scheme::Extraspecial), ("G2", Scheme::Extraspecial), ("F4", Scheme::Extraspecial)] {
            let l = lie(t, s);
            let d = l.datum();
            for c in l.constants() {
                let mut p = 0;
                while d.combo_index(c.x, -(p + 1), c.y, 1).is_some() {
                    p += 1;
                }
                assert_eq!(c.gamma.abs(), p + 1, "{t}");
                assert_eq!(l.gamma(c.y, c.x), -c.gamma);
            }
        }
    }

    #[test]
    fn basic_relations() {
        let l = lie("B2", Scheme::Extraspecial);
        let d = l.datum().clone();
        let m = l.rank();
        for i in 0..m {
            for j in 0..m {
                assert!(l.bracket_basis(i, j).is_empty());
            }
            for y in 0..d.num_roots() {
                let a = d.a_coeff(d.simple(i), y);
                let expect = if a == 0 { vec![] } else { vec![(m + y, -a)] };
                assert_eq!(l.bracket_basis(i, m + y), expect);
            }
        }
        // [u_X, u_TX] = H'_X and (ad u_X)^2 u_TX = 2 u_X
        for x in 0..d.num_roots() {
            let tx = d.neg(x);
            let h: Vec<(usize, i64)> = d.coroot_coeffs(x).into_iter().enumerate().filter(|&(_, c)| c != 0).collect();
            assert_eq!(l.bracket_basis(m + x, m + tx), h);
            let ad = l.adjoint(m + x);
            let ad2 = ad.mul(&ad);
            assert_eq!(ad2.get(m + x, m + tx), 2);
        }
    }

    #[test]
    fn adjoint_of_cartan_is_diagonal() {
        let l = lie("A2", Scheme::EulerCocycle);
        let d = l.datum();
        let ad = l.adjoint(0);
        assert!(ad.is_diagonal());
        for y in 0..d.num_roots() {
            assert_eq!(ad.get(2 + y, 2 + y), -d.a_coeff(0, y));
        }
    }

    #[test]
    fn commutator_of_adjoints_acts_by_a_coeff() {
        let l = lie("G2", Scheme::Extraspecial);
        let d = l.datum();
        let m = l.rank();
        for x in 0..d.num_roots() {
            let a = l.adjoint(m + x);
            let b = l.adjoint(m + d.neg(x));
            let c = a.mul(&b).sub(&b.mul(&a));
            for y in 0..d.num_roots() {
                assert_eq!(c.get(m + y, m + y), -d.a_coeff(x, y));
            }
        }
    }

    #[test]
    fn divided_powers_integral_and_nilpotent() {
        for (t, s) in [("A2", Scheme::EulerCocycle), ("G2", Scheme::Extraspecial), ("B3", Scheme::Extraspecial)] {
            let l = lie(t, s);
            for x in 0..l.datum().num_roots() {
                let dp = l.divided_powers(x).unwrap();
                assert!(dp.len() <= 5, "{t}");
                let ad = l.adjoint(l.u_index(x));
                let mut p = IntMatrix::identity(l.dim());
                for _ in 0..5 {
                    p = p.mul(&ad);
                }
                assert!(p.is_zero());
            }
        }
        // short roots of G2 reach the third power, long roots the second
        let g = lie("G2", Scheme::Extraspecial);
        assert_eq!(g.divided_powers(0).unwrap().len(), 4);
        assert_eq!(g.divided_powers(1).unwrap().len(), 3);
    }

    #[test]
    fn field_bracket_matches_integer_table() {
        let l = lie("A2", Scheme::EulerCocycle);
        let k = FieldDescriptor::Prime(5);
        let n = l.dim();
        let unit = |i: usize| -> Vec<Scalar> { (0..n).map(|j| k.from_i64((i == j) as i64)).collect() };
        for i in 0..n {
            for j in 0..n {
                let v = l.bracket(&unit(i), &unit(j));
                for (t, c) in l.bracket_basis(i, j) {
                    assert_eq!(v[t], k.from_i64(c));
                }
            }
        }
    }

    #[test]
    fn a2_cocycle_sign() {
        // default orientation 1→2: γ(α1, α2) = +1
        let l = lie("A2", Scheme::EulerCocycle);
        assert_eq!(l.gamma(0, 1), 1);
        assert_eq!(l.gamma(1, 0), -1);
    }
}
