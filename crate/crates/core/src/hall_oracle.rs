//! Brute-force Hall numbers for small simply-laced quivers.
//!
//! Indecomposable representations are produced from simples by BGP
//! reflection functors, filtrations are counted by enumerating
//! subrepresentations, and the counts at several primes are interpolated to
//! recover the Hall polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{CategoryError, HallError};
use crate::root_category::HomOracle;
use crate::root_data::{CartanType, RootDatum};

/// Total dimension above which subrepresentation enumeration is refused.
pub const MAX_TOTAL_DIM: usize = 8;

/// Primes at which Hall numbers are sampled.
pub const SAMPLE_PRIMES: [u32; 5] = [2, 3, 5, 7, 11];

type Mat = Vec<Vec<u32>>;

/// A representation over `F_p`: one space per vertex, one matrix per arrow
/// (`maps[a]` sends `V_{tail}` to `V_{head}`, shape `dim head × dim tail`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub p: u32,
    pub arrows: Vec<(usize, usize)>,
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl Representation {
    pub fn simple(p: u32, arrows: &[(usize, usize)], vertices: usize, i: usize) -> Self {
        let mut dims = vec![0; vertices];
        dims[i] = 1;
        let maps = arrows.iter().map(|&(t, h)| zeros(dims[h], dims[t])).collect();
        Representation { p, arrows: arrows.to_vec(), dims, maps }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }
}

fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

fn mat_mul(a: &Mat, b: &Mat, cols_b: usize, p: u32) -> Mat {
    let p = p as u64;
    a.iter()
        .map(|row| {
            (0..cols_b)
                .map(|j| (row.iter().zip(b).map(|(&x, brow)| x as u64 * brow[j] as u64).sum::<u64>() % p) as u32)
                .collect()
        })
        .collect()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r, mut b, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut Mat, cols: usize, p: u32) -> Vec<usize> {
    let pp = p as u64;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(r) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, r);
        let inv = inv_mod(m[row][col], p) as u64;
        for x in m[row].iter_mut() {
            *x = (*x as u64 * inv % pp) as u32;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let f = m[r][col] as u64;
                for c in 0..cols {
                    m[r][c] = ((m[r][c] as u64 + (pp - f) * m[row][c] as u64) % pp) as u32;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn rank(m: &Mat, cols: usize, p: u32) -> usize {
    let mut c = m.clone();
    rref(&mut c, cols, p).len()
}

/// Basis of `{x : m·x = 0}` as rows.
fn nullspace(m: &Mat, cols: usize, p: u32) -> Mat {
    let mut r = m.clone();
    let pivots = rref(&mut r, cols, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; cols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - r[row][f]) % p;
            }
            v
        })
        .collect()
}

fn transpose(m: &Mat, rows: usize, cols: usize) -> Mat {
    (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect()
}

fn inverse(m: &Mat, p: u32) -> Mat {
    let n = m.len();
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let piv = rref(&mut aug, 2 * n, p);
    assert!(piv.len() == n && piv[n - 1] == n - 1, "change of basis must be invertible");
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn check_supported(datum: &RootDatum) -> Result<(), HallError> {
    match datum.cartan_type() {
        Some(CartanType::A(n)) if n <= 4 => Ok(()),
        Some(CartanType::D(4)) => Ok(()),
        _ if !datum.is_simply_laced() => Err(HallError::NotSimplyLaced(datum.type_name().to_string())),
        _ => Err(HallError::Root(crate::error::RootError::UnknownType(format!(
            "{} (oracle covers A1..A4 and D4)",
            datum.type_name()
        )))),
    }
}

/// Reflection at source `i`: the new space at `i` is the cokernel of
/// `V_i → ⊕_{i→j} V_j`, and the arrows at `i` are reversed.
fn reflect_at_source(rep: &Representation, i: usize) -> Representation {
    let p = rep.p;
    let out_arrows: Vec<usize> = (0..rep.arrows.len()).filter(|&a| rep.arrows[a].0 == i).collect();
    let total: usize = out_arrows.iter().map(|&a| rep.dims[rep.arrows[a].1]).sum();
    // φ stacked vertically: (Σ dim V_j) × dim V_i
    let mut phi: Mat = Vec::with_capacity(total);
    for &a in &out_arrows {
        phi.extend(rep.maps[a].iter().cloned());
    }
    // rows of P span the left nullspace of φ, so ker P = im φ
    let pmat = nullspace(&transpose(&phi, total, rep.dims[i]), total, p);
    let c = pmat.len();
    let mut out = rep.clone();
    out.dims[i] = c;
    let mut offset = 0;
    for &a in &out_arrows {
        let j = rep.arrows[a].1;
        let dj = rep.dims[j];
        out.arrows[a] = (j, i);
        out.maps[a] = pmat.iter().map(|row| row[offset..offset + dj].to_vec()).collect();
        if c == 0 {
            out.maps[a] = zeros(0, dj);
        }
        offset += dj;
    }
    out
}

/// The indecomposable with dimension vector `root` (positive, in the
/// datum's coordinates) over `F_p`, built from a simple by BGP reflections.
pub fn build_indecomposable(datum: &RootDatum, root: &[i64], p: u32) -> Result<Representation, HallError> {
    check_supported(datum)?;
    if !crate::field::is_prime(p as u64) {
        return Err(HallError::Field(crate::error::FieldError::NotPrime(p as u64)));
    }
    if !datum.is_root(root) || root.iter().any(|&c| c < 0) {
        return Err(HallError::Root(crate::error::RootError::NotARoot(datum.type_name().to_string())));
    }
    let m = datum.rank();
    let mut arrows = datum.arrows().to_vec();
    let mut beta = root.to_vec();
    let mut steps: Vec<usize> = Vec::new();
    let simple_at = |b: &[i64]| -> Option<usize> {
        (b.iter().sum::<i64>() == 1).then(|| b.iter().position(|&c| c == 1).expect("unit vector"))
    };
    while simple_at(&beta).is_none() {
        let sink = (0..m).find(|&i| !arrows.iter().any(|&(t, _)| t == i)).expect("acyclic quiver has a sink");
        beta = datum.reflect(sink, &beta);
        for a in arrows.iter_mut() {
            if a.0 == sink || a.1 == sink {
                *a = (a.1, a.0);
            }
        }
        steps.push(sink);
        if steps.len() > 4 * datum.num_positive() {
            unreachable!("sink reflections reach a simple root");
        }
    }
    let mut rep = Representation::simple(p, &arrows, m, simple_at(&beta).expect("loop exit"));
    for &i in steps.iter().rev() {
        rep = reflect_at_source(&rep, i);
    }
    debug_assert_eq!(rep.arrows, datum.arrows());
    if rep.dim_vector() != root {
        return Err(HallError::NotPolynomial(format!("reflection produced {:?} instead of {root:?}", rep.dims)));
    }
    Ok(rep)
}

/// Dimension of the intertwiner space `Hom(M, N)`.
pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    let p = m.p;
    let verts = m.dims.len();
    // unknown f_v is an (n_v × m_v) matrix, flattened row-major
    let mut offset = vec![0usize; verts + 1];
    for v in 0..verts {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[verts];
    if unknowns == 0 {
        return 0;
    }
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut eqs: Mat = Vec::new();
    for (a, &(t, h)) in m.arrows.iter().enumerate() {
        // N_a·f_t − f_h·M_a = 0, entry (r, c) with r < n_h, c < m_t
        for r in 0..n.dims[h] {
            for c in 0..m.dims[t] {
                let mut row = vec![0u32; unknowns];
                for k in 0..n.dims[t] {
                    let coef = n.maps[a][r][k];
                    if coef != 0 {
                        let ix = var(t, k, c);
                        row[ix] = (row[ix] + coef) % p;
                    }
                }
                for k in 0..m.dims[h] {
                    let coef = m.maps[a][k][c];
                    if coef != 0 {
                        let ix = var(h, r, k);
                        row[ix] = (row[ix] + p - coef) % p;
                    }
                }
                eqs.push(row);
            }
        }
    }
    unknowns - rank(&eqs, unknowns, p)
}

/// All `k`-dimensional subspaces of `F_p^n` as RREF row bases.
fn subspaces(n: usize, k: usize, p: u32) -> Vec<Mat> {
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    fn choose(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            choose(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    choose(0, n, k, &mut Vec::new(), &mut pivots);
    for piv in pivots {
        // free slots: row r, column c > piv[r], c not a pivot
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as u64).pow(slots.len() as u32);
        for code in 0..total {
            let mut m = zeros(k, n);
            for (r, &c) in piv.iter().enumerate() {
                m[r][c] = 1;
            }
            let mut x = code;
            for &(r, c) in &slots {
                m[r][c] = (x % p as u64) as u32;
                x /= p as u64;
            }
            out.push(m);
        }
    }
    out
}

/// Whether `vectors` (rows) lie in the row space of the RREF basis `basis`.
fn contained(vectors: &Mat, basis: &Mat, n: usize, p: u32) -> bool {
    let r = basis.len();
    vectors.iter().all(|v| {
        let mut m = basis.clone();
        m.push(v.clone());
        rank(&m, n, p) == r
    })
}

/// Splits `rep` along the subrepresentation `sub` (RREF bases per vertex)
/// into the sub and quotient representations.
fn split(rep: &Representation, sub: &[Mat]) -> (Representation, Representation) {
    let p = rep.p;
    let verts = rep.dims.len();
    // change of basis per vertex: columns = sub basis, then unit vectors on
    // non-pivot coordinates
    let mut change: Vec<Mat> = Vec::with_capacity(verts);
    for v in 0..verts {
        let n = rep.dims[v];
        let mut cols: Vec<Vec<u32>> = sub[v].clone();
        let pivots: Vec<usize> = sub[v].iter().map(|row| row.iter().position(|&x| x != 0).expect("nonzero")).collect();
        for c in 0..n {
            if !pivots.contains(&c) {
                let mut e = vec![0; n];
                e[c] = 1;
                cols.push(e);
            }
        }
        change.push(transpose(&cols, n, n));
    }
    let k: Vec<usize> = sub.iter().map(|s| s.len()).collect();
    let mut subrep = rep.clone();
    let mut quot = rep.clone();
    for v in 0..verts {
        subrep.dims[v] = k[v];
        quot.dims[v] = rep.dims[v] - k[v];
    }
    for (a, &(t, h)) in rep.arrows.iter().enumerate() {
        let moved = if rep.dims[h] == 0 || rep.dims[t] == 0 {
            zeros(rep.dims[h], rep.dims[t])
        } else {
            let inv_h = inverse(&change[h], p);
            let am = mat_mul(&rep.maps[a], &change[t], rep.dims[t], p);
            mat_mul(&inv_h, &am, rep.dims[t], p)
        };
        subrep.maps[a] = (0..k[h]).map(|r| moved[r][..k[t]].to_vec()).collect();
        quot.maps[a] = (k[h]..rep.dims[h]).map(|r| moved[r][k[t]..].to_vec()).collect();
    }
    (subrep, quot)
}

/// Number of subrepresentations `U ⊆ L` with `dim U = y`, `U` zero or
/// indecomposable and `L/U` zero or indecomposable (so `U ≅ Y` and `L/U ≅ X` for
/// Dynkin quivers, where indecomposables are bricks determined by their
/// dimension vectors).
pub fn filtration_count(l: &Representation, x: &[i64], y: &[i64]) -> Result<u64, HallError> {
    if l.total_dim() > MAX_TOTAL_DIM {
        return Err(HallError::TooLarge(l.total_dim()));
    }
    let verts = l.dims.len();
    if (0..verts).any(|v| x[v] < 0 || y[v] < 0 || (x[v] + y[v]) as usize != l.dims[v]) {
        return Err(HallError::NotPolynomial("dim L must equal X + Y".into()));
    }
    let choices: Vec<Vec<Mat>> = (0..verts).map(|v| subspaces(l.dims[v], y[v] as usize, l.p)).collect();
    let mut count = 0u64;
    let mut current: Vec<Mat> = Vec::with_capacity(verts);
    fn closed(l: &Representation, current: &[Mat], upto: usize) -> bool {
        // arrows whose endpoints are both assigned and one of them is `upto`
        l.arrows.iter().enumerate().all(|(a, &(t, h))| {
            if t > upto || h > upto || (t != upto && h != upto) {
                return true;
            }
            let ut = &current[t];
            if ut.is_empty() {
                return true;
            }
            // images of the basis of U_t under the arrow, as rows
            let images: Mat = ut
                .iter()
                .map(|u| {
                    (0..l.dims[h])
                        .map(|r| {
                            (l.maps[a][r].iter().zip(u).map(|(&m, &x)| m as u64 * x as u64).sum::<u64>() % l.p as u64)
                                as u32
                        })
                        .collect()
                })
                .collect();
            contained(&images, &current[h], l.dims[h], l.p)
        })
    }
    fn walk(l: &Representation, choices: &[Vec<Mat>], current: &mut Vec<Mat>, count: &mut u64) {
        let v = current.len();
        if v == choices.len() {
            let (u, q) = split(l, current);
            // the zero object counts as itself; nonzero parts must be bricks
            let brick = |r: &Representation| r.total_dim() == 0 || hom_dim(r, r) == 1;
            if brick(&u) && brick(&q) {
                *count += 1;
            }
            return;
        }
        for s in &choices[v] {
            current.push(s.clone());
            if closed(l, current, v) {
                walk(l, choices, current, count);
            }
            current.pop();
        }
    }
    walk(l, &choices, &mut current, &mut count);
    Ok(count)
}

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<BigRational>);

impl Poly {
    pub fn eval(&self, q: i64) -> BigRational {
        let q = BigRational::from_integer(q.into());
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &q + c)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }
}

/// Least-degree polynomial through all samples, required to have integer
/// coefficients and degree ≤ 4.
pub fn fit_polynomial(samples: &[(i64, u64)]) -> Result<Poly, HallError> {
    let pts: Vec<(BigRational, BigRational)> = samples
        .iter()
        .map(|&(q, v)| (BigRational::from_integer(q.into()), BigRational::from_integer(BigInt::from(v))))
        .collect();
    for deg in 0..pts.len() {
        let poly = interpolate(&pts[..=deg]);
        if pts.iter().all(|(x, y)| &eval_rat(&poly, x) == y) {
            let p = Poly(poly);
            if p.degree() > 4 || !p.is_integral() {
                break;
            }
            return Ok(p);
        }
    }
    Err(HallError::NotPolynomial(format!("samples {samples:?}")))
}

fn eval_rat(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, k| acc * x + k)
}

/// Lagrange interpolation in monomial coefficients.
fn interpolate(pts: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = pts.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * yi / &denom;
        }
    }
    out
}

/// Fitted Hall polynomials for one ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallGamma {
    pub phi_xy: Poly,
    pub phi_yx: Poly,
    pub gamma: i64,
}

/// Counts `F^L_{XY}(q)` (sub `≅ Y`, quotient `≅ X`) at the given primes.
pub fn sample_counts(
    datum: &RootDatum,
    x: &[i64],
    y: &[i64],
    l: &[i64],
    primes: &[u32],
) -> Result<Vec<(i64, u64)>, HallError> {
    primes
        .par_iter()
        .map(|&p| {
            let rep = build_indecomposable(datum, l, p)?;
            Ok((p as i64, filtration_count(&rep, x, y)?))
        })
        .collect()
}

/// `γ^L_{XY} = φ^L_{XY}(1) − φ^L_{YX}(1)` from interpolated Hall counts.
pub fn gamma_oracle(datum: &RootDatum, x: &[i64], y: &[i64], l: &[i64]) -> Result<HallGamma, HallError> {
    check_supported(datum)?;
    let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
    if sum != l {
        return Err(HallError::NotPolynomial("X + Y must equal L".into()));
    }
    let phi_xy = fit_polynomial(&sample_counts(datum, x, y, l, &SAMPLE_PRIMES)?)?;
    let phi_yx = fit_polynomial(&sample_counts(datum, y, x, l, &SAMPLE_PRIMES)?)?;
    let g = phi_xy.eval(1) - phi_yx.eval(1);
    Ok(HallGamma { phi_xy, phi_yx, gamma: i64::try_from(g.to_integer()).expect("small integer") })
}

/// [`HomOracle`] backed by explicit representations over `F_p`.
#[derive(Clone, Copy, Debug)]
pub struct RepresentationOracle {
    pub p: u32,
}

impl HomOracle for RepresentationOracle {
    fn hom_dim(&self, datum: &RootDatum, x: &[i64], y: &[i64]) -> Result<i64, CategoryError> {
        let build = |r: &[i64]| {
            build_indecomposable(datum, r, self.p).map_err(|e| CategoryError::Unsupported(e.to_string()))
        };
        Ok(hom_dim(&build(x)?, &build(y)?) as i64)
    }
}
