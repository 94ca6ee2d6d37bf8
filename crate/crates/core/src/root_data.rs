//! Cartan data, root systems and the order-formula ingredients.
//!
//! Cartan matrices use the convention `a_ij = 2(α_i, α_j) / (α_i, α_i)`
//! with symmetrizers `d_i = (α_i, α_i) / 2`, so `diag(d)·C` is the
//! symmetrized form and short roots have `d = 1`. Vertices follow the
//! Bourbaki labeling and are 0-based internally.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::RootError;

/// A Dynkin type of finite type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self, CartanType::A(_) | CartanType::D(_) | CartanType::E(_))
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        match *self {
            CartanType::A(n) => n * (n + 1) / 2,
            CartanType::B(n) | CartanType::C(n) => n * n,
            CartanType::D(n) => n * (n - 1),
            CartanType::E(6) => 36,
            CartanType::E(7) => 63,
            CartanType::E(_) => 120,
            CartanType::F4 => 24,
            CartanType::G2 => 6,
        }
    }

    /// Undirected diagram edges, 0-based, each as `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        match *self {
            CartanType::A(_) | CartanType::B(_) | CartanType::C(_) | CartanType::F4 | CartanType::G2 => {
                (0..n - 1).map(|i| (i, i + 1)).collect()
            }
            CartanType::D(_) => {
                let mut e: Vec<_> = (0..n - 3).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            CartanType::E(_) => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Cartan matrix and symmetrizers.
    pub fn cartan(&self) -> (Vec<Vec<i64>>, Vec<i64>) {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            a[i][j] = -1;
            a[j][i] = -1;
        }
        let mut d = vec![1i64; n];
        match *self {
            CartanType::B(_) => {
                a[n - 1][n - 2] = -2;
                d.iter_mut().take(n - 1).for_each(|x| *x = 2);
            }
            CartanType::C(_) => {
                a[n - 2][n - 1] = -2;
                d[n - 1] = 2;
            }
            CartanType::F4 => {
                a[2][1] = -2;
                d[0] = 2;
                d[1] = 2;
            }
            CartanType::G2 => {
                a[0][1] = -3;
                d[1] = 3;
            }
            _ => {}
        }
        (a, d)
    }

    /// Linear orientation along the labeling; in types D and E every arrow
    /// at the branch vertex points toward it.
    pub fn default_arrows(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        self.edges()
            .into_iter()
            .map(|(i, j)| match *self {
                CartanType::D(_) if i == n - 3 && j >= n - 2 => (j, i),
                _ => (i, j),
            })
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl std::str::FromStr for CartanType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootError::UnknownType(s.to_string());
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (letter, n) {
            ('A', 1..=8) => CartanType::A(n),
            ('B', 2..=8) => CartanType::B(n),
            ('C', 2..=8) => CartanType::C(n),
            ('D', 4..=8) => CartanType::D(n),
            ('E', 6..=8) => CartanType::E(n),
            ('F', 4) => CartanType::F4,
            ('G', 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

/// Parses an orientation spec such as `"1>2,3>2"` (1-based vertices, `i>j`
/// meaning an arrow from `i` to `j`). Edges not mentioned keep the direction
/// from `default`.
pub fn parse_orientation(
    spec: &str,
    edges: &[(usize, usize)],
    default: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>, RootError> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "default" {
        return Ok(default.to_vec());
    }
    let mut chosen: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for part in spec.split(',') {
        let part = part.trim();
        let (a, b) = part
            .split_once('>')
            .ok_or_else(|| RootError::InvalidOrientation(format!("`{part}` is not of the form i>j")))?;
        let parse = |x: &str| -> Result<usize, RootError> {
            let v: usize = x.trim().parse().map_err(|_| {
                RootError::InvalidOrientation(format!("`{x}` is not a vertex number"))
            })?;
            v.checked_sub(1)
                .ok_or_else(|| RootError::InvalidOrientation("vertices are numbered from 1".into()))
        };
        let (t, h) = (parse(a)?, parse(b)?);
        let key = (t.min(h), t.max(h));
        if !edges.contains(&key) {
            return Err(RootError::InvalidOrientation(format!("{}-{} is not a diagram edge", t + 1, h + 1)));
        }
        if let Some(&prev) = chosen.get(&key) {
            if prev != (t, h) {
                return Err(RootError::InvalidOrientation(format!(
                    "edge {}-{} given both directions",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
        }
        chosen.insert(key, (t, h));
    }
    Ok(default
        .iter()
        .map(|&(t, h)| *chosen.get(&(t.min(h), t.max(h))).unwrap_or(&(t, h)))
        .collect())
}

/// Cartan matrix, root system and orientation.
///
/// Roots are stored in canonical order: positive roots by ascending height,
/// ties broken by descending lexicographic order of coordinates (so the
/// simple roots come first, as `α_1, …, α_m`), followed by the negatives in
/// the same order. Index `i + r` is the negative of positive root `i`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    type_name: String,
    cartan_type: Option<CartanType>,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    arrows: Vec<(usize, usize)>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.type_name == other.type_name
            && self.cartan == other.cartan
            && self.d == other.d
            && self.arrows == other.arrows
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Builds the datum of a named type; `orientation` is `None`, `"default"`
    /// or an edge list like `"1>2,3>2"`.
    pub fn build(type_name: &str, orientation: Option<&str>) -> Result<Self, RootError> {
        let t: CartanType = type_name.parse()?;
        let (cartan, d) = t.cartan();
        let arrows = parse_orientation(orientation.unwrap_or("default"), &t.edges(), &t.default_arrows())?;
        let mut datum = Self::from_cartan(&t.to_string(), cartan, d, arrows)?;
        datum.cartan_type = Some(t);
        Ok(datum)
    }

    /// Builds a datum from an explicit symmetrizable Cartan matrix.
    pub fn from_cartan(
        name: &str,
        cartan: Vec<Vec<i64>>,
        d: Vec<i64>,
        arrows: Vec<(usize, usize)>,
    ) -> Result<Self, RootError> {
        let m = cartan.len();
        let bad = |msg: &str| RootError::UnknownType(format!("{name}: {msg}"));
        if d.len() != m || cartan.iter().any(|row| row.len() != m) {
            return Err(bad("shape mismatch"));
        }
        for i in 0..m {
            if cartan[i][i] != 2 || d[i] <= 0 {
                return Err(bad("diagonal entries must be 2 and symmetrizers positive"));
            }
            for j in 0..m {
                if i != j && (cartan[i][j] > 0 || d[i] * cartan[i][j] != d[j] * cartan[j][i]) {
                    return Err(bad("not a symmetrizable generalized Cartan matrix"));
                }
            }
        }
        for &(t, h) in &arrows {
            if t >= m || h >= m || cartan[t][h] == 0 {
                return Err(RootError::InvalidOrientation(format!("{}>{} is not an edge", t + 1, h + 1)));
            }
        }
        let mut datum = RootDatum {
            type_name: name.to_string(),
            cartan_type: name.parse().ok(),
            cartan,
            d,
            arrows,
            roots: Vec::new(),
            index: HashMap::new(),
        };
        datum.close_roots()?;
        Ok(datum)
    }

    fn close_roots(&mut self) -> Result<(), RootError> {
        const LIMIT: usize = 4096;
        let m = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..m {
            let mut e = vec![0; m];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..m {
                let w = self.reflect(i, &v);
                if seen.insert(w.clone()) {
                    if seen.len() > LIMIT {
                        return Err(RootError::TooLarge(format!("root system of {}", self.type_name)));
                    }
                    queue.push_back(w);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = Vec::new();
        for v in &seen {
            let pos = v.iter().all(|&c| c >= 0);
            let neg = v.iter().all(|&c| c <= 0);
            if !pos && !neg {
                return Err(RootError::UnknownType(format!("{}: mixed-sign root", self.type_name)));
            }
            if pos {
                positive.push(v.clone());
            }
        }
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let negative: Vec<Vec<i64>> = positive.iter().map(|v| v.iter().map(|c| -c).collect()).collect();
        self.roots = positive.into_iter().chain(negative).collect();
        self.index = self.roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(())
    }

    pub fn type_name(&self) -> &str {
        &self.type_name
    }

    pub fn cartan_type(&self) -> Option<CartanType> {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    /// Directed arrows `(tail, head)` of the orientation, 0-based.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_simply_laced(&self) -> bool {
        self.d.iter().all(|&x| x == self.d[0])
            && (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.cartan[i][j] >= -1 || i == j))
    }

    /// Undirected edges `(i, j)`, `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.rank();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if self.cartan[i][j] != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Same Cartan data with a different orientation.
    pub fn with_arrows(&self, arrows: Vec<(usize, usize)>) -> Result<Self, RootError> {
        let mut edges_given: Vec<(usize, usize)> = arrows.iter().map(|&(t, h)| (t.min(h), t.max(h))).collect();
        edges_given.sort();
        if edges_given != self.edges() {
            return Err(RootError::InvalidOrientation("arrows must orient each edge exactly once".into()));
        }
        let mut out = self.clone();
        out.arrows = arrows;
        Ok(out)
    }

    /// Number of positive roots `r`.
    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.num_positive()]
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    /// Index of the negated root.
    pub fn neg(&self, i: usize) -> usize {
        let r = self.num_positive();
        if i < r {
            i + r
        } else {
            i - r
        }
    }

    /// Signed height (sum of coordinates).
    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    /// Root index of `α_i`.
    pub fn simple(&self, i: usize) -> usize {
        i
    }

    /// Index of `a + b` if it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&v)
    }

    /// Index of `i·a + j·b` if it is a root.
    pub fn combo_index(&self, a: usize, i: i64, b: usize, j: i64) -> Option<usize> {
        let v: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| i * x + j * y).collect();
        self.index_of(&v)
    }

    /// Symmetrized form `xᵀ·diag(d)·C·y`; `(α, α) = 2 d(α)`.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let m = self.rank();
        let mut s = 0;
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                s += x[i] * self.d[i] * self.cartan[i][j] * y[j];
            }
        }
        s
    }

    /// `d(α) = (α, α)/2` of root `i`.
    pub fn root_d(&self, i: usize) -> i64 {
        self.form(&self.roots[i], &self.roots[i]) / 2
    }

    /// `A_XY = (X, Y)/d(X)` for root indices.
    pub fn a_coeff(&self, x: usize, y: usize) -> i64 {
        self.form(&self.roots[x], &self.roots[y]) / self.root_d(x)
    }

    /// `⟨v, α_i^∨⟩ = Σ_j a_ij v_j`.
    pub fn coroot_pairing(&self, i: usize, v: &[i64]) -> i64 {
        self.cartan[i].iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Simple reflection `s_i(v) = v - ⟨v, α_i^∨⟩ α_i`.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let c = self.coroot_pairing(i, v);
        let mut w = v.to_vec();
        w[i] -= c;
        w
    }

    /// Root index of `s_i(root k)`.
    pub fn reflect_index(&self, i: usize, k: usize) -> usize {
        self.index_of(&self.reflect(i, &self.roots[k])).expect("roots are closed under reflection")
    }

    /// Coroot of root `k` in the basis of simple coroots: `k_i·d_i/d(k)`.
    pub fn coroot_coeffs(&self, k: usize) -> Vec<i64> {
        let dk = self.root_d(k);
        self.roots[k].iter().zip(&self.d).map(|(c, di)| c * di / dk).collect()
    }

    /// Non-symmetrized Euler form of the orientation:
    /// `⟨a, b⟩ = Σ a_i b_i − Σ_{i→j} a_i b_j`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        diag - self.arrows.iter().map(|&(t, h)| a[t] * b[h]).sum::<i64>()
    }

    pub fn root_label(&self, i: usize) -> String {
        root_label(&self.roots[i])
    }

    /// Parses labels as printed by [`root_label`] (`α1`, `-α2`, `α1+2α2`,
    /// `-(α1+α2)`, with `a` accepted for `α`) or a coordinate vector
    /// `[1,1,0]` / `1,1,0`.
    pub fn parse_root(&self, s: &str) -> Result<usize, RootError> {
        let s = s.trim();
        let bad = || RootError::NotARoot(format!("{}: `{s}`", self.type_name));
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let v: Vec<i64> = if body.contains(['α', 'a']) {
            let mut e = vec![0; self.rank()];
            for term in body.split('+') {
                let (c, i) = term.trim().split_once(['α', 'a']).ok_or_else(bad)?;
                let c: i64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
                let i: usize = i.parse().map_err(|_| bad())?;
                if i == 0 || i > self.rank() {
                    return Err(bad());
                }
                e[i - 1] += c;
            }
            e
        } else {
            let inner = body.trim_start_matches('[').trim_end_matches(']');
            inner.split(',').map(|c| c.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|_| bad())?
        };
        let v: Vec<i64> = if neg { v.iter().map(|c| -c).collect() } else { v };
        self.index_of(&v).ok_or_else(bad)
    }
}

/// Label such as `α1+α2` or `-(α1+2α2)`.
pub fn root_label(v: &[i64]) -> String {
    let neg = v.iter().any(|&c| c < 0);
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let c = c.abs();
            if c == 1 {
                format!("α{}", i + 1)
            } else {
                format!("{c}α{}", i + 1)
            }
        })
        .collect();
    let body = terms.join("+");
    match (neg, terms.len()) {
        (false, _) => body,
        (true, 1) => format!("-{body}"),
        (true, _) => format!("-({body})"),
    }
}

/// `k[i]` = number of positive roots of height `i + 1`.
pub fn height_histogram(datum: &RootDatum) -> Vec<usize> {
    let mut k: Vec<usize> = Vec::new();
    for i in 0..datum.num_positive() {
        let h = datum.height(i) as usize;
        if k.len() < h {
            k.resize(h, 0);
        }
        k[h - 1] += 1;
    }
    k
}

/// Dual partition of the height histogram: `x_j = #{i : k_i ≥ j}`.
pub fn exponents(datum: &RootDatum) -> Vec<usize> {
    dual_partition(&height_histogram(datum))
}

pub fn dual_partition(k: &[usize]) -> Vec<usize> {
    let top = k.iter().copied().max().unwrap_or(0);
    (1..=top).map(|j| k.iter().filter(|&&ki| ki >= j).count()).collect()
}

/// Elementary divisors of an integer matrix (Smith normal form diagonal),
/// nonnegative and in divisibility order.
pub fn elementary_divisors(matrix: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = matrix.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut done = true;
            for i in t + 1..rows {
                let f = a[i][t] / p;
                if f != 0 {
                    for j in t..cols {
                        a[i][j] -= f * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let f = a[t][j] / p;
                if f != 0 {
                    for i in t..rows {
                        a[i][j] -= f * a[i][t];
                    }
                }
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| (i == t || j == t) && a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
                .expect("nonzero entry remains");
            a.swap(t, pivot.0);
            for row in a.iter_mut() {
                row.swap(t, pivot.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Number of `(t_1..t_m) ∈ (F_q^×)^m` with `∏_i t_i^{a_ij} = 1` for all `j`.
pub fn cartan_divisor(datum: &RootDatum, q: u64) -> u64 {
    let n = q - 1;
    elementary_divisors(datum.cartan())
        .into_iter()
        .map(|e| (e as u64).gcd(&n))
        .product()
}

/// `(1/d)·q^r·∏(q^{x_i+1} − 1)`.
pub fn predicted_order(datum: &RootDatum, q: u64) -> Result<BigInt, RootError> {
    let qb = BigInt::from(q);
    let mut num = num_traits::pow(qb.clone(), datum.num_positive());
    for x in exponents(datum) {
        num *= num_traits::pow(qb.clone(), x + 1) - BigInt::one();
    }
    let d = BigInt::from(cartan_divisor(datum, q));
    let (quot, rem) = num.div_rem(&d);
    if !rem.is_zero() {
        return Err(RootError::NonIntegral(format!("order of {}({q}) is not divisible by {d}", datum.type_name())));
    }
    Ok(quot)
}

/// An element of the Weyl group, stored as the images of the simple roots.
pub type WeylKey = Vec<Vec<i64>>;

/// Counts Weyl group elements by length: `out[l] = #{w : l(w) = l}`.
pub fn weyl_length_counts(datum: &RootDatum, limit: usize) -> Result<Vec<u64>, RootError> {
    let m = datum.rank();
    let id: WeylKey = (0..m).map(|i| datum.root(i).to_vec()).collect();
    let mut seen: HashSet<WeylKey> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    let mut counts = vec![1u64];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..m {
                let sw: WeylKey = w.iter().map(|v| datum.reflect(i, v)).collect();
                if seen.contains(&sw) {
                    continue;
                }
                seen.insert(sw.clone());
                if seen.len() > limit {
                    return Err(RootError::TooLarge(format!("Weyl group of {}", datum.type_name())));
                }
                next.push(sw);
            }
        }
        if !next.is_empty() {
            counts.push(next.len() as u64);
        }
        frontier = next;
    }
    Ok(counts)
}

/// Same counts as [`weyl_length_counts`], computed as a product of coset
/// polynomials `W_J = W_{J∖j} · W^{J∖j}`. Each coset factor is the length
/// distribution of the `W_J`-orbit of the fundamental weight `ω_j`, so no
/// group elements are stored.
pub fn weyl_poincare(datum: &RootDatum) -> Vec<u64> {
    let a = datum.cartan();
    let mut poly = vec![1u64];
    let mut active: Vec<usize> = (0..datum.rank()).collect();
    while !active.is_empty() {
        let (pos, layers) = active
            .iter()
            .enumerate()
            .map(|(p, &j)| (p, orbit_layers(a, &active, j)))
            .min_by_key(|(_, l)| l.iter().sum::<u64>())
            .expect("nonempty");
        active.remove(pos);
        let mut out = vec![0u64; poly.len() + layers.len() - 1];
        for (i, x) in poly.iter().enumerate() {
            for (k, y) in layers.iter().enumerate() {
                out[i + k] += x * y;
            }
        }
        poly = out;
    }
    poly
}

fn orbit_layers(a: &[Vec<i64>], gens: &[usize], j: usize) -> Vec<u64> {
    let m = a.len();
    let mut start = vec![0i64; m];
    start[j] = 1;
    let mut seen = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut layers = Vec::new();
    while !frontier.is_empty() {
        layers.push(frontier.len() as u64);
        let mut next = Vec::new();
        for c in &frontier {
            for &i in gens.iter().filter(|&&i| c[i] > 0) {
                let d: Vec<i64> = (0..m).map(|k| c[k] - c[i] * a[k][i]).collect();
                if seen.insert(d.clone()) {
                    next.push(d);
                }
            }
        }
        frontier = next;
    }
    layers
}

/// A quiver with a vertex automorphism `sigma` (arrows are mapped by
/// `(t, h) ↦ (σt, σh)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub sigma: Vec<usize>,
}

impl Quiver {
    /// The quiver of a simply-laced datum with the identity automorphism.
    pub fn from_datum(datum: &RootDatum) -> Self {
        Quiver {
            vertices: datum.rank(),
            arrows: datum.arrows().to_vec(),
            sigma: (0..datum.rank()).collect(),
        }
    }

    pub fn with_sigma(mut self, sigma: Vec<usize>) -> Self {
        self.sigma = sigma;
        self
    }
}

fn orbits(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            orbit.push(v);
            v = perm[v];
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

/// Folds a simply-laced quiver along an admissible automorphism.
///
/// Vertices of the result are σ-orbits ordered by their least element;
/// `d_i` is the orbit size, each arrow orbit of size `m` contributes
/// `−m/d_i` to `c_ij`.
pub fn fold(quiver: &Quiver) -> Result<RootDatum, RootError> {
    let n = quiver.vertices;
    let sigma = &quiver.sigma;
    let mut check = sigma.clone();
    check.sort();
    if sigma.len() != n || check != (0..n).collect::<Vec<_>>() {
        return Err(RootError::NotAdmissible("sigma is not a permutation of the vertices".into()));
    }
    let arrow_set: HashSet<(usize, usize)> = quiver.arrows.iter().copied().collect();
    if arrow_set.len() != quiver.arrows.len() {
        return Err(RootError::NotAdmissible("multiple arrows are not supported".into()));
    }
    let mut arrow_perm = Vec::with_capacity(quiver.arrows.len());
    for &(t, h) in &quiver.arrows {
        let img = (sigma[t], sigma[h]);
        let pos = quiver
            .arrows
            .iter()
            .position(|&a| a == img)
            .ok_or_else(|| RootError::NotAdmissible(format!("arrow {}>{} has no image", t + 1, h + 1)))?;
        arrow_perm.push(pos);
    }
    // underlying graph must be a simply-laced Dynkin diagram
    let mut cartan = vec![vec![0i64; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(t, h) in &quiver.arrows {
        if t == h || t >= n || h >= n {
            return Err(RootError::NotAdmissible("loops or out-of-range arrows".into()));
        }
        cartan[t][h] -= 1;
        cartan[h][t] -= 1;
    }
    match classify_cartan(&cartan, &vec![1; n]) {
        Some((t, _)) if t.is_simply_laced() => {}
        _ => return Err(RootError::NotAdmissible("underlying graph is not of type ADE".into())),
    }

    let vorbits = orbits(sigma);
    let mut orbit_of = vec![0usize; n];
    for (k, o) in vorbits.iter().enumerate() {
        for &v in o {
            orbit_of[v] = k;
        }
    }
    for &(t, h) in &quiver.arrows {
        if orbit_of[t] == orbit_of[h] {
            return Err(RootError::NotAdmissible(format!("arrow {}>{} lies inside an orbit", t + 1, h + 1)));
        }
    }
    let m = vorbits.len();
    let d: Vec<i64> = vorbits.iter().map(|o| o.len() as i64).collect();
    let mut c = vec![vec![0i64; m]; m];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut folded_arrows: Vec<(usize, usize)> = Vec::new();
    for orbit in orbits(&arrow_perm) {
        let (t, h) = quiver.arrows[orbit[0]];
        let (i, j) = (orbit_of[t], orbit_of[h]);
        let mult = orbit.len() as i64;
        if mult % d[i] != 0 || mult % d[j] != 0 {
            return Err(RootError::NotAdmissible("arrow valuation is not a common multiple".into()));
        }
        c[i][j] -= mult / d[i];
        c[j][i] -= mult / d[j];
        folded_arrows.push((i, j));
    }
    let (t, _) = classify_cartan(&c, &d)
        .ok_or_else(|| RootError::NotAdmissible("folded matrix is not of finite type".into()))?;
    let mut datum = RootDatum::from_cartan(&t.to_string(), c, d, folded_arrows)?;
    datum.cartan_type = Some(t);
    Ok(datum)
}

/// Identifies a Cartan matrix up to relabeling. Returns the type and a
/// permutation `π` with `cartan[π(i)][π(j)] = table[i][j]`.
pub fn classify_cartan(cartan: &[Vec<i64>], d: &[i64]) -> Option<(CartanType, Vec<usize>)> {
    let n = cartan.len();
    let candidates = [
        CartanType::A(n),
        CartanType::B(n),
        CartanType::C(n),
        CartanType::D(n),
        CartanType::E(n),
        CartanType::F4,
        CartanType::G2,
    ];
    for t in candidates {
        if t.rank() != n || t.to_string().parse::<CartanType>().is_err() {
            continue;
        }
        let (table, td) = t.cartan();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if match_perm(0, &table, cartan, &mut perm, &mut used) {
            // symmetrizers may differ by a global scale only
            let ratio_ok = (0..n).all(|i| td[i] * d[perm[0]] == d[perm[i]] * td[0]);
            if ratio_ok {
                return Some((t, perm));
            }
        }
    }
    None
}

fn match_perm(i: usize, table: &[Vec<i64>], target: &[Vec<i64>], perm: &mut [usize], used: &mut [bool]) -> bool {
    let n = table.len();
    if i == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        if (0..i).all(|j| table[i][j] == target[cand][perm[j]] && table[j][i] == target[perm[j]][cand]) {
            perm[i] = cand;
            used[cand] = true;
            if match_perm(i + 1, table, target, perm, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL: &[&str] = &[
        "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "E7",
        "E8", "F4", "G2",
    ];

    fn datum(s: &str) -> RootDatum {
        RootDatum::build(s, None).unwrap()
    }

    #[test]
    fn a2_basics() {
        let a2 = datum("A2");
        assert_eq!(a2.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.num_roots(), 6);
        assert_eq!(a2.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(a2.neg(2), 5);
        assert_eq!(a2.root(5), &[-1, -1]);
    }

    #[test]
    fn root_counts_match_classical_table() {
        for name in ALL {
            let t: CartanType = name.parse().unwrap();
            let d = datum(name);
            assert_eq!(d.num_positive(), t.positive_root_count(), "{name}");
            assert_eq!(d.num_roots(), 2 * d.num_positive());
        }
        assert_eq!(datum("G2").num_roots(), 12);
        assert_eq!(datum("E6").num_roots(), 72);
    }

    #[test]
    fn symmetrized_form_and_signs() {
        for name in ALL {
            let d = datum(name);
            let m = d.rank();
            for i in 0..m {
                for j in 0..m {
                    let s = d.symmetrizers();
                    assert_eq!(s[i] * d.cartan()[i][j], s[j] * d.cartan()[j][i]);
                }
            }
            for i in 0..d.num_positive() {
                assert!(d.height(i) > 0);
                assert!(d.root(i).iter().all(|&c| c >= 0));
            }
        }
    }

    #[test]
    fn g2_root_lengths() {
        let g2 = datum("G2");
        assert_eq!(g2.symmetrizers(), &[1, 3]);
        let long = (0..12).filter(|&i| g2.root_d(i) == 3).count();
        assert_eq!(long, 6);
        assert_eq!(g2.positive_roots().last().unwrap(), &vec![3, 2]);
    }

    #[test]
    fn histograms_from_known_lists() {
        assert_eq!(height_histogram(&datum("E6")), vec![6, 5, 5, 5, 4, 3, 3, 2, 1, 1, 1]);
        assert_eq!(height_histogram(&datum("F4")), vec![4, 3, 3, 3, 3, 2, 2, 1, 1, 1, 1]);
        assert_eq!(height_histogram(&datum("A2")), vec![2, 1]);
    }

    #[test]
    fn exponents_small() {
        let mut a2 = exponents(&datum("A2"));
        a2.sort();
        assert_eq!(a2, vec![1, 2]);
        let mut b2 = exponents(&datum("B2"));
        b2.sort();
        assert_eq!(b2, vec![1, 3]);
        assert_eq!(exponents(&datum("A1")), vec![1]);
    }

    // Independent oracle: count solutions of Σ_i a_ij e_i ≡ 0 mod (q−1)
    // directly in the cyclic group of units.
    fn brute_divisor(d: &RootDatum, q: u64) -> u64 {
        let n = (q - 1) as i64;
        let m = d.rank();
        let total = (n as u64).pow(m as u32);
        let mut count = 0;
        for code in 0..total {
            let mut e = vec![0i64; m];
            let mut c = code;
            for x in e.iter_mut() {
                *x = (c % n as u64) as i64;
                c /= n as u64;
            }
            let ok = (0..m).all(|j| (0..m).map(|i| e[i] * d.cartan()[i][j]).sum::<i64>().rem_euclid(n) == 0);
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn divisor_matches_brute_force() {
        assert_eq!(cartan_divisor(&datum("A2"), 2), 1);
        assert_eq!(cartan_divisor(&datum("A2"), 4), 3);
        assert_eq!(cartan_divisor(&datum("A1"), 3), 2);
        for name in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"] {
            let d = datum(name);
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                assert_eq!(cartan_divisor(&d, q), brute_divisor(&d, q), "{name} q={q}");
            }
        }
    }

    #[test]
    fn elementary_divisor_tables() {
        assert_eq!(elementary_divisors(datum("A2").cartan()), vec![1, 3]);
        assert_eq!(elementary_divisors(datum("D4").cartan()), vec![1, 1, 2, 2]);
        assert_eq!(elementary_divisors(datum("E6").cartan()), vec![1, 1, 1, 1, 1, 3]);
        assert_eq!(elementary_divisors(datum("E8").cartan()), vec![1; 8]);
    }

    #[test]
    fn predicted_orders() {
        let cases = [("A1", 2, 6u64), ("A1", 3, 12), ("A2", 2, 168), ("A2", 3, 5616), ("A3", 2, 20160), ("B2", 2, 720), ("B2", 3, 25920), ("G2", 2, 12096)];
        for (t, q, n) in cases {
            assert_eq!(predicted_order(&datum(t), q).unwrap(), BigInt::from(n), "{t}({q})");
        }
    }

    #[test]
    fn predicted_order_integral_everywhere() {
        for name in ALL {
            let d = datum(name);
            for q in 2..=16u64 {
                if crate::field::prime_power_decomposition(q).is_some() {
                    predicted_order(&d, q).unwrap();
                }
            }
        }
    }

    #[test]
    fn partition_bookkeeping() {
        for name in ALL {
            let d = datum(name);
            let k = height_histogram(&d);
            assert!(k.windows(2).all(|w| w[0] >= w[1]), "{name}");
            assert_eq!(k[0], d.rank());
            let x = exponents(&d);
            assert_eq!(x.len(), d.rank());
            assert_eq!(x.iter().sum::<usize>(), d.num_positive());
        }
    }

    #[test]
    fn weyl_orders() {
        let total = |s: &str| weyl_length_counts(&datum(s), 100_000).unwrap().iter().sum::<u64>();
        assert_eq!(total("A2"), 6);
        assert_eq!(total("B2"), 8);
        assert_eq!(total("G2"), 12);
        assert_eq!(total("F4"), 1152);
        assert_eq!(total("E6"), 51840);
        assert_eq!(weyl_length_counts(&datum("A2"), 10).unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn coset_factorization_matches_enumeration() {
        for t in ["A1", "A3", "B3", "C3", "D4", "G2", "F4", "B4", "D5", "E6"] {
            let d = datum(t);
            assert_eq!(weyl_poincare(&d), weyl_length_counts(&d, 100_000).unwrap(), "{t}");
        }
        let total = |s: &str| weyl_poincare(&datum(s)).iter().sum::<u64>();
        assert_eq!(total("E7"), 2_903_040);
        assert_eq!(total("E8"), 696_729_600);
        assert_eq!(weyl_poincare(&datum("E8")).len(), 121);
    }

    #[test]
    fn orientation_parsing() {
        let d = RootDatum::build("A3", Some("2>1,2>3")).unwrap();
        assert_eq!(d.arrows(), &[(1, 0), (1, 2)]);
        assert_eq!(datum("D4").arrows(), &[(0, 1), (2, 1), (3, 1)]);
        assert!(RootDatum::build("A3", Some("1>3")).is_err());
        assert!(RootDatum::build("A3", Some("1>2,2>1")).is_err());
        assert!(RootDatum::build("A3", Some("1-2")).is_err());
        assert!(RootDatum::build("H3", None).is_err());
    }

    #[test]
    fn fold_a3_end_swap() {
        let q = Quiver { vertices: 3, arrows: vec![(0, 1), (2, 1)], sigma: vec![2, 1, 0] };
        let f = fold(&q).unwrap();
        assert_eq!(f.cartan(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(f.symmetrizers(), &[2, 1]);
        assert_eq!(f.cartan_type(), Some(CartanType::B(2)));
        assert_eq!(f.num_roots(), 8);
    }

    #[test]
    fn fold_d4_triality() {
        let q = Quiver { vertices: 4, arrows: vec![(0, 1), (2, 1), (3, 1)], sigma: vec![2, 1, 3, 0] };
        let f = fold(&q).unwrap();
        assert_eq!(f.cartan_type(), Some(CartanType::G2));
        assert_eq!(f.cartan(), &[vec![2, -1], vec![-3, 2]]);
        assert_eq!(f.symmetrizers(), &[3, 1]);
        assert_eq!(f.num_roots(), 12);
    }

    #[test]
    fn fold_identity_and_inadmissible() {
        let a2 = datum("A2");
        let f = fold(&Quiver::from_datum(&a2)).unwrap();
        assert_eq!(f.cartan(), a2.cartan());
        assert_eq!(f.type_name(), "A2");
        let bad = Quiver { vertices: 2, arrows: vec![(0, 1)], sigma: vec![1, 0] };
        assert!(matches!(fold(&bad), Err(RootError::NotAdmissible(_))));
    }

    #[test]
    fn fold_agrees_with_tables() {
        // A_{2n-1} end-swap gives B_n, D_{n+1} leaf swap gives C_n, E6 gives F4.
        let a5 = Quiver { vertices: 5, arrows: vec![(0, 1), (1, 2), (4, 3), (3, 2)], sigma: vec![4, 3, 2, 1, 0] };
        assert_eq!(fold(&a5).unwrap().cartan_type(), Some(CartanType::B(3)));
        let d4 = Quiver { vertices: 4, arrows: vec![(0, 1), (2, 1), (3, 1)], sigma: vec![0, 1, 3, 2] };
        assert_eq!(fold(&d4).unwrap().cartan_type(), Some(CartanType::C(3)));
        let e6 = RootDatum::build("E6", Some("1>3,3>4,6>5,5>4,2>4")).unwrap();
        let q = Quiver::from_datum(&e6).with_sigma(vec![5, 1, 4, 3, 2, 0]);
        let f = fold(&q).unwrap();
        assert_eq!(f.cartan_type(), Some(CartanType::F4));
        assert_eq!(height_histogram(&f), height_histogram(&datum("F4")));
    }

    #[test]
    fn root_parsing_and_labels() {
        let a2 = datum("A2");
        assert_eq!(a2.parse_root("α2").unwrap(), 1);
        assert_eq!(a2.parse_root("-a1").unwrap(), 3);
        assert_eq!(a2.parse_root("[1,1]").unwrap(), 2);
        assert!(a2.parse_root("[2,1]").is_err());
        assert_eq!(a2.root_label(5), "-(α1+α2)");
        assert_eq!(datum("G2").root_label(5), "3α1+2α2");
        assert_eq!(a2.parse_root("a1 + a2").unwrap(), 2);
        assert!(a2.parse_root("α1+α3").is_err());
        assert!(a2.parse_root("2α1").is_err());
        for t in ["A4", "B3", "C3", "D5", "G2", "F4", "E6"] {
            let d = datum(t);
            for i in 0..d.num_roots() {
                assert_eq!(d.parse_root(&d.root_label(i)).unwrap(), i, "{t}");
            }
        }
    }

    proptest! {
        #[test]
        fn reflections_are_involutions(t in 0usize..ALL.len(), i in 0usize..8, k in 0usize..240) {
            let d = datum(ALL[t]);
            let i = i % d.rank();
            let k = k % d.num_roots();
            let once = d.reflect_index(i, k);
            prop_assert_eq!(d.reflect_index(i, once), k);
            prop_assert_eq!(d.form(d.root(once), d.root(once)), d.form(d.root(k), d.root(k)));
        }
    }
}
