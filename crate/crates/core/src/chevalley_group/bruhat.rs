use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{normalize_u, normalize_u_by, pow_scalar, scalar_key, AtomKind, Chevalley, GroupElement, WordAtom};
use crate::error::GroupError;
use crate::field::Scalar;
use crate::matrix::Matrix;

/// `x = u'·h·n_w·u` with `u' ∈ U`, `h = ∏ h_{S_i}(t_i)` and `u ∈ U⁻_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatForm {
    pub u_prime: Vec<(usize, Scalar)>,
    pub torus: Vec<Scalar>,
    pub weyl_word: Vec<usize>,
    pub u_minus: Vec<(usize, Scalar)>,
}

/// Order in which a word is rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Atom by atom, first descent when conjugating negative root elements.
    Sequential,
    /// Random chunks reduced separately and then merged, random descents.
    Chunked(u64),
}

/// Weyl element as the permutation of root indices.
type Perm = Vec<usize>;

struct Machine<'a> {
    g: &'a Chevalley,
    rng: Option<ChaCha8Rng>,
    up: Vec<(usize, Scalar)>,
    t: Vec<Scalar>,
    w: Perm,
    um: Vec<(usize, Scalar)>,
}

impl<'a> Machine<'a> {
    fn new(g: &'a Chevalley, rng: Option<ChaCha8Rng>) -> Self {
        let d = g.datum();
        Machine {
            g,
            rng,
            up: Vec::new(),
            t: vec![g.field().one(); d.rank()],
            w: (0..d.num_roots()).collect(),
            um: Vec::new(),
        }
    }

    fn in_inversions(&self, r: usize) -> bool {
        !self.g.datum().is_positive(self.w[r])
    }

    /// `n_w u_M = η u_{w(M)}` along the canonical reduced word.
    fn eta_w(&self, word: &[usize], m: usize) -> Result<(usize, i64), GroupError> {
        let mut cur = m;
        let mut sign = 1;
        for &i in word.iter().rev() {
            sign *= self.g.eta(i, cur)?;
            cur = self.g.reflection(i, cur);
        }
        Ok((cur, sign))
    }

    /// `h E_M(s) h⁻¹ = E_M(χ(M) s)`.
    fn chi(&self, m: usize) -> Result<Scalar, GroupError> {
        let d = self.g.datum();
        let mut out = self.g.field().one();
        for (i, ti) in self.t.iter().enumerate() {
            let a = d.coroot_pairing(i, d.root(m));
            if a != 0 {
                out = &out * &pow_scalar(ti, a)?;
            }
        }
        Ok(out)
    }

    fn mul_torus(&mut self, root: usize, s: &Scalar) -> Result<(), GroupError> {
        let c = self.g.datum().coroot_coeffs(root);
        for (ti, ci) in self.t.iter_mut().zip(c) {
            if ci != 0 {
                *ti = &*ti * &pow_scalar(s, ci)?;
            }
        }
        Ok(())
    }

    fn push_e(&mut self, m: usize, s: Scalar) -> Result<(), GroupError> {
        if s.is_zero() {
            return Ok(());
        }
        let d = self.g.datum().clone();
        if d.is_positive(m) {
            let mut all = self.um.clone();
            all.push((m, s));
            let split = normalize_u_by(self.g, &all, |r| (self.in_inversions(r), r))?;
            let cut = split.iter().position(|(r, _)| self.in_inversions(*r)).unwrap_or(split.len());
            let word = reduced_word(self.g, &self.w);
            let mut moved = Vec::with_capacity(cut);
            for (r, p) in &split[..cut] {
                let (wr, eta) = self.eta_w(&word, *r)?;
                let coef = &(&self.g.field().from_i64(eta) * &self.chi(wr)?) * p;
                moved.push((wr, coef));
            }
            self.um = normalize_u(self.g, &split[cut..])?;
            if !moved.is_empty() {
                let mut up = std::mem::take(&mut self.up);
                up.extend(moved);
                self.up = normalize_u(self.g, &up)?;
            }
            return Ok(());
        }
        let pos = d.neg(m);
        if pos < d.rank() {
            // E_{TS}(s) = E_S(-s⁻¹) h_S(s⁻¹) n_S E_S(-s⁻¹)
            let si = s.inv()?;
            self.push_e(pos, si.neg())?;
            self.push_h(pos, &si)?;
            self.push_n(pos)?;
            return self.push_e(pos, si.neg());
        }
        // M = v(-α_j) with v = s_{i1}⋯s_{ik}; E_M(s) = n_v E_{-α_j}(η s) n_v⁻¹
        let mut cur = pos;
        let mut letters = Vec::new();
        while cur >= d.rank() {
            let options: Vec<usize> = (0..d.rank()).filter(|&i| d.coroot_pairing(i, d.root(cur)) > 0).collect();
            let i = match self.rng.as_mut() {
                Some(rng) => *options.choose(rng).expect("a descent exists"),
                None => options[0],
            };
            letters.push(i);
            cur = self.g.reflection(i, cur);
        }
        let j = cur;
        let (image, eta) = self.eta_w(&letters, d.neg(j))?;
        if image != m {
            return Err(GroupError::Inconsistent("conjugation path does not reach the root".into()));
        }
        let m1 = self.g.field().from_i64(-1);
        for &i in &letters {
            self.push_n(i)?;
        }
        self.push_e(d.neg(j), &self.g.field().from_i64(eta) * &s)?;
        for &i in letters.iter().rev() {
            self.push_h(i, &m1)?;
            self.push_n(i)?;
        }
        Ok(())
    }

    /// Right multiplication by `h_X(s)`.
    fn push_h(&mut self, x: usize, s: &Scalar) -> Result<(), GroupError> {
        let d = self.g.datum();
        let mut um = Vec::with_capacity(self.um.len());
        for (r, p) in &self.um {
            um.push((*r, &pow_scalar(s, -d.a_coeff(x, *r))? * p));
        }
        self.um = um;
        let wx = self.w[x];
        self.mul_torus(wx, s)
    }

    /// Right multiplication by `n_{S_i}(1)`.
    fn push_n(&mut self, i: usize) -> Result<(), GroupError> {
        let d = self.g.datum().clone();
        let conj = |g: &Chevalley, items: &[(usize, Scalar)]| -> Result<Vec<(usize, Scalar)>, GroupError> {
            items
                .iter()
                .map(|(r, p)| Ok((g.reflection(i, *r), &g.field().from_i64(g.eta_inverse(i, *r)?) * p)))
                .collect()
        };
        let new_w: Perm = (0..d.num_roots()).map(|r| self.w[self.g.reflection(i, r)]).collect();
        if d.is_positive(self.w[i]) {
            let moved = conj(self.g, &self.um)?;
            self.w = new_w;
            self.um = normalize_u(self.g, &moved)?;
            return Ok(());
        }
        let split = normalize_u_by(self.g, &self.um, |r| (r == i, r))?;
        let (rest, last) = match split.last() {
            Some((r, p)) if *r == i => (&split[..split.len() - 1], Some(p.clone())),
            _ => (&split[..], None),
        };
        let moved = conj(self.g, rest)?;
        self.w = new_w;
        self.um = normalize_u(self.g, &moved)?;
        // n_w n_i = n_{ws_i} h_i(-1) = h_{ws_i(α_i)}(-1) n_{ws_i}
        let m1 = self.g.field().from_i64(-1);
        let wi = self.w[i];
        self.mul_torus(wi, &m1)?;
        if let Some(c) = last {
            let eta = self.g.eta_inverse(i, i)?;
            self.push_e(d.neg(i), &self.g.field().from_i64(eta) * &c)?;
        }
        Ok(())
    }

    fn push_atom(&mut self, a: &WordAtom) -> Result<(), GroupError> {
        let d = self.g.datum().clone();
        match a.kind {
            AtomKind::E => self.push_e(a.root, a.t.clone()),
            AtomKind::H => {
                if a.t.is_zero() {
                    return Err(GroupError::InvalidWord("h with zero parameter".into()));
                }
                self.push_h(a.root, &a.t)
            }
            AtomKind::N => {
                if a.root < d.rank() {
                    // n_S(t) = h_S(t) n_S(1)
                    self.push_h(a.root, &a.t)?;
                    self.push_n(a.root)
                } else {
                    let ti = a.t.inv()?;
                    self.push_e(a.root, a.t.clone())?;
                    self.push_e(d.neg(a.root), ti)?;
                    self.push_e(a.root, a.t.clone())
                }
            }
        }
    }

    fn push_form(&mut self, f: &BruhatForm) -> Result<(), GroupError> {
        for (r, p) in &f.u_prime {
            self.push_e(*r, p.clone())?;
        }
        for (i, ti) in f.torus.iter().enumerate() {
            if !ti.is_one() {
                self.push_h(i, ti)?;
            }
        }
        for &i in &f.weyl_word {
            self.push_n(i)?;
        }
        for (r, p) in &f.u_minus {
            self.push_e(*r, p.clone())?;
        }
        Ok(())
    }

    fn finish(self) -> BruhatForm {
        let torus = canonical_torus(self.g, &self.t);
        BruhatForm { u_prime: self.up, torus, weyl_word: reduced_word(self.g, &self.w), u_minus: self.um }
    }
}

/// Smallest representative of `t` modulo the kernel of the torus map.
fn canonical_torus(g: &Chevalley, t: &[Scalar]) -> Vec<Scalar> {
    g.torus_kernel()
        .iter()
        .map(|k| t.iter().zip(k).map(|(a, b)| a * b).collect::<Vec<Scalar>>())
        .min_by_key(|v| v.iter().map(scalar_key).collect::<Vec<_>>())
        .unwrap_or_else(|| t.to_vec())
}

/// Reduced word taking the smallest left descent first.
pub(crate) fn reduced_word(g: &Chevalley, w: &[usize]) -> Vec<usize> {
    let d = g.datum();
    let m = d.rank();
    let mut w = w.to_vec();
    let mut out = Vec::new();
    loop {
        let mut inv = vec![0; w.len()];
        for (r, &img) in w.iter().enumerate() {
            inv[img] = r;
        }
        let Some(i) = (0..m).find(|&i| !d.is_positive(inv[i])) else {
            return out;
        };
        out.push(i);
        w = w.iter().map(|&img| g.reflection(i, img)).collect();
    }
}

/// Weyl permutation of a word of simple reflections.
pub(crate) fn word_perm(g: &Chevalley, word: &[usize]) -> Vec<usize> {
    let nr = g.datum().num_roots();
    let mut w: Vec<usize> = (0..nr).collect();
    for &i in word {
        w = (0..nr).map(|r| w[g.reflection(i, r)]).collect();
    }
    w
}

impl BruhatForm {
    /// Inversion set `R(w) = {M > 0 : w(M) < 0}`.
    pub fn inversions(&self, g: &Chevalley) -> Vec<usize> {
        let w = word_perm(g, &self.weyl_word);
        (0..g.datum().num_positive()).filter(|&r| !g.datum().is_positive(w[r])).collect()
    }

    pub fn word(&self, g: &Chevalley) -> Vec<WordAtom> {
        let one = g.field().one();
        let mut out: Vec<WordAtom> = self.u_prime.iter().map(|(r, p)| WordAtom::e(*r, p.clone())).collect();
        out.extend(self.torus.iter().enumerate().map(|(i, t)| WordAtom::h(i, t.clone())));
        out.extend(self.weyl_word.iter().map(|&i| WordAtom::n(i, one.clone())));
        out.extend(self.u_minus.iter().map(|(r, p)| WordAtom::e(*r, p.clone())));
        out
    }

    pub fn matrix(&self, g: &Chevalley) -> Result<Matrix, GroupError> {
        g.word_matrix(&self.word(g))
    }
}

fn run(g: &Chevalley, word: &[WordAtom], strategy: Strategy) -> Result<BruhatForm, GroupError> {
    match strategy {
        Strategy::Sequential => {
            let mut m = Machine::new(g, None);
            for a in word {
                m.push_atom(a)?;
            }
            Ok(m.finish())
        }
        Strategy::Chunked(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut forms = Vec::new();
            let mut rest = word;
            while !rest.is_empty() {
                let k = rng.gen_range(1..=rest.len().min(6));
                let mut m = Machine::new(g, Some(ChaCha8Rng::seed_from_u64(rng.gen())));
                for a in &rest[..k] {
                    m.push_atom(a)?;
                }
                forms.push(m.finish());
                rest = &rest[k..];
            }
            let mut m = Machine::new(g, Some(ChaCha8Rng::seed_from_u64(rng.gen())));
            for f in &forms {
                m.push_form(f)?;
            }
            Ok(m.finish())
        }
    }
}

/// Bruhat normal form of an element given by its word; the reassembled
/// product is checked against the element's matrix.
pub fn bruhat(g: &Chevalley, x: &GroupElement, strategy: Strategy) -> Result<BruhatForm, GroupError> {
    let word = x.word.as_ref().ok_or_else(|| GroupError::InvalidWord("element carries no word".into()))?;
    let form = run(g, word, strategy)?;
    if form.matrix(g)? != x.matrix {
        return Err(GroupError::Inconsistent("Bruhat form does not reassemble to the input".into()));
    }
    Ok(form)
}

/// Membership in `P_J = B N_J B`.
pub fn parabolic_membership(g: &Chevalley, x: &GroupElement, j: &[usize]) -> Result<bool, GroupError> {
    let f = bruhat(g, x, Strategy::Sequential)?;
    Ok(f.weyl_word.iter().all(|i| j.contains(i)))
}
