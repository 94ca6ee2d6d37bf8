use std::collections::HashMap;

use rayon::prelude::*;

use super::Chevalley;
use crate::error::GroupError;
use crate::field::{FieldDescriptor, Scalar};
use crate::matrix::Matrix;
use crate::root_data::predicted_order;

pub const ENUMERATION_LIMIT: usize = 50_000;

/// Arithmetic on canonical element indices of a field with at most 256
/// elements.
#[derive(Clone, Debug)]
pub struct CompactField {
    q: usize,
    prime: bool,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl CompactField {
    pub fn new(field: &FieldDescriptor) -> Result<Self, GroupError> {
        let q = field.order().filter(|&q| q <= 256).ok_or(GroupError::TooLarge(256))? as usize;
        let els = field.elements()?;
        let idx = |s: &Scalar| s.index().expect("finite") as u8;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = idx(&(&els[a] + &els[b]));
                mul[a * q + b] = idx(&(&els[a] * &els[b]));
            }
        }
        let prime = matches!(field, FieldDescriptor::Prime(_));
        Ok(CompactField { q, prime, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Product of two `n × n` row-major matrices.
    pub fn mat_mul(&self, a: &[u8], b: &[u8], n: usize) -> Vec<u8> {
        let q = self.q;
        if self.prime {
            let mut acc = vec![0u32; n * n];
            for i in 0..n {
                for k in 0..n {
                    let x = a[i * n + k] as u32;
                    if x == 0 {
                        continue;
                    }
                    let row = &b[k * n..(k + 1) * n];
                    let out = &mut acc[i * n..(i + 1) * n];
                    for (o, &y) in out.iter_mut().zip(row) {
                        *o += x * y as u32;
                    }
                }
            }
            acc.into_iter().map(|v| (v % q as u32) as u8).collect()
        } else {
            let mut out = vec![0u8; n * n];
            for i in 0..n {
                for k in 0..n {
                    let x = a[i * n + k] as usize;
                    if x == 0 {
                        continue;
                    }
                    for j in 0..n {
                        let y = b[k * n + j] as usize;
                        if y != 0 {
                            let p = self.mul[x * q + y] as usize;
                            let o = &mut out[i * n + j];
                            *o = self.add[*o as usize * q + p];
                        }
                    }
                }
            }
            out
        }
    }
}

/// A finite Chevalley group enumerated by breadth-first closure. Elements
/// are indexed in discovery order; `right[g·k + s]` is the index of `g·s_k`.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    pub type_name: String,
    pub q: u64,
    pub dim: usize,
    elements: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, u32>,
    pub generators: Vec<Vec<u8>>,
    /// `(root, t)` of each generator `E_root(t)`.
    pub labels: Vec<(usize, Scalar)>,
    gen_inverse: Vec<usize>,
    right: Vec<u32>,
    words: Vec<Vec<u16>>,
}

/// Generators `E_{±S_i}(t)`, `t ∈ F_q^×`, closed under inverses.
pub fn enumerate(g: &Chevalley) -> Result<EnumeratedGroup, GroupError> {
    let datum = g.datum();
    let q = g.field().order().ok_or_else(|| GroupError::Inconsistent("enumeration needs a finite field".into()))?;
    let predicted = predicted_order(datum, q)?;
    if predicted > ENUMERATION_LIMIT.into() {
        return Err(GroupError::TooLarge(ENUMERATION_LIMIT));
    }
    let cf = CompactField::new(g.field())?;
    let n = g.dim();
    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for i in 0..datum.rank() {
        for r in [i, datum.neg(i)] {
            for t in g.field().units()? {
                let m = g.gen_e(r, &t)?;
                generators.push(m.to_bytes().expect("small field"));
                labels.push((r, t));
            }
        }
    }
    let gen_inverse: Vec<usize> = labels
        .iter()
        .map(|(r, t)| labels.iter().position(|(r2, t2)| r2 == r && *t2 == t.neg()).expect("inverse generator"))
        .collect();
    let k = generators.len();
    let id = Matrix::identity(g.field(), n).to_bytes().expect("small field");
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0u32);
    let mut right: Vec<u32> = Vec::new();
    let mut parent: Vec<(u32, u16)> = vec![(0, u16::MAX)];
    let mut frontier: Vec<u32> = vec![0];
    while !frontier.is_empty() {
        let products: Vec<Vec<Vec<u8>>> = frontier
            .par_iter()
            .map(|&e| generators.iter().map(|s| cf.mat_mul(&elements[e as usize], s, n)).collect())
            .collect();
        let mut next = Vec::new();
        for (&e, prods) in frontier.iter().zip(products) {
            for (s, p) in prods.into_iter().enumerate() {
                let target = match index.get(&p) {
                    Some(&t) => t,
                    None => {
                        let t = elements.len() as u32;
                        if elements.len() >= ENUMERATION_LIMIT {
                            return Err(GroupError::TooLarge(ENUMERATION_LIMIT));
                        }
                        index.insert(p.clone(), t);
                        elements.push(p);
                        parent.push((e, s as u16));
                        next.push(t);
                        t
                    }
                };
                let slot = e as usize * k + s;
                if right.len() <= slot {
                    right.resize(slot + 1, u32::MAX);
                }
                right[slot] = target;
            }
        }
        frontier = next;
    }
    let mut words: Vec<Vec<u16>> = vec![Vec::new(); elements.len()];
    for e in 1..elements.len() {
        let (p, s) = parent[e];
        let mut w = words[p as usize].clone();
        w.push(s);
        words[e] = w;
    }
    Ok(EnumeratedGroup {
        type_name: datum.type_name().to_string(),
        q,
        dim: n,
        elements,
        index,
        generators,
        labels,
        gen_inverse,
        right,
        words,
    })
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn element(&self, e: usize) -> &[u8] {
        &self.elements[e]
    }

    pub fn index_of(&self, bytes: &[u8]) -> Option<usize> {
        self.index.get(bytes).map(|&i| i as usize)
    }

    /// Generator indices whose product (left to right) is element `e`.
    pub fn word(&self, e: usize) -> &[u16] {
        &self.words[e]
    }

    /// Element `e` as a word of generator atoms.
    pub fn atoms(&self, e: usize) -> Vec<super::WordAtom> {
        self.words[e].iter().map(|&s| super::WordAtom::e(self.labels[s as usize].0, self.labels[s as usize].1.clone())).collect()
    }

    pub fn mul_gen(&self, e: usize, s: usize) -> usize {
        self.right[e * self.generators.len() + s] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |cur, &s| self.mul_gen(cur, s as usize))
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.words[a].iter().rev().fold(0, |cur, &s| self.mul_gen(cur, self.gen_inverse[s as usize]))
    }

    fn gen_element(&self, s: usize) -> usize {
        self.mul_gen(0, s)
    }

    /// `s·x·s⁻¹` for generator `s`.
    pub fn conj_gen(&self, s: usize, x: usize) -> usize {
        let sx = self.mul(self.gen_element(s), x);
        self.mul_gen(sx, self.gen_inverse[s])
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ab_ai = self.mul(ab, self.inverse(a));
        self.mul(ab_ai, self.inverse(b))
    }

    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut h = Subgroup::trivial(self.order());
        for &x in gens {
            h.add_generator(self, x);
        }
        h
    }

    /// Smallest normal subgroup containing `gens`; stops early once it
    /// exceeds half the group.
    pub fn normal_closure(&self, gens: &[usize]) -> Subgroup {
        let mut h = self.subgroup(gens);
        let mut pos = 0;
        while pos < h.gens.len() {
            let y = h.gens[pos];
            for s in 0..self.num_generators() {
                let c = self.conj_gen(s, y);
                if !h.contains(c) {
                    h.add_generator(self, c);
                    if 2 * h.order() > self.order() {
                        return Subgroup::whole(self);
                    }
                }
            }
            pos += 1;
        }
        h
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .into_par_iter()
            .filter(|&g| (0..self.num_generators()).all(|s| self.conj_gen(s, g) == g))
            .collect()
    }

    /// Conjugacy classes as orbits under conjugation by the generators.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class = vec![usize::MAX; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() {
            if class[g] != usize::MAX {
                continue;
            }
            let c = out.len();
            class[g] = c;
            let mut orbit = vec![g];
            let mut pos = 0;
            while pos < orbit.len() {
                let x = orbit[pos];
                for s in 0..self.num_generators() {
                    let y = self.conj_gen(s, x);
                    if class[y] == usize::MAX {
                        class[y] = c;
                        orbit.push(y);
                    }
                }
                pos += 1;
            }
            out.push(orbit);
        }
        out
    }
}

/// A subgroup as a membership mask plus a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    member: Vec<bool>,
    elements: Vec<usize>,
    pub gens: Vec<usize>,
}

impl Subgroup {
    fn trivial(n: usize) -> Self {
        let mut member = vec![false; n];
        member[0] = true;
        Subgroup { member, elements: vec![0], gens: Vec::new() }
    }

    fn whole(g: &EnumeratedGroup) -> Self {
        Subgroup { member: vec![true; g.order()], elements: (0..g.order()).collect(), gens: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Enlarges the subgroup to `⟨H, y⟩`.
    pub fn add_generator(&mut self, g: &EnumeratedGroup, y: usize) {
        if self.member[y] {
            return;
        }
        self.gens.push(y);
        let old = self.elements.len();
        for idx in 0..old {
            let z = g.mul(self.elements[idx], y);
            if !self.member[z] {
                self.member[z] = true;
                self.elements.push(z);
            }
        }
        let mut pos = old;
        while pos < self.elements.len() {
            let x = self.elements[pos];
            for &s in &self.gens {
                let z = g.mul(x, s);
                if !self.member[z] {
                    self.member[z] = true;
                    self.elements.push(z);
                }
            }
            pos += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub order: usize,
    pub derived_order: usize,
    pub derived_is_whole: bool,
    pub center_order: usize,
    pub center_trivial: bool,
    pub classes: usize,
    pub simple: bool,
}

pub fn structure_checks(g: &EnumeratedGroup) -> StructureReport {
    let k = g.num_generators();
    let mut comms = Vec::new();
    for a in 0..k {
        for b in 0..k {
            comms.push(g.commutator(g.gen_element(a), g.gen_element(b)));
        }
    }
    let derived = g.normal_closure(&comms);
    let center = g.center();
    let classes = g.conjugacy_classes();
    let simple = g.order() > 1
        && derived.order() == g.order()
        && classes.par_iter().filter(|c| c[0] != 0).all(|c| g.normal_closure(&[c[0]]).order() == g.order());
    StructureReport {
        order: g.order(),
        derived_order: derived.order(),
        derived_is_whole: derived.order() == g.order(),
        center_order: center.len(),
        center_trivial: center.len() == 1,
        classes: classes.len(),
        simple,
    }
}
