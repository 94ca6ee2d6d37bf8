use rand::Rng;

use super::{random_unit, Chevalley};
use crate::error::GroupError;
use crate::field::{FieldDescriptor, Scalar};
use crate::lie_algebra::LieData;
use crate::matrix::Matrix;
use crate::root_category::ladder;

/// One factor `E_L(C·t^i·s^j)` of `(E_X(t), E_Y(s))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub root: usize,
    pub c: i64,
    pub i: u32,
    pub j: u32,
}

/// Terms of `(E_X(t), E_Y(s)) = ∏ E_{L_ij}(C_ij t^i s^j)` in order of
/// increasing `i + j`. The commutator is `a b a⁻¹ b⁻¹`.
pub fn commutator_expand(lie: &LieData, x: usize, y: usize) -> Result<Vec<CommutatorTerm>, GroupError> {
    let datum = lie.datum();
    let l = ladder(datum, x, y).map_err(|e| GroupError::Inconsistent(e.to_string()))?;
    let at = |i: i64, j: i64| l.entry(datum, i, j);
    let g = |a: usize, b: usize| lie.gamma(a, b);
    let mut out = Vec::new();
    for (i, j) in l.mixed_terms() {
        let root = at(i, j).expect("mixed term exists");
        let l11 = at(1, 1).expect("ladder is connected");
        let (num, den): (i64, i64) = match (i, j) {
            (1, 1) => (g(x, y), 1),
            (2, 1) => (g(x, y) * g(x, l11), 2),
            (1, 2) => (-g(y, x) * g(y, l11), 2),
            (3, 1) => {
                let l21 = at(2, 1).expect("ladder");
                (g(x, y) * g(x, l11) * g(x, l21), 6)
            }
            (3, 2) => {
                let (l21, l31) = (at(2, 1).expect("ladder"), at(3, 1).expect("ladder"));
                (g(x, y) * g(x, l11) * g(x, l21) * g(y, l31), 3)
            }
            (1, 3) => {
                let l12 = at(1, 2).expect("ladder");
                (-g(y, x) * g(y, l11) * g(y, l12), 6)
            }
            (2, 3) => {
                let (l12, l13) = (at(1, 2).expect("ladder"), at(1, 3).expect("ladder"));
                (g(y, x) * g(y, l11) * g(y, l12) * g(x, l13), 6)
            }
            _ => return Err(GroupError::Inconsistent(format!("unexpected ladder term ({i}, {j})"))),
        };
        if num % den != 0 {
            return Err(GroupError::Inconsistent(format!("C_{i}{j} = {num}/{den} is not integral")));
        }
        out.push(CommutatorTerm { root, c: num / den, i: i as u32, j: j as u32 });
    }
    Ok(out)
}

pub(crate) fn term_param(field: &FieldDescriptor, term: &CommutatorTerm, t: &Scalar, s: &Scalar) -> Scalar {
    let mut v = field.from_i64(term.c);
    for _ in 0..term.i {
        v = &v * t;
    }
    for _ in 0..term.j {
        v = &v * s;
    }
    v
}

fn commutator_sides(
    g: &Chevalley,
    terms: &[CommutatorTerm],
    x: usize,
    y: usize,
    t: &Scalar,
    s: &Scalar,
) -> Result<(Matrix, Matrix), GroupError> {
    let lhs = g
        .gen_e(x, t)?
        .mul(&g.gen_e(y, s)?)
        .mul(&g.gen_e(x, &t.neg())?)
        .mul(&g.gen_e(y, &s.neg())?);
    let mut rhs = g.identity();
    for term in terms {
        rhs = rhs.mul(&g.gen_e(term.root, &term_param(g.field(), term, t, s))?);
    }
    Ok((lhs, rhs))
}

/// Checks the commutator formula as a matrix identity for `trials` random
/// nonzero `(t, s)`.
pub fn verify_commutator(
    lie: &LieData,
    x: usize,
    y: usize,
    field: &FieldDescriptor,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<bool, GroupError> {
    let g = Chevalley::new(lie.clone(), field.clone());
    verify_with(&g, x, y, trials, rng)
}

pub(crate) fn verify_with(g: &Chevalley, x: usize, y: usize, trials: usize, rng: &mut impl Rng) -> Result<bool, GroupError> {
    let terms = commutator_expand(g.lie(), x, y)?;
    for _ in 0..trials {
        let t = random_unit(g.field(), rng);
        let s = random_unit(g.field(), rng);
        let (lhs, rhs) = commutator_sides(g, &terms, x, y, &t, &s)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebra::{build_lie, Scheme};
    use crate::root_category::Section;
    use crate::root_data::RootDatum;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lie(t: &str) -> LieData {
        let d = RootDatum::build(t, None).unwrap();
        build_lie(&d, &Section::initial(&d), Scheme::preferred(&d)).unwrap()
    }

    fn all_pairs(l: &LieData, field: &str, trials: usize) {
        let k: FieldDescriptor = field.parse().unwrap();
        let g = Chevalley::new(l.clone(), k);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let d = l.datum();
        for x in 0..d.num_roots() {
            for y in 0..d.num_roots() {
                if x != y && d.neg(x) != y {
                    assert!(verify_with(&g, x, y, trials, &mut rng).unwrap(), "{} {x} {y}", d.type_name());
                }
            }
        }
    }

    #[test]
    fn orthogonal_pair_commutes() {
        let l = lie("B2");
        // α2 and α1+α2 are short and orthogonal; no root between them sums
        let d = l.datum();
        let x = d.parse_root("[1,1]").unwrap();
        let y = d.parse_root("[-1,1]");
        if let Ok(y) = y {
            assert!(commutator_expand(&l, x, y).unwrap().len() <= 1);
        }
        let a = lie("A3");
        let d = a.datum();
        assert!(commutator_expand(&a, 0, 2).unwrap().is_empty());
        assert_eq!(commutator_expand(&a, 0, 1).unwrap().len(), 1);
        let _ = d;
    }

    #[test]
    fn g2_magnitudes() {
        let l = lie("G2");
        let d = l.datum();
        let mut found = false;
        for x in 0..d.num_roots() {
            for y in 0..d.num_roots() {
                if x == y || d.neg(x) == y {
                    continue;
                }
                let t = commutator_expand(&l, x, y).unwrap();
                let shape: Vec<(u32, u32)> = t.iter().map(|c| (c.i, c.j)).collect();
                if shape == [(1, 1), (1, 2), (2, 1)] || shape == [(1, 1), (2, 1), (1, 2)] {
                    let mags: Vec<i64> = t.iter().map(|c| c.c.abs()).collect();
                    assert_eq!(mags, vec![2, 3, 3]);
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn formula_holds_a2_b2_g2() {
        for t in ["A2", "B2", "G2"] {
            all_pairs(&lie(t), "F5", 3);
        }
        all_pairs(&lie("G2"), "Q", 2);
    }

    #[test]
    fn corrupted_table_fails() {
        let l = lie("A2");
        let bad = l.with_constant(0, 1, -l.gamma(0, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k: FieldDescriptor = "F5".parse().unwrap();
        assert!(!verify_commutator(&bad, 0, 1, &k, 5, &mut rng).unwrap());
    }
}
