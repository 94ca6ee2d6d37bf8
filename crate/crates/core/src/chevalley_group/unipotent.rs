use std::collections::VecDeque;

use super::commutator::term_param;
use super::Chevalley;
use crate::error::GroupError;
use crate::field::Scalar;

const STEP_LIMIT: usize = 2_000_000;

/// Rewrites a product of positive root elements into canonical root order.
pub fn normalize_u(g: &Chevalley, atoms: &[(usize, Scalar)]) -> Result<Vec<(usize, Scalar)>, GroupError> {
    normalize_u_by(g, atoms, |r| r)
}

/// Collection with respect to the total order given by `key`. Out-of-order
/// neighbours are swapped using `E_a(t)E_b(s) = E_b(s)E_a(t)(E_a(-t), E_b(-s))`.
pub fn normalize_u_by<K: Ord>(
    g: &Chevalley,
    atoms: &[(usize, Scalar)],
    key: impl Fn(usize) -> K,
) -> Result<Vec<(usize, Scalar)>, GroupError> {
    let datum = g.datum();
    if let Some((r, _)) = atoms.iter().find(|(r, _)| !datum.is_positive(*r)) {
        return Err(GroupError::InvalidWord(format!("{} is not positive", datum.root_label(*r))));
    }
    let field = g.field();
    let mut todo: VecDeque<(usize, Scalar)> = atoms.iter().filter(|(_, t)| !t.is_zero()).cloned().collect();
    let mut done: Vec<(usize, Scalar)> = Vec::with_capacity(todo.len());
    let mut steps = 0;
    while let Some((a, t)) = todo.pop_front() {
        steps += 1;
        if steps > STEP_LIMIT {
            return Err(GroupError::NoTermination(STEP_LIMIT));
        }
        let Some((b, s)) = done.last().cloned() else {
            done.push((a, t));
            continue;
        };
        match key(b).cmp(&key(a)) {
            std::cmp::Ordering::Less => done.push((a, t)),
            std::cmp::Ordering::Equal => {
                let sum = &s + &t;
                done.pop();
                if !sum.is_zero() {
                    done.push((b, sum));
                }
            }
            std::cmp::Ordering::Greater => {
                done.pop();
                let (mt, ms) = (s.neg(), t.neg());
                let extra: Vec<(usize, Scalar)> = g
                    .terms(b, a)?
                    .iter()
                    .map(|term| (term.root, term_param(field, term, &mt, &ms)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                for item in extra.into_iter().rev() {
                    todo.push_front(item);
                }
                todo.push_front((b, s));
                todo.push_front((a, t));
            }
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::super::{random_scalar, WordAtom};
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn product(g: &Chevalley, atoms: &[(usize, Scalar)]) -> crate::matrix::Matrix {
        let w: Vec<WordAtom> = atoms.iter().map(|(r, t)| WordAtom::e(*r, t.clone())).collect();
        g.word_matrix(&w).unwrap()
    }

    #[test]
    fn ordered_input_unchanged() {
        let g = Chevalley::from_type("A2", None, "F5".parse().unwrap()).unwrap();
        let k = g.field().clone();
        let atoms = vec![(0, k.from_i64(1)), (1, k.from_i64(2)), (2, k.from_i64(3))];
        assert_eq!(normalize_u(&g, &atoms).unwrap(), atoms);
    }

    #[test]
    fn a2_swap_adds_commutator() {
        let g = Chevalley::from_type("A2", None, "Q".parse().unwrap()).unwrap();
        let k = g.field().clone();
        let atoms = vec![(1, k.from_i64(2)), (0, k.from_i64(3))];
        let out = normalize_u(&g, &atoms).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out[0], (0, k.from_i64(3)));
        assert_eq!(out[1], (1, k.from_i64(2)));
        assert_eq!(out[2].1.as_rational().unwrap().numer().to_string().trim_start_matches('-'), "6");
        assert_eq!(product(&g, &atoms), product(&g, &out));
    }

    #[test]
    fn b3_idempotent_and_exact() {
        let g = Chevalley::from_type("B3", None, "F3".parse().unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = g.datum().num_positive();
        for _ in 0..20 {
            let atoms: Vec<(usize, Scalar)> =
                (0..10).map(|_| (rng.gen_range(0..r), random_scalar(g.field(), &mut rng))).collect();
            let once = normalize_u(&g, &atoms).unwrap();
            assert!(once.windows(2).all(|w| w[0].0 < w[1].0));
            assert_eq!(normalize_u(&g, &once).unwrap(), once);
            assert_eq!(product(&g, &atoms), product(&g, &once));
        }
    }
}
