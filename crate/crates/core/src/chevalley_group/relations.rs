use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::commutator::verify_with;
use super::{enumerate, random_unit, Chevalley};
use crate::error::GroupError;
use crate::root_data::{cartan_divisor, predicted_order, weyl_poincare, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergReport {
    pub additive: bool,
    pub commutator: bool,
    pub torus: bool,
    pub conjugation: bool,
}

impl SteinbergReport {
    pub fn all(&self) -> bool {
        self.additive && self.commutator && self.torus && self.conjugation
    }
}

/// The four defining relations as matrix identities with random parameters.
pub fn steinberg_check(g: &Chevalley, trials: usize, rng: &mut impl Rng) -> Result<SteinbergReport, GroupError> {
    let d = g.datum().clone();
    let k = g.field().clone();
    let nr = d.num_roots();
    let mut rep = SteinbergReport { additive: true, commutator: true, torus: true, conjugation: true };
    for x in 0..nr {
        for _ in 0..trials {
            let (a, b) = (random_unit(&k, rng), random_unit(&k, rng));
            let e = g.gen_e(x, &a)?.mul(&g.gen_e(x, &b)?);
            rep.additive &= e == g.gen_e(x, &(&a + &b))?;
            let h = g.gen_h(x, &a)?.mul(&g.gen_h(x, &b)?);
            rep.torus &= h == g.gen_h(x, &(&a * &b))?;
            let n = g.gen_n(x, &a)?;
            let lhs = n.mul(&g.gen_e(x, &b)?).mul(&n.inverse()?);
            let rhs = g.gen_e(d.neg(x), &(&a.pow(-2)? * &b))?;
            rep.conjugation &= lhs == rhs;
        }
        for y in 0..nr {
            if y != x && y != d.neg(x) {
                rep.commutator &= verify_with(g, x, y, trials, rng)?;
            }
        }
    }
    Ok(rep)
}

/// Order of the kernel of the presentation: the number of torus
/// parameters with `∏ t_i^{a_ij} = 1`.
pub fn steinberg_center_order(datum: &RootDatum, q: u64) -> u64 {
    cartan_divisor(datum, q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareReport {
    pub lhs: BigInt,
    pub rhs: BigRational,
    pub equal: bool,
}

/// `Σ_w q^{l(w)}` against `∏_M (q^{l(M)+1} − 1)/(q^{l(M)} − 1)`; at `q = 1`
/// each factor is read as `(l(M)+1)/l(M)`.
pub fn poincare_identity(datum: &RootDatum, q: u64) -> Result<PoincareReport, GroupError> {
    let counts = weyl_poincare(datum);
    let qb = BigInt::from(q);
    let mut lhs = BigInt::zero();
    let mut power = BigInt::one();
    for c in &counts {
        lhs += &power * BigInt::from(*c);
        power *= &qb;
    }
    let mut rhs = BigRational::one();
    for r in 0..datum.num_positive() {
        let l = datum.height(r) as usize;
        let (num, den) = if q == 1 {
            (BigInt::from(l + 1), BigInt::from(l))
        } else {
            (num_traits::pow(qb.clone(), l + 1) - 1, num_traits::pow(qb.clone(), l) - 1)
        };
        rhs *= BigRational::new(num, den);
    }
    let equal = rhs == BigRational::from_integer(lhs.clone());
    Ok(PoincareReport { lhs, rhs, equal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub predicted: BigInt,
    pub bruhat_count: BigInt,
    pub enumerated: Option<usize>,
    pub equal: bool,
}

/// `predicted_order(q)` against `(1/d)·q^r·(q−1)^m·Σ_w q^{l(w)}` and, when
/// `enumerate` is set, against the breadth-first order.
pub fn order_reconciliation(g: &Chevalley, run_enumeration: bool) -> Result<OrderReport, GroupError> {
    let datum = g.datum();
    let q = g.field().order().ok_or_else(|| GroupError::Inconsistent("order needs a finite field".into()))?;
    let predicted = predicted_order(datum, q)?;
    let p = poincare_identity(datum, q)?;
    let qb = BigInt::from(q);
    let num = num_traits::pow(qb.clone(), datum.num_positive()) * num_traits::pow(qb - 1, datum.rank()) * p.lhs;
    let bruhat_count = num / BigInt::from(cartan_divisor(datum, q));
    let enumerated = if run_enumeration { Some(enumerate(g)?.order()) } else { None };
    let equal = predicted == bruhat_count && enumerated.map_or(true, |e| BigInt::from(e) == predicted);
    Ok(OrderReport { predicted, bruhat_count, enumerated, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn poincare_small() {
        let a2 = RootDatum::build("A2", None).unwrap();
        let p = poincare_identity(&a2, 2).unwrap();
        assert_eq!(p.lhs, BigInt::from(21));
        assert!(p.equal);
        assert_eq!(poincare_identity(&a2, 1).unwrap().lhs, BigInt::from(6));
        assert!(poincare_identity(&a2, 1).unwrap().equal);
        assert!(poincare_identity(&RootDatum::build("B2", None).unwrap(), 3).unwrap().equal);
    }

    #[test]
    fn center_orders() {
        let d = |t: &str| RootDatum::build(t, None).unwrap();
        assert_eq!(steinberg_center_order(&d("A2"), 4), 3);
        assert_eq!(steinberg_center_order(&d("A1"), 3), 2);
        assert_eq!(steinberg_center_order(&d("A2"), 2), 1);
    }

    #[test]
    fn a1_3_reconciles() {
        let g = Chevalley::from_type("A1", None, FieldDescriptor::finite(3).unwrap()).unwrap();
        let r = order_reconciliation(&g, true).unwrap();
        assert_eq!(r.predicted, BigInt::from(12));
        assert!(r.equal);
    }

    #[test]
    fn relations_a2_f7() {
        let g = Chevalley::from_type("A2", None, FieldDescriptor::finite(7).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(steinberg_check(&g, 2, &mut rng).unwrap().all());
    }
}
