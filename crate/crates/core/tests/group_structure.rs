use chevalley_core::chevalley_group::{enumerate, Chevalley, EnumeratedGroup};
use chevalley_core::root_data::{cartan_divisor, weyl_length_counts};
use chevalley_core::FieldDescriptor;

fn setup(t: &str, q: u64) -> (Chevalley, EnumeratedGroup) {
    let g = Chevalley::from_type(t, None, FieldDescriptor::finite(q).unwrap()).unwrap();
    let e = enumerate(&g).unwrap();
    (g, e)
}

fn lookup(e: &EnumeratedGroup, m: chevalley_core::matrix::Matrix) -> usize {
    e.index_of(&m.to_bytes().unwrap()).expect("generator lies in the group")
}

fn root_elements(g: &Chevalley, e: &EnumeratedGroup, positive: bool) -> Vec<usize> {
    let d = g.datum();
    let mut out = Vec::new();
    for r in (0..d.num_roots()).filter(|&r| d.is_positive(r) == positive) {
        for t in g.field().units().unwrap() {
            out.push(lookup(e, g.gen_e(r, &t).unwrap()));
        }
    }
    out
}

#[test]
fn unipotent_subgroups_meet_trivially() {
    for (t, q) in [("A2", 2), ("A2", 3), ("B2", 2), ("G2", 2)] {
        let (g, e) = setup(t, q);
        let u = e.subgroup(&root_elements(&g, &e, true));
        let v = e.subgroup(&root_elements(&g, &e, false));
        let r = g.datum().num_positive() as u32;
        assert_eq!(u.order() as u64, q.pow(r), "{t}({q})");
        assert_eq!(v.order(), u.order());
        let meet = u.elements().iter().filter(|&&x| v.contains(x)).count();
        assert_eq!(meet, 1, "{t}({q})");
    }
}

#[test]
fn monomial_quotient_is_weyl_group() {
    for (t, q) in [("A2", 2), ("A2", 3), ("B2", 3)] {
        let (g, e) = setup(t, q);
        let d = g.datum();
        let m = d.rank();
        let mut h_gens = Vec::new();
        for i in 0..m {
            for s in g.field().units().unwrap() {
                h_gens.push(lookup(&e, g.gen_h(i, &s).unwrap()));
            }
        }
        let h = e.subgroup(&h_gens);
        let one = g.field().one();
        let mut n_gens = h_gens.clone();
        n_gens.extend((0..m).map(|i| lookup(&e, g.gen_n(i, &one).unwrap())));
        let n = e.subgroup(&n_gens);
        let w: u64 = weyl_length_counts(d, 100_000).unwrap().iter().sum();
        let h_expected = (q - 1).pow(m as u32) / cartan_divisor(d, q);
        assert_eq!(h.order() as u64, h_expected, "{t}({q})");
        assert_eq!(n.order() % h.order(), 0);
        assert_eq!((n.order() / h.order()) as u64, w, "{t}({q})");
    }
}

#[test]
fn enumeration_is_deterministic() {
    let (_, a) = setup("B2", 2);
    let (_, b) = setup("B2", 2);
    assert_eq!(a.order(), b.order());
    assert!((0..a.order()).all(|k| a.element(k) == b.element(k)));
}
