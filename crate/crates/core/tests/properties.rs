use proptest::prelude::*;

use weakyd::algebra::{Algebra, Multiplier};
use weakyd::exact::{
    descend_pairs, image_and_quotient, kernel, kron, leg_permute, split_idempotent, tensor_space, Field, LinMap, Mat,
    SVec, Scalar, Space,
};
use weakyd::examples::{
    character_module, corpus_instance, graded_comodule, sign_characters, standard_comodules, standard_modules,
};
use weakyd::rep::{firm_tensor, induced_r_actions_comodule, induced_r_actions_module};
use weakyd::wmb::{base_algebra, structure_suite, Component, WmbStructure};
use weakyd::yd::{check_yd, phi_hat_inverse};

fn rational() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..12).prop_map(|(n, d)| Scalar::from(n).div(&Scalar::from(d)))
}

fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(-2i64..3, rows * cols)
        .prop_map(move |v| Mat::from_fn(rows, cols, |i, j| Scalar::from(v[i * cols + j])))
}

fn element(n: usize) -> impl Strategy<Value = SVec> {
    proptest::collection::vec(-3i64..4, n)
        .prop_map(|v| v.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(i, c)| (i, Scalar::from(c))).collect())
}

/// The same structure in the basis given by the columns of `p`.
fn transport(w: &WmbStructure, p: &Mat) -> WmbStructure {
    let pi = p.inverse().unwrap();
    let pp = kron(p, p);
    let ppi = kron(&pi, &pi);
    let n = w.dim();
    let s = Space::numbered("b", n);
    let ss = tensor_space(&s, &s);
    let conj = |m: &LinMap| LinMap::new(ss.clone(), ss.clone(), ppi.mul(&m.mat).mul(&pp)).unwrap();
    let mult = LinMap::new(ss.clone(), s.clone(), pi.mul(&w.algebra.mult_map().mat).mul(&pp)).unwrap();
    let alg = Algebra::new(s.clone(), &mult).unwrap();
    let eps = Mat::from_fn(1, n, |_, j| w.counit[j].clone()).mul(p);
    let counit = (0..n).map(|j| eps.get(0, j).clone()).collect();
    let anti = w.antipode.as_ref().map(|a| LinMap::new(s.clone(), s.clone(), pi.mul(&a.mat).mul(p)).unwrap());
    WmbStructure::new(
        alg,
        conj(&w.t1),
        conj(&w.t2),
        conj(&w.t3),
        conj(&w.t4),
        conj(&w.e.left),
        conj(&w.e.right),
        counit,
        anti,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws_over_the_rationals(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b), a.clone());
        }
        prop_assert_eq!(Field::Rational.parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn field_laws_mod_p(x in 0i64..1000, y in 1i64..1000, p in prop::sample::select(vec![2u32, 3, 7, 101, 2_147_483_647])) {
        let f = Field::prime(p).unwrap();
        let (a, b) = (f.int(x), f.int(y));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b).mul(&b.inv().unwrap()), a.clone());
        }
        prop_assert_eq!(a.add(&a.neg()), f.zero());
        prop_assert_eq!(f.parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| small_mat(r, c))) {
        let f = LinMap::new(Space::numbered("s", m.cols()), Space::numbered("t", m.rows()), m.clone()).unwrap();
        let (k, inc) = kernel(&f);
        prop_assert_eq!(k.dim() + f.rank(), m.cols());
        prop_assert!(m.mul(&inc.mat).is_zero());
        let iq = image_and_quotient(&f);
        prop_assert_eq!(iq.image.dim() + iq.cokernel.dim(), m.rows());
        prop_assert!(iq.projection.mat.mul(&m).is_zero());
        prop_assert_eq!(iq.image.dim(), f.rank());
    }

    #[test]
    fn idempotents_split(n in 2usize..6, k in 1usize..4, seed in small_mat(5, 3), seed2 in small_mat(3, 5)) {
        prop_assume!(k <= n);
        let m = seed.select_rows(&(0..n).collect::<Vec<_>>()).select_cols(&(0..k).collect::<Vec<_>>());
        let q = seed2.select_rows(&(0..k).collect::<Vec<_>>()).select_cols(&(0..n).collect::<Vec<_>>());
        let inner = q.mul(&m).inverse();
        prop_assume!(inner.is_some());
        let e = m.mul(&inner.unwrap()).mul(&q);
        let s = Space::numbered("v", n);
        let e = LinMap::new(s.clone(), s, e).unwrap();
        let sp = split_idempotent(&e).unwrap();
        prop_assert_eq!(sp.i.compose(&sp.p).mat, e.mat.clone());
        prop_assert_eq!(sp.p.compose(&sp.i).mat, Mat::identity(k));
        prop_assert!(split_idempotent(&LinMap::new(e.source.clone(), e.target.clone(), e.mat.add(&Mat::identity(n))).unwrap()).is_err());
    }

    #[test]
    fn flipping_legs_twice_is_the_identity(m in small_mat(6, 6)) {
        let p = Space::numbered("p", 2);
        let q = Space::numbered("q", 3);
        let f = LinMap::new(tensor_space(&p, &q), tensor_space(&p, &q), m).unwrap();
        let g = leg_permute(&leg_permute(&f, "21", &[]).unwrap(), "21", &[]).unwrap();
        prop_assert_eq!(g.mat, f.mat);
    }

    #[test]
    fn descent_recovers_a_map(g in small_mat(3, 4), pres in small_mat(4, 7)) {
        prop_assume!(pres.rank() == 4);
        let pairs = (0..7).map(|j| (pres.col_sparse(j), g.apply_sparse(&pres.col_sparse(j))));
        let cols = descend_pairs(4, 3, pairs).unwrap();
        prop_assert_eq!(Mat::from_sparse_cols(3, &cols), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn comultiplication_is_multiplicative(
        name in prop::sample::select(vec!["kP2", "k^P2", "kS3", "k(Z2+Z2)"]),
        a in element(6), b in element(6),
    ) {
        let w = corpus_instance(name).unwrap().structure;
        let n = w.dim();
        let cut = |v: &SVec| v.iter().filter(|(i, _)| *i < n).cloned().collect::<SVec>();
        let (a, b) = (cut(&a), cut(&b));
        let lhs = w.delta(&w.mul(&a, &b)).unwrap();
        let rhs = w.mul2(&w.delta(&a).unwrap(), &w.delta(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(Multiplier::of_element(&w.algebra, &a).check_compatible(&w.algebra).passed);
        prop_assert!(w.delta_multiplier(&a).unwrap().check_compatible(w.pair_algebra()).passed);
    }

    #[test]
    fn corrupted_entries_are_detected(
        name in prop::sample::select(vec!["kP2", "k^P2", "kZ3"]),
        comp in prop::sample::select(Component::ALL.to_vec()),
        r in 0usize..256, c in 0usize..256, delta in prop::sample::select(vec![1i64, -1, 2, 5]),
    ) {
        let w = corpus_instance(name).unwrap().structure;
        let (rows, cols) = w.component_shape(comp).unwrap();
        let (r, c) = (r % rows, c % cols);
        let v = w.entry(comp, r, c).add(&Scalar::from(delta));
        let bad = w.with_entry(comp, r, c, v).unwrap();
        prop_assert!(!structure_suite(&bad).0.passed(), "{} {} ({r},{c}) undetected", name, comp.name());
    }

    #[test]
    fn suite_is_basis_independent(
        name in prop::sample::select(vec!["kP2", "k^P2", "kZ2", "kZ3"]),
        upper in proptest::collection::vec(-1i64..2, 16),
    ) {
        let w = corpus_instance(name).unwrap().structure;
        let n = w.dim();
        // unipotent upper triangular change of basis
        let p = Mat::from_fn(n, n, |i, j| if i == j { Scalar::one() } else if i < j { Scalar::from(upper[i * 4 + j]) } else { Scalar::zero() });
        let moved = transport(&w, &p);
        let (rep, b) = structure_suite(&moved);
        prop_assert!(rep.passed(), "{}", rep);
        prop_assert_eq!(b.unwrap().dim(), base_algebra(&w).unwrap().dim());
    }

    #[test]
    fn one_dimensional_verdicts_agree(
        name in prop::sample::select(vec!["kZ2", "kZ3", "kS3"]),
        k in 0usize..8, h in 0usize..6,
    ) {
        let inst = corpus_instance(name).unwrap();
        let w = &inst.structure;
        let b = base_algebra(w).unwrap();
        let chars = sign_characters(&inst.groupoid);
        let chi = &chars[k % chars.len()];
        let h = h % w.dim();
        let v = character_module(w, "x", chi);
        let c = graded_comodule(w, "x", h);
        let chk = check_yd(w, &b, &v, &c, &[], &[]);
        let ver = chk.verdicts;
        prop_assert!(ver.normalized());
        prop_assert!(ver.conditions_agree(), "{}", chk.report);
        // a grading is Yetter-Drinfeld exactly when it commutes with the group
        let g = &inst.groupoid;
        let central = (0..w.dim()).all(|x| g.compose[x][h] == g.compose[h][x]);
        prop_assert_eq!(ver.is_yd(), central);
    }

    #[test]
    fn phi_hat_is_invertible(
        name in prop::sample::select(vec!["kP2", "k^P2", "kZ2", "k(Z2+Z2)"]),
        i in 0usize..8, j in 0usize..8,
    ) {
        let inst = corpus_instance(name).unwrap();
        let w = &inst.structure;
        let b = base_algebra(w).unwrap();
        let mods = standard_modules(&inst).unwrap();
        let comods = standard_comodules(&inst).unwrap();
        let v = &mods[i % mods.len()].1;
        let m = &comods[j % comods.len()].1;
        let inv = phi_hat_inverse(w, &b, v, m).unwrap();
        prop_assert!(inv.report.passed(), "{}", inv.report);
        let vx = induced_r_actions_module(w, &b, v).unwrap();
        let mx = induced_r_actions_comodule(w, &b, m).unwrap();
        let t = firm_tensor(&b, &vx, &mx).unwrap();
        prop_assert_eq!(t.pi.mat.mul(&t.iota.mat), Mat::identity(t.dim()));
    }
}
