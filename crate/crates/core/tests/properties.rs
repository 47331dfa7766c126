use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qtatoms_core::diagrams::{partitions, shadow, Cell, LatticeDiagram, Partition, GISTOL_CAP};
use qtatoms_core::exactpoly::{Exp, MPoly};
use qtatoms_core::pieri::conj::{c_or_zero, hole_weight};
use qtatoms_core::pieri::lemma::{lemma12_residual, random_instance, rhs_degree_in_z};
use qtatoms_core::pieri::Route;
use qtatoms_core::qtfield::{parse_scalar, QTPoly, QTScalar, Subst};
use qtatoms_core::symfunc::{htilde, nabla, Basis, SymFun};
use rand::SeedableRng;

fn poly() -> impl Strategy<Value = QTPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 1..4)
        .prop_map(|ts| QTPoly::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn scalar() -> impl Strategy<Value = QTScalar> {
    (poly(), poly()).prop_filter_map("zero denominator", |(a, b)| {
        if b.is_zero() {
            None
        } else {
            QTScalar::normalize(a, b).ok()
        }
    })
}

fn partition(lo: usize, hi: usize) -> impl Strategy<Value = Partition> {
    (lo..=hi, any::<prop::sample::Index>()).prop_map(|(n, i)| {
        let ps = partitions(n);
        ps[i.index(ps.len())].clone()
    })
}

fn partition_cell(lo: usize, hi: usize) -> impl Strategy<Value = (Partition, Cell)> {
    (partition(lo, hi), any::<prop::sample::Index>()).prop_map(|(mu, i)| {
        let cells = mu.cells();
        let c = cells[i.index(cells.len())];
        (mu, c)
    })
}

fn mpoly(n: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 2 * n), -4i64..=4), 1..5).prop_map(move |ts| {
        MPoly::from_terms(
            n,
            ts.into_iter().map(|(e, c)| (Exp::from_slices(&e[..n], &e[n..]), BigRational::from_integer(c.into()))),
        )
    })
}

fn symfun(n: usize) -> impl Strategy<Value = SymFun> {
    let coeff = poly().prop_map(QTScalar::from_poly);
    prop::collection::vec((any::<prop::sample::Index>(), coeff), 1..4).prop_map(move |ts| {
        let ps = partitions(n);
        SymFun::from_coeffs(n, Basis::S, ts.into_iter().map(|(i, c)| (ps[i.index(ps.len())].clone(), c))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul_ref(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn normal_form_and_involutions(a in scalar(), b in scalar()) {
        let again = QTScalar::normalize(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(a == b, a.num().mul(b.den()) == b.num().mul(a.den()));
        prop_assert_eq!(a.substitute(Subst::Invert).substitute(Subst::Invert), a.clone());
        prop_assert_eq!(a.substitute(Subst::Swap).substitute(Subst::Swap), a.clone());
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn apolar_form(p in mpoly(2), q in mpoly(2), r in mpoly(2)) {
        prop_assert_eq!(p.apolar(&q).unwrap(), q.apolar(&p).unwrap());
        let lhs = p.mul(&q).apply_operator(&r).unwrap();
        let rhs = p.apply_operator(&q.apply_operator(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sigma = [1usize, 0];
        prop_assert_eq!(
            p.diagonal_act(&sigma).unwrap().apolar(&q.diagonal_act(&sigma).unwrap()).unwrap(),
            p.apolar(&q).unwrap()
        );
    }

    #[test]
    fn shadow_products((mu, c) in partition_cell(1, 9)) {
        let f = shadow(&mu, c).unwrap();
        let px = f.x.iter().fold(f.x0, |a, &x| a * x);
        let pu = f.u.iter().fold(qtatoms_core::qtfield::Mono::ONE, |a, &u| a * u);
        prop_assert_eq!(px, pu);
        for s in 0..f.m {
            prop_assert_eq!(f.alpha(s).size() + 1, mu.size());
        }
    }

    #[test]
    fn gistol_invariance((mu, c) in partition_cell(2, 7), rp in any::<prop::sample::Index>(), cp in any::<prop::sample::Index>()) {
        let d = LatticeDiagram::hole(&mu, c).unwrap();
        let occ = d.occupancy();
        let canon = d.gistol_canonical(GISTOL_CAP).unwrap();
        // rotate rows and columns by sampled amounts
        let (nr, nc) = (occ.len(), occ[0].len());
        let (a, b) = (rp.index(nr), cp.index(nc));
        let moved: Vec<Vec<bool>> = (0..nr).map(|i| (0..nc).map(|j| occ[(i + a) % nr][(j + b) % nc]).collect()).collect();
        let cells: Vec<Cell> = moved.iter().enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, &x)| x).map(move |(j, _)| Cell::new(i, j)))
            .collect();
        let other = LatticeDiagram::new(cells).unwrap();
        prop_assert_eq!(other.gistol_canonical(GISTOL_CAP).unwrap(), canon.clone());
        let twice = qtatoms_core::diagrams::gistol_canonical(&canon, GISTOL_CAP).unwrap();
        prop_assert_eq!(twice, canon);
    }

    #[test]
    fn basis_round_trip(f in symfun(4), b in prop::sample::select(vec![Basis::M, Basis::E, Basis::H, Basis::P, Basis::Htilde])) {
        let back = f.to_basis(b).unwrap().to_basis(Basis::S).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn dp1_adjoint_to_e1(f in symfun(3), g in symfun(4)) {
        let e1 = SymFun::basis_elem(Basis::E, &"[1]".parse().unwrap());
        let lhs = f.mul(&e1).unwrap().hall(&g).unwrap();
        let rhs = f.hall(&g.dp1().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn htilde_symmetries(mu in partition(1, 6)) {
        let h = htilde(&mu).unwrap();
        let t = mu.t_weight().to_scalar();
        prop_assert!(h.down().unwrap().scale(&t).equals(&h).unwrap());
        let swapped = htilde(&mu.conjugate()).unwrap().substitute(Subst::Swap).unwrap();
        prop_assert!(swapped.equals(&h).unwrap());
        let nn = nabla(&nabla(&h).unwrap()).unwrap();
        prop_assert!(nn.equals(&h.scale(&t.mul_ref(&t))).unwrap());
    }

    #[test]
    fn c_is_self_dual((mu, c) in partition_cell(2, 6)) {
        let ch = c_or_zero(&mu, c, Route::ShadowPieri).unwrap();
        let flipped = ch.down().unwrap().scale(&hole_weight(&mu, c).to_scalar());
        prop_assert!(flipped.equals(&ch).unwrap());
    }

    #[test]
    fn interpolation_identity(seed in any::<u64>(), m in 1usize..=4, z in scalar().prop_filter("z = 0", |z| !z.is_zero())) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (xs, us) = random_instance(&mut rng, m);
        prop_assert!(lemma12_residual(&xs, &us, &z).unwrap().is_zero());
        let d = rhs_degree_in_z(&xs, &us).unwrap();
        prop_assert!(matches!(d, Some(d) if (d as usize) < m));
    }
}
