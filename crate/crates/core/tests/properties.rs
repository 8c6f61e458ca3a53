use proptest::prelude::*;

use hodgekit::deformation::{jb_certificate, kappa_image, tangent_space};
use hodgekit::exact::monomial::mono_basis;
use hodgekit::exact::rational::rat;
use hodgekit::exact::sparse::{sparse_rank, SparseVec};
use hodgekit::gauss_manin::{connection_matrix, lower_pole, reduce_to_frame, Family, Frame};
use hodgekit::jacobian::hilbert_series_oracle;
use hodgekit::mhs::HypersurfacePair;
use hodgekit::samples::{random_smooth_cubic, random_smooth_cubic_pair};
use hodgekit::twisted::TwistedTable;
use hodgekit::{ExactMatrix, JacobianRing, Polynomial, Rational};
use num_traits::Zero;

fn matrix(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
            .prop_map(|rows| ExactMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect()))
    })
}

fn square(n: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| ExactMatrix::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| rat(x)).collect()).collect()))
}

fn form(n_vars: usize, degree: u32) -> impl Strategy<Value = Polynomial> {
    let basis = mono_basis(n_vars, degree);
    let len = basis.len();
    proptest::collection::vec((0..len, -4i64..=4), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(n_vars, terms.into_iter().map(|(i, c)| (basis[i].clone(), rat(c))))
    })
}

fn poly(n_vars: usize) -> impl Strategy<Value = Polynomial> {
    (form(n_vars, 0), form(n_vars, 1), form(n_vars, 2)).prop_map(|(a, b, c)| &(&a + &b) + &c)
}

fn column(m: &ExactMatrix, c: usize) -> Vec<Rational> {
    m.column(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in matrix(5)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let rows: Vec<SparseVec> = (0..m.rows())
            .map(|r| m.row(r).iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        prop_assert_eq!(sparse_rank(&rows, m.cols()), m.rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3), b in square(3)) {
        prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz(a in poly(3), b in poly(3), i in 0usize..3) {
        let lhs = (&a * &b).partial_derivative(i);
        let rhs = &(&a.partial_derivative(i) * &b) + &(&a * &b.partial_derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity(f in form(4, 3)) {
        let mut sum = Polynomial::zero(4);
        for (i, g) in f.gradient().iter().enumerate() {
            sum = &sum + &(&Polynomial::var(4, i) * g);
        }
        prop_assert_eq!(sum, f.scale(&rat(3)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn smooth_cubics_follow_the_oracle(seed in 0u64..10_000, n_vars in 3usize..=5) {
        let ring = JacobianRing::from_polynomial(random_smooth_cubic(n_vars, seed)).unwrap();
        let sigma = ring.hypersurface().socle_degree();
        let mut oracle: Vec<usize> = hilbert_series_oracle(n_vars - 1, 3).into_iter().map(|c| c as usize).collect();
        oracle.push(0);
        prop_assert_eq!(ring.hilbert_function(sigma + 1).unwrap(), oracle);
    }

    #[test]
    fn macaulay_duality_and_self_adjointness(seed in 0u64..10_000, u in form(4, 1)) {
        prop_assume!(!u.is_zero());
        let ring = JacobianRing::from_polynomial(random_smooth_cubic(4, seed)).unwrap();
        let sigma = ring.hypersurface().socle_degree();
        for a in 0..=sigma {
            prop_assert!(ring.socle_pairing(a).unwrap().is_nondegenerate());
        }
        // <u x, y> = <x, u y>
        for a in 0..sigma {
            let lhs = ring.mult_operator(&u, a).unwrap().transpose().mul(&ring.socle_pairing(a + 1).unwrap().matrix);
            let rhs = ring.socle_pairing(a).unwrap().matrix.mul(&ring.mult_operator(&u, sigma - a - 1).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ideal_elements_reduce_to_zero(seed in 0u64..10_000, p in form(4, 3), g in form(4, 1), j in 0usize..4) {
        let ring = JacobianRing::from_polynomial(random_smooth_cubic(4, seed)).unwrap();
        let piece = ring.piece_with_cofactors(3).unwrap();
        let dj = &ring.hypersurface().partials()[j];
        prop_assert_eq!(piece.reduce(&(&p + &(&g * dj))).unwrap(), piece.reduce(&p).unwrap());
        let (coords, cof) = piece.decompose(&p).unwrap();
        let mut back = piece.representative(&coords);
        for (c, d) in cof.iter().zip(ring.hypersurface().partials()) {
            back = &back + &(c * d);
        }
        prop_assert_eq!(back, p);
    }

    #[test]
    fn koszul_syzygies_do_not_change_reduction(seed in 0u64..10_000, b in form(4, 5), a in form(4, 1), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let f = random_smooth_cubic(4, seed);
        let ring = JacobianRing::from_polynomial(f.clone()).unwrap();
        let frame = Frame::standard(&ring).unwrap();
        let (_, cof) = ring.piece_with_cofactors(5).unwrap().decompose(&b).unwrap();
        let grad = f.gradient();
        let mut shifted = cof.clone();
        shifted[i] = &shifted[i] + &(&a * &grad[j]);
        shifted[j] = &shifted[j] - &(&a * &grad[i]);
        let lhs = reduce_to_frame(&ring, &frame, &lower_pole(&cof, 3), 2).unwrap();
        let rhs = reduce_to_frame(&ring, &frame, &lower_pole(&shifted, 3), 2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn small_tables_satisfy_duality_and_vanishing(seed in 0u64..10_000, n_vars in 3usize..=4) {
        let ring = JacobianRing::from_polynomial(random_smooth_cubic(n_vars, seed)).unwrap();
        let n = ring.hypersurface().dim();
        let table = TwistedTable::compute(&ring, 0..=n, -4..=4).unwrap();
        prop_assert!(table.euler_failures().is_empty());
        prop_assert!(table.serre_failures().is_empty());
        prop_assert!(table.nakano_failures().is_empty());
    }

    /// Connection columns of a changed frame, computed from lifted numerators
    /// at a common pole order, agree with `M * P`.
    #[test]
    fn connection_is_frame_independent(seed in 0u64..10_000, g in form(5, 3), entries in proptest::collection::vec(-3i64..=3, 100)) {
        let f = random_smooth_cubic(5, seed);
        let fam = Family::new(f.clone(), vec![g.clone()]).unwrap();
        let frame = fam.frame().unwrap();
        let m = connection_matrix(&fam, 0).unwrap().matrix;
        let dim = frame.dim();
        let top = *frame.poles().last().unwrap();
        // unit lower-triangular change of basis
        let mut p = ExactMatrix::identity(dim);
        for r in 0..dim {
            for c in 0..r {
                p.set(r, c, rat(entries[(r * dim + c) % entries.len()]));
            }
        }
        let mp = m.mul(&p);
        for i in 0..dim {
            let mut num = Polynomial::zero(5);
            let mut dnum = Polynomial::zero(5);
            for (j, e) in frame.entries.iter().enumerate() {
                let c = p.get(j, i).clone();
                if c.is_zero() {
                    continue;
                }
                let lift = top - e.pole;
                let b = Polynomial::monomial(e.numerator.clone()).scale(&c);
                num = &num + &(&b * &f.pow(lift));
                if lift > 0 {
                    dnum = &dnum + &(&(&b * &f.pow(lift - 1)) * &g).scale(&rat(lift as i64));
                }
            }
            let target = &(&dnum * &f) - &(&g * &num).scale(&rat(top as i64));
            let col = reduce_to_frame(fam.ring(), &frame, &target, top + 1).unwrap();
            prop_assert_eq!(col, column(&mp, i));
        }
    }

    #[test]
    fn connection_is_linear_in_the_direction(seed in 0u64..10_000, u in form(5, 3), v in form(5, 3), c in -3i64..=3) {
        let f = random_smooth_cubic(5, seed);
        let w = &u + &v.scale(&rat(c));
        let fam = Family::new(f, vec![u, v, w]).unwrap();
        let m = |i| connection_matrix(&fam, i).unwrap().matrix;
        prop_assert_eq!(m(2), m(0).add(&m(1).scale(&rat(c))));
    }

    #[test]
    fn contraction_is_coordinate_invariant(seed in 0u64..10_000, i in 0usize..4, j in 0usize..4, c in -2i64..=2) {
        prop_assume!(i != j && c != 0);
        let f = random_smooth_cubic_pair(5, seed);
        // x_i -> x_i + c x_j keeps the hyperplane x4 = 0
        let images: Vec<Polynomial> = (0..5)
            .map(|k| if k == i { &Polynomial::var(5, i) + &Polynomial::var(5, j).scale(&rat(c)) } else { Polynomial::var(5, k) })
            .collect();
        let before = HypersurfacePair::new(f.clone()).unwrap();
        let after = HypersurfacePair::new(f.substitute(&images)).unwrap();
        prop_assert!(jb_certificate(&before).unwrap().passed);
        prop_assert!(jb_certificate(&after).unwrap().passed);
        let (t0, t1) = (tangent_space(&before).unwrap(), tangent_space(&after).unwrap());
        prop_assert_eq!((t0.dim, t0.lift_dim), (t1.dim, t1.lift_dim));
        for deg in 2..=5 {
            prop_assert!(kappa_image(&after, deg).unwrap().equals_jacobian_ideal);
        }
    }
}
