use nakajima_core::mckay_lattice::TauVector;
use nakajima_core::monad::{
    assemble, certify, cohomology_dims, framing_check, hilbert_fit, monad_report, z_injectivity_check,
};
use nakajima_core::quiver_data::{act, cm_point, cycle_point, quiver_for, random_gauge, random_quiver_data, QuiverData};
use nakajima_core::charrep::GroupDescriptor;
use nakajima_core::scalar::{q, qf};
use nakajima_core::QMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binom2(m: i64) -> i64 {
    if m < 2 { 0 } else { m * (m - 1) / 2 }
}

#[test]
fn composition_is_moment_residual_on_random_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (g, v, w) in [
        (GroupDescriptor::Trivial, vec![2], vec![1]),
        (GroupDescriptor::Cyclic(2), vec![1, 1], vec![1, 0]),
        (GroupDescriptor::Cyclic(3), vec![1, 2, 1], vec![0, 1, 1]),
    ] {
        let quiver = quiver_for(g).unwrap();
        let tau = TauVector((0..v.len()).map(|i| q(i as i64 + 1)).collect());
        let d = random_quiver_data(&quiver, &v, &w, &tau, &mut rng).unwrap();
        let m = assemble(&d, 3).unwrap();
        for deg in &m.degrees {
            assert!(deg.composition_matches(), "b∘a differs from (μ−τ)z² in degree {}", deg.degree);
            assert!(deg.is_equivariant());
        }
        assert!(!certify(&m).composition_zero);
    }
}

#[test]
fn empty_gauge_gives_the_structure_sheaf() {
    let quiver = quiver_for(GroupDescriptor::Trivial).unwrap();
    let d = QuiverData::zeros(quiver, vec![0], vec![1], TauVector(vec![q(1)])).unwrap();
    let m = assemble(&d, 5).unwrap();
    let dims = cohomology_dims(&m).unwrap();
    let expect: Vec<usize> = (0..=5).map(|k| binom2(k + 2) as usize).collect();
    assert_eq!(dims.total, expect);
    let fit = hilbert_fit(&m);
    assert_eq!(fit.rank, 1);
    assert_eq!(fit.h_at_minus1, 0);
}

#[test]
fn calogero_moser_points() {
    for (k, tau) in [(1usize, q(1)), (2, q(1)), (3, qf(2, 3))] {
        let x: Vec<_> = (0..k).map(|i| q(i as i64)).collect();
        let p: Vec<_> = (0..k).map(|i| q(2 * i as i64 + 1)).collect();
        let d = cm_point(&x, &p, &tau).unwrap();
        let n = 6;
        let m = assemble(&d, n).unwrap();
        let cert = certify(&m);
        assert!(cert.certified, "{:?}", cert.diagnostic());
        let fit = hilbert_fit(&m);
        assert_eq!(fit.rank, 1);
        assert_eq!(fit.h_at_minus1, -(k as i64));
        for t in 0..=n as i64 {
            assert_eq!(fit.values[t as usize], binom2(t + 2) - k as i64);
        }
        let t0 = fit.stabilization_degree.expect("dimensions stabilise");
        let dims = cohomology_dims(&m).unwrap().total;
        for t in t0..=n {
            assert_eq!(dims[t] as i64, fit.values[t]);
        }
        let fr = framing_check(&m, 3).unwrap();
        assert!(fr.ok, "{fr:?}");
        assert!(fr.expected.iter().zip(&fr.degrees).all(|(e, d)| *e == d + 1));
        assert!(z_injectivity_check(&m).unwrap().injective);
        println!("k={k} dims={dims:?} t0={t0} surj_from={:?}", cert.surjective_from);
    }
}

#[test]
fn cycle_points() {
    for n in 2..=4u32 {
        let tau = TauVector((0..n).map(|i| q(i as i64 + 1)).collect());
        let d = cycle_point(n, &tau).unwrap();
        let m = assemble(&d, 5).unwrap();
        let rep = monad_report(&m, 3);
        assert!(rep.certificate.certified, "{:?}", rep.certificate.diagnostic());
        assert_eq!(rep.rank, 1);
        assert_eq!(rep.h1_at_minus1, n as i64);
        assert_eq!(rep.framing_ok, Some(true), "{:?}", rep.framing);
        assert_eq!(rep.z_injective, Some(true));
        println!("n={n} {:?} t0={:?}", rep.cohomology_dims, rep.stabilization_degree);
    }
}

#[test]
fn unstable_data_is_not_certified() {
    let mut d = cm_point(&[q(0), q(1)], &[q(0), q(0)], &q(1)).unwrap();
    d.i[0] = QMatrix::zeros(2, 1);
    d.j[0] = QMatrix::zeros(1, 2);
    let m = assemble(&d, 4).unwrap();
    let cert = certify(&m);
    assert!(!cert.certified);
    assert!(cohomology_dims(&m).is_err());
    let rep = monad_report(&m, 3);
    assert_eq!(rep.cohomology_dims, None);
    assert_eq!(rep.stabilization_degree, None);
}

#[test]
fn gauge_equivalent_data_give_the_same_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let d = cm_point(&[q(0), q(1), q(3)], &[q(1), q(2), q(0)], &q(1)).unwrap();
    let g = random_gauge(&d.v, &mut rng);
    let e = act(&g, &d).unwrap();
    let (m1, m2) = (assemble(&d, 5).unwrap(), assemble(&e, 5).unwrap());
    assert_eq!(cohomology_dims(&m1).unwrap(), cohomology_dims(&m2).unwrap());
    let (r1, r2) = (monad_report(&m1, 3), monad_report(&m2, 3));
    assert_eq!(r1.ranks_a, r2.ranks_a);
    assert_eq!(r1.ranks_b, r2.ranks_b);
}

#[test]
fn non_cyclic_groups_are_rejected() {
    let quiver = quiver_for(GroupDescriptor::BinaryDihedral(2)).unwrap();
    let v = vec![0; quiver.num_vertices()];
    let mut w = v.clone();
    w[0] = 1;
    let tau = TauVector(vec![q(1); v.len()]);
    let d = QuiverData::zeros(quiver, v, w, tau).unwrap();
    assert!(assemble(&d, 2).is_err());
}
