use num_traits::Zero;
use rand::Rng;

use super::{quiver_for, GaugeElement, QuiverData};
use crate::charrep::GroupDescriptor;
use crate::error::QuiverError;
use crate::mckay_lattice::{McKayQuiver, TauVector};
use crate::scalar::{fmt_rational, q};
use crate::{QMatrix, Rational};

/// Small-denominator rational: numerator in [-3, 3], denominator in {1, 2, 3}.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(-3..=3);
    let d: i64 = rng.gen_range(1..=3);
    Rational::new(n.into(), d.into())
}

fn random_matrix<R: Rng>(r: usize, c: usize, rng: &mut R) -> QMatrix {
    QMatrix::from_fn(r, c, |_, _| random_rational(rng))
}

/// Random (B, I, J) with the given dimension vectors; τ is attached as given.
pub fn random_quiver_data<R: Rng>(
    quiver: &std::sync::Arc<McKayQuiver>,
    v: &[usize],
    w: &[usize],
    tau: &TauVector,
    rng: &mut R,
) -> Result<QuiverData, QuiverError> {
    let mut d = QuiverData::zeros(quiver.clone(), v.to_vec(), w.to_vec(), tau.clone())?;
    for (k, a) in quiver.arrows().iter().enumerate() {
        d.b[k] = random_matrix(v[a.inn], v[a.out], rng);
        d.b_star[k] = random_matrix(v[a.out], v[a.inn], rng);
    }
    for k in 0..v.len() {
        d.i[k] = random_matrix(v[k], w[k], rng);
        d.j[k] = random_matrix(w[k], v[k], rng);
    }
    Ok(d)
}

/// Random invertible gauge element: unit triangular factors times a
/// nonzero diagonal.
pub fn random_gauge<R: Rng>(v: &[usize], rng: &mut R) -> GaugeElement {
    let g = v
        .iter()
        .map(|&k| {
            let lower = QMatrix::from_fn(k, k, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Greater => random_rational(rng),
                std::cmp::Ordering::Equal => q(1),
                std::cmp::Ordering::Less => Rational::zero(),
            });
            let upper = QMatrix::from_fn(k, k, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Less => random_rational(rng),
                std::cmp::Ordering::Equal => {
                    let mut x = random_rational(rng);
                    while x.is_zero() {
                        x = random_rational(rng);
                    }
                    x
                }
                std::cmp::Ordering::Greater => Rational::zero(),
            });
            lower.mul(&upper)
        })
        .collect();
    GaugeElement { g }
}

/// Calogero–Moser point for the trivial group: B₁ = diag(x), (B₂)_ij =
/// τ/(x_j − x_i) off the diagonal and p on it, I = ones, J = τ·ones.
pub fn cm_point(x: &[Rational], p: &[Rational], tau: &Rational) -> Result<QuiverData, QuiverError> {
    let k = x.len();
    if p.len() != k {
        return Err(QuiverError::Invalid("x and p must have equal length".into()));
    }
    if tau.is_zero() {
        return Err(QuiverError::ZeroTau);
    }
    for i in 0..k {
        for j in 0..i {
            if x[i] == x[j] {
                return Err(QuiverError::RepeatedEigenvalue(fmt_rational(&x[i])));
            }
        }
    }
    let quiver = quiver_for(GroupDescriptor::Trivial)?;
    let mut d = QuiverData::zeros(quiver, vec![k], vec![1], TauVector(vec![tau.clone()]))?;
    d.b[0] = QMatrix::from_fn(k, k, |i, j| if i == j { x[i].clone() } else { Rational::zero() });
    d.b_star[0] = QMatrix::from_fn(k, k, |i, j| if i == j { p[i].clone() } else { tau / (&x[j] - &x[i]) });
    d.i[0] = QMatrix::from_fn(k, 1, |_, _| q(1));
    d.j[0] = QMatrix::from_fn(1, k, |_, _| tau.clone());
    Ok(d)
}

/// Explicit solution on the cycle with v = δ and w = e₀: every Q-arrow acts
/// by 1, reverse arrows carry partial sums of τ.
pub fn cycle_point(n: u32, tau: &TauVector) -> Result<QuiverData, QuiverError> {
    if n < 2 {
        return Err(QuiverError::Invalid("cycle_point needs n >= 2".into()));
    }
    let nn = n as usize;
    if tau.len() != nn {
        return Err(QuiverError::Shape(format!("tau must have {nn} entries")));
    }
    let quiver = quiver_for(GroupDescriptor::Cyclic(n))?;
    let mut w = vec![0; nn];
    w[0] = 1;
    let mut d = QuiverData::zeros(quiver.clone(), vec![1; nn], w, tau.clone())?;
    let tail = |i: usize| -> Rational { tau.0[i + 1..].iter().sum() };
    for (k, a) in quiver.arrows().iter().enumerate() {
        d.b[k] = QMatrix::scalar(1, q(1));
        // for n = 2 both arrows run 0 -> 1 and only the first one carries τ
        let forward = if nn == 2 { k == 0 } else { a.inn == a.out + 1 };
        let c = if forward { tail(a.out) } else { Rational::zero() };
        d.b_star[k] = QMatrix::scalar(1, c);
    }
    d.i[0] = QMatrix::scalar(1, q(1));
    d.j[0] = QMatrix::scalar(1, tau.0.iter().sum());
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::scalar::{q, qf};

    #[test]
    fn cm_points_solve_the_moment_map() {
        for (x, tau) in [(vec![q(0), q(1)], q(1)), (vec![q(0), q(1), q(2)], q(2)), (vec![q(5)], qf(2, 3))] {
            let p = vec![q(0); x.len()];
            let d = cm_point(&x, &p, &tau).unwrap();
            assert!(residual_is_zero(&d).unwrap());
            assert!(is_stable(&d).unwrap().holds);
            assert!(is_costable(&d).unwrap().holds);
            let k = x.len();
            let comm = d.b[0].mul(&d.b_star[0]).sub(&d.b_star[0].mul(&d.b[0]));
            let defect = comm.sub(&QMatrix::scalar(k, tau.clone()));
            assert_eq!(defect.rank(), 1);
            assert_eq!(moment_jacobian_rank(&d).unwrap(), k * k);
        }
        assert!(matches!(cm_point(&[q(1), q(1)], &[q(0), q(0)], &q(1)), Err(QuiverError::RepeatedEigenvalue(_))));
        assert!(matches!(cm_point(&[q(1)], &[q(0)], &q(0)), Err(QuiverError::ZeroTau)));
    }

    #[test]
    fn cycle_points_solve_the_moment_map() {
        let cases = [(2, vec![0, 0]), (2, vec![1, -1]), (3, vec![1, 1, 1]), (4, vec![1, 2, -1, 5])];
        for (n, t) in cases {
            let tau = TauVector::from_ints(&t);
            let d = cycle_point(n, &tau).unwrap();
            assert!(residual_is_zero(&d).unwrap(), "n={n}");
            assert!(is_stable(&d).unwrap().holds);
            assert_eq!(d.j[0][(0, 0)], t.iter().map(|&x| q(x)).sum());
        }
        let d = cycle_point(2, &TauVector::from_ints(&[0, 0])).unwrap();
        assert!(!is_costable(&d).unwrap().holds);
        let d = cycle_point(3, &TauVector(vec![q(1), qf(1, 3), qf(1, 5)])).unwrap();
        assert_eq!(moment_jacobian_rank(&d).unwrap(), 3);
    }
}
