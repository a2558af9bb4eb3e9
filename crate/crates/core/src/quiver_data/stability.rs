use serde::Serialize;

use super::QuiverData;
use crate::error::QuiverError;
use crate::QSubspace;

/// Outcome of a closure computation: the fixed-point subspace family and
/// the total dimension after each sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureCertificate {
    pub holds: bool,
    pub subspaces: Vec<QSubspace>,
    pub dims_per_sweep: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureJson {
    pub holds: bool,
    pub dims: Vec<usize>,
    pub dims_per_sweep: Vec<usize>,
}

impl ClosureCertificate {
    pub fn to_json(&self) -> ClosureJson {
        ClosureJson {
            holds: self.holds,
            dims: self.subspaces.iter().map(|s| s.dim()).collect(),
            dims_per_sweep: self.dims_per_sweep.clone(),
        }
    }
}

fn total(s: &[QSubspace]) -> usize {
    s.iter().map(|x| x.dim()).sum()
}

/// Smallest B-closed family containing the images of I; stable iff it is
/// everything.
pub fn is_stable(d: &QuiverData) -> Result<ClosureCertificate, QuiverError> {
    d.check_shapes()?;
    let n = d.num_vertices();
    let mut s: Vec<QSubspace> = (0..n).map(|k| QSubspace::column_space(&d.i[k])).collect();
    let mut dims = vec![total(&s)];
    let cap: usize = d.v.iter().sum::<usize>() + 1;
    for _ in 0..cap {
        let mut next = s.clone();
        for (k, a) in d.quiver.arrows().iter().enumerate() {
            next[a.inn] = next[a.inn].sum(&s[a.out].image(&d.b[k]));
            next[a.out] = next[a.out].sum(&s[a.inn].image(&d.b_star[k]));
        }
        let t = total(&next);
        let done = t == *dims.last().unwrap();
        s = next;
        dims.push(t);
        if done {
            break;
        }
    }
    let holds = s.iter().all(|x| x.is_full());
    Ok(ClosureCertificate { holds, subspaces: s, dims_per_sweep: dims })
}

/// Largest B-closed family inside ker J; costable iff it is zero.
pub fn is_costable(d: &QuiverData) -> Result<ClosureCertificate, QuiverError> {
    d.check_shapes()?;
    let n = d.num_vertices();
    let mut u: Vec<QSubspace> = (0..n).map(|k| QSubspace::kernel_of(&d.j[k])).collect();
    let mut dims = vec![total(&u)];
    let cap: usize = d.v.iter().sum::<usize>() + 1;
    for _ in 0..cap {
        let mut next = u.clone();
        for (k, a) in d.quiver.arrows().iter().enumerate() {
            next[a.out] = next[a.out].intersect(&u[a.inn].preimage(&d.b[k]));
            next[a.inn] = next[a.inn].intersect(&u[a.out].preimage(&d.b_star[k]));
        }
        let t = total(&next);
        let done = t == *dims.last().unwrap();
        u = next;
        dims.push(t);
        if done {
            break;
        }
    }
    let holds = u.iter().all(|x| x.is_zero());
    Ok(ClosureCertificate { holds, subspaces: u, dims_per_sweep: dims })
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::scalar::q;
    use crate::QSubspace;

    #[test]
    fn trivial_group_examples() {
        let quiver = quiver_for(GroupDescriptor::Trivial).unwrap();
        let mut d = QuiverData::zeros(quiver, vec![1], vec![1], TauVector::zero(1)).unwrap();
        assert!(!is_stable(&d).unwrap().holds);
        assert!(!is_costable(&d).unwrap().holds);
        d.i[0][(0, 0)] = q(1);
        d.j[0][(0, 0)] = q(1);
        assert!(is_stable(&d).unwrap().holds);
        assert!(is_costable(&d).unwrap().holds);
    }

    #[test]
    fn closure_is_monotone_and_bounded() {
        let d = cycle_point(4, &TauVector::from_ints(&[1, 2, 3, 4])).unwrap();
        let c = is_stable(&d).unwrap();
        assert!(c.holds);
        assert!(c.dims_per_sweep.windows(2).all(|w| w[0] <= w[1]));
        assert!(c.dims_per_sweep.len() <= d.v.iter().sum::<usize>() + 2);
        let u = is_costable(&d).unwrap();
        assert!(u.dims_per_sweep.windows(2).all(|w| w[0] >= w[1]));
    }

    // the certificate must contain I(W) and be closed under every arrow
    #[test]
    fn certificate_is_closed() {
        use rand::SeedableRng;
        let quiver = quiver_for(GroupDescriptor::Cyclic(3)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let mut d =
                random_quiver_data(&quiver, &[2, 1, 2], &[1, 0, 0], &TauVector::zero(3), &mut rng).unwrap();
            d.b[0] = QMatrix::zeros(1, 2);
            let c = is_stable(&d).unwrap();
            for (k, a) in quiver.arrows().iter().enumerate() {
                assert!(c.subspaces[a.inn].contains_subspace(&c.subspaces[a.out].image(&d.b[k])));
                assert!(c.subspaces[a.out].contains_subspace(&c.subspaces[a.inn].image(&d.b_star[k])));
            }
            assert!(c.subspaces[0].contains_subspace(&QSubspace::column_space(&d.i[0])));
        }
    }
}
