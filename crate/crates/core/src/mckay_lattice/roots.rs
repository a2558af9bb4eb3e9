use std::collections::HashSet;

use num_traits::Zero;

use super::{McKayQuiver, TauVector};

/// Roots of the finite root system at the trivial vertex, embedded in ℤ^I
/// with coordinate 0 at that vertex. Computed by closing the simple roots
/// under simple reflections.
pub fn finite_roots(q: &McKayQuiver) -> Vec<Vec<i64>> {
    let n = q.num_vertices();
    let t = q.trivial_vertex();
    let c = q.cartan();
    let simple: Vec<usize> = (0..n).filter(|&i| i != t).collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for &i in &simple {
        let mut e = vec![0; n];
        e[i] = 1;
        if seen.insert(e.clone()) {
            queue.push(e);
        }
    }
    let mut k = 0;
    while k < queue.len() {
        let b = queue[k].clone();
        k += 1;
        for &j in &simple {
            // s_j(b) = b - <b, α_j> α_j
            let pairing: i64 = simple.iter().map(|&i| b[i] * c[i][j]).sum();
            if pairing == 0 {
                continue;
            }
            let mut r = b.clone();
            r[j] -= pairing;
            if seen.insert(r.clone()) {
                queue.push(r);
            }
        }
    }
    queue.sort();
    queue
}

/// τ avoids every root hyperplane: τ·δ ≠ 0 and (τ·β)/(τ·δ) ∉ ℤ for all
/// finite roots β.
pub fn is_generic(q: &McKayQuiver, tau: &TauVector) -> bool {
    let td = tau.pair(q.delta());
    if td.is_zero() {
        return false;
    }
    finite_roots(q).iter().all(|b| !(tau.pair(b) / &td).is_integer())
}

#[cfg(test)]
mod tests {
    use super::super::dynkin::finite_root_count;
    use super::super::tests::quiver;
    use super::*;
    use crate::charrep::GroupDescriptor;
    use crate::scalar::qf;

    #[test]
    fn root_counts() {
        use GroupDescriptor::*;
        let mut groups = vec![Trivial, BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral];
        groups.extend((1..=6).map(Cyclic));
        groups.extend((2..=5).map(BinaryDihedral));
        for g in groups {
            let q = quiver(g);
            let roots = finite_roots(&q);
            assert_eq!(roots.len(), finite_root_count(q.affine_type()), "{g}");
            // every root has squared length 2 under the Cartan form
            for r in &roots {
                let cr = q.apply_cartan(r);
                let qf: i64 = r.iter().zip(&cr).map(|(a, b)| a * b).sum();
                assert_eq!(qf, 2);
            }
        }
    }

    // enumerate affine real roots β + kδ for |k| ≤ bound and test τ·α directly
    fn generic_by_enumeration(q: &McKayQuiver, tau: &TauVector, bound: i64) -> bool {
        if tau.pair(q.delta()).is_zero() {
            return false;
        }
        for b in finite_roots(q) {
            for k in -bound..=bound {
                let a: Vec<i64> = b.iter().zip(q.delta()).map(|(x, d)| x + k * d).collect();
                if tau.pair(&a).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn genericity_examples() {
        let q = quiver(GroupDescriptor::Trivial);
        assert!(is_generic(&q, &TauVector::from_ints(&[1])));
        assert!(!is_generic(&q, &TauVector::from_ints(&[0])));
        let q = quiver(GroupDescriptor::Cyclic(2));
        assert!(is_generic(&q, &TauVector(vec![qf(1, 1), qf(1, 3)])));
        assert!(!is_generic(&q, &TauVector::from_ints(&[1, -1])));
        assert!(!is_generic(&q, &TauVector::from_ints(&[1, 0])));
        // (1,1): τ·(k+1, k) = 2k + 1 never vanishes
        assert!(is_generic(&q, &TauVector::from_ints(&[1, 1])));
        let q3 = quiver(GroupDescriptor::Cyclic(3));
        for t in [[1, 1, 1], [1, 2, 3], [1, -1, 0], [2, 0, -1], [1, 1, -1]] {
            let tau = TauVector::from_ints(&t);
            assert_eq!(is_generic(&q3, &tau), generic_by_enumeration(&q3, &tau, 12), "{t:?}");
        }
    }
}
