//! Embedded affine ADE diagrams with their marks, for comparison.

use crate::charrep::GroupDescriptor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl std::fmt::Display for AffineType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AffineType::A(n) => write!(f, "A~{n}"),
            AffineType::D(n) => write!(f, "D~{n}"),
            AffineType::E6 => write!(f, "E~6"),
            AffineType::E7 => write!(f, "E~7"),
            AffineType::E8 => write!(f, "E~8"),
        }
    }
}

pub fn affine_type_of(g: GroupDescriptor) -> AffineType {
    match g {
        GroupDescriptor::Trivial => AffineType::A(0),
        GroupDescriptor::Cyclic(n) => AffineType::A(n as usize - 1),
        GroupDescriptor::BinaryDihedral(n) => AffineType::D(n as usize + 2),
        GroupDescriptor::BinaryTetrahedral => AffineType::E6,
        GroupDescriptor::BinaryOctahedral => AffineType::E7,
        GroupDescriptor::BinaryIcosahedral => AffineType::E8,
    }
}

/// An affine diagram: generalized Cartan matrix, marks, and the index of
/// the extending vertex (mark 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDiagram {
    pub cartan: Vec<Vec<i64>>,
    pub marks: Vec<i64>,
    pub extending: usize,
}

fn from_edges(n: usize, edges: &[(usize, usize)], marks: Vec<i64>) -> AffineDiagram {
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        c[i][j] -= 1;
        c[j][i] -= 1;
    }
    AffineDiagram { cartan: c, marks, extending: 0 }
}

// Star with a center and arms of the given lengths; marks listed per arm from the center out.
fn star(center_mark: i64, arms: &[&[i64]]) -> AffineDiagram {
    let mut marks = vec![center_mark];
    let mut edges = Vec::new();
    let mut extending = 0;
    for arm in arms {
        let mut prev = 0;
        for &m in arm.iter() {
            let v = marks.len();
            marks.push(m);
            edges.push((prev, v));
            prev = v;
            if m == 1 {
                extending = v;
            }
        }
    }
    let mut d = from_edges(marks.len(), &edges, marks);
    d.extending = extending;
    d
}

pub fn affine_diagram(t: AffineType) -> AffineDiagram {
    match t {
        AffineType::A(0) => AffineDiagram { cartan: vec![vec![0]], marks: vec![1], extending: 0 },
        AffineType::A(1) => AffineDiagram { cartan: vec![vec![2, -2], vec![-2, 2]], marks: vec![1, 1], extending: 0 },
        AffineType::A(n) => {
            let edges: Vec<_> = (0..=n).map(|i| (i, (i + 1) % (n + 1))).collect();
            from_edges(n + 1, &edges, vec![1; n + 1])
        }
        AffineType::D(n) => {
            assert!(n >= 4);
            // leaves 0,1 on chain vertex 2; chain 2..=n-2; leaves n-1, n on vertex n-2
            let mut edges = vec![(0, 2), (1, 2)];
            for i in 2..n - 2 {
                edges.push((i, i + 1));
            }
            edges.push((n - 2, n - 1));
            edges.push((n - 2, n));
            let mut marks = vec![2; n + 1];
            for &leaf in &[0, 1, n - 1, n] {
                marks[leaf] = 1;
            }
            from_edges(n + 1, &edges, marks)
        }
        AffineType::E6 => star(3, &[&[2, 1], &[2, 1], &[2, 1]]),
        AffineType::E7 => star(4, &[&[3, 2, 1], &[3, 2, 1], &[2]]),
        AffineType::E8 => star(6, &[&[5, 4, 3, 2, 1], &[4, 2], &[3]]),
    }
}

/// Finite Cartan matrix obtained by deleting vertex `v`.
pub fn delete_vertex(c: &[Vec<i64>], v: usize) -> Vec<Vec<i64>> {
    c.iter()
        .enumerate()
        .filter(|(i, _)| *i != v)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != v).map(|(_, x)| *x).collect())
        .collect()
}

/// Finds a permutation p with a[p(i)][p(j)] = b[i][j] and wa[p(i)] = wb[i].
pub fn find_isomorphism(a: &[Vec<i64>], wa: &[i64], b: &[Vec<i64>], wb: &[i64]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n || wa.len() != n || wb.len() != n {
        return None;
    }
    fn go(
        a: &[Vec<i64>],
        wa: &[i64],
        b: &[Vec<i64>],
        wb: &[i64],
        p: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = p.len();
        if i == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c] || wa[c] != wb[i] || a[c][c] != b[i][i] {
                continue;
            }
            if (0..i).all(|k| a[c][p[k]] == b[i][k] && a[p[k]][c] == b[k][i]) {
                used[c] = true;
                p.push(c);
                if go(a, wa, b, wb, p, used) {
                    return true;
                }
                p.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut p = Vec::new();
    let mut used = vec![false; n];
    if go(a, wa, b, wb, &mut p, &mut used) {
        Some(p)
    } else {
        None
    }
}

/// Number of roots of the finite root system obtained from an affine type.
pub fn finite_root_count(t: AffineType) -> usize {
    match t {
        AffineType::A(n) => n * (n + 1),
        AffineType::D(n) => 2 * n * (n - 1),
        AffineType::E6 => 72,
        AffineType::E7 => 126,
        AffineType::E8 => 240,
    }
}

/// Determinant of the finite Cartan matrix (order of the weight lattice modulo the root lattice).
pub fn finite_cartan_det(t: AffineType) -> i64 {
    match t {
        AffineType::A(n) => n as i64 + 1,
        AffineType::D(_) => 4,
        AffineType::E6 => 3,
        AffineType::E7 => 2,
        AffineType::E8 => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(c: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        c.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    #[test]
    fn marks_are_kernel_vectors() {
        let types = [
            AffineType::A(0),
            AffineType::A(1),
            AffineType::A(2),
            AffineType::A(5),
            AffineType::D(4),
            AffineType::D(7),
            AffineType::E6,
            AffineType::E7,
            AffineType::E8,
        ];
        for t in types {
            let d = affine_diagram(t);
            assert!(mul(&d.cartan, &d.marks).iter().all(|&x| x == 0), "{t}");
            assert_eq!(d.marks[d.extending], 1);
        }
    }

    #[test]
    fn isomorphism_search() {
        let d = affine_diagram(AffineType::A(3));
        let perm = [2usize, 0, 3, 1];
        let pc: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| d.cartan[perm[i]][perm[j]]).collect()).collect();
        assert!(find_isomorphism(&d.cartan, &d.marks, &pc, &d.marks).is_some());
        let e = affine_diagram(AffineType::D(4));
        let a4 = affine_diagram(AffineType::A(4));
        assert!(find_isomorphism(&e.cartan, &e.marks, &a4.cartan, &a4.marks).is_none());
    }
}
