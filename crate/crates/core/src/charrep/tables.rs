use std::sync::Arc;

use crate::cyclotomic::{CyclotomicField, CyclotomicScalar};

use super::GroupDescriptor;

/// Raw table data before validation.
pub(super) struct RawTable {
    pub field: Arc<CyclotomicField>,
    pub class_names: Vec<String>,
    pub class_sizes: Vec<u64>,
    pub chars: Vec<Vec<CyclotomicScalar>>,
    pub l_char: Vec<CyclotomicScalar>,
}

pub(super) fn raw_table(g: &GroupDescriptor) -> RawTable {
    match *g {
        GroupDescriptor::Trivial => cyclic(1),
        GroupDescriptor::Cyclic(n) => cyclic(n),
        GroupDescriptor::BinaryDihedral(n) => binary_dihedral(n),
        GroupDescriptor::BinaryTetrahedral => binary_tetrahedral(),
        GroupDescriptor::BinaryOctahedral => binary_octahedral(),
        GroupDescriptor::BinaryIcosahedral => binary_icosahedral(),
    }
}

fn cyclic(n: u32) -> RawTable {
    let f = CyclotomicField::new(n);
    let z = |k: i64| CyclotomicScalar::root_of_unity(&f, k);
    let n = n as i64;
    let chars = (0..n).map(|j| (0..n).map(|k| z(j * k)).collect()).collect();
    let l_char = (0..n).map(|k| z(k).add(&z(-k))).collect();
    RawTable {
        field: f.clone(),
        class_names: (0..n).map(|k| format!("g^{k}")).collect(),
        class_sizes: vec![1; n as usize],
        chars,
        l_char,
    }
}

// Presentation a^{2n} = 1, b^2 = a^n, b a b^{-1} = a^{-1}; L sends a to
// diag(ζ, ζ^{-1}) with ζ a primitive 2n-th root of unity.
fn binary_dihedral(n: u32) -> RawTable {
    let m = num_integer::lcm(2 * n, 4);
    let f = CyclotomicField::new(m);
    let z2n = |k: i64| CyclotomicScalar::root_of_unity(&f, k * (m / (2 * n)) as i64);
    let int = |k: i64| CyclotomicScalar::integer(&f, k);
    let ii = CyclotomicScalar::root_of_unity(&f, (m / 4) as i64);
    let n_ = n as i64;

    let mut class_names = vec!["1".to_string(), format!("a^{n}")];
    let mut class_sizes = vec![1u64, 1];
    for k in 1..n {
        class_names.push(format!("a^{k}"));
        class_sizes.push(2);
    }
    class_names.push("b".into());
    class_sizes.push(n as u64);
    class_names.push("ba".into());
    class_sizes.push(n as u64);
    let powers: Vec<i64> = std::iter::once(0).chain(std::iter::once(n_)).chain(1..n_).collect();

    let mut chars = Vec::new();
    // one-dimensional characters: (value on a, value on b)
    let mut linear: Vec<(i64, CyclotomicScalar)> = vec![(1, int(1)), (1, int(-1))];
    if n % 2 == 0 {
        linear.push((-1, int(1)));
        linear.push((-1, int(-1)));
    } else {
        linear.push((-1, ii.clone()));
        linear.push((-1, ii.neg()));
    }
    for (sa, sb) in &linear {
        let mut row: Vec<_> = powers.iter().map(|&k| int(sa.pow(k as u32))).collect();
        row.push(sb.clone());
        row.push(sb.mul(&int(*sa)));
        chars.push(row);
    }
    for h in 1..n_ {
        let mut row: Vec<_> = powers.iter().map(|&k| z2n(h * k).add(&z2n(-h * k))).collect();
        row.push(int(0));
        row.push(int(0));
        chars.push(row);
    }
    let l_char = chars[4].clone();
    RawTable { field: f, class_names, class_sizes, chars, l_char }
}

fn binary_tetrahedral() -> RawTable {
    let f = CyclotomicField::new(12);
    let int = |k: i64| CyclotomicScalar::integer(&f, k);
    let w = CyclotomicScalar::root_of_unity(&f, 4);
    let w2 = w.mul(&w);
    let chars = vec![
        vec![int(1), int(1), int(1), int(1), int(1), int(1), int(1)],
        vec![int(1), int(1), int(1), w.clone(), w2.clone(), w2.clone(), w.clone()],
        vec![int(1), int(1), int(1), w2.clone(), w.clone(), w.clone(), w2.clone()],
        vec![int(2), int(-2), int(0), int(1), int(1), int(-1), int(-1)],
        vec![int(2), int(-2), int(0), w.clone(), w2.clone(), w2.neg(), w.neg()],
        vec![int(2), int(-2), int(0), w2.clone(), w.clone(), w.neg(), w2.neg()],
        vec![int(3), int(3), int(-1), int(0), int(0), int(0), int(0)],
    ];
    RawTable {
        field: f,
        class_names: ["1", "-1", "4", "6a", "6b", "3a", "3b"].map(String::from).to_vec(),
        class_sizes: vec![1, 1, 6, 4, 4, 4, 4],
        l_char: chars[3].clone(),
        chars,
    }
}

fn binary_octahedral() -> RawTable {
    let f = CyclotomicField::new(24);
    let int = |k: i64| CyclotomicScalar::integer(&f, k);
    let r2 = CyclotomicScalar::root_of_unity(&f, 3).add(&CyclotomicScalar::root_of_unity(&f, 21));
    let chars = vec![
        vec![int(1), int(1), int(1), int(1), int(1), int(1), int(1), int(1)],
        vec![int(1), int(1), int(1), int(1), int(1), int(-1), int(-1), int(-1)],
        vec![int(2), int(2), int(2), int(-1), int(-1), int(0), int(0), int(0)],
        vec![int(3), int(3), int(-1), int(0), int(0), int(1), int(1), int(-1)],
        vec![int(3), int(3), int(-1), int(0), int(0), int(-1), int(-1), int(1)],
        vec![int(2), int(-2), int(0), int(1), int(-1), r2.clone(), r2.neg(), int(0)],
        vec![int(2), int(-2), int(0), int(1), int(-1), r2.neg(), r2.clone(), int(0)],
        vec![int(4), int(-4), int(0), int(-1), int(1), int(0), int(0), int(0)],
    ];
    RawTable {
        field: f,
        class_names: ["1", "-1", "4", "6", "3", "8a", "8b", "4'"].map(String::from).to_vec(),
        class_sizes: vec![1, 1, 6, 8, 8, 6, 6, 12],
        l_char: chars[5].clone(),
        chars,
    }
}

fn binary_icosahedral() -> RawTable {
    let f = CyclotomicField::new(60);
    let int = |k: i64| CyclotomicScalar::integer(&f, k);
    let z5 = |k: i64| CyclotomicScalar::root_of_unity(&f, 12 * k);
    let phi = int(1).add(&z5(1)).add(&z5(4));
    let psi = int(1).sub(&phi);
    let l = vec![int(2), int(-2), int(0), int(1), int(-1), phi.clone(), psi.clone(), psi.neg(), phi.neg()];
    // symmetric powers of L are irreducible up to Sym^5
    let mut sym = vec![vec![int(1); 9], l.clone()];
    for k in 2..6 {
        let next = (0..9).map(|c| l[c].mul(&sym[k - 1][c]).sub(&sym[k - 2][c])).collect();
        sym.push(next);
    }
    let galois = |row: &Vec<CyclotomicScalar>| row.iter().map(|x| x.galois(7)).collect::<Vec<_>>();
    let mut chars = sym.clone();
    chars.push(galois(&sym[1]));
    chars.push(galois(&sym[2]));
    chars.push(vec![int(4), int(4), int(0), int(1), int(1), int(-1), int(-1), int(-1), int(-1)]);
    RawTable {
        field: f,
        class_names: ["1", "-1", "4", "6", "3", "10a", "10b", "5a", "5b"].map(String::from).to_vec(),
        class_sizes: vec![1, 1, 30, 20, 20, 12, 12, 12, 12],
        l_char: l,
        chars,
    }
}

#[cfg(test)]
mod tests {
    //! The embedded tables are checked against the groups themselves: each
    //! family is generated as 2x2 matrices, split into conjugacy classes by
    //! brute force, and the traces are compared with the L row.
    use super::*;
    use crate::cyclotomic::CyclotomicScalar as C;

    type M2 = [C; 4];

    fn mul(a: &M2, b: &M2) -> M2 {
        [
            a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
            a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
            a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
            a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
        ]
    }

    // inverse of a determinant-one matrix
    fn inv(a: &M2) -> M2 {
        [a[3].clone(), a[1].neg(), a[2].neg(), a[0].clone()]
    }

    fn closure(gens: &[M2], cap: usize) -> Vec<M2> {
        let f = gens[0][0].field().clone();
        let one = [C::integer(&f, 1), C::integer(&f, 0), C::integer(&f, 0), C::integer(&f, 1)];
        let mut elems = vec![one];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p = mul(&elems[i], g);
                if !elems.contains(&p) {
                    elems.push(p);
                    assert!(elems.len() <= cap, "group closure exceeded cap");
                }
            }
            i += 1;
        }
        elems
    }

    fn class_traces(elems: &[M2]) -> Vec<(u64, C)> {
        let mut seen = vec![false; elems.len()];
        let mut out = Vec::new();
        for i in 0..elems.len() {
            if seen[i] {
                continue;
            }
            let mut size = 0;
            let mut cls = Vec::new();
            for g in elems {
                let c = mul(&mul(g, &elems[i]), &inv(g));
                if !cls.contains(&c) {
                    cls.push(c);
                }
            }
            for c in &cls {
                let k = elems.iter().position(|e| e == c).unwrap();
                seen[k] = true;
                size += 1;
            }
            out.push((size, elems[i][0].add(&elems[i][3])));
        }
        out
    }

    fn check_against(raw: &RawTable, gens: &[M2], order: usize) {
        let elems = closure(gens, order);
        assert_eq!(elems.len(), order);
        let mut got: Vec<(u64, String)> = class_traces(&elems).into_iter().map(|(s, t)| (s, t.to_string())).collect();
        let mut want: Vec<(u64, String)> =
            raw.class_sizes.iter().zip(&raw.l_char).map(|(s, t)| (*s, t.to_string())).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    // quaternion units as 2x2 matrices over a field containing i
    fn quaternion(f: &Arc<CyclotomicField>, a: &C, b: &C, c: &C, d: &C) -> M2 {
        let i = C::root_of_unity(f, (f.order / 4) as i64);
        // a + b i + c j + d k with i = diag(i, -i), j = [[0,1],[-1,0]], k = [[0,i],[i,0]]
        [a.add(&b.mul(&i)), c.add(&d.mul(&i)), c.neg().add(&d.mul(&i)), a.sub(&b.mul(&i))]
    }

    #[test]
    fn binary_dihedral_against_matrices() {
        for n in 2..=5u32 {
            let raw = binary_dihedral(n);
            let f = raw.field.clone();
            let z = C::root_of_unity(&f, (f.order / (2 * n)) as i64);
            let zero = C::integer(&f, 0);
            let a = [z.clone(), zero.clone(), zero.clone(), z.conj()];
            let b = [zero.clone(), C::integer(&f, -1), C::integer(&f, 1), zero];
            check_against(&raw, &[a, b], 4 * n as usize);
        }
    }

    #[test]
    fn polyhedral_against_quaternions() {
        let half = |_: &Arc<CyclotomicField>, x: &C| x.scale(&crate::scalar::qf(1, 2));
        // binary tetrahedral: i, j and (1+i+j+k)/2
        let raw = binary_tetrahedral();
        let f = raw.field.clone();
        let (o, z) = (C::integer(&f, 1), C::integer(&f, 0));
        let qi = quaternion(&f, &z, &o, &z, &z);
        let qj = quaternion(&f, &z, &z, &o, &z);
        let h = half(&f, &o);
        let w = quaternion(&f, &h, &h, &h, &h);
        check_against(&raw, &[qi, qj, w], 24);

        // binary octahedral: add (1+i)/sqrt 2
        let raw = binary_octahedral();
        let f = raw.field.clone();
        let (o, z) = (C::integer(&f, 1), C::integer(&f, 0));
        let r2 = C::root_of_unity(&f, 3).add(&C::root_of_unity(&f, 21));
        let s = r2.scale(&crate::scalar::qf(1, 2));
        let h = half(&f, &o);
        let gens = [
            quaternion(&f, &z, &o, &z, &z),
            quaternion(&f, &z, &z, &o, &z),
            quaternion(&f, &h, &h, &h, &h),
            quaternion(&f, &s, &s, &z, &z),
        ];
        check_against(&raw, &gens, 48);

        // binary icosahedral: i, j and (φ + φ^{-1} i + j)/2
        let raw = binary_icosahedral();
        let f = raw.field.clone();
        let (o, z) = (C::integer(&f, 1), C::integer(&f, 0));
        let z5 = |k: i64| C::root_of_unity(&f, 12 * k);
        let phi = o.add(&z5(1)).add(&z5(4));
        let phi_inv = phi.sub(&o);
        let h = half(&f, &o);
        let gens = [
            quaternion(&f, &z, &o, &z, &z),
            quaternion(&f, &z, &z, &o, &z),
            quaternion(&f, &half(&f, &phi), &half(&f, &phi_inv), &h, &z),
        ];
        check_against(&raw, &gens, 120);
    }
}
