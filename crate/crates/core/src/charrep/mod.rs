//! Character tables of the finite subgroups of SL₂(ℂ) and the
//! representation ring K(Γ).

mod tables;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CyclotomicField, CyclotomicRepr, CyclotomicScalar};
use crate::error::CharrepError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupDescriptor {
    Trivial,
    Cyclic(u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupDescriptor {
    pub fn order(&self) -> u64 {
        match *self {
            GroupDescriptor::Trivial => 1,
            GroupDescriptor::Cyclic(n) => n as u64,
            GroupDescriptor::BinaryDihedral(n) => 4 * n as u64,
            GroupDescriptor::BinaryTetrahedral => 24,
            GroupDescriptor::BinaryOctahedral => 48,
            GroupDescriptor::BinaryIcosahedral => 120,
        }
    }

    /// Order of the cyclic group, if the group is cyclic (the trivial group
    /// counts as cyclic of order 1).
    pub fn cyclic_order(&self) -> Option<u32> {
        match *self {
            GroupDescriptor::Trivial => Some(1),
            GroupDescriptor::Cyclic(n) => Some(n),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), CharrepError> {
        match *self {
            GroupDescriptor::Cyclic(0) => Err(CharrepError::InvalidGroup("cyclic order must be positive".into())),
            GroupDescriptor::BinaryDihedral(n) if n < 2 => {
                Err(CharrepError::InvalidGroup("binary dihedral parameter must be at least 2".into()))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Trivial => write!(f, "trivial"),
            GroupDescriptor::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupDescriptor::BinaryDihedral(n) => write!(f, "BD:{n}"),
            GroupDescriptor::BinaryTetrahedral => write!(f, "BT"),
            GroupDescriptor::BinaryOctahedral => write!(f, "BO"),
            GroupDescriptor::BinaryIcosahedral => write!(f, "BI"),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = CharrepError;

    /// Accepts `trivial`, `cyclic:n`, `BD:n`, `BT`, `BO`, `BI` (case-insensitive).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || CharrepError::InvalidGroup(format!("unrecognized group `{s}`"));
        let g = match t.as_str() {
            "trivial" | "1" => GroupDescriptor::Trivial,
            "bt" | "binarytetrahedral" => GroupDescriptor::BinaryTetrahedral,
            "bo" | "binaryoctahedral" => GroupDescriptor::BinaryOctahedral,
            "bi" | "binaryicosahedral" => GroupDescriptor::BinaryIcosahedral,
            _ => {
                let (fam, n) = t.split_once(':').ok_or_else(bad)?;
                let n: u32 = n.trim().parse().map_err(|_| bad())?;
                match fam {
                    "cyclic" | "c" | "z" => GroupDescriptor::Cyclic(n),
                    "bd" | "binarydihedral" | "dic" => GroupDescriptor::BinaryDihedral(n),
                    _ => return Err(bad()),
                }
            }
        };
        g.validate()?;
        Ok(g)
    }
}

#[derive(Debug)]
pub struct CharacterTable {
    group: GroupDescriptor,
    field: Arc<CyclotomicField>,
    class_names: Vec<String>,
    class_sizes: Vec<u64>,
    chars: Vec<Vec<CyclotomicScalar>>,
    dims: Vec<i64>,
    l_char: Vec<CyclotomicScalar>,
    l_index: Option<usize>,
    trivial_index: usize,
    mckay: Vec<Vec<i64>>,
    /// fusion[i][j][k] = multiplicity of R_k in R_i ⊗ R_j, filled on first use
    fusion: OnceLock<Vec<Vec<Vec<i64>>>>,
}

/// Builds and validates the character table of a supported group.
pub fn build_group(desc: GroupDescriptor) -> Result<Arc<CharacterTable>, CharrepError> {
    desc.validate()?;
    let raw = tables::raw_table(&desc);
    let nclasses = raw.class_sizes.len();
    if raw.chars.len() != nclasses || raw.chars.iter().any(|r| r.len() != nclasses) {
        return Err(CharrepError::CorruptTable("table is not square".into()));
    }
    let dims = raw
        .chars
        .iter()
        .map(|r| r[0].as_rational().and_then(|q| q.to_integer().to_i64()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CharrepError::CorruptTable("non-integral dimension".into()))?;
    let trivial_index = raw
        .chars
        .iter()
        .position(|r| r.iter().all(|x| x.as_rational() == Some(BigRational::one())))
        .ok_or_else(|| CharrepError::CorruptTable("no trivial character".into()))?;
    let l_index = raw.chars.iter().position(|r| r == &raw.l_char);
    let mut t = CharacterTable {
        group: desc,
        field: raw.field,
        class_names: raw.class_names,
        class_sizes: raw.class_sizes,
        chars: raw.chars,
        dims,
        l_char: raw.l_char,
        l_index,
        trivial_index,
        mckay: Vec::new(),
        fusion: OnceLock::new(),
    };
    t.validate()?;
    let n = t.num_irreps();
    let mut mckay = vec![vec![0; n]; n];
    for i in 0..n {
        let li: Vec<_> = (0..n).map(|c| t.chars[i][c].mul(&t.l_char[c])).collect();
        for j in 0..n {
            mckay[i][j] = t.multiplicity_in(&li, j)?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if mckay[i][j] != mckay[j][i] {
                return Err(CharrepError::CorruptTable("McKay matrix is not symmetric".into()));
            }
        }
    }
    t.mckay = mckay;
    Ok(Arc::new(t))
}

impl CharacterTable {
    fn validate(&self) -> Result<(), CharrepError> {
        let order = self.group.order();
        if self.class_sizes.iter().sum::<u64>() != order {
            return Err(CharrepError::CorruptTable("class sizes do not sum to the group order".into()));
        }
        if self.dims.iter().map(|d| (d * d) as u64).sum::<u64>() != order {
            return Err(CharrepError::CorruptTable("sum of squared dimensions differs from the order".into()));
        }
        for i in 0..self.chars.len() {
            for j in 0..self.chars.len() {
                let ip = self.inner(&self.chars[i], &self.chars[j]);
                let want = if i == j { BigRational::one() } else { BigRational::zero() };
                if ip.as_rational() != Some(want) {
                    return Err(CharrepError::CorruptTable(format!("orthogonality fails for rows {i}, {j}")));
                }
            }
        }
        if self.l_char[0].as_rational() != Some(BigRational::from_integer(2.into())) {
            return Err(CharrepError::CorruptTable("L is not two-dimensional".into()));
        }
        if self.l_char.iter().any(|x| x.conj() != *x) {
            return Err(CharrepError::CorruptTable("L has non-real character values".into()));
        }
        Ok(())
    }

    /// (1/|Γ|) Σ_c |c| a(c) conj(b(c)).
    pub fn inner(&self, a: &[CyclotomicScalar], b: &[CyclotomicScalar]) -> CyclotomicScalar {
        let mut s = CyclotomicScalar::zero(&self.field);
        for c in 0..self.class_sizes.len() {
            let t = a[c].mul(&b[c].conj()).scale(&BigRational::from_integer(self.class_sizes[c].into()));
            s = s.add(&t);
        }
        s.scale(&BigRational::new(1.into(), self.group.order().into()))
    }

    /// Multiplicity of irreducible j in the class function `chi`.
    pub fn multiplicity_in(&self, chi: &[CyclotomicScalar], j: usize) -> Result<i64, CharrepError> {
        let ip = self.inner(chi, &self.chars[j]);
        match ip.as_rational() {
            Some(q) if q.is_integer() => {
                q.to_integer().to_i64().ok_or_else(|| CharrepError::NonIntegral(format!("{ip}")))
            }
            _ => Err(CharrepError::NonIntegral(format!("{ip}"))),
        }
    }

    /// Decomposes a virtual character into irreducible multiplicities.
    pub fn decompose(&self, chi: &[CyclotomicScalar]) -> Result<Vec<i64>, CharrepError> {
        (0..self.num_irreps()).map(|j| self.multiplicity_in(chi, j)).collect()
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }
    pub fn order(&self) -> u64 {
        self.group.order()
    }
    pub fn num_irreps(&self) -> usize {
        self.chars.len()
    }
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }
    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }
    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }
    pub fn character(&self, i: usize) -> &[CyclotomicScalar] {
        &self.chars[i]
    }
    pub fn dims(&self) -> &[i64] {
        &self.dims
    }
    pub fn l_character(&self) -> &[CyclotomicScalar] {
        &self.l_char
    }
    /// Index of χ_L when L is irreducible.
    pub fn l_index(&self) -> Option<usize> {
        self.l_index
    }
    pub fn trivial_index(&self) -> usize {
        self.trivial_index
    }
    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// McKay matrix a_ij.
    pub fn mckay_matrix(&self) -> &[Vec<i64>] {
        &self.mckay
    }

    /// Character of a class vector.
    pub fn class_character(&self, x: &ClassVector) -> Vec<CyclotomicScalar> {
        (0..self.num_classes())
            .map(|c| {
                let mut s = CyclotomicScalar::zero(&self.field);
                for (i, &k) in x.coeffs.iter().enumerate() {
                    if k != 0 {
                        s = s.add(&self.chars[i][c].scale(&BigRational::from_integer(k.into())));
                    }
                }
                s
            })
            .collect()
    }

    /// Characters of Sym^k L for k = 0..=max.
    pub fn sym_l_characters(&self, max: usize) -> Vec<Vec<CyclotomicScalar>> {
        let one = vec![CyclotomicScalar::integer(&self.field, 1); self.num_classes()];
        let mut out = vec![one];
        if max >= 1 {
            out.push(self.l_char.clone());
        }
        for k in 2..=max {
            let next = (0..self.num_classes())
                .map(|c| self.l_char[c].mul(&out[k - 1][c]).sub(&out[k - 2][c]))
                .collect();
            out.push(next);
        }
        out
    }

    pub fn zero_class(&self) -> ClassVector {
        ClassVector { group: self.group, coeffs: vec![0; self.num_irreps()] }
    }

    pub fn basis_class(&self, i: usize) -> ClassVector {
        let mut v = self.zero_class();
        v.coeffs[i] = 1;
        v
    }

    pub fn trivial_class(&self) -> ClassVector {
        self.basis_class(self.trivial_index)
    }

    pub fn l_class(&self) -> ClassVector {
        ClassVector { group: self.group, coeffs: self.decompose(&self.l_char).expect("validated table") }
    }

    pub fn regular_class(&self) -> ClassVector {
        ClassVector { group: self.group, coeffs: self.dims.clone() }
    }

    pub fn class_vector(&self, coeffs: Vec<i64>) -> Result<ClassVector, CharrepError> {
        if coeffs.len() != self.num_irreps() {
            return Err(CharrepError::Length { expected: self.num_irreps(), got: coeffs.len() });
        }
        Ok(ClassVector { group: self.group, coeffs })
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            group: self.group.to_string(),
            order: self.order(),
            field_order: self.field.order,
            classes: self.class_names.clone(),
            class_sizes: self.class_sizes.clone(),
            dims: self.dims.clone(),
            trivial_index: self.trivial_index,
            l_index: self.l_index,
            characters: self.chars.iter().map(|r| r.iter().map(CyclotomicRepr::from).collect()).collect(),
            l_character: self.l_char.iter().map(CyclotomicRepr::from).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableJson {
    pub group: String,
    pub order: u64,
    pub field_order: u32,
    pub classes: Vec<String>,
    pub class_sizes: Vec<u64>,
    pub dims: Vec<i64>,
    pub trivial_index: usize,
    pub l_index: Option<usize>,
    pub characters: Vec<Vec<CyclotomicRepr>>,
    pub l_character: Vec<CyclotomicRepr>,
}

/// An element of K(Γ) in the irreducible basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassVector {
    pub group: GroupDescriptor,
    pub coeffs: Vec<i64>,
}

impl ClassVector {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, o: &Self) -> Result<(), CharrepError> {
        if self.group != o.group || self.coeffs.len() != o.coeffs.len() {
            return Err(CharrepError::MismatchedTables);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, CharrepError> {
        self.check(o)?;
        Ok(ClassVector { group: self.group, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, CharrepError> {
        self.check(o)?;
        Ok(ClassVector { group: self.group, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, k: i64) -> Self {
        ClassVector { group: self.group, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&x| x >= 0)
    }
}

/// a_ij, the multiplicity of R_j in R_i ⊗ L.
pub fn tensor_multiplicity(table: &CharacterTable, i: usize, j: usize) -> Result<i64, CharrepError> {
    let n = table.num_irreps();
    if i >= n || j >= n {
        return Err(CharrepError::Index(i.max(j)));
    }
    Ok(table.mckay[i][j])
}

pub fn class_product(table: &CharacterTable, a: &ClassVector, b: &ClassVector) -> Result<ClassVector, CharrepError> {
    a.check(b)?;
    if a.group != table.group {
        return Err(CharrepError::MismatchedTables);
    }
    let n = table.num_irreps();
    let fusion = match table.fusion.get() {
        Some(f) => f,
        None => {
            let mut f = vec![vec![vec![0; n]; n]; n];
            for (i, fi) in f.iter_mut().enumerate() {
                for (j, fij) in fi.iter_mut().enumerate() {
                    let prod: Vec<_> = table.chars[i].iter().zip(&table.chars[j]).map(|(x, y)| x.mul(y)).collect();
                    *fij = table.decompose(&prod)?;
                }
            }
            table.fusion.get_or_init(|| f)
        }
    };
    let mut coeffs = vec![0; n];
    for (i, &x) in a.coeffs.iter().enumerate().filter(|e| *e.1 != 0) {
        for (j, &y) in b.coeffs.iter().enumerate().filter(|e| *e.1 != 0) {
            for (c, m) in coeffs.iter_mut().zip(&fusion[i][j]) {
                *c += x * y * m;
            }
        }
    }
    Ok(ClassVector { group: table.group, coeffs })
}

pub fn dim_class(table: &CharacterTable, x: &ClassVector) -> i64 {
    x.coeffs.iter().zip(table.dims()).map(|(a, d)| a * d).sum()
}

/// Multiplicity of R_i in R_j ⊗ Sym^k(L ⊕ triv).
pub fn sym_multiplicity(table: &CharacterTable, i: usize, j: usize, k: usize) -> Result<i64, CharrepError> {
    let syms = table.sym_l_characters(k);
    let total: Vec<_> = (0..table.num_classes())
        .map(|c| {
            let mut s = CyclotomicScalar::zero(table.field());
            for sm in &syms {
                s = s.add(&sm[c]);
            }
            s.mul(&table.character(j)[c])
        })
        .collect();
    table.multiplicity_in(&total, i)
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_groups() -> Vec<GroupDescriptor> {
        use GroupDescriptor::*;
        let mut v = vec![Trivial, BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral];
        v.extend((1..=8).map(Cyclic));
        v.extend((2..=5).map(BinaryDihedral));
        v
    }

    #[test]
    fn every_table_validates() {
        for g in all_groups() {
            let t = build_group(g).unwrap();
            assert_eq!(t.dims().iter().map(|d| d * d).sum::<i64>() as u64, g.order());
            let reg = t.regular_class();
            let prod = class_product(&t, &reg, &t.l_class()).unwrap();
            assert_eq!(prod, reg.scale(2), "{g}");
        }
    }

    #[test]
    fn icosahedral_dims() {
        let t = build_group(GroupDescriptor::BinaryIcosahedral).unwrap();
        let mut d = t.dims().to_vec();
        d.sort();
        assert_eq!(d, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    }

    // Cyclic group elements as diagonal matrices diag(ζ^k, ζ^{-k}); multiplicity by summing over elements.
    fn cyclic_brute_force(n: u32, i: usize, j: usize) -> i64 {
        let f = CyclotomicField::new(n);
        let z = |k: i64| CyclotomicScalar::root_of_unity(&f, k);
        let mut s = CyclotomicScalar::zero(&f);
        for k in 0..n as i64 {
            let tr = z(k).add(&z(-k));
            s = s.add(&z(i as i64 * k).mul(&tr).mul(&z(-(j as i64) * k)));
        }
        let r = s.as_rational().unwrap() / BigRational::from_integer(n.into());
        r.to_integer().to_i64().unwrap()
    }

    #[test]
    fn small_cyclic_examples() {
        let t1 = build_group(GroupDescriptor::Trivial).unwrap();
        assert_eq!(tensor_multiplicity(&t1, 0, 0).unwrap(), 2);
        let t2 = build_group(GroupDescriptor::Cyclic(2)).unwrap();
        assert_eq!(tensor_multiplicity(&t2, 0, 1).unwrap(), cyclic_brute_force(2, 0, 1));
        assert_eq!(tensor_multiplicity(&t2, 0, 1).unwrap(), 2);
        assert_eq!(t2.l_class().coeffs, vec![0, 2]);
        let t3 = build_group(GroupDescriptor::Cyclic(3)).unwrap();
        assert_eq!(tensor_multiplicity(&t3, 0, 1).unwrap(), 1);
        let r1l = class_product(&t3, &t3.basis_class(1), &t3.l_class()).unwrap();
        assert_eq!(r1l.coeffs, vec![1, 0, 1]);
        for n in 1..=6 {
            let t = build_group(GroupDescriptor::Cyclic(n)).unwrap();
            for i in 0..n as usize {
                for j in 0..n as usize {
                    assert_eq!(tensor_multiplicity(&t, i, j).unwrap(), cyclic_brute_force(n, i, j));
                }
            }
        }
        assert_eq!(dim_class(&t2, &t2.class_vector(vec![-1, 2]).unwrap()), 1);
    }

    #[test]
    fn parse_descriptors() {
        assert_eq!("cyclic:4".parse::<GroupDescriptor>().unwrap(), GroupDescriptor::Cyclic(4));
        assert_eq!("BD:3".parse::<GroupDescriptor>().unwrap(), GroupDescriptor::BinaryDihedral(3));
        assert_eq!("bi".parse::<GroupDescriptor>().unwrap(), GroupDescriptor::BinaryIcosahedral);
        assert!("BD:1".parse::<GroupDescriptor>().is_err());
        assert!("cyclic:0".parse::<GroupDescriptor>().is_err());
        assert!("foo".parse::<GroupDescriptor>().is_err());
        for g in all_groups() {
            assert_eq!(g.to_string().parse::<GroupDescriptor>().unwrap(), g);
        }
    }

    fn group_strategy() -> impl Strategy<Value = GroupDescriptor> {
        prop::sample::select(all_groups())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn ring_laws(g in group_strategy(), seed in prop::collection::vec(-2i64..3, 9), seed2 in prop::collection::vec(-2i64..3, 9)) {
            let t = build_group(g).unwrap();
            let n = t.num_irreps();
            let x = t.class_vector(seed[..n].to_vec()).unwrap();
            let y = t.class_vector(seed2[..n].to_vec()).unwrap();
            let xy = class_product(&t, &x, &y).unwrap();
            prop_assert_eq!(&xy, &class_product(&t, &y, &x).unwrap());
            prop_assert_eq!(dim_class(&t, &xy), dim_class(&t, &x) * dim_class(&t, &y));
            prop_assert_eq!(class_product(&t, &t.trivial_class(), &x).unwrap(), x.clone());
            let chars: Vec<_> = t.class_character(&x).iter().zip(&t.class_character(&y)).map(|(a, b)| a.mul(b)).collect();
            prop_assert_eq!(xy.coeffs, t.decompose(&chars).unwrap());
        }
    }
}
