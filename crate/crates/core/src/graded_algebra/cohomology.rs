use serde::Serialize;

use crate::charrep::{dim_class, CharacterTable, ClassVector};

/// Classes of H^p(P²_Γ, O(i)) for p = 0, 1, 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCohomology {
    pub twist: i64,
    pub h0: ClassVector,
    pub h1: ClassVector,
    pub h2: ClassVector,
}

fn binom2(m: i64) -> i64 {
    // C(m, 2) for m ≥ 0
    m * (m - 1) / 2
}

/// H⁰ = A_i = CΓ ⊗ Sym^i(L ⊕ triv) for i ≥ 0, H¹ = 0, and H² = *A_{−i−3}
/// for i ≤ −3. As Γ-modules A_k is C(k+2, 2) copies of the regular
/// representation, and so is its dual.
pub fn cohomology_of_twist(table: &CharacterTable, i: i64) -> TwistCohomology {
    let reg = table.regular_class();
    let zero = table.zero_class();
    let h0 = if i >= 0 { reg.scale(binom2(i + 2)) } else { zero.clone() };
    let h2 = if i <= -3 { reg.scale(binom2(-i - 1)) } else { zero.clone() };
    TwistCohomology { twist: i, h0, h1: zero, h2 }
}

pub fn euler_characteristic(table: &CharacterTable, c: &TwistCohomology) -> i64 {
    dim_class(table, &c.h0) - dim_class(table, &c.h1) + dim_class(table, &c.h2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charrep::{build_group, GroupDescriptor};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let t = build_group(GroupDescriptor::Cyclic(3)).unwrap();
        let c = cohomology_of_twist(&t, -1);
        assert!([&c.h0, &c.h1, &c.h2].iter().all(|x| dim_class(&t, x) == 0));
        let c = cohomology_of_twist(&t, 0);
        assert_eq!(c.h0, t.regular_class());
        assert_eq!(dim_class(&t, &c.h0), 3);
        let c = cohomology_of_twist(&t, -3);
        assert_eq!(c.h2, t.regular_class());
        assert_eq!(dim_class(&t, &c.h0) + dim_class(&t, &c.h2), 3);
    }

    proptest! {
        #[test]
        fn euler_characteristic_is_quadratic(i in -40i64..40, g in 0usize..4) {
            let desc = [GroupDescriptor::Trivial, GroupDescriptor::Cyclic(5), GroupDescriptor::BinaryDihedral(2), GroupDescriptor::BinaryTetrahedral][g];
            let t = build_group(desc).unwrap();
            let c = cohomology_of_twist(&t, i);
            prop_assert_eq!(euler_characteristic(&t, &c), t.order() as i64 * (i + 1) * (i + 2) / 2);
        }
    }
}
