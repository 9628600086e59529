//! Small finite groups of Lie type — `GL_2(q)`, `SL_2(q)` for `q <= 5` and
//! `GL_3(2)` — with their Borel subgroups, conjugacy classes, character
//! tables, unipotent supports and modular data.

mod chars;
mod group;
mod modular;
mod unipotent;

pub(crate) use group::prime_power;

use thiserror::Error;

use crate::exactalg::ExactError;
use crate::meataxe::MeatAxeError;

pub use chars::{character_table, CharacterTable, CHARACTER_TABLE_CAP};
pub use group::{ConjugacyClass, FiniteMatrixGroup, GroupFamily, SUPPORTED_GROUPS};
pub use modular::{
    borel_words, modular_irr_dims, perm_module, principal_series_mod, PrincipalSeriesFactor, MODULE_DIMENSION_CAP,
};
pub use unipotent::{
    average_value, dominance_poset, generic_degree, jordan_type, unipotent_class_map, unipotent_classes,
    unipotent_principal_series, unipotent_support, UnipotentClassGLn, UnipotentSupport,
};

#[derive(Debug, Error)]
pub enum LieTypeError {
    #[error("unsupported group {family}{n}(F{q})")]
    UnsupportedGroup { family: String, n: usize, q: u32 },
    #[error("unknown group family {0:?} (expected GL or SL)")]
    UnknownFamily(String),
    #[error("size {order} exceeds the cap {cap}")]
    SizeCap { order: usize, cap: usize },
    #[error("element {0} is not unipotent")]
    NotUnipotent(usize),
    #[error("unipotent support is not unique: {0}")]
    SupportNotUnique(String),
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
    #[error("l = {ell} is the defining characteristic of {group}")]
    DefiningCharacteristic { ell: u32, group: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    MeatAxe(#[from] MeatAxeError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Partition;

    fn group(family: GroupFamily, n: usize, q: u32) -> FiniteMatrixGroup {
        FiniteMatrixGroup::build(family, n, q).unwrap()
    }

    #[test]
    fn orders_and_borel_index() {
        let g = group(GroupFamily::GL, 2, 3);
        assert_eq!(g.order(), 48);
        assert_eq!(g.order() / g.borel().len(), 4);
        assert_eq!(group(GroupFamily::SL, 2, 5).order(), 120);
        let g3 = group(GroupFamily::GL, 3, 2);
        assert_eq!(g3.order(), 168);
        assert_eq!(g3.order() / g3.borel().len(), 21);
        assert_eq!(group(GroupFamily::GL, 2, 4).order(), 180);
    }

    #[test]
    fn unsupported_sizes_are_rejected() {
        assert!(matches!(FiniteMatrixGroup::build(GroupFamily::GL, 2, 7), Err(LieTypeError::UnsupportedGroup { .. })));
        assert!(matches!(FiniteMatrixGroup::build(GroupFamily::GL, 3, 3), Err(LieTypeError::UnsupportedGroup { .. })));
        assert!("Sp".parse::<GroupFamily>().is_err());
    }

    #[test]
    fn jordan_types_in_gl3() {
        let g = group(GroupFamily::GL, 3, 2);
        let regular = g.lookup(&[1, 1, 0, 0, 1, 1, 0, 0, 1]).unwrap();
        assert_eq!(jordan_type(&g, regular), Some(Partition(vec![3])));
        let transvection = g.lookup(&[1, 0, 1, 0, 1, 0, 0, 0, 1]).unwrap();
        assert_eq!(jordan_type(&g, transvection), Some(Partition(vec![2, 1])));
        assert_eq!(jordan_type(&g, g.identity()), Some(Partition(vec![1, 1, 1])));
        let diag = g.lookup(&[0, 1, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(jordan_type(&g, diag), Some(Partition(vec![2, 1])), "permutation (12) is unipotent in char 2");
        let order_three = g.lookup(&[0, 0, 1, 1, 0, 0, 0, 1, 0]).unwrap();
        assert_eq!(jordan_type(&g, order_three), None);
    }

    #[test]
    fn unipotent_class_data() {
        let classes = unipotent_classes(3);
        let dims: Vec<(usize, usize)> = classes.iter().map(|c| (c.springer_fibre_dim, c.class_dim)).collect();
        assert_eq!(dims, vec![(0, 6), (1, 4), (3, 0)]);
        let (_, less) = dominance_poset(4);
        // (2,2) lies below (3,1) but not below (2,1,1)
        assert!(less[2][1]);
        assert!(!less[2][3]);
    }

    #[test]
    fn generic_degrees() {
        assert_eq!(generic_degree(&Partition(vec![2]), 3), 1);
        assert_eq!(generic_degree(&Partition(vec![1, 1]), 3), 3);
        assert_eq!(generic_degree(&Partition(vec![2, 1]), 2), 6);
        assert_eq!(generic_degree(&Partition(vec![1, 1, 1]), 2), 8);
    }

    #[test]
    fn sylow_subgroups() {
        let g = group(GroupFamily::GL, 2, 3);
        let p2 = g.sylow_subgroup(2);
        assert_eq!(p2.len(), 16);
        assert!(g.is_subgroup(&p2));
        assert_eq!(g.sylow_subgroup(3).len(), 3);
        assert_eq!(g.sylow_subgroup(5).len(), 1);
    }
}
