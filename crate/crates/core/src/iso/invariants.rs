use serde::Serialize;

use crate::algebra::StructureConstants;
use crate::form::{
    canonical_decomposition, form_from_algebra, format_blocks, pencil_invariants_in,
    PencilInvariants, PencilMode,
};

/// Dimensions of the standard subspaces, plus the pencil data of the form
/// when `A` is nilpotent with `dim A² = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoInvariants {
    pub dim: usize,
    pub dim_a2: usize,
    pub dim_a3: usize,
    pub dim_derived2: usize,
    pub dim_derived3: usize,
    pub dim_leib: usize,
    pub dim_center: usize,
    pub dim_left_center: usize,
    pub dim_right_center: usize,
    pub pencil: Option<PencilInvariants>,
    /// Canonical blocks of the form, constant parameters only.
    pub blocks: Option<String>,
}

pub fn iso_invariants(a: &StructureConstants) -> IsoInvariants {
    let dim_a2 = a.derived_algebra().dim();
    let eligible = dim_a2 == 1 && a.is_nilpotent();
    let form = if eligible {
        form_from_algebra(a).ok().map(|(m, _)| m)
    } else {
        None
    };
    let pencil = form.as_ref().and_then(|m| {
        let mode = if m.is_constant() {
            PencilMode::Constant
        } else {
            PencilMode::Generic
        };
        pencil_invariants_in(m, mode).ok()
    });
    let blocks = form
        .as_ref()
        .and_then(|m| canonical_decomposition(m).ok())
        .map(|b| format_blocks(&b));
    IsoInvariants {
        dim: a.dim(),
        dim_a2,
        dim_a3: a.lower_central_term(3).dim(),
        dim_derived2: a.derived_term(2).dim(),
        dim_derived3: a.derived_term(3).dim(),
        dim_leib: a.leib_ideal().dim(),
        dim_center: a.center().dim(),
        dim_left_center: a.left_center().dim(),
        dim_right_center: a.right_center().dim(),
        pencil,
        blocks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{paper_items, solvable_dim1_table};

    #[test]
    fn first_dim4_item() {
        let inv = iso_invariants(&paper_items(4).unwrap()[0]);
        assert_eq!((inv.dim_leib, inv.dim_a2, inv.dim_a3), (1, 1, 0));
        assert_eq!(inv.blocks.as_deref(), Some("A3"));
        assert!(inv.pencil.unwrap().is_consistent());
    }

    #[test]
    fn abelian() {
        let inv = iso_invariants(&StructureConstants::abelian(3));
        assert_eq!((inv.dim_a2, inv.dim_leib, inv.dim_center), (0, 0, 3));
        assert_eq!((inv.dim_left_center, inv.dim_right_center), (3, 3));
        assert!(inv.pencil.is_none());
    }

    #[test]
    fn cyclic_has_no_pencil() {
        let inv = iso_invariants(&solvable_dim1_table()[0].algebra);
        assert_eq!(inv.dim_a2, 1);
        assert!(inv.pencil.is_none());
    }

    #[test]
    fn parametric_entries_get_generic_pencil() {
        let item = &paper_items(4).unwrap()[4];
        let inv = iso_invariants(item);
        assert!(inv.pencil.is_some());
        assert!(inv.blocks.is_none());
    }
}
