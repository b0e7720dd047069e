//! Green's relations on finite band samples, α-equality relations, fine and
//! mixed relations, eggbox diagrams and the restriction to subsemigroups.

mod eggbox;
mod greens;
mod partition;
mod psi;
mod relations;
mod restriction;

pub use eggbox::{eggbox, EggboxDiagram};
pub use greens::{
    band_greens, greens, greens_classes, j_universal_check, rep_kernel, Green, GreensClasses,
    JUniversal,
};
pub use partition::Partition;
pub use psi::{psi_map, PsiReport};
pub use relations::{
    delta_partition, fine_relation, mixed_d, mixed_families, mixed_h, DeltaMode, RelationSpec, Side,
};
pub use restriction::{subsemigroup_restriction, RestrictionReport, SubsemigroupSpec};
