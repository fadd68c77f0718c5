//! Local symbols: Hilbert and tame symbols, power classes and the local Tate pairings.

mod classes;
mod hilbert;
mod padic;
mod residue;
mod tate;

pub use classes::{cube_classes, dlog_mod, power_classes, primitive_root, square_classes, LocalClass, Place, SymbolValue};
pub use hilbert::{conic_has_point, hilbert2, hilbert2_classes, product_formula, relevant_places};
pub use padic::Padic;
pub use residue::{hilbert_etale, tame_symbol, tame_symbol_residue, LocalElem, LocalFieldDesc, ResidueField};
pub use tate::{
    enumerate_h1_local, epsilon, localize, localize_v4, tate_pair_c3, tate_pair_v4, tate_pair_v4_split, v4_split_classes,
    v4_split_report, C3Local, C3LocalClass, C3Side, GlobalCoclass, LocalCoclass, LocalModule, PairingReport, V4LocalClass,
};
