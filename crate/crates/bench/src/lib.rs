//! Fixtures shared by the benchmarks in `benches/`.

use weakyd::examples::{corpus_instance, groupoid_algebra, FiniteGroupoid, Instance};
use weakyd::wmb::{base_algebra, BaseAlgebra, WmbStructure};

/// A corpus instance with its base algebra.
pub fn fixture(name: &str) -> (Instance, BaseAlgebra) {
    let inst = corpus_instance(name).unwrap_or_else(|| panic!("no corpus instance {name}"));
    let b = base_algebra(&inst.structure).expect("corpus instances are full");
    (inst, b)
}

/// The pair groupoid algebra on `n` objects, of dimension `n²`.
pub fn pair_algebra(n: usize) -> WmbStructure {
    groupoid_algebra(&FiniteGroupoid::pair(n)).expect("pair groupoid")
}
