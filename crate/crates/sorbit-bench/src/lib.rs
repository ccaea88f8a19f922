//! Shared fixtures for the benchmarks.

use sorbit::{parse_label, MultiplicitySpec, RootSystem, WeylGroup};

pub fn system(label: &str) -> RootSystem {
    let (family, rank) = parse_label(label).expect("known label");
    RootSystem::new(family, rank).expect("valid pair")
}

pub fn system_with_m(label: &str, m: u32) -> (RootSystem, WeylGroup) {
    let rs = system(label)
        .with_multiplicities(&MultiplicitySpec::Uniform(m))
        .expect("valid multiplicity");
    let weyl = WeylGroup::enumerate(&rs).expect("within bound");
    (rs, weyl)
}
