//! Benchmark workloads built from the catalog families.

use basinlab::deform::catalog::{
    example41, example42, example43, CubicParams, LineParams, RotationParams,
};
use basinlab::deform::{DeformationFamily, TSchedule};
use basinlab::foliation::{singular_ideal, CompleteIntersection};
use basinlab::groebner::Ideal;
use basinlab::rational::rat;

/// Singular ideal of the twisted-cubic family at `t = 1/1000` (27 points).
pub fn cubic_ideal() -> Ideal {
    let ex = example42(CubicParams::default()).expect("catalog");
    singular_ideal(&ex.family.at(&rat(1, 1000))).expect("nonzero field")
}

/// Singular ideal of the line family of degree `m` at `t = 1/1000`.
pub fn line_ideal(m: u32) -> Ideal {
    let ex = example41(LineParams::generic(m, 7)).expect("catalog");
    singular_ideal(&ex.family.at(&rat(1, 1000))).expect("nonzero field")
}

/// Families passed to the classifier, labelled for reporting.
pub fn families() -> Vec<(&'static str, DeformationFamily, CompleteIntersection)> {
    let line = example41(LineParams::generic(2, 7)).expect("catalog");
    let cubic = example42(CubicParams::default()).expect("catalog");
    let rotation = example43(RotationParams::special()).expect("catalog");
    vec![
        ("line m=2", line.family, line.w),
        ("cubic translation", cubic.translation, cubic.w),
        ("rotation", rotation.family, rotation.w),
    ]
}

pub fn schedule() -> TSchedule {
    TSchedule::default()
}
