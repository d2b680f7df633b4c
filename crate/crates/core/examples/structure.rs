//! Normalizers, Laplacian kernels and obstruction markers of the spaces
//! whose basic algebra is finite-dimensional.

use obstructo::poisson::{
    basic_algebra, laplacian_kernel, make_space, normalizer, obstruction_markers, SpaceKind,
};

fn main() -> obstructo::Result<()> {
    for kind in [
        SpaceKind::R2n(1),
        SpaceKind::S2,
        SpaceKind::TStarS1,
        SpaceKind::TStarRPlus,
    ] {
        let space = make_space(kind)?;
        let basis = basic_algebra(&space)?;
        let norm = normalizer(&space, &basis, 4)?;
        let kernel = laplacian_kernel(&space, &basis, 3)?;
        let markers = obstruction_markers(&space, 4)?;
        println!("{}", space.name());
        println!("  normalizer (dim {}):", norm.len());
        for f in &norm {
            println!("    {f}");
        }
        println!(
            "  laplacian kernel up to degree 3: {} elements",
            kernel.len()
        );
        println!("  D1 = {}, D2 = {}", markers.d1, markers.d2);
    }
    Ok(())
}
