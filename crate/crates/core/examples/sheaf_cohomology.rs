// Sheaves on face posets: constant and simple sheaves, the closed-cover
// complex, and hypercohomology of Koszul sheaf strands.

use std::sync::Arc;

use facering::catalog;
use facering::face_ring::{koszul_strand, MultiDegree};
use facering::homology::homology_dims;
use facering::sheaf::{
    closed_cover_cohomology, constant_sheaf, global_sections, hypercohomology, koszul_sheaf_strand,
    sheaf_cohomology, simple_sheaf,
};
use facering::{Face, FacePoset, FieldSpec, Result};

pub fn run_example() -> Result<()> {
    let field = FieldSpec::Q;
    let triangle = catalog::hollow_triangle();

    let full = Arc::new(FacePoset::full(&triangle));
    let punctured = Arc::new(FacePoset::punctured(&triangle));
    println!(
        "constant sheaf, empty face included: {:?}",
        sheaf_cohomology(&constant_sheaf(&full, 1, field))?
    );
    println!(
        "constant sheaf, empty face removed:  {:?}",
        sheaf_cohomology(&constant_sheaf(&punctured, 1, field))?
    );
    println!(
        "closed-cover complex (reduced):      {:?}",
        closed_cover_cohomology(&triangle, 1, field)?
    );

    for sigma in [Face::EMPTY, Face::singleton(0), Face::from_vertices([0, 1])] {
        let g = simple_sheaf(&full, sigma, 2, field)?;
        println!(
            "G({sigma}) with stalk k^2: sections {}, cohomology {:?}",
            global_sections(&g, triangle.facets())?,
            sheaf_cohomology(&g)?
        );
    }

    let points = catalog::two_points();
    let degree = MultiDegree(vec![1, 1]);
    let strand = koszul_sheaf_strand(&points, &degree, field)?;
    println!(
        "two points, degree (1,1): sections per term {:?}, hypercohomology {:?}, strand homology {:?}",
        strand.global_section_dims()?,
        hypercohomology(&strand)?,
        homology_dims(&koszul_strand(&points, &degree, field)?)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
