// Reduced simplicial homology and cohomology over different fields.

use facering::catalog;
use facering::homology::augmented_chain_complex;
use facering::{reduced_cohomology, reduced_homology, FieldSpec, Result};

pub fn run_example() -> Result<()> {
    let fields = [FieldSpec::Q, FieldSpec::GF2, FieldSpec::GF3];
    let named = [
        ("two points", catalog::two_points()),
        ("hollow triangle", catalog::hollow_triangle()),
        ("tetrahedron boundary", catalog::tetrahedron_boundary()),
        ("RP2 on six vertices", catalog::rp2_six()),
    ];
    for (name, complex) in &named {
        for field in fields {
            let h = reduced_homology(complex, field);
            assert_eq!(h, reduced_cohomology(complex, field));
            println!(
                "{name:>22} over {field:<5}: nonzero in degrees {:?}, dims {:?}",
                h.support(),
                h.dims
            );
        }
    }
    let chains = augmented_chain_complex(&catalog::hollow_triangle(), FieldSpec::Q);
    println!(
        "augmented chain dims of the hollow triangle, from degree {}: {:?}",
        chains.lo(),
        chains.dims()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
