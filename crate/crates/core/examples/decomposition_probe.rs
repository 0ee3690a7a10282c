// Tor of the face ring against binomially weighted reduced cohomology,
// under both index readings.

use facering::catalog;
use facering::harness::decomposition_probe;
use facering::{FieldSpec, Result};

pub fn run_example() -> Result<()> {
    let named = [
        ("hollow triangle", catalog::hollow_triangle(), FieldSpec::Q),
        (
            "tetrahedron boundary",
            catalog::tetrahedron_boundary(),
            FieldSpec::Q,
        ),
        ("RP2 on six vertices", catalog::rp2_six(), FieldSpec::GF2),
    ];
    for (name, complex, field) in &named {
        let table = decomposition_probe(complex, *field)?;
        println!(
            "{name} over {field}, guaranteed range {:?}",
            table.guaranteed_range
        );
        println!("   r  beta  statement  literal");
        for row in &table.rows {
            let mark = if row.in_guaranteed_range { "*" } else { " " };
            println!(
                "{mark}{:>3} {:>5} {:>10} {:>8}",
                row.r, row.beta, row.statement, row.literal_proof
            );
        }
        for c in &table.conventions {
            println!(
                "  {}: matches at {:?}, whole range {}",
                c.name, c.matching_degrees, c.matches_on_guaranteed_range
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
