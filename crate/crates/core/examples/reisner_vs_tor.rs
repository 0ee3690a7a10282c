// The link test against Tor vanishing, field by field.

use facering::catalog;
use facering::harness::{cross_check, reisner_criterion};
use facering::{FieldSpec, Result, SimplicialComplex};

pub fn run_example() -> Result<()> {
    let fields = [FieldSpec::Q, FieldSpec::GF2, FieldSpec::GF3];
    let pinched = SimplicialComplex::from_vertex_lists(5, &[vec![0, 1, 2], vec![0, 3, 4]])?;
    let named = [
        ("full simplex", SimplicialComplex::simplex(4)),
        ("two disjoint edges", catalog::two_disjoint_edges()),
        ("RP2 on six vertices", catalog::rp2_six()),
        ("two triangles sharing a vertex", pinched),
    ];
    for (name, complex) in &named {
        let report = cross_check(complex, &fields)?;
        for f in &report.fields {
            let witness = f
                .reisner
                .witness
                .as_ref()
                .map(|w| format!(", witness H~_{}(lk {}) = {}", w.degree, w.face, w.homology))
                .unwrap_or_default();
            println!(
                "{name:>30} over {:<5}: links {:<5} Tor {:<5} depth {} / Krull {}{witness}",
                f.field.to_string(),
                f.reisner.is_cm,
                f.algebraic.is_cm,
                f.depth,
                f.krull_dim
            );
        }
    }
    let v = reisner_criterion(&catalog::rp2_six(), FieldSpec::GF2);
    println!(
        "RP2 over GF(2): link condition {}, condition on the complex itself {}",
        v.links_condition, v.complex_condition
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
