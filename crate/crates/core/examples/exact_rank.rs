// Exact ranks: the same integer matrix can lose rank modulo a prime.

use facering::{ExactMatrix, FieldSpec, Result};

pub fn run_example() -> Result<()> {
    // The 3x3 matrix with 0 on the diagonal and 1 elsewhere has
    // determinant 2, so it is singular exactly over GF(2).
    let values = [0, 1, 1, 1, 0, 1, 1, 1, 0];
    for field in [
        FieldSpec::Q,
        FieldSpec::GF2,
        FieldSpec::GF3,
        FieldSpec::prime(65_521)?,
    ] {
        let m = ExactMatrix::from_integers(field, 3, 3, &values)?;
        println!(
            "rank over {field}: {}, kernel dim {}",
            m.rank(),
            m.kernel_dim()
        );
    }

    // A scaled Vandermonde matrix: elimination overflows 64 bits, rank stays full.
    let big = ExactMatrix::from_fn(FieldSpec::Q, 6, 6, |r, c| {
        1_000_003 * (r as i64 + 2).pow(c as u32)
    });
    println!(
        "rank of a 6x6 matrix with large entries over Q: {}",
        big.rank()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
