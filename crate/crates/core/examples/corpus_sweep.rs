// A small exhaustive-plus-random sweep with every oracle switched on.

use facering::harness::{run_corpus, CorpusConfig};
use facering::{FieldSpec, Result};

pub fn run_example() -> Result<()> {
    let config = CorpusConfig {
        max_n: 3,
        random_count: 40,
        seed: 3,
        fields: vec![FieldSpec::Q, FieldSpec::GF2],
        nonsquarefree_samples: 20,
        ..CorpusConfig::default()
    };
    let summary = run_corpus(&config)?;
    println!(
        "exhaustive {:?}, random {:?}",
        summary.exhaustive, summary.random
    );
    for (suite, tally) in &summary.suites {
        println!("{suite:>28}: {}/{}", tally.passed, tally.checked);
    }
    assert!(summary.all_passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
