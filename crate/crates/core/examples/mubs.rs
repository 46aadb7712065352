//! The five mutually unbiased bases of two qubits and a check on larger N.

use wignerff::gf::make_field;
use wignerff::mub::{mub_family, verify_mub};
use wignerff::presets;
use wignerff::weylops::BasisPair;

fn main() -> wignerff::Result<()> {
    let fam = mub_family(&presets::paper_n4_pair());
    for b in &fam.bases {
        println!("direction {}:", b.direction);
        for (l, v) in b.labels.iter().zip(&b.vectors) {
            let amps: Vec<String> = v.iter().map(|z| format!("{:+.0}{:+.0}i", 2.0 * z.re, 2.0 * z.im)).collect();
            println!("  {:<4} (1/2)[{}]", l.to_string(), amps.join(" "));
        }
    }

    for (r, n) in [(3, 1), (2, 3), (3, 2)] {
        let f = make_field(r, n)?;
        let rep = verify_mub(&mub_family(&BasisPair::standard(f)));
        println!("N = {}: {} pairs of bases, max deviation {:.1e}", f.order(), rep.pair_count, rep.max_deviation);
    }
    Ok(())
}
