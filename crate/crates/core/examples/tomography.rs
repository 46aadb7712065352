//! Reconstruct a qutrit state from simulated measurement counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wignerff::gf::make_field;
use wignerff::linalg::{CMatrix, C64};
use wignerff::net::{build_net, RayChoice};
use wignerff::weylops::BasisPair;
use wignerff::wigner::{
    inverse_wigner, line_probabilities, phase_point_operators, tomographic_reconstruct, wigner_transform, DensityMatrix,
    ProbabilityKind, TomographyOptions,
};

fn main() -> wignerff::Result<()> {
    let f = make_field(3, 1)?;
    let net = build_net(&BasisPair::standard(f), RayChoice::zeros(f))?;
    let ops = phase_point_operators(&net);

    let psi = [C64::new(0.6, 0.0), C64::new(0.0, 0.48), C64::new(0.64, 0.0)];
    let rho = DensityMatrix::pure(&psi)?;
    let exact = line_probabilities(&rho, &net);

    // 2000 shots per striation.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut counts = vec![0.0; exact.len()];
    for s in 0..=f.order() {
        let block = &exact[s * 3..s * 3 + 3];
        for _ in 0..2000 {
            let mut u: f64 = rng.gen();
            let k = block.iter().position(|&p| {
                u -= p;
                u < 0.0
            });
            counts[s * 3 + k.unwrap_or(2)] += 1.0;
        }
    }

    let t = tomographic_reconstruct(f, &counts, ProbabilityKind::Frequencies, TomographyOptions::default())?;
    println!("reconstructed\n{}", t.wigner.heatmap());
    println!("exact\n{}", wigner_transform(&rho, &ops)?.heatmap());
    let est: CMatrix = inverse_wigner(&t.wigner, &ops);
    println!("max |rho_est - rho| = {:.3}", est.max_abs_diff(rho.matrix()));
    Ok(())
}
