//! Wigner functions of |up,up>, |up,right> and the singlet on the reference
//! two-qubit net, and the marginals they reproduce.

use wignerff::geometry::{all_lines, line_in_striation};
use wignerff::linalg::C64;
use wignerff::presets;
use wignerff::reproduce::reference_states;
use wignerff::wigner::{line_marginal, line_probabilities, phase_point_operators, wigner_transform, DensityMatrix};

fn main() -> wignerff::Result<()> {
    let net = presets::net("paper-n4")?;
    let ops = phase_point_operators(&net);
    let f = net.field();
    for (name, psi) in reference_states() {
        let rho = DensityMatrix::pure(&psi)?;
        let w = wigner_transform(&rho, &ops)?;
        println!("{name}\n{}", w.heatmap());
        let vertical: Vec<String> =
            f.elements().map(|t| format!("{:.2}", line_marginal(&w, line_in_striation(f, 0, t)))).collect();
        println!("vertical marginals {}", vertical.join(" "));
        let probs = line_probabilities(&rho, &net);
        let worst = all_lines(f).iter().zip(&probs).map(|(l, p)| (line_marginal(&w, *l) - p).abs()).fold(0.0, f64::max);
        println!("max |line sum - probability| = {worst:.1e}\n");
    }

    let mixed = DensityMatrix::new(wignerff::CMatrix::identity(4).scale(C64::new(0.25, 0.0)))?;
    println!("maximally mixed\n{}", wigner_transform(&mixed, &ops)?.heatmap());
    Ok(())
}
