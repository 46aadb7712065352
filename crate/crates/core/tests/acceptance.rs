//! One line per acceptance criterion; the process fails if any criterion does.

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wignerff::classify::*;
use wignerff::geometry::{all_lines, LinearMap, PhasePoint};
use wignerff::gf::{make_field, Field, FieldElement};
use wignerff::linalg::{CMatrix, C64, ONE, ZERO};
use wignerff::mub::{mub_family, verify_mub};
use wignerff::net::{build_net, build_net_in, enumerate_choices, enumerate_representatives, RayChoice};
use wignerff::presets;
use wignerff::reproduce::{reference_states, GAMMA_REFERENCES};
use wignerff::weylops::BasisPair;
use wignerff::wigner::{
    inverse_wigner, line_probabilities, phase_point_operators, tomographic_reconstruct, wigner_transform, DensityMatrix,
    ProbabilityKind, TomographyOptions,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(r: u32, n: u32) -> Field {
    make_field(r, n).unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn f4_tables() -> Outcome {
    let f = field(2, 2);
    let names = ["0", "1", "w", "wbar"];
    let add = [["0", "1", "w", "wbar"], ["1", "0", "wbar", "w"], ["w", "wbar", "0", "1"], ["wbar", "w", "1", "0"]];
    let mul = [["0", "0", "0", "0"], ["0", "1", "w", "wbar"], ["0", "w", "wbar", "1"], ["0", "wbar", "1", "w"]];
    for i in 0..4 {
        for j in 0..4 {
            let (x, y) = (f.parse(names[i]).unwrap(), f.parse(names[j]).unwrap());
            ensure((x + y).to_string() == add[i][j], || format!("{x} + {y} = {}", x + y))?;
            ensure((x * y).to_string() == mul[i][j], || format!("{x} * {y} = {}", x * y))?;
        }
    }
    Ok("16 sums and 16 products exact".into())
}

fn two_qubit_bases() -> Outcome {
    let i = c(0.0, 1.0);
    let (o, m) = (ONE, -ONE);
    let h = |v: [C64; 4]| v.map(|z| z * 0.5).to_vec();
    let expected: Vec<Vec<Vec<C64>>> = vec![
        vec![vec![o, ZERO, ZERO, ZERO], vec![ZERO, o, ZERO, ZERO], vec![ZERO, ZERO, o, ZERO], vec![ZERO, ZERO, ZERO, o]],
        vec![h([o, o, o, o]), h([o, m, o, m]), h([o, o, m, m]), h([o, m, m, o])],
        vec![h([o, -i, i, o]), h([o, i, i, m]), h([o, -i, -i, m]), h([o, i, -i, o])],
        vec![h([o, o, i, -i]), h([o, m, i, i]), h([o, o, -i, i]), h([o, m, -i, -i])],
        vec![h([o, -i, o, i]), h([o, i, o, -i]), h([o, -i, m, -i]), h([o, i, m, i])],
    ];
    let fam = mub_family(&presets::paper_n4_pair());
    let mut worst: f64 = 1.0;
    for (b, want) in fam.bases.iter().zip(&expected) {
        for (v, w) in b.vectors.iter().zip(want) {
            worst = worst.min(wignerff::linalg::inner(w, v).norm());
        }
    }
    ensure(worst >= 1.0 - 1e-10, || format!("min overlap {worst}"))?;
    Ok(format!("20 vectors, min overlap {worst:.12}"))
}

fn mub_property() -> Outcome {
    let mut out = Vec::new();
    for (r, n) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = field(r, n);
        let fam = mub_family(&BasisPair::standard(f));
        let rep = verify_mub(&fam);
        ensure(fam.bases.len() == f.order() + 1, || format!("N={} has {} bases", f.order(), fam.bases.len()))?;
        ensure(rep.max_deviation <= 1e-9, || format!("N={} deviation {:e}", f.order(), rep.max_deviation))?;
        out.push(format!("{}:{:.0e}", f.order(), rep.max_deviation));
    }
    Ok(out.join(" "))
}

fn two_qubit_tables() -> Outcome {
    let q = 0.25;
    // Rows top-down p = wbar, w, 1, 0; columns q = 0, 1, w, wbar.
    let tables = [
        [[q, 0.0, 0.0, 0.0], [q, 0.0, 0.0, 0.0], [q, 0.0, 0.0, 0.0], [q, 0.0, 0.0, 0.0]],
        [[0.0; 4], [q, q, 0.0, 0.0], [0.0; 4], [q, q, 0.0, 0.0]],
        [[0.0; 4], [0.0, q, q, 0.0], [0.0, q, q, 0.0], [0.0; 4]],
    ];
    let net = presets::net("paper-n4").unwrap();
    let ops = phase_point_operators(&net);
    let mut worst: f64 = 0.0;
    for ((_, psi), t) in reference_states().into_iter().zip(tables) {
        let w = wigner_transform(&DensityMatrix::pure(&psi).unwrap(), &ops).unwrap();
        let grid = w.grid();
        for (row, want) in grid.iter().rev().zip(t) {
            for (x, y) in row.iter().zip(want) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    ensure(worst < 1e-10, || format!("max deviation {worst:e}"))?;
    Ok(format!("3 tables, max deviation {worst:.1e}"))
}

fn a_algebra() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut nets = 0;
    for (r, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = field(r, n);
        let pair = if f.order() == 4 { presets::paper_n4_pair() } else { BasisPair::standard(f) };
        let fam = Arc::new(mub_family(&pair));
        // A translated net only relabels its operators, so one net per class covers every net.
        let choices: Vec<RayChoice> = if f.order() <= 3 {
            enumerate_choices(f).unwrap().collect()
        } else {
            enumerate_representatives(f).unwrap().collect()
        };
        for ch in choices {
            let net = build_net_in(&fam, ch).unwrap();
            let ops = phase_point_operators(&net);
            let nn = f.order() as f64;
            for (i, a) in ops.ops().iter().enumerate() {
                worst = worst.max((a.trace() - ONE).norm());
                for (j, b) in ops.ops().iter().enumerate() {
                    let want = if i == j { nn } else { 0.0 };
                    worst = worst.max((a.trace_product(b) - c(want, 0.0)).norm());
                }
            }
            for l in all_lines(f) {
                let sum = l.points().iter().fold(CMatrix::zeros(f.order()), |acc, &p| &acc + ops.get(p));
                worst = worst.max(sum.max_abs_diff(&net.projector(l).scale_re(nn)));
            }
            nets += 1;
        }
    }
    ensure(worst < 1e-8, || format!("max residual {worst:e}"))?;
    Ok(format!("{nets} nets, max residual {worst:.1e}"))
}

fn gamma_goldens() -> Outcome {
    let mut out = Vec::new();
    let d_of = |name: &str| match name {
        "n4-d0" => Some("0"),
        "n4-d1" => Some("1"),
        "n4-dw" => Some("w"),
        "n4-dwbar" => Some("wbar"),
        _ => None,
    };
    for g in GAMMA_REFERENCES {
        let ch = g.find().unwrap().ok_or_else(|| format!("{}: no net has this array", g.name))?;
        let net = build_net(&g.pair().unwrap(), ch.clone()).unwrap();
        let grid = gamma_00(&net);
        let target = g.target();
        for (row, want) in grid.iter().zip(target.iter().rev()) {
            for (z, x) in row.iter().zip(want) {
                ensure((z - c(*x, 0.0)).norm() < 1e-9, || format!("{}: {z} vs {x}", g.name))?;
            }
        }
        if let Some(d) = d_of(g.name) {
            let got = discriminant_d(&ch).unwrap().to_string();
            ensure(got == d, || format!("{}: D = {got}", g.name))?;
        }
        out.push(format!("{}:{:.4}", g.name, grid[0][0].re));
    }
    let f2 = field(2, 1);
    let zero = gamma_00(&build_net(&BasisPair::standard(f2), RayChoice::zeros(f2)).unwrap());
    ensure((zero[0][0].re - 1.25).abs() < 1e-9, || "N=2 zero net".into())?;
    Ok(out.join(" "))
}

/// Equivalence classes counted by distinct Γ tensors over every ray choice.
fn gamma_classes(pair: &BasisPair) -> usize {
    let fam = Arc::new(mub_family(pair));
    let keys: HashSet<Vec<(i64, i64)>> = enumerate_choices(pair.field())
        .unwrap()
        .map(|ch| {
            let g = gamma(&build_net_in(&fam, ch).unwrap());
            g.values().iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect()
        })
        .collect();
    keys.len()
}

fn counts() -> Outcome {
    let mut out = Vec::new();
    for (r, n, classes, sizes) in
        [(2, 1, 2, vec![2]), (3, 1, 9, vec![8, 1]), (2, 2, 64, vec![20, 20, 12, 12])]
    {
        let f = field(r, n);
        let pair = if f.order() == 4 { presets::paper_n4_pair() } else { BasisPair::standard(f) };
        let by_gamma = gamma_classes(&pair);
        let reps = enumerate_representatives(f).unwrap().count();
        ensure(by_gamma == classes && reps == classes, || format!("N={}: {by_gamma} Γ classes, {reps} reps", f.order()))?;
        let rep = similarity_orbits(&pair).unwrap();
        ensure(rep.orbit_sizes == sizes, || format!("N={}: sizes {:?}", f.order(), rep.orbit_sizes))?;
        out.push(format!("N={} {classes} {:?}", f.order(), rep.orbit_sizes));
    }
    Ok(out.join("; "))
}

fn burnside5() -> Outcome {
    let rep = similarity_orbits(&BasisPair::standard(field(5, 1))).unwrap();
    ensure(rep.orbit_count == 11, || format!("{} orbits", rep.orbit_count))?;
    ensure(rep.burnside.orbit_count == 11, || format!("Burnside {}", rep.burnside.orbit_count))?;
    ensure(rep.orbit_sizes.iter().sum::<usize>() == 625, || "sizes do not sum to 625".into())?;
    Ok(format!("direct 11, Burnside 11 (|G| = {}, {} classes)", rep.burnside.group_order, rep.burnside.classes.len()))
}

fn discriminant() -> Outcome {
    let f = field(2, 2);
    let rep = similarity_orbits(&presets::paper_n4_pair()).unwrap();
    let mut sizes = BTreeMap::new();
    for o in &rep.orbits {
        let ds: HashSet<FieldElement> = o.members.iter().map(|m| discriminant_d(m).unwrap()).collect();
        ensure(ds.len() == 1, || format!("orbit {:?} has D values {ds:?}", o.representative))?;
        sizes.insert(ds.into_iter().next().unwrap().to_string(), o.size);
    }
    let want: BTreeMap<String, usize> =
        [("0", 20), ("1", 20), ("w", 12), ("wbar", 12)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    ensure(sizes == want, || format!("level sets {sizes:?}"))?;
    let moves = [
        IndexMove::L1,
        IndexMove::L2,
        IndexMove::L3,
        IndexMove::Translate(PhasePoint::new(f.one(), f.zero())),
        IndexMove::Translate(PhasePoint::new(f.zero(), f.one())),
    ];
    let mut checked = 0;
    for v in enumerate_choices(f).unwrap() {
        let d = discriminant_d(&v).unwrap();
        for mv in moves {
            ensure(discriminant_d(&index_transform(mv, &v).unwrap()).unwrap() == d, || format!("{mv:?} breaks D at {v:?}"))?;
            checked += 1;
        }
    }
    // The L2 index map with d' = e, e' = d + w in place of d' = wbar e, e' = w d + w.
    let w = f.element(2);
    let literal_breaks = enumerate_choices(f)
        .unwrap()
        .filter(|v| {
            let [a, b, cc, d, e]: [FieldElement; 5] = v.labels().try_into().unwrap();
            let img = RayChoice::new(vec![cc + f.one(), b, a + w, e, d + w]).unwrap();
            discriminant_d(&img).unwrap() != discriminant_d(v).unwrap()
        })
        .count();
    Ok(format!("level sets 20/20/12/12, {checked} images invariant; L2 without the w factors breaks D on {literal_breaks}/1024"))
}

fn covariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (r, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = field(r, n);
        let pair = if f.order() == 4 { presets::paper_n4_pair() } else { BasisPair::standard(f) };
        let z = default_z(f);
        let mut maps: Vec<LinearMap> = Generator::ALL.iter().map(|g| g.matrix(z)).collect();
        for _ in 0..20 {
            let len = rng.gen_range(1..12);
            let word: Vec<Generator> = (0..len).map(|_| Generator::ALL[rng.gen_range(0..6)]).collect();
            maps.push(multiply_word(&word, z));
        }
        for l in maps {
            let u = unitary_for_linear(&l, &pair).map_err(|e| e.to_string())?;
            worst = worst.max(covariance_residual(&u, &l, &pair)).max(u.unitarity_residual());
            count += 1;
        }
        // Over F_2 every invertible map has determinant 1, so the singular probe is the only one there.
        let mut probes = vec![LinearMap::new(f.one(), f.zero(), f.zero(), f.zero())];
        if f.order() > 2 {
            probes.push(LinearMap::new(z, f.zero(), f.zero(), f.one()));
        }
        for probe in probes {
            ensure(
                matches!(unitary_for_linear(&probe, &pair), Err(wignerff::Error::NonUnitDeterminant(_))),
                || format!("N={}: det {} accepted", f.order(), probe.det()),
            )?;
        }
    }
    ensure(worst < 1e-8, || format!("max residual {worst:e}"))?;
    Ok(format!("{count} maps, max residual {worst:.1e}, det != 1 rejected"))
}

fn special() -> Outcome {
    let mut out = Vec::new();
    for r in [3, 5, 7] {
        let net = special_net_odd_prime(field(r, 1)).unwrap();
        let g = gamma(&net);
        let dev = special_gamma_deviation(&g);
        let inv = gamma_sl2_invariance(&g);
        ensure(dev < 1e-8 && inv < 1e-8, || format!("N={r}: formula {dev:e}, SL(2) {inv:e}"))?;
        out.push(format!("N={r} {dev:.0e}/{inv:.0e}"));
    }
    Ok(out.join(" "))
}

fn tensor_nets() -> Outcome {
    let (a, b) = tensor_product_nets_n4().unwrap();
    for net in [&a, &b] {
        let rep = net.check();
        ensure(rep.max() < 1e-9, || format!("net invariants {rep:?}"))?;
        let ops = phase_point_operators(net);
        ensure(ops.check().max() < 1e-9, || "operator invariants".into())?;
        ensure(ops.ops().iter().all(|m| is_tensor_product(m, 1e-9)), || "non-product A".into())?;
        ensure(discriminant_d(net.choice()).unwrap().is_zero(), || "D != 0".into())?;
    }
    let conj = a.projectors().iter().zip(b.projectors()).map(|(p, q)| p.conj().max_abs_diff(q)).fold(0.0, f64::max);
    ensure(conj < 1e-10, || format!("projectors not conjugate ({conj:e})"))?;
    let reps: HashSet<String> = [&a, &b].iter().map(|n| wignerff::io::element_strings(n.choice().labels()).join(",")).collect();
    let want: HashSet<String> = ["0,0,0,0,0", "0,0,wbar,w,1"].iter().map(|s| s.to_string()).collect();
    ensure(reps == want, || format!("representatives {reps:?}"))?;
    Ok("(0,0,0,0,0) and (0,0,wbar,w,1), D = 0, conjugate".into())
}

fn random_density(n: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let g = CMatrix::from_fn(n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &g * &g.adjoint();
    let t = m.trace().re;
    DensityMatrix::new(m.scale_re(1.0 / t)).unwrap()
}

fn tomography() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for (r, n) in [(2, 1), (3, 1), (2, 2)] {
        let f = field(r, n);
        let net = build_net(&BasisPair::standard(f), RayChoice::zeros(f)).unwrap();
        let ops = phase_point_operators(&net);
        for _ in 0..100 {
            let rho = random_density(f.order(), &mut rng);
            let probs = line_probabilities(&rho, &net);
            let t = tomographic_reconstruct(f, &probs, ProbabilityKind::Probabilities, TomographyOptions::default()).unwrap();
            worst = worst.max(inverse_wigner(&t.wigner, &ops).max_abs_diff(rho.matrix()));
        }
    }
    ensure(worst < 1e-8, || format!("max deviation {worst:e}"))?;
    Ok(format!("300 states, max deviation {worst:.1e}"))
}

fn census() -> Outcome {
    let mut out = Vec::new();
    for (r, n, total, sizes) in [(2, 1, 2, vec![2]), (3, 1, 18, vec![8, 1]), (2, 2, 192, vec![20, 20, 12, 12])] {
        let c = w_variant_census(field(r, n)).unwrap();
        ensure(c.total == total, || format!("N={}: total {}", r.pow(n), c.total))?;
        for col in &c.columns {
            ensure(col.orbit_sizes == sizes, || format!("N={} w={}: {:?}", r.pow(n), col.w, col.orbit_sizes))?;
        }
        out.push(format!("N={} {total}", r.pow(n)));
    }
    Ok(out.join(" "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("F_4 tables", f4_tables),
        ("two-qubit bases", two_qubit_bases),
        ("MUB property", mub_property),
        ("two-qubit Wigner tables", two_qubit_tables),
        ("A-operator algebra", a_algebra),
        ("Gamma golden values", gamma_goldens),
        ("classification counts", counts),
        ("Burnside N=5", burnside5),
        ("D discriminant", discriminant),
        ("U_L covariance", covariance),
        ("odd-prime special net", special),
        ("tensor-product nets", tensor_nets),
        ("tomography round trip", tomography),
        ("w census", census),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
