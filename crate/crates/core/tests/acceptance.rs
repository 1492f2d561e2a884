//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so that the lines always reach the output. Criteria marked as not
//! attainable print their verdict but do not fail the run.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use maslov_kit::angle::Angle;
use maslov_kit::bordism::{weak_bordism_group, BettiVector, BordismLabel, UnorientedBordismTable};
use maslov_kit::jet::{
    lagrangian_closed_forms, lagrangian_pde_dims, legendrian_closed_forms, legendrian_pde_dims, max_isotropic,
    max_isotropic_dim, metasymplectic_eval, orthogonal_laws, spencer_sequence_audit, CovectorSlot, JetSignature,
    ModelFiber, PdeDims,
};
use maslov_kit::linalg::{q, DynMatrix, FMatrix, QMatrix};
use maslov_kit::maslov::{arnold_index_triple, kashiwara_index, leray_sum, line_of_lift, wall_invariant, LagrangianTuple};
use maslov_kit::metaplectic::{mp1_mul, Mp1Context};
use maslov_kit::scan::{corank_profile, loop_maslov, Sample, SampledImmersion, Topology};
use maslov_kit::selftest::{run_selftest, DEFAULT_SEED};
use maslov_kit::symplectic::random::{random_lagrangian, random_symplectic, random_tuple};
use maslov_kit::symplectic::{lagrangian_from_angles, loop_degree, LagrangianFrame, SymplecticSpace};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

struct Criterion {
    id: u8,
    title: &'static str,
    tolerance: &'static str,
    budget: Option<Duration>,
    attainable: bool,
    run: fn() -> Verdict,
}

fn tuple(frames: Vec<LagrangianFrame>) -> LagrangianTuple {
    LagrangianTuple::new(frames).expect("tuple")
}

fn tau(frames: Vec<LagrangianFrame>) -> i64 {
    kashiwara_index(&tuple(frames)).expect("kashiwara").0
}

fn kashiwara_triple() -> Verdict {
    let lines: Vec<LagrangianFrame> =
        [0, 1, 2].iter().map(|&k| lagrangian_from_angles(&[Angle::pi_frac(k, 3)]).unwrap()).collect();
    let t = tuple(lines);
    let (fwd, rev) = (kashiwara_index(&t).unwrap().0, kashiwara_index(&t.reversed()).unwrap().0);
    verdict(fwd == 1 && rev == -1, format!("τ = {fwd}, reversed {rev}"))
}

fn cocycle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut bad = 0;
    for case in 0..1000 {
        let l = random_tuple(&mut rng, 1 + case % 3, 4).unwrap();
        let t = |i: usize, j: usize, k: usize| tau(vec![l[i].clone(), l[j].clone(), l[k].clone()]);
        if t(0, 1, 2) - t(0, 1, 3) + t(0, 2, 3) - t(1, 2, 3) != 0 {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("1000 quadruples, {bad} nonzero"))
}

fn wall_kashiwara() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad = 0;
    for case in 0..500 {
        let t = tuple(random_tuple(&mut rng, 1 + case % 3, 3).unwrap());
        if wall_invariant(&t).unwrap() != kashiwara_index(&t).unwrap() {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("500 triples, {bad} disagreements"))
}

fn rational_line(rng: &mut ChaCha8Rng) -> (i64, i64) {
    loop {
        let (a, b) = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        if (a, b) != (0, 0) {
            return (a, b);
        }
    }
}

fn arnold_kashiwara() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut done, mut bad) = (0, 0);
    while done < 100 {
        let dirs: Vec<(i64, i64)> = (0..3).map(|_| rational_line(&mut rng)).collect();
        let distinct = (0..3).all(|i| (0..i).all(|j| dirs[i].0 * dirs[j].1 != dirs[i].1 * dirs[j].0));
        if !distinct {
            continue;
        }
        let l: Vec<LagrangianFrame> =
            dirs.iter().map(|&(a, b)| LagrangianFrame::exact(QMatrix::new(2, 1, vec![q(a), q(b)]).unwrap()).unwrap()).collect();
        if arnold_index_triple(&l[0], &l[1], &l[2]).unwrap() != tau(l.clone()) {
            bad += 1;
        }
        done += 1;
    }
    verdict(bad == 0, format!("100 rational-slope triples, {bad} disagreements"))
}

fn symplectic_invariance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    for case in 0..10 {
        let n = 1 + case % 3;
        let l = random_tuple(&mut rng, n, 3 + case % 2).unwrap();
        let base = tau(l.clone());
        for _ in 0..100 {
            let g = DynMatrix::Exact(random_symplectic(&mut rng, n, 6));
            if tau(l.iter().map(|f| f.transform(&g).unwrap()).collect()) != base {
                bad += 1;
            }
        }
    }
    verdict(bad == 0, format!("10 tuples × 100 symplectic images, {bad} changes"))
}

fn leray() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bad = 0;
    for _ in 0..10_000 {
        let r = rng.gen_range(2..=6);
        let lifts: Vec<Angle> = (0..r)
            .map(|_| {
                let d = rng.gen_range(1..=6);
                Angle::pi_frac(rng.gen_range(-3 * d..=3 * d), d)
            })
            .collect();
        let lines = lifts.iter().map(|a| line_of_lift(a).unwrap()).collect();
        if leray_sum(&lifts) != tau(lines) {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("10⁴ lift tuples, {bad} mismatches"))
}

fn associativity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = 0;
    for case in 0..500 {
        let n = 1 + case % 2;
        let ctx = Mp1Context::new(random_lagrangian(&mut rng, n, 3).unwrap()).unwrap();
        let (a, b, c) = (ctx.random_element(&mut rng), ctx.random_element(&mut rng), ctx.random_element(&mut rng));
        let left = mp1_mul(&mp1_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mp1_mul(&a, &mp1_mul(&b, &c).unwrap()).unwrap();
        if left.w != right.w || left.g() != right.g() {
            bad += 1;
        }
    }
    verdict(bad == 0, format!("500 triples in Sp(1), Sp(2), {bad} failures"))
}

fn angle_loop(turns: i64) -> Vec<LagrangianFrame> {
    let samples = 64 * turns as usize;
    let mut path: Vec<LagrangianFrame> = (0..samples)
        .map(|k| lagrangian_from_angles(&[Angle::Radians((PI * k as f64 / 64.0).rem_euclid(PI))]).unwrap())
        .collect();
    path.push(path[0].clone());
    path
}

fn loop_generator() -> Verdict {
    let (one, two) = (loop_degree(&angle_loop(1)).unwrap(), loop_degree(&angle_loop(2)).unwrap());
    verdict(one == 1 && two == 2, format!("degrees {one} and {two}"))
}

fn dims_str(d: &PdeDims) -> String {
    format!("({}, {}, {})", d.dim, d.dim_plus1, d.dim_g1_plus1)
}

fn lagrangian_pde() -> Verdict {
    let closed = lagrangian_closed_forms(2);
    let closed_ok = (closed.dim, closed.dim_plus1, closed.dim_g1_plus1) == (7, 11, 4) && closed.additive();
    let mut parts = vec![format!("closed n=2 {}", dims_str(&closed))];
    let mut ok = closed_ok;
    for n in [2, 3] {
        let r = lagrangian_pde_dims(n, 20, 71).unwrap();
        let observed: Vec<String> = r.observed.iter().map(|s| dims_str(&s.dims())).collect();
        parts.push(format!("n={n} closed {} ranks {} surjective {}", dims_str(&r.closed), observed.join("/"), r.surjective));
        ok &= r.ranks_match_closed && r.surjective;
    }
    verdict(ok, parts.join("; "))
}

fn legendrian_pde() -> Verdict {
    let closed = legendrian_closed_forms(2);
    let mut ok = (closed.dim, closed.dim_plus1, closed.dim_g1_plus1) == (9, 15, 6) && closed.additive();
    let mut sums = Vec::new();
    for n in 1..=5 {
        let r = legendrian_pde_dims(n).unwrap();
        ok &= r.involutive && r.cascade_rank == r.cascade_closed;
        sums.push(r.cascade_sum.to_string());
    }
    let observed = legendrian_pde_dims(2).unwrap().observed;
    verdict(
        ok,
        format!(
            "closed n=2 {}, cascade sums n≤5 [{}]; rank of the prolonged linearization at n=2 is {}",
            dims_str(&closed),
            sums.join(", "),
            observed.dim_plus1
        ),
    )
}

fn unit_triangular(rng: &mut ChaCha8Rng, n: usize, p: usize) -> QMatrix {
    QMatrix::from_fn(n, p, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => q(1),
        std::cmp::Ordering::Less => q(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Greater => q(0),
    })
}

fn max_isotropic_dims() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut cases, mut bad) = (0, 0);
    for n in 1..=4 {
        for m in 1..=2 {
            for k in 1..=3 {
                let sig = JetSignature::new(n, m, k).unwrap();
                let fiber = ModelFiber::new(sig).unwrap();
                let slots = fiber.slot_count();
                for p in 0..=n {
                    cases += 1;
                    let model = max_isotropic(&sig, p, &unit_triangular(&mut rng, n, p)).unwrap();
                    let cols = model.frame.columns();
                    let isotropic = (0..slots).all(|s| {
                        let mut c = vec![q(0); slots];
                        c[s] = q(1);
                        let lambda = CovectorSlot::new(sig, c).unwrap();
                        cols.iter().all(|a| cols.iter().all(|b| metasymplectic_eval(&fiber, &lambda, a, b).unwrap() == q(0)))
                    });
                    if !isotropic || model.dim() != max_isotropic_dim(&sig, p) {
                        bad += 1;
                    }
                }
            }
        }
    }
    verdict(bad == 0, format!("{cases} cases, {bad} failures"))
}

fn orthogonal_laws_sweep() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let sigs = [(1, 1, 1), (2, 1, 1), (2, 1, 2), (1, 2, 1), (2, 2, 1)];
    let mut held = [0; 3];
    for case in 0..100 {
        let (n, m, k) = sigs[case % sigs.len()];
        let fiber = ModelFiber::new(JetSignature::new(n, m, k).unwrap()).unwrap();
        let d = fiber.dim();
        let (a, b) = (rng.gen_range(0..=d), rng.gen_range(0..=d));
        let p1 = QMatrix::from_fn(d, a, |_, _| q(rng.gen_range(-2..=2)));
        let p2 = QMatrix::from_fn(d, b, |_, _| q(rng.gen_range(-2..=2)));
        let laws = orthogonal_laws(&fiber, &p1, &p2).unwrap();
        held[0] += laws.double_perp as usize;
        held[1] += laws.sum_rule as usize;
        held[2] += laws.intersection_rule as usize;
    }
    verdict(
        held == [100; 3],
        format!("100 pairs: (a) held {}, (b) held {}, (c) held {}", held[0], held[1], held[2]),
    )
}

fn spencer() -> Verdict {
    let (mut cases, mut bad) = (0, 0);
    for n in 1..=3 {
        for m in 1..=2 {
            for k in 1..=3 {
                cases += 1;
                if !spencer_sequence_audit(&JetSignature::new(n, m, k).unwrap()).unwrap().exact {
                    bad += 1;
                }
            }
        }
    }
    verdict(bad == 0, format!("{cases} signatures, {bad} inexact"))
}

fn bordism() -> Verdict {
    let point = BettiVector::new(vec![1]).unwrap();
    let table = UnorientedBordismTable::builtin();
    let ranks: Vec<u64> =
        (1..=4).map(|n| weak_bordism_group(&point, n, &table, BordismLabel::Lagrangian).unwrap().rank).collect();
    verdict(ranks == [1, 0, 1, 0], format!("ranks for n = 1..4: {ranks:?}"))
}

fn maslov_cycle_shadow() -> Verdict {
    let circle: Vec<Sample> = (0..64)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 64.0;
            Sample { param: vec![t], point: vec![t.cos(), t.sin()], frame: Some(FMatrix::new(2, 1, vec![-t.sin(), t.cos()]).unwrap()) }
        })
        .collect();
    let circle = SampledImmersion::new(1, 2, circle, Topology::Loop).unwrap();
    let mu = loop_maslov(&circle, &SymplecticSpace::standard(1).unwrap(), 1e-6).unwrap();
    let profile = corank_profile(&circle, None, 1e-6).unwrap();
    let loci = profile.strata[0].components;
    let mut graph = Vec::new();
    for a in 0..9 {
        for b in 0..9 {
            let (x, y) = (a as f64 / 4.0 - 1.0, b as f64 / 4.0 - 1.0);
            // graph of the gradient of x³/3 + x y² + y⁴/4
            let frame = FMatrix::new(4, 2, vec![1.0, 0.0, 0.0, 1.0, 2.0 * x, 2.0 * y, 2.0 * y, 2.0 * x + 3.0 * y * y]).unwrap();
            graph.push(Sample {
                param: vec![x, y],
                point: vec![x, y, x * x + y * y, 2.0 * x * y + y * y * y],
                frame: Some(frame),
            });
        }
    }
    let graph = SampledImmersion::new(2, 4, graph, Topology::Grid { shape: vec![9, 9], periodic: vec![false, false] }).unwrap();
    let flat = corank_profile(&graph, None, 1e-6).unwrap().coranks.iter().all(|&c| c == 0);
    verdict(
        mu == 2 && loci == 2 && profile.strata[0].samples.len() == 2 && flat,
        format!("circle: μ = {mu}, corank-1 loci {loci}; graph profile zero: {flat}"),
    )
}

fn determinism() -> Verdict {
    let a = serde_json::to_string(&run_selftest(DEFAULT_SEED, false)).unwrap();
    let b = serde_json::to_string(&run_selftest(DEFAULT_SEED, false)).unwrap();
    verdict(a == b && !a.is_empty(), format!("{} bytes, identical: {}", a.len(), a == b))
}

fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, title: "Kashiwara triple value", tolerance: "exact, < 1 s", budget: secs(1), attainable: true, run: kashiwara_triple },
        Criterion { id: 2, title: "cocycle identity", tolerance: "exact, < 60 s", budget: secs(60), attainable: true, run: cocycle },
        Criterion { id: 3, title: "Wall = Kashiwara", tolerance: "exact, < 60 s", budget: secs(60), attainable: true, run: wall_kashiwara },
        Criterion { id: 4, title: "Arnold = Kashiwara, n = 1", tolerance: "exact, < 10 s", budget: secs(10), attainable: true, run: arnold_kashiwara },
        Criterion { id: 5, title: "symplectic invariance", tolerance: "exact", budget: None, attainable: true, run: symplectic_invariance },
        Criterion { id: 6, title: "Leray summation", tolerance: "exact", budget: None, attainable: true, run: leray },
        Criterion { id: 7, title: "metaplectic associativity", tolerance: "exact", budget: None, attainable: true, run: associativity },
        Criterion { id: 8, title: "loop degree generator", tolerance: "exact integer", budget: None, attainable: true, run: loop_generator },
        Criterion { id: 9, title: "Lagrangian PDE dimension audit", tolerance: "exact", budget: None, attainable: false, run: lagrangian_pde },
        Criterion { id: 10, title: "Legendrian PDE audit", tolerance: "exact", budget: None, attainable: true, run: legendrian_pde },
        Criterion { id: 11, title: "maximal isotropic dimensions", tolerance: "exact", budget: None, attainable: true, run: max_isotropic_dims },
        Criterion { id: 12, title: "metasymplectic orthogonal laws", tolerance: "exact", budget: None, attainable: false, run: orthogonal_laws_sweep },
        Criterion { id: 13, title: "Spencer exactness", tolerance: "exact, < 120 s", budget: secs(120), attainable: true, run: spencer },
        Criterion { id: 14, title: "bordism formula", tolerance: "exact", budget: None, attainable: true, run: bordism },
        Criterion { id: 15, title: "Maslov cycle shadow", tolerance: "exact", budget: None, attainable: true, run: maslov_cycle_shadow },
        Criterion { id: 16, title: "selftest determinism", tolerance: "byte-identical", budget: None, attainable: true, run: determinism },
    ]
}

fn main() -> ExitCode {
    let mut broken = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let v = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.budget.map_or(true, |b| elapsed <= b);
        let pass = v.pass && in_time;
        let note = if c.attainable { "" } else { " [known unattainable]" };
        println!(
            "criterion {:>2} {} {} ({}; {:.2} s){}: {}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            c.tolerance,
            elapsed.as_secs_f64(),
            note,
            v.detail
        );
        if c.attainable && !pass {
            broken.push(c.id);
        }
    }
    if broken.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failing attainable criteria: {broken:?}");
        ExitCode::FAILURE
    }
}
