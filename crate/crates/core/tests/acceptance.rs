//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use monodromy::cyclic::cyclic_power;
use monodromy::cyclo::UnitRoot;
use monodromy::defect::{nodal_beta, ProjectivePointSet};
use monodromy::infinity::{
    assemble, beta_ranges, charpoly_corollary2, chi_vector, corollary1_check, corollary3_bounds, zeta_forms,
    AssembleOptions, BetaSpec, CheckStatus, InfinityError, LocalData, ProblemSpec,
};
use monodromy::jordan::JordanStructure;
use monodromy::localsing::{milnor_number, SingularityModel};
use monodromy::oracle::{all_structures, random_cases, run_selftest, DEFAULT_LEVEL_CAP};

const SEXTIC_BUDGET: Duration = Duration::from_secs(1);
const DEGREE_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);

const RANDOM_SPECS: usize = 200;
const SPEC_SEED: u64 = 20_240_601;
const ZETA_SEED: u64 = 7_777;
const ORACLE_SEED: u64 = 12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn sextic(beta: &[i64]) -> ProblemSpec {
    ProblemSpec {
        n: 2,
        d: 6,
        singularities: vec![SingularityModel::brieskorn(&[2, 3]); 6],
        beta: BetaSpec::Given(ints(beta)),
    }
}

/// Structures collected along the way for the block-size criterion.
#[derive(Default)]
struct Collected {
    structures: Vec<(JordanStructure, u32, u64)>,
}

fn criterion_sextic(acc: &mut Collected) -> Outcome {
    let start = Instant::now();
    let on = match assemble(&sextic(&[0, 1, 0, 0, 0, 1]), AssembleOptions::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let off = match assemble(&sextic(&[0; 6]), AssembleOptions::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let j = &on.assemblies[0].jordan;
    let j0 = &off.assemblies[0].jordan;
    let root = |s| UnitRoot::from_index(s, 6);
    let mut problems = Vec::new();
    if j.blocks_at(UnitRoot::ONE).collect::<Vec<_>>() != vec![(1, &BigInt::from(8))] {
        problems.push("s=0".to_string());
    }
    for s in [2, 3, 4] {
        if j.blocks_at(root(s)).collect::<Vec<_>>() != vec![(1, &BigInt::from(9))] {
            problems.push(format!("s={s}"));
        }
    }
    for s in [1, 5] {
        if j.blocks_at(root(s)).map(|(l, c)| (l, c.clone())).collect::<Vec<_>>()
            != vec![(1, BigInt::from(5)), (2, BigInt::from(5))]
        {
            problems.push(format!("s={s} with beta_s=1"));
        }
        if j0.blocks_at(root(s)).map(|(l, c)| (l, c.clone())).collect::<Vec<_>>()
            != vec![(1, BigInt::from(3)), (2, BigInt::from(6))]
        {
            problems.push(format!("s={s} with beta_s=0"));
        }
    }
    let angles: Vec<UnitRoot> = ["1/30", "7/30", "11/30", "13/30", "17/30", "19/30", "23/30", "29/30"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let off_spectrum: Vec<UnitRoot> = j.spectrum().filter(|a| !a.is_root_of(6)).collect();
    if off_spectrum != angles {
        problems.push("eigenvalues off the 6th roots".into());
    }
    for a in &angles {
        if j.blocks_at(*a).map(|(l, c)| (l, c.clone())).collect::<Vec<_>>() != vec![(1, BigInt::from(6))] {
            problems.push(format!("blocks at {a}"));
        }
    }
    if elapsed >= SEXTIC_BUDGET {
        problems.push(format!("took {elapsed:?}"));
    }
    acc.structures.push((j.clone(), 2, 6));
    acc.structures.push((j0.clone(), 2, 6));
    if problems.is_empty() {
        outcome(
            true,
            format!("blocks 8 | 5+5 | 9 | 9 | 9 | 5+5, eight off-root eigenvalues ×6, beta=0 gives 3+6 ({elapsed:.2?})"),
        )
    } else {
        outcome(false, problems.join("; "))
    }
}

/// Random Brieskorn–Pham lists that admit at least one defect vector,
/// each with a random admissible symmetric defect vector.
fn random_specs(count: usize, seed: u64) -> Vec<ProblemSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=4u32);
        let d = rng.gen_range(2..=6u64);
        let bound = BigInt::from(d - 1).pow(n + 1);
        let k = rng.gen_range(0..=4usize);
        let mut singularities = Vec::new();
        let mut mu = BigInt::zero();
        for _ in 0..k {
            let exps: Vec<u64> = (0..n).map(|_| rng.gen_range(2..=5u64)).collect();
            let s = SingularityModel::brieskorn(&exps);
            let next = &mu + milnor_number(&s);
            if next <= bound {
                mu = next;
                singularities.push(s);
            }
        }
        let local = LocalData::new(n, d, &singularities).expect("valid local data");
        let Ok(ranges) = beta_ranges(&local) else {
            continue;
        };
        let du = d as usize;
        let free: Vec<BigInt> = (0..=du / 2)
            .map(|s| {
                let (lo, hi) = (&ranges[s].0, &ranges[s].1);
                let span = (hi - lo).to_u64().unwrap();
                lo + rng.gen_range(0..=span)
            })
            .collect();
        let beta = (0..du).map(|s| free[s.min(du - s)].clone()).collect();
        out.push(ProblemSpec {
            n,
            d,
            singularities,
            beta: BetaSpec::Given(beta),
        });
    }
    out
}

fn criterion_degree(specs: &[ProblemSpec], acc: &mut Collected) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        match assemble(spec, AssembleOptions::default()) {
            Ok(r) => {
                let mu: BigInt = spec.singularities.iter().map(milnor_number).sum();
                let expected = BigInt::from(spec.d - 1).pow(spec.n + 1) - mu;
                let j = &r.assemblies[0].jordan;
                if j.total_dim() != expected {
                    bad.push(format!("spec {i}: dim {} vs {expected}", j.total_dim()));
                }
                acc.structures.push((j.clone(), spec.n, spec.d));
            }
            Err(e) => bad.push(format!("spec {i}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= DEGREE_BUDGET {
        bad.push(format!("took {elapsed:?}"));
    }
    if bad.is_empty() {
        let sings: usize = specs.iter().map(|s| s.singularities.len()).sum();
        let largest = acc.structures.iter().map(|(j, _, _)| j.total_dim()).max().unwrap_or_default();
        outcome(
            true,
            format!(
                "{} specs with {sings} singularities, dimensions up to {largest}, exact ({elapsed:.2?})",
                specs.len()
            ),
        )
    } else {
        outcome(false, bad.join("; "))
    }
}

fn criterion_charpoly(specs: &[ProblemSpec]) -> Outcome {
    let mut bad = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let expected = match charpoly_corollary2(spec) {
            Ok(p) => p,
            Err(e) => {
                bad.push(format!("spec {i}: {e}"));
                continue;
            }
        };
        match assemble(spec, AssembleOptions::default()) {
            Ok(r) if r.assemblies[0].jordan.char_poly() == expected => {}
            Ok(_) => bad.push(format!("spec {i}: exponent vectors differ")),
            Err(e) => bad.push(format!("spec {i}: {e}")),
        }
    }
    if bad.is_empty() {
        outcome(true, format!("{} specs, exponent vectors identical", specs.len()))
    } else {
        outcome(false, bad.join("; "))
    }
}

fn criterion_oracle() -> Outcome {
    let start = Instant::now();
    let exhaustive: Vec<(JordanStructure, u64)> = all_structures(4, 6)
        .into_iter()
        .flat_map(|t| [2u64, 3, 4].map(|m| (t.clone(), m)))
        .collect();
    let random = random_cases(100, 6, 12, 5, ORACLE_SEED);
    let first = run_selftest(&exhaustive, DEFAULT_LEVEL_CAP, cyclic_power);
    let second = run_selftest(&random, DEFAULT_LEVEL_CAP, cyclic_power);
    let elapsed = start.elapsed();
    match (first, second) {
        (Ok(a), Ok(b)) => {
            let failures = a.failures.len() + b.failures.len();
            let mut detail = format!(
                "{} exhaustive + {} random cases, {failures} disagreements ({elapsed:.2?})",
                a.checked, b.checked
            );
            if let Some(f) = a.failures.first().or(b.failures.first()) {
                detail.push_str(&format!("; first: {}", serde_json::to_string(f).unwrap()));
            }
            outcome(failures == 0 && elapsed < ORACLE_BUDGET, detail)
        }
        (Err(e), _) | (_, Err(e)) => outcome(false, e.to_string()),
    }
}

/// Pairwise intersections of the lines `x + t y + t² z = 0`, `t = 1..=d`;
/// no three of these lines pass through one point.
fn line_nodes(d: u64) -> ProjectivePointSet {
    let mut pts = Vec::new();
    for a in 1..=d as i64 {
        for b in a + 1..=d as i64 {
            pts.push(vec![
                BigRational::from_integer((a * b).into()),
                BigRational::from_integer((-(a + b)).into()),
                BigRational::from_integer(1.into()),
            ]);
        }
    }
    ProjectivePointSet::new(2, pts).unwrap()
}

fn criterion_lines(acc: &mut Collected) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for d in [4u64, 5, 6] {
        let nodes = line_nodes(d);
        let k = nodes.len();
        let spec = ProblemSpec {
            n: 2,
            d,
            singularities: vec![SingularityModel::OrdinaryNode; k],
            beta: BetaSpec::FromNodes(nodes.clone()),
        };
        let beta = nodal_beta(&nodes, 2, d).unwrap();
        let lower = corollary3_bounds(&spec, 0).unwrap().0;
        let report = assemble(&spec, AssembleOptions::default());
        let expected = BigInt::from(d - 1);
        let ok = beta[0] == expected
            && beta[1..].iter().all(Zero::is_zero)
            && lower == expected
            && report.is_ok();
        if let Ok(r) = &report {
            acc.structures.push((r.assemblies[0].jordan.clone(), 2, d));
        }
        pass &= ok;
        notes.push(format!("d={d}: beta_0={} lower={lower}{}", beta[0], if report.is_ok() { "" } else { " assembly failed" }));
    }
    outcome(pass, notes.join(", "))
}

fn random_points(k: usize, n: usize, rng: &mut ChaCha8Rng) -> ProjectivePointSet {
    loop {
        let pts: Vec<Vec<BigRational>> = (0..k)
            .map(|_| {
                let mut p: Vec<BigRational> = (0..n)
                    .map(|_| BigRational::from_integer(rng.gen_range(-50i64..=50).into()))
                    .collect();
                p.push(BigRational::from_integer(1.into()));
                p
            })
            .collect();
        if let Ok(set) = ProjectivePointSet::new(n, pts) {
            return set;
        }
    }
}

/// Surfaces in P^3 of degree 3 or 5 with k ≤ 20 nodes. For the cubic,
/// χ_s = 5 − k at s ≠ 0, so k > 5 is outside what any surface can carry
/// and the assembler must refuse it (a negative count, or Σμ above 16
/// once k > 16); every structure that is produced must be semisimple.
fn criterion_parity(acc: &mut Collected) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut produced = 0;
    let mut refused = Vec::new();
    let mut bad = Vec::new();
    for d in [3u64, 5] {
        for k in 0..=20usize {
            let spec = ProblemSpec {
                n: 3,
                d,
                singularities: vec![SingularityModel::OrdinaryNode; k],
                beta: BetaSpec::FromNodes(random_points(k, 3, &mut rng)),
            };
            let chi_ok = chi_vector(3, d, &vec![BigInt::from(1); k])
                .iter()
                .all(|c| c >= &BigInt::zero());
            match assemble(&spec, AssembleOptions::default()) {
                Ok(r) => {
                    let j = &r.assemblies[0].jordan;
                    produced += 1;
                    if !j.is_semisimple() {
                        bad.push(format!("d={d} k={k}: block of size {}", j.max_block_size()));
                    }
                    if !chi_ok {
                        bad.push(format!("d={d} k={k}: accepted with negative chi"));
                    }
                    acc.structures.push((j.clone(), 3, d));
                }
                Err(InfinityError::BelowLowerBound { .. } | InfinityError::MilnorSumTooLarge { .. })
                    if !chi_ok =>
                {
                    refused.push(format!("d={d} k={k}"))
                }
                Err(e) => bad.push(format!("d={d} k={k}: {e}")),
            }
        }
    }
    let refused_note = match (refused.first(), refused.last()) {
        (Some(a), Some(b)) => format!("; refused as inadmissible: {a} … {b} ({} cases)", refused.len()),
        _ => String::new(),
    };
    if bad.is_empty() {
        outcome(true, format!("{produced} structures, all blocks of size 1{refused_note}"))
    } else {
        outcome(false, bad.join("; "))
    }
}

fn criterion_zeta() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ZETA_SEED);
    let mut bad = 0;
    for _ in 0..RANDOM_SPECS {
        let n = rng.gen_range(2..=6u32);
        let d = rng.gen_range(2..=9u64);
        let k = rng.gen_range(0..=6);
        let mu: Vec<BigInt> = (0..k).map(|_| BigInt::from(rng.gen_range(1..=40u64))).collect();
        let (product, by_chi) = zeta_forms(n, d, &mu);
        let chi_sum: BigInt = by_chi.iter().map(|(_, e)| e.clone()).sum();
        if product != by_chi || product.degree() != chi_sum {
            bad += 1;
        }
    }
    let (sextic_zeta, _) = zeta_forms(2, 6, &vec![BigInt::from(2); 6]);
    let exps: Vec<BigInt> = (0..6).map(|s| sextic_zeta.exponent(UnitRoot::from_index(s, 6))).collect();
    let sextic_ok = exps == ints(&[8, 9, 9, 9, 9, 9]) && sextic_zeta.len() == 6;
    outcome(
        bad == 0 && sextic_ok,
        format!("{RANDOM_SPECS} random cases, {bad} mismatches; sextic exponents {exps:?}"),
    )
}

fn criterion_blocks(acc: &Collected) -> Outcome {
    let bad: Vec<String> = acc
        .structures
        .iter()
        .map(|(j, n, d)| corollary1_check(j, *n, *d))
        .filter(|c| c.status != CheckStatus::Pass)
        .map(|c| c.detail)
        .collect();
    if bad.is_empty() {
        outcome(true, format!("{} structures from criteria 1–6", acc.structures.len()))
    } else {
        outcome(false, bad.join("; "))
    }
}

fn main() -> ExitCode {
    let mut acc = Collected::default();
    let specs = random_specs(RANDOM_SPECS, SPEC_SEED);
    let results = [
        ("1 sextic blocks", criterion_sextic(&mut acc)),
        ("2 degree identity", criterion_degree(&specs, &mut acc)),
        ("3 char poly formula", criterion_charpoly(&specs)),
        ("4 cyclic power oracle", criterion_oracle()),
        ("5 line arrangements", criterion_lines(&mut acc)),
        ("6 nodal parity", criterion_parity(&mut acc)),
        ("7 zeta identity", criterion_zeta()),
        ("8 block sizes", criterion_blocks(&acc)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
