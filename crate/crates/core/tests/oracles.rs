//! Checks against straightforward re-implementations that share no code
//! with the library's evaluation paths.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teamnk::{Agent, FullSolution, InteractionMatrix, Landscape64, ResidualContext, SubSolution, Weights};

/// Contribution of decision `i`: own bit first, then dependencies, read as
/// a big-endian binary number.
fn oracle_contribution(l: &Landscape64, bits: &[u8], i: usize) -> f64 {
    let mut idx = bits[i] as usize;
    for &j in l.matrix().depends(i) {
        idx = idx * 2 + bits[j] as usize;
    }
    l.tables()[i][idx]
}

fn oracle_team(l: &Landscape64, bits: &[u8]) -> f64 {
    let n = bits.len();
    (0..n).map(|i| oracle_contribution(l, bits, i)).sum::<f64>() / n as f64
}

fn oracle_slot(l: &Landscape64, bits: &[u8], slot: usize) -> f64 {
    let s = bits.len() / l.matrix().m();
    (slot * s..(slot + 1) * s).map(|i| oracle_contribution(l, bits, i)).sum::<f64>() / s as f64
}

fn all_bits(n: usize, code: u64) -> Vec<u8> {
    (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8).collect()
}

fn landscape(k: usize, rng: &mut ChaCha8Rng) -> Landscape64 {
    Landscape64::generate(InteractionMatrix::stylized(12, 3, k).unwrap(), rng)
}

#[test]
fn team_performance_is_mean_of_contributions_and_of_agent_means() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for pair in 0..1000 {
        let l = landscape([0, 3, 5, 11][pair % 4], &mut rng);
        let d = FullSolution::random(12, &mut rng);
        let bits = d.bits();
        let phi = l.team_performance(&d).unwrap();
        let agent_mean = (0..3).map(|m| l.agent_performance(&d, m).unwrap()).sum::<f64>() / 3.0;
        assert!((phi - oracle_team(&l, &bits)).abs() <= 1e-15);
        assert!((phi - agent_mean).abs() <= 1e-15);
    }
}

#[test]
fn global_optimum_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in [0, 3, 5, 11] {
        for _ in 0..50 {
            let l = landscape(k, &mut rng);
            let (best, value) = l.global_optimum().unwrap();
            let (mut ob, mut ov) = (0u64, f64::NEG_INFINITY);
            for code in 0..1u64 << 12 {
                let v = oracle_team(&l, &all_bits(12, code));
                if v > ov + 1e-15 {
                    ob = code;
                    ov = v;
                }
            }
            assert!((value - ov).abs() <= 1e-15, "k={k}");
            assert!(best.encoding() == ob || (oracle_team(&l, &best.bits()) - ov).abs() <= 1e-15);
        }
    }
}

#[test]
fn choice_matches_best_in_memory() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = Weights::equal();
    for case in 0..1000 {
        let l = landscape([3, 5, 11][case % 3], &mut rng);
        let slot = rng.random_range(0..3);
        let q = rng.random_range(1..16);
        let agent = Agent::init(case, slot, 4, q, &mut rng).unwrap();
        let prev = FullSolution::random(12, &mut rng);
        let ctx = ResidualContext::new(prev);
        let choice = agent.choose_solution(&ctx, &l, &w, &mut rng);

        let utility = |s: &SubSolution| {
            let bits = prev.with_sub(*s).bits();
            let others = (0..3).filter(|&r| r != slot).map(|r| oracle_slot(&l, &bits, r)).sum::<f64>() / 2.0;
            0.5 * oracle_slot(&l, &bits, slot) + 0.5 * others
        };
        let best = agent.memory().iter().map(utility).fold(f64::NEG_INFINITY, f64::max);
        assert!(agent.knows(&choice));
        assert!((utility(&choice) - best).abs() <= 1e-15, "case {case}");
    }
}

#[test]
fn separable_landscapes_are_solved_by_hill_climbing() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let l = landscape(0, &mut rng);
        let (_, optimum) = l.global_optimum().unwrap();
        for _ in 0..100 {
            let mut d = FullSolution::random(12, &mut rng);
            loop {
                let current = l.team_performance(&d).unwrap();
                let next = (0..12)
                    .map(|i| d.flipped(i))
                    .max_by(|a, b| {
                        l.team_performance(a).unwrap().total_cmp(&l.team_performance(b).unwrap())
                    })
                    .unwrap();
                if l.team_performance(&next).unwrap() <= current {
                    break;
                }
                d = next;
            }
            assert!((l.team_performance(&d).unwrap() - optimum).abs() <= 1e-15);
        }
    }
}

#[test]
fn csv_dump_reloads_to_the_same_landscape() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let l = landscape(5, &mut rng);
    let mut buf = Vec::new();
    l.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut depends = Vec::new();
    let mut tables = Vec::new();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        depends.push(cols[1].split(';').map(|j| j.parse::<usize>().unwrap() - 1).collect());
        tables.push(cols[2..].iter().map(|v| v.parse::<f64>().unwrap()).collect());
    }
    let back = Landscape64::from_tables(InteractionMatrix::from_dependencies(3, depends).unwrap(), tables).unwrap();
    assert_eq!(back, l);
}
