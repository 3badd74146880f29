use std::fs;
use std::path::Path;

use proptest::prelude::*;
use sqg::diagnostics::{sobolev_norm, LEDGER_COLUMNS, LEMMA1_BASELINE};
use sqg::experiments::*;
use sqg::spectral::{to_physical, GridSpec, SpectralField};
use sqg::Error;

fn small(extra: &str) -> RunConfig {
    let base = "grid_n = 64\nbox_length = 40.0\ndt = 0.01\nt_end = 1.0\nt1 = 0.2\nt2 = 1.0\nsample_interval = 0.05\n";
    RunConfig::resolve(Some(base), &ConfigOverrides::parse(extra).unwrap()).unwrap()
}

fn in_dir(mut cfg: RunConfig, dir: &Path) -> RunConfig {
    cfg.output.dir = Some(dir.to_path_buf());
    cfg
}

#[test]
fn radial_data_examples() {
    let g = GridSpec::new(256, 100.0).unwrap();
    assert_eq!(make_radial_data(0.0, 2.0, &g).unwrap().max_abs(), 0.0);
    let f = make_radial_data(1.0, 2.0, &g).unwrap();
    let v = to_physical(&f).unwrap();
    let n = g.n();
    let c = n / 2;
    assert!((v[g.offset(c, c)] - 1.0).abs() < 1e-14);
    assert!((v.iter().cloned().fold(f64::MIN, f64::max) - 1.0).abs() < 1e-14);
    assert!(v.iter().all(|x| *x >= -1e-15));
    // reflections about the center and the diagonal swap
    let mut worst = 0.0_f64;
    for i in 1..n {
        for j in 1..n {
            let here = v[g.offset(i, j)];
            for other in [v[g.offset(n - i, j)], v[g.offset(i, n - j)], v[g.offset(j, i)]] {
                worst = worst.max((here - other).abs());
            }
        }
    }
    assert!(worst <= 1e-15, "{worst}");
    assert!(matches!(make_radial_data(1.0, 0.5, &g), Err(Error::InvalidParameter(_))));
    assert!(make_radial_data(-1.0, 2.0, &g).is_err());
}

#[test]
fn perturbation_examples() {
    let g = GridSpec::new(64, 40.0).unwrap();
    let band = ModeBand::default();
    assert_eq!(make_perturbation(0.0, band, 3, &g).unwrap().max_abs(), 0.0);
    for seed in [1, 2, 99] {
        let p = make_perturbation(1e-3, band, seed, &g).unwrap();
        let h2 = sobolev_norm(&p, 2.0, false).unwrap();
        assert!((h2 / 1e-3 - 1.0).abs() <= 1e-12);
        assert!(p.symmetry_defect() == 0.0);
        assert_eq!(p.mean(), 0.0);
    }
    let a = make_perturbation(1e-3, band, 5, &g).unwrap();
    assert_eq!(a, make_perturbation(1e-3, band, 5, &g).unwrap());
    let b = make_perturbation(1e-3, band, 6, &g).unwrap();
    assert!(sobolev_norm(&(&a - &b), 2.0, false).unwrap() > 1e-4);
    let empty = ModeBand { min: 100.0, max: 200.0 };
    assert!(make_perturbation(1e-3, empty, 1, &g).is_err());
    assert_eq!(make_perturbation(0.0, empty, 1, &g).unwrap(), SpectralField::zeros(g));
}

#[test]
fn perturbation_respects_band() {
    let g = GridSpec::new(64, 2.0 * std::f64::consts::PI).unwrap();
    let band = ModeBand { min: 2.0, max: 4.0 };
    let p = make_perturbation(1.0, band, 8, &g).unwrap();
    for m1 in -31..32i64 {
        for m2 in -31..32i64 {
            if p.coeff(m1, m2).norm() > 0.0 {
                assert!(band.contains(m1, m2), "({m1}, {m2})");
            }
        }
    }
}

#[test]
fn config_layers_and_rejections() {
    let file = "gamma = 0.75\ngrid-n = 128\nseed = 4\n";
    let flags = ConfigOverrides { grid_n: Some(64), ..Default::default() };
    let cfg = RunConfig::resolve(Some(file), &flags).unwrap();
    assert_eq!(cfg.params.gamma(), 0.75);
    assert!((cfg.params.s() - 1.25).abs() < 1e-15);
    assert_eq!(cfg.grid.n(), 64);
    assert_eq!(cfg.data.seed, 4);

    for bad in ["gamma = 2.5", "grid_n = 63", "dt = 0.03", "t1 = 9.0", "nonsense = 1", "gamma = \"x\""] {
        assert!(matches!(RunConfig::resolve(Some(bad), &ConfigOverrides::default()), Err(Error::Config(_))), "{bad}");
    }
}

#[test]
fn zero_perturbation_stays_zero() {
    let run = run_perturbation(&small("epsilon = 0.0")).unwrap();
    assert_eq!(run.record.status, RunStatus::Completed);
    assert!(run.ledger.entries().iter().all(|e| e.hs_theta1 == 0.0));
    let v = run.record.verdict.unwrap();
    assert!(v.contained());
    assert_eq!(v.sup_norm, 0.0);
}

#[test]
fn ledgers_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let cfg = small("epsilon = 0.01\nseed = 3");
    run_perturbation_experiment(&in_dir(cfg.clone(), &a)).unwrap();
    run_perturbation_experiment(&in_dir(cfg, &b)).unwrap();
    for name in ["ledger.csv", "theta0.csv", "final.ckpt"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn run_artifacts_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = in_dir(small("epsilon = 0.01"), dir.path());
    let run = run_perturbation(&cfg).unwrap();
    let rec = &run.record;
    assert_eq!(rec.status, RunStatus::Completed);
    for path in [&rec.ledger_path, &rec.theta0_path, &rec.checkpoint_path] {
        assert!(Path::new(path.as_ref().unwrap()).exists());
    }

    let text = fs::read_to_string(dir.path().join("ledger.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), LEDGER_COLUMNS.join(","));
    let ledger = read_ledger_csv(text.as_bytes()).unwrap();
    assert_eq!(ledger, run.ledger);
    assert_eq!(ledger.len(), 21);
    let theta0 = read_theta0_csv(fs::File::open(dir.path().join("theta0.csv")).unwrap()).unwrap();
    assert_eq!(theta0, run.theta0);

    let json = fs::read_to_string(dir.path().join("record.json")).unwrap();
    let back = record_from_json(&json).unwrap();
    assert_eq!(&back, rec);

    let ckpt = Checkpoint::read(Path::new(rec.checkpoint_path.as_ref().unwrap())).unwrap();
    assert_eq!(ckpt.time, rec.final_time);
    assert_eq!(ckpt.grid, cfg.grid);
    assert_eq!(ckpt.params, cfg.params);
    assert!(ckpt.radial.is_some());
}

#[test]
fn checkpoint_layout() {
    let g = GridSpec::new(8, 3.0).unwrap();
    let field = make_perturbation(1.0, ModeBand { min: 1.0, max: 3.0 }, 2, &g).unwrap();
    let params = sqg::dynamics::SolverParams::new(0.5).unwrap();
    let state = sqg::dynamics::SolverState::full(field.clone(), params);
    let bytes = Checkpoint::from_state(&state).encode();
    assert_eq!(&bytes[..8], &CHECKPOINT_MAGIC);
    assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), CHECKPOINT_VERSION);
    assert_eq!(u32::from_le_bytes(bytes[12..16].try_into().unwrap()), 8);
    let payload = &bytes[bytes.len() - 64 * 16..];
    // row-major: the second coefficient is mode (0, 1)
    let re = f64::from_le_bytes(payload[16..24].try_into().unwrap());
    let im = f64::from_le_bytes(payload[24..32].try_into().unwrap());
    assert_eq!((re, im), (field.coeffs()[1].re, field.coeffs()[1].im));
    assert_eq!(Checkpoint::decode(&bytes).unwrap().into_state(), state);

    let mut bad = bytes.clone();
    bad[0] = b'X';
    assert!(matches!(Checkpoint::decode(&bad), Err(Error::Checkpoint(_))));
    assert!(Checkpoint::decode(&bytes[..bytes.len() - 1]).is_err());
    let mut version = bytes.clone();
    version[8] = 9;
    assert!(Checkpoint::decode(&version).is_err());
}

#[test]
fn blow_up_keeps_last_good_state() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = in_dir(small("epsilon = 1000.0\ndt = 0.05\nsample_interval = 0.05"), dir.path());
    let rec = run_perturbation_experiment(&cfg).unwrap();
    assert_eq!(rec.status, RunStatus::BlowUp);
    assert!(rec.failure.is_some());
    let path = rec.checkpoint_path.clone().unwrap();
    assert!(path.ends_with("last_good.ckpt"));
    let ckpt = Checkpoint::read(Path::new(&path)).unwrap();
    assert!(ckpt.field.is_finite());
    assert!(ckpt.time <= rec.final_time);
    assert!(dir.path().join("record.json").exists());
}

#[test]
fn zero_epsilon_sweep_is_trivially_contained() {
    let report = run_sweep(&small(""), RunKind::Perturbation, SweepAxis::Epsilon, &[0.0], 1).unwrap();
    assert_eq!(report.entries.len(), 1);
    assert_eq!(report.entries[0].contained(), Some(true));
    assert_eq!(report.empirical_epsilon_threshold(), None);
}

#[test]
fn gamma_sweep_writes_one_record_each() {
    let dir = tempfile::tempdir().unwrap();
    let mut base = RunConfig::default();
    base.output.dir = Some(dir.path().to_path_buf());
    let gammas = [0.25, 0.5, 0.75];
    let report = run_sweep(&base, RunKind::Decay, SweepAxis::Gamma, &gammas, 2).unwrap();
    assert_eq!(report.entries.len(), 3);
    for (i, (entry, gamma)) in report.entries.iter().zip(gammas).enumerate() {
        let rec = entry.record.as_ref().expect("decay record");
        assert_eq!(rec.config.params.gamma(), gamma);
        let sobolev = &rec.fits[0];
        assert!((sobolev.target_exponent + (2.0 - gamma) / gamma).abs() < 1e-12);
        let fit = sobolev.fit.as_ref().expect("fitted");
        assert!(fit.exponent < 0.0 && fit.exponent.is_finite());
        assert!(dir.path().join(format!("run_{i:03}")).join("record.json").exists());
    }
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 4);
}

#[test]
fn worker_count_defaults_to_one() {
    std::env::remove_var(WORKERS_ENV);
    assert_eq!(workers_from_env().unwrap(), 1);
}

#[test]
fn standard_run_is_contained_below_baseline() {
    let cfg = RunConfig::default();
    let rec = run_perturbation_experiment(&cfg).unwrap();
    assert_eq!(rec.status, RunStatus::Completed);
    let v = rec.verdict.unwrap();
    assert!(v.contained());
    assert!(v.sup_norm.is_finite() && v.sup_norm > 0.0);
    assert_eq!(v.gronwall_violations, 0);
    assert!(rec.lemma1_max_constant.unwrap() <= LEMMA1_BASELINE);
    assert_eq!(rec.theta0_monotonicity_violations, Some(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn records_survive_json(gamma in 0.05..0.95f64, eps in 0.0..1.0f64, seed in any::<u64>(), wall in 0.0..1e6f64) {
        let flags = ConfigOverrides { gamma: Some(gamma), epsilon: Some(eps), seed: Some(seed), ..Default::default() };
        let cfg = flags.apply(RunConfig::default()).unwrap();
        let mut rec = RunRecord::new(RunKind::Perturbation, cfg);
        rec.wall_time_s = wall;
        rec.lemma1_max_constant = Some(eps / 3.0);
        let back = record_from_json(&record_to_json(&rec).unwrap()).unwrap();
        prop_assert_eq!(back, rec);
    }
}
