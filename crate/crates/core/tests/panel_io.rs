mod common;

use marketmap::correl::spearman_correlation;
use marketmap::panel::{compute_log_returns, load_metadata, load_prices, write_prices, AssetMeta};
use marketmap::panel::{generate_synthetic_panel, SectorSpec, SyntheticSpec};
use marketmap::PricePanel;

fn sample_meta_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/bovespa_2010_meta.csv")
}

#[test]
fn synthetic_file_round_trips_with_shape_and_order() {
    let spec = SyntheticSpec::balanced(190, 250, 10, 0.5, 0.3, 11);
    let (panel, meta) = generate_synthetic_panel::<f64>(&spec).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prices.csv");
    write_prices(&panel, &path).unwrap();

    let back: PricePanel = load_prices(&path).unwrap();
    assert_eq!((back.n_days(), back.n_assets()), (250, 190));
    let expected: Vec<&str> = meta.iter().map(|m| m.ticker.as_str()).collect();
    assert_eq!(back.tickers(), expected.as_slice());
    assert_eq!(back, panel);

    let again = dir.path().join("again.csv");
    write_prices(&back, &again).unwrap();
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn shipped_sample_metadata_has_190_records() {
    let meta = load_metadata(sample_meta_path()).unwrap();
    assert_eq!(meta.len(), 190);
    assert!(meta
        .iter()
        .all(|m| !m.ticker.is_empty() && !m.sector.is_empty()));
    assert!(meta.contains(&AssetMeta {
        ticker: "VALE5".into(),
        company: "Vale".into(),
        sector: "Mineração".into(),
    }));
}

#[test]
fn log_return_of_ten_percent_rise() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    std::fs::write(&path, "date,X\n2010-01-04,100\n2010-01-05,110\n").unwrap();
    let r = compute_log_returns(&load_prices::<f64>(&path).unwrap()).unwrap();
    // ln(1.1) to 16 significant digits
    assert!((r.series(0)[0] - 0.095_310_179_804_324_87).abs() < 1e-15);
}

#[test]
fn cumulative_returns_recover_prices() {
    let spec = SyntheticSpec::balanced(12, 300, 3, 0.6, 0.4, 5);
    let (panel, _) = generate_synthetic_panel::<f64>(&spec).unwrap();
    let returns = compute_log_returns(&panel).unwrap();
    assert_eq!(returns.n_observations(), panel.n_days() - 1);
    for i in 0..panel.n_assets() {
        let p0 = panel.price(0, i);
        let mut acc = 0.0_f64;
        for (t, r) in returns.series(i).iter().enumerate() {
            acc += r;
            let rebuilt = p0 * acc.exp();
            let truth = panel.price(t + 1, i);
            assert!(
                ((rebuilt - truth) / truth).abs() < 1e-10,
                "asset {i} day {}",
                t + 1
            );
        }
    }
}

#[test]
fn unloaded_pair_is_nearly_uncorrelated() {
    let spec = SyntheticSpec {
        n_assets: 2,
        n_days: 251,
        sectors: vec![SectorSpec {
            label: "S".into(),
            size: 2,
            loading: 0.0,
        }],
        market_loading: 0.0,
        seed: 2010,
    };
    let (panel, _) = generate_synthetic_panel::<f64>(&spec).unwrap();
    let returns = compute_log_returns(&panel).unwrap();
    assert_eq!(returns.n_observations(), 250);
    let c = spearman_correlation(&returns).unwrap().get(0, 1);
    assert!(c.abs() < 0.5, "c = {c}");
}

#[test]
fn strong_sector_loading_raises_within_sector_correlation() {
    let spec = SyntheticSpec {
        n_assets: 10,
        n_days: 250,
        sectors: vec![
            SectorSpec {
                label: "A".into(),
                size: 5,
                loading: 0.9,
            },
            SectorSpec {
                label: "B".into(),
                size: 5,
                loading: 0.9,
            },
        ],
        market_loading: 0.0,
        seed: 3,
    };
    let (panel, meta) = generate_synthetic_panel::<f64>(&spec).unwrap();
    let c = spearman_correlation(&compute_log_returns(&panel).unwrap()).unwrap();
    let (mut within, mut across) = (Vec::new(), Vec::new());
    for i in 0..10 {
        for j in (i + 1)..10 {
            if meta[i].sector == meta[j].sector {
                within.push(c.get(i, j));
            } else {
                across.push(c.get(i, j));
            }
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    assert!(
        mean(&within) > mean(&across) + 0.3,
        "{} vs {}",
        mean(&within),
        mean(&across)
    );
}

#[test]
fn generator_is_pure() {
    let spec = SyntheticSpec::balanced(30, 60, 4, 0.7, 0.3, 99);
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    write_prices(&generate_synthetic_panel::<f64>(&spec).unwrap().0, &a).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let single = pool.install(|| generate_synthetic_panel::<f64>(&spec).unwrap().0);
    write_prices(&single, &b).unwrap();
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn generator_rejects_bad_specs() {
    let mut spec = SyntheticSpec::balanced(10, 20, 2, 0.5, 0.3, 1);
    spec.sectors[0].size += 1;
    assert!(generate_synthetic_panel::<f64>(&spec).is_err());
    let mut spec = SyntheticSpec::balanced(10, 20, 2, 0.5, 0.3, 1);
    spec.sectors[1].loading = 1.0;
    assert!(generate_synthetic_panel::<f64>(&spec).is_err());
}

#[test]
fn single_precision_panel() {
    let spec = SyntheticSpec::balanced(6, 40, 2, 0.5, 0.3, 8);
    let (panel, _) = generate_synthetic_panel::<f32>(&spec).unwrap();
    let r = compute_log_returns(&panel).unwrap();
    assert_eq!(r.n_observations(), 39);
    assert!(r.all_series().iter().flatten().all(|v| v.is_finite()));
}
