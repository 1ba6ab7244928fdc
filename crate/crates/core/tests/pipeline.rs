use nfmertens::distribution::{beta_series, nu_hat_theoretical};
use nfmertens::oscillation::{h_star, h_star_scan, OscKind, OscSum};
use nfmertens::zeros::{count_sanity, find_zeros, load_zeros, save_zeros, Provenance};
use nfmertens::{CoeffTables, Error, QuadField};

#[test]
fn zero_list_file_feeds_the_oscillation_sums() {
    let k = QuadField::new(-7).unwrap();
    let zs = find_zeros(&k, 80.0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.csv");
    save_zeros(&zs, &path).unwrap();
    let back = load_zeros(&path).unwrap();
    assert_eq!(back.provenance, Provenance::Ingested);
    assert_eq!(back.records, zs.records);
    for t in [-12.5, 0.0, 3.3, 40.0] {
        assert_eq!(h_star(&back, 80.0, t).unwrap(), h_star(&zs, 80.0, t).unwrap());
    }
    assert_eq!(beta_series(&back, 80.0).unwrap(), beta_series(&zs, 80.0).unwrap());
    assert_eq!(
        nu_hat_theoretical(&back, 0.7).unwrap(),
        nu_hat_theoretical(&zs, 0.7).unwrap()
    );
}

#[test]
fn modulus_only_files_cannot_drive_h_star() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bare.csv");
    std::fs::write(
        &path,
        "# delta=-4 T=12 provenance=ingested\ncomponent,gamma,zk_deriv_abs,refine_err\nchi,6.020948904697597,1.1882,1e-10\nchi,10.243770304166555,2.2,1e-10\n",
    )
    .unwrap();
    let zs = load_zeros(&path).unwrap();
    assert!(matches!(h_star(&zs, 12.0, 1.0), Err(Error::PhaseMissing)));
    // moduli alone suffice for the Bessel product
    assert!(nu_hat_theoretical(&zs, 1.0).is_ok());
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_zeros(std::path::Path::new("/nonexistent/zeros.csv")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

#[test]
fn smoothed_sum_oscillates_less_than_sharp() {
    let k = QuadField::new(-4).unwrap();
    let zs = find_zeros(&k, 200.0).unwrap();
    let range = |kind| {
        let s = OscSum::new(&zs, 200.0, kind).unwrap();
        let v: Vec<f64> = (0..4000).map(|i| s.value_at(10.0 + 0.01 * f64::from(i))).collect();
        v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
    };
    let sharp = range(OscKind::Sharp);
    let smooth = range(OscKind::JurkatPeyerimhoff);
    assert!(smooth <= 1.1 * sharp, "{smooth} vs {sharp}");
}

#[test]
fn zero_counts_stay_in_window_bounds() {
    for delta in [-3i64, -4, 5, 8, 12, -163] {
        let zs = find_zeros(&QuadField::new(delta).unwrap(), 150.0).unwrap();
        let rep = count_sanity(&zs);
        let d = zs.field.abs_disc() as f64;
        assert!(
            (rep.max_unit_window as f64) <= 3.0 * (d.ln() + 2.0 * (150.0f64 + 4.0).ln()),
            "{delta}: {rep:?}"
        );
        assert!(rep.relative_deviation < 0.05, "{delta}: {rep:?}");
    }
}

#[test]
fn scan_reports_exceedance_flag() {
    let k = QuadField::new(-4).unwrap();
    let zs = find_zeros(&k, 100.0).unwrap();
    let rep = h_star_scan(&zs, 100.0, -100.0, 100.0, 0.05).unwrap();
    assert_eq!(rep.exceedance, rep.max > 1.0 || rep.min < -1.0);
    assert!(rep.min <= rep.max);
}

#[test]
fn table_dump_round_trip_through_disk() {
    let k = QuadField::new(13).unwrap();
    let t = CoeffTables::build(k, 5000).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.bin");
    t.dump(&path).unwrap();
    let back = CoeffTables::restore(&path).unwrap();
    assert_eq!(back.prefix(), t.prefix());
    assert_eq!(back.field(), t.field());
}
