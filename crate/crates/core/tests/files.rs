use std::fs;
use std::path::PathBuf;

use iet_core::format::{
    read_flow_file, read_iet_file, read_sample_dir, sample_file_name, write_flow, write_iet, FormatError,
};
use iet_core::random::random_exchange;
use iet_core::{flow_at, golden_gn, verify_rotation_family, FlowSpec, IntervalExchange, LengthVector, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("iet-core-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn iet_files_round_trip() {
    let dir = scratch("iet");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..50 {
        let f = random_exchange(&mut rng, 8, 60);
        let path = dir.join(format!("{i}.iet"));
        fs::write(&path, write_iet(&f)).unwrap();
        let parsed = read_iet_file(&path).unwrap();
        assert!(parsed.warnings.is_empty());
        assert_eq!(parsed.value, f);
    }
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn flow_conjugator_is_relative_to_spec() {
    let dir = scratch("flow");
    fs::create_dir_all(dir.join("maps")).unwrap();
    fs::write(dir.join("maps/h.iet"), write_iet(&golden_gn(2).unwrap())).unwrap();
    let spec = FlowSpec::new(
        LengthVector::open(vec![Scalar::ratio(1, 3), Scalar::ratio(2, 3)]).unwrap(),
        vec![Scalar::sqrt(2).unwrap(), Scalar::ratio(1, 2)],
        Some(golden_gn(2).unwrap()),
    )
    .unwrap();
    fs::write(dir.join("spec.flow"), write_flow(&spec, Some("maps/h.iet"))).unwrap();
    assert_eq!(read_flow_file(&dir.join("spec.flow")).unwrap(), spec);

    fs::write(dir.join("broken.flow"), write_flow(&spec, Some("missing.iet"))).unwrap();
    let err = read_flow_file(&dir.join("broken.flow")).unwrap_err();
    assert!(matches!(err, FormatError::InFile { .. } | FormatError::Io { .. }));
    assert!(err.to_string().contains("missing.iet"));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn sample_directory_feeds_the_verifier() {
    let dir = scratch("samples");
    let spec = FlowSpec::new(
        LengthVector::open(vec![Scalar::one()]).unwrap(),
        vec![Scalar::one()],
        None,
    )
    .unwrap();
    for k in 0..4 {
        let t = Scalar::ratio(k, 8);
        fs::write(dir.join(sample_file_name(&t)), write_iet(&flow_at(&spec, &t))).unwrap();
    }
    fs::write(dir.join("README"), "not a sample").unwrap();
    let samples = read_sample_dir(&dir).unwrap();
    assert_eq!(samples.len(), 4);
    assert_eq!(
        samples[1],
        (Scalar::ratio(1, 8), IntervalExchange::rotation(&Scalar::ratio(1, 8)))
    );
    assert!(verify_rotation_family(&samples).unwrap().is_consistent());
    fs::remove_dir_all(dir).unwrap();
}
