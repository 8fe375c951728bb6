mod common;

#[test]
fn pipeline_matches_frozen_outputs() {
    let work = tempfile::tempdir().unwrap();
    let artifacts = common::golden_pipeline(work.path());
    common::check_golden(&artifacts).unwrap();
}
