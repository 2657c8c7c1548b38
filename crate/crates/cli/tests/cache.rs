use ainf_cli::{run, CACHE_ENV};

fn transfer_json() -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["ainf", "--d-max", "4", "transfer"], &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn cached_tables_reproduce_output() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_ENV, dir.path());
    let (c1, first) = transfer_json();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let (c2, second) = transfer_json();
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);

    // A corrupt cache entry is recomputed.
    let path = files[0].as_ref().unwrap().path();
    std::fs::write(&path, "not json").unwrap();
    let (c3, third) = transfer_json();
    assert_eq!(c3, 0);
    assert_eq!(first, third);
    std::env::remove_var(CACHE_ENV);
}
