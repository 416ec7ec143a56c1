use std::fs;
use std::path::Path;

use serde_json::Value;

use fgx::convert::{coarse_to_path, path_to_coarse};
use fgx::editdist::CoarseAlignment;
use fgx::pathcost::PathSpec;

fn cases() -> Vec<(String, Value)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/convert");
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn stored_round_trips() {
    let mut seen = 0;
    for (name, v) in cases().into_iter().filter(|(n, _)| n.starts_with("case")) {
        let l = v["l"].as_u64().unwrap() as usize;
        let path: PathSpec = serde_json::from_value(v["path"].clone()).unwrap();
        let coarse: CoarseAlignment = serde_json::from_value(v["coarse"].clone()).unwrap();
        assert_eq!(path_to_coarse(&path, l).unwrap(), coarse, "{name}");
        assert_eq!(coarse_to_path(&coarse, l).unwrap(), path, "{name}");
        seen += 1;
    }
    assert!(seen >= 5);
}

#[test]
fn stored_rejections() {
    for (name, v) in cases().into_iter().filter(|(n, _)| n.starts_with("invalid")) {
        let l = v["l"].as_u64().unwrap() as usize;
        let path: PathSpec = serde_json::from_value(v["path"].clone()).unwrap();
        assert!(path_to_coarse(&path, l).is_err(), "{name}");
    }
}
