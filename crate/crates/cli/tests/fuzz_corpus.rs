//! Replays the checked-in fuzz seeds with the same assertions the fuzz
//! targets make, so the corpus stays meaningful without a fuzzing toolchain.

use std::path::PathBuf;

use dualmetric_cli::config::parse_config;
use dualmetric_cli::expr::{check_kinds, parse_expression};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            (path.file_name().unwrap().to_string_lossy().into_owned(), text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn config_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_config") {
        if let Ok(cfg) = parse_config(&text) {
            accepted += 1;
            assert_eq!(cfg.metric.matrix().nrows(), cfg.dim.get(), "{name}");
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn expression_seeds() {
    let mut accepted = 0;
    for (name, text) in seeds("parse_expression") {
        let Ok(expr) = parse_expression(&text) else {
            continue;
        };
        accepted += 1;
        let again = parse_expression(&expr.to_string()).unwrap();
        assert_eq!(expr, again, "{name}");
        for dim in [1, 3, 12] {
            let _ = check_kinds(&expr, dim);
        }
    }
    assert!(accepted >= 10);
}
