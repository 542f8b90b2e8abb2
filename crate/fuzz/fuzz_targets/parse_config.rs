#![no_main]

use dualmetric_cli::config::parse_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = parse_config(text) {
        let n = cfg.dim.get();
        assert_eq!(cfg.metric.matrix().nrows(), n);
        assert!(cfg.tolerance.is_finite() && cfg.tolerance > 0.0);
    }
});
