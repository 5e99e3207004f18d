#![no_main]
//! Whole experiment configs. Valid ones must also survive a sweep endpoint
//! re-evaluation and a run-free seed override.

use libfuzzer_sys::fuzz_target;
use sincphoton::config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = config::parse_config(text) {
        if let Some(sweep) = &cfg.sweep {
            let _ = cfg.at_sweep_value(sweep.stop);
        }
        let _ = cfg.clone().with_seed(1);
    }
});
