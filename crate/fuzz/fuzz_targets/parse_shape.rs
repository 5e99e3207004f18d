#![no_main]

use libfuzzer_sys::fuzz_target;
use sincphoton::config;
use sincphoton::spectral::{self, FrequencyGrid};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(shape) = config::parse_shape(text) {
        let grid = FrequencyGrid::new(1.0, 64).expect("valid grid");
        if let Ok(d) = spectral::discretize(&shape, &grid) {
            assert!((spectral::check_normalization(&d.amplitude) - 1.0).abs() < 1e-9);
        }
    }
});
