#![no_main]

use libfuzzer_sys::fuzz_target;
use sincphoton::config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(response) = config::parse_response(text) {
        for w in [0.5, 1.0, 10.0, 1e3] {
            let _ = response.eval(w);
        }
    }
});
