#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| rfr_cli::fuzzing::check_bench_record(data));
