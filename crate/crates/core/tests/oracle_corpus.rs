mod common;

use std::time::Instant;

use scenelua::assets::NoAssets;
use scenelua::interp::{run_source, Builtin};

#[test]
fn console_matches_reference_lua() {
    let scripts = common::corpus_files("oracle", "lua");
    assert!(scripts.len() >= 30, "only {} oracle scripts", scripts.len());
    let started = Instant::now();
    for (path, source) in &scripts {
        for b in Builtin::ALL.iter().filter(|b| b.is_graphics()) {
            assert!(!source.contains(b.name()), "{} uses {}", path.display(), b.name());
        }
        let expected = std::fs::read_to_string(path.with_extension("expected")).unwrap();
        let out = run_source(source, &NoAssets).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let actual: String = out.console.iter().map(|l| format!("{l}\n")).collect();
        assert_eq!(actual, expected, "{}", common::file_name(path));
    }
    assert!(started.elapsed().as_secs_f64() < 5.0);
}
