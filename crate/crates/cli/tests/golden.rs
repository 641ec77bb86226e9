//! Frozen-output tests: every shipped session file must reproduce its
//! golden rendering byte for byte.  Set UPDATE_GOLDEN=1 to regenerate the
//! files after an intentional output change.

use std::path::PathBuf;
use std::process::Command;

const JSON_SESSIONS: &[&str] = &[
    "bass_table",
    "nilpotent_line",
    "enumerate_plane",
    "membership_tour",
    "serre_desk",
    "gen_suite",
];

const TEXT_SESSIONS: &[&str] = &["bass_table", "membership_tour"];

fn session_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../sessions").join(format!("{name}.stlt"))
}

fn golden_path(name: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.{ext}"))
}

fn run_session(name: &str, json: bool) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spectilt"));
    cmd.arg("run").arg(session_path(name));
    if json {
        cmd.arg("--json");
    }
    // A fixed seed keeps gen-suite output stable no matter what the
    // surrounding environment exports.
    cmd.env("SPECTILT_SEED", "0");
    let out = cmd.output().expect("the session binary runs");
    assert!(
        out.status.success(),
        "session {name} failed with {:?}:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("session output is UTF-8")
}

fn check(name: &str, ext: &str, actual: &str) {
    let path = golden_path(name, ext);
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::write(&path, actual).expect("golden file is writable");
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    assert_eq!(
        actual,
        expected,
        "output of session {name} drifted from its golden {ext} rendering; \
         rerun with UPDATE_GOLDEN=1 if the change is intentional"
    );
}

#[test]
fn shipped_sessions_match_their_golden_json() {
    for name in JSON_SESSIONS {
        check(name, "json", &run_session(name, true));
    }
}

#[test]
fn shipped_sessions_match_their_golden_text() {
    for name in TEXT_SESSIONS {
        check(name, "txt", &run_session(name, false));
    }
}

#[test]
fn repeated_json_runs_are_byte_identical() {
    for name in JSON_SESSIONS {
        let a = run_session(name, true);
        let b = run_session(name, true);
        assert_eq!(a, b, "two JSON runs of session {name} differ");
    }
}
