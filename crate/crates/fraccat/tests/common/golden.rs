//! CLI runs on the worked example with frozen expected output.

use std::path::PathBuf;

pub struct Case {
    pub file: &'static str,
    pub args: &'static [&'static str],
}

pub const CASES: &[Case] = &[
    Case { file: "compose_k_f.txt", args: &["compose", "k", "f"] },
    Case { file: "compose_f_h.txt", args: &["compose", "f", "h"] },
    Case { file: "assoc_h_f_k.txt", args: &["assoc", "h", "f", "k"] },
    Case { file: "equiv_sigma_tau.txt", args: &["equiv", "sigma", "tau"] },
    Case { file: "equiv_sigma_sigma2.txt", args: &["equiv", "sigma", "sigma2"] },
    Case { file: "normalize_sigma.txt", args: &["normalize", "sigma"] },
    Case { file: "normalize_sigma2.txt", args: &["normalize", "sigma2"] },
    Case { file: "compose_f_h.json", args: &["--json", "compose", "f", "h"] },
    Case { file: "assoc_h_f_k.json", args: &["--json", "assoc", "h", "f", "k"] },
    Case { file: "equiv_sigma_tau.json", args: &["--json", "equiv", "sigma", "tau"] },
    Case { file: "normalize_sigma.json", args: &["--json", "normalize", "sigma"] },
];

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// Runs the CLI in-process with the worked example inserted after the
/// subcommand name.
pub fn run(args: &[&str]) -> (i32, String, String) {
    let worked = data("worked.cat");
    let mut argv: Vec<String> = vec!["fraccat".into()];
    let mut file_done = false;
    for a in args {
        argv.push(a.to_string());
        if !file_done && !a.starts_with("--") {
            argv.push(worked.display().to_string());
            file_done = true;
        }
    }
    run_raw(&argv)
}

pub fn run_raw(argv: &[String]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = fraccat::cli::run_to(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Returns the name of each mismatching case.
pub fn mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for case in CASES {
        let expected = std::fs::read_to_string(data("golden").join(case.file)).unwrap_or_default();
        let (code, out, _) = run(case.args);
        if code != 0 || out != expected {
            bad.push(case.file.to_string());
        }
    }
    bad
}
