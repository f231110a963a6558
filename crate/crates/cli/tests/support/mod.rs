//! The golden-file cases shared by the golden and acceptance targets.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args }
}

pub const SUBCOMMANDS: [&str; 12] = [
    "check-algebroid",
    "check-coalgebroid",
    "check-bialgebroid",
    "check-linfty",
    "check-morphism",
    "bracket",
    "ce-diff",
    "schouten",
    "bv",
    "lift",
    "legendre",
    "construct",
];

pub const CASES: &[Case] = &[
    case("check_algebroid_two_dim", &["check-algebroid", "corpus/two_dim.toml"]),
    case("check_algebroid_corpus", &["check-algebroid", "corpus/algebroids.toml"]),
    case(
        "check_algebroid_corpus_residuals",
        &["check-algebroid", "--residuals", "corpus/algebroids.toml"],
    ),
    case(
        "check_algebroid_corpus_json",
        &["check-algebroid", "--json", "corpus/algebroids.toml"],
    ),
    case(
        "check_coalgebroid_poisson_x1",
        &["check-coalgebroid", "corpus/poisson_x1.toml"],
    ),
    case("check_coalgebroid_graded", &["check-coalgebroid", "corpus/graded.toml"]),
    case(
        "check_bialgebroid_poisson_x1",
        &["check-bialgebroid", "corpus/poisson_x1.toml"],
    ),
    case(
        "check_bialgebroid_poisson_x1_json",
        &["check-bialgebroid", "--json", "corpus/poisson_x1.toml"],
    ),
    case("check_bialgebroid_graded", &["check-bialgebroid", "corpus/graded.toml"]),
    case("check_linfty_poisson_x1", &["check-linfty", "corpus/poisson_x1.toml"]),
    case("check_linfty_graded", &["check-linfty", "corpus/graded.toml"]),
    case(
        "check_morphism_semistrict_square",
        &["check-morphism", "semistrict", "corpus/square_map.toml"],
    ),
    case(
        "check_morphism_semistrict_square_json",
        &["check-morphism", "semistrict", "--json", "corpus/square_map.toml"],
    ),
    case(
        "check_morphism_semistrict_perturbed",
        &[
            "check-morphism",
            "semistrict",
            "--residuals",
            "corpus/square_map_perturbed.toml",
        ],
    ),
    case(
        "check_morphism_full_square",
        &["check-morphism", "full", "corpus/square_map.toml"],
    ),
    case(
        "check_morphism_full_square_trunc",
        &["check-morphism", "full", "--trunc", "2", "corpus/square_map.toml"],
    ),
    case(
        "check_morphism_full_perturbed",
        &[
            "check-morphism",
            "full",
            "--residuals",
            "corpus/square_map_perturbed.toml",
        ],
    ),
    case("bracket_tangent_line", &["bracket", "corpus/tangent_line.toml"]),
    case(
        "bracket_tangent_line_json",
        &["bracket", "--json", "corpus/tangent_line.toml"],
    ),
    case("ce_diff_two_dim", &["ce-diff", "--seed", "7", "corpus/two_dim.toml"]),
    case("ce_diff_graded", &["ce-diff", "corpus/graded.toml"]),
    case("schouten_two_dim", &["schouten", "corpus/two_dim.toml"]),
    case("schouten_graded", &["schouten", "corpus/graded.toml"]),
    case("bv_two_dim", &["bv", "corpus/two_dim.toml"]),
    case("bv_two_dim_json", &["bv", "--json", "corpus/two_dim.toml"]),
    case("lift_tangent_line", &["lift", "corpus/tangent_line.toml"]),
    case("legendre_two_dim", &["legendre", "corpus/two_dim.toml"]),
    case("legendre_poisson_x1", &["legendre", "corpus/poisson_x1.toml"]),
    case("legendre_graded", &["legendre", "corpus/graded.toml"]),
    case(
        "construct_tangent",
        &["construct", "tangent", "corpus/constructions.toml"],
    ),
    case(
        "construct_koszul",
        &["construct", "koszul", "--residuals", "corpus/constructions.toml"],
    ),
    case(
        "construct_action",
        &["construct", "action", "--residuals", "corpus/constructions.toml"],
    ),
    case(
        "construct_poisson_bialgebroid",
        &["construct", "poisson-bialgebroid", "corpus/constructions.toml"],
    ),
    case(
        "construct_triangular",
        &["construct", "triangular", "--residuals", "corpus/constructions.toml"],
    ),
    case(
        "construct_triangular_entry",
        &["construct", "triangular_two_dim", "corpus/constructions.toml"],
    ),
    case(
        "construct_nijenhuis",
        &["construct", "nijenhuis", "--residuals", "corpus/constructions.toml"],
    ),
    case(
        "construct_linfty_bialgebra",
        &[
            "construct",
            "linfty-bialgebra",
            "--residuals",
            "corpus/constructions.toml",
        ],
    ),
    case(
        "construct_linfty_bialgebra_json",
        &["construct", "linfty-bialgebra", "--json", "corpus/constructions.toml"],
    ),
    case(
        "construct_unknown",
        &["construct", "bogus", "corpus/constructions.toml"],
    ),
    case("missing_section", &["bracket", "corpus/two_dim.toml"]),
    case("missing_file", &["check-algebroid", "corpus/nonexistent.toml"]),
    case("error_pair_order", &["check-algebroid", "tests/inputs/pair_order.toml"]),
    case(
        "error_momentum_degree",
        &["check-algebroid", "tests/inputs/momentum_degree.toml"],
    ),
    case(
        "error_coordinate_degree",
        &["check-algebroid", "tests/inputs/coordinate_degree.toml"],
    ),
    case(
        "error_cotangent_degree",
        &["bracket", "tests/inputs/cotangent_degree.toml"],
    ),
    case(
        "error_unknown_key",
        &["check-algebroid", "tests/inputs/unknown_key.toml"],
    ),
    case("error_undeclared", &["check-algebroid", "tests/inputs/undeclared.toml"]),
    case("error_bad_expression", &["bracket", "tests/inputs/bad_expression.toml"]),
    case(
        "error_toml_syntax",
        &["check-algebroid", "tests/inputs/toml_syntax.toml"],
    ),
    case(
        "error_incomplete_words",
        &["check-morphism", "full", "tests/inputs/incomplete_words.toml"],
    ),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_lbialg"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .expect("binary runs");
    Outcome {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// The golden rendering: command, exit code, stdout, then stderr lines.
pub fn render(case: &Case, o: &Outcome) -> String {
    let mut s = format!("$ lbialg {}\nexit: {}\n", case.args.join(" "), o.code);
    s.push_str(&o.stdout);
    for line in o.stderr.lines() {
        s.push_str("stderr: ");
        s.push_str(line);
        s.push('\n');
    }
    s
}

pub fn golden_path(case: &Case) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{}.out", case.name))
}

/// Compares against the stored file, or rewrites it under UPDATE_GOLDEN=1.
pub fn check_golden(case: &Case) -> Result<(), String> {
    let actual = render(case, &run(case.args));
    let path = golden_path(case);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != actual {
        return Err(format!(
            "{} differs:\n--- expected\n{expected}--- actual\n{actual}",
            display(&path)
        ));
    }
    Ok(())
}

fn display(p: &Path) -> String {
    p.strip_prefix(crate_dir()).unwrap_or(p).display().to_string()
}
