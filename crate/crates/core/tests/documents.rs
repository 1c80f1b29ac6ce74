mod common;

use common::*;
use toric_segre::cli::{parse_input, parse_output, render_human, render_json, resolve_options, run, InputOptions, Stage};
use toric_segre::segre::SegreOptions;
use toric_segre::Error;

#[test]
fn machine_output_round_trips() {
    for text in [HIRZEBRUCH_EXAMPLE, TRIPLE_P1_EXAMPLE, THREEFOLD_EXAMPLE] {
        let out = run(&doc(text), &SegreOptions::default()).unwrap();
        let json = render_json(&out);
        assert_eq!(parse_output(&json).unwrap(), out);
    }
}

#[test]
fn output_is_deterministic() {
    let d = doc(TRIPLE_P1_EXAMPLE);
    let opts = SegreOptions { seed: 42, ..Default::default() };
    let a = render_json(&run(&d, &opts).unwrap());
    let b = render_json(&run(&d, &opts).unwrap());
    assert_eq!(a, b);
}

#[test]
fn hirzebruch_output_lists_the_classes() {
    let out = run(&doc(HIRZEBRUCH_EXAMPLE), &SegreOptions::default()).unwrap();
    assert_eq!(out.alpha, vec![6, 4]);
    assert_eq!((out.n, out.k), (1, 2));
    assert_eq!(out.segre[1].degree, Some(-6));
    assert_eq!(out.segre[0].codim, 1);
    let human = render_human(&out);
    assert!(human.contains("s_1 = -6*D_x0*D_y0"), "{human}");
}

#[test]
fn default_names_and_grading() {
    let text = r#"{"rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]], "ideal": ["z0*z1", "z2^2"]}"#;
    let out = run(&parse_input(text).unwrap(), &SegreOptions::default()).unwrap();
    assert_eq!(out.variables, vec!["z0", "z1", "z2"]);
    assert_eq!(out.segre[0].degree, Some(4));
}

#[test]
fn command_line_options_override_the_document() {
    let text = r#"{"rays": [[1],[-1]], "max_cones": [[0],[1]], "ideal": ["z0"], "options": {"seed": 3, "retries": 2}}"#;
    let d = parse_input(text).unwrap();
    let o = resolve_options(&d, &InputOptions { seed: Some(9), ..Default::default() });
    assert_eq!((o.seed, o.coeff_bound, o.retries), (9, 100, 2));
}

#[test]
fn diagnostics_name_the_stage() {
    let cases = [
        (r#"{"rays": [[1],[-1]], "max_cones": [[0],[1]], "ideal": ["z0 +"]}"#, Stage::Parse, 2),
        (r#"{"rays": [[1],[-1]], "max_cones": [[0],[1]], "ideal": ["w"]}"#, Stage::Parse, 2),
        (r#"{"rays": [[1,0],[-1,1],[0,-1],[0,1]], "max_cones": [[0,3],[3,1],[1,2],[2,0]], "ideal": ["z0 + z3"]}"#, Stage::Ideal, 3),
        (r#"{"rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2]], "ideal": ["z0"]}"#, Stage::Fan, 4),
        (r#"{"rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]], "ideal": ["z0", "z1", "z2"]}"#, Stage::Ideal, 5),
    ];
    for (text, stage, code) in cases {
        let d = run(&parse_input(text).unwrap(), &SegreOptions::default()).unwrap_err();
        assert_eq!((d.stage, d.exit_code()), (stage, code), "{text}: {d}");
    }
    assert!(matches!(parse_input(r#"{"rays": [], "max_cones": [], "ideal": [], "extra": 1}"#), Err(Error::InvalidInput(_))));
}
