//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use toric_segre::cli::{parse_input, InputDocument};
use toric_segre::fan::Fan;
use toric_segre::segre::ToricSetup;

pub const HIRZEBRUCH_EXAMPLE: &str = r#"{
  "rays": [[1,0],[-1,1],[0,-1],[0,1]],
  "max_cones": [[0,3],[3,1],[1,2],[2,0]],
  "variables": ["x0","x1","y0","y1"],
  "degrees": [[1,1,1,0],[0,0,1,1]],
  "ideal": ["x1^2*y0^2 + x0^3*x1*y1^2", "x1*y0^2*y1^2 + x0^3*y1^4"]
}"#;

pub const TRIPLE_P1_EXAMPLE: &str = r#"{
  "rays": [[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]],
  "max_cones": [[0,2,4],[0,2,5],[0,3,4],[0,3,5],[1,2,4],[1,2,5],[1,3,4],[1,3,5]],
  "variables": ["x0","x1","y0","y1","z0","z1"],
  "degrees": [[1,1,0,0,0,0],[0,0,1,1,0,0],[0,0,0,0,1,1]],
  "ideal": ["x0*z0^2", "y0*z0+z0*y1"]
}"#;

pub const THREEFOLD_EXAMPLE: &str = r#"{
  "rays": [[1,0,0],[0,1,0],[0,0,1],[-1,-1,0],[0,0,-1]],
  "max_cones": [[0,1,2],[1,2,3],[0,2,3],[0,1,4],[1,3,4],[0,3,4]],
  "variables": ["x0","x1","x2","x3","x4"],
  "degrees": [[1,1,0,1,0],[0,0,1,0,1]],
  "ideal": ["x1*x2", "x3*x4"]
}"#;

pub fn doc(text: &str) -> InputDocument {
    parse_input(text).expect("fixture parses")
}

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn p1() -> ToricSetup {
    ToricSetup::new(Fan::new(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap(), None, Some(vec![vec![1, 1]])).unwrap()
}

pub fn p2() -> ToricSetup {
    let fan = Fan::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
    ToricSetup::new(fan, Some(names(&["x", "y", "z"])), Some(vec![vec![1, 1, 1]])).unwrap()
}

pub fn p1xp1() -> ToricSetup {
    let fan = Fan::new(vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).unwrap();
    ToricSetup::new(fan, Some(names(&["x0", "x1", "y0", "y1"])), Some(vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]])).unwrap()
}

/// F_e with variables x0, x1, y0, y1 of degrees (1,0), (1,0), (e,1), (0,1);
/// F is the class (1,0) and E the class (0,1) with E² = −e.
pub fn hirzebruch(e: i64) -> ToricSetup {
    let fan = Fan::new(vec![vec![1, 0], vec![-1, e], vec![0, -1], vec![0, 1]], vec![vec![0, 3], vec![3, 1], vec![1, 2], vec![2, 0]]).unwrap();
    ToricSetup::new(fan, Some(names(&["x0", "x1", "y0", "y1"])), Some(vec![vec![1, 1, e, 0], vec![0, 0, 1, 1]])).unwrap()
}

pub fn from_doc(text: &str) -> ToricSetup {
    let d = doc(text);
    ToricSetup::new(Fan::new(d.rays, d.max_cones).unwrap(), d.variables, d.degrees).unwrap()
}

pub fn triple_p1() -> ToricSetup {
    from_doc(TRIPLE_P1_EXAMPLE)
}

pub fn threefold() -> ToricSetup {
    from_doc(THREEFOLD_EXAMPLE)
}
