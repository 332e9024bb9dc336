use ramsey_mult_web::{climb_trace_json, graph_densities_json, objective_curve_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn curve_endpoints() {
    let v = parse(objective_curve_json("K3", "C5", "named:C6_complement", 34));
    assert_eq!(v["t1"]["exact"], "1/18");
    assert_eq!(v["t2"]["exact"], "17/432");
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 35);
    // λ = 10/17 is sample 10 of 34 steps over [0, 2]
    assert!((pts[10][1].as_f64().unwrap() - 3.0 / 34.0).abs() < 1e-12);
    assert!(objective_curve_json("K3", "??bad", "K2", 4).is_err());
}

#[test]
fn edited_graph() {
    let v = parse(graph_densities_json("6; 0-2,0-3,0-4,1-3,1-4,1-5,2-4,2-5,3-5", "K3", "C5", "10/17"));
    assert_eq!(v["objective"]["exact"], "3/34");
    assert_eq!(v["t_h1"]["exact"], "1/18");
    assert_eq!(v["goodman"]["equal"], true);
    assert!(graph_densities_json("named:Schlafli", "K3", "C5", "1").is_err());
}

#[test]
fn climb() {
    let a = parse(climb_trace_json(12, 6, "D", "M", "5/6", 500, 3));
    let b = parse(climb_trace_json(12, 6, "D", "M", "5/6", 500, 3));
    assert_eq!(a, b);
    let steps = a["steps"].as_array().unwrap();
    assert!(steps.windows(2).all(|w| w[1][2].as_f64() < w[0][2].as_f64()));
    assert!(a["best"]["f"].as_f64().unwrap() >= 1.0 / 36.0 - 1e-12);
}
