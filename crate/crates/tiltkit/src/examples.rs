//! Worked examples with hand-computed answers. The `worked-examples` suite
//! runs them through the same code paths as the CLI, and the acceptance
//! test runs them through the binary.

use serde_json::{json, Value};

pub struct Worked {
    pub name: &'static str,
    pub command: &'static str,
    input: fn() -> Value,
    expected: fn() -> Vec<(&'static str, Value)>,
}

impl Worked {
    pub fn input(&self) -> Value {
        (self.input)()
    }

    /// JSON pointers into the output and the values they must hold.
    pub fn expected(&self) -> Vec<(String, Value)> {
        (self.expected)().into_iter().map(|(p, v)| (p.to_string(), v)).collect()
    }
}

fn z() -> Value {
    json!({ "ambient_rank": 1, "relations": [[]] })
}

fn zn(n: i64) -> Value {
    json!({ "ambient_rank": 1, "relations": [[n.to_string()]] })
}

fn times(src: Value, dst: Value, k: i64) -> Value {
    json!({ "src": src, "dst": dst, "lift": [[k.to_string()]] })
}

fn cyc(k: i64) -> Value {
    json!({ "d": times(z(), z(), k) })
}

/// The strict morphism `[Z →×2 Z] → [Z →×4 Z]` with components `(1, 2)`,
/// as the butterfly on `E = Z²` with `κ = (2, -1)` and `ρ = (2 4)`.
fn f24() -> Value {
    let e = json!({ "ambient_rank": 2, "relations": [[], []] });
    json!({
        "src": cyc(2),
        "dst": cyc(4),
        "e": e,
        "kappa": { "src": z(), "dst": e, "lift": [["2"], ["-1"]] },
        "iota": { "src": z(), "dst": e, "lift": [["0"], ["1"]] },
        "sigma": { "src": e, "dst": z(), "lift": [["1", "0"]] },
        "rho": { "src": e, "dst": z(), "lift": [["2", "4"]] },
    })
}

fn canon(free_rank: usize, torsion: &[&str], display: &str) -> Value {
    json!({ "free_rank": free_rank, "torsion": torsion, "display": display })
}

fn zero() -> Value {
    canon(0, &[], "0")
}

pub const WORKED: [Worked; 7] = [
    Worked {
        name: "Smith form of [[2,4],[6,8]] is diag(2,4)",
        command: "group snf",
        input: || json!({ "matrix": [["2", "4"], ["6", "8"]] }),
        expected: || vec![("/diagonal", json!(["2", "4"]))],
    },
    Worked {
        name: "cokernel of f24 is [Z →×2 Z]",
        command: "b cokernel",
        input: f24,
        expected: || {
            vec![
                ("/normal_form", cyc(2)),
                ("/h_m1", zero()),
                ("/h_0", canon(0, &["2"], "Z/2")),
            ]
        },
    },
    Worked {
        name: "Hom(Z/4, Z/6) is Z/2",
        command: "group hom",
        input: || json!({ "src": zn(4), "dst": zn(6) }),
        expected: || vec![("/group", canon(0, &["2"], "Z/2"))],
    },
    Worked {
        name: "decorated cohomology of [Z →×2 Z] with M⁰ = Z, M¹ = 0",
        command: "dec cohomology",
        input: || {
            json!({
                "support": [0, 1],
                "terms": [z(), z()],
                "differentials": [times(z(), z(), 2)],
                "decoration": [[["1"]], []],
            })
        },
        expected: || {
            vec![
                ("/degrees/0/n", json!(-1)),
                ("/degrees/0/h_m1", zero()),
                ("/degrees/0/h_0", zero()),
                ("/degrees/1/n", json!(0)),
                ("/degrees/1/h_m1", zero()),
                ("/degrees/1/h_0", canon(0, &["2"], "Z/2")),
                ("/degrees/2/n", json!(1)),
                ("/degrees/2/h_m1", zero()),
                ("/degrees/2/h_0", zero()),
                ("/degrees/3", Value::Null),
                ("/compatible", json!(true)),
            ]
        },
    },
    Worked {
        name: "Q′(Z/2) is [2Z ⊆ Z ⊆ Z ⊇ Z]",
        command: "c qprime",
        input: || zn(2),
        expected: || {
            vec![
                ("/object/e", z()),
                ("/object/k1", json!([["2"]])),
                ("/object/k2", json!([["1"]])),
                ("/object/m", json!([["1"]])),
                ("/h", canon(0, &["2"], "Z/2")),
            ]
        },
    },
    Worked {
        name: "semi-projective replacement of [Z →0 Z/2] is [Z² →(2 0) Z]",
        command: "dg replace",
        input: || json!({ "d": times(z(), zn(2), 0) }),
        expected: || {
            vec![(
                "/object",
                json!({ "d": { "src": { "ambient_rank": 2, "relations": [[], []] }, "dst": z(), "lift": [["2", "0"]] } }),
            )]
        },
    },
    Worked {
        name: "long exact sequence of f24",
        command: "b les",
        input: f24,
        expected: || vec![("/sequence", json!("0 → 0 → 0 → 0 → Z/2 → Z/4 → Z/2 → 0"))],
    },
];
