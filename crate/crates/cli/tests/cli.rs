use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use condensate::battery::{
    fixture_algebras, negative_fixtures, SCALED_COACTION_FIXTURE, UNSCALED_FIXTURE,
};
use condensate::bimodule::{column_module, row_module, CondensationBimodule};
use condensate::io::{load_algebra, load_bimodule, to_canonical_json};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(name)
}

fn run(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_condensate"));
    cmd.args(args)
        .current_dir(root())
        .env_remove("CONDENSATE_DIM_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, .. } = cmd.output().unwrap();
    let json = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().unwrap(), json)
}

#[test]
fn check_verbs_and_exit_codes() {
    let (code, r) = run(&["check", "fixtures/q_z2.algebra.json"], &[]);
    assert_eq!(code, 0);
    assert!([
        "specialness",
        "associativity",
        "coassociativity",
        "frobenius"
    ]
    .iter()
    .all(|k| r[k]["passed"] == true));
    assert_eq!(r["op"], "check_algebra");
    assert!(r["paper_ref"].as_str().unwrap().contains("specialfrob"));

    let (code, r) = run(&["check", "fixtures/m2_unscaled.algebra.json"], &[]);
    assert_eq!(code, 1);
    assert_eq!(r["specialness"]["witness"]["summary"], "m∘Δ = 2·id");

    let (code, r) = run(&["check", "fixtures/z2_scaled_lcoact.bimodule.json"], &[]);
    assert_eq!(code, 1);
    assert_eq!(r["specialness"]["witness"]["summary"], "lact∘lcoact = 2·id");

    let (code, r) = run(&["check", "fixtures/malformed_extent.algebra.json"], &[]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "input");
    assert_eq!(
        run(&["check", "fixtures/does_not_exist.algebra.json"], &[]).0,
        2
    );
    assert_eq!(run(&["frobnicate"], &[]).0, 2);
}

#[test]
fn chain_verb() {
    let args = [
        "chain",
        "--algebra",
        "fixtures/q_s3.algebra.json",
        "--length",
        "2",
        "--periodic",
    ];
    let (code, r) = run(&args, &[]);
    assert_eq!(code, 0);
    assert_eq!(r["ground_dim"], 3);
    assert_eq!(r["ground_basis"]["cols"], 3);
    let (_, r) = run(&[&args[..], &["--no-basis"]].concat(), &[]);
    assert!(r.get("ground_basis").is_none());
    let (code, r) = run(&args, &[("CONDENSATE_DIM_CAP", "35")]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["kind"], "resource");
    assert_eq!(
        run(
            &[&args[..], &["--cap", "36"]].concat(),
            &[("CONDENSATE_DIM_CAP", "35")]
        )
        .0,
        0
    );
    assert_eq!(run(&args, &[("CONDENSATE_DIM_CAP", "lots")]).0, 2);
}

#[test]
fn construction_verbs() {
    let (code, r) = run(&["split", "fixtures/z2_averaging.idempotent.json"], &[]);
    assert_eq!((code, r["rank"].as_u64()), (0, Some(1)));
    let (code, r) = run(&["split", "fixtures/q_s3.algebra.json"], &[]);
    assert_eq!((code, r["rank"].as_u64()), (0, Some(6)));

    let (code, r) = run(
        &[
            "tensor",
            "fixtures/m2_row.bimodule.json",
            "fixtures/m2_column.bimodule.json",
        ],
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(
        (
            r["rank_epsilon"].as_u64(),
            r["coequalizer"].as_u64(),
            r["dim"].as_u64()
        ),
        (Some(1), Some(1), Some(1))
    );
    let (code, r) = run(
        &[
            "tensor",
            "fixtures/m2_column.bimodule.json",
            "fixtures/m2_row.bimodule.json",
        ],
        &[],
    );
    assert_eq!((code, r["dim"].as_u64()), (0, Some(4)));
    assert_eq!(
        run(
            &[
                "tensor",
                "fixtures/m2_row.bimodule.json",
                "fixtures/m2_row.bimodule.json"
            ],
            &[]
        )
        .0,
        2
    );

    let (code, r) = run(&["unitalize", "fixtures/nonunital_row.algebra.json"], &[]);
    assert_eq!(code, 0);
    assert_eq!(r["summary"]["unital_dim"], 4);
    assert_eq!(r["witness_verified"], true);

    let (code, r) = run(
        &[
            "morita",
            "fixtures/m2.algebra.json",
            "fixtures/q.algebra.json",
        ],
        &[],
    );
    assert_eq!((code, &r["verdict"]), (0, &Value::Bool(true)));
    assert_eq!(r["witness"]["witness_verified"], true);
    let (code, r) = run(
        &[
            "morita",
            "fixtures/q_z2.algebra.json",
            "fixtures/q.algebra.json",
        ],
        &[],
    );
    assert_eq!((code, &r["verdict"]), (0, &Value::Bool(false)));
    assert_eq!(
        run(
            &[
                "morita",
                "fixtures/m2_unscaled.algebra.json",
                "fixtures/q.algebra.json"
            ],
            &[]
        )
        .0,
        1
    );

    let (code, r) = run(&["dual", "fixtures/m2_column.bimodule.json"], &[]);
    assert_eq!((code, r["op"].as_str()), (0, Some("dual")));
    let (code, r) = run(&["dual", "fixtures/q_z3.algebra.json"], &[]);
    assert_eq!((code, r["op"].as_str()), (0, Some("dual_object")));
    assert_eq!(r["zigzag_a"]["isomorphic"], true);
}

#[test]
fn battery_verb() {
    let (code, r) = run(&["battery", "--filter", "hamiltonian"], &[]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["hamiltonian"]);
    let items = r["criteria"][0]["items"].as_array().unwrap();
    let item_names: Vec<&str> = items.iter().map(|i| i["name"].as_str().unwrap()).collect();
    let mut sorted = item_names.clone();
    sorted.sort();
    assert_eq!(item_names, sorted);

    let (_, capped) = run(
        &["battery", "--filter", "hamiltonian"],
        &[("CONDENSATE_DIM_CAP", "100")],
    );
    let skipped = capped["criteria"][0]["items"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["detail"]["skipped"].is_string())
        .count();
    assert!(skipped > 0);

    let (code, r) = run(&["battery", "--fixtures", "no/such/dir"], &[]);
    assert_eq!(code, 2);
    assert_eq!(r["error"]["kind"], "input");
}

#[test]
fn fixtures_round_trip_byte_identical() {
    for entry in fs::read_dir(root().join("fixtures")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let text = fs::read_to_string(&path).unwrap();
        let again = if name.starts_with("malformed") {
            assert!(load_algebra(&path).is_err());
            continue;
        } else if name.ends_with(".algebra.json") {
            to_canonical_json(&load_algebra(&path).unwrap())
        } else if name.ends_with(".bimodule.json") {
            to_canonical_json(&load_bimodule(&path).unwrap())
        } else {
            let v: Value = serde_json::from_str(&text).unwrap();
            let m: condensate::exactlin::Matrix =
                serde_json::from_value(v["idempotent"].clone()).unwrap();
            to_canonical_json(&std::collections::BTreeMap::from([("idempotent", m)]))
        };
        assert_eq!(again, text, "{name}");
    }
}

#[test]
fn fixtures_match_constructors() {
    for (stem, a) in fixture_algebras().unwrap() {
        let text = fs::read_to_string(fixture(&format!("{stem}.algebra.json"))).unwrap();
        assert_eq!(text, to_canonical_json(&a), "{stem}");
    }
    let (unscaled, scaled) = negative_fixtures().unwrap();
    assert_eq!(
        load_algebra(&fixture(&format!("{UNSCALED_FIXTURE}.algebra.json"))).unwrap(),
        unscaled
    );
    assert_eq!(
        load_bimodule(&fixture(&format!(
            "{SCALED_COACTION_FIXTURE}.bimodule.json"
        )))
        .unwrap(),
        scaled
    );
    let m2 = std::sync::Arc::new(load_algebra(&fixture("m2.algebra.json")).unwrap());
    let row: CondensationBimodule = load_bimodule(&fixture("m2_row.bimodule.json")).unwrap();
    assert_eq!(row, row_module(m2.clone(), 2).unwrap());
    assert_eq!(
        load_bimodule(&fixture("m2_column.bimodule.json")).unwrap(),
        column_module(m2, 2).unwrap()
    );
}

#[test]
fn algebra_references_resolve_relative_to_the_file() {
    let dir = std::env::temp_dir().join(format!("condensate-ref-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    fs::copy(fixture("q_z2.algebra.json"), dir.join("z2.json")).unwrap();
    let mut v: Value = serde_json::from_str(
        &fs::read_to_string(fixture("z2_scaled_lcoact.bimodule.json")).unwrap(),
    )
    .unwrap();
    v["left"] = Value::from("z2.json");
    v["right"] = Value::from("z2.json");
    let path = dir.join("ref.bimodule.json");
    fs::write(&path, v.to_string()).unwrap();
    let m = load_bimodule(&path).unwrap();
    assert_eq!(
        m,
        load_bimodule(&fixture("z2_scaled_lcoact.bimodule.json")).unwrap()
    );
    v["left"] = Value::from("missing.json");
    fs::write(&path, v.to_string()).unwrap();
    assert!(matches!(
        load_bimodule(&path),
        Err(condensate::Error::Input(_))
    ));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn schemas_cover_the_wire_format() {
    let schema = |name: &str| -> Value {
        serde_json::from_str(&fs::read_to_string(root().join("schemas").join(name)).unwrap())
            .unwrap()
    };
    let required = |s: &Value| -> Vec<String> {
        let mut v: Vec<String> = s["required"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_str().unwrap().into())
            .collect();
        v.sort();
        v
    };
    let keys = |path: &str| -> Vec<String> {
        let v: Value = serde_json::from_str(&fs::read_to_string(fixture(path)).unwrap()).unwrap();
        let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
        k.sort();
        k
    };
    assert_eq!(
        required(&schema("algebra.schema.json")),
        keys("q_s3.algebra.json")
    );
    assert_eq!(
        required(&schema("bimodule.schema.json")),
        keys("m2_row.bimodule.json")
    );
    assert_eq!(
        required(&schema("idempotent.schema.json")),
        keys("z2_averaging.idempotent.json")
    );
}
