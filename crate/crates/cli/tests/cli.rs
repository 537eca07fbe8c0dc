use std::process::{Command, Output};

use serde_json::{json, Value};

fn kunz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kunz"))
        .args(args)
        .output()
        .expect("failed to run kunz")
}

/// Runs a command that must succeed and parses its JSON output.
fn ok(args: &[&str]) -> Value {
    let out = kunz(args);
    assert!(
        out.status.success(),
        "kunz {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Runs a command that must fail with `code`; returns stderr.
fn fails(args: &[&str], code: i32) -> String {
    let out = kunz(args);
    assert_eq!(out.status.code(), Some(code), "kunz {args:?}");
    assert!(out.stdout.is_empty());
    String::from_utf8(out.stderr).unwrap()
}

fn generators(v: &Value) -> Vec<i64> {
    serde_json::from_value(v["generators"].clone()).unwrap()
}

// --- semigroups -----------------------------------------------------------

#[test]
fn info_minimalizes_generators() {
    let v = ok(&["info", "--gens", "4,13,18,26"]);
    assert_eq!(generators(&v), [4, 13, 18]);
    assert_eq!(v["multiplicity"], 4);
    assert_eq!(v["embedding_dimension"], 3);
    assert_eq!(v["frobenius"], 27);
    assert_eq!(v["apery_set"], json!([0, 13, 18, 31]));
    assert_eq!(generators(&ok(&["info", "--gens", "2,3"])), [2, 3]);
}

#[test]
fn info_rejects_non_cofinite() {
    let err = fails(&["info", "--gens", "4,6"], 1);
    assert!(err.starts_with("NotCofinite"), "{err}");
}

#[test]
fn membership_and_frobenius() {
    let v = ok(&[
        "info",
        "--gens",
        "11,12,14,16,18,20",
        "--contains",
        "0,21,22",
    ]);
    assert_eq!(v["contains"], json!({ "0": true, "21": false, "22": true }));
    assert_eq!(v["frobenius"], 21);
    let v = ok(&["info", "--gens", "2,3", "--contains", "1"]);
    assert_eq!(v["contains"]["1"], false);
    assert_eq!(v["frobenius"], 1);
}

#[test]
fn apery_sets_and_coordinates() {
    let v = ok(&["apery", "--gens", "4,13,18"]);
    assert_eq!(v["apery_set"], json!([0, 13, 18, 31]));
    assert_eq!(v["apery_tuple"], json!([0, 13, 18, 31]));
    assert_eq!(v["kunz_tuple"], json!([0, 3, 4, 7]));
    let v = ok(&["apery", "--gens", "2,3", "--m", "2"]);
    assert_eq!(v["apery_set"], json!([0, 3]));
    assert_eq!(v["kunz_tuple"], json!([0, 1]));
    let err = fails(&["apery", "--gens", "4,13,18", "--m", "5"], 1);
    assert!(err.starts_with("NotAnElement"), "{err}");
}

#[test]
fn semigroups_from_kunz_coordinates() {
    let v = ok(&["info", "--kunz", "3,4,7", "--m", "4"]);
    assert_eq!(generators(&v), [4, 13, 18]);
    assert_eq!(
        generators(&ok(&["info", "--kunz", "1", "--m", "2"])),
        [2, 3]
    );
    let err = fails(&["info", "--kunz", "1,3,1", "--m", "4"], 1);
    assert!(err.starts_with("NotInPolyhedron"), "{err}");
}

// --- posets ---------------------------------------------------------------

#[test]
fn poset_of_4_13_18() {
    let v = ok(&["poset", "--gens", "4,13,18"]);
    assert_eq!(
        v["poset"]["relations"],
        json!([[0, 1], [0, 2], [0, 3], [1, 3], [2, 3]])
    );
    assert_eq!(v["poset"]["labels"], json!([0, 13, 18, 31]));
    assert_eq!(v["atoms"], json!([1, 2]));
    assert_eq!(v["covers"], json!([[0, 1], [0, 2], [1, 3], [2, 3]]));
}

#[test]
fn chain_on_z2() {
    let v = ok(&["poset", "--gens", "2,3"]);
    assert_eq!(v["poset"]["relations"], json!([[0, 1]]));
    assert_eq!(v["atoms"], json!([1]));
    assert_eq!(v["graded"], true);
}

#[test]
fn grid_poset_is_graded() {
    let v = ok(&["poset", "--gens", "11,12,14,16,18,20"]);
    assert_eq!(v["graded"], true);
    assert_eq!(v["atoms"].as_array().unwrap().len(), 5);
    assert_eq!(ok(&["poset", "--gens", "13,14,15,16,17"])["graded"], true);
}

#[test]
fn shared_kunz_posets() {
    let relations = |gens: &str| ok(&["poset", "--gens", gens])["poset"]["relations"].clone();
    assert_eq!(
        relations("11,12,14,16,18,20"),
        relations("11,20,29,38,47,56")
    );
    assert_eq!(relations("6,7,8,9,10,11"), relations("6,8,10,13,15,17"));
    // the arithmetic family member ⟨6,13,14,15,16⟩, not ⟨6,13,14,15,26⟩
    assert_eq!(relations("6,13,14,15,16"), relations("6,15,16,19,20"));
}

fn edges(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("->")).count()
}

fn nodes(dot: &str) -> usize {
    dot.lines().filter(|l| l.contains("[label=")).count()
}

#[test]
fn dot_output() {
    let out = kunz(&["poset", "--gens", "2,3", "--dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!((nodes(&dot), edges(&dot)), (2, 1));

    let out = kunz(&["poset", "--gens", "4,13,18", "--dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!((nodes(&dot), edges(&dot)), (4, 4));
}

#[test]
fn dot_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.dot");
    let out = kunz(&[
        "poset",
        "--gens",
        "4,13,18",
        "--dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert_eq!(edges(&dot), 4);
}

// --- faces ----------------------------------------------------------------

#[test]
fn face_of_4_13_18() {
    let v = ok(&["face", "--gens", "4,13,18"]);
    assert_eq!(
        v["face"],
        json!({ "modulus": 4, "tight": [[1, 2]], "dimension": 2, "subgroup": [0] })
    );
    assert_eq!(
        v["poset"],
        ok(&["poset", "--gens", "4,13,18"])["poset"]
            .as_object()
            .map(|p| {
                let mut p = p.clone();
                p.remove("labels");
                Value::Object(p)
            })
            .unwrap()
    );
}

#[test]
fn faces_of_kunz_tuples() {
    let v = ok(&["face", "--point", "1", "--kind", "kunz"]);
    assert_eq!(v["face"]["tight"], json!([]));
    assert_eq!(v["face"]["dimension"], 1);

    let z = ok(&["apery", "--gens", "6,7,8,9,10,11"])["kunz_tuple"].clone();
    let z: Vec<String> = z.as_array().unwrap()[1..]
        .iter()
        .map(|x| x.to_string())
        .collect();
    let v = ok(&["face", "--point", &z.join(","), "--kind", "kunz"]);
    assert_eq!(v["face"]["tight"], json!([]));
    assert_eq!(v["face"]["dimension"], 5);
}

#[test]
fn face_dimensions() {
    assert_eq!(
        ok(&["face", "--gens", "13,14,15,16,17"])["face"]["dimension"],
        2
    );
    assert_eq!(
        ok(&["face", "--gens", "6,13,14,15,16"])["face"]["dimension"],
        3
    );
    assert_eq!(ok(&["face", "--modulus", "7"])["face"]["dimension"], 6);
}

#[test]
fn face_with_nontrivial_subgroup() {
    let v = ok(&["face", "--modulus", "4", "--tight", "1:2,3:2"]);
    assert_eq!(v["face"]["subgroup"], json!([0, 2]));
    assert_eq!(v["face"]["dimension"], 1);
    assert_eq!(v["poset"]["relations"], json!([[0, 1]]));
}

#[test]
fn beta_ray_face_has_subgroup_h() {
    let v = ok(&["face", "--point", "1,2,0,1,2,0,1,2,0,1,2"]);
    assert_eq!(v["face"]["subgroup"], json!([0, 3, 6, 9]));
}

#[test]
fn automorphisms() {
    let v = ok(&["face", "--gens", "4,13,18", "--automorphism", "1"]);
    assert_eq!(v["automorphism"]["image"]["face"], v["face"]);
    let v = ok(&["face", "--gens", "4,13,18", "--automorphism", "3"]);
    assert_eq!(v["automorphism"]["image"]["face"]["tight"], json!([[2, 3]]));
    let err = fails(&["face", "--gens", "4,13,18", "--automorphism", "2"], 1);
    assert!(err.starts_with("NotAUnit"), "{err}");
}

#[test]
fn inconsistent_faces_are_rejected() {
    let err = fails(&["face", "--modulus", "5", "--tight", "1:1,2:2"], 1);
    assert!(err.starts_with("InconsistentFace"), "{err}");
    let err = fails(&["face", "--modulus", "4", "--tight", "0:1"], 1);
    assert!(err.starts_with("InvalidFace"), "{err}");
}

// --- arithmetic family ----------------------------------------------------

#[test]
fn ega_report_golden() {
    let v = ok(&["ega", "--params", "13,1,4,1"]);
    assert_eq!(v["frobenius"], 38);
    assert_eq!(v["face_dimension"], 2);
    assert_eq!(v["rays"]["r"], json!((0..13).collect::<Vec<_>>()));
    assert_eq!(
        v["rays"]["t"],
        json!([0, 10, 7, 4, 1, 11, 8, 5, 2, 12, 9, 6, 3])
    );
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["a", "d", "face_dimension", "frobenius", "h", "k", "rays"]
    );
}

#[test]
fn ega_frobenius_branches() {
    assert_eq!(ok(&["ega", "--params", "11,2,5,-2"])["frobenius"], 21);
    assert_eq!(ok(&["ega", "--params", "2,1,1,1"])["frobenius"], 1);
}

#[test]
fn ega_face_dimension_branches() {
    assert_eq!(ok(&["ega", "--params", "6,2,4,1"])["face_dimension"], 3);
    assert_eq!(ok(&["ega", "--params", "7,1,6,1"])["face_dimension"], 6);
    for a in ["5", "9", "14"] {
        let params = format!("{a},1,1,1");
        assert_eq!(ok(&["ega", "--params", &params])["face_dimension"], 1);
    }
}

#[test]
fn ega_membership() {
    let v = ok(&["ega", "--params", "11,2,5,-2", "--contains", "21,12"]);
    assert_eq!(v["contains"], json!({ "21": false, "12": true }));
    let v = ok(&["ega", "--params", "13,1,4,1", "--contains", "38"]);
    assert_eq!(v["contains"]["38"], false);
}

fn grid_value(v: &Value, x: i64, y: i64) -> i64 {
    v["grid"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["x"] == x && c["y"] == y)
        .map(|c| c["value"].as_i64().unwrap())
        .unwrap()
}

#[test]
fn ega_grid() {
    let v = ok(&["ega", "--params", "13,1,4,1", "--grid"]);
    assert_eq!(grid_value(&v, 1, 1), 14);
    assert_eq!(grid_value(&v, 1, 4), 17);
    assert_eq!(grid_value(&v, 3, 4), 51);
    let v = ok(&["ega", "--params", "2,1,1,1", "--grid"]);
    assert_eq!(v["grid"], json!([{ "x": 1, "y": 1, "value": 3 }]));
    let v = ok(&["ega", "--params", "11,2,5,-2", "--grid"]);
    assert_eq!(grid_value(&v, 1, 1), 20);
    assert_eq!(grid_value(&v, 2, 5), 24);
}

#[test]
fn ega_invalid_params() {
    let err = fails(&["ega", "--params", "11,1,5,-2"], 1);
    assert!(err.starts_with("InvalidParams"), "{err}");
}

#[test]
fn ega_rays_out_of_regime() {
    assert_eq!(ok(&["ega", "--params", "6,2,4,1"])["rays"], Value::Null);
}

#[test]
fn ega_ray_t_faces() {
    let t = |params: &str| -> String {
        let v = ok(&["ega", "--params", params]);
        let t: Vec<String> = v["rays"]["t"].as_array().unwrap()[1..]
            .iter()
            .map(|x| x.to_string())
            .collect();
        t.join(",")
    };
    // t for (13,1,4,1) is a chain with atom 4
    let v = ok(&["face", "--point", &t("13,1,4,1")]);
    assert_eq!(v["atoms"], json!([4]));
    // k | a: t_k = 0, so the subgroup is nontrivial
    let v = ok(&["face", "--point", &t("12,1,4,1")]);
    assert_ne!(v["face"]["subgroup"], json!([0]));
    // not a chain
    let v = ok(&["face", "--point", &t("16,1,6,7")]);
    assert!(v["atoms"].as_array().unwrap().len() > 1);
}

#[test]
fn ega_detection() {
    let detected = |gens: &str| ok(&["ega", "--detect", "--gens", gens])["detected"].clone();
    let d = detected("11,12,14,16,18,20");
    assert_eq!(
        (
            d["a"].clone(),
            d["h"].clone(),
            d["k"].clone(),
            d["d"].clone()
        ),
        (json!(11), json!(2), json!(5), json!(-2))
    );
    let d = detected("13,14,15,16,17");
    assert_eq!(
        (
            d["a"].clone(),
            d["h"].clone(),
            d["k"].clone(),
            d["d"].clone()
        ),
        (json!(13), json!(1), json!(4), json!(1))
    );
    assert_eq!(detected("5,6,9"), Value::Null);
    assert_eq!(detected("6,7,8,10"), Value::Null);
}

// --- gluings and embeddings -----------------------------------------------

#[test]
fn glue_golden() {
    let v = ok(&["glue", "--gens", "4,13,18", "--alpha", "31", "--beta", "3"]);
    assert_eq!(v["gluing"]["glued"], json!([12, 31, 39, 54]));
    assert_eq!(v["gluing"]["augmented"], true);
    let labels = v["glued_poset"]["labels"].as_array().unwrap();
    assert_eq!(labels[1], 85);
    assert_eq!(labels[9], 93);

    let v = ok(&["glue", "--gens", "4,13,18", "--alpha", "43", "--beta", "3"]);
    assert_eq!(v["gluing"]["glued"], json!([12, 39, 43, 54]));
    assert_eq!(v["gluing"]["augmented"], false);
    assert_eq!(v["gluing"]["face_dims"], json!([2, 3]));
}

#[test]
fn glue_cover_kinds() {
    let kinds = |alpha: &str| -> Vec<Value> {
        ok(&["glue", "--gens", "4,13,18", "--alpha", alpha, "--beta", "3"])["covers"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["kind"].clone())
            .collect()
    };
    assert!(kinds("31").contains(&json!("wrap")));
    assert!(!kinds("43").contains(&json!("wrap")));
    assert!(kinds("43").contains(&json!("step")));
}

#[test]
fn glued_posets_differ_by_wrapped_relations() {
    let relations = |alpha: &str| -> Vec<Value> {
        ok(&["glue", "--gens", "4,13,18", "--alpha", alpha, "--beta", "3"])["glued_poset"]
            ["relations"]
            .as_array()
            .unwrap()
            .clone()
    };
    let (t1, t2) = (relations("43"), relations("31"));
    assert!(t1.iter().all(|r| t2.contains(r)));
    assert!(t2.len() > t1.len());
}

#[test]
fn glue_errors() {
    let err = fails(
        &["glue", "--gens", "4,13,18", "--alpha", "13", "--beta", "3"],
        1,
    );
    assert!(err.starts_with("AlphaIsGenerator"), "{err}");
    let err = fails(
        &["glue", "--gens", "4,13,18", "--alpha", "5", "--beta", "3"],
        1,
    );
    assert!(err.starts_with("AlphaNotInS"), "{err}");
    let err = fails(
        &["glue", "--gens", "4,13,18", "--alpha", "39", "--beta", "3"],
        1,
    );
    assert!(err.starts_with("NotCoprime"), "{err}");
}

#[test]
fn factor_round_trips() {
    for (gens, alpha) in [("12,31,39,54", 31), ("12,39,43,54", 43)] {
        let v = ok(&["glue", "--factor", "--gens", gens]);
        assert_eq!(v["gluing"]["base"], json!([4, 13, 18]));
        assert_eq!(v["gluing"]["alpha"], alpha);
        assert_eq!(v["gluing"]["beta"], 3);
    }
    assert_eq!(
        ok(&["glue", "--factor", "--gens", "3,4,5"])["factor"],
        Value::Null
    );
}

#[test]
fn embedding_table_and_beta_ray() {
    let v = ok(&["embed", "--n", "12", "--hgen", "3", "--rho", "7"]);
    assert_eq!(v["beta"], 3);
    assert_eq!(v["beta_ray"], json!([0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2]));
    let table = v["table"].as_array().unwrap();
    assert_eq!(table[7], json!([7, 0, 1]));
    assert_eq!(table[2], json!([2, 0, 2]));
    assert_eq!(table[3], json!([3, 3, 0]));

    let v = ok(&["embed", "--n", "10", "--hgen", "2", "--rho", "1"]);
    assert!(v["beta_ray"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| s == 0 || s == 1));
}

#[test]
fn embedding_image() {
    let v = ok(&[
        "embed", "--n", "12", "--hgen", "3", "--rho", "7", "--point", "13,18,31",
    ]);
    let glued = ok(&["apery", "--gens", "12,31,39,54"]);
    assert_eq!(v["image"]["phi"], glued["apery_tuple"]);
    assert_eq!(v["image"]["face"]["face"]["dimension"], 2);
    assert_eq!(v["image"]["with_ray"]["face"]["dimension"], 3);

    let v = ok(&[
        "embed", "--n", "12", "--hgen", "3", "--rho", "7", "--point", "0,0,0",
    ]);
    assert_eq!(v["image"]["phi"], json!(vec![0; 12]));

    let err = fails(
        &[
            "embed", "--n", "12", "--hgen", "3", "--rho", "7", "--point", "1,5,1",
        ],
        1,
    );
    assert!(err.starts_with("NotInCone"), "{err}");
}

#[test]
fn extension_matches_gluings() {
    let ext = |augmented: bool| {
        let mut args = vec![
            "embed", "--n", "12", "--hgen", "3", "--rho", "7", "--extend", "4,13,18",
        ];
        if augmented {
            args.push("--augmented");
        }
        ok(&args)["extension"]["poset"].clone()
    };
    let poset = |alpha: &str| {
        let mut p = ok(&["glue", "--gens", "4,13,18", "--alpha", alpha, "--beta", "3"])
            ["glued_poset"]
            .clone();
        p.as_object_mut().unwrap().remove("labels");
        p
    };
    assert_eq!(ext(true), poset("31"));
    assert_eq!(ext(false), poset("43"));
}

#[test]
fn degenerate_extension_collapses() {
    // βρ = 0 in Z_12 with β = 3, ρ = 4
    let v = ok(&[
        "embed",
        "--n",
        "12",
        "--hgen",
        "3",
        "--rho",
        "4",
        "--extend",
        "4,13,18",
        "--augmented",
    ]);
    assert_eq!(
        v["extension"]["poset"]["subgroup"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
}

#[test]
fn embedding_errors() {
    let err = fails(&["embed", "--n", "12", "--hgen", "3", "--rho", "3"], 1);
    assert!(err.starts_with("InvalidEmbedding"), "{err}");
}

// --- sweeps and usage -----------------------------------------------------

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "gluing",
        "--seed",
        "7",
        "--max-m",
        "5",
        "--samples",
        "5",
    ];
    let (a, b) = (kunz(&args), kunz(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["reports"][0]["suite"], "gluing");
    assert_eq!(v["reports"][0]["failed"], 0);
}

#[test]
fn verify_small_sweeps() {
    let v = ok(&[
        "verify",
        "--suite",
        "all",
        "--seed",
        "1",
        "--max-m",
        "6",
        "--samples",
        "10",
    ]);
    assert_eq!(v["reports"].as_array().unwrap().len(), 8);
    assert_eq!(v["ok"], true);
}

#[test]
fn usage_errors_exit_2() {
    let err = fails(&["verify", "--suite", "nope"], 2);
    assert!(err.contains("--suite"), "{err}");
    let err = fails(&["ega", "--params", "1,2,3"], 2);
    assert!(err.contains("--params"), "{err}");
    fails(&["glue", "--gens", "4,13,18", "--alpha", "31"], 2);
    fails(&["info"], 2);
    fails(&["frobnicate"], 2);
    fails(&["face", "--gens", "3,4", "--point", "1,1"], 2);
}

#[test]
fn json_keys_are_sorted() {
    let out = kunz(&["glue", "--gens", "4,13,18", "--alpha", "31", "--beta", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<usize> = [
        "\"base_poset\"",
        "\"covers\"",
        "\"glued_poset\"",
        "\"gluing\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(top.windows(2).all(|w| w[0] < w[1]));
}
