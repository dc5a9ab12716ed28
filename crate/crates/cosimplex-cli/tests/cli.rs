//! End-to-end command tests: exit-code contract, output determinism, and
//! the documented bundle formats.

use std::path::PathBuf;
use std::process::Command;

use cosimplex::cosab::TruncCosimpAb;
use cosimplex::fgab::FgAbGroup;
use cosimplex::gpd::FinGroupoid;
use cosimplex::json;
use cosimplex::torsor::TruncCosimpGpd;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cosimplex"))
}

fn write_bundle(dir: &tempfile::TempDir, name: &str, value: serde_json::Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    path
}

#[test]
fn check_valid_invalid_and_malformed() {
    let dir = tempfile::tempdir().unwrap();
    // valid constant cosimplicial abelian group
    let a = TruncCosimpAb::constant(FgAbGroup::free(1), 3);
    let good = write_bundle(
        &dir,
        "good.json",
        json::bundle("cosimplicial-ab", "constant-z", json::cosimp_ab_to_json(&a)),
    );
    let out = bin().arg("check").arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);

    // corrupted coface: breaks an identity, exit 2 naming the identity
    let x = cosimplex::cosimp::delta_vertices(2);
    let mut j = json::cosimpset_to_json(&x);
    j["d"]["(1,0)"]["0"] = serde_json::json!("0");
    let bad = write_bundle(&dir, "bad.json", json::bundle("cosimplicial-set", "broken", j));
    let out = bin().arg("check").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("identity"), "should name the violated identity: {text}");

    // malformed JSON: exit 3
    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, "{ not json").unwrap();
    let out = bin().arg("check").arg(&malformed).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // missing file: exit 3
    let out = bin().arg("check").arg(dir.path().join("nope.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cohomology_table_and_margins() {
    let dir = tempfile::tempdir().unwrap();
    let a = TruncCosimpAb::constant(FgAbGroup::free(1), 4);
    let path = write_bundle(
        &dir,
        "const.json",
        json::bundle("cosimplicial-ab", "constant-z", json::cosimp_ab_to_json(&a)),
    );
    let out = bin()
        .arg("cohomology")
        .arg(&path)
        .arg("--degrees")
        .arg("0..4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8_lossy(&out.stdout);
    // all three pipelines give Z in degree 0 and vanish in degrees 1..2
    assert!(text.contains("Z"), "{text}");
    assert!(text.contains("n/a"), "degrees beyond the margin print n/a: {text}");
    assert!(!text.contains("MISMATCH"), "{text}");

    // byte-identical across runs
    let again = bin()
        .arg("cohomology")
        .arg(&path)
        .arg("--degrees")
        .arg("0..4")
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);

    // json output mode has sorted keys and is deterministic
    let j1 = bin()
        .arg("cohomology")
        .arg(&path)
        .arg("--degrees")
        .arg("0..2")
        .arg("--json")
        .output()
        .unwrap();
    let j2 = bin()
        .arg("cohomology")
        .arg(&path)
        .arg("--degrees")
        .arg("0..2")
        .arg("--json")
        .output()
        .unwrap();
    assert_eq!(j1.stdout, j2.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&j1.stdout).unwrap();
    assert_eq!(parsed["mismatch"], serde_json::json!(false));
}

#[test]
fn torsors_and_hdelta_on_constant_z2() {
    let dir = tempfile::tempdir().unwrap();
    let h = TruncCosimpGpd::constant(FinGroupoid::cyclic_group("*", 2).unwrap(), 2);
    let path = write_bundle(
        &dir,
        "z2.json",
        json::bundle("cosimplicial-gpd", "constant-z2", json::cosimp_gpd_to_json(&h)),
    );
    let out = bin()
        .arg("torsors")
        .arg(&path)
        .arg("--json")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["pi0_torsors"], serde_json::json!(1));
    assert_eq!(parsed["pi0_hdelta"], serde_json::json!(1));
    assert_eq!(parsed["hdelta_morphisms"], serde_json::json!(2));
    assert_eq!(parsed["theorem12"], serde_json::json!(true));

    let out = bin().arg("hdelta").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("1 objects, 2 morphisms"), "{text}");
    assert!(text.contains("stabilized: yes"), "{text}");

    // an oversized cap bound triggers the budget exit code
    let out = bin()
        .arg("torsors")
        .arg(&path)
        .arg("--cap")
        .arg("1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));

    // the budget can come from the environment
    let out = bin()
        .arg("torsors")
        .arg(&path)
        .env("COSIMPLEX_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_exit_codes_and_determinism() {
    let ok = bin()
        .args(["verify", "--suite", "lemma1", "--seed", "3", "--count", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{:?}", ok);
    let again = bin()
        .args(["verify", "--suite", "lemma1", "--seed", "3", "--count", "5"])
        .output()
        .unwrap();
    assert_eq!(ok.stdout, again.stdout, "output must be byte-identical");

    let unknown = bin().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(5));

    let usage = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(5));
}

#[test]
fn em_model_and_k_invariant_commands() {
    let dir = tempfile::tempdir().unwrap();
    // sphere bundle: I = point, V = F the boundary of the 3-simplex,
    // U the vertex subspace
    let s2 = cosimplex::simp::skeleton(&cosimplex::simp::standard_simplex(3, 3), 2);
    let m_top = s2.trunc();
    let v0 = s2.level(0).index("0").unwrap();
    let mut chosen = vec![v0];
    for m in 0..m_top {
        chosen.push(s2.degen(m, 0, chosen[m]));
    }
    let vertex = cosimplex::simp::TruncSimpSet::new(
        (0..=m_top)
            .map(|m| {
                cosimplex::simp::FinSet::new(vec![s2.level(m).label(chosen[m]).to_string()])
                    .unwrap()
            })
            .collect(),
        (1..=m_top).map(|m| vec![vec![0]; m + 1]).collect(),
        (0..m_top).map(|m| vec![vec![0]; m + 1]).collect(),
    )
    .unwrap();
    let incl = cosimplex::simp::SimpMap {
        levels: (0..=m_top).map(|m| vec![chosen[m]]).collect(),
    };
    let ident = cosimplex::simp::SimpMap::identity(&s2);
    let ident_vertex = cosimplex::simp::SimpMap::identity(&vertex);
    let cat_json = serde_json::json!({
        "objects": ["i"],
        "morphisms": [{"name": "id", "src": "i", "tgt": "i"}],
        "id": {"i": "id"},
        "comp": {"(id,id)": "id"},
    });
    let diagram = |space: &cosimplex::simp::TruncSimpSet, map: &cosimplex::simp::SimpMap| {
        serde_json::json!({
            "spaces": {"i": json::simpset_to_json(space)},
            "maps": {"id": json::simp_map_to_json(map, space, space)},
        })
    };
    let payload = serde_json::json!({
        "category": cat_json,
        "u": diagram(&vertex, &ident_vertex),
        "v": diagram(&s2, &ident),
        "f": diagram(&s2, &ident),
        "include": {"i": json::simp_map_to_json(&incl, &vertex, &s2)},
        "project": {"i": json::simp_map_to_json(&ident, &s2, &s2)},
        "degree": 2,
    });
    let path = write_bundle(&dir, "sphere.json", json::bundle("diagram-bundle", "s2", payload));
    let out = bin().arg("em-model").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("H_n = Z"), "{text}");

    // k-invariant on a two-stage simplicial abelian group
    let z = FgAbGroup::free(1);
    let mut groups = vec![FgAbGroup::trivial(); 6];
    groups[2] = z.clone();
    groups[3] = z.clone();
    let diffs: Vec<cosimplex::fgab::AbHom> = (1..=5)
        .map(|m| cosimplex::fgab::AbHom::zero(&groups[m], &groups[m - 1]))
        .collect();
    let c = cosimplex::fgab::ChainComplex::new(groups, diffs).unwrap();
    let a = cosimplex::postnikov::gamma_dk(&c, 5);
    let path = write_bundle(
        &dir,
        "twostage.json",
        json::bundle("simplicial-ab", "two-stage", json::simp_ab_to_json(&a)),
    );
    let out = bin()
        .arg("k-invariant")
        .arg(&path)
        .arg("--degree")
        .arg("3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("exactness: pass"), "{text}");
}

#[test]
fn readme_example_bundle_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.json");
    std::fs::write(
        &path,
        r#"{"kind": "cosimplicial-ab", "name": "constant-Z", "payload": {
  "trunc": 1,
  "levels": [{"generators": 1, "relations": []},
             {"generators": 1, "relations": []}],
  "d": {"(1,0)": {"matrix": [[1]]}, "(1,1)": {"matrix": [[1]]}},
  "s": {"(0,0)": {"matrix": [[1]]}}
}}"#,
    )
    .unwrap();
    let out = bin().arg("check").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let out = bin()
        .args(["cohomology"])
        .arg(&path)
        .args(["--degrees", "0..1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("Z"), "{text}");
}

#[test]
fn hdelta_cap_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let h = TruncCosimpGpd::constant(FinGroupoid::cyclic_group("*", 2).unwrap(), 2);
    let path = write_bundle(
        &dir,
        "z2cap.json",
        json::bundle("cosimplicial-gpd", "constant-z2", json::cosimp_gpd_to_json(&h)),
    );
    let out = bin()
        .arg("hdelta")
        .arg(&path)
        .args(["--cap", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}
