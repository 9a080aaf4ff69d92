use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qwalk_core::qws::{format_qws, parse_qws};
use qwalk_core::{apply_translation, QuantumState};
use serde_json::Value;
use tempfile::TempDir;

fn qwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn keygen(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["keygen", "--out", p(dir)];
    args.extend_from_slice(extra);
    qwalk(&args)
}

fn encrypt(pk: &Path, m: u64, out: &Path) -> Output {
    let m = m.to_string();
    qwalk(&[
        "encrypt",
        "--public-key",
        p(pk),
        "--message",
        &m,
        "--out",
        p(out),
    ])
}

fn decrypt(cipher: &Path, sk: &Path) -> Output {
    qwalk(&["decrypt", "--cipher", p(cipher), "--secret-key", p(sk)])
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

#[test]
fn keygen_is_deterministic() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let out = keygen(dir, &["--n", "3", "--d", "4", "--seed", "7"]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    for file in ["secret_key.json", "public_key.qws", "public_key.qws.json"] {
        assert_eq!(
            fs::read(a.join(file)).unwrap(),
            fs::read(b.join(file)).unwrap(),
            "{file}"
        );
    }
    let other = tmp.path().join("c");
    keygen(&other, &["--n", "3", "--d", "4", "--seed", "8"]);
    assert_ne!(
        fs::read(a.join("secret_key.json")).unwrap(),
        fs::read(other.join("secret_key.json")).unwrap()
    );
}

#[test]
fn keygen_output_is_a_valid_state() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&keygen(tmp.path(), &["--n", "4", "--seed", "1"])), 0);
    let text = fs::read_to_string(tmp.path().join("public_key.qws")).unwrap();
    let state = parse_qws(&text).unwrap();
    assert_eq!(state.n_positions(), 16);
    state.check_normalized().unwrap();

    let sk: Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("secret_key.json")).unwrap())
            .unwrap();
    for field in ["n", "N", "d", "t_min", "t_max", "k", "t", "l", "s"] {
        assert!(sk.get(field).is_some(), "missing {field}");
    }
    assert!(matches!(sk["s"].as_str(), Some("L") | Some("R")));
}

#[test]
fn keygen_validation_errors() {
    let tmp = TempDir::new().unwrap();
    let out = keygen(tmp.path(), &["--n", "3", "--d", "0"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
    assert_eq!(code(&keygen(tmp.path(), &["--d", "4"])), 2);
    assert_eq!(
        code(&keygen(tmp.path(), &["--n", "3", "--positions", "5"])),
        2
    );
    assert_eq!(
        code(&keygen(
            tmp.path(),
            &["--n", "3", "--t-min", "4", "--t-max", "2"]
        )),
        2
    );
    assert_eq!(code(&qwalk(&["keygen", "--n", "3"])), 2);
}

#[test]
fn config_file_with_flag_override() {
    let tmp = TempDir::new().unwrap();
    let cfg = tmp.path().join("cfg.json");
    fs::write(&cfg, r#"{"n": 2, "d": 3, "t_min": 1, "t_max": 2}"#).unwrap();
    let out = keygen(tmp.path(), &["--config", p(&cfg), "--d", "5"]);
    assert_eq!(code(&out), 0);
    let sk: Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("secret_key.json")).unwrap())
            .unwrap();
    assert_eq!(sk["n"], 2);
    assert_eq!(sk["N"], 4);
    assert_eq!(sk["d"], 5);
    assert_eq!(sk["t_max"], 2);

    fs::write(&cfg, r#"{"n": 2, "bogus": 1}"#).unwrap();
    assert_eq!(code(&keygen(tmp.path(), &["--config", p(&cfg)])), 3);
}

#[test]
fn encrypt_zero_copies_public_key() {
    let tmp = TempDir::new().unwrap();
    keygen(tmp.path(), &["--n", "3", "--seed", "2"]);
    let pk = tmp.path().join("public_key.qws");
    let cipher = tmp.path().join("c.qws");
    let out = encrypt(&pk, 0, &cipher);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read(&pk).unwrap(), fs::read(&cipher).unwrap());
    assert!(tmp.path().join("c.qws.json").exists());
}

#[test]
fn encrypt_errors() {
    let tmp = TempDir::new().unwrap();
    keygen(tmp.path(), &["--n", "3", "--seed", "2"]);
    let pk = tmp.path().join("public_key.qws");
    let cipher = tmp.path().join("c.qws");
    assert_eq!(code(&encrypt(&pk, 8, &cipher)), 2);
    assert_eq!(code(&encrypt(&pk, 7, &cipher)), 0);

    let garbage = tmp.path().join("garbage.qws");
    fs::write(&garbage, "not a state\n").unwrap();
    fs::copy(
        tmp.path().join("public_key.qws.json"),
        tmp.path().join("garbage.qws.json"),
    )
    .unwrap();
    assert_eq!(code(&encrypt(&garbage, 1, &cipher)), 3);

    let lonely = tmp.path().join("lonely.qws");
    fs::copy(&pk, &lonely).unwrap();
    assert_eq!(code(&encrypt(&lonely, 1, &cipher)), 3);

    let unnormalized = tmp.path().join("un.qws");
    let state = QuantumState::from_raw(8, vec![num_complex::Complex64::new(0.5, 0.0); 16]).unwrap();
    fs::write(&unnormalized, format_qws(&state)).unwrap();
    fs::copy(
        tmp.path().join("public_key.qws.json"),
        tmp.path().join("un.qws.json"),
    )
    .unwrap();
    assert_eq!(code(&encrypt(&unnormalized, 1, &cipher)), 3);

    let wrong_dim = tmp.path().join("wd.qws");
    fs::write(&wrong_dim, format_qws(&QuantumState::random(4, 0).unwrap())).unwrap();
    fs::copy(
        tmp.path().join("public_key.qws.json"),
        tmp.path().join("wd.qws.json"),
    )
    .unwrap();
    assert_eq!(code(&encrypt(&wrong_dim, 1, &cipher)), 3);
}

#[test]
fn honest_pipeline_recovers_every_message() {
    let tmp = TempDir::new().unwrap();
    for seed in 0..3 {
        let dir = tmp.path().join(format!("k{seed}"));
        let s = seed.to_string();
        assert_eq!(
            code(&keygen(
                &dir,
                &["--n", "3", "--d", "4", "--t-min", "2", "--t-max", "5", "--seed", &s]
            )),
            0
        );
        for m in 0..8 {
            let cipher = dir.join(format!("c{m}.qws"));
            assert_eq!(code(&encrypt(&dir.join("public_key.qws"), m, &cipher)), 0);
            let out = decrypt(&cipher, &dir.join("secret_key.json"));
            assert_eq!(code(&out), 0);
            assert_eq!(stdout(&out), format!("{m}\n"));
            assert!(out.stderr.is_empty());
        }
    }
}

#[test]
fn translated_cipher_decrypts_to_shifted_message() {
    let tmp = TempDir::new().unwrap();
    keygen(tmp.path(), &["--n", "3", "--d", "8", "--seed", "11"]);
    let cipher = tmp.path().join("c.qws");
    encrypt(&tmp.path().join("public_key.qws"), 3, &cipher);
    let state = parse_qws(&fs::read_to_string(&cipher).unwrap()).unwrap();
    for delta in 0..8 {
        let tampered = tmp.path().join(format!("t{delta}.qws"));
        fs::write(&tampered, format_qws(&apply_translation(&state, delta))).unwrap();
        let out = decrypt(&tampered, &tmp.path().join("secret_key.json"));
        assert_eq!(stdout(&out), format!("{}\n", (3 + delta) % 8));
    }
}

#[test]
fn decrypt_warns_on_foreign_cipher() {
    let tmp = TempDir::new().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    // Pick a pair of seeds whose walks differ enough to leave a spread state.
    keygen(
        &a,
        &[
            "--n", "4", "--d", "16", "--t-min", "5", "--t-max", "9", "--seed", "1",
        ],
    );
    keygen(
        &b,
        &[
            "--n", "4", "--d", "16", "--t-min", "5", "--t-max", "9", "--seed", "2",
        ],
    );
    let cipher = tmp.path().join("c.qws");
    encrypt(&a.join("public_key.qws"), 1, &cipher);
    let out = decrypt(&cipher, &b.join("secret_key.json"));
    assert_eq!(code(&out), 0);
    let m: u64 = stdout(&out).trim().parse().unwrap();
    assert!(m < 16);
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn decrypt_format_errors() {
    let tmp = TempDir::new().unwrap();
    keygen(tmp.path(), &["--n", "3", "--seed", "4"]);
    let sk = tmp.path().join("secret_key.json");
    let cipher = tmp.path().join("c.qws");
    encrypt(&tmp.path().join("public_key.qws"), 2, &cipher);

    let text = fs::read_to_string(&cipher).unwrap();
    let truncated = tmp.path().join("trunc.qws");
    let keep: String = text.lines().take(9).map(|l| format!("{l}\n")).collect();
    fs::write(&truncated, keep).unwrap();
    assert_eq!(code(&decrypt(&truncated, &sk)), 3);

    let other = tmp.path().join("other");
    keygen(&other, &["--n", "4", "--seed", "4"]);
    assert_eq!(code(&decrypt(&other.join("public_key.qws"), &sk)), 3);

    assert_eq!(code(&decrypt(&tmp.path().join("missing.qws"), &sk)), 3);

    let bad_sk = tmp.path().join("bad.json");
    fs::write(&bad_sk, "{").unwrap();
    assert_eq!(code(&decrypt(&cipher, &bad_sk)), 3);
}

#[test]
fn analyze_reports() {
    let out = qwalk(&[
        "analyze", "--n", "3", "--d", "4", "--t-min", "2", "--t-max", "5",
    ]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert!((r["holevo_bound_bits"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert!((r["von_neumann_entropy_bits"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(r["shannon_entropy_bits"].as_f64().unwrap(), 8.0);
    assert!((r["holevo_gap_bits"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(r["consistent_key_count"], 16);
    assert_eq!(r.as_object().unwrap().len(), 5);

    let out = qwalk(&[
        "analyze", "--n", "3", "--d", "1", "--t-min", "3", "--t-max", "3",
    ]);
    assert!(json(&out)["holevo_gap_bits"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn analyze_brute_force_is_uniform() {
    for seed in ["0", "5", "9"] {
        let out = qwalk(&[
            "analyze",
            "--n",
            "3",
            "--d",
            "4",
            "--t-min",
            "2",
            "--t-max",
            "5",
            "--brute-force",
            "--seed",
            seed,
        ]);
        assert_eq!(code(&out), 0);
        let table = &json(&out)["eavesdropper"];
        assert_eq!(table["uniform"], true);
        let counts: Vec<u64> = table["counts"]
            .as_object()
            .unwrap()
            .values()
            .map(|v| v.as_u64().unwrap())
            .collect();
        assert_eq!(counts.len(), 8);
        assert!(counts.iter().all(|&c| c == counts[0]));
    }
}

#[test]
fn analyze_brute_force_on_cipher_file() {
    let tmp = TempDir::new().unwrap();
    keygen(
        tmp.path(),
        &[
            "--n", "2", "--d", "3", "--t-min", "1", "--t-max", "3", "--seed", "6",
        ],
    );
    let cipher = tmp.path().join("c.qws");
    encrypt(&tmp.path().join("public_key.qws"), 2, &cipher);
    let out = qwalk(&[
        "analyze",
        "--n",
        "2",
        "--d",
        "3",
        "--t-min",
        "1",
        "--t-max",
        "3",
        "--brute-force",
        "--cipher",
        p(&cipher),
    ]);
    assert_eq!(code(&out), 0);
    let table = &json(&out)["eavesdropper"];
    assert_eq!(table["uniform"], true);
    assert_eq!(table["total_keys"], 3 * 3 * 8);
}

#[test]
fn analyze_limits() {
    let out = qwalk(&["analyze", "--n", "7"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("N <= 64"));
    assert_eq!(
        code(&qwalk(&[
            "analyze",
            "--n",
            "3",
            "--d",
            "8",
            "--brute-force"
        ])),
        2
    );
    assert_eq!(
        code(&qwalk(&["analyze", "--n", "3", "--d", "4", "--k", "5"])),
        2
    );
}

#[test]
fn analyze_grid_emits_json_lines() {
    let out = qwalk(&[
        "analyze", "--n", "3", "--d", "4", "--t-min", "1", "--t-max", "2", "--grid",
    ]);
    assert_eq!(code(&out), 0);
    let lines: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3 * 3);
    for line in &lines {
        let n = line["n"].as_f64().unwrap();
        let d = line["d"].as_f64().unwrap();
        assert!((line["von_neumann_entropy_bits"].as_f64().unwrap() - (n + 1.0)).abs() < 1e-9);
        assert!((line["holevo_gap_bits"].as_f64().unwrap() - (2.0 * d).log2()).abs() < 1e-9);
    }
}

#[test]
fn analyze_writes_to_file() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("report.json");
    let out = qwalk(&["analyze", "--n", "2", "--out", p(&path)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert!((r["von_neumann_entropy_bits"].as_f64().unwrap() - 3.0).abs() < 1e-9);
}

#[test]
fn demo_transcript_is_reproducible() {
    let args = [
        "demo",
        "--n",
        "3",
        "--d",
        "4",
        "--t-min",
        "2",
        "--t-max",
        "5",
        "--message",
        "5",
        "--seed",
        "3",
    ];
    let a = qwalk(&args);
    let b = qwalk(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("public key:"));
    assert!(text.contains("cipher:"));
    assert!(text.contains("recovered message 5"));
}

#[test]
fn demo_text_roundtrip() {
    let out = qwalk(&["demo", "--n", "5", "--text", "quantum walks"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("recovered text: quantum walks"));
}

#[test]
fn whole_pipeline_is_byte_identical() {
    let run = |root: &Path| -> Vec<Vec<u8>> {
        keygen(root, &["--n", "4", "--d", "8", "--seed", "99"]);
        encrypt(&root.join("public_key.qws"), 13, &root.join("c.qws"));
        let dec = decrypt(&root.join("c.qws"), &root.join("secret_key.json"));
        let mut files: Vec<Vec<u8>> = [
            "secret_key.json",
            "public_key.qws",
            "public_key.qws.json",
            "c.qws",
            "c.qws.json",
        ]
        .iter()
        .map(|f| fs::read(root.join(f)).unwrap())
        .collect();
        files.push(dec.stdout);
        files
    };
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let ra = run(a.path());
    assert_eq!(ra, run(b.path()));
    assert_eq!(ra.last().unwrap(), b"13\n");
}
