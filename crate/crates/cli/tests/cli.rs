use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hsiao(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hsiao"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hsiao");
    let mut pipe = child.stdin.take().unwrap();
    if let Some(text) = stdin {
        pipe.write_all(text.as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn gen_k4_reports_sixteen_ones() {
    let out = hsiao(&["gen", "--k", "4"], None);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "4 8");
    assert!(lines[1..5].iter().all(|l| l.len() == 8));
    assert!(text.contains("# ones=16 "));
    assert!(text.contains("# parity_positions=0,1,2,3\n"));
}

#[test]
fn gen_k64_reports_216_ones() {
    let text = stdout(&hsiao(&["gen", "--k", "64", "--strategy", "flip"], None));
    assert!(text.starts_with("8 72\n"));
    assert!(text.contains("# ones=216 row_weights=27,27,27,27,27,27,27,27\n"));
}

#[test]
fn invalid_k_exits_2() {
    let out = hsiao(&["gen", "--k", "0"], None);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
    assert_eq!(code(&hsiao(&["gen"], None)), 2);
}

#[test]
fn delta_examples() {
    let out = hsiao(&["delta", "--r", "6", "--j", "3", "--m", "10"], None);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).take(6).collect();
    for row in rows {
        assert_eq!(row.chars().filter(|&c| c == '1').count(), 5);
    }

    let out = hsiao(&["delta", "--r", "4", "--j", "2", "--m", "7"], None);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("m=7 > C(4,2)=6"), "{err}");

    let text = stdout(&hsiao(&["delta", "--r", "5", "--j", "0", "--m", "1"], None));
    assert!(text.starts_with("5 1\n0\n0\n0\n0\n0\n"));
}

#[test]
fn verify_exit_codes() {
    let generated = stdout(&hsiao(&["gen", "--k", "4"], None));
    let out = hsiao(&["verify"], Some(&generated));
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("status=pass"));

    let dup = "3 3\n110\n001\n001\n";
    let out = hsiao(&["verify"], Some(dup));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("columns_distinct=false"));

    assert_eq!(code(&hsiao(&["verify"], Some("three by four\n"))), 2);

    let block = stdout(&hsiao(&["delta", "--r", "6", "--j", "3", "--m", "10", "--format", "csv"], None));
    let out = hsiao(&["verify", "--j", "3", "--format", "csv"], Some(&block));
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(code(&hsiao(&["verify", "--j", "2", "--format", "csv"], Some(&block))), 1);
}

#[test]
fn verify_reads_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.hex");
    let out = hsiao(
        &["gen", "--k", "26", "--format", "hex", "--out", path.to_str().unwrap()],
        None,
    );
    assert_eq!(code(&out), 0);
    let out = hsiao(&["verify", "--format", "hex", "--in", path.to_str().unwrap()], None);
    assert_eq!(code(&out), 0);
}

#[test]
fn encode_decode_round_trip() {
    let out = hsiao(&["encode", "--k", "4", "0000"], None);
    assert_eq!(stdout(&out), "00000000\n");

    let word = stdout(&hsiao(&["encode", "--k", "4", "1011"], None)).trim().to_string();
    assert_eq!(word.len(), 8);
    let out = hsiao(&["decode", "--k", "4", &word], None);
    assert_eq!((code(&out), stdout(&out)), (0, "no_error 1011\n".to_string()));

    let flip = |w: &str, i: usize| -> String {
        w.chars()
            .enumerate()
            .map(|(p, c)| if p == i { if c == '0' { '1' } else { '0' } } else { c })
            .collect()
    };
    for i in 0..8 {
        let out = hsiao(&["decode", "--k", "4", &flip(&word, i)], None);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), format!("corrected:{i} 1011\n"));
    }
    let out = hsiao(&["decode", "--k", "4"], Some(&flip(&flip(&word, 1), 6)));
    assert_eq!((code(&out), stdout(&out)), (1, "double_error\n".to_string()));

    assert_eq!(code(&hsiao(&["decode", "--k", "4", "0101"], None)), 2);
    assert_eq!(code(&hsiao(&["encode", "--k", "4", "01x1"], None)), 2);
}

#[test]
fn codec_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    hsiao(&["gen", "--k", "8", "--out", path.to_str().unwrap()], None);
    let p = path.to_str().unwrap();
    let word = stdout(&hsiao(&["encode", "--matrix", p, "10110011"], None));
    let from_k = stdout(&hsiao(&["encode", "--k", "8", "10110011"], None));
    assert_eq!(word, from_k);
    let out = hsiao(&["decode", "--matrix", p, word.trim()], None);
    assert_eq!(stdout(&out), "no_error 10110011\n");
}

#[test]
fn bench_outputs() {
    let out = hsiao(&["bench", "--r", "5", "--j", "1", "--m", "1", "--strategy", "shift"], None);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1], "5,1,1,shift,5,0,0,1.000000");

    let text = stdout(&hsiao(&["bench", "--r", "1..12", "--m", "full", "--strategy", "shift"], None));
    let data: Vec<&str> = text.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert!(!data.is_empty());
    for row in data {
        assert_eq!(row.split(',').nth(5), Some("0"), "{row}");
    }

    assert_eq!(code(&hsiao(&["bench", "--r", "9..3"], None)), 2);
    assert_eq!(code(&hsiao(&["bench", "--r", "0"], None)), 2);
    let a = stdout(&hsiao(&["bench", "--r", "7", "--j", "3"], None));
    let b = stdout(&hsiao(&["bench", "--r", "7", "--j", "3"], None));
    assert_eq!(a, b);
}

#[test]
fn inject_outputs() {
    let out = hsiao(&["inject", "--k", "4", "--mode", "exhaustive"], None);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("singles_corrected=128\n"));
    assert!(text.contains("doubles_detected=448\n"));
    assert!(text.contains("miscorrections=0\n"));

    let out = hsiao(&["inject", "--k", "64", "--mode", "random", "--trials", "0"], None);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("trials=0\n"));

    let args = ["inject", "--k", "64", "--mode", "random", "--seed", "1", "--trials", "20000", "--format", "csv"];
    let a = hsiao(&args, None);
    let b = hsiao(&args, None);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("class,injected,handled,miscorrections,residual\n"));

    assert_eq!(code(&hsiao(&["inject", "--k", "4", "--format", "hex"], None)), 2);
}

#[test]
fn help_documents_csv_columns() {
    let text = stdout(&hsiao(&["bench", "--help"], None));
    assert!(text.contains("rows,weight,width,strategy,element_writes,row_moves,recursion_depth,ratio"));
}
