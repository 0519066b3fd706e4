// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn olcpm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_olcpm"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

const BIRTH: &str = "0 AN 1\n0 AN 2\n0 AN 3\n0 AN 4\n0 AE 1 3\n0 AE 1 4\n0 AE 2 3\n0 AE 2 4\n1 AE 1 2\n";

#[test]
fn run_writes_cover_at_end() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ev.txt");
    fs::write(&input, BIRTH).unwrap();
    let out = dir.path().join("out");
    let o = olcpm(&["run", "--input", p(&input), "--k", "3", "--out", p(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read_to_string(out.join("ocpm_t1.cover")).unwrap(), "1 2 3 4\n");
    assert_eq!(fs::read_to_string(out.join("lifecycle.log")).unwrap(), "1\tBIRTH\t0\t1 2 3 4\t-\n");
    assert!(!out.join("olcpm_t1.cover").exists());
}

#[test]
fn snapshot_boundary_is_inclusive() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ev.txt");
    fs::write(&input, BIRTH).unwrap();
    let out = dir.path().join("out");
    let o = olcpm(&[
        "run", "--input", p(&input), "--k", "3", "--post", "--snapshot-at", "0", "--snapshot-at", "1", "--out", p(&out),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(out.join("ocpm_t0.cover")).unwrap(), "");
    assert_eq!(fs::read_to_string(out.join("ocpm_t1.cover")).unwrap(), "1 2 3 4\n");
    assert_eq!(fs::read_to_string(out.join("olcpm_t1.cover")).unwrap(), "1 2 3 4\n");
}

#[test]
fn empty_input_gives_empty_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ev.txt");
    fs::write(&input, "").unwrap();
    let out = dir.path().join("out");
    let o = olcpm(&["run", "--input", p(&input), "--k", "3", "--post", "--out", p(&out)]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(out.join("lifecycle.log")).unwrap(), "");
    assert_eq!(fs::read_to_string(out.join("ocpm_t0.cover")).unwrap(), "");
    assert_eq!(fs::read_to_string(out.join("olcpm_t0.cover")).unwrap(), "");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ev.txt");
    let mut text = String::new();
    for (i, (u, v)) in [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5), (5, 6), (2, 4)].iter().enumerate() {
        text.push_str(&format!("{i} AE {u} {v}\n"));
    }
    text.push_str("9 RE 2 3\n10 RN 5\n");
    fs::write(&input, text).unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("out{run}"));
        let o = olcpm(&[
            "run", "--input", p(&input), "--k", "3", "--post", "--implicit-nodes", "--snapshot-all", "--seed", "7",
            "--out", p(&out),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let mut files: Vec<(String, String)> = fs::read_dir(&out)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (e.file_name().into_string().unwrap(), fs::read_to_string(e.path()).unwrap())
            })
            .collect();
        files.sort();
        outputs.push(files);
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0].len(), 1 + 2 * 10);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ev.txt");
    fs::write(&input, "1 AN 1\n0 AN 2\n").unwrap();
    let out = dir.path().join("out");
    assert_eq!(olcpm(&["run", "--input", p(&input), "--k", "3", "--out", p(&out)]).status.code(), Some(2));
    assert_eq!(olcpm(&["run", "--input", p(&input), "--k", "2", "--out", p(&out)]).status.code(), Some(1));
    assert_eq!(olcpm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(olcpm(&["run", "--k", "3"]).status.code(), Some(1));
    fs::write(&input, "0 AE 1 2\n").unwrap();
    assert_eq!(olcpm(&["run", "--input", p(&input), "--k", "3", "--out", p(&out)]).status.code(), Some(0));
    fs::write(&input, "0 XX 1 2\n").unwrap();
    assert_eq!(olcpm(&["run", "--input", p(&input), "--k", "3", "--out", p(&out)]).status.code(), Some(2));
    assert_eq!(olcpm(&["--help"]).status.code(), Some(0));
}

#[test]
fn evaluate_prints_six_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.cover");
    let b = dir.path().join("b.cover");
    let empty = dir.path().join("e.cover");
    fs::write(&a, "1\n2\n3\n4\n5\n6\n7\n8\n").unwrap();
    fs::write(&b, "1 2 3 4 5 6 7 8\n").unwrap();
    fs::write(&empty, "").unwrap();
    let run = |x: &Path, y: &Path| String::from_utf8(olcpm(&["evaluate", p(x), p(y)]).stdout).unwrap();
    assert_eq!(run(&a, &a), "1.000000\n");
    assert_eq!(run(&empty, &b), "0.000000\n");
    // Reference value for singletons against one group of eight.
    assert_eq!(run(&a, &b), "0.000000\n");
    fs::write(&b, "1 2 x\n").unwrap();
    assert_eq!(olcpm(&["evaluate", p(&a), p(&b)]).status.code(), Some(2));
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let snaps = dir.path().join("snaps");
    fs::create_dir(&snaps).unwrap();
    fs::write(snaps.join("1.edges"), "1 2\n2 3\n1 3\n").unwrap();
    fs::write(snaps.join("2.edges"), "1 2\n3 4\n").unwrap();
    fs::write(snaps.join("5.edges"), "# empty hour\n").unwrap();
    let events = dir.path().join("ev.txt");
    assert!(olcpm(&["convert", "--input", p(&snaps), "--out", p(&events)]).status.success());
    let text = fs::read_to_string(&events).unwrap();
    assert!(text.starts_with("1 AN 1\n1 AN 2\n1 AN 3\n1 AE 1 2\n"), "{text}");
    assert!(text.contains("2 RE 1 3\n2 RE 2 3\n2 AN 4\n2 AE 3 4\n"), "{text}");

    let back = dir.path().join("back");
    assert!(olcpm(&["convert", "--input", p(&events), "--out", p(&back)]).status.success());
    for t in [1, 2, 5] {
        let mut a: Vec<String> = fs::read_to_string(snaps.join(format!("{t}.edges"))).unwrap().lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
        let mut b: Vec<String> = fs::read_to_string(back.join(format!("{t}.edges"))).unwrap().lines().map(String::from).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "snapshot {t}");
    }
}

#[test]
fn bench_grid_row_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("grid.toml");
    fs::write(
        &cfg,
        "k = 3\nsizes = [100]\na_values = [1]\nalgos = [\"ocpm\", \"dycpm\"]\n\n[base]\nn = 100\nsteps = 10\nseed = 3\n",
    )
    .unwrap();
    let out = dir.path().join("bench");
    let o = olcpm(&["bench", p(&cfg), "--out", p(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("timings.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "size,a,algo,step,millis");
    assert_eq!(lines.iter().filter(|l| l.starts_with("100,1,ocpm,")).count(), 10);
    assert_eq!(lines.iter().filter(|l| l.starts_with("100,1,dycpm,")).count(), 10);
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    assert!(summary.starts_with("size,a,algo,median_millis,ratio\n"));

    fs::write(&cfg, "k = 3\nsizes = [100]\na_values = [0]\n[base]\nn = 100\n").unwrap();
    assert_eq!(olcpm(&["bench", p(&cfg)]).status.code(), Some(2));
}
