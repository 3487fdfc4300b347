use std::io::Write;
use std::process::{Command, Output, Stdio};

use pkgraph::constructions::{named_graph, NamedGraph};
use pkgraph::iso::are_isomorphic;
use pkgraph::{parse_graph6, write_graph6};
use serde_json::Value;

fn pk_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pk"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn pk(args: &[&str], stdin: &str) -> Output {
    pk_env(args, stdin, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn token(args: &[&str]) -> String {
    let o = pk(args, "");
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o).trim().to_string()
}

#[test]
fn usage_errors_exit_one() {
    for args in
        [&["bogus"][..], &["compute"], &["census"], &["swap", "x", "C~", "0"], &["census", "--max-n", "3", "--g6", "f"]]
    {
        let o = pk(args, "");
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(pk(&["--help"], "").status.code(), Some(0));
}

#[test]
fn domain_errors_surface_their_text() {
    let o = pk(&["compute", "-k", "1"], "C~\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("path length k must be at least 2, got 1"));

    let o = pk(&["compute", "-k", "3"], "C~\nA`\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("-:2: nonzero padding"), "{}", stderr(&o));

    let o = pk(&["pair", "whitney", "--type", "3", "--thorns", "0,1,1,0", "--widths", "1,1,1"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("case (vi) is excluded for Whitney type 3"));

    let o = pk(&["gen", "cycle", "2"], "");
    assert_eq!(o.status.code(), Some(1));

    let o = pk(&["swap", "b", "D?{", "0", "1", "2", "3"], "");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compute_reads_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("in.g6");
    std::fs::write(&file, "C~\n\nA_\n").unwrap();
    let from_file = pk(&["compute", "-k", "3", file.to_str().unwrap()], "");
    let from_stdin = pk(&["compute", "-k", "3", "-"], "C~\n\nA_\n");
    assert_eq!(stdout(&from_file), stdout(&from_stdin));
    let lines: Vec<String> = stdout(&from_file).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    // P_3(K_2) is empty
    assert_eq!(lines[1], "?");
    assert_eq!(parse_graph6(&lines[0]).unwrap().n(), 12);

    let json = stdout(&pk(&["compute", "-k", "2", "--json"], "A_\n"));
    let v: Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["pk"], "@");
    assert_eq!(v["labels"], serde_json::json!([[0, 1]]));
}

#[test]
fn iso_prints_a_certificate_or_no() {
    let sw = token(&["gen", "sw"]);
    let c6 = token(&["gen", "cycle", "6"]);
    assert_eq!(stdout(&pk(&["iso", &sw, &c6], "")), "isomorphic: no\n");
    let shuffled = write_graph6(&named_graph(&NamedGraph::Cycle(6)).unwrap().permute(&[4, 0, 3, 5, 1, 2])).unwrap();
    let o = stdout(&pk(&["iso", &c6, &shuffled], ""));
    assert!(o.starts_with("isomorphic: yes\nmap: "), "{o}");
}

#[test]
fn generators_match_the_library() {
    for (args, name) in [
        (vec!["sw"], NamedGraph::Sw),
        (vec!["path", "4"], NamedGraph::Path(4)),
        (vec!["star", "3"], NamedGraph::Star(3)),
        (vec!["complete", "5"], NamedGraph::Complete(5)),
        (vec!["complete-bipartite", "2", "3"], NamedGraph::CompleteBipartite(2, 3)),
        (vec!["book", "3"], NamedGraph::Book(3)),
        (vec!["spider", "2,2,1"], NamedGraph::Spider(vec![2, 2, 1])),
    ] {
        let mut full = vec!["gen"];
        full.extend(args);
        assert_eq!(parse_graph6(&token(&full)).unwrap(), named_graph(&name).unwrap(), "{name}");
    }
    let models = token(&["gen", "whitney-model", "--type", "3"]);
    assert_eq!(models.lines().collect::<Vec<_>>(), ["Cs", "Bw"]);
}

#[test]
fn inflate_writes_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("prov.json");
    let k2 = token(&["gen", "complete", "2"]);
    let g = token(&[
        "gen",
        "inflate",
        "--base",
        &k2,
        "--widths",
        "2",
        "--thorns",
        "1,0",
        "--provenance",
        side.to_str().unwrap(),
    ]);
    let g = parse_graph6(&g).unwrap();
    assert_eq!(g.n(), 5);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
    let roles: Vec<&str> = v["provenance"].as_array().unwrap().iter().map(|r| r["role"].as_str().unwrap()).collect();
    assert_eq!(roles, ["base", "base", "middle", "middle", "leaf"]);
    assert_eq!(v["provenance"][3]["edge"], serde_json::json!([0, 1]));
    assert_eq!(v["provenance"][3]["index"], 1);

    let o = pk(&["gen", "inflate", "--base", &k2, "--widths", "1,1"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("2 widths given for 1 edges"));
}

#[test]
fn pairs_print_two_tokens_and_a_trailer() {
    let out = stdout(&pk(&["pair", "whitney", "--type", "3", "--widths", "1,1,1"], ""));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    let g = parse_graph6(lines[0]).unwrap();
    let h = parse_graph6(lines[1]).unwrap();
    assert!(are_isomorphic(&g, &named_graph(&NamedGraph::Sw).unwrap()).unwrap().is_some());
    assert!(are_isomorphic(&h, &named_graph(&NamedGraph::Cycle(6)).unwrap()).unwrap().is_some());
    assert_eq!(&lines[2..], ["isomorphic: no", "p3_isomorphic: yes"]);

    let k2 = token(&["gen", "complete", "2"]);
    let out = stdout(&pk(&["pair", "bipartite", "--base", &k2], ""));
    assert!(out.ends_with("isomorphic: yes\np3_isomorphic: yes\n"), "{out}");

    let out = stdout(&pk(&["pair", "k33", "--case", "vii"], ""));
    assert!(out.ends_with("isomorphic: yes\np3_isomorphic: yes\n"));

    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("w.json");
    pk(
        &[
            "pair",
            "whitney",
            "--type",
            "4",
            "--thorns",
            "1,0,0,1",
            "--widths",
            "1",
            "--provenance",
            side.to_str().unwrap(),
        ],
        "",
    );
    assert!(!side.exists(), "a failed run must not write the sidecar");
    let o = pk(
        &[
            "pair",
            "whitney",
            "--type",
            "4",
            "--thorns",
            "1,0,0,1",
            "--widths",
            "1,1,1,1",
            "--provenance",
            side.to_str().unwrap(),
        ],
        "",
    );
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&side).unwrap()).unwrap();
    assert_eq!(v["solution"]["case"], "v");
    assert_eq!(v["h"]["provenance"].as_array().unwrap().len(), 4 + 4 + 2);
}

#[test]
fn whitney_search_lists_witness_widths() {
    let out = stdout(&pk(&["pair", "whitney", "--type", "6", "--search", "1"], ""));
    // K_4 against K_4 with all widths 1 is an isomorphic pair
    assert_eq!(out, "");
    let out = stdout(&pk(&["pair", "whitney", "--type", "3", "--search", "1"], ""));
    assert_eq!(out, "1 1 1\n");
}

#[test]
fn swaps_verify() {
    let p5 = token(&["gen", "path", "5"]);
    let o = pk(&["swap", "s", &p5, "0", "1", "2", "3", "4", "--verify"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["swap"]["kind"], "S");
    assert_eq!(v["verify"], "valid");

    let c4 = token(&["gen", "cycle", "4"]);
    let o = pk(&["swap", "d", &c4, "0", "2", "0", "1"], "");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("verify").is_none());
    assert_eq!(v["swap"]["support"], serde_json::json!([[1, 0, 3], [1, 2, 3]]));

    let star = token(&["gen", "star", "3"]);
    let o = pk(&["swap", "b", &star, "1", "0", "2", "3"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("deg(1) = 1, expected >= 2"), "{}", stderr(&o));
}

#[test]
fn census_options() {
    let o = pk(&["census", "--max-n", "5", "-k", "4"], "");
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["status"], "INFO");

    let strict: Value = serde_json::from_str(&stdout(&pk(&["census", "--max-n", "5"], ""))).unwrap();
    let loose: Value =
        serde_json::from_str(&stdout(&pk(&["census", "--max-n", "5", "--allow-disconnected"], ""))).unwrap();
    assert_eq!(loose["dropped"]["disconnected_pk"], 0);
    assert!(strict["dropped"]["disconnected_pk"].as_u64().unwrap() > 0);
    assert_eq!(strict["population"], loose["population"]);

    let ranged: Value = serde_json::from_str(&stdout(&pk(&["census", "--min-n", "4", "--max-n", "5"], ""))).unwrap();
    assert_eq!(ranged["population"]["size"], 27);
}

#[test]
fn budget_overruns_are_skipped_and_fail_the_audit() {
    let k7 = token(&["gen", "complete", "7"]);
    let input = format!("C~\n{k7}\n");
    let o = pk_env(&["census", "--g6", "-"], &input, &[("PK_NODE_BUDGET", "10")]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["skipped"], serde_json::json!([k7]));
    assert_eq!(v["verdict"]["status"], "FAIL");

    let o = pk_env(&["census", "--g6", "-"], &input, &[]);
    assert_eq!(o.status.code(), Some(0));

    let o = pk_env(&["census", "--max-n", "3"], "", &[("PK_NODE_BUDGET", "lots")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("PK_NODE_BUDGET"));
}
