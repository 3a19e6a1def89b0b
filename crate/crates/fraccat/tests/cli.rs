mod common;

use fraccat::cli::{parse, parse_with, serialize, Document};
use fraccat::fincat::{FinCategory, Functor, MorId};
use fraccat::fractions::{associator, compose_fractions, TwoCell};

use common::golden::{self, run, run_raw};

fn worked() -> Document {
    parse(include_str!("data/worked.cat")).unwrap()
}

/// Name of a morphism, with identities named by their object so that the
/// kernel's pair names and the parser's `id_x` names line up.
fn mor_key(c: &FinCategory, m: MorId) -> String {
    let mm = &c.morphisms()[m];
    if c.id(mm.src) == m {
        format!("id:{}", c.obj_name(mm.src))
    } else {
        mm.name.clone()
    }
}

/// Asserts that two functors agree once objects and morphisms are matched
/// by name, and that their domains have the same composition table.
fn same_by_names(a: &Functor, b: &Functor) {
    let (da, db) = (a.dom(), b.dom());
    assert_eq!(da.num_objects(), db.num_objects());
    assert_eq!(da.num_morphisms(), db.num_morphisms());
    let find = |key: &str| (0..db.num_morphisms()).find(|&n| mor_key(db, n) == key).unwrap();
    for x in da.objects() {
        let y = db.obj_by_name(da.obj_name(x)).unwrap();
        assert_eq!(a.cod().obj_name(a.obj(x)), b.cod().obj_name(b.obj(y)));
    }
    for m in 0..da.num_morphisms() {
        let n = find(&mor_key(da, m));
        assert_eq!(mor_key(a.cod(), a.mor(m)), mor_key(b.cod(), b.mor(n)));
        for m2 in 0..da.num_morphisms() {
            if da.morphisms()[m2].src == da.morphisms()[m].tgt {
                let n2 = find(&mor_key(da, m2));
                assert_eq!(mor_key(da, da.compose(m2, m)), mor_key(db, db.compose(n2, n)));
            }
        }
    }
}

#[test]
fn golden_outputs_are_byte_identical() {
    assert_eq!(golden::mismatches(), Vec::<String>::new());
}

#[test]
fn compose_output_is_the_kernel_composite() {
    let base = worked();
    for (fr1, fr2) in [("k", "f"), ("f", "h")] {
        let (code, out, _) = run(&["compose", fr1, fr2]);
        assert_eq!(code, 0);
        let doc = parse_with(&base, &out).unwrap();
        let expected = compose_fractions(base.fraction(fr2).unwrap(), base.fraction(fr1).unwrap()).unwrap();
        let got = doc.fraction("result").unwrap();
        same_by_names(got.w(), expected.w());
        same_by_names(got.f(), expected.f());
    }
    // h is the identity on Z2, so the composite is f itself.
    let (_, out, _) = run(&["compose", "f", "h"]);
    assert_eq!(out, "fraction result: PT -/-> Z2 { apex I2; w = c; f = twist; }\n");
}

#[test]
fn assoc_output_is_an_associator() {
    let base = worked();
    let (code, out, _) = run(&["assoc", "h", "f", "k"]);
    assert_eq!(code, 0);
    let doc = parse_with(&base, &out).unwrap();
    let cell = doc.cell("result").unwrap();
    cell.validate().unwrap();
    let [h, f, k] = ["h", "f", "k"].map(|n| base.fraction(n).unwrap());
    let a = associator(h, f, k, None).unwrap();
    same_by_names(&cell.v1, &a.rep.v1);
    same_by_names(&cell.v2, &a.rep.v2);
    assert!(common::same_class(cell, &a.rep));
    assert!(common::invertible(cell));
}

#[test]
fn equiv_agrees_with_the_oracle() {
    let base = worked();
    for (x, y) in [("sigma", "tau"), ("sigma", "sigma2"), ("tau", "sigma2"), ("sigma", "sigma")] {
        let (code, out, _) = run(&["equiv", x, y]);
        assert_eq!(code, 0);
        let same = common::same_class(base.cell(x).unwrap(), base.cell(y).unwrap());
        assert_eq!(out, if same { "equivalent\n" } else { "not equivalent\n" }, "{x} {y}");
    }
}

#[test]
fn normalize_stays_in_the_class() {
    let base = worked();
    for name in ["sigma", "sigma2", "tau"] {
        let (code, out, _) = run(&["normalize", name]);
        assert_eq!(code, 0);
        assert!(out.lines().last().unwrap().starts_with("# triple: "));
        let doc = parse_with(&base, &out).unwrap();
        assert!(common::same_class(doc.cell("result").unwrap(), base.cell(name).unwrap()), "{name}");
    }
    // Equivalent cells normalize to the same text.
    assert_eq!(run(&["normalize", "sigma"]).1, run(&["normalize", "sigma2"]).1);
}

#[test]
fn json_output_is_sorted_and_consistent() {
    let (_, out, _) = run(&["--json", "normalize", "sigma"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "normalize");
    assert_eq!(v["triple"]["phi"], "b_sigma");
    assert_eq!(v["definitions"][0]["kind"], "cell");
    let (_, out, _) = run(&["--json", "equiv", "sigma", "sigma2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equivalent"], true);
    let (_, out, _) = run(&["--json", "in-w", "c"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["in_w"], true);
    assert_eq!(v["functor"], "c");
}

#[test]
fn other_commands() {
    let (code, out, _) = run(&["validate"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("valid: 24 declarations\n"), "{out}");
    assert_eq!(run(&["in-w", "twist"]).1.lines().last(), Some("not in W"));
    assert_eq!(run(&["in-w", "ia"]).1.lines().last(), Some("in W"));
    assert_eq!(run(&["invertible", "sigma"]).1, "invertible\n");

    let base = worked();
    let (code, out, _) = run(&["vcomp", "back", "sigma"]);
    assert_eq!(code, 0);
    let doc = parse_with(&base, &out).unwrap();
    let c = doc.cell("result").unwrap();
    let expected = fraccat::fractions::vcomp(
        &TwoCell::from(base.cell("back").unwrap().clone()),
        &TwoCell::from(base.cell("sigma").unwrap().clone()),
        None,
    )
    .unwrap();
    assert!(common::same_class(c, &expected.rep));

    let (code, out, _) = run(&["invert", "sigma"]);
    assert_eq!(code, 0);
    let inv = parse_with(&base, &out).unwrap();
    let b = base.fraction("f").unwrap().tgt().clone();
    let back: Vec<usize> =
        common::family(base.cell("sigma").unwrap()).into_iter().map(|m| common::inverse(&b, m).unwrap()).collect();
    assert_eq!(common::family(inv.cell("result").unwrap()), back);

    let (code, out, _) = run(&["whisker-post", "h", "sigma"]);
    assert_eq!(code, 0);
    assert!(parse_with(&base, &out).unwrap().cell("result").is_ok());
    let (code, out, _) = run(&["whisker-pre", "sigma", "k"]);
    assert_eq!(code, 0);
    assert!(parse_with(&base, &out).unwrap().cell("result").is_ok());
}

#[test]
fn name_option_renames_results() {
    let (code, out, _) = run(&["--name=fh", "compose", "f", "h"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("fraction fh:"), "{out}");
}

#[test]
fn exit_codes() {
    // Usage and input errors.
    assert_eq!(run(&["compose", "f"]).0, 1);
    assert_eq!(run(&["equiv", "sigma", "nope"]).0, 1);
    assert_eq!(run(&["coherence", "--law", "nope"]).0, 1);
    let missing = vec!["fraccat".to_string(), "validate".into(), "/nonexistent.cat".into()];
    assert_eq!(run_raw(&missing).0, 1);

    let dir = std::env::temp_dir().join(format!("fraccat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cat");
    std::fs::write(&bad, "category X {\n  objects a;\n  mor m: a -> b;\n}\n").unwrap();
    let (code, _, err) = run_raw(&["fraccat".into(), "validate".into(), bad.display().to_string()]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.cat:3:"), "{err}");

    // Kernel errors.
    assert_eq!(run(&["vcomp", "sigma", "sigma"]).0, 2);
    assert_eq!(run(&["compose", "f", "k"]).0, 2);

    let arr = dir.join("arr.cat");
    std::fs::write(
        &arr,
        "category PT { objects p; }\n\
         category ARR { objects \"0\" \"1\"; mor u: \"0\" -> \"1\"; }\n\
         functor idPT: PT -> PT { p |-> p; }\n\
         functor z: PT -> ARR { p |-> \"0\"; }\n\
         functor o: PT -> ARR { p |-> \"1\"; }\n\
         nat one: idPT => idPT { p: id_p; }\n\
         nat uu: z => o { p: u; }\n\
         fraction x: PT -/-> ARR { apex PT; w = idPT; f = z; }\n\
         fraction y: PT -/-> ARR { apex PT; w = idPT; f = o; }\n\
         cell c: x => y { apex PT; v1 = idPT; v2 = idPT; alpha = one; beta = uu; }\n",
    )
    .unwrap();
    let argv = |cmd: &str| vec!["fraccat".to_string(), cmd.into(), arr.display().to_string(), "c".into()];
    let (code, out, _) = run_raw(&argv("invertible"));
    assert_eq!((code, out.as_str()), (0, "not invertible\n"));
    assert_eq!(run_raw(&argv("invert")).0, 2);

    let (code, out, _) = run_raw(&["fraccat".into(), "coherence".into(), "--trials".into(), "5".into()]);
    assert_eq!(code, 0, "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rendered_documents_parse_back() {
    let doc = worked();
    let text = serialize(&doc);
    let again = parse(&text).unwrap();
    assert_eq!(serialize(&again), text);
    for name in ["f", "g", "h", "k"] {
        assert_eq!(again.fraction(name).unwrap(), doc.fraction(name).unwrap());
    }
    for name in ["sigma", "tau", "sigma2", "back"] {
        assert_eq!(again.cell(name).unwrap(), doc.cell(name).unwrap());
    }
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse("category X {\n  objects a;\n  mor m: a -> ;\n}\n").unwrap_err();
    assert!(err.to_string().contains("3:"), "{err}");
    assert!(parse("functor F: X -> X { }").is_err());
    assert!(parse("category X { objects a a; }").is_err());
}
