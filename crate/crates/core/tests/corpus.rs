use std::fs;
use std::path::{Path, PathBuf};

use hmreq_core::{check, from_json, render_document, to_json, Code, Lexicon, Severity, SourceDocument};

fn corpus(kind: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(kind);
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "hmreq"))
        .collect();
    files.sort();
    files
}

fn expected_code(src: &SourceDocument) -> Code {
    let first = src.text().lines().next().unwrap();
    let code = first.strip_prefix("// expect: ").expect("expect header");
    *Code::ALL.iter().find(|c| c.as_str() == code).unwrap()
}

#[test]
fn valid_corpus_has_no_diagnostics() {
    let lex = Lexicon::seed();
    let files = corpus("valid");
    assert!(files.len() >= 2);
    let mut requirements = 0;
    for path in files {
        let src = SourceDocument::from_path(&path).unwrap();
        let parsed = check(&src, &lex);
        let rendered: Vec<_> = parsed.diagnostics.iter().map(|d| d.render(&src)).collect();
        assert!(rendered.is_empty(), "{}", rendered.join("\n"));
        requirements += parsed.document.unwrap().requirements.len();
    }
    assert!(requirements >= 30, "{requirements}");
}

#[test]
fn paper_examples_are_present() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/valid/paper_examples.hmreq");
    let src = SourceDocument::from_path(&path).unwrap();
    let doc = check(&src, &Lexicon::seed()).document.unwrap();
    for id in ["R1", "R2", "ISE_Rq_15", "VHCURES_5", "FR_7_2_3"] {
        assert!(doc.requirement(id).is_some(), "{id}");
    }
    let r1 = doc.requirement("R1").unwrap();
    assert_eq!(r1.content.block.rule_id, "assessment-34.1");
    assert_eq!(
        r1.stakeholder_names().collect::<Vec<_>>(),
        ["Shop_Floor_Worker", "Manager", "Product_Owner"]
    );
    let steps = doc.requirement("ISE_Rq_15").unwrap();
    let f = steps.content.block.adjuncts.frequency.as_ref().unwrap();
    assert_eq!((f.amount.as_str(), f.unit.as_str()), ("single", "day"));
    assert_eq!(doc.requirement("VHCURES_5").unwrap().content.block.verb, "ensure");
}

#[test]
fn dronology_corpus_size() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/valid/dronology.hmreq");
    let src = SourceDocument::from_path(&path).unwrap();
    let doc = check(&src, &Lexicon::seed()).document.unwrap();
    assert!(doc.requirements.len() >= 20);
}

#[test]
fn invalid_corpus_reports_designated_codes() {
    let lex = Lexicon::seed();
    let files = corpus("invalid");
    assert!(files.len() >= 10);
    for path in files {
        let src = SourceDocument::from_path(&path).unwrap();
        let want = expected_code(&src);
        assert_eq!(want.severity(), Severity::Error);
        let parsed = check(&src, &lex);
        assert!(parsed.has_errors(), "{}", path.display());
        let codes: Vec<_> = parsed.diagnostics.iter().map(|d| d.code).collect();
        assert!(codes.contains(&want), "{}: {codes:?}", path.display());
    }
}

#[test]
fn export_import_round_trip_over_corpus() {
    let lex = Lexicon::seed();
    for path in corpus("valid") {
        let src = SourceDocument::from_path(&path).unwrap();
        let doc = check(&src, &lex).document.unwrap();
        let json = to_json(&doc);
        let back = from_json(&json, &lex).unwrap();
        assert_eq!(back, doc.without_spans(), "{}", path.display());
        assert_eq!(to_json(&back), json);
    }
}

#[test]
fn canonical_rendering_reparses_to_same_tree() {
    let lex = Lexicon::seed();
    for path in corpus("valid") {
        let src = SourceDocument::from_path(&path).unwrap();
        let doc = check(&src, &lex).document.unwrap();
        let text = render_document(&doc);
        let again = check(&SourceDocument::in_memory(text.clone()), &lex);
        assert!(again.diagnostics.is_empty(), "{:?}", again.diagnostics);
        let again = again.document.unwrap();
        assert_eq!(again.without_spans(), doc.without_spans());
        assert_eq!(render_document(&again), text);
    }
}

#[test]
fn corpus_spans_point_into_source() {
    let lex = Lexicon::seed();
    for kind in ["valid", "invalid"] {
        for path in corpus(kind) {
            let src = SourceDocument::from_path(&path).unwrap();
            let parsed = check(&src, &lex);
            for d in &parsed.diagnostics {
                assert!(src.contains(d.span), "{}: {d:?}", path.display());
            }
            if let Some(doc) = parsed.document {
                for span in doc.spans() {
                    assert!(src.contains(span));
                }
            }
        }
    }
}
