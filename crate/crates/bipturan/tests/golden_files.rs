use std::path::Path;

use bipturan::format::{parse_graph, read_graph_file, write_graph};
use bipturan::report::{certificate_from_json, certificate_to_json, read_certificate_file};
use bipturan_core::certify::CertStep;
use bipturan_core::{build_certificate, path_extremal, verify_certificate, VertexRef};

fn golden(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn graph_file_matches() {
    let g = path_extremal(3, 4, 3).unwrap();
    let text = std::fs::read_to_string(golden("path_extremal_3_4_3.bcg")).unwrap();
    assert_eq!(write_graph(&g), text);
    assert_eq!(parse_graph(&text).unwrap(), g);
}

#[test]
fn certificate_file_matches() {
    let g = read_graph_file(&golden("path_extremal_3_4_3.bcg")).unwrap();
    let cert = build_certificate(&g, 3).unwrap();
    let text = std::fs::read_to_string(golden("path_extremal_3_4_3.cert.json")).unwrap();
    assert_eq!(certificate_to_json(&cert), text);

    assert_eq!(cert.claimed_bound, 6);
    assert_eq!(
        cert.steps,
        vec![
            CertStep::RemoveOne { victim: VertexRef::b(0), degree_at_removal: 1 },
            CertStep::BaseCase { k: 3, edges: 5 },
        ]
    );
    let parsed = read_certificate_file(&golden("path_extremal_3_4_3.cert.json")).unwrap();
    assert_eq!(parsed, cert);
    assert!(verify_certificate(&g, 3, &parsed).is_ok());
}

#[test]
fn certificate_json_rejects_garbage() {
    assert!(certificate_from_json("{\"k\": 3}").is_err());
    assert!(certificate_from_json("{\"k\":3,\"a\":3,\"b\":3,\"swapped\":false,\"steps\":[{\"step\":\"jump\"}],\"claimed_bound\":5}").is_err());
}
