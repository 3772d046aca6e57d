use subspace_graph::gf::build_field;
use subspace_graph::graph::io::{self, CacheError};
use subspace_graph::{build_graph, BuildOptions, FieldSpec};

fn sample() -> Vec<u8> {
    let g = build_graph(&FieldSpec::of_order(3).unwrap(), 3, &BuildOptions::default()).unwrap();
    io::write_cache(&g)
}

#[test]
fn round_trip_all_small_cases() {
    for (n, q) in [(2, 2), (3, 2), (4, 2), (3, 3), (3, 4), (2, 9)] {
        let g = build_graph(&FieldSpec::of_order(q).unwrap(), n, &BuildOptions::default()).unwrap();
        let bytes = io::write_cache(&g);
        let back = io::read_cache(&bytes, None).unwrap();
        assert_eq!(back.dense(), g.dense());
        assert_eq!(back.vertices(), g.vertices());
        assert_eq!(io::write_cache(&back), bytes);
    }
}

#[test]
fn header_layout() {
    let bytes = sample();
    assert_eq!(&bytes[..4], b"QIGR");
    assert_eq!(u16::from_le_bytes([bytes[4], bytes[5]]), io::CACHE_VERSION);
    let word = |i: usize| u32::from_le_bytes(bytes[6 + 4 * i..10 + 4 * i].try_into().unwrap());
    assert_eq!((word(0), word(1), word(2), word(3)), (3, 3, 1, 26));
}

#[test]
fn rejects_damage() {
    let bytes = sample();
    assert!(matches!(
        io::read_cache(&bytes[..3], None),
        Err(CacheError::Truncated)
    ));
    assert!(matches!(
        io::read_cache(&bytes[..bytes.len() - 9], None),
        Err(CacheError::Checksum { .. }) | Err(CacheError::Truncated)
    ));

    let mut magic = bytes.clone();
    magic[0] = b'X';
    assert!(matches!(io::read_cache(&magic, None), Err(CacheError::BadMagic)));

    let mut version = bytes.clone();
    version[4] = 9;
    assert!(matches!(
        io::read_cache(&version, None),
        Err(CacheError::VersionMismatch { found: 9, .. })
    ));

    for pos in [30, bytes.len() / 2, bytes.len() - 5] {
        let mut flipped = bytes.clone();
        flipped[pos] ^= 0x10;
        assert!(
            matches!(io::read_cache(&flipped, None), Err(CacheError::Checksum { .. })),
            "byte {pos}"
        );
    }
}

#[test]
fn supplied_field_must_agree() {
    let bytes = sample();
    let other = FieldSpec::of_order(2).unwrap();
    assert!(io::read_cache(&bytes, Some(&other)).is_err());

    // GF(8) built on x^3 + x^2 + 1 instead of the default modulus
    let f = build_field(2, 3, Some(&[1, 0, 1, 1]), 16).unwrap();
    let g = build_graph(&f, 2, &BuildOptions::default()).unwrap();
    let bytes = io::write_cache(&g);
    let back = io::read_cache(&bytes, Some(&f)).unwrap();
    assert_eq!(back.field().modulus(), &[1, 0, 1, 1]);
    assert_eq!(back.dense(), g.dense());
}

#[test]
fn json_and_dot_exports() {
    let g = build_graph(&FieldSpec::of_order(2).unwrap(), 3, &BuildOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&io::to_json(&g)).unwrap();
    assert_eq!(v["vertex_count"], 14);
    assert_eq!(v["edges"].as_array().unwrap().len(), 42);
    let dot = io::to_dot(&g);
    assert_eq!(dot.matches(" -- ").count(), 42);
}
