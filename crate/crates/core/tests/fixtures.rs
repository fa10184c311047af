use std::path::PathBuf;

use tcis::io::{parse, read_file, CodeBody};
use tcis::z4::lee_min_distance;

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"));
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

#[test]
fn every_fixture_round_trips() {
    let files = fixtures();
    assert_eq!(files.len(), 5);
    for path in files {
        let text = std::fs::read_to_string(&path).unwrap();
        let f = parse(&text).unwrap();
        assert!(!f.comments.is_empty(), "{}", path.display());
        assert_eq!(f.emit(), text, "{}", path.display());
    }
}

#[test]
fn fixture_contents() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/");
    let c = read_file(format!("{dir}cis_24_8.code")).unwrap();
    assert_eq!(c.groups, vec![8, 8, 8]);
    let c = c.binary().unwrap().clone();
    assert_eq!((c.n(), c.k(), c.min_distance(None).unwrap()), (24, 8, 8));

    for (name, n, k, lee) in [("octacode.z4", 8, 4, 6), ("z4_24_6.z4", 24, 6, 18)] {
        let f = read_file(format!("{dir}{name}")).unwrap();
        let CodeBody::Z4(z) = f.body else {
            panic!("{name} is not a Z4 file")
        };
        assert_eq!((z.n(), z.k()), (n, k));
        assert!(z.is_free());
        assert_eq!(lee_min_distance(&z).unwrap(), lee);
    }
}
