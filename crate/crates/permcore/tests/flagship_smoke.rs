//! Manual smoke runs against the large matrix actions in the dataset.
//! These duplicate checks the verification binary performs; they are ignored
//! by default and exist for timing work on the BSGS internals.

use permcore::{perms_from_matrix_action, schreier_sims, BsgsOptions};

fn data(path: &str) -> String {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/");
    std::fs::read_to_string(format!("{root}{path}")).expect("dataset file")
}

#[test]
#[ignore]
fn fi22_orbit_and_order() {
    let t0 = std::time::Instant::now();
    let q = 13;
    let block = |name: &str| gflin::io::parse_mat(&data(&format!("mats/fi22_{name}.mat"))).unwrap();
    let diag = |a: &gflin::Mat, b: &gflin::Mat| {
        let n = a.rows() + b.rows();
        let mut m = gflin::Mat::zero(q, n, n).unwrap();
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                m.set(r, c, a.get(r, c));
            }
        }
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                m.set(a.rows() + r, a.cols() + c, b.get(r, c));
            }
        }
        m
    };
    let h = diag(&block("h1"), &block("h2"));
    let x = diag(&block("x1"), &block("x2"));
    let y = diag(&block("y1"), &block("y2"));
    let (e1, e2, e3, e4) = (block("e1"), block("e2"), block("e3"), block("e4"));
    let mut e = gflin::Mat::zero(q, 78, 78).unwrap();
    for (rowoff, coloff, blk) in [(0, 0, &e1), (0, 38, &e2), (38, 0, &e3), (38, 38, &e4)] {
        for r in 0..blk.rows() {
            for c in 0..blk.cols() {
                e.set(rowoff + r, coloff + c, blk.get(r, c));
            }
        }
    }
    let fixed = permcore::joint_invariant_one_spaces(&[e.clone(), x.clone(), y.clone()]).unwrap();
    println!("joint 1-spaces of <e,x,y>: {}  ({:?})", fixed.len(), t0.elapsed());
    assert_eq!(fixed.len(), 1);
    let orbit =
        permcore::projective_orbit(&[h.clone(), x.clone(), y.clone(), e.clone()], &fixed[0])
            .unwrap();
    println!("orbit size: {}  ({:?})", orbit.len(), t0.elapsed());
    assert_eq!(orbit.len(), 142_155);
    let (action, perms) = perms_from_matrix_action(&[h, x, y, e], orbit, true).unwrap();
    let frame = action.rigid_frame().expect("projective frame in orbit");
    println!("frame found ({:?})", t0.elapsed());
    let opts = BsgsOptions {
        seed: 1,
        rigid_base: Some(frame),
    };
    let bsgs = schreier_sims(&perms, &opts).unwrap();
    println!("order: {}  ({:?})", bsgs.order(), t0.elapsed());
    assert_eq!(bsgs.order(), 64_561_751_654_400);
}

#[test]
#[ignore]
fn co2_orbit_and_order() {
    let t0 = std::time::Instant::now();
    let module = gflin::io::parse_module(&data("mats/co2_g3.mod")).unwrap();
    let h = module.gen_by_name("h").unwrap().clone();
    let x = module.gen_by_name("x").unwrap().clone();
    let y = module.gen_by_name("y").unwrap().clone();
    let e = module.gen_by_name("e").unwrap().clone();
    let fixed = permcore::joint_invariant_one_spaces(&[e.clone(), x.clone(), y.clone()]).unwrap();
    println!("joint 1-spaces of <e,x,y>: {}  ({:?})", fixed.len(), t0.elapsed());
    assert_eq!(fixed.len(), 1);
    let orbit = permcore::projective_orbit(&[h.clone(), x.clone(), y.clone(), e.clone()], &fixed[0])
        .unwrap();
    println!("orbit size: {}  ({:?})", orbit.len(), t0.elapsed());
    assert_eq!(orbit.len(), 46575);
    let (action, perms) =
        perms_from_matrix_action(&[h, x, y, e], orbit, true).unwrap();
    let frame = action.rigid_frame().expect("projective frame in orbit");
    println!("frame found ({:?})", t0.elapsed());
    let opts = BsgsOptions {
        seed: 1,
        rigid_base: Some(frame),
    };
    let bsgs = schreier_sims(&perms, &opts).unwrap();
    println!("order: {}  ({:?})", bsgs.order(), t0.elapsed());
    assert_eq!(bsgs.order(), 42_305_421_312_000);
}
