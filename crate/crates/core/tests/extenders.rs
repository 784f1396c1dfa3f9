use std::collections::BTreeSet;

use forcing_core::extenders::{extend, extend_into_def, extend_into_eef};
use forcing_core::random;
use forcing_core::{leq, Ground, Request};

#[test]
fn every_extender_is_sound_from_random_conditions() {
    let ground = Ground::canonical();
    let u = ground.u.clone();
    let mut rng = random::rng(11);
    for _ in 0..400 {
        let p = random::condition(&mut rng, &u);
        let (e, f) = random::pair(&mut rng);
        let requests = [
            Request::Da { a: random::set_outside(&mut rng, &u) },
            Request::ei(rand::Rng::gen_range(&mut rng, 0..5000)),
            Request::Cover { x: random::set_outside(&mut rng, &u) },
            Request::Def { e: e.clone(), f: f.clone() },
            Request::Eef { e, f },
        ];
        for request in requests {
            let cert = extend(&p, &request, &ground).unwrap();
            cert.verify(&p, &ground).unwrap();
            assert!(leq(&cert.result, &p));
            // extending again from the result stays put
            let again = extend(&cert.result, &request, &ground).unwrap();
            again.verify(&cert.result, &ground).unwrap();
        }
    }
}

#[test]
fn all_canonical_clauses_and_both_orientations_occur() {
    let ground = Ground::canonical();
    let u = ground.u.clone();
    let mut rng = random::rng(5);
    let mut seen = BTreeSet::new();
    for _ in 0..2000 {
        let p = random::condition(&mut rng, &u);
        let (e, f) = random::pair(&mut rng);
        let d = extend_into_def(&p, &e, &f, &ground).unwrap();
        seen.insert(("def", d.clause, d.mirrored));
        let c = extend_into_eef(&p, &e, &f, &ground).unwrap();
        seen.insert(("eef", c.clause, c.mirrored));
    }
    for name in ["def", "eef"] {
        let wanted = [(1, false), (2, false), (2, true), (3, false), (3, true)];
        for (clause, mirrored) in wanted {
            assert!(seen.contains(&(name, clause, mirrored)), "{name} {clause} {mirrored}: {seen:?}");
        }
    }
}
