//! Sample inputs and golden reports. Regenerate both with
//! `cargo test -p strictcat-cli --test samples -- --ignored`.

mod common;

use std::fs;
use std::sync::Arc;

use serde::Serialize;
use strictcat::categorification::{c2_of, c_of, Presentation};
use strictcat::category::{enumerate_functors, CatFunctor, FinCat};
use strictcat::corpus::{circle, named_categories};
use strictcat::io::{self, to_json, EdgeDoc, MarkedDoc, NodeDoc, TriangleDoc, UniverseDoc};
use strictcat::lifting::LiftingProblem;
use strictcat::simplicial::standard::{boundary, simplex};
use strictcat::simplicial::SimplicialMap;
use strictcat::twocat::{cosimplicial_operator, delta_tilde, iota, TwoFunctor};

use common::{cases, data, manifest_dir, strictcat};

fn write<T: Serialize>(name: &str, doc: &T) {
    fs::write(data(name), to_json(doc) + "\n").unwrap();
}

fn named(name: &str) -> FinCat {
    named_categories().into_iter().find(|(n, _)| n == name).unwrap().1
}

fn edge(id: &str, src: &str, dst: &str, f: &CatFunctor) -> EdgeDoc {
    let doc = io::functor_doc(f);
    EdgeDoc {
        id: id.into(),
        src: src.into(),
        dst: dst.into(),
        objects: doc.objects,
        arrows: doc.arrows,
        one_cells: Vec::new(),
        two_cells: Vec::new(),
    }
}

fn node<T: Serialize>(id: &str, doc: &T) -> NodeDoc {
    NodeDoc { id: id.into(), category: serde_json::to_value(doc).unwrap() }
}

fn write_inputs() {
    let pt = |b| Arc::new(simplex(0, b).unwrap());
    let b2 = Arc::new(boundary(2, 3).unwrap());
    write("boundary2.json", &io::sset_doc(&b2));
    let mut broken = io::sset_doc(&boundary(2, 2).unwrap());
    let k = broken.face.iter().position(|r| r.0 == 1).unwrap();
    let other = broken.face.iter().find(|r| r.0 == 1 && r.3 != broken.face[k].3).unwrap().3.clone();
    broken.face[k].3 = other;
    write("broken.json", &broken);
    write("boundary3.json", &io::sset_doc(&boundary(3, 3).unwrap()));
    let interval = Arc::new(simplex(1, 2).unwrap());
    write("interval.json", &io::sset_doc(&interval));
    let s2 = Arc::new(simplex(2, 2).unwrap());
    write("simplex2.json", &io::sset_doc(&s2));
    write("circle.json", &io::sset_doc(&circle(2)));
    write("span.json", &io::fincat_doc(&named("span")));
    write("delta2.json", &io::fin2cat_doc(&delta_tilde(2)));
    write("pres_simplex2.json", &Presentation::Cat(c_of(&s2)));
    write("pres2_simplex2.json", &Presentation::TwoCat(c2_of(&s2)));
    write("pres_circle.json", &Presentation::Cat(c_of(&circle(2))));

    let (c2, c1) = (Arc::new(FinCat::ordinal(2)), Arc::new(FinCat::ordinal(1)));
    let f = enumerate_functors(&c2, &c1).into_iter().find(|f| f.object_table() == [0, 0, 1]).unwrap();
    write("functor.json", &io::functor_doc(&f));
    write("two_functor.json", &io::two_functor_doc(&cosimplicial_operator(&[0, 2], 2).unwrap()));

    let b1 = Arc::new(boundary(1, 2).unwrap());
    let i = SimplicialMap::inclusion(b1, interval.clone()).unwrap();
    let p = SimplicialMap::to_point(interval.clone(), pt(2)).unwrap();
    let v = SimplicialMap::to_point(interval.clone(), pt(2)).unwrap();
    let sq = LiftingProblem::new(i.clone(), p.clone(), i.clone(), v).unwrap();
    write("lift.json", &io::lift_doc(&sq));
    write("edge_to_point.json", &io::smap_doc(&p));
    write("boundary2_to_point.json", &io::smap_doc(&SimplicialMap::to_point(b2, pt(3)).unwrap()));
    write("simplex2_to_point.json", &io::smap_doc(&SimplicialMap::to_point(Arc::new(simplex(2, 4).unwrap()), pt(4)).unwrap()));
    let (d2, d0) = (Arc::new(delta_tilde(2)), Arc::new(delta_tilde(0)));
    write("delta2_to_point.json", &io::two_functor_doc(&TwoFunctor::to_terminal(d2.clone(), d0.clone()).unwrap()));

    // evidence through degree 2 needs cells up to dimension 4
    let ends = Arc::new(boundary(1, 4).unwrap());
    let into = SimplicialMap::inclusion(ends.clone(), Arc::new(simplex(1, 4).unwrap())).unwrap();
    let collapse = SimplicialMap::to_point(ends, pt(4)).unwrap();
    write("circle_span.json", &io::span_doc(&into, &collapse));

    // level-1 universe: small categories over the terminal one, with one slice triangle
    let names = ["[1]", "[2]", "span", "cospan", "iso", "discrete 2", "Z/2", "idempotent"];
    let mut nodes: Vec<NodeDoc> = names.iter().map(|n| node(n, &io::fincat_doc(&named(n)))).collect();
    nodes.push(node("e", &io::fincat_doc(&FinCat::terminal())));
    let (a, b) = (Arc::new(named("[1]")), Arc::new(named("[2]")));
    let incl = enumerate_functors(&a, &b).into_iter().find(|f| f.object_table() == [0, 2]).unwrap();
    let e = Arc::new(FinCat::terminal());
    let to_e = |c: &Arc<FinCat>| CatFunctor::to_terminal(c.clone(), e.clone()).unwrap();
    let universe = UniverseDoc {
        level: 1,
        nodes,
        edges: vec![edge("i", "[1]", "[2]", &incl), edge("p", "[1]", "e", &to_e(&a)), edge("q", "[2]", "e", &to_e(&b))],
        terminal: Some("e".into()),
        triangles: vec![TriangleDoc { u: "i".into(), p: "p".into(), q: "q".into() }],
        collapses: true,
        composites: true,
    };
    write("universe.json", &universe);
    write("marked.json", &MarkedDoc { marked: vec!["1_[1]".into(), "q".into(), "i".into(), "span→e".into()] });

    let twos = [("D1", delta_tilde(1)), ("D2", delta_tilde(2)), ("i[1]", iota(&FinCat::ordinal(1))), ("iZ/2", iota(&named("Z/2")))];
    let mut nodes: Vec<NodeDoc> = twos.iter().map(|(n, c)| node(n, &io::fin2cat_doc(c))).collect();
    nodes.push(node("e", &io::fin2cat_doc(&delta_tilde(0))));
    let universe2 = UniverseDoc {
        level: 2,
        nodes,
        edges: Vec::new(),
        terminal: Some("e".into()),
        triangles: Vec::new(),
        collapses: true,
        composites: false,
    };
    write("universe2.json", &universe2);
}

#[test]
#[ignore]
fn regenerate() {
    write_inputs();
    for (name, args) in cases() {
        let out = strictcat(&args);
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        fs::write(manifest_dir().join("tests/golden").join(format!("{name}.json")), out.stdout).unwrap();
    }
}
