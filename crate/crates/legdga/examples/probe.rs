//! Development probe: dump the full analysis of a curve file, its symmetric
//! quotient, polygon enumerations, and DGAs. Not part of the public surface.

use legdga::curve_geometry::{
    analyze, crossing_writhe_sign, load_curve, quotient_symmetric, tangent_winding,
};
use legdga::dga_core::Field;
use legdga::knot_dga::{enumerate_polygons, grade_crossings};
use legdga::torus_dga::{build_spun_dga, SpinMode};

fn dump(diagram: &legdga::curve_geometry::CrossingDiagram) {
    println!("curve: {}", diagram.curve.name);
    println!("tangent winding: {}", diagram.tangent_winding);
    println!("enclosed area: {}", diagram.enclosed_area);
    println!(
        "origin face: {} (unbounded: {})",
        diagram.origin_face, diagram.unbounded_face
    );
    let graded = grade_crossings(diagram);
    for g in &graded {
        let c = &diagram.crossings[g.crossing];
        println!(
            "crossing {} at ({}, {}) degree {} writhe {}",
            g.label,
            c.point.x,
            c.point.y,
            g.degree,
            crossing_writhe_sign(diagram, g.crossing)
        );
        let (gap, upper) = diagram.crossing_action(g.crossing);
        println!(
            "  action gap {gap}, upper branch = passage {} (0 = first traversed)",
            upper
        );
    }
    for (i, f) in diagram.faces.iter().enumerate() {
        println!(
            "face {i}: area {} winding {} origin {}",
            f.area(),
            f.winding,
            f.contains_origin
        );
    }
    for g in &graded {
        match enumerate_polygons(diagram, g.crossing) {
            Ok(polys) => {
                println!("polygons at {} ({}):", g.label, polys.len());
                for p in polys {
                    println!(
                        "  letters {:?} bp {} markers {:?} origin_mult {} area {}",
                        p.letters, p.basepoint_signed, p.marker_passages, p.origin_multiplicity, p.area
                    );
                }
            }
            Err(e) => println!("polygons at {}: error {e}", g.label),
        }
    }
}

fn main() {
    let path = std::env::args().nth(1).expect("usage: probe CURVE.json [quotient]");
    let doc = std::fs::read_to_string(&path).unwrap();
    let curve = load_curve(&doc).unwrap();
    println!("upstairs tangent winding: {}", tangent_winding(&curve).unwrap());
    let do_quotient = std::env::args().nth(2).as_deref() == Some("quotient");
    if do_quotient {
        let (q, _markers) = quotient_symmetric(&curve).unwrap();
        println!("quotient exact: {}", q.exact);
        println!("quotient basepoint: {:?}", q.basepoint);
        println!("quotient cone markers: {:?}", q.cone_markers);
        for (i, v) in q.vertices.iter().enumerate() {
            println!("  w{i} = ({}, {})", v.x, v.y);
        }
        let d = analyze(&q).unwrap();
        dump(&d);
        for field in [Field::F2, Field::parse("fp:5").unwrap(), Field::Rational] {
            match build_spun_dga(&d, field, SpinMode::Symmetric) {
                Ok(dga) => {
                    let labels: Vec<String> =
                        dga.generators.iter().map(|g| g.label.clone()).collect();
                    for (g, dq) in dga.generators.iter().zip(&dga.differential) {
                        println!(
                            "[{:?}] d {} = {}",
                            dga.field,
                            g.label,
                            dq.render(&labels, &dga.vars, &dga.field)
                        );
                    }
                }
                Err(e) => println!("[{field:?}] build failed: {e}"),
            }
        }
    } else {
        let d = analyze(&curve).unwrap();
        dump(&d);
    }
}
