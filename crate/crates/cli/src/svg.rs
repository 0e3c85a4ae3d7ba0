//! Planar rendering of a `SkelSet`. Pieces are clipped exactly against the
//! viewport; only the final coordinates are rounded.

use std::fmt::Write;

use trop_core::ratlp::{Affine, LpOutcome};
use trop_core::tropnum::{q, to_f64, Q};
use trop_core::{Polyhedron, SkelSet};

const SIZE: f64 = 400.0;
const ARROW: f64 = 10.0;

/// Axis-aligned plot window `[x0, x1] × [y0, y1]`.
#[derive(Clone, Debug)]
pub struct Viewport {
    pub x0: Q,
    pub x1: Q,
    pub y0: Q,
    pub y1: Q,
}

impl Viewport {
    pub fn parse(s: &str) -> Result<Viewport, String> {
        let v: Vec<Q> = s
            .split(',')
            .map(|t| trop_core::tropnum::parse_q(t).ok_or_else(|| format!("bad viewport entry `{t}`")))
            .collect::<Result<_, _>>()?;
        let [x0, x1, y0, y1] = <[Q; 4]>::try_from(v).map_err(|_| "viewport needs x0,x1,y0,y1".to_string())?;
        if x0 >= x1 || y0 >= y1 {
            return Err("viewport must satisfy x0 < x1 and y0 < y1".into());
        }
        Ok(Viewport { x0, x1, y0, y1 })
    }

    fn corners(&self) -> Vec<[Q; 2]> {
        vec![
            [self.x0.clone(), self.y0.clone()],
            [self.x1.clone(), self.y0.clone()],
            [self.x1.clone(), self.y1.clone()],
            [self.x0.clone(), self.y1.clone()],
        ]
    }

    fn on_boundary(&self, p: &[Q; 2]) -> bool {
        p[0] == self.x0 || p[0] == self.x1 || p[1] == self.y0 || p[1] == self.y1
    }

    fn px(&self, p: &[Q; 2]) -> (f64, f64) {
        let fx = to_f64(&((&p[0] - &self.x0) / (&self.x1 - &self.x0)));
        let fy = to_f64(&((&p[1] - &self.y0) / (&self.y1 - &self.y0)));
        (fx * SIZE, (1.0 - fy) * SIZE)
    }
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport { x0: q(-4), x1: q(4), y0: q(-4), y1: q(4) }
    }
}

fn val(a: &Affine, p: &[Q; 2]) -> Q {
    a.eval(p)
}

/// One Sutherland–Hodgman step against `a ≥ 0`.
fn clip(poly: &[[Q; 2]], a: &Affine) -> Vec<[Q; 2]> {
    let zero = q(0);
    let mut out = Vec::new();
    for k in 0..poly.len() {
        let (p, r) = (&poly[k], &poly[(k + 1) % poly.len()]);
        let (vp, vr) = (val(a, p), val(a, r));
        if vp >= zero {
            out.push(p.clone());
        }
        if (vp < zero && vr > zero) || (vp > zero && vr < zero) {
            let t = &vp / (&vp - &vr);
            out.push([&p[0] + &t * (&r[0] - &p[0]), &p[1] + &t * (&r[1] - &p[1])]);
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

enum Shape {
    Point([Q; 2]),
    Segment([Q; 2], [Q; 2]),
    Polygon(Vec<[Q; 2]>),
}

fn cross(o: &[Q; 2], a: &[Q; 2], b: &[Q; 2]) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

fn shape(piece: &Polyhedron, vp: &Viewport) -> Option<Shape> {
    let mut poly = vp.corners();
    for a in &piece.ineqs {
        poly = clip(&poly, a);
    }
    for e in &piece.eqs {
        poly = clip(&poly, e);
        poly = clip(&poly, &e.neg());
    }
    match poly.len() {
        0 => None,
        1 => Some(Shape::Point(poly[0].clone())),
        _ => {
            let zero = q(0);
            if poly.iter().all(|p| cross(&poly[0], &poly[1], p) == zero) {
                // collinear: keep the two extreme points along the line
                let key = |p: &[Q; 2]| (p[0].clone(), p[1].clone());
                let lo = poly.iter().min_by_key(|p| key(p)).unwrap().clone();
                let hi = poly.iter().max_by_key(|p| key(p)).unwrap().clone();
                Some(if lo == hi { Shape::Point(lo) } else { Shape::Segment(lo, hi) })
            } else {
                Some(Shape::Polygon(poly))
            }
        }
    }
}

/// Whether the piece continues past `end` in the direction away from `from`.
fn runs_past(piece: &Polyhedron, from: &[Q; 2], end: &[Q; 2]) -> bool {
    let d = Affine::new(vec![&end[0] - &from[0], &end[1] - &from[1]], q(0));
    let here = d.eval(end);
    match piece.maximize(&d) {
        LpOutcome::Unbounded { .. } => true,
        LpOutcome::Optimal { value, .. } => value > here,
        LpOutcome::Infeasible(_) => false,
    }
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn arrowhead(out: &mut String, from: (f64, f64), tip: (f64, f64)) {
    let (dx, dy) = (tip.0 - from.0, tip.1 - from.1);
    let len = (dx * dx + dy * dy).sqrt();
    if len == 0.0 {
        return;
    }
    let (ux, uy) = (dx / len, dy / len);
    let bx = tip.0 - ARROW * ux;
    let by = tip.1 - ARROW * uy;
    let (l, r) = ((bx - 0.5 * ARROW * uy, by + 0.5 * ARROW * ux), (bx + 0.5 * ARROW * uy, by - 0.5 * ARROW * ux));
    writeln!(
        out,
        r##"  <polygon points="{},{} {},{} {},{}" fill="#c0392b"/>"##,
        fmt(tip.0),
        fmt(tip.1),
        fmt(l.0),
        fmt(l.1),
        fmt(r.0),
        fmt(r.1)
    )
    .unwrap();
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG 1.1 document for a planar set; `label` goes into the legend.
pub fn plot_svg(s: &SkelSet, vp: &Viewport, label: &str) -> Result<String, String> {
    if s.nvars != 2 {
        return Err(format!("plotting needs 2 variables, got {}", s.nvars));
    }
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        SIZE
    )
    .unwrap();
    writeln!(out, r#"  <rect x="0" y="0" width="{0}" height="{0}" fill="white"/>"#, SIZE).unwrap();
    // axes, when the origin row/column is visible
    let zero = q(0);
    if vp.x0 <= zero && zero <= vp.x1 {
        let (x, _) = vp.px(&[zero.clone(), vp.y0.clone()]);
        writeln!(out, r##"  <line x1="{0}" y1="0.000000" x2="{0}" y2="{1}" stroke="#cccccc" stroke-width="1"/>"##, fmt(x), fmt(SIZE)).unwrap();
    }
    if vp.y0 <= zero && zero <= vp.y1 {
        let (_, y) = vp.px(&[vp.x0.clone(), zero.clone()]);
        writeln!(out, r##"  <line x1="0.000000" y1="{0}" x2="{1}" y2="{0}" stroke="#cccccc" stroke-width="1"/>"##, fmt(y), fmt(SIZE)).unwrap();
    }
    for piece in &s.pieces {
        match shape(piece, vp) {
            None => {}
            Some(Shape::Point(p)) => {
                let (x, y) = vp.px(&p);
                writeln!(out, r##"  <circle cx="{}" cy="{}" r="4" fill="#c0392b"/>"##, fmt(x), fmt(y)).unwrap();
            }
            Some(Shape::Segment(a, b)) => {
                let (pa, pb) = (vp.px(&a), vp.px(&b));
                writeln!(
                    out,
                    r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="2"/>"##,
                    fmt(pa.0),
                    fmt(pa.1),
                    fmt(pb.0),
                    fmt(pb.1)
                )
                .unwrap();
                if vp.on_boundary(&b) && runs_past(piece, &a, &b) {
                    arrowhead(&mut out, pa, pb);
                }
                if vp.on_boundary(&a) && runs_past(piece, &b, &a) {
                    arrowhead(&mut out, pb, pa);
                }
            }
            Some(Shape::Polygon(ps)) => {
                let pts: Vec<String> = ps
                    .iter()
                    .map(|p| {
                        let (x, y) = vp.px(p);
                        format!("{},{}", fmt(x), fmt(y))
                    })
                    .collect();
                writeln!(
                    out,
                    r##"  <polygon points="{}" fill="#2e86c1" fill-opacity="0.35" stroke="#2e86c1" stroke-width="1"/>"##,
                    pts.join(" ")
                )
                .unwrap();
            }
        }
    }
    let legend = if s.is_empty() { "∅".to_string() } else { escape(label) };
    writeln!(out, r#"  <text x="8" y="20" font-family="sans-serif" font-size="14">{legend}</text>"#).unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
