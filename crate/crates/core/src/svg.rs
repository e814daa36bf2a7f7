//! SVG rendering of configurations. This is the one place floating point is
//! allowed: drawings never feed back into any verdict path.
//!
//! Styling follows the figures the constructions reproduce: P and B points
//! are black, G points gray, blockers white with a black outline. On circle
//! drawings the rotated families (nonzero formal-rotation coefficient) get
//! larger discs, and blocking direction classes sit on an outer ring.

use std::fmt::Write as _;

use crate::doc::LoadedConfig;
use crate::field::{Field, Rat};
use crate::group::angle::AngleElem;
use crate::plane::{ProjPoint, Role};
use crate::{Error, Result};

/// Numeric stand-in for the formal generic rotation, as a fraction of a full
/// turn. The default is one radian.
pub const DEFAULT_THETA: f64 = 0.15915494309189535;

const SIZE: f64 = 420.0;
const MARGIN: f64 = 40.0;

fn role_style(role: Role) -> (&'static str, &'static str) {
    match role {
        Role::P | Role::B => ("#000", "#000"),
        Role::G => ("#999", "#666"),
        Role::R => ("#fff", "#000"),
    }
}

fn rat_f64(x: &Rat) -> f64 {
    let n: f64 = x.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = x.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn new() -> Self {
        Canvas { body: String::new() }
    }

    fn disc(&mut self, x: f64, y: f64, r: f64, fill: &str, stroke: &str) {
        writeln!(
            self.body,
            r#"  <circle cx="{x:.3}" cy="{y:.3}" r="{r:.2}" fill="{fill}" stroke="{stroke}" stroke-width="1.2"/>"#
        )
        .expect("string write");
    }

    fn segment(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, color: &str, width: f64) {
        writeln!(
            self.body,
            r#"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{color}" stroke-width="{width:.2}"/>"#
        )
        .expect("string write");
    }

    fn circle_outline(&mut self, cx: f64, cy: f64, r: f64) {
        writeln!(
            self.body,
            r#"  <circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="none" stroke="#bbb" stroke-width="1"/>"#
        )
        .expect("string write");
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n{}</svg>\n",
            self.body,
            s = SIZE
        )
    }
}

/// Render a configuration. `theta` replaces the formal rotation in angle
/// drawings; planar drawings ignore it.
pub fn render(cfg: &LoadedConfig, theta: f64) -> Result<String> {
    match cfg {
        LoadedConfig::PlanarRat(pc) => {
            let roles: Vec<(Role, Vec<ProjPoint<Rat>>)> = pc
                .roles()
                .iter()
                .map(|(r, pts)| (*r, pts.clone()))
                .collect();
            render_planar(&roles)
        }
        LoadedConfig::PlanarFp(..) | LoadedConfig::EcFp { .. } => Err(Error::Unsupported(
            "prime-field configurations have no natural drawing".into(),
        )),
        LoadedConfig::EcRat { curve, roles } => {
            let planar: Vec<(Role, Vec<ProjPoint<Rat>>)> = roles
                .iter()
                .map(|(r, pts)| (*r, pts.iter().map(|p| curve.to_proj(p)).collect()))
                .collect();
            render_planar(&planar)
        }
        LoadedConfig::Angle(ac) => {
            let mut roles: Vec<(Role, Vec<AngleElem>)> = ac
                .roles()
                .iter()
                .map(|(r, s)| (*r, s.iter().cloned().collect()))
                .collect();
            roles.sort_by_key(|(r, _)| *r);
            render_angles(&roles, ac.directions().iter().cloned().collect(), theta)
        }
    }
}

fn render_planar(roles: &[(Role, Vec<ProjPoint<Rat>>)]) -> Result<String> {
    let mut affine: Vec<(Role, f64, f64)> = Vec::new();
    let mut infinite: Vec<(Role, f64, f64)> = Vec::new();
    for (role, pts) in roles {
        for p in pts {
            match p.to_affine() {
                Some((x, y)) => affine.push((*role, rat_f64(&x), rat_f64(&y))),
                None => {
                    let (dx, dy, _) = p.coords();
                    infinite.push((*role, rat_f64(dx), rat_f64(dy)));
                }
            }
        }
    }
    if affine.is_empty() {
        return Err(Error::Degenerate("nothing to draw".into()));
    }
    let (mut lo_x, mut hi_x) = (f64::MAX, f64::MIN);
    let (mut lo_y, mut hi_y) = (f64::MAX, f64::MIN);
    for &(_, x, y) in &affine {
        lo_x = lo_x.min(x);
        hi_x = hi_x.max(x);
        lo_y = lo_y.min(y);
        hi_y = hi_y.max(y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1.0);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let to_canvas = |x: f64, y: f64| {
        (
            MARGIN + (x - lo_x) * scale,
            // SVG y grows downward
            SIZE - MARGIN - (y - lo_y) * scale,
        )
    };

    let mut canvas = Canvas::new();
    // chords first so discs draw over them
    let blacks: Vec<(f64, f64)> = affine
        .iter()
        .filter(|(r, _, _)| *r == Role::P || *r == Role::B)
        .map(|&(_, x, y)| to_canvas(x, y))
        .collect();
    let grays: Vec<(f64, f64)> = affine
        .iter()
        .filter(|(r, _, _)| *r == Role::G)
        .map(|&(_, x, y)| to_canvas(x, y))
        .collect();
    if grays.is_empty() {
        for i in 0..blacks.len() {
            for j in i + 1..blacks.len() {
                let (x1, y1) = blacks[i];
                let (x2, y2) = blacks[j];
                canvas.segment(x1, y1, x2, y2, "#ddd", 0.8);
            }
        }
    } else {
        for &(x1, y1) in &blacks {
            for &(x2, y2) in &grays {
                canvas.segment(x1, y1, x2, y2, "#ddd", 0.8);
            }
        }
    }
    for &(role, x, y) in &affine {
        let (fill, stroke) = role_style(role);
        let (cx, cy) = to_canvas(x, y);
        canvas.disc(cx, cy, 5.0, fill, stroke);
    }
    // directions at infinity: arrowed double bars at the border
    for &(role, dx, dy) in &infinite {
        let (fill, stroke) = role_style(role);
        let norm = (dx * dx + dy * dy).sqrt();
        let (ux, uy) = (dx / norm, -dy / norm);
        let cx = SIZE / 2.0 + ux * (SIZE / 2.0 - 14.0);
        let cy = SIZE / 2.0 + uy * (SIZE / 2.0 - 14.0);
        canvas.segment(cx - 8.0 * ux, cy - 8.0 * uy, cx + 8.0 * ux, cy + 8.0 * uy, stroke, 2.0);
        canvas.disc(cx, cy, 4.0, fill, stroke);
    }
    Ok(canvas.finish())
}

fn render_angles(
    roles: &[(Role, Vec<AngleElem>)],
    directions: Vec<AngleElem>,
    theta: f64,
) -> Result<String> {
    if roles.iter().all(|(_, v)| v.is_empty()) {
        return Err(Error::Degenerate("nothing to draw".into()));
    }
    let mut canvas = Canvas::new();
    let c = SIZE / 2.0;
    let radius = SIZE / 2.0 - MARGIN - 20.0;
    let embed = |a: &AngleElem, r: f64| {
        let t = a.to_f64(theta) * std::f64::consts::TAU;
        (c + r * t.cos(), c - r * t.sin())
    };
    canvas.circle_outline(c, c, radius);

    // chords
    let find = |want: Role| -> Vec<&AngleElem> {
        roles
            .iter()
            .filter(|(r, _)| *r == want)
            .flat_map(|(_, v)| v.iter())
            .collect()
    };
    let p = find(Role::P);
    let b = find(Role::B);
    let g = find(Role::G);
    let pairs: Vec<(&AngleElem, &AngleElem)> = if !p.is_empty() {
        let mut out = Vec::new();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                out.push((p[i], p[j]));
            }
        }
        out
    } else {
        b.iter().flat_map(|x| g.iter().map(move |y| (*x, *y))).collect()
    };
    for (x, y) in pairs {
        let (x1, y1) = embed(x, radius);
        let (x2, y2) = embed(y, radius);
        canvas.segment(x1, y1, x2, y2, "#ddd", 0.7);
    }

    for (role, elems) in roles {
        let (fill, stroke) = role_style(*role);
        for a in elems {
            let (x, y) = embed(a, radius);
            // rotated families draw bigger, matching the figure styling
            let r = if a.theta_coeff() == 0 { 4.5 } else { 6.5 };
            canvas.disc(x, y, r, fill, stroke);
        }
    }
    // blocking classes on an outer ring at the direction angle
    // pi*class + pi/2
    for class in &directions {
        let t = class.to_f64(theta);
        let ang = std::f64::consts::PI * t + std::f64::consts::FRAC_PI_2;
        let (x, y) = (c + (radius + 18.0) * ang.cos(), c - (radius + 18.0) * ang.sin());
        canvas.disc(x, y, 3.5, "#fff", "#000");
    }
    Ok(canvas.finish())
}
