use std::fmt::Write;

use crate::models::ModelSpec;
use crate::superpoly::{Polynomial, Role, Roster};

/// Canonical expression text; parses back to the same polynomial.
pub fn print_expr(roster: &Roster, p: &Polynomial) -> String {
    roster.render(p)
}

/// Model file text accepted by [`super::parse_model`].
pub fn print_model(model: &ModelSpec) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "model {};", model.name);
    let _ = writeln!(s, "dim {};", model.dim());
    if model.dim() > 0 {
        let _ = writeln!(s, "metric {};", model.metric);
    }
    for f in model.roster.symbols().iter().filter(|f| f.role == Role::Field) {
        let _ = write!(s, "field {} ghost {} parity {}", f.name, f.ghost, f.parity);
        if f.partner.is_none() {
            s.push_str(" noanti");
        }
        if f.invertible {
            s.push_str(" invertible");
        }
        s.push_str(";\n");
    }
    s.push_str("action {\n");
    for (i, (m, c)) in model.action.terms().enumerate() {
        let term = model.roster.render_term(m, c);
        let _ = writeln!(s, "  {}{term}", if i == 0 { "" } else { "+ " });
    }
    s.push_str("}\n");
    s
}
