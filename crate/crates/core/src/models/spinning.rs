use crate::error::{Error, Result};
use crate::superpoly::{int, rat, Parity, Polynomial, Roster};

use super::spec::{MetricSignature, ModelSpec};
use super::XI;

pub fn x_name(mu: usize) -> String {
    format!("x{mu}")
}

pub fn theta_name(mu: usize) -> String {
    format!("theta{mu}")
}

pub fn p_name(mu: usize) -> String {
    format!("p{mu}")
}

fn matter_roster(d: usize) -> Result<Roster> {
    let mut r = Roster::new();
    for mu in 1..=d {
        r.add_field(&x_name(mu), 0, Parity::Even, true, false)?;
    }
    for mu in 1..=d {
        r.add_field(&theta_name(mu), 0, Parity::Odd, true, false)?;
    }
    for mu in 1..=d {
        r.add_field(&p_name(mu), 0, Parity::Even, true, false)?;
    }
    Ok(r)
}

fn check_metric(d: usize, metric: &MetricSignature) -> Result<()> {
    if metric.dim() != d {
        return Err(Error::InvalidArgument(format!("metric has {} entries, expected {d}", metric.dim())));
    }
    Ok(())
}

/// p_μ∂x^μ − ½η_{μν}θ^μ∂θ^ν − ½ e^k η^{μν}p_μp_ν, with e^k = 1 or e.
fn matter_kinetic(r: &Roster, metric: &MetricSignature, einbein: &Polynomial) -> Polynomial {
    let mut s = Polynomial::zero();
    for mu in 1..=metric.dim() {
        let eta = metric.eta(mu);
        let x = r.field(&x_name(mu)).unwrap();
        let th = r.field(&theta_name(mu)).unwrap();
        let p = r.gen(r.field(&p_name(mu)).unwrap(), 0);
        s += &(&p * &r.gen(x, 1));
        s -= &(&r.gen(th, 0) * &r.gen(th, 1)).scale(&rat(eta, 2));
        s -= &(&(einbein * &p) * &p).scale(&rat(eta, 2));
    }
    s
}

/// The free spinning particle in first-order form.
pub fn build_free_spinning(d: usize, metric: &MetricSignature) -> Result<ModelSpec> {
    if d == 0 {
        return Err(Error::InvalidArgument("the free model needs d >= 1; use the supergravity model for d = 0".into()));
    }
    check_metric(d, metric)?;
    let r = matter_roster(d)?;
    let action = matter_kinetic(&r, metric, &Polynomial::one());
    ModelSpec::new(&format!("free_d{d}"), metric.clone(), r, action)
}

/// The spinning particle coupled to one-dimensional supergravity,
/// S = S_[0] + S_[1] + S_[2].
pub fn build_sugra_spinning(d: usize, metric: &MetricSignature) -> Result<ModelSpec> {
    check_metric(d, metric)?;
    let mut r = matter_roster(d)?;
    r.add_field("e", 0, Parity::Even, true, false)?;
    r.add_field("psi", 0, Parity::Odd, true, false)?;
    r.add_field("c", 1, Parity::Odd, true, false)?;
    r.add_field("gamma", 1, Parity::Even, true, true)?;
    let parts = sugra_parts(&r, metric);
    let action = &(&parts[0] + &parts[1]) + &parts[2];
    ModelSpec::new(&format!("sugra_d{d}"), metric.clone(), r, action)
}

/// The three displayed pieces S_[0], S_[1], S_[2] of the supergravity action.
pub fn sugra_parts(r: &Roster, metric: &MetricSignature) -> [Polynomial; 3] {
    let e = r.f("e");
    let psi = r.f("psi");
    let c = r.f("c");
    let gamma = r.f("gamma");
    let ea = r.a("e");
    let psia = r.a("psi");
    let ca = r.a("c");
    let mut s0 = matter_kinetic(r, metric, &e);
    let mut conservation = ea.total_derivative();
    let mut susy = &psia.total_derivative() + &(&ea * &psi).scale(&int(2));
    for mu in 1..=metric.dim() {
        let eta = int(metric.eta(mu));
        let p = r.f(&p_name(mu));
        let th = r.f(&theta_name(mu));
        let xa = r.a(&x_name(mu));
        let tha = r.a(&theta_name(mu));
        s0 += &(&(&psi * &p) * &th);
        conservation -= &(&xa * &p).scale(&eta);
        susy += &(&tha * &p).scale(&eta);
        susy -= &(&xa * &th);
    }
    let s1 = &(&conservation * &c) + &(&susy * &gamma);
    let s2 = -(&(&ca * &gamma) * &gamma);
    [s0, s1, s2]
}

impl ModelSpec {
    /// Appends the auxiliary even ghost-zero generator ξ (no antifield).
    pub fn with_aux_xi(&self) -> Result<ModelSpec> {
        if self.has_aux_xi() {
            return Ok(self.clone());
        }
        let mut r = self.roster.clone();
        r.add_field(XI, 0, Parity::Even, false, false)?;
        ModelSpec::new(&self.name, self.metric.clone(), r, self.action.clone())
    }
}

/// Parses `builtin:free:d=N` and `builtin:sugra:d=N[:metric=+-..]`.
pub fn builtin_model(selector: &str) -> Result<ModelSpec> {
    let bad = || Error::InvalidArgument(format!("bad builtin selector `{selector}`"));
    let rest = selector.strip_prefix("builtin:").ok_or_else(bad)?;
    let mut parts = rest.split(':');
    let kind = parts.next().ok_or_else(bad)?;
    let d: usize = parts
        .next()
        .and_then(|p| p.strip_prefix("d="))
        .and_then(|n| n.parse().ok())
        .ok_or_else(bad)?;
    let mut metric = MetricSignature::euclidean(d);
    for p in parts {
        match p.strip_prefix("metric=") {
            Some(m) => metric = MetricSignature::parse(m)?,
            None => return Err(bad()),
        }
    }
    match kind {
        "free" => build_free_spinning(d, &metric),
        "sugra" => build_sugra_spinning(d, &metric),
        _ => Err(bad()),
    }
}
