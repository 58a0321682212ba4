//! Closed-form outputs, computed before any simulation.

use std::f64::consts::PI;

use super::{Apriori, Expr, InstanceSpec, Width};
use crate::model::DesignPoint;

/// Field surface (m^2) for tower height, angular half-width and radii in
/// tower heights.
pub fn field_area_m2(tower_h: f64, angle: f64, r_min: f64, r_max: f64) -> f64 {
    tower_h * tower_h * (r_max * r_max - r_min * r_min) * angle * PI / 180.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct AprioriEval {
    /// One slot per output; `None` where the simulator is needed.
    pub values: Vec<Option<f64>>,
    /// Every closed-form constraint is `<= 0`.
    pub satisfied: bool,
}

fn value(expr: Apriori, x: &DesignPoint) -> f64 {
    match expr {
        Apriori::Tower => 2.0 * x.get(1) - x.get(3),
        Apriori::Order => x.get(8) - x.get(9),
        Apriori::Less(i, j) => x.get(i) - x.get(j),
        Apriori::Area(limit) => field_area_m2(x.get(3), x.get(7), x.get(8), x.get(9)) / 1e4 - limit,
        Apriori::AreaObjective => field_area_m2(x.get(3), x.get(7), x.get(8), x.get(9)),
        Apriori::TubesFit(i, j, w) => {
            let width = match w {
                Width::Var(k) => x.get(k),
                Width::Fixed(a) => a,
            };
            x.get(i) * x.get(j) - width * PI / 2.0
        }
    }
}

/// Panics if `x` is shorter than the instance dimension.
pub fn apriori_eval(spec: &InstanceSpec, x: &DesignPoint) -> AprioriEval {
    assert_eq!(x.len(), spec.n(), "{} takes {} variables", spec.name, spec.n());
    let mut satisfied = true;
    let values = spec
        .outputs
        .iter()
        .enumerate()
        .map(|(k, o)| match o.expr {
            Expr::Apriori(e) => {
                let v = value(e, x);
                if k >= spec.p && !(v <= 0.0) {
                    satisfied = false;
                }
                Some(v)
            }
            Expr::Sim(_) => None,
        })
        .collect();
    AprioriEval { values, satisfied }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::instance_spec;

    #[test]
    fn solar2_objective() {
        let spec = instance_spec(2).unwrap();
        let mut x = spec.x0.clone();
        x.coords[2] = 100.0;
        x.coords[6] = 45.0;
        x.coords[7] = 1.0;
        x.coords[8] = 2.0;
        let e = apriori_eval(spec, &x);
        let f = e.values[0].unwrap();
        assert!((f - 7500.0 * PI).abs() < 1e-9);
        assert_eq!(e.values[1].unwrap(), f / 1e4 - 400.0);
        x.coords[7] = 2.0;
        assert_eq!(apriori_eval(spec, &x).values[0].unwrap(), 0.0);
    }

    #[test]
    fn tower_rule() {
        let spec = instance_spec(1).unwrap();
        let mut x = spec.x0.clone();
        x.coords[0] = 10.0;
        x.coords[2] = 100.0;
        assert_eq!(apriori_eval(spec, &x).values[3], Some(-80.0));
    }
}
