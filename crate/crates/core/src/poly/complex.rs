//! Real and imaginary parts of `g(x1 + i x2)`.

use super::{vars, MultiPoly, UniPoly, Vars};

fn xy() -> Vars {
    vars(&["x1", "x2"])
}

/// `(Re g(x1 + i x2), Im g(x1 + i x2))` as polynomials in `x1, x2`.
pub fn complex_split(g: &UniPoly) -> (MultiPoly, MultiPoly) {
    let v = xy();
    let x1 = MultiPoly::var(v.clone(), 0);
    let x2 = MultiPoly::var(v.clone(), 1);
    let mut re = MultiPoly::zero(v.clone());
    let mut im = MultiPoly::zero(v.clone());
    for a in g.coeffs().iter().rev() {
        let nre = &(&re * &x1) - &(&im * &x2);
        let nim = &(&re * &x2) + &(&im * &x1);
        re = &nre + &MultiPoly::constant(v.clone(), a.clone());
        im = nim;
    }
    (re, im)
}

/// `Re(g)^2 + Im(g)^2 - 1`.
pub fn circle_distance_poly(g: &UniPoly) -> MultiPoly {
    let (re, im) = complex_split(g);
    let one = MultiPoly::one(re.vars().clone());
    &(&(&re * &re) + &(&im * &im)) - &one
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        let (r, i) = complex_split(&UniPoly::from_ints(&[0, 1]));
        assert_eq!((r.to_string(), i.to_string()), ("x1".into(), "x2".into()));
        let (r, i) = complex_split(&UniPoly::from_ints(&[2, -1]));
        assert_eq!((r.to_string(), i.to_string()), ("-x1 + 2".into(), "-x2".into()));
        let (r, i) = complex_split(&UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!((r.to_string(), i.to_string()), ("x1^2 - x2^2".into(), "2*x1*x2".into()));
    }

    #[test]
    fn circle_distance_examples() {
        assert_eq!(circle_distance_poly(&UniPoly::from_ints(&[0, 1])).to_string(), "x1^2 + x2^2 - 1");
        assert_eq!(
            circle_distance_poly(&UniPoly::from_ints(&[2, -1])).to_string(),
            "x1^2 + x2^2 - 4*x1 + 3"
        );
        assert_eq!(circle_distance_poly(&UniPoly::from_ints(&[3])).to_string(), "8");
    }
}
