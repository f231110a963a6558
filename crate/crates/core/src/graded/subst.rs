use std::collections::HashMap;

use super::chart::{same_chart, ChartRef};
use super::poly::GPoly;
use crate::error::{Error, Result};

/// An algebra map given on generators: `images[i]` is the image of the
/// i-th source coordinate, a polynomial on `target`. Applying it to a
/// polynomial on `source` is the pullback along the underlying map of
/// graded manifolds target → source.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    source: ChartRef,
    target: ChartRef,
    images: Vec<GPoly>,
}

fn check_image(name: &str, degree: i32, img: &GPoly) -> Result<()> {
    if img.is_homogeneous_of(degree) {
        Ok(())
    } else {
        Err(Error::DegreeMismatch {
            var: name.to_string(),
            expected: degree,
            found: format!("{:?}", img.degrees()),
        })
    }
}

impl PolyMap {
    /// Builds a map from named assignments. Unassigned source coordinates
    /// go to the target coordinate of the same name.
    pub fn new(source: &ChartRef, target: &ChartRef, assignment: &HashMap<String, GPoly>) -> Result<PolyMap> {
        for name in assignment.keys() {
            source.require(name)?;
        }
        let mut images = Vec::with_capacity(source.len());
        for v in source.vars() {
            let img = match assignment.get(&v.name) {
                Some(p) => {
                    if !same_chart(p.chart(), target) {
                        return Err(Error::ChartMismatch);
                    }
                    p.clone()
                }
                None => GPoly::var_named(target, &v.name)?,
            };
            check_image(&v.name, v.degree, &img)?;
            images.push(img);
        }
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn from_images(source: &ChartRef, target: &ChartRef, images: Vec<GPoly>) -> Result<PolyMap> {
        if images.len() != source.len() {
            return Err(Error::Invalid("image count differs from source chart".into()));
        }
        for (v, img) in source.vars().iter().zip(&images) {
            if !same_chart(img.chart(), target) {
                return Err(Error::ChartMismatch);
            }
            check_image(&v.name, v.degree, img)?;
        }
        Ok(PolyMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(chart: &ChartRef) -> PolyMap {
        PolyMap {
            source: chart.clone(),
            target: chart.clone(),
            images: (0..chart.len()).map(|i| GPoly::var(chart, i)).collect(),
        }
    }

    pub fn source(&self) -> &ChartRef {
        &self.source
    }

    pub fn target(&self) -> &ChartRef {
        &self.target
    }

    pub fn image(&self, idx: usize) -> &GPoly {
        &self.images[idx]
    }

    pub fn images(&self) -> &[GPoly] {
        &self.images
    }

    pub fn apply(&self, f: &GPoly) -> GPoly {
        assert!(same_chart(f.chart(), &self.source), "chart mismatch in pullback");
        let mut powers: HashMap<(usize, u16), GPoly> = HashMap::new();
        let mut out = GPoly::zero(&self.target);
        for (m, c) in f.terms() {
            let mut acc = GPoly::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| self.images[i].pow(e as u32));
                acc = &acc * &*p;
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// `self.then(other)` applies `self` first: (other ∘ self)(f) = other(self(f)).
    pub fn then(&self, other: &PolyMap) -> Result<PolyMap> {
        if !same_chart(&self.target, &other.source) {
            return Err(Error::ChartMismatch);
        }
        Ok(PolyMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|g| other.apply(g)).collect(),
        })
    }
}

/// Substitutes polynomials for coordinates of `f`'s chart; the result lives
/// on the chart of the assigned polynomials (or `f`'s chart if none).
pub fn substitute(f: &GPoly, assignment: &HashMap<String, GPoly>) -> Result<GPoly> {
    let target = assignment
        .values()
        .next()
        .map(|p| p.chart().clone())
        .unwrap_or_else(|| f.chart().clone());
    Ok(PolyMap::new(f.chart(), &target, assignment)?.apply(f))
}
