use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::exactnum::{Matrix, Scalar};

use super::pattern::{Kind, LinkPattern};

/// Canonically ordered list of all patterns of one kind and size.
#[derive(Debug)]
pub struct Basis {
    kind: Kind,
    size: usize,
    patterns: Vec<LinkPattern>,
    index: HashMap<LinkPattern, usize>,
}

impl Basis {
    /// Shared, memoized basis.
    pub fn get(kind: Kind, size: usize) -> Result<Arc<Basis>> {
        static CACHE: OnceLock<Mutex<HashMap<(Kind, usize), Arc<Basis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.lock().expect("basis cache").get(&(kind, size)) {
            return Ok(b.clone());
        }
        let patterns = LinkPattern::enumerate(kind, size)?;
        let index = patterns.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        let b = Arc::new(Basis {
            kind,
            size,
            patterns,
            index,
        });
        cache.lock().expect("basis cache").insert((kind, size), b.clone());
        Ok(b)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.patterns.len()
    }

    pub fn patterns(&self) -> &[LinkPattern] {
        &self.patterns
    }

    pub fn pattern(&self, k: usize) -> &LinkPattern {
        &self.patterns[k]
    }

    pub fn index_of(&self, p: &LinkPattern) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of a pattern known to belong to this basis.
    pub fn position(&self, p: &LinkPattern) -> usize {
        self.index_of(p)
            .unwrap_or_else(|| panic!("{p:?} not in basis {:?}/{}", self.kind, self.size))
    }
}

/// Finitely supported combination of link patterns.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternVector<R> {
    coeffs: BTreeMap<LinkPattern, R>,
}

impl<R: Scalar> Default for PatternVector<R> {
    fn default() -> Self {
        PatternVector {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<R: Scalar> PatternVector<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis_vector(p: LinkPattern) -> Self {
        let mut v = Self::zero();
        v.add(p, R::one());
        v
    }

    pub fn add(&mut self, p: LinkPattern, c: R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&p) {
            Some(x) => {
                *x = x.clone() + c;
                if x.is_zero() {
                    self.coeffs.remove(&p);
                }
            }
            None => {
                self.coeffs.insert(p, c);
            }
        }
    }

    pub fn add_vector(&mut self, o: &Self, scale: &R) {
        for (p, c) in &o.coeffs {
            self.add(p.clone(), c.clone() * scale);
        }
    }

    pub fn get(&self, p: &LinkPattern) -> R {
        self.coeffs.get(p).cloned().unwrap_or_else(R::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LinkPattern, &R)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn sum(&self) -> R {
        self.coeffs.values().fold(R::zero(), |a, c| a + c)
    }

    /// Applies a pattern-linear map.
    pub fn map_linear(&self, f: impl Fn(&LinkPattern) -> Result<PatternVector<R>>) -> Result<Self> {
        let mut out = Self::zero();
        for (p, c) in &self.coeffs {
            out.add_vector(&f(p)?, c);
        }
        Ok(out)
    }

    pub fn to_dense(&self, basis: &Basis) -> Vec<R> {
        let mut v = vec![R::zero(); basis.dim()];
        for (p, c) in &self.coeffs {
            v[basis.position(p)] = c.clone();
        }
        v
    }

    pub fn from_dense(basis: &Basis, v: &[R]) -> Self {
        let mut out = Self::zero();
        for (k, c) in v.iter().enumerate() {
            out.add(basis.pattern(k).clone(), c.clone());
        }
        out
    }
}

/// Matrix whose column `k` is `f(basis_from[k])` expanded in `basis_to`.
pub fn operator_matrix<R: Scalar>(
    from: &Basis,
    to: &Basis,
    f: impl Fn(&LinkPattern) -> Result<PatternVector<R>>,
) -> Result<Matrix<R>> {
    let mut m = Matrix::zeros(to.dim(), from.dim());
    for (k, p) in from.patterns().iter().enumerate() {
        for (q, c) in f(p)?.iter() {
            m[(to.position(q), k)] = c.clone();
        }
    }
    Ok(m)
}
