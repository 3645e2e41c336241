//! The affine group `W_p = U_p x| Z_p` and its action `(m, k) . y = T_k D_m y`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{full_unit_group, mod_inverse, mul_mod, PrimeContext, SubgroupDecomposition};
use crate::signal::{dilate, translate, Signal};

/// An element `(m, k)` of `W_p`. Serializes as `[m, k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u64, u64)", into = "(u64, u64)")]
pub struct GroupElement {
    pub m: u64,
    pub k: u64,
}

impl From<(u64, u64)> for GroupElement {
    fn from((m, k): (u64, u64)) -> Self {
        Self { m, k }
    }
}

impl From<GroupElement> for (u64, u64) {
    fn from(g: GroupElement) -> Self {
        (g.m, g.k)
    }
}

impl GroupElement {
    /// Checked constructor: `1 <= m <= p - 1`, `0 <= k <= p - 1`.
    pub fn new(m: u64, k: u64, ctx: &PrimeContext) -> Result<Self> {
        ctx.check_unit(m)?;
        ctx.check_residue(k)?;
        Ok(Self { m, k })
    }

    pub const IDENTITY: GroupElement = GroupElement { m: 1, k: 0 };
}

/// `(m, k)(m', k') = (m m', k + m k')`.
pub fn compose(g: GroupElement, h: GroupElement, ctx: &PrimeContext) -> GroupElement {
    let p = ctx.p();
    GroupElement {
        m: mul_mod(g.m, h.m, p),
        k: (g.k + mul_mod(g.m, h.k, p)) % p,
    }
}

/// `(m, k)^-1 = (m_p, m_p (p - k))`.
pub fn invert(g: GroupElement, ctx: &PrimeContext) -> Result<GroupElement> {
    let p = ctx.p();
    let inv = mod_inverse(g.m, ctx)?;
    Ok(GroupElement {
        m: inv,
        k: mul_mod(inv, (p - g.k % p) % p, p),
    })
}

/// `sigma(m, k) y = T_k D_m y`.
pub fn act(g: GroupElement, y: &Signal, ctx: &PrimeContext) -> Result<Signal> {
    translate(&dilate(y, g.m, ctx)?, g.k)
}

/// Shape of an index set `Delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexKind {
    /// `Delta = W_p`, stored as `U_p x Z_p`.
    Full,
    /// `Delta_M = M x Z_p`.
    SubgroupProduct,
    /// Any other duplicate-free subset of `W_p`.
    Custom,
}

/// A finite index set `Delta` in a fixed, reproducible enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexSet {
    kind: IndexKind,
    subgroup: Option<SubgroupDecomposition>,
    elements: Vec<GroupElement>,
}

impl IndexSet {
    pub fn kind(&self) -> &IndexKind {
        &self.kind
    }

    /// The subgroup `M` when this is `M x Z_p` (including the full group).
    pub fn subgroup(&self) -> Option<&SubgroupDecomposition> {
        self.subgroup.as_ref()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Arbitrary `Delta`; order is kept as given.
    pub fn custom(elements: Vec<GroupElement>, ctx: &PrimeContext) -> Result<Self> {
        let mut seen = HashSet::with_capacity(elements.len());
        for g in &elements {
            ctx.check_unit(g.m)?;
            ctx.check_residue(g.k)?;
            if !seen.insert(*g) {
                return Err(Error::DuplicateIndex { m: g.m, k: g.k });
            }
        }
        Ok(Self {
            kind: IndexKind::Custom,
            subgroup: None,
            elements,
        })
    }
}

/// Which `Delta` to enumerate.
#[derive(Debug, Clone, Copy)]
pub enum IndexSpec<'a> {
    Full,
    Subgroup(&'a SubgroupDecomposition),
}

/// Enumerates `M x Z_p` with `m` outer (generator-power order) and `k` inner ascending.
pub fn enumerate_index_set(ctx: &PrimeContext, spec: IndexSpec<'_>) -> Result<IndexSet> {
    let (kind, sub) = match spec {
        IndexSpec::Full => (IndexKind::Full, full_unit_group(ctx)),
        IndexSpec::Subgroup(s) => {
            ctx.check_same(s.p())?;
            (IndexKind::SubgroupProduct, s.clone())
        }
    };
    let p = ctx.p();
    let elements = sub
        .elements()
        .iter()
        .flat_map(|&m| (0..p).map(move |k| GroupElement { m, k }))
        .collect();
    Ok(IndexSet {
        kind,
        subgroup: Some(sub),
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::subgroup_of_order;

    fn ctx(p: u64) -> PrimeContext {
        PrimeContext::new(p).unwrap()
    }

    fn g(m: u64, k: u64) -> GroupElement {
        GroupElement { m, k }
    }

    #[test]
    fn compose_examples() {
        let c = ctx(5);
        assert_eq!(compose(GroupElement::IDENTITY, g(3, 4), &c), g(3, 4));
        assert_eq!(compose(g(2, 1), g(3, 2), &c), g(1, 0));
        assert_eq!(compose(g(2, 0), g(1, 1), &c), g(2, 2));
        assert_eq!(compose(g(1, 1), g(2, 0), &c), g(2, 1));
    }

    #[test]
    fn invert_examples() {
        let c = ctx(5);
        assert_eq!(invert(GroupElement::IDENTITY, &c).unwrap(), GroupElement::IDENTITY);
        assert_eq!(invert(g(2, 1), &c).unwrap(), g(3, 2));
        for m in 1..5 {
            let inv = mod_inverse(m, &c).unwrap();
            assert_eq!(invert(g(m, 0), &c).unwrap(), g(inv, 0));
        }
    }

    #[test]
    fn act_examples() {
        let c = ctx(7);
        let y = Signal::from_real(7, &[1.0, -2.0, 0.5, 3.0, 0.0, 4.0, -1.0]).unwrap();
        assert_eq!(act(GroupElement::IDENTITY, &y, &c).unwrap(), y);
        for m in 1..7 {
            for k in 0..7 {
                assert_eq!(
                    act(g(m, k), &Signal::delta(7, 0), &c).unwrap(),
                    Signal::delta(7, k)
                );
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let c5 = ctx(5);
        assert_eq!(enumerate_index_set(&c5, IndexSpec::Full).unwrap().len(), 20);
        let c7 = ctx(7);
        let s = subgroup_of_order(&c7, 3).unwrap();
        let set = enumerate_index_set(&c7, IndexSpec::Subgroup(&s)).unwrap();
        assert_eq!(set.len(), 21);
        assert_eq!(set.elements()[7], g(2, 0));
        let trivial = subgroup_of_order(&c5, 1).unwrap();
        let set = enumerate_index_set(&c5, IndexSpec::Subgroup(&trivial)).unwrap();
        assert_eq!(
            set.elements(),
            &[g(1, 0), g(1, 1), g(1, 2), g(1, 3), g(1, 4)]
        );
        assert_eq!(set.kind(), &IndexKind::SubgroupProduct);
    }

    #[test]
    fn custom_index_sets_are_checked() {
        let c = ctx(5);
        assert!(IndexSet::custom(vec![g(1, 0), g(2, 3)], &c).is_ok());
        assert_eq!(
            IndexSet::custom(vec![g(1, 0), g(1, 0)], &c).unwrap_err(),
            Error::DuplicateIndex { m: 1, k: 0 }
        );
        assert!(IndexSet::custom(vec![g(0, 0)], &c).is_err());
        assert!(IndexSet::custom(vec![g(1, 5)], &c).is_err());
    }

    #[test]
    fn element_serializes_as_pair() {
        assert_eq!(serde_json::to_string(&g(3, 2)).unwrap(), "[3,2]");
        let back: GroupElement = serde_json::from_str("[4,1]").unwrap();
        assert_eq!(back, g(4, 1));
    }
}
