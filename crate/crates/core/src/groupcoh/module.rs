use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::permstruct::{Elem, FiniteAbelian, GroupHom, Perm, PermGroup};

/// A finite group acting on a finite abelian group by automorphisms.
///
/// Group elements are referred to by their index in the sorted element list.
#[derive(Clone, Debug)]
pub struct FiniteGModule {
    pub group: PermGroup,
    pub module: FiniteAbelian,
    /// `action[g]` is the automorphism of M (on element indices) for element g.
    action: Vec<Perm>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FiniteGModule {
    /// Builds the module from automorphisms assigned to the group generators.
    pub fn new(group: PermGroup, module: FiniteAbelian, gen_action: Vec<Perm>) -> Result<Self> {
        if gen_action.len() != group.generators().len() {
            return invalid("one automorphism per generator is required");
        }
        let auts = module.automorphisms();
        for a in &gen_action {
            if !auts.contains(a) {
                return invalid(format!("{a} is not an automorphism of {}", module.label()));
            }
        }
        let hom = GroupHom::new(module.order(), group.generators().to_vec(), gen_action);
        let table = hom.table(group.degree())?;
        let action: Vec<Perm> = group.elements().iter().map(|g| table[g].clone()).collect();
        Ok(Self::from_table(group, module, action))
    }

    pub fn trivial_action(group: PermGroup, module: FiniteAbelian) -> Self {
        let id = Perm::identity(module.order());
        let action = vec![id; group.order()];
        Self::from_table(group, module, action)
    }

    /// Action through a character `G -> {+-1}`: odd elements act by negation.
    pub fn via_sign(group: PermGroup, module: FiniteAbelian, odd: impl Fn(&Perm) -> bool) -> Self {
        let neg = module.perm_of(|x| module.neg(x));
        let id = Perm::identity(module.order());
        let action = group.elements().iter().map(|g| if odd(g) { neg.clone() } else { id.clone() }).collect();
        Self::from_table(group, module, action)
    }

    pub(crate) fn from_table(group: PermGroup, module: FiniteAbelian, action: Vec<Perm>) -> Self {
        let els = group.elements();
        let mul = els
            .iter()
            .map(|a| els.iter().map(|b| group.index_of(&a.compose(b)).unwrap()).collect())
            .collect();
        let inv = els.iter().map(|a| group.index_of(&a.inverse()).unwrap()).collect();
        FiniteGModule { group, module, action, mul, inv }
    }

    /// Full check that the action table is a homomorphism into Aut M.
    pub fn verify(&self) -> Result<()> {
        let auts = self.module.automorphisms();
        let n = self.group.order();
        for a in 0..n {
            if !auts.contains(&self.action[a]) {
                return invalid("action value is not an automorphism");
            }
            for b in 0..n {
                if self.action[self.mul[a][b]] != self.action[a].compose(&self.action[b]) {
                    return invalid("action is not a homomorphism");
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        self.group.index_of(&Perm::identity(self.group.degree())).unwrap()
    }

    pub fn action_of(&self, g: usize) -> &Perm {
        &self.action[g]
    }

    pub fn act(&self, g: usize, x: &Elem) -> Elem {
        let m = &self.module;
        m.element(self.action[g].apply(m.index(x)))
    }

    /// Restriction to a subgroup H (same degree, contained in G).
    pub fn restrict(&self, h: &PermGroup) -> Result<FiniteGModule> {
        if !h.is_subgroup_of(&self.group) {
            return invalid("not a subgroup");
        }
        let action = h
            .elements()
            .iter()
            .map(|x| self.action[self.group.index_of(x).unwrap()].clone())
            .collect();
        Ok(Self::from_table(h.clone(), self.module.clone(), action))
    }

    /// Fixed points `M^G`.
    pub fn fixed_points(&self) -> Vec<Elem> {
        self.module
            .elements()
            .into_iter()
            .filter(|x| (0..self.order()).all(|g| &self.act(g, x) == x))
            .collect()
    }

    pub fn describe(&self) -> String {
        format!("G of order {} acting on {}", self.order(), self.module.label())
    }
}

/// A function `G^n -> M`, stored densely in lexicographic tuple order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cochain {
    pub arity: usize,
    pub table: Vec<Elem>,
}

pub fn tuple_index(g_order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * g_order + t)
}

pub fn tuple_of(g_order: usize, arity: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for k in (0..arity).rev() {
        t[k] = index % g_order;
        index /= g_order;
    }
    t
}

impl Cochain {
    pub fn zero(gm: &FiniteGModule, arity: usize) -> Self {
        let n = gm.order().pow(arity as u32);
        Cochain { arity, table: vec![gm.module.zero(); n] }
    }

    pub fn from_fn(gm: &FiniteGModule, arity: usize, f: impl Fn(&[usize]) -> Elem) -> Self {
        let n = gm.order();
        let table = (0..n.pow(arity as u32)).map(|i| f(&tuple_of(n, arity, i))).collect();
        Cochain { arity, table }
    }

    pub fn at(&self, g_order: usize, tuple: &[usize]) -> &Elem {
        &self.table[tuple_index(g_order, tuple)]
    }

    pub fn add(&self, m: &FiniteAbelian, o: &Cochain) -> Cochain {
        Cochain { arity: self.arity, table: self.table.iter().zip(&o.table).map(|(a, b)| m.add(a, b)).collect() }
    }

    pub fn neg(&self, m: &FiniteAbelian) -> Cochain {
        Cochain { arity: self.arity, table: self.table.iter().map(|a| m.neg(a)).collect() }
    }

    pub fn scalar(&self, m: &FiniteAbelian, k: i64) -> Cochain {
        Cochain { arity: self.arity, table: self.table.iter().map(|a| m.scalar(k, a)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|e| e.iter().all(|&x| x == 0))
    }

    /// JSON map keyed by comma-joined cycle strings of the argument tuple.
    pub fn to_json(&self, gm: &FiniteGModule) -> serde_json::Value {
        let n = gm.order();
        let mut map = BTreeMap::new();
        for (i, v) in self.table.iter().enumerate() {
            let key = tuple_of(n, self.arity, i)
                .iter()
                .map(|&g| gm.group.elements()[g].to_cycle_string())
                .collect::<Vec<_>>()
                .join(",");
            map.insert(key, v.clone());
        }
        serde_json::to_value(CochainJson { arity: self.arity, values: map }).expect("serializable")
    }

    pub fn from_json(gm: &FiniteGModule, v: &serde_json::Value) -> Result<Cochain> {
        let cj: CochainJson = serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let n = gm.order();
        let mut table = vec![None; n.pow(cj.arity as u32)];
        for (k, val) in cj.values {
            let idx: Vec<usize> = if cj.arity == 0 {
                vec![]
            } else {
                split_tuple(&k)
                    .iter()
                    .map(|s| {
                        let p = Perm::parse_cycles(gm.group.degree(), s)?;
                        gm.group.index_of(&p).ok_or_else(|| Error::InvalidInput(format!("{s} not in group")))
                    })
                    .collect::<Result<_>>()?
            };
            if idx.len() != cj.arity || val.len() != gm.module.rank() {
                return invalid("cochain entry has the wrong shape");
            }
            table[tuple_index(n, &idx)] = Some(val);
        }
        let table = table
            .into_iter()
            .map(|e| e.ok_or_else(|| Error::InvalidInput("cochain is not total".into())))
            .collect::<Result<_>>()?;
        Ok(Cochain { arity: cj.arity, table })
    }
}

fn split_tuple(s: &str) -> Vec<String> {
    // split on commas outside parentheses
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch)
            }
            ')' => {
                depth -= 1;
                cur.push(ch)
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}

#[derive(Serialize, Deserialize)]
struct CochainJson {
    arity: usize,
    values: BTreeMap<String, Elem>,
}
