use crate::error::{invalid, Result};
use crate::permstruct::{FiniteAbelian, GroupSpec, Perm, PermGroup};

use super::{augmentation_module, permutation_module, FiniteGModule};

/// Parses `Cn`, `Sn`, `An`, `Dn` (order 2n), `V4`, or a degree plus generators
/// such as `4:(0 1 2 3),(0 2)`.
pub fn named_group(name: &str) -> Result<PermGroup> {
    let s = name.trim();
    if let Some((deg, gens)) = s.split_once(':') {
        let degree: usize = deg.trim().parse().map_err(|_| crate::Error::InvalidInput(format!("bad degree in '{s}'")))?;
        let generators = split_generators(gens);
        return GroupSpec { degree, generators }.build();
    }
    let gen = |n: usize, gs: &[&str]| -> Result<PermGroup> {
        let gens = gs.iter().map(|g| Perm::parse_cycles(n, g)).collect::<Result<Vec<_>>>()?;
        PermGroup::generate(n, gens)
    };
    if s == "V4" {
        return gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
    }
    if s == "1" || s == "C1" {
        return Ok(PermGroup::trivial(1));
    }
    let (kind, n) = s.split_at(1);
    let n: usize = n.parse().map_err(|_| crate::Error::InvalidInput(format!("unknown group '{s}'")))?;
    match kind {
        "C" if (1..=12).contains(&n) => Ok(PermGroup::cyclic(n)),
        "S" if (1..=6).contains(&n) => PermGroup::symmetric(n),
        "A" if (3..=6).contains(&n) => {
            let sym = PermGroup::symmetric(n)?;
            let even: Vec<Perm> = sym.elements().iter().filter(|p| p.sign() > 0).cloned().collect();
            Ok(PermGroup::from_closed_elements(n, even))
        }
        "D" if (3..=8).contains(&n) => {
            let rot = Perm::new((0..n).map(|i| (i + 1) % n).collect())?;
            let refl = Perm::new((0..n).map(|i| (n - i) % n).collect())?;
            PermGroup::generate(n, vec![rot, refl])
        }
        _ => invalid(format!("unknown group '{s}'")),
    }
}

fn split_generators(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == ',' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Parses `C4`, `C2xC2`, `C2xC4`, ...
pub fn named_abelian(name: &str) -> Result<FiniteAbelian> {
    let orders = name
        .trim()
        .split(['x', '*'])
        .map(|c| c.trim().strip_prefix('C').and_then(|n| n.parse::<u32>().ok()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| crate::Error::InvalidInput(format!("unknown module '{name}'")))?;
    if orders.iter().any(|&n| n == 1) {
        return Ok(FiniteAbelian::trivial());
    }
    FiniteAbelian::new(orders)
}

/// A module over a named group. Actions: `triv`; `sign` (odd permutations act
/// by -1; `inversion` is a synonym); `perm` (coordinate permutation on `C2^n`,
/// or the sum-zero submodule when the rank is one less than the degree).
pub fn named_module(group: &str, module: &str, action: &str) -> Result<FiniteGModule> {
    let g = named_group(group)?;
    let m = named_abelian(module)?;
    match action {
        "triv" | "trivial" => Ok(FiniteGModule::trivial_action(g, m)),
        "sign" | "inversion" => Ok(FiniteGModule::via_sign(g, m, |p| p.sign() < 0)),
        "perm" | "permutation" => {
            let all_two = m.exponent() == 2 || m.order() == 1;
            if all_two && m.rank() == g.degree() {
                Ok(permutation_module(&g))
            } else if all_two && m.rank() + 1 == g.degree() {
                Ok(augmentation_module(&g))
            } else {
                invalid(format!("no permutation action of {group} on {module}"))
            }
        }
        _ => invalid(format!("unknown action '{action}'")),
    }
}
