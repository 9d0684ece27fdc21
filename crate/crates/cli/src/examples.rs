//! Worked examples: degree sets of the affine SL(2,3) group and of two wreath products.

use std::collections::BTreeSet;
use std::fmt::Write;

use bpilab::chartab::{direct_product_table, wreath_c2_table};
use bpilab::corpus::{build_dihedral, build_frobenius, build_sl23_on_z3sq};
use bpilab::pichar::{bcd_sets, bpi_rows};
use bpilab::primes::pi_part;
use bpilab::{character_table, Error, PrimeSet, Result};
use serde_json::{json, Value};

pub const NAMES: [&str; 3] = ["paper-3.2", "paper-3.1-arith", "paper-ex1-arith"];

pub struct Outcome {
    pub text: String,
    pub doc: Value,
    pub holds: bool,
}

pub fn run(name: &str) -> Result<Outcome> {
    match name {
        "paper-3.2" => affine_degree_sets(),
        "paper-3.1-arith" => affine_wreath_arithmetic(),
        "paper-ex1-arith" => product_wreath_arithmetic(),
        _ => Err(Error::Input(format!("unknown example '{name}'; expected one of {}", NAMES.join(", ")))),
    }
}

fn fmt_set(s: &BTreeSet<u64>) -> String {
    let items: Vec<String> = s.iter().map(|d| d.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn pi(p: u64) -> PrimeSet {
    PrimeSet::single(p)
}

fn affine_degree_sets() -> Result<Outcome> {
    let g = build_sl23_on_z3sq().build()?;
    let cd = character_table(&g)?.cd_set();
    let (b3, b2) = bcd_sets(&g, &pi(3))?;
    let union: BTreeSet<u64> = b3.union(&b2).copied().collect();
    let expected = |v: &[u64]| v.iter().copied().collect::<BTreeSet<u64>>();
    let holds = cd == expected(&[1, 2, 3, 8]) && b3 == expected(&[1, 8]) && b2 == expected(&[1, 2, 3]);
    let mut text = String::new();
    writeln!(text, "G = SL(2,3):3^2, order {}", g.order()).unwrap();
    writeln!(text, "cd(G) = {}", fmt_set(&cd)).unwrap();
    writeln!(text, "Bcd_3(G) = {}", fmt_set(&b3)).unwrap();
    writeln!(text, "Bcd_2(G) = {}", fmt_set(&b2)).unwrap();
    writeln!(text, "cd(G) = Bcd_3(G) ∪ Bcd_2(G): {}", cd == union).unwrap();
    let doc = json!({
        "example": "paper-3.2",
        "order": g.order(),
        "cd": cd,
        "bcd_3": b3,
        "bcd_2": b2,
        "cd_is_union": cd == union,
        "holds": holds,
    });
    Ok(Outcome { text, doc, holds })
}

fn pair_products(s: &BTreeSet<u64>) -> BTreeSet<u64> {
    s.iter().flat_map(|a| s.iter().map(move |b| a * b)).collect()
}

fn affine_wreath_arithmetic() -> Result<Outcome> {
    let g = build_sl23_on_z3sq().build()?;
    let base = character_table(&g)?;
    let (b3, b2) = bcd_sets(&g, &pi(3))?;
    let (p3, p2) = (pair_products(&b3), pair_products(&b2));
    let mut text = String::new();
    let mut holds = true;
    let mut products = Vec::new();
    for n in [24u64, 48] {
        let in3 = p3.contains(&n);
        let in2 = p2.contains(&n);
        holds &= !in3 && !in2;
        writeln!(text, "{n}: product of two Bcd_3 degrees {in3}, of two Bcd_2 degrees {in2}").unwrap();
        products.push(json!({ "n": n, "bcd_3_product": in3, "bcd_2_product": in2 }));
    }
    let w = wreath_c2_table(&base)?;
    let rows3 = bpi_rows(&g, &pi(3))?;
    let rows2 = bpi_rows(&g, &pi(2))?;
    let degs = base.degrees();
    let mut witness = None;
    'search: for chi in w.irreducibles().into_iter().filter(|c| c.degree() == 48) {
        for &i in rows3.iter().filter(|&&i| degs[i] == 8) {
            for &j in rows2.iter().filter(|&&j| degs[j] == 3) {
                if w.wreath_base_multiplicity(&chi, i, j)? > 0 {
                    witness = Some((chi.index().unwrap_or(0), i, j));
                    break 'search;
                }
            }
        }
    }
    let in_cd = w.cd_set().contains(&48);
    holds &= in_cd && witness.is_some();
    writeln!(text, "Gamma = G wr C2, order {}, {} classes", w.order(), w.num_classes()).unwrap();
    writeln!(text, "48 in cd(Gamma): {in_cd}").unwrap();
    if let Some((x, i, j)) = witness {
        writeln!(text, "X.{} of Gamma lies over theta x eta with theta = X.{} (B_3, degree 8), eta = X.{} (B_2, degree 3)", x + 1, i + 1, j + 1)
            .unwrap();
    }
    let doc = json!({
        "example": "paper-3.1-arith",
        "bcd_3": b3,
        "bcd_2": b2,
        "products": products,
        "wreath_order": w.order(),
        "48_in_cd": in_cd,
        "witness": witness.map(|(x, i, j)| json!({ "gamma_row": x, "theta_row": i, "eta_row": j })),
        "holds": holds,
    });
    Ok(Outcome { text, doc, holds })
}

fn product_wreath_arithmetic() -> Result<Outcome> {
    let d8 = character_table(&build_dihedral(4).build()?)?;
    let f21 = character_table(&build_frobenius(7, 3)?.build()?)?;
    let gt = direct_product_table(&d8, &f21)?;
    let theta = d8.degrees().iter().position(|&d| d == 2).ok_or_else(|| Error::Invariant("no degree-2 character".into()))?;
    let eta = f21.degrees().iter().position(|&d| d == 3).ok_or_else(|| Error::Invariant("no degree-3 character".into()))?;
    let row_of = |i: usize, j: usize| -> Result<usize> {
        let mut row = Vec::new();
        for x in &d8.rows()[i] {
            for y in &f21.rows()[j] {
                row.push((x * y).lift(gt.exponent()));
            }
        }
        gt.row_index(&row).ok_or_else(|| Error::Invariant("product row missing".into()))
    };
    let (a, b) = (row_of(theta, 0)?, row_of(0, eta)?);
    let w = wreath_c2_table(&gt)?;
    let swap = w.num_classes() - gt.num_classes();
    let mut chi = None;
    for c in w.irreducibles() {
        if c.values()[swap..].iter().all(|v| v.is_zero()) && w.wreath_base_multiplicity(&c, a, b)? == 1 {
            chi = Some(c);
            break;
        }
    }
    let chi = chi.ok_or_else(|| Error::Invariant("no irreducible lies over the pair".into()))?;
    let two = pi(2);
    let d = chi.degree();
    let (dp, dq) = (pi_part(d, &two), d / pi_part(d, &two));
    let holds = d == 2 * d8.degrees()[theta] * f21.degrees()[eta] && dp > 2 && dq > 1;
    let mut text = String::new();
    writeln!(text, "G = D8 x (C7:C3), pi = {{2}}, Gamma = G wr C2 of order {}", w.order()).unwrap();
    writeln!(text, "theta of degree {}, eta of degree {}", d8.degrees()[theta], f21.degrees()[eta]).unwrap();
    writeln!(text, "chi = X.{} of Gamma, degree {d} = 2 * {} * {}", chi.index().unwrap_or(0) + 1, d8.degrees()[theta], f21.degrees()[eta])
        .unwrap();
    writeln!(text, "chi(1)_pi = {dp} > 2: {}", dp > 2).unwrap();
    writeln!(text, "chi(1)_pi' = {dq} > 1: {}", dq > 1).unwrap();
    let doc = json!({
        "example": "paper-ex1-arith",
        "wreath_order": w.order(),
        "theta_degree": d8.degrees()[theta],
        "eta_degree": f21.degrees()[eta],
        "degree": d,
        "pi_part": dp,
        "pi_prime_part": dq,
        "holds": holds,
    });
    Ok(Outcome { text, doc, holds })
}
