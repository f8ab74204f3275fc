//! Closed-form generating functions as sums of `h` terms, and extraction of
//! integral tables from them.

use num_traits::{One, Zero};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::group::{group_table, GroupName};
use crate::hkernel::{expand_h_sum, HTerm, Phase};
use crate::rational::{int, rat, Rational};
use crate::roots::{positive_roots_oriented, ChainOrientation, RootSystemData, RootType};
use crate::series::{exponents_of_degree, MultiSeries};
use crate::table::HurwitzTable;

pub type CycSeries = MultiSeries<CycNumber>;

pub const S4_SECTION_VARIABLES: [&str; 2] = ["sigma", "zeta"];

fn q(n: i64, d: i64) -> CycNumber {
    CycNumber::from_rational(rat(n, d))
}

fn term(weight: Rational, theta: (i64, i64), form: Vec<CycNumber>) -> HTerm {
    HTerm::new(weight, Phase::from_ratio(theta.0, theta.1), form)
}

/// Series variables of a group's potential: its nontrivial class tokens.
pub fn variables(g: GroupName) -> Vec<&'static str> {
    group_table(g).nontrivial_tokens()
}

pub fn explicit_terms(g: GroupName) -> Result<Vec<HTerm>> {
    match g {
        GroupName::Z2xZ2 => {
            let mut terms: Vec<HTerm> = [[1, 1, 1], [-1, 1, -1], [1, -1, -1], [-1, -1, 1]]
                .iter()
                .map(|signs| term(int(1), (-1, 2), signs.iter().map(|&s| q(s, 2)).collect()))
                .collect();
            for i in 0..3 {
                let mut form = vec![CycNumber::zero(); 3];
                form[i] = CycNumber::one();
                terms.push(term(rat(1, 2), (0, 1), form));
            }
            Ok(terms)
        }
        GroupName::A4 => {
            let s = CycNumber::sqrt3().scale(&rat(1, 3));
            let w = CycNumber::omega();
            let wb = w.conj();
            let pairs = [(CycNumber::one(), CycNumber::one()), (w.clone(), wb.clone()), (wb, w)];
            let mut terms = Vec::new();
            for (a, b) in &pairs {
                let (a, b) = (&s * a, &s * b);
                terms.push(term(int(1), (-5, 6), vec![a.clone(), b.clone(), q(1, 2)]));
                terms.push(term(int(2), (-1, 3), vec![a.clone(), b.clone(), CycNumber::zero()]));
                terms.push(term(int(1), (1, 6), vec![a, b, q(-1, 2)]));
            }
            terms.push(term(int(4), (1, 2), vec![CycNumber::zero(), CycNumber::zero(), q(1, 2)]));
            terms.push(term(rat(1, 2), (0, 1), vec![CycNumber::zero(), CycNumber::zero(), CycNumber::one()]));
            Ok(terms)
        }
        GroupName::S4 => Err(Error::UnsupportedGroup(g.to_string())),
    }
}

pub fn build_explicit(g: GroupName, order: u32) -> Result<CycSeries> {
    expand_h_sum(&explicit_terms(g)?, &variables(g), order)
}

fn root_system_for(g: GroupName, orientation: ChainOrientation) -> Result<RootSystemData> {
    match g {
        GroupName::Z2xZ2 => Ok(positive_roots_oriented(RootType::D4, orientation)),
        GroupName::A4 => Ok(positive_roots_oriented(RootType::E6, orientation)),
        GroupName::S4 => Err(Error::UnsupportedGroup(g.to_string())),
    }
}

/// One `h` term per positive root: phase `1 + sum_rho a^rho 2 dim(rho)/|G|`
/// and linear form `sum_rho a^rho sum_i L[i][rho] x_i`, weight one half.
pub fn theorem1_terms_oriented(g: GroupName, orientation: ChainOrientation) -> Result<Vec<HTerm>> {
    let data = group_table(g);
    let l = data.l_matrix()?;
    let rs = root_system_for(g, orientation)?;
    let dims: Vec<u32> = data.irreps[1..].iter().map(|r| r.dim).collect();
    let mut terms = Vec::new();
    for alpha in &rs.positive_roots {
        let w = rs.white_coordinates(alpha)?;
        let mut theta = Rational::one();
        for (a, d) in w.iter().zip(&dims) {
            theta += rat(2 * a * *d as i64, data.order() as i64);
        }
        let form: Vec<CycNumber> = l
            .iter()
            .map(|row| {
                let mut acc = CycNumber::zero();
                for (a, entry) in w.iter().zip(row) {
                    acc += entry.scale(&int(*a));
                }
                acc
            })
            .collect();
        terms.push(HTerm::new(rat(1, 2), Phase::new(theta).reduced(), form));
    }
    Ok(terms)
}

pub fn theorem1_terms(g: GroupName) -> Result<Vec<HTerm>> {
    theorem1_terms_oriented(g, ChainOrientation::FirstEnd)
}

pub fn build_theorem1_oriented(g: GroupName, order: u32, orientation: ChainOrientation) -> Result<CycSeries> {
    expand_h_sum(&theorem1_terms_oriented(g, orientation)?, &variables(g), order)
}

pub fn build_theorem1(g: GroupName, order: u32) -> Result<CycSeries> {
    build_theorem1_oriented(g, order, ChainOrientation::FirstEnd)
}

/// Chain orientations whose root-system expansion equals the explicit formula.
pub fn matching_orientations(g: GroupName, order: u32) -> Result<Vec<ChainOrientation>> {
    let explicit = build_explicit(g, order)?;
    let mut out = Vec::new();
    for o in [ChainOrientation::FirstEnd, ChainOrientation::LastEnd] {
        if build_theorem1_oriented(g, order, o)? == explicit {
            out.push(o);
        }
    }
    Ok(out)
}

/// The five terms of `K(scale * u, v)`.
pub fn k_terms(u_scale: i64) -> Vec<HTerm> {
    let u = CycNumber::sqrt3().scale(&rat(u_scale, 3));
    let zero = CycNumber::zero();
    vec![
        term(int(1), (-5, 6), vec![u.clone(), q(1, 2)]),
        term(int(2), (-1, 3), vec![u.clone(), zero.clone()]),
        term(int(1), (1, 6), vec![u, q(-1, 2)]),
        term(int(2), (1, 2), vec![zero.clone(), q(1, 2)]),
        term(rat(2, 3), (3, 2), vec![zero, q(1, 2)]),
    ]
}

pub fn s4_section_terms() -> Vec<HTerm> {
    let mut terms: Vec<HTerm> = k_terms(2)
        .into_iter()
        .map(|mut t| {
            t.weight *= rat(1, 2);
            t
        })
        .collect();
    terms.extend(k_terms(-1));
    terms
}

/// `T(u, v) = F_S4(0, u, 0, v) = K(2u, v)/2 + K(-u, v)` in the variables `(sigma, zeta)`.
pub fn build_s4_section(order: u32) -> Result<CycSeries> {
    expand_h_sum(&s4_section_terms(), &S4_SECTION_VARIABLES, order)
}

/// `h(2x/sqrt3 - 2pi/3)/8 + 2h(x/sqrt3 - pi/3)` in the variable `sigma`.
pub fn s4_sigma_two_term(order: u32) -> Result<CycSeries> {
    let s = CycNumber::sqrt3().scale(&rat(1, 3));
    let terms = vec![term(rat(1, 8), (-2, 3), vec![s.scale(&int(2))]), term(int(2), (-1, 3), vec![s])];
    expand_h_sum(&terms, &["sigma"], order)
}

/// `T(x, 0)` reduced with the half-angle identity:
/// `h(4y - 2pi/3)/8 + h(2y - pi/3) + h(2y + 2pi/3)/4 + 2h(y + pi/3)` with `y = x/sqrt3`.
pub fn s4_sigma_four_term(order: u32) -> Result<CycSeries> {
    let y = CycNumber::sqrt3().scale(&rat(1, 3));
    let terms = vec![
        term(rat(1, 8), (-2, 3), vec![y.scale(&int(4))]),
        term(int(1), (-1, 3), vec![y.scale(&int(2))]),
        term(rat(1, 4), (2, 3), vec![y.scale(&int(2))]),
        term(int(2), (1, 3), vec![y]),
    ];
    expand_h_sum(&terms, &["sigma"], order)
}

/// Both sides of `h(3u)/9 = h(u) + h(u + 2pi/3) + h(u - 2pi/3)` and
/// `h(2u)/4 = h(u + pi/2) + h(u - pi/2)` in the variable `u`.
pub fn trig_identities(order: u32) -> Result<[(CycSeries, CycSeries); 2]> {
    let u = |k: i64| vec![CycNumber::from_int(k)];
    let side = |terms: Vec<HTerm>| expand_h_sum(&terms, &["u"], order);
    let triple = (
        side(vec![term(rat(1, 9), (0, 1), u(3))])?,
        side(vec![term(int(1), (0, 1), u(1)), term(int(1), (2, 3), u(1)), term(int(1), (-2, 3), u(1))])?,
    );
    let double = (
        side(vec![term(rat(1, 4), (0, 1), u(2))])?,
        side(vec![term(int(1), (1, 2), u(1)), term(int(1), (-1, 2), u(1))])?,
    );
    Ok([triple, double])
}

/// A restriction of one potential compared with a multiple of another.
pub struct Specialization {
    pub name: &'static str,
    pub lhs: CycSeries,
    pub rhs: CycSeries,
}

/// Diagonal and coordinate restrictions relating the three groups, each as
/// a pair of series in one variable `x`:
/// `3 F_A4(0,0,x) = F_Z2Z2(x,x,x)`, `F_A4(x,x,0) = 2 F_S4(0,x,0,0)`,
/// `F_S4(0,0,0,x) = F_Z2Z2(x,x,x)/6`, and `F_S4(0,x,0,0)` against the two-term
/// and four-term closed forms.
pub fn specializations(order: u32) -> Result<Vec<Specialization>> {
    let x = ["x"];
    let z2z2 = build_explicit(GroupName::Z2xZ2, order)?;
    let a4 = build_explicit(GroupName::A4, order)?;
    let section = build_s4_section(order)?;
    let z_diag = specialize(&z2z2, &assignment(&[&[1], &[1], &[1]]), &x)?;
    let a4_zeta = specialize(&a4, &assignment(&[&[0], &[0], &[1]]), &x)?;
    let a4_sigma = specialize(&a4, &assignment(&[&[1], &[1], &[0]]), &x)?;
    let s4_sigma = specialize(&section, &assignment(&[&[1], &[0]]), &x)?;
    let s4_zeta = specialize(&section, &assignment(&[&[0], &[1]]), &x)?;
    let rename = |s: CycSeries| specialize(&s, &assignment(&[&[1]]), &x);
    Ok(vec![
        Specialization { name: "3 F_A4(0,0,x) = F_Z2Z2(x,x,x)", lhs: a4_zeta.scale(&int(3)), rhs: z_diag.clone() },
        Specialization { name: "F_A4(x,x,0) = 2 F_S4(0,x,0,0)", lhs: a4_sigma, rhs: s4_sigma.scale(&int(2)) },
        Specialization { name: "F_S4(0,0,0,x) = F_Z2Z2(x,x,x)/6", lhs: s4_zeta, rhs: z_diag.scale(&rat(1, 6)) },
        Specialization {
            name: "F_S4(0,x,0,0) = h(2x/sqrt3 - 2pi/3)/8 + 2h(x/sqrt3 - pi/3)",
            lhs: s4_sigma.clone(),
            rhs: rename(s4_sigma_two_term(order)?)?,
        },
        Specialization {
            name: "F_S4(0,x,0,0) = h(4y - 2pi/3)/8 + h(2y - pi/3) + h(2y + 2pi/3)/4 + 2h(y + pi/3), y = x/sqrt3",
            lhs: s4_sigma,
            rhs: rename(s4_sigma_four_term(order)?)?,
        },
    ])
}

/// Linear specialization of a potential; `assignment[i][j]` is the
/// coefficient of new variable `j` in old variable `i`.
pub fn specialize<S: AsRef<str>>(
    s: &CycSeries,
    assignment: &[Vec<CycNumber>],
    new_variables: &[S],
) -> Result<CycSeries> {
    s.linear_substitute(assignment, new_variables)
}

/// Assignment matrix from integer coefficients.
pub fn assignment(rows: &[&[i64]]) -> Vec<Vec<CycNumber>> {
    rows.iter().map(|r| r.iter().map(|&k| CycNumber::from_int(k)).collect()).collect()
}

/// Integrals of a series whose variables are class tokens of `g`.
pub fn extract_table(s: &CycSeries, g: GroupName) -> Result<HurwitzTable> {
    let data = group_table(g);
    let slots: Vec<usize> = s
        .variables()
        .iter()
        .map(|v| data.class_index(v).and_then(|i| if i == 0 { Err(Error::UnknownClass(v.clone())) } else { Ok(i - 1) }))
        .collect::<Result<_>>()?;
    let mut table = HurwitzTable::new(g, s.order());
    for d in 3..=s.order() {
        for e in exponents_of_degree(slots.len(), d) {
            let value = s.integral_coefficient(&e)?;
            let mut full = vec![0; data.num_classes() - 1];
            for (slot, k) in slots.iter().zip(&e) {
                full[*slot] = *k;
            }
            if data.monodromy_vanishes(&full) && !value.is_zero() {
                return Err(Error::MonodromyViolation { exponents: full, value: value.to_string() });
            }
            table.insert(full, value);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integral(s: &CycSeries, e: &[u32]) -> Rational {
        s.integral_coefficient(e).unwrap()
    }

    #[test]
    fn explicit_z2z2_values() {
        let f = build_explicit(GroupName::Z2xZ2, 4).unwrap();
        assert_eq!(integral(&f, &[1, 1, 1]), rat(1, 4));
        assert_eq!(integral(&f, &[2, 2, 0]), rat(-1, 8));
        assert_eq!(integral(&f, &[4, 0, 0]), rat(-1, 4));
        assert_eq!(integral(&f, &[2, 1, 0]), int(0));
    }

    #[test]
    fn explicit_a4_values() {
        let f = build_explicit(GroupName::A4, 3).unwrap();
        assert_eq!(integral(&f, &[3, 0, 0]), rat(4, 3));
        assert_eq!(integral(&f, &[0, 3, 0]), rat(4, 3));
        assert_eq!(integral(&f, &[1, 1, 1]), int(1));
        assert_eq!(integral(&f, &[0, 0, 3]), rat(1, 2));
    }

    // One check per displayed summand: the cubic contribution of each term alone.
    #[test]
    fn explicit_a4_summands() {
        let terms = explicit_terms(GroupName::A4).unwrap();
        assert_eq!(terms.len(), 11);
        let vars = variables(GroupName::A4);
        let cubic = |t: &HTerm| expand_h_sum(std::slice::from_ref(t), &vars, 3).unwrap();
        // h'''(-5pi/6) = tan(5pi/12)/2 = (2 + sqrt3)/2
        let c = cubic(&terms[0]);
        let expected =
            (CycNumber::from_int(2) + CycNumber::sqrt3()).scale(&rat(1, 2)) * CycNumber::from_rational(rat(1, 48));
        assert_eq!(c.coeff(&[0, 0, 3]), expected);
        // 2h(. - pi/3): h''' = tan(pi/6)/2, no x3 dependence
        let c = cubic(&terms[1]);
        assert_eq!(c.coeff(&[0, 0, 3]), CycNumber::zero());
        assert_eq!(c.coeff(&[3, 0, 0]), q(1, 54));
        // 4h(x3/2 + pi/2): h'''(pi/2) = -1/2, coefficient 4 * (-1/2) / 8 / 6
        let c = cubic(&terms[9]);
        assert_eq!(c.coeff(&[0, 0, 3]), q(-1, 24));
        // h(x3)/2 has no cubic term
        assert!(cubic(&terms[10]).terms().is_empty());
    }

    #[test]
    fn z2z2_summands() {
        let terms = explicit_terms(GroupName::Z2xZ2).unwrap();
        assert_eq!(terms.len(), 7);
        let vars = variables(GroupName::Z2xZ2);
        for t in &terms[..4] {
            let c = expand_h_sum(std::slice::from_ref(t), &vars, 3).unwrap();
            // h'''(-pi/2) (1/2)^3 times the sign product, and the product of signs is +1
            assert_eq!(c.coeff(&[1, 1, 1]), q(1, 16));
        }
        for t in &terms[4..] {
            assert!(expand_h_sum(std::slice::from_ref(t), &vars, 3).unwrap().terms().is_empty());
        }
    }

    #[test]
    fn zero_white_roots_contribute_nothing() {
        let terms = theorem1_terms(GroupName::Z2xZ2).unwrap();
        assert_eq!(terms.len(), 12);
        let silent: Vec<&HTerm> = terms.iter().filter(|t| t.linear_form.iter().all(Zero::is_zero)).collect();
        assert_eq!(silent.len(), 1);
        assert_eq!(silent[0].phase, Phase::from_ratio(1, 1));
        assert!(expand_h_sum(&[silent[0].clone()], &variables(GroupName::Z2xZ2), 6).unwrap().terms().is_empty());
    }

    #[test]
    fn s4_section_values() {
        let t = build_s4_section(3).unwrap();
        assert_eq!(integral(&t, &[2, 1]), int(1));
        assert_eq!(integral(&t, &[3, 0]), rat(4, 3));
        assert_eq!(integral(&t, &[1, 2]), int(0));
        assert_eq!(integral(&t, &[0, 3]), rat(1, 4));
    }

    #[test]
    fn extraction_checks_vanishing() {
        let t = extract_table(&build_explicit(GroupName::A4, 6).unwrap(), GroupName::A4).unwrap();
        assert_eq!(t.get(&[1, 1, 1]), Some(&int(1)));
        assert_eq!(t.get(&[2, 0, 1]), Some(&int(0)));
        let s4 = extract_table(&build_s4_section(4).unwrap(), GroupName::S4).unwrap();
        assert_eq!(s4.get(&[0, 2, 0, 1]), Some(&int(1)));
    }
}
