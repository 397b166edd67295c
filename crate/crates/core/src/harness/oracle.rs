//! Classical reference checks used to cross-examine the graded evaluators.
//!
//! Nothing here goes through implications or degree reports. The graded
//! checkers should agree with these predicates exactly where the theory
//! says they must: degree 1 versus the classical inequalities, and crisp
//! inputs versus plain set membership.

use crate::group::FiniteGroup;
use crate::ifs::IFSubset;
use crate::machine::Machine;

/// Closure and inverse inequalities on raw values.
pub fn classical_subgroup(g: &FiniteGroup, s: &IFSubset) -> bool {
    let (mu, nu) = (s.mu_values(), s.nu_values());
    for x in g.elements() {
        for y in g.elements() {
            let p = g.op(x, y);
            if mu[p] < mu[x].min(mu[y]) || nu[p] > nu[x].max(nu[y]) {
                return false;
            }
        }
        let i = g.inv(x);
        if mu[i] < mu[x] || nu[i] > nu[x] {
            return false;
        }
    }
    true
}

/// `μ` and `ν` are class functions of the two-sided products.
pub fn classical_normal(g: &FiniteGroup, s: &IFSubset) -> bool {
    g.elements().all(|x| {
        g.elements().all(|y| {
            let (xy, yx) = (g.op(x, y), g.op(y, x));
            s.mu(xy) == s.mu(yx) && s.nu(xy) == s.nu(yx)
        })
    })
}

pub fn machine_is_crisp(m: &Machine) -> bool {
    (0..m.alphabet().len()).all(|l| {
        m.a_matrix(l).values().iter().all(|v| v.is_crisp()) && m.b_matrix(l).values().iter().all(|v| v.is_crisp())
    })
}

/// Crisp semantics: a crisp subset is the pair of sets
/// `M = {x : μx = 1}` and `N = {x : νx = 1}`; crisp transitions are the
/// relations `A = 1` and `B = 1`.
pub mod crisp {
    use super::*;

    fn m(s: &IFSubset, x: usize) -> bool {
        s.mu(x).is_one()
    }

    fn n(s: &IFSubset, x: usize) -> bool {
        s.nu(x).is_one()
    }

    pub fn subgroup(g: &FiniteGroup, s: &IFSubset) -> bool {
        for x in g.elements() {
            for y in g.elements() {
                let p = g.op(x, y);
                if m(s, x) && m(s, y) && !m(s, p) {
                    return false;
                }
                if n(s, p) && !(n(s, x) || n(s, y)) {
                    return false;
                }
            }
            let i = g.inv(x);
            if (m(s, x) && !m(s, i)) || (n(s, i) && !n(s, x)) {
                return false;
            }
        }
        true
    }

    pub fn normal(g: &FiniteGroup, s: &IFSubset) -> bool {
        g.elements().all(|x| {
            g.elements().all(|y| {
                let (xy, yx) = (g.op(x, y), g.op(y, x));
                m(s, xy) == m(s, yx) && n(s, xy) == n(s, yx)
            })
        })
    }

    /// Some member forces the identity in; the identity being a
    /// nonmember forces every element out.
    pub fn identity(g: &FiniteGroup, s: &IFSubset) -> bool {
        let e = g.identity();
        let mu_ok = !g.elements().any(|x| m(s, x)) || m(s, e);
        let nu_ok = !n(s, e) || g.elements().all(|x| n(s, x));
        mu_ok && nu_ok
    }

    /// Forward closure of `M` and backward closure of `N` along letters.
    pub fn subsemi_transitions(mc: &Machine, s: &IFSubset) -> bool {
        let states = mc.states();
        for l in 0..mc.alphabet().len() {
            for alpha in 0..states {
                for beta in 0..states {
                    if mc.a(alpha, l, beta).is_one() && m(s, alpha) && !m(s, beta) {
                        return false;
                    }
                    if n(s, beta) && !(mc.b(alpha, l, beta).is_one() || n(s, alpha)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn subsemi(mc: &Machine, s: &IFSubset) -> bool {
        subgroup(mc.group(), s) && subsemi_transitions(mc, s)
    }

    pub fn kernel_transitions(mc: &Machine, s: &IFSubset) -> bool {
        let g = mc.group();
        for l in 0..mc.alphabet().len() {
            for alpha in g.elements() {
                for beta in g.elements() {
                    for gamma in g.elements() {
                        let d = g.op(alpha, g.inv(gamma));
                        for kappa in g.elements() {
                            let bk = g.op(beta, kappa);
                            let a_both = mc.a(bk, l, alpha).is_one() && mc.a(beta, l, gamma).is_one();
                            if a_both && m(s, kappa) && !m(s, d) {
                                return false;
                            }
                            let b_any = mc.b(bk, l, alpha).is_one() || mc.b(beta, l, gamma).is_one();
                            if n(s, d) && !(b_any || n(s, kappa)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn kernel(mc: &Machine, s: &IFSubset) -> bool {
        let g = mc.group();
        subgroup(g, s) && normal(g, s) && kernel_transitions(mc, s)
    }

    pub fn epsilon(mc: &Machine, s: &IFSubset) -> bool {
        let e = mc.group().identity();
        (0..mc.alphabet().len()).all(|l| {
            mc.group().elements().all(|alpha| {
                let fwd = !(mc.a(e, l, alpha).is_one() && m(s, e)) || m(s, alpha);
                let bwd = !n(s, alpha) || mc.b(e, l, alpha).is_one() || n(s, e);
                fwd && bwd
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    #[test]
    fn crisp_subgroups_of_z4() {
        let g = cyclic(4).unwrap();
        assert!(crisp::subgroup(&g, &IFSubset::crisp(4, &[0, 2])));
        assert!(!crisp::subgroup(&g, &IFSubset::crisp(4, &[0, 1])));
        assert!(classical_subgroup(&g, &IFSubset::crisp(4, &[0, 2])));
        assert!(!classical_subgroup(&g, &IFSubset::crisp(4, &[0, 1])));
    }

    #[test]
    fn crisp_identity_vacuous_on_empty_membership() {
        let g = cyclic(3).unwrap();
        assert!(crisp::identity(&g, &IFSubset::crisp(3, &[])));
        assert!(!crisp::identity(&g, &IFSubset::crisp(3, &[1])));
    }
}
