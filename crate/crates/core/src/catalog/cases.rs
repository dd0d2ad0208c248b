//! Bracket tables of the sixteen Einstein cases.
//!
//! Coefficients are written in the native basis of each case: pseudo-
//! orthonormal with `e_3` time-like for cases 1–11, and the null-pair basis
//! `g(e_3, e_4) = 1` for cases 12–16.

use super::{Bracket, CaseDefinition, MetricKind};

fn br(i: usize, j: usize, coeffs: [&str; 4]) -> Bracket {
    Bracket::new(i, j, coeffs)
}

pub(super) fn definitions() -> Vec<CaseDefinition> {
    use MetricKind::{Lorentz, NullPair};
    vec![
        CaseDefinition::new(1, "a1", Lorentz)
            .brackets(vec![
                br(1, 2, ["eps*A", "0", "0", "0"]),
                br(1, 3, ["A", "0", "0", "0"]),
                br(1, 4, ["del*A", "0", "0", "0"]),
                br(3, 4, ["0", "-2*A*del*eps", "2*A*del", "0"]),
            ])
            .witnesses(&["A=1, eps=1, del=1", "A=2, eps=1, del=-1"]),
        CaseDefinition::new(2, "a1", Lorentz)
            .brackets(vec![
                br(1, 2, ["eps*sqrt(A^2 - B^2)/2", "0", "0", "0"]),
                br(1, 3, ["-eps*del*sqrt(A^2 - B^2)/2", "0", "0", "0"]),
                br(1, 4, ["(del*A + B)/2", "0", "0", "0"]),
                br(2, 4, ["0", "B", "B*del", "0"]),
                br(3, 4, ["0", "A", "A*del", "0"]),
            ])
            .witnesses(&["A=5, B=3, eps=-1, del=1"]),
        CaseDefinition::new(3, "a1", Lorentz)
            .brackets(vec![
                br(1, 2, ["eps*A*sqrt(A^2 - B^2)/B", "0", "0", "0"]),
                br(1, 3, ["eps*sqrt(A^2 - B^2)", "0", "0", "0"]),
                br(2, 4, ["0", "B", "-A", "0"]),
                br(3, 4, ["0", "A", "-A^2/B", "0"]),
            ])
            .witnesses(&["A=5, B=3, eps=1"]),
        CaseDefinition::new(4, "a1", Lorentz)
            .brackets(vec![
                br(1, 2, ["eps*sqrt(A^2 - B^2)", "B", "0", "0"]),
                br(3, 4, ["0", "0", "A", "0"]),
            ])
            .witnesses(&["A=5, B=3, eps=1"]),
        CaseDefinition::new(5, "a2", Lorentz)
            .brackets(vec![
                br(1, 4, ["-(A + B)", "0", "0", "0"]),
                br(2, 4, ["0", "B", "-eps*sqrt(A^2 + A*B + B^2)", "0"]),
                br(3, 4, ["0", "eps*sqrt(A^2 + A*B + B^2)", "A", "0"]),
            ])
            .witnesses(&["A=3, B=5, eps=1"]),
        CaseDefinition::new(6, "a2", Lorentz)
            .brackets(vec![
                br(1, 4, ["-2*A", "0", "0", "0"]),
                br(2, 4, ["0", "-5*A", "6*eps*A", "0"]),
                br(3, 4, ["0", "0", "A", "0"]),
            ])
            .witnesses(&["A=1, eps=1"]),
        CaseDefinition::new(7, "a2", Lorentz)
            .brackets(vec![
                br(1, 4, ["A", "0", "0", "0"]),
                br(2, 4, ["0", "A", "B", "0"]),
                br(3, 4, ["0", "B", "A", "0"]),
            ])
            .witnesses(&["A=1, B=10", "A=2, B=1"]),
        CaseDefinition::new(8, "a2", Lorentz)
            .brackets(vec![
                br(1, 4, ["eps*(A + B)/3", "0", "0", "0"]),
                br(2, 4, ["0", "eps*(5*B - A)/6", "B", "0"]),
                br(3, 4, ["0", "A", "eps*(5*A - B)/6", "0"]),
            ])
            .witnesses(&["A=1, B=2, eps=-1"]),
        CaseDefinition::new(9, "a2", Lorentz)
            .brackets(vec![
                br(1, 4, ["5*A/2", "0", "3*eps*A", "0"]),
                br(2, 4, ["0", "A", "0", "0"]),
                br(3, 4, ["0", "0", "-A/2", "0"]),
            ])
            .witnesses(&["A=1, eps=1"]),
        CaseDefinition::new(10, "a2", Lorentz)
            .brackets(vec![
                br(1, 4, ["A", "eps*sqrt(B^2 - A^2 - C^2 - A*C)", "0", "0"]),
                br(
                    2,
                    4,
                    ["eps*sqrt(B^2 - A^2 - C^2 - A*C)", "-(A + C)", "-B", "0"],
                ),
                br(3, 4, ["0", "B", "C", "0"]),
            ])
            .witnesses(&["A=1, B=2, C=1, eps=1", "A=0, B=5, C=3, eps=1"]),
        CaseDefinition::new(11, "a2", Lorentz)
            .brackets(vec![
                br(1, 4, ["-2*eps*sqrt(2)*A/3", "0", "del*A", "0"]),
                br(2, 4, ["0", "eps*sqrt(2)*A/3", "0", "0"]),
                br(3, 4, ["0", "A", "-eps*sqrt(2)*A/6", "0"]),
            ])
            .witnesses(&["A=3, eps=-1, del=-1"]),
        CaseDefinition::new(12, "c1", NullPair)
            .brackets(vec![
                br(1, 2, ["0", "0", "eps*(A + B)", "0"]),
                br(1, 4, ["C", "A", "D", "0"]),
                br(2, 4, ["B", "0", "E", "0"]),
                br(3, 4, ["0", "0", "C", "0"]),
            ])
            .printed(
                vec![
                    br(1, 2, ["0", "0", "eps*(A + B)", "0"]),
                    br(1, 4, ["C", "B", "D", "0"]),
                    br(2, 4, ["B", "0", "E", "0"]),
                    br(3, 4, ["0", "0", "C", "0"]),
                ],
                "the printed table has [e1,e4] = Ce1 + Be2 + De3, which is not Einstein \
                 unless A = B; with the e2-coefficient A the metric is Ricci-flat for all \
                 parameters and reproduces every stated result for this case",
            )
            .witnesses(&["A=1, B=2, C=1, D=1, E=1, eps=1"]),
        CaseDefinition::new(13, "c1", NullPair)
            .brackets(vec![
                br(1, 2, ["0", "0", "B", "0"]),
                br(1, 4, ["((C + D)^2 - B^2)/(4*A)", "D", "F", "0"]),
                br(2, 4, ["C", "A", "E", "0"]),
                br(3, 4, ["0", "0", "((C + D)^2 - B^2 + 4*A^2)/(4*A)", "0"]),
            ])
            .witnesses(&["A=1, B=1, C=1, D=1, E=0, F=0"]),
        CaseDefinition::new(14, "c1", NullPair)
            .brackets(vec![
                br(1, 2, ["0", "0", "eps*sqrt((A + D)^2 + 4*B^2)", "0"]),
                br(1, 4, ["-B", "D", "E", "0"]),
                br(2, 4, ["A", "B", "C", "0"]),
            ])
            .witnesses(&[
                "A=1, B=0, C=0, D=1, E=0, eps=1",
                "A=3, B=2, C=1, D=0, E=1, eps=1",
            ]),
        CaseDefinition::new(15, "c2", NullPair)
            .brackets(vec![
                br(1, 4, ["0", "A", "B", "0"]),
                br(2, 4, ["-A", "0", "C", "0"]),
            ])
            .printed(
                vec![
                    br(1, 2, ["0", "A", "B", "0"]),
                    br(2, 4, ["-A", "0", "C", "0"]),
                ],
                "the printed table has [e1,e2] = Ae2 + Be3, which violates the Jacobi \
                 identity and leaves span{e1,e2,e3} non-abelian; reading it as [e1,e4] \
                 reproduces the stated connection table for this case",
            )
            .witnesses(&["A=1, B=2, C=3"]),
        CaseDefinition::new(16, "c2", NullPair)
            .brackets(vec![
                br(1, 4, ["A", "B", "C", "0"]),
                br(2, 4, ["D", "E", "F", "0"]),
                br(
                    3,
                    4,
                    ["0", "0", "((B + D)^2 + 2*(A^2 + E^2))/(2*(E + A))", "0"],
                ),
            ])
            .witnesses(&["A=1, B=1, C=0, D=1, E=1, F=0"]),
    ]
}
