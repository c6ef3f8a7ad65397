"""Small tour of the truncated-series arithmetic behind the m > 1 laws.

Shows the jet operations, the closed-form Taylor coefficients a_j of
sqrt(1 - e) about e = 0, and the right-boundary jets that seed the
solver.
"""

from edgedist import jet, painleve
from edgedist.jet import JetSeries


def main():
    a = JetSeries([1.0, 2.0, 3.0])
    b = JetSeries([2.0, -1.0, 0.5])
    print("a       =", a.coeffs)
    print("b       =", b.coeffs)
    print("a * b   =", (a * b).coeffs)
    print("exp(a)  =", jet.jet_exp(a).coeffs)
    print("sqrt(b) =", jet.jet_sqrt(b).coeffs)

    print("\ncoefficients a_j of sqrt(1 - e), two derivations:")
    by_jet = jet.aj_sequence(8, method="jet")
    by_rec = jet.aj_sequence(8, method="recursion")
    print("  j   closed form          recursion            |rel diff|")
    for j, (x, y) in enumerate(zip(by_jet, by_rec)):
        rel = abs(x - y) / max(abs(y), 1.0)
        print("  %d   %-18.12g   %-18.12g   %.1e" % (j, x, y, rel))

    print("\nright-boundary jets q_k(6) = binom(1/2, k) Ai(6):")
    qj, qpj = painleve.boundary_jet(6.0)
    print("  q  jet:", ["%.6e" % c for c in qj.coeffs])
    print("  q' jet:", ["%.6e" % c for c in qpj.coeffs])


if __name__ == "__main__":
    main()
