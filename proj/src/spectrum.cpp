#include "knots/spectrum.hpp"

namespace knots {

bool is_admissible(const Rational& nu, int N) {
    if (N < 1) throw ValidationError("winding number N must be >= 1");
    Rational twice = Rational(2 * N) * nu;
    return twice.is_integer() && !nu.is_integer();
}

Rational allowed_ell(int N, int M) {
    if (N < 1) throw ValidationError("winding number N must be >= 1");
    if (M < 1) throw ValidationError("label M must be >= 1");
    if (M % (2 * N) == 0) throw ForbiddenLabelError(M, N);
    return Rational(M - N, 2 * N);
}

Rational gamma_for(int D, int m, int N, int M) {
    if (D < 1) throw ValidationError("dimension D must be >= 1");
    if (m < 0) throw ValidationError("partial wave m must be >= 0");
    if (N < 1) throw ValidationError("winding number N must be >= 1");
    if (M < 1) throw ValidationError("label M must be >= 1");
    if (M % (2 * N) == 0) throw ForbiddenLabelError(M, N);
    Rational nu(M, 2 * N);
    Rational offset = Rational(m) + Rational(D - 2, 2);
    return nu * nu - offset * offset;
}

std::vector<DichotomyRow> dichotomy(int D, const std::vector<int>& m_range) {
    if (D < 2) throw ValidationError("dichotomy report requires D >= 2");
    std::vector<DichotomyRow> rows;
    rows.reserve(m_range.size());
    for (int m : m_range) {
        if (m < 0) throw ValidationError("partial wave m must be >= 0");
        DichotomyRow row{};
        row.partial_wave = m;
        row.nu = Rational(m) + Rational(D - 2, 2); // gamma = 0 forces nu = ell + 1/2 here
        if (D % 2 == 1) {
            // odd D: nu is a positive half-integer, M = N (2m + D - 2) is never
            // a multiple of 2N, so every m is admissible
            row.admissible = true;
            row.label_at_n1 = 2 * m + D - 2;
        } else {
            // even D: nu is an integer, the doublet condition fails for every (N, M)
            row.admissible = false;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<SpectrumEntry> enumerate_spectrum(int N, int M_max) {
    if (N < 1) throw ValidationError("winding number N must be >= 1");
    if (M_max < 1) throw ValidationError("M_max must be >= 1");
    std::vector<SpectrumEntry> out;
    for (int M = 1; M <= M_max; ++M) {
        if (M % (2 * N) == 0) continue;
        SpectrumEntry e{};
        e.winding = N;
        e.label = M;
        e.ell = allowed_ell(N, M);
        e.nu = e.ell + Rational(1, 2);
        e.ell_negative = e.ell < Rational(0);
        out.push_back(e);
    }
    return out;
}

} // namespace knots
