#pragma once

#include <optional>
#include <vector>

#include "knots/rational.hpp"

namespace knots {

/// One quantized bound state: winding N, label M, angular momentum
/// ell = (M-N)/(2N), order nu = ell + 1/2 = M/(2N). The coupling block
/// (dimension, partial_wave, gamma) is filled on demand.
struct SpectrumEntry {
    int winding;  // N >= 1
    int label;    // M >= 1, not a multiple of 2N
    Rational ell;
    Rational nu;
    bool ell_negative; // near-origin basis bookkeeping only; nu > 0 regardless
    std::optional<int> dimension;
    std::optional<int> partial_wave;
    std::optional<Rational> gamma;
};

struct DichotomyRow {
    int partial_wave;        // m
    Rational nu;             // m + (D-2)/2 at gamma = 0
    bool admissible;         // exists (N, M) passing the doublet condition
    std::optional<int> label_at_n1; // M for N = 1 when admissible
};

bool is_admissible(const Rational& nu, int N);

Rational allowed_ell(int N, int M);

Rational gamma_for(int D, int m, int N, int M);

std::vector<DichotomyRow> dichotomy(int D, const std::vector<int>& m_range);

std::vector<SpectrumEntry> enumerate_spectrum(int N, int M_max);

} // namespace knots
