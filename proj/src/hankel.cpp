#include "knots/hankel.hpp"

#include <cmath>

namespace knots {

namespace {

const Complex I(0.0, 1.0);

bool is_integer(double nu) { return nu == std::nearbyint(nu); }

// sin(pi x) with argument reduction; snaps to an exact zero when x sits on an
// integer up to accumulated rounding, so rational orders hit the quantization
// condition exactly.
double sin_pi(double x) {
    const double n = std::nearbyint(x);
    double r = x - n;
    if (std::abs(r) <= 4e-13 * std::max(1.0, std::abs(x))) return 0.0;
    const double s = std::sin(pi * r);
    return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

// One-sided half-turn decomposition: theta = theta_p + m*pi, theta_p in [-pi/2, pi/2).
std::pair<SurfacePoint, int> half_turn_split(const SurfacePoint& z) {
    int m = static_cast<int>(std::lround(z.theta / pi));
    double tp = z.theta - m * pi;
    if (tp >= 0.5 * pi) { tp -= pi; ++m; }
    if (tp < -0.5 * pi) { tp += pi; --m; }
    return {SurfacePoint{z.rho, tp}, m};
}

// Full large-|z| expansions of both kinds, summed to the smallest term.
// Valid on the principal plane |arg z| < pi where both expansions overlap.
HankelPair asymptotic_pair_one(double nu, const Complex& zc) {
    const Complex omega = zc - (0.5 * nu + 0.25) * pi;
    const Complex pref = std::sqrt(2.0 / (pi * zc));

    Complex sp(1.0), sm(1.0);   // sums for H1 / H2
    Complex fp(1.0), fm(1.0);   // running terms
    double last = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double num = 4.0 * nu * nu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        const Complex gp = I * num / (8.0 * k * zc);
        fp *= gp;
        fm *= -gp; // conj sign pattern: (-i)^k
        const double mag = std::abs(fp);
        if (mag > last) break; // divergence onset, stop at the smallest term
        sp += fp;
        sm += fm;
        last = mag;
        if (mag < 1e-18) break;
    }

    HankelPair out{};
    out.h1 = pref * std::exp(I * omega) * sp;
    out.h2 = pref * std::exp(-I * omega) * sm;
    return out;
}

HankelPair asymptotic_pair(double nu, const SurfacePoint& z) {
    const Complex zc = z.principal();
    HankelPair v = asymptotic_pair_one(nu, zc);
    HankelPair lower = asymptotic_pair_one(nu - 1.0, zc);
    v.dh1 = lower.h1 - (nu / zc) * v.h1;
    v.dh2 = lower.h2 - (nu / zc) * v.h2;
    return v;
}

HankelPair series_pair(double nu, const SurfacePoint& z) {
    const Complex zc = z.principal();
    auto combine = [&](double order) -> std::pair<Complex, Complex> {
        Complex jp = bessel_j_surface(order, z);
        Complex jm = bessel_j_surface(-order, z);
        double so = std::sin(pi * order);
        Complex eo = std::exp(I * (pi * order));
        Complex h1 = (jm - jp / eo) / (I * so);
        Complex h2 = (eo * jp - jm) / (I * so);
        return {h1, h2};
    };
    auto [h1, h2] = combine(nu);
    auto [l1, l2] = combine(nu - 1.0);
    HankelPair out{h1, h2, l1 - (nu / zc) * h1, l2 - (nu / zc) * h2};
    return out;
}

} // namespace

Complex bessel_j_surface(double nu, const SurfacePoint& z, int terms) {
    if (z.rho > series_cutoff)
        throw SeriesDomainError("|z| exceeds the ascending-series cutoff");
    const Complex w = -0.25 * z.principal() * z.principal(); // -(z/2)^2, single-valued
    Complex term = surface_power(scaled(z, 0.5), nu) / std::tgamma(nu + 1.0);
    // compensated summation: near the crossover the largest term exceeds the
    // sum by ~1e3 and naive accumulation costs the last two digits
    Complex sum = term, comp(0.0);
    for (int j = 0; j < terms; ++j) {
        term *= w / ((j + 1.0) * (nu + j + 1.0));
        const Complex y = term - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && j > 3) return sum;
    }
    return sum;
}

HankelValue hankel_principal(double nu, const SurfacePoint& z) {
    if (is_integer(nu)) throw IntegerOrderError(nu);
    if (!(std::abs(z.theta) < pi))
        throw ValidationError("hankel_principal requires the principal sheet |theta| < pi");
    HankelValue v{};
    v.order = nu;
    v.at = z;
    if (z.rho < series_crossover) {
        const double s = std::sin(pi * nu);
        const Complex epn = std::exp(I * (pi * nu));
        const Complex jp = bessel_j_surface(nu, z);
        const Complex jm = bessel_j_surface(-nu, z);
        v.h1 = (jm - jp / epn) / (I * s);
        v.h2 = (epn * jp - jm) / (I * s);
    } else {
        HankelPair p = asymptotic_pair_one(nu, z.principal());
        v.h1 = p.h1;
        v.h2 = p.h2;
    }
    return v;
}

HankelValue hankel_asymptotic(double nu, const SurfacePoint& z, int order) {
    if (z.rho < 10.0)
        throw AsymptoticDomainError("asymptotic form requires rho >= 10");
    if (order < 0 || order > 2)
        throw AsymptoticDomainError("supported correction orders are 0, 1, 2");
    if (!(std::abs(z.theta) < pi))
        throw AsymptoticDomainError("asymptotic form is stated on the principal sheet");

    const Complex zc = z.principal();
    const Complex omega = zc - (0.5 * nu + 0.25) * pi;
    const Complex pref = std::sqrt(2.0 / (pi * zc));
    Complex sp(1.0), sm(1.0), fp(1.0), fm(1.0);
    for (int k = 1; k <= order; ++k) {
        const double num = 4.0 * nu * nu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        const Complex g = I * num / (8.0 * k * zc);
        fp *= g;
        fm *= -g;
        sp += fp;
        sm += fm;
    }
    return HankelValue{pref * std::exp(I * omega) * sp, pref * std::exp(-I * omega) * sm, nu, z};
}

WindingMatrix winding_matrix(double nu, int m) {
    if (is_integer(nu)) throw IntegerOrderError(nu);
    const double s = sin_pi(nu);
    if (s == 0.0) throw IntegerOrderError(nu);
    const double sm = sin_pi(m * nu);
    WindingMatrix w{};
    w.a11 = -sin_pi((m - 1.0) * nu) / s;
    w.a12 = -std::exp(-I * (pi * nu)) * sm / s;
    w.a21 = std::exp(I * (pi * nu)) * sm / s;
    w.a22 = sin_pi((m + 1.0) * nu) / s;
    return w;
}

HankelValue continue_winding(double nu, int m, const HankelValue& at_principal) {
    WindingMatrix w = winding_matrix(nu, m);
    HankelValue out{};
    out.order = nu;
    out.at = SurfacePoint{at_principal.at.rho, at_principal.at.theta + m * pi};
    out.h1 = w.a11 * at_principal.h1 + w.a12 * at_principal.h2;
    out.h2 = w.a21 * at_principal.h1 + w.a22 * at_principal.h2;
    return out;
}

HankelValue hankel_on_surface(double nu, const SurfacePoint& z) {
    if (is_integer(nu)) throw IntegerOrderError(nu);
    auto [zp, m] = half_turn_split(z);
    HankelValue hp = hankel_principal(nu, zp);
    if (m == 0) {
        hp.at = z;
        return hp;
    }
    HankelValue out = continue_winding(nu, m, hp);
    out.at = z;
    return out;
}

std::pair<Complex, Complex> near_origin_basis(double ell, const SurfacePoint& z) {
    if (z.rho > 0.5)
        throw SeriesDomainError("near-origin basis requires rho <= 0.5");
    return {surface_power(z, ell + 1.0), surface_power(z, -ell)};
}

HankelPair hankel_pair_principal(double nu, const SurfacePoint& z) {
    if (!(std::abs(z.theta) < pi))
        throw ValidationError("hankel_pair_principal requires the principal sheet");
    if (is_integer(nu)) {
        if (z.rho < 10.0)
            throw AsymptoticDomainError("integer order is only evaluated asymptotically");
        return asymptotic_pair(nu, z);
    }
    if (z.rho < series_crossover) return series_pair(nu, z);
    return asymptotic_pair(nu, z);
}

double wronskian_residual(double nu, const SurfacePoint& z) {
    auto [zp, m] = half_turn_split(z);
    HankelPair p = hankel_pair_principal(nu, zp);
    Complex h1 = p.h1, h2 = p.h2, dh1 = p.dh1, dh2 = p.dh2;
    if (m != 0) {
        WindingMatrix w = winding_matrix(nu, m);
        h1 = w.a11 * p.h1 + w.a12 * p.h2;
        h2 = w.a21 * p.h1 + w.a22 * p.h2;
        // chain rule for the continued argument: d/dz picks up e^{-i m pi}
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        dh1 = sign * (w.a11 * p.dh1 + w.a12 * p.dh2);
        dh2 = sign * (w.a21 * p.dh1 + w.a22 * p.dh2);
    }
    const Complex zc = z.principal();
    const Complex expected = -4.0 * I / (pi * zc);
    return std::abs(h1 * dh2 - h2 * dh1 - expected) / std::abs(expected);
}

} // namespace knots
