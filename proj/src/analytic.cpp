#include "steklov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "steklov/numerics.hpp"

namespace steklov::analytic {

namespace {

void check_r0(double r0) {
    if (!(r0 > 0.0) || !(r0 < 1.0)) {
        throw std::invalid_argument("inner radius must lie in (0, 1)");
    }
}

// Both roots of the determinant quadratic for angular index l >= 1 and
// generic inner weight c: outer condition u'(1) = sigma u(1), inner condition
// -u'(r0) = sigma c u(r0) applied to u = a r^l + b r^-l.
std::pair<double, double> generic_roots(int l, double r0, double c) {
    const double x = c * r0;
    const double rho = std::pow(r0, 2 * l);
    const double qa = x * (1.0 - rho);
    const double qb = -static_cast<double>(l) * (1.0 + x) * (1.0 + rho);
    const double qc = static_cast<double>(l) * static_cast<double>(l) * (1.0 - rho);
    // Factored discriminant, free of the cancellation the naive b^2 - 4ac
    // suffers when rho is tiny:
    //   disc = l^2 [ (1-sx)^2 + rho (1+sx)^2 ] [ (1+sx)^2 + rho (1-sx)^2 ],
    // with sx = sqrt(x); every term is nonnegative.
    const double sx = std::sqrt(x);
    const double dm = (1.0 - sx) * (1.0 - sx);
    const double dp = (1.0 + sx) * (1.0 + sx);
    const double disc =
        static_cast<double>(l) * static_cast<double>(l) * (dm + rho * dp) * (dp + rho * dm);
    if (!(disc >= 0.0)) {
        throw std::runtime_error("annulus_spectrum: complex roots in the mode quadratic");
    }
    const double q = 0.5 * (-qb + std::sqrt(disc));  // qb < 0 always
    const double hi = q / qa;
    const double lo = qc / q;
    return {lo, hi};
}

double radial_root(double r0, double c) {
    // l = 0: u = a + b log r gives sigma = -(1 + c r0) / (c r0 log r0).
    const double x = c * r0;
    return -(1.0 + x) / (x * std::log(r0));
}

}  // namespace

std::vector<double> AnnulusClosedForm::values(int k) const {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(k));
    for (const auto& m : modes) {
        for (int i = 0; i < m.multiplicity && static_cast<int>(flat.size()) < k; ++i) {
            flat.push_back(m.value);
        }
        if (static_cast<int>(flat.size()) >= k) break;
    }
    return flat;
}

double sigma_minus(int l, double r0) {
    check_r0(r0);
    if (l < 1) throw std::invalid_argument("sigma_minus: need l >= 1");
    const double p = std::pow(r0, l);
    return static_cast<double>(l) * (1.0 - p) / (1.0 + p);
}

double sigma_plus(int l, double r0) {
    check_r0(r0);
    if (l < 0) throw std::invalid_argument("sigma_plus: need l >= 0");
    if (l == 0) return -2.0 / std::log(r0);
    const double p = std::pow(r0, l);
    return static_cast<double>(l) * (1.0 + p) / (1.0 - p);
}

AnnulusClosedForm annulus_spectrum(double r0, double c_inner, int l_max, int k) {
    check_r0(r0);
    if (!(c_inner >= 1.0)) throw std::invalid_argument("annulus_spectrum: inner weight must be >= 1");
    if (k < 1) throw std::invalid_argument("annulus_spectrum: need k >= 1");
    if (l_max < 0) throw std::invalid_argument("annulus_spectrum: need l_max >= 0");

    AnnulusClosedForm out;
    out.r0 = r0;
    out.c_inner = c_inner;
    out.modes.push_back({0, Branch::minus, 0.0, 1});
    out.modes.push_back({0, Branch::plus, radial_root(r0, c_inner), 1});

    // Grow l until the lower branch of the newest mode exceeds the k-th
    // smallest flattened value collected so far; the lower branch grows
    // linearly in l, so this terminates.
    auto kth_smallest = [&](int count) {
        std::vector<double> flat;
        for (const auto& m : out.modes) {
            for (int i = 0; i < m.multiplicity; ++i) flat.push_back(m.value);
        }
        std::sort(flat.begin(), flat.end());
        if (static_cast<int>(flat.size()) < count) return std::numeric_limits<double>::infinity();
        return flat[static_cast<std::size_t>(count) - 1];
    };

    int l = 1;
    double last_lo = 0.0;
    while (l <= l_max || last_lo <= kth_smallest(k)) {
        if (l > 100000) throw std::runtime_error("annulus_spectrum: mode growth did not terminate");
        const auto [lo, hi] = generic_roots(l, r0, c_inner);
        out.modes.push_back({l, Branch::minus, lo, 2});
        out.modes.push_back({l, Branch::plus, hi, 2});
        last_lo = lo;
        ++l;
    }
    std::sort(out.modes.begin(), out.modes.end(),
              [](const ModeEigenvalue& a, const ModeEigenvalue& b) { return a.value < b.value; });
    return out;
}

std::vector<double> cylinder_spectrum(double half_height, int k) {
    if (!(half_height > 0.0)) throw std::invalid_argument("cylinder_spectrum: need T > 0");
    if (k < 1) throw std::invalid_argument("cylinder_spectrum: need k >= 1");
    const double T = half_height;
    std::vector<double> vals = {0.0, 1.0 / T};
    int l = 1;
    while (true) {
        const double lo = static_cast<double>(l) * std::tanh(l * T);
        const double hi = static_cast<double>(l) / std::tanh(l * T);
        vals.push_back(lo);
        vals.push_back(lo);
        vals.push_back(hi);
        vals.push_back(hi);
        std::sort(vals.begin(), vals.end());
        if (static_cast<int>(vals.size()) >= k && lo > vals[static_cast<std::size_t>(k) - 1]) break;
        if (l > 100000) throw std::runtime_error("cylinder_spectrum: mode growth did not terminate");
        ++l;
    }
    vals.resize(static_cast<std::size_t>(k));
    return vals;
}

double find_T_star() {
    return numerics::bisect([](double z) { return z * std::tanh(z) - 1.0; }, 0.5, 2.0, 1e-12);
}

double find_R_star() {
    return numerics::bisect(
        [](double r) { return -2.0 / std::log(r) - (1.0 - r) / (1.0 + r); }, 1e-6, 1.0 - 1e-6,
        1e-12);
}

std::array<double, 2> segment_spectrum(double half_length) {
    if (!(half_length > 0.0)) throw std::invalid_argument("segment_spectrum: need L > 0");
    return {0.0, 1.0 / half_length};
}

double RadialEigenfunction::operator()(double r) const {
    if (r < r0 || r > 1.0) {
        throw std::invalid_argument("radial eigenfunction evaluated outside [r0, 1]");
    }
    return kappa * (1.0 - 2.0 * std::log(r) / std::log(r0));
}

RadialEigenfunction radial_eigenfunction(double r0) {
    check_r0(r0);
    RadialEigenfunction u;
    u.r0 = r0;
    u.kappa = 0.5 / std::sqrt(std::acos(-1.0));
    u.nodal_radius = std::sqrt(r0);
    return u;
}

bool radial_mode_first(double r0) {
    return sigma_plus(0, r0) < sigma_minus(1, r0);
}

}  // namespace steklov::analytic
