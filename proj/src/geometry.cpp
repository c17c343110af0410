#include "steklov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "steklov/numerics.hpp"

namespace steklov::geometry {

namespace {

constexpr double kPi = 3.14159265358979323846;

double profile_metric(const Profile& f, double t) {
    const double v = f.value(t);
    const double d = f.deriv(t);
    const double m = v * std::sqrt(1.0 + d * d);
    if (!std::isfinite(m)) throw std::runtime_error("profile_sup: non-finite evaluation");
    return m;
}

void check_profile(const Profile& f) {
    if (!(f.halfspan > 0.0) || !f.value || !f.deriv) {
        throw std::invalid_argument("profile: invalid halfspan or missing evaluators");
    }
    // Positivity and evenness, checked at sample points.
    for (int i = 0; i < 64; ++i) {
        const double t = f.halfspan * (static_cast<double>(i) + 0.5) / 64.5;
        if (!(f.value(t) > 0.0)) throw std::invalid_argument("profile: must be positive");
        if (std::abs(f.value(t) - f.value(-t)) > 1e-12 * std::max(1.0, std::abs(f.value(t)))) {
            throw std::invalid_argument("profile: must be even");
        }
    }
}

}  // namespace

Profile ellipse_profile(double halfspan, double height) {
    if (!(halfspan > 0.0) || !(height > 0.0)) {
        throw std::invalid_argument("ellipse_profile: axes must be positive");
    }
    Profile p;
    p.halfspan = halfspan;
    p.height = height;
    p.form = Profile::Form::ellipse;
    p.value = [halfspan, height](double t) {
        return height * std::sqrt(std::max(0.0, 1.0 - t * t / (halfspan * halfspan)));
    };
    p.deriv = [halfspan, height](double t) {
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t / (halfspan * halfspan)));
        return -height * t / (halfspan * halfspan * s);
    };
    return p;
}

Profile constant_profile(double halfspan, double value) {
    if (!(halfspan > 0.0) || !(value > 0.0)) {
        throw std::invalid_argument("constant_profile: parameters must be positive");
    }
    Profile p;
    p.halfspan = halfspan;
    p.height = value;
    p.form = Profile::Form::constant;
    p.value = [value](double) { return value; };
    p.deriv = [](double) { return 0.0; };
    return p;
}

void validate(const DomainSpec& spec) {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Disk>) {
                if (!(d.radius > 0.0)) throw std::invalid_argument("disk: radius must be positive");
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                if (!(d.b > 0.0) || !(d.a >= d.b)) {
                    throw std::invalid_argument("ellipse: need a >= b > 0");
                }
            } else if constexpr (std::is_same_v<T, Annulus>) {
                if (!(d.r0 > 0.0) || !(d.r0 < 1.0)) {
                    throw std::invalid_argument("annulus: inner radius must lie in (0, 1)");
                }
            } else if constexpr (std::is_same_v<T, OscAnnulus>) {
                if (!(d.r0 > 0.0) || !(d.r0 < 1.0)) {
                    throw std::invalid_argument("oscillating annulus: inner radius must lie in (0, 1)");
                }
                if (!(d.r0 + d.eps < 1.0) || !(d.r0 - d.eps > 0.0) || !(d.eps >= 0.0)) {
                    throw std::invalid_argument("oscillating annulus: amplitude out of range");
                }
                if (d.n_waves < 8) throw std::invalid_argument("oscillating annulus: need n_waves >= 8");
                if (d.n_waves % 2 != 0) {
                    throw std::invalid_argument("oscillating annulus: wave count must be even");
                }
            } else if constexpr (std::is_same_v<T, ProfilePair>) {
                check_profile(d.f);
                check_profile(d.g);
                if (std::abs(d.f.halfspan - d.a) > 1e-12 || std::abs(d.g.halfspan - d.b) > 1e-12) {
                    throw std::invalid_argument("profile pair: halfspans must match (a, b)");
                }
                // The two descriptions must agree: a point (x, f(x)) on the upper
                // graph either has f(x) = b (flat top) or satisfies g(f(x)) = |x|,
                // and symmetrically for points (g(y), y) on the right graph.
                for (int i = 1; i < 16; ++i) {
                    const double x = d.a * static_cast<double>(i) / 16.0;
                    const double y = d.f.value(x);
                    if (y > d.b + 1e-8) {
                        throw std::invalid_argument("profile pair: f exceeds the g-representation height");
                    }
                    if (std::abs(y - d.b) > 1e-8 &&
                        std::abs(d.g.value(y) - std::abs(x)) > 1e-8) {
                        throw std::invalid_argument("profile pair: f and g describe different regions");
                    }
                }
                for (int i = 1; i < 16; ++i) {
                    const double y = d.b * static_cast<double>(i) / 16.0;
                    const double x = d.g.value(y);
                    if (x > d.a + 1e-8) {
                        throw std::invalid_argument("profile pair: g exceeds the f-representation width");
                    }
                    if (std::abs(x - d.a) > 1e-8 &&
                        std::abs(d.f.value(x) - std::abs(y)) > 1e-8) {
                        throw std::invalid_argument("profile pair: f and g describe different regions");
                    }
                }
            }
        },
        spec);
}

std::string describe(const DomainSpec& spec) {
    std::ostringstream os;
    std::visit(
        [&os](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Disk>) {
                os << "disk radius=" << d.radius;
            } else if constexpr (std::is_same_v<T, Ellipse>) {
                os << "ellipse a=" << d.a << " b=" << d.b;
            } else if constexpr (std::is_same_v<T, Annulus>) {
                os << "annulus r0=" << d.r0;
            } else if constexpr (std::is_same_v<T, OscAnnulus>) {
                os << "osc-annulus r0=" << d.r0 << " eps=" << d.eps << " n_waves=" << d.n_waves;
            } else if constexpr (std::is_same_v<T, ProfilePair>) {
                os << "profile-pair a=" << d.a << " b=" << d.b;
            }
        },
        spec);
    return os.str();
}

double profile_sup(const Profile& f) {
    check_profile(f);
    if (f.form == Profile::Form::constant) return f.value(0.0);
    if (f.form == Profile::Form::ellipse) {
        // f sqrt(1+f'^2) squared equals h^2 + (h^2 t^2 / s^2)(h^2/s^2 - 1) with
        // s = halfspan, h = height: monotone in t^2, so the sup is at t = 0 or
        // the endpoint limit.
        return std::max(f.height, f.height * f.height / f.halfspan);
    }

    const int n_samples = 20001;
    const double a = f.halfspan;
    double best = -1.0;
    double best_t = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double t = -a + 2.0 * a * (static_cast<double>(i) + 0.5) / n_samples;
        const double m = profile_metric(f, t);
        if (m > best) {
            best = m;
            best_t = t;
        }
    }
    const double h = 2.0 * a / n_samples;
    const double lo = std::max(-a + 1e-14 * a, best_t - h);
    const double hi = std::min(a - 1e-14 * a, best_t + h);
    const double t_star = numerics::golden_max([&](double t) { return profile_metric(f, t); }, lo,
                                               hi, 1e-13 * a);
    best = std::max(best, profile_metric(f, t_star));

    // A supremum may be approached at the open endpoints; sample a geometric
    // sequence toward them.
    for (int j = 8; j <= 45; ++j) {
        const double t = a * (1.0 - std::pow(0.5, j));
        best = std::max(best, profile_metric(f, t));
        best = std::max(best, profile_metric(f, -t));
    }
    return best;
}

double profile_lower_bound(const DomainSpec& spec) {
    validate(spec);
    if (const auto* disk = std::get_if<Disk>(&spec)) {
        return 1.0 / disk->radius;
    }
    if (const auto* ell = std::get_if<Ellipse>(&spec)) {
        const double sup_f = profile_sup(ellipse_profile(ell->a, ell->b));
        const double sup_g = profile_sup(ellipse_profile(ell->b, ell->a));
        return std::min(1.0 / sup_f, 1.0 / sup_g);
    }
    if (const auto* pp = std::get_if<ProfilePair>(&spec)) {
        return std::min(1.0 / profile_sup(pp->f), 1.0 / profile_sup(pp->g));
    }
    throw std::invalid_argument("profile_lower_bound: domain has no profile representation");
}

double oscillating_arclength(double r0, double eps, int n_waves) {
    if (n_waves == 0 || eps == 0.0) return 2.0 * kPi * r0;
    const double n = static_cast<double>(n_waves);
    const auto speed = [&](double t) {
        const double rho = r0 + eps * std::cos(n * t);
        const double drho = -eps * n * std::sin(n * t);
        return std::sqrt(rho * rho + drho * drho);
    };
    // One period, multiplied out; the integrand is smooth.
    return n * numerics::integrate(speed, 0.0, 2.0 * kPi / n, 1e-12);
}

OscillationChoice oscillating_inner_boundary(double r0, double c_target, double eps, int n_max) {
    if (!(r0 > 0.0) || !(r0 < 1.0)) throw std::invalid_argument("oscillating boundary: bad r0");
    if (!(c_target >= 1.0)) throw std::invalid_argument("oscillating boundary: need c_target >= 1");
    if (!(eps > 0.0) || !(eps < std::min(r0, 1.0 - r0) / 4.0)) {
        throw std::invalid_argument("oscillating boundary: amplitude must satisfy eps < min(r0, 1-r0)/4");
    }
    const double base = 2.0 * kPi * r0;
    const double target = c_target * base;
    if (std::abs(base - target) <= 0.005 * target) {
        return {0, 1.0};
    }
    for (int n = 2; n <= n_max; n += 2) {
        const double len = oscillating_arclength(r0, eps, n);
        if (std::abs(len - target) <= 0.005 * target) {
            return {n, len / base};
        }
        if (len > 1.005 * target) break;
    }
    throw std::runtime_error("amplitude too small for target length");
}

}  // namespace steklov::geometry
