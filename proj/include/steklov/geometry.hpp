#pragma once

#include <functional>
#include <string>
#include <variant>

namespace steklov::geometry {

/// Positive even half-thickness profile on the open interval (-halfspan, halfspan).
struct Profile {
    enum class Form { generic, constant, ellipse };

    double halfspan = 0.0;
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    Form form = Form::generic;
    // Ellipse parameters when form == ellipse: value(t) = height sqrt(1 - t^2/halfspan^2).
    double height = 0.0;
};

Profile ellipse_profile(double halfspan, double height);
Profile constant_profile(double halfspan, double value);

struct Disk {
    double radius = 1.0;
};

struct Ellipse {
    double a = 1.0;  // x half-axis, a >= b
    double b = 1.0;  // y half-axis
};

/// Annulus r0 < |x| < 1.
struct Annulus {
    double r0 = 0.5;
};

/// Annulus with inner boundary r = r0 + eps cos(n_waves * theta); n_waves even.
struct OscAnnulus {
    double r0 = 0.5;
    double eps = 0.0;
    int n_waves = 8;
};

/// Region described both as {|y| < f(x), |x| < a} and {|x| < g(y), |y| < b}.
struct ProfilePair {
    Profile f;
    Profile g;
    double a = 1.0;
    double b = 1.0;
};

using DomainSpec = std::variant<Disk, Ellipse, Annulus, OscAnnulus, ProfilePair>;

/// Throws std::invalid_argument when the parameters violate the domain rules.
void validate(const DomainSpec& spec);

std::string describe(const DomainSpec& spec);

/// sup over the open interval of f(t) sqrt(1 + f'(t)^2). Closed form for
/// tagged ellipse profiles; dense sampling plus golden-section refinement and
/// endpoint-limit sampling otherwise.
double profile_sup(const Profile& f);

/// min{ 1/sup_f, 1/sup_g } for domains carrying the two profile descriptions
/// (ellipse and profile pairs; for a disk both sups equal the radius).
double profile_lower_bound(const DomainSpec& spec);

struct OscillationChoice {
    int n_waves = 0;       // even; 0 means no oscillation needed
    double length_ratio = 1.0;  // achieved inner arclength / (2 pi r0)
};

/// Picks the even wave count whose inner boundary arclength is within 0.5% of
/// c_target * 2 pi r0. Arclength by adaptive quadrature of one period.
OscillationChoice oscillating_inner_boundary(double r0, double c_target, double eps,
                                             int n_max = 20000);

/// Arclength of r = r0 + eps cos(N theta), theta in [0, 2 pi).
double oscillating_arclength(double r0, double eps, int n_waves);

}  // namespace steklov::geometry
