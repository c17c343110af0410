#pragma once

#include <array>
#include <vector>

namespace steklov::analytic {

enum class Branch { minus, plus };

/// One separated mode of the weighted annulus problem (outer radius 1,
/// inner radius r0, weight c on the inner circle, 1 on the outer one).
struct ModeEigenvalue {
    int l = 0;
    Branch branch = Branch::minus;
    double value = 0.0;
    int multiplicity = 1;  // 1 for l = 0, 2 for l >= 1
};

struct AnnulusClosedForm {
    double r0 = 0.0;
    double c_inner = 1.0;
    std::vector<ModeEigenvalue> modes;  // ascending by value

    /// First k eigenvalues flattened with multiplicity.
    std::vector<double> values(int k) const;
};

/// sigma_-(l) = l (1 - r0^l) / (1 + r0^l), the lower branch for inner weight 1/r0.
double sigma_minus(int l, double r0);

/// sigma_+(l) = l (1 + r0^l) / (1 - r0^l) for l >= 1, and -2/log(r0) for l = 0.
double sigma_plus(int l, double r0);

/// Closed-form spectrum of the weighted annulus with generic inner weight
/// c_inner >= 1: per angular index the two roots of the determinant quadratic
/// of the two-point boundary system. l_max grows automatically until the k
/// smallest values are guaranteed complete.
AnnulusClosedForm annulus_spectrum(double r0, double c_inner, int l_max, int k);

/// Steklov spectrum of the flat cylinder S^1 x (-T, T): the k smallest of
/// {0, 1/T} together with l tanh(lT) and l coth(lT), each twice.
std::vector<double> cylinder_spectrum(double half_height, int k);

/// Positive root of z tanh(z) = 1 (bisection, absolute tolerance 1e-12).
double find_T_star();

/// Root of -2/log(r) = (1 - r)/(1 + r) in (0, 1); equals exp(-2 T*).
double find_R_star();

/// Steklov eigenvalues of the segment (-L, L): exactly {0, 1/L}.
std::array<double, 2> segment_spectrum(double half_length);

/// Radial first eigenfunction of the weighted annulus with inner weight 1/r0,
/// normalized to unit weighted boundary norm. Vanishes on r = sqrt(r0).
struct RadialEigenfunction {
    double r0 = 0.0;
    double kappa = 0.0;         // 1 / (2 sqrt(pi))
    double nodal_radius = 0.0;  // sqrt(r0)

    double operator()(double r) const;  // defined on [r0, 1]
};

RadialEigenfunction radial_eigenfunction(double r0);

/// True when the smallest positive closed-form eigenvalue of the weighted
/// annulus (inner weight 1/r0) is the simple radial branch sigma_+(0) rather
/// than the double angular branch sigma_-(1). Decided by comparing the two
/// closed forms, never hard-coded.
bool radial_mode_first(double r0);

}  // namespace steklov::analytic
