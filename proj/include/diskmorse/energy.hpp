#ifndef DISKMORSE_ENERGY_HPP
#define DISKMORSE_ENERGY_HPP

#include <optional>
#include <span>

#include "diskmorse/geometry.hpp"
#include "diskmorse/linalg.hpp"

namespace diskmorse {

/// Softened hard-disk potential. The wall part is a separate
/// reciprocal-power term per wall (four per disk), which is smooth
/// everywhere and has the same critical points as the nearest-wall form
/// at large hardness.
struct EnergyParams {
    double hardness = 50.0;
};

struct EnergyEval {
    double value = 0.0;
    std::vector<double> gradient;
    std::optional<Matrix> hessian;
};

/// E = sum_{i<j} (d(x_i,x_j)/2)^-h + sum_i sum_w dist(x_i, w)^-h.
/// Domain error (returns +inf) on coincident centers or a center on a wall.
double energy(const Configuration& c, const EnergyParams& p);

std::vector<double> gradient(const Configuration& c, const EnergyParams& p);

/// Analytic Hessian, symmetrized after assembly.
Matrix hessian(const Configuration& c, const EnergyParams& p);

/// F = |grad E|^2; zero exactly at critical points of E.
double grad_norm_sq(const Configuration& c, const EnergyParams& p);

/// grad F = 2 * H(E) * grad E.
std::vector<double> grad_F(const Configuration& c, const EnergyParams& p);

// ---- flat-coordinate hot path (used by the optimizers) ----

/// Energy of flattened coordinates (x0,y0,x1,y1,...). Out-of-domain
/// points (outside the open square, coincident centers) yield +inf.
double energy_flat(std::span<const double> v, const EnergyParams& p);

/// Returns energy; writes the 2n-vector gradient.
double energy_gradient_flat(std::span<const double> v, const EnergyParams& p,
                            std::span<double> grad_out);

/// Returns energy; writes gradient and the 2n x 2n Hessian.
double energy_hessian_flat(std::span<const double> v, const EnergyParams& p,
                           std::span<double> grad_out, Matrix& hess_out);

/// F and its gradient in one pass.
double grad_norm_sq_flat(std::span<const double> v, const EnergyParams& p);
double grad_F_flat(std::span<const double> v, const EnergyParams& p, std::span<double> gF_out);

}  // namespace diskmorse

#endif
