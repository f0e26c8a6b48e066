#ifndef DISKMORSE_OPTIMIZE_HPP
#define DISKMORSE_OPTIMIZE_HPP

#include <span>
#include <vector>

#include "diskmorse/energy.hpp"
#include "diskmorse/geometry.hpp"
#include "diskmorse/linalg.hpp"

namespace diskmorse {

struct DescentSettings {
    int max_iters = 50000;
    double grad_tol = 1e-8;        // relative: stop when |g| <= grad_tol * max(1, f-scale)
    double backtrack_factor = 0.5;
    double initial_step = 0.01;
    int restart_interval = 0;      // 0 = use 2*dim (CG only)
};

struct OptimResult {
    std::vector<double> point;
    double objective = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    /// CG on F only: reached a stationary point of F that is not a zero
    /// (spurious local minimum), as opposed to running out of iterations.
    bool rejected = false;
};

/// Generic objective for the descent engines. value() returns +inf
/// outside the domain; value_grad() returns the value and fills the
/// gradient (non-finite entries allowed out of domain).
class Objective {
  public:
    virtual ~Objective() = default;
    virtual double value(std::span<const double> x) = 0;
    virtual double value_grad(std::span<const double> x, std::span<double> g) = 0;
};

/// One-dimensional minimization along a normalized direction:
/// backtracking for a first acceptable step, doubling expansion while the
/// directional derivative stays negative, then at most 20 secant
/// iterations on the directional derivative. Near the floating-point
/// noise floor of the objective the value test degrades to a tie check
/// and the derivative is trusted instead.
struct LineSearchOutcome {
    double alpha = 0.0;
    double f = 0.0;
    bool ok = false;
};
LineSearchOutcome line_search(Objective& obj, std::span<const double> x,
                              std::span<const double> dir, double f0, double dphi0,
                              double step0, double backtrack_factor);

/// Minimize an objective with Polak-Ribiere conjugate gradient (PR+,
/// restart on beta<0 and every restart_interval iterations).
/// grad_tol is interpreted relative to max(1, |f|).
OptimResult cg_pr_minimize(Objective& obj, std::span<const double> start,
                           const DescentSettings& s);

/// Steepest descent on E; trajectory never leaves the open square.
/// converged means |grad E| <= grad_tol * max(1, E).
OptimResult steepest_descent_E(const Configuration& start, const EnergyParams& p,
                               const DescentSettings& s);

/// Conjugate gradient (Polak-Ribiere, secant line search) on F = |grad E|^2.
/// converged means F <= (1e-6 * max(1, E))^2, the zero-acceptance
/// threshold separating critical points of E from spurious minima of F.
OptimResult cg_pr_minimize_F(const Configuration& start, const EnergyParams& p,
                             const DescentSettings& s);

/// F-zero acceptance threshold at a given point.
double critical_threshold_F(double E);

/// All eigenvalues of a symmetric matrix, ascending (cyclic Jacobi).
/// Throws if the matrix is asymmetric beyond 1e-9 relative.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

}  // namespace diskmorse

#endif
