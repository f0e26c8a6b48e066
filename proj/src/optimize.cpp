#include "diskmorse/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace diskmorse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTie = 1.0 + 1e-12;

struct EnergyObjective final : Objective {
    EnergyParams p;
    explicit EnergyObjective(const EnergyParams& p_) : p(p_) {}
    double value(std::span<const double> x) override { return energy_flat(x, p); }
    double value_grad(std::span<const double> x, std::span<double> g) override {
        return energy_gradient_flat(x, p, g);
    }
};

struct GradNormSqObjective final : Objective {
    EnergyParams p;
    explicit GradNormSqObjective(const EnergyParams& p_) : p(p_) {}
    double value(std::span<const double> x) override { return grad_norm_sq_flat(x, p); }
    double value_grad(std::span<const double> x, std::span<double> g) override {
        return grad_F_flat(x, p, g);
    }
};

}  // namespace

LineSearchOutcome line_search(Objective& obj, std::span<const double> x,
                              std::span<const double> dir, double f0, double dphi0,
                              double step0, double backtrack_factor) {
    const size_t dim = x.size();
    std::vector<double> xt(dim), gt(dim);
    auto eval_at = [&](double a) {
        for (size_t i = 0; i < dim; ++i) xt[i] = x[i] + a * dir[i];
        return obj.value(xt);
    };
    auto deriv_at = [&](double a, double& f_out) {
        for (size_t i = 0; i < dim; ++i) xt[i] = x[i] + a * dir[i];
        f_out = obj.value_grad(xt, gt);
        if (!std::isfinite(f_out)) return kInf;
        return dot(gt, dir);
    };

    LineSearchOutcome out;
    if (!(dphi0 < 0.0)) return out;

    // phase 1: backtrack until finite and acceptable
    double alpha = step0;
    double f_alpha = kInf;
    bool have = false;
    for (int bt = 0; bt < 140; ++bt) {
        f_alpha = eval_at(alpha);
        if (std::isfinite(f_alpha)) {
            const bool measurable = alpha * std::abs(dphi0) >= 1e-12 * std::abs(f0);
            if (measurable ? (f_alpha <= f0 + 1e-4 * alpha * dphi0) : (f_alpha <= f0 * kTie)) {
                have = true;
                break;
            }
        }
        alpha *= backtrack_factor;
        if (alpha == 0.0) break;
    }
    if (!have) return out;

    double best_a = alpha, best_f = f_alpha;
    double a = 0.0, psi_a = dphi0;
    double b = alpha, f_b;
    double psi_b = deriv_at(alpha, f_b);

    if (std::isfinite(psi_b) && psi_b < 0.0) {
        // still descending: expand
        for (int e = 0; e < 50; ++e) {
            double nb = 2.0 * b;
            double f_nb;
            double psi_nb = deriv_at(nb, f_nb);
            if (!std::isfinite(f_nb) || f_nb > best_f * kTie) break;
            a = b;
            psi_a = psi_b;
            b = nb;
            psi_b = psi_nb;
            if (f_nb <= best_f) {
                best_f = f_nb;
                best_a = nb;
            }
            if (psi_b >= 0.0) break;
        }
    }

    if (std::isfinite(psi_b) && psi_a < 0.0 && psi_b > 0.0) {
        // secant refinement on the bracketed directional derivative
        for (int it = 0; it < 20; ++it) {
            double m = b - psi_b * (b - a) / (psi_b - psi_a);
            if (!(m > a && m < b) || !std::isfinite(m)) m = 0.5 * (a + b);
            double f_m;
            double psi_m = deriv_at(m, f_m);
            if (!std::isfinite(psi_m)) break;
            if (std::isfinite(f_m) && f_m <= best_f * kTie) {
                best_a = m;
                best_f = std::min(f_m, best_f);
            }
            if (psi_m < 0.0) {
                a = m;
                psi_a = psi_m;
            } else {
                b = m;
                psi_b = psi_m;
            }
            if (b - a <= 1e-9 * b) break;
        }
    }

    out.alpha = best_a;
    out.f = best_f;
    out.ok = true;
    return out;
}

namespace {

/// Shared descent loop. steepest=true gives plain gradient descent,
/// otherwise PR+ conjugate gradient. Convergence is decided by the
/// caller through the stop callback (called with f, gradient).
template <typename Stop>
OptimResult descent_loop(Objective& obj, std::span<const double> start,
                         const DescentSettings& s, bool steepest, Stop&& stop) {
    const size_t dim = start.size();
    OptimResult res;
    std::vector<double> x(start.begin(), start.end());
    std::vector<double> g(dim), g_prev(dim), d(dim), dir(dim);
    std::vector<double> best_x = x;
    double best_gn = kInf, best_f_seen = kInf;

    double f = obj.value_grad(x, g);
    if (!std::isfinite(f)) {
        res.point = x;
        res.objective = f;
        res.grad_norm = kInf;
        return res;
    }
    const int restart = s.restart_interval > 0 ? s.restart_interval : static_cast<int>(2 * dim);
    double step = s.initial_step;
    int since_progress = 0;
    int since_restart = 0;
    bool have_d = false;

    int last_it = 0;
    for (int it = 0; it < s.max_iters; ++it) {
        last_it = it;
        const double gn = norm(g);
        if (stop(f, gn)) {
            res.point = x;
            res.objective = f;
            res.grad_norm = gn;
            res.iterations = it;
            res.converged = true;
            return res;
        }
        bool progress = false;
        if (gn < 0.999 * best_gn) progress = true;
        if (f < best_f_seen * (1.0 - 1e-12)) progress = true;
        if (gn <= best_gn) {
            best_gn = gn;
            best_x = x;
        }
        best_f_seen = std::min(best_f_seen, f);
        since_progress = progress ? 0 : since_progress + 1;
        if (since_progress > 100) break;  // numerical floor reached

        if (steepest || !have_d) {
            for (size_t i = 0; i < dim; ++i) d[i] = -g[i];
            have_d = true;
            since_restart = 0;
        }
        double dn = norm(d);
        double dphi0 = 0.0;
        if (dn > 0.0) {
            for (size_t i = 0; i < dim; ++i) dir[i] = d[i] / dn;
            dphi0 = dot(g, dir);
        }
        if (!(dphi0 < 0.0)) {
            // not a descent direction: restart from steepest
            for (size_t i = 0; i < dim; ++i) d[i] = -g[i];
            dn = norm(d);
            if (dn == 0.0) break;
            for (size_t i = 0; i < dim; ++i) dir[i] = d[i] / dn;
            dphi0 = -dn;
            since_restart = 0;
        }
        auto ls = line_search(obj, x, dir, f, dphi0, step, s.backtrack_factor);
        if (!ls.ok) break;
        for (size_t i = 0; i < dim; ++i) x[i] += ls.alpha * dir[i];
        f = ls.f;
        step = std::min(4.0 * ls.alpha, s.initial_step);
        if (step <= 0.0 || !std::isfinite(step)) step = s.initial_step;

        g_prev.swap(g);
        double f_check = obj.value_grad(x, g);
        if (std::isfinite(f_check)) f = f_check;

        if (!steepest) {
            // Polak-Ribiere with overflow-safe scaling; PR+ restart on beta<0
            double sc = 0.0;
            for (size_t i = 0; i < dim; ++i)
                sc = std::max({sc, std::abs(g[i]), std::abs(g_prev[i])});
            double num = 0.0, den = 0.0;
            if (sc > 0.0) {
                for (size_t i = 0; i < dim; ++i) {
                    const double a = g[i] / sc, b = g_prev[i] / sc;
                    num += a * (a - b);
                    den += b * b;
                }
            }
            double beta = den > 0.0 ? num / den : 0.0;
            ++since_restart;
            if (!std::isfinite(beta) || beta < 0.0 || since_restart >= restart) {
                beta = 0.0;
                since_restart = 0;
            }
            for (size_t i = 0; i < dim; ++i) d[i] = -g[i] + beta * d[i];
        }
    }

    // stalled or out of iterations: report the best point seen
    std::vector<double> gb(dim);
    double fb = obj.value_grad(best_x, gb);
    res.point = std::move(best_x);
    res.objective = fb;
    res.grad_norm = norm(gb);
    res.iterations = last_it + 1;
    res.converged = false;
    return res;
}

}  // namespace

OptimResult cg_pr_minimize(Objective& obj, std::span<const double> start,
                           const DescentSettings& s) {
    auto r = descent_loop(obj, start, s, false, [&](double f, double gn) {
        return gn <= s.grad_tol * std::max(1.0, std::abs(f));
    });
    return r;
}

OptimResult steepest_descent_E(const Configuration& start, const EnergyParams& p,
                               const DescentSettings& s) {
    EnergyObjective obj(p);
    auto v = start.flat();
    auto r = descent_loop(obj, v, s, true, [&](double f, double gn) {
        return gn <= s.grad_tol * std::max(1.0, f);
    });
    return r;
}

double critical_threshold_F(double E) {
    const double t = 1e-6 * std::max(1.0, E);
    return t * t;
}

OptimResult cg_pr_minimize_F(const Configuration& start, const EnergyParams& p,
                             const DescentSettings& s) {
    GradNormSqObjective obj(p);
    auto v = start.flat();
    // run past the acceptance threshold so weakly-forced disks (rattlers)
    // are pinned too; the loop ends at the numerical floor of F
    auto r = descent_loop(obj, v, s, false, [](double, double) { return false; });
    const double E = energy_flat(r.point, p);
    const double thr = critical_threshold_F(E);
    r.converged = std::isfinite(r.objective) && r.objective <= thr;
    r.rejected = !r.converged && r.iterations < s.max_iters;
    return r;
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
    if (m.max_asymmetry() > 1e-9)
        throw std::invalid_argument("symmetric_eigenvalues: matrix is not symmetric");
    return jacobi_eigenvalues(m);
}

}  // namespace diskmorse
