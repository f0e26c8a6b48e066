#include "diskmorse/harden.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diskmorse/lp.hpp"
#include "diskmorse/optimize.hpp"

namespace diskmorse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bond_length(const Configuration& c, const BondNetwork& b, int k) {
    const int np = static_cast<int>(b.disk_edges.size());
    if (k < np) {
        auto [i, j] = b.disk_edges[k];
        return (c.centers[i] - c.centers[j]).norm();
    }
    auto [i, w] = b.wall_edges[k - np];
    return wall_distance(c.centers[i], w);
}

/// s = mean of wall lengths and half pair lengths
double average_bond_scale(const Configuration& c, const BondNetwork& b) {
    double tot = 0.0;
    for (auto& e : b.disk_edges) tot += 0.5 * (c.centers[e.first] - c.centers[e.second]).norm();
    for (auto& e : b.wall_edges) tot += wall_distance(c.centers[e.first], e.second);
    return tot / b.size();
}

double max_violation(const Configuration& c, const BondNetwork& b, double s) {
    double mx = 0.0;
    for (auto& e : b.disk_edges)
        mx = std::max(mx, std::abs((c.centers[e.first] - c.centers[e.second]).norm() - 2.0 * s));
    for (auto& e : b.wall_edges)
        mx = std::max(mx, std::abs(wall_distance(c.centers[e.first], e.second) - s));
    return mx;
}

struct SpringObjective final : Objective {
    const BondNetwork& b;
    double s;
    int n;
    SpringObjective(const BondNetwork& b_, double s_, int n_) : b(b_), s(s_), n(n_) {}

    double value(std::span<const double> x) override {
        double t = 0.0;
        for (auto& e : b.disk_edges) {
            double dx = x[2 * e.first] - x[2 * e.second];
            double dy = x[2 * e.first + 1] - x[2 * e.second + 1];
            double d = std::sqrt(dx * dx + dy * dy);
            t += (d - 2.0 * s) * (d - 2.0 * s);
        }
        for (auto& e : b.wall_edges) {
            double L = 0.0;
            switch (e.second) {
                case Wall::Left: L = x[2 * e.first]; break;
                case Wall::Right: L = 1.0 - x[2 * e.first]; break;
                case Wall::Bottom: L = x[2 * e.first + 1]; break;
                case Wall::Top: L = 1.0 - x[2 * e.first + 1]; break;
            }
            t += (L - s) * (L - s);
        }
        return t;
    }

    double value_grad(std::span<const double> x, std::span<double> g) override {
        std::fill(g.begin(), g.end(), 0.0);
        double t = 0.0;
        for (auto& e : b.disk_edges) {
            double dx = x[2 * e.first] - x[2 * e.second];
            double dy = x[2 * e.first + 1] - x[2 * e.second + 1];
            double d = std::sqrt(dx * dx + dy * dy);
            double r = d - 2.0 * s;
            t += r * r;
            double cf = 2.0 * r / d;
            g[2 * e.first] += cf * dx;
            g[2 * e.first + 1] += cf * dy;
            g[2 * e.second] -= cf * dx;
            g[2 * e.second + 1] -= cf * dy;
        }
        for (auto& e : b.wall_edges) {
            int xi = 2 * e.first, yi = 2 * e.first + 1;
            switch (e.second) {
                case Wall::Left: {
                    double r = x[xi] - s;
                    t += r * r;
                    g[xi] += 2.0 * r;
                    break;
                }
                case Wall::Right: {
                    double r = (1.0 - x[xi]) - s;
                    t += r * r;
                    g[xi] -= 2.0 * r;
                    break;
                }
                case Wall::Bottom: {
                    double r = x[yi] - s;
                    t += r * r;
                    g[yi] += 2.0 * r;
                    break;
                }
                case Wall::Top: {
                    double r = (1.0 - x[yi]) - s;
                    t += r * r;
                    g[yi] -= 2.0 * r;
                    break;
                }
            }
        }
        return t;
    }
};

/// dense solve of (A + damp*I) x = rhs by Gaussian elimination with
/// partial pivoting; A is overwritten
bool solve_damped(std::vector<std::vector<double>>& A, std::vector<double>& rhs,
                  double damp) {
    const int n = static_cast<int>(A.size());
    for (int i = 0; i < n; ++i) A[i][i] += damp;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (A[piv][col] == 0.0) return false;
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            double f = A[r][col] / A[col][col];
            if (f == 0.0) continue;
            for (int c2 = col; c2 < n; ++c2) A[r][c2] -= f * A[col][c2];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        double s = rhs[col];
        for (int c2 = col + 1; c2 < n; ++c2) s -= A[col][c2] * rhs[c2];
        rhs[col] = s / A[col][col];
    }
    return true;
}

}  // namespace

HardenedPoint harden(const Configuration& c, const BondNetwork& b) {
    HardenedPoint hp;
    hp.source_bonds = b;
    hp.config = c;
    if (b.size() == 0) return hp;

    const int n = c.n();
    auto x = c.flat();
    double s = average_bond_scale(c, b);
    double best_resid = kInf;
    int rounds_without_shrink = 0;

    DescentSettings inner;
    inner.max_iters = 4000;
    inner.grad_tol = 1e-14;
    inner.initial_step = 0.05;

    double prev_s = s;
    for (int outer = 0; outer < 50; ++outer) {
        SpringObjective obj(b, s, n);
        auto res = cg_pr_minimize(obj, x, inner);
        x = res.point;
        Configuration cur = Configuration::from_flat(x);
        double s_new = average_bond_scale(cur, b);
        double resid = max_violation(cur, b, s_new);
        if (resid < best_resid / 10.0) {
            best_resid = std::min(best_resid, resid);
            rounds_without_shrink = 0;
        } else if (++rounds_without_shrink >= 10) {
            hp.config = cur;
            hp.radius = s_new;
            hp.residual = resid;
            hp.feasible = false;  // residual refuses to shrink
            return hp;
        }
        best_resid = std::min(best_resid, resid);
        bool done = resid < 1e-10 && std::abs(s_new - prev_s) < 1e-12 && outer > 0;
        prev_s = s;
        s = s_new;
        if (done) break;
    }
    hp.config = Configuration::from_flat(x);
    hp.radius = s;
    hp.residual = max_violation(hp.config, b, s);
    bool inside = true;
    for (double v : x)
        if (!(v > 0.0 && v < 1.0)) inside = false;
    hp.feasible = inside && hp.residual <= 1e-8;
    return hp;
}

BalanceResult verify_hard_critical(const HardenedPoint& hp) {
    double slack = std::max(10.0 * hp.residual, 1e-9);
    BondNetwork b = extract_bonds_abs(hp.config, hp.radius, slack);
    return check_balance(b, hp.config);
}

std::optional<Configuration> continue_critical(const Configuration& c,
                                               const EnergyParams& /*from*/,
                                               double target_hardness) {
    EnergyParams pt{target_hardness};
    const int dim = 2 * c.n();
    auto x = c.flat();
    std::vector<double> g(dim);
    Matrix H(dim);
    for (int it = 0; it < 80; ++it) {
        double E = energy_hessian_flat(x, pt, g, H);
        if (!std::isfinite(E)) return std::nullopt;
        if (norm(g) <= 1e-9 * std::max(1.0, E)) {
            Configuration out = Configuration::from_flat(x);
            double moved = 0.0;
            for (int i = 0; i < c.n(); ++i) {
                moved = std::max(moved, std::abs(out.centers[i].x - c.centers[i].x));
                moved = std::max(moved, std::abs(out.centers[i].y - c.centers[i].y));
            }
            if (moved > 0.1) return std::nullopt;
            return out;
        }
        // damped least-squares Newton step on grad E = 0
        double sc = 0.0;
        for (double v : H.a) sc = std::max(sc, std::abs(v));
        if (sc == 0.0) return std::nullopt;
        std::vector<std::vector<double>> N(dim, std::vector<double>(dim, 0.0));
        std::vector<double> rhs(dim, 0.0);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                double s = 0.0;
                for (int k = 0; k < dim; ++k) s += H.at(k, i) / sc * H.at(k, j) / sc;
                N[i][j] = s;
            }
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += H.at(k, i) / sc * g[k] / sc;
            rhs[i] = -s;
        }
        if (!solve_damped(N, rhs, 1e-12)) return std::nullopt;
        double step = 0.0;
        for (double v : rhs) step = std::max(step, std::abs(v));
        if (!std::isfinite(step)) return std::nullopt;
        double scale = step > 0.02 ? 0.02 / step : 1.0;
        for (int i = 0; i < dim; ++i) x[i] += scale * rhs[i];
        for (double v : x)
            if (!(v > 0.0 && v < 1.0)) return std::nullopt;
    }
    return std::nullopt;
}

TangencySolution solve_tangency_balance(const Configuration& start, const BondNetwork& b,
                                        std::vector<double> w0, double r0) {
    TangencySolution sol;
    const int n = start.n();
    const int nx = 2 * n;
    const int np = static_cast<int>(b.disk_edges.size());
    const int nb = b.size();
    const int dim = nx + 1 + nb;
    if (nb == 0) return sol;

    std::vector<double> z(dim);
    {
        auto x = start.flat();
        std::copy(x.begin(), x.end(), z.begin());
        z[nx] = r0;
        for (int k = 0; k < nb; ++k) z[nx + 1 + k] = w0[k];
    }

    std::vector<double> Fv(dim);
    std::vector<std::vector<double>> J(dim, std::vector<double>(dim, 0.0));

    double resid = kInf;
    for (int it = 0; it < 80; ++it) {
        for (auto& row : J) std::fill(row.begin(), row.end(), 0.0);
        std::fill(Fv.begin(), Fv.end(), 0.0);
        const double r = z[nx];
        // tangency rows
        for (int k = 0; k < np; ++k) {
            auto [i, j] = b.disk_edges[k];
            double ux = z[2 * j] - z[2 * i], uy = z[2 * j + 1] - z[2 * i + 1];
            double L = std::sqrt(ux * ux + uy * uy);
            Fv[k] = L - 2.0 * r;
            double ex = ux / L, ey = uy / L;
            J[k][2 * j] = ex;
            J[k][2 * j + 1] = ey;
            J[k][2 * i] = -ex;
            J[k][2 * i + 1] = -ey;
            J[k][nx] = -2.0;
        }
        for (int k = 0; k < static_cast<int>(b.wall_edges.size()); ++k) {
            auto [i, w] = b.wall_edges[k];
            int row = np + k;
            double L = 0.0;
            switch (w) {
                case Wall::Left: L = z[2 * i]; J[row][2 * i] = 1.0; break;
                case Wall::Right: L = 1.0 - z[2 * i]; J[row][2 * i] = -1.0; break;
                case Wall::Bottom: L = z[2 * i + 1]; J[row][2 * i + 1] = 1.0; break;
                case Wall::Top: L = 1.0 - z[2 * i + 1]; J[row][2 * i + 1] = -1.0; break;
            }
            Fv[row] = L - r;
            J[row][nx] = -1.0;
        }
        // equilibrium rows (2 per disk)
        const int eq0 = nb;
        for (int k = 0; k < np; ++k) {
            auto [i, j] = b.disk_edges[k];
            double ux = z[2 * j] - z[2 * i], uy = z[2 * j + 1] - z[2 * i + 1];
            double L = std::sqrt(ux * ux + uy * uy);
            double ex = ux / L, ey = uy / L;
            double wk = z[nx + 1 + k];
            Fv[eq0 + 2 * i] += wk * ex;
            Fv[eq0 + 2 * i + 1] += wk * ey;
            Fv[eq0 + 2 * j] -= wk * ex;
            Fv[eq0 + 2 * j + 1] -= wk * ey;
            J[eq0 + 2 * i][nx + 1 + k] += ex;
            J[eq0 + 2 * i + 1][nx + 1 + k] += ey;
            J[eq0 + 2 * j][nx + 1 + k] -= ex;
            J[eq0 + 2 * j + 1][nx + 1 + k] -= ey;
            // d(e)/dx: P = (I - e e^T)/L
            double pxx = (1.0 - ex * ex) / L, pxy = -ex * ey / L, pyy = (1.0 - ey * ey) / L;
            // d e / d xj = P, d e / d xi = -P
            J[eq0 + 2 * i][2 * j] += wk * pxx;
            J[eq0 + 2 * i][2 * j + 1] += wk * pxy;
            J[eq0 + 2 * i + 1][2 * j] += wk * pxy;
            J[eq0 + 2 * i + 1][2 * j + 1] += wk * pyy;
            J[eq0 + 2 * i][2 * i] -= wk * pxx;
            J[eq0 + 2 * i][2 * i + 1] -= wk * pxy;
            J[eq0 + 2 * i + 1][2 * i] -= wk * pxy;
            J[eq0 + 2 * i + 1][2 * i + 1] -= wk * pyy;
            J[eq0 + 2 * j][2 * j] -= wk * pxx;
            J[eq0 + 2 * j][2 * j + 1] -= wk * pxy;
            J[eq0 + 2 * j + 1][2 * j] -= wk * pxy;
            J[eq0 + 2 * j + 1][2 * j + 1] -= wk * pyy;
            J[eq0 + 2 * j][2 * i] += wk * pxx;
            J[eq0 + 2 * j][2 * i + 1] += wk * pxy;
            J[eq0 + 2 * j + 1][2 * i] += wk * pxy;
            J[eq0 + 2 * j + 1][2 * i + 1] += wk * pyy;
        }
        for (int k = 0; k < static_cast<int>(b.wall_edges.size()); ++k) {
            auto [i, w] = b.wall_edges[k];
            Vec2 nv = wall_normal(w);
            double wk = z[nx + 1 + np + k];
            Fv[eq0 + 2 * i] += wk * nv.x;
            Fv[eq0 + 2 * i + 1] += wk * nv.y;
            J[eq0 + 2 * i][nx + 1 + np + k] += nv.x;
            J[eq0 + 2 * i + 1][nx + 1 + np + k] += nv.y;
        }
        // normalization row
        Fv[dim - 1] = -1.0;
        for (int k = 0; k < nb; ++k) {
            Fv[dim - 1] += z[nx + 1 + k];
            J[dim - 1][nx + 1 + k] = 1.0;
        }

        resid = 0.0;
        for (double v : Fv) resid = std::max(resid, std::abs(v));
        if (resid < 1e-13) break;

        // damped least-squares step: (J^T J + lam I) dz = -J^T F
        std::vector<std::vector<double>> N(dim, std::vector<double>(dim, 0.0));
        std::vector<double> rhs(dim, 0.0);
        for (int i = 0; i < dim; ++i) {
            for (int j2 = i; j2 < dim; ++j2) {
                double s = 0.0;
                for (int k = 0; k < dim; ++k) s += J[k][i] * J[k][j2];
                N[i][j2] = s;
                N[j2][i] = s;
            }
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += J[k][i] * Fv[k];
            rhs[i] = -s;
        }
        double diag_scale = 0.0;
        for (int i = 0; i < dim; ++i) diag_scale = std::max(diag_scale, N[i][i]);
        if (!solve_damped(N, rhs, 1e-11 * std::max(diag_scale, 1.0))) return sol;
        double step = 0.0;
        for (double v : rhs) step = std::max(step, std::abs(v));
        if (!std::isfinite(step)) return sol;
        double scale = step > 0.1 ? 0.1 / step : 1.0;
        for (int i = 0; i < dim; ++i) z[i] += scale * rhs[i];
    }

    sol.config = Configuration::from_flat(std::span<const double>(z.data(), nx));
    sol.radius = z[nx];
    sol.weights.assign(z.begin() + nx + 1, z.end());
    sol.residual = resid;
    sol.converged = resid < 1e-12;
    return sol;
}

namespace {

struct Feature {
    bool is_pair;
    int i, j;   // pair
    Wall w;     // wall
    double l50, l100;  // length relative to preliminary radius
};

std::vector<Feature> feature_spectrum(const Configuration& c50, const Configuration& c100) {
    const int n = c50.n();
    const double r50 = preliminary_radius(c50);
    const double r100 = preliminary_radius(c100);
    std::vector<Feature> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Feature f;
            f.is_pair = true;
            f.i = i;
            f.j = j;
            f.l50 = 0.5 * (c50.centers[i] - c50.centers[j]).norm() / r50;
            f.l100 = 0.5 * (c100.centers[i] - c100.centers[j]).norm() / r100;
            out.push_back(f);
        }
        for (Wall w : all_walls) {
            Feature f;
            f.is_pair = false;
            f.i = i;
            f.j = -1;
            f.w = w;
            f.l50 = wall_distance(c50.centers[i], w) / r50;
            f.l100 = wall_distance(c100.centers[i], w) / r100;
            out.push_back(f);
        }
    }
    return out;
}

std::vector<double> soft_force_weights(const Configuration& c, const BondNetwork& b,
                                       double h) {
    std::vector<double> w;
    w.reserve(b.size());
    double tot = 0.0;
    for (auto& e : b.disk_edges) {
        double L = 0.5 * (c.centers[e.first] - c.centers[e.second]).norm();
        double f = 0.5 * std::pow(L, -(h + 1.0));
        w.push_back(f);
        tot += f;
    }
    for (auto& e : b.wall_edges) {
        double L = wall_distance(c.centers[e.first], e.second);
        double f = std::pow(L, -(h + 1.0));
        w.push_back(f);
        tot += f;
    }
    for (auto& v : w) v /= tot;
    return w;
}

struct CandidateResult {
    TangencySolution sol;
    BondNetwork net;
    double drift = kInf;
    bool valid = false;
};

/// non-bond separations at the solution (no overlap allowed); disks in
/// `skip` are exempt (free disks placed later)
bool separations_ok(const Configuration& c, const BondNetwork& b, double r,
                    const std::vector<char>& skip) {
    const int n = c.n();
    for (int i = 0; i < n; ++i) {
        if (skip[i]) continue;
        for (int j = i + 1; j < n; ++j)
            if (!skip[j] && !b.has_disk_edge(i, j) &&
                (c.centers[i] - c.centers[j]).norm() < 2.0 * r * (1.0 - 1e-7))
                return false;
        for (Wall w : all_walls)
            if (!b.has_wall_edge(i, w) &&
                wall_distance(c.centers[i], w) < r * (1.0 - 1e-7))
                return false;
    }
    return true;
}

CandidateResult try_network(const Configuration& c100, const BondNetwork& net, double h100) {
    CandidateResult cr;
    cr.net = net;
    if (net.size() == 0) return cr;
    const int n = c100.n();
    std::vector<char> free_mask(n, 0);
    for (int i : net.free_disks(n)) free_mask[i] = 1;
    auto w0 = soft_force_weights(c100, net, h100);
    auto sol = solve_tangency_balance(c100, net, w0, preliminary_radius(c100));
    cr.sol = sol;
    if (!sol.converged) return cr;
    double wmin = 0.0;
    for (double w : sol.weights) wmin = std::min(wmin, w);
    if (wmin < -1e-8) return cr;
    for (const auto& p : sol.config.centers)
        if (!(p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0)) return cr;
    if (!separations_ok(sol.config, net, sol.radius, free_mask)) return cr;
    double drift = 0.0;
    for (int i = 0; i < n; ++i) {
        if (free_mask[i]) continue;
        drift = std::max(drift, std::abs(sol.config.centers[i].x - c100.centers[i].x));
        drift = std::max(drift, std::abs(sol.config.centers[i].y - c100.centers[i].y));
    }
    if (drift > 0.08) return cr;
    cr.drift = drift;
    cr.valid = true;
    return cr;
}

/// best clearance position for a free disk, pattern search from its
/// current location; clearance is min gap ratio against disks and walls
double maximize_clearance(Configuration& c, int disk, const BondNetwork& net, double r) {
    auto clearance = [&](const Vec2& q) {
        double cmin = kInf;
        for (int j = 0; j < c.n(); ++j) {
            if (j == disk) continue;
            cmin = std::min(cmin, (q - c.centers[j]).norm() / (2.0 * r));
        }
        for (Wall w : all_walls) cmin = std::min(cmin, wall_distance(q, w) / r);
        (void)net;
        return cmin;
    };
    Vec2 best = c.centers[disk];
    double bc = clearance(best);
    double step = 0.02;
    while (step > 1e-10) {
        bool improved = false;
        const Vec2 moves[4] = {{step, 0}, {-step, 0}, {0, step}, {0, -step}};
        for (const auto& m : moves) {
            Vec2 q = best + m;
            double cl = clearance(q);
            if (cl > bc) {
                bc = cl;
                best = q;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    c.centers[disk] = best;
    return bc;
}

}  // namespace

ResolvedCritical resolve_critical(const Configuration& soft, const EnergyParams& p) {
    ResolvedCritical out;
    out.soft = soft;
    const double h_probe = 2.0 * p.hardness;

    auto cont = continue_critical(soft, p, h_probe);
    if (!cont) {
        out.failure = "continuation diverged";
        return out;
    }
    out.continued = *cont;
    const Configuration& c100 = out.continued;

    // classify features by hardness scaling of their stretch
    auto feats = feature_spectrum(soft, c100);
    BondNetwork base;
    base.radius = preliminary_radius(c100);
    std::vector<Feature> ambiguous;
    for (const auto& f : feats) {
        double lam50 = std::log(std::max(f.l50, 1.0));
        double lam100 = std::log(std::max(f.l100, 1.0));
        bool contact, is_ambiguous = false;
        if (f.l100 <= 1.02)
            contact = true;
        else if (f.l100 >= 1.30)
            contact = false;
        else {
            double ratio = lam50 > 0.0 ? lam100 / lam50 : 0.0;
            if (ratio < 0.60)
                contact = true;
            else if (ratio > 0.95)
                contact = false;
            else {
                contact = false;
                is_ambiguous = true;
            }
        }
        if (contact) {
            if (f.is_pair)
                base.disk_edges.emplace_back(f.i, f.j);
            else
                base.wall_edges.emplace_back(f.i, f.w);
        } else if (is_ambiguous && ambiguous.size() < 4) {
            ambiguous.push_back(f);
        }
    }

    // try every on/off assignment of the ambiguous features; keep the
    // valid candidate closest to the continued point
    CandidateResult best;
    const int m = static_cast<int>(ambiguous.size());
    for (int mask = 0; mask < (1 << m); ++mask) {
        BondNetwork net = base;
        for (int k = 0; k < m; ++k) {
            if (!(mask & (1 << k))) continue;
            const Feature& f = ambiguous[k];
            if (f.is_pair)
                net.disk_edges.emplace_back(f.i, f.j);
            else
                net.wall_edges.emplace_back(f.i, f.w);
        }
        auto cr = try_network(c100, net, h_probe);
        if (cr.valid && cr.drift < best.drift) best = cr;
    }
    if (!best.valid) {
        out.failure = "no consistent balanced tangency network";
        return out;
    }

    // dead bonds: zero weight in every stress of the winning network
    BalanceResult bal = check_balance(best.net, best.sol.config);
    if (!bal.balanced) {
        out.failure = "hardened network not balanced";
        return out;
    }
    out.degenerate = false;
    BondNetwork final_net = best.net;
    TangencySolution final_sol = best.sol;
    if (!bal.dead_bonds.empty()) {
        // drop them and re-solve; the freed geometry tells degenerate
        // tangencies (stay tangent) apart from pockets (separate)
        BondNetwork reduced;
        reduced.radius = best.net.radius;
        const int np = static_cast<int>(best.net.disk_edges.size());
        std::vector<char> dead(best.net.size(), 0);
        for (int e : bal.dead_bonds) dead[e] = 1;
        for (int k = 0; k < np; ++k)
            if (!dead[k]) reduced.disk_edges.push_back(best.net.disk_edges[k]);
        for (int k = np; k < best.net.size(); ++k)
            if (!dead[k]) reduced.wall_edges.push_back(best.net.wall_edges[k - np]);
        auto cr2 = try_network(c100, reduced, h_probe);
        if (cr2.valid) {
            auto freed = reduced.free_disks(soft.n());
            auto freed_before = best.net.free_disks(soft.n());
            out.freed_disks = static_cast<int>(freed.size() - freed_before.size());
            // measure the dropped features at the reduced solution (bonds
            // touching freed disks are judged after pocket placement)
            bool any_tangent = false;
            std::vector<char> freed_mask(soft.n(), 0);
            for (int i : freed) freed_mask[i] = 1;
            for (int e : bal.dead_bonds) {
                double len, target;
                if (e < np) {
                    auto [i, j] = best.net.disk_edges[e];
                    if (freed_mask[i] || freed_mask[j]) continue;
                    len = (cr2.sol.config.centers[i] - cr2.sol.config.centers[j]).norm();
                    target = 2.0 * cr2.sol.radius;
                } else {
                    auto [i, w] = best.net.wall_edges[e - np];
                    if (freed_mask[i]) continue;
                    len = wall_distance(cr2.sol.config.centers[i], w);
                    target = cr2.sol.radius;
                }
                if (len <= target * (1.0 + 1e-7)) any_tangent = true;
            }
            if (any_tangent || out.freed_disks == 0) {
                // redundant tangent contacts: genuinely degenerate type
                out.degenerate = true;
                out.dead_bonds = bal.dead_bonds;
            } else {
                // pocket structure: freed disks are placed at their best
                // clearance; reject if a freed disk cannot fit
                final_net = reduced;
                final_sol = cr2.sol;
                for (int i : freed) {
                    final_sol.config.centers[i] = c100.centers[i];
                    double cl = maximize_clearance(final_sol.config, i, final_net,
                                                   final_sol.radius);
                    if (cl < 1.0 - 1e-7) {
                        out.failure = "freed disk does not fit its pocket";
                        return out;
                    }
                }
            }
        } else {
            // reduction failed: keep the full network and call it degenerate
            out.degenerate = true;
            out.dead_bonds = bal.dead_bonds;
        }
    }
    // free disks present from the start also get a pocket placement
    for (int i : final_net.free_disks(soft.n())) {
        bool already_placed = false;
        for (int k = 0; k < soft.n(); ++k) (void)k;
        if (!already_placed &&
            final_sol.config.centers[i].x == c100.centers[i].x &&
            final_sol.config.centers[i].y == c100.centers[i].y) {
            double cl = maximize_clearance(final_sol.config, i, final_net, final_sol.radius);
            if (cl < 1.0 - 1e-7) {
                out.failure = "free disk does not fit its pocket";
                return out;
            }
        }
    }

    out.hard.config = final_sol.config;
    out.hard.radius = final_sol.radius;
    out.hard.residual = max_violation(final_sol.config, final_net, final_sol.radius);
    out.hard.source_bonds = final_net;
    out.hard.source_bonds.radius = final_sol.radius;
    out.hard.feasible = true;
    out.weights = final_sol.weights;
    out.drift = best.drift;
    out.ok = true;
    return out;
}

}  // namespace diskmorse
