#include "diskmorse/bonds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diskmorse/lp.hpp"
#include "diskmorse/optimize.hpp"
#include "json.hpp"

namespace diskmorse {

bool BondNetwork::has_disk_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (auto& e : disk_edges)
        if (e.first == i && e.second == j) return true;
    return false;
}

bool BondNetwork::has_wall_edge(int i, Wall w) const {
    for (auto& e : wall_edges)
        if (e.first == i && e.second == w) return true;
    return false;
}

std::vector<int> BondNetwork::free_disks(int n) const {
    std::vector<int> deg(n, 0);
    for (auto& e : disk_edges) {
        ++deg[e.first];
        ++deg[e.second];
    }
    for (auto& e : wall_edges) ++deg[e.first];
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (deg[i] == 0) out.push_back(i);
    return out;
}

int BondNetwork::degree(int i) const {
    int d = 0;
    for (auto& e : disk_edges) d += (e.first == i) + (e.second == i);
    for (auto& e : wall_edges) d += (e.first == i);
    return d;
}

std::string BondNetwork::to_json() const {
    std::string s = "{\"disk_edges\": [";
    for (size_t k = 0; k < disk_edges.size(); ++k) {
        if (k) s += ", ";
        s += "[" + std::to_string(disk_edges[k].first) + ", " +
             std::to_string(disk_edges[k].second) + "]";
    }
    s += "], \"wall_edges\": [";
    for (size_t k = 0; k < wall_edges.size(); ++k) {
        if (k) s += ", ";
        s += "[" + std::to_string(wall_edges[k].first) + ", \"" +
             std::string(1, wall_letter(wall_edges[k].second)) + "\"]";
    }
    s += "], \"radius\": " + format_coord(radius) + "}";
    return s;
}

BondNetwork BondNetwork::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    BondNetwork b;
    for (const auto& e : j.at("disk_edges"))
        b.disk_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& e : j.at("wall_edges"))
        b.wall_edges.emplace_back(e.at(0).get<int>(),
                                  wall_from_letter(e.at(1).get<std::string>()[0]));
    b.radius = j.at("radius").get<double>();
    return b;
}

BondNetwork extract_bonds(const Configuration& c, double eps) {
    const double r = preliminary_radius(c);
    BondNetwork b;
    b.radius = r;
    const int n = c.n();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j)
            if ((c.centers[i] - c.centers[j]).norm() <= (2.0 + eps) * r)
                b.disk_edges.emplace_back(i, j);
        for (Wall w : all_walls)
            if (wall_distance(c.centers[i], w) <= (1.0 + eps) * r)
                b.wall_edges.emplace_back(i, w);
    }
    return b;
}

BondNetwork extract_bonds_abs(const Configuration& c, double r, double slack) {
    BondNetwork b;
    b.radius = r;
    const int n = c.n();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j)
            if ((c.centers[i] - c.centers[j]).norm() <= 2.0 * r + slack)
                b.disk_edges.emplace_back(i, j);
        for (Wall w : all_walls)
            if (wall_distance(c.centers[i], w) <= r + slack)
                b.wall_edges.emplace_back(i, w);
    }
    return b;
}

std::vector<std::vector<double>> equilibrium_matrix(const BondNetwork& b,
                                                    const Configuration& c) {
    const int n = c.n();
    const int nb = b.size();
    std::vector<std::vector<double>> A(2 * n, std::vector<double>(nb, 0.0));
    int col = 0;
    for (auto& e : b.disk_edges) {
        Vec2 u = c.centers[e.second] - c.centers[e.first];
        double d = u.norm();
        u = u * (1.0 / d);
        A[2 * e.first][col] = u.x;
        A[2 * e.first + 1][col] = u.y;
        A[2 * e.second][col] = -u.x;
        A[2 * e.second + 1][col] = -u.y;
        ++col;
    }
    for (auto& e : b.wall_edges) {
        Vec2 nv = wall_normal(e.second);
        A[2 * e.first][col] = nv.x;
        A[2 * e.first + 1][col] = nv.y;
        ++col;
    }
    return A;
}

BalanceResult check_balance(const BondNetwork& b, const Configuration& c) {
    BalanceResult res;
    const int nb = b.size();
    if (nb == 0) return res;  // empty network: not balanced
    const int n = c.n();
    auto A = equilibrium_matrix(b, c);
    // normalization row sum w = 1
    A.emplace_back(nb, 1.0);
    std::vector<double> rhs(2 * n + 1, 0.0);
    rhs[2 * n] = 1.0;
    auto lp = solve_equality_feasibility(A, rhs);
    res.balanced = lp.feasible;
    res.residual = lp.residual;
    if (!lp.feasible) {
        res.farkas = lp.farkas;
        return res;
    }
    res.weights = lp.solution;
    // a bond is dead when no balanced stress puts weight on it: test
    // feasibility of {A w = 0, w >= 0, w_e = 1}
    for (int e = 0; e < nb; ++e) {
        auto Ae = equilibrium_matrix(b, c);
        std::vector<double> fix(nb, 0.0);
        fix[e] = 1.0;
        Ae.push_back(std::move(fix));
        std::vector<double> rhs_e(2 * n + 1, 0.0);
        rhs_e[2 * n] = 1.0;
        if (!solve_equality_feasibility(Ae, rhs_e).feasible) res.dead_bonds.push_back(e);
    }
    res.degenerate = !res.dead_bonds.empty();
    return res;
}

namespace {

/// wall-to-wall straight rows of bonded disks (each contributes one
/// sliding degree of freedom)
int count_rows(const BondNetwork& b, const Configuration& c) {
    const int n = c.n();
    int rows = 0;
    for (int axis = 0; axis < 2; ++axis) {
        Wall lo = axis == 0 ? Wall::Left : Wall::Bottom;
        Wall hi = axis == 0 ? Wall::Right : Wall::Top;
        std::vector<char> used(n, 0);
        for (int s = 0; s < n; ++s) {
            if (used[s] || !b.has_wall_edge(s, lo)) continue;
            // walk the chain of collinear bonded disks
            std::vector<int> chain{s};
            std::vector<char> in_chain(n, 0);
            in_chain[s] = 1;
            bool grew = true;
            while (grew) {
                grew = false;
                int tail = chain.back();
                for (auto& e : b.disk_edges) {
                    int other = -1;
                    if (e.first == tail) other = e.second;
                    if (e.second == tail) other = e.first;
                    if (other < 0 || in_chain[other]) continue;
                    double off = axis == 0 ? std::abs(c.centers[other].y - c.centers[tail].y)
                                           : std::abs(c.centers[other].x - c.centers[tail].x);
                    if (off <= 1e-6) {
                        chain.push_back(other);
                        in_chain[other] = 1;
                        grew = true;
                        break;
                    }
                }
            }
            if (!b.has_wall_edge(chain.back(), hi)) continue;
            // the slide is free only if no chain disk has a bond outside the
            // chain itself and its two end walls
            bool slideable = true;
            for (size_t k = 0; k < chain.size() && slideable; ++k) {
                int i = chain[k];
                for (auto& e : b.disk_edges) {
                    if (e.first != i && e.second != i) continue;
                    int other = e.first == i ? e.second : e.first;
                    if (!in_chain[other]) slideable = false;
                }
                for (Wall w : all_walls) {
                    if (!b.has_wall_edge(i, w)) continue;
                    bool end_wall = (k == 0 && w == lo) || (k + 1 == chain.size() && w == hi);
                    if (!end_wall) slideable = false;
                }
            }
            if (slideable) {
                ++rows;
                for (int i : chain) used[i] = 1;
            }
        }
    }
    return rows;
}

}  // namespace

IndexReport classify_index(const Configuration& c, const BondNetwork& b,
                           const EnergyParams& p) {
    const double E = energy(c, p);
    const double F = grad_norm_sq(c, p);
    if (!(F <= critical_threshold_F(E)))
        throw std::invalid_argument("classify_index: configuration is not a critical point");
    Matrix H = hessian(c, p);
    IndexReport rep;
    rep.eigenvalues = jacobi_eigenvalues(H);
    double amax = 0.0;
    for (double v : rep.eigenvalues) amax = std::max(amax, std::abs(v));
    const double tau = 1e-6 * amax;
    int near_zero = 0;
    bool gray = false;
    for (double v : rep.eigenvalues) {
        if (v < -tau) rep.negative_eigenvalues.push_back(v);
        if (std::abs(v) <= tau) ++near_zero;
        if (std::abs(v) > tau / 10.0 && std::abs(v) < 10.0 * tau) gray = true;
    }
    rep.index = static_cast<int>(rep.negative_eigenvalues.size());
    rep.rattlers = static_cast<int>(b.free_disks(c.n()).size());
    rep.rows = count_rows(b, c);
    rep.submanifold_dim = 2 * rep.rattlers + rep.rows;
    rep.spectrum_consistent = near_zero <= rep.submanifold_dim;
    if (gray) rep.method = IndexReport::Method::Cone;
    return rep;
}

}  // namespace diskmorse
