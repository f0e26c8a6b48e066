#include "diskmorse/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace diskmorse {

namespace {

std::int64_t quantize(double v, double tol) {
    return static_cast<std::int64_t>(std::llround(v / tol));
}

std::vector<std::int64_t> quantize_all(const Configuration& c, double tol) {
    std::vector<std::int64_t> q;
    q.reserve(2 * c.centers.size());
    for (const auto& p : c.centers) {
        q.push_back(quantize(p.x, tol));
        q.push_back(quantize(p.y, tol));
    }
    return q;
}

}  // namespace

std::string SymmetryClassKey::str() const {
    std::string s;
    for (auto v : quantized) {
        s += std::to_string(v);
        s += ',';
    }
    return s;
}

SymmetryClassKey canonicalize(const Configuration& c, double tol) {
    SymmetryClassKey key;
    key.tol = tol;
    bool first = true;
    for (const auto& g : SquareSymmetry::all()) {
        Configuration t = apply_symmetry(c, g);
        // sort centers by quantized (x,y); keep real coordinates alongside
        std::vector<int> order(t.centers.size());
        std::iota(order.begin(), order.end(), 0);
        std::vector<std::int64_t> qx(t.centers.size()), qy(t.centers.size());
        for (size_t i = 0; i < t.centers.size(); ++i) {
            qx[i] = quantize(t.centers[i].x, tol);
            qy[i] = quantize(t.centers[i].y, tol);
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (qx[a] != qx[b]) return qx[a] < qx[b];
            if (qy[a] != qy[b]) return qy[a] < qy[b];
            // tie on the grid: fall back to exact coordinates for determinism
            if (t.centers[a].x != t.centers[b].x) return t.centers[a].x < t.centers[b].x;
            return t.centers[a].y < t.centers[b].y;
        });
        Configuration sorted;
        sorted.centers.reserve(t.centers.size());
        for (int i : order) sorted.centers.push_back(t.centers[i]);
        auto q = quantize_all(sorted, tol);
        if (first || q < key.quantized) {
            key.quantized = std::move(q);
            key.canonical = std::move(sorted);
            first = false;
        }
    }
    return key;
}

namespace {

/// max-norm distance between configurations as labeled point sets
double linf_dist(const Configuration& a, const Configuration& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.centers.size(); ++i) {
        m = std::max(m, std::abs(a.centers[i].x - b.centers[i].x));
        m = std::max(m, std::abs(a.centers[i].y - b.centers[i].y));
    }
    return m;
}

template <typename Visit>
void for_each_group_element(int n, Visit&& visit) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (const auto& g : SquareSymmetry::all()) visit(g, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

int orbit_size(const Configuration& c, double tol) {
    const int n = c.n();
    long long group = 8;
    for (int k = 2; k <= n; ++k) group *= k;
    int stab = 0;
    bool ambiguous = false;
    for_each_group_element(n, [&](const SquareSymmetry& g, const std::vector<int>& perm) {
        Configuration img = apply_symmetry(c, g, perm);
        double d = linf_dist(img, c);
        if (d <= tol)
            ++stab;
        else if (d <= 10.0 * tol)
            ambiguous = true;
    });
    if (ambiguous) throw std::runtime_error("orbit_size: ambiguous orbit at this tolerance");
    if (stab == 0 || group % stab != 0)
        throw std::runtime_error("orbit_size: stabilizer does not divide group order");
    return static_cast<int>(group / stab);
}

std::vector<Configuration> expand_orbit(const Configuration& c, double tol) {
    const int n = c.n();
    std::unordered_set<std::string> seen;
    std::vector<Configuration> out;
    for_each_group_element(n, [&](const SquareSymmetry& g, const std::vector<int>& perm) {
        Configuration img = apply_symmetry(c, g, perm);
        std::string k;
        for (const auto& p : img.centers) {
            k += std::to_string(quantize(p.x, tol));
            k += ',';
            k += std::to_string(quantize(p.y, tol));
            k += ';';
        }
        if (seen.insert(std::move(k)).second) out.push_back(std::move(img));
    });
    return out;
}

bool orbit_equivalent(const Configuration& a, const Configuration& b, double tol) {
    if (a.n() != b.n()) return false;
    if (canonicalize(a, tol) == canonicalize(b, tol)) return true;
    // quantization can split orbit-equal configurations that straddle a grid
    // boundary; fall back to a direct group search with metric matching
    bool match = false;
    for_each_group_element(a.n(), [&](const SquareSymmetry& g, const std::vector<int>& perm) {
        if (match) return;
        if (linf_dist(apply_symmetry(a, g, perm), b) <= tol) match = true;
    });
    return match;
}

}  // namespace diskmorse
