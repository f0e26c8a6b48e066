#include "diskmorse/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace diskmorse {

std::vector<double> Configuration::flat() const {
    std::vector<double> v;
    v.reserve(2 * centers.size());
    for (const auto& p : centers) {
        v.push_back(p.x);
        v.push_back(p.y);
    }
    return v;
}

Configuration Configuration::from_flat(std::span<const double> v) {
    Configuration c;
    c.centers.reserve(v.size() / 2);
    for (size_t i = 0; i + 1 < v.size(); i += 2) c.centers.emplace_back(v[i], v[i + 1]);
    return c;
}

char wall_letter(Wall w) {
    switch (w) {
        case Wall::Left: return 'L';
        case Wall::Right: return 'R';
        case Wall::Bottom: return 'B';
        case Wall::Top: return 'T';
    }
    return '?';
}

Wall wall_from_letter(char c) {
    switch (c) {
        case 'L': return Wall::Left;
        case 'R': return Wall::Right;
        case 'B': return Wall::Bottom;
        case 'T': return Wall::Top;
    }
    throw std::invalid_argument("unknown wall letter");
}

double preliminary_radius(const Configuration& c) {
    double r = std::numeric_limits<double>::infinity();
    const int n = c.n();
    for (int i = 0; i < n; ++i) {
        const Vec2& p = c.centers[i];
        r = std::min({r, p.x, 1.0 - p.x, p.y, 1.0 - p.y});
        for (int j = i + 1; j < n; ++j) {
            r = std::min(r, 0.5 * (p - c.centers[j]).norm());
        }
    }
    return std::max(r, 0.0);
}

SquareSymmetry SquareSymmetry::inverse() const {
    // small group: find the element that composes to identity
    for (const auto& g : all()) {
        Vec2 a = g.apply(apply(Vec2{0.25, 0.125}));
        if (std::abs(a.x - 0.25) < 1e-12 && std::abs(a.y - 0.125) < 1e-12) return g;
    }
    return {};
}

const std::array<SquareSymmetry, 8>& SquareSymmetry::all() {
    static const std::array<SquareSymmetry, 8> g = {
        SquareSymmetry{0}, SquareSymmetry{1}, SquareSymmetry{2}, SquareSymmetry{3},
        SquareSymmetry{4}, SquareSymmetry{5}, SquareSymmetry{6}, SquareSymmetry{7}};
    return g;
}

Configuration apply_symmetry(const Configuration& c, const SquareSymmetry& g,
                             std::span<const int> perm) {
    Configuration out;
    const int n = c.n();
    out.centers.resize(n);
    for (int i = 0; i < n; ++i) out.centers[i] = g.apply(c.centers[perm[i]]);
    return out;
}

Configuration apply_symmetry(const Configuration& c, const SquareSymmetry& g) {
    Configuration out;
    out.centers.reserve(c.centers.size());
    for (const auto& p : c.centers) out.centers.push_back(g.apply(p));
    return out;
}

std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string configuration_to_json(const Configuration& c) {
    std::string s = "{\"n\": " + std::to_string(c.n()) + ", \"centers\": [";
    for (int i = 0; i < c.n(); ++i) {
        if (i) s += ", ";
        s += "[" + format_coord(c.centers[i].x) + ", " + format_coord(c.centers[i].y) + "]";
    }
    s += "]}";
    return s;
}

Configuration configuration_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Configuration c;
    for (const auto& e : j.at("centers")) c.centers.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    if (j.at("n").get<int>() != c.n()) throw std::runtime_error("configuration n mismatch");
    return c;
}

}  // namespace diskmorse
