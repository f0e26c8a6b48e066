#ifndef DISKMORSE_GEOMETRY_HPP
#define DISKMORSE_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace diskmorse {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

/// Labeled configuration of n disk centers in the unit square.
/// Entry i is disk i; the order carries the labels.
struct Configuration {
    std::vector<Vec2> centers;

    Configuration() = default;
    explicit Configuration(std::vector<Vec2> c) : centers(std::move(c)) {}

    int n() const { return static_cast<int>(centers.size()); }

    // flat view: (x0,y0,x1,y1,...)
    std::vector<double> flat() const;
    static Configuration from_flat(std::span<const double> v);
};

enum class Wall : int { Left = 0, Right = 1, Bottom = 2, Top = 3 };

constexpr std::array<Wall, 4> all_walls{Wall::Left, Wall::Right, Wall::Bottom, Wall::Top};

inline double wall_distance(const Vec2& p, Wall w) {
    switch (w) {
        case Wall::Left: return p.x;
        case Wall::Right: return 1.0 - p.x;
        case Wall::Bottom: return p.y;
        case Wall::Top: return 1.0 - p.y;
    }
    return 0.0;
}

/// Outward unit normal of the wall (pointing from the square's interior
/// toward the wall).
inline Vec2 wall_normal(Wall w) {
    switch (w) {
        case Wall::Left: return {-1.0, 0.0};
        case Wall::Right: return {1.0, 0.0};
        case Wall::Bottom: return {0.0, -1.0};
        case Wall::Top: return {0.0, 1.0};
    }
    return {0.0, 0.0};
}

char wall_letter(Wall w);
Wall wall_from_letter(char c);

/// Largest radius at which the disks neither overlap each other nor
/// poke out of the unit square. Coincident centers give 0.
double preliminary_radius(const Configuration& c);

/// One of the 8 dihedral symmetries of the unit square.
/// code bit 2 = transpose (reflection across the main diagonal),
/// bits 0-1 = number of subsequent 90-degree rotations.
struct SquareSymmetry {
    int code = 0;

    Vec2 apply(Vec2 p) const {
        if (code & 4) std::swap(p.x, p.y);
        for (int k = code & 3; k > 0; --k) p = Vec2{1.0 - p.y, p.x};
        return p;
    }

    SquareSymmetry inverse() const;

    static const std::array<SquareSymmetry, 8>& all();
};

/// Configuration with center i = g applied to centers[perm[i]].
Configuration apply_symmetry(const Configuration& c, const SquareSymmetry& g,
                             std::span<const int> perm);

/// g applied with the identity relabeling.
Configuration apply_symmetry(const Configuration& c, const SquareSymmetry& g);

/// 12-significant-digit coordinate formatting, shared by all writers.
std::string format_coord(double v);

std::string configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const std::string& text);

}  // namespace diskmorse

#endif
