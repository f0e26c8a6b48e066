#ifndef DISKMORSE_SYMMETRY_HPP
#define DISKMORSE_SYMMETRY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "diskmorse/geometry.hpp"

namespace diskmorse {

/// Deterministic representative of the orbit of a configuration under
/// relabelings x square symmetries. Comparison is on coordinates
/// quantized to a grid of pitch tol, so near-equal values cannot flip
/// the lexicographic order.
struct SymmetryClassKey {
    Configuration canonical;
    double tol = 1e-4;
    std::vector<std::int64_t> quantized;  // 2n grid indices of canonical

    bool operator==(const SymmetryClassKey& o) const { return quantized == o.quantized; }
    bool operator<(const SymmetryClassKey& o) const { return quantized < o.quantized; }

    std::string str() const;
};

SymmetryClassKey canonicalize(const Configuration& c, double tol = 1e-4);

/// Number of distinct labeled configurations in the orbit of c under the
/// group of size 8*n! (square symmetries x relabelings), computed as
/// 8*n!/|stabilizer|. Throws if a group image is suspiciously close to c
/// (within 10*tol) without matching within tol.
int orbit_size(const Configuration& c, double tol = 1e-4);

/// All distinct labeled configurations in the orbit of c.
std::vector<Configuration> expand_orbit(const Configuration& c, double tol = 1e-4);

/// True if a and b lie in the same orbit (keys equal at tol).
bool orbit_equivalent(const Configuration& a, const Configuration& b, double tol = 1e-4);

}  // namespace diskmorse

#endif
