#ifndef DISKMORSE_HARDEN_HPP
#define DISKMORSE_HARDEN_HPP

#include <optional>
#include <vector>

#include "diskmorse/bonds.hpp"
#include "diskmorse/energy.hpp"
#include "diskmorse/geometry.hpp"

namespace diskmorse {

/// Exact hard critical point recovered from a softened one.
struct HardenedPoint {
    Configuration config;
    double radius = 0.0;
    double residual = 0.0;  // max tangency violation over the bonds
    BondNetwork source_bonds;
    bool feasible = false;
};

/// Spring relaxation: wall bonds relax toward length s, pair bonds toward
/// 2s, s re-averaged every outer iteration until the residual stalls
/// below 1e-10 and s moves less than 1e-12. Divergence (residual not
/// shrinking tenfold across ten outer rounds) is reported as infeasible.
HardenedPoint harden(const Configuration& c, const BondNetwork& b);

/// Re-extracts the bond network at the hardened point (slack 10*residual)
/// and checks mechanical balance; a true critical point must be balanced.
BalanceResult verify_hard_critical(const HardenedPoint& hp);

/// Track the critical point of E to a different hardness by Newton on
/// grad E = 0 (damped least-squares steps). Fails when the point moves
/// more than 0.1 or iterates outside the square.
std::optional<Configuration> continue_critical(const Configuration& c,
                                               const EnergyParams& from,
                                               double target_hardness);

/// Solve the coupled tangency + mechanical-equilibrium system in
/// (positions, radius, weights): every bond exactly tangent, zero net
/// force with the bond weights at every disk, weights summing to 1.
/// Square system; damped least-squares Newton handles the rank-deficient
/// cases (critical submanifolds, non-unique stresses).
struct TangencySolution {
    Configuration config;
    double radius = 0.0;
    std::vector<double> weights;  // disk edges then wall edges
    double residual = 0.0;
    bool converged = false;
};
TangencySolution solve_tangency_balance(const Configuration& start, const BondNetwork& b,
                                        std::vector<double> w0, double r0);

/// Full soft-to-hard resolution of one converged critical point of E:
///  1. hardness continuation 50 -> 100 sharpens contacts against gaps;
///  2. features are classified contact/gap by how their stretch scales
///     with hardness; ambiguous ones are tried both ways;
///  3. each candidate network is solved by tangency+balance Newton and
///     validated (non-overlap, weight signs, drift); smallest drift wins;
///  4. bonds carrying no weight in any stress are dropped and re-solved;
///     contacts that then separate reveal pocket/rattler structure
///     (free disks), contacts that stay tangent mark a degenerate type.
struct ResolvedCritical {
    bool ok = false;
    std::string failure;       // why resolution was rejected
    Configuration soft;        // input critical point of E (h = 50)
    Configuration continued;   // tracked to the probe hardness
    HardenedPoint hard;        // exact point; radius to 5+ digits
    std::vector<double> weights;
    bool degenerate = false;
    std::vector<int> dead_bonds;   // zero-stress bonds (kept only when tangent)
    int freed_disks = 0;           // disks released by dead-bond removal
    double drift = 0.0;            // |hard - continued|_inf
};
ResolvedCritical resolve_critical(const Configuration& soft, const EnergyParams& p);

}  // namespace diskmorse

#endif
