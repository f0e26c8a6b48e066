#ifndef DISKMORSE_BONDS_HPP
#define DISKMORSE_BONDS_HPP

#include <string>
#include <utility>
#include <vector>

#include "diskmorse/energy.hpp"
#include "diskmorse/geometry.hpp"

namespace diskmorse {

/// Tangency graph of a configuration: disk-disk edges and disk-wall edges.
struct BondNetwork {
    std::vector<std::pair<int, int>> disk_edges;   // i < j
    std::vector<std::pair<int, Wall>> wall_edges;
    double radius = 0.0;  // preliminary radius used at extraction

    int size() const { return static_cast<int>(disk_edges.size() + wall_edges.size()); }
    bool has_disk_edge(int i, int j) const;
    bool has_wall_edge(int i, Wall w) const;
    /// disks with no incident edge
    std::vector<int> free_disks(int n) const;
    int degree(int i) const;

    std::string to_json() const;
    static BondNetwork from_json(const std::string& text);
};

/// Pairs within (2+eps)*r of each other, walls within (1+eps)*r,
/// r = preliminary_radius(c).
BondNetwork extract_bonds(const Configuration& c, double eps);

/// Same with an absolute slack: pairs with d <= 2r + slack, walls with
/// dist <= r + slack (used when re-checking hardened points).
BondNetwork extract_bonds_abs(const Configuration& c, double r, double slack);

struct BalanceResult {
    bool balanced = false;
    std::vector<double> weights;   // per bond (disk edges then wall edges), sum 1
    bool degenerate = false;       // some bond carries zero weight in every stress
    std::vector<int> dead_bonds;   // indices of such bonds
    std::vector<double> farkas;    // infeasibility certificate when not balanced
    double residual = 0.0;
};

/// Mechanical balance via linear feasibility: nonnegative weights, one per
/// bond, summing to 1, with zero net force at every disk. Wall edges pull
/// toward the wall (outward normal); the wall itself carries no equation.
BalanceResult check_balance(const BondNetwork& b, const Configuration& c);

/// Build the equilibrium matrix (2n rows, one column per bond).
std::vector<std::vector<double>> equilibrium_matrix(const BondNetwork& b,
                                                    const Configuration& c);

struct IndexReport {
    int index = 0;
    enum class Method { Hessian, Cone } method = Method::Hessian;
    int submanifold_dim = 0;
    std::vector<double> negative_eigenvalues;
    std::vector<double> eigenvalues;  // full ascending spectrum
    int rattlers = 0;                 // disks without bonds
    int rows = 0;                     // wall-to-wall straight rows
    bool spectrum_consistent = true;  // near-zero count agrees with structure
};

/// Morse index from the Hessian spectrum of E at a converged critical
/// point; eigenvalues below -tau count, tau = 1e-6 * max |eigenvalue|.
/// A spectrum with entries within a decade of tau on both sides is
/// flagged Method::Cone and left for offline classification.
/// submanifold_dim comes from the bond structure (2 per rattler, 1 per
/// wall-to-wall row), cross-checked against the |eigenvalue| <= tau count.
IndexReport classify_index(const Configuration& c, const BondNetwork& b,
                           const EnergyParams& p);

}  // namespace diskmorse

#endif
