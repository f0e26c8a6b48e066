#include "diskmorse/energy.hpp"

#include <cmath>
#include <limits>

namespace diskmorse {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// base^(-h); fast integer-exponent path (h=50 in practice).
inline double recip_pow(double base, double h) {
    int ih = static_cast<int>(h);
    if (static_cast<double>(ih) == h && ih > 0 && ih <= 1024) {
        double u = 1.0 / base;
        double r = 1.0;
        while (ih) {
            if (ih & 1) r *= u;
            u *= u;
            ih >>= 1;
        }
        return r;
    }
    return std::pow(base, -h);
}

inline bool in_open_square(std::span<const double> v) {
    for (double x : v)
        if (!(x > 0.0 && x < 1.0)) return false;
    return true;
}

}  // namespace

double energy_flat(std::span<const double> v, const EnergyParams& p) {
    if (!in_open_square(v)) return kInf;
    const double h = p.hardness;
    const int n = static_cast<int>(v.size() / 2);
    double E = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = v[2 * i], yi = v[2 * i + 1];
        E += recip_pow(xi, h) + recip_pow(1.0 - xi, h);
        E += recip_pow(yi, h) + recip_pow(1.0 - yi, h);
        for (int j = i + 1; j < n; ++j) {
            const double dx = xi - v[2 * j], dy = yi - v[2 * j + 1];
            const double d = std::sqrt(dx * dx + dy * dy);
            if (d == 0.0) return kInf;
            E += recip_pow(0.5 * d, h);
        }
    }
    return E;
}

double energy_gradient_flat(std::span<const double> v, const EnergyParams& p,
                            std::span<double> g) {
    if (!in_open_square(v)) return kInf;
    const double h = p.hardness;
    const int n = static_cast<int>(v.size() / 2);
    std::fill(g.begin(), g.end(), 0.0);
    double E = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = v[2 * i], yi = v[2 * i + 1];
        {
            double t = recip_pow(xi, h);
            E += t;
            g[2 * i] += -h * t / xi;
            t = recip_pow(1.0 - xi, h);
            E += t;
            g[2 * i] += h * t / (1.0 - xi);
            t = recip_pow(yi, h);
            E += t;
            g[2 * i + 1] += -h * t / yi;
            t = recip_pow(1.0 - yi, h);
            E += t;
            g[2 * i + 1] += h * t / (1.0 - yi);
        }
        for (int j = i + 1; j < n; ++j) {
            const double dx = xi - v[2 * j], dy = yi - v[2 * j + 1];
            const double d2 = dx * dx + dy * dy;
            if (d2 == 0.0) return kInf;
            const double t = recip_pow(0.5 * std::sqrt(d2), h);
            E += t;
            const double c = -h * t / d2;  // dE/du = c*u for u = x_i - x_j
            g[2 * i] += c * dx;
            g[2 * i + 1] += c * dy;
            g[2 * j] -= c * dx;
            g[2 * j + 1] -= c * dy;
        }
    }
    return E;
}

double energy_hessian_flat(std::span<const double> v, const EnergyParams& p,
                           std::span<double> g, Matrix& H) {
    if (!in_open_square(v)) return kInf;
    const double h = p.hardness;
    const int n = static_cast<int>(v.size() / 2);
    const int dim = 2 * n;
    if (H.n != dim) H = Matrix(dim);
    std::fill(H.a.begin(), H.a.end(), 0.0);
    std::fill(g.begin(), g.end(), 0.0);
    double E = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = v[2 * i], yi = v[2 * i + 1];
        // wall terms: f = dist^-h, f' = -h f/dist (toward increasing coord),
        // f'' = h(h+1) f/dist^2 on the matching diagonal entry
        {
            double t = recip_pow(xi, h);
            E += t;
            g[2 * i] += -h * t / xi;
            H.at(2 * i, 2 * i) += h * (h + 1) * t / (xi * xi);
            t = recip_pow(1.0 - xi, h);
            E += t;
            g[2 * i] += h * t / (1.0 - xi);
            H.at(2 * i, 2 * i) += h * (h + 1) * t / ((1.0 - xi) * (1.0 - xi));
            t = recip_pow(yi, h);
            E += t;
            g[2 * i + 1] += -h * t / yi;
            H.at(2 * i + 1, 2 * i + 1) += h * (h + 1) * t / (yi * yi);
            t = recip_pow(1.0 - yi, h);
            E += t;
            g[2 * i + 1] += h * t / (1.0 - yi);
            H.at(2 * i + 1, 2 * i + 1) += h * (h + 1) * t / ((1.0 - yi) * (1.0 - yi));
        }
        for (int j = i + 1; j < n; ++j) {
            const double dx = xi - v[2 * j], dy = yi - v[2 * j + 1];
            const double d2 = dx * dx + dy * dy;
            if (d2 == 0.0) return kInf;
            const double t = recip_pow(0.5 * std::sqrt(d2), h);
            E += t;
            const double c = -h * t / d2;
            g[2 * i] += c * dx;
            g[2 * i + 1] += c * dy;
            g[2 * j] -= c * dx;
            g[2 * j + 1] -= c * dy;
            // block A = (h t/d2) * ((h+2) u u^T / d2 - I)
            const double b = h * t / d2;
            const double q = b * (h + 2) / d2;
            const double axx = q * dx * dx - b;
            const double axy = q * dx * dy;
            const double ayy = q * dy * dy - b;
            const int I = 2 * i, J = 2 * j;
            H.at(I, I) += axx;
            H.at(I, I + 1) += axy;
            H.at(I + 1, I) += axy;
            H.at(I + 1, I + 1) += ayy;
            H.at(J, J) += axx;
            H.at(J, J + 1) += axy;
            H.at(J + 1, J) += axy;
            H.at(J + 1, J + 1) += ayy;
            H.at(I, J) -= axx;
            H.at(I, J + 1) -= axy;
            H.at(I + 1, J) -= axy;
            H.at(I + 1, J + 1) -= ayy;
            H.at(J, I) -= axx;
            H.at(J, I + 1) -= axy;
            H.at(J + 1, I) -= axy;
            H.at(J + 1, I + 1) -= ayy;
        }
    }
    H.symmetrize();
    return E;
}

double grad_norm_sq_flat(std::span<const double> v, const EnergyParams& p) {
    std::vector<double> g(v.size());
    double E = energy_gradient_flat(v, p, g);
    if (!std::isfinite(E)) return kInf;
    return dot(g, g);
}

double grad_F_flat(std::span<const double> v, const EnergyParams& p, std::span<double> gF) {
    const int dim = static_cast<int>(v.size());
    std::vector<double> g(dim);
    Matrix H(dim);
    double E = energy_hessian_flat(v, p, g, H);
    if (!std::isfinite(E)) {
        std::fill(gF.begin(), gF.end(), kInf);
        return kInf;
    }
    auto Hg = H.multiply(g);
    double F = dot(g, g);
    for (int i = 0; i < dim; ++i) gF[i] = 2.0 * Hg[i];
    return F;
}

double energy(const Configuration& c, const EnergyParams& p) {
    return energy_flat(c.flat(), p);
}

std::vector<double> gradient(const Configuration& c, const EnergyParams& p) {
    auto v = c.flat();
    std::vector<double> g(v.size());
    energy_gradient_flat(v, p, g);
    return g;
}

Matrix hessian(const Configuration& c, const EnergyParams& p) {
    auto v = c.flat();
    std::vector<double> g(v.size());
    Matrix H(static_cast<int>(v.size()));
    energy_hessian_flat(v, p, g, H);
    return H;
}

double grad_norm_sq(const Configuration& c, const EnergyParams& p) {
    return grad_norm_sq_flat(c.flat(), p);
}

std::vector<double> grad_F(const Configuration& c, const EnergyParams& p) {
    auto v = c.flat();
    std::vector<double> gF(v.size());
    grad_F_flat(v, p, gF);
    return gF;
}

}  // namespace diskmorse
