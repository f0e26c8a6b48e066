#include "diskmorse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace diskmorse {

void Matrix::symmetrize() {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (at(i, j) + at(j, i));
            at(i, j) = v;
            at(j, i) = v;
        }
}

double Matrix::max_asymmetry() const {
    double scale = 0.0, asym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(at(i, j)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(at(i, j) - at(j, i)));
    return scale > 0 ? asym / scale : 0.0;
}

double Matrix::frobenius() const {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

std::vector<double> Matrix::multiply(std::span<const double> v) const {
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        const double* row = &a[static_cast<size_t>(i) * n];
        for (int j = 0; j < n; ++j) s += row[j] * v[j];
        out[i] = s;
    }
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

namespace {

double offdiag_frobenius(const Matrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j) s += m.at(i, j) * m.at(i, j);
    return std::sqrt(s);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(Matrix m, Matrix* evecs) {
    const int n = m.n;
    if (evecs) {
        *evecs = Matrix(n);
        for (int i = 0; i < n; ++i) evecs->at(i, i) = 1.0;
    }
    const double total = m.frobenius();
    const double target = 1e-12 * total;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_frobenius(m) <= target) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = m.at(p, q);
                if (apq == 0.0) continue;
                double app = m.at(p, p), aqq = m.at(q, q);
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
                if (evecs) {
                    for (int k = 0; k < n; ++k) {
                        double vkp = evecs->at(k, p), vkq = evecs->at(k, q);
                        evecs->at(k, p) = c * vkp - s * vkq;
                        evecs->at(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m.at(i, i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ev[a] < ev[b]; });
    std::vector<double> sorted(n);
    for (int i = 0; i < n; ++i) sorted[i] = ev[order[i]];
    if (evecs) {
        Matrix v = *evecs;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) evecs->at(k, i) = v.at(k, order[i]);
    }
    return sorted;
}

}  // namespace diskmorse
