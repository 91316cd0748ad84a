#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "interferometer.hpp"

namespace photonsim {

// Mach-Zehnder cell on modes (mode, mode + 1). With a = theta / 2 its
// transfer block is
//   [ e^{i phi} cos a   -sin a ]
//   [ e^{i phi} sin a    cos a ]
// theta in [0, pi] is the internal phase, phi in [0, 2 pi) the external one.
struct MziCell {
    int mode = 0;
    double theta = 0;
    double phi = 0;
};

// Cells in application order (first cell acts first on the input),
// followed by one output phase per mode.
struct MeshParams {
    int modes = 0;
    std::vector<MziCell> cells;
    std::vector<double> output_phases;
};

namespace detail {

inline double wrap_phase(double phi) {
    double r = std::fmod(phi, 2 * M_PI);
    if (r < 0) {
        r += 2 * M_PI;
    }
    if (r >= 2 * M_PI) {
        r = 0;
    }
    return r;
}

inline Eigen::Matrix2cd cell_block(double theta, double phi) {
    const double a = theta / 2;
    const cdouble e = std::polar(1.0, phi);
    Eigen::Matrix2cd t;
    t << e * std::cos(a), -std::sin(a), e * std::sin(a), std::cos(a);
    return t;
}

// Cell parameters satisfying e^{i phi} tan(theta / 2) = ratio num / den.
inline MziCell cell_from_ratio(int mode, cdouble num, cdouble den) {
    MziCell c;
    c.mode = mode;
    if (std::abs(num) == 0) {
        return c;
    }
    if (std::abs(den) == 0) {
        c.theta = M_PI;
        c.phi = wrap_phase(std::arg(num));
        return c;
    }
    cdouble r = num / den;
    c.theta = 2 * std::atan(std::abs(r));
    c.phi = wrap_phase(std::arg(r));
    return c;
}

inline void apply_left(CMatrix &u, const MziCell &c) {
    Eigen::Matrix2cd t = cell_block(c.theta, c.phi);
    u.middleRows(c.mode, 2) = (t * u.middleRows(c.mode, 2)).eval();
}

inline void apply_right_inverse(CMatrix &u, const MziCell &c) {
    Eigen::Matrix2cd t = cell_block(c.theta, c.phi);
    u.middleCols(c.mode, 2) = (u.middleCols(c.mode, 2) * t.adjoint()).eval();
}

}  // namespace detail

inline Interferometer mesh_compose(const MeshParams &p) {
    if (p.modes < 1 || static_cast<int>(p.output_phases.size()) != p.modes) {
        throw ShapeError("mesh needs one output phase per mode");
    }
    CMatrix u = CMatrix::Identity(p.modes, p.modes);
    for (const auto &c : p.cells) {
        if (c.mode < 0 || c.mode + 1 >= p.modes) {
            throw ShapeError("mesh cell addresses a mode outside the interferometer");
        }
        detail::apply_left(u, c);
    }
    for (int k = 0; k < p.modes; k++) {
        u.row(k) *= std::polar(1.0, p.output_phases[static_cast<size_t>(k)]);
    }
    return Interferometer(u);
}

// Rectangular (Clements) decomposition: null the lower triangle by
// alternating column operations from the right and row operations from the
// left, then commute the left cells through the residual diagonal.
inline MeshParams clements_decompose(const Interferometer &interferometer) {
    const int m = interferometer.modes();
    CMatrix u = interferometer.matrix();
    std::vector<MziCell> right;
    std::vector<MziCell> left;
    for (int i = 1; i < m; i++) {
        if (i % 2 == 1) {
            for (int j = 0; j < i; j++) {
                const int row = m - 1 - j;
                const int col = i - 1 - j;
                MziCell c = detail::cell_from_ratio(col, u(row, col), u(row, col + 1));
                detail::apply_right_inverse(u, c);
                right.push_back(c);
            }
        } else {
            for (int j = 1; j <= i; j++) {
                const int row = m + j - i - 1;
                const int col = j - 1;
                MziCell c = detail::cell_from_ratio(row - 1, -u(row, col), u(row - 1, col));
                detail::apply_left(u, c);
                left.push_back(c);
            }
        }
    }
    // Now u = L U R^dag is diagonal. Rewrite T^dag D = D' T' for each left
    // cell, last applied first.
    std::vector<cdouble> d(static_cast<size_t>(m));
    for (int k = 0; k < m; k++) {
        d[static_cast<size_t>(k)] = u(k, k) / std::abs(u(k, k));
    }
    std::vector<MziCell> moved;
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        const int a = it->mode;
        cdouble d1 = d[static_cast<size_t>(a)];
        cdouble d2 = d[static_cast<size_t>(a + 1)];
        MziCell c = *it;
        c.phi = detail::wrap_phase(std::arg(-d1 / d2));
        d[static_cast<size_t>(a)] = -std::polar(1.0, -it->phi) * d2;
        moved.push_back(c);
    }
    MeshParams p;
    p.modes = m;
    p.cells = right;
    // U = D' T'_1 ... T'_L R, so T'_L acts first among the moved cells.
    for (auto it = moved.begin(); it != moved.end(); ++it) {
        p.cells.push_back(*it);
    }
    for (int k = 0; k < m; k++) {
        p.output_phases.push_back(detail::wrap_phase(std::arg(d[static_cast<size_t>(k)])));
    }
    return p;
}

}  // namespace photonsim
