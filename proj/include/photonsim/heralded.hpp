#pragma once

#include <bit>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "distinguishability.hpp"
#include "qubits.hpp"

namespace photonsim {

// One accepted detector pattern. Each output qubit is a mode pair
// (|0> = photon in the first mode, |1> = photon in the second, the H/V
// convention for flattened polarization). The Pauli correction is the
// feed-forward applied after decoding.
struct HeraldOutcome {
    FockState clicks;  // occupations of the herald modes, in herald_modes order
    std::vector<std::pair<int, int>> qubit_modes;
    PauliString correction;
};

struct HeraldedCircuit {
    std::string name;
    Interferometer u = Interferometer::identity(1);
    FockState input;
    std::vector<int> output_modes;
    std::vector<int> herald_modes;
    std::vector<HeraldOutcome> heralds;
    QubitStateVector target;

    int qubits() const { return target.qubits(); }

    void validate() const {
        const int m = u.modes();
        if (input.modes() != m) {
            throw ShapeError("circuit input does not match the interferometer");
        }
        std::vector<int> role(static_cast<size_t>(m), 0);
        for (int k : output_modes) {
            role.at(static_cast<size_t>(k)) |= 1;
        }
        for (int k : herald_modes) {
            role.at(static_cast<size_t>(k)) |= 2;
        }
        for (int r : role) {
            if (r == 3) {
                throw ShapeError("herald and output modes overlap");
            }
        }
        for (const auto &h : heralds) {
            if (h.clicks.modes() != static_cast<int>(herald_modes.size())) {
                throw ShapeError("herald pattern length differs from the herald mode count");
            }
            if (static_cast<int>(h.qubit_modes.size()) != qubits() ||
                static_cast<int>(h.correction.ops.size()) != qubits()) {
                throw ShapeError("herald outcome does not describe every qubit");
            }
            for (auto [a, b] : h.qubit_modes) {
                if (role.at(static_cast<size_t>(a)) != 1 || role.at(static_cast<size_t>(b)) != 1) {
                    throw ShapeError("qubit modes must be output modes");
                }
            }
            if (h.clicks.photons() + qubits() != input.photons()) {
                throw ShapeError("herald pattern and qubit count do not add up to the input photon number");
            }
        }
    }
};

struct HeraldResult {
    bool heralded = false;
    double p_herald = 0;         // probability that an accepted pattern fires
    double p_encoded = 0;        // ... and every qubit holds exactly one photon
    double fidelity = 0;         // <target| rho |target> over all heralded events
    std::optional<DensityOperator> state;  // normalized on the dual-rail code space
    std::vector<double> pattern_probability;  // per HeraldOutcome
};

namespace detail {

inline std::vector<int> rows_of(const std::vector<int> &modes, const FockState &occ) {
    std::vector<int> rows;
    for (int i = 0; i < occ.modes(); i++) {
        for (int c = 0; c < occ[i]; c++) {
            rows.push_back(modes[static_cast<size_t>(i)]);
        }
    }
    return rows;
}

// Heralded density-matrix elements for one subset of surviving photons.
class HeraldKernel {
   public:
    HeraldKernel(const CMatrix &u, std::vector<int> cols, const DistinguishabilityModel &model)
        : u_(u), cols_(std::move(cols)), gram_(model.gram()) {
        double c = 0;
        if (model.uniform_overlap(c) && (c == 1.0 || c == 0.0 || cols_.size() <= 1)) {
            mode_ = c == 0.0 && cols_.size() > 1 ? Mode::classical : Mode::coherent;
        } else {
            mode_ = Mode::general;
            perms_ = all_permutations(static_cast<int>(cols_.size()));
        }
    }

    // sum over internal states of <rows_a|psi><psi|rows_b>, unnormalized.
    cdouble element(const std::vector<int> &rows_a, const std::vector<int> &rows_b) const {
        if (mode_ == Mode::coherent) {
            return amplitude(rows_a) * std::conj(amplitude(rows_b));
        }
        if (mode_ == Mode::classical) {
            std::vector<std::vector<int>> identity{identity_perm()};
            return gram_weighted_element(u_, rows_a, rows_b, cols_, CMatrix::Identity(gram_.rows(), gram_.cols()),
                                         identity);
        }
        return gram_weighted_element(u_, rows_a, rows_b, cols_, gram_, perms_);
    }

   private:
    enum class Mode { coherent, classical, general };

    cdouble amplitude(const std::vector<int> &rows) const {
        const auto n = static_cast<Eigen::Index>(cols_.size());
        CMatrix s(n, n);
        for (Eigen::Index r = 0; r < n; r++) {
            for (Eigen::Index c = 0; c < n; c++) {
                s(r, c) = u_(rows[static_cast<size_t>(r)], cols_[static_cast<size_t>(c)]);
            }
        }
        return permanent(s);
    }

    std::vector<int> identity_perm() const {
        std::vector<int> p(cols_.size());
        std::iota(p.begin(), p.end(), 0);
        return p;
    }

    const CMatrix &u_;
    std::vector<int> cols_;
    CMatrix gram_;
    Mode mode_;
    std::vector<std::vector<int>> perms_;
};

}  // namespace detail

// Simulates the circuit with imperfect photons. Loss acts on the input
// modes: each photon survives with the transmissivity of its input mode.
inline HeraldResult simulate_heralded(const HeraldedCircuit &c, const DistinguishabilityModel &model,
                                      const std::optional<LossChannel> &loss = std::nullopt,
                                      const Caps &caps = default_caps()) {
    c.validate();
    const int n = c.input.photons();
    if (model.photons() != n) {
        throw ShapeError("distinguishability model does not match the circuit photon number");
    }
    if (loss && loss->modes() != c.u.modes()) {
        throw ShapeError("loss channel does not match the circuit mode count");
    }
    check_cap(n, caps.max_photons, "photon number", "PHOTONSIM_MAX_PHOTONS");
    check_cap(c.u.modes(), caps.max_modes, "mode count", "PHOTONSIM_MAX_MODES");
    detail::require_single_occupancy(c.input);

    const int k = c.qubits();
    const Eigen::Index dim = Eigen::Index{1} << k;
    const auto in_modes = c.input.photon_modes();

    HeraldResult res;
    res.pattern_probability.assign(c.heralds.size(), 0.0);
    CMatrix acc = CMatrix::Zero(dim, dim);

    for (uint32_t mask = 0; mask < (1u << n); mask++) {
        double weight = 1;
        std::vector<int> survivors;
        for (int j = 0; j < n; j++) {
            const double eta = loss ? loss->eta[static_cast<size_t>(in_modes[static_cast<size_t>(j)])] : 1.0;
            if ((mask >> j) & 1u) {
                weight *= eta;
                survivors.push_back(j);
            } else {
                weight *= 1 - eta;
            }
        }
        if (weight == 0) {
            continue;
        }
        std::vector<int> cols;
        for (int j : survivors) {
            cols.push_back(in_modes[static_cast<size_t>(j)]);
        }
        detail::HeraldKernel kernel(c.u.matrix(), cols, model.subset(survivors));
        const int ns = static_cast<int>(survivors.size());

        for (size_t hi = 0; hi < c.heralds.size(); hi++) {
            const auto &h = c.heralds[hi];
            const int n_out = ns - h.clicks.photons();
            if (n_out < 0) {
                continue;
            }
            const auto herald_rows = detail::rows_of(c.herald_modes, h.clicks);
            const double herald_fact = h.clicks.factorial_product();

            // Herald probability: every output pattern of the remaining photons.
            double p = 0;
            for (const auto &o : fock_basis(n_out, static_cast<int>(c.output_modes.size()))) {
                auto rows = detail::rows_of(c.output_modes, o);
                rows.insert(rows.end(), herald_rows.begin(), herald_rows.end());
                p += kernel.element(rows, rows).real() / (herald_fact * o.factorial_product());
            }
            res.pattern_probability[hi] += weight * p;
            res.p_herald += weight * p;

            if (n_out != k) {
                continue;
            }
            // Code-space block, rows ordered by qubit so internal states
            // are traced photon by photon.
            std::vector<std::vector<int>> basis_rows(static_cast<size_t>(dim));
            for (Eigen::Index x = 0; x < dim; x++) {
                auto &rows = basis_rows[static_cast<size_t>(x)];
                for (int q = 0; q < k; q++) {
                    const bool one = (x >> (k - 1 - q)) & 1;
                    auto [m0, m1] = h.qubit_modes[static_cast<size_t>(q)];
                    rows.push_back(one ? m1 : m0);
                }
                rows.insert(rows.end(), herald_rows.begin(), herald_rows.end());
            }
            CMatrix block(dim, dim);
            for (Eigen::Index a = 0; a < dim; a++) {
                for (Eigen::Index b = a; b < dim; b++) {
                    cdouble e = kernel.element(basis_rows[static_cast<size_t>(a)], basis_rows[static_cast<size_t>(b)]);
                    block(a, b) = e / herald_fact;
                    block(b, a) = std::conj(e) / herald_fact;
                }
            }
            // Feed-forward Pauli correction P block P^dag.
            CMatrix pm(dim, dim);
            for (Eigen::Index col = 0; col < dim; col++) {
                pm.col(col) = detail::apply_pauli(h.correction, CVector::Unit(dim, col));
            }
            acc += weight * (pm * block * pm.adjoint());
        }
    }

    res.p_encoded = acc.trace().real();
    res.heralded = res.p_herald > 0;
    if (!res.heralded) {
        return res;
    }
    const CVector &t = c.target.amplitudes();
    res.fidelity = std::clamp(t.dot(acc * t).real() / res.p_herald, 0.0, 1.0);
    if (res.p_encoded > 0) {
        CMatrix rho = acc / res.p_encoded;
        rho = (rho + rho.adjoint()).eval() / 2.0;
        res.state = DensityOperator(rho);
    }
    return res;
}

// Four photons through a 4-mode Hadamard network (two layers of balanced
// beamsplitters), then a balanced tap on every mode towards a detector.
// Two single clicks on distinct detectors {a, b} leave the other two
// photons in (|a b> - |complement>) / sqrt2 over the four output modes;
// the click pair selects how the output modes pair up into dual-rail
// qubits. Six of the ten two-photon herald patterns qualify, each with
// probability 1/32, for 3/16 in total.
inline HeraldedCircuit heralded_bell_circuit() {
    const int m = 8;
    const double h = 0.5;
    const double s = 1 / std::sqrt(2.0);
    CMatrix hadamard = CMatrix::Zero(m, m);
    for (int r = 0; r < 4; r++) {
        for (int col = 0; col < 4; col++) {
            hadamard(r, col) = (std::popcount(static_cast<unsigned>(r & col)) & 1) ? -h : h;
        }
    }
    for (int k = 4; k < m; k++) {
        hadamard(k, k) = 1;
    }
    CMatrix taps = CMatrix::Zero(m, m);
    for (int k = 0; k < 4; k++) {
        taps(k, k) = s;
        taps(k, k + 4) = s;
        taps(k + 4, k) = s;
        taps(k + 4, k + 4) = -s;
    }
    HeraldedCircuit c;
    c.name = "bell";
    c.u = Interferometer(taps * hadamard);
    c.input = FockState({1, 1, 1, 1, 0, 0, 0, 0});
    c.output_modes = {0, 1, 2, 3};
    c.herald_modes = {4, 5, 6, 7};
    const std::vector<std::pair<int, int>> straight{{0, 1}, {2, 3}};
    const std::vector<std::pair<int, int>> crossed{{0, 2}, {1, 3}};
    c.heralds = {
        {FockState({1, 1, 0, 0}), crossed, PauliString::parse("ZI")},
        {FockState({1, 0, 1, 0}), straight, PauliString::parse("ZI")},
        {FockState({1, 0, 0, 1}), straight, PauliString::parse("ZX")},
        {FockState({0, 1, 1, 0}), straight, PauliString::parse("ZX")},
        {FockState({0, 1, 0, 1}), straight, PauliString::parse("ZI")},
        {FockState({0, 0, 1, 1}), crossed, PauliString::parse("ZI")},
    };
    c.target = bell_phi_plus();
    c.validate();
    return c;
}

// Six photons in modes 0..5. Photon pairs meet on balanced beamsplitters
// (0,3), (1,5), (2,4), every mode is tapped 50:50 towards modes 6..11, and
// the taps of modes (0,5), (1,4), (2,3) are mixed before detection. One
// click behind each of the three mixers (8 patterns, 1/256 each) leaves
// GHZ on the qubits (0,3), (1,4), (2,5), after a Z on the last qubit when
// an even number of clicks sit on the difference ports 9..11.
inline HeraldedCircuit heralded_ghz_circuit() {
    const int m = 12;
    const double s = 1 / std::sqrt(2.0);
    auto balanced = [&](CMatrix &g, int a, int b) {
        g(a, a) = s;
        g(a, b) = s;
        g(b, a) = s;
        g(b, b) = -s;
    };
    CMatrix pairs = CMatrix::Identity(m, m);
    balanced(pairs, 0, 3);
    balanced(pairs, 1, 5);
    balanced(pairs, 2, 4);
    CMatrix taps = CMatrix::Zero(m, m);
    for (int k = 0; k < 6; k++) {
        balanced(taps, k, k + 6);
    }
    // Mixer r sends taps (a, b) to detectors 6 + r (sum) and 9 + r (difference).
    CMatrix mix = CMatrix::Zero(m, m);
    for (int k = 0; k < 6; k++) {
        mix(k, k) = 1;
    }
    const std::pair<int, int> mixed[3] = {{0, 5}, {1, 4}, {2, 3}};
    for (int r = 0; r < 3; r++) {
        auto [a, b] = mixed[r];
        mix(6 + r, 6 + a) = s;
        mix(6 + r, 6 + b) = s;
        mix(9 + r, 6 + a) = s;
        mix(9 + r, 6 + b) = -s;
    }
    HeraldedCircuit c;
    c.name = "ghz";
    c.u = Interferometer(mix * taps * pairs);
    c.input = FockState({1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0});
    c.output_modes = {0, 1, 2, 3, 4, 5};
    c.herald_modes = {6, 7, 8, 9, 10, 11};
    const std::vector<std::pair<int, int>> qubits{{0, 3}, {1, 4}, {2, 5}};
    for (int diff = 0; diff < 8; diff++) {
        std::vector<int> clicks(6, 0);
        int n_diff = 0;
        for (int r = 0; r < 3; r++) {
            const bool d = (diff >> (2 - r)) & 1;
            clicks[static_cast<size_t>(d ? 3 + r : r)] = 1;
            n_diff += d;
        }
        c.heralds.push_back({FockState(clicks), qubits, PauliString::parse(n_diff % 2 == 0 ? "IIZ" : "III")});
    }
    c.target = ghz_state(3);
    c.validate();
    return c;
}

}  // namespace photonsim
