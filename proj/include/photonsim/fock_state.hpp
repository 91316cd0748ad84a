#pragma once

#include <compare>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace photonsim {

// Occupation-number vector over optical modes.
class FockState {
   public:
    FockState() = default;

    explicit FockState(std::vector<int> occupations) : occ_(std::move(occupations)) {
        if (occ_.empty()) {
            throw ShapeError("FockState needs at least one mode");
        }
        for (int n : occ_) {
            if (n < 0) {
                throw DomainError("FockState occupations must be non-negative");
            }
        }
    }

    FockState(std::initializer_list<int> occupations) : FockState(std::vector<int>(occupations)) {}

    static FockState vacuum(int modes) { return FockState(std::vector<int>(static_cast<size_t>(modes), 0)); }

    // Photons placed in the first `photons` of `modes` modes, one each.
    static FockState first_modes(int photons, int modes) {
        if (photons > modes) {
            throw ShapeError("more single photons than modes");
        }
        std::vector<int> occ(static_cast<size_t>(modes), 0);
        for (int i = 0; i < photons; i++) {
            occ[static_cast<size_t>(i)] = 1;
        }
        return FockState(std::move(occ));
    }

    // Parses "1,0,2".
    static FockState parse(const std::string &text) {
        std::vector<int> occ;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(item, &used);
            } catch (const std::exception &) {
                throw DomainError("bad occupation list '" + text + "'");
            }
            if (used != item.size()) {
                throw DomainError("bad occupation list '" + text + "'");
            }
            occ.push_back(v);
        }
        return FockState(std::move(occ));
    }

    int modes() const { return static_cast<int>(occ_.size()); }
    int photons() const { return std::accumulate(occ_.begin(), occ_.end(), 0); }
    int operator[](int mode) const { return occ_[static_cast<size_t>(mode)]; }
    const std::vector<int> &occupations() const { return occ_; }

    // Mode index of every photon, ascending, with repeats for bunched modes.
    std::vector<int> photon_modes() const {
        std::vector<int> out;
        for (int k = 0; k < modes(); k++) {
            for (int c = 0; c < occ_[static_cast<size_t>(k)]; c++) {
                out.push_back(k);
            }
        }
        return out;
    }

    double factorial_product() const {
        double f = 1;
        for (int n : occ_) {
            for (int c = 2; c <= n; c++) {
                f *= c;
            }
        }
        return f;
    }

    std::string str() const {
        std::string s;
        for (size_t k = 0; k < occ_.size(); k++) {
            if (k) {
                s += ',';
            }
            s += std::to_string(occ_[k]);
        }
        return s;
    }

    bool operator==(const FockState &) const = default;
    auto operator<=>(const FockState &) const = default;

   private:
    std::vector<int> occ_;
};

inline std::ostream &operator<<(std::ostream &out, const FockState &s) { return out << '(' << s.str() << ')'; }

// Number of occupation patterns of n photons in m modes.
inline size_t basis_size(int photons, int modes) {
    // binom(n + m - 1, n), computed incrementally to stay exact.
    size_t r = 1;
    for (int i = 1; i <= photons; i++) {
        r = r * static_cast<size_t>(modes - 1 + i) / static_cast<size_t>(i);
    }
    return r;
}

// Position of `s` in fock_basis(s.photons(), s.modes()).
inline size_t fock_rank(const FockState &s) {
    size_t rank = 0;
    int left = s.photons();
    const int m = s.modes();
    for (int i = 0; i + 1 < m; i++) {
        for (int c = 0; c < s[i]; c++) {
            rank += basis_size(left - c, m - i - 1);
        }
        left -= s[i];
    }
    return rank;
}

// All patterns of `photons` photons in `modes` modes, ascending
// lexicographic order: (0,..,0,n) first, (n,0,..,0) last.
inline std::vector<FockState> fock_basis(int photons, int modes) {
    if (modes < 1 || photons < 0) {
        throw ShapeError("fock_basis needs modes >= 1 and photons >= 0");
    }
    std::vector<FockState> out;
    out.reserve(basis_size(photons, modes));
    std::vector<int> occ(static_cast<size_t>(modes), 0);
    auto rec = [&](auto &self, int mode, int left) -> void {
        if (mode == modes - 1) {
            occ[static_cast<size_t>(mode)] = left;
            out.emplace_back(occ);
            return;
        }
        for (int c = 0; c <= left; c++) {
            occ[static_cast<size_t>(mode)] = c;
            self(self, mode + 1, left - c);
        }
    };
    rec(rec, 0, photons);
    return out;
}

}  // namespace photonsim
