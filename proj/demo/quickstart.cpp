// Two library calls: HOM dip of partially distinguishable photons and the
// heralded Bell source with lossy inputs.

#include <cstdio>

#include <photonsim/heralded.hpp>

using namespace photonsim;

int main() {
    auto bs = Interferometer::beamsplitter();
    for (double v : {1.0, 0.9, 0.5}) {
        auto dist = partial_distribution(bs, FockState{1, 1}, DistinguishabilityModel::uniform(v, 2));
        std::printf("V = %.2f  P(1,1) = %.4f\n", v, dist.at(FockState{1, 1}));
    }

    auto circuit = heralded_bell_circuit();
    for (double eta : {1.0, 0.9}) {
        auto r = simulate_heralded(circuit, DistinguishabilityModel::uniform(0.96, 4),
                                   LossChannel::uniform(eta, circuit.u.modes()));
        std::printf("eta = %.2f  p_herald = %.5f  fidelity = %.5f\n", eta, r.p_herald, r.fidelity);
    }
}
