#pragma once

// Slow reference implementations used to check the library. They share
// only the matrix types with it.

#include <map>
#include <vector>

#include <photonsim/interferometer.hpp>

namespace oracle {

using photonsim::CMatrix;
using photonsim::cdouble;

// Sum over all n! permutations.
cdouble permanent(const CMatrix &a);

// All occupation vectors of `photons` bosons in `modes` modes.
std::vector<std::vector<int>> compositions(int photons, int modes);

// Photon internal states as rows, giving the Gram matrix V V^dag.
CMatrix uniform_internal_states(int photons, double overlap);

// First-quantized amplitude sum
//   sum_k sum_{s,t} prod_j U[a_j, in_s(j)] v_s(j)[k_j] conj(U[b_j, in_t(j)] v_t(j)[k_j])
// over internal labels k and input permutations s, t. With a = b it is
// prod(o!) times the probability of the pattern o listed by a.
cdouble first_quantized_element(const CMatrix &u, const std::vector<int> &in_modes, const CMatrix &internal,
                                 const std::vector<int> &rows_a, const std::vector<int> &rows_b);

// Output distribution from first_quantized_element, keyed by occupation.
std::map<std::vector<int>, double> first_quantized_distribution(const CMatrix &u, const std::vector<int> &in_modes,
                                                                const CMatrix &internal);

// Rows listing each occupied mode once per photon.
std::vector<int> rows_of(const std::vector<int> &occupation);

}  // namespace oracle
