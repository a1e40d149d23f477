#pragma once

#include <vector>

#include "rcr/ranking_dist.hpp"

namespace rcr::testing {

// Items A, B, C, D are 1..4 and the median is A < B < C < D.
// P(C<D) = .51, P(B<C) = .52, P(A<B) = .69, P(B<D) = .7; A is far from C and D.
inline PairwiseMatrix fig1_matrix() {
    const double ab = 0.69, ac = 0.85, ad = 0.9, bc = 0.52, bd = 0.7, cd = 0.51;
    return PairwiseMatrix(4, {0.5,      ab,       ac,       ad,        //
                              1.0 - ab, 0.5,      bc,       bd,        //
                              1.0 - ac, 1.0 - bc, 0.5,      cd,        //
                              1.0 - ad, 1.0 - bd, 1.0 - cd, 0.5});
}

inline const std::vector<double>& fig1_thresholds() {
    static const std::vector<double> t{0.01, 0.02, 0.19, 0.2};
    return t;
}

}  // namespace rcr::testing
