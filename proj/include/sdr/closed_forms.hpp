#pragma once

#include <vector>

#include "sdr/bigcount.hpp"
#include "sdr/family.hpp"

namespace sdr {

// e[k] = elementary symmetric polynomial e_k(a_1..a_n), 0 <= k <= n
struct SymmetricTable {
    std::vector<BigCount> e;
};

SymmetricTable elementary_symmetric(const Valuation& a);

BigCount binomial(int n, int k);
BigCount factorial(int n);

// U(t,n) = sum_{j=0}^{t} C(t,j) C(n,j) j!
BigCount chang_U(int t, int n);

// U'(t,n,a) = sum_{j=0}^{min(t,n)} C(t,j) j! e_{n-j}(a)
BigCount valued_U(int t, const Valuation& a);

}  // namespace sdr
