#include "sdr/closed_forms.hpp"

#include <stdexcept>

namespace sdr {

SymmetricTable elementary_symmetric(const Valuation& a) {
    const int n = a.size();
    SymmetricTable table;
    table.e.assign(n + 1, BigCount(0));
    table.e[0] = 1;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k >= 1; --k) table.e[k] += BigCount(a[i]) * table.e[k - 1];
    return table;
}

BigCount binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigCount r = 1;
    for (int j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

BigCount factorial(int n) {
    BigCount r = 1;
    for (int j = 2; j <= n; ++j) r *= j;
    return r;
}

BigCount chang_U(int t, int n) {
    if (t < 0 || n < 1) throw std::invalid_argument("chang_U: need t >= 0, n >= 1");
    BigCount total = 0;
    for (int j = 0; j <= t; ++j) total += binomial(t, j) * binomial(n, j) * factorial(j);
    return total;
}

BigCount valued_U(int t, const Valuation& a) {
    if (t < 0 || a.size() < 1) throw std::invalid_argument("valued_U: need t >= 0, n >= 1");
    const SymmetricTable table = elementary_symmetric(a);
    const int n = a.size();
    BigCount total = 0;
    // terms past min(t, n) vanish; the cutoff keeps e indexing in bounds
    for (int j = 0; j <= std::min(t, n); ++j)
        total += binomial(t, j) * factorial(j) * table.e[n - j];
    return total;
}

}  // namespace sdr
