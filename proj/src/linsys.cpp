#include "sesh/linsys.hpp"

namespace sesh {

std::vector<std::array<int, 3>> detail::derivative_orders(int m, int chart) {
    int u = chart == 0 ? 1 : 0;
    int v = chart == 2 ? 1 : 2;
    std::vector<std::array<int, 3>> out;
    out.reserve(static_cast<std::size_t>(m) * (m + 1) / 2);
    for (int t = 0; t < m; ++t)
        for (int a = t; a >= 0; --a) {
            std::array<int, 3> idx{0, 0, 0};
            idx[u] = a;
            idx[v] = t - a;
            out.push_back(idx);
        }
    return out;
}

bool detail::probe_kernel_empty(const Matrix<Rational>& m) {
    return probe_full_column_rank(m);
}

bool detail::probe_kernel_empty(const Matrix<NfElement>& m) {
    return rank(m) == m.cols();
}

} // namespace sesh
