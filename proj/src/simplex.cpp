#include "ljoyal/simplex.hpp"

namespace ljoyal::ops {

std::vector<int> surjection(DegenMask mask, int dim) {
    std::vector<int> v(dim + 1, 0);
    for (int i = 0; i < dim; ++i)
        v[i + 1] = v[i] + ((mask >> i) & 1u ? 0 : 1);
    return v;
}

DegenMask mask_of(std::span<const int> values) {
    DegenMask m = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i] == values[i + 1])
            m |= DegenMask(1) << i;
    return m;
}

DegenMask compose(DegenMask inner, int k, DegenMask outer) {
    DegenMask m = 0;
    int e = 0; // inner(t)
    for (int t = 0; t < k; ++t) {
        if ((inner >> t) & 1u) {
            m |= DegenMask(1) << t;
        } else {
            if ((outer >> e) & 1u)
                m |= DegenMask(1) << t;
            ++e;
        }
    }
    return m;
}

DegenMask degeneracy(DegenMask mask, int j) {
    DegenMask low = mask & ((DegenMask(1) << j) - 1);
    DegenMask high = (mask >> j) << (j + 1);
    return low | high | (DegenMask(1) << j);
}

std::vector<int> word(DegenMask mask) {
    std::vector<int> w;
    for (int i = 31; i >= 0; --i)
        if ((mask >> i) & 1u)
            w.push_back(i);
    return w;
}

} // namespace ljoyal::ops
