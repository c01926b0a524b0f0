#pragma once

#include <vector>

namespace stratipm {

// Row-major real samples: v[i0 * n1 + i1].
struct RealArray2 {
    int n0 = 0;
    int n1 = 0;
    std::vector<double> v;

    RealArray2() = default;
    RealArray2(int rows, int cols) : n0(rows), n1(cols), v(static_cast<size_t>(rows) * cols, 0.0) {}

    double& at(int i0, int i1) { return v[static_cast<size_t>(i0) * n1 + i1]; }
    double at(int i0, int i1) const { return v[static_cast<size_t>(i0) * n1 + i1]; }
};

}  // namespace stratipm
