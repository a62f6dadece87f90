#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace jch::num {

using cplx = std::complex<double>;

// Compensated (Kahan) accumulator. Summation order is fixed by the caller,
// so results are bit-reproducible for a given input sequence.
template <typename T>
struct KahanSum {
    T sum{};
    T comp{};
    void add(const T& x) {
        const T y = x - comp;
        const T t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const T& value() const { return sum; }
};

// exp(z) - 1 without cancellation for small |z|.
// Real part: e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2).
inline cplx cexpm1(const cplx& z) {
    const double x = z.real(), y = z.imag();
    const double hs = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * hs * hs,
            std::exp(x) * std::sin(y)};
}

// n points from a to b inclusive; n == 1 gives {a}.
inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> x(n);
    if (n == 1) {
        x[0] = a;
        return x;
    }
    const double step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a + step * static_cast<double>(i);
    x[n - 1] = b;
    return x;
}

} // namespace jch::num
