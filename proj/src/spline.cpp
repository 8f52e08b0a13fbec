#include "cpqr/spline.hpp"

#include <algorithm>

#include "cpqr/error.hpp"

namespace cpqr {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) throw ConfigError("spline needs >= 3 matching knots");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) throw ConfigError("spline knots must increase strictly");
    }
    // Tridiagonal solve for natural end conditions (m_0 = m_{n-1} = 0).
    m_.assign(n, 0.0);
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        const double a = h0 / 6.0;
        const double b = (h0 + h1) / 3.0;
        const double cc = h1 / 6.0;
        const double rhs = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        const double denom = b - a * c[i - 1];
        c[i] = cc / denom;
        d[i] = (rhs - a * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = d[i] - c[i] * m_[i + 1];
    }
}

CubicSpline::Eval CubicSpline::eval(double x) const {
    const std::size_t n = x_.size();
    if (x <= x_.front() || x >= x_.back()) {
        // Linear continuation using the end slope (second derivative is zero there).
        const bool low = x <= x_.front();
        const std::size_t i = low ? 0 : n - 2;
        const double h = x_[i + 1] - x_[i];
        const double slope = low ? (y_[1] - y_[0]) / h - h * m_[1] / 6.0
                                 : (y_[n - 1] - y_[n - 2]) / h + h * m_[n - 2] / 6.0;
        const double x0 = low ? x_.front() : x_.back();
        const double y0 = low ? y_.front() : y_.back();
        return {y0 + slope * (x - x0), slope, 0.0};
    }
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    const double value =
        a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    const double d1 = (y_[i + 1] - y_[i]) / h +
                      (-(3.0 * a * a - 1.0) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
    const double d2 = a * m_[i] + b * m_[i + 1];
    return {value, d1, d2};
}

}  // namespace cpqr
