#pragma once

#include <vector>

namespace cpqr {

/// Natural cubic spline with linear extrapolation outside the knots,
/// which keeps the curve C2 across the end knots.
class CubicSpline {
public:
    struct Eval {
        double value;
        double d1;
        double d2;
    };

    CubicSpline() = default;
    /// x must be strictly increasing and hold at least 3 knots.
    CubicSpline(std::vector<double> x, std::vector<double> y);

    [[nodiscard]] Eval eval(double x) const;
    [[nodiscard]] double operator()(double x) const { return eval(x).value; }

    [[nodiscard]] const std::vector<double>& knots() const { return x_; }
    [[nodiscard]] const std::vector<double>& values() const { return y_; }

private:
    std::vector<double> x_, y_, m_;  // m_ = second derivatives at knots
};

}  // namespace cpqr
