#include "cpqr/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "cpqr/error.hpp"
#include "cpqr/parallel.hpp"
#include "cpqr/units.hpp"

namespace cpqr {

namespace {

constexpr double kPi = std::numbers::pi;
// Beyond this kappa every reflection amplitude has reached its grazing limit.
constexpr double kKappaCap = 1e12;

using Integrator = boost::math::quadrature::exp_sinh<double>;

Integrator& outer_integrator() {
    thread_local Integrator q;
    return q;
}

Integrator& inner_integrator() {
    thread_local Integrator q;
    return q;
}

// With xi = c s / 2z and kappa = 1 + t/s the potential becomes
//   V(z) = c / (32 pi z^4) int_0^inf ds e^{-s} alpha(xi) W(s),
//   W(s) = int_0^inf dt e^{-t} [ s^2 r_TE + (s^2 - 2 (s+t)^2) r_TM ],
// which is the kappa integral of e^{-2 kappa xi z / c} [r_TE + (1 - 2 kappa^2) r_TM]
// scaled so that neither limit s -> 0 nor s -> inf is singular.
struct InnerResult {
    double value;
    double error;
};

InnerResult inner_weight(const MirrorSpec::AtFrequency& response, double s, double tol) {
    auto integrand = [&](double t) {
        const double decay = std::exp(-t);
        if (decay == 0.0) return 0.0;
        const double kappa = std::min(1.0 + t / s, kKappaCap);
        const Reflection r = response.reflection(kappa);
        const double st = (s + t) * (s + t);
        return decay * (s * s * r.te + (s * s - 2.0 * st) * r.tm);
    };
    double err = 0.0;
    double l1 = 0.0;
    const double v = inner_integrator().integrate(integrand, tol, &err, &l1);
    return {v, err};
}

}  // namespace

double c4_star(const Polarizability& alpha) {
    return 3.0 * constants().speed_of_light * alpha.static_value() / (8.0 * kPi);
}

double retarded_reference(double z, const Polarizability& alpha) {
    return -c4_star(alpha) / std::pow(z, 4);
}

PotentialPoint cp_potential_point(const MirrorSpec& mirror, double z, const Polarizability& alpha,
                                  const QuadratureOptions& opts) {
    if (!(z > 0.0) || !std::isfinite(z)) throw ConfigError("distance must be positive");
    const double c = constants().speed_of_light;
    const double xi_per_s = c / (2.0 * z);
    const double inner_tol = std::max(opts.rel_tol * 0.1, 1e-13);
    double inner_err_max = 0.0;

    auto integrand = [&](double s) {
        const double decay = std::exp(-s);
        if (decay == 0.0 || s <= 0.0) return 0.0;
        const double xi = xi_per_s * s;
        double weight = 0.0;
        if (mirror.is_perfect_conductor()) {
            weight = -2.0 * (s * s + 2.0 * s + 2.0);
        } else {
            const auto response = mirror.at(xi);
            const InnerResult inner = inner_weight(response, s, inner_tol);
            if (inner.value != 0.0) {
                inner_err_max = std::max(inner_err_max, inner.error / std::abs(inner.value));
            }
            weight = inner.value;
        }
        return decay * alpha(xi) * weight;
    };

    double err = 0.0;
    double l1 = 0.0;
    std::size_t levels = 0;
    const double integral = outer_integrator().integrate(integrand, opts.rel_tol, &err, &l1, &levels);
    const double prefactor = c / (32.0 * kPi * std::pow(z, 4));
    PotentialPoint out{prefactor * integral, std::abs(prefactor) * (err + inner_err_max * l1)};
    if (!std::isfinite(out.value) || !(out.value < 0.0) ||
        out.error > opts.fail_tol * std::abs(out.value)) {
        std::ostringstream os;
        os << "CP quadrature did not converge for " << mirror.label() << " at z = " << z
           << " a0: V = " << out.value << " Eh, error estimate " << out.error << " Eh";
        throw NumericalError(os.str());
    }
    return out;
}

double c3_closed_form(const MirrorSpec& mirror, const Polarizability& alpha) {
    auto integrand = [&](double xi) {
        double factor = 1.0;
        if (std::holds_alternative<BulkMirror>(mirror.variant()) ||
            std::holds_alternative<SlabMirror>(mirror.variant()) ||
            std::holds_alternative<PorousMirror>(mirror.variant())) {
            const double eps = mirror.at(xi).epsilon();
            factor = (eps - 1.0) / (eps + 1.0);
        }
        return alpha(xi) * factor;
    };
    double err = 0.0;
    const double v = outer_integrator().integrate(integrand, 1e-12, &err);
    return v / (4.0 * kPi);
}

TableOptions TableOptions::for_mirror(const MirrorSpec& mirror) {
    TableOptions opts;
    if (std::holds_alternative<SheetMirror>(mirror.variant())) {
        opts.z_lo = 0.01;
        opts.n_points = 450;
    }
    return opts;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ConfigError("log grid needs 0 < lo < hi, n >= 2");
    std::vector<double> out(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

PotentialTable PotentialTable::from_mirror(const MirrorSpec& mirror, const TableOptions& opts) {
    if (!(opts.z_lo > 0.0) || !(opts.z_hi > opts.z_lo)) {
        throw ConfigError("potential table needs 0 < z_lo < z_hi");
    }
    if (opts.n_points < 16) throw ConfigError("potential table needs at least 16 points");
    PotentialTable t;
    t.label_ = mirror.label();
    t.mirror_ = mirror;
    t.z_ = log_grid(opts.z_lo, opts.z_hi, opts.n_points);
    t.v_.assign(t.z_.size(), 0.0);
    std::vector<double> rel_err(t.z_.size(), 0.0);
    parallel_for(t.z_.size(), [&](std::size_t i) {
        const PotentialPoint p = cp_potential_point(mirror, t.z_[i], opts.alpha, opts.quadrature);
        t.v_[i] = p.value;
        rel_err[i] = p.error / std::abs(p.value);
    });
    t.max_quad_error_ = *std::max_element(rel_err.begin(), rel_err.end());
    for (std::size_t i = 1; i < t.v_.size(); ++i) {
        if (!(t.v_[i] > t.v_[i - 1])) {
            std::ostringstream os;
            os << "potential of " << t.label_ << " is not increasing toward zero near z = " << t.z_[i]
               << " a0";
            throw NumericalError(os.str());
        }
    }
    t.finish(true);
    return t;
}

PotentialTable build_potential_table(const MirrorSpec& mirror, double z_lo, double z_hi,
                                     std::size_t n_points, const Polarizability& alpha) {
    TableOptions opts;
    opts.z_lo = z_lo;
    opts.z_hi = z_hi;
    opts.n_points = n_points;
    opts.alpha = alpha;
    return PotentialTable::from_mirror(mirror, opts);
}

PotentialTable PotentialTable::from_function(std::string label, const std::function<double(double)>& v,
                                             double z_lo, double z_hi, std::size_t n_points) {
    if (n_points < 16) throw ConfigError("potential table needs at least 16 points");
    std::vector<double> z = log_grid(z_lo, z_hi, n_points);
    std::vector<double> values(z.size());
    std::transform(z.begin(), z.end(), values.begin(), v);
    return from_values(std::move(label), std::move(z), std::move(values));
}

PotentialTable PotentialTable::from_values(std::string label, std::vector<double> z,
                                           std::vector<double> v) {
    if (z.size() != v.size() || z.size() < 16) {
        throw ConfigError("potential table needs at least 16 (z, V) pairs");
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] > 0.0) || (i > 0 && !(z[i] > z[i - 1]))) {
            throw ConfigError("potential table z grid must be positive and increasing");
        }
        if (!(v[i] < 0.0) || !std::isfinite(v[i])) {
            throw ConfigError("potential table values must be negative (attractive)");
        }
    }
    PotentialTable t;
    t.label_ = std::move(label);
    t.z_ = std::move(z);
    t.v_ = std::move(v);
    t.finish(false);
    return t;
}

PotentialTable PotentialTable::zero(double z_lo, double z_hi, std::size_t n_points) {
    PotentialTable t;
    t.label_ = "free_space";
    t.z_ = log_grid(z_lo, z_hi, n_points);
    t.v_.assign(t.z_.size(), 0.0);
    t.zero_ = true;
    return t;
}

void PotentialTable::finish(bool strict) {
    std::vector<double> lx(z_.size()), ly(z_.size());
    for (std::size_t i = 0; i < z_.size(); ++i) {
        lx[i] = std::log(z_[i]);
        ly[i] = std::log(-v_[i]);
    }
    log_spline_ = CubicSpline(std::move(lx), std::move(ly));
    asymptotics_ = extract_asymptotics(*this, strict);
}

double PotentialTable::value(double z) const {
    if (zero_) return 0.0;
    return -std::exp(log_spline_(std::log(z)));
}

PotentialSample PotentialTable::sample(double z) const {
    if (zero_) return {};
    // V = -exp(S(x)), x = ln z.
    const auto e = log_spline_.eval(std::log(z));
    const double v = -std::exp(e.value);
    const double dv = v * e.d1 / z;
    const double d2v = v * (e.d2 + e.d1 * e.d1 - e.d1) / (z * z);
    return {v, dv, d2v};
}

double local_exponent(const PotentialTable& table, double z) {
    const auto s = table.sample(z);
    if (table.is_zero()) return 0.0;
    return -s.dv * z / s.v;
}

namespace {

struct LineFit {
    double intercept;
    double slope;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    const double slope = denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
    return {(sy - slope * sx) / n, slope};
}

constexpr double kExponentTol = 0.05;

}  // namespace

Asymptotics extract_asymptotics(const PotentialTable& table, bool strict) {
    Asymptotics out;
    if (table.is_zero()) return out;
    const auto& z = table.z();
    const auto& v = table.v();
    const double lo_edge = z.front() * 10.0;
    const double hi_edge = z.back() / 10.0;
    std::vector<std::size_t> lo_idx, hi_idx;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] <= lo_edge * (1 + 1e-12)) lo_idx.push_back(i);
        if (z[i] >= hi_edge * (1 - 1e-12)) hi_idx.push_back(i);
    }
    if (lo_idx.size() < 3 || hi_idx.size() < 3 || z.back() < 100.0 * z.front()) {
        throw NumericalError("table " + table.label() + " spans too few decades for asymptotic fits");
    }

    auto fit_exponent = [&](const std::vector<std::size_t>& idx) {
        std::vector<double> lx, ly;
        for (auto i : idx) {
            lx.push_back(std::log(z[i]));
            ly.push_back(std::log(-v[i]));
        }
        return -least_squares(lx, ly).slope;
    };
    // z^n |V| = C + b w, with w = z (small end) or 1/z (large end); C is the intercept.
    auto fit_coefficient = [&](const std::vector<std::size_t>& idx, int n, bool small_end) {
        std::vector<double> w, y;
        for (auto i : idx) {
            w.push_back(small_end ? z[i] : 1.0 / z[i]);
            y.push_back(-v[i] * std::pow(z[i], n));
        }
        return least_squares(w, y).intercept;
    };

    out.small_exponent = fit_exponent(lo_idx);
    out.large_exponent = fit_exponent(hi_idx);

    const bool small_ok = std::abs(out.small_exponent - 3.0) < kExponentTol;
    if (small_ok) out.c3 = fit_coefficient(lo_idx, 3, true);

    bool large_ok = false;
    if (std::abs(out.large_exponent - 4.0) < kExponentTol) {
        out.c4 = fit_coefficient(hi_idx, 4, false);
        large_ok = true;
    } else if (std::abs(out.large_exponent - 5.0) < kExponentTol) {
        out.c5 = fit_coefficient(hi_idx, 5, false);
        large_ok = true;
    }

    if (strict && (!small_ok || !large_ok)) {
        std::ostringstream os;
        os << "insufficient range for " << table.label() << ": local exponents "
           << out.small_exponent << " (small z, want 3) and " << out.large_exponent
           << " (large z, want 4 or 5) have not converged";
        throw NumericalError(os.str());
    }
    return out;
}

}  // namespace cpqr
