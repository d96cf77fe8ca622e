#include "biotf/laplace_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biotf/errors.hpp"
#include "biotf/render.hpp"

namespace biotf {

Signal::Signal(std::vector<double> samples, double dt) : samples_(std::move(samples)), dt_(dt) {
    if (dt_ <= 0.0) throw Error("signal step size must be positive");
    if (samples_.size() < 2) throw Error("signal needs at least 2 samples");
}

double Signal::max_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
}

ExpOrderBound::ExpOrderBound(double M_, double a_) : M(M_), a(a_) {
    if (!(M > 0.0)) throw Error("exponential-order constant M must be positive");
}

double InputSpec::value_at(double t, double dt) const {
    switch (kind) {
        case InputKind::step:
            return t >= 0.0 ? 1.0 : 0.0;
        case InputKind::impulse_approx: {
            const double width = impulse_width > 0.0 ? impulse_width : 10.0 * dt;
            return (t >= 0.0 && t < width) ? 1.0 / width : 0.0;
        }
        case InputKind::sinusoid:
            return t >= 0.0 ? std::sin(sinusoid_omega * t) : 0.0;
    }
    return 0.0;
}

SimResult simulate(const LinearOde& ode, const std::map<ParamId, Rational>& bindings,
                   const InputSpec& input, double duration, double dt) {
    if (dt <= 0.0) throw Error("dt must be positive");
    if (duration < 2.0 * dt) throw Error("duration must cover at least two steps");

    const std::size_t n = ode.output_order();
    std::vector<double> a(n + 1), b(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) {
        a[k] = to_double(ode.out_coeffs()[k].evaluate(bindings));
    }
    for (std::size_t k = 0; k < ode.in_coeffs().size(); ++k) {
        b[k] = to_double(ode.in_coeffs()[k].evaluate(bindings));
    }
    if (a[n] == 0.0) throw ZeroLeadingCoefficientError();

    // controllable canonical form; alpha/beta are the monic-normalized rows
    std::vector<double> alpha(n), beta(n + 1);
    for (std::size_t k = 0; k < n; ++k) alpha[k] = a[k] / a[n];
    for (std::size_t k = 0; k <= n; ++k) beta[k] = b[k] / a[n];

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    Eigen::VectorXd B = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::RowVectorXd C = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(n));
    double D = 0.0;
    if (n > 0) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1.0;
        }
        for (std::size_t k = 0; k < n; ++k) {
            A(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(k)) = -alpha[k];
        }
        B(static_cast<Eigen::Index>(n - 1)) = 1.0;
        if (ode.in_coeffs().size() == n + 1) {
            D = beta[n];
            for (std::size_t k = 0; k < n; ++k) {
                C(static_cast<Eigen::Index>(k)) = beta[k] - beta[n] * alpha[k];
            }
        } else {
            for (std::size_t k = 0; k < n; ++k) C(static_cast<Eigen::Index>(k)) = beta[k];
        }
    } else {
        D = beta[0];
    }

    double pole_bound = 0.0;
    if (n > 0) {
        Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/false);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
            pole_bound = std::max(pole_bound, std::abs(solver.eigenvalues()[i]));
        }
        if (dt * pole_bound >= 0.1) throw StepTooLargeError(dt, pole_bound);
    }

    const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
    std::vector<double> u_samples(steps + 1), y_samples(steps + 1);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    auto deriv = [&](const Eigen::VectorXd& state, double t) -> Eigen::VectorXd {
        return A * state + B * input.value_at(t, dt);
    };
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double u = input.value_at(t, dt);
        u_samples[k] = u;
        y_samples[k] = (n > 0 ? C * x : 0.0) + D * u;
        if (k == steps) break;
        if (n > 0) {
            const Eigen::VectorXd k1 = deriv(x, t);
            const Eigen::VectorXd k2 = deriv(x + 0.5 * dt * k1, t + 0.5 * dt);
            const Eigen::VectorXd k3 = deriv(x + 0.5 * dt * k2, t + 0.5 * dt);
            const Eigen::VectorXd k4 = deriv(x + dt * k3, t + dt);
            x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return SimResult{Signal(std::move(u_samples), dt), Signal(std::move(y_samples), dt),
                     pole_bound};
}

LaplaceValue numerical_laplace(const Signal& f, std::complex<double> s,
                               const ExpOrderBound& bound) {
    const double sigma = s.real();
    if (!(sigma > bound.a)) throw RegionOfConvergenceError(sigma, bound.a);

    const auto& v = f.samples();
    const double dt = f.dt();
    auto g = [&](std::size_t i) {
        return v[i] * std::exp(-s * f.time_at(i));
    };

    std::complex<double> integral(0.0, 0.0);
    std::size_t intervals = v.size() - 1;
    std::size_t simpson_end = intervals;  // index of the last sample Simpson covers
    if (intervals % 2 != 0) {
        if (intervals >= 3) {
            simpson_end = intervals - 3;
        } else {
            // a single interval: trapezoid
            integral = 0.5 * dt * (g(0) + g(1));
            simpson_end = 0;
        }
    }
    if (simpson_end >= 2) {
        std::complex<double> acc = g(0) + g(simpson_end);
        for (std::size_t i = 1; i < simpson_end; ++i) {
            acc += (i % 2 == 1 ? 4.0 : 2.0) * g(i);
        }
        integral += dt / 3.0 * acc;
    }
    if (intervals % 2 != 0 && intervals >= 3) {
        // Simpson 3/8 on the trailing three intervals
        integral += 3.0 * dt / 8.0 *
                    (g(simpson_end) + 3.0 * g(simpson_end + 1) + 3.0 * g(simpson_end + 2) +
                     g(simpson_end + 3));
    }

    const double T = f.duration();
    const double trunc = bound.M * std::exp((bound.a - sigma) * T) / (sigma - bound.a);
    return LaplaceValue{integral, trunc};
}

bool exp_order_check(const Signal& f, const ExpOrderBound& bound) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f.samples()[i]) > bound.M * std::exp(bound.a * f.time_at(i))) return false;
    }
    return true;
}

ValidationReport validate_tf(const LinearOde& ode, const std::map<ParamId, Rational>& bindings,
                             const RationalFn& tf,
                             const std::vector<std::complex<double>>& s_points,
                             const ValidationOptions& opts) {
    if (s_points.empty()) throw Error("validation needs at least one s-point");
    double min_sigma = s_points[0].real();
    for (const auto& s : s_points) min_sigma = std::min(min_sigma, s.real());
    if (!(min_sigma > 0.0)) throw RegionOfConvergenceError(min_sigma, 0.0);

    // Provisional window to estimate the signal magnitude, then extend until
    // the truncation bound at the weakest point is below 1e-12.
    double duration = opts.duration;
    SimResult sim = simulate(ode, bindings, opts.input, duration > 0.0 ? duration : 20.0,
                             opts.dt);
    double M = std::max(1.0, std::max(sim.u.max_abs(), sim.y.max_abs()) + 1.0);
    if (duration <= 0.0) {
        duration = std::max(20.0, std::log(M * 1e12) / min_sigma);
        if (duration > 20.0) {
            sim = simulate(ode, bindings, opts.input, duration, opts.dt);
            M = std::max(1.0, std::max(sim.u.max_abs(), sim.y.max_abs()) + 1.0);
        }
    } else {
        duration = sim.u.duration();
    }
    const ExpOrderBound bound{M, 0.0};

    ValidationReport report;
    report.dt = opts.dt;
    report.duration = duration;
    report.bound = bound;
    report.rel_tol = opts.rel_tol;
    report.pass = true;
    for (const auto& s : s_points) {
        const LaplaceValue Lu = numerical_laplace(sim.u, s, bound);
        const LaplaceValue Ly = numerical_laplace(sim.y, s, bound);
        if (std::abs(Lu.value) < opts.input_transform_threshold) {
            throw InputTransformNearZeroError("s=" + render(s));
        }
        const std::complex<double> numeric = Ly.value / Lu.value;
        const std::complex<double> symbolic = tf.evaluate(bindings, s);
        const double scale = std::max(std::abs(symbolic), 1e-300);
        const double rel = std::abs(numeric - symbolic) / scale;
        const bool pass = rel < opts.rel_tol;
        report.points.push_back(
            {s, numeric, symbolic, rel, std::max(Lu.truncation_bound, Ly.truncation_bound), pass});
        report.pass = report.pass && pass;
    }
    return report;
}

std::string render_text(const ValidationReport& report) {
    std::ostringstream out;
    out << "validation: dt=" << render(report.dt) << " T=" << render(report.duration)
        << " M=" << render(report.bound.M) << " a=" << render(report.bound.a)
        << " tol=" << render(report.rel_tol) << "\n";
    for (const auto& p : report.points) {
        out << "  s=" << render(p.s) << "  numeric=" << render(p.numeric)
            << "  symbolic=" << render(p.symbolic) << "  rel_error=" << render(p.rel_error)
            << "  trunc_bound=" << render(p.truncation_bound) << "  "
            << (p.pass ? "pass" : "FAIL") << "\n";
    }
    out << (report.pass ? "VALIDATED" : "VALIDATION FAILED") << "\n";
    return out.str();
}

}  // namespace biotf
