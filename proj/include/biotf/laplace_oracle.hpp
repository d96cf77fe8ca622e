#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "biotf/ode_model.hpp"

namespace biotf {

// Uniformly sampled real signal starting at t0 = 0.
class Signal {
  public:
    Signal(std::vector<double> samples, double dt);

    const std::vector<double>& samples() const { return samples_; }
    double dt() const { return dt_; }
    std::size_t size() const { return samples_.size(); }
    double time_at(std::size_t i) const { return static_cast<double>(i) * dt_; }
    double duration() const { return time_at(samples_.size() - 1); }
    double max_abs() const;

  private:
    std::vector<double> samples_;
    double dt_;
};

// Exponential-order bound |f(t)| <= M * exp(a*t); M must be positive.
struct ExpOrderBound {
    double M;
    double a;

    ExpOrderBound(double M_, double a_);
};

enum class InputKind { step, impulse_approx, sinusoid };

struct InputSpec {
    InputKind kind = InputKind::step;
    double sinusoid_omega = 1.0;  // rad/s, sinusoid only
    double impulse_width = 0.0;   // seconds; 0 picks 10*dt

    double value_at(double t, double dt) const;
};

struct SimResult {
    Signal u;
    Signal y;
    double pole_bound;  // max |eigenvalue| of the state matrix
};

// Integrates the ODE from zero initial conditions with classical fourth-order
// Runge-Kutta on the controllable canonical state-space form. Requires
// dt * (pole magnitude bound) < 0.1. Throws UnboundParameterError,
// StepTooLargeError.
SimResult simulate(const LinearOde& ode, const std::map<ParamId, Rational>& bindings,
                   const InputSpec& input, double duration, double dt);

struct LaplaceValue {
    std::complex<double> value;
    double truncation_bound;  // M * exp((a - Re s) * T) / (Re s - a)
};

// Composite Simpson quadrature of f(t)*exp(-s*t) over the sampled window.
// Requires Re(s) > bound.a; throws RegionOfConvergenceError otherwise.
LaplaceValue numerical_laplace(const Signal& f, std::complex<double> s,
                               const ExpOrderBound& bound);

// Sample-resolution check of the exponential-order condition.
bool exp_order_check(const Signal& f, const ExpOrderBound& bound);

struct ValidationOptions {
    double dt = 1e-3;
    double duration = 0.0;  // 0 = pick T so the truncation bound is < 1e-12
    double rel_tol = 1e-4;
    double input_transform_threshold = 1e-9;
    InputSpec input{};
};

struct ValidationPoint {
    std::complex<double> s;
    std::complex<double> numeric;   // L[y](s)/L[u](s)
    std::complex<double> symbolic;  // tf evaluated at s
    double rel_error;
    double truncation_bound;
    bool pass;
};

struct ValidationReport {
    std::vector<ValidationPoint> points;
    bool pass = false;
    double dt = 0.0;
    double duration = 0.0;
    ExpOrderBound bound{1.0, 0.0};
    double rel_tol = 0.0;
};

// Simulates the circuit, numerically transforms input and output, and checks
// L[y]/L[u] against the symbolic transfer function at each sample point.
// Throws RegionOfConvergenceError for points at or below the exponential
// order, InputTransformNearZeroError when |L[u](s)| drops below threshold.
ValidationReport validate_tf(const LinearOde& ode, const std::map<ParamId, Rational>& bindings,
                             const RationalFn& tf, const std::vector<std::complex<double>>& s_points,
                             const ValidationOptions& opts = {});

std::string render_text(const ValidationReport& report);

}  // namespace biotf
