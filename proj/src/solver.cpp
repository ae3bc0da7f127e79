// SPDX-License-Identifier: Apache-2.0
//
// The reduced problem min |d^H theta + c|^2, |theta_n| <= 1 is a convex QCQP
// with zero duality gap. With Q = d d^H + diag(lambda), Sherman-Morrison
// gives d^H Q^{-1} d = s/(1+s) for s = sum |d_n|^2/lambda_n, so the dual is
//
//   g(lambda) = |c|^2 / (1 + s) - sum lambda_n.
//
// Stationarity of g forces lambda_n = |c| |d_n| / (1+s): the maximizer lies
// on the ray lambda = t |d| with t = max(0, |c| - sum |d_k|). The solver uses
// that closed form when all |d_n| coincide (the physical case: |d_n| = 1)
// and projected gradient ascent otherwise, keeping the better of the ascent
// iterate and the ray candidate.

#include "stealth/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stealth/errors.hpp"

namespace stealth {

namespace {

bool uniform_moduli(const CVec& d) {
    if (d.size() == 0) return true;
    const RVec m = d.cwiseAbs();
    const double hi = m.maxCoeff();
    const double lo = m.minCoeff();
    return hi - lo <= 1e-12 * std::max(1.0, hi);
}

// g(lambda) = inf_theta L(theta, lambda), finite on the whole orthant: when
// some lambda_n = 0 with d_n != 0 the quadratic term can be cancelled along
// that coordinate and the infimum is -sum lambda_n.
double eval_dual(const CVec& d, Complex c, const RVec& lambda) {
    bool free_direction = false;
    double s = 0.0;
    for (Eigen::Index n = 0; n < d.size(); ++n) {
        const double dn2 = std::norm(d[n]);
        if (dn2 == 0.0) continue;
        if (lambda[n] > 0.0)
            s += dn2 / lambda[n];
        else
            free_direction = true;
    }
    const double lambda_sum = lambda.size() ? lambda.sum() : 0.0;
    if (free_direction) return -lambda_sum;
    return std::norm(c) / (1.0 + s) - lambda_sum;
}

RVec ray_lambda(const CVec& d, double t) { return t * d.cwiseAbs(); }

// Feasible theta with d^H theta = -c when exact cancellation is possible but
// the minimum-norm point violates some modulus bound: clip the large entries
// at one and scale the rest, bisecting on the common scale.
CVec clipped_cancellation(const CVec& d, Complex c) {
    const Eigen::Index n = d.size();
    const double target = std::abs(c);
    const Complex ref = target > 0.0 ? Complex(-c / target) : Complex(1.0, 0.0);
    const auto reach = [&](double mu) {
        double r = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = std::abs(d[i]);
            r += a * std::min(1.0, mu * a);
        }
        return r;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80 && reach(hi) < target; ++it) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (reach(mid) < target ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    CVec theta = CVec::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(d[i]);
        if (a > 0.0) theta[i] = ref * (d[i] / a) * std::min(1.0, mu * a);
    }
    return theta;
}

CVec theta_from_lambda(const CVec& d, Complex c, const RVec& lambda) {
    const Eigen::Index n = d.size();
    CVec theta = CVec::Zero(n);
    std::vector<Eigen::Index> free_idx;
    double free_norm2 = 0.0;
    double s = 0.0;
    bool any_positive = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double di2 = std::norm(d[i]);
        if (lambda[i] > 0.0) {
            any_positive = true;
            if (di2 > 0.0) s += di2 / lambda[i];
        } else if (di2 > 0.0) {
            free_idx.push_back(i);
            free_norm2 += di2;
        }
    }
    if (!free_idx.empty() || !any_positive) {
        // lambda vanishes on the support of d: stationarity needs
        // d^H theta = -c, met by the minimum-norm point on the free block.
        if (free_norm2 == 0.0) return theta;  // d == 0: objective is constant
        CVec d_free(free_idx.size());
        for (std::size_t k = 0; k < free_idx.size(); ++k) d_free[k] = d[free_idx[k]];
        CVec theta_free = -(c / free_norm2) * d_free;
        if (theta_free.size() > 0 && theta_free.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
            theta_free = clipped_cancellation(d_free, c);
        for (std::size_t k = 0; k < free_idx.size(); ++k) theta[free_idx[k]] = theta_free[k];
        return theta;  // entries with lambda > 0 stay at zero
    }
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::norm(d[i]) > 0.0) theta[i] = -c * d[i] / (lambda[i] * (1.0 + s));
    return theta;
}

KktResiduals compute_residuals(const CVec& d, Complex c, const CVec& theta, const RVec& lambda) {
    const Complex r = d.dot(theta) + c;  // d^H theta + c
    CVec stationarity = d * r;
    double comp = 0.0, feas = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        stationarity[i] += lambda[i] * theta[i];
        comp = std::max(comp, std::abs(lambda[i] * (std::norm(theta[i]) - 1.0)));
        feas = std::max(feas, std::abs(theta[i]));
    }
    KktResiduals res;
    res.stationarity = stationarity.norm();
    res.complementarity = comp;
    res.feasibility = std::max(0.0, feas - 1.0);
    return res;
}

CVec amplitude_only_design(const EchoCoefficients& coeffs) {
    const CVec& d = coeffs.d;
    const Eigen::Index n = d.size();
    const double l2 = d.squaredNorm();
    RVec beta = RVec::Zero(n);
    if (l2 > 0.0) {
        double prev = std::norm(coeffs.c);
        for (int it = 0; it < 20000; ++it) {
            Complex r = coeffs.c;
            for (Eigen::Index i = 0; i < n; ++i) r += std::conj(d[i]) * beta[i];
            double shift = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double g = std::real(std::conj(r) * std::conj(d[i]));
                const double next = std::clamp(beta[i] - g / l2, 0.0, 1.0);
                shift = std::max(shift, std::abs(next - beta[i]));
                beta[i] = next;
            }
            Complex r2 = coeffs.c;
            for (Eigen::Index i = 0; i < n; ++i) r2 += std::conj(d[i]) * beta[i];
            const double obj = std::norm(r2);
            if (shift <= 1e-14 || prev - obj <= 1e-16 * (1.0 + obj)) break;
            prev = obj;
        }
    }
    CVec theta(n);
    for (Eigen::Index i = 0; i < n; ++i) theta[i] = Complex(beta[i], 0.0);
    return theta;
}

// Gradient steps re-normalized to the unit circle; used only when the entry
// moduli of d are not all equal and the fan construction does not apply.
CVec phase_only_descent(const EchoCoefficients& coeffs) {
    const CVec& d = coeffs.d;
    const Eigen::Index n = d.size();
    const double l2 = d.squaredNorm();
    const double abs_c = std::abs(coeffs.c);
    const Complex ref = abs_c > 0.0 ? Complex(-coeffs.c / abs_c) : Complex(1.0, 0.0);
    CVec theta(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(d[i]);
        theta[i] = a > 0.0 ? ref * (d[i] / a) : Complex(1.0, 0.0);
    }
    if (l2 == 0.0) return theta;
    CVec best = theta;
    double best_obj = echo_objective(coeffs, theta);
    for (int it = 0; it < 2000; ++it) {
        const Complex r = d.dot(theta) + coeffs.c;
        CVec next = theta - (d * r) / l2;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double m = std::abs(next[i]);
            next[i] = m > 0.0 ? next[i] / m : theta[i];
        }
        theta = next;
        const double obj = echo_objective(coeffs, theta);
        if (obj < best_obj) {
            best_obj = obj;
            best = theta;
        }
    }
    return best;
}

CVec phase_only_design(const EchoCoefficients& coeffs) {
    const CVec& d = coeffs.d;
    const Eigen::Index n = d.size();
    if (n == 0) return CVec();
    if (!uniform_moduli(d)) return phase_only_descent(coeffs);
    const double s1 = d.cwiseAbs().sum();
    const double abs_c = std::abs(coeffs.c);
    const Complex ref = abs_c > 0.0 ? Complex(-coeffs.c / abs_c) : Complex(1.0, 0.0);
    CVec unit(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = std::abs(d[i]);
        unit[i] = a > 0.0 ? d[i] / a : Complex(1.0, 0.0);
    }
    CVec theta(n);
    if (abs_c >= s1 || n == 1) {
        // cancellation at full tilt (or a single element): all entries aligned
        for (Eigen::Index i = 0; i < n; ++i) theta[i] = ref * unit[i];
        return theta;
    }
    if (n % 2 == 0) {
        // balanced fan: alternating +/- delta makes the imaginary parts cancel
        // and the real sum equal |c| exactly.
        const double delta = std::acos(std::clamp(abs_c / s1, -1.0, 1.0));
        for (Eigen::Index i = 0; i < n; ++i)
            theta[i] = ref * unit[i] * std::polar(1.0, (i % 2 == 0 ? delta : -delta));
        return theta;
    }
    // odd count: fan the first n-1 entries, park the last at phase zero and
    // solve the residual single-phasor equation 2 k m cos(delta) + m = |c|.
    const double m = s1 / static_cast<double>(n);
    const double delta = std::acos(std::clamp((abs_c - m) / (s1 - m), -1.0, 1.0));
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        theta[i] = ref * unit[i] * std::polar(1.0, (i % 2 == 0 ? delta : -delta));
    theta[n - 1] = ref * unit[n - 1];
    return theta;
}

SolveReport evaluation_report(const EchoCoefficients& coeffs, CVec theta, ReflectionMode mode) {
    SolveReport report;
    report.lambda = RVec::Zero(coeffs.d.size());
    report.primal_value = echo_objective(coeffs, theta);
    report.dual_value = report.primal_value;  // evaluation only, no certificate
    report.residuals.feasibility =
        theta.size() ? std::max(0.0, theta.cwiseAbs().maxCoeff() - 1.0) : 0.0;
    report.theta = std::move(theta);
    report.method = to_string(mode);
    return report;
}

}  // namespace

ReflectionMode reflection_mode_from_string(const std::string& name) {
    if (name == "full") return ReflectionMode::full;
    if (name == "phase_only") return ReflectionMode::phase_only;
    if (name == "amplitude_only") return ReflectionMode::amplitude_only;
    if (name == "random_phase") return ReflectionMode::random_phase;
    if (name == "none") return ReflectionMode::none;
    throw ConfigError("unknown reflection mode: " + name);
}

std::string to_string(ReflectionMode mode) {
    switch (mode) {
        case ReflectionMode::full: return "full";
        case ReflectionMode::phase_only: return "phase_only";
        case ReflectionMode::amplitude_only: return "amplitude_only";
        case ReflectionMode::random_phase: return "random_phase";
        case ReflectionMode::none: return "none";
    }
    throw ConfigError("unknown reflection mode");
}

DualSolution solve_dual(const EchoCoefficients& coeffs, const SolverOptions& opts) {
    if (!(opts.gap_tol > 0.0)) throw std::invalid_argument("solve_dual: gap_tol must be positive");
    const CVec& d = coeffs.d;
    const Complex c = coeffs.c;
    const Eigen::Index n = d.size();
    DualSolution out;
    out.lambda = RVec::Zero(n);
    const double s1 = n ? d.cwiseAbs().sum() : 0.0;
    const double abs_c = std::abs(c);
    if (s1 == 0.0) {
        out.value = std::norm(c);  // theta cannot change the objective
        return out;
    }
    if (abs_c <= s1) {
        out.value = 0.0;  // exact cancellation is feasible: g(0) = 0
        return out;
    }
    if (uniform_moduli(d)) {
        out.lambda = ray_lambda(d, abs_c - s1);
        out.value = eval_dual(d, c, out.lambda);
        return out;
    }

    // projected gradient ascent with backtracking on the concave dual
    RVec lambda = ray_lambda(d, abs_c - s1);
    double g = eval_dual(d, c, lambda);
    double step = opts.ascent_step * std::max(1.0, abs_c - s1);
    int iters = 0;
    for (; iters < opts.max_iter; ++iters) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (lambda[i] > 0.0 && std::norm(d[i]) > 0.0) s += std::norm(d[i]) / lambda[i];
        RVec grad(n);
        double proj_grad = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ai = std::abs(d[i]);
            if (ai == 0.0)
                grad[i] = -1.0;
            else if (lambda[i] > 0.0) {
                const double q = abs_c * ai / ((1.0 + s) * lambda[i]);
                grad[i] = q * q - 1.0;
            } else
                grad[i] = (abs_c / ai) * (abs_c / ai) - 1.0;
            if (lambda[i] > 0.0 || grad[i] > 0.0)
                proj_grad = std::max(proj_grad, std::abs(grad[i]));
        }
        if (proj_grad <= 1e-11) break;
        bool improved = false;
        for (int bt = 0; bt < 60; ++bt) {
            const RVec cand = (lambda + step * grad).cwiseMax(0.0);
            const double gc = eval_dual(d, c, cand);
            if (gc > g) {
                lambda = cand;
                g = gc;
                step *= 1.5;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    // the ray candidate is always dual feasible; keep the better value
    const RVec ray = ray_lambda(d, std::max(0.0, abs_c - s1));
    const double g_ray = eval_dual(d, c, ray);
    if (g_ray >= g) {
        lambda = ray;
        g = g_ray;
    }
    out.lambda = lambda;
    out.value = g;
    out.iterations = iters;
    return out;
}

SolveReport solve_kkt(const EchoCoefficients& coeffs, const SolverOptions& opts) {
    if (coeffs.d.size() == 0)
        throw std::invalid_argument("solve_kkt: reflection vector must have at least one element");
    const DualSolution dual = solve_dual(coeffs, opts);
    SolveReport report;
    report.theta = theta_from_lambda(coeffs.d, coeffs.c, dual.lambda);
    report.lambda = dual.lambda;
    report.primal_value = echo_objective(coeffs, report.theta);
    report.dual_value = dual.value;
    report.residuals = compute_residuals(coeffs.d, coeffs.c, report.theta, dual.lambda);
    report.iterations = dual.iterations;
    report.method = "kkt";
    const double tol = std::max(opts.gap_tol, 1e-9 * std::max(1.0, report.primal_value));
    if (report.primal_value - report.dual_value > tol || report.residuals.stationarity > tol)
        throw SolverError("solve_kkt: duality gap above tolerance",
                          report.residuals.stationarity, report.residuals.complementarity,
                          report.residuals.feasibility, report.iterations);
    return report;
}

SolveReport solve_projected_gradient(const EchoCoefficients& coeffs, const SolverOptions& opts) {
    const CVec& d = coeffs.d;
    if (d.size() == 0)
        throw std::invalid_argument(
            "solve_projected_gradient: reflection vector must have at least one element");
    const Eigen::Index n = d.size();
    const double l2 = d.squaredNorm();
    CVec theta = CVec::Zero(n);
    double obj = std::norm(coeffs.c);
    int it = 0;
    if (l2 > 0.0) {
        for (; it < std::max(opts.max_iter, 100); ++it) {
            const Complex r = d.dot(theta) + coeffs.c;
            CVec next = theta - (d * r) / l2;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double m = std::abs(next[i]);
                if (m > 1.0) next[i] /= m;
            }
            const double obj_next = echo_objective(coeffs, next);
            if (obj_next > obj + 1e-12 * (1.0 + obj))
                throw SolverError("solve_projected_gradient: objective increased", 0.0, 0.0, 0.0, it);
            const double delta = (next - theta).cwiseAbs().maxCoeff();
            theta = next;
            obj = obj_next;
            if (delta <= 1e-13) {
                ++it;
                break;
            }
        }
    }
    // active constraints carry |gradient| as their multiplier
    const Complex r = d.dot(theta) + coeffs.c;
    RVec lambda = RVec::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(theta[i]) >= 1.0 - 1e-9) lambda[i] = std::abs(d[i] * r);
    SolveReport report;
    report.theta = theta;
    report.lambda = lambda;
    report.primal_value = obj;
    report.dual_value = eval_dual(d, coeffs.c, lambda);
    report.residuals = compute_residuals(d, coeffs.c, theta, lambda);
    report.iterations = it;
    report.method = "projected_gradient";
    return report;
}

CVec baseline_reflection(const EchoCoefficients& coeffs, ReflectionMode mode, SeedStream& rng) {
    const Eigen::Index n = coeffs.d.size();
    switch (mode) {
        case ReflectionMode::none:
            return CVec::Zero(n);
        case ReflectionMode::random_phase: {
            CVec theta(n);
            for (Eigen::Index i = 0; i < n; ++i)
                theta[i] = std::polar(1.0, rng.next_uniform(0.0, 2.0 * kPi));
            return theta;
        }
        case ReflectionMode::amplitude_only:
            return amplitude_only_design(coeffs);
        case ReflectionMode::phase_only:
            return phase_only_design(coeffs);
        case ReflectionMode::full:
            return solve_kkt(coeffs).theta;
    }
    throw ConfigError("unknown reflection mode");
}

CVec baseline_reflection(const EchoCoefficients& coeffs, ReflectionMode mode, std::uint64_t seed) {
    SeedStream rng(seed);
    return baseline_reflection(coeffs, mode, rng);
}

SolveReport optimize_reflection(const EchoCoefficients& coeffs, const SolverOptions& opts,
                                SeedStream& rng) {
    if (opts.mode == ReflectionMode::full) return solve_kkt(coeffs, opts);
    return evaluation_report(coeffs, baseline_reflection(coeffs, opts.mode, rng), opts.mode);
}

}  // namespace stealth
