// Copyright 2026 The wecans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wecans/allocators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wecans {

namespace {

void check_same_size(std::span<const double> a, std::span<const double> b, const char *what) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument(std::string(what) + ": inputs must be nonempty and of equal length");
    }
}

double clamp_square(double x) { return std::max(x * x, kMinSquaredGradient); }

double squared_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::max(s, kMinSquaredGradient);
}

double sigma(double xi) { return std::sqrt(std::max(xi, 0.0)); }

/// Caps every component at the one with the best rate(i, s_i).
template <class Rate> void clip_to_best_rate(ShotPlan &plan, Rate rate) {
    std::size_t best = 0;
    double best_rate = rate(0, plan.shots[0]);
    for (std::size_t i = 1; i < plan.size(); ++i) {
        const double r = rate(i, plan.shots[i]);
        if (r > best_rate) {
            best_rate = r;
            best = i;
        }
    }
    const std::int64_t cap = plan.shots[best];
    for (auto &s : plan.shots) {
        s = std::min(s, cap);
    }
}

} // namespace

BiasCorrectedEma::BiasCorrectedEma(std::size_t d, double mu) : raw_(d, 0.0), mu_(mu) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw std::invalid_argument("moving-average constant must lie in (0, 1)");
    }
}

void BiasCorrectedEma::update(std::span<const double> x) {
    if (x.size() != raw_.size()) {
        throw std::invalid_argument("BiasCorrectedEma::update: dimension mismatch");
    }
    for (std::size_t i = 0; i < raw_.size(); ++i) {
        raw_[i] = mu_ * raw_[i] + (1.0 - mu_) * x[i];
    }
    ++updates_;
}

std::vector<double> BiasCorrectedEma::corrected() const {
    if (updates_ == 0) {
        return raw_;
    }
    const double scale = 1.0 - std::pow(mu_, static_cast<double>(updates_));
    std::vector<double> out(raw_.size());
    for (std::size_t i = 0; i < raw_.size(); ++i) {
        out[i] = raw_[i] / scale;
    }
    return out;
}

EmaTracker::EmaTracker(std::size_t d, double mu) : chi_(d, mu), xi_(d, mu) {}

void EmaTracker::update(std::span<const double> grad, std::span<const double> variance) {
    for (double v : variance) {
        if (v < 0.0) {
            throw std::invalid_argument("EmaTracker::update: negative variance");
        }
    }
    chi_.update(grad);
    xi_.update(variance);
}

std::int64_t round_up_shots(double x, std::int64_t floor) {
    if (std::isnan(x) || x >= static_cast<double>(kMaxShotsPerComponent)) {
        return std::max(floor, kMaxShotsPerComponent);
    }
    const double c = std::ceil(x - 1e-9 * std::max(1.0, std::abs(x)));
    return std::max(floor, static_cast<std::int64_t>(c));
}

void check_step_size(double lipschitz, double alpha) {
    if (!(lipschitz > 0.0)) {
        throw std::invalid_argument("Lipschitz constant must be positive");
    }
    if (!(alpha > 0.0 && lipschitz * alpha < 2.0)) {
        throw std::invalid_argument("step size must satisfy 0 < alpha < 2/L");
    }
}

double sgd_component_gain(double chi, double xi, double lipschitz, double alpha, double shots) {
    return (alpha - lipschitz * alpha * alpha / 2.0) * chi * chi - lipschitz * alpha * alpha / 2.0 * xi / shots;
}

double icans_raw(double chi, double xi, double lipschitz, double alpha) {
    const double la = lipschitz * alpha;
    return 2.0 * la / (2.0 - la) * std::max(xi, 0.0) / clamp_square(chi);
}

double wecans_i_raw(double chi, double xi, double lipschitz, double alpha, double overhead) {
    if (overhead < 0.0) {
        throw std::invalid_argument("overhead ratio must be nonnegative");
    }
    if (overhead == 0.0) {
        return icans_raw(chi, xi, lipschitz, alpha);
    }
    xi = std::max(xi, 0.0);
    if (xi == 0.0) {
        return 0.0;
    }
    const double la = lipschitz * alpha;
    const double chi2 = clamp_square(chi);
    const double noise_to_signal = xi / chi2;
    return la / (2.0 - la) * (1.0 + std::sqrt(1.0 + overhead * (2.0 - la) / la / noise_to_signal)) *
           noise_to_signal;
}

ShotPlan icans_shots(std::span<const double> chi, std::span<const double> xi, double lipschitz, double alpha) {
    const std::vector<double> zero(chi.size(), 0.0);
    return wecans_i_shots(chi, xi, lipschitz, alpha, zero);
}

ShotPlan wecans_i_shots(std::span<const double> chi, std::span<const double> xi, double lipschitz,
                        double alpha, std::span<const double> overheads) {
    check_same_size(chi, xi, "wecans_i_shots");
    if (overheads.size() != chi.size()) {
        throw std::invalid_argument("wecans_i_shots: need one overhead ratio per component");
    }
    check_step_size(lipschitz, alpha);
    ShotPlan plan;
    plan.shots.reserve(chi.size());
    for (std::size_t i = 0; i < chi.size(); ++i) {
        plan.shots.push_back(round_up_shots(wecans_i_raw(chi[i], xi[i], lipschitz, alpha, overheads[i]), kCansMinShots));
    }
    clip_to_best_rate(plan, [&](std::size_t i, std::int64_t s) {
        const double sd = static_cast<double>(s);
        return sgd_component_gain(chi[i], xi[i], lipschitz, alpha, sd) / (sd + overheads[i]);
    });
    return plan;
}

std::vector<double> gcans_raw(std::span<const double> chi, std::span<const double> xi, double lipschitz,
                              double alpha) {
    check_same_size(chi, xi, "gcans_raw");
    const double la = lipschitz * alpha;
    double sigma_sum = 0.0;
    for (double x : xi) {
        sigma_sum += sigma(x);
    }
    const double scale = 2.0 * la / (2.0 - la) * sigma_sum / squared_norm(chi);
    std::vector<double> out;
    out.reserve(xi.size());
    for (double x : xi) {
        out.push_back(scale * sigma(x));
    }
    return out;
}

std::vector<double> wecans_g_raw(std::span<const double> chi, std::span<const double> xi, double lipschitz,
                                 double alpha, double overhead) {
    check_same_size(chi, xi, "wecans_g_raw");
    if (overhead < 0.0) {
        throw std::invalid_argument("overhead ratio must be nonnegative");
    }
    const double la = lipschitz * alpha;
    double sigma_sum = 0.0;
    for (double x : xi) {
        sigma_sum += sigma(x);
    }
    const double q = (2.0 - la) / la * squared_norm(chi);
    const double scale = (sigma_sum + std::sqrt(sigma_sum * sigma_sum + overhead * q)) / q;
    std::vector<double> out;
    out.reserve(xi.size());
    for (double x : xi) {
        out.push_back(scale * sigma(x));
    }
    return out;
}

ShotPlan gcans_shots(std::span<const double> chi, std::span<const double> xi, double lipschitz, double alpha) {
    check_step_size(lipschitz, alpha);
    ShotPlan plan;
    for (double s : gcans_raw(chi, xi, lipschitz, alpha)) {
        plan.shots.push_back(round_up_shots(s, kCansMinShots));
    }
    return plan;
}

ShotPlan wecans_g_shots(std::span<const double> chi, std::span<const double> xi, double lipschitz,
                        double alpha, double overhead) {
    if (overhead == 0.0) {
        return gcans_shots(chi, xi, lipschitz, alpha);
    }
    check_step_size(lipschitz, alpha);
    ShotPlan plan;
    for (double s : wecans_g_raw(chi, xi, lipschitz, alpha, overhead)) {
        plan.shots.push_back(round_up_shots(s, kCansMinShots));
    }
    return plan;
}

double adam_direction_component(double g, double m_raw, double v_raw, double beta1, double beta2,
                                double epsilon, std::int64_t step) {
    const double k = static_cast<double>(step);
    const double m = (beta1 * m_raw + (1.0 - beta1) * g) / (1.0 - std::pow(beta1, k));
    const double v = (beta2 * v_raw + (1.0 - beta2) * g * g) / (1.0 - std::pow(beta2, k));
    const double denom = std::sqrt(std::max(v, 0.0)) + epsilon;
    return denom > 0.0 ? m / denom : 0.0;
}

std::vector<double> adam_direction(std::span<const double> g, std::span<const double> m_raw,
                                   std::span<const double> v_raw, double beta1, double beta2, double epsilon,
                                   std::int64_t step) {
    if (m_raw.size() != g.size() || v_raw.size() != g.size()) {
        throw std::invalid_argument("adam_direction: dimension mismatch");
    }
    if (step < 1) {
        throw std::invalid_argument("adam_direction: step index must be >= 1");
    }
    std::vector<double> x(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        x[i] = adam_direction_component(g[i], m_raw[i], v_raw[i], beta1, beta2, epsilon, step);
    }
    return x;
}

AdamGain adam_gain_terms(const AdamGainInput &in) {
    const std::size_t d = in.chi.size();
    if (in.xi.size() != d || in.m_raw.size() != d || in.v_raw.size() != d || d == 0) {
        throw std::invalid_argument("adam_gain_terms: dimension mismatch");
    }
    if (in.step < 1) {
        throw std::invalid_argument("adam_gain_terms: step index must be >= 1");
    }
    const auto x = adam_direction(in.chi, in.m_raw, in.v_raw, in.beta1, in.beta2, in.epsilon, in.step);
    double inner = 0.0;
    double x_sq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        inner += in.chi[i] * x[i];
        x_sq += x[i] * x[i];
    }
    const double curvature_weight = in.lipschitz * in.alpha * in.alpha / 2.0;

    AdamGain out;
    out.A = std::abs(in.alpha * inner) - curvature_weight * x_sq;
    out.B.assign(d, 0.0);

    const double sign = inner < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        if (in.xi[i] == 0.0) {
            continue;
        }
        // Only the i-th summands of phi depend on g_i.
        auto part = [&](double g) {
            const double xi_dir = adam_direction_component(g, in.m_raw[i], in.v_raw[i], in.beta1, in.beta2,
                                                           in.epsilon, in.step);
            return sign * in.alpha * in.chi[i] * xi_dir - curvature_weight * xi_dir * xi_dir;
        };
        const double h = 1e-3 * std::max(std::abs(in.chi[i]), 1e-6);
        const double g0 = in.chi[i];
        const double second = (part(g0 + h) - 2.0 * part(g0) + part(g0 - h)) / (h * h);
        out.B[i] = -0.5 * in.xi[i] * second;
    }
    return out;
}

std::vector<double> we_adam_raw(double A, std::span<const double> B, double overhead, std::int64_t s_min) {
    if (!(A > 0.0)) {
        throw std::invalid_argument("we_adam_raw: A must be positive");
    }
    if (overhead < 0.0) {
        throw std::invalid_argument("overhead ratio must be nonnegative");
    }
    if (s_min < kCansMinShots) {
        throw std::invalid_argument("we_adam_raw: s_min must be at least 2");
    }
    const double smin = static_cast<double>(s_min);
    double b_plus = 0.0;
    double minus_count = 0.0;
    double minus_sum = 0.0;
    for (double b : B) {
        if (b > 0.0) {
            b_plus += std::sqrt(b);
        } else {
            minus_count += 1.0;
            minus_sum += b;
        }
    }
    const double r_eff = overhead + minus_count * smin;
    const double a_eff = A - minus_sum / smin;
    // R' sqrt(B_i) / (sqrt(b+^2 + R'A') - b+), rationalized to stay exact at R' = 0
    const double scale = (std::sqrt(b_plus * b_plus + r_eff * a_eff) + b_plus) / a_eff;
    std::vector<double> out;
    out.reserve(B.size());
    for (double b : B) {
        out.push_back(b > 0.0 ? std::sqrt(b) * scale : smin);
    }
    return out;
}

ShotPlan we_adam_shots(double A, std::span<const double> B, double overhead, std::int64_t s_min) {
    ShotPlan plan;
    for (double s : we_adam_raw(A, B, overhead, s_min)) {
        plan.shots.push_back(round_up_shots(s, s_min));
    }
    return plan;
}

AlphaClip clip_alpha(std::span<const double> chi, std::span<const double> direction, double lipschitz,
                     double alpha, double r) {
    check_same_size(chi, direction, "clip_alpha");
    if (!(r > 0.0 && r < 1.0)) {
        throw std::invalid_argument("clip_alpha: r must lie in (0, 1)");
    }
    double inner = 0.0;
    double x_sq = 0.0;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        inner += chi[i] * direction[i];
        x_sq += direction[i] * direction[i];
    }
    if (x_sq == 0.0) {
        return {alpha, false};
    }
    const double limit = r * 2.0 * std::abs(inner) / (lipschitz * x_sq);
    if (limit < alpha) {
        return {limit, true};
    }
    return {alpha, false};
}

} // namespace wecans
