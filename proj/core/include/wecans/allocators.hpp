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

/**
 * @file allocators.hpp
 * Shot allocation rules for shot-adaptive SGD and Adam.
 *
 * Every rule maximizes an expected (lower-bound) gain per unit cost, where
 * the cost of an iteration is c1 * sum(s) + c2 * sum(m) + c3. Dividing by c1
 * leaves the overhead ratios R (whole iteration) and R_i (per component):
 *
 *   iCANS      per-component gain per shot
 *   gCANS      total gain per total shots
 *   weCANS(i)  per-component gain per (s_i + R_i)
 *   weCANS(g)  total gain per (sum s + R)
 *   AdamCANS   Taylor-approximated Adam gain A - sum B_i / s_i per sum s
 *   we-Adam    the same per (sum s + R), with s_i >= s_min
 *
 * Unknown gradient and variance values are replaced by bias-corrected
 * moving averages (chi, xi) of past estimates.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wecans/gradient.hpp"

namespace wecans {

inline constexpr std::int64_t kMaxShotsPerComponent = 1'000'000;
inline constexpr std::int64_t kCansMinShots = 2;
/// Lower clamp for chi_i^2 and |chi|^2.
inline constexpr double kMinSquaredGradient = 1e-24;

/// Exponential moving average with 1 / (1 - mu^n) bias correction after n
/// updates. The raw accumulator is never overwritten by corrected values.
class BiasCorrectedEma {
  public:
    BiasCorrectedEma(std::size_t d, double mu);

    void update(std::span<const double> x);

    [[nodiscard]] std::vector<double> corrected() const;
    [[nodiscard]] const std::vector<double> &raw() const { return raw_; }
    [[nodiscard]] std::int64_t updates() const { return updates_; }
    [[nodiscard]] double mu() const { return mu_; }
    [[nodiscard]] std::size_t size() const { return raw_.size(); }

  private:
    std::vector<double> raw_;
    double mu_;
    std::int64_t updates_ = 0;
};

/// Moving averages of gradient estimates (chi) and per-shot variances (xi).
class EmaTracker {
  public:
    EmaTracker(std::size_t d, double mu);

    void update(std::span<const double> grad, std::span<const double> variance);

    [[nodiscard]] std::vector<double> chi() const { return chi_.corrected(); }
    [[nodiscard]] std::vector<double> xi() const { return xi_.corrected(); }
    [[nodiscard]] const std::vector<double> &chi_raw() const { return chi_.raw(); }
    [[nodiscard]] const std::vector<double> &xi_raw() const { return xi_.raw(); }
    /// Number of updates absorbed.
    [[nodiscard]] std::int64_t k() const { return chi_.updates(); }
    [[nodiscard]] double mu() const { return chi_.mu(); }
    [[nodiscard]] std::size_t size() const { return chi_.size(); }

  private:
    BiasCorrectedEma chi_;
    BiasCorrectedEma xi_;
};

/// ceil(x) clamped to [floor, kMaxShotsPerComponent]. A relative slack of
/// 1e-9 absorbs round-off on values that are integers in exact arithmetic.
std::int64_t round_up_shots(double x, std::int64_t floor);

/// Throws std::invalid_argument unless L > 0 and 0 < alpha < 2 / L.
void check_step_size(double lipschitz, double alpha);

/// Expected per-component SGD gain E[G_i(s)] = (a - L a^2/2) chi^2 - (L a^2/2) xi / s.
double sgd_component_gain(double chi, double xi, double lipschitz, double alpha, double shots);

// -- iCANS / weCANS(i) -------------------------------------------------------

/// Unrounded iCANS suggestion 2 L a / (2 - L a) * xi / chi^2.
double icans_raw(double chi, double xi, double lipschitz, double alpha);

/// Unrounded weCANS(i) suggestion; equals icans_raw at R_i = 0.
double wecans_i_raw(double chi, double xi, double lipschitz, double alpha, double overhead);

/// iCANS rule, then the s_max clip: no component gets more shots than the
/// one with the highest expected gain per shot (lowest index on ties).
ShotPlan icans_shots(std::span<const double> chi, std::span<const double> xi, double lipschitz, double alpha);

/// weCANS(i) rule with per-component overhead ratios R_i, clipped like iCANS
/// but ranking components by gain per (s_i + R_i).
ShotPlan wecans_i_shots(std::span<const double> chi, std::span<const double> xi, double lipschitz,
                        double alpha, std::span<const double> overheads);

// -- gCANS / weCANS(g) -------------------------------------------------------

std::vector<double> gcans_raw(std::span<const double> chi, std::span<const double> xi, double lipschitz,
                              double alpha);

/// s_i = sigma_i (S + sqrt(S^2 + R q)) / q with S = sum sigma, q = (2 - L a)/(L a) |chi|^2,
/// the cancellation-free form of the weCANS(g) closed form.
std::vector<double> wecans_g_raw(std::span<const double> chi, std::span<const double> xi, double lipschitz,
                                 double alpha, double overhead);

ShotPlan gcans_shots(std::span<const double> chi, std::span<const double> xi, double lipschitz, double alpha);

/// weCANS(g); R = 0 returns gcans_shots.
ShotPlan wecans_g_shots(std::span<const double> chi, std::span<const double> xi, double lipschitz,
                        double alpha, double overhead);

// -- Adam family -------------------------------------------------------------

struct AdamGainInput {
    std::span<const double> chi;
    std::span<const double> xi;
    /// Raw (uncorrected) Adam moments after the latest update.
    std::span<const double> m_raw;
    std::span<const double> v_raw;
    double alpha = 0.0;
    double lipschitz = 1.0;
    double epsilon = 1e-8;
    double beta1 = 0.9;
    double beta2 = 0.99;
    /// Adam step index used in the bias corrections, >= 1.
    std::int64_t step = 1;
};

struct AdamGain {
    /// phi(chi), the gain lower bound at the expected gradient.
    double A = 0.0;
    /// B_i = -(xi_i / 2) d^2 phi / d g_i^2 at g = chi.
    std::vector<double> B;
};

/// Adam's update direction X(g) for the next gradient g, with
/// M = (b1 m' + (1 - b1) g) / (1 - b1^step) and V likewise.
double adam_direction_component(double g, double m_raw, double v_raw, double beta1, double beta2,
                                double epsilon, std::int64_t step);
std::vector<double> adam_direction(std::span<const double> g, std::span<const double> m_raw,
                                   std::span<const double> v_raw, double beta1, double beta2, double epsilon,
                                   std::int64_t step);

/**
 * A and B of the second-order expansion E[phi(g)] ~= A - sum_i B_i / s_i with
 * phi(g) = |alpha chi^T X(g)| - (L alpha^2 / 2) |X(g)|^2.
 *
 * The curvature is a central second difference in g_i with step
 * h_i = 1e-3 * max(|chi_i|, 1e-6); the sign inside |.| is frozen at g = chi.
 */
AdamGain adam_gain_terms(const AdamGainInput &in);

/// Unrounded we-AdamCANS suggestion. Components with B_i <= 0 get s_min;
/// the rest share the optimum of (A' - sum B_i / s_i) / (sum s_i + R') with
/// R' = R + |J-| s_min and A' = A - sum_{J-} B_j / s_min.
std::vector<double> we_adam_raw(double A, std::span<const double> B, double overhead, std::int64_t s_min);

/// we-AdamCANS shot plan (AdamCANS at R = 0). Throws when A <= 0.
ShotPlan we_adam_shots(double A, std::span<const double> B, double overhead, std::int64_t s_min);

struct AlphaClip {
    double alpha = 0.0;
    bool clipped = false;
};

/// min(alpha, r * 2 |chi^T X| / (L |X|^2)), which keeps A positive.
/// |X| = 0 leaves alpha untouched.
AlphaClip clip_alpha(std::span<const double> chi, std::span<const double> direction, double lipschitz,
                     double alpha, double r);

} // namespace wecans
