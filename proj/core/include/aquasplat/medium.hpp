/*
 * Copyright (C) 2026 The aquasplat authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "aquasplat/rng.hpp"
#include "aquasplat/types.hpp"

#include <vector>

namespace aquasplat {

/// Learnable underwater medium heads.
///
/// Backscatter: per channel c,
///   beta_b[c](p) = softplus(wb[c] D(p) + bb[c])    (likewise beta_r)
///   B(p) = Binf .* (1 - exp(-beta_b)) + Bres .* exp(-beta_r)
/// with Binf = logistic(raw_Binf), Bres = logistic(raw_Bres), so
/// B in [0, Binf + Bres] by construction. A 1x1 convolution on the
/// single-channel depth map is exactly this per-pixel affine map.
///
/// Attenuation: P candidates a_k(p) = logistic(wa_k . (D(p) ++ e_view) + ba_k),
/// fused betaD(p) = sum_k lambda_k a_k(p), and
///   A(p) = logistic(exp(-betaD(p) * D(p)))
/// broadcast to 3 channels. Note logistic(exp(.)) is implemented exactly as
/// stated, which confines A to (0.5, 1) for negative fused exponents and
/// (0.5, 0.731] for nonnegative ones.
struct MediumParams {
    Vec3 wb = Vec3::Zero(), bb = Vec3::Zero();
    Vec3 wr = Vec3::Zero(), br = Vec3::Zero();
    Vec3 raw_Binf = Vec3::Zero(), raw_Bres = Vec3::Zero();

    int candidates = 4;  // P
    int embed_dim = 32;  // E
    std::vector<double> wa;      // P * (1 + E)
    std::vector<double> ba;      // P
    std::vector<double> lambda;  // P

    void init(int p, int e, uint64_t seed);
    Vec3 Binf() const {
        return Vec3(logistic(raw_Binf[0]), logistic(raw_Binf[1]), logistic(raw_Binf[2]));
    }
    Vec3 Bres() const {
        return Vec3(logistic(raw_Bres[0]), logistic(raw_Bres[1]), logistic(raw_Bres[2]));
    }
};

struct MediumMaps {
    Image A;  // HxWx3, each channel the same fused attenuation
    Image B;  // HxWx3
};

/// B map from a depth map. D must be finite and nonnegative.
Image backscatter(const Image& depth, const MediumParams& params);

/// Fused attenuation map (broadcast to 3 channels) from depth + view embedding.
Image attenuation(const Image& depth, const std::vector<double>& e_view,
                  const MediumParams& params);

/// I = J .* A + B, element-wise, no clamping (export clamps instead).
Image compose_uifm(const Image& J, const Image& A, const Image& B);

/// Textbook ground-truth degradation for the synthetic benchmark:
/// A = exp(-betaD*D), B = Binf*(1-exp(-betaB*D)), I = J.*A + B.
/// Distinct from the learned heads above.
Image simulate_uifm_gt(const Image& J_gt, const Image& D_gt, const Vec3& beta_D,
                       const Vec3& beta_B, const Vec3& B_inf);

struct MediumGrads {
    Vec3 wb = Vec3::Zero(), bb = Vec3::Zero();
    Vec3 wr = Vec3::Zero(), br = Vec3::Zero();
    Vec3 raw_Binf = Vec3::Zero(), raw_Bres = Vec3::Zero();
    std::vector<double> wa, ba, lambda;
    void init_like(const MediumParams& p);
};

/// Reverse pass through both heads. dA/dB are HxWx3 adjoints of the maps
/// returned by attenuation/backscatter. Accumulates into the parameter
/// grads, the depth adjoint d_depth (HxWx1) and d_e_view.
void medium_backward(const Image& depth, const std::vector<double>& e_view,
                     const MediumParams& params, const Image& dA, const Image& dB,
                     MediumGrads& grads, Image& d_depth, std::vector<double>& d_e_view);

}  // namespace aquasplat
