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
#include "aquasplat/scene.hpp"
#include "aquasplat/types.hpp"

#include <vector>

namespace aquasplat {

/// Two dense layers with ReLU in between: y = W2 relu(W1 x + b1) + b2.
/// Weight rows are per output unit. A default-constructed Mlp2 of matching
/// dims doubles as the gradient accumulator.
struct Mlp2 {
    int in = 0, hidden = 0, out = 0;
    std::vector<double> w1, b1;  // hidden*in, hidden
    std::vector<double> w2, b2;  // out*hidden, out

    void resize(int in_dim, int hidden_dim, int out_dim);
    void zero();
    /// Xavier-uniform hidden and output layers.
    void randomize(Rng& rng);
    void zero_final_layer();

    void forward(const double* x, double* y, double* hidden_buf) const;
    /// Recomputes the hidden pre-activations from x, accumulates weight
    /// gradients into `grad` and, when dx != nullptr, input gradients.
    void backward(const double* x, const double* dy, Mlp2& grad, double* dx,
                  double* hidden_buf) const;

    size_t param_count() const { return w1.size() + b1.size() + w2.size() + b2.size(); }
};

/// Pose-conditioned intrinsic appearance: a view embedding MLP plus a
/// per-Gaussian affine DC-color correction MLP.
struct AppearanceNet {
    int embed_dim = 32;     // E
    int fourier_bands = 4;  // L
    double pos_norm_radius = 1.0;
    Mlp2 pose_mlp;     // 7 -> 128 -> E
    Mlp2 correct_mlp;  // 3 + E + 6L -> 128 -> 6 (raw_eta, raw_beta)

    void init(int e, int l, uint64_t seed);
    int correct_in() const { return 3 + embed_dim + 6 * fourier_bands; }
};

/// Quaternion sign canonicalization (q and -q encode the same rotation).
Vec4 canonical_quat(const Vec4& q);

/// Pose -> latent view vector via pose_mlp(center + canonical quaternion).
std::vector<double> encode_pose(const CameraPose& pose, const AppearanceNet& net);

/// gamma(mu) = [sin(2^k pi mu_a), cos(2^k pi mu_a)], k = 0..L-1, a in xyz;
/// layout per band: [sin_x, sin_y, sin_z, cos_x, cos_y, cos_z].
std::vector<double> fourier_features(const Vec3& mu, int bands);

struct ColorCorrection {
    Vec3 corrected;  // eta .* c0 + beta
    Vec3 raw_eta;
    Vec3 raw_beta;
};

/// Affine correction of the diffuse (DC) color, Gaussian-local:
/// (raw_eta, raw_beta) = correct_mlp(c0 ++ e_view ++ gamma), eta = 1 + raw_eta.
ColorCorrection correct_color(const Vec3& c0, const std::vector<double>& e_view,
                              const std::vector<double>& gamma, const AppearanceNet& net);

/// Per-view cache: embedding plus corrected DC colors for selected Gaussians.
struct AppearanceContext {
    bool enabled = false;
    std::vector<double> e_view;
    std::vector<double> pose_input;      // 7, kept for the pose_mlp backward
    std::vector<double> chat0;           // 3N
    std::vector<double> raw_eta;         // 3N
};

/// Computes chat0 for every index in `active` (others untouched).
/// With !net or a zero final layer this is the identity on the DC color.
AppearanceContext appearance_forward(const GaussianScene& scene, const CameraPose& pose,
                                     const AppearanceNet& net,
                                     const std::vector<uint32_t>& active, int threads);

struct AppearanceGrads {
    Mlp2 pose_mlp;
    Mlp2 correct_mlp;
    void init_like(const AppearanceNet& net);
};

/// Backward through the correction and the pose embedding.
/// d_chat0 is 3N (zeros for inactive Gaussians); accumulates into d_mu,
/// d_sh_dc (both 3N) and the weight grads. d_e_view_extra carries gradient
/// contributions to e_view from other consumers (the attenuation head).
void appearance_backward(const GaussianScene& scene, const AppearanceNet& net,
                         const AppearanceContext& ctx, const std::vector<uint32_t>& active,
                         const std::vector<double>& d_chat0,
                         const std::vector<double>& d_e_view_extra, AppearanceGrads& grads,
                         std::vector<double>& d_mu, std::vector<double>& d_sh_dc,
                         int threads);

}  // namespace aquasplat
