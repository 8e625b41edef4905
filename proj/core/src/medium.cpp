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

#include "aquasplat/medium.hpp"

#include <cmath>

namespace aquasplat {

void MediumParams::init(int p, int e, uint64_t seed) {
    candidates = p;
    embed_dim = e;
    wb = bb = wr = br = Vec3::Zero();
    raw_Binf = Vec3::Constant(logit(0.05));
    raw_Bres = Vec3::Constant(logit(0.05));
    // small random candidate weights break the permutation symmetry between
    // the P attenuation candidates; zeros would keep them identical forever
    Rng rng(seed);
    wa.resize(static_cast<size_t>(p) * (1 + e));
    for (auto& w : wa) w = rng.uniform(-0.1, 0.1);
    ba.assign(p, 0.0);
    lambda.assign(p, 1.0 / p);
}

Image backscatter(const Image& depth, const MediumParams& params) {
    Image B(depth.height(), depth.width(), 3);
    const Vec3 binf = params.Binf(), bres = params.Bres();
    const size_t n = static_cast<size_t>(depth.height()) * depth.width();
    const double* dp = depth.data();
    double* bp = B.data();
    for (size_t i = 0; i < n; ++i) {
        const double d = dp[i];
        for (int c = 0; c < 3; ++c) {
            // 1 - exp(-softplus(u)) == logistic(u); exp(-softplus(u)) == logistic(-u)
            const double sat = logistic(params.wb[c] * d + params.bb[c]);
            const double res = logistic(-(params.wr[c] * d + params.br[c]));
            bp[3 * i + c] = binf[c] * sat + bres[c] * res;
        }
    }
    return B;
}

Image attenuation(const Image& depth, const std::vector<double>& e_view,
                  const MediumParams& params) {
    const int P = params.candidates;
    const int E = params.embed_dim;
    // per-view constants q_k = wa_k[1:] . e_view + ba_k
    std::vector<double> q(P);
    for (int k = 0; k < P; ++k) {
        double s = params.ba[k];
        const double* w = &params.wa[static_cast<size_t>(k) * (1 + E)];
        for (int j = 0; j < E; ++j) s += w[1 + j] * e_view[j];
        q[k] = s;
    }

    Image A(depth.height(), depth.width(), 3);
    const size_t n = static_cast<size_t>(depth.height()) * depth.width();
    const double* dp = depth.data();
    double* ap = A.data();
    for (size_t i = 0; i < n; ++i) {
        const double d = dp[i];
        double beta_d = 0.0;
        for (int k = 0; k < P; ++k) {
            const double w0 = params.wa[static_cast<size_t>(k) * (1 + E)];
            beta_d += params.lambda[k] * logistic(w0 * d + q[k]);
        }
        const double a = logistic(std::exp(-beta_d * d));
        ap[3 * i] = a;
        ap[3 * i + 1] = a;
        ap[3 * i + 2] = a;
    }
    return A;
}

Image compose_uifm(const Image& J, const Image& A, const Image& B) {
    if (!J.same_shape(A) || !J.same_shape(B))
        throw ShapeMismatch("compose_uifm: J/A/B shapes differ

");
    Image I(J.height(), J.width(), J.channels());
    const size_t n = J.size();
    for (size_t i = 0; i < n; ++i) I.raw()[i] = J.raw()[i] * A.raw()[i] + B.raw()[i];
    return I;
}

Image simulate_uifm_gt(const Image& J_gt, const Image& D_gt, const Vec3& beta_D,
                       const Vec3& beta_B, const Vec3& B_inf) {
    if (J_gt.height() != D_gt.height() || J_gt.width() != D_gt.width())
        throw ShapeMismatch("simulate_uifm_gt: J/D shapes differ");
    Image I(J_gt.height(), J_gt.width(), 3);
    const size_t n = static_cast<size_t>(J_gt.height()) * J_gt.width();
    for (size_t i = 0; i < n; ++i) {
        const double d = D_gt.raw()[i];
        for (int c = 0; c < 3; ++c) {
            const double a = std::exp(-beta_D[c] * d);
            const double b = B_inf[c] * (1.0 - std::exp(-beta_B[c] * d));
            I.raw()[3 * i + c] = J_gt.raw()[3 * i + c] * a + b;
        }
    }
    return I;
}

void MediumGrads::init_like(const MediumParams& p) {
    wa.assign(p.wa.size(), 0.0);
    ba.assign(p.ba.size(), 0.0);
    lambda.assign(p.lambda.size(), 0.0);
}

void medium_backward(const Image& depth, const std::vector<double>& e_view,
                     const MediumParams& params, const Image& dA, const Image& dB,
                     MediumGrads& grads, Image& d_depth, std::vector<double>& d_e_view) {
    const int P = params.candidates;
    const int E = params.embed_dim;
    const Vec3 binf = params.Binf(), bres = params.Bres();

    std::vector<double> q(P);
    for (int k = 0; k < P; ++k) {
        double s = params.ba[k];
        const double* w = &params.wa[static_cast<size_t>(k) * (1 + E)];
        for (int j = 0; j < E; ++j) s += w[1 + j] * e_view[j];
        q[k] = s;
    }

    // per-candidate sums over pixels: S_k = sum du_k, T_k = sum du_k * D
    std::vector<double> S(P, 0.0), T(P, 0.0), a_buf(P);
    const size_t n = static_cast<size_t>(depth.height()) * depth.width();
    const double* dp = depth.data();

    for (size_t i = 0; i < n; ++i) {
        const double d = dp[i];
        double dd = 0.0;  // adjoint of D at this pixel

        // backscatter head
        for (int c = 0; c < 3; ++c) {
            const double g = dB.raw()[3 * i + c];
            if (g == 0.0) continue;
            const double ub = params.wb[c] * d + params.bb[c];
            const double ur = params.wr[c] * d + params.br[c];
            const double sat = logistic(ub);         // 1 - exp(-softplus)
            const double res = logistic(-ur);        // exp(-softplus)
            grads.raw_Binf[c] += g * sat * binf[c] * (1.0 - binf[c]);
            grads.raw_Bres[c] += g * res * bres[c] * (1.0 - bres[c]);
            const double dub = g * binf[c] * sat * (1.0 - sat);
            const double dur = -g * bres[c] * res * (1.0 - res);
            grads.wb[c] += dub * d;
            grads.bb[c] += dub;
            grads.wr[c] += dur * d;
            grads.br[c] += dur;
            dd += dub * params.wb[c] + dur * params.wr[c];
        }

        // attenuation head (scalar map broadcast to 3 channels)
        const double ga = dA.raw()[3 * i] + dA.raw()[3 * i + 1] + dA.raw()[3 * i + 2];
        if (ga != 0.0) {
            double beta_d = 0.0;
            for (int k = 0; k < P; ++k) {
                const double w0 = params.wa[static_cast<size_t>(k) * (1 + E)];
                a_buf[k] = logistic(w0 * d + q[k]);
                beta_d += params.lambda[k] * a_buf[k];
            }
            const double ex = std::exp(-beta_d * d);
            const double a = logistic(ex);
            const double de = ga * a * (1.0 - a);         // d/d exp term
            const double dbeta = -de * d * ex;
            dd += -de * beta_d * ex;
            for (int k = 0; k < P; ++k) {
                grads.lambda[k] += dbeta * a_buf[k];
                const double du = dbeta * params.lambda[k] * a_buf[k] * (1.0 - a_buf[k]);
                S[k] += du;
                T[k] += du * d;
                dd += du * params.wa[static_cast<size_t>(k) * (1 + E)];
            }
        }

        d_depth.raw()[i] += dd;
    }

    for (int k = 0; k < P; ++k) {
        grads.wa[static_cast<size_t>(k) * (1 + E)] += T[k];
        grads.ba[k] += S[k];
        for (int j = 0; j < E; ++j) {
            grads.wa[static_cast<size_t>(k) * (1 + E) + 1 + j] += S[k] * e_view[j];
            d_e_view[j] += S[k] * params.wa[static_cast<size_t>(k) * (1 + E) + 1 + j];
        }
    }
}

}  // namespace aquasplat
