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

#include "aquasplat/appearance.hpp"

#include "aquasplat/parallel.hpp"

#include <cmath>
#include <cstring>

namespace aquasplat {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Mlp2::resize(int in_dim, int hidden_dim, int out_dim) {
    in = in_dim;
    hidden = hidden_dim;
    out = out_dim;
    w1.assign(static_cast<size_t>(hidden) * in, 0.0);
    b1.assign(hidden, 0.0);
    w2.assign(static_cast<size_t>(out) * hidden, 0.0);
    b2.assign(out, 0.0);
}

void Mlp2::zero() {
    std::fill(w1.begin(), w1.end(), 0.0);
    std::fill(b1.begin(), b1.end(), 0.0);
    std::fill(w2.begin(), w2.end(), 0.0);
    std::fill(b2.begin(), b2.end(), 0.0);
}

void Mlp2::randomize(Rng& rng) {
    const double a1 = std::sqrt(6.0 / (in + hidden));
    for (auto& w : w1) w = rng.uniform(-a1, a1);
    const double a2 = std::sqrt(6.0 / (hidden + out));
    for (auto& w : w2) w = rng.uniform(-a2, a2);
    std::fill(b1.begin(), b1.end(), 0.0);
    std::fill(b2.begin(), b2.end(), 0.0);
}

void Mlp2::zero_final_layer() {
    std::fill(w2.begin(), w2.end(), 0.0);
    std::fill(b2.begin(), b2.end(), 0.0);
}

void Mlp2::forward(const double* x, double* y, double* h) const {
    for (int j = 0; j < hidden; ++j) {
        const double* wr = &w1[static_cast<size_t>(j) * in];
        double z = b1[j];
        for (int i = 0; i < in; ++i) z += wr[i] * x[i];
        h[j] = z > 0.0 ? z : 0.0;
    }
    for (int k = 0; k < out; ++k) {
        const double* wr = &w2[static_cast<size_t>(k) * hidden];
        double z = b2[k];
        for (int j = 0; j < hidden; ++j) z += wr[j] * h[j];
        y[k] = z;
    }
}

void Mlp2::backward(const double* x, const double* dy, Mlp2& grad, double* dx,
                    double* h) const {
    // recompute hidden activations
    for (int j = 0; j < hidden; ++j) {
        const double* wr = &w1[static_cast<size_t>(j) * in];
        double z = b1[j];
        for (int i = 0; i < in; ++i) z += wr[i] * x[i];
        h[j] = z;
    }
    // dz1 via W2^T dy, masked by relu gate
    for (int j = 0; j < hidden; ++j) {
        double dh = 0.0;
        for (int k = 0; k < out; ++k) dh += w2[static_cast<size_t>(k) * hidden + j] * dy[k];
        const double relu = h[j] > 0.0 ? h[j] : 0.0;
        const double dz = h[j] > 0.0 ? dh : 0.0;
        // layer-2 grads need relu(h); stash relu value back into h
        h[j] = relu;
        // layer-1 grads
        if (dz != 0.0) {
            double* gw = &grad.w1[static_cast<size_t>(j) * in];
            for (int i = 0; i < in; ++i) gw[i] += dz * x[i];
            grad.b1[j] += dz;
            if (dx)
                for (int i = 0; i < in; ++i)
                    dx[i] += w1[static_cast<size_t>(j) * in + i] * dz;
        }
    }
    for (int k = 0; k < out; ++k) {
        const double d = dy[k];
        if (d == 0.0) continue;
        double* gw = &grad.w2[static_cast<size_t>(k) * hidden];
        for (int j = 0; j < hidden; ++j) gw[j] += d * h[j];
        grad.b2[k] += d;
    }
}

void AppearanceNet::init(int e, int l, uint64_t seed) {
    embed_dim = e;
    fourier_bands = l;
    Rng rng(seed);
    pose_mlp.resize(7, 128, e);
    pose_mlp.randomize(rng);
    correct_mlp.resize(correct_in(), 128, 6);
    correct_mlp.randomize(rng);
    correct_mlp.zero_final_layer();  // identity correction at start
}

Vec4 canonical_quat(const Vec4& q) {
    for (int i = 0; i < 4; ++i) {
        if (q[i] > 0.0) return q;
        if (q[i] < 0.0) return -q;
    }
    return q;
}

namespace {

std::vector<double> pose_encoding(const CameraPose& pose) {
    const Vec3 c = pose.camera_center();
    Eigen::Quaterniond eq(pose.rotation().transpose());  // cam-to-world rotation
    Vec4 q = canonical_quat(Vec4(eq.w(), eq.x(), eq.y(), eq.z()));
    q /= q.norm();
    return {c.x(), c.y(), c.z(), q[0], q[1], q[2], q[3]};
}

}  // namespace

std::vector<double> encode_pose(const CameraPose& pose, const AppearanceNet& net) {
    const std::vector<double> x = pose_encoding(pose);
    std::vector<double> y(net.embed_dim), h(net.pose_mlp.hidden);
    net.pose_mlp.forward(x.data(), y.data(), h.data());
    return y;
}

std::vector<double> fourier_features(const Vec3& mu, int bands) {
    std::vector<double> out(6 * bands);
    double freq = kPi;
    for (int k = 0; k < bands; ++k) {
        for (int a = 0; a < 3; ++a) {
            out[6 * k + a] = std::sin(freq * mu[a]);
            out[6 * k + 3 + a] = std::cos(freq * mu[a]);
        }
        freq *= 2.0;
    }
    return out;
}

ColorCorrection correct_color(const Vec3& c0, const std::vector<double>& e_view,
                              const std::vector<double>& gamma, const AppearanceNet& net) {
    std::vector<double> x;
    x.reserve(net.correct_in());
    x.insert(x.end(), {c0.x(), c0.y(), c0.z()});
    x.insert(x.end(), e_view.begin(), e_view.end());
    x.insert(x.end(), gamma.begin(), gamma.end());

    double y[6];
    std::vector<double> h(net.correct_mlp.hidden);
    net.correct_mlp.forward(x.data(), y, h.data());

    ColorCorrection cc;
    cc.raw_eta = Vec3(y[0], y[1], y[2]);
    cc.raw_beta = Vec3(y[3], y[4], y[5]);
    cc.corrected = (Vec3::Ones() + cc.raw_eta).cwiseProduct(c0) + cc.raw_beta;
    return cc;
}

AppearanceContext appearance_forward(const GaussianScene& scene, const CameraPose& pose,
                                     const AppearanceNet& net,
                                     const std::vector<uint32_t>& active, int threads) {
    const size_t n = scene.size();
    const int st = scene.sh_stride();
    AppearanceContext ctx;
    ctx.enabled = true;
    ctx.pose_input = pose_encoding(pose);
    ctx.e_view.resize(net.embed_dim);
    std::vector<double> h(net.pose_mlp.hidden);
    net.pose_mlp.forward(ctx.pose_input.data(), ctx.e_view.data(), h.data());

    ctx.chat0.assign(3 * n, 0.0);
    ctx.raw_eta.assign(3 * n, 0.0);

    const double inv_r = 1.0 / net.pos_norm_radius;
    parallel_for_blocked(active.size(), threads, [&](size_t b, size_t e, int) {
        std::vector<double> x(net.correct_in()), hid(net.correct_mlp.hidden);
        for (size_t a = b; a < e; ++a) {
            const uint32_t i = active[a];
            const Vec3 mu(scene.mu[3 * i] * inv_r, scene.mu[3 * i + 1] * inv_r,
                          scene.mu[3 * i + 2] * inv_r);
            const Vec3 c0(scene.sh[i * st], scene.sh[i * st + 1], scene.sh[i * st + 2]);
            x[0] = c0.x();
            x[1] = c0.y();
            x[2] = c0.z();
            std::memcpy(&x[3], ctx.e_view.data(), sizeof(double) * net.embed_dim);
            double freq = kPi;
            double* gp = &x[3 + net.embed_dim];
            for (int k = 0; k < net.fourier_bands; ++k) {
                for (int ax = 0; ax < 3; ++ax) {
                    gp[6 * k + ax] = std::sin(freq * mu[ax]);
                    gp[6 * k + 3 + ax] = std::cos(freq * mu[ax]);
                }
                freq *= 2.0;
            }
            double y[6];
            net.correct_mlp.forward(x.data(), y, hid.data());
            for (int c = 0; c < 3; ++c) {
                ctx.raw_eta[3 * i + c] = y[c];
                ctx.chat0[3 * i + c] = (1.0 + y[c]) * c0[c] + y[3 + c];
            }
        }
    });
    return ctx;
}

void AppearanceGrads::init_like(const AppearanceNet& net) {
    pose_mlp.resize(net.pose_mlp.in, net.pose_mlp.hidden, net.pose_mlp.out);
    correct_mlp.resize(net.correct_mlp.in, net.correct_mlp.hidden, net.correct_mlp.out);
}

void appearance_backward(const GaussianScene& scene, const AppearanceNet& net,
                         const AppearanceContext& ctx, const std::vector<uint32_t>& active,
                         const std::vector<double>& d_chat0,
                         const std::vector<double>& d_e_view_extra, AppearanceGrads& grads,
                         std::vector<double>& d_mu, std::vector<double>& d_sh_dc,
                         int threads) {
    const int st = scene.sh_stride();
    const int e_dim = net.embed_dim;
    const double inv_r = 1.0 / net.pos_norm_radius;

    const int nthreads = std::max(1, threads);
    std::vector<Mlp2> tl_grads(nthreads);
    std::vector<std::vector<double>> tl_deview(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        tl_grads[t].resize(net.correct_mlp.in, net.correct_mlp.hidden, net.correct_mlp.out);
        tl_deview[t].assign(e_dim, 0.0);
    }

    parallel_for_blocked(active.size(), nthreads, [&](size_t b, size_t e, int tid) {
        std::vector<double> x(net.correct_in()), dx(net.correct_in());
        std::vector<double> hid(net.correct_mlp.hidden);
        for (size_t a = b; a < e; ++a) {
            const uint32_t i = active[a];
            const Vec3 dc(d_chat0[3 * i], d_chat0[3 * i + 1], d_chat0[3 * i + 2]);
            if (dc.isZero(0.0)) continue;
            const Vec3 mu(scene.mu[3 * i] * inv_r, scene.mu[3 * i + 1] * inv_r,
                          scene.mu[3 * i + 2] * inv_r);
            const Vec3 c0(scene.sh[i * st], scene.sh[i * st + 1], scene.sh[i * st + 2]);
            // rebuild MLP input
            x[0] = c0.x();
            x[1] = c0.y();
            x[2] = c0.z();
            std::memcpy(&x[3], ctx.e_view.data(), sizeof(double) * e_dim);
            double freq = kPi;
            double* gp = &x[3 + e_dim];
            for (int k = 0; k < net.fourier_bands; ++k) {
                for (int ax = 0; ax < 3; ++ax) {
                    gp[6 * k + ax] = std::sin(freq * mu[ax]);
                    gp[6 * k + 3 + ax] = std::cos(freq * mu[ax]);
                }
                freq *= 2.0;
            }
            // chat0 = (1 + raw_eta) .* c0 + raw_beta
            double dy[6];
            for (int c = 0; c < 3; ++c) {
                dy[c] = dc[c] * c0[c];  // d raw_eta
                dy[3 + c] = dc[c];      // d raw_beta
            }
            std::fill(dx.begin(), dx.end(), 0.0);
            net.correct_mlp.backward(x.data(), dy, tl_grads[tid], dx.data(), hid.data());
            // direct path into the DC color plus the MLP input path
            for (int c = 0; c < 3; ++c)
                d_sh_dc[3 * i + c] += dc[c] * (1.0 + ctx.raw_eta[3 * i + c]) + dx[c];
            for (int j = 0; j < e_dim; ++j) tl_deview[tid][j] += dx[3 + j];
            // fourier chain: d gamma -> d mu
            const double* dgp = &dx[3 + e_dim];
            Vec3 dmu = Vec3::Zero();
            freq = kPi;
            for (int k = 0; k < net.fourier_bands; ++k) {
                for (int ax = 0; ax < 3; ++ax) {
                    const double s = gp[6 * k + ax], c = gp[6 * k + 3 + ax];
                    dmu[ax] += freq * (dgp[6 * k + ax] * c - dgp[6 * k + 3 + ax] * s);
                }
                freq *= 2.0;
            }
            for (int ax = 0; ax < 3; ++ax) d_mu[3 * i + ax] += dmu[ax] * inv_r;
        }
    });

    // fixed-order reduction keeps results bit-stable for a fixed thread count
    std::vector<double> de_view(d_e_view_extra);
    de_view.resize(e_dim, 0.0);
    for (int t = 0; t < nthreads; ++t) {
        for (size_t k = 0; k < tl_grads[t].w1.size(); ++k)
            grads.correct_mlp.w1[k] += tl_grads[t].w1[k];
        for (size_t k = 0; k < tl_grads[t].b1.size(); ++k)
            grads.correct_mlp.b1[k] += tl_grads[t].b1[k];
        for (size_t k = 0; k < tl_grads[t].w2.size(); ++k)
            grads.correct_mlp.w2[k] += tl_grads[t].w2[k];
        for (size_t k = 0; k < tl_grads[t].b2.size(); ++k)
            grads.correct_mlp.b2[k] += tl_grads[t].b2[k];
        for (int j = 0; j < e_dim; ++j) de_view[j] += tl_deview[t][j];
    }

    std::vector<double> hid(net.pose_mlp.hidden);
    net.pose_mlp.backward(ctx.pose_input.data(), de_view.data(), grads.pose_mlp, nullptr,
                          hid.data());
}

}  // namespace aquasplat
