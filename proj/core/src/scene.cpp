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

#include "aquasplat/scene.hpp"

#include <algorithm>
#include <cmath>

namespace aquasplat {

Gaussian3D GaussianScene::get(size_t i) const {
    Gaussian3D g;
    g.mu = Vec3(mu[3 * i], mu[3 * i + 1], mu[3 * i + 2]);
    g.quat = Vec4(quat[4 * i], quat[4 * i + 1], quat[4 * i + 2], quat[4 * i + 3]);
    g.log_scale = Vec3(log_scale[3 * i], log_scale[3 * i + 1], log_scale[3 * i + 2]);
    g.raw_opacity = raw_opacity[i];
    const int st = sh_stride();
    g.sh.assign(sh.begin() + i * st, sh.begin() + (i + 1) * st);
    return g;
}

void GaussianScene::set(size_t i, const Gaussian3D& g) {
    for (int k = 0; k < 3; ++k) mu[3 * i + k] = g.mu[k];
    for (int k = 0; k < 4; ++k) quat[4 * i + k] = g.quat[k];
    for (int k = 0; k < 3; ++k) log_scale[3 * i + k] = g.log_scale[k];
    raw_opacity[i] = g.raw_opacity;
    const int st = sh_stride();
    std::copy(g.sh.begin(), g.sh.end(), sh.begin() + i * st);
}

void GaussianScene::resize(size_t n) {
    mu.resize(3 * n, 0.0);
    quat.resize(4 * n, 0.0);
    log_scale.resize(3 * n, 0.0);
    raw_opacity.resize(n, 0.0);
    sh.resize(n * sh_stride(), 0.0);
}

void GaussianScene::append(const Gaussian3D& g) {
    const size_t i = size();
    resize(i + 1);
    set(i, g);
}

Mat3 rotation_from_quat(const Vec4& q_raw) {
    const Vec4 q = q_raw / q_raw.norm();
    const double w = q[0], x = q[1], y = q[2], z = q[3];
    Mat3 r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
        2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
        2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

Vec4 rotation_from_quat_vjp(const Vec4& q_raw, const Mat3& dR) {
    const double n = q_raw.norm();
    const Vec4 q = q_raw / n;
    const double w = q[0], x = q[1], y = q[2], z = q[3];

    Vec4 dq;
    dq[0] = 2.0 * (-z * dR(0, 1) + y * dR(0, 2) + z * dR(1, 0) - x * dR(1, 2) -
                   y * dR(2, 0) + x * dR(2, 1));
    dq[1] = 2.0 * (y * dR(0, 1) + z * dR(0, 2) + y * dR(1, 0) - 2 * x * dR(1, 1) -
                   w * dR(1, 2) + z * dR(2, 0) + w * dR(2, 1) - 2 * x * dR(2, 2));
    dq[2] = 2.0 * (-2 * y * dR(0, 0) + x * dR(0, 1) + w * dR(0, 2) + x * dR(1, 0) +
                   z * dR(1, 2) - w * dR(2, 0) + z * dR(2, 1) - 2 * y * dR(2, 2));
    dq[3] = 2.0 * (-2 * z * dR(0, 0) - w * dR(0, 1) + x * dR(0, 2) + w * dR(1, 0) -
                   2 * z * dR(1, 1) + y * dR(1, 2) + x * dR(2, 0) + y * dR(2, 1));

    // through the normalization: project out the radial component
    return (dq - q * q.dot(dq)) / n;
}

Mat3 covariance(const Gaussian3D& g) {
    const Mat3 r = rotation_from_quat(g.quat);
    const Vec3 s = g.scale();
    const Mat3 rs = r * s.asDiagonal();
    return rs * rs.transpose();
}

Mat4 local_to_world(const Gaussian3D& g) {
    Mat4 t = Mat4::Identity();
    t.block<3, 3>(0, 0) = rotation_from_quat(g.quat) * g.scale().asDiagonal();
    t.block<3, 1>(0, 3) = g.mu;
    return t;
}

Vec3 sh_to_rgb(const std::vector<double>& coeffs, const Vec3& dir, int active_degree) {
    double basis[sh::kMaxCoeffs];
    sh::eval_basis(dir, active_degree, basis);
    const int n = sh::num_coeffs(active_degree);
    Vec3 rgb(0.5, 0.5, 0.5);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) rgb[c] += basis[i] * coeffs[3 * i + c];
    return rgb.cwiseMax(0.0);
}

namespace {

// mean distance to the 3 nearest neighbors, brute force
double mean_3nn_distance(const std::vector<PointSample>& pts, size_t i) {
    double best[3] = {1e300, 1e300, 1e300};
    for (size_t j = 0; j < pts.size(); ++j) {
        if (j == i) continue;
        const double d = (pts[j].position - pts[i].position).norm();
        if (d < best[2]) {
            best[2] = d;
            if (best[2] < best[1]) std::swap(best[1], best[2]);
            if (best[1] < best[0]) std::swap(best[0], best[1]);
        }
    }
    int k = 0;
    double sum = 0.0;
    for (double b : best)
        if (b < 1e300) {
            sum += b;
            ++k;
        }
    return k > 0 ? sum / k : 0.0;
}

}  // namespace

GaussianScene init_scene(const std::vector<PointSample>& points, const InitConfig& cfg) {
    std::vector<PointSample> pts = points;
    if (pts.empty()) {
        if (cfg.fallback_points <= 0)
            throw EmptyInput("init_scene: no points and no fallback configured");
        Rng rng(cfg.seed);
        pts.reserve(cfg.fallback_points);
        for (int i = 0; i < cfg.fallback_points; ++i) {
            Vec3 d(rng.normal(), rng.normal(), rng.normal());
            const double n = d.norm();
            d = n > 1e-12 ? Vec3(d / n) : Vec3(1, 0, 0);
            const double r = cfg.bounding_radius * std::cbrt(rng.uniform());
            PointSample p;
            p.position = r * d;
            p.color = Vec3(rng.uniform(), rng.uniform(), rng.uniform());
            pts.push_back(p);
        }
    }

    GaussianScene scene;
    scene.sh_degree = cfg.sh_degree;
    scene.resize(pts.size());

    const double raw_op = logit(cfg.opacity_init);
    const int st = scene.sh_stride();
    for (size_t i = 0; i < pts.size(); ++i) {
        for (int k = 0; k < 3; ++k) scene.mu[3 * i + k] = pts[i].position[k];
        scene.quat[4 * i] = 1.0;
        double nn = mean_3nn_distance(pts, i);
        if (nn <= 0.0) nn = 0.1 * std::max(cfg.bounding_radius, 1.0);
        const double ls = std::log(nn);
        for (int k = 0; k < 3; ++k) scene.log_scale[3 * i + k] = ls;
        scene.raw_opacity[i] = raw_op;
        for (int c = 0; c < 3; ++c)
            scene.sh[i * st + c] = (pts[i].color[c] - 0.5) / sh::kC0;
    }
    return scene;
}

}  // namespace aquasplat
