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
#include "aquasplat/sh.hpp"
#include "aquasplat/types.hpp"

#include <string>
#include <vector>

namespace aquasplat {

/// One anisotropic Gaussian primitive.
///
/// Scale is stored in log space and opacity in logit space so optimizer
/// steps stay unconstrained while Sigma stays SPD and o stays in (0,1).
struct Gaussian3D {
    Vec3 mu = Vec3::Zero();
    Vec4 quat = Vec4(1, 0, 0, 0);  // (w, x, y, z)
    Vec3 log_scale = Vec3::Zero();
    double raw_opacity = 0.0;
    std::vector<double> sh;  // num_coeffs * 3, [coeff][rgb]; sh[0..2] carries the DC color

    double opacity() const { return logistic(raw_opacity); }
    Vec3 scale() const { return log_scale.array().exp(); }
};

/// World-to-camera rigid transform plus ERP image dimensions.
struct CameraPose {
    Mat4 world_to_cam = Mat4::Identity();
    int width = 0;
    int height = 0;
    std::string image_id;

    Mat3 rotation() const { return world_to_cam.block<3, 3>(0, 0); }
    Vec3 translation() const { return world_to_cam.block<3, 1>(0, 3); }
    Vec3 camera_center() const { return -rotation().transpose() * translation(); }
};

/// Struct-of-arrays Gaussian scene; a value owned by the training loop.
/// Read-only snapshots may be shared across render workers.
struct GaussianScene {
    int sh_degree = 3;  // stored degree
    std::vector<double> mu;           // 3N
    std::vector<double> quat;         // 4N, (w,x,y,z)
    std::vector<double> log_scale;    // 3N
    std::vector<double> raw_opacity;  // N
    std::vector<double> sh;           // N * num_coeffs * 3

    size_t size() const { return raw_opacity.size(); }
    int coeffs() const { return sh::num_coeffs(sh_degree); }
    int sh_stride() const { return coeffs() * 3; }

    Gaussian3D get(size_t i) const;
    void set(size_t i, const Gaussian3D& g);
    void resize(size_t n);
    void append(const Gaussian3D& g);
};

/// Rotation matrix from a (not necessarily unit) quaternion; the quaternion
/// is normalized internally so gradients can flow through the normalization.
Mat3 rotation_from_quat(const Vec4& q);

/// Adjoint of rotation_from_quat: accumulates dL/dq_raw given dL/dR.
Vec4 rotation_from_quat_vjp(const Vec4& q_raw, const Mat3& dR);

/// Sigma = R S S^T R^T.
Mat3 covariance(const Gaussian3D& g);

/// [[R S, mu], [0, 1]].
Mat4 local_to_world(const Gaussian3D& g);

/// SH color with the reference convention: max(0.5 + basis . coeffs, 0).
/// `active_degree` must not exceed the stored degree.
Vec3 sh_to_rgb(const std::vector<double>& coeffs, const Vec3& dir, int active_degree);

struct InitConfig {
    int sh_degree = 3;
    double opacity_init = 0.1;
    // fallback when no point cloud is supplied
    int fallback_points = 0;
    double bounding_radius = 1.0;
    uint64_t seed = 0;
};

struct PointSample {
    Vec3 position;
    Vec3 color;
};

/// One Gaussian per point: DC set so degree-0 sh_to_rgb reproduces the point
/// color, isotropic log-scale from the mean 3-NN distance, opacity 0.1.
/// With no points and cfg.fallback_points > 0, samples uniform points in the
/// bounding sphere instead; otherwise throws EmptyInput.
GaussianScene init_scene(const std::vector<PointSample>& points, const InitConfig& cfg);

}  // namespace aquasplat
