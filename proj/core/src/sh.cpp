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

#include "aquasplat/sh.hpp"

namespace aquasplat::sh {

namespace {
constexpr double kC1 = 0.4886025119029199;
constexpr double kC2[5] = {1.0925484305920792, 1.0925484305920792, 0.31539156525252005,
                           1.0925484305920792, 0.5462742152960396};
constexpr double kC3[7] = {0.5900435899266435, 2.890611442640554, 0.4570457994644658,
                           0.3731763325901154, 0.4570457994644658, 1.445305721320277,
                           0.5900435899266435};
}  // namespace

void eval_basis(const Vec3& dir, int degree, double* out) {
    const double x = dir.x(), y = dir.y(), z = dir.z();
    out[0] = kC0;
    if (degree < 1) return;
    out[1] = kC1 * y;
    out[2] = kC1 * z;
    out[3] = kC1 * x;
    if (degree < 2) return;
    const double xx = x * x, yy = y * y, zz = z * z;
    out[4] = kC2[0] * x * y;
    out[5] = kC2[1] * y * z;
    out[6] = kC2[2] * (2.0 * zz - xx - yy);
    out[7] = kC2[3] * x * z;
    out[8] = kC2[4] * (xx - yy);
    if (degree < 3) return;
    out[9] = kC3[0] * y * (3.0 * xx - yy);
    out[10] = kC3[1] * x * y * z;
    out[11] = kC3[2] * y * (4.0 * zz - xx - yy);
    out[12] = kC3[3] * z * (2.0 * zz - 3.0 * xx - 3.0 * yy);
    out[13] = kC3[4] * x * (4.0 * zz - xx - yy);
    out[14] = kC3[5] * z * (xx - yy);
    out[15] = kC3[6] * x * (xx - 3.0 * yy);
}

void eval_basis_grad(const Vec3& dir, int degree, double* out, Vec3* grad) {
    eval_basis(dir, degree, out);
    const double x = dir.x(), y = dir.y(), z = dir.z();
    grad[0] = Vec3::Zero();
    if (degree < 1) return;
    grad[1] = Vec3(0, kC1, 0);
    grad[2] = Vec3(0, 0, kC1);
    grad[3] = Vec3(kC1, 0, 0);
    if (degree < 2) return;
    const double xx = x * x, yy = y * y, zz = z * z;
    grad[4] = kC2[0] * Vec3(y, x, 0);
    grad[5] = kC2[1] * Vec3(0, z, y);
    grad[6] = kC2[2] * Vec3(-2.0 * x, -2.0 * y, 4.0 * z);
    grad[7] = kC2[3] * Vec3(z, 0, x);
    grad[8] = kC2[4] * Vec3(2.0 * x, -2.0 * y, 0);
    if (degree < 3) return;
    grad[9] = kC3[0] * Vec3(6.0 * x * y, 3.0 * xx - 3.0 * yy, 0);
    grad[10] = kC3[1] * Vec3(y * z, x * z, x * y);
    grad[11] = kC3[2] * Vec3(-2.0 * x * y, 4.0 * zz - xx - 3.0 * yy, 8.0 * y * z);
    grad[12] = kC3[3] * Vec3(-6.0 * x * z, -6.0 * y * z, 6.0 * zz - 3.0 * xx - 3.0 * yy);
    grad[13] = kC3[4] * Vec3(4.0 * zz - 3.0 * xx - yy, -2.0 * x * y, 8.0 * x * z);
    grad[14] = kC3[5] * Vec3(2.0 * x * z, -2.0 * y * z, xx - yy);
    grad[15] = kC3[6] * Vec3(3.0 * xx - 3.0 * yy, -6.0 * x * y, 0);
}

}  // namespace aquasplat::sh
