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

#include "aquasplat/erp.hpp"

#include <cmath>

namespace aquasplat::erp {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
}  // namespace

SphericalDir pixel_to_dir(const PixelCoord& p) {
    SphericalDir s;
    s.phi = ((p.px + 0.5) / p.width - 0.5) * kTwoPi;
    s.theta = ((p.py + 0.5) / p.height - 0.5) * kPi;
    const double ct = std::cos(s.theta);
    s.dir = Vec3(std::sin(s.phi) * ct, std::sin(s.theta), -std::cos(s.phi) * ct);
    return s;
}

PixelCoord dir_to_pixel(const Vec3& d, int width, int height) {
    const double phi = std::atan2(d.x(), -d.z());
    const double y = d.y() < -1.0 ? -1.0 : (d.y() > 1.0 ? 1.0 : d.y());
    const double theta = std::asin(y);

    PixelCoord p;
    p.width = width;
    p.height = height;
    p.px = (phi / kTwoPi + 0.5) * width - 0.5;
    p.py = (theta / kPi + 0.5) * height - 0.5;
    // wrap longitude into [0, W)
    if (p.px < 0.0) p.px += width;
    if (p.px >= width) p.px -= width;
    return p;
}

RayPlanes ray_planes(const SphericalDir& s) {
    RayPlanes r;
    r.nx = Vec3(std::cos(s.phi), 0.0, std::sin(s.phi));
    Vec3 c = s.dir.cross(r.nx);
    r.ny = c / c.norm();
    r.pix = Vec4(r.nx.x(), r.nx.y(), r.nx.z(), 0.0);
    r.piy = Vec4(r.ny.x(), r.ny.y(), r.ny.z(), 0.0);
    return r;
}

RayPlanes ray_planes(const PixelCoord& p) { return ray_planes(pixel_to_dir(p)); }

}  // namespace aquasplat::erp
