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

#include "aquasplat/types.hpp"

namespace aquasplat::erp {

/// Continuous pixel coordinate on a WxH equirectangular grid.
/// Integer (px, py) addresses the pixel center at (px+0.5, py+0.5)/W,H.
struct PixelCoord {
    double px = 0.0;
    double py = 0.0;
    int width = 0;
    int height = 0;
};

/// Viewing direction in camera coordinates together with its spherical
/// angles. Longitude phi in [-pi, pi], latitude theta in [-pi/2, pi/2].
///
/// Convention: dir = (sin(phi)cos(theta), sin(theta), -cos(phi)cos(theta)).
/// Increasing py increases theta, so the image bottom maps to +y in camera
/// space. phi = theta = 0 looks down -z.
struct SphericalDir {
    double phi = 0.0;
    double theta = 0.0;
    Vec3 dir = Vec3(0, 0, -1);
};

/// Two unit-normal planes through the camera origin whose intersection is
/// the viewing ray. Homogeneous forms have a zero offset component.
struct RayPlanes {
    Vec3 nx;
    Vec3 ny;
    Vec4 pix;  // (nx, 0)
    Vec4 piy;  // (ny, 0)
};

/// Pixel -> spherical direction. Total on valid grids.
SphericalDir pixel_to_dir(const PixelCoord& p);

/// Unit direction -> pixel coordinate; longitude wraps into [0, W).
/// At the poles (|d_y| -> 1) px follows the atan2(0,0) = 0 convention.
PixelCoord dir_to_pixel(const Vec3& d, int width, int height);

/// Ray-aligned plane pair for a pixel:
///   nx = (cos(phi), 0, sin(phi)),  ny = (d x nx) / |d x nx|.
/// |d x nx| = 1 analytically (d and nx are orthonormal); the division is a
/// numerical safeguard near the poles.
RayPlanes ray_planes(const PixelCoord& p);
RayPlanes ray_planes(const SphericalDir& s);

}  // namespace aquasplat::erp
