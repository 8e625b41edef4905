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

namespace aquasplat::sh {

constexpr int kMaxDegree = 3;
constexpr int kMaxCoeffs = 16;  // (3+1)^2

/// Y00 of the real basis; the DC carrier constant.
constexpr double kC0 = 0.28209479177387814;

constexpr int num_coeffs(int degree) { return (degree + 1) * (degree + 1); }

/// Real spherical harmonics basis up to `degree`, homogeneous polynomial
/// form, row order (0,0), (1,-1), (1,0), (1,1), (2,-2) ... (3,3).
/// `dir` must be unit length; `out` receives (degree+1)^2 values.
void eval_basis(const Vec3& dir, int degree, double* out);

/// Basis values plus their gradients w.r.t. the (unnormalized polynomial)
/// direction components.
void eval_basis_grad(const Vec3& dir, int degree, double* out, Vec3* grad);

}  // namespace aquasplat::sh
