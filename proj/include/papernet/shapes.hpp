// Copyright 2026 The Papernet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "papernet/mesh.hpp"

namespace papernet {

/// Closed, outward-oriented primitives.

/// Regular tetrahedron with edge length 2*sqrt(2).
TriMesh makeTetrahedron();
/// Axis-aligned box [0,sx] x [0,sy] x [0,sz], two triangles per side.
TriMesh makeBox(double sx = 1.0, double sy = 1.0, double sz = 1.0);
/// Regular icosahedron inscribed in the unit sphere.
TriMesh makeIcosahedron();
/// Loop-style midpoint subdivision of the icosahedron projected onto the
/// unit sphere: 20 * 4^levels faces.
TriMesh makeIcosphere(int levels);
/// Latitude/longitude sphere: 2 * segments * (rings - 1) faces.
TriMesh makeUvSphere(int rings, int segments);
/// Torus around the z axis: 2 * major * minor faces.
TriMesh makeTorus(double majorRadius, double minorRadius, int major, int minor);

/// Signed enclosed volume; positive for outward orientation.
double signedVolume(const TriMesh& mesh);

}  // namespace papernet
