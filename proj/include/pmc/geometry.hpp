#pragma once

#include <limits>
#include <vector>

#include "pmc/vec3.hpp"

namespace pmc {

// Surface identifiers for boundary crossings. Cylinder indices are
// non-negative; box faces are the four reflective sides of the cell.
struct Surface {
  enum Kind { cylinder, face_px, face_mx, face_py, face_my, none };
  Kind kind = none;
  int index = -1;  // cylinder index when kind == cylinder

  bool is_face() const {
    return kind == face_px || kind == face_mx || kind == face_py || kind == face_my;
  }
};

struct BoundaryHit {
  float distance = std::numeric_limits<float>::infinity();
  Surface surface;
};

// Pincell: nested infinite cylinders centered in a reflective square cell,
// infinite in z. Region i lies between cylinder i-1 and cylinder i
// (half-open [r_i, r_{i+1}) so locate is deterministic on surfaces).
class Pincell {
 public:
  // Positions this close to a crossed surface are nudged along the flight
  // direction before relocation; keeps single-precision rays from
  // re-intersecting the surface they just crossed.
  static constexpr float kSurfaceNudge = 1.0e-6f;

  Pincell(float pitch, std::vector<float> radii, std::vector<int> region_materials);

  float pitch() const { return pitch_; }
  float half_pitch() const { return half_; }
  const std::vector<float>& radii() const { return radii_; }
  int n_regions() const { return static_cast<int>(region_materials_.size()); }
  int region_material(int region) const { return region_materials_[region]; }

  // Region index from radial distance; z is ignored. Throws outside the box.
  int locate(Vec3 p) const;

  // Minimum positive distance to any cylinder or box face along a unit
  // direction. Ties prefer cylinders, and inner cylinders over outer ones.
  // A purely axial ray in the outermost region returns an infinite hit.
  BoundaryHit distance_to_boundary(Vec3 p, Vec3 dir) const;

  // Specular reflection off a box face; norm preserved exactly.
  static Vec3 reflect(Vec3 dir, Surface face);

  // Puts a just-crossed position firmly on the entered side of the given
  // cylinder. A near-tangent crossing can leave the radius bitwise on the
  // surface even after the nudge, and locate's half-open convention would
  // then disagree with the direction of travel.
  Vec3 settle_after_crossing(Vec3 p, int cylinder, bool outward) const;

  bool inside_box(Vec3 p) const;

 private:
  float pitch_;
  float half_;
  std::vector<float> radii_;
  std::vector<float> radii_sq_;
  std::vector<int> region_materials_;
};

}  // namespace pmc
