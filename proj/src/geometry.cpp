#include "pmc/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace pmc {

Pincell::Pincell(float pitch, std::vector<float> radii,
                 std::vector<int> region_materials)
    : pitch_(pitch),
      half_(0.5f * pitch),
      radii_(std::move(radii)),
      region_materials_(std::move(region_materials)) {
  if (!(pitch_ > 0.0f)) {
    throw std::invalid_argument("pincell: pitch must be > 0");
  }
  float prev = 0.0f;
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > prev)) {
      throw std::invalid_argument(
          fmt::format("pincell: radii must be strictly increasing (index {})", i));
    }
    prev = radii_[i];
  }
  if (!radii_.empty() && !(radii_.back() < half_)) {
    throw std::invalid_argument("pincell: outermost radius must be < pitch/2");
  }
  if (region_materials_.size() != radii_.size() + 1) {
    throw std::invalid_argument(
        fmt::format("pincell: expected {} region materials, got {}",
                    radii_.size() + 1, region_materials_.size()));
  }
  for (int m : region_materials_) {
    if (m < 0) throw std::invalid_argument("pincell: negative material id");
  }
  radii_sq_.reserve(radii_.size());
  for (float r : radii_) radii_sq_.push_back(r * r);
}

bool Pincell::inside_box(Vec3 p) const {
  return std::fabs(p.x) <= half_ && std::fabs(p.y) <= half_;
}

int Pincell::locate(Vec3 p) const {
  if (!inside_box(p)) {
    throw std::domain_error(
        fmt::format("position ({:g}, {:g}) outside the cell box (pitch {:g})", p.x,
                    p.y, pitch_));
  }
  const float r_sq = p.x * p.x + p.y * p.y;
  for (std::size_t i = 0; i < radii_sq_.size(); ++i) {
    if (r_sq < radii_sq_[i]) return static_cast<int>(i);
  }
  return static_cast<int>(radii_sq_.size());
}

BoundaryHit Pincell::distance_to_boundary(Vec3 p, Vec3 dir) const {
  BoundaryHit hit;

  // Cylinders first so that distance ties resolve toward them; ascending
  // index so inner surfaces win ties between cylinders.
  const float a = dir.x * dir.x + dir.y * dir.y;
  if (a > 0.0f) {
    const float b = p.x * dir.x + p.y * dir.y;
    const float c0 = p.x * p.x + p.y * p.y;
    for (std::size_t i = 0; i < radii_sq_.size(); ++i) {
      const float c = c0 - radii_sq_[i];
      const float disc = b * b - a * c;
      if (disc <= 0.0f) continue;
      // Cancellation-free root pair: a ray sitting within an ulp of the
      // surface must still see its immediate crossing, or it would silently
      // skip a region.
      const float sq = std::sqrt(disc);
      float t_near, t_far;
      if (b >= 0.0f) {
        t_near = (-b - sq) / a;
        t_far = -c / (b + sq);
      } else {
        t_near = c / (sq - b);
        t_far = (sq - b) / a;
      }
      const float t = t_near > 0.0f ? t_near : t_far;
      if (t > 0.0f && t < hit.distance) {
        hit.distance = t;
        hit.surface = {Surface::cylinder, static_cast<int>(i)};
      }
    }
  }

  auto try_face = [&hit](float t, Surface::Kind kind) {
    if (t > 0.0f && t < hit.distance) {
      hit.distance = t;
      hit.surface = {kind, -1};
    }
  };
  if (dir.x > 0.0f) try_face((half_ - p.x) / dir.x, Surface::face_px);
  if (dir.x < 0.0f) try_face((-half_ - p.x) / dir.x, Surface::face_mx);
  if (dir.y > 0.0f) try_face((half_ - p.y) / dir.y, Surface::face_py);
  if (dir.y < 0.0f) try_face((-half_ - p.y) / dir.y, Surface::face_my);

  return hit;
}

Vec3 Pincell::settle_after_crossing(Vec3 p, int cylinder, bool outward) const {
  const float target = radii_sq_[static_cast<std::size_t>(cylinder)];
  const float grow = 1.0f + 0x1p-21f;
  const float shrink = 1.0f - 0x1p-21f;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const float r_sq = p.x * p.x + p.y * p.y;
    if (outward ? r_sq > target : r_sq < target) break;
    const float scale = outward ? grow : shrink;
    p.x *= scale;
    p.y *= scale;
  }
  return p;
}

Vec3 Pincell::reflect(Vec3 dir, Surface face) {
  switch (face.kind) {
    case Surface::face_px:
    case Surface::face_mx:
      return {-dir.x, dir.y, dir.z};
    case Surface::face_py:
    case Surface::face_my:
      return {dir.x, -dir.y, dir.z};
    default:
      throw std::invalid_argument("reflect: surface is not a box face");
  }
}

}  // namespace pmc
