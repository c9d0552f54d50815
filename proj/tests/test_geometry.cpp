#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "pmc/geometry.hpp"

using namespace pmc;

namespace {

Pincell vera_cell() {
  return Pincell(1.26f, {0.4096f, 0.418f, 0.475f}, {0, 1, 2, 3});
}

Vec3 normalized(float x, float y, float z) {
  const float n = std::sqrt(x * x + y * y + z * z);
  return {x / n, y / n, z / n};
}

}  // namespace

TEST_CASE("construction rejects bad cells") {
  CHECK_THROWS_AS(Pincell(1.26f, {0.5f, 0.4f}, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Pincell(1.26f, {0.7f}, {0, 1}), std::invalid_argument);  // > pitch/2
  CHECK_THROWS_AS(Pincell(1.26f, {0.4f}, {0}), std::invalid_argument);  // count
  CHECK_THROWS_AS(Pincell(-1.0f, {}, {0}), std::invalid_argument);
}

TEST_CASE("locate by radial distance") {
  const Pincell cell = vera_cell();
  CHECK(cell.locate({0.0f, 0.0f, 5.0f}) == 0);
  CHECK(cell.locate({0.3f, 0.0f, 0.0f}) == 0);
  // half-open intervals: a point exactly on a cylinder belongs outside it
  CHECK(cell.locate({0.4096f, 0.0f, 0.0f}) == 1);
  CHECK(cell.locate({0.43f, 0.0f, -2.0f}) == 2);
  CHECK(cell.locate({0.5f, 0.0f, 0.0f}) == 3);
  // cell corner lies outside every cylinder
  CHECK(cell.locate({0.6299f, 0.6299f, 0.0f}) == 3);
  CHECK_THROWS_AS(cell.locate({0.7f, 0.0f, 0.0f}), std::domain_error);
}

TEST_CASE("distance to boundary") {
  const Pincell cell = vera_cell();

  SUBCASE("radial ray from the axis hits the fuel surface") {
    const BoundaryHit hit = cell.distance_to_boundary({0, 0, 0}, {1, 0, 0});
    CHECK(hit.distance == doctest::Approx(0.4096).epsilon(1e-6));
    CHECK(hit.surface.kind == Surface::cylinder);
    CHECK(hit.surface.index == 0);
  }

  SUBCASE("purely axial ray in the outer region never hits") {
    const BoundaryHit hit = cell.distance_to_boundary({0.5f, 0.5f, 0}, {0, 0, 1});
    CHECK(std::isinf(hit.distance));
    CHECK(hit.surface.kind == Surface::none);
  }

  SUBCASE("moderator ray to the +x face") {
    const BoundaryHit hit = cell.distance_to_boundary({0.5f, 0.0f, 0}, {1, 0, 0});
    CHECK(hit.distance == doctest::Approx(0.13).epsilon(1e-5));
    CHECK(hit.surface.kind == Surface::face_px);
  }

  SUBCASE("ray in the moderator heading inward hits the clad") {
    const BoundaryHit hit = cell.distance_to_boundary({0.6f, 0.0f, 0}, {-1, 0, 0});
    CHECK(hit.distance == doctest::Approx(0.6 - 0.475).epsilon(1e-5));
    CHECK(hit.surface.kind == Surface::cylinder);
    CHECK(hit.surface.index == 2);
  }
}

TEST_CASE("reflection is specular, exact, and involutive") {
  const Vec3 d{0.6f, 0.8f, 0.0f};
  const Vec3 r = Pincell::reflect(d, {Surface::face_px, -1});
  CHECK(r.x == -0.6f);
  CHECK(r.y == 0.8f);
  CHECK(r.z == 0.0f);

  const Vec3 grazing = Pincell::reflect({0.0f, 1.0f, 0.0f}, {Surface::face_px, -1});
  CHECK(grazing.x == 0.0f);
  CHECK(grazing.y == 1.0f);

  std::mt19937 gen(7);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = normalized(u(gen), u(gen), u(gen));
    for (auto kind : {Surface::face_px, Surface::face_my}) {
      const Vec3 twice = Pincell::reflect(Pincell::reflect(v, {kind, -1}), {kind, -1});
      CHECK(twice.x == v.x);
      CHECK(twice.y == v.y);
      CHECK(twice.z == v.z);
      CHECK(std::abs(Pincell::reflect(v, {kind, -1}).norm() - v.norm()) < 1e-7f);
    }
  }
}

TEST_CASE("ray marching never sticks, re-enters, or escapes") {
  const Pincell cell = vera_cell();
  std::mt19937 gen(123);
  std::uniform_real_distribution<float> upos(-0.62f, 0.62f);
  std::uniform_real_distribution<float> uang(0.0f, 1.0f);

  for (int trial = 0; trial < 10000; ++trial) {
    Vec3 p{upos(gen), upos(gen), 0.0f};
    const float mu = 2.0f * uang(gen) - 1.0f;
    const float phi = 6.2831853f * uang(gen);
    const float s = std::sqrt(std::max(0.0f, 1.0f - mu * mu));
    Vec3 d{s * std::cos(phi), s * std::sin(phi), mu};

    int region = cell.locate(p);
    for (int step = 0; step < 12; ++step) {
      const BoundaryHit hit = cell.distance_to_boundary(p, d);
      REQUIRE(hit.distance > 0.0f);
      if (std::isinf(hit.distance)) break;
      p = p + d * hit.distance;
      if (hit.surface.is_face()) {
        switch (hit.surface.kind) {
          case Surface::face_px: p.x = cell.half_pitch(); break;
          case Surface::face_mx: p.x = -cell.half_pitch(); break;
          case Surface::face_py: p.y = cell.half_pitch(); break;
          case Surface::face_my: p.y = -cell.half_pitch(); break;
          default: break;
        }
        d = Pincell::reflect(d, hit.surface);
      }
      p = p + d * Pincell::kSurfaceNudge;
      p.x = std::clamp(p.x, -cell.half_pitch(), cell.half_pitch());
      p.y = std::clamp(p.y, -cell.half_pitch(), cell.half_pitch());
      if (hit.surface.kind == Surface::cylinder) {
        const bool outward = p.x * d.x + p.y * d.y >= 0.0f;
        p = cell.settle_after_crossing(p, hit.surface.index, outward);
      }
      REQUIRE(cell.inside_box(p));

      // Relocation must never throw, and a genuine cylinder crossing moves
      // to an adjacent region, never back past the surface just crossed.
      // (Tangential grazes may legitimately keep the region.)
      const int before = region;
      region = cell.locate(p);
      if (hit.surface.kind == Surface::cylinder && region != before) {
        CHECK(std::abs(region - before) == 1);
      }
    }
  }
}
