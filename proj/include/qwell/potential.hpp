#ifndef QWELL_POTENTIAL_HPP
#define QWELL_POTENTIAL_HPP

// Well model: constant walls v1 (x <= 0) and v2 (x >= d) around an interior
// made of delta spikes and rectangular blocks. Units: hbar^2/2m = 1, so
// energies are length^-2 and delta strengths length^-1.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qwell/errors.hpp"

namespace qwell {

/// Wall height standing for an impenetrable wall.
inline constexpr double infinite_wall = std::numeric_limits<double>::infinity();

inline bool is_infinite(double wall) { return std::isinf(wall) && wall > 0; }

/// Spike g * delta(x' - x) at position x.
struct Delta {
  double x = 0;
  double g = 0;
};

/// Block of height u on [a, a + w].
struct Rect {
  double a = 0;
  double w = 0;
  double u = 0;
};

using Element = std::variant<Delta, Rect>;

inline double left_edge(const Element& e) {
  return std::visit([](const auto& el) {
    if constexpr (std::is_same_v<std::decay_t<decltype(el)>, Delta>) return el.x;
    else return el.a;
  }, e);
}

inline double right_edge(const Element& e) {
  return std::visit([](const auto& el) {
    if constexpr (std::is_same_v<std::decay_t<decltype(el)>, Delta>) return el.x;
    else return el.a + el.w;
  }, e);
}

/// Midpoint of the element; the transfer coefficients are phased to it.
inline double center(const Element& e) { return 0.5 * (left_edge(e) + right_edge(e)); }

struct WellSpec {
  double v1 = 0;
  double v2 = 0;
  double d = 0;
  std::vector<Element> elements;

  bool infinite() const { return is_infinite(v1); }
  /// Top of the bound-state window, min(v1, v2).
  double wall_min() const { return std::min(v1, v2); }
};

namespace detail {

inline std::string describe(const Element& e) {
  char buf[128];
  if (const auto* dl = std::get_if<Delta>(&e))
    std::snprintf(buf, sizeof buf, "delta{x=%g, g=%g}", dl->x, dl->g);
  else {
    const auto& r = std::get<Rect>(e);
    std::snprintf(buf, sizeof buf, "rect{a=%g, w=%g, u=%g}", r.a, r.w, r.u);
  }
  return buf;
}

inline bool is_rect(const Element& e) { return std::holds_alternative<Rect>(e); }

}  // namespace detail

/// Checks the well invariants and returns the spec with its elements sorted
/// left to right. Throws GeometryError, RangeError or OverlapError.
inline WellSpec validate(WellSpec spec) {
  if (!(spec.d > 0) || !std::isfinite(spec.d))
    throw GeometryError("well width d must be positive and finite");
  if (!(spec.v1 > 0) || !(spec.v2 > 0))
    throw GeometryError("wall heights must be positive");
  if (is_infinite(spec.v1) != is_infinite(spec.v2))
    throw GeometryError("walls must be both finite or both infinite");

  for (const auto& e : spec.elements) {
    if (const auto* dl = std::get_if<Delta>(&e)) {
      if (!std::isfinite(dl->g) || !std::isfinite(dl->x))
        throw RangeError("non-finite parameter in " + detail::describe(e));
      if (!(dl->x > 0 && dl->x < spec.d))
        throw RangeError(detail::describe(e) + " lies outside the open interval (0, d)");
    } else {
      const auto& r = std::get<Rect>(e);
      if (!std::isfinite(r.a) || !std::isfinite(r.w) || !std::isfinite(r.u))
        throw RangeError("non-finite parameter in " + detail::describe(e));
      if (!(r.w > 0)) throw RangeError(detail::describe(e) + " has non-positive width");
      if (r.a < 0 || r.a + r.w > spec.d)
        throw RangeError(detail::describe(e) + " does not fit inside [0, d]");
    }
  }

  // A delta sitting on a rect's left edge belongs to the left of that rect.
  std::stable_sort(spec.elements.begin(), spec.elements.end(),
                   [](const Element& l, const Element& r) {
                     const double a = left_edge(l), b = left_edge(r);
                     if (a != b) return a < b;
                     return !detail::is_rect(l) && detail::is_rect(r);
                   });

  // Only rects have extent: anything starting strictly before the right edge
  // of an earlier rect intersects it on a set of positive measure.
  double reach = -infinite_wall;
  const Element* reach_owner = nullptr;
  for (const auto& e : spec.elements) {
    if (left_edge(e) < reach)
      throw OverlapError(detail::describe(*reach_owner) + " overlaps " + detail::describe(e));
    if (detail::is_rect(e)) {
      reach = right_edge(e);
      reach_owner = &e;
    }
  }
  return spec;
}

/// Symmetric finite well in the dimensionless variables x = w/d, y = a/w,
/// u = U w^2, v = V w^2, with the barrier width fixed to w = 1. Energies of the
/// resulting well are then the dimensionless energies directly.
inline WellSpec from_dimensionless(double x, double y, double u, double v) {
  if (!(x > 0 && x <= 1)) throw RangeError("x = width/d must lie in (0, 1]");
  if (!(y >= 0)) throw RangeError("y = a/width must be non-negative");
  const double d = 1.0 / x;
  double a = y;
  const double a_max = d - 1.0;
  if (a > a_max) {
    if (a - a_max > 1e-12 * d) throw RangeError("barrier does not fit: y > 1/x - 1");
    a = a_max;
  }
  return validate(WellSpec{v, v, d, {Rect{a, 1.0, u}}});
}

/// Reflects every element about d/2 and swaps the walls.
inline WellSpec mirror(const WellSpec& spec) {
  WellSpec out{spec.v2, spec.v1, spec.d, {}};
  out.elements.reserve(spec.elements.size());
  for (const auto& e : spec.elements) {
    if (const auto* dl = std::get_if<Delta>(&e)) {
      out.elements.push_back(Delta{spec.d - dl->x, dl->g});
    } else {
      const auto& r = std::get<Rect>(e);
      const double a = std::clamp(spec.d - r.a - r.w, 0.0, spec.d - r.w);
      out.elements.push_back(Rect{a, r.w, r.u});
    }
  }
  return validate(std::move(out));
}

/// Infinite well split into n_barriers + 1 free sub-wells of width w by equal
/// barriers of width l and height u: d = (N + 1) w + N l.
inline WellSpec layered_well(int n_barriers, double w, double l, double u) {
  if (n_barriers < 1) throw RangeError("layered well needs at least one barrier");
  if (!(w > 0) || !(l > 0)) throw RangeError("sub-well and barrier widths must be positive");
  WellSpec spec{infinite_wall, infinite_wall, (n_barriers + 1) * w + n_barriers * l, {}};
  for (int j = 0; j < n_barriers; ++j)
    spec.elements.push_back(Rect{(j + 1) * w + j * l, l, u});
  return validate(std::move(spec));
}

}  // namespace qwell

#endif  // QWELL_POTENTIAL_HPP
